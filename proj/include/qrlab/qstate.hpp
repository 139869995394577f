// qstate.hpp
// Exact two-spin entangled-state math: state construction, the reduced
// density matrix seen by one side, rotated-basis outcome probabilities,
// and the joint distribution of (Bob-bit, Alice-bit) outcomes.
//
// Everything is closed-form in the four complex coefficients; the Hilbert
// space never exceeds dimension 4, so no linear-algebra machinery is used.

#pragma once

#include <complex>

namespace qrlab::qstate {

using Amplitude = std::complex<double>;

// Tolerance accepted on user-supplied amplitudes. Inputs may carry decimal
// rounding; internally states are renormalized so derived identities hold
// to 1e-12.
inline constexpr double kInputNormTolerance = 1e-9;

// Effective single-spin mixed state after tracing out the partner:
// diag(|alpha|^2, |beta|^2).
struct ReducedDensityMatrix {
    double p_up;
    double p_down;
};

// Joint probabilities of the (Bob-bit, Alice-bit) pair for one measured
// spin pair. Bob's bit is 1 on spin-up along his axis; Alice's bit is 1
// on spin-down along the agreed axis.
struct JointOutcomeDist {
    double p11;
    double p10;
    double p01;
    double p00;
};

// alpha |up,down> + beta |down,up> with |alpha|^2 + |beta|^2 = 1.
class EntangledState {
public:
    // Throws std::invalid_argument with the measured deviation when the
    // squared magnitudes are off unity by more than kInputNormTolerance;
    // otherwise stores the renormalized pair.
    EntangledState(Amplitude alpha, Amplitude beta);

    Amplitude alpha() const noexcept { return alpha_; }
    Amplitude beta() const noexcept { return beta_; }
    double alpha_sq() const noexcept { return std::norm(alpha_); }
    double beta_sq() const noexcept { return std::norm(beta_); }

    // alpha = 1/sqrt(2), beta = -1/sqrt(2): the zero-total-spin pair.
    static EntangledState singlet();
    // Real amplitudes with the given |alpha|^2.
    static EntangledState from_alpha_sq(double alpha_sq);

private:
    Amplitude alpha_;
    Amplitude beta_;
};

// Bob's rotated measurement eigenbasis: spin-up along the new axis is
// c |up> + d |down>; the orthogonal partner -conj(d) |up> + conj(c) |down>
// is implied, so (c, d) fully determines the basis.
class MeasurementBasis {
public:
    MeasurementBasis(Amplitude c, Amplitude d);

    Amplitude c() const noexcept { return c_; }
    Amplitude d() const noexcept { return d_; }
    double c_sq() const noexcept { return std::norm(c_); }
    double d_sq() const noexcept { return std::norm(d_); }

    static MeasurementBasis identity();  // agreed axis: c = 1, d = 0
    static MeasurementBasis x_axis();    // c = d = 1/sqrt(2)
    static MeasurementBasis y_axis();    // c = 1/sqrt(2), d = i/sqrt(2)
    // Real (c, d) with the given |c|^2.
    static MeasurementBasis from_c_sq(double c_sq);

private:
    Amplitude c_;
    Amplitude d_;
};

// Validated construction of a state from raw amplitudes.
EntangledState make_state(Amplitude alpha, Amplitude beta);

// Partial trace over the partner spin.
ReducedDensityMatrix reduced_density(const EntangledState& state);

// Probability that Bob sees a 1-bit measuring along `basis`:
// |alpha|^2 |c|^2 + |beta|^2 |d|^2.
double prob_one_bob(const EntangledState& state, const MeasurementBasis& basis);

// Probability that Alice sees a 1-bit while Bob measures along `basis`.
// Equals |alpha|^2 for every basis: Bob's axis choice cannot move Alice's
// marginal. The identity is returned in simplified form rather than as a
// sum of joint terms, so it holds to machine precision by construction.
double prob_one_alice(const EntangledState& state, const MeasurementBasis& basis);

// Full joint distribution:
//   p11 = |alpha c|^2, p10 = |beta d|^2, p01 = |alpha d|^2, p00 = |beta c|^2.
JointOutcomeDist joint_distribution(const EntangledState& state, const MeasurementBasis& basis);

}  // namespace qrlab::qstate
