#include "qrlab/qstate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qrlab::qstate {

namespace {

void check_unit_norm(double norm_sq, const char* what) {
    const double deviation = std::abs(norm_sq - 1.0);
    if (!(deviation <= kInputNormTolerance)) {
        throw std::invalid_argument(std::string(what) +
                                    ": squared magnitudes sum to " + std::to_string(norm_sq) +
                                    " (deviation " + std::to_string(deviation) + " exceeds 1e-9)");
    }
}

}  // namespace

EntangledState::EntangledState(Amplitude alpha, Amplitude beta) : alpha_(alpha), beta_(beta) {
    const double norm_sq = std::norm(alpha_) + std::norm(beta_);
    check_unit_norm(norm_sq, "EntangledState");
    const double scale = 1.0 / std::sqrt(norm_sq);
    alpha_ *= scale;
    beta_ *= scale;
}

EntangledState EntangledState::singlet() {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return EntangledState(Amplitude(inv_sqrt2, 0.0), Amplitude(-inv_sqrt2, 0.0));
}

EntangledState EntangledState::from_alpha_sq(double alpha_sq) {
    if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0))
        throw std::invalid_argument("EntangledState::from_alpha_sq: |alpha|^2 must lie in [0,1]");
    return EntangledState(Amplitude(std::sqrt(alpha_sq), 0.0), Amplitude(std::sqrt(1.0 - alpha_sq), 0.0));
}

MeasurementBasis::MeasurementBasis(Amplitude c, Amplitude d) : c_(c), d_(d) {
    const double norm_sq = std::norm(c_) + std::norm(d_);
    check_unit_norm(norm_sq, "MeasurementBasis");
    const double scale = 1.0 / std::sqrt(norm_sq);
    c_ *= scale;
    d_ *= scale;
}

MeasurementBasis MeasurementBasis::identity() { return MeasurementBasis(Amplitude(1.0, 0.0), Amplitude(0.0, 0.0)); }

MeasurementBasis MeasurementBasis::x_axis() {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return MeasurementBasis(Amplitude(inv_sqrt2, 0.0), Amplitude(inv_sqrt2, 0.0));
}

MeasurementBasis MeasurementBasis::y_axis() {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return MeasurementBasis(Amplitude(inv_sqrt2, 0.0), Amplitude(0.0, inv_sqrt2));
}

MeasurementBasis MeasurementBasis::from_c_sq(double c_sq) {
    if (!(c_sq >= 0.0 && c_sq <= 1.0))
        throw std::invalid_argument("MeasurementBasis::from_c_sq: |c|^2 must lie in [0,1]");
    return MeasurementBasis(Amplitude(std::sqrt(c_sq), 0.0), Amplitude(std::sqrt(1.0 - c_sq), 0.0));
}

EntangledState make_state(Amplitude alpha, Amplitude beta) { return EntangledState(alpha, beta); }

ReducedDensityMatrix reduced_density(const EntangledState& state) {
    return ReducedDensityMatrix{state.alpha_sq(), state.beta_sq()};
}

double prob_one_bob(const EntangledState& state, const MeasurementBasis& basis) {
    return state.alpha_sq() * basis.c_sq() + state.beta_sq() * basis.d_sq();
}

double prob_one_alice(const EntangledState& state, const MeasurementBasis& /*basis*/) {
    // Expanding the joint distribution gives |alpha|^2 (|c|^2 + |d|^2); the
    // basis is unit-norm, so the marginal collapses to |alpha|^2 exactly.
    return state.alpha_sq();
}

JointOutcomeDist joint_distribution(const EntangledState& state, const MeasurementBasis& basis) {
    const double a2 = state.alpha_sq();
    const double b2 = state.beta_sq();
    const double c2 = basis.c_sq();
    const double d2 = basis.d_sq();
    return JointOutcomeDist{a2 * c2, b2 * d2, a2 * d2, b2 * c2};
}

}  // namespace qrlab::qstate
