// channel.hpp
// Binary asymmetric channel capacity: closed form, an independent
// brute-force mutual-information maximizer, the channel parameters induced
// by the block-transmission protocol, and the near-diagonal scaling fit.

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>

namespace qrlab::channel {

// Crossover probabilities: p0 = Prob(1 out | 0 in), p1 = Prob(0 out | 1 in).
struct ChannelParams {
    double p0;
    double p1;
};

enum class CapacityMethod { closed_form, brute_force };

struct CapacityResult {
    double capacity;             // bits per channel use
    double optimal_input_prior;  // probability of sending a 1
    CapacityMethod method;
};

// Noise knobs the transmission protocol induces: p_n is the probability a
// standard-axis block is p-compressible, p_omega is the decoder's oracle
// error on compressible blocks, epsilon_1 the residual 1-bit flip rate.
struct ProtocolNoiseInputs {
    double p_n;
    double p_omega;
    double epsilon_1;
};

// Raised by exponent_r when p0 + p1 = 1: the exponent is 0/0 there and the
// channel output is independent of its input.
class degenerate_channel_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Width of the band around p0 + p1 = 1 treated as the degenerate diagonal.
inline constexpr double kDiagonalTolerance = 1e-9;

// Capacity exponent r = (H(p0) - H(p1)) / (p0 + p1 - 1).
// Throws degenerate_channel_error within kDiagonalTolerance of the diagonal.
double exponent_r(ChannelParams params);

// Closed-form capacity
//   C = log2(1 + 2^r) - (1 - p0) * r - H(p0),
// which equals the mutual-information maximum of the 2x2 channel; on the
// diagonal p0 + p1 = 1 the capacity is exactly 0. The optimal input prior
// follows from the maximizing output distribution y* = 1 / (1 + 2^r).
CapacityResult capacity_closed_form(ChannelParams params);

// Independent oracle: exhaustive grid over the input prior (at least
// `resolution` cells) followed by golden-section refinement to 1e-10.
// Mutual information is evaluated from the 2x2 joint distribution directly,
// sharing no algebra with the closed form. Throws for resolution < 1000.
CapacityResult capacity_bruteforce(ChannelParams params, std::size_t resolution);

// Channel parameters induced by the protocol:
//   p0 = 1 - (1 - p_omega) * p_n,  p1 = epsilon_1.
ChannelParams params_from_protocol(ProtocolNoiseInputs inputs);

// Least-squares slope of log C versus log delta for the channels
// (p0_center, 1 - p0_center - delta). A slope of 2 means the capacity
// vanishes quadratically in the distance from the diagonal. Requires at
// least 3 deltas, each nonzero with |delta| <= 0.05.
double near_diagonal_fit(double p0_center, std::span<const double> deltas);

}  // namespace qrlab::channel
