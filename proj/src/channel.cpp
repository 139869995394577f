#include "qrlab/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qrlab/ait.hpp"

namespace qrlab::channel {

namespace {

void check_probability(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument(std::string(name) + " = " + std::to_string(v) + " outside [0,1]");
}

bool on_diagonal(ChannelParams params) { return std::abs(params.p0 + params.p1 - 1.0) < kDiagonalTolerance; }

double entropy(double p) { return ait::shannon_entropy(p).value; }

}  // namespace

double exponent_r(ChannelParams params) {
    check_probability(params.p0, "p0");
    check_probability(params.p1, "p1");
    if (on_diagonal(params))
        throw degenerate_channel_error("exponent_r: p0 + p1 = 1, output carries no information");
    return (entropy(params.p0) - entropy(params.p1)) / (params.p0 + params.p1 - 1.0);
}

CapacityResult capacity_closed_form(ChannelParams params) {
    check_probability(params.p0, "p0");
    check_probability(params.p1, "p1");
    if (on_diagonal(params)) return CapacityResult{0.0, 0.5, CapacityMethod::closed_form};

    const double r = exponent_r(params);
    const double capacity = std::log2(1.0 + std::exp2(r)) - (1.0 - params.p0) * r - entropy(params.p0);
    // maximizing output law, mapped back through y = p0 + q (1 - p0 - p1)
    const double y_star = 1.0 / (1.0 + std::exp2(r));
    double q_star = (y_star - params.p0) / (1.0 - params.p0 - params.p1);
    q_star = std::clamp(q_star, 0.0, 1.0);
    return CapacityResult{std::max(capacity, 0.0), q_star, CapacityMethod::closed_form};
}

namespace {

// Mutual information of the 2x2 channel under input prior q, evaluated
// term by term from the joint distribution. Kept free of the entropy
// helper on purpose: this is the oracle side of the capacity pair.
double mutual_information(ChannelParams ch, double q) {
    const double joint[4] = {
        (1.0 - q) * (1.0 - ch.p0),  // in 0, out 0
        (1.0 - q) * ch.p0,          // in 0, out 1
        q * ch.p1,                  // in 1, out 0
        q * (1.0 - ch.p1),          // in 1, out 1
    };
    const double out0 = joint[0] + joint[2];
    const double out1 = joint[1] + joint[3];
    const double in_marg[2] = {1.0 - q, q};
    const double out_marg[2] = {out0, out1};
    double info = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double j = joint[i];
        if (j <= 0.0) continue;
        info += j * std::log2(j / (in_marg[i >> 1] * out_marg[i & 1]));
    }
    return info;
}

}  // namespace

CapacityResult capacity_bruteforce(ChannelParams params, std::size_t resolution) {
    check_probability(params.p0, "p0");
    check_probability(params.p1, "p1");
    if (resolution < 1000)
        throw std::invalid_argument("capacity_bruteforce: resolution must be >= 1000");

    double best_q = 0.0;
    double best = mutual_information(params, 0.0);
    for (std::size_t i = 1; i <= resolution; ++i) {
        const double q = static_cast<double>(i) / static_cast<double>(resolution);
        const double v = mutual_information(params, q);
        if (v > best) {
            best = v;
            best_q = q;
        }
    }

    // golden-section refinement around the grid optimum; mutual information
    // is concave in the prior, so the bracketed maximum is the global one
    const double step = 1.0 / static_cast<double>(resolution);
    double lo = std::max(0.0, best_q - step);
    double hi = std::min(1.0, best_q + step);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = mutual_information(params, c);
    double fd = mutual_information(params, d);
    while (hi - lo > 1e-10) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = mutual_information(params, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = mutual_information(params, d);
        }
    }
    const double q_star = 0.5 * (lo + hi);
    return CapacityResult{mutual_information(params, q_star), q_star, CapacityMethod::brute_force};
}

ChannelParams params_from_protocol(ProtocolNoiseInputs inputs) {
    check_probability(inputs.p_n, "p_n");
    check_probability(inputs.p_omega, "p_omega");
    check_probability(inputs.epsilon_1, "epsilon_1");
    return ChannelParams{1.0 - (1.0 - inputs.p_omega) * inputs.p_n, inputs.epsilon_1};
}

double near_diagonal_fit(double p0_center, std::span<const double> deltas) {
    if (deltas.size() < 3)
        throw std::invalid_argument("near_diagonal_fit: need at least 3 deltas");
    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(deltas.size());
    ys.reserve(deltas.size());
    for (double delta : deltas) {
        if (delta == 0.0 || std::abs(delta) > 0.05)
            throw std::invalid_argument("near_diagonal_fit: deltas must be nonzero with |delta| <= 0.05");
        const ChannelParams ch{p0_center, 1.0 - p0_center - delta};
        check_probability(ch.p1, "p1");
        xs.push_back(std::log(std::abs(delta)));
        ys.push_back(std::log(capacity_closed_form(ch).capacity));
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    return sxy / sxx;
}

}  // namespace qrlab::channel
