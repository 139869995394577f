// Acceptance suite: runs the headline checks end to end and prints one
// pass/fail line per criterion. Exit status is the number of failures.

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrlab/ait.hpp"
#include "qrlab/channel.hpp"
#include "qrlab/omega.hpp"
#include "qrlab/protocol.hpp"
#include "qrlab/qstate.hpp"
#include "qrlab/rng.hpp"

using namespace qrlab;
using qstate::EntangledState;
using qstate::JointOutcomeDist;
using qstate::MeasurementBasis;

namespace {

void require(bool ok, const std::string& detail) {
    if (!ok) throw std::runtime_error(detail);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

bool within4(double freq, double p, double n) {
    const double se = std::sqrt(p * (1.0 - p) / n);
    return std::abs(freq - p) <= 4.0 * se + 1e-15;
}

std::pair<std::complex<double>, std::complex<double>> random_unit_pair(std::mt19937_64& rng) {
    auto centered = [&] { return uniform01(rng) * 2.0 - 1.0; };
    std::complex<double> z1(centered(), centered());
    std::complex<double> z2(centered(), centered());
    const double norm = std::sqrt(std::norm(z1) + std::norm(z2));
    if (norm < 1e-3) return {{1.0, 0.0}, {0.0, 0.0}};
    return {z1 / norm, z2 / norm};
}

// empirical (bob, alice) marginals from n draws of the joint distribution
std::pair<double, double> empirical_marginals(const JointOutcomeDist& dist, std::size_t n,
                                              std::mt19937_64& rng) {
    std::size_t bob = 0, alice = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double u = uniform01(rng);
        if (u < dist.p11) {
            ++bob;
            ++alice;
        } else if ((u -= dist.p11) < dist.p10) {
            ++bob;
        } else if ((u -= dist.p10) < dist.p01) {
            ++alice;
        }
    }
    return {static_cast<double>(bob) / static_cast<double>(n),
            static_cast<double>(alice) / static_cast<double>(n)};
}

// --- criteria ---

std::string criterion_no_signaling() {
    std::mt19937_64 gen_rng(make_engine(101, 1));
    std::mt19937_64 mc_rng(make_engine(101, 2));
    const std::size_t pairs = 1000;
    const std::size_t samples = 1'000'000;
    double worst_analytic = 0.0;
    for (std::size_t i = 0; i < pairs; ++i) {
        const auto [a, b] = random_unit_pair(gen_rng);
        const auto [c, d] = random_unit_pair(gen_rng);
        const EntangledState state(a, b);
        const MeasurementBasis basis(c, d);
        const double p = prob_one_alice(state, basis);
        // analytic route through the joint distribution: the marginal must
        // collapse to |alpha|^2 no matter what basis Bob picked
        const auto joint = joint_distribution(state, basis);
        const double marginal = joint.p11 + joint.p01;
        const double dev = std::max(std::abs(marginal - state.alpha_sq()), std::abs(p - state.alpha_sq()));
        worst_analytic = std::max(worst_analytic, dev);
        require(dev < 1e-12, "analytic deviation " + fmt(dev) + " at pair " + std::to_string(i));
        const auto [bob_f, alice_f] = empirical_marginals(joint, samples, mc_rng);
        (void)bob_f;
        require(within4(alice_f, p, static_cast<double>(samples)),
                "empirical marginal " + fmt(alice_f) + " vs " + fmt(p) + " at pair " + std::to_string(i));
    }
    return "1000 pairs, worst analytic deviation " + fmt(worst_analytic) + ", empirical within 4 se at n=1e6";
}

std::string criterion_bob_probability() {
    std::mt19937_64 gen_rng(make_engine(202, 1));
    std::mt19937_64 mc_rng(make_engine(202, 2));
    const std::size_t samples = 1'000'000;
    for (int i = 0; i < 100; ++i) {
        const auto [a, b] = random_unit_pair(gen_rng);
        const auto [c, d] = random_unit_pair(gen_rng);
        const EntangledState state(a, b);
        const MeasurementBasis basis(c, d);
        const double expected = prob_one_bob(state, basis);
        require(std::abs(expected - (state.alpha_sq() * basis.c_sq() + state.beta_sq() * basis.d_sq())) <
                    1e-15,
                "closed form mismatch");
        const auto [bob_f, alice_f] = empirical_marginals(joint_distribution(state, basis), samples, mc_rng);
        (void)alice_f;
        require(within4(bob_f, expected, static_cast<double>(samples)),
                "config " + std::to_string(i) + ": " + fmt(bob_f) + " vs " + fmt(expected));
    }
    return "100 configurations within 4 se at n=1e6";
}

std::string criterion_session_correlation() {
    const struct {
        double a2;
        std::size_t n;
        std::uint64_t seed;
    } cases[] = {{0.5, 10'000'000, 1}, {0.7, 1'000'000, 2}, {0.13, 100'000, 3}, {1.0, 1000, 4}, {0.5, 1, 5}};
    for (const auto& cs : cases) {
        const auto rec = protocol::run_standard_session(EntangledState::from_alpha_sq(cs.a2), cs.n, cs.seed);
        require(rec.bob == rec.alice,
                "strings differ at a2=" + fmt(cs.a2) + " n=" + std::to_string(cs.n));
    }
    return "bit-identical strings for every tested (state, n <= 1e7, seed)";
}

std::string criterion_capacity_oracle() {
    double worst = 0.0;
    auto compare = [&](double p0, double p1) {
        const double closed = channel::capacity_closed_form({p0, p1}).capacity;
        const double brute = channel::capacity_bruteforce({p0, p1}, 1000).capacity;
        const double diff = std::abs(closed - brute);
        worst = std::max(worst, diff);
        require(diff <= 1e-6,
                "closed vs brute " + fmt(diff) + " at (" + fmt(p0) + "," + fmt(p1) + ")");
    };
    for (int i = 0; i <= 100; ++i)
        for (int j = 0; j <= 100; ++j) compare(i / 100.0, j / 100.0);
    std::mt19937_64 rng(make_engine(404, 1));
    for (int k = 0; k < 1000; ++k) {
        double p0 = uniform01(rng), p1 = uniform01(rng);
        compare(p0, p1);
    }
    for (int i = 0; i <= 100; ++i) {
        const double p = i / 100.0;
        const double bsc = channel::capacity_closed_form({p, p}).capacity;
        require(std::abs(bsc - (1.0 - ait::shannon_entropy(p).value)) < 1e-9,
                "BSC reduction failed at p=" + fmt(p));
        require(channel::capacity_closed_form({p, 1.0 - p}).capacity == 0.0,
                "diagonal capacity not exactly 0 at p=" + fmt(p));
    }
    return "10201-point grid + 1000 random points, worst |closed-brute| = " + fmt(worst);
}

std::string criterion_near_diagonal() {
    const double deltas[] = {0.04, 0.02, 0.01, 0.005};
    std::string slopes;
    for (double center : {0.2, 0.3, 0.5}) {
        const double slope = channel::near_diagonal_fit(center, deltas);
        require(std::abs(slope - 2.0) <= 0.1,
                "slope " + fmt(slope) + " at center " + fmt(center));
        slopes += (slopes.empty() ? "" : ", ") + fmt(slope);
    }
    return "log-log slopes {" + slopes + "} within 2.0 +- 0.1";
}

std::string criterion_channel_parameter_law() {
    const auto singlet = EntangledState::singlet();
    BitString message;
    std::mt19937_64 msg_rng(make_engine(606, 1));
    for (int i = 0; i < 10'000; ++i) message.push_back(bernoulli(msg_rng, 0.5));

    for (double p_n : {0.2, 0.5, 1.0}) {
        for (double p_omega : {0.0, 0.3, 0.5}) {
            protocol::ProtocolConfig config;
            config.block_len = 64;
            config.seed = static_cast<std::uint64_t>(1000 * p_n + 10 * p_omega) + 7;
            config.p_omega = p_omega;
            const auto result = protocol::transmit_message(singlet, message, config, p_n);
            const double predicted = 1.0 - (1.0 - p_omega) * p_n;
            require(std::abs(result.predicted_p0 - predicted) < 1e-12, "prediction plumbing");
            if (predicted == 0.0 || predicted == 1.0) {
                require(result.empirical_p0 == predicted,
                        "exact-rate case failed at p_n=" + fmt(p_n) + " p_omega=" + fmt(p_omega));
            } else {
                require(within4(result.empirical_p0, predicted, static_cast<double>(result.sent0)),
                        "p0 " + fmt(result.empirical_p0) + " vs " + fmt(predicted) + " at p_n=" +
                            fmt(p_n) + " p_omega=" + fmt(p_omega));
            }
            require(result.empirical_p1 == 0.0, "p1 must be exactly 0");

            const auto cap =
                channel::capacity_closed_form(channel::params_from_protocol({p_n, p_omega, 0.0}));
            require(cap.capacity > 0.0, "capacity should be positive for p_n > 0, p_omega < 1");
        }
    }
    const auto dead = channel::capacity_closed_form(channel::params_from_protocol({0.0, 0.3, 0.0}));
    require(dead.capacity == 0.0, "capacity must vanish at p_n = 0");
    return "empirical p0 matches 1-(1-p_omega)p_n over 9 settings x 1e4 blocks; capacity positive iff p_n > 0";
}

std::string criterion_entropy() {
    require(ait::shannon_entropy(0.5).value == 1.0, "H(1/2) != 1");
    require(ait::shannon_entropy(0.0).value == 0.0, "H(0) != 0");
    require(ait::shannon_entropy(1.0).value == 0.0, "H(1) != 0");
    require(std::abs(ait::shannon_entropy(0.25).value - 0.811278) <= 1e-6, "H(1/4) off");
    std::mt19937_64 rng(make_engine(707, 1));
    for (int i = 0; i < 10'000; ++i) {
        const double p = uniform01(rng);
        const double q = uniform01(rng);
        require(std::abs(ait::shannon_entropy(p).value - ait::shannon_entropy(1.0 - p).value) < 1e-12,
                "symmetry failed at p=" + fmt(p));
        const double mid = ait::shannon_entropy(0.5 * (p + q)).value;
        const double avg = 0.5 * (ait::shannon_entropy(p).value + ait::shannon_entropy(q).value);
        require(mid >= avg - 1e-12, "concavity failed at (" + fmt(p) + "," + fmt(q) + ")");
    }
    return "pinned values exact, symmetry and concavity hold at 1e4 points";
}

std::string criterion_champernowne() {
    const auto champ = ait::champernowne_bits(std::size_t{1} << 18);
    require(champ.substr(0, 13).to_ascii() == "0100011011000", "first 13 bits wrong");
    const auto champ_est = ait::lz_complexity_estimate(champ);
    const auto tmpl = protocol::make_template(std::size_t{1} << 18, 818);
    const auto tmpl_est = ait::lz_complexity_estimate(tmpl.bits());
    require(champ_est.normalized < tmpl_est.normalized,
            "champernowne " + fmt(champ_est.normalized) + " not below random " + fmt(tmpl_est.normalized));
    // calibrated anchors: the enumeration structure keeps the champernowne
    // estimate near 0.73 while seeded noise stays above 0.8
    require(champ_est.phrases == 12986, "champernowne phrase count drifted");
    require(champ_est.normalized < 0.8, "champernowne estimate above calibrated ceiling");
    require(tmpl_est.normalized >= 0.8, "random baseline below calibrated floor");
    return "at 2^18: champernowne " + fmt(champ_est.normalized) + " < random " + fmt(tmpl_est.normalized) +
           "; prefix pinned";
}

std::string criterion_pattern_frequencies() {
    const auto tmpl = protocol::make_template(1'000'000, 909);
    for (std::size_t k = 1; k <= 8; ++k) {
        const double expected = std::pow(0.5, static_cast<double>(k));
        const double n_pos = 1'000'000.0 - static_cast<double>(k) + 1.0;
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v) {
            BitString pattern;
            for (std::size_t b = 0; b < k; ++b) pattern.push_back(((v >> (k - 1 - b)) & 1) != 0);
            const double f = ait::pattern_frequency(tmpl.bits(), pattern, 1);
            require(within4(f, expected, n_pos),
                    "pattern " + pattern.to_ascii() + " frequency " + fmt(f));
        }
    }
    return "all 510 patterns of k <= 8 within 4 se of 2^-k at n=1e6";
}

std::string criterion_omega() {
    require(omega::kraft_sum(16) <= omega::Dyadic::one(), "Kraft sum exceeds 1");
    require(omega::kraft_sum(16).as_fraction() == "15/16", "Kraft sum drifted");

    const auto ledger16 = omega::dovetail_run(16, 1'000'000);
    require(ledger16.omega_bound.as_fraction() == "3539/4096", "omega(16, 1e6) drifted");
    const auto ledger12 = omega::dovetail_run(12, 1'000'000);
    require(ledger12.omega_bound <= ledger16.omega_bound, "monotonicity in max_len failed");
    require(omega::dovetail_run(13, 1).omega_bound < omega::dovetail_run(13, 2).omega_bound &&
                omega::dovetail_run(13, 2).omega_bound < omega::dovetail_run(13, 1'000'000).omega_bound,
            "monotonicity in budget failed");

    // halting decisions versus direct bounded simulation, exhaustively
    for (const auto& prog : omega::enumerate_programs(12)) {
        const auto direct = omega::run_program(prog, ledger12.budget);
        const auto decided = omega::halting_decision(prog, ledger12);
        const bool agree = (direct.status == omega::RunStatus::halted) ==
                           (decided == omega::HaltingVerdict::halts);
        require(agree, "halting decision disagrees on " + prog.code.to_ascii());
    }

    // output-membership compressibility versus brute-force search
    std::size_t compressible_count = 0;
    for (std::size_t len = 0; len <= 5; ++len) {
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
            BitString s;
            for (std::size_t b = 0; b < len; ++b) s.push_back(((v >> (len - 1 - b)) & 1) != 0);
            for (std::size_t budget_bits : {1, 5, 9, 13, 16}) {
                bool found = false;
                for (const auto& entry : ledger16.halted) {
                    if (entry.program.length() <= budget_bits && entry.output == s) {
                        found = true;
                        break;
                    }
                }
                const auto verdict = omega::compressible_via_omega(s, budget_bits, ledger16);
                require((verdict == omega::OmegaCompressibility::compressible) == found,
                        "membership mismatch on " + s.to_ascii());
                if (found) ++compressible_count;
            }
        }
    }
    require(compressible_count > 0, "membership search never fired");

    // repeated runs are bit-identical
    const auto again = omega::dovetail_run(16, 1'000'000);
    std::ostringstream first, second;
    omega::write_ledger(first, ledger16);
    omega::write_ledger(second, again);
    require(first.str() == second.str() && ledger16.omega_bound == again.omega_bound,
            "repeated dovetail runs differ");

    return "omega(16,1e6) = " + ledger16.omega_bound.as_fraction() + " exactly; Kraft 15/16; decisions match simulation";
}

struct Criterion {
    int id;
    const char* name;
    std::function<std::string()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "no-signaling identity", criterion_no_signaling},
        {2, "rotated-basis probability", criterion_bob_probability},
        {3, "standard-session correlation", criterion_session_correlation},
        {4, "capacity oracle equivalence", criterion_capacity_oracle},
        {5, "near-diagonal quadratic law", criterion_near_diagonal},
        {6, "channel-parameter law", criterion_channel_parameter_law},
        {7, "entropy bound", criterion_entropy},
        {8, "champernowne separation", criterion_champernowne},
        {9, "pattern frequencies", criterion_pattern_frequencies},
        {10, "omega exactness", criterion_omega},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        try {
            const std::string detail = criterion.run();
            std::printf("[PASS] criterion %2d (%s): %s\n", criterion.id, criterion.name, detail.c_str());
        } catch (const std::exception& e) {
            std::printf("[FAIL] criterion %2d (%s): %s\n", criterion.id, criterion.name, e.what());
            ++failures;
        }
        std::fflush(stdout);
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
