#include "qrlab/protocol.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qrlab/ait.hpp"
#include "qrlab/rng.hpp"

namespace qrlab::protocol {

using qstate::EntangledState;
using qstate::JointOutcomeDist;
using qstate::MeasurementBasis;

namespace {

// named seed streams; per-block seeds are derived a second level down
constexpr std::uint64_t kStreamOutcomes = 1;
constexpr std::uint64_t kStreamTemplate = 2;
constexpr std::uint64_t kStreamDecision = 3;
constexpr std::uint64_t kStreamTruth = 4;

// Cyclic reader over template bits. The axis policies consume more than
// one bit per measurement, so the stream wraps; the template only has to
// be longer than the block it scrambles.
class TemplateCursor {
public:
    explicit TemplateCursor(const BitString& bits) : bits_(&bits) {}

    int next_bit() {
        const int b = bits_->bit(pos_);
        pos_ = (pos_ + 1) % bits_->size();
        return b;
    }

    std::uint64_t next_word(unsigned nbits) {
        std::uint64_t w = 0;
        for (unsigned i = 0; i < nbits; ++i) w = (w << 1) | static_cast<std::uint64_t>(next_bit());
        return w;
    }

private:
    const BitString* bits_;
    std::size_t pos_ = 0;
};

MeasurementBasis draw_axis(AxisPolicy policy, TemplateCursor& cursor, std::size_t template_len) {
    switch (policy) {
        case AxisPolicy::fixed:
            return MeasurementBasis::identity();
        case AxisPolicy::three_axis_uniform: {
            // two bits select among {z, x, y}; 11 is redrawn
            for (std::size_t attempt = 0; attempt < 2 * template_len; ++attempt) {
                const std::uint64_t v = cursor.next_word(2);
                if (v == 0) return MeasurementBasis::identity();
                if (v == 1) return MeasurementBasis::x_axis();
                if (v == 2) return MeasurementBasis::y_axis();
            }
            throw std::runtime_error("draw_axis: template cannot produce a three-axis draw");
        }
        case AxisPolicy::haar_uniform: {
            // 64 bits per draw: 32 for |c|^2 (uniform in [0,1) under the
            // spherical measure), 16 + 16 for the two phases
            const double u = static_cast<double>(cursor.next_word(32)) * 0x1.0p-32;
            const double phase_c = 2.0 * M_PI * static_cast<double>(cursor.next_word(16)) / 65536.0;
            const double phase_d = 2.0 * M_PI * static_cast<double>(cursor.next_word(16)) / 65536.0;
            const double mc = std::sqrt(u);
            const double md = std::sqrt(1.0 - u);
            return MeasurementBasis(std::polar(mc, phase_c), std::polar(md, phase_d));
        }
    }
    throw std::logic_error("draw_axis: unknown policy");
}

// One pair outcome from the joint distribution: (bob_bit, alice_bit).
// Cells with probability exactly zero can never be selected.
std::pair<bool, bool> sample_joint(const JointOutcomeDist& dist, double u) {
    if (u < dist.p11) return {true, true};
    u -= dist.p11;
    if (u < dist.p10) return {true, false};
    u -= dist.p10;
    if (u < dist.p01) return {false, true};
    return {false, false};
}

}  // namespace

ScramblingTemplate::ScramblingTemplate(BitString bits) : bits_(std::move(bits)) {
    if (bits_.empty()) throw std::invalid_argument("ScramblingTemplate: empty template");
}

void ProtocolConfig::validate() const {
    if (block_len < 64)
        throw std::invalid_argument("ProtocolConfig: block_len " + std::to_string(block_len) +
                                    " below minimum 64");
    if (!(p_omega >= 0.0 && p_omega < 1.0))
        throw std::invalid_argument("ProtocolConfig: p_omega must lie in [0,1)");
    if (!(decision_margin > 0.0 && decision_margin < 1.0))
        throw std::invalid_argument("ProtocolConfig: decision_margin must lie in (0,1)");
}

AxisSequence AxisSequence::repeated(const MeasurementBasis& basis, std::size_t n) {
    return AxisSequence({basis}, n, true);
}

AxisSequence AxisSequence::from_list(std::vector<MeasurementBasis> axes) {
    const std::size_t n = axes.size();
    return AxisSequence(std::move(axes), n, false);
}

const MeasurementBasis& AxisSequence::at(std::size_t i) const {
    if (i >= size_) throw std::out_of_range("AxisSequence::at: index out of range");
    return repeated_ ? axes_[0] : axes_[i];
}

SessionRecord run_standard_session(const EntangledState& state, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("run_standard_session: need n >= 1");
    const MeasurementBasis agreed = MeasurementBasis::identity();
    const JointOutcomeDist dist = joint_distribution(state, agreed);
    std::mt19937_64 rng = make_engine(seed, kStreamOutcomes);
    BitString bob, alice;
    for (std::size_t i = 0; i < n; ++i) {
        const auto [b, a] = sample_joint(dist, uniform01(rng));
        bob.push_back(b);
        alice.push_back(a);
    }
    return SessionRecord{std::move(bob), std::move(alice), AxisSequence::repeated(agreed, n)};
}

ScramblingTemplate make_template(std::size_t len, std::uint64_t seed) {
    if (len == 0) throw std::invalid_argument("make_template: need len >= 1");
    std::mt19937_64 rng = make_engine(seed, kStreamTemplate);
    BitString bits;
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < len; ++i) {
        if (i % 64 == 0) word = rng();
        bits.push_back(((word >> (63 - (i % 64))) & 1) != 0);
    }
    return ScramblingTemplate(std::move(bits));
}

SessionRecord run_scrambled_block(const EntangledState& state, const ScramblingTemplate& tmpl,
                                  std::size_t n, AxisPolicy policy, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("run_scrambled_block: need n >= 1");
    if (tmpl.size() <= n)
        throw std::invalid_argument("run_scrambled_block: template length " +
                                    std::to_string(tmpl.size()) + " must exceed block length " +
                                    std::to_string(n));
    TemplateCursor cursor(tmpl.bits());
    std::mt19937_64 rng = make_engine(seed, kStreamOutcomes);
    BitString bob, alice;

    if (policy == AxisPolicy::fixed) {
        const MeasurementBasis agreed = MeasurementBasis::identity();
        const JointOutcomeDist dist = joint_distribution(state, agreed);
        for (std::size_t i = 0; i < n; ++i) {
            const auto [b, a] = sample_joint(dist, uniform01(rng));
            bob.push_back(b);
            alice.push_back(a);
        }
        return SessionRecord{std::move(bob), std::move(alice), AxisSequence::repeated(agreed, n)};
    }

    std::vector<MeasurementBasis> axes;
    axes.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        axes.push_back(draw_axis(policy, cursor, tmpl.size()));
        const JointOutcomeDist dist = joint_distribution(state, axes.back());
        const auto [b, a] = sample_joint(dist, uniform01(rng));
        bob.push_back(b);
        alice.push_back(a);
    }
    return SessionRecord{std::move(bob), std::move(alice), AxisSequence::from_list(std::move(axes))};
}

MarginalReport signaling_experiment(const EntangledState& state, const MeasurementBasis& alt_basis,
                                    std::size_t blocks, std::size_t block_len, std::uint64_t seed) {
    if (blocks < 2) throw std::invalid_argument("signaling_experiment: need at least 2 blocks");
    if (block_len == 0) throw std::invalid_argument("signaling_experiment: need block_len >= 1");

    const MeasurementBasis agreed = MeasurementBasis::identity();
    MarginalReport report;
    report.blocks.reserve(blocks);

    double bob_sum[2] = {0.0, 0.0};
    double alice_sum[2] = {0.0, 0.0};
    std::size_t group_count[2] = {0, 0};

    for (std::size_t blk = 0; blk < blocks; ++blk) {
        const bool alt = (blk % 2) == 1;  // even blocks fixed, odd blocks alternate
        const MeasurementBasis& basis = alt ? alt_basis : agreed;
        const JointOutcomeDist dist = joint_distribution(state, basis);
        std::mt19937_64 rng = make_engine(derive_seed(seed, kStreamOutcomes), blk);
        std::size_t bob_ones = 0, alice_ones = 0;
        for (std::size_t i = 0; i < block_len; ++i) {
            const auto [b, a] = sample_joint(dist, uniform01(rng));
            bob_ones += b;
            alice_ones += a;
        }
        const double bf = static_cast<double>(bob_ones) / static_cast<double>(block_len);
        const double af = static_cast<double>(alice_ones) / static_cast<double>(block_len);
        report.blocks.push_back(BlockMarginal{blk, alt, bf, af});
        bob_sum[alt] += bf;
        alice_sum[alt] += af;
        ++group_count[alt];
    }

    report.bob_freq_fixed = bob_sum[0] / static_cast<double>(group_count[0]);
    report.bob_freq_alt = bob_sum[1] / static_cast<double>(group_count[1]);
    report.alice_freq_fixed = alice_sum[0] / static_cast<double>(group_count[0]);
    report.alice_freq_alt = alice_sum[1] / static_cast<double>(group_count[1]);
    report.alice_diff = std::abs(report.alice_freq_fixed - report.alice_freq_alt);

    // two-sample binomial standard error at the common expected marginal
    const double p = state.alpha_sq();
    const double n_fixed = static_cast<double>(group_count[0]) * static_cast<double>(block_len);
    const double n_alt = static_cast<double>(group_count[1]) * static_cast<double>(block_len);
    report.alice_combined_se = std::sqrt(p * (1.0 - p) * (1.0 / n_fixed + 1.0 / n_alt));
    report.alice_indistinguishable = report.alice_diff <= 4.0 * report.alice_combined_se + 1e-15;
    return report;
}

int decide_block(const BitString& block, double p, const ProtocolConfig& config,
                 DecisionSource source, std::optional<BlockTruth> truth, std::mt19937_64& rng) {
    config.validate();
    if (block.size() != config.block_len)
        throw std::invalid_argument("decide_block: block length " + std::to_string(block.size()) +
                                    " does not match configured " + std::to_string(config.block_len));
    switch (source) {
        case DecisionSource::estimator: {
            const auto verdict = ait::p_compressibility_test(block, p, config.decision_margin);
            return verdict.verdict == ait::Compressibility::p_compressible ? 0 : 1;
        }
        case DecisionSource::modeled_error: {
            if (!truth.has_value())
                throw std::invalid_argument("decide_block: modeled_error requires the block's ground truth");
            if (*truth == BlockTruth::p_incompressible) return 1;  // never misjudged
            return bernoulli(rng, config.p_omega) ? 1 : 0;
        }
    }
    throw std::logic_error("decide_block: unknown decision source");
}

TransmitResult transmit_message(const EntangledState& state, const BitString& message,
                                const ProtocolConfig& config, double p_n) {
    config.validate();
    if (message.empty()) throw std::invalid_argument("transmit_message: empty message");
    if (!(p_n >= 0.0 && p_n <= 1.0))
        throw std::invalid_argument("transmit_message: p_n must lie in [0,1]");

    const std::size_t n = config.block_len;
    const double p = state.alpha_sq();
    std::mt19937_64 truth_rng = make_engine(config.seed, kStreamTruth);
    std::mt19937_64 decision_rng = make_engine(config.seed, kStreamDecision);

    TransmitResult result;
    result.predicted_p0 = 1.0 - (1.0 - config.p_omega) * p_n;
    result.predicted_p1 = 0.0;
    result.blocks.reserve(message.size());

    for (std::size_t i = 0; i < message.size(); ++i) {
        const bool sent = message.bit(i) != 0;
        const std::uint64_t block_seed = derive_seed(derive_seed(config.seed, kStreamOutcomes), i);

        SessionRecord record = [&] {
            if (!sent) {
                // 0-bit: leave the axis alone for the whole block
                return run_standard_session(state, n, block_seed);
            }
            // 1-bit: scramble the axes with a fresh template
            const std::uint64_t tmpl_seed = derive_seed(derive_seed(config.seed, kStreamTemplate), i);
            const ScramblingTemplate tmpl = make_template(n + 64, tmpl_seed);
            return run_scrambled_block(state, tmpl, n, config.axis_policy, block_seed);
        }();

        // ground truth: scrambled blocks are incompressible; standard
        // blocks are compressible with the injected probability p_n
        const BlockTruth truth = sent                              ? BlockTruth::p_incompressible
                                 : bernoulli(truth_rng, p_n)       ? BlockTruth::p_compressible
                                                                   : BlockTruth::p_incompressible;
        const int verdict =
            decide_block(record.alice, p, config, DecisionSource::modeled_error, truth, decision_rng);
        result.received.push_back(verdict != 0);

        if (sent) {
            ++result.sent1;
            if (verdict == 0) ++result.flipped1;
        } else {
            ++result.sent0;
            if (verdict == 1) ++result.flipped0;
        }
        result.blocks.push_back(BlockStat{i, record.bob.one_frequency(), record.alice.one_frequency(), verdict});
    }

    result.empirical_p0 =
        result.sent0 ? static_cast<double>(result.flipped0) / static_cast<double>(result.sent0) : 0.0;
    result.empirical_p1 =
        result.sent1 ? static_cast<double>(result.flipped1) / static_cast<double>(result.sent1) : 0.0;
    return result;
}

void write_session_record(std::ostream& os, const SessionRecord& record) {
    if (record.bob.size() != record.alice.size())
        throw std::invalid_argument("write_session_record: string lengths differ");
    std::uint8_t header[8];
    const std::uint64_t n = record.bob.size();
    for (int i = 0; i < 8; ++i) header[i] = static_cast<std::uint8_t>((n >> (8 * i)) & 0xFF);
    os.write(reinterpret_cast<const char*>(header), 8);
    os.write(reinterpret_cast<const char*>(record.bob.bytes().data()),
             static_cast<std::streamsize>(record.bob.bytes().size()));
    os.write(reinterpret_cast<const char*>(record.alice.bytes().data()),
             static_cast<std::streamsize>(record.alice.bytes().size()));
}

std::pair<BitString, BitString> read_session_strings(std::istream& is) {
    std::uint8_t header[8];
    is.read(reinterpret_cast<char*>(header), 8);
    if (!is) throw std::runtime_error("read_session_strings: truncated header");
    std::uint64_t n = 0;
    for (int i = 0; i < 8; ++i) n |= static_cast<std::uint64_t>(header[i]) << (8 * i);
    const std::size_t nbytes = static_cast<std::size_t>((n + 7) / 8);
    auto read_payload = [&]() {
        std::vector<char> buf(nbytes);
        is.read(buf.data(), static_cast<std::streamsize>(nbytes));
        if (!is) throw std::runtime_error("read_session_strings: truncated payload");
        BitString s;
        for (std::size_t i = 0; i < n; ++i)
            s.push_back((static_cast<std::uint8_t>(buf[i >> 3]) >> (7 - (i & 7))) & 1);
        return s;
    };
    BitString bob = read_payload();
    BitString alice = read_payload();
    return {std::move(bob), std::move(alice)};
}

}  // namespace qrlab::protocol
