// protocol.hpp
// The Bob/Alice measurement sessions over a stream of identical entangled
// pairs: standard correlated sessions, template-scrambled measurement
// blocks, the axis-switch signaling experiment, per-block compressibility
// decisions, and the end-to-end block-coded transmission channel.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "qrlab/bitstring.hpp"
#include "qrlab/qstate.hpp"

namespace qrlab::protocol {

enum class AxisPolicy { fixed, three_axis_uniform, haar_uniform };

// Classically generated stand-in for an incompressible string: Bob draws
// his measurement directions from it. Must be longer than the block it
// scrambles; the bits are consumed as a cyclic stream.
class ScramblingTemplate {
public:
    explicit ScramblingTemplate(BitString bits);
    const BitString& bits() const noexcept { return bits_; }
    std::size_t size() const noexcept { return bits_.size(); }

private:
    BitString bits_;
};

struct ProtocolConfig {
    std::size_t block_len = 64;  // N, bits carried per transmitted data bit
    AxisPolicy axis_policy = AxisPolicy::three_axis_uniform;
    std::uint64_t seed = 0;
    double p_omega = 0.0;          // decoder error on truly compressible blocks
    double decision_margin = 0.2;  // estimator-mode threshold margin

    // Throws std::invalid_argument on block_len < 64, p_omega outside
    // [0,1), or margin outside (0,1).
    void validate() const;
};

// Axis-per-measurement record. Standard sessions use one constant axis, so
// the constant case is stored without materializing n copies.
class AxisSequence {
public:
    static AxisSequence repeated(const qstate::MeasurementBasis& basis, std::size_t n);
    static AxisSequence from_list(std::vector<qstate::MeasurementBasis> axes);

    std::size_t size() const noexcept { return size_; }
    const qstate::MeasurementBasis& at(std::size_t i) const;

private:
    AxisSequence(std::vector<qstate::MeasurementBasis> axes, std::size_t n, bool repeated)
        : axes_(std::move(axes)), size_(n), repeated_(repeated) {}

    std::vector<qstate::MeasurementBasis> axes_;
    std::size_t size_ = 0;
    bool repeated_ = false;
};

// One measurement session: the two recorded strings plus the axis Bob used
// for each pair. The three lengths always agree.
struct SessionRecord {
    BitString bob;
    BitString alice;
    AxisSequence bob_axes;
};

// Both parties measure along the agreed axis for n pairs. The two strings
// come out bit-for-bit identical and the 1-frequency converges to |alpha|^2.
SessionRecord run_standard_session(const qstate::EntangledState& state, std::size_t n,
                                   std::uint64_t seed);

// Seeded template of `len` random bits.
ScramblingTemplate make_template(std::size_t len, std::uint64_t seed);

// Bob draws n measurement axes from the template under `policy`; Alice
// stays on the agreed axis. Her 1-frequency remains |alpha|^2 regardless.
// Throws when the template is not longer than n.
SessionRecord run_scrambled_block(const qstate::EntangledState& state,
                                  const ScramblingTemplate& tmpl, std::size_t n, AxisPolicy policy,
                                  std::uint64_t seed);

// Per-block marginals from the signaling attempt.
struct BlockMarginal {
    std::size_t index;
    bool alt_axis;  // true when Bob measured along the alternate basis
    double bob_freq;
    double alice_freq;
};

struct MarginalReport {
    std::vector<BlockMarginal> blocks;
    double bob_freq_fixed = 0.0;
    double bob_freq_alt = 0.0;
    double alice_freq_fixed = 0.0;
    double alice_freq_alt = 0.0;
    double alice_diff = 0.0;         // |fixed - alt| group difference
    double alice_combined_se = 0.0;  // two-sample standard error
    // Group difference within 4 combined standard errors.
    bool alice_indistinguishable = false;
};

// Bob alternates blocks measured along the agreed axis with blocks along
// alt_basis; Alice's per-block 1-frequencies are compared across the two
// groups. Throws for fewer than 2 blocks.
MarginalReport signaling_experiment(const qstate::EntangledState& state,
                                    const qstate::MeasurementBasis& alt_basis, std::size_t blocks,
                                    std::size_t block_len, std::uint64_t seed);

enum class DecisionSource { estimator, modeled_error };

// Ground truth about a block, known to the simulator because it injected
// it; the modeled-error decision path consumes it.
enum class BlockTruth { p_compressible, p_incompressible };

// Alice's per-block decision: 0 = compressible, 1 = incompressible.
// modeled_error realizes the oracle error model exactly: a truly
// compressible block is misjudged with probability p_omega, an
// incompressible one never (`truth` is required, `rng` drives the error
// coin). estimator consults the phrase-count compressibility test with
// config.decision_margin.
int decide_block(const BitString& block, double p, const ProtocolConfig& config,
                 DecisionSource source, std::optional<BlockTruth> truth, std::mt19937_64& rng);

struct BlockStat {
    std::size_t index;
    double bob_freq;
    double alice_freq;
    int verdict;
};

struct TransmitResult {
    BitString received;
    std::uint64_t sent0 = 0, sent1 = 0;
    std::uint64_t flipped0 = 0, flipped1 = 0;  // 0->1 and 1->0 counts
    double empirical_p0 = 0.0;                 // flipped0 / sent0
    double empirical_p1 = 0.0;
    double predicted_p0 = 0.0;  // 1 - (1 - p_omega) p_n
    double predicted_p1 = 0.0;
    std::vector<BlockStat> blocks;
};

// Sends each message bit as one N-bit block: 0 via the agreed axis, 1 via
// a template-scrambled block. Alice decodes with decide_block in
// modeled_error mode; whether a standard block is truly compressible is
// injected as a Bernoulli(p_n) coin, since genuine compressibility of a
// simulated stream is out of reach by construction.
TransmitResult transmit_message(const qstate::EntangledState& state, const BitString& message,
                                const ProtocolConfig& config, double p_n);

// Wire format: 8-byte little-endian pair count n, then the packed Bob
// string, then the packed Alice string (ceil(n/8) bytes each, MSB-first).
// Axis metadata is not serialized.
void write_session_record(std::ostream& os, const SessionRecord& record);
std::pair<BitString, BitString> read_session_strings(std::istream& is);

}  // namespace qrlab::protocol
