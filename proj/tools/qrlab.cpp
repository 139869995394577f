// qrlab: seeded experiment runner for the entangled-pair protocol, the
// complexity toolkit, the asymmetric-channel capacity sweeps, and the
// bounded-machine omega laboratory. Every command writes its data files
// plus a JSON run manifest; identical invocations reproduce identical
// data files byte for byte (the manifest additionally records wall time).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qrlab/ait.hpp"
#include "qrlab/channel.hpp"
#include "qrlab/omega.hpp"
#include "qrlab/protocol.hpp"
#include "qrlab/qstate.hpp"
#include "qrlab/rng.hpp"

using json = nlohmann::json;
using namespace qrlab;
using qstate::EntangledState;
using qstate::MeasurementBasis;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
}

void write_packed_file(const std::string& path, const BitString& bits) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    bits.write_packed(out);
}

BitString read_bits_file(const std::string& path, const std::string& format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string raw = buf.str();

    auto try_packed = [&]() -> bool {
        if (raw.size() < 8) return false;
        std::uint64_t n = 0;
        for (int i = 0; i < 8; ++i) n |= static_cast<std::uint64_t>(static_cast<unsigned char>(raw[i])) << (8 * i);
        return raw.size() == 8 + (n + 7) / 8;
    };

    std::string mode = format;
    if (mode == "auto") mode = try_packed() ? "packed" : "ascii";
    if (mode == "packed") {
        std::istringstream stream(raw);
        return BitString::read_packed(stream);
    }
    return BitString::from_ascii(raw);
}

// manifest written alongside every command's outputs; wall_time_seconds is
// the only field that varies between identical runs
void write_manifest(const std::string& out_prefix, const std::string& command, const json& params,
                    const json& summary, double wall_seconds) {
    json manifest{
        {"command", command},
        {"params", params},
        {"artifact_version", kVersion},
        {"seed_splitting", "stream k of master seed s = mix64(mix64(s) ^ mix64(k)), splitmix64 finalizer"},
        {"wall_time_seconds", wall_seconds},
        {"summary", summary},
    };
    write_text_file(out_prefix + ".manifest.json", manifest.dump(2) + "\n");
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

protocol::AxisPolicy parse_policy(const std::string& name) {
    if (name == "fixed") return protocol::AxisPolicy::fixed;
    if (name == "three-axis") return protocol::AxisPolicy::three_axis_uniform;
    if (name == "haar") return protocol::AxisPolicy::haar_uniform;
    throw CLI::ValidationError("--policy", "unknown policy '" + name + "'");
}

// --- commands ---

int cmd_session(double alpha2, std::size_t n, std::uint64_t seed, const std::string& out) {
    Stopwatch timer;
    const auto state = EntangledState::from_alpha_sq(alpha2);
    const auto record = protocol::run_standard_session(state, n, seed);

    write_packed_file(out + ".bob.bits", record.bob);
    write_packed_file(out + ".alice.bits", record.alice);

    const bool identical = record.bob == record.alice;
    std::ostringstream csv;
    csv << "n,bob_freq,alice_freq,identical\n"
        << n << ',' << fmt("%.10f", record.bob.one_frequency()) << ','
        << fmt("%.10f", record.alice.one_frequency()) << ',' << (identical ? 1 : 0) << '\n';
    write_text_file(out + ".stats.csv", csv.str());

    write_manifest(out, "session",
                   json{{"alpha2", alpha2}, {"n", n}, {"seed", seed}, {"out", out}},
                   json{{"bob_freq", record.bob.one_frequency()},
                        {"alice_freq", record.alice.one_frequency()},
                        {"identical", identical}},
                   timer.seconds());
    if (!identical) {
        std::cerr << "session: strings differ, which standard sessions never allow\n";
        return 1;
    }
    std::cout << "session: n=" << n << " freq=" << fmt("%.6f", record.bob.one_frequency())
              << " identical=yes\n";
    return 0;
}

int cmd_signal(double alpha2, double basis_c2, std::size_t blocks, std::size_t block_len,
               std::uint64_t seed, const std::string& out) {
    Stopwatch timer;
    const auto state = EntangledState::from_alpha_sq(alpha2);
    const auto report =
        protocol::signaling_experiment(state, MeasurementBasis::from_c_sq(basis_c2), blocks, block_len, seed);

    std::ostringstream csv;
    csv << "block_index,bob_freq,alice_freq,verdict\n";
    for (const auto& blk : report.blocks) {
        csv << blk.index << ',' << fmt("%.10f", blk.bob_freq) << ',' << fmt("%.10f", blk.alice_freq)
            << ',' << (blk.alt_axis ? 1 : 0) << '\n';
    }
    write_text_file(out + ".csv", csv.str());

    write_manifest(out, "signal",
                   json{{"alpha2", alpha2},
                        {"basis_c2", basis_c2},
                        {"blocks", blocks},
                        {"block_len", block_len},
                        {"seed", seed},
                        {"out", out}},
                   json{{"bob_freq_fixed", report.bob_freq_fixed},
                        {"bob_freq_alt", report.bob_freq_alt},
                        {"alice_freq_fixed", report.alice_freq_fixed},
                        {"alice_freq_alt", report.alice_freq_alt},
                        {"alice_diff", report.alice_diff},
                        {"alice_combined_se", report.alice_combined_se},
                        {"alice_indistinguishable", report.alice_indistinguishable}},
                   timer.seconds());

    std::cout << "signal: bob " << fmt("%.6f", report.bob_freq_fixed) << " -> "
              << fmt("%.6f", report.bob_freq_alt) << ", alice " << fmt("%.6f", report.alice_freq_fixed)
              << " ~ " << fmt("%.6f", report.alice_freq_alt)
              << (report.alice_indistinguishable ? " (indistinguishable)\n" : " (DISTINGUISHABLE)\n");
    return report.alice_indistinguishable ? 0 : 1;
}

int cmd_transmit(const std::string& message_path, const std::string& format, double alpha2, double p_n,
                 double p_omega, std::size_t block_len, const std::string& policy, std::uint64_t seed,
                 const std::string& out) {
    Stopwatch timer;
    const BitString message = read_bits_file(message_path, format);
    const auto state = EntangledState::from_alpha_sq(alpha2);

    protocol::ProtocolConfig config;
    config.block_len = block_len;
    config.axis_policy = parse_policy(policy);
    config.seed = seed;
    config.p_omega = p_omega;
    const auto result = protocol::transmit_message(state, message, config, p_n);

    write_packed_file(out + ".received.bits", result.received);

    std::ostringstream blocks_csv;
    blocks_csv << "block_index,bob_freq,alice_freq,verdict\n";
    for (const auto& blk : result.blocks) {
        blocks_csv << blk.index << ',' << fmt("%.10f", blk.bob_freq) << ','
                   << fmt("%.10f", blk.alice_freq) << ',' << blk.verdict << '\n';
    }
    write_text_file(out + ".blocks.csv", blocks_csv.str());

    std::ostringstream confusion;
    confusion << "sent,received,count\n"
              << "0,0," << (result.sent0 - result.flipped0) << '\n'
              << "0,1," << result.flipped0 << '\n'
              << "1,0," << result.flipped1 << '\n'
              << "1,1," << (result.sent1 - result.flipped1) << '\n';
    write_text_file(out + ".confusion.csv", confusion.str());

    const auto implied = channel::capacity_closed_form(
        channel::params_from_protocol({p_n, p_omega, 0.0}));

    // the in-run assertion: empirical rates must sit within 4 binomial
    // standard errors of the predicted channel parameters
    bool ok = result.empirical_p1 == 0.0;
    if (result.sent0 > 0) {
        const double se = std::sqrt(result.predicted_p0 * (1.0 - result.predicted_p0) /
                                    static_cast<double>(result.sent0));
        ok = ok && std::abs(result.empirical_p0 - result.predicted_p0) <= 4.0 * se + 1e-15;
    }

    write_manifest(out, "transmit",
                   json{{"message", message_path},
                        {"alpha2", alpha2},
                        {"p_n", p_n},
                        {"p_omega", p_omega},
                        {"block_len", block_len},
                        {"policy", policy},
                        {"seed", seed},
                        {"out", out}},
                   json{{"message_bits", message.size()},
                        {"predicted_p0", result.predicted_p0},
                        {"predicted_p1", result.predicted_p1},
                        {"empirical_p0", result.empirical_p0},
                        {"empirical_p1", result.empirical_p1},
                        {"implied_capacity", implied.capacity},
                        {"within_four_se", ok}},
                   timer.seconds());

    std::cout << "transmit: " << message.size() << " bits, p0 " << fmt("%.6f", result.empirical_p0)
              << " (predicted " << fmt("%.6f", result.predicted_p0) << "), implied capacity "
              << fmt("%.6f", implied.capacity) << '\n';
    return ok ? 0 : 1;
}

int cmd_capacity_sweep(std::size_t grid_points, std::size_t resolution, const std::string& out) {
    Stopwatch timer;
    if (grid_points < 2) throw CLI::ValidationError("--grid-points", "need at least 2 per axis");

    std::ostringstream csv;
    csv << "p0,p1,capacity_closed,capacity_brute,abs_diff,optimal_prior\n";
    double worst = 0.0;
    for (std::size_t i = 0; i < grid_points; ++i) {
        for (std::size_t j = 0; j < grid_points; ++j) {
            const double p0 = static_cast<double>(i) / static_cast<double>(grid_points - 1);
            const double p1 = static_cast<double>(j) / static_cast<double>(grid_points - 1);
            const auto closed = channel::capacity_closed_form({p0, p1});
            const auto brute = channel::capacity_bruteforce({p0, p1}, resolution);
            const double diff = std::abs(closed.capacity - brute.capacity);
            worst = std::max(worst, diff);
            csv << fmt("%.6f", p0) << ',' << fmt("%.6f", p1) << ',' << fmt("%.12f", closed.capacity)
                << ',' << fmt("%.12f", brute.capacity) << ',' << fmt("%.3e", diff) << ','
                << fmt("%.10f", closed.optimal_input_prior) << '\n';
        }
    }
    write_text_file(out + ".csv", csv.str());

    const bool ok = worst <= 1e-6;
    write_manifest(out, "capacity-sweep",
                   json{{"grid_points", grid_points}, {"resolution", resolution}, {"out", out}},
                   json{{"max_abs_diff", worst}, {"oracle_agreement", ok}},
                   timer.seconds());
    std::cout << "capacity-sweep: " << grid_points << "x" << grid_points << " grid, max |closed-brute| = "
              << fmt("%.3e", worst) << '\n';
    return ok ? 0 : 1;
}

int cmd_complexity(const std::string& in_path, const std::string& format, double p, double margin,
                   const std::string& out) {
    Stopwatch timer;
    const BitString bits = read_bits_file(in_path, format);
    const auto verdict = ait::p_compressibility_test(bits, p, margin);

    std::ostringstream csv;
    csv << "n,p,margin,estimate_bits,threshold_bits,verdict\n"
        << bits.size() << ',' << fmt("%.6f", p) << ',' << fmt("%.6f", margin) << ','
        << fmt("%.6f", verdict.estimate_bits) << ',' << fmt("%.6f", verdict.threshold_bits) << ','
        << (verdict.verdict == ait::Compressibility::p_compressible ? "p_compressible"
                                                                    : "p_incompressible")
        << '\n';
    write_text_file(out + ".csv", csv.str());

    write_manifest(out, "complexity",
                   json{{"in", in_path}, {"p", p}, {"margin", margin}, {"out", out}},
                   json{{"n", bits.size()},
                        {"estimate_bits", verdict.estimate_bits},
                        {"threshold_bits", verdict.threshold_bits},
                        {"compressible", verdict.verdict == ait::Compressibility::p_compressible}},
                   timer.seconds());
    std::cout << "complexity: n=" << bits.size() << " estimate=" << fmt("%.1f", verdict.estimate_bits)
              << " threshold=" << fmt("%.1f", verdict.threshold_bits) << " -> "
              << (verdict.verdict == ait::Compressibility::p_compressible ? "p_compressible\n"
                                                                          : "p_incompressible\n");
    return 0;
}

int cmd_champernowne(std::size_t n, const std::string& format, const std::string& out) {
    Stopwatch timer;
    const BitString bits = ait::champernowne_bits(n);
    if (format == "ascii")
        write_text_file(out + ".bits.txt", bits.to_ascii() + "\n");
    else
        write_packed_file(out + ".bits", bits);
    write_manifest(out, "champernowne", json{{"n", n}, {"format", format}, {"out", out}},
                   json{{"ones", bits.count_ones()}}, timer.seconds());
    std::cout << "champernowne: wrote " << n << " bits\n";
    return 0;
}

int cmd_omega(std::size_t max_len, std::uint64_t budget, const std::string& out) {
    Stopwatch timer;
    const auto ledger = omega::dovetail_run(max_len, budget);

    std::ostringstream ledger_text;
    omega::write_ledger(ledger_text, ledger);
    write_text_file(out + ".ledger.txt", ledger_text.str());

    const std::string report = "omega = " + ledger.omega_bound.as_fraction() + "\nomega = " +
                               ledger.omega_bound.as_decimal(20) + "\nhalted = " +
                               std::to_string(ledger.halted.size()) + " of " +
                               std::to_string(omega::enumerate_programs(max_len).size()) +
                               " programs\nkraft = " + omega::kraft_sum(max_len).as_fraction() + "\n";
    write_text_file(out + ".report.txt", report);

    write_manifest(out, "omega", json{{"max_len", max_len}, {"budget", budget}, {"out", out}},
                   json{{"omega_fraction", ledger.omega_bound.as_fraction()},
                        {"omega_decimal", ledger.omega_bound.as_decimal(20)},
                        {"halted", ledger.halted.size()}},
                   timer.seconds());
    std::cout << report;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entangled-pair measurement, complexity, and channel-capacity experiments"};
    app.require_subcommand(1);

    double alpha2 = 0.5, basis_c2 = 0.25, p_n = 1.0, p_omega = 0.0, p = 0.5, margin = 0.2;
    std::size_t n = 1024, block_len = 64, blocks = 10, grid_points = 101, resolution = 1000,
                max_len = 16;
    std::uint64_t seed = 1, budget = 1'000'000;
    std::string out = "run", message_path, in_path, policy = "three-axis", format = "auto",
                champ_format = "packed";

    auto* session = app.add_subcommand("session", "run a standard correlated session");
    session->add_option("--alpha2", alpha2, "|alpha|^2 of the pair state")->check(CLI::Range(0.0, 1.0));
    session->add_option("--n", n, "number of measured pairs");
    session->add_option("--seed", seed, "master seed");
    session->add_option("--out", out, "output path prefix");

    auto* signal = app.add_subcommand("signal", "axis-switch statistical signaling attempt");
    signal->add_option("--alpha2", alpha2, "|alpha|^2 of the pair state")->check(CLI::Range(0.0, 1.0));
    signal->add_option("--basis-c2", basis_c2, "|c|^2 of Bob's alternate basis")->check(CLI::Range(0.0, 1.0));
    signal->add_option("--n", blocks, "number of blocks (alternating fixed/alternate)");
    signal->add_option("--block-len", block_len, "measurements per block");
    signal->add_option("--seed", seed, "master seed");
    signal->add_option("--out", out, "output path prefix");

    auto* transmit = app.add_subcommand("transmit", "send a message over the block-coded channel");
    transmit->add_option("--message", message_path, "message bit file")->required();
    transmit->add_option("--format", format, "message format: auto|packed|ascii");
    transmit->add_option("--alpha2", alpha2, "|alpha|^2 of the pair state")->check(CLI::Range(0.0, 1.0));
    transmit->add_option("--p-n", p_n, "probability a standard block is compressible")->check(CLI::Range(0.0, 1.0));
    transmit->add_option("--p-omega", p_omega, "decoder error on compressible blocks")->check(CLI::Range(0.0, 1.0));
    transmit->add_option("--block-len", block_len, "bits per transmitted data bit");
    transmit->add_option("--policy", policy, "scrambling policy: fixed|three-axis|haar");
    transmit->add_option("--seed", seed, "master seed");
    transmit->add_option("--out", out, "output path prefix");

    auto* sweep = app.add_subcommand("capacity-sweep", "closed form vs brute force over a grid");
    sweep->add_option("--grid-points", grid_points, "grid points per axis");
    sweep->add_option("--resolution", resolution, "brute-force prior grid resolution");
    sweep->add_option("--out", out, "output path prefix");

    auto* complexity = app.add_subcommand("complexity", "phrase-count compressibility verdict");
    complexity->add_option("--in", in_path, "bit file to analyze")->required();
    complexity->add_option("--format", format, "input format: auto|packed|ascii");
    complexity->add_option("--p", p, "expected 1-frequency")->check(CLI::Range(0.0, 1.0));
    complexity->add_option("--margin", margin, "threshold margin");
    complexity->add_option("--out", out, "output path prefix");

    auto* champernowne = app.add_subcommand("champernowne", "emit the champernowne bit sequence");
    champernowne->add_option("--n", n, "number of bits");
    champernowne->add_option("--format", champ_format, "output format: packed|ascii");
    champernowne->add_option("--out", out, "output path prefix");

    auto* omega_cmd = app.add_subcommand("omega", "dovetail the bounded machine and report omega");
    omega_cmd->add_option("--max-len", max_len, "program length bound")->check(CLI::Range(std::size_t{0}, omega::kMaxEnumerationLen));
    omega_cmd->add_option("--budget", budget, "step budget per program");
    omega_cmd->add_option("--seed", seed, "accepted for interface symmetry; the run is deterministic");
    omega_cmd->add_option("--out", out, "output path prefix");

    CLI11_PARSE(app, argc, argv);

    try {
        if (session->parsed()) return cmd_session(alpha2, n, seed, out);
        if (signal->parsed()) return cmd_signal(alpha2, basis_c2, blocks, block_len, seed, out);
        if (transmit->parsed())
            return cmd_transmit(message_path, format, alpha2, p_n, p_omega, block_len, policy, seed, out);
        if (sweep->parsed()) return cmd_capacity_sweep(grid_points, resolution, out);
        if (complexity->parsed()) return cmd_complexity(in_path, format, p, margin, out);
        if (champernowne->parsed()) return cmd_champernowne(n, champ_format, out);
        if (omega_cmd->parsed()) return cmd_omega(max_len, budget, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
