#include "qrlab/omega.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <stdexcept>

namespace qrlab::omega {

// --- exact dyadic arithmetic ---

namespace {
constexpr unsigned kMaxExp = 62;  // keeps shifts and sums inside uint64
}

void Dyadic::normalize() {
    if (num_ == 0) {
        exp_ = 0;
        return;
    }
    const unsigned tz = static_cast<unsigned>(std::countr_zero(num_));
    const unsigned shift = tz < exp_ ? tz : exp_;
    num_ >>= shift;
    exp_ -= shift;
}

Dyadic Dyadic::one() { return make(1, 0); }

Dyadic Dyadic::pow2_neg(unsigned k) {
    if (k > kMaxExp) throw std::overflow_error("Dyadic::pow2_neg: exponent too large");
    return make(1, k);
}

Dyadic Dyadic::make(std::uint64_t num, unsigned exp) {
    if (exp > kMaxExp) throw std::overflow_error("Dyadic::make: exponent too large");
    Dyadic d;
    d.num_ = num;
    d.exp_ = exp;
    d.normalize();
    return d;
}

Dyadic Dyadic::operator+(const Dyadic& other) const {
    const unsigned exp = exp_ > other.exp_ ? exp_ : other.exp_;
    if (exp > kMaxExp) throw std::overflow_error("Dyadic::operator+: exponent too large");
    const std::uint64_t a = num_ << (exp - exp_);
    const std::uint64_t b = other.num_ << (exp - other.exp_);
    if (a > UINT64_MAX - b) throw std::overflow_error("Dyadic::operator+: numerator overflow");
    return make(a + b, exp);
}

Dyadic Dyadic::operator-(const Dyadic& other) const {
    const unsigned exp = exp_ > other.exp_ ? exp_ : other.exp_;
    const std::uint64_t a = num_ << (exp - exp_);
    const std::uint64_t b = other.num_ << (exp - other.exp_);
    if (b > a) throw std::underflow_error("Dyadic::operator-: result would be negative");
    return make(a - b, exp);
}

bool Dyadic::operator==(const Dyadic& other) const noexcept {
    return num_ == other.num_ && exp_ == other.exp_;
}

bool Dyadic::operator<(const Dyadic& other) const noexcept {
    const unsigned exp = exp_ > other.exp_ ? exp_ : other.exp_;
    return (num_ << (exp - exp_)) < (other.num_ << (exp - other.exp_));
}

bool Dyadic::operator<=(const Dyadic& other) const noexcept {
    const unsigned exp = exp_ > other.exp_ ? exp_ : other.exp_;
    return (num_ << (exp - exp_)) <= (other.num_ << (exp - other.exp_));
}

std::string Dyadic::as_fraction() const {
    if (exp_ == 0) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(std::uint64_t{1} << exp_);
}

std::string Dyadic::as_decimal(unsigned digits) const {
    // long division of num by 2^exp, one decimal digit at a time; the
    // intermediate rem*10 needs 66 bits in the worst case
    const std::uint64_t whole = num_ >> exp_;
    std::string out = std::to_string(whole);
    out.push_back('.');
    const std::uint64_t den = std::uint64_t{1} << exp_;
    unsigned __int128 rem = num_ - (whole << exp_);
    for (unsigned i = 0; i < digits; ++i) {
        rem *= 10;
        out.push_back(static_cast<char>('0' + static_cast<std::uint64_t>(rem / den)));
        rem %= den;
    }
    return out;
}

double Dyadic::to_double() const {
    return static_cast<double>(num_) / static_cast<double>(std::uint64_t{1} << exp_);
}

// --- the machine ---

namespace {

enum Opcode : unsigned {
    kHalt = 0,
    kOut0 = 1,
    kOut1 = 2,
    kInc = 3,
    kDec = 4,
    kJz = 5,
    kJmpBack2 = 6,
    kNop = 7,
};

// header 1^L 0 + 3L opcode bits
std::vector<unsigned> decode_program(const BitString& code) {
    std::size_t l = 0;
    while (l < code.size() && code.bit(l) == 1) ++l;
    if (l == code.size()) throw std::invalid_argument("decode_program: missing header terminator");
    const std::size_t body_start = l + 1;
    if (code.size() != body_start + 3 * l)
        throw std::invalid_argument("decode_program: code length " + std::to_string(code.size()) +
                                    " does not match header (expected " + std::to_string(4 * l + 1) + ")");
    std::vector<unsigned> ops(l);
    for (std::size_t i = 0; i < l; ++i) {
        ops[i] = static_cast<unsigned>(code.bit(body_start + 3 * i) << 2 |
                                       code.bit(body_start + 3 * i + 1) << 1 |
                                       code.bit(body_start + 3 * i + 2));
    }
    return ops;
}

// Mutable execution state, stepped one instruction at a time so the
// dovetailer can interleave programs.
struct Execution {
    explicit Execution(std::vector<unsigned> o) : ops(std::move(o)) {}

    std::vector<unsigned> ops;
    std::size_t pc = 0;
    std::uint64_t reg = 0;
    std::uint64_t steps = 0;
    BitString output;
    bool halted = false;

    // Executes one instruction; returns true if the program halted.
    bool step() {
        if (pc >= ops.size()) {
            halted = true;
            return true;
        }
        const unsigned op = ops[pc];
        ++steps;
        switch (op) {
            case kHalt:
                halted = true;
                return true;
            case kOut0:
                output.push_back(false);
                ++pc;
                break;
            case kOut1:
                output.push_back(true);
                ++pc;
                break;
            case kInc:
                ++reg;
                ++pc;
                break;
            case kDec:
                if (reg > 0) --reg;
                ++pc;
                break;
            case kJz:
                pc += (reg == 0) ? 2 : 1;
                break;
            case kJmpBack2:
                pc = pc >= 2 ? pc - 2 : 0;
                break;
            default:  // kNop
                ++pc;
                break;
        }
        if (pc >= ops.size()) {
            halted = true;
            return true;
        }
        return false;
    }
};

}  // namespace

std::vector<ToyProgram> enumerate_programs(std::size_t max_len) {
    if (max_len > kMaxEnumerationLen)
        throw std::invalid_argument("enumerate_programs: max_len " + std::to_string(max_len) +
                                    " exceeds exhaustion bound " + std::to_string(kMaxEnumerationLen));
    std::vector<ToyProgram> programs;
    for (std::size_t l = 0; 4 * l + 1 <= max_len; ++l) {
        const std::uint64_t bodies = std::uint64_t{1} << (3 * l);
        for (std::uint64_t body = 0; body < bodies; ++body) {
            BitString code;
            for (std::size_t i = 0; i < l; ++i) code.push_back(true);
            code.push_back(false);
            for (std::size_t b = 0; b < 3 * l; ++b)
                code.push_back(((body >> (3 * l - 1 - b)) & 1) != 0);
            programs.push_back(ToyProgram{std::move(code)});
        }
    }
    return programs;
}

MachineResult run_program(const ToyProgram& program, std::uint64_t budget) {
    Execution exec(decode_program(program.code));
    while (!exec.halted && exec.steps < budget) exec.step();
    if (exec.halted) return MachineResult{RunStatus::halted, std::move(exec.output), exec.steps};
    return MachineResult{RunStatus::exhausted_budget, BitString{}, exec.steps};
}

OmegaLedger dovetail_run(std::size_t max_len, std::uint64_t budget) {
    if (budget == 0) throw std::invalid_argument("dovetail_run: budget must be >= 1");
    std::vector<ToyProgram> programs = enumerate_programs(max_len);

    std::vector<Execution> execs;
    execs.reserve(programs.size());
    for (const ToyProgram& p : programs) execs.emplace_back(decode_program(p.code));

    OmegaLedger ledger;
    ledger.max_len = max_len;
    ledger.budget = budget;

    // round-robin: one step per live program per round; results do not
    // depend on the schedule, but halting order is the enumeration order
    std::vector<std::size_t> live(programs.size());
    for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;
    std::vector<std::size_t> halted_idx;
    std::size_t n_live = live.size();
    while (n_live > 0) {
        std::size_t w = 0;
        for (std::size_t r = 0; r < n_live; ++r) {
            const std::size_t idx = live[r];
            Execution& e = execs[idx];
            if (e.step()) {
                halted_idx.push_back(idx);
            } else if (e.steps < budget) {
                live[w++] = idx;
            }
            // otherwise budget exhausted without halting; drop it
        }
        n_live = w;
    }

    std::sort(halted_idx.begin(), halted_idx.end());
    for (std::size_t idx : halted_idx) {
        Execution& e = execs[idx];
        ledger.omega_bound = ledger.omega_bound + Dyadic::pow2_neg(static_cast<unsigned>(programs[idx].length()));
        ledger.halted.push_back(LedgerEntry{std::move(programs[idx]), e.steps, std::move(e.output)});
    }
    return ledger;
}

Dyadic kraft_sum(std::size_t max_len) {
    Dyadic total;
    for (std::size_t l = 0; 4 * l + 1 <= max_len; ++l) {
        // 8^l programs of weight 2^-(4l+1) contribute 2^-(l+1)
        total = total + Dyadic::pow2_neg(static_cast<unsigned>(l + 1));
    }
    return total;
}

HaltingVerdict halting_decision(const ToyProgram& pi0, const Dyadic& omega, std::size_t max_len,
                                std::uint64_t budget) {
    if (pi0.length() > max_len)
        throw std::invalid_argument("halting_decision: pi0 is longer than the enumeration bound");
    decode_program(pi0.code);  // reject malformed candidates up front
    const Dyadic threshold = omega - Dyadic::pow2_neg(static_cast<unsigned>(pi0.length()));

    std::vector<ToyProgram> programs = enumerate_programs(max_len);
    std::vector<Execution> execs;
    execs.reserve(programs.size());
    for (const ToyProgram& p : programs) execs.emplace_back(decode_program(p.code));

    Dyadic accumulated;
    std::vector<std::size_t> live(programs.size());
    for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;
    std::size_t n_live = live.size();
    while (n_live > 0) {
        std::size_t w = 0;
        for (std::size_t r = 0; r < n_live; ++r) {
            const std::size_t idx = live[r];
            Execution& e = execs[idx];
            if (e.step()) {
                if (programs[idx].code == pi0.code) return HaltingVerdict::halts;
                accumulated = accumulated + Dyadic::pow2_neg(static_cast<unsigned>(programs[idx].length()));
                if (accumulated > omega)
                    throw std::runtime_error("halting_decision: halted-program sum exceeds the supplied omega");
                if (accumulated > threshold) return HaltingVerdict::never_halts;
            } else if (e.steps < budget) {
                live[w++] = idx;
            }
        }
        n_live = w;
    }
    // every program resolved, pi0 never halted, threshold never crossed:
    // the supplied omega overstates the machine's halting probability
    throw std::runtime_error("halting_decision: enumeration exhausted without a decision; omega inconsistent");
}

HaltingVerdict halting_decision(const ToyProgram& pi0, const OmegaLedger& ledger) {
    return halting_decision(pi0, ledger.omega_bound, ledger.max_len, ledger.budget);
}

OmegaCompressibility compressible_via_omega(const BitString& s, std::size_t program_budget_bits,
                                            const OmegaLedger& ledger) {
    if (program_budget_bits > ledger.max_len)
        throw std::invalid_argument("compressible_via_omega: program budget exceeds ledger enumeration bound");
    for (const LedgerEntry& entry : ledger.halted) {
        if (entry.program.length() <= program_budget_bits && entry.output == s)
            return OmegaCompressibility::compressible;
    }
    return OmegaCompressibility::incompressible;
}

std::optional<ait::ComplexityEstimate> bounded_complexity(const BitString& s, const OmegaLedger& ledger) {
    std::size_t best = 0;
    bool found = false;
    for (const LedgerEntry& entry : ledger.halted) {
        if (entry.output != s) continue;
        if (!found || entry.program.length() < best) best = entry.program.length();
        found = true;
    }
    if (!found) return std::nullopt;
    const double raw = static_cast<double>(best);
    const double normalized = s.empty() ? 0.0 : raw / static_cast<double>(s.size());
    return ait::ComplexityEstimate{raw, normalized, ait::EstimateMethod::omega_oracle, 0};
}

void write_ledger(std::ostream& os, const OmegaLedger& ledger) {
    for (const LedgerEntry& entry : ledger.halted) {
        os << entry.program.code.to_ascii() << ',' << entry.steps << ',' << entry.output.to_ascii() << '\n';
    }
}

}  // namespace qrlab::omega
