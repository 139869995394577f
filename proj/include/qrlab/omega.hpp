// omega.hpp
// A desk-scale halting-probability laboratory. Programs for a tiny
// register machine are encoded prefix-free; with a step budget the
// machine's halting set is decidable by exhaustion, so its halting
// probability is an exactly computable dyadic rational. On top of that
// sit the dovetailed enumeration, the omega-threshold halting decision,
// and the output-membership compressibility test.
//
// Machine definition (bit-exact):
//   code = 1^L 0 body, where body is exactly 3*L bits read as opcodes
//     000 HALT   001 OUT-0   010 OUT-1   011 INC
//     100 DEC    101 JZ      110 JMP-BACK-2   111 NOP
//   One register, initially 0. DEC floors at 0. JZ skips the next
//   instruction when the register is 0. JMP-BACK-2 sets pc to
//   max(pc - 2, 0). Output is the OUT-emitted bit sequence. Running past
//   the last instruction halts; L = 0 (code "0") halts immediately.
//   Code length is 4L + 1 bits, and the unary header makes the encoding
//   prefix-free.
//
// "Halts" always means "halts within the step budget". Omega of this
// bounded machine is a finite sum of powers of two, tracked in exact
// dyadic arithmetic; no floating point enters any halting decision.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qrlab/ait.hpp"
#include "qrlab/bitstring.hpp"

namespace qrlab::omega {

// Nonnegative dyadic rational num / 2^exp in canonical form (num odd, or
// zero with exp 0). Arithmetic is exact and throws rather than rounding.
class Dyadic {
public:
    Dyadic() : num_(0), exp_(0) {}

    static Dyadic zero() { return Dyadic(); }
    static Dyadic one();
    // 2^-k
    static Dyadic pow2_neg(unsigned k);
    static Dyadic make(std::uint64_t num, unsigned exp);

    std::uint64_t num() const noexcept { return num_; }
    unsigned exp() const noexcept { return exp_; }
    bool is_zero() const noexcept { return num_ == 0; }

    Dyadic operator+(const Dyadic& other) const;
    // Throws std::underflow_error when other > *this.
    Dyadic operator-(const Dyadic& other) const;
    bool operator==(const Dyadic& other) const noexcept;
    bool operator<(const Dyadic& other) const noexcept;
    bool operator<=(const Dyadic& other) const noexcept;
    bool operator>(const Dyadic& other) const noexcept { return other < *this; }
    bool operator>=(const Dyadic& other) const noexcept { return other <= *this; }

    // "num/2^exp" as e.g. "419/512"; integers print without denominator.
    std::string as_fraction() const;
    // Exact decimal expansion truncated to `digits` places, e.g. "0.81835937500000000000".
    std::string as_decimal(unsigned digits) const;
    double to_double() const;

private:
    void normalize();

    std::uint64_t num_;
    unsigned exp_;
};

// A candidate program: the raw code bits. Only codes of the form
// 1^L 0 body with exactly 3L body bits are runnable.
struct ToyProgram {
    BitString code;
    std::size_t length() const noexcept { return code.size(); }
};

enum class RunStatus { halted, exhausted_budget };

struct MachineResult {
    RunStatus status;
    BitString output;  // nonempty only when halted
    std::uint64_t steps;
};

// Enumeration is capped so exhaustive runs stay desk-scale.
inline constexpr std::size_t kMaxEnumerationLen = 28;

// All syntactically valid programs with code length <= max_len, in
// length-then-lexicographic order. Throws above kMaxEnumerationLen.
std::vector<ToyProgram> enumerate_programs(std::size_t max_len);

// Decodes and runs a single program under the step budget. Throws
// std::invalid_argument for malformed codes.
MachineResult run_program(const ToyProgram& program, std::uint64_t budget);

struct LedgerEntry {
    ToyProgram program;
    std::uint64_t steps;
    BitString output;
};

// Everything learned from one dovetailed enumeration: the programs that
// halted within budget (in enumeration order) and the exact halting
// probability they account for.
struct OmegaLedger {
    Dyadic omega_bound;
    std::vector<LedgerEntry> halted;
    std::size_t max_len = 0;
    std::uint64_t budget = 0;
};

// Runs every enumerated program in interleaved single-step rounds until
// each halts or exhausts the budget.
OmegaLedger dovetail_run(std::size_t max_len, std::uint64_t budget);

// Kraft sum over ALL enumerated programs (halting or not); always <= 1,
// which is what makes the omega sum converge.
Dyadic kraft_sum(std::size_t max_len);

enum class HaltingVerdict { halts, never_halts };

// The omega-threshold halting decision: dovetail all programs of length
// <= max_len; report `halts` the moment pi0 halts, and `never_halts` the
// moment the halted-program sum exceeds omega - 2^-l(pi0). With the exact
// omega of the bounded machine this always terminates. Throws
// std::runtime_error when the supplied omega is inconsistent (the sum
// overruns it, or the enumeration finishes without a decision).
HaltingVerdict halting_decision(const ToyProgram& pi0, const Dyadic& omega, std::size_t max_len,
                                std::uint64_t budget);
HaltingVerdict halting_decision(const ToyProgram& pi0, const OmegaLedger& ledger);

enum class OmegaCompressibility { compressible, incompressible };

// s is compressible (relative to the bounded machine) iff some program of
// length <= program_budget_bits halted with output exactly s. A string
// declared incompressible is never among the halted outputs, so that
// direction of the verdict carries zero error. Throws when
// program_budget_bits exceeds the ledger's enumeration bound.
OmegaCompressibility compressible_via_omega(const BitString& s, std::size_t program_budget_bits,
                                            const OmegaLedger& ledger);

// Exact complexity of s relative to the bounded machine: the length of the
// shortest halted program whose output is exactly s, tagged with the
// omega_oracle method. Empty when nothing in the ledger produces s.
std::optional<ait::ComplexityEstimate> bounded_complexity(const BitString& s, const OmegaLedger& ledger);

// One line per halted program: "<code bits>,<steps>,<output bits>".
void write_ledger(std::ostream& os, const OmegaLedger& ledger);

}  // namespace qrlab::omega
