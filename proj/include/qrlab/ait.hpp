// ait.hpp
// Algorithmic-information toolkit: Shannon entropy, the n*H(p) complexity
// ceiling, the Champernowne bit sequence, a Lempel-Ziv phrase-count
// complexity estimator, pattern-frequency randomness tests, and the
// compressibility decision built on top of them.

#pragma once

#include <cstddef>

#include "qrlab/bitstring.hpp"

namespace qrlab::ait {

struct EntropyValue {
    double value;  // bits per symbol, in [0, 1]
    double p;      // the probability it was computed from
};

enum class EstimateMethod { lz_phrase, omega_oracle };

struct ComplexityEstimate {
    double raw_bits;
    double normalized;  // raw_bits / n
    EstimateMethod method;
    std::size_t phrases;
};

enum class Compressibility { p_compressible, p_incompressible };

struct CompressibilityVerdict {
    Compressibility verdict;
    double threshold_bits;
    double estimate_bits;
};

// H(p) = -p log2 p - (1-p) log2 (1-p), with H(0) = H(1) = 0 by the limit
// convention. Throws std::domain_error for p outside [0,1].
EntropyValue shannon_entropy(double p);

// Complexity ceiling n*H(p) for a length-n string whose 1-frequency is p.
// With `corrected`, adds the self-delimiting overhead 2*log2(n).
double complexity_bound(std::size_t n, double p, bool corrected);

// First n bits of the concatenation of all binary strings in
// length-then-lexicographic order: 0,1,00,01,10,11,000,...
BitString champernowne_bits(std::size_t n);

// Lempel-Ziv phrase count of s: the sequence is parsed left to right into
// consecutive phrases, each the longest segment that already occurs
// starting at an earlier position (self-overlap allowed) plus one fresh
// bit. With c phrases, raw_bits = c * (log2 c + 1). Deterministic; O(n).
// Throws std::invalid_argument for strings shorter than 64 bits.
ComplexityEstimate lz_complexity_estimate(const BitString& s);

// Phrase count alone, without the length floor; defined for any string.
std::size_t lz_phrase_count(const BitString& s);

// Fraction of positions i = 0, stride, 2*stride, ... (with i + k <= n) at
// which the k-bit `pattern` occurs in s. Throws when the pattern is empty,
// longer than s, or stride is zero.
double pattern_frequency(const BitString& s, const BitString& pattern, std::size_t stride);

// Declares s p-compressible iff its estimated complexity falls below
// (1 - margin) * n * H(p). The margin absorbs the additive constants the
// asymptotic ceiling does not pin down.
CompressibilityVerdict p_compressibility_test(const BitString& s, double p, double margin);

}  // namespace qrlab::ait
