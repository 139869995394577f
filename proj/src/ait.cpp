#include "qrlab/ait.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrlab::ait {

EntropyValue shannon_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("shannon_entropy: p = " + std::to_string(p) + " outside [0,1]");
    if (p == 0.0 || p == 1.0) return EntropyValue{0.0, p};
    const double h = -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
    return EntropyValue{h, p};
}

double complexity_bound(std::size_t n, double p, bool corrected) {
    if (n == 0) throw std::invalid_argument("complexity_bound: n must be >= 1");
    double bound = static_cast<double>(n) * shannon_entropy(p).value;
    if (corrected) bound += 2.0 * std::log2(static_cast<double>(n));
    return bound;
}

BitString champernowne_bits(std::size_t n) {
    BitString out;
    for (std::size_t k = 1; out.size() < n; ++k) {
        const std::uint64_t count = std::uint64_t{1} << k;
        for (std::uint64_t v = 0; v < count && out.size() < n; ++v) {
            for (std::size_t b = 0; b < k && out.size() < n; ++b)
                out.push_back(((v >> (k - 1 - b)) & 1) != 0);
        }
    }
    return out;
}

namespace {

// Suffix automaton over a binary string, tracking for each state the
// earliest position at which its factors end. Built once over the whole
// string; the earliest-end field tells whether a factor also occurs
// starting before a given position.
class SuffixAutomaton {
public:
    explicit SuffixAutomaton(const BitString& s) {
        states_.reserve(2 * s.size() + 2);
        states_.push_back(State{{-1, -1}, -1, 0, -1});
        int last = 0;
        for (std::size_t i = 0; i < s.size(); ++i) last = extend(last, s.bit(i), static_cast<int>(i));
    }

    int transition(int node, int b) const noexcept { return states_[node].next[b]; }
    int min_end(int node) const noexcept { return states_[node].min_end; }

private:
    struct State {
        int next[2];
        int link;
        int len;
        int min_end;
    };

    int extend(int last, int b, int pos) {
        const int cur = static_cast<int>(states_.size());
        states_.push_back(State{{-1, -1}, -1, states_[last].len + 1, pos});
        int p = last;
        while (p != -1 && states_[p].next[b] == -1) {
            states_[p].next[b] = cur;
            p = states_[p].link;
        }
        if (p == -1) {
            states_[cur].link = 0;
        } else {
            const int q = states_[p].next[b];
            if (states_[p].len + 1 == states_[q].len) {
                states_[cur].link = q;
            } else {
                const int clone = static_cast<int>(states_.size());
                State cl = states_[q];
                cl.len = states_[p].len + 1;
                // every endpoint later merged into the clone lies after the
                // original state's first endpoint, so min_end carries over
                states_.push_back(cl);
                while (p != -1 && states_[p].next[b] == q) {
                    states_[p].next[b] = clone;
                    p = states_[p].link;
                }
                states_[q].link = clone;
                states_[cur].link = clone;
            }
        }
        return cur;
    }

    std::vector<State> states_;
};

}  // namespace

std::size_t lz_phrase_count(const BitString& s) {
    const std::size_t n = s.size();
    if (n == 0) return 0;
    SuffixAutomaton sam(s);
    std::size_t i = 0;
    std::size_t phrases = 0;
    while (i < n) {
        // extend the match while s[i..i+l] occurs starting before i
        int node = 0;
        std::size_t l = 0;
        while (i + l < n) {
            const int nxt = sam.transition(node, s.bit(i + l));
            if (nxt < 0) break;
            // first occurrence must start at or before i-1, i.e. end
            // strictly before position i + l
            if (static_cast<std::size_t>(sam.min_end(nxt)) >= i + l) break;
            node = nxt;
            ++l;
        }
        i += l + 1;  // matched run plus one fresh bit (or string end)
        ++phrases;
    }
    return phrases;
}

ComplexityEstimate lz_complexity_estimate(const BitString& s) {
    if (s.size() < 64)
        throw std::invalid_argument("lz_complexity_estimate: need at least 64 bits, got " +
                                    std::to_string(s.size()));
    const std::size_t c = lz_phrase_count(s);
    const double cd = static_cast<double>(c);
    const double raw = cd * (std::log2(cd) + 1.0);
    return ComplexityEstimate{raw, raw / static_cast<double>(s.size()), EstimateMethod::lz_phrase, c};
}

double pattern_frequency(const BitString& s, const BitString& pattern, std::size_t stride) {
    const std::size_t k = pattern.size();
    if (k == 0) throw std::invalid_argument("pattern_frequency: empty pattern");
    if (stride == 0) throw std::invalid_argument("pattern_frequency: stride must be >= 1");
    if (k > s.size()) throw std::invalid_argument("pattern_frequency: pattern longer than string");
    std::size_t positions = 0;
    std::size_t matches = 0;
    for (std::size_t i = 0; i + k <= s.size(); i += stride) {
        ++positions;
        bool hit = true;
        for (std::size_t j = 0; j < k; ++j) {
            if (s.bit(i + j) != pattern.bit(j)) {
                hit = false;
                break;
            }
        }
        if (hit) ++matches;
    }
    return static_cast<double>(matches) / static_cast<double>(positions);
}

CompressibilityVerdict p_compressibility_test(const BitString& s, double p, double margin) {
    if (!(margin > 0.0 && margin < 1.0))
        throw std::invalid_argument("p_compressibility_test: margin must lie in (0,1)");
    const ComplexityEstimate est = lz_complexity_estimate(s);
    const double threshold = (1.0 - margin) * complexity_bound(s.size(), p, false);
    const Compressibility v =
        est.raw_bits < threshold ? Compressibility::p_compressible : Compressibility::p_incompressible;
    return CompressibilityVerdict{v, threshold, est.raw_bits};
}

}  // namespace qrlab::ait
