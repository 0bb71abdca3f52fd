#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ncser/code.hpp"
#include "ncser/rational.hpp"

namespace ncser {

/// An exact entropy value in bits: a rational plus a rational combination of
/// log2(p) over odd primes p. Uniform-distribution entropies of finite codes
/// are always of this form, and the form is unique (the logs of distinct
/// primes are linearly independent over the rationals), so equality is an
/// exact structural comparison.
class EntropyValue {
  public:
    EntropyValue() = default;

    static EntropyValue from_rational(Rat q) {
        EntropyValue v;
        v.rational_ = q;
        return v;
    }

    /// log2(n) for an integer n >= 1, decomposed by prime factorization.
    static EntropyValue log2_of(long long n) {
        if (n < 1) throw std::invalid_argument("log2_of: argument must be >= 1");
        EntropyValue v;
        long long twos = 0;
        while (n % 2 == 0) { n /= 2; ++twos; }
        v.rational_ = Rat(twos, 1);
        for (long long p = 3; p * p <= n; p += 2)
            while (n % p == 0) { n /= p; v.log_terms_[p] += 1; }
        if (n > 1) v.log_terms_[n] += 1;
        return v;
    }

    bool is_rational() const { return log_terms_.empty(); }

    Rat rational() const {
        if (!is_rational())
            throw std::domain_error("entropy value is irrational: " + str());
        return rational_;
    }

    double approx() const {
        double s = boost::rational_cast<double>(rational_);
        for (const auto& [p, c] : log_terms_) s += boost::rational_cast<double>(c) * std::log2((double)p);
        return s;
    }

    /// Exact sign: structural zero test first, then a guarded numeric
    /// evaluation (the guard turns a too-close-to-call comparison into a
    /// loud failure instead of a silent wrong answer).
    int sign() const {
        if (log_terms_.empty()) return rational_ > Rat(0) ? 1 : rational_ < Rat(0) ? -1 : 0;
        long double s = (long double)rational_.numerator() / rational_.denominator();
        for (const auto& [p, c] : log_terms_)
            s += (long double)c.numerator() / c.denominator() * std::log2l((long double)p);
        if (s > -1e-9L && s < 1e-9L)
            throw std::logic_error("entropy sign test too close to zero: " + str());
        return s > 0 ? 1 : -1;
    }

    std::string str() const {
        std::string out = rat_str(rational_);
        for (const auto& [p, c] : log_terms_)
            out += " + " + rat_str(c) + "*log2(" + std::to_string(p) + ")";
        return out;
    }

    EntropyValue& operator+=(const EntropyValue& o) {
        rational_ += o.rational_;
        for (const auto& [p, c] : o.log_terms_) {
            auto it = log_terms_.find(p);
            if (it == log_terms_.end())
                log_terms_.emplace(p, c);
            else if ((it->second += c) == Rat(0))
                log_terms_.erase(it);
        }
        return *this;
    }
    friend EntropyValue operator+(EntropyValue a, const EntropyValue& b) { return a += b; }
    friend EntropyValue operator-(const EntropyValue& a, const EntropyValue& b) {
        return a + (b * Rat(-1));
    }
    friend EntropyValue operator*(const EntropyValue& a, Rat k) {
        EntropyValue v;
        if (k == Rat(0)) return v;
        v.rational_ = a.rational_ * k;
        for (const auto& [p, c] : a.log_terms_) v.log_terms_.emplace(p, c * k);
        return v;
    }

    bool operator==(const EntropyValue&) const = default;
    bool operator<(const EntropyValue& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const EntropyValue& o) const { return (*this - o).sign() <= 0; }
    bool operator>(const EntropyValue& o) const { return (*this - o).sign() > 0; }
    bool operator>=(const EntropyValue& o) const { return (*this - o).sign() >= 0; }

  private:
    Rat rational_{0};
    std::map<long long, Rat> log_terms_;
};

/// Entropy, in bits, of a frequency vector (counts over a ground set of
/// total size total): sum of (c/total) * (log2(total) - log2(c)).
inline EntropyValue entropy_of_counts(const std::vector<long long>& counts, long long total) {
    EntropyValue h;
    EntropyValue log_total = EntropyValue::log2_of(total);
    for (long long c : counts) {
        if (c <= 0) continue;
        h += (log_total - EntropyValue::log2_of(c)) * Rat(c, total);
    }
    return h;
}

/// The entropic vector of a code: one entropy per nonempty subset of the
/// ground set of edge and source ids (sources first, then edges, declaration
/// order). Subsets are keyed by bitmask over that order.
struct EntropicVector {
    std::vector<std::string> ids;
    std::map<std::uint32_t, EntropyValue> values;

    const EntropyValue& at(std::uint32_t mask) const {
        auto it = values.find(mask);
        if (it == values.end()) throw std::invalid_argument("entropic vector missing a subset");
        return it->second;
    }

    std::uint32_t mask_of(const std::vector<std::string>& subset) const {
        std::uint32_t m = 0;
        for (const auto& id : subset) {
            std::size_t i = 0;
            while (i < ids.size() && ids[i] != id) ++i;
            if (i == ids.size()) throw std::invalid_argument("unknown id in subset: " + id);
            m |= 1u << i;
        }
        return m;
    }

    const EntropyValue& at(const std::vector<std::string>& subset) const { return at(mask_of(subset)); }
};

namespace detail {
inline std::vector<std::string> ground_ids(const SourcedGraph& g) {
    std::vector<std::string> ids;
    for (const auto& s : g.sources) ids.push_back(s.id);
    for (const auto& e : g.edges) ids.push_back(e.id);
    return ids;
}
}  // namespace detail

/// For a linear code under uniform messages, the joint distribution of a set
/// of edges is uniform on the image of their stacked matrix, so
/// H(F) = rank(F) * log2(p).
inline EntropicVector entropic_vector(const LinearCode& code, std::size_t max_ids = 16) {
    detail::require_valid(code);
    EntropicVector v;
    v.ids = detail::ground_ids(code.graph);
    if (v.ids.size() > max_ids) throw BudgetError("entropic_vector: too many edges to enumerate subsets");
    std::vector<const Matrix*> fns;
    for (std::size_t s = 0; s < code.graph.sources.size(); ++s) fns.push_back(&code.source_fns[s]);
    for (std::size_t e = 0; e < code.graph.edges.size(); ++e) fns.push_back(&code.edge_fns[e]);
    EntropyValue log_p = EntropyValue::log2_of(code.field.p);
    for (std::uint32_t mask = 1; mask < (1u << v.ids.size()); ++mask) {
        std::vector<FVec> rows;
        for (std::size_t i = 0; i < fns.size(); ++i)
            if (mask & (1u << i)) rows.insert(rows.end(), fns[i]->rows.begin(), fns[i]->rows.end());
        long long r = rank_of(rows, code.message_dim, code.field);
        v.values.emplace(mask, log_p * Rat(r));
    }
    return v;
}

/// For a general code, joint values are counted over the uniform message
/// set directly.
inline EntropicVector entropic_vector(const GeneralCode& code, std::size_t max_ids = 16) {
    detail::require_valid(code);
    EntropicVector v;
    v.ids = detail::ground_ids(code.graph);
    if (v.ids.size() > max_ids) throw BudgetError("entropic_vector: too many edges to enumerate subsets");
    std::vector<const ValueTable*> fns;
    for (std::size_t s = 0; s < code.graph.sources.size(); ++s) fns.push_back(&code.source_fns[s]);
    for (std::size_t e = 0; e < code.graph.edges.size(); ++e) fns.push_back(&code.edge_fns[e]);
    for (std::uint32_t mask = 1; mask < (1u << v.ids.size()); ++mask) {
        std::map<std::vector<int>, long long> freq;
        for (long long m = 0; m < code.message_count; ++m) {
            std::vector<int> joint;
            for (std::size_t i = 0; i < fns.size(); ++i)
                if (mask & (1u << i)) joint.push_back(fns[i]->values[m]);
            ++freq[joint];
        }
        std::vector<long long> counts;
        for (const auto& [_, c] : freq) counts.push_back(c);
        v.values.emplace(mask, entropy_of_counts(counts, code.message_count));
    }
    return v;
}

struct ShannonViolation {
    std::string description;
};

namespace detail {
inline std::string mask_str(const EntropicVector& v, std::uint32_t mask) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.ids.size(); ++i)
        if (mask & (1u << i)) out += (out.size() > 1 ? "," : "") + v.ids[i];
    return out + "}";
}
}  // namespace detail

/// Checks every elemental Shannon inequality on n = |ids| variables:
/// monotonicity H(ground) >= H(ground minus one id), and submodularity
/// H(iK) + H(jK) >= H(ijK) + H(K) for i != j and K disjoint from both
/// (H of the empty set is 0). Returns the violated inequalities.
inline std::vector<ShannonViolation> shannon_check(const EntropicVector& v) {
    std::vector<ShannonViolation> out;
    std::size_t n = v.ids.size();
    std::uint32_t ground = (std::uint32_t)((1ull << n) - 1);
    auto H = [&](std::uint32_t mask) -> EntropyValue {
        if (mask == 0) return {};
        return v.at(mask);
    };
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t without = ground & ~(1u << i);
        if (without == 0) {
            if (H(ground).sign() < 0)
                out.push_back({"monotonicity: H(" + detail::mask_str(v, ground) + ") >= 0"});
            continue;
        }
        if (H(ground) < H(without))
            out.push_back({"monotonicity: H(" + detail::mask_str(v, ground) + ") >= H(" +
                           detail::mask_str(v, without) + ")"});
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::uint32_t rest = ground & ~(1u << i) & ~(1u << j);
            for (std::uint32_t k = rest;; k = (k - 1) & rest) {
                EntropyValue lhs = H(k | (1u << i)) + H(k | (1u << j));
                EntropyValue rhs = H(k | (1u << i) | (1u << j)) + H(k);
                if (lhs < rhs)
                    out.push_back({"submodularity: H(" + detail::mask_str(v, k | (1u << i)) + ") + H(" +
                                   detail::mask_str(v, k | (1u << j)) + ") >= H(" +
                                   detail::mask_str(v, k | (1u << i) | (1u << j)) + ") + H(" +
                                   detail::mask_str(v, k) + ")"});
                if (k == 0) break;
            }
        }
    return out;
}

}  // namespace ncser
