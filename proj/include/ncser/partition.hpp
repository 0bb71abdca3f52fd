#pragma once

#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ncser {

/// A partition of the message index set {0..N-1} into atoms, representing the
/// Boolean subalgebra of 2^M whose elements are the unions of its blocks.
/// Canonical form: labels[i] is the smallest member of i's block, so
/// labels[i] <= i and labels[labels[i]] == labels[i].
///
/// Ordering convention used throughout: a finer partition represents a
/// *larger* algebra. algebra(a) is contained in algebra(b) iff b refines a.
struct Partition {
    std::vector<int> labels;

    int size() const { return (int)labels.size(); }

    int block_count() const {
        int n = 0;
        for (int i = 0; i < size(); ++i)
            if (labels[i] == i) ++n;
        return n;
    }

    bool operator==(const Partition&) const = default;
    auto operator<=>(const Partition&) const = default;

    /// Canonicalize an arbitrary consistent labeling (any value table works):
    /// elements map to the first index carrying the same raw label.
    static Partition from_labels(const std::vector<int>& raw) {
        std::map<int, int> rep;
        Partition p;
        p.labels.reserve(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            auto [it, fresh] = rep.try_emplace(raw[i], (int)i);
            p.labels.push_back(it->second);
        }
        return p;
    }

    /// The partition of {0..N-1} into the fibers of a value table.
    static Partition from_table(const std::vector<int>& table) { return from_labels(table); }

    static Partition single_block(int n) { return Partition{std::vector<int>(n, 0)}; }

    static Partition singletons(int n) {
        std::vector<int> l(n);
        std::iota(l.begin(), l.end(), 0);
        return Partition{std::move(l)};
    }

    /// Blocks listed by ascending minimum, members ascending.
    std::vector<std::vector<int>> blocks() const {
        std::map<int, std::vector<int>> by_label;
        for (int i = 0; i < size(); ++i) by_label[labels[i]].push_back(i);
        std::vector<std::vector<int>> out;
        out.reserve(by_label.size());
        for (auto& [_, b] : by_label) out.push_back(std::move(b));
        return out;
    }

    /// Value table with consecutive symbols 0..block_count()-1, blocks
    /// numbered by ascending minimum member.
    std::vector<int> canonical_table() const {
        std::map<int, int> index;
        std::vector<int> table(labels.size());
        for (int i = 0; i < size(); ++i) {
            auto [it, fresh] = index.try_emplace(labels[i], (int)index.size());
            table[i] = it->second;
        }
        return table;
    }
};

namespace detail {
inline void require_same_size(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) throw std::invalid_argument("partition size mismatch");
}
}  // namespace detail

/// True iff every block of a lies inside a single block of b.
inline bool refines(const Partition& a, const Partition& b) {
    detail::require_same_size(a, b);
    for (int i = 0; i < a.size(); ++i)
        if (b.labels[i] != b.labels[a.labels[i]]) return false;
    return true;
}

/// Algebra containment: balg represented by `sub` is contained in the one
/// represented by `super` iff super's partition refines sub's.
inline bool algebra_subset(const Partition& sub, const Partition& super) {
    return refines(super, sub);
}

/// The algebra generated by both (common refinement of the partitions):
/// blocks are the nonempty pairwise intersections.
inline Partition algebra_plus(const Partition& a, const Partition& b) {
    detail::require_same_size(a, b);
    std::map<std::pair<int, int>, int> rep;
    std::vector<int> raw(a.size());
    for (int i = 0; i < a.size(); ++i) {
        auto [it, fresh] = rep.try_emplace({a.labels[i], b.labels[i]}, i);
        raw[i] = it->second;
    }
    return Partition::from_labels(raw);
}

/// The intersection of the two algebras: the finest partition coarsened by
/// both a and b, i.e. connected components of the block-overlap relation.
inline Partition algebra_intersect(const Partition& a, const Partition& b) {
    detail::require_same_size(a, b);
    std::vector<int> parent(a.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int x, int y) {
        x = find(x); y = find(y);
        if (x == y) return;
        if (x > y) std::swap(x, y);
        parent[y] = x;  // keep the smaller index as root
    };
    for (int i = 0; i < a.size(); ++i) {
        unite(i, a.labels[i]);
        unite(i, b.labels[i]);
    }
    std::vector<int> raw(a.size());
    for (int i = 0; i < a.size(); ++i) raw[i] = find(i);
    return Partition::from_labels(raw);
}

/// All partitions coarser than (or equal to) base, enumerated by merging its
/// blocks via restricted growth strings; deterministic order.
inline std::vector<Partition> coarsenings_of(const Partition& base) {
    auto blks = base.blocks();
    int k = (int)blks.size();
    std::vector<Partition> out;
    if (k == 0) return {base};
    std::vector<int> rgs(k, 0);
    while (true) {
        std::vector<int> raw(base.size());
        for (int b = 0; b < k; ++b)
            for (int member : blks[b]) raw[member] = rgs[b];
        out.push_back(Partition::from_labels(raw));
        // next restricted growth string
        int i = k - 1;
        for (; i > 0; --i) {
            int maxv = 0;
            for (int j = 0; j < i; ++j) maxv = std::max(maxv, rgs[j]);
            if (rgs[i] <= maxv) { ++rgs[i]; break; }
            rgs[i] = 0;
        }
        if (i == 0) break;
        for (int j = i + 1; j < k; ++j) rgs[j] = 0;
    }
    return out;
}

/// Bell number (count of coarsenings of a k-block partition), k small.
inline unsigned long long bell_number(int k) {
    std::vector<std::vector<unsigned long long>> tri{{1}};
    for (int i = 1; i <= k; ++i) {
        std::vector<unsigned long long> row{tri.back().back()};
        for (std::size_t j = 0; j < tri.back().size(); ++j)
            row.push_back(row.back() + tri.back()[j]);
        tri.push_back(std::move(row));
    }
    return tri[k][0];
}

}  // namespace ncser
