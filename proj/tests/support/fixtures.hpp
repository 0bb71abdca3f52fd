#pragma once

// Shared fixture codes used across the test suites.

#include <string>
#include <vector>

#include "ncser/code.hpp"

namespace fixtures {

using namespace ncser;

inline SourcedGraph two_cycle_graph() {
    SourcedGraph g;
    g.vertices = {"u", "v"};
    g.edges = {{"a", "u", "v"}, {"b", "v", "u"}};
    g.sources = {{"x", "u"}, {"y", "v"}};
    return g;
}

/// The 2-cycle where both edges carry X+Y: not serializable, the classic
/// chicken-and-egg situation. Messages (X, Y) over GF(2)^2.
inline LinearCode phi_xy() {
    return make_linear_code_rows(two_cycle_graph(), FieldSpec(2), 2,
                                 {{{1, 0}}, {{0, 1}}},
                                 {{{1, 1}}, {{1, 1}}});
}

/// The 2-cycle exchanging X and Y in full: serializable. Messages (X, Y).
inline LinearCode phi_swap() {
    return make_linear_code_rows(two_cycle_graph(), FieldSpec(2), 2,
                                 {{{1, 0}}, {{0, 1}}},
                                 {{{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}});
}

inline FVec unit(long long dim, long long i) {
    FVec v(dim, 0);
    v[i] = 1;
    return v;
}

inline FVec sum2(long long dim, long long i, long long j) {
    FVec v(dim, 0);
    v[i] = 1;
    v[j] = 1;
    return v;
}

/// The offset pair at block length n, messages (X_1..X_n, Y_1..Y_n) over
/// GF(2)^(2n). Bottom edge carries X_k+Y_k for all k; the top edge carries
/// the offset sums X_{k+1}+Y_k and X_1+Y_n, plus the plain bit X_1 when
/// with_extra_bit is set. With the extra bit the code is serializable; the
/// bit's removal leaves a code one added bit away from serializable.
inline LinearCode offset_code(long long n, bool with_extra_bit) {
    long long d = 2 * n;
    auto X = [&](long long k) { return k - 1; };          // X_k coordinate
    auto Y = [&](long long k) { return n + k - 1; };      // Y_k coordinate
    std::vector<FVec> top, bottom, xs, ys;
    if (with_extra_bit) top.push_back(unit(d, X(1)));
    for (long long k = 1; k < n; ++k) top.push_back(sum2(d, X(k + 1), Y(k)));
    top.push_back(sum2(d, X(1), Y(n)));
    for (long long k = 1; k <= n; ++k) bottom.push_back(sum2(d, X(k), Y(k)));
    for (long long k = 1; k <= n; ++k) xs.push_back(unit(d, X(k)));
    for (long long k = 1; k <= n; ++k) ys.push_back(unit(d, Y(k)));
    return make_linear_code_rows(two_cycle_graph(), FieldSpec(2), d, {xs, ys}, {top, bottom});
}

/// A serializable / non-serializable pair of 2-cycle codes with identical
/// entropic vectors. Messages (X, Y, Z) over GF(2)^3, sources x = (X, Z)
/// and y = (Y, Z). The serializable code exchanges X and Y in the clear;
/// the other code's edges both carry (Z, X+Y), which stalls: each side can
/// only produce Z from its own source, and Z unlocks nothing new.
inline std::pair<LinearCode, LinearCode> same_entropy_pair() {
    std::vector<FVec> x_rows = {{1, 0, 0}, {0, 0, 1}};
    std::vector<FVec> y_rows = {{0, 1, 0}, {0, 0, 1}};
    LinearCode ser = make_linear_code_rows(two_cycle_graph(), FieldSpec(2), 3, {x_rows, y_rows},
                                           {{{1, 0, 0}, {0, 1, 0}}, {{0, 1, 0}, {1, 0, 0}}});
    LinearCode non = make_linear_code_rows(two_cycle_graph(), FieldSpec(2), 3, {x_rows, y_rows},
                                           {{{0, 0, 1}, {1, 1, 0}}, {{0, 0, 1}, {1, 1, 0}}});
    return {ser, non};
}

}  // namespace fixtures
