#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "ncser/entropy.hpp"
#include "ncser/linear_serializer.hpp"
#include "ncser/rational.hpp"

namespace ncser {

// The 2-cycle: vertices u, v; source x into u, source y into v; edges
// a = (u,v) and b = (v,u). Subset masks use bit 0 = a, 1 = b, 2 = x, 3 = y.

namespace tc {
constexpr std::uint32_t A = 1, B = 2, X = 4, Y = 8;
}

/// The ten values that determine a 2-cycle entropic vector:
/// I(x;y), H(x|y), H(y|x), H(a|x), H(b|x), H(a|y), H(b|y), H(a), H(b), H(ab).
struct TwoCycleTen {
    Rat mutual_xy, x_given_y, y_given_x;
    Rat a_given_x, b_given_x, a_given_y, b_given_y;
    Rat h_a, h_b, h_ab;

    bool operator==(const TwoCycleTen&) const = default;
};

/// The full 15-coordinate entropic vector over {a, b, x, y}, exact rationals.
struct TwoCycleVector {
    std::array<Rat, 16> h{};  // h[0] = 0; indexed by subset mask

    Rat at(std::uint32_t mask) const { return h[mask]; }
    bool operator==(const TwoCycleVector&) const = default;
};

/// Reconstruction of the 15 coordinates from the ten determining values.
inline TwoCycleVector ten_to_fifteen(const TwoCycleTen& t) {
    using namespace tc;
    TwoCycleVector v;
    Rat hx = t.mutual_xy + t.x_given_y;
    Rat hy = t.mutual_xy + t.y_given_x;
    Rat hxy = t.mutual_xy + t.x_given_y + t.y_given_x;
    v.h[X] = hx;
    v.h[Y] = hy;
    v.h[X | Y] = hxy;
    v.h[A] = t.h_a;
    v.h[B] = t.h_b;
    v.h[A | B] = t.h_ab;
    v.h[A | X] = t.a_given_x + hx;
    v.h[B | X] = t.b_given_x + hx;
    v.h[A | Y] = t.a_given_y + hy;
    v.h[B | Y] = t.b_given_y + hy;
    v.h[A | B | X] = v.h[B | X];  // downstreamness at u
    v.h[A | B | Y] = v.h[A | Y];  // downstreamness at v
    v.h[A | X | Y] = hxy;
    v.h[B | X | Y] = hxy;
    v.h[A | B | X | Y] = hxy;
    return v;
}

/// Extraction of the ten values; rejects 15-forms that the ten cannot
/// reproduce (the reconstruction identities assume downstreamness and that
/// the sources jointly determine both edges).
inline TwoCycleTen fifteen_to_ten(const TwoCycleVector& v) {
    using namespace tc;
    TwoCycleTen t;
    t.mutual_xy = v.h[X] + v.h[Y] - v.h[X | Y];
    t.x_given_y = v.h[X | Y] - v.h[Y];
    t.y_given_x = v.h[X | Y] - v.h[X];
    t.a_given_x = v.h[A | X] - v.h[X];
    t.b_given_x = v.h[B | X] - v.h[X];
    t.a_given_y = v.h[A | Y] - v.h[Y];
    t.b_given_y = v.h[B | Y] - v.h[Y];
    t.h_a = v.h[A];
    t.h_b = v.h[B];
    t.h_ab = v.h[A | B];
    if (ten_to_fifteen(t) != v)
        throw SchemaError("inconsistent 15-coordinate vector: not determined by its ten values");
    return t;
}

inline TwoCycleVector two_cycle_from_entropic(const EntropicVector& ev) {
    if (ev.ids.size() != 4)
        throw std::invalid_argument("two-cycle vector needs ground set {a, b, x, y}");
    std::array<std::uint32_t, 4> bit{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (ev.ids[i] == "a") bit[i] = tc::A;
        else if (ev.ids[i] == "b") bit[i] = tc::B;
        else if (ev.ids[i] == "x") bit[i] = tc::X;
        else if (ev.ids[i] == "y") bit[i] = tc::Y;
        else throw std::invalid_argument("two-cycle vector needs ground set {a, b, x, y}");
    }
    TwoCycleVector v;
    for (std::uint32_t mask = 1; mask < 16; ++mask) {
        std::uint32_t canonical = 0;
        for (std::size_t i = 0; i < 4; ++i)
            if (mask & (1u << i)) canonical |= bit[i];
        v.h[canonical] = ev.at(mask).rational();
    }
    return v;
}

inline EntropicVector entropic_from_two_cycle(const TwoCycleVector& v) {
    EntropicVector ev;
    ev.ids = {"a", "b", "x", "y"};
    for (std::uint32_t mask = 1; mask < 16; ++mask)
        ev.values.emplace(mask, EntropyValue::from_rational(v.h[mask]));
    return ev;
}

/// Per-family verdicts for the 2-cycle characterization. The greedy
/// inequality is strict, and vacuous when H(a) + H(b) = 0.
struct TwoCycleReport {
    bool shannon = false;
    bool downstreamness = false;
    bool chicken_egg = false;
    bool greedy = false;
    std::vector<std::string> details;

    bool all() const { return shannon && downstreamness && chicken_egg && greedy; }
    std::string first_failure() const {
        if (!shannon) return "shannon";
        if (!downstreamness) return "downstreamness";
        if (!chicken_egg) return "chicken-egg";
        if (!greedy) return "greedy";
        return "";
    }
};

inline TwoCycleReport two_cycle_check(const TwoCycleVector& v) {
    using namespace tc;
    TwoCycleReport r;
    auto violations = shannon_check(entropic_from_two_cycle(v));
    r.shannon = violations.empty();
    for (const auto& viol : violations) r.details.push_back(viol.description);

    r.downstreamness = v.h[A | B | X] == v.h[B | X] && v.h[A | B | Y] == v.h[A | Y];
    if (!r.downstreamness) r.details.push_back("downstreamness: H(abx) = H(bx) and H(aby) = H(ay)");

    r.chicken_egg = v.h[A | B] >= v.h[A | B | X] - v.h[X] + v.h[A | B | Y] - v.h[Y];
    if (!r.chicken_egg)
        r.details.push_back("chicken-egg: H(ab) >= H(abx) - H(x) + H(aby) - H(y)");

    Rat edge_sum = v.h[A] + v.h[B];
    r.greedy = edge_sum == Rat(0) ||
               edge_sum > v.h[A | X] - v.h[X] + v.h[B | Y] - v.h[Y];
    if (!r.greedy)
        r.details.push_back("greedy: H(a) + H(b) > H(ax) - H(x) + H(by) - H(y)");
    return r;
}

/// Rejection of a vector that no serializable 2-cycle code realizes; family
/// names which inequality family (or derived observation) failed.
struct TwoCycleRejection : std::runtime_error {
    std::string family;
    explicit TwoCycleRejection(std::string fam, const std::string& detail)
        : std::runtime_error("not realizable: " + fam + " (" + detail + ")"), family(std::move(fam)) {}
};

struct TwoCycleRealization {
    long long scale = 1;  // the emitted code realizes scale * input
    LinearCode code;
};

namespace tc_detail {

struct TenInts {
    long long I, hxy, hyx, hax, hbx, hay, hby, Ha, Hb, Hab;
};

inline TenInts scale_to_integers(const TwoCycleTen& t, long long& scale) {
    scale = 1;
    for (const Rat& r : {t.mutual_xy, t.x_given_y, t.y_given_x, t.a_given_x, t.b_given_x,
                         t.a_given_y, t.b_given_y, t.h_a, t.h_b, t.h_ab})
        scale = std::lcm(scale, r.denominator());
    auto t_scaled = [&](const Rat& r) { return boost::rational_cast<long long>(r * scale); };
    return TenInts{t_scaled(t.mutual_xy), t_scaled(t.x_given_y), t_scaled(t.y_given_x),
                   t_scaled(t.a_given_x), t_scaled(t.b_given_x), t_scaled(t.a_given_y),
                   t_scaled(t.b_given_y), t_scaled(t.h_a),       t_scaled(t.h_b),
                   t_scaled(t.h_ab)};
}

inline TenInts mirrored(const TenInts& t) {
    // swap the roles a <-> b and x <-> y
    return TenInts{t.I, t.hyx, t.hxy, t.hby, t.hay, t.hbx, t.hax, t.Hb, t.Ha, t.Hab};
}

inline void require(bool cond, const std::string& observation) {
    if (!cond)
        throw TwoCycleRejection("derived-observation " + observation,
                                "input passed the four families but violates a derived bound; "
                                "the vector is not entropic");
}

/// Row builder over the variable layout X_1..X_hxy, Y_1..Y_hyx, Z_1..Z_I.
struct RowBuilder {
    long long hxy, hyx, I;
    long long dim() const { return hxy + hyx + I; }
    FVec x(long long i) const { return unit(i - 1); }
    FVec y(long long j) const { return unit(hxy + j - 1); }
    FVec z(long long k) const { return unit(hxy + hyx + k - 1); }
    FVec unit(long long idx) const {
        FVec v(dim(), 0);
        v[idx] = 1;
        return v;
    }
    static FVec plus(FVec a, const FVec& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = (a[i] + b[i]) % 2;
        return a;
    }
};

struct EdgeRows {
    std::vector<FVec> a, b;
};

// Case 1: H(a) = H(a|x) + H(a|y) + f and H(b) = H(b|x) + H(b|y) + g with
// f, g >= 0. Writing h = H(ab) - H(b|x) - H(a|y), the shifted block
// Z'_i = Z_{f+i} (zero once i exceeds h-f-g) shares exactly the right
// amount of Z between the two edges.
inline EdgeRows case1(const TenInts& t, const RowBuilder& rb) {
    long long f = t.Ha - t.hax - t.hay;
    long long g = t.Hb - t.hbx - t.hby;
    long long h = t.Hab - t.hbx - t.hay;
    require(f >= 0 && g >= 0, "case-1 dispatch");
    require(f <= t.I, "boundHa");
    require(g <= t.I, "boundHb");
    require(h >= 0 && h <= t.I, "boundHab");
    require(h >= f && h >= g, "boundh");
    require(h <= t.hax + t.hby + f + g, "submodularity on a and b");
    auto zprime = [&](long long i) -> long long {  // index of Z'_i, 0 when absent
        return i <= h - f - g ? f + i : 0;
    };
    EdgeRows rows;
    for (long long i = 1; i <= t.hay; ++i) rows.a.push_back(rb.x(i));
    for (long long i = 1; i <= t.hax; ++i) {
        FVec r = rb.y(i);
        if (long long zi = zprime(i)) r = RowBuilder::plus(r, rb.z(zi));
        rows.a.push_back(r);
    }
    for (long long k = 1; k <= f; ++k) rows.a.push_back(rb.z(k));
    for (long long i = 1; i <= t.hby; ++i) {
        FVec r = rb.x(i);
        if (long long zi = zprime(t.hax + i)) r = RowBuilder::plus(r, rb.z(zi));
        rows.b.push_back(r);
    }
    for (long long i = 1; i <= t.hbx; ++i) rows.b.push_back(rb.y(i));
    for (long long k = h - g + 1; k <= h; ++k) rows.b.push_back(rb.z(k));
    return rows;
}

// Case 2: H(a) = H(a|x) + H(a|y) - f with f > 0, H(b) as in case 1. The
// first f rows of edge a are X_i + Y_i, tying f bits of X and Y together.
inline EdgeRows case2(const TenInts& t, const RowBuilder& rb) {
    long long f = t.hax + t.hay - t.Ha;
    long long g = t.Hb - t.hbx - t.hby;
    long long h = t.Hab - t.hbx - t.hay;
    require(f > 0 && g >= 0, "case-2 dispatch");
    require(f <= t.hax && f <= t.hay, "boundHa");
    require(g <= t.I, "boundHb");
    require(h >= 0 && h <= t.I, "boundHab");
    require(g <= h, "boundh analogue");
    require(h <= (t.hax - f) + t.hby + g, "submodularity on a and b");
    auto z = [&](long long k) -> long long { return k <= h ? k : 0; };  // Z_k, zero past h
    EdgeRows rows;
    for (long long i = 1; i <= f; ++i) rows.a.push_back(RowBuilder::plus(rb.x(i), rb.y(i)));
    for (long long i = f + 1; i <= t.hay; ++i) rows.a.push_back(rb.x(i));
    for (long long i = 1; i <= t.hax - f; ++i) {
        FVec r = rb.y(f + i);
        if (long long zk = z(g + i)) r = RowBuilder::plus(r, rb.z(zk));
        rows.a.push_back(r);
    }
    for (long long i = 1; i <= t.hby; ++i) {
        FVec r = rb.x(i);
        if (long long zk = z(g + t.hax - f + i)) r = RowBuilder::plus(r, rb.z(zk));
        rows.b.push_back(r);
    }
    for (long long i = 1; i <= t.hbx; ++i) rows.b.push_back(rb.y(i));
    for (long long k = 1; k <= g; ++k) rows.b.push_back(rb.z(k));
    return rows;
}

// Case 4a: both H(a) and H(b) fall short of their conditional sums and
// f < H(a|y). The offset pattern X_{i+1} + Y_i on edge a against X_i + Y_i
// on edge b lets the plain bit X_1 start the exchange.
inline EdgeRows case4a(const TenInts& t, const RowBuilder& rb) {
    long long f = t.hax + t.hay - t.Ha;
    long long g = t.hbx + t.hby - t.Hb;
    long long h = t.Hab - t.hbx - t.hay;
    require(f > 0 && g > 0, "case-4 dispatch");
    require(f < t.hay, "case-4a premise (greedy)");
    require(f <= t.hax, "boundHa");
    require(g <= t.hbx && g <= t.hby, "boundHb");
    require(h >= 0 && h <= t.I, "boundHab");
    require(h <= (t.hax - f) + (t.hby - g), "submodularity on a and b");
    auto z = [&](long long k) -> long long { return k <= h ? k : 0; };
    EdgeRows rows;
    for (long long i = 1; i <= f; ++i) rows.a.push_back(RowBuilder::plus(rb.x(i + 1), rb.y(i)));
    rows.a.push_back(rb.x(1));
    for (long long i = f + 2; i <= t.hay; ++i) rows.a.push_back(rb.x(i));
    for (long long i = 1; i <= t.hax - f; ++i) {
        FVec r = rb.y(f + i);
        if (long long zk = z(i)) r = RowBuilder::plus(r, rb.z(zk));
        rows.a.push_back(r);
    }
    for (long long i = 1; i <= g; ++i) rows.b.push_back(RowBuilder::plus(rb.x(i), rb.y(i)));
    for (long long i = g + 1; i <= t.hby; ++i) {
        FVec r = rb.x(i);
        if (long long zk = z(t.hax - f + i - g)) r = RowBuilder::plus(r, rb.z(zk));
        rows.b.push_back(r);
    }
    for (long long i = g + 1; i <= t.hbx; ++i) rows.b.push_back(rb.y(i));
    return rows;
}

inline EdgeRows mirror_rows(const EdgeRows& m, const TenInts& t, const TenInts& mt) {
    // rows built for the mirrored ten use layout X'_1..X'_{mt.hxy} = Y_1..,
    // Y'_1..Y'_{mt.hyx} = X_1.., Z unchanged; translate back and swap edges.
    RowBuilder rb{t.hxy, t.hyx, t.I};
    auto translate = [&](const FVec& row) {
        FVec out(rb.dim(), 0);
        for (long long i = 0; i < mt.hxy; ++i) out[t.hxy + i] = row[i];            // X' -> Y
        for (long long j = 0; j < mt.hyx; ++j) out[j] = row[mt.hxy + j];           // Y' -> X
        for (long long k = 0; k < t.I; ++k) out[t.hxy + t.hyx + k] = row[mt.hxy + mt.hyx + k];
        return out;
    };
    EdgeRows rows;
    for (const auto& r : m.b) rows.a.push_back(translate(r));
    for (const auto& r : m.a) rows.b.push_back(translate(r));
    return rows;
}

inline EdgeRows build_rows(const TenInts& t, const RowBuilder& rb) {
    require(t.hbx >= t.hax, "bx_g_ax");
    require(t.hay >= t.hby, "ay_g_by");
    require(t.hay <= t.hxy && t.hby <= t.hxy, "H(x|y) >= H(a|y)");
    require(t.hbx <= t.hyx && t.hax <= t.hyx, "H(y|x) >= H(b|x)");
    long long fs = t.Ha - t.hax - t.hay;
    long long gs = t.Hb - t.hbx - t.hby;
    if (fs >= 0 && gs >= 0) return case1(t, rb);
    if (fs < 0 && gs >= 0) return case2(t, rb);
    if (fs >= 0 && gs < 0) {
        TenInts mt = mirrored(t);
        return mirror_rows(case2(mt, RowBuilder{mt.hxy, mt.hyx, mt.I}), t, mt);
    }
    // both below: case 4; prefer 4a, mirror into 4b otherwise
    if (-fs < t.hay) return case4a(t, rb);
    TenInts mt = mirrored(t);
    require(-gs < t.hbx, "case-4 greedy consequence");
    return mirror_rows(case4a(mt, RowBuilder{mt.hxy, mt.hyx, mt.I}), t, mt);
}

}  // namespace tc_detail

/// Constructive realization: scales the vector to integers, allocates
/// variables X_1..X_{H(x|y)}, Y_1..Y_{H(y|x)}, Z_1..Z_{I(x;y)} over GF(2),
/// dispatches on the signs of H(a) - H(a|x) - H(a|y) and the mirror image,
/// and emits the XOR code for the matching case. The emitted code is
/// re-verified internally: its entropic vector must equal scale * input and
/// the greedy serializer must accept it.
inline TwoCycleRealization two_cycle_realize(const TwoCycleVector& v) {
    auto report = two_cycle_check(v);
    if (!report.all())
        throw TwoCycleRejection(report.first_failure(),
                                report.details.empty() ? "inequality family failed" : report.details.front());
    TwoCycleTen ten = fifteen_to_ten(v);

    long long scale = 1;
    tc_detail::TenInts t = tc_detail::scale_to_integers(ten, scale);
    tc_detail::RowBuilder rb{t.hxy, t.hyx, t.I};
    tc_detail::EdgeRows rows = tc_detail::build_rows(t, rb);

    SourcedGraph g;
    g.vertices = {"u", "v"};
    g.edges = {{"a", "u", "v"}, {"b", "v", "u"}};
    g.sources = {{"x", "u"}, {"y", "v"}};
    std::vector<FVec> x_rows, y_rows;
    for (long long i = 1; i <= t.hxy; ++i) x_rows.push_back(rb.x(i));
    for (long long k = 1; k <= t.I; ++k) x_rows.push_back(rb.z(k));
    for (long long j = 1; j <= t.hyx; ++j) y_rows.push_back(rb.y(j));
    for (long long k = 1; k <= t.I; ++k) y_rows.push_back(rb.z(k));
    LinearCode code = make_linear_code_rows(g, FieldSpec(2), rb.dim(),
                                            {x_rows, y_rows}, {rows.a, rows.b});

    // internal verification; a failure here is a defect, not a rejection
    if (!validate(code).empty())
        throw std::logic_error("two_cycle_realize: emitted code is invalid");
    auto ev = entropic_vector(code);
    auto tcv = two_cycle_from_entropic(ev);
    for (std::uint32_t mask = 1; mask < 16; ++mask)
        if (tcv.h[mask] != v.h[mask] * scale)
            throw std::logic_error("two_cycle_realize: emitted code does not realize the vector");
    if (!greedy_serialize(code).serializable)
        throw std::logic_error("two_cycle_realize: emitted code is not serializable");
    return {scale, std::move(code)};
}

}  // namespace ncser
