#pragma once

#include <set>
#include <string>

#include "cdc/complex.hpp"
#include "cdc/iso.hpp"

namespace cdc {

// ---------------------------------------------------------------------------
// Generators

inline Complex point(const std::string& name = "pt") {
    return Complex::validate({{name, 0}}, {});
}

/// The n-globe: elements k-, k+ for k < n and a greatest element n.
inline Complex globe(int n) {
    if (n < 0) fail(errc::bad_params, "globe dimension must be >= 0");
    std::vector<ElementData> elems;
    std::vector<CoverData> covers;
    auto id = [](int k, Sign a) { return std::to_string(k) + sign_char(a); };
    for (int k = 0; k < n; ++k)
        for (Sign a : {Sign::minus, Sign::plus}) elems.push_back({id(k, a), k});
    elems.push_back({std::to_string(n), n});
    auto upper_ids = [&](int k) {
        std::vector<std::string> out;
        if (k + 1 < n) { out.push_back(id(k + 1, Sign::minus)); out.push_back(id(k + 1, Sign::plus)); }
        else out.push_back(std::to_string(n));
        return out;
    };
    for (int k = 0; k + 1 <= n; ++k)
        for (const auto& up : upper_ids(k))
            for (Sign a : {Sign::minus, Sign::plus})
                covers.push_back({up, id(k, a), a});
    return Complex::validate(elems, covers);
}

/// The k-fold path of 1-globes: vertices v0..vk, edges e1..ek.
inline Complex path(int k) {
    if (k < 1) fail(errc::bad_params, "path length must be >= 1");
    std::vector<ElementData> elems;
    std::vector<CoverData> covers;
    for (int i = 0; i <= k; ++i) elems.push_back({"v" + std::to_string(i), 0});
    for (int i = 1; i <= k; ++i) {
        std::string e = "e" + std::to_string(i);
        elems.push_back({e, 1});
        covers.push_back({e, "v" + std::to_string(i - 1), Sign::minus});
        covers.push_back({e, "v" + std::to_string(i), Sign::plus});
    }
    return Complex::validate(elems, covers);
}

// ---------------------------------------------------------------------------
// Name handling for glued constructions

namespace detail {
inline std::string fresh_name(std::string base, const ComplexBuilder& b) {
    while (b.has(base)) base += "'";
    return base;
}
} // namespace detail

// ---------------------------------------------------------------------------
// Disjoint union and pushout

inline Complex disjoint_union(const Complex& p, const Complex& q) {
    ComplexBuilder b;
    for (int i = 0; i < p.size(); ++i) b.add_element(p.name(i), p.dim(i));
    std::vector<std::string> qname(static_cast<std::size_t>(q.size()));
    for (int i = 0; i < q.size(); ++i) {
        qname[static_cast<std::size_t>(i)] = detail::fresh_name(q.name(i), b);
        b.add_element(qname[static_cast<std::size_t>(i)], q.dim(i));
    }
    for (int u = 0; u < p.size(); ++u)
        for (const auto& [l, s] : p.lower_covers(u)) b.add_cover(p.name(u), p.name(l), s);
    for (int u = 0; u < q.size(); ++u)
        for (const auto& [l, s] : q.lower_covers(u))
            b.add_cover(qname[static_cast<std::size_t>(u)], qname[static_cast<std::size_t>(l)], s);
    return b.finish();
}

struct Inclusion {
    const Complex* source = nullptr;
    const Complex* target = nullptr;
    std::vector<int> map;
};

inline void require_inclusion(const Inclusion& inc) {
    if (!inc.source || !inc.target || !verify_inclusion(*inc.source, *inc.target, inc.map))
        fail(errc::not_an_inclusion, "leg is not an inclusion of oriented graded posets");
}

struct PushoutResult {
    Complex complex;
    std::vector<int> left;   // P1 index -> pushout index
    std::vector<int> right;  // P2 index -> pushout index
};

/// Pushout of P1 <- Q -> P2 along two inclusions; identified elements keep the
/// left leg's names.
inline PushoutResult pushout(const Inclusion& i1, const Inclusion& i2) {
    require_inclusion(i1);
    require_inclusion(i2);
    if (i1.source != i2.source)
        fail(errc::not_an_inclusion, "pushout legs must share their source");
    const Complex& q = *i1.source;
    const Complex& p1 = *i1.target;
    const Complex& p2 = *i2.target;

    ComplexBuilder b;
    std::vector<std::string> name1(static_cast<std::size_t>(p1.size()));
    for (int i = 0; i < p1.size(); ++i) {
        name1[static_cast<std::size_t>(i)] = p1.name(i);
        b.add_element(p1.name(i), p1.dim(i));
    }
    std::vector<int> im2_to_1(static_cast<std::size_t>(p2.size()), -1);
    for (int x = 0; x < q.size(); ++x) {
        int in2 = i2.map[static_cast<std::size_t>(x)];
        im2_to_1[static_cast<std::size_t>(in2)] = i1.map[static_cast<std::size_t>(x)];
    }
    std::vector<std::string> name2(static_cast<std::size_t>(p2.size()));
    for (int i = 0; i < p2.size(); ++i) {
        if (im2_to_1[static_cast<std::size_t>(i)] >= 0) {
            name2[static_cast<std::size_t>(i)] =
                name1[static_cast<std::size_t>(im2_to_1[static_cast<std::size_t>(i)])];
        } else {
            name2[static_cast<std::size_t>(i)] = detail::fresh_name(p2.name(i), b);
            b.add_element(name2[static_cast<std::size_t>(i)], p2.dim(i));
        }
    }
    for (int u = 0; u < p1.size(); ++u)
        for (const auto& [l, s] : p1.lower_covers(u)) b.add_cover(p1.name(u), p1.name(l), s);
    for (int u = 0; u < p2.size(); ++u) {
        if (im2_to_1[static_cast<std::size_t>(u)] >= 0) continue;  // covers already present via P1
        for (const auto& [l, s] : p2.lower_covers(u))
            b.add_cover(name2[static_cast<std::size_t>(u)], name2[static_cast<std::size_t>(l)], s);
    }
    PushoutResult out{b.finish(), {}, {}};
    out.left.resize(static_cast<std::size_t>(p1.size()));
    for (int i = 0; i < p1.size(); ++i)
        out.left[static_cast<std::size_t>(i)] = out.complex.require(name1[static_cast<std::size_t>(i)]);
    out.right.resize(static_cast<std::size_t>(p2.size()));
    for (int i = 0; i < p2.size(); ++i)
        out.right[static_cast<std::size_t>(i)] = out.complex.require(name2[static_cast<std::size_t>(i)]);
    return out;
}

// ---------------------------------------------------------------------------
// Suspension

struct SuspensionResult {
    Complex complex;
    std::vector<int> image;  // old index -> new index
    int bottom_minus = -1, bottom_plus = -1;
};

inline SuspensionResult suspension(const Complex& p) {
    ComplexBuilder b;
    std::string bm = "⊥⁻", bp = "⊥⁺";
    bm = detail::fresh_name(bm, b);
    b.add_element(bm, 0);
    bp = detail::fresh_name(bp, b);
    b.add_element(bp, 0);
    for (int i = 0; i < p.size(); ++i) b.add_element(p.name(i), p.dim(i) + 1);
    for (int u = 0; u < p.size(); ++u)
        for (const auto& [l, s] : p.lower_covers(u)) b.add_cover(p.name(u), p.name(l), s);
    for (int i = 0; i < p.size(); ++i)
        if (p.dim(i) == 0) {
            b.add_cover(p.name(i), bm, Sign::minus);
            b.add_cover(p.name(i), bp, Sign::plus);
        }
    SuspensionResult out{b.finish(), {}, -1, -1};
    out.image.resize(static_cast<std::size_t>(p.size()));
    for (int i = 0; i < p.size(); ++i)
        out.image[static_cast<std::size_t>(i)] = out.complex.require(p.name(i));
    out.bottom_minus = out.complex.require(bm);
    out.bottom_plus = out.complex.require(bp);
    return out;
}

// ---------------------------------------------------------------------------
// Lax Gray product

struct ProductResult {
    Complex complex;
    std::vector<std::vector<int>> pair_index;  // [P index][Q index] -> product index

    Bits image(const Complex& prod, const Bits& u, const Bits& v) const {
        Bits out = prod.empty_set();
        u.for_each([&](std::size_t i) {
            v.for_each([&](std::size_t j) { out.set(static_cast<std::size_t>(pair_index[i][j])); });
        });
        return out;
    }
};

/// First-factor covers keep their sign; second-factor covers are twisted by
/// the parity of the first factor's dimension.
inline ProductResult gray_product(const Complex& p, const Complex& q) {
    ComplexBuilder b;
    std::vector<std::vector<std::string>> nm(static_cast<std::size_t>(p.size()),
                                             std::vector<std::string>(static_cast<std::size_t>(q.size())));
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < q.size(); ++j) {
            nm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                detail::fresh_name(p.name(i) + "⊗" + q.name(j), b);
            b.add_element(nm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                          p.dim(i) + q.dim(j));
        }
    auto name_of = [&](int i, int j) -> const std::string& {
        return nm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    };
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < q.size(); ++j) {
            for (const auto& [l, s] : p.lower_covers(i)) b.add_cover(name_of(i, j), name_of(l, j), s);
            for (const auto& [l, s] : q.lower_covers(j))
                b.add_cover(name_of(i, j), name_of(i, l), twist(p.dim(i), s));
        }
    ProductResult out{b.finish(), {}};
    out.pair_index.assign(static_cast<std::size_t>(p.size()),
                          std::vector<int>(static_cast<std::size_t>(q.size()), -1));
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < q.size(); ++j)
            out.pair_index[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                out.complex.require(name_of(i, j));
    return out;
}

inline Complex cube(int n) {
    if (n < 0) fail(errc::bad_params, "cube dimension must be >= 0");
    if (n == 0) return point();
    Complex c = globe(1);
    for (int i = 1; i < n; ++i) c = gray_product(c, globe(1)).complex;
    return c;
}

// ---------------------------------------------------------------------------
// Join

struct JoinResult {
    Complex complex;
    std::vector<int> left;                     // P index -> join index
    std::vector<int> right;                    // Q index -> join index
    std::vector<std::vector<int>> pair_index;  // [P index][Q index] -> join index
};

/// The de-bottomed Gray product of the bottom-extended posets, with the
/// three-way element tagging x, y, x*y.
inline JoinResult join(const Complex& p, const Complex& q) {
    ComplexBuilder b;
    std::vector<std::string> ln(static_cast<std::size_t>(p.size()));
    std::vector<std::string> rn(static_cast<std::size_t>(q.size()));
    for (int i = 0; i < p.size(); ++i) {
        ln[static_cast<std::size_t>(i)] = detail::fresh_name(p.name(i), b);
        b.add_element(ln[static_cast<std::size_t>(i)], p.dim(i));
    }
    for (int j = 0; j < q.size(); ++j) {
        rn[static_cast<std::size_t>(j)] = detail::fresh_name(q.name(j), b);
        b.add_element(rn[static_cast<std::size_t>(j)], q.dim(j));
    }
    std::vector<std::vector<std::string>> pn(static_cast<std::size_t>(p.size()),
                                             std::vector<std::string>(static_cast<std::size_t>(q.size())));
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < q.size(); ++j) {
            pn[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = detail::fresh_name(
                ln[static_cast<std::size_t>(i)] + "⋆" + rn[static_cast<std::size_t>(j)], b);
            b.add_element(pn[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                          p.dim(i) + q.dim(j) + 1);
        }
    auto pr = [&](int i, int j) -> const std::string& {
        return pn[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    };
    for (int u = 0; u < p.size(); ++u)
        for (const auto& [l, s] : p.lower_covers(u))
            b.add_cover(ln[static_cast<std::size_t>(u)], ln[static_cast<std::size_t>(l)], s);
    for (int u = 0; u < q.size(); ++u)
        for (const auto& [l, s] : q.lower_covers(u))
            b.add_cover(rn[static_cast<std::size_t>(u)], rn[static_cast<std::size_t>(l)], s);
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < q.size(); ++j) {
            // first-factor covers keep their sign in P_bot (x) Q_bot
            for (const auto& [l, s] : p.lower_covers(i)) b.add_cover(pr(i, j), pr(l, j), s);
            if (p.dim(i) == 0) b.add_cover(pr(i, j), rn[static_cast<std::size_t>(j)], Sign::plus);
            // second-factor covers are twisted by dim(x) + 1, the dimension in P_bot
            for (const auto& [l, s] : q.lower_covers(j))
                b.add_cover(pr(i, j), pr(i, l), twist(p.dim(i) + 1, s));
            if (q.dim(j) == 0)
                b.add_cover(pr(i, j), ln[static_cast<std::size_t>(i)],
                            twist(p.dim(i) + 1, Sign::plus));
        }
    JoinResult out{b.finish(), {}, {}, {}};
    out.left.resize(static_cast<std::size_t>(p.size()));
    for (int i = 0; i < p.size(); ++i)
        out.left[static_cast<std::size_t>(i)] = out.complex.require(ln[static_cast<std::size_t>(i)]);
    out.right.resize(static_cast<std::size_t>(q.size()));
    for (int j = 0; j < q.size(); ++j)
        out.right[static_cast<std::size_t>(j)] = out.complex.require(rn[static_cast<std::size_t>(j)]);
    out.pair_index.assign(static_cast<std::size_t>(p.size()),
                          std::vector<int>(static_cast<std::size_t>(q.size()), -1));
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < q.size(); ++j)
            out.pair_index[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                out.complex.require(pr(i, j));
    return out;
}

inline Complex simplex(int n) {
    if (n < 0) fail(errc::bad_params, "simplex dimension must be >= 0");
    Complex s = point("0");
    for (int i = 1; i <= n; ++i) s = join(s, point(std::to_string(i))).complex;
    return s;
}

// ---------------------------------------------------------------------------
// J-duals

struct DualitySet {
    enum class Kind { explicit_set, all, odd, even } kind = Kind::all;
    std::set<int> dims;

    static DualitySet all() { return {Kind::all, {}}; }
    static DualitySet odd() { return {Kind::odd, {}}; }
    static DualitySet even() { return {Kind::even, {}}; }
    static DualitySet of(std::set<int> dims) { return {Kind::explicit_set, std::move(dims)}; }

    bool contains(int d, int /*top_dim*/) const {
        switch (kind) {
            case Kind::explicit_set: return dims.count(d) > 0;
            case Kind::all: return d >= 1;
            case Kind::odd: return d >= 1 && d % 2 == 1;
            case Kind::even: return d >= 1 && d % 2 == 0;
        }
        return false;
    }
};

/// Flips the sign of every cover whose upper element's dimension lies in J.
inline Complex j_dual(const Complex& p, const DualitySet& j) {
    std::vector<CoverData> covers;
    for (int u = 0; u < p.size(); ++u)
        for (const auto& [l, s] : p.lower_covers(u))
            covers.push_back({p.name(u), p.name(l),
                              j.contains(p.dim(u), p.top_dim()) ? flip(s) : s});
    return Complex::validate(p.element_data(), covers);
}

inline Complex op_dual(const Complex& p) { return j_dual(p, DualitySet::odd()); }
inline Complex co_dual(const Complex& p) { return j_dual(p, DualitySet::even()); }
inline Complex op_all(const Complex& p) { return j_dual(p, DualitySet::all()); }

} // namespace cdc
