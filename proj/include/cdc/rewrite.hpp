#pragma once

#include <optional>

#include "cdc/build.hpp"
#include "cdc/iso.hpp"
#include "cdc/molecule.hpp"

namespace cdc {

/// Partial function between the element sets of two complexes; -1 marks
/// undefined. Equality is equality of the defined graph.
struct PartialMap {
    int source_size = 0;
    int target_size = 0;
    std::vector<int> assignment;  // source index -> target index or -1

    static PartialMap identity(int n) {
        PartialMap m{n, n, std::vector<int>(static_cast<std::size_t>(n))};
        for (int i = 0; i < n; ++i) m.assignment[static_cast<std::size_t>(i)] = i;
        return m;
    }

    int apply(int i) const { return assignment[static_cast<std::size_t>(i)]; }

    bool operator==(const PartialMap& o) const {
        return source_size == o.source_size && target_size == o.target_size &&
               assignment == o.assignment;
    }
};

inline PartialMap compose(const PartialMap& first, const PartialMap& then) {
    if (first.target_size != then.source_size)
        fail(errc::precondition_failed, "partial maps do not compose");
    PartialMap out{first.source_size, then.target_size,
                   std::vector<int>(static_cast<std::size_t>(first.source_size), -1)};
    for (int i = 0; i < first.source_size; ++i) {
        int mid = first.apply(i);
        if (mid >= 0) out.assignment[static_cast<std::size_t>(i)] = then.apply(mid);
    }
    return out;
}

struct MergerStep {
    std::string removed;
    std::string merged_first, merged_second;
    std::string result;
};

struct MergerSequence {
    std::vector<MergerStep> steps;
    PartialMap composite;  // original complex -> final complex
};

struct SimpleMergerResult {
    Complex result;
    PartialMap map;
    MergerStep step;
};

/// Simple merger along a two-maximal constructible submolecule U of P whose
/// shared boundary is the closure of a single element covered only by the two
/// maximal elements of U.
inline SimpleMergerResult simple_merger(const Complex& p, const Bits& u, Context* ctx = nullptr) {
    std::optional<Context> local;
    if (!ctx) {
        local.emplace(p);
        ctx = &*local;
    }
    if (!ctx->certify(u))
        fail(errc::precondition_failed, "merger region is not a constructible molecule");
    Bits mx = maximal_elements(p, u);
    if (mx.count() != 2)
        fail(errc::precondition_failed, "merger region must have exactly two maximal elements");
    auto ms = mx.indices();
    int n = dim_of(p, u);
    int xa = -1, xb = -1;
    Bits shared = p.below(ms[0]) & p.below(ms[1]);
    for (auto [a, b] : {std::pair{ms[0], ms[1]}, std::pair{ms[1], ms[0]}}) {
        Bits seam = boundary_of_element(p, a, Sign::plus) & boundary_of_element(p, b, Sign::minus);
        if (seam == shared) { xa = a; xb = b; break; }
    }
    if (xa < 0)
        fail(errc::precondition_failed,
             "the closures do not meet along an output/input boundary pair");
    int y = -1;
    if (!has_greatest(p, shared, &y) || p.dim(y) != n - 1)
        fail(errc::precondition_failed, "shared boundary is not the closure of a single element");
    for (const auto& [up, s] : p.upper_covers(y))
        if (up != xa && up != xb)
            fail(errc::precondition_failed,
                 "'" + p.name(y) + "' is covered by an element outside the merger region");

    ComplexBuilder b;
    std::string merged_name = p.name(xa) + "∨" + p.name(xb);
    std::vector<std::string> names(static_cast<std::size_t>(p.size()));
    for (int i = 0; i < p.size(); ++i) {
        if (i == y) continue;
        std::string nm = (i == xa || i == xb) ? merged_name : p.name(i);
        if (i == xb && xa < xb) continue;  // single new element for the pair
        if (i == xa && xb < xa) continue;
        names[static_cast<std::size_t>(i)] = detail::fresh_name(nm, b);
        b.add_element(names[static_cast<std::size_t>(i)], p.dim(i));
    }
    int keep = std::min(xa, xb), drop = std::max(xa, xb);
    auto out_name = [&](int i) -> const std::string& {
        if (i == drop) return names[static_cast<std::size_t>(keep)];
        return names[static_cast<std::size_t>(i)];
    };
    std::vector<std::pair<int, int>> seen;  // dedup covers into the merged cell
    for (int up = 0; up < p.size(); ++up) {
        if (up == y) continue;
        for (const auto& [l, s] : p.lower_covers(up)) {
            if (l == y) continue;
            int cu = (up == drop) ? keep : up;
            int cl = (l == drop) ? keep : l;
            bool dup = false;
            for (auto& [a2, b2] : seen)
                if (a2 == cu && b2 == cl) { dup = true; break; }
            if (up == xa || up == xb || l == xa || l == xb) {
                if (dup) continue;
                seen.emplace_back(cu, cl);
            }
            b.add_cover(out_name(up), out_name(l), s);
        }
    }
    SimpleMergerResult out{b.finish(), {}, {}};
    out.map.source_size = p.size();
    out.map.target_size = out.result.size();
    out.map.assignment.assign(static_cast<std::size_t>(p.size()), -1);
    for (int i = 0; i < p.size(); ++i) {
        if (i == y) continue;
        out.map.assignment[static_cast<std::size_t>(i)] = out.result.require(out_name(i));
    }
    out.step = {p.name(y), p.name(xa), p.name(xb), names[static_cast<std::size_t>(keep)]};
    return out;
}

// ---------------------------------------------------------------------------
// Merge strategies

enum class MergeStrategy { leftmost, rightmost };

namespace detail {

/// Scans pairs of maximal elements of `region` for a two-maximal constructible
/// submolecule; descends into non-atomic shared boundaries. Returns a merger
/// region ready for simple_merger.
inline std::optional<Bits> find_merge_site(Context& ctx, const Bits& region,
                                           MergeStrategy strat) {
    const Complex& p = ctx.host();
    std::vector<int> ms = maximal_elements(p, region).indices();
    if (ms.size() < 2) return std::nullopt;
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = 0; j < ms.size(); ++j)
            if (i != j) pairs.emplace_back(ms[i], ms[j]);
    if (strat == MergeStrategy::rightmost) std::reverse(pairs.begin(), pairs.end());
    for (auto [a, b] : pairs) {
        Bits v = p.below(a) | p.below(b);
        Bits shared = p.below(a) & p.below(b);
        Bits seam = boundary_of_element(p, a, Sign::plus) & boundary_of_element(p, b, Sign::minus);
        if (seam != shared || shared.none()) continue;
        if (!ctx.certify(v)) continue;
        if (maximal_elements(p, v).count() != 2) continue;
        if (!ctx.submolecule(v, region)) continue;
        if (has_greatest(p, shared)) {
            // the merged element must not be covered from outside
            int y = -1;
            has_greatest(p, shared, &y);
            bool clean = true;
            for (const auto& [up, s] : p.upper_covers(y))
                if (up != a && up != b) { clean = false; break; }
            if (!clean) continue;
            return v;
        }
        if (auto inner = find_merge_site(ctx, shared, strat)) return inner;
    }
    return std::nullopt;
}

} // namespace detail

struct MergeToAtomResult {
    Complex result;
    MergerSequence sequence;
    std::vector<Complex> intermediates;  // after each step, excluding the input
};

/// Reduces a constructible molecule (given as a whole complex) to an atom by
/// simple mergers, scanning candidate sites deterministically.
inline MergeToAtomResult merge_to_atom(const Complex& input,
                                       MergeStrategy strat = MergeStrategy::leftmost) {
    MergeToAtomResult out{input, {{}, PartialMap::identity(input.size())}, {}};
    for (;;) {
        Context ctx(out.result);
        Bits full = out.result.full_set();
        if (!ctx.certify(full))
            fail(errc::precondition_failed, "merge_to_atom requires a constructible molecule");
        if (has_greatest(out.result, full)) break;
        auto site = detail::find_merge_site(ctx, full, strat);
        if (!site)
            fail(errc::budget_exceeded, "no merger site found on a non-atomic molecule");
        SimpleMergerResult step = simple_merger(out.result, *site, &ctx);
        out.sequence.steps.push_back(step.step);
        out.sequence.composite = compose(out.sequence.composite, step.map);
        out.result = step.result;
        out.intermediates.push_back(out.result);
    }
    return out;
}

struct StandardMergerResult {
    Complex result;  // the canonical globe of the right dimension
    MergerSequence sequence;
    std::vector<Complex> intermediates;
};

/// The unique merger onto the globe: first merge to an atom, then merge each
/// boundary layer, then rename along the unique isomorphism with the globe.
inline StandardMergerResult standard_merger(const Complex& input,
                                            MergeStrategy strat = MergeStrategy::leftmost) {
    StandardMergerResult out{input, {{}, PartialMap::identity(input.size())}, {}};
    int n = input.top_dim();
    for (;;) {
        Context ctx(out.result);
        Bits full = out.result.full_set();
        if (!ctx.certify(full))
            fail(errc::precondition_failed, "standard_merger requires a constructible molecule");
        std::optional<Bits> site;
        if (!has_greatest(out.result, full)) {
            site = detail::find_merge_site(ctx, full, strat);
        } else {
            for (int d = n - 1; d >= 1 && !site; --d)
                for (Sign a : {Sign::minus, Sign::plus}) {
                    Bits layer = boundary(out.result, full, a, d);
                    site = detail::find_merge_site(ctx, layer, strat);
                    if (site) break;
                }
        }
        if (!site) break;
        SimpleMergerResult step = simple_merger(out.result, *site, &ctx);
        out.sequence.steps.push_back(step.step);
        out.sequence.composite = compose(out.sequence.composite, step.map);
        out.result = step.result;
        out.intermediates.push_back(out.result);
    }
    Complex target = globe(n);
    auto iso = find_isomorphism(out.result, target);
    if (!iso)
        fail(errc::invariant_violated, "standard merger did not reach the globe");
    PartialMap rename{out.result.size(), target.size(), *iso};
    out.sequence.composite = compose(out.sequence.composite, rename);
    out.result = target;
    return out;
}

/// cl(m^-1(V')) for a merger composite m and a subset V' of the target.
inline Bits merger_preimage(const Complex& source, const PartialMap& m, const Bits& target_set) {
    Bits pre = source.empty_set();
    for (int i = 0; i < source.size(); ++i) {
        int img = m.apply(i);
        if (img >= 0 && target_set.test(static_cast<std::size_t>(img))) pre.set(static_cast<std::size_t>(i));
    }
    return closure(source, pre);
}

// ---------------------------------------------------------------------------
// Substitution and cells

namespace detail {

/// The unique isomorphism between the boundaries of two molecules, assembled
/// from the input and output halves; host indices on both sides.
inline std::vector<std::pair<int, int>> boundary_identification(
    const Complex& hw, const Bits& w, const Complex& hv, const Bits& v) {
    std::vector<std::pair<int, int>> out;
    std::vector<int> img(static_cast<std::size_t>(hw.size()), -2);
    for (Sign a : {Sign::minus, Sign::plus}) {
        int nw = dim_of(hw, w), nv = dim_of(hv, v);
        Bits bw = boundary(hw, w, a, nw - 1);
        Bits bv = boundary(hv, v, a, nv - 1);
        SubComplex sw = restrict_to(hw, bw);
        SubComplex sv = restrict_to(hv, bv);
        auto iso = find_isomorphism(sw.complex, sv.complex);
        if (!iso)
            fail(errc::boundary_mismatch,
                 std::string("no isomorphism between the ") +
                     (a == Sign::minus ? "input" : "output") + " boundaries");
        for (int i = 0; i < sw.complex.size(); ++i) {
            int from = sw.to_host[static_cast<std::size_t>(i)];
            int to = sv.to_host[static_cast<std::size_t>((*iso)[static_cast<std::size_t>(i)])];
            if (img[static_cast<std::size_t>(from)] == -2) {
                img[static_cast<std::size_t>(from)] = to;
                out.emplace_back(from, to);
            } else if (img[static_cast<std::size_t>(from)] != to) {
                fail(errc::boundary_mismatch,
                     "input and output boundary isomorphisms disagree on the shared part");
            }
        }
    }
    return out;
}

} // namespace detail

struct SubstitutionResult {
    Complex result;
    Bits image_of_w;            // the copy of W inside the result
    std::vector<int> host_map;  // old host index -> result index, -1 on removed interior
};

/// U[W/V]: replaces the constructible submolecule V of the molecule `host`
/// with W, gluing along the unique boundary isomorphisms.
inline SubstitutionResult substitute(const Complex& host, const Bits& v, const Complex& w) {
    Context ctx(host);
    Bits full = host.full_set();
    if (!ctx.certify(full) || !ctx.certify(v))
        fail(errc::precondition_failed, "substitution requires constructible molecules");
    if (!ctx.submolecule(v, full))
        fail(errc::not_submolecule, "V is not a constructible submolecule of the host");
    Context wctx(w);
    if (!wctx.certify(w.full_set()))
        fail(errc::precondition_failed, "replacement W is not a constructible molecule");

    // identify boundary-of-W with boundary-of-V (host indices)
    auto ident = detail::boundary_identification(w, w.full_set(), host, v);
    std::vector<int> w_to_host(static_cast<std::size_t>(w.size()), -1);
    for (auto [wi, hi] : ident) w_to_host[static_cast<std::size_t>(wi)] = hi;

    int nv = dim_of(host, v);
    Bits bv = boundary_both(host, v, nv - 1);
    Bits interior = difference(v, bv);

    // elements of the host outside V must not touch the interior of V
    for (int x = 0; x < host.size(); ++x) {
        if (v.test(static_cast<std::size_t>(x))) continue;
        for (const auto& [l, s] : host.lower_covers(x))
            if (interior.test(static_cast<std::size_t>(l)))
                fail(errc::invariant_violated, "host covers reach the interior of V");
    }

    ComplexBuilder b;
    std::vector<std::string> host_names(static_cast<std::size_t>(host.size()));
    for (int i = 0; i < host.size(); ++i) {
        if (v.test(static_cast<std::size_t>(i))) continue;  // dropped with V
        host_names[static_cast<std::size_t>(i)] = host.name(i);
        b.add_element(host.name(i), host.dim(i));
    }
    std::vector<std::string> w_names(static_cast<std::size_t>(w.size()));
    for (int i = 0; i < w.size(); ++i) {
        w_names[static_cast<std::size_t>(i)] = detail::fresh_name(w.name(i), b);
        b.add_element(w_names[static_cast<std::size_t>(i)], w.dim(i));
    }
    // covers inside the remaining host, rerouted into W along the boundary
    auto host_side_name = [&](int i) -> std::string {
        if (!v.test(static_cast<std::size_t>(i))) return host_names[static_cast<std::size_t>(i)];
        for (int wi = 0; wi < w.size(); ++wi)
            if (w_to_host[static_cast<std::size_t>(wi)] == i) return w_names[static_cast<std::size_t>(wi)];
        fail(errc::invariant_violated, "boundary element of V has no W preimage");
    };
    for (int u = 0; u < host.size(); ++u) {
        if (v.test(static_cast<std::size_t>(u))) continue;
        for (const auto& [l, s] : host.lower_covers(u))
            b.add_cover(host.name(u), host_side_name(l), s);
    }
    for (int u = 0; u < w.size(); ++u)
        for (const auto& [l, s] : w.lower_covers(u))
            b.add_cover(w_names[static_cast<std::size_t>(u)], w_names[static_cast<std::size_t>(l)], s);

    SubstitutionResult out{b.finish(), {}, {}};
    out.image_of_w = out.result.empty_set();
    for (int i = 0; i < w.size(); ++i)
        out.image_of_w.set(static_cast<std::size_t>(out.result.require(w_names[static_cast<std::size_t>(i)])));
    out.host_map.assign(static_cast<std::size_t>(host.size()), -1);
    for (int i = 0; i < host.size(); ++i) {
        if (!v.test(static_cast<std::size_t>(i)))
            out.host_map[static_cast<std::size_t>(i)] = out.result.require(host.name(i));
        else if (bv.test(static_cast<std::size_t>(i)))
            out.host_map[static_cast<std::size_t>(i)] = out.result.require(host_side_name(i));
    }
    return out;
}

struct CellResult {
    Complex result;
    int top = -1;
};

/// U => V: glues two molecules with matching boundaries along the boundary
/// pushout and adjoins one top element; certified through the atom
/// classification rather than a fresh thinness scan.
inline Complex cell(const Complex& u, const Complex& v, int* top_out = nullptr) {
    Context uctx(u), vctx(v);
    if (!uctx.certify(u.full_set()) || !vctx.certify(v.full_set()))
        fail(errc::precondition_failed, "cell requires constructible molecules");
    int n = u.top_dim();
    if (v.top_dim() != n)
        fail(errc::boundary_mismatch, "cell requires molecules of equal dimension");
    auto ident = detail::boundary_identification(v, v.full_set(), u, u.full_set());
    std::vector<int> v_to_u(static_cast<std::size_t>(v.size()), -1);
    for (auto [vi, ui] : ident) v_to_u[static_cast<std::size_t>(vi)] = ui;

    ComplexBuilder b;
    for (int i = 0; i < u.size(); ++i) b.add_element(u.name(i), u.dim(i));
    std::vector<std::string> v_names(static_cast<std::size_t>(v.size()));
    for (int i = 0; i < v.size(); ++i) {
        if (v_to_u[static_cast<std::size_t>(i)] >= 0) {
            v_names[static_cast<std::size_t>(i)] = u.name(v_to_u[static_cast<std::size_t>(i)]);
        } else {
            v_names[static_cast<std::size_t>(i)] = detail::fresh_name(v.name(i), b);
            b.add_element(v_names[static_cast<std::size_t>(i)], v.dim(i));
        }
    }
    std::string top = detail::fresh_name("top", b);
    b.add_element(top, n + 1);
    for (int x = 0; x < u.size(); ++x)
        for (const auto& [l, s] : u.lower_covers(x)) b.add_cover(u.name(x), u.name(l), s);
    for (int x = 0; x < v.size(); ++x) {
        if (v_to_u[static_cast<std::size_t>(x)] >= 0) continue;  // boundary covers already present
        for (const auto& [l, s] : v.lower_covers(x))
            b.add_cover(v_names[static_cast<std::size_t>(x)], v_names[static_cast<std::size_t>(l)], s);
    }
    for (int x = 0; x < u.size(); ++x)
        if (u.dim(x) == n) b.add_cover(top, u.name(x), Sign::minus);
    for (int x = 0; x < v.size(); ++x)
        if (v.dim(x) == n) b.add_cover(top, v_names[static_cast<std::size_t>(x)], Sign::plus);

    Complex out = b.finish();
    int t = out.require(top);
    // atom classification: certified boundaries plus the globularity equations
    Context octx(out);
    Bits bm = boundary_of_element(out, t, Sign::minus);
    Bits bp = boundary_of_element(out, t, Sign::plus);
    if (!octx.certify(bm) || !octx.certify(bp) || !octx.check_globularity(out.full_set()))
        fail(errc::boundary_mismatch, "glued boundaries do not classify an atom");
    if (top_out) *top_out = t;
    return out;
}

} // namespace cdc
