#pragma once

#include "cdc/complex.hpp"

namespace cdc {

/// Delta_k^a U: the k-dimensional elements of U all of whose covers inside U
/// carry the sign a. Elements with no cover in U qualify for both signs.
inline Bits delta(const Complex& p, const Bits& u, Sign a, int k) {
    Bits out = p.empty_set();
    if (k < 0) return out;
    u.for_each([&](std::size_t xi) {
        int x = static_cast<int>(xi);
        if (p.dim(x) != k) return;
        for (const auto& [up, s] : p.upper_covers(x))
            if (u.test(static_cast<std::size_t>(up)) && s != a) return;
        out.set(xi);
    });
    return out;
}

inline Bits delta_both(const Complex& p, const Bits& u, int k) {
    return delta(p, u, Sign::minus, k) | delta(p, u, Sign::plus, k);
}

namespace detail {
/// Elements x of U such that everything above x inside U has dimension <= k.
inline Bits low_ceiling(const Complex& p, const Bits& u, int k) {
    Bits out = p.empty_set();
    if (k < 0) return out;
    std::vector<int> idx = u.indices();
    // up_dim[x]: max dimension reachable from x going upwards inside U
    std::vector<int> up_dim(static_cast<std::size_t>(p.size()), -1);
    // indices are sorted by dimension, so a descending pass is a topological order
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
        int x = *it;
        int d = p.dim(x);
        for (const auto& [up, s] : p.upper_covers(x))
            if (u.test(static_cast<std::size_t>(up)))
                d = std::max(d, up_dim[static_cast<std::size_t>(up)]);
        up_dim[static_cast<std::size_t>(x)] = d;
        if (d <= k) out.set(static_cast<std::size_t>(x));
    }
    return out;
}
} // namespace detail

/// The k-boundary of sign a: cl(Delta_k^a U) together with the elements whose
/// entire upper set inside U sits in dimension <= k.
inline Bits boundary(const Complex& p, const Bits& u, Sign a, int k) {
    if (k < 0) return p.empty_set();
    if (k >= dim_of(p, u)) return u;
    Bits out = closure(p, delta(p, u, a, k));
    out |= detail::low_ceiling(p, u, k);
    return out;
}

inline Bits boundary_both(const Complex& p, const Bits& u, int k) {
    return boundary(p, u, Sign::minus, k) | boundary(p, u, Sign::plus, k);
}

/// Codimension-1 boundary shorthands.
inline Bits input_boundary(const Complex& p, const Bits& u) {
    return boundary(p, u, Sign::minus, dim_of(p, u) - 1);
}
inline Bits output_boundary(const Complex& p, const Bits& u) {
    return boundary(p, u, Sign::plus, dim_of(p, u) - 1);
}
inline Bits whole_boundary(const Complex& p, const Bits& u) {
    return boundary_both(p, u, dim_of(p, u) - 1);
}

inline Bits boundary_of_element(const Complex& p, int x, Sign a) {
    const Bits& cl = p.below(x);
    return boundary(p, cl, a, p.dim(x) - 1);
}

} // namespace cdc
