#pragma once

#include <cstdint>
#include <functional>

#include "cdc/complex.hpp"

namespace cdc {

/// Order complex data: nondegenerate simplices are the strict chains of the
/// poset, stored as sorted tuples of element indices.
struct SimplicialComplex {
    std::vector<int> vertices;                           // element indices
    std::vector<std::vector<std::vector<int>>> simplices;  // [k][i] = chain of k+1 elements

    int dim() const { return static_cast<int>(simplices.size()) - 1; }
    std::vector<std::size_t> f_vector() const {
        std::vector<std::size_t> f;
        for (const auto& level : simplices) f.push_back(level.size());
        return f;
    }
    long long euler_characteristic() const {
        long long chi = 0, sign = 1;
        for (const auto& level : simplices) {
            chi += sign * static_cast<long long>(level.size());
            sign = -sign;
        }
        return chi;
    }
};

/// Strict chains of a closed subset, enumerated in increasing index order
/// (indices are sorted by dimension, so chains are index-increasing).
inline SimplicialComplex nerve(const Complex& p, const Bits& u) {
    SimplicialComplex out;
    out.vertices = u.indices();
    if (out.vertices.empty()) return out;
    std::vector<std::vector<int>> chains;
    std::vector<int> current;
    std::function<void(int)> extend = [&](int last) {
        chains.push_back(current);
        for (int next : out.vertices) {
            if (next <= last) continue;
            if (!p.leq(last, next)) continue;
            current.push_back(next);
            extend(next);
            current.pop_back();
        }
    };
    for (int start : out.vertices) {
        current = {start};
        extend(start);
    }
    int maxlen = 0;
    for (const auto& c : chains) maxlen = std::max(maxlen, static_cast<int>(c.size()));
    out.simplices.assign(static_cast<std::size_t>(maxlen), {});
    for (auto& c : chains) out.simplices[c.size() - 1].push_back(std::move(c));
    for (auto& level : out.simplices) std::sort(level.begin(), level.end());
    return out;
}

inline SimplicialComplex nerve(const Complex& p) { return nerve(p, p.full_set()); }

// ---------------------------------------------------------------------------
// Integer homology via Smith normal form

struct HomologyResult {
    // reduced homology per degree 0..dim: free rank and torsion coefficients
    std::vector<int> betti;
    std::vector<std::vector<long long>> torsion;

    bool trivial() const {
        for (int b : betti)
            if (b) return false;
        for (const auto& t : torsion)
            if (!t.empty()) return false;
        return true;
    }
    /// Reduced homology of an (n-1)-sphere: a single Z in degree n-1.
    bool sphere(int n_minus_1) const {
        for (std::size_t k = 0; k < betti.size(); ++k)
            if (betti[k] != (static_cast<int>(k) == n_minus_1 ? 1 : 0)) return false;
        for (const auto& t : torsion)
            if (!t.empty()) return false;
        return n_minus_1 < static_cast<int>(betti.size()) || n_minus_1 < 0;
    }
};

namespace detail {

struct SmithResult {
    std::size_t rank = 0;
    std::vector<long long> factors;  // nonzero invariant factors
};

inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r))
        fail(errc::budget_exceeded, "integer overflow in Smith normal form");
    return r;
}

/// In-place Smith normal form on a dense integer matrix.
inline SmithResult smith(std::vector<std::vector<long long>> m) {
    SmithResult out;
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    if (rows > 5000 || cols > 5000)
        fail(errc::budget_exceeded, "homology matrix exceeds the 5000x5000 cap");
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // find the entry of least absolute value in the remaining block
        std::size_t pr = t, pc = t;
        long long best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                long long v = m[i][j] < 0 ? -m[i][j] : m[i][j];
                if (v != 0 && (best == 0 || v < best)) {
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        if (best == 0) break;
        std::swap(m[t], m[pr]);
        for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pc]);
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                long long q = m[i][t] / m[t][t];
                if (q)
                    for (std::size_t j = t; j < cols; ++j)
                        m[i][j] -= checked_mul(q, m[t][j]);
                if (m[i][t] != 0) {
                    std::swap(m[t], m[i]);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                long long q = m[t][j] / m[t][t];
                if (q)
                    for (std::size_t i = t; i < rows; ++i)
                        m[i][j] -= checked_mul(q, m[i][t]);
                if (m[t][j] != 0) {
                    for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][j]);
                    dirty = true;
                }
            }
        }
        // enforce divisibility of the remaining block by the pivot
        long long piv = m[t][t] < 0 ? -m[t][t] : m[t][t];
        bool restart = false;
        for (std::size_t i = t + 1; i < rows && !restart; ++i)
            for (std::size_t j = t + 1; j < cols && !restart; ++j)
                if (m[i][j] % piv != 0) {
                    for (std::size_t jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
                    restart = true;
                }
        if (restart) continue;
        out.factors.push_back(piv);
        ++t;
    }
    out.rank = out.factors.size();
    return out;
}

} // namespace detail

/// Reduced integer homology of the order complex, from Smith normal forms of
/// the simplicial boundary matrices (with the augmentation in degree 0).
inline HomologyResult homology(const SimplicialComplex& s) {
    HomologyResult out;
    int d = s.dim();
    if (d < 0) return out;
    out.betti.assign(static_cast<std::size_t>(d + 1), 0);
    out.torsion.assign(static_cast<std::size_t>(d + 1), {});

    // boundary matrix degree k -> k-1; degree 0 -> augmentation row
    auto boundary_matrix = [&](int k) -> std::vector<std::vector<long long>> {
        if (k == 0)
            return {std::vector<long long>(s.simplices[0].size(), 1)};
        if (k > d || s.simplices[static_cast<std::size_t>(k)].empty()) return {};
        const auto& lower = s.simplices[static_cast<std::size_t>(k - 1)];
        const auto& upper = s.simplices[static_cast<std::size_t>(k)];
        std::vector<std::vector<long long>> m(lower.size(),
                                              std::vector<long long>(upper.size(), 0));
        auto row_of = [&](const std::vector<int>& face) {
            return static_cast<std::size_t>(
                std::lower_bound(lower.begin(), lower.end(), face) - lower.begin());
        };
        for (std::size_t c = 0; c < upper.size(); ++c) {
            const auto& simplex = upper[c];
            long long sign = 1;
            for (std::size_t drop = 0; drop < simplex.size(); ++drop) {
                std::vector<int> face;
                for (std::size_t i = 0; i < simplex.size(); ++i)
                    if (i != drop) face.push_back(simplex[i]);
                m[row_of(face)][c] += sign;
                sign = -sign;
            }
        }
        return m;
    };

    std::vector<detail::SmithResult> snf(static_cast<std::size_t>(d + 2));
    for (int k = 0; k <= d + 1; ++k) {
        auto m = boundary_matrix(k);
        snf[static_cast<std::size_t>(k)] = m.empty() && k > d
                                               ? detail::SmithResult{}
                                               : detail::smith(std::move(m));
    }
    for (int k = 0; k <= d; ++k) {
        std::size_t dim_ck = s.simplices[static_cast<std::size_t>(k)].size();
        std::size_t rk = snf[static_cast<std::size_t>(k)].rank;
        std::size_t rk1 = k + 1 <= d ? snf[static_cast<std::size_t>(k + 1)].rank : 0;
        out.betti[static_cast<std::size_t>(k)] =
            static_cast<int>(dim_ck - rk - rk1);
        if (k + 1 <= d)
            for (long long f : snf[static_cast<std::size_t>(k + 1)].factors)
                if (f > 1) out.torsion[static_cast<std::size_t>(k)].push_back(f);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Recursive dividability (orientation ignored)

class DividabilityChecker {
public:
    explicit DividabilityChecker(const Complex& p, int max_top = 16) : p_(p), max_top_(max_top) {}

    bool recursively_dividable(const Bits& u) {
        if (u.none()) return true;
        auto it = memo_.find(u);
        if (it != memo_.end()) return it->second;
        bool result = check(u);
        memo_.emplace(u, result);
        return result;
    }

private:
    bool check(const Bits& u) {
        if (!is_pure(p_, u)) return false;
        int n = dim_of(p_, u);
        std::vector<int> tops = grade(p_, u, n).indices();
        for (int x : tops) {
            Bits bd = p_.below(x);
            bd.reset(static_cast<std::size_t>(x));
            if (!recursively_dividable(bd)) return false;
        }
        if (tops.size() == 1) return true;
        if (static_cast<int>(tops.size()) > max_top_)
            fail(errc::budget_exceeded, "dividability split budget exceeded");
        for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << tops.size()); ++mask) {
            // unordered splits: fix the first top in the first block
            if (!(mask & 1)) continue;
            Bits a = p_.empty_set(), b = p_.empty_set();
            for (std::size_t i = 0; i < tops.size(); ++i)
                ((mask >> i) & 1 ? a : b).set(static_cast<std::size_t>(tops[i]));
            Bits u1 = closure(p_, a), u2 = closure(p_, b);
            Bits inter = u1 & u2;
            if (dim_of(p_, inter) != n - 1 || !is_pure(p_, inter)) continue;
            if (!recursively_dividable(inter)) continue;
            if (recursively_dividable(u1) && recursively_dividable(u2)) return true;
        }
        return false;
    }

    const Complex& p_;
    int max_top_;
    std::unordered_map<Bits, bool, BitsHash> memo_;
};

inline bool is_recursively_dividable(const Complex& p, const Bits& u) {
    DividabilityChecker checker(p);
    return checker.recursively_dividable(u);
}

/// Homological CW-poset surrogate: every strict lower boundary must have the
/// reduced homology of a sphere of the right dimension. A necessary condition
/// only; it cannot certify homeomorphism type.
inline bool cw_poset_check(const Complex& p, int* witness = nullptr) {
    for (int x = 0; x < p.size(); ++x) {
        if (p.dim(x) == 0) continue;  // empty boundary is the (-1)-sphere
        Bits bd = p.below(x);
        bd.reset(static_cast<std::size_t>(x));
        HomologyResult h = homology(nerve(p, bd));
        if (!h.sphere(p.dim(x) - 1)) {
            if (witness) *witness = x;
            return false;
        }
    }
    return true;
}

} // namespace cdc
