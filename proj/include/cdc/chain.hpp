#pragma once

#include <cstdint>
#include <functional>

#include "cdc/boundary.hpp"
#include "cdc/complex.hpp"
#include "cdc/molecule.hpp"

namespace cdc {

/// Based augmented directed complex: integer chain complex with a chosen
/// basis in each degree and an augmentation; positivity cones are the
/// nonnegative spans of the bases and stay implicit.
struct Adc {
    std::vector<std::vector<std::string>> basis;  // labels per degree
    // d[k] maps degree k to k-1 (k >= 1): d[k][row][col], rows over basis[k-1]
    std::vector<std::vector<std::vector<long long>>> d;
    std::vector<long long> augmentation;  // over basis[0]

    int top_degree() const { return static_cast<int>(basis.size()) - 1; }
    std::size_t rank(int k) const {
        return k >= 0 && k < static_cast<int>(basis.size())
                   ? basis[static_cast<std::size_t>(k)].size()
                   : 0;
    }
};

inline bool adc_verify(const Adc& K, std::string* reason = nullptr) {
    auto fail_with = [&](const std::string& r) {
        if (reason) *reason = r;
        return false;
    };
    if (K.basis.empty()) return true;
    if (K.augmentation.size() != K.rank(0)) return fail_with("augmentation shape mismatch");
    if (K.d.size() != K.basis.size()) return fail_with("boundary matrix count mismatch");
    for (int k = 1; k <= K.top_degree(); ++k) {
        const auto& m = K.d[static_cast<std::size_t>(k)];
        if (m.size() != K.rank(k - 1)) return fail_with("boundary matrix row count mismatch");
        for (const auto& row : m)
            if (row.size() != K.rank(k)) return fail_with("boundary matrix column count mismatch");
    }
    // e d = 0
    if (K.top_degree() >= 1) {
        for (std::size_t c = 0; c < K.rank(1); ++c) {
            long long acc = 0;
            for (std::size_t r = 0; r < K.rank(0); ++r)
                acc += K.augmentation[r] * K.d[1][r][c];
            if (acc != 0) return fail_with("augmentation does not kill boundaries");
        }
    }
    // d d = 0
    for (int k = 2; k <= K.top_degree(); ++k)
        for (std::size_t r = 0; r < K.rank(k - 2); ++r)
            for (std::size_t c = 0; c < K.rank(k); ++c) {
                long long acc = 0;
                for (std::size_t m = 0; m < K.rank(k - 1); ++m)
                    acc += K.d[static_cast<std::size_t>(k - 1)][r][m] *
                           K.d[static_cast<std::size_t>(k)][m][c];
                if (acc != 0) return fail_with("dd != 0");
            }
    return true;
}

/// Linearisation of a constructible directed complex: basis elements are the
/// elements, dx = sum of output facets minus input facets, ex = 1.
inline Adc adc_of(const Complex& p) {
    Adc K;
    int n = p.top_dim();
    if (n < 0) return K;
    K.basis.assign(static_cast<std::size_t>(n + 1), {});
    std::vector<std::vector<int>> index_of(static_cast<std::size_t>(n + 1));
    std::vector<int> pos(static_cast<std::size_t>(p.size()), -1);
    for (int i = 0; i < p.size(); ++i) {
        int k = p.dim(i);
        pos[static_cast<std::size_t>(i)] =
            static_cast<int>(K.basis[static_cast<std::size_t>(k)].size());
        K.basis[static_cast<std::size_t>(k)].push_back(p.name(i));
        index_of[static_cast<std::size_t>(k)].push_back(i);
    }
    K.d.assign(static_cast<std::size_t>(n + 1), {});
    for (int k = 1; k <= n; ++k) {
        auto& m = K.d[static_cast<std::size_t>(k)];
        m.assign(K.rank(k - 1), std::vector<long long>(K.rank(k), 0));
        for (std::size_t c = 0; c < K.rank(k); ++c) {
            int x = index_of[static_cast<std::size_t>(k)][c];
            const Bits& cl = p.below(x);
            delta(p, cl, Sign::plus, k - 1).for_each([&](std::size_t y) {
                m[static_cast<std::size_t>(pos[y])][c] += 1;
            });
            delta(p, cl, Sign::minus, k - 1).for_each([&](std::size_t y) {
                m[static_cast<std::size_t>(pos[y])][c] -= 1;
            });
        }
    }
    K.augmentation.assign(K.rank(0), 1);
    std::string why;
    if (!adc_verify(K, &why))
        fail(errc::invariant_violated, "linearisation is not an augmented directed complex: " + why);
    return K;
}

inline Adc adc_unit() {
    Adc K;
    K.basis = {{"1"}};
    K.d = {{}};
    K.augmentation = {1};
    return K;
}

inline Adc adc_tensor(const Adc& K, const Adc& L) {
    Adc T;
    int nk = K.top_degree(), nl = L.top_degree();
    if (nk < 0 || nl < 0) return T;
    int n = nk + nl;
    T.basis.assign(static_cast<std::size_t>(n + 1), {});
    // each degree is laid out in (i, a, b) blocks with b fastest
    std::vector<std::vector<std::size_t>> block(static_cast<std::size_t>(nk + 1),
                                                std::vector<std::size_t>(static_cast<std::size_t>(nl + 1), 0));
    for (int deg = 0; deg <= n; ++deg)
        for (int i = std::max(0, deg - nl); i <= std::min(nk, deg); ++i) {
            int j = deg - i;
            block[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                T.basis[static_cast<std::size_t>(deg)].size();
            for (std::size_t a = 0; a < K.rank(i); ++a)
                for (std::size_t b = 0; b < L.rank(j); ++b)
                    T.basis[static_cast<std::size_t>(deg)].push_back(
                        K.basis[static_cast<std::size_t>(i)][a] + "⊗" +
                        L.basis[static_cast<std::size_t>(j)][b]);
        }
    auto at = [&](int i, std::size_t a, int j, std::size_t b) {
        return block[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
               a * L.rank(j) + b;
    };
    T.d.assign(static_cast<std::size_t>(n + 1), {});
    for (int deg = 1; deg <= n; ++deg) {
        auto& m = T.d[static_cast<std::size_t>(deg)];
        m.assign(T.rank(deg - 1), std::vector<long long>(T.rank(deg), 0));
        for (int i = std::max(0, deg - nl); i <= std::min(nk, deg); ++i) {
            int j = deg - i;
            for (std::size_t a = 0; a < K.rank(i); ++a)
                for (std::size_t b = 0; b < L.rank(j); ++b) {
                    std::size_t col = at(i, a, j, b);
                    if (i >= 1)
                        for (std::size_t r = 0; r < K.rank(i - 1); ++r) {
                            long long v = K.d[static_cast<std::size_t>(i)][r][a];
                            if (v) m[at(i - 1, r, j, b)][col] += v;
                        }
                    if (j >= 1) {
                        long long sgn = (i % 2 == 0) ? 1 : -1;
                        for (std::size_t r = 0; r < L.rank(j - 1); ++r) {
                            long long v = L.d[static_cast<std::size_t>(j)][r][b];
                            if (v) m[at(i, a, j - 1, r)][col] += sgn * v;
                        }
                    }
                }
        }
    }
    T.augmentation.assign(T.rank(0), 0);
    for (std::size_t a = 0; a < K.rank(0); ++a)
        for (std::size_t b = 0; b < L.rank(0); ++b)
            T.augmentation[at(0, a, 0, b)] = K.augmentation[a] * L.augmentation[b];
    return T;
}

/// Suspension matching the poset construction: two fresh degree-0 basis
/// elements, with d of an old 0-chain x equal to e(x) (bottom+ - bottom-).
inline Adc adc_suspension(const Adc& K) {
    Adc S;
    int n = K.top_degree();
    S.basis.assign(static_cast<std::size_t>(n + 2), {});
    S.basis[0] = {"⊥⁻", "⊥⁺"};
    for (int k = 0; k <= n; ++k) S.basis[static_cast<std::size_t>(k + 1)] = K.basis[static_cast<std::size_t>(k)];
    S.d.assign(static_cast<std::size_t>(n + 2), {});
    S.d[1].assign(2, std::vector<long long>(K.rank(0), 0));
    for (std::size_t c = 0; c < K.rank(0); ++c) {
        S.d[1][0][c] = -K.augmentation[c];
        S.d[1][1][c] = K.augmentation[c];
    }
    for (int k = 1; k <= n; ++k) S.d[static_cast<std::size_t>(k + 1)] = K.d[static_cast<std::size_t>(k)];
    S.augmentation = {1, 1};
    return S;
}

namespace detail {
/// The bottom-extended complex: a single new basis element in degree 0 with
/// the old augmentation as its boundary row. Internal to the join.
inline Adc adc_bottomed(const Adc& K) {
    Adc B;
    int n = K.top_degree();
    B.basis.assign(static_cast<std::size_t>(n + 2), {});
    B.basis[0] = {"⊥"};
    for (int k = 0; k <= n; ++k) B.basis[static_cast<std::size_t>(k + 1)] = K.basis[static_cast<std::size_t>(k)];
    B.d.assign(static_cast<std::size_t>(n + 2), {});
    B.d[1].assign(1, std::vector<long long>(K.rank(0), 0));
    for (std::size_t c = 0; c < K.rank(0); ++c) B.d[1][0][c] = K.augmentation[c];
    for (int k = 1; k <= n; ++k) B.d[static_cast<std::size_t>(k + 1)] = K.d[static_cast<std::size_t>(k)];
    B.augmentation = {1};
    return B;
}
} // namespace detail

/// Join: de-suspend the tensor of the bottom-extended complexes; the new
/// augmentation is the boundary row onto the unique bottom pair.
inline Adc adc_join(const Adc& K, const Adc& L) {
    if (K.top_degree() < 0) return L;
    if (L.top_degree() < 0) return K;
    Adc T = adc_tensor(detail::adc_bottomed(K), detail::adc_bottomed(L));
    Adc J;
    int n = T.top_degree() - 1;
    J.basis.assign(static_cast<std::size_t>(n + 1), {});
    for (int k = 0; k <= n; ++k) J.basis[static_cast<std::size_t>(k)] = T.basis[static_cast<std::size_t>(k + 1)];
    J.d.assign(static_cast<std::size_t>(n + 1), {});
    for (int k = 1; k <= n; ++k) J.d[static_cast<std::size_t>(k)] = T.d[static_cast<std::size_t>(k + 1)];
    J.augmentation.assign(J.rank(0), 0);
    for (std::size_t c = 0; c < J.rank(0); ++c) J.augmentation[c] = T.d[1][0][c];
    return J;
}

/// Searches for a degree-wise basis bijection commuting with d and e.
inline std::optional<std::vector<std::vector<int>>> based_iso(const Adc& K, const Adc& L) {
    if (K.top_degree() != L.top_degree()) return std::nullopt;
    int n = K.top_degree();
    std::vector<std::vector<int>> perms;  // perms[k][i] = image of basis element i
    if (n < 0) return perms;
    for (int k = 0; k <= n; ++k)
        if (K.rank(k) != L.rank(k)) return std::nullopt;

    // static signatures: sorted boundary column below, sorted boundary row above
    auto signature = [n](const Adc& A, int k, std::size_t i) {
        std::vector<long long> sig;
        if (k == 0) sig.push_back(A.augmentation[i]);
        if (k >= 1) {
            std::vector<long long> col;
            for (std::size_t r2 = 0; r2 < A.rank(k - 1); ++r2)
                col.push_back(A.d[static_cast<std::size_t>(k)][r2][i]);
            std::sort(col.begin(), col.end());
            sig.push_back(static_cast<long long>(col.size()));
            sig.insert(sig.end(), col.begin(), col.end());
        }
        if (k < n) {
            std::vector<long long> row;
            for (std::size_t c2 = 0; c2 < A.rank(k + 1); ++c2)
                row.push_back(A.d[static_cast<std::size_t>(k + 1)][i][c2]);
            std::sort(row.begin(), row.end());
            sig.insert(sig.end(), row.begin(), row.end());
        }
        return sig;
    };

    // assign degree by degree; inside a degree, backtrack over columns
    std::function<bool(int)> solve_degree = [&](int k) -> bool {
        if (k > n) return true;
        std::size_t r = K.rank(k);
        std::vector<int> perm(r, -1);
        std::vector<bool> used(r, false);
        std::vector<std::vector<long long>> ksig(r), lsig(r);
        for (std::size_t i = 0; i < r; ++i) {
            ksig[i] = signature(K, k, i);
            lsig[i] = signature(L, k, i);
        }
        std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
            if (i == r) {
                perms.push_back(perm);
                if (solve_degree(k + 1)) return true;
                perms.pop_back();
                return false;
            }
            for (std::size_t cand = 0; cand < r; ++cand) {
                if (used[cand]) continue;
                if (ksig[i] != lsig[cand]) continue;
                bool ok = true;
                if (k == 0) {
                    if (K.augmentation[i] != L.augmentation[cand]) ok = false;
                } else {
                    const auto& mk = K.d[static_cast<std::size_t>(k)];
                    const auto& ml = L.d[static_cast<std::size_t>(k)];
                    for (std::size_t row = 0; row < K.rank(k - 1) && ok; ++row) {
                        int prow = perms[static_cast<std::size_t>(k - 1)][row];
                        if (mk[row][i] != ml[static_cast<std::size_t>(prow)][cand]) ok = false;
                    }
                }
                if (!ok) continue;
                used[cand] = true;
                perm[i] = static_cast<int>(cand);
                if (place(i + 1)) return true;
                used[cand] = false;
                perm[i] = -1;
            }
            return false;
        };
        return place(0);
    };
    if (!solve_degree(0)) return std::nullopt;
    return perms;
}

} // namespace cdc
