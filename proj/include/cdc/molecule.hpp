#pragma once

#include <cstdlib>
#include <memory>
#include <string>
#include <unordered_map>

#include "cdc/boundary.hpp"
#include "cdc/complex.hpp"

namespace cdc {

struct Budget {
    std::size_t memo_cap = std::size_t(1) << 20;
    int max_split_elements = 16;
    std::size_t work_cap = std::size_t(1) << 26;

    static Budget from_env() {
        Budget b;
        if (const char* env = std::getenv("CDC_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) {
                b.memo_cap = static_cast<std::size_t>(v);
                b.work_cap = static_cast<std::size_t>(v) * 64;
            }
        }
        return b;
    }
};

/// Merger-tree certificate: each node is a subset, leaves are single-element
/// closures, branches are admissible splits.
struct MergerTree {
    struct Node {
        Bits subset;
        int left = -1, right = -1;  // arena indices, -1 for leaves
    };
    std::vector<Node> arena;
    int root = -1;
};

/// Per-complex recogniser with memoised certification, split enumeration and
/// the submolecule order. Not safe for concurrent use; create one per thread.
class Context {
public:
    explicit Context(const Complex& p, Budget budget = Budget::from_env())
        : p_(p), budget_(budget) {
        thin_ = is_oriented_thin(p);
    }
    // contexts keep a reference; the complex must outlive them
    explicit Context(Complex&&, Budget = Budget{}) = delete;

    const Complex& host() const { return p_; }
    bool host_is_thin() const { return thin_; }

    /// Is U a constructible molecule (of dimension dim U)?
    bool certify(const Bits& u) {
        require_thin();
        return entry(u).yes;
    }

    bool is_constructible_atom(const Bits& u) {
        return certify(u) && has_greatest(p_, u);
    }

    /// Human-readable refusal reason, or nullopt if U certifies.
    std::optional<std::string> why_not(const Bits& u) {
        require_thin();
        Entry& e = entry(u);
        if (e.yes) return std::nullopt;
        return e.refusal;
    }

    /// V is a constructible submolecule of U (vertex of some merger tree).
    bool submolecule(const Bits& v, const Bits& u) {
        require_thin();
        if (!v.subset_of(u))
            fail(errc::precondition_failed, "submolecule check requires V <= U");
        if (!certify(v) || !certify(u))
            fail(errc::precondition_failed, "submolecule check requires certified molecules");
        if (dim_of(p_, v) != dim_of(p_, u))
            fail(errc::precondition_failed, "submolecule check requires equal dimensions");
        return submolecule_certified(v, u);
    }

    /// All admissible ordered splits (U1, U2) of a certified molecule.
    const std::vector<std::pair<Bits, Bits>>& splits(const Bits& u) {
        Entry& e = entry(u);
        complete_splits(u, e);
        return e.splits;
    }

    /// Checks the four submolecule conditions plus the intersection law for a
    /// proposed ordered decomposition of U.
    bool is_valid_split(const Bits& u, const Bits& u1, const Bits& u2) {
        require_thin();
        if ((u1 | u2) != u || u1 == u || u2 == u) return false;
        return valid_split(u, u1, u2);
    }

    MergerTree merger_tree(const Bits& u) {
        if (!certify(u))
            fail(errc::precondition_failed, "merger tree requested for a non-molecule");
        MergerTree t;
        t.root = build_tree(t, u);
        return t;
    }

    /// Number of distinct merger trees, counted exhaustively up to `cap`.
    std::size_t count_merger_trees(const Bits& u, std::size_t cap = 1u << 20) {
        if (!certify(u)) return 0;
        return count_trees(u, cap);
    }

    /// Globularity of a certified molecule (trivially true below dimension 2).
    bool check_globularity(const Bits& u) {
        int n = dim_of(p_, u);
        if (n < 2) return true;
        Bits bm = boundary(p_, u, Sign::minus, n - 1);
        Bits bp = boundary(p_, u, Sign::plus, n - 1);
        for (Sign a : {Sign::minus, Sign::plus})
            if (boundary(p_, bp, a, n - 2) != boundary(p_, bm, a, n - 2)) return false;
        Bits shared = bm & bp;
        return shared == boundary_both(p_, bp, n - 2) &&
               shared == boundary_both(p_, bm, n - 2);
    }

    /// Iterated codimension-1 boundaries agree with the direct k-boundary, and
    /// lower boundaries are independent of the route taken.
    bool check_globelike(const Bits& u) {
        int n = dim_of(p_, u);
        for (Sign a : {Sign::minus, Sign::plus}) {
            Bits iter = u;
            for (int k = n - 1; k >= 0; --k) {
                iter = boundary(p_, iter, a, dim_of(p_, iter) - 1);
                if (iter != boundary(p_, u, a, k)) return false;
            }
        }
        for (int k = 1; k < n; ++k)
            for (int j = 0; j < k; ++j)
                for (Sign b : {Sign::minus, Sign::plus}) {
                    Bits bk = boundary(p_, u, b, k);
                    for (Sign a : {Sign::minus, Sign::plus})
                        if (boundary(p_, bk, a, j) != boundary(p_, u, a, j)) return false;
                }
        return true;
    }

    /// Every element's closure is a constructible atom and the complex is
    /// oriented thin. On failure reports the first bad element and the reason.
    bool is_constructible_directed_complex(int* witness = nullptr,
                                           std::string* reason = nullptr) {
        if (!thin_) {
            if (reason) *reason = "complex is not oriented thin";
            return false;
        }
        for (int x = 0; x < p_.size(); ++x) {
            const Bits& cl = p_.below(x);
            if (!certify(cl)) {
                if (witness) *witness = x;
                if (reason) {
                    auto r = why_not(cl);
                    *reason = r ? *r : "closure does not certify";
                }
                return false;
            }
        }
        return true;
    }

private:
    struct Entry {
        bool resolved = false;
        bool yes = false;
        std::string refusal;
        std::vector<std::pair<Bits, Bits>> splits;
        std::uint64_t next_mask = 1;
        bool splits_done = false;
        std::vector<int> max_elems;
    };

    void require_thin() const {
        if (!thin_)
            fail(errc::host_not_thin, "host complex is not oriented thin");
    }

    void charge(std::size_t units = 1) {
        work_ += units;
        if (work_ > budget_.work_cap)
            fail(errc::budget_exceeded, "constructibility search work budget exceeded");
    }

    Entry& entry(const Bits& u) {
        auto it = memo_.find(u);
        if (it == memo_.end()) {
            if (memo_.size() >= budget_.memo_cap)
                fail(errc::budget_exceeded, "constructibility memo budget exceeded");
            it = memo_.emplace(u, Entry{}).first;
        }
        Entry& e = it->second;
        if (!e.resolved) {
            try {
                resolve(u, e);
            } catch (...) {
                // a budget error must not persist as a refusal
                e = Entry{};
                throw;
            }
        }
        return e;
    }

    std::string describe(const Bits& u) const {
        if (u.count() == 1) {
            std::string name;
            u.for_each([&](std::size_t i) { name = p_.name(static_cast<int>(i)); });
            return name;
        }
        return "U";
    }

    void resolve(const Bits& u, Entry& e) {
        e.resolved = true;
        charge();
        if (u.none()) {
            e.refusal = "the empty subset is not a molecule";
            return;
        }
        int n = dim_of(p_, u);
        if (n == 0) {
            if (u.count() == 1) e.yes = true;
            else e.refusal = "0-dimensional but not a single element";
            return;
        }
        if (!is_pure(p_, u)) {
            e.refusal = describe(u) + " is not pure";
            return;
        }
        Bits mx = maximal_elements(p_, u);
        int top = -1;
        bool atom = has_greatest(p_, u, &top);
        std::string label = atom ? p_.name(top) : describe(u);
        for (Sign a : {Sign::minus, Sign::plus}) {
            Bits b = boundary(p_, u, a, n - 1);
            if (dim_of(p_, b) != n - 1 || !entry(b).yes) {
                e.refusal = std::string("∂") + (a == Sign::minus ? "⁻" : "⁺") +
                            label + " not a " + std::to_string(n - 1) + "-molecule";
                return;
            }
        }
        if (atom) {
            e.yes = true;
            e.splits_done = true;
            return;
        }
        if (static_cast<int>(mx.count()) > budget_.max_split_elements)
            fail(errc::budget_exceeded,
                 "subset has more maximal elements than the split budget allows");
        e.max_elems = mx.indices();
        // find one admissible split; the rest can be enumerated on demand
        if (!advance_splits(u, e, /*stop_after_first=*/true))
            e.refusal = "no admissible split of " + describe(u);
        else
            e.yes = true;
    }

    /// Enumerates bipartitions of the maximal elements in mask order, storing
    /// admissible splits. Returns whether any split is known.
    bool advance_splits(const Bits& u, Entry& e, bool stop_after_first) {
        if (e.splits_done) return !e.splits.empty();
        const auto& m = e.max_elems;
        std::size_t t = m.size();
        std::uint64_t full = (std::uint64_t(1) << t) - 1;
        for (std::uint64_t mask = e.next_mask; mask < full; ++mask) {
            charge();
            Bits a = p_.empty_set(), b = p_.empty_set();
            for (std::size_t i = 0; i < t; ++i)
                ((mask >> i) & 1 ? a : b).set(static_cast<std::size_t>(m[i]));
            Bits u1 = closure(p_, a), u2 = closure(p_, b);
            if (valid_split(u, u1, u2)) {
                e.splits.emplace_back(u1, u2);
                if (stop_after_first) {
                    e.next_mask = mask + 1;
                    return true;
                }
            }
        }
        e.next_mask = full;
        e.splits_done = true;
        return !e.splits.empty();
    }

    void complete_splits(const Bits& u, Entry& e) {
        if (!e.yes)
            fail(errc::precondition_failed, "splits requested for a non-molecule");
        advance_splits(u, e, /*stop_after_first=*/false);
    }

    bool valid_split(const Bits& u, const Bits& u1, const Bits& u2) {
        int n = dim_of(p_, u);
        Bits inter = u1 & u2;
        Bits seam = boundary(p_, u1, Sign::plus, n - 1) &
                    boundary(p_, u2, Sign::minus, n - 1);
        if (inter != seam) return false;
        if (dim_of(p_, inter) != n - 1 || !entry(inter).yes) return false;
        if (!entry(u1).yes || !entry(u2).yes) return false;
        Bits bm = boundary(p_, u, Sign::minus, n - 1);
        Bits bp = boundary(p_, u, Sign::plus, n - 1);
        Bits bm1 = boundary(p_, u1, Sign::minus, n - 1);
        Bits bp1 = boundary(p_, u1, Sign::plus, n - 1);
        Bits bm2 = boundary(p_, u2, Sign::minus, n - 1);
        Bits bp2 = boundary(p_, u2, Sign::plus, n - 1);
        return submolecule_certified(bm1, bm) && submolecule_certified(bp2, bp) &&
               submolecule_certified(inter, bp1) && submolecule_certified(inter, bm2);
    }

    bool submolecule_certified(const Bits& v, const Bits& u) {
        if (v == u) return true;
        if (!v.subset_of(u)) return false;
        auto key = std::make_pair(v, u);
        auto it = sub_memo_.find(key);
        if (it != sub_memo_.end()) return it->second;
        if (sub_memo_.size() >= budget_.memo_cap)
            fail(errc::budget_exceeded, "submolecule memo budget exceeded");
        bool found = false;
        Entry& e = entry(u);
        if (e.yes) {
            complete_splits(u, e);
            auto splits_copy = e.splits;  // recursion may rehash the memo
            for (const auto& [u1, u2] : splits_copy) {
                if (v.subset_of(u1) && submolecule_certified(v, u1)) { found = true; break; }
                if (v.subset_of(u2) && submolecule_certified(v, u2)) { found = true; break; }
            }
        }
        sub_memo_.emplace(key, found);
        return found;
    }

    int build_tree(MergerTree& t, const Bits& u) {
        int id = static_cast<int>(t.arena.size());
        t.arena.push_back({u, -1, -1});
        Entry& e = entry(u);
        if (has_greatest(p_, u)) return id;
        auto [u1, u2] = e.splits.front();
        int l = build_tree(t, u1);
        int r = build_tree(t, u2);
        t.arena[static_cast<std::size_t>(id)].left = l;
        t.arena[static_cast<std::size_t>(id)].right = r;
        return id;
    }

    std::size_t count_trees(const Bits& u, std::size_t cap) {
        auto it = tree_counts_.find(u);
        if (it != tree_counts_.end()) return it->second;
        std::size_t total = 0;
        if (has_greatest(p_, u)) {
            total = 1;
        } else {
            Entry& e = entry(u);
            complete_splits(u, e);
            auto splits_copy = e.splits;
            for (const auto& [u1, u2] : splits_copy) {
                std::size_t l = count_trees(u1, cap);
                std::size_t r = count_trees(u2, cap);
                total += l * r;
                if (total > cap)
                    fail(errc::budget_exceeded, "merger tree enumeration budget exceeded");
            }
        }
        tree_counts_.emplace(u, total);
        return total;
    }

    const Complex& p_;
    Budget budget_;
    bool thin_ = false;
    std::size_t work_ = 0;
    std::unordered_map<Bits, Entry, BitsHash> memo_;
    std::unordered_map<std::pair<Bits, Bits>, bool, BitsPairHash> sub_memo_;
    std::unordered_map<Bits, std::size_t, BitsHash> tree_counts_;
};

// ---------------------------------------------------------------------------
// Convenience wrappers (fresh context per call; pure and thread-safe)

inline bool certify_constructible(const Complex& p, const Bits& u) {
    Context ctx(p);
    return ctx.certify(u);
}

inline bool is_constructible_atom(const Complex& p, const Bits& u) {
    Context ctx(p);
    return ctx.is_constructible_atom(u);
}

inline bool is_constructible_directed_complex(const Complex& p, int* witness = nullptr,
                                              std::string* reason = nullptr) {
    Context ctx(p);
    return ctx.is_constructible_directed_complex(witness, reason);
}

} // namespace cdc
