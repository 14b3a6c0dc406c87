#pragma once

#include <deque>

#include "cdc/boundary.hpp"
#include "cdc/complex.hpp"
#include "cdc/molecule.hpp"

namespace cdc {

/// Composition-tree certificate for a molecule: leaves are atoms, branches
/// record the gluing dimension k.
struct CompositionTree {
    struct Node {
        Bits subset;
        int k = -1;
        int left = -1, right = -1;
    };
    std::vector<Node> arena;
    int root = -1;
};

/// Recogniser for molecules in the sense of pasting by whole k-boundaries.
/// Atom leaves must satisfy the directed-complex conditions: boundaries of
/// every element are molecules and iterated boundaries collapse correctly.
class OmegaContext {
public:
    explicit OmegaContext(const Complex& p, Budget budget = Budget::from_env())
        : p_(p), budget_(budget),
          atom_state_(static_cast<std::size_t>(p.size()), 0) {}
    // contexts keep a reference; the complex must outlive them
    explicit OmegaContext(Complex&&, Budget = Budget{}) = delete;

    const Complex& host() const { return p_; }

    bool certify_molecule(const Bits& u) { return entry(u).yes; }

    std::optional<std::string> why_not(const Bits& u) {
        Entry& e = entry(u);
        if (e.yes) return std::nullopt;
        return e.refusal;
    }

    /// The directed-complex conditions at a single element.
    bool valid_atom(int x) {
        char& st = atom_state_[static_cast<std::size_t>(x)];
        if (st) return st == 1;
        try {
            st = compute_valid_atom(x) ? 1 : 2;
        } catch (...) {
            st = 0;
            throw;
        }
        return st == 1;
    }

    bool is_directed_complex(int* witness = nullptr, std::string* reason = nullptr) {
        for (int x = 0; x < p_.size(); ++x)
            if (!valid_atom(x)) {
                if (witness) *witness = x;
                if (reason)
                    *reason = "boundaries of '" + p_.name(x) +
                              "' are not molecules with collapsing iterated boundaries";
                return false;
            }
        return true;
    }

    CompositionTree composition_tree(const Bits& u) {
        if (!certify_molecule(u))
            fail(errc::precondition_failed, "composition tree requested for a non-molecule");
        CompositionTree t;
        t.root = build_tree(t, u);
        return t;
    }

    /// V appears as a node of some composition tree of U.
    bool submolecule(const Bits& v, const Bits& u) {
        if (!v.subset_of(u)) return false;
        if (!certify_molecule(v) || !certify_molecule(u)) return false;
        return submol(v, u);
    }

    const std::vector<std::tuple<int, Bits, Bits>>& splits(const Bits& u) {
        Entry& e = entry(u);
        if (!e.yes)
            fail(errc::precondition_failed, "splits requested for a non-molecule");
        complete_splits(u, e);
        return e.splits;
    }

private:
    bool compute_valid_atom(int x) {
        int n = p_.dim(x);
        if (n == 0) return true;
        const Bits& cl = p_.below(x);
        for (Sign a : {Sign::minus, Sign::plus}) {
            Bits b = boundary(p_, cl, a, n - 1);
            if (dim_of(p_, b) != n - 1 || !certify_molecule(b)) return false;
        }
        if (n >= 2) {
            for (Sign a : {Sign::minus, Sign::plus}) {
                Bits direct = boundary(p_, cl, a, n - 2);
                for (Sign bsign : {Sign::minus, Sign::plus}) {
                    Bits outer = boundary(p_, cl, bsign, n - 1);
                    if (boundary(p_, outer, a, n - 2) != direct) return false;
                }
            }
        }
        return true;
    }

    struct Entry {
        bool resolved = false;
        bool yes = false;
        std::string refusal;
        std::vector<std::tuple<int, Bits, Bits>> splits;  // (k, U1, U2)
        bool splits_done = false;
    };

    void charge() {
        if (++work_ > budget_.work_cap)
            fail(errc::budget_exceeded, "molecule search work budget exceeded");
    }

    Entry& entry(const Bits& u) {
        auto it = memo_.find(u);
        if (it == memo_.end()) {
            if (memo_.size() >= budget_.memo_cap)
                fail(errc::budget_exceeded, "molecule memo budget exceeded");
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

    void resolve(const Bits& u, Entry& e) {
        e.resolved = true;
        charge();
        if (u.none()) {
            e.refusal = "the empty subset is not a molecule";
            return;
        }
        int top = -1;
        if (has_greatest(p_, u, &top)) {
            if (valid_atom(top)) {
                e.yes = true;
                e.splits_done = true;
            } else {
                e.refusal = "'" + p_.name(top) + "' is not a valid atom";
            }
            return;
        }
        if (find_splits(u, e, /*stop_after_first=*/true)) e.yes = true;
        else e.refusal = "no decomposition as a pasting along a whole k-boundary";
    }

    /// Assigns maximal elements to the two sides (elements of dimension <= k
    /// may sit on both sides), then tries the bare closures together with
    /// their boundary completions: in a pasting U = U1 #k U2 each side equals
    /// the complement of the other plus the shared k-boundary, so parts may
    /// pick up low-dimensional material that is not the closure of any block
    /// of maximal elements.
    bool find_splits(const Bits& u, Entry& e, bool stop_after_first) {
        if (e.splits_done) return !e.splits.empty();
        e.splits.clear();
        int n = dim_of(p_, u);
        std::vector<int> m = maximal_elements(p_, u).indices();
        if (static_cast<int>(m.size()) > budget_.max_split_elements)
            fail(errc::budget_exceeded,
                 "subset has more maximal elements than the split budget allows");
        std::size_t t = m.size();
        for (int k = 0; k < n; ++k) {
            std::vector<int> choice(t, 0);  // 0 side one, 1 side two, 2 both
            for (;;) {
                charge();
                Bits a = p_.empty_set(), bset = p_.empty_set();
                for (std::size_t i = 0; i < t; ++i) {
                    if (choice[i] != 1) a.set(static_cast<std::size_t>(m[i]));
                    if (choice[i] != 0) bset.set(static_cast<std::size_t>(m[i]));
                }
                if (a.any() && bset.any()) {
                    Bits u1 = closure(p_, a), u2 = closure(p_, bset);
                    std::vector<std::pair<Bits, Bits>> candidates;
                    candidates.emplace_back(u1, u2);
                    candidates.emplace_back(boundary(p_, u, Sign::minus, k) | u1,
                                            boundary(p_, u, Sign::plus, k) | u2);
                    {
                        Bits left = difference(u, u2) | boundary(p_, u2, Sign::minus, k);
                        candidates.emplace_back(left,
                                                difference(u, left) | boundary(p_, left, Sign::plus, k));
                    }
                    {
                        Bits right = difference(u, u1) | boundary(p_, u1, Sign::plus, k);
                        candidates.emplace_back(difference(u, right) |
                                                    boundary(p_, right, Sign::minus, k),
                                                right);
                    }
                    for (const auto& [c1, c2] : candidates) {
                        if (c1 == u || c2 == u) continue;
                        if (!is_closed(p_, c1) || !is_closed(p_, c2)) continue;
                        bool seen = false;
                        for (const auto& [sk, s1, s2] : e.splits)
                            if (sk == k && s1 == c1 && s2 == c2) { seen = true; break; }
                        if (seen) continue;
                        if (check_split(u, k, c1, c2)) {
                            e.splits.emplace_back(k, c1, c2);
                            if (stop_after_first) return true;
                        }
                    }
                }
                // next mixed-radix choice; sharing only below dimension k+1
                std::size_t i = 0;
                for (; i < t; ++i) {
                    int limit = p_.dim(m[i]) <= k ? 2 : 1;
                    if (choice[i] < limit) { ++choice[i]; break; }
                    choice[i] = 0;
                }
                if (i == t) break;
            }
        }
        e.splits_done = true;
        return !e.splits.empty();
    }

    bool check_split(const Bits& u, int k, const Bits& u1, const Bits& u2) {
        if ((u1 | u2) != u) return false;
        Bits inter = u1 & u2;
        if (inter != boundary(p_, u1, Sign::plus, k)) return false;
        if (inter != boundary(p_, u2, Sign::minus, k)) return false;
        return entry(u1).yes && entry(u2).yes;
    }

    void complete_splits(const Bits& u, Entry& e) {
        if (!e.splits_done) {
            e.splits_done = false;
            find_splits(u, e, /*stop_after_first=*/false);
        }
    }

    bool submol(const Bits& v, const Bits& u) {
        if (v == u) return true;
        auto key = std::make_pair(v, u);
        auto it = sub_memo_.find(key);
        if (it != sub_memo_.end()) return it->second;
        bool found = false;
        Entry& e = entry(u);
        if (e.yes && !has_greatest(p_, u)) {
            complete_splits(u, e);
            auto copy = e.splits;
            for (const auto& [k, u1, u2] : copy) {
                if (v.subset_of(u1) && submol(v, u1)) { found = true; break; }
                if (v.subset_of(u2) && submol(v, u2)) { found = true; break; }
            }
        }
        sub_memo_.emplace(key, found);
        return found;
    }

    int build_tree(CompositionTree& t, const Bits& u) {
        int id = static_cast<int>(t.arena.size());
        t.arena.push_back({u, -1, -1, -1});
        if (has_greatest(p_, u)) return id;
        Entry& e = entry(u);
        auto [k, u1, u2] = e.splits.front();
        int l = build_tree(t, u1);
        int r = build_tree(t, u2);
        t.arena[static_cast<std::size_t>(id)].k = k;
        t.arena[static_cast<std::size_t>(id)].left = l;
        t.arena[static_cast<std::size_t>(id)].right = r;
        return id;
    }

    const Complex& p_;
    Budget budget_;
    std::size_t work_ = 0;
    std::vector<char> atom_state_;  // 0 unknown, 1 valid, 2 invalid
    std::unordered_map<Bits, Entry, BitsHash> memo_;
    std::unordered_map<std::pair<Bits, Bits>, bool, BitsPairHash> sub_memo_;
};

/// Pasting of two closed subsets along a whole k-boundary, with the boundary
/// laws of the composite checked.
inline Bits compose(const Complex& p, const Bits& u1, int k, const Bits& u2) {
    Bits inter = u1 & u2;
    if (inter != boundary(p, u1, Sign::plus, k) || inter != boundary(p, u2, Sign::minus, k))
        fail(errc::not_composable,
             "subsets do not meet along a whole output/input k-boundary");
    Bits u = u1 | u2;
    int n = dim_of(p, u);
    if (k == n - 1) {
        if (boundary(p, u, Sign::minus, n - 1) != boundary(p, u1, Sign::minus, n - 1) ||
            boundary(p, u, Sign::plus, n - 1) != boundary(p, u2, Sign::plus, n - 1))
            fail(errc::invariant_violated, "composite boundary law fails at k = n-1");
    } else if (k < n - 1) {
        for (Sign a : {Sign::minus, Sign::plus}) {
            Bits b1 = boundary(p, u1, a, n - 1), b2 = boundary(p, u2, a, n - 1);
            if ((b1 & b2) != boundary(p, b1, Sign::plus, k) ||
                (b1 & b2) != boundary(p, b2, Sign::minus, k) ||
                (b1 | b2) != boundary(p, u, a, n - 1))
                fail(errc::invariant_violated, "composite boundary law fails below k = n-1");
        }
    }
    return u;
}

struct EnumerationResult {
    std::vector<Bits> molecules;  // sorted by size then lexicographically
    bool complete = true;
    std::size_t composites_tried = 0;
};

/// Closure of the valid atoms under all defined pasting operations, deduped
/// by subset equality; breadth-first and deterministic.
inline EnumerationResult enumerate_molecules(const Complex& p, std::size_t budget = 100000,
                                             OmegaContext* ctx = nullptr) {
    std::optional<OmegaContext> local;
    if (!ctx) {
        local.emplace(p);
        ctx = &*local;
    }
    EnumerationResult out;
    std::unordered_map<Bits, bool, BitsHash> seen;
    std::deque<Bits> queue;
    std::vector<Bits> known;
    for (int x = 0; x < p.size(); ++x)
        if (ctx->valid_atom(x)) {
            Bits cl = p.below(x);
            if (seen.emplace(cl, true).second) {
                queue.push_back(cl);
                known.push_back(cl);
            }
        }
    while (!queue.empty()) {
        Bits u = queue.front();
        queue.pop_front();
        std::size_t snapshot = known.size();
        for (std::size_t i = 0; i < snapshot; ++i) {
            const Bits v = known[i];
            int kmax = std::min(dim_of(p, u), dim_of(p, v));
            for (int k = 0; k < kmax; ++k) {
                for (int dir = 0; dir < 2; ++dir) {
                    const Bits& a = dir == 0 ? u : v;
                    const Bits& c = dir == 0 ? v : u;
                    if (++out.composites_tried > budget) {
                        out.complete = false;
                        goto done;
                    }
                    Bits inter = a & c;
                    if (inter != boundary(p, a, Sign::plus, k) ||
                        inter != boundary(p, c, Sign::minus, k))
                        continue;
                    Bits glued = compose(p, a, k, c);
                    if (seen.emplace(glued, true).second) {
                        queue.push_back(glued);
                        known.push_back(glued);
                    }
                }
            }
        }
    }
done:
    out.molecules = std::move(known);
    std::sort(out.molecules.begin(), out.molecules.end(), [](const Bits& a, const Bits& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return a.lex_less(b);
    });
    return out;
}

} // namespace cdc
