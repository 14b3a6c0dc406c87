#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cdc/bits.hpp"

namespace cdc {

enum class Sign : int { minus = -1, plus = +1 };

inline Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
inline Sign sign_product(Sign a, Sign b) {
    return a == b ? Sign::plus : Sign::minus;
}
/// (-1)^n as a sign twist.
inline Sign parity_sign(int n) { return n % 2 == 0 ? Sign::plus : Sign::minus; }
inline Sign twist(int n, Sign s) { return sign_product(parity_sign(n), s); }
inline char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

enum class errc {
    duplicate_id,
    bad_cover_dimension,
    duplicate_cover,
    orphan_element,
    cycle_in_order,
    unknown_element,
    not_comparable,
    host_not_thin,
    budget_exceeded,
    not_submolecule,
    boundary_mismatch,
    precondition_failed,
    not_composable,
    not_an_inclusion,
    bad_params,
    invariant_violated,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw error(code, what);
}

struct ElementData {
    std::string id;
    int dim = 0;
};

struct CoverData {
    std::string upper;
    std::string lower;
    Sign sign = Sign::plus;
};

/// A finite oriented graded poset. Immutable once built; elements carry
/// dense indices sorted by (dimension, insertion order).
class Complex {
public:
    Complex() = default;

    /// Checks all structural invariants and builds the derived order.
    static Complex validate(const std::vector<ElementData>& elements,
                            const std::vector<CoverData>& covers) {
        Complex p;
        std::vector<std::size_t> order(elements.size());
        for (std::size_t i = 0; i < elements.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return elements[a].dim < elements[b].dim;
        });
        p.names_.reserve(elements.size());
        p.dims_.reserve(elements.size());
        for (std::size_t i : order) {
            const auto& e = elements[i];
            if (e.dim < 0) fail(errc::bad_params, "negative dimension on '" + e.id + "'");
            if (!p.index_.emplace(e.id, static_cast<int>(p.names_.size())).second)
                fail(errc::duplicate_id, "duplicate element id '" + e.id + "'");
            p.names_.push_back(e.id);
            p.dims_.push_back(e.dim);
            p.dim_max_ = std::max(p.dim_max_, e.dim);
        }
        p.lower_.assign(p.size(), {});
        p.upper_.assign(p.size(), {});
        for (const auto& c : covers) {
            int u = p.require(c.upper);
            int l = p.require(c.lower);
            if (p.dims_[u] != p.dims_[l] + 1)
                fail(errc::bad_cover_dimension,
                     "cover " + c.upper + " -> " + c.lower + " does not drop dimension by 1");
            for (const auto& [w, s] : p.lower_[u])
                if (w == l) fail(errc::duplicate_cover,
                                 "duplicate cover " + c.upper + " -> " + c.lower);
            p.lower_[u].emplace_back(l, c.sign);
            p.upper_[l].emplace_back(u, c.sign);
        }
        for (int i = 0; i < p.size(); ++i)
            if (p.dims_[i] > 0 && p.lower_[i].empty())
                fail(errc::orphan_element,
                     "element '" + p.names_[i] + "' of dimension > 0 has no lower cover");
        p.build_order();
        return p;
    }

    int size() const { return static_cast<int>(names_.size()); }
    int dim(int i) const { return dims_[i]; }
    int top_dim() const { return names_.empty() ? -1 : dim_max_; }
    const std::string& name(int i) const { return names_[i]; }

    std::optional<int> index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    int require(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) fail(errc::unknown_element, "unknown element '" + id + "'");
        return it->second;
    }

    const std::vector<std::pair<int, Sign>>& lower_covers(int i) const { return lower_[i]; }
    const std::vector<std::pair<int, Sign>>& upper_covers(int i) const { return upper_[i]; }

    /// cl{i} as a bitset, including i.
    const Bits& below(int i) const { return below_[i]; }
    bool leq(int a, int b) const { return below_[b].test(a); }

    Bits empty_set() const { return Bits(static_cast<std::size_t>(size())); }
    Bits full_set() const {
        Bits b(static_cast<std::size_t>(size()));
        for (int i = 0; i < size(); ++i) b.set(i);
        return b;
    }
    Bits singleton_closure(int i) const { return below_[i]; }

    std::vector<ElementData> element_data() const {
        std::vector<ElementData> out;
        out.reserve(names_.size());
        for (int i = 0; i < size(); ++i) out.push_back({names_[i], dims_[i]});
        return out;
    }
    std::vector<CoverData> cover_data() const {
        std::vector<CoverData> out;
        for (int u = 0; u < size(); ++u)
            for (const auto& [l, s] : lower_[u]) out.push_back({names_[u], names_[l], s});
        return out;
    }

private:
    void build_order() {
        below_.assign(size(), Bits(static_cast<std::size_t>(size())));
        // indices are sorted by dimension, so one ascending pass suffices
        for (int i = 0; i < size(); ++i) {
            below_[i].set(i);
            for (const auto& [l, s] : lower_[i]) below_[i] |= below_[l];
        }
    }

    std::vector<std::string> names_;
    std::vector<int> dims_;
    std::vector<std::vector<std::pair<int, Sign>>> lower_, upper_;
    std::unordered_map<std::string, int> index_;
    std::vector<Bits> below_;
    int dim_max_ = -1;
};

/// Small helper for constructions that assemble a complex element by element.
class ComplexBuilder {
public:
    void add_element(const std::string& id, int dim) { elements_.push_back({id, dim}); }
    void add_cover(const std::string& upper, const std::string& lower, Sign s) {
        covers_.push_back({upper, lower, s});
    }
    bool has(const std::string& id) const {
        for (const auto& e : elements_)
            if (e.id == id) return true;
        return false;
    }
    Complex finish() const { return Complex::validate(elements_, covers_); }

private:
    std::vector<ElementData> elements_;
    std::vector<CoverData> covers_;
};

// ---------------------------------------------------------------------------
// Closed subsets

inline Bits closure(const Complex& p, const Bits& seed) {
    Bits out = p.empty_set();
    seed.for_each([&](std::size_t i) { out |= p.below(static_cast<int>(i)); });
    return out;
}

inline Bits closure_of(const Complex& p, const std::vector<int>& seed) {
    Bits out = p.empty_set();
    for (int i : seed) out |= p.below(i);
    return out;
}

inline bool is_closed(const Complex& p, const Bits& u) { return u == closure(p, u); }

inline int dim_of(const Complex& p, const Bits& u) {
    int d = -1;
    u.for_each([&](std::size_t i) { d = std::max(d, p.dim(static_cast<int>(i))); });
    return d;
}

inline Bits grade(const Complex& p, const Bits& u, int k) {
    Bits out = p.empty_set();
    u.for_each([&](std::size_t i) {
        if (p.dim(static_cast<int>(i)) == k) out.set(i);
    });
    return out;
}

/// Elements of U with no upper cover inside U.
inline Bits maximal_elements(const Complex& p, const Bits& u) {
    Bits out = p.empty_set();
    u.for_each([&](std::size_t i) {
        for (const auto& [up, s] : p.upper_covers(static_cast<int>(i)))
            if (u.test(static_cast<std::size_t>(up))) return;
        out.set(i);
    });
    return out;
}

inline bool is_pure(const Complex& p, const Bits& u) {
    int n = dim_of(p, u);
    bool pure = true;
    maximal_elements(p, u).for_each([&](std::size_t i) {
        if (p.dim(static_cast<int>(i)) != n) pure = false;
    });
    return pure;
}

inline bool has_greatest(const Complex& p, const Bits& u, int* top = nullptr) {
    Bits mx = maximal_elements(p, u);
    if (mx.count() != 1) return false;
    if (top) mx.for_each([&](std::size_t i) { *top = static_cast<int>(i); });
    return true;
}

// ---------------------------------------------------------------------------
// Intervals (with the virtual bottom of P_bot)

struct Interval {
    Bits elements;        // proper elements in [x, y]
    bool has_bottom = false;  // whether the virtual bottom belongs to the interval
};

inline constexpr int BOTTOM = -1;

/// [x, y] in P_bot; x may be BOTTOM. Throws not_comparable unless x <= y.
inline Interval interval(const Complex& p, int x, int y) {
    Interval out{p.empty_set(), false};
    if (x == BOTTOM) {
        out.has_bottom = true;
        out.elements = p.below(y);
        return out;
    }
    if (!p.leq(x, y))
        fail(errc::not_comparable,
             "'" + p.name(x) + "' is not below '" + p.name(y) + "'");
    p.below(y).for_each([&](std::size_t z) {
        if (p.leq(x, static_cast<int>(z))) out.elements.set(z);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Oriented thinness

struct ThinnessWitness {
    int lower = BOTTOM;  // BOTTOM for intervals rooted at the virtual bottom
    int upper = 0;
    std::string reason;
};

/// Checks the diamond property and the sign rule on every length-2 interval
/// of P_bot, with bottom covers signed +.
inline std::optional<ThinnessWitness> thinness_violation(const Complex& p) {
    for (int y = 0; y < p.size(); ++y) {
        if (p.dim(y) == 1) {
            // interval [bottom, y]
            const auto& lows = p.lower_covers(y);
            if (lows.size() != 2)
                return ThinnessWitness{BOTTOM, y, "interval has " +
                                       std::to_string(lows.size() + 2) + " elements"};
            if (lows[0].second == lows[1].second)
                return ThinnessWitness{BOTTOM, y, "sign rule fails"};
        }
    }
    // proper length-2 intervals
    for (int y = 0; y < p.size(); ++y) {
        if (p.dim(y) < 2) continue;
        std::vector<int> xs = p.below(y).indices();
        for (int x : xs) {
            if (p.dim(x) != p.dim(y) - 2) continue;
            int z1 = -1, z2 = -1;
            int count = 0;
            for (const auto& [z, sz] : p.lower_covers(y)) {
                for (const auto& [w, sw] : p.lower_covers(z)) {
                    if (w == x) {
                        ++count;
                        if (z1 < 0) z1 = z;
                        else if (z2 < 0) z2 = z;
                        break;
                    }
                }
            }
            if (count != 2)
                return ThinnessWitness{x, y, "interval has " +
                                       std::to_string(count + 2) + " elements"};
            auto sign_between = [&](int up, int low) {
                for (const auto& [l, s] : p.lower_covers(up))
                    if (l == low) return s;
                fail(errc::invariant_violated, "missing cover");
            };
            Sign a1 = sign_between(y, z1), b1 = sign_between(z1, x);
            Sign a2 = sign_between(y, z2), b2 = sign_between(z2, x);
            if (sign_product(a1, b1) != flip(sign_product(a2, b2)))
                return ThinnessWitness{x, y, "sign rule fails"};
        }
    }
    return std::nullopt;
}

inline bool is_oriented_thin(const Complex& p) { return !thinness_violation(p); }

} // namespace cdc
