#pragma once

#include <optional>

#include "cdc/boundary.hpp"
#include "cdc/complex.hpp"

namespace cdc {

/// The induced subcomplex on a closed subset, with index maps in both
/// directions (to_sub is -1 outside the subset).
struct SubComplex {
    Complex complex;
    std::vector<int> to_host;  // sub index -> host index
    std::vector<int> to_sub;   // host index -> sub index or -1
};

inline SubComplex restrict_to(const Complex& p, const Bits& u) {
    SubComplex out;
    out.to_sub.assign(static_cast<std::size_t>(p.size()), -1);
    std::vector<ElementData> elems;
    std::vector<int> hosts;
    u.for_each([&](std::size_t i) {
        int x = static_cast<int>(i);
        elems.push_back({p.name(x), p.dim(x)});
        hosts.push_back(x);
    });
    std::vector<CoverData> covers;
    for (int x : hosts)
        for (const auto& [l, s] : p.lower_covers(x))
            if (u.test(static_cast<std::size_t>(l)))
                covers.push_back({p.name(x), p.name(l), s});
    out.complex = Complex::validate(elems, covers);
    out.to_host.assign(static_cast<std::size_t>(out.complex.size()), -1);
    for (int x : hosts) {
        int sub = out.complex.require(p.name(x));
        out.to_host[static_cast<std::size_t>(sub)] = x;
        out.to_sub[static_cast<std::size_t>(x)] = sub;
    }
    return out;
}

namespace detail {

struct MatchOptions {
    bool surjective = false;     // isomorphism search
    std::size_t node_budget = 1u << 22;
    std::size_t result_cap = 1;  // stop after this many embeddings
};

struct Signature {
    int dim;
    int low_minus, low_plus;
    int up_minus, up_plus;
};

inline Signature signature_of(const Complex& p, int x) {
    Signature s{p.dim(x), 0, 0, 0, 0};
    for (const auto& [l, sg] : p.lower_covers(x))
        (sg == Sign::minus ? s.low_minus : s.low_plus)++;
    for (const auto& [u, sg] : p.upper_covers(x))
        (sg == Sign::minus ? s.up_minus : s.up_plus)++;
    return s;
}

class Matcher {
public:
    Matcher(const Complex& p, const Complex& q, MatchOptions opt)
        : p_(p), q_(q), opt_(opt) {
        psig_.reserve(static_cast<std::size_t>(p.size()));
        for (int i = 0; i < p.size(); ++i) psig_.push_back(signature_of(p, i));
        qsig_.reserve(static_cast<std::size_t>(q.size()));
        for (int i = 0; i < q.size(); ++i) qsig_.push_back(signature_of(q, i));
        order_ = sorted_by_dim_desc();
        map_.assign(static_cast<std::size_t>(p.size()), -1);
        used_.assign(static_cast<std::size_t>(q.size()), false);
    }

    std::vector<std::vector<int>> run() {
        if (p_.size() > 4096 || q_.size() > 4096)
            fail(errc::budget_exceeded, "embedding search is capped at 4096 elements");
        if (opt_.surjective && p_.size() != q_.size()) return {};
        results_.clear();
        search(0);
        return results_;
    }

private:
    std::vector<int> sorted_by_dim_desc() const {
        std::vector<int> order(static_cast<std::size_t>(p_.size()));
        for (int i = 0; i < p_.size(); ++i) order[static_cast<std::size_t>(i)] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return p_.dim(a) > p_.dim(b); });
        return order;
    }

    bool compatible(int x, int cand) const {
        const Signature& a = psig_[static_cast<std::size_t>(x)];
        const Signature& b = qsig_[static_cast<std::size_t>(cand)];
        if (a.dim != b.dim) return false;
        if (a.low_minus != b.low_minus || a.low_plus != b.low_plus) return false;
        if (opt_.surjective) {
            if (a.up_minus != b.up_minus || a.up_plus != b.up_plus) return false;
        } else {
            if (a.up_minus > b.up_minus || a.up_plus > b.up_plus) return false;
        }
        // all upper covers of x processed already (descending dimension)
        for (const auto& [u, s] : p_.upper_covers(x)) {
            int img = map_[static_cast<std::size_t>(u)];
            bool found = false;
            for (const auto& [l, s2] : q_.lower_covers(img))
                if (l == cand && s2 == s) { found = true; break; }
            if (!found) return false;
        }
        return true;
    }

    void search(std::size_t pos) {
        if (results_.size() >= opt_.result_cap) return;
        if (++nodes_ > opt_.node_budget)
            fail(errc::budget_exceeded, "embedding search budget exceeded");
        if (pos == order_.size()) {
            results_.push_back(map_);
            return;
        }
        int x = order_[pos];
        std::vector<int> candidates;
        if (!p_.upper_covers(x).empty() &&
            map_[static_cast<std::size_t>(p_.upper_covers(x)[0].first)] >= 0) {
            int img = map_[static_cast<std::size_t>(p_.upper_covers(x)[0].first)];
            Sign s = p_.upper_covers(x)[0].second;
            for (const auto& [l, s2] : q_.lower_covers(img))
                if (s2 == s) candidates.push_back(l);
        } else {
            for (int cand = 0; cand < q_.size(); ++cand)
                if (q_.dim(cand) == p_.dim(x)) candidates.push_back(cand);
        }
        for (int cand : candidates) {
            if (used_[static_cast<std::size_t>(cand)]) continue;
            if (!compatible(x, cand)) continue;
            map_[static_cast<std::size_t>(x)] = cand;
            used_[static_cast<std::size_t>(cand)] = true;
            search(pos + 1);
            used_[static_cast<std::size_t>(cand)] = false;
            map_[static_cast<std::size_t>(x)] = -1;
            if (results_.size() >= opt_.result_cap) return;
        }
    }

    const Complex& p_;
    const Complex& q_;
    MatchOptions opt_;
    std::vector<Signature> psig_, qsig_;
    std::vector<int> order_;
    std::vector<int> map_;
    std::vector<bool> used_;
    std::vector<std::vector<int>> results_;
    std::size_t nodes_ = 0;
};

} // namespace detail

/// Verifies that `map` is a closed, sign-compatible embedding of p into q.
inline bool verify_inclusion(const Complex& p, const Complex& q,
                             const std::vector<int>& map) {
    if (static_cast<int>(map.size()) != p.size()) return false;
    std::vector<bool> used(static_cast<std::size_t>(q.size()), false);
    Bits image = q.empty_set();
    for (int x = 0; x < p.size(); ++x) {
        int img = map[static_cast<std::size_t>(x)];
        if (img < 0 || img >= q.size()) return false;
        if (used[static_cast<std::size_t>(img)]) return false;
        used[static_cast<std::size_t>(img)] = true;
        if (q.dim(img) != p.dim(x)) return false;
        image.set(static_cast<std::size_t>(img));
    }
    if (!is_closed(q, image)) return false;
    for (int x = 0; x < p.size(); ++x) {
        int img = map[static_cast<std::size_t>(x)];
        // lower covers must correspond bijectively, preserving signs
        if (p.lower_covers(x).size() != q.lower_covers(img).size()) return false;
        for (const auto& [l, s] : p.lower_covers(x)) {
            bool found = false;
            for (const auto& [l2, s2] : q.lower_covers(img))
                if (l2 == map[static_cast<std::size_t>(l)] && s2 == s) { found = true; break; }
            if (!found) return false;
        }
    }
    return true;
}

inline std::optional<std::vector<int>> find_inclusion(const Complex& p, const Complex& q) {
    detail::Matcher m(p, q, {});
    auto res = m.run();
    if (res.empty()) return std::nullopt;
    return res.front();
}

inline std::optional<std::vector<int>> find_isomorphism(const Complex& p, const Complex& q) {
    detail::MatchOptions opt;
    opt.surjective = true;
    detail::Matcher m(p, q, opt);
    auto res = m.run();
    if (res.empty()) return std::nullopt;
    return res.front();
}

inline bool isomorphic(const Complex& p, const Complex& q) {
    return find_isomorphism(p, q).has_value();
}

inline std::vector<std::vector<int>> all_isomorphisms(const Complex& p, const Complex& q,
                                                      std::size_t cap = 64) {
    detail::MatchOptions opt;
    opt.surjective = true;
    opt.result_cap = cap;
    detail::Matcher m(p, q, opt);
    return m.run();
}

} // namespace cdc
