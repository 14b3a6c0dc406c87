#pragma once

#include "cdc/molecule.hpp"
#include "cdc/omega.hpp"

namespace cdc {

/// Read-only directed graph on element indices, used for reachability and
/// acyclicity checks.
struct Digraph {
    int n = 0;
    std::vector<std::vector<int>> adj;

    explicit Digraph(int vertices = 0) : n(vertices), adj(static_cast<std::size_t>(vertices)) {}
    void add_edge(int a, int b) { adj[static_cast<std::size_t>(a)].push_back(b); }
};

/// The orientation-resolved Hasse diagram: + covers point down, - covers up.
inline Digraph hasso(const Complex& p, const Bits& u) {
    Digraph g(p.size());
    u.for_each([&](std::size_t xi) {
        int x = static_cast<int>(xi);
        for (const auto& [l, s] : p.lower_covers(x)) {
            if (!u.test(static_cast<std::size_t>(l))) continue;
            if (s == Sign::plus) g.add_edge(x, l);
            else g.add_edge(l, x);
        }
    });
    return g;
}

inline Digraph hasso(const Complex& p) { return hasso(p, p.full_set()); }

/// The flow graph at level n: edges between low-dimensional elements and the
/// parts of the n-boundaries of high-dimensional elements that are not yet in
/// their (n-1)-boundary.
inline Digraph loopd(const Complex& p, const Bits& u, int n,
                     const Bits* high_restriction = nullptr) {
    Digraph g(p.size());
    u.for_each([&](std::size_t xi) {
        int x = static_cast<int>(xi);
        if (p.dim(x) <= n) return;
        if (high_restriction && !high_restriction->test(xi)) return;
        const Bits& cl = p.below(x);
        Bits lowboth = boundary_both(p, cl, n - 1);
        Bits in = difference(boundary(p, cl, Sign::minus, n), lowboth);
        Bits out = difference(boundary(p, cl, Sign::plus, n), lowboth);
        in.for_each([&](std::size_t y) {
            if (u.test(y) && p.dim(static_cast<int>(y)) <= n) g.add_edge(static_cast<int>(y), x);
        });
        out.for_each([&](std::size_t y) {
            if (u.test(y) && p.dim(static_cast<int>(y)) <= n) g.add_edge(x, static_cast<int>(y));
        });
    });
    return g;
}

inline Digraph loopd(const Complex& p, int n) { return loopd(p, p.full_set(), n); }

/// The restriction of loopd whose high-dimensional vertices are only the
/// maximal elements of U.
inline Digraph maxd(const Complex& p, const Bits& u, int n) {
    Bits mx = maximal_elements(p, u);
    return loopd(p, u, n, &mx);
}

/// Kahn-style acyclicity test; on failure extracts a directed cycle.
inline bool acyclic(const Digraph& g, std::vector<int>* cycle = nullptr) {
    std::vector<int> indeg(static_cast<std::size_t>(g.n), 0);
    for (int v = 0; v < g.n; ++v)
        for (int w : g.adj[static_cast<std::size_t>(v)]) indeg[static_cast<std::size_t>(w)]++;
    std::vector<int> stack;
    for (int v = 0; v < g.n; ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0) stack.push_back(v);
    int removed = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++removed;
        for (int w : g.adj[static_cast<std::size_t>(v)])
            if (--indeg[static_cast<std::size_t>(w)] == 0) stack.push_back(w);
    }
    if (removed == g.n) return true;
    if (cycle) {
        // shortest cycle through the residual graph, by BFS from each vertex
        auto residual = [&](int v) { return indeg[static_cast<std::size_t>(v)] > 0; };
        std::vector<int> best;
        for (int start = 0; start < g.n; ++start) {
            if (!residual(start)) continue;
            std::vector<int> parent(static_cast<std::size_t>(g.n), -2);
            std::vector<int> queue{start};
            parent[static_cast<std::size_t>(start)] = -1;
            bool closed = false;
            for (std::size_t qi = 0; qi < queue.size() && !closed; ++qi) {
                int v = queue[qi];
                for (int w : g.adj[static_cast<std::size_t>(v)]) {
                    if (!residual(w)) continue;
                    if (w == start) {
                        std::vector<int> path{v};
                        while (parent[static_cast<std::size_t>(path.back())] >= 0)
                            path.push_back(parent[static_cast<std::size_t>(path.back())]);
                        std::reverse(path.begin(), path.end());
                        if (best.empty() || path.size() < best.size()) best = path;
                        closed = true;
                        break;
                    }
                    if (parent[static_cast<std::size_t>(w)] == -2) {
                        parent[static_cast<std::size_t>(w)] = v;
                        queue.push_back(w);
                    }
                }
            }
        }
        *cycle = best;
    }
    return false;
}

inline bool is_totally_loop_free(const Complex& p, std::vector<int>* cycle = nullptr) {
    return acyclic(hasso(p), cycle);
}

inline bool is_loop_free(const Complex& p, std::vector<int>* cycle = nullptr, int* level = nullptr) {
    for (int n = 0; n < p.top_dim(); ++n)
        if (!acyclic(loopd(p, n), cycle)) {
            if (level) *level = n;
            return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Shape-class predicates on certified molecules

/// Simplicity: recursive splits restricted to atomic intersections.
inline bool is_simple(Context& ctx, const Bits& u,
                      std::unordered_map<Bits, bool, BitsHash>* memo = nullptr) {
    std::unordered_map<Bits, bool, BitsHash> local;
    if (!memo) memo = &local;
    auto it = memo->find(u);
    if (it != memo->end()) return it->second;
    const Complex& p = ctx.host();
    if (!ctx.certify(u))
        fail(errc::precondition_failed, "simplicity is defined on constructible molecules");
    int n = dim_of(p, u);
    bool result = true;
    if (n > 0) {
        for (Sign a : {Sign::minus, Sign::plus})
            if (!is_simple(ctx, boundary(p, u, a, n - 1), memo)) { result = false; break; }
        if (result && !has_greatest(p, u)) {
            result = false;
            for (const auto& [u1, u2] : ctx.splits(u)) {
                if (!has_greatest(p, u1 & u2)) continue;
                if (is_simple(ctx, u1, memo) && is_simple(ctx, u2, memo)) { result = true; break; }
            }
        }
    }
    memo->emplace(u, result);
    return result;
}

/// Positive opetopes: every positive-dimensional element has an atomic output
/// boundary.
inline bool is_positive_opetope(Context& ctx, const Bits& u) {
    const Complex& p = ctx.host();
    if (!ctx.certify(u))
        fail(errc::precondition_failed, "positive opetopes are constructible molecules");
    bool ok = true;
    u.for_each([&](std::size_t xi) {
        int x = static_cast<int>(xi);
        if (p.dim(x) == 0) return;
        if (!has_greatest(p, boundary_of_element(p, x, Sign::plus))) ok = false;
    });
    return ok;
}

/// Flow-connectedness: every input facet reaches every output facet through
/// top- and codimension-1 elements only.
inline bool is_flow_connected(const Complex& p, const Bits& u) {
    int n = dim_of(p, u);
    if (n <= 0) return true;
    Bits in = delta(p, u, Sign::minus, n - 1);
    Bits out = delta(p, u, Sign::plus, n - 1);
    Bits layer = grade(p, u, n) | grade(p, u, n - 1);
    Digraph g = hasso(p, u);
    std::vector<int> starts = in.indices();
    std::vector<int> goals = out.indices();
    for (int s : starts) {
        std::vector<bool> seen(static_cast<std::size_t>(p.size()), false);
        std::vector<int> stack{s};
        seen[static_cast<std::size_t>(s)] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.adj[static_cast<std::size_t>(v)]) {
                if (seen[static_cast<std::size_t>(w)] || !layer.test(static_cast<std::size_t>(w)))
                    continue;
                seen[static_cast<std::size_t>(w)] = true;
                stack.push_back(w);
            }
        }
        for (int t : goals)
            if (!seen[static_cast<std::size_t>(t)]) return false;
    }
    return true;
}

inline bool has_flow_connected_boundaries(const Complex& p, int x) {
    for (int k = 0; k < p.dim(x); ++k)
        for (Sign a : {Sign::minus, Sign::plus})
            if (!is_flow_connected(p, boundary(p, p.below(x), a, k))) return false;
    return true;
}

inline bool has_flow_connected_boundaries(const Complex& p) {
    for (int x = 0; x < p.size(); ++x)
        if (!has_flow_connected_boundaries(p, x)) return false;
    return true;
}

/// Dimension of the union of pairwise intersections of maximal closures.
inline int frame_dimension(const Complex& p, const Bits& u) {
    std::vector<int> mx = maximal_elements(p, u).indices();
    Bits frame = p.empty_set();
    for (std::size_t i = 0; i < mx.size(); ++i)
        for (std::size_t j = i + 1; j < mx.size(); ++j)
            frame |= p.below(mx[i]) & p.below(mx[j]);
    return dim_of(p, frame);
}

// ---------------------------------------------------------------------------
// Free-generation certificates

struct FreeGenerationCertificate {
    enum class Verdict { flow_connected_boundaries, maxd_acyclic_sampled, unknown };
    Verdict verdict = Verdict::unknown;
    std::string explanation;
    std::vector<std::string> evidence;  // per-atom or per-molecule reports
    std::size_t molecules_examined = 0;
    std::size_t molecule_budget = 0;

    bool conclusive() const { return verdict != Verdict::unknown; }
    std::string verdict_name() const {
        switch (verdict) {
            case Verdict::flow_connected_boundaries: return "FLOW_CONNECTED_BOUNDARIES";
            case Verdict::maxd_acyclic_sampled: return "MAXD_ACYCLIC_SAMPLED";
            case Verdict::unknown: return "UNKNOWN";
        }
        return "UNKNOWN";
    }
};

/// One-sided sufficient criteria for free generation: flow-connected
/// boundaries of all atoms, else acyclicity of maxd at the frame dimension
/// for every molecule enumerated within the budget.
inline FreeGenerationCertificate free_generation_certificate(const Complex& p,
                                                             std::size_t molecule_budget = 100000) {
    FreeGenerationCertificate cert;
    cert.molecule_budget = molecule_budget;
    {
        Context ctx(p);
        if (!ctx.is_constructible_directed_complex()) {
            cert.explanation = "input is not a constructible directed complex";
            return cert;
        }
    }
    bool all_fcb = true;
    for (int x = 0; x < p.size(); ++x)
        if (!has_flow_connected_boundaries(p, x)) {
            cert.evidence.push_back("atom '" + p.name(x) + "' lacks flow-connected boundaries");
            all_fcb = false;
        }
    if (all_fcb) {
        cert.verdict = FreeGenerationCertificate::Verdict::flow_connected_boundaries;
        cert.explanation = "every atom has flow-connected boundaries";
        return cert;
    }
    EnumerationResult mol;
    try {
        mol = enumerate_molecules(p, molecule_budget);
    } catch (const error& e) {
        if (e.code() != errc::budget_exceeded) throw;
        cert.explanation = std::string("molecule enumeration hit a budget: ") + e.what();
        return cert;
    }
    cert.molecules_examined = mol.molecules.size();
    if (!mol.complete) {
        cert.explanation = "molecule enumeration exceeded the budget of " +
                           std::to_string(molecule_budget) + " composites";
        return cert;
    }
    for (const Bits& u : mol.molecules) {
        int fr = frame_dimension(p, u);
        if (!acyclic(maxd(p, u, fr))) {
            cert.explanation = "a molecule has a cyclic maxd graph at its frame dimension";
            cert.evidence.push_back("cyclic maxd at frame dimension " + std::to_string(fr) +
                                    " on a molecule of " + std::to_string(u.count()) +
                                    " elements");
            return cert;
        }
    }
    cert.evidence.push_back("checked maxd acyclicity for " +
                            std::to_string(cert.molecules_examined) + " molecules");
    cert.verdict = FreeGenerationCertificate::Verdict::maxd_acyclic_sampled;
    cert.explanation = "all " + std::to_string(cert.molecules_examined) +
                       " molecules have acyclic maxd graphs at their frame dimensions";
    return cert;
}

} // namespace cdc
