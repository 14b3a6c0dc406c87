#include <catch2/catch_amalgamated.hpp>

#include "cdc/classes.hpp"
#include "cdc/fixtures.hpp"

using namespace cdc;

namespace {
bool cycle_matches(const Complex& p, const std::vector<int>& cycle,
                   const std::vector<std::string>& expected) {
    if (cycle.size() != expected.size()) return false;
    for (std::size_t shift = 0; shift < expected.size(); ++shift) {
        bool ok = true;
        for (std::size_t i = 0; i < expected.size(); ++i)
            if (p.name(cycle[(i + shift) % cycle.size()]) != expected[i]) { ok = false; break; }
        if (ok) return true;
    }
    return false;
}
} // namespace

TEST_CASE("the flow graph of the 2-globe has six edges") {
    Digraph g = hasso(globe(2));
    std::size_t edges = 0;
    for (const auto& adj : g.adj) edges += adj.size();
    CHECK(edges == 6);
}

TEST_CASE("the pinwheel atom loops at level zero") {
    Complex p = pw3();
    SECTION("the level-0 flow graph contains the printed cycle") {
        std::vector<int> cycle;
        REQUIRE_FALSE(acyclic(loopd(p, 0), &cycle));
        CHECK(cycle_matches(p, cycle, {"x1", "y1", "x2", "y2"}));
    }
    SECTION("both loop-freeness checks fail with the same witness") {
        std::vector<int> cycle;
        CHECK_FALSE(is_loop_free(p, &cycle));
        CHECK(cycle_matches(p, cycle, {"x1", "y1", "x2", "y2"}));
        cycle.clear();
        CHECK_FALSE(is_totally_loop_free(p, &cycle));
        CHECK(cycle_matches(p, cycle, {"x1", "y1", "x2", "y2"}));
    }
    SECTION("its boundary halves are individually totally loop-free") {
        CHECK(is_totally_loop_free(pw3_minus()));
        CHECK(is_totally_loop_free(pw3_plus()));
    }
    SECTION("the top-level flow graph is still acyclic") {
        CHECK(acyclic(loopd(p, 2)));
    }
}

TEST_CASE("globes, cubes and simplices are loop-free both ways") {
    for (const Complex& c : {globe(3), cube(2), cube(3), simplex(2), simplex(3), point()}) {
        CHECK(is_loop_free(c));
        CHECK(is_totally_loop_free(c));
    }
}

TEST_CASE("total loop-freeness implies loop-freeness on the corpus") {
    for (const Complex& c : {globe(3), cube(3), simplex(3), path(4), atom2(3, 2), whisk(),
                             pw3(), pw3_minus(), op_all(simplex(2)),
                             gray_product(globe(2), path(2)).complex}) {
        if (is_totally_loop_free(c)) CHECK(is_loop_free(c));
    }
}

TEST_CASE("simplicity") {
    SECTION("the square is simple, the 3-cube is not") {
        Complex k2 = cube(2);
        Context c2(k2);
        CHECK(is_simple(c2, k2.full_set()));
        Complex k3 = cube(3);
        Context c3(k3);
        CHECK_FALSE(is_simple(c3, k3.full_set()));
    }
    SECTION("all 1-molecules are simple") {
        for (int k = 1; k <= 4; ++k) {
            Complex p = path(k);
            Context ctx(p);
            CHECK(is_simple(ctx, p.full_set()));
        }
    }
}

TEST_CASE("positive opetopes") {
    SECTION("the all-dual of the 2-simplex is a positive opetope") {
        Complex d = op_all(simplex(2));
        Context ctx(d);
        CHECK(is_positive_opetope(ctx, d.full_set()));
    }
    SECTION("the square is not a positive opetope") {
        Complex k2 = cube(2);
        Context ctx(k2);
        CHECK_FALSE(is_positive_opetope(ctx, k2.full_set()));
    }
    SECTION("paths are positive opetopes") {
        for (int k = 1; k <= 3; ++k) {
            Complex p = path(k);
            Context ctx(p);
            CHECK(is_positive_opetope(ctx, p.full_set()));
        }
    }
    SECTION("positive opetopes are simple and flow-connected with atomic outputs") {
        for (const Complex& c : {op_all(simplex(2)), path(3), atom2(3, 1), globe(2)}) {
            Context ctx(c);
            REQUIRE(is_positive_opetope(ctx, c.full_set()));
            CHECK(is_simple(ctx, c.full_set()));
            CHECK(is_flow_connected(c, c.full_set()));
            CHECK(has_greatest(c, output_boundary(c, c.full_set())));
        }
    }
}

TEST_CASE("flow-connectedness") {
    SECTION("atoms are flow-connected") {
        for (const Complex& c : {globe(2), atom2(2, 3), cube(2), pw3()})
            CHECK(is_flow_connected(c, c.full_set()));
    }
    SECTION("the pinwheel's input half is not flow-connected") {
        CHECK_FALSE(is_flow_connected(pw3_minus(), pw3_minus().full_set()));
    }
}

TEST_CASE("frame dimension") {
    SECTION("atoms have frame dimension -1") {
        CHECK(frame_dimension(globe(2), globe(2).full_set()) == -1);
        CHECK(frame_dimension(pw3(), pw3().full_set()) == -1);
    }
    SECTION("a 2-edge path has frame dimension 0") {
        CHECK(frame_dimension(path(2), path(2).full_set()) == 0);
    }
    SECTION("non-atomic molecules sit one below their dimension") {
        Complex p = gray_product(path(2), globe(1)).complex;  // 2-dim, two top cells
        CHECK(frame_dimension(p, p.full_set()) == dim_of(p, p.full_set()) - 1);
    }
}

TEST_CASE("maxd is the maximal-element restriction of loopd") {
    for (const Complex& c : {pw3(), cube(2), path(3)}) {
        Bits full = c.full_set();
        Bits mx = maximal_elements(c, full);
        for (int n = 0; n < c.top_dim(); ++n) {
            Digraph big = loopd(c, full, n);
            Digraph small = maxd(c, full, n);
            for (int v = 0; v < small.n; ++v)
                for (int w : small.adj[static_cast<std::size_t>(v)]) {
                    bool found = false;
                    for (int w2 : big.adj[static_cast<std::size_t>(v)])
                        if (w2 == w) found = true;
                    CHECK(found);
                }
            (void)mx;
        }
    }
}

TEST_CASE("free generation certificates") {
    SECTION("positive-opetope complexes are certified by flow-connected boundaries") {
        FreeGenerationCertificate c = free_generation_certificate(op_all(simplex(2)));
        CHECK(c.verdict == FreeGenerationCertificate::Verdict::flow_connected_boundaries);
    }
    SECTION("the pinwheel atom falls back to the maxd criterion") {
        FreeGenerationCertificate c = free_generation_certificate(pw3());
        CHECK(c.verdict == FreeGenerationCertificate::Verdict::maxd_acyclic_sampled);
        CHECK(c.molecules_examined > 0);
    }
    SECTION("cubes obtain a conclusive certificate") {
        FreeGenerationCertificate c = free_generation_certificate(cube(2));
        CHECK(c.conclusive());
    }
    SECTION("a tiny budget folds into UNKNOWN") {
        FreeGenerationCertificate c = free_generation_certificate(pw3(), 3);
        CHECK(c.verdict == FreeGenerationCertificate::Verdict::unknown);
        CHECK_FALSE(c.explanation.empty());
    }
}
