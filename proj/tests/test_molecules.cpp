#include <atomic>
#include <thread>

#include <catch2/catch_amalgamated.hpp>

#include "cdc/fixtures.hpp"
#include "cdc/molecule.hpp"
#include "oracles.hpp"

using namespace cdc;

namespace {

/// k-fold vertical stack of 2-globes between two vertices.
Complex vstack(int k) {
    std::vector<ElementData> elems = {{"a", 0}, {"b", 0}};
    std::vector<CoverData> covers;
    for (int i = 0; i <= k; ++i) {
        std::string e = "e" + std::to_string(i);
        elems.push_back({e, 1});
        covers.push_back({e, "a", Sign::minus});
        covers.push_back({e, "b", Sign::plus});
    }
    for (int i = 1; i <= k; ++i) {
        std::string c = "c" + std::to_string(i);
        elems.push_back({c, 2});
        covers.push_back({c, "e" + std::to_string(i - 1), Sign::minus});
        covers.push_back({c, "e" + std::to_string(i), Sign::plus});
    }
    return Complex::validate(elems, covers);
}

} // namespace

TEST_CASE("globes are constructible atoms") {
    for (int n = 0; n <= 3; ++n) {
        Complex g = globe(n);
        Context ctx(g);
        CHECK(ctx.is_constructible_atom(g.full_set()));
        MergerTree t = ctx.merger_tree(g.full_set());
        CHECK(t.arena.size() == 1);
    }
}

TEST_CASE("the 9-element counterexample is thin but not a constructible atom") {
    Complex n9 = nonex9();
    REQUIRE(is_oriented_thin(n9));
    Context ctx(n9);
    int x = n9.require("x");
    CHECK_FALSE(ctx.certify(n9.below(x)));
    auto reason = ctx.why_not(n9.below(x));
    REQUIRE(reason.has_value());
    CHECK(*reason == "∂⁻x not a 1-molecule");
    int witness = -1;
    std::string why;
    CHECK_FALSE(ctx.is_constructible_directed_complex(&witness, &why));
    CHECK(n9.name(witness) == "x");
}

TEST_CASE("the whiskered 2-globe is not pure, hence not constructible") {
    Complex w = whisk();
    CHECK_FALSE(is_pure(w, w.full_set()));
    Context ctx(w);
    CHECK_FALSE(ctx.certify(w.full_set()));
    CHECK(ctx.is_constructible_directed_complex());
}

TEST_CASE("paths certify and their edges are submolecules") {
    Complex p2 = path(2);
    Context ctx(p2);
    Bits full = p2.full_set();
    REQUIRE(ctx.certify(full));
    CHECK(ctx.submolecule(p2.below(p2.require("e1")), full));
    CHECK(ctx.submolecule(full, full));
    SECTION("dimension mismatch is a precondition failure") {
        Bits bm = input_boundary(p2, full);
        CHECK_THROWS_AS(ctx.submolecule(bm, full), error);
    }
}

TEST_CASE("the vertical 3-stack has exactly two merger trees") {
    Complex s = vstack(3);
    Context ctx(s);
    REQUIRE(ctx.certify(s.full_set()));
    CHECK(ctx.count_merger_trees(s.full_set()) == 2);
}

TEST_CASE("atoms built by cell certify through the atom classification") {
    Complex a21 = atom2(2, 1);
    CHECK(a21.size() == 7);
    Context ctx(a21);
    CHECK(ctx.is_constructible_atom(a21.full_set()));
    CHECK(ctx.check_globularity(a21.full_set()));
}

TEST_CASE("basic facet structure of certified molecules") {
    for (const Complex& c : {globe(2), globe(3), path(3), atom2(2, 2), vstack(2)}) {
        Context ctx(c);
        Bits u = c.full_set();
        REQUIRE(ctx.certify(u));
        int n = dim_of(c, u);
        Bits dm = delta(c, u, Sign::minus, n - 1);
        Bits dp = delta(c, u, Sign::plus, n - 1);
        CHECK(dm.any());
        CHECK(dp.any());
        CHECK_FALSE(dm.intersects(dp));
        Bits mid = difference(grade(c, u, n - 1), dm | dp);
        mid.for_each([&](std::size_t x) {
            int minus = 0, plus = 0;
            for (const auto& [up, s] : c.upper_covers(static_cast<int>(x)))
                (s == Sign::minus ? minus : plus)++;
            CHECK(minus == 1);
            CHECK(plus == 1);
        });
        (dm | dp).for_each([&](std::size_t x) {
            int covers = 0;
            for (const auto& [up, s] : c.upper_covers(static_cast<int>(x))) {
                (void)s;
                ++covers;
            }
            CHECK(covers == 1);
        });
    }
}

TEST_CASE("globularity and globelike laws on fixtures") {
    for (const Complex& c : {globe(3), atom2(2, 2), cube(2), simplex(2), vstack(3), pw3()}) {
        Context ctx(c);
        Bits u = c.full_set();
        REQUIRE(ctx.certify(u));
        CHECK(ctx.check_globularity(u));
        CHECK(ctx.check_globelike(u));
    }
}

TEST_CASE("accepted splits keep their moved boundaries certified") {
    for (const Complex& c : {vstack(3), path(4), atom2(3, 2)}) {
        Context ctx(c);
        Bits u = c.full_set();
        REQUIRE(ctx.certify(u));
        if (has_greatest(c, u)) continue;
        int n = dim_of(c, u);
        for (const auto& [u1, u2] : ctx.splits(u)) {
            Bits moved = boundary(c, u1, Sign::plus, n - 1) | boundary(c, u2, Sign::minus, n - 1);
            REQUIRE(ctx.certify(moved));
            CHECK(ctx.submolecule(boundary(c, u1, Sign::plus, n - 1), moved));
            CHECK(ctx.submolecule(boundary(c, u2, Sign::minus, n - 1), moved));
        }
    }
}

TEST_CASE("recogniser agrees with the brute-force oracle on spot fixtures") {
    for (const Complex& c : {globe(2), path(3), whisk(), nonex9(), atom2(2, 1)}) {
        Context ctx(c);
        // every closure of a single element plus the full set
        for (int x = 0; x < c.size(); ++x) {
            Bits u = c.below(x);
            oracle::Set s;
            u.for_each([&](std::size_t i) { s.insert(static_cast<int>(i)); });
            CHECK(ctx.certify(u) == oracle::constructible(c, s));
        }
        Bits full = c.full_set();
        oracle::Set s;
        full.for_each([&](std::size_t i) { s.insert(static_cast<int>(i)); });
        CHECK(ctx.certify(full) == oracle::constructible(c, s));
    }
}

TEST_CASE("certification refuses a non-thin host and the empty subset") {
    Complex o2 = globe(2);
    auto covers = o2.cover_data();
    for (auto& c : covers)
        if (c.upper == "2" && c.lower == "1+") c.sign = Sign::minus;
    Complex bad = Complex::validate(o2.element_data(), covers);
    Context ctx(bad);
    try {
        ctx.certify(bad.full_set());
        FAIL("expected host_not_thin");
    } catch (const error& e) {
        CHECK(e.code() == errc::host_not_thin);
    }
    Context good(o2);
    CHECK_FALSE(good.certify(o2.empty_set()));
    CHECK(good.why_not(o2.empty_set()).has_value());
}

TEST_CASE("complexes admit concurrent readers with private contexts") {
    Complex k3 = cube(3);
    std::vector<std::thread> workers;
    std::atomic<int> certified{0};
    for (int t = 0; t < 4; ++t)
        workers.emplace_back([&k3, &certified, t] {
            Context ctx(k3);
            Bits u = t % 2 == 0 ? k3.full_set() : input_boundary(k3, k3.full_set());
            if (ctx.certify(u) && ctx.check_globularity(u)) ++certified;
        });
    for (auto& w : workers) w.join();
    CHECK(certified == 4);
}

TEST_CASE("boundary of a boundary stays certified") {
    Complex k2 = cube(2);
    Context ctx(k2);
    Bits u = k2.full_set();
    REQUIRE(ctx.certify(u));
    Bits bm = input_boundary(k2, u);
    REQUIRE(ctx.certify(bm));
    CHECK(dim_of(k2, bm) == 1);
    Bits bmm = input_boundary(k2, bm);
    CHECK(ctx.certify(bmm));
    CHECK(dim_of(k2, bmm) == 0);
}
