#include <catch2/catch_amalgamated.hpp>

#include "cdc/classes.hpp"
#include "cdc/fixtures.hpp"

using namespace cdc;

TEST_CASE("generator cardinalities") {
    CHECK(point().size() == 1);
    for (int n = 0; n <= 4; ++n) CHECK(globe(n).size() == 2 * n + 1);
    for (int k = 1; k <= 4; ++k) CHECK(path(k).size() == 2 * k + 1);
    CHECK(atom2(2, 1).size() == 7);
    CHECK(atom2(3, 2).size() == 11);
    for (int n = 0; n <= 3; ++n) {
        int expected = 1;
        for (int i = 0; i < n; ++i) expected *= 3;
        CHECK(cube(n).size() == expected);
    }
    for (int n = 0; n <= 3; ++n) CHECK(simplex(n).size() == (1 << (n + 1)) - 1);
}

TEST_CASE("suspension") {
    SECTION("suspending a globe gives the next globe") {
        for (int n = 1; n <= 3; ++n)
            CHECK(find_isomorphism(suspension(globe(n - 1)).complex, globe(n)).has_value());
    }
    SECTION("suspension adds exactly two elements") {
        CHECK(suspension(path(2)).complex.size() == 7);
    }
    SECTION("suspension of the empty complex is two points") {
        Complex empty;
        CHECK(suspension(empty).complex.size() == 2);
    }
    SECTION("suspension preserves the cdc property") {
        Complex s = suspension(atom2(2, 1)).complex;
        CHECK(is_constructible_directed_complex(s));
    }
    SECTION("subsets certify exactly when their suspensions do") {
        Complex p = path(2);
        SuspensionResult s = suspension(p);
        Context pctx(p), sctx(s.complex);
        for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << p.size()); ++mask) {
            Bits u = p.empty_set();
            for (int i = 0; i < p.size(); ++i)
                if ((mask >> i) & 1) u.set(static_cast<std::size_t>(i));
            if (!is_closed(p, u)) continue;
            Bits su = s.complex.empty_set();
            su.set(static_cast<std::size_t>(s.bottom_minus));
            su.set(static_cast<std::size_t>(s.bottom_plus));
            u.for_each([&](std::size_t i) {
                su.set(static_cast<std::size_t>(s.image[i]));
            });
            CHECK(pctx.certify(u) == sctx.certify(su));
        }
    }
}

TEST_CASE("lax Gray product") {
    Complex i = globe(1);
    ProductResult k2 = gray_product(i, i);
    SECTION("the square is the product of two intervals") {
        CHECK(k2.complex.size() == 9);
        CHECK(find_isomorphism(k2.complex, cube(2)).has_value());
    }
    SECTION("the input boundary of the square is a 2-edge path") {
        Bits bm = input_boundary(k2.complex, k2.complex.full_set());
        SubComplex sub = restrict_to(k2.complex, bm);
        CHECK(find_isomorphism(sub.complex, path(2)).has_value());
    }
    SECTION("the output 0-boundary of the square is one terminal vertex") {
        Bits b0 = boundary(k2.complex, k2.complex.full_set(), Sign::plus, 0);
        CHECK(b0.count() == 1);
    }
    SECTION("the point is a unit up to isomorphism") {
        ProductResult r = gray_product(point(), simplex(2));
        CHECK(find_isomorphism(r.complex, simplex(2)).has_value());
    }
    SECTION("associativity up to isomorphism") {
        Complex a = gray_product(gray_product(i, i).complex, globe(2)).complex;
        Complex b = gray_product(i, gray_product(i, globe(2)).complex).complex;
        CHECK(find_isomorphism(a, b).has_value());
    }
    SECTION("products of certified molecules re-certify") {
        Complex p = gray_product(globe(2), path(2)).complex;
        Context ctx(p);
        CHECK(ctx.certify(p.full_set()));
        CHECK(ctx.is_constructible_directed_complex());
    }
}

namespace {
/// Right-hand side of the product boundary formula.
Bits gray_boundary_formula(const Complex& prod, const ProductResult& pr, const Complex& u,
                           const Complex& v, Sign a, int k) {
    int n = u.top_dim(), m = v.top_dim();
    Bits rhs = prod.empty_set();
    for (int i = std::max(0, k - m); i <= std::min(n, k); ++i) {
        Bits bu = boundary(u, u.full_set(), a, i);
        Bits bv = boundary(v, v.full_set(), twist(i, a), k - i);
        rhs |= pr.image(prod, bu, bv);
    }
    return rhs;
}
} // namespace

TEST_CASE("product boundary formula on sample pairs") {
    std::vector<Complex> factors;
    factors.push_back(globe(1));
    factors.push_back(globe(2));
    factors.push_back(path(2));
    for (const Complex& u : factors)
        for (const Complex& v : factors) {
            ProductResult pr = gray_product(u, v);
            const Complex& prod = pr.complex;
            int total = u.top_dim() + v.top_dim();
            for (int k = 0; k < total; ++k)
                for (Sign a : {Sign::minus, Sign::plus}) {
                    Bits direct = boundary(prod, prod.full_set(), a, k);
                    CHECK(direct == gray_boundary_formula(prod, pr, u, v, a, k));
                }
        }
}

TEST_CASE("codimension-1 product boundary splits as in the appendix") {
    Complex u = globe(2), v = globe(1);
    ProductResult pr = gray_product(u, v);
    const Complex& prod = pr.complex;
    int n = u.top_dim();
    Context ctx(prod);
    REQUIRE(ctx.certify(prod.full_set()));
    for (Sign a : {Sign::minus, Sign::plus}) {
        Bits whole = boundary(prod, prod.full_set(), a, n + v.top_dim() - 1);
        Bits part1 = pr.image(prod, boundary(u, u.full_set(), a, n - 1), v.full_set());
        Bits part2 = pr.image(prod, u.full_set(),
                              boundary(v, v.full_set(), twist(n, a), v.top_dim() - 1));
        CHECK((part1 | part2) == whole);
        bool split_ok =
            ctx.is_valid_split(whole, part1, part2) || ctx.is_valid_split(whole, part2, part1);
        CHECK(split_ok);
    }
}

TEST_CASE("join") {
    SECTION("join of two points is the interval") {
        CHECK(find_isomorphism(join(point(), point()).complex, globe(1)).has_value());
    }
    SECTION("join with a point gives the next simplex") {
        Complex d2 = join(globe(1), point()).complex;
        CHECK(d2.size() == 7);
        CHECK(find_isomorphism(d2, simplex(2)).has_value());
    }
    SECTION("cardinality of a join") {
        Complex j = join(globe(2), path(2)).complex;
        CHECK(j.size() == 5 + 5 + 25);
    }
    SECTION("the input boundary of a cone is the cone on the output boundary") {
        Complex v = atom2(2, 1);
        JoinResult jr = join(point(), v);
        Bits bm = input_boundary(jr.complex, jr.complex.full_set());
        // 1 * bd+(v): the left point joined with the output boundary of v
        Bits expectation = jr.complex.empty_set();
        expectation.set(static_cast<std::size_t>(jr.left[0]));
        Bits bpv = output_boundary(v, v.full_set());
        bpv.for_each([&](std::size_t y) {
            expectation.set(static_cast<std::size_t>(jr.right[y]));
            expectation.set(static_cast<std::size_t>(jr.pair_index[0][y]));
        });
        CHECK(bm == expectation);
    }
    SECTION("joins of certified molecules re-certify") {
        Complex j = join(globe(1), path(2)).complex;
        Context ctx(j);
        CHECK(ctx.certify(j.full_set()));
        CHECK(ctx.is_constructible_directed_complex());
    }
    SECTION("associativity up to isomorphism") {
        Complex a = join(join(globe(1), point()).complex, globe(1)).complex;
        Complex b = join(globe(1), join(point(), globe(1)).complex).complex;
        CHECK(find_isomorphism(a, b).has_value());
    }
}

TEST_CASE("duals") {
    SECTION("j_dual is involutive") {
        for (const Complex& c : {globe(2), cube(2), simplex(2), atom2(2, 1)})
            for (const DualitySet& j :
                 {DualitySet::all(), DualitySet::odd(), DualitySet::even(), DualitySet::of({2})}) {
                Complex twice = j_dual(j_dual(c, j), j);
                CHECK(twice.cover_data().size() == c.cover_data().size());
                bool same = true;
                auto a = twice.cover_data();
                auto b = c.cover_data();
                for (std::size_t i = 0; i < a.size(); ++i)
                    if (a[i].upper != b[i].upper || a[i].lower != b[i].lower ||
                        a[i].sign != b[i].sign)
                        same = false;
                CHECK(same);
            }
    }
    SECTION("duals preserve the cdc property") {
        Complex d = op_dual(cube(2));
        CHECK(is_constructible_directed_complex(d));
    }
    SECTION("op of a product swaps the factors") {
        Complex u = globe(2), v = globe(1);
        ProductResult puv = gray_product(u, v);
        ProductResult pvu = gray_product(op_dual(v), op_dual(u));
        Complex lhs = op_dual(puv.complex);
        // explicit swap map x (x) y -> y (x) x
        std::vector<int> swap_map(static_cast<std::size_t>(lhs.size()), -1);
        for (int i = 0; i < u.size(); ++i)
            for (int j = 0; j < v.size(); ++j)
                swap_map[static_cast<std::size_t>(puv.pair_index[static_cast<std::size_t>(i)]
                                                                [static_cast<std::size_t>(j)])] =
                    pvu.pair_index[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        CHECK(verify_inclusion(lhs, pvu.complex, swap_map));
    }
    SECTION("op of a join swaps the factors") {
        Complex u = globe(1), v = point();
        JoinResult juv = join(u, v);
        JoinResult jvu = join(op_dual(v), op_dual(u));
        Complex lhs = op_dual(juv.complex);
        std::vector<int> swap_map(static_cast<std::size_t>(lhs.size()), -1);
        for (int i = 0; i < u.size(); ++i)
            swap_map[static_cast<std::size_t>(juv.left[static_cast<std::size_t>(i)])] =
                jvu.right[static_cast<std::size_t>(i)];
        for (int j = 0; j < v.size(); ++j)
            swap_map[static_cast<std::size_t>(juv.right[static_cast<std::size_t>(j)])] =
                jvu.left[static_cast<std::size_t>(j)];
        for (int i = 0; i < u.size(); ++i)
            for (int j = 0; j < v.size(); ++j)
                swap_map[static_cast<std::size_t>(juv.pair_index[static_cast<std::size_t>(i)]
                                                                [static_cast<std::size_t>(j)])] =
                    jvu.pair_index[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        CHECK(verify_inclusion(lhs, jvu.complex, swap_map));
    }
    SECTION("co of a join does not swap-commute on the interval cone") {
        Complex u = globe(1), v = point();
        Complex lhs = co_dual(join(u, v).complex);
        Complex rhs = join(co_dual(v), co_dual(u)).complex;
        CHECK_FALSE(find_isomorphism(lhs, rhs).has_value());
    }
}

TEST_CASE("pushouts and disjoint unions") {
    SECTION("two intervals glued end to start give a path") {
        Complex i1 = globe(1), i2 = globe(1), pt = point();
        // legs: terminal vertex of the first, initial vertex of the second
        Inclusion left{&pt, &i1, {i1.require("0+")}};
        Inclusion right{&pt, &i2, {i2.require("0-")}};
        PushoutResult r = pushout(left, right);
        CHECK(find_isomorphism(r.complex, path(2)).has_value());
    }
    SECTION("pushout along the empty complex is the disjoint union") {
        Complex empty;
        Complex a = point("x"), b = point("y");
        Inclusion left{&empty, &a, {}};
        Inclusion right{&empty, &b, {}};
        PushoutResult r = pushout(left, right);
        CHECK(r.complex.size() == 2);
        CHECK(is_constructible_directed_complex(r.complex));
    }
    SECTION("a bad leg is rejected") {
        Complex i1 = globe(1), pt = point();
        Inclusion bad{&pt, &i1, {i1.require("1")}};  // wrong dimension
        Inclusion good{&pt, &i1, {i1.require("0-")}};
        CHECK_THROWS_AS(pushout(bad, good), error);
    }
    SECTION("disjoint union of two points is a cdc") {
        Complex u = disjoint_union(point(), point());
        CHECK(u.size() == 2);
        CHECK(is_constructible_directed_complex(u));
    }
}
