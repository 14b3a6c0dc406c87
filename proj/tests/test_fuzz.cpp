// Randomized cross-checks of the production recognisers against the literal
// brute-force oracles, on adversarial posets rather than curated fixtures.

#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "cdc/molecule.hpp"
#include "cdc/omega.hpp"
#include "oracles.hpp"

using namespace cdc;

namespace {

/// A random oriented graded poset: a few elements per dimension, each
/// non-minimal element covering one to three random elements one dimension
/// down. Edges of dimension one get two opposite-signed endpoints so that a
/// useful fraction of the samples is oriented thin.
Complex random_poset(std::mt19937& rng) {
    auto roll = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    int depth = roll(1, 3);
    std::vector<int> layer_size(static_cast<std::size_t>(depth + 1));
    int total = 0;
    for (int d = 0; d <= depth; ++d) {
        layer_size[static_cast<std::size_t>(d)] = roll(1, d == 0 ? 4 : 3);
        total += layer_size[static_cast<std::size_t>(d)];
        if (total > 9) {
            layer_size[static_cast<std::size_t>(d)] -= total - 9;
            if (layer_size[static_cast<std::size_t>(d)] <= 0) {
                layer_size[static_cast<std::size_t>(d)] = 0;
                depth = d - 1;
            }
            break;
        }
    }
    std::vector<ElementData> elems;
    std::vector<std::vector<std::string>> names(static_cast<std::size_t>(depth + 1));
    for (int d = 0; d <= depth; ++d)
        for (int i = 0; i < layer_size[static_cast<std::size_t>(d)]; ++i) {
            std::string id = "x" + std::to_string(d) + "_" + std::to_string(i);
            names[static_cast<std::size_t>(d)].push_back(id);
            elems.push_back({id, d});
        }
    std::vector<CoverData> covers;
    for (int d = 1; d <= depth; ++d) {
        const auto& lower = names[static_cast<std::size_t>(d - 1)];
        for (const auto& id : names[static_cast<std::size_t>(d)]) {
            if (d == 1 && lower.size() >= 2) {
                int a = roll(0, static_cast<int>(lower.size()) - 1);
                int b = roll(0, static_cast<int>(lower.size()) - 2);
                if (b >= a) ++b;
                covers.push_back({id, lower[static_cast<std::size_t>(a)], Sign::minus});
                covers.push_back({id, lower[static_cast<std::size_t>(b)], Sign::plus});
                continue;
            }
            int fan = roll(1, std::min<int>(3, static_cast<int>(lower.size())));
            std::vector<int> chosen;
            while (static_cast<int>(chosen.size()) < fan) {
                int pick = roll(0, static_cast<int>(lower.size()) - 1);
                bool dup = false;
                for (int c : chosen)
                    if (c == pick) dup = true;
                if (!dup) chosen.push_back(pick);
            }
            for (int c : chosen)
                covers.push_back({id, lower[static_cast<std::size_t>(c)],
                                  roll(0, 1) ? Sign::plus : Sign::minus});
        }
    }
    return Complex::validate(elems, covers);
}

} // namespace

TEST_CASE("recognisers agree with the oracles on random posets") {
    std::mt19937 rng(424242);
    int molecule_checks = 0, constructible_checks = 0, thin_samples = 0;
    for (int trial = 0; trial < 800; ++trial) {
        Complex p = random_poset(rng);
        OmegaContext octx(p);
        bool thin = is_oriented_thin(p);
        if (thin) ++thin_samples;
        std::optional<Context> cctx;
        if (thin) cctx.emplace(p);
        for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << p.size()); ++mask) {
            Bits u = p.empty_set();
            for (int i = 0; i < p.size(); ++i)
                if ((mask >> i) & 1) u.set(static_cast<std::size_t>(i));
            if (!is_closed(p, u)) continue;
            oracle::Set s;
            u.for_each([&](std::size_t i) { s.insert(static_cast<int>(i)); });
            bool want = oracle::molecule(p, s);
            bool got = octx.certify_molecule(u);
            ++molecule_checks;
            if (want != got) {
                CAPTURE(trial, mask, want, got);
                FAIL("molecule recogniser disagrees with the oracle");
            }
            if (thin) {
                bool cwant = oracle::constructible(p, s);
                bool cgot = cctx->certify(u);
                ++constructible_checks;
                if (cwant != cgot) {
                    CAPTURE(trial, mask, cwant, cgot);
                    FAIL("constructibility recogniser disagrees with the oracle");
                }
            }
        }
    }
    INFO("thin samples: " << thin_samples);
    CHECK(molecule_checks > 10000);
    CHECK(thin_samples > 50);
    CHECK(constructible_checks > 1500);
}

TEST_CASE("enumeration finds exactly the certified molecules") {
    std::mt19937 rng(777);
    int compared = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Complex p = random_poset(rng);
        OmegaContext octx(p);
        EnumerationResult r = enumerate_molecules(p, 100000, &octx);
        REQUIRE(r.complete);
        std::unordered_map<Bits, bool, BitsHash> enumerated;
        for (const Bits& u : r.molecules) enumerated.emplace(u, true);
        for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << p.size()); ++mask) {
            Bits u = p.empty_set();
            for (int i = 0; i < p.size(); ++i)
                if ((mask >> i) & 1) u.set(static_cast<std::size_t>(i));
            if (!is_closed(p, u)) continue;
            ++compared;
            bool is_mol = octx.certify_molecule(u);
            bool listed = enumerated.count(u) > 0;
            if (is_mol != listed) {
                CAPTURE(trial, mask, is_mol, listed);
                FAIL("enumeration and recognition disagree");
            }
        }
    }
    CHECK(compared > 3000);
}

TEST_CASE("the submolecule order agrees with the blind recursion") {
    std::mt19937 rng(31337);
    int compared = 0, thin_samples = 0;
    for (int trial = 0; trial < 600 && compared < 4000; ++trial) {
        Complex p = random_poset(rng);
        if (!is_oriented_thin(p)) continue;
        ++thin_samples;
        Context ctx(p);
        std::vector<Bits> certified;
        for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << p.size()); ++mask) {
            Bits u = p.empty_set();
            for (int i = 0; i < p.size(); ++i)
                if ((mask >> i) & 1) u.set(static_cast<std::size_t>(i));
            if (!is_closed(p, u) || !ctx.certify(u)) continue;
            certified.push_back(u);
        }
        for (const Bits& v : certified)
            for (const Bits& u : certified) {
                if (!v.subset_of(u)) continue;
                if (dim_of(p, v) != dim_of(p, u)) continue;
                oracle::Set sv, su;
                v.for_each([&](std::size_t i) { sv.insert(static_cast<int>(i)); });
                u.for_each([&](std::size_t i) { su.insert(static_cast<int>(i)); });
                bool want = oracle::constructible_submolecule(p, sv, su);
                bool got = ctx.submolecule(v, u);
                ++compared;
                if (want != got) {
                    CAPTURE(trial, want, got);
                    FAIL("submolecule order disagrees with the oracle");
                }
            }
    }
    INFO("thin samples: " << thin_samples);
    CHECK(compared > 800);
}
