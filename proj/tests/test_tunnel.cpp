#include <catch2/catch_amalgamated.hpp>

#include "covergauge/tunnel.hpp"
#include "support/brute.hpp"
#include "support/generators.hpp"

using namespace covergauge;

namespace {
// two blocks {0,1} and {2,3} with the given inner distances
ExtGauge two_blocks(Dyadic d01, Dyadic d23) {
    ExtGauge g(4);
    for (int x = 0; x < 4; ++x)
        for (int y = x + 1; y < 4; ++y) g.set(x, y, ExtDyadic::infinity());
    g.set(0, 1, ExtDyadic(d01));
    g.set(2, 3, ExtDyadic(d23));
    return g;
}
}  // namespace

TEST_CASE("tunnel system validation") {
    ExtGauge one_block(2);
    one_block.set(0, 1, ExtDyadic(Dyadic(1, 1)));
    TunnelSystem empty;
    REQUIRE(validate_tunnel_system(one_block, empty).pass);

    TunnelSystem inside;
    inside.add(0, 1, Dyadic(1, 0));
    TunnelReport r = validate_tunnel_system(one_block, inside);
    REQUIRE_FALSE(r.pass);
    REQUIRE(r.failed_condition == "disjoint_from_blocks");

    ExtGauge g = two_blocks(Dyadic(1, 1), Dyadic(1, 2));
    TunnelSystem t;
    t.add(1, 2, Dyadic(5, 0));
    REQUIRE(validate_tunnel_system(g, t).pass);
    REQUIRE(t.lambda0() == Dyadic(5, 0));

    TunnelSystem missing;  // two blocks, no bridge
    TunnelReport rc = validate_tunnel_system(g, missing);
    REQUIRE_FALSE(rc.pass);
    REQUIRE(rc.failed_condition == "connects");
}

TEST_CASE("tunnel distance on the worked example") {
    SpaceInstance inst = gen::discrete_space(4);
    ExtGauge rho = two_blocks(Dyadic(1, 1), Dyadic(1, 2));
    TunnelSystem t;
    t.add(1, 2, Dyadic(5, 0));
    ExtGauge sigma = tunnel_distance(inst, rho, t);
    REQUIRE(sigma.at(0, 3) == ExtDyadic(Dyadic(23, 2)));  // 1/2 + 5 + 1/4
    REQUIRE(sigma.at(0, 1) == ExtDyadic(Dyadic(1, 1)));   // below lambda0: unchanged
    REQUIRE(sigma.at(0, 0).is_zero());
    for (const auto& e : sigma.m) REQUIRE_FALSE(e.is_inf());
    REQUIRE(sigma == brute::step_distance(rho, t));
}

TEST_CASE("tunnel distance rejects invalid systems") {
    SpaceInstance inst = gen::discrete_space(4);
    ExtGauge rho = two_blocks(Dyadic(1, 1), Dyadic(1, 2));
    TunnelSystem none;
    REQUIRE_THROWS_AS(tunnel_distance(inst, rho, none), Error);
}

TEST_CASE("distance checks: below the minimum length nothing changes") {
    SpaceInstance inst = gen::discrete_space(4);
    ExtGauge rho = two_blocks(Dyadic(1, 1), Dyadic(1, 2));
    TunnelSystem t;
    t.add(1, 2, Dyadic(5, 0));
    ExtGauge sigma = tunnel_distance(inst, rho, t);
    TunnelDistanceReport rep = verify_theorem_3_6(inst, rho, t, sigma);
    REQUIRE(rep.pass);

    // empty system over one block: sigma equals rho
    ExtGauge one(3);
    one.set(0, 1, ExtDyadic(Dyadic(1, 1)));
    one.set(1, 2, ExtDyadic(Dyadic(1, 1)));
    one.set(0, 2, ExtDyadic(Dyadic(1, 0)));
    TunnelSystem empty;
    ExtGauge s2 = tunnel_distance(gen::discrete_space(3), one, empty);
    REQUIRE(s2 == one);
}

TEST_CASE("tunnel distance equals the step enumeration on random instances") {
    gen::Rng rng(7301);
    for (int it = 0; it < 60; ++it) {
        std::vector<int> sizes;
        int blocks = gen::pick(rng, 1, 4);
        for (int i = 0; i < blocks; ++i) sizes.push_back(gen::pick(rng, 1, 2));
        ExtGauge rho = gen::random_block_gauge(rng, sizes);
        if (rho.n > 10) continue;
        TunnelSystem t = gen::random_tunnels(rng, rho, gen::coin(rng));
        if (t.tunnels.size() > 6) continue;
        SpaceInstance inst = gen::discrete_space(rho.n);
        ExtGauge sigma = tunnel_distance(inst, rho, t);
        REQUIRE(sigma == brute::step_distance(rho, t));
        REQUIRE(verify_theorem_3_6(inst, rho, t, sigma).pass);
    }
}

TEST_CASE("tunnel neighborhoods are monotone and respect strictness") {
    TunnelSystem t;
    t.add(0, 2, Dyadic(1, 0));
    t.add(0, 4, Dyadic(2, 0));
    REQUIRE(tunnel_neighborhood(t, PointSet(), Dyadic(9, 0)).empty());
    REQUIRE(tunnel_neighborhood(t, PointSet::of({0}), Dyadic(1, 0)).empty());
    REQUIRE(tunnel_neighborhood(t, PointSet::of({0}), Dyadic(3, 1)) == PointSet::of({2}));
    REQUIRE(tunnel_neighborhood(t, PointSet::of({0}), Dyadic(3, 0)) == PointSet::of({2, 4}));
    REQUIRE(tunnel_neighborhood(t, PointSet::of({2}), Dyadic(3, 0)) == PointSet::of({0}));
}

TEST_CASE("constructors build valid systems") {
    gen::Rng rng(7302);
    for (int it = 0; it < 40; ++it) {
        std::vector<int> sizes;
        int blocks = gen::pick(rng, 1, 5);
        for (int i = 0; i < blocks; ++i) sizes.push_back(gen::pick(rng, 1, 2));
        ExtGauge rho = gen::random_block_gauge(rng, sizes);
        Partition part = crevasse_partition(rho);
        TunnelSystem chain = make_chain_tunnels(part);
        TunnelSystem star = make_star_tunnels(part);
        if (blocks == 1) {
            REQUIRE(chain.empty());
            REQUIRE(star.empty());
            continue;
        }
        REQUIRE(static_cast<int>(chain.tunnels.size()) == blocks - 1);
        REQUIRE(chain.lambda0() == Dyadic(1, 0));
        REQUIRE(star.lambda0() == Dyadic(1, 0));
        REQUIRE(validate_tunnel_system(rho, chain).pass);
        REQUIRE(validate_tunnel_system(rho, star).pass);
        if (blocks == 4) {
            std::vector<Dyadic> want{Dyadic(1, 0), Dyadic(2, 0), Dyadic(3, 0)};
            std::vector<Dyadic> got = star.lengths;
            std::sort(got.begin(), got.end());
            REQUIRE(got == want);
        }
    }
}

TEST_CASE("saturation under a block swap takes orbit minima") {
    // blocks {0,1} and {2,3}; swap the blocks wholesale
    SpaceInstance inst = gen::discrete_space(4);
    ExtGauge rho = two_blocks(Dyadic(1, 1), Dyadic(1, 1));
    PartialPerm swap_blocks = PartialPerm::identity(4);
    swap_blocks.img = {2, 3, 0, 1};
    GroupAction ga = enumerate_group(inst, {swap_blocks});

    TunnelSystem t;
    t.add(0, 2, Dyadic(3, 0));
    TunnelSystem gt = g_saturate_tunnels(inst, ga, rho, t);
    // the image of {0,2} under the swap is {2,0}: same pair, one tunnel
    REQUIRE(gt.tunnels.size() == 1);
    REQUIRE(gt.lengths[0] == Dyadic(3, 0));

    TunnelSystem t2;
    t2.add(0, 3, Dyadic(3, 0));  // maps to {2,1}
    TunnelSystem gt2 = g_saturate_tunnels(inst, ga, rho, t2);
    REQUIRE(gt2.tunnels.size() == 2);
    REQUIRE(is_invariant_tunnels(ga, gt2).pass);
    REQUIRE(g_saturate_tunnels(inst, ga, rho, gt2) == gt2);

    // trivial group: unchanged
    REQUIRE(g_saturate_tunnels(inst, trivial_group(inst), rho, t) == t);
}

TEST_CASE("saturation requires an invariant gauge") {
    SpaceInstance inst = gen::discrete_space(4);
    ExtGauge rho = two_blocks(Dyadic(1, 1), Dyadic(1, 2));  // blocks differ
    PartialPerm swap_blocks = PartialPerm::identity(4);
    swap_blocks.img = {2, 3, 0, 1};
    GroupAction ga = enumerate_group(inst, {swap_blocks});
    TunnelSystem t;
    t.add(0, 2, Dyadic(3, 0));
    REQUIRE_THROWS_AS(g_saturate_tunnels(inst, ga, rho, t), Error);
}

TEST_CASE("properness transfer and its witnesses") {
    // hub tunnels with constant length over five blocks, blocks bounded
    gen::Rng rng(7303);
    ExtGauge rho = gen::random_block_gauge(rng, {2, 2, 2, 2, 2});
    std::vector<PointSet> gens;
    for (int i = 0; i < 5; ++i) gens.push_back(PointSet::of({2 * i, 2 * i + 1}));
    SpaceInstance inst(10, [] {
        std::vector<PointSet> b;
        for (int i = 0; i < 10; ++i) b.push_back(PointSet::single(i));
        return b;
    }(), Bornology::generated(gens));
    Partition part = crevasse_partition(rho);
    TunnelSystem t;
    auto reps = block_representatives(part);
    for (size_t i = 1; i < reps.size(); ++i) t.add(reps[0], reps[i], Dyadic(1, 0));
    t.canonicalize();
    ExtGauge sigma = tunnel_distance(inst, rho, t);
    PropernessTransferReport rep = verify_theorem_3_7(inst, rho, t, sigma);
    REQUIRE(rep.rho_proper.pass);
    REQUIRE_FALSE(rep.tunnels_proper.pass);
    REQUIRE_FALSE(rep.sigma_proper.pass);
    REQUIRE(rep.biconditional);
    REQUIRE(rep.inclusion_pass);
    REQUIRE(rep.converse_pass);
}
