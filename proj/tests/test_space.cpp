#include <catch2/catch_amalgamated.hpp>

#include "covergauge/space.hpp"
#include "support/generators.hpp"

using namespace covergauge;

namespace {
SpaceInstance three_discrete() {
    return SpaceInstance(3, {PointSet::of({0}), PointSet::of({1}), PointSet::of({2})});
}
}  // namespace

TEST_CASE("validation accepts and rejects per rule") {
    ValidationReport r = validate_instance(three_discrete());
    REQUIRE(r.ok);
    REQUIRE(r.discrete);

    SpaceInstance uncovered(3, {PointSet::of({0, 1})});
    r = validate_instance(uncovered);
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.rejected_rule == "basis_coverage");
    REQUIRE(r.witness.find("2") != std::string::npos);

    SpaceInstance with_bornology(3,
                                 {PointSet::of({0}), PointSet::of({1}), PointSet::of({2}),
                                  PointSet::of({0, 1, 2})},
                                 Bornology::generated({PointSet::of({0, 1})}));
    r = validate_instance(with_bornology);
    REQUIRE(r.ok);
    REQUIRE_FALSE(with_bornology.bornology.full);

    // a family whose pairwise meet is not a union of members is not a basis
    SpaceInstance bad(3, {PointSet::of({0, 1}), PointSet::of({1, 2}), PointSet::of({0, 2})});
    r = validate_instance(bad);
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.rejected_rule == "basis_not_intersection_stable");
}

TEST_CASE("closure on the discrete topology is the identity") {
    SpaceInstance inst = three_discrete();
    REQUIRE(inst.closure(PointSet::of({1})) == PointSet::of({1}));
    REQUIRE(inst.closure(PointSet()) == PointSet());
}

TEST_CASE("closure is idempotent, monotone, extensive, additive") {
    gen::Rng rng(7001);
    for (int it = 0; it < 80; ++it) {
        SpaceInstance inst = gen::random_space(rng, gen::pick(rng, 2, 8));
        PointSet a = gen::random_subset(rng, inst.n);
        PointSet b = gen::random_subset(rng, inst.n);
        PointSet ca = inst.closure(a);
        REQUIRE(a.subset_of(ca));
        REQUIRE(inst.closure(ca) == ca);
        REQUIRE((inst.closure(a | b)) == (ca | inst.closure(b)));
        if (a.subset_of(b)) REQUIRE(ca.subset_of(inst.closure(b)));
    }
}

TEST_CASE("group enumeration closes and respects the cap") {
    SpaceInstance inst = three_discrete();
    GroupAction only_id = enumerate_group(inst, {PartialPerm::identity(3)});
    REQUIRE(only_id.elements.size() == 1);
    REQUIRE(only_id.complete);

    SpaceInstance four = gen::discrete_space(4);
    PartialPerm s01 = PartialPerm::identity(4), s23 = PartialPerm::identity(4);
    std::swap(s01.img[0], s01.img[1]);
    std::swap(s23.img[2], s23.img[3]);
    GroupAction two_swaps = enumerate_group(four, {s01, s23});
    REQUIRE(two_swaps.elements.size() == 4);
    REQUIRE(two_swaps.complete);

    SpaceInstance eight = gen::discrete_space(8);
    PartialPerm cyc = PartialPerm::identity(8);
    for (int i = 0; i < 8; ++i) cyc.img[static_cast<size_t>(i)] = (i + 1) % 8;
    GroupAction capped = enumerate_group(eight, {cyc}, 5);
    REQUIRE(capped.elements.size() == 5);
    REQUIRE_FALSE(capped.complete);
    REQUIRE_FALSE(capped.qualifier().empty());
}

TEST_CASE("generators must be homeomorphisms") {
    // swap an isolated point with a non-isolated one
    SpaceInstance inst(2, {PointSet::of({0}), PointSet::of({0, 1})});
    PartialPerm swap01 = PartialPerm::identity(2);
    std::swap(swap01.img[0], swap01.img[1]);
    REQUIRE_THROWS_AS(enumerate_group(inst, {swap01}), Error);
}

TEST_CASE("enumerated elements map opens to opens both ways") {
    gen::Rng rng(7002);
    for (int it = 0; it < 40; ++it) {
        SpaceInstance inst = gen::discrete_space(gen::pick(rng, 2, 7));
        GroupAction ga = gen::random_small_group(rng, inst);
        for (const auto& g : ga.elements) {
            PartialPerm gi = g.inverse();
            for (const auto& b : inst.basis) {
                REQUIRE(inst.is_open(g.image(b)));
                REQUIRE(inst.is_open(gi.image(b)));
            }
        }
    }
}

TEST_CASE("orbit quotient partitions and projects opens") {
    SpaceInstance four = gen::discrete_space(4);
    GroupAction triv = trivial_group(four);
    QuotientSpace q0 = orbit_quotient(four, triv);
    REQUIRE(q0.orbit_count == 4);

    PartialPerm both = PartialPerm::identity(4);
    std::swap(both.img[0], both.img[1]);
    std::swap(both.img[2], both.img[3]);
    QuotientSpace q = orbit_quotient(four, enumerate_group(four, {both}));
    REQUIRE(q.orbit_count == 2);
    REQUIRE(q.orbits[0] == PointSet::of({0, 1}));
    REQUIRE(q.orbits[1] == PointSet::of({2, 3}));
}

TEST_CASE("quotient-open criterion is exact") {
    gen::Rng rng(7003);
    for (int it = 0; it < 60; ++it) {
        SpaceInstance inst = gen::random_space(rng, gen::pick(rng, 2, 7));
        GroupAction ga = inst.is_discrete() ? gen::random_small_group(rng, inst)
                                            : trivial_group(inst);
        QuotientSpace q = orbit_quotient(inst, ga);
        for (int trial = 0; trial < 8; ++trial) {
            PointSet a = gen::random_subset(rng, q.quotient.n);
            REQUIRE(quotient_open_exact(inst, q, a));
        }
    }
}

TEST_CASE("bounded sets are subset-closed; directed families are union-closed") {
    Bornology b = Bornology::generated({PointSet::of({0, 1}), PointSet::of({0, 1, 2})});
    REQUIRE(b.directed());
    REQUIRE(b.bounded(PointSet::of({1})));
    REQUIRE(b.bounded(PointSet::of({0, 2}) | PointSet::of({1})));
    REQUIRE_FALSE(b.bounded(PointSet::of({3})));

    Bornology nd = Bornology::generated({PointSet::of({0, 1}), PointSet::of({2, 3})});
    REQUIRE_FALSE(nd.directed());

    gen::Rng rng(7004);
    for (int it = 0; it < 40; ++it) {
        // nested chains are directed: unions of bounded sets stay bounded
        int n = gen::pick(rng, 3, 8);
        PointSet g1 = gen::random_subset(rng, n, 1);
        PointSet g2 = g1 | gen::random_subset(rng, n);
        Bornology nested = Bornology::generated({g1, g2});
        PointSet a = gen::random_subset(rng, n) & g2;
        PointSet c = gen::random_subset(rng, n) & g1;
        if (nested.bounded(a) && nested.bounded(c)) REQUIRE(nested.bounded(a | c));
        if (c.subset_of(a) && nested.bounded(a)) REQUIRE(nested.bounded(c));
    }
}

TEST_CASE("separation hypotheses") {
    HypothesisReport hd = hypothesis_report(three_discrete(),
                                            orbit_quotient(three_discrete(),
                                                           trivial_group(three_discrete())));
    REQUIRE(hd.x_hausdorff.pass);
    REQUIRE(hd.x_regular.pass);
    REQUIRE(hd.paracompact);

    SpaceInstance sierpinski(2, {PointSet::of({0}), PointSet::of({0, 1})});
    SeparationVerdict h = hausdorff_check(sierpinski);
    REQUIRE_FALSE(h.pass);
    REQUIRE(h.witness == "points 0,1");
    SeparationVerdict r = regularity_check(sierpinski);
    REQUIRE_FALSE(r.pass);  // no closed neighborhood of 0 inside {0}
}

TEST_CASE("partial maps compose with window semantics") {
    PartialPerm shift;
    shift.img = {1, 2, -1};
    REQUIRE(shift.injective());
    REQUIRE_FALSE(shift.total());
    PartialPerm twice = PartialPerm::compose(shift, shift);
    REQUIRE(twice.img == std::vector<int>({2, -1, -1}));
    PartialPerm inv = shift.inverse();
    REQUIRE(inv.img == std::vector<int>({-1, 0, 1}));
    REQUIRE(twice.subsumed_by(shift) == false);
    PartialPerm idlike;
    idlike.img = {0, 1, -1};
    REQUIRE(idlike.subsumed_by(PartialPerm::identity(3)));
}

TEST_CASE("total core extracts the total subgroup") {
    SpaceInstance inst = gen::discrete_space(3);
    PartialPerm shift;
    shift.img = {1, 2, -1};
    GroupAction ga = enumerate_group(inst, {shift}, 64);
    GroupAction core = total_core(ga);
    REQUIRE(core.elements.size() == 1);
    REQUIRE(core.elements[0].total());
}
