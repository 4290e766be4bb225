#include <catch2/catch_amalgamated.hpp>

#include "covergauge/invariance.hpp"
#include "support/generators.hpp"

using namespace covergauge;

namespace {
Cover cov(std::vector<std::vector<int>> sets) {
    std::vector<PointSet> m;
    for (auto& s : sets) m.push_back(PointSet::of(s));
    return Cover(m);
}

ExtGauge discrete_metric(int n) {
    ExtGauge g(n);
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) g.set(x, y, ExtDyadic(Dyadic(1, 0)));
    return g;
}
}  // namespace

TEST_CASE("gauge invariance witnesses") {
    SpaceInstance inst = gen::discrete_space(4);
    gen::Rng rng0(1);
    REQUIRE(is_invariant_gauge(trivial_group(inst), gen::random_line_gauge(rng0, 4)).pass);
    gen::Rng rng(7401);
    for (int it = 0; it < 20; ++it) {
        GroupAction ga = gen::random_small_group(rng, inst);
        REQUIRE(is_invariant_gauge(ga, discrete_metric(4)).pass);
    }
    // perturb one orbit pair
    PartialPerm swap01 = PartialPerm::identity(4);
    std::swap(swap01.img[0], swap01.img[1]);
    GroupAction ga = enumerate_group(inst, {swap01});
    ExtGauge g = discrete_metric(4);
    g.set(0, 2, ExtDyadic(Dyadic(7, 0)));
    Verdict v = is_invariant_gauge(ga, g);
    REQUIRE_FALSE(v.pass);
    REQUIRE_FALSE(v.witness.empty());
}

TEST_CASE("cover invariance and saturation") {
    SpaceInstance inst = gen::discrete_space(4);
    PartialPerm s12 = PartialPerm::identity(4);
    std::swap(s12.img[1], s12.img[2]);
    GroupAction ga = enumerate_group(inst, {s12});

    Cover singles = cov({{0}, {1}, {2}, {3}});
    REQUIRE(is_invariant_cover(ga, singles).pass);

    Cover pairs = cov({{0, 1}, {2, 3}});
    Verdict v = is_invariant_cover(ga, pairs);
    REQUIRE_FALSE(v.pass);
    REQUIRE(v.witness.find("{0,2}") != std::string::npos);

    Cover sat = saturate_cover(ga, pairs);
    REQUIRE(is_invariant_cover(ga, sat).pass);
    REQUIRE(saturate_cover(ga, sat).members == sat.members);

    // adding the missing translate of a singleton
    PartialPerm s01 = PartialPerm::identity(4);
    std::swap(s01.img[0], s01.img[1]);
    GroupAction ga01 = enumerate_group(inst, {s01});
    Cover c = cov({{0}, {2, 3}, {1, 2}});
    Cover sat01 = saturate_cover(ga01, c);
    REQUIRE(sat01.has_member(PointSet::of({1})));
}

TEST_CASE("equiregularity on discrete instances via singletons") {
    gen::Rng rng(7402);
    for (int it = 0; it < 25; ++it) {
        SpaceInstance inst = gen::discrete_space(gen::pick(rng, 2, 7));
        GroupAction ga = gen::random_small_group(rng, inst);
        EquiregResult r = equiregularity_check(inst, ga);
        REQUIRE(r.status == Tri::yes);
        for (const auto& [key, entry] : r.witness) {
            REQUIRE(entry.v == PointSet::single(key.first));
            for (int y = 0; y < inst.n; ++y)
                REQUIRE(entry.n_of[static_cast<size_t>(y)] == PointSet::single(y));
        }
    }
}

TEST_CASE("equiregularity on partition spaces with block permutations") {
    gen::Rng rng(7403);
    for (int it = 0; it < 20; ++it) {
        int nb = gen::pick(rng, 2, 3), bs = 2;
        std::vector<PointSet> blocks;
        for (int i = 0; i < nb; ++i) blocks.push_back(PointSet::of({2 * i, 2 * i + 1}));
        SpaceInstance inst(nb * bs, blocks);
        GroupAction ga = gen::random_block_group(rng, inst, bs, true);
        REQUIRE(equiregularity_check(inst, ga).status == Tri::yes);
    }
}

TEST_CASE("non-regular instances are never equiregular") {
    SpaceInstance sierpinski(2, {PointSet::of({0}), PointSet::of({0, 1})});
    EquiregResult r = equiregularity_check(sierpinski, trivial_group(sierpinski));
    REQUIRE(r.status == Tri::no);
    REQUIRE(r.fail_x == 0);
}

TEST_CASE("near-properness over restricted bornologies") {
    // all of Sym({1..n-1}) moves 1 everywhere: union of translates is X
    int n = 5;
    std::vector<PartialPerm> gens;
    for (int j = 2; j < n; ++j) {
        PartialPerm g = PartialPerm::identity(n);
        std::swap(g.img[1], g.img[static_cast<size_t>(j)]);
        gens.push_back(g);
    }
    SpaceInstance inst = gen::discrete_space(n, Bornology::generated({PointSet::of({0, 1})}));
    GroupAction ga = enumerate_group(inst, gens, 64);
    NearProperResult r = near_properness_check(inst, ga);
    REQUIRE(r.status == Tri::no);
    REQUIRE(r.fail_a == PointSet::of({0, 1}));
    REQUIRE(r.fail_union == inst.all_points());

    SpaceInstance full = gen::discrete_space(n);
    REQUIRE(near_properness_check(full, ga).status == Tri::yes);
}

TEST_CASE("invariant star refinement verifies its own output") {
    gen::Rng rng(7404);
    for (int it = 0; it < 25; ++it) {
        SpaceInstance inst = gen::discrete_space(gen::pick(rng, 2, 7));
        GroupAction ga = gen::random_small_group(rng, inst);
        EquiregResult w = equiregularity_check(inst, ga);
        REQUIRE(w.status == Tri::yes);
        QuotientSpace q = orbit_quotient(inst, ga);
        Cover u = saturate_cover(ga, gen::random_cover(rng, inst));
        Cover out = stone_star_refine(inst, ga, q, u, w);
        REQUIRE(is_star_refinement(out, u, inst.n).pass);
        REQUIRE(is_invariant_cover(ga, out).pass);
        Cover out2 = stone_star_refine(inst, ga, q, out, w);
        REQUIRE(k_refines(out2, u, 4).pass);
    }
}

TEST_CASE("star refinement of the whole-space cover is immediate") {
    SpaceInstance inst = gen::discrete_space(3);
    PartialPerm s01 = PartialPerm::identity(3);
    std::swap(s01.img[0], s01.img[1]);
    GroupAction ga = enumerate_group(inst, {s01});
    EquiregResult w = equiregularity_check(inst, ga);
    QuotientSpace q = orbit_quotient(inst, ga);
    Cover whole = cov({{0, 1, 2}});
    Cover out = stone_star_refine(inst, ga, q, whole, w);
    REQUIRE(is_star_refinement(out, whole, inst.n).pass);
}

TEST_CASE("star refinement requires an invariant input cover") {
    SpaceInstance inst = gen::discrete_space(4);
    PartialPerm s12 = PartialPerm::identity(4);
    std::swap(s12.img[1], s12.img[2]);
    GroupAction ga = enumerate_group(inst, {s12});
    EquiregResult w = equiregularity_check(inst, ga);
    QuotientSpace q = orbit_quotient(inst, ga);
    REQUIRE_THROWS_AS(stone_star_refine(inst, ga, q, cov({{0, 1}, {2, 3}}), w), Error);
}

TEST_CASE("exhaustion decomposition formulas and failure modes") {
    SpaceInstance inst = gen::discrete_space(4);
    ExhaustionDecomposition one = exhaustion_decomposition(inst, {inst.all_points()});
    REQUIRE(one.k == std::vector<PointSet>{inst.all_points()});
    REQUIRE(one.l == std::vector<PointSet>{inst.all_points()});

    // nested intervals on a path
    std::vector<PointSet> d{PointSet::of({0, 1}), PointSet::of({0, 1, 2}),
                            PointSet::of({0, 1, 2, 3})};
    ExhaustionDecomposition dec = exhaustion_decomposition(inst, d);
    REQUIRE(verify_decomposition(inst, dec).pass);
    REQUIRE(dec.k[1] == PointSet::of({2}));
    REQUIRE(dec.k[2] == PointSet::of({3}));

    // a chain that is not increasing through interiors
    SpaceInstance coarse(3, {PointSet::of({0, 1}), PointSet::of({2}),
                             PointSet::of({0, 1, 2})});
    REQUIRE_THROWS_AS(
        exhaustion_decomposition(coarse, {PointSet::of({0}), coarse.all_points()}), Error);
}

TEST_CASE("decomposition invariants on random exhaustions") {
    gen::Rng rng(7405);
    for (int it = 0; it < 60; ++it) {
        SpaceInstance inst = gen::random_space(rng, gen::pick(rng, 2, 8));
        auto d = gen::random_exhaustion(rng, inst);
        ExhaustionDecomposition dec = exhaustion_decomposition(inst, d);
        REQUIRE(verify_decomposition(inst, dec).pass);
    }
}

TEST_CASE("proper invariant covers from exhaustions") {
    // two orbits, two-block exhaustion, full bornology
    SpaceInstance inst = gen::discrete_space(4);
    PartialPerm both = PartialPerm::identity(4);
    both.img = {1, 0, 3, 2};
    GroupAction ga = enumerate_group(inst, {both});
    QuotientSpace q = orbit_quotient(inst, ga);
    std::vector<PointSet> d{PointSet::of({0, 1}), inst.all_points()};
    Cover v = proper_invariant_cover(inst, ga, q, d);
    REQUIRE(is_invariant_cover(ga, v).pass);
    REQUIRE(is_proper_cover(inst, v).pass);
    REQUIRE(v.covers(inst));
}

TEST_CASE("proper invariant cover fails without near-properness") {
    int n = 5;
    std::vector<PartialPerm> gens;
    for (int j = 2; j < n; ++j) {
        PartialPerm g = PartialPerm::identity(n);
        std::swap(g.img[1], g.img[static_cast<size_t>(j)]);
        gens.push_back(g);
    }
    SpaceInstance inst = gen::discrete_space(n, Bornology::generated({PointSet::of({0, 1})}));
    GroupAction ga = enumerate_group(inst, gens, 64);
    QuotientSpace q = orbit_quotient(inst, ga);
    try {
        proper_invariant_cover(inst, ga, q, {inst.all_points()});
        FAIL("expected NOT_NEARLY_PROPER");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::not_nearly_proper);
    }
}

TEST_CASE("metrization on the discrete four point instance with all swaps") {
    SpaceInstance inst = gen::discrete_space(4);
    PartialPerm s01 = PartialPerm::identity(4), s12 = PartialPerm::identity(4),
                s23 = PartialPerm::identity(4);
    std::swap(s01.img[0], s01.img[1]);
    std::swap(s12.img[1], s12.img[2]);
    std::swap(s23.img[2], s23.img[3]);
    GroupAction ga = enumerate_group(inst, {s01, s12, s23}, 64);
    REQUIRE(ga.complete);
    REQUIRE(ga.elements.size() == 24);
    GaugeFamily fam = metrize(inst, ga, default_targets(inst));
    REQUIRE(fam.separating);
    REQUIRE(fam.gauges.size() == 4);
    for (size_t i = 0; i < fam.gauges.size(); ++i) {
        REQUIRE(is_invariant_gauge(ga, fam.gauges[i]).pass);
        PointSet ball = fam.gauges[i].ball_lt(static_cast<int>(i), ExtDyadic(Dyadic(1, 1)));
        REQUIRE(ball.subset_of(PointSet::single(static_cast<int>(i))));
    }
    SingleMetric sm = single_metrize(inst, fam);
    REQUIRE(gauge_axioms_check(inst, sm.metric, true).pass);
    REQUIRE(is_invariant_gauge(ga, sm.metric).pass);
    REQUIRE(sm.equivalent.pass);
}

TEST_CASE("metrization with the trivial group is plain metrization") {
    gen::Rng rng(7406);
    for (int it = 0; it < 10; ++it) {
        SpaceInstance inst = gen::discrete_space(gen::pick(rng, 2, 6));
        GroupAction ga = trivial_group(inst);
        GaugeFamily fam = metrize(inst, ga, default_targets(inst));
        REQUIRE(fam.separating);
    }
}

TEST_CASE("metrization refuses non-equiregular instances") {
    SpaceInstance sierpinski(2, {PointSet::of({0}), PointSet::of({0, 1})});
    try {
        metrize(sierpinski, trivial_group(sierpinski), default_targets(sierpinski));
        FAIL("expected NOT_EQUIREGULAR");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::not_equiregular);
    }
}

TEST_CASE("proper metrization on a compact instance") {
    SpaceInstance inst = gen::discrete_space(4);
    PartialPerm both = PartialPerm::identity(4);
    both.img = {1, 0, 3, 2};
    GroupAction ga = enumerate_group(inst, {both});
    GaugeFamily p = metrize(inst, ga, default_targets(inst));
    GaugeFamily fam = proper_metrize(inst, ga, {inst.all_points()}, p);
    REQUIRE(fam.gauges.size() == p.gauges.size());
    for (const auto& g : fam.gauges) {
        REQUIRE(is_proper_gauge(inst, g).pass);
        REQUIRE(is_invariant_gauge(ga, g).pass);
    }
    REQUIRE(fam.separating);
}

TEST_CASE("single metric from one gauge is its halving") {
    SpaceInstance inst = gen::discrete_space(3);
    GaugeFamily fam;
    fam.gauges.push_back(discrete_metric(3));
    fam.tags.push_back("d");
    fam.evaluate_separating();
    SingleMetric sm = single_metrize(inst, fam);
    REQUIRE(sm.metric.at(0, 1) == ExtDyadic(Dyadic(1, 1)));
    REQUIRE(sm.equivalent.pass);

    // with a proper member the combination stays proper
    ExtGauge prop = discrete_metric(3);
    SingleMetric smp = single_metrize(inst, fam, &prop);
    REQUIRE(is_proper_gauge(inst, smp.metric).pass);
}

TEST_CASE("single metric requires separation") {
    SpaceInstance inst = gen::discrete_space(3);
    GaugeFamily fam;
    fam.gauges.push_back(ExtGauge(3));  // zero gauge
    fam.tags.push_back("z");
    fam.evaluate_separating();
    REQUIRE_THROWS_AS(single_metrize(inst, fam), Error);
}

TEST_CASE("triple ball bound for invariant finite gauges") {
    SpaceInstance inst = gen::discrete_space(5);
    gen::Rng rng(7407);
    GroupAction ga = gen::random_small_group(rng, inst);
    ConverseNearProperReport r = verify_converse_near_proper(inst, ga, discrete_metric(5));
    REQUIRE(r.pass);
}
