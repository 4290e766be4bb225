#include <catch2/catch_amalgamated.hpp>

#include "covergauge/builtins.hpp"

using namespace covergauge;

TEST_CASE("all built-ins reproduce their documented verdicts") {
    for (const auto& name : builtin_names()) {
        Builtin b = load_builtin(name);
        for (const auto& c : b.checks) {
            auto [pass, detail] = c.run(b.bundle);
            INFO(name << " / " << c.name << ": " << detail);
            REQUIRE(pass == c.expected_pass);
        }
    }
}

TEST_CASE("unknown built-in names are rejected") {
    REQUIRE_THROWS_AS(load_builtin("ex9.9"), Error);
    REQUIRE(is_builtin_name("ex1.1"));
    REQUIRE_FALSE(is_builtin_name("nope"));
}

TEST_CASE("compactified shift closures") {
    Builtin b = load_builtin("ex1.2-analogue");
    const SpaceInstance& inst = b.bundle.inst;
    // middle orbit points are closed and isolated
    REQUIRE(inst.closure(PointSet::of({3})) == PointSet::of({3}));
    REQUIRE(inst.is_open(PointSet::of({3})));
    // the set of all orbit points accumulates at both compactification points
    PointSet orbit;
    for (int i = 1; i <= 6; ++i) orbit.add(i);
    REQUIRE(inst.closure(orbit) == inst.all_points());
}

TEST_CASE("compactified shift separation report") {
    Builtin b = load_builtin("ex1.2-analogue");
    // non-discrete finite spaces cannot be Hausdorff; the compactification
    // points witness it against their neighboring orbit points
    REQUIRE_FALSE(hausdorff_check(b.bundle.inst).pass);
    REQUIRE_FALSE(regularity_check(b.bundle.inst).pass);
}

TEST_CASE("shift group enumeration closes under the cap") {
    Builtin b = load_builtin("ex1.2-analogue");
    REQUIRE(b.bundle.group->complete);
    REQUIRE_FALSE(b.bundle.group->all_total);
}

TEST_CASE("translation window near-properness detail") {
    Builtin b = load_builtin("ex1.3-window");
    HorizonNearProperReport r = near_properness_horizon(*b.bundle.horizons);
    REQUIRE(r.status == Tri::yes);
    REQUIRE(r.pending_pairs > 0);  // the largest pairs never resolve in-window
}

TEST_CASE("ray window near-properness failure witness") {
    Builtin b = load_builtin("ex1.1");
    HorizonNearProperReport r = near_properness_horizon(*b.bundle.horizons);
    REQUIRE(r.status == Tri::no);
    REQUIRE(r.witness.find("A={0,1}") != std::string::npos);
}
