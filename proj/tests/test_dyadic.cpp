#include <catch2/catch_amalgamated.hpp>

#include "covergauge/dyadic.hpp"
#include "covergauge/point_set.hpp"

using namespace covergauge;

TEST_CASE("dyadic normalization and arithmetic") {
    REQUIRE(Dyadic(4, 3).str() == "1/2^1");
    REQUIRE(Dyadic(0, 5).str() == "0");
    REQUIRE(Dyadic(6, 0).str() == "6");
    REQUIRE((Dyadic(1, 1) + Dyadic(1, 2)).str() == "3/2^2");
    REQUIRE(Dyadic(1, 1) + Dyadic(5, 0) + Dyadic(1, 2) == Dyadic(23, 2));
    REQUIRE(Dyadic(3, 2) - Dyadic(1, 2) == Dyadic(1, 1));
    REQUIRE(Dyadic(1, 1).scaled_by(3) == Dyadic(3, 1));
    REQUIRE(Dyadic(1, 0).halved(2) == Dyadic(1, 2));
    REQUIRE(Dyadic(1, 3) < Dyadic(1, 2));
    REQUIRE_THROWS_AS(Dyadic(1, 2) - Dyadic(1, 1), std::invalid_argument);
}

TEST_CASE("extended values absorb infinity") {
    ExtDyadic inf = ExtDyadic::infinity();
    ExtDyadic half{Dyadic(1, 1)};
    REQUIRE((inf + half).is_inf());
    REQUIRE(half < inf);
    REQUIRE_FALSE(inf < inf);
    REQUIRE(ExtDyadic::min(inf, half) == half);
    REQUIRE(inf.str() == "inf");
}

TEST_CASE("value strings parse exactly") {
    REQUIRE(parse_ext_dyadic("inf")->is_inf());
    REQUIRE(*parse_ext_dyadic("0") == ExtDyadic::zero());
    REQUIRE(*parse_ext_dyadic("5") == ExtDyadic(Dyadic(5, 0)));
    REQUIRE(*parse_ext_dyadic("3/8") == ExtDyadic(Dyadic(3, 3)));
    REQUIRE(*parse_ext_dyadic("3/2^3") == ExtDyadic(Dyadic(3, 3)));
    REQUIRE(*parse_ext_dyadic("23/4") == ExtDyadic(Dyadic(23, 2)));
    REQUIRE_FALSE(parse_ext_dyadic("1/3"));
    REQUIRE_FALSE(parse_ext_dyadic("x"));
    REQUIRE_FALSE(parse_ext_dyadic(""));
    for (const char* s : {"0", "7", "3/2^3", "inf", "23/2^2"})
        REQUIRE(parse_ext_dyadic(s)->str() == s);
}

TEST_CASE("point set operations") {
    PointSet a = PointSet::of({0, 2, 5});
    REQUIRE(a.size() == 3);
    REQUIRE(a.contains(2));
    REQUIRE_FALSE(a.contains(1));
    REQUIRE(a.subset_of(PointSet::full(6)));
    REQUIRE((a & PointSet::of({2, 3})) == PointSet::of({2}));
    REQUIRE((a - PointSet::of({0})) == PointSet::of({2, 5}));
    REQUIRE(a.complement(6) == PointSet::of({1, 3, 4}));
    REQUIRE(a.str() == "{0,2,5}");
    REQUIRE(PointSet().empty());
}

TEST_CASE("set order is size then lexicographic") {
    REQUIRE(set_order(PointSet::of({1}), PointSet::of({0, 1})));
    REQUIRE(set_order(PointSet::of({0, 3}), PointSet::of({1, 2})));
    REQUIRE(set_order(PointSet::of({0, 1}), PointSet::of({0, 2})));
    REQUIRE_FALSE(set_order(PointSet::of({0, 2}), PointSet::of({0, 2})));
}
