#include <doctest.h>

#include <cmath>

#include "coarsedim/fixtures.hpp"
#include "coarsedim/io.hpp"
#include "support/support.hpp"

using namespace coarsedim;
using namespace coarsedim::testing;

namespace {

Index at(const FiniteMetricSpace& s, const std::string& label) {
    auto i = s.find_label(label);
    REQUIRE(i.has_value());
    return *i;
}

}  // namespace

TEST_SUITE("fixtures") {

TEST_CASE("progression with two levels") {
    const auto s = progression(2);
    REQUIRE(s.size() == 4);
    const Index o = at(s, "0");
    CHECK(s(o, at(s, "x(1,1)")) == 1.0);
    CHECK(s(o, at(s, "x(2,1)")) == std::ldexp(1.0, -4) + std::ldexp(1.0, -8));
    CHECK(s(o, at(s, "x(2,2)")) == std::ldexp(1.0, -4) + std::ldexp(2.0, -8));
    CHECK(s(at(s, "x(2,1)"), at(s, "x(2,2)")) == std::ldexp(1.0, -8));
}

TEST_CASE("progression truncations are nested") {
    const auto shallow = progression(3), deep = progression(5);
    Subset keep;
    for (const auto& label : shallow.labels()) keep.push_back(at(deep, label));
    const auto restricted = deep.restrict_to(make_subset(keep));
    for (Index i = 0; i < shallow.size(); ++i) {
        for (Index j = 0; j < shallow.size(); ++j) {
            CHECK(restricted(at(restricted, shallow.label(i)), at(restricted, shallow.label(j))) == shallow(i, j));
        }
    }
}

TEST_CASE("two-distance fixture") {
    const auto [d1, d2] = two_distance(3);
    CHECK(d1.size() == 9);
    CHECK(d1(at(d1, "p(2,0)"), at(d1, "p(2,1)")) == 0.25);
    CHECK(d2(at(d2, "p(2,0)"), at(d2, "p(2,1)")) == 0.125);
    const auto [e1, e2] = two_distance(5);
    for (Index i = 0; i < e1.size(); ++i) {
        for (Index j = 0; j < e1.size(); ++j) {
            CHECK(e1(i, j) * e1(i, j) <= e2(i, j) * (1.0 + 1e-12));
            CHECK(e2(i, j) <= e1(i, j));
        }
    }
}

TEST_CASE("grid fixture") {
    GridParams g;
    g.d = 1;
    g.n = 2;
    const auto two = grid(g);
    REQUIRE(two.size() == 2);
    CHECK(two(0, 1) == 1.0);
    GridParams h;
    h.n = 3;
    h.metric = CoordMetric::L2;
    const auto sq = grid(h);
    CHECK(sq(at(sq, "g(0,0)"), at(sq, "g(2,2)")) == doctest::Approx(std::sqrt(2.0)));
    h.cap = 8;
    CHECK_THROWS_AS(grid(h), Error);
}

TEST_CASE("snowflake path") {
    const auto s = snowflake_path(5, 0.5);
    CHECK(s(0, 4) == 1.0);
    CHECK(s(0, 1) == doctest::Approx(0.5));
}

TEST_CASE("cluster fixtures") {
    const auto e = circle_clusters(3, 1);
    CHECK(e.size() == 1 + 1 + 2 + 3);
    const auto h = hypercube_clusters(3, 2);
    CHECK(h.size() == 1 + 2 * 2 + 2 * 4 + 8 * 2);
    // {0,1}^3 scaled by 2^-9 around the offset 2^-9 e1.
    Subset level3;
    for (Index i = 0; i < hypercube_clusters(3, 1).size(); ++i) {
        if (hypercube_clusters(3, 1).label(i).rfind("H(3;", 0) == 0) level3.push_back(i);
    }
    const auto cube = hypercube_clusters(3, 1).restrict_to(level3);
    CHECK(cube.size() == 8);
    for (Index i = 0; i < 8; ++i) {
        for (Index j = 0; j < 8; ++j) {
            if (i != j) CHECK(cube(i, j) == std::ldexp(1.0, -9));
        }
    }
    CHECK_THROWS_AS(hypercube_clusters(8, 2), Error);
}

TEST_CASE("candidate families") {
    const auto two = candidate_family(FamilyKind::TwoPoint).generator(1.0);
    REQUIRE(two.space.size() == 2);
    CHECK(two.space(0, 1) == 1.0);
    CHECK(two.base == 0);
    CHECK(candidate_family(FamilyKind::TwoPoint).generator(0.0).space.size() == 1);
    const auto sn = candidate_family(FamilyKind::ScaledSn, 4).generator(1.0);
    REQUIRE(sn.space.size() == 4);
    CHECK(sn.space(0, 1) == doctest::Approx(2.0 * std::sin(M_PI / 4.0)));
    const auto cube = candidate_family(FamilyKind::Cube, 2).generator(1.0);
    REQUIRE(cube.space.size() == 4);
    for (Index i = 0; i < 4; ++i) {
        for (Index j = 0; j < 4; ++j) {
            if (i != j) CHECK(cube.space(i, j) == 1.0);
        }
    }
}

TEST_CASE("generation is deterministic") {
    for (FixtureKind kind : {FixtureKind::Progression, FixtureKind::CircleClusters, FixtureKind::HypercubeClusters,
                             FixtureKind::TwoDistance, FixtureKind::Grid, FixtureKind::SnowflakePath}) {
        FixtureSpec fixture;
        fixture.kind = kind;
        fixture.grid.p = 0.5;
        CHECK(space_to_json(generate(fixture)).dump() == space_to_json(generate(fixture)).dump());
    }
}

}  // TEST_SUITE
