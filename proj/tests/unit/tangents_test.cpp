#include <doctest.h>

#include <cmath>

#include "coarsedim/fixtures.hpp"
#include "coarsedim/tangents.hpp"
#include "support/support.hpp"

using namespace coarsedim;
using namespace coarsedim::testing;

namespace {

std::vector<double> t_grid() {
    auto params = geometric_params(1.0 / 64.0, 64.0, 49);
    params.insert(params.begin(), 0.0);
    return params;
}

}  // namespace

TEST_SUITE("tangents") {

TEST_CASE("dilated windows") {
    const auto s = path(5);
    CHECK(dilated_window(s, 2, 1.0, 0.2).space.size() == 5);
    const PointedSpace lone = dilated_window(s, 2, 1.0, 10.0);
    CHECK(lone.space.size() == 1);
    CHECK(lone.base == 0);
    const PointedSpace mid = dilated_window(s, 2, 2.0, 0.4);
    CHECK(mid.space.size() == 3);
    CHECK(mid.base == 1);
    CHECK(mid.space(0, 2) == 4.0);
    CHECK_THROWS_AS(dilated_window(s, 2, 0.0, 0.4), Error);
    CHECK_THROWS_AS(dilated_window(s, 9, 1.0, 0.4), Error);
}

TEST_CASE("progression window at 2^(i^2) shows the i-th cluster at unit scale") {
    const auto s = progression(3);
    const Index o = *s.find_label("0");
    for (int i = 2; i <= 3; ++i) {
        const double lambda = std::ldexp(1.0, i * i);
        const PointedSpace w = dilated_window(s, o, lambda, 0.5);
        std::size_t cluster = 0;
        for (const auto& label : w.space.labels()) {
            if (label.rfind("x(" + std::to_string(i) + ",", 0) == 0) ++cluster;
        }
        CHECK(cluster == static_cast<std::size_t>(i));
        for (Index p = 0; p < w.space.size(); ++p) {
            if (p != w.base && w.space.label(p).rfind("x(" + std::to_string(i) + ",", 0) == 0) {
                CHECK(w.space(w.base, p) == doctest::Approx(1.0).epsilon(0.1));
            }
        }
    }
}

TEST_CASE("window commutes with dilation") {
    const auto p = make_pointed(path(9, 0.5), 4);
    const PointedSpace direct = dilated_window(p, 6.0, 0.3);
    const PointedSpace nested = dilated_window(dilate(p, 2.0), 3.0, 0.3);
    CHECK(direct.space == nested.space);
    CHECK(direct.base == nested.base);
}

TEST_CASE("closeness to a family containing the window is zero") {
    const auto s = space_from_coords({{0}, {1}}, {"a", "b"}, CoordMetric::Linf);
    const Closeness c = closeness_to_family(s, 0, 2.0, 0.1, candidate_family(FamilyKind::TwoPoint), {0.5, 2.0, 3.0});
    CHECK(c.lower == 0.0);
    CHECK(c.best_param == 2.0);
}

TEST_CASE("three spread points stay away from the two-point family") {
    const auto s = path(3);
    const Closeness c = closeness_to_family(s, 1, 1.0, 0.1, candidate_family(FamilyKind::TwoPoint), t_grid());
    CHECK(c.lower > 0.1);
    CHECK(c.lower <= c.upper);
}

TEST_CASE("window size cap") {
    const auto s = path(12);
    CHECK_THROWS_AS(closeness_to_family(s, 0, 1.0, 0.01, candidate_family(FamilyKind::TwoPoint), {1.0}), Error);
}

TEST_CASE("closeness moves slowly with the base point") {
    Rng rng(67);
    const auto fam = candidate_family(FamilyKind::TwoPoint);
    const auto params = t_grid();
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = random_euclidean(rng, 6, 1, 1.0);
        const double lambda = uniform(rng, 0.5, 4.0);
        const Index x = uniform_int(rng, 0, 5), y = uniform_int(rng, 0, 5);
        const double a = closeness_to_family(s, x, lambda, 0.2, fam, params).lower;
        const double b = closeness_to_family(s, y, lambda, 0.2, fam, params).lower;
        CHECK(std::abs(a - b) <= lambda * s(x, y) + 1e-9);
    }
}

TEST_CASE("profile rows and summary") {
    const auto s = progression(2);
    const auto fam = candidate_family(FamilyKind::TwoPoint);
    const Subset K{0};
    const auto rows = uniform_profile(s, K, {1.0, 16.0}, 0.1, [&](Index) { return FamilyChoice{fam, t_grid()}; });
    REQUIRE(rows.size() == 4);
    const Closeness direct = closeness_to_family(s, 0, 16.0, 0.1, fam, t_grid());
    CHECK(rows[2].value_lower == direct.lower);
    CHECK(rows[3].x == kNoIndex);
    CHECK(rows[3].value_lower == direct.lower);
    const std::string csv = profile_csv(s, rows);
    CHECK(csv.rfind("x_label,lambda,epsilon_window,value_lower,value_upper,best_family_param\n", 0) == 0);
    CHECK(csv.find("\nsup,") != std::string::npos);
}

TEST_CASE("weak tangent search") {
    const auto gap = path(5, 2.0);
    const auto none = weak_tangent_search(gap, 3);
    REQUIRE(none.size() == 3);
    for (const auto& w : none) CHECK_FALSE(w.found);

    // Unit steps never chain below r = 1; half steps do.
    CHECK_FALSE(weak_tangent_search(path(4), 1)[0].found);
    const auto half = path(4, 0.5);
    const auto unit = weak_tangent_search(half, 1);
    REQUIRE(unit[0].found);
    CHECK(unit[0].r > 0.5);
    CHECK(unit[0].r < 1.0);
    CHECK(unit[0].diameter == 1.5);
    const Subset comp = iterated_neighborhood(half, unit[0].x, unit[0].r, std::nullopt);
    CHECK(diameter(half, comp) == unit[0].diameter);

    const auto s = progression(5);
    const auto found = weak_tangent_search(s, 3);
    for (const auto& w : found) {
        REQUIRE(w.found);
        const double fi = static_cast<double>(w.i);
        CHECK(w.r < 1.0 / fi);
        const Subset c = iterated_neighborhood(s, w.x, w.r / fi, std::nullopt);
        CHECK(diameter(s, c) == w.diameter);
        CHECK(w.diameter > w.r);
    }
}

}  // TEST_SUITE
