#include <doctest.h>

#include <algorithm>
#include <limits>

#include "coarsedim/metric_space.hpp"
#include "support/support.hpp"

using namespace coarsedim;
using namespace coarsedim::testing;

namespace {

ErrorCode code_of(const std::vector<std::vector<double>>& m, std::vector<std::string> labels) {
    try {
        validate_metric(m, std::move(labels));
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("metric_core") {

TEST_CASE("validate_metric accepts small metrics") {
    const auto one = validate_metric({{0.0}}, {"a"});
    CHECK(one.size() == 1);
    CHECK(one.diameter() == 0.0);
    const auto two = validate_metric({{0, 1}, {1, 0}}, {"a", "b"});
    CHECK(two(0, 1) == 1.0);
    CHECK(two.find_label("b") == Index{1});
    CHECK_FALSE(two.find_label("c").has_value());
}

TEST_CASE("validate_metric names the violated triangle") {
    try {
        validate_metric({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}, {"0", "1", "2"});
        FAIL("accepted a non-metric");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TriangleViolation);
        CHECK(e.indices() == std::vector<std::size_t>{0, 1, 2});
    }
}

TEST_CASE("validate_metric rejects each broken axiom") {
    CHECK(code_of({{0, 1}}, {"a", "b"}) == ErrorCode::NonSquare);
    CHECK(code_of({{0, 1}, {1, 0}}, {"a"}) == ErrorCode::LabelMismatch);
    CHECK(code_of({{0, 1}, {1, 0}}, {"a", "a"}) == ErrorCode::DuplicateLabel);
    CHECK(code_of({{0, 1}, {2, 0}}, {"a", "b"}) == ErrorCode::NonSymmetric);
    CHECK(code_of({{0, -1}, {-1, 0}}, {"a", "b"}) == ErrorCode::NegativeEntry);
    CHECK(code_of({{1, 1}, {1, 0}}, {"a", "b"}) == ErrorCode::NonzeroDiagonal);
}

TEST_CASE("validate_metric is exact on random matrices") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = uniform_int(rng, 2, 6);
        std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) m[i][j] = m[j][i] = uniform(rng, 0.1, 3.0);
        }
        bool metric = true;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) metric = metric && m[i][k] <= m[i][j] + m[j][k];
            }
        }
        bool accepted = true;
        try {
            validate_metric(m, index_labels(n));
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::TriangleViolation);
            const auto& t = e.indices();
            CHECK(m[t[0]][t[2]] > m[t[0]][t[1]] + m[t[1]][t[2]]);
            accepted = false;
        }
        CHECK(accepted == metric);
    }
}

TEST_CASE("dilate scales distances and round-trips on dyadic entries") {
    const auto two = make_pointed(validate_metric({{0, 3}, {3, 0}}, {"a", "b"}), 0);
    CHECK(dilate(two, 2.0).space(0, 1) == 6.0);
    CHECK(dilate(two, 1.0).space == two.space);
    const auto p = make_pointed(path(5, 0.25), 2);
    CHECK(dilate(dilate(p, 2.0), 0.5).space == p.space);
    CHECK_THROWS_AS(dilate(p, 0.0), Error);
    CHECK_THROWS_AS(dilate(p, -1.0), Error);
}

TEST_CASE("open balls") {
    const auto s = path(3);
    CHECK(ball(s, 1, 0.0).empty());
    CHECK(ball(s, 1, 1.5) == Subset{0, 1, 2});
    CHECK(ball(s, 0, 1.0) == Subset{0});
}

TEST_CASE("neighborhoods") {
    const auto s = path(3);
    CHECK(neighborhood(s, {1}, 0.0) == Subset{1});
    CHECK(neighborhood(s, {0}, 1.5) == Subset{0, 1});
    CHECK(neighborhood(s, s.all_points(), 0.01) == s.all_points());
}

TEST_CASE("greedy separated nets") {
    CHECK(max_separated_net(path(1), 5.0) == Subset{0});
    CHECK(max_separated_net(path(4), 1.5) == Subset{0, 2});
    CHECK(max_separated_net(path(4), 10.0) == Subset{0});

    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = random_euclidean(rng, 30);
        const double r = uniform(rng, 0.05, 0.6);
        const Subset net = max_separated_net(s, r);
        for (Index a : net) {
            for (Index b : net) {
                if (a != b) CHECK(s(a, b) >= r);
            }
        }
        for (Index x = 0; x < s.size(); ++x) CHECK(point_set_distance(s, x, net) < r);
    }
}

TEST_CASE("iterated neighborhoods") {
    const auto s = path(3);
    CHECK(iterated_neighborhood(s, 0, 1.5, 0) == Subset{0});
    CHECK(iterated_neighborhood(s, 0, 1.5, std::nullopt) == Subset{0, 1, 2});
    CHECK(iterated_neighborhood(s, 1, 0.5, std::nullopt) == Subset{1});

    Rng rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        const auto t = random_euclidean(rng, 20);
        const double delta = uniform(rng, 0.05, 0.4);
        Subset prev = {0};
        for (std::size_t n = 0; n < 6; ++n) {
            const Subset cur = iterated_neighborhood(t, 0, delta, n);
            CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
            const Subset wider = iterated_neighborhood(t, 0, 1.5 * delta, n);
            CHECK(std::includes(wider.begin(), wider.end(), cur.begin(), cur.end()));
            prev = cur;
        }
        const Subset all = iterated_neighborhood(t, 0, delta, std::nullopt);
        CHECK(neighborhood(t, all, delta) == all);
    }
}

TEST_CASE("set helpers") {
    const auto s = path(5);
    CHECK(make_subset({3, 1, 3}) == Subset{1, 3});
    CHECK(set_union({1, 3}, {2, 3}) == Subset{1, 2, 3});
    CHECK(set_difference({1, 2, 3}, {2}) == Subset{1, 3});
    CHECK(set_intersection({1, 2, 3}, {2, 4}) == Subset{2});
    CHECK(diameter(s, {0, 2, 4}) == 4.0);
    CHECK(set_distance(s, {0}, {3, 4}) == 3.0);
    CHECK(set_distance(s, {}, {1}) == std::numeric_limits<double>::infinity());
    CHECK(s.distinct_distances() == std::vector<double>{1, 2, 3, 4});
    CHECK(s.min_positive_distance() == 1.0);
    CHECK(s.restrict_to({1, 3})(0, 1) == 2.0);
}

TEST_CASE("dilation carries certificates verbatim") {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = random_euclidean(rng, 25);
        const ColoredCover cover = greedy_colored_cover(s, 0.3, 0.5);
        REQUIRE(verifies(s, cover));
        const double lambda = uniform(rng, 0.5, 8.0);
        CHECK(verifies(s.scaled(lambda), dilate_cover(cover, lambda)));
    }
}

}  // TEST_SUITE
