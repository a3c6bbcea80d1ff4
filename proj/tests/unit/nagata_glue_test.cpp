#include <doctest.h>

#include <cmath>

#include "coarsedim/fixtures.hpp"
#include "coarsedim/nagata.hpp"
#include "support/support.hpp"

using namespace coarsedim;
using namespace coarsedim::testing;

namespace {

// Two 2-point clusters {0,1} and {10,11} on the line.
FiniteMetricSpace clusters() {
    return space_from_coords({{0}, {1}, {10}, {11}}, index_labels(4), CoordMetric::Linf);
}

ColoredCover one_class(std::vector<Subset> sets, double s, double c) {
    ColoredCover cover;
    cover.s = s;
    cover.c = c;
    cover.classes = {std::move(sets)};
    return cover;
}

// Concentric rings of points around the origin at radii 1, 2, 3, ...
FiniteMetricSpace rings(int count, int per_ring) {
    std::vector<std::vector<double>> coords{{0.0, 0.0}};
    for (int k = 1; k <= count; ++k) {
        for (int j = 0; j < per_ring; ++j) {
            const double a = 2.0 * M_PI * j / per_ring;
            coords.push_back({k * std::cos(a), k * std::sin(a)});
        }
    }
    return space_from_coords(coords, index_labels(coords.size()), CoordMetric::L2);
}

}  // namespace

TEST_SUITE("nagata_glue") {

TEST_CASE("glue_separated examples") {
    const auto s = clusters();
    const ColoredCover a = one_class({{0, 1}}, 1.0, 1.0), b = one_class({{2, 3}}, 1.0, 1.0);
    const ColoredCover single = glue_separated(s, {a}, 0.5);
    CHECK(single.classes == a.classes);
    CHECK(single.c == 0.5);
    const ColoredCover both = glue_separated(s, {a, b}, 9.0);
    CHECK(both.c == 1.0);
    CHECK(both.classes[0].size() == 2);
    CHECK(verifies(s, both));
    CHECK(glue_separated(s, {a, b}, 0.5).c == 0.5);
    CHECK_THROWS_AS(glue_separated(s, {a, b}, 9.5), Error);
    CHECK_THROWS_AS(glue_separated(s, {a, one_class({{2, 3}}, 2.0, 1.0)}, 9.0), Error);
}

TEST_CASE("glue_two constants") {
    CHECK(glue_two_constant(0.5, 0.5) == doctest::Approx(1.0 / 20.0));
    CHECK(glue_two_constant(0.25, 1.0) == doctest::Approx(0.25 / 5.0));
    CHECK(glue_two_scale(0.75, 3.0) == doctest::Approx(6.0));
}

TEST_CASE("glue_two with an empty second set re-certifies the first cover") {
    const auto s = clusters();
    const ColoredCover x = one_class({{0, 1}, {2, 3}}, 1.0, 0.5);
    ColoredCover empty;
    empty.s = 0.5 / 3.0;
    empty.c = 0.5;
    const ColoredCover out = glue_two(s, s.all_points(), {}, x, empty);
    CHECK(out.classes == x.classes);
    CHECK(out.c == doctest::Approx(1.0 / 20.0));
    CHECK(verifies(s, out));
}

TEST_CASE("glue_two on interleaved paths") {
    // Two unit paths in the plane, offset by half a step and a small height.
    std::vector<std::vector<double>> coords;
    Subset X, Y;
    for (int i = 0; i < 12; ++i) {
        X.push_back(coords.size());
        coords.push_back({static_cast<double>(i), 0.0});
        Y.push_back(coords.size());
        coords.push_back({i + 0.5, 0.3});
    }
    const auto s = space_from_coords(coords, index_labels(coords.size()), CoordMetric::L2);
    const double c1 = 0.5, c2 = 0.5, scale = 3.0;
    const ColoredCover cx = greedy_colored_cover(s, scale, c1, make_subset(X));
    const ColoredCover cy = greedy_colored_cover(s, c1 * scale / 3.0, c2, make_subset(Y));
    const ColoredCover out = glue_two(s, make_subset(X), make_subset(Y), cx, cy);
    CHECK(out.c == doctest::Approx(c1 * c2 / 5.0));
    CHECK(verifies(s, out));
    ColoredCover bad = cy;
    bad.s *= 2.0;
    CHECK_THROWS_AS(glue_two(s, make_subset(X), make_subset(Y), cx, bad), Error);
}

TEST_CASE("glue_two verifies on random planar pairs") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = random_euclidean(rng, 30, 2, 3.0);
        Subset X, Y;
        for (Index i = 0; i < s.size(); ++i) (rng() % 2 ? X : Y).push_back(i);
        const double c1 = uniform(rng, 0.1, 0.5), c2 = uniform(rng, 0.1, 1.0), scale = uniform(rng, 0.5, 3.0);
        const ColoredCover out = glue_two(s, X, Y, greedy_colored_cover(s, scale, c1, X),
                                          greedy_colored_cover(s, c1 * scale / 3.0, c2, Y));
        CHECK(out.c == doctest::Approx(c1 * c2 / 5.0));
        CHECK(verifies(s, out));
    }
}

TEST_CASE("glue_many windows and constants") {
    const auto s = path(20, 0.1);
    auto piece = [&](Index from, Index to) {
        Subset pts;
        for (Index i = from; i < to; ++i) pts.push_back(i);
        return greedy_family(s, pts, 0.5, 0.01, 10.0);
    };
    const CertifiedFamily one = glue_many(s, {piece(0, 20)});
    CHECK(one.c == 0.5);
    CHECK(one.s_lo == 0.01);
    CHECK(one.s_hi == 10.0);

    const CertifiedFamily two = glue_many(s, {piece(0, 10), piece(10, 20)});
    CHECK(two.c == doctest::Approx(1.0 / 20.0));
    CHECK(two.s_lo == doctest::Approx(10.0 * 0.01));
    CHECK(two.s_hi == doctest::Approx(10.0 * 5.0 / 3.0));

    const CertifiedFamily three = glue_many(s, {piece(0, 7), piece(7, 14), piece(14, 20)});
    CHECK(three.c == doctest::Approx(1.0 / 200.0));
    CHECK(three.s_lo == doctest::Approx(100.0 * 0.01));
    for (double scale : {three.s_lo, std::sqrt(three.s_lo * three.s_hi), three.s_hi}) {
        const ColoredCover cover = three.at(scale);
        CHECK(cover.s == doctest::Approx(scale));
        CHECK(verifies(s, cover));
    }
    CHECK_THROWS_AS(three.at(three.s_lo / 2.0), Error);
    CHECK_THROWS_AS(glue_many(s, {piece(0, 10), greedy_family(s, {15}, 0.5, 0.001, 0.002)}), Error);
}

TEST_CASE("glue_annuli examples") {
    const auto s = rings(3, 12);
    const Index origin = 0;
    auto fam = [&](double radius) { return greedy_family(s, ball(s, origin, radius), 0.5, 0.05, 0.5); };

    const CertifiedFamily single = glue_annuli(s, origin, {4.0}, {fam(4.0)});
    CHECK(single.c == 0.5);
    CHECK(verifies(s, single.at(0.3)));

    const std::vector<double> radii{1.5, 2.5, 3.5};
    const CertifiedFamily out = glue_annuli(s, origin, radii, {fam(1.5), fam(2.5), fam(3.5)});
    CHECK(out.c == doctest::Approx(1.0 / 20.0));
    for (double scale : {out.s_lo, out.s_hi}) {
        const ColoredCover cover = out.at(scale);
        CHECK(cover.c == doctest::Approx(0.5 * 0.5 / 5.0));
        CHECK(verifies(s, cover));
    }
    CHECK_THROWS_AS(glue_annuli(s, origin, {1.5, 1.6, 3.5}, {fam(1.5), fam(1.6), fam(3.5)}), Error);
    CHECK_THROWS_AS(glue_annuli(s, origin, {2.5, 1.5, 3.5}, {fam(2.5), fam(1.5), fam(3.5)}), Error);
    CHECK_THROWS_AS(glue_annuli(s, origin, {1.5, 2.5}, {fam(1.5), fam(2.5)}), Error);
}

TEST_CASE("color_net examples") {
    const auto far = path(3, 10.0);
    CHECK(color_net(far, far.all_points(), 1.0, 1) == std::vector<int>{1, 1, 1});
    const auto p = path(3);
    CHECK(color_net(p, p.all_points(), 1.0 / 3.0, 2) == std::vector<int>{1, 2, 1});
    const auto tri = validate_metric({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, index_labels(3));
    CHECK_THROWS_AS(color_net(tri, tri.all_points(), 1.0 / 3.0, 2), Error);
}

TEST_CASE("color_net colorings are proper") {
    Rng rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        const auto s = random_euclidean(rng, 40, 2, 4.0);
        const double s0 = uniform(rng, 0.05, 0.3);
        const Subset net = max_separated_net(s, s0);
        const auto colors = color_net(s, net, s0, 64);
        for (std::size_t a = 0; a < net.size(); ++a) {
            for (std::size_t b = a + 1; b < net.size(); ++b) {
                if (s(net[a], net[b]) <= 3.0 * s0) CHECK(colors[a] != colors[b]);
            }
        }
    }
}

TEST_CASE("transfer_constant") {
    CHECK(transfer_constant(0.5, 1.0, 0.1) == doctest::Approx(0.25));
    CHECK(transfer_constant(0.5, 1.0, 0.0) == 0.5);
}

TEST_CASE("transfer through the identity extension") {
    const auto s = path(8);
    const PointedSpace p = make_pointed(s, 3);
    DistanceExtension ext = identity_extension(p);
    ext.epsilon = 1e-3;
    const ColoredCover cert = greedy_colored_cover(s, 2.0, 0.5);
    const ColoredCover moved = transfer_certificate(p, p, ext, cert, 10.0, 9.0);
    CHECK(moved.s == doctest::Approx(2.0 + 2e-3));
    CHECK(moved.c == doctest::Approx(transfer_constant(0.5, 2.0, 1e-3)));
    CHECK(moved.classes == cert.classes);
    CHECK(verifies(s, moved));
    CHECK_THROWS_AS(transfer_certificate(p, p, ext, cert, 10.0, 10.0), Error);
    ext.epsilon = 0.6;
    CHECK_THROWS_AS(transfer_certificate(p, p, ext, cert, 10.0, 1.0), Error);
}

TEST_CASE("transfer between random close pairs verifies") {
    Rng rng(41);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        // X: the points of Y, each coordinate moved by at most 0.01.
        const auto ys = random_coords(rng, 6, 2, 2.0);
        auto xs = ys;
        for (auto& p : xs) {
            for (auto& v : p) v += uniform(rng, -0.01, 0.01);
        }
        const auto X = space_from_coords(xs, index_labels(6), CoordMetric::L2);
        const auto Y = space_from_coords(ys, index_labels(6), CoordMetric::L2);
        const PointedSpace px = make_pointed(X, 0), py = make_pointed(Y, 0);
        const GhBracket b = gh_exact_small(px, py);
        if (!(b.witness.epsilon > 0.0) || b.witness.epsilon > 0.05) continue;
        const double scale = 1.0, c = 0.5;
        const ColoredCover cert = greedy_colored_cover(Y, scale, c);
        const double r = 3.0, rp = std::min(1.0 / b.witness.epsilon, r - 2.0 * b.witness.epsilon);
        const ColoredCover moved = transfer_certificate(px, py, b.witness, cert, r, rp);
        CHECK(verifies(X, moved, ball(X, 0, rp)));
        ++checked;
    }
    CHECK(checked > 20);
}

TEST_CASE("epsilon_threshold") {
    CHECK(epsilon_threshold(1, 0.5, 0.5, 4.0, 12.0, 1.0) == 1.0 / 15.0);
    CHECK(epsilon_threshold(1, 0.5, 0.5, 4.0, 12.0, 2.0) == doctest::Approx(2.0 / 15.0));
    CHECK(epsilon_threshold(2, 0.5, 0.5, 4.0, 12.0, 1.0) < epsilon_threshold(1, 0.5, 0.5, 4.0, 12.0, 1.0));
    CHECK(epsilon_threshold(3, 0.5, 0.5, 4.0, 12.0, 1.0) < epsilon_threshold(2, 0.5, 0.5, 4.0, 12.0, 1.0));
}

TEST_CASE("assemble_lc_certificate on a single point") {
    const auto s = path(3);
    const Subset K{1};
    LcParams p;
    p.eps = 1e-4;
    const ColoredCover coarse = singletons(K, p.r / 2.0, p.cbar);
    const auto provider = [&](Index x, double t) {
        return singletons({x}, p.r * (p.a * t + p.b * p.eps), 1.0);
    };
    const LcCertificate lc = assemble_lc_certificate(s, K, coarse, provider, p);
    CHECK(lc.n == 0);
    CHECK(lc.c == doctest::Approx(0.25));
    REQUIRE(lc.witnesses.size() == 3);
    for (const auto& [scale, cover] : lc.witnesses) {
        CHECK(cover.classes.size() == 1);
        CHECK(cover.classes[0] == std::vector<Subset>{{1}});
        CHECK(verifies(s, cover, K));
    }
}

TEST_CASE("assemble_lc_certificate rejects bad inputs") {
    const auto s = path(3);
    LcParams p;
    p.eps = 1e-4;
    const auto provider = [&](Index x, double t) { return singletons({x}, p.r * (p.a * t + p.b * p.eps), 1.0); };
    CHECK_THROWS_AS(assemble_lc_certificate(s, {1}, singletons({1}, 1.0, 0.5), provider, p), Error);
    p.eps = 0.1;
    CHECK_THROWS_AS(assemble_lc_certificate(s, {1}, singletons({1}, 0.5, 0.5), provider, p), Error);
}

}  // TEST_SUITE
