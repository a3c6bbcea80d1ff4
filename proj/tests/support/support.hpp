#ifndef COARSEDIM_TEST_SUPPORT_HPP
#define COARSEDIM_TEST_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "coarsedim/fixtures.hpp"
#include "coarsedim/metric_space.hpp"
#include "coarsedim/nagata.hpp"

namespace coarsedim::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline std::size_t uniform_int(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline std::vector<std::string> index_labels(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
}

/// Unit-spaced points 0, 1, ..., n-1 on the line.
inline FiniteMetricSpace path(std::size_t n, double spacing = 1.0) {
    std::vector<std::vector<double>> coords;
    for (std::size_t i = 0; i < n; ++i) coords.push_back({spacing * static_cast<double>(i)});
    return space_from_coords(coords, index_labels(n), CoordMetric::Linf);
}

inline std::vector<std::vector<double>> random_coords(Rng& rng, std::size_t n, std::size_t dim, double side) {
    std::vector<std::vector<double>> coords(n, std::vector<double>(dim));
    for (auto& p : coords) {
        for (auto& v : p) v = uniform(rng, 0.0, side);
    }
    return coords;
}

/// n uniform points of [0, side]^dim, Euclidean.
inline FiniteMetricSpace random_euclidean(Rng& rng, std::size_t n, std::size_t dim = 2, double side = 1.0) {
    return space_from_coords(random_coords(rng, n, dim, side), index_labels(n), CoordMetric::L2);
}

/// Random metric with distances in [1, 2] (every such symmetric matrix satisfies the triangle inequality).
inline FiniteMetricSpace random_metric(Rng& rng, std::size_t n) {
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) m[i][j] = m[j][i] = uniform(rng, 1.0, 2.0);
    }
    return validate_metric(m, index_labels(n));
}

/// Either a random planar space or a random [1,2]-metric, to mix geometric and combinatorial cases.
inline FiniteMetricSpace random_space(Rng& rng, std::size_t n) {
    if (rng() % 2 == 0) return random_euclidean(rng, n, 1 + rng() % 2, uniform(rng, 0.5, 4.0));
    return random_metric(rng, n);
}

/// Family of greedy covers of `points` for every scale in [s_lo, s_hi].
inline CertifiedFamily greedy_family(const FiniteMetricSpace& s, Subset points, double c, double s_lo,
                                     double s_hi) {
    CertifiedFamily fam;
    fam.points = std::move(points);
    fam.c = c;
    fam.s_lo = s_lo;
    fam.s_hi = s_hi;
    fam.n = fam.points.size();
    fam.at = [&s, pts = fam.points, c](double scale) {
        ColoredCover cover = greedy_colored_cover(s, scale, c, pts);
        cover.s = scale;
        return cover;
    };
    return fam;
}

/// Cover of `points` by singletons in one class: valid at (c, s) when the points are c s apart.
inline ColoredCover singletons(const Subset& points, double s, double c) {
    ColoredCover cover;
    cover.s = s;
    cover.c = c;
    cover.classes.emplace_back();
    for (Index i : points) cover.classes[0].push_back({i});
    return cover;
}

inline bool verifies(const FiniteMetricSpace& s, const ColoredCover& cover) {
    return verify_certificate(s, cover).pass;
}

inline bool verifies(const FiniteMetricSpace& s, const ColoredCover& cover, const Subset& target) {
    return verify_certificate(s, cover, target).pass;
}

}  // namespace coarsedim::testing

#endif
