#ifndef COARSEDIM_FIXTURES_HPP
#define COARSEDIM_FIXTURES_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coarsedim/metric_space.hpp"
#include "coarsedim/tangents.hpp"

namespace coarsedim {

/// Default point cap for generated spaces.
inline constexpr std::size_t kFixtureCap = 400;

enum class CoordMetric { Linf, L2 };

/// Space of coordinate vectors under the sup or Euclidean norm, distances raised to the power p.
FiniteMetricSpace space_from_coords(const std::vector<std::vector<double>>& coords, std::vector<std::string> labels,
                                    CoordMetric metric, double p = 1.0, std::string name = {});

/**
 * {0} and 2^-(i^2) + k 2^-(i^3) for i = 1..I, k = 1..i, on the line.
 * Labels "0" and "x(i,k)".
 */
FiniteMetricSpace progression(int I, std::size_t cap = kFixtureCap);

/**
 * The origin and, for n = 1..N, the points sum_{i=n}^{n+D-1} 2^-(i^2) a_i + (2^-(n^2), 0)
 * with a_i in S_n (n equally spaced unit circle points) for odd i and in
 * {(0,0), (1,0)} for even i. Euclidean plane. Labels "E(n;c_n,...)" list the choices.
 */
FiniteMetricSpace circle_clusters(int N, int D, std::size_t cap = kFixtureCap);

/**
 * Same scheme in R^n under the sup norm with a_i in {0,1}^n for odd i and in
 * {0, e_1} for even i. Labels "H(n;c_n,...)".
 */
FiniteMetricSpace hypercube_clusters(int N, int D, std::size_t cap = kFixtureCap);

/**
 * Points p(n,j), n = 1..Nmax, j = 0..n, with the two distances d1 and d2.
 * Checks d1^2 <= d2 <= d1 on every pair.
 */
std::pair<FiniteMetricSpace, FiniteMetricSpace> two_distance(int Nmax, std::size_t cap = kFixtureCap);

struct GridParams {
    int d = 2;
    int n = 8;
    /// Default 1/(n-1), so the grid spans [0,1]^d.
    std::optional<double> spacing;
    CoordMetric metric = CoordMetric::Linf;
    double p = 1.0;
    std::size_t cap = kFixtureCap;
};

/// {0..n-1}^d times the spacing. Labels "g(i,j,...)".
FiniteMetricSpace grid(const GridParams& params);

/// n points of [0,1] at spacing 1/(n-1) with the metric |x - y|^p.
FiniteMetricSpace snowflake_path(int n, double p, std::size_t cap = kFixtureCap);

enum class FixtureKind { Progression, CircleClusters, HypercubeClusters, TwoDistance, Grid, SnowflakePath };

struct FixtureSpec {
    FixtureKind kind = FixtureKind::Grid;
    /// Truncation depth: I for progression, D for the cluster spaces.
    int depth = 3;
    /// Number of levels: N for the cluster spaces, Nmax for two_distance.
    int levels = 3;
    GridParams grid;
    /// Which metric of two_distance to return (1 or 2).
    int which = 1;
};

FiniteMetricSpace generate(const FixtureSpec& fixture);

enum class FamilyKind { TwoPoint, ScaledSn, Cube };

/**
 * {0,t} pointed at 0; t S_n pointed at (t,0); {0,t}^n under the sup norm pointed at 0.
 * t = 0 gives the one-point space.
 */
TangentFamily candidate_family(FamilyKind kind, int n = 1);

}  // namespace coarsedim

#endif
