#ifndef COARSEDIM_GROMOV_HAUSDORFF_HPP
#define COARSEDIM_GROMOV_HAUSDORFF_HPP

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "coarsedim/metric_space.hpp"

namespace coarsedim {

/**
 * @brief Cross distances between the points of two spaces.
 *
 * Together with the two metrics, cross(x, y) defines a semimetric on the
 * disjoint union. `epsilon` is the closeness it witnesses for the pointed spaces.
 */
struct DistanceExtension {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> cross;
    double epsilon = 0.0;

    double operator()(Index x, Index y) const { return cross[x * cols + y]; }
};

using Correspondence = std::vector<std::pair<Index, Index>>;

/// Largest total number of points the exact solver accepts by default.
inline constexpr std::size_t kGhExactCap = 12;

/**
 * Least eps the cross matrix witnesses: base points within eps, and every
 * point closer than 1/eps to its base point within eps of the other space
 * (open conditions closed up, so this is the infimum).
 */
double witnessed_epsilon(const PointedSpace& X, const PointedSpace& Y, std::span<const double> cross);

/// cross(x, y) = min over related (a, b) of d(x, a) + h + d(b, y). Valid for h >= distortion / 2.
DistanceExtension induced_extension(const PointedSpace& X, const PointedSpace& Y, const Correspondence& corr,
                                    double h);

/// max |d(a, a') - d(b, b')| over pairs of related pairs.
double distortion(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, const Correspondence& corr);

struct GhBracket {
    /// Exact capped value (the solver decides feasibility exactly).
    double lower = 0.0;
    /// min{1/2, witnessed eps of `witness`}.
    double upper = 0.0;
    DistanceExtension witness;
    Correspondence relation;
};

/**
 * Capped pointed closeness min{1/2, inf eps}. The infimum is reached through
 * relations containing the base pair and touching every point of both 1/eps
 * windows with distortion < 2 eps; the solver walks the window breakpoints and
 * finds the least distortion by branch and bound. Throws TooLarge.
 */
GhBracket gh_exact_small(const PointedSpace& X, const PointedSpace& Y, std::size_t cap = kGhExactCap);

/// Upper value from the extension induced by `corr` with h = distortion / 2. Throws EmptyCorrespondence.
GhBracket gh_upper(const PointedSpace& X, const PointedSpace& Y, const Correspondence& corr);

/// Zero cross distance between a space and its copy.
DistanceExtension identity_extension(const PointedSpace& X);

/**
 * cross_XZ(x, z) = min over y of cross_XY(x, y) + cross_YZ(y, z); epsilon
 * recomputed for (X, Z). Throws MiddleMismatch when the middle sizes disagree.
 */
DistanceExtension compose_extensions(const PointedSpace& X, const PointedSpace& Y, const PointedSpace& Z,
                                     const DistanceExtension& xy, const DistanceExtension& yz);

struct ExtensionReport {
    bool pass = true;
    bool semimetric = true;
    bool base_close = true;
    bool x_window_covered = true;
    bool y_window_covered = true;
    /// Triangle violation (indices into the disjoint union, X first) or uncovered point.
    std::vector<Index> witness;
};

/// Checks the semimetric axioms and the closeness conditions at ext.epsilon, open conditions relaxed by tol.
ExtensionReport validate_extension(const PointedSpace& X, const PointedSpace& Y, const DistanceExtension& ext,
                                   double tolerance = kTolerance);

/**
 * Given an extension at eps = delta/4 and centers of delta/2-balls covering
 * B_Y(y, 2), picks for each center its nearest point of X; the delta-balls
 * around them cover B_X(x, 1). Exactly one center per input center. Throws
 * EpsilonTooLarge when ext.epsilon > delta/4 and CenterNotFound when a
 * relevant center has no point of X within delta/4.
 */
Subset transfer_ball_cover(const PointedSpace& X, const PointedSpace& Y, const DistanceExtension& ext,
                           double delta, const std::vector<Index>& y_centers);

/// True when the open balls B(c, radius), c in centers, cover B(center, ball_radius).
bool covers_ball(const FiniteMetricSpace& s, Index center, double ball_radius, const std::vector<Index>& centers,
                 double radius);

/// delta with (1/delta)^beta = C (4/delta)^alpha, i.e. (C 4^alpha)^(-1/(beta - alpha)).
double refinement_delta(double alpha, double beta, double C);

/// Centers covering B(center, radius) by balls of radius delta * radius.
using CoverOracle = std::function<std::vector<Index>(Index center, double radius, double delta)>;

/// Oracle answering with a greedy cover of the ball itself.
CoverOracle direct_cover_oracle(const FiniteMetricSpace& s);

struct RefinementResult {
    double delta = 0.0;
    double L = 0.0;
    std::size_t rounds = 0;
    /// Final ball radius delta^N R (<= r).
    double radius = 0.0;
    Subset centers;
    /// (1/delta)^beta (R/r)^beta.
    double count_bound = 0.0;
};

/**
 * Covers B(x, R) by balls of radius <= r: N rounds of oracle refinement with N
 * the least integer such that delta^N <= r/R. Every oracle answer must use at
 * most floor(L) balls (else OracleFailure). Throws BadScales unless 0 < r < R.
 */
RefinementResult iterated_refinement(const FiniteMetricSpace& s, Index x, double R, double r, double alpha,
                                     double beta, double C, const CoverOracle& oracle);

}  // namespace coarsedim

#endif
