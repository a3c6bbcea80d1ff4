#ifndef COARSEDIM_NAGATA_HPP
#define COARSEDIM_NAGATA_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "coarsedim/gromov_hausdorff.hpp"
#include "coarsedim/metric_space.hpp"

namespace coarsedim {

/**
 * @brief A Nagata certificate at one scale.
 *
 * classes[k] is a family of subsets; the cover is s-bounded and every class
 * is c*s-separated. The dimension bound it certifies is classes.size() - 1.
 */
struct ColoredCover {
    std::vector<std::vector<Subset>> classes;
    double s = 0.0;
    double c = 0.0;

    std::size_t dimension() const { return classes.empty() ? 0 : classes.size() - 1; }
    Subset support() const;
};

struct DiameterViolation {
    std::size_t cls, set;
    double diameter;
};

struct SeparationViolation {
    std::size_t cls, first, second;
    double distance;
};

struct CertificateReport {
    bool pass = true;
    Subset uncovered;
    std::vector<DiameterViolation> too_wide;
    std::vector<SeparationViolation> too_close;
    /// Sets naming indices outside the space.
    std::vector<std::pair<std::size_t, std::size_t>> bad_sets;
};

/**
 * Checks that `cover` covers `target`, every set has diameter <= s(1+tol) and
 * sets of one class are at distance >= c*s*(1-tol). Lists every violation.
 */
CertificateReport verify_certificate(const FiniteMetricSpace& s, const ColoredCover& cover,
                                     const Subset& target, double tolerance = kTolerance);

/// verify_certificate() against the whole space.
CertificateReport verify_certificate(const FiniteMetricSpace& s, const ColoredCover& cover,
                                     double tolerance = kTolerance);

/**
 * s-multiplicity of a family: the largest number of members met by one set of
 * diameter <= s_param. Exact search over cliques of the "distance <= s_param" graph.
 */
std::size_t multiplicity(const FiniteMetricSpace& s, const std::vector<Subset>& family, double s_param);

/// True when every open ball B(x, radius), x in the space, meets at most one set of each class.
bool balls_meet_one_set_per_class(const FiniteMetricSpace& s, const ColoredCover& cover, double radius);

/**
 * Smallest n such that a cover with n+1 classes exists at (scale, c), by
 * exhaustive search over colorings. Throws TooLarge above `cap` points.
 */
std::size_t min_nagata_bruteforce(const FiniteMetricSpace& s, double scale, double c,
                                  std::size_t cap = 12, double tolerance = kTolerance);

/**
 * Smallest c such that some c*s-bounded cover has s-multiplicity 1: the largest
 * diameter of a chain component (steps <= s), divided by s.
 */
double multiplicity_one_constant(const FiniteMetricSpace& s, double scale);

/// The same quantity by exhaustive search over set partitions (independent check).
double multiplicity_one_constant_bruteforce(const FiniteMetricSpace& s, double scale, std::size_t cap = 16);

/**
 * Builder: cells are the Voronoi cells (nearest point, ties to lower index) of
 * a greedy s/2-net, so each cell has diameter < s; cells closer than c*s get
 * different colors (greedy coloring in cell order).
 */
ColoredCover greedy_colored_cover(const FiniteMetricSpace& s, double scale, double c,
                                  const std::optional<Subset>& within = std::nullopt);

/// Intersects every set with `subset` and drops empty sets; classes and parameters kept.
ColoredCover restrict_cover(const ColoredCover& cover, const Subset& subset);

/// Same sets, scale multiplied by lambda (valid for the dilated space).
ColoredCover dilate_cover(const ColoredCover& cover, double lambda);

/// Renumbers set members through `map` (map[i] = index of local point i in the ambient space).
ColoredCover lift_cover(const ColoredCover& cover, const std::vector<Index>& map);

/**
 * @brief Certificates over a fixed point set for every scale in [s_lo, s_hi].
 *
 * at(s) returns a cover of `points` with scale field s and constant c, using
 * at most n+1 classes.
 */
struct CertifiedFamily {
    Subset points;
    std::size_t n = 0;
    double c = 0.0;
    double s_lo = 0.0;
    double s_hi = 0.0;
    std::function<ColoredCover(double)> at;
};

/**
 * Union of pairwise r-separated sets: classwise concatenation, certified at
 * the common scale with constant min{c, r/s}. Throws MismatchedParams when
 * scales or constants differ and NotSeparated when two pieces are closer than r.
 */
ColoredCover glue_separated(const FiniteMetricSpace& s, const std::vector<ColoredCover>& covers, double r,
                            double tolerance = kTolerance);

/// Constant produced by glue_two(): c1 c2 / max(5, 3 + 4 c1).
double glue_two_constant(double c1, double c2);
/// Output scale of glue_two() for input scale s: (1 + 4 c1 / 3) s.
double glue_two_scale(double c1, double s);

/**
 * Union of two sets. coverX certifies X at (c1, s); coverYfine certifies Y at
 * (c2, c1 s / 3). Fine sets close to a coarse set are merged into it, the rest
 * are kept. The result is certified at scale (1 + 4 c1 / 3) s with constant
 * glue_two_constant(c1, c2). Throws InputCertInvalid if either input fails.
 */
ColoredCover glue_two(const FiniteMetricSpace& s, const Subset& X, const Subset& Y, const ColoredCover& coverX,
                      const ColoredCover& coverYfine, double tolerance = kTolerance);

/**
 * glue_two() as a family: X valid on [sx_lo, sx_hi] with constant c1, Y valid on
 * [sy_lo, sy_hi]. The result is valid on (1 + 4c1/3) [max(sx_lo, 3 sy_lo / c1),
 * min(sx_hi, 3 sy_hi / c1)]. Throws EmptyWindow.
 */
CertifiedFamily glue_two_family(const FiniteMetricSpace& s, const CertifiedFamily& X, const CertifiedFamily& Y);

/**
 * Union of N sets sharing (n, c) on a common window [s_lo, s_hi]: N-1 rounds
 * of glue_two. Constant c^N / max(5, 3+4c)^(N-1), window
 * [(4 + 3/c)^(N-1) s_lo, (1 + 4c/3) s_hi] (unchanged for N = 1). Throws EmptyWindow.
 */
CertifiedFamily glue_many(const FiniteMetricSpace& s, const std::vector<CertifiedFamily>& pieces);

/**
 * Whole-space certificate from certificates of concentric balls B(x0, radii[k])
 * (all valid up to the same s_hi with the same c). Odd and even shells are
 * glued separately and then together. Throws GapsTooSmall when consecutive
 * radii differ by <= c*s_hi and RadiiNotExhaustive when the last ball is not X.
 */
CertifiedFamily glue_annuli(const FiniteMetricSpace& s, Index x0, const std::vector<double>& radii,
                            const std::vector<CertifiedFamily>& per_ball);

/**
 * Greedy coloring in net order with colors 1..N, different on net points at
 * distance in (0, 3 s0]. Succeeds whenever every point has fewer than N such
 * neighbors; throws NotEnoughColors when the greedy pass needs color N+1.
 */
std::vector<int> color_net(const FiniteMetricSpace& s, const Subset& net, double s0, int colors);

/// c' = (c s - 2 eps) / (s + 2 eps).
double transfer_constant(double c, double s, double eps);

/**
 * Moves a certificate of B_Y(y, r) to B_X(x, r') through an extension
 * witnessing closeness eps: each set U becomes {x' : cross(x', U) <= eps}
 * intersected with B_X(x, r'). Certified at (c', s + 2 eps). Throws
 * EpsilonTooLarge (c s <= 2 eps) and RadiusInfeasible (r' > min{1/eps, r - 2 eps}).
 */
ColoredCover transfer_certificate(const PointedSpace& X, const PointedSpace& Y, const DistanceExtension& ext,
                                  const ColoredCover& cert, double r, double r_prime);

/**
 * Closeness threshold of the local-to-global argument:
 * a s0 / ((2 + 3/c1)^(nbar-1) (b(2+c)/c + b) - b) with c1 = min{c/2, cbar}.
 */
double epsilon_threshold(int nbar, double cbar, double c, double a, double b, double s0);

struct LcParams {
    double a = 4.0;
    double b = 12.0;
    double c = 0.5;
    double cbar = 0.5;
    double s0 = 1.0;
    double eps = 0.0;
    double r = 1.0;
    std::size_t samples = 3;
};

/// A certificate family sampled at several scales.
struct LcCertificate {
    std::size_t n = 0;
    double c = 0.0;
    double s_lo = 0.0;
    double s_hi = 0.0;
    std::vector<std::pair<double, ColoredCover>> witnesses;
};

/**
 * Provider of ball certificates: for center x and parameter s, a cover of
 * B(x, r/2) at scale r(a s + b eps) with constant (c a s - b eps)/(a s + b eps).
 */
using BallCertificateProvider = std::function<ColoredCover(Index center, double s)>;

/**
 * Local-to-global assembly: each set U of the coarse r/2-cover gets the
 * provider's certificate of a ball containing it, sets of one coarse color are
 * joined with glue_separated(), and the nbar+1 colors with glue_many(). Emits
 * `samples` witnesses at geometrically spaced scales of the resulting window.
 * Throws EmptyWindow and InputCertInvalid.
 */
LcCertificate assemble_lc_certificate(const FiniteMetricSpace& s, const Subset& K, const ColoredCover& coarse,
                                      const BallCertificateProvider& per_ball, const LcParams& params);

/// C_{k+1} = C_k * C * 16^alpha * 12 with C_0 = C; returns C_k for k = 0..m-1.
std::vector<double> codimension_constants(double alpha, double C, std::size_t m);

/// True when 12 C_{m-1} (R/r)^(alpha - m) < 1 with m = floor(alpha) + 1.
bool construction_threshold_holds(double alpha, double C, double R, double r);

struct ConstructionTrace {
    /// Per round: number of net points, annulus count k, chosen annulus per net point.
    std::vector<std::size_t> net_sizes;
    std::vector<std::size_t> annulus_counts;
    std::vector<std::vector<std::size_t>> chosen;
    std::vector<std::size_t> residual_sizes;
};

/**
 * Net-and-annuli decomposition with floor(alpha)+1 rounds. Returns a cover with
 * floor(alpha)+1 classes, sets of diameter < 2R, sets of one class at distance
 * > r; certified at s = 2R with c = r/(2R). Throws BadScales (r >= R/4 or
 * r <= 0) and ResidualNonempty when points remain after the last round.
 */
ColoredCover construct_cover_assouad(const FiniteMetricSpace& s, double alpha, double R, double r,
                                     ConstructionTrace* trace = nullptr);

/**
 * Picks r for construct_cover_assouad: r = R / 2^j for j = 3, 4, ... until the
 * threshold holds or R/(2r) exceeds |X| + 1 (then some shell is empty around every net point).
 */
double auto_construction_radius(const FiniteMetricSpace& s, double alpha, double C, double R);

}  // namespace coarsedim

#endif
