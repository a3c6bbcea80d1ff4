#ifndef COARSEDIM_COVERING_HPP
#define COARSEDIM_COVERING_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coarsedim/metric_space.hpp"

namespace coarsedim {

enum class CoverMode { Exact, Greedy };

/// Largest target set the exhaustive set-cover solver accepts.
inline constexpr std::size_t kExactCoverCap = 20;

/// For every point, all indices sorted by distance (ties by index).
class NeighborIndex {
public:
    explicit NeighborIndex(const FiniteMetricSpace& s);

    /// Indices j with d(i, j) < r, nearest first.
    std::span<const Index> within(Index i, double r) const;
    std::span<const Index> sorted(Index i) const { return {order_.data() + i * n_, n_}; }

private:
    const FiniteMetricSpace* space_;
    std::size_t n_;
    std::vector<Index> order_;
};

struct BallCover {
    std::size_t count = 0;
    /// Centers of the r-balls, in the order they were chosen.
    Subset centers;
};

/**
 * Covers `target` by open r-balls centered at points of the space.
 * Greedy: an r-separated net of `target` in index order (centers inside target).
 * Exact: minimum set cover over all centers of X; throws ExactTooLarge above
 * kExactCoverCap target points.
 */
BallCover cover_set(const FiniteMetricSpace& s, const Subset& target, double r, CoverMode mode,
                    const NeighborIndex* index = nullptr);

/// Number of open r-balls needed to cover B(center, R). Requires 0 < r < R.
std::size_t covering_number(const FiniteMetricSpace& s, Index center, double R, double r,
                            CoverMode mode);

struct EvidenceRow {
    Index center = 0;
    double R = 0.0;
    double r = 0.0;
    /// Certified upper bound on the covering number (exact for small balls when needed).
    std::size_t count = 0;
    double bound = 0.0;
    bool pass = true;
};

struct AssouadReport {
    double beta = 0.0;
    double C = 1.0;
    double Rbar = 0.0;
    std::vector<EvidenceRow> evidence;
    bool pass = true;
};

/// Geometric scale grid lo, lo*ratio, ... <= hi. Defaults: lo = min positive
/// distance, hi = diameter.
struct ScaleGrid {
    double ratio = 2.0;
    std::optional<double> lo;
    std::optional<double> hi;
};

std::vector<double> grid_values(const FiniteMetricSpace& s, const ScaleGrid& grid);

/**
 * Worst-case (over centers) greedy covering counts for every grid pair r < R,
 * then a least-squares fit of log count against log(R/r). beta is the slope
 * (clamped at 0) and C = exp(max residual), so every grid row passes. Throws
 * DegenerateGrid when there are no pairs, or a single ratio with varying counts.
 */
AssouadReport assouad_scan(const FiniteMetricSpace& s, const ScaleGrid& grid = {});

/**
 * Checks count <= C (R/r)^beta for every center and every pair of realized
 * distances 0 < r < R < Rbar. Counts come from a cheap net bound, refined by
 * a greedy cover and then the exact solver only where the cheap bound fails.
 */
AssouadReport verify_assouad(const FiniteMetricSpace& s, double beta, double C, double Rbar);

/// Smallest C for which verify_assouad(s, beta, C, Rbar) passes.
double minimal_assouad_constant(const FiniteMetricSpace& s, double beta, double Rbar);

/// Combines two at-scale bounds: C' = Ceta Cbeta (Reta/Rbeta)^eta, R' = Reta.
std::pair<double, double> rescale_assouad(double Ceta, double Reta, double eta, double Cbeta,
                                          double Rbeta, double beta);

/// CSV with columns center_label,R,r,count,bound,pass.
std::string evidence_csv(const FiniteMetricSpace& s, const AssouadReport& report);

}  // namespace coarsedim

#endif
