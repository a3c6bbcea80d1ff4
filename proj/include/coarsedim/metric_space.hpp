#ifndef COARSEDIM_METRIC_SPACE_HPP
#define COARSEDIM_METRIC_SPACE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coarsedim/errors.hpp"

namespace coarsedim {

using Index = std::size_t;

/// Sorted, duplicate-free list of point indices.
using Subset = std::vector<Index>;

/// Relative tolerance used when checking metric axioms and certificate inequalities.
inline constexpr double kTolerance = 1e-9;

/**
 * @brief A finite metric space: labeled points with a full distance matrix.
 *
 * Instances are only produced by validate_metric() or by operations that
 * preserve the metric axioms (restriction, dilation), so every instance
 * satisfies symmetry, zero diagonal and the triangle inequality up to
 * kTolerance. Distances are stored row-major.
 */
class FiniteMetricSpace {
public:
    FiniteMetricSpace() = default;

    std::size_t size() const noexcept { return labels_.size(); }
    bool empty() const noexcept { return labels_.empty(); }

    double operator()(Index i, Index j) const noexcept { return dist_[i * size() + j]; }

    std::span<const double> row(Index i) const noexcept {
        return {dist_.data() + i * size(), size()};
    }
    std::span<const double> flat() const noexcept { return dist_; }

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(Index i) const { return labels_.at(i); }
    std::optional<Index> find_label(const std::string& label) const;

    const std::string& name() const noexcept { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    double diameter() const noexcept;
    /// Smallest nonzero distance; 0 for spaces with fewer than two points.
    double min_positive_distance() const noexcept;
    /// Sorted distinct positive distance values.
    std::vector<double> distinct_distances() const;

    Subset all_points() const;

    /// The subspace on `subset` (indices renumbered 0..k-1 in subset order).
    FiniteMetricSpace restrict_to(const Subset& subset) const;

    /// Same points with every distance multiplied by `lambda`.
    FiniteMetricSpace scaled(double lambda) const;

    bool operator==(const FiniteMetricSpace& other) const {
        return labels_ == other.labels_ && dist_ == other.dist_;
    }

private:
    friend FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>&,
                                             std::vector<std::string>, double, std::string);
    friend FiniteMetricSpace validate_metric_flat(std::vector<double>, std::vector<std::string>,
                                                  double, std::string);

    FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> dist, std::string name)
        : labels_(std::move(labels)), dist_(std::move(dist)), name_(std::move(name)) {}

    std::vector<std::string> labels_;
    std::vector<double> dist_;
    std::string name_;
};

/**
 * Checks the metric axioms and builds a space. Throws Error with code
 * NonSquare, LabelMismatch, DuplicateLabel, NegativeEntry, NonzeroDiagonal,
 * NonSymmetric or TriangleViolation; the error's indices name the offending
 * entries (for TriangleViolation: i, j, k with d(i,k) > d(i,j) + d(j,k)).
 */
FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& matrix,
                                  std::vector<std::string> labels,
                                  double tolerance = kTolerance,
                                  std::string name = {});

/// Same as validate_metric() for a row-major n*n buffer.
FiniteMetricSpace validate_metric_flat(std::vector<double> matrix,
                                       std::vector<std::string> labels,
                                       double tolerance = kTolerance,
                                       std::string name = {});

/// First triangle-inequality violation (i, j, k) of an n*n row-major matrix, if any.
std::optional<std::vector<Index>> find_triangle_violation(std::span<const double> matrix,
                                                          std::size_t n, double tolerance);

struct PointedSpace {
    FiniteMetricSpace space;
    Index base = 0;
};

PointedSpace make_pointed(FiniteMetricSpace space, Index base);

/// λX: all distances multiplied by lambda, base point kept. Throws NonPositiveLambda.
PointedSpace dilate(const PointedSpace& s, double lambda);

/// Open ball {i : d(center, i) < r}.
Subset ball(const FiniteMetricSpace& s, Index center, double r);

/// Open neighborhood {x : dist(x, A) < delta}; delta == 0 returns A itself.
Subset neighborhood(const FiniteMetricSpace& s, const Subset& a, double delta);

/**
 * Greedy maximal separated net in ascending index order: a point joins when it
 * is at distance >= r from every point already chosen. Every point of `within`
 * (default: the whole space) ends up at distance < r from the net.
 */
Subset max_separated_net(const FiniteMetricSpace& s, double r,
                         const std::optional<Subset>& within = std::nullopt);

/**
 * n-fold open delta-neighborhood of {x}. `steps == nullopt` means the union
 * over all n, i.e. the delta-chain component of x.
 */
Subset iterated_neighborhood(const FiniteMetricSpace& s, Index x, double delta,
                             std::optional<std::size_t> steps);

double diameter(const FiniteMetricSpace& s, const Subset& a);
/// inf over a in A, b in B of d(a, b); +inf when either set is empty.
double set_distance(const FiniteMetricSpace& s, const Subset& a, const Subset& b);
double point_set_distance(const FiniteMetricSpace& s, Index x, const Subset& a);

Subset make_subset(std::vector<Index> indices);
Subset set_union(const Subset& a, const Subset& b);
Subset set_difference(const Subset& a, const Subset& b);
Subset set_intersection(const Subset& a, const Subset& b);
bool contains(const Subset& a, Index i);

}  // namespace coarsedim

#endif
