#ifndef COARSEDIM_TANGENTS_HPP
#define COARSEDIM_TANGENTS_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "coarsedim/gromov_hausdorff.hpp"
#include "coarsedim/metric_space.hpp"

namespace coarsedim {

/**
 * Restriction of (lambda X, x) to the open ball of radius 1/eps around x in the
 * dilated metric. The base point is renumbered into the window.
 */
PointedSpace dilated_window(const FiniteMetricSpace& s, Index x, double lambda, double eps);

/// Same window for an already pointed space.
PointedSpace dilated_window(const PointedSpace& p, double lambda, double eps);

/// @brief A one-parameter family of candidate tangents.
struct TangentFamily {
    std::string name;
    std::function<PointedSpace(double t)> generator;
};

struct Closeness {
    double lower = 0.5;
    double upper = 0.5;
    double best_param = 0.0;
};

/**
 * Capped pointed closeness between the dilated window at (x, lambda) and the
 * closest member of `family` over `params` (members windowed the same way).
 * Throws WindowTooLarge when a window plus member exceeds the exact solver cap.
 */
Closeness closeness_to_family(const FiniteMetricSpace& s, Index x, double lambda, double eps_window,
                              const TangentFamily& family, const std::vector<double>& params,
                              std::size_t cap = kGhExactCap);

/// n geometrically spaced values from lo to hi inclusive.
std::vector<double> geometric_params(double lo, double hi, std::size_t n);

struct FamilyChoice {
    TangentFamily family;
    std::vector<double> params;
};

struct ProfileRow {
    /// kNoIndex marks the summary row (sup over x for one lambda).
    Index x = 0;
    double lambda = 0.0;
    double eps_window = 0.0;
    double value_lower = 0.0;
    double value_upper = 0.0;
    double best_param = 0.0;
};

inline constexpr Index kNoIndex = std::numeric_limits<Index>::max();

/**
 * closeness_to_family() for every x in K and lambda in `lambdas`, followed after
 * each lambda by a summary row holding the sup over x (and the param of the
 * point attaining it).
 */
std::vector<ProfileRow> uniform_profile(const FiniteMetricSpace& s, const Subset& K,
                                        const std::vector<double>& lambdas, double eps_window,
                                        const std::function<FamilyChoice(Index)>& family_for,
                                        std::size_t cap = kGhExactCap);

/// CSV with columns x_label,lambda,epsilon_window,value_lower,value_upper,best_family_param.
std::string profile_csv(const FiniteMetricSpace& s, const std::vector<ProfileRow>& rows);

struct WeakTangentWitness {
    std::size_t i = 0;
    bool found = false;
    Index x = 0;
    double r = 0.0;
    /// Diameter of the r/i chain component of x.
    double diameter = 0.0;
};

/**
 * For i = 1..iMax, looks for a point x and a radius r < 1/i whose open r/i
 * chain component has diameter > r. Components only change when r/i crosses a
 * realized distance, so every interval between breakpoints is decided exactly;
 * the reported r is the midpoint of the feasible part of the highest such
 * interval (ties to the lowest x). found = false when there is none.
 */
std::vector<WeakTangentWitness> weak_tangent_search(const FiniteMetricSpace& s, std::size_t iMax);

}  // namespace coarsedim

#endif
