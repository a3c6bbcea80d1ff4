#include "coarsedim/tangents.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coarsedim/parallel.hpp"

namespace coarsedim {

PointedSpace dilated_window(const PointedSpace& p, double lambda, double eps) {
    if (!(lambda > 0.0)) throw Error(ErrorCode::NonPositiveLambda, "dilation factor must be positive");
    if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "window parameter must be positive");
    if (p.base >= p.space.size()) throw Error(ErrorCode::IndexOutOfRange, "base point", {p.base});
    const PointedSpace big = dilate(p, lambda);
    const Subset keep = ball(big.space, big.base, 1.0 / eps);
    const auto pos = std::lower_bound(keep.begin(), keep.end(), big.base) - keep.begin();
    return make_pointed(big.space.restrict_to(keep), static_cast<Index>(pos));
}

PointedSpace dilated_window(const FiniteMetricSpace& s, Index x, double lambda, double eps) {
    if (x >= s.size()) throw Error(ErrorCode::IndexOutOfRange, "base point", {x});
    return dilated_window(make_pointed(s, x), lambda, eps);
}

Closeness closeness_to_family(const FiniteMetricSpace& s, Index x, double lambda, double eps_window,
                              const TangentFamily& family, const std::vector<double>& params, std::size_t cap) {
    if (params.empty()) throw Error(ErrorCode::InvalidArgument, "parameter grid is empty");
    const PointedSpace window = dilated_window(s, x, lambda, eps_window);
    Closeness out;
    bool first = true;
    for (double t : params) {
        const PointedSpace member = dilated_window(family.generator(t), 1.0, eps_window);
        if (window.space.size() + member.space.size() > cap) {
            throw Error(ErrorCode::WindowTooLarge,
                        "window has " + std::to_string(window.space.size()) + " points and member " +
                            std::to_string(member.space.size()) + ", cap is " + std::to_string(cap));
        }
        const GhBracket b = gh_exact_small(window, member, cap);
        if (first || b.lower < out.lower) {
            out.lower = b.lower;
            out.best_param = t;
        }
        out.upper = first ? b.upper : std::min(out.upper, b.upper);
        first = false;
    }
    return out;
}

std::vector<double> geometric_params(double lo, double hi, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {lo};
    std::vector<double> out;
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(n - 1)));
    }
    out.back() = hi;
    return out;
}

std::vector<ProfileRow> uniform_profile(const FiniteMetricSpace& s, const Subset& K,
                                        const std::vector<double>& lambdas, double eps_window,
                                        const std::function<FamilyChoice(Index)>& family_for, std::size_t cap) {
    std::vector<ProfileRow> out;
    for (double lambda : lambdas) {
        std::vector<ProfileRow> rows(K.size());
        parallel_for(K.size(), [&](std::size_t k) {
            const FamilyChoice choice = family_for(K[k]);
            const Closeness c = closeness_to_family(s, K[k], lambda, eps_window, choice.family, choice.params, cap);
            rows[k] = {K[k], lambda, eps_window, c.lower, c.upper, c.best_param};
        });
        ProfileRow sup{kNoIndex, lambda, eps_window, 0.0, 0.0, 0.0};
        for (const auto& row : rows) {
            if (row.value_lower > sup.value_lower) {
                sup.value_lower = row.value_lower;
                sup.best_param = row.best_param;
            }
            sup.value_upper = std::max(sup.value_upper, row.value_upper);
        }
        out.insert(out.end(), rows.begin(), rows.end());
        out.push_back(sup);
    }
    return out;
}

std::string profile_csv(const FiniteMetricSpace& s, const std::vector<ProfileRow>& rows) {
    std::ostringstream os;
    os.precision(17);
    os << "x_label,lambda,epsilon_window,value_lower,value_upper,best_family_param\n";
    for (const auto& row : rows) {
        os << (row.x == kNoIndex ? std::string("sup") : s.label(row.x)) << ',' << row.lambda << ','
           << row.eps_window << ',' << row.value_lower << ',' << row.value_upper << ',' << row.best_param << '\n';
    }
    return os.str();
}

namespace {

// Component id and diameter of every point under chains with steps <= step.
void chain_components(const FiniteMetricSpace& s, double step, std::vector<std::size_t>& comp,
                      std::vector<double>& diam) {
    const std::size_t n = s.size();
    comp.assign(n, n);
    diam.clear();
    for (Index start = 0; start < n; ++start) {
        if (comp[start] != n) continue;
        const std::size_t id = diam.size();
        std::vector<Index> members{start};
        comp[start] = id;
        for (std::size_t k = 0; k < members.size(); ++k) {
            auto row = s.row(members[k]);
            for (Index q = 0; q < n; ++q) {
                if (comp[q] == n && row[q] <= step) {
                    comp[q] = id;
                    members.push_back(q);
                }
            }
        }
        double d = 0.0;
        for (Index a : members) {
            for (Index b : members) d = std::max(d, s(a, b));
        }
        diam.push_back(d);
    }
}

}  // namespace

std::vector<WeakTangentWitness> weak_tangent_search(const FiniteMetricSpace& s, std::size_t iMax) {
    const std::vector<double> steps = s.distinct_distances();
    std::vector<WeakTangentWitness> out;
    std::vector<std::size_t> comp;
    std::vector<double> diam;
    for (std::size_t i = 1; i <= iMax; ++i) {
        WeakTangentWitness w;
        w.i = i;
        const double fi = static_cast<double>(i);
        // For r/i in (steps[k], steps[k+1]] the open r/i chains are the chains with steps <= steps[k].
        for (std::size_t k = steps.size(); k-- > 0 && !w.found;) {
            const double lo = fi * steps[k];
            double cap = 1.0 / fi;
            if (k + 1 < steps.size()) cap = std::min(cap, fi * steps[k + 1]);
            if (!(lo < cap)) continue;
            chain_components(s, steps[k], comp, diam);
            for (Index x = 0; x < s.size(); ++x) {
                const double hi = std::min(cap, diam[comp[x]]);
                if (hi > lo) {
                    w = {i, true, x, lo + (hi - lo) / 2.0, diam[comp[x]]};
                    break;
                }
            }
        }
        out.push_back(w);
    }
    return out;
}

}  // namespace coarsedim
