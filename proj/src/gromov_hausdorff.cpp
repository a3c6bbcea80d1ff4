#include "coarsedim/gromov_hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coarsedim/covering.hpp"

namespace coarsedim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_pointed(const PointedSpace& p) {
    if (p.base >= p.space.size()) throw Error(ErrorCode::IndexOutOfRange, "base point", {p.base});
}

// Least-distortion relation containing the base pair and touching every listed point.
class DistortionSearch {
public:
    DistortionSearch(const FiniteMetricSpace& X, const FiniteMetricSpace& Y) : X_(X), Y_(Y) {}

    // Returns true and fills `best` when a relation with distortion < cutoff exists.
    bool run(Index bx, Index by, const std::vector<Index>& wx, const std::vector<Index>& wy, double cutoff,
             double& best_value, Correspondence& best) {
        items_.clear();
        for (Index x : wx) {
            if (x != bx) items_.push_back({true, x});
        }
        for (Index y : wy) {
            if (y != by) items_.push_back({false, y});
        }
        rel_ = {{bx, by}};
        touched_x_.assign(X_.size(), 0);
        touched_y_.assign(Y_.size(), 0);
        touched_x_[bx] = 1;
        touched_y_[by] = 1;
        best_ = cutoff;
        found_ = false;
        recurse(0, 0.0);
        if (found_) {
            best_value = best_;
            best = best_rel_;
        }
        return found_;
    }

private:
    struct Item {
        bool in_x;
        Index p;
    };

    double added(Index a, Index b) const {
        double worst = 0.0;
        for (const auto& [u, v] : rel_) worst = std::max(worst, std::abs(X_(a, u) - Y_(b, v)));
        return worst;
    }

    void recurse(std::size_t k, double current) {
        if (current >= best_) return;
        while (k < items_.size() &&
               (items_[k].in_x ? touched_x_[items_[k].p] : touched_y_[items_[k].p])) {
            ++k;
        }
        if (k == items_.size()) {
            best_ = current;
            best_rel_ = rel_;
            found_ = true;
            return;
        }
        const Item item = items_[k];
        std::vector<std::pair<double, Index>> options;
        const std::size_t m = item.in_x ? Y_.size() : X_.size();
        for (Index q = 0; q < m; ++q) {
            const double cost = item.in_x ? added(item.p, q) : added(q, item.p);
            const double total = std::max(current, cost);
            if (total < best_) options.push_back({total, q});
        }
        std::stable_sort(options.begin(), options.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [total, q] : options) {
            if (total >= best_) break;
            const Index a = item.in_x ? item.p : q;
            const Index b = item.in_x ? q : item.p;
            rel_.push_back({a, b});
            const char old_x = touched_x_[a], old_y = touched_y_[b];
            touched_x_[a] = 1;
            touched_y_[b] = 1;
            recurse(k + 1, total);
            touched_x_[a] = old_x;
            touched_y_[b] = old_y;
            rel_.pop_back();
        }
    }

    const FiniteMetricSpace& X_;
    const FiniteMetricSpace& Y_;
    std::vector<Item> items_;
    Correspondence rel_;
    Correspondence best_rel_;
    std::vector<char> touched_x_, touched_y_;
    double best_ = kInf;
    bool found_ = false;
};

std::vector<Index> window(const PointedSpace& p, double radius_inclusive) {
    std::vector<Index> out;
    auto row = p.space.row(p.base);
    for (Index i = 0; i < p.space.size(); ++i) {
        if (row[i] <= radius_inclusive) out.push_back(i);
    }
    std::stable_sort(out.begin(), out.end(), [&](Index a, Index b) { return row[a] < row[b]; });
    return out;
}

}  // namespace

double witnessed_epsilon(const PointedSpace& X, const PointedSpace& Y, std::span<const double> cross) {
    const std::size_t nx = X.space.size(), ny = Y.space.size();
    double eps = cross[X.base * ny + Y.base];
    auto bxrow = X.space.row(X.base);
    for (Index x = 0; x < nx; ++x) {
        double e = kInf;
        for (Index y = 0; y < ny; ++y) e = std::min(e, cross[x * ny + y]);
        eps = std::max(eps, bxrow[x] > 0.0 ? std::min(e, 1.0 / bxrow[x]) : e);
    }
    auto byrow = Y.space.row(Y.base);
    for (Index y = 0; y < ny; ++y) {
        double e = kInf;
        for (Index x = 0; x < nx; ++x) e = std::min(e, cross[x * ny + y]);
        eps = std::max(eps, byrow[y] > 0.0 ? std::min(e, 1.0 / byrow[y]) : e);
    }
    return eps;
}

double distortion(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, const Correspondence& corr) {
    double worst = 0.0;
    for (const auto& [a, b] : corr) {
        for (const auto& [u, v] : corr) worst = std::max(worst, std::abs(X(a, u) - Y(b, v)));
    }
    return worst;
}

DistanceExtension induced_extension(const PointedSpace& X, const PointedSpace& Y, const Correspondence& corr,
                                    double h) {
    check_pointed(X);
    check_pointed(Y);
    if (corr.empty()) throw Error(ErrorCode::EmptyCorrespondence, "relation has no pairs");
    const std::size_t nx = X.space.size(), ny = Y.space.size();
    for (const auto& [a, b] : corr) {
        if (a >= nx || b >= ny) throw Error(ErrorCode::IndexOutOfRange, "relation pair", {a, b});
    }
    DistanceExtension ext{nx, ny, std::vector<double>(nx * ny, kInf), 0.0};
    for (Index x = 0; x < nx; ++x) {
        for (Index y = 0; y < ny; ++y) {
            double v = kInf;
            for (const auto& [a, b] : corr) v = std::min(v, X.space(x, a) + h + Y.space(b, y));
            ext.cross[x * ny + y] = v;
        }
    }
    ext.epsilon = witnessed_epsilon(X, Y, ext.cross);
    return ext;
}

GhBracket gh_exact_small(const PointedSpace& X, const PointedSpace& Y, std::size_t cap) {
    check_pointed(X);
    check_pointed(Y);
    if (X.space.size() + Y.space.size() > cap) {
        throw Error(ErrorCode::TooLarge, "exact pointed closeness limited to " + std::to_string(cap) + " points");
    }
    std::vector<double> levels;
    for (double v : X.space.row(X.base)) {
        if (v > 0.0) levels.push_back(v);
    }
    for (double v : Y.space.row(Y.base)) {
        if (v > 0.0) levels.push_back(v);
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    double best = 0.5;
    Correspondence best_rel{{X.base, Y.base}};
    DistortionSearch search(X.space, Y.space);
    for (std::size_t t = 0; t <= levels.size(); ++t) {
        // Between breakpoints the windows are fixed: everything up to the previous level.
        const double next = t < levels.size() ? 1.0 / levels[t] : 0.0;
        if (next >= best) continue;
        const double reach = t == 0 ? 0.0 : levels[t - 1];
        double g = 0.0;
        Correspondence rel;
        if (!search.run(X.base, Y.base, window(X, reach), window(Y, reach), 2.0 * best, g, rel)) break;
        const double value = std::max(g / 2.0, next);
        if (value < best) {
            best = value;
            best_rel = rel;
        }
    }
    GhBracket out;
    out.lower = best;
    out.relation = best_rel;
    out.witness = induced_extension(X, Y, best_rel, distortion(X.space, Y.space, best_rel) / 2.0);
    out.upper = std::min(0.5, out.witness.epsilon);
    return out;
}

GhBracket gh_upper(const PointedSpace& X, const PointedSpace& Y, const Correspondence& corr) {
    if (corr.empty()) throw Error(ErrorCode::EmptyCorrespondence, "relation has no pairs");
    GhBracket out;
    out.relation = corr;
    out.witness = induced_extension(X, Y, corr, distortion(X.space, Y.space, corr) / 2.0);
    out.upper = std::min(0.5, out.witness.epsilon);
    out.lower = 0.0;
    return out;
}

DistanceExtension identity_extension(const PointedSpace& X) {
    Correspondence corr;
    for (Index i = 0; i < X.space.size(); ++i) corr.push_back({i, i});
    DistanceExtension ext = induced_extension(X, X, corr, 0.0);
    return ext;
}

DistanceExtension compose_extensions(const PointedSpace& X, const PointedSpace& Y, const PointedSpace& Z,
                                     const DistanceExtension& xy, const DistanceExtension& yz) {
    const std::size_t nx = X.space.size(), ny = Y.space.size(), nz = Z.space.size();
    if (xy.rows != nx || xy.cols != ny || yz.rows != ny || yz.cols != nz || xy.cross.size() != nx * ny ||
        yz.cross.size() != ny * nz) {
        throw Error(ErrorCode::MiddleMismatch, "extensions do not share the middle space");
    }
    DistanceExtension out{nx, nz, std::vector<double>(nx * nz, kInf), 0.0};
    for (Index x = 0; x < nx; ++x) {
        for (Index y = 0; y < ny; ++y) {
            const double a = xy(x, y);
            for (Index z = 0; z < nz; ++z) {
                double& v = out.cross[x * nz + z];
                v = std::min(v, a + yz(y, z));
            }
        }
    }
    out.epsilon = witnessed_epsilon(X, Z, out.cross);
    return out;
}

ExtensionReport validate_extension(const PointedSpace& X, const PointedSpace& Y, const DistanceExtension& ext,
                                   double tolerance) {
    ExtensionReport report;
    const std::size_t nx = X.space.size(), ny = Y.space.size();
    if (ext.rows != nx || ext.cols != ny || ext.cross.size() != nx * ny) {
        throw Error(ErrorCode::InvalidArgument, "extension shape does not match the spaces");
    }
    const std::size_t n = nx + ny;
    std::vector<double> block(n * n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            double v;
            if (i < nx && j < nx) v = X.space(i, j);
            else if (i >= nx && j >= nx) v = Y.space(i - nx, j - nx);
            else if (i < nx) v = ext(i, j - nx);
            else v = ext(j, i - nx);
            block[i * n + j] = v;
        }
    }
    for (Index k = 0; k < block.size(); ++k) {
        if (!(block[k] >= 0.0) || !std::isfinite(block[k])) {
            report.semimetric = false;
            report.witness = {k / n, k % n};
        }
    }
    if (report.semimetric) {
        if (auto v = find_triangle_violation(block, n, tolerance)) {
            report.semimetric = false;
            report.witness = *v;
        }
    }
    const double eps = ext.epsilon;
    const double slack = eps + tolerance * std::max(1.0, eps);
    report.base_close = ext(X.base, Y.base) <= slack;
    // Points on the window boundary (up to round-off in 1/eps) are not required.
    const double reach = eps > 0.0 ? (1.0 - tolerance) / eps : kInf;
    for (Index x = 0; x < nx && report.x_window_covered; ++x) {
        if (!(X.space(X.base, x) < reach)) continue;
        double e = kInf;
        for (Index y = 0; y < ny; ++y) e = std::min(e, ext(x, y));
        if (e > slack) {
            report.x_window_covered = false;
            if (report.witness.empty()) report.witness = {x};
        }
    }
    for (Index y = 0; y < ny && report.y_window_covered; ++y) {
        if (!(Y.space(Y.base, y) < reach)) continue;
        double e = kInf;
        for (Index x = 0; x < nx; ++x) e = std::min(e, ext(x, y));
        if (e > slack) {
            report.y_window_covered = false;
            if (report.witness.empty()) report.witness = {nx + y};
        }
    }
    report.pass = report.semimetric && report.base_close && report.x_window_covered && report.y_window_covered;
    return report;
}

bool covers_ball(const FiniteMetricSpace& s, Index center, double ball_radius, const std::vector<Index>& centers,
                 double radius) {
    for (Index p : ball(s, center, ball_radius)) {
        bool hit = false;
        for (Index c : centers) {
            if (s(p, c) < radius) {
                hit = true;
                break;
            }
        }
        if (!hit) return false;
    }
    return true;
}

Subset transfer_ball_cover(const PointedSpace& X, const PointedSpace& Y, const DistanceExtension& ext, double delta,
                           const std::vector<Index>& y_centers) {
    check_pointed(X);
    check_pointed(Y);
    if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
    const std::size_t nx = X.space.size(), ny = Y.space.size();
    if (ext.rows != nx || ext.cols != ny) throw Error(ErrorCode::InvalidArgument, "extension shape");
    for (Index y : y_centers) {
        if (y >= ny) throw Error(ErrorCode::IndexOutOfRange, "cover center", {y});
    }
    if (!covers_ball(Y.space, Y.base, 2.0, y_centers, delta / 2.0)) {
        throw Error(ErrorCode::InvalidArgument, "centers do not cover B(y, 2) with radius delta/2");
    }
    const double eps = delta / 4.0;
    if (ext.epsilon > eps * (1.0 + kTolerance)) {
        throw Error(ErrorCode::EpsilonTooLarge, "extension must witness closeness delta/4");
    }
    Subset out;
    out.reserve(y_centers.size());
    for (std::size_t j = 0; j < y_centers.size(); ++j) {
        const Index y = y_centers[j];
        Index best = X.base;
        double best_d = kInf;
        for (Index x = 0; x < nx; ++x) {
            if (ext(x, y) < best_d) {
                best_d = ext(x, y);
                best = x;
            }
        }
        if (!(best_d < eps) && Y.space(Y.base, y) <= 2.0 + delta / 2.0) {
            throw Error(ErrorCode::CenterNotFound, "no point of X within delta/4 of a cover center", {j, y});
        }
        out.push_back(best);
    }
    return out;
}

double refinement_delta(double alpha, double beta, double C) {
    if (!(beta > alpha) || !(alpha >= 0.0) || !(C > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "refinement needs beta > alpha >= 0 and C > 0");
    }
    return std::pow(C * std::pow(4.0, alpha), -1.0 / (beta - alpha));
}

CoverOracle direct_cover_oracle(const FiniteMetricSpace& s) {
    return [&s](Index center, double radius, double delta) {
        return cover_set(s, ball(s, center, radius), delta * radius, CoverMode::Greedy).centers;
    };
}

RefinementResult iterated_refinement(const FiniteMetricSpace& s, Index x, double R, double r, double alpha,
                                     double beta, double C, const CoverOracle& oracle) {
    if (x >= s.size()) throw Error(ErrorCode::IndexOutOfRange, "center", {x});
    if (!(r > 0.0) || !(r < R)) throw Error(ErrorCode::BadScales, "refinement needs 0 < r < R");
    RefinementResult out;
    out.delta = refinement_delta(alpha, beta, C);
    if (!(out.delta < 1.0)) throw Error(ErrorCode::BadScales, "refinement ratio must be below 1");
    out.L = std::pow(out.delta, -beta);
    const auto limit = static_cast<std::size_t>(std::floor(out.L * (1.0 + 1e-12)));
    std::size_t rounds = 1;
    for (double ratio = out.delta; ratio > r / R; ratio *= out.delta) ++rounds;
    out.rounds = rounds;

    Subset centers{x};
    double radius = R;
    for (std::size_t k = 0; k < rounds; ++k) {
        std::vector<Index> next;
        for (Index c : centers) {
            auto answer = oracle(c, radius, out.delta);
            if (answer.size() > limit) {
                throw Error(ErrorCode::OracleFailure,
                            "oracle used " + std::to_string(answer.size()) + " balls, bound is " +
                                std::to_string(limit),
                            {c});
            }
            next.insert(next.end(), answer.begin(), answer.end());
        }
        centers = make_subset(std::move(next));
        radius *= out.delta;
    }
    out.radius = radius;
    out.centers = std::move(centers);
    out.count_bound = std::pow(out.delta, -beta) * std::pow(R / r, beta);
    return out;
}

}  // namespace coarsedim
