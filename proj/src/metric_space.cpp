#include "coarsedim/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_set>

namespace coarsedim {

namespace {

void check_index(const FiniteMetricSpace& s, Index i) {
    if (i >= s.size()) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "index " + std::to_string(i) + " outside space of size " + std::to_string(s.size()),
                    {i});
    }
}

}  // namespace

std::optional<Index> FiniteMetricSpace::find_label(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<Index>(it - labels_.begin());
}

double FiniteMetricSpace::diameter() const noexcept {
    double d = 0.0;
    for (double v : dist_) d = std::max(d, v);
    return d;
}

double FiniteMetricSpace::min_positive_distance() const noexcept {
    double best = std::numeric_limits<double>::infinity();
    for (double v : dist_) {
        if (v > 0.0 && v < best) best = v;
    }
    return std::isinf(best) ? 0.0 : best;
}

std::vector<double> FiniteMetricSpace::distinct_distances() const {
    std::vector<double> out;
    const std::size_t n = size();
    out.reserve(n * (n - (n > 0 ? 1 : 0)) / 2);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            if ((*this)(i, j) > 0.0) out.push_back((*this)(i, j));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Subset FiniteMetricSpace::all_points() const {
    Subset out(size());
    for (Index i = 0; i < size(); ++i) out[i] = i;
    return out;
}

FiniteMetricSpace FiniteMetricSpace::restrict_to(const Subset& subset) const {
    const std::size_t k = subset.size();
    std::vector<std::string> labels;
    labels.reserve(k);
    std::vector<double> dist(k * k);
    for (Index a = 0; a < k; ++a) {
        if (subset[a] >= size()) throw Error(ErrorCode::IndexOutOfRange, "restriction index", {subset[a]});
        labels.push_back(labels_[subset[a]]);
        for (Index b = 0; b < k; ++b) dist[a * k + b] = (*this)(subset[a], subset[b]);
    }
    std::set<Index> seen(subset.begin(), subset.end());
    if (seen.size() != k) throw Error(ErrorCode::DuplicateLabel, "restriction repeats a point");
    return FiniteMetricSpace(std::move(labels), std::move(dist), name_);
}

FiniteMetricSpace FiniteMetricSpace::scaled(double lambda) const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw Error(ErrorCode::NonPositiveLambda, "dilation factor must be positive");
    }
    std::vector<double> dist(dist_);
    for (double& v : dist) v *= lambda;
    return FiniteMetricSpace(labels_, std::move(dist), name_);
}

std::optional<std::vector<Index>> find_triangle_violation(std::span<const double> m, std::size_t n,
                                                          double tolerance) {
    // d(i,k) > d(i,j) + d(j,k) beyond relative tolerance reduces to
    // d(i,k) * (1 - tol) > d(i,j) + d(j,k) because d(i,k) is then the larger side.
    const double shrink = 1.0 - tolerance;
    for (Index i = 0; i < n; ++i) {
        const double* ri = m.data() + i * n;
        for (Index j = 0; j < n; ++j) {
            const double* rj = m.data() + j * n;
            const double dij = ri[j];
            bool bad = false;
            for (Index k = 0; k < n; ++k) bad |= ri[k] * shrink > dij + rj[k];
            if (!bad) continue;
            for (Index k = 0; k < n; ++k) {
                if (ri[k] * shrink > dij + rj[k]) return std::vector<Index>{i, j, k};
            }
        }
    }
    return std::nullopt;
}

FiniteMetricSpace validate_metric_flat(std::vector<double> m, std::vector<std::string> labels,
                                       double tolerance, std::string name) {
    const std::size_t n = labels.size();
    if (m.size() != n * n) {
        throw Error(ErrorCode::LabelMismatch, "matrix has " + std::to_string(m.size()) +
                                                  " entries for " + std::to_string(n) + " labels");
    }
    {
        std::unordered_set<std::string> seen;
        for (Index i = 0; i < n; ++i) {
            if (!seen.insert(labels[i]).second) {
                throw Error(ErrorCode::DuplicateLabel, "label '" + labels[i] + "' repeated", {i});
            }
        }
    }
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            const double v = m[i * n + j];
            if (!std::isfinite(v)) {
                throw Error(ErrorCode::InvalidArgument, "non-finite distance", {i, j});
            }
            if (v < 0.0) throw Error(ErrorCode::NegativeEntry, "negative distance", {i, j});
        }
    }
    for (Index i = 0; i < n; ++i) {
        if (std::abs(m[i * n + i]) > tolerance) {
            throw Error(ErrorCode::NonzeroDiagonal, "nonzero self-distance", {i});
        }
        m[i * n + i] = 0.0;
    }
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double a = m[i * n + j];
            const double b = m[j * n + i];
            if (std::abs(a - b) > tolerance * std::max(a, b)) {
                throw Error(ErrorCode::NonSymmetric, "d(i,j) != d(j,i)", {i, j});
            }
            const double avg = a == b ? a : 0.5 * (a + b);
            m[i * n + j] = avg;
            m[j * n + i] = avg;
        }
    }
    if (auto v = find_triangle_violation(m, n, tolerance)) {
        const auto& t = *v;
        throw Error(ErrorCode::TriangleViolation,
                    "d(" + std::to_string(t[0]) + "," + std::to_string(t[2]) + ") exceeds d(" +
                        std::to_string(t[0]) + "," + std::to_string(t[1]) + ") + d(" +
                        std::to_string(t[1]) + "," + std::to_string(t[2]) + ")",
                    t);
    }
    return FiniteMetricSpace(std::move(labels), std::move(m), std::move(name));
}

FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& matrix,
                                  std::vector<std::string> labels, double tolerance,
                                  std::string name) {
    const std::size_t n = matrix.size();
    std::vector<double> flat;
    flat.reserve(n * n);
    for (Index i = 0; i < n; ++i) {
        if (matrix[i].size() != n) {
            throw Error(ErrorCode::NonSquare, "row " + std::to_string(i) + " has " +
                                                  std::to_string(matrix[i].size()) + " entries",
                        {i});
        }
        flat.insert(flat.end(), matrix[i].begin(), matrix[i].end());
    }
    if (labels.size() != n) {
        throw Error(ErrorCode::LabelMismatch, std::to_string(labels.size()) + " labels for " +
                                                  std::to_string(n) + " rows");
    }
    return validate_metric_flat(std::move(flat), std::move(labels), tolerance, std::move(name));
}

PointedSpace make_pointed(FiniteMetricSpace space, Index base) {
    check_index(space, base);
    return PointedSpace{std::move(space), base};
}

PointedSpace dilate(const PointedSpace& s, double lambda) {
    return PointedSpace{s.space.scaled(lambda), s.base};
}

Subset ball(const FiniteMetricSpace& s, Index center, double r) {
    check_index(s, center);
    Subset out;
    auto row = s.row(center);
    for (Index i = 0; i < s.size(); ++i) {
        if (row[i] < r) out.push_back(i);
    }
    return out;
}

Subset neighborhood(const FiniteMetricSpace& s, const Subset& a, double delta) {
    if (a.empty()) throw Error(ErrorCode::EmptySet, "neighborhood of the empty set");
    for (Index i : a) check_index(s, i);
    if (delta <= 0.0) return make_subset(a);
    Subset out;
    for (Index x = 0; x < s.size(); ++x) {
        auto row = s.row(x);
        for (Index i : a) {
            if (row[i] < delta) {
                out.push_back(x);
                break;
            }
        }
    }
    return out;
}

Subset max_separated_net(const FiniteMetricSpace& s, double r, const std::optional<Subset>& within) {
    if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "net radius must be positive");
    Subset domain = within ? make_subset(*within) : s.all_points();
    Subset net;
    for (Index x : domain) {
        check_index(s, x);
        auto row = s.row(x);
        bool far = true;
        for (Index y : net) {
            if (row[y] < r) {
                far = false;
                break;
            }
        }
        if (far) net.push_back(x);
    }
    return net;
}

Subset iterated_neighborhood(const FiniteMetricSpace& s, Index x, double delta,
                             std::optional<std::size_t> steps) {
    check_index(s, x);
    std::vector<char> in(s.size(), 0);
    in[x] = 1;
    std::vector<Index> frontier{x};
    std::size_t level = 0;
    while (!frontier.empty() && (!steps || level < *steps)) {
        std::vector<Index> next;
        for (Index y = 0; y < s.size(); ++y) {
            if (in[y]) continue;
            auto row = s.row(y);
            for (Index f : frontier) {
                if (row[f] < delta) {
                    next.push_back(y);
                    break;
                }
            }
        }
        for (Index y : next) in[y] = 1;
        frontier = std::move(next);
        ++level;
    }
    Subset out;
    for (Index i = 0; i < s.size(); ++i) {
        if (in[i]) out.push_back(i);
    }
    return out;
}

double diameter(const FiniteMetricSpace& s, const Subset& a) {
    double d = 0.0;
    for (std::size_t p = 0; p < a.size(); ++p) {
        auto row = s.row(a[p]);
        for (std::size_t q = p + 1; q < a.size(); ++q) d = std::max(d, row[a[q]]);
    }
    return d;
}

double set_distance(const FiniteMetricSpace& s, const Subset& a, const Subset& b) {
    double d = std::numeric_limits<double>::infinity();
    for (Index i : a) {
        auto row = s.row(i);
        for (Index j : b) d = std::min(d, row[j]);
    }
    return d;
}

double point_set_distance(const FiniteMetricSpace& s, Index x, const Subset& a) {
    double d = std::numeric_limits<double>::infinity();
    auto row = s.row(x);
    for (Index i : a) d = std::min(d, row[i]);
    return d;
}

Subset make_subset(std::vector<Index> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    return indices;
}

Subset set_union(const Subset& a, const Subset& b) {
    Subset out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Subset set_difference(const Subset& a, const Subset& b) {
    Subset out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Subset set_intersection(const Subset& a, const Subset& b) {
    Subset out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool contains(const Subset& a, Index i) { return std::binary_search(a.begin(), a.end(), i); }

}  // namespace coarsedim
