#include "coarsedim/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace coarsedim {

namespace {

void check_cap(std::size_t n, std::size_t cap, const std::string& what) {
    if (n > cap) {
        throw Error(ErrorCode::TooLarge,
                    what + " has " + std::to_string(n) + " points, cap is " + std::to_string(cap));
    }
}

long double pow2(long double e) { return std::ldexp(1.0L, static_cast<int>(e)); }

std::string tuple_label(const std::string& head, int n, const std::vector<int>& choice) {
    std::string out = head + "(" + std::to_string(n) + ";";
    for (std::size_t k = 0; k < choice.size(); ++k) {
        if (k) out += ",";
        out += std::to_string(choice[k]);
    }
    return out + ")";
}

// Mixed-radix enumeration of the per-term choices.
template <class F>
void for_each_choice(const std::vector<int>& radix, F&& f) {
    std::vector<int> c(radix.size(), 0);
    while (true) {
        f(c);
        std::size_t k = radix.size();
        while (k > 0) {
            --k;
            if (++c[k] < radix[k]) break;
            c[k] = 0;
            if (k == 0) return;
        }
        if (radix.empty()) return;
    }
}

FiniteMetricSpace from_long_coords(const std::vector<std::vector<long double>>& coords,
                                   std::vector<std::string> labels, CoordMetric metric, std::string name) {
    const std::size_t n = coords.size();
    std::vector<double> flat(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            long double acc = 0.0L;
            for (std::size_t k = 0; k < coords[a].size(); ++k) {
                const long double diff = std::fabs(coords[a][k] - coords[b][k]);
                acc = metric == CoordMetric::Linf ? std::max(acc, diff) : acc + diff * diff;
            }
            const double d = static_cast<double>(metric == CoordMetric::Linf ? acc : std::sqrt(acc));
            flat[a * n + b] = flat[b * n + a] = d;
        }
    }
    return validate_metric_flat(std::move(flat), std::move(labels), kTolerance, std::move(name));
}

}  // namespace

FiniteMetricSpace space_from_coords(const std::vector<std::vector<double>>& coords, std::vector<std::string> labels,
                                    CoordMetric metric, double p, std::string name) {
    if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidArgument, "snowflake exponent must lie in (0, 1]");
    const std::size_t n = coords.size();
    if (labels.size() != n) throw Error(ErrorCode::LabelMismatch, "one label per coordinate vector");
    for (const auto& c : coords) {
        if (c.size() != (n ? coords[0].size() : 0)) throw Error(ErrorCode::InvalidArgument, "ragged coordinates");
    }
    std::vector<double> flat(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            double acc = 0.0;
            for (std::size_t k = 0; k < coords[a].size(); ++k) {
                const double diff = std::abs(coords[a][k] - coords[b][k]);
                acc = metric == CoordMetric::Linf ? std::max(acc, diff) : acc + diff * diff;
            }
            double d = metric == CoordMetric::Linf ? acc : std::sqrt(acc);
            if (p != 1.0) d = std::pow(d, p);
            flat[a * n + b] = flat[b * n + a] = d;
        }
    }
    return validate_metric_flat(std::move(flat), std::move(labels), kTolerance, std::move(name));
}

FiniteMetricSpace progression(int I, std::size_t cap) {
    if (I < 1) throw Error(ErrorCode::InvalidArgument, "truncation depth must be at least 1");
    struct Pt {
        int i, k;
    };
    std::vector<Pt> pts{{0, 0}};
    std::vector<std::string> labels{"0"};
    for (int i = 1; i <= I; ++i) {
        for (int k = 1; k <= i; ++k) {
            pts.push_back({i, k});
            labels.push_back("x(" + std::to_string(i) + "," + std::to_string(k) + ")");
        }
    }
    check_cap(pts.size(), cap, "progression");
    // Levels differ by many binary orders of magnitude; subtract the dominant terms first.
    auto lead = [](const Pt& p) { return p.i == 0 ? 0.0L : pow2(-p.i * p.i); };
    auto tail = [](const Pt& p) { return p.i == 0 ? 0.0L : p.k * pow2(-p.i * p.i * p.i); };
    const std::size_t n = pts.size();
    std::vector<double> flat(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const long double diff = (lead(pts[a]) - lead(pts[b])) + (tail(pts[a]) - tail(pts[b]));
            flat[a * n + b] = flat[b * n + a] = static_cast<double>(std::fabs(diff));
        }
    }
    return validate_metric_flat(std::move(flat), std::move(labels), kTolerance,
                                "progression(I=" + std::to_string(I) + ")");
}

namespace {

FiniteMetricSpace clusters(int N, int D, std::size_t cap, bool cube) {
    if (N < 1 || D < 1) throw Error(ErrorCode::InvalidArgument, "levels and depth must be at least 1");
    std::size_t total = 1;
    for (int n = 1; n <= N; ++n) {
        std::size_t count = 1;
        for (int i = n; i < n + D; ++i) {
            const std::size_t options = i % 2 == 1 ? (cube ? (std::size_t{1} << n) : static_cast<std::size_t>(n)) : 2;
            count *= options;
            if (count > cap) break;
        }
        total += count;
        check_cap(total, cap, cube ? "hypercube_clusters" : "circle_clusters");
    }
    const std::size_t dim = cube ? static_cast<std::size_t>(N) : 2;
    std::vector<std::vector<long double>> coords{std::vector<long double>(dim, 0.0L)};
    std::vector<std::string> labels{"0"};
    for (int n = 1; n <= N; ++n) {
        std::vector<int> radix;
        for (int i = n; i < n + D; ++i) radix.push_back(i % 2 == 1 ? (cube ? (1 << n) : n) : 2);
        for_each_choice(radix, [&](const std::vector<int>& choice) {
            std::vector<long double> x(dim, 0.0L);
            x[0] = pow2(-n * n);
            for (std::size_t t = 0; t < choice.size(); ++t) {
                const int i = n + static_cast<int>(t);
                const long double w = pow2(-i * i);
                if (i % 2 == 0) {
                    x[0] += w * choice[t];
                } else if (cube) {
                    for (int b = 0; b < n; ++b) {
                        if ((choice[t] >> b) & 1) x[static_cast<std::size_t>(b)] += w;
                    }
                } else {
                    const long double angle = 2.0L * std::numbers::pi_v<long double> * (choice[t] + 1) / n;
                    x[0] += w * std::cos(angle);
                    x[1] += w * std::sin(angle);
                }
            }
            coords.push_back(std::move(x));
            labels.push_back(tuple_label(cube ? "H" : "E", n, choice));
        });
    }
    const std::string name = std::string(cube ? "hypercube_clusters" : "circle_clusters") + "(N=" +
                             std::to_string(N) + ",D=" + std::to_string(D) + ")";
    return from_long_coords(coords, std::move(labels), cube ? CoordMetric::Linf : CoordMetric::L2, name);
}

}  // namespace

FiniteMetricSpace circle_clusters(int N, int D, std::size_t cap) { return clusters(N, D, cap, false); }

FiniteMetricSpace hypercube_clusters(int N, int D, std::size_t cap) { return clusters(N, D, cap, true); }

std::pair<FiniteMetricSpace, FiniteMetricSpace> two_distance(int Nmax, std::size_t cap) {
    if (Nmax < 1) throw Error(ErrorCode::InvalidArgument, "Nmax must be at least 1");
    std::vector<std::pair<int, int>> pts;
    std::vector<std::string> labels;
    for (int n = 1; n <= Nmax; ++n) {
        for (int j = 0; j <= n; ++j) {
            pts.push_back({n, j});
            labels.push_back("p(" + std::to_string(n) + "," + std::to_string(j) + ")");
        }
    }
    check_cap(pts.size(), cap, "two_distance");
    const std::size_t m = pts.size();
    std::vector<double> d1(m * m, 0.0), d2(m * m, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            const auto [n, j] = pts[a];
            const auto [n2, j2] = pts[b];
            double v1, v2;
            if (n != n2) {
                v1 = v2 = std::abs(std::ldexp(1.0, -n) - std::ldexp(1.0, -n2));
            } else {
                v1 = j == j2 ? 0.0 : std::ldexp(1.0, -n);
                v2 = std::ldexp(std::abs(j - j2) / static_cast<double>(n), -n);
            }
            if (v1 * v1 > v2 * (1.0 + kTolerance) || v2 > v1 * (1.0 + kTolerance)) {
                throw Error(ErrorCode::InvalidArgument, "d1^2 <= d2 <= d1 fails", {a, b});
            }
            d1[a * m + b] = v1;
            d2[a * m + b] = v2;
        }
    }
    const std::string tag = "(Nmax=" + std::to_string(Nmax) + ")";
    return {validate_metric_flat(std::move(d1), labels, kTolerance, "two_distance_d1" + tag),
            validate_metric_flat(std::move(d2), labels, kTolerance, "two_distance_d2" + tag)};
}

FiniteMetricSpace grid(const GridParams& g) {
    if (g.d < 1 || g.n < 1) throw Error(ErrorCode::InvalidArgument, "grid needs d >= 1 and n >= 1");
    std::size_t total = 1;
    for (int k = 0; k < g.d; ++k) {
        total *= static_cast<std::size_t>(g.n);
        check_cap(total, g.cap, "grid");
    }
    const double h = g.spacing ? *g.spacing : (g.n > 1 ? 1.0 / (g.n - 1) : 1.0);
    std::vector<std::vector<double>> coords;
    std::vector<std::string> labels;
    for_each_choice(std::vector<int>(static_cast<std::size_t>(g.d), g.n), [&](const std::vector<int>& c) {
        std::vector<double> x;
        std::string label = "g(";
        for (std::size_t k = 0; k < c.size(); ++k) {
            x.push_back(c[k] * h);
            label += (k ? "," : "") + std::to_string(c[k]);
        }
        coords.push_back(std::move(x));
        labels.push_back(label + ")");
    });
    const std::string name = "grid(d=" + std::to_string(g.d) + ",n=" + std::to_string(g.n) + ")";
    return space_from_coords(coords, std::move(labels), g.metric, g.p, name);
}

FiniteMetricSpace snowflake_path(int n, double p, std::size_t cap) {
    GridParams g;
    g.d = 1;
    g.n = n;
    g.p = p;
    g.cap = cap;
    FiniteMetricSpace s = grid(g);
    s.set_name("snowflake_path(n=" + std::to_string(n) + ",p=" + std::to_string(p) + ")");
    return s;
}

FiniteMetricSpace generate(const FixtureSpec& fixture) {
    switch (fixture.kind) {
        case FixtureKind::Progression:
            return progression(fixture.depth, fixture.grid.cap);
        case FixtureKind::CircleClusters:
            return circle_clusters(fixture.levels, fixture.depth, fixture.grid.cap);
        case FixtureKind::HypercubeClusters:
            return hypercube_clusters(fixture.levels, fixture.depth, fixture.grid.cap);
        case FixtureKind::TwoDistance: {
            auto pair = two_distance(fixture.levels, fixture.grid.cap);
            return fixture.which == 2 ? pair.second : pair.first;
        }
        case FixtureKind::Grid:
            return grid(fixture.grid);
        case FixtureKind::SnowflakePath:
            return snowflake_path(fixture.grid.n, fixture.grid.p, fixture.grid.cap);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown fixture kind");
}

TangentFamily candidate_family(FamilyKind kind, int n) {
    TangentFamily f;
    switch (kind) {
        case FamilyKind::TwoPoint:
            f.name = "two_point";
            f.generator = [](double t) {
                if (!(t > 0.0)) return make_pointed(validate_metric({{0.0}}, {"0"}), 0);
                return make_pointed(validate_metric({{0.0, t}, {t, 0.0}}, {"0", "t"}), 0);
            };
            return f;
        case FamilyKind::ScaledSn:
            if (n < 1) throw Error(ErrorCode::InvalidArgument, "S_n needs n >= 1");
            f.name = "scaled_S" + std::to_string(n);
            f.generator = [n](double t) {
                if (!(t > 0.0)) return make_pointed(validate_metric({{0.0}}, {"0"}), 0);
                std::vector<std::vector<double>> coords;
                std::vector<std::string> labels;
                for (int k = 1; k <= n; ++k) {
                    const double angle = 2.0 * std::numbers::pi * k / n;
                    coords.push_back({t * std::cos(angle), t * std::sin(angle)});
                    labels.push_back("s" + std::to_string(k));
                }
                // k = n sits at angle 2 pi, the point (t, 0).
                return make_pointed(space_from_coords(coords, std::move(labels), CoordMetric::L2),
                                    static_cast<Index>(n - 1));
            };
            return f;
        case FamilyKind::Cube:
            if (n < 1 || n > 10) throw Error(ErrorCode::InvalidArgument, "cube needs 1 <= n <= 10");
            f.name = "cube" + std::to_string(n);
            f.generator = [n](double t) {
                if (!(t > 0.0)) return make_pointed(validate_metric({{0.0}}, {"0"}), 0);
                std::vector<std::vector<double>> coords;
                std::vector<std::string> labels;
                for (int mask = 0; mask < (1 << n); ++mask) {
                    std::vector<double> x;
                    for (int b = 0; b < n; ++b) x.push_back((mask >> b) & 1 ? t : 0.0);
                    coords.push_back(std::move(x));
                    labels.push_back("c" + std::to_string(mask));
                }
                return make_pointed(space_from_coords(coords, std::move(labels), CoordMetric::Linf), 0);
            };
            return f;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown family kind");
}

}  // namespace coarsedim
