#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>

#include "coarsedim/nagata.hpp"

namespace coarsedim {

namespace {

using Bits = std::vector<std::uint64_t>;

void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

std::size_t popcount(const Bits& b) {
    std::size_t n = 0;
    for (auto w : b) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

void or_into(Bits& dst, const Bits& src) {
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] |= src[k];
}

class CliqueCover {
public:
    CliqueCover(std::vector<Bits> members, std::vector<std::vector<char>> adj)
        : members_(std::move(members)), adj_(std::move(adj)) {}

    std::size_t solve(std::size_t words) {
        std::vector<std::size_t> all(members_.size());
        std::iota(all.begin(), all.end(), 0);
        recurse(all, Bits(words, 0));
        return best_;
    }

private:
    void recurse(const std::vector<std::size_t>& cands, const Bits& met) {
        best_ = std::max(best_, popcount(met));
        Bits bound = met;
        for (auto p : cands) or_into(bound, members_[p]);
        if (popcount(bound) <= best_) return;
        for (std::size_t a = 0; a < cands.size(); ++a) {
            std::vector<std::size_t> next;
            for (std::size_t b = a + 1; b < cands.size(); ++b) {
                if (adj_[cands[a]][cands[b]]) next.push_back(cands[b]);
            }
            Bits m = met;
            or_into(m, members_[cands[a]]);
            recurse(next, m);
        }
    }

    std::vector<Bits> members_;
    std::vector<std::vector<char>> adj_;
    std::size_t best_ = 0;
};

class ColoringSearch {
public:
    ColoringSearch(const FiniteMetricSpace& s, double scale, double c, double tol)
        : s_(s), wide_(scale * (1.0 + tol)), close_(c * scale * (1.0 - tol)), color_(s.size(), -1) {}

    bool feasible(int colors) {
        colors_ = colors;
        std::fill(color_.begin(), color_.end(), -1);
        return assign(0, 0);
    }

private:
    // Chain component of p among points already holding p's color, checked for diameter.
    bool component_ok(Index p) const {
        std::vector<Index> comp{p};
        std::vector<char> seen(s_.size(), 0);
        seen[p] = 1;
        for (std::size_t k = 0; k < comp.size(); ++k) {
            for (Index q = 0; q < s_.size(); ++q) {
                if (!seen[q] && color_[q] == color_[p] && s_(comp[k], q) < close_) {
                    seen[q] = 1;
                    comp.push_back(q);
                }
            }
        }
        for (std::size_t a = 0; a < comp.size(); ++a) {
            for (std::size_t b = a + 1; b < comp.size(); ++b) {
                if (s_(comp[a], comp[b]) > wide_) return false;
            }
        }
        return true;
    }

    bool assign(Index p, int used) {
        if (p == s_.size()) return true;
        const int top = std::min(colors_, used + 1);
        for (int k = 0; k < top; ++k) {
            color_[p] = k;
            if (component_ok(p) && assign(p + 1, std::max(used, k + 1))) return true;
        }
        color_[p] = -1;
        return false;
    }

    const FiniteMetricSpace& s_;
    double wide_;
    double close_;
    std::vector<int> color_;
    int colors_ = 0;
};

class PartitionSearch {
public:
    PartitionSearch(const FiniteMetricSpace& s, double scale) : s_(s), scale_(scale), block_(s.size(), 0) {}

    double solve() {
        recurse(0, 0, 0.0);
        return best_;
    }

private:
    void recurse(Index p, std::size_t blocks, double worst) {
        if (worst >= best_) return;
        if (p == s_.size()) {
            best_ = worst;
            return;
        }
        // New block first so the first leaf is the finest admissible partition.
        for (std::size_t b = blocks + 1; b-- > 0;) {
            block_[p] = b;
            bool ok = true;
            double w = worst;
            for (Index q = 0; q < p && ok; ++q) {
                if (block_[q] == b) {
                    w = std::max(w, s_(p, q));
                } else if (s_(p, q) <= scale_) {
                    ok = false;
                }
            }
            if (ok) recurse(p + 1, std::max(blocks, b + 1), w);
        }
    }

    const FiniteMetricSpace& s_;
    double scale_;
    std::vector<std::size_t> block_;
    double best_ = std::numeric_limits<double>::infinity();
};

}  // namespace

Subset ColoredCover::support() const {
    std::vector<Index> all;
    for (const auto& cls : classes) {
        for (const auto& set : cls) all.insert(all.end(), set.begin(), set.end());
    }
    return make_subset(std::move(all));
}

CertificateReport verify_certificate(const FiniteMetricSpace& s, const ColoredCover& cover, const Subset& target,
                                     double tolerance) {
    CertificateReport report;
    const std::size_t n = s.size();
    std::vector<std::vector<char>> valid(cover.classes.size());
    for (std::size_t k = 0; k < cover.classes.size(); ++k) {
        valid[k].assign(cover.classes[k].size(), 1);
        for (std::size_t j = 0; j < cover.classes[k].size(); ++j) {
            for (Index p : cover.classes[k][j]) {
                if (p >= n) {
                    valid[k][j] = 0;
                    report.bad_sets.push_back({k, j});
                    break;
                }
            }
        }
    }
    std::vector<char> covered(n, 0);
    for (std::size_t k = 0; k < cover.classes.size(); ++k) {
        for (std::size_t j = 0; j < cover.classes[k].size(); ++j) {
            if (!valid[k][j]) continue;
            for (Index p : cover.classes[k][j]) covered[p] = 1;
        }
    }
    for (Index p : target) {
        if (p >= n || !covered[p]) report.uncovered.push_back(p);
    }
    const double wide = cover.s * (1.0 + tolerance);
    const double close = cover.c * cover.s * (1.0 - tolerance);
    for (std::size_t k = 0; k < cover.classes.size(); ++k) {
        const auto& cls = cover.classes[k];
        for (std::size_t j = 0; j < cls.size(); ++j) {
            if (!valid[k][j]) continue;
            const double d = diameter(s, cls[j]);
            if (d > wide) report.too_wide.push_back({k, j, d});
        }
        for (std::size_t a = 0; a < cls.size(); ++a) {
            if (!valid[k][a] || cls[a].empty()) continue;
            for (std::size_t b = a + 1; b < cls.size(); ++b) {
                if (!valid[k][b] || cls[b].empty()) continue;
                const double d = set_distance(s, cls[a], cls[b]);
                if (d < close) report.too_close.push_back({k, a, b, d});
            }
        }
    }
    report.pass = report.uncovered.empty() && report.too_wide.empty() && report.too_close.empty() &&
                  report.bad_sets.empty();
    return report;
}

CertificateReport verify_certificate(const FiniteMetricSpace& s, const ColoredCover& cover, double tolerance) {
    return verify_certificate(s, cover, s.all_points(), tolerance);
}

std::size_t multiplicity(const FiniteMetricSpace& s, const std::vector<Subset>& family, double s_param) {
    std::vector<Index> pts;
    for (const auto& set : family) {
        for (Index p : set) {
            if (p >= s.size()) throw Error(ErrorCode::IndexOutOfRange, "family member", {p});
            pts.push_back(p);
        }
    }
    pts = make_subset(std::move(pts));
    if (pts.empty()) return 0;
    const std::size_t words = (family.size() + 63) / 64;
    std::vector<Bits> members(pts.size(), Bits(words, 0));
    for (std::size_t f = 0; f < family.size(); ++f) {
        for (Index p : family[f]) {
            auto it = std::lower_bound(pts.begin(), pts.end(), p);
            set_bit(members[static_cast<std::size_t>(it - pts.begin())], f);
        }
    }
    std::vector<std::vector<char>> adj(pts.size(), std::vector<char>(pts.size(), 0));
    for (std::size_t a = 0; a < pts.size(); ++a) {
        for (std::size_t b = 0; b < pts.size(); ++b) adj[a][b] = s(pts[a], pts[b]) <= s_param;
    }
    return CliqueCover(std::move(members), std::move(adj)).solve(words);
}

bool balls_meet_one_set_per_class(const FiniteMetricSpace& s, const ColoredCover& cover, double radius) {
    for (Index x = 0; x < s.size(); ++x) {
        for (const auto& cls : cover.classes) {
            std::size_t met = 0;
            for (const auto& set : cls) {
                if (!set.empty() && point_set_distance(s, x, set) < radius && ++met > 1) return false;
            }
        }
    }
    return true;
}

std::size_t min_nagata_bruteforce(const FiniteMetricSpace& s, double scale, double c, std::size_t cap,
                                  double tolerance) {
    if (s.size() > cap) {
        throw Error(ErrorCode::TooLarge, "exhaustive coloring limited to " + std::to_string(cap) + " points");
    }
    if (!(scale > 0.0) || !(c > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale and c must be positive");
    if (s.empty()) return 0;
    ColoringSearch search(s, scale, c, tolerance);
    for (int k = 1;; ++k) {
        if (search.feasible(k)) return static_cast<std::size_t>(k - 1);
    }
}

double multiplicity_one_constant(const FiniteMetricSpace& s, double scale) {
    if (!(scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale must be positive");
    const std::size_t n = s.size();
    std::vector<std::size_t> comp(n, n);
    double worst = 0.0;
    for (Index start = 0; start < n; ++start) {
        if (comp[start] != n) continue;
        std::vector<Index> members{start};
        comp[start] = start;
        for (std::size_t k = 0; k < members.size(); ++k) {
            for (Index q = 0; q < n; ++q) {
                if (comp[q] == n && s(members[k], q) <= scale) {
                    comp[q] = start;
                    members.push_back(q);
                }
            }
        }
        worst = std::max(worst, diameter(s, make_subset(members)));
    }
    return worst / scale;
}

double multiplicity_one_constant_bruteforce(const FiniteMetricSpace& s, double scale, std::size_t cap) {
    if (s.size() > cap) {
        throw Error(ErrorCode::TooLarge, "partition search limited to " + std::to_string(cap) + " points");
    }
    if (!(scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale must be positive");
    if (s.empty()) return 0.0;
    return PartitionSearch(s, scale).solve() / scale;
}

ColoredCover greedy_colored_cover(const FiniteMetricSpace& s, double scale, double c,
                                  const std::optional<Subset>& within) {
    if (!(scale > 0.0) || !(c > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale and c must be positive");
    const Subset domain = within ? *within : s.all_points();
    const Subset net = max_separated_net(s, scale / 2.0, domain);
    std::vector<Subset> cells(net.size());
    for (Index p : domain) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < net.size(); ++k) {
            if (s(p, net[k]) < s(p, net[best])) best = k;
        }
        if (!net.empty()) cells[best].push_back(p);
    }
    std::vector<int> color(cells.size(), -1);
    int colors = 0;
    for (std::size_t a = 0; a < cells.size(); ++a) {
        std::vector<char> taken(cells.size() + 1, 0);
        for (std::size_t b = 0; b < a; ++b) {
            if (set_distance(s, cells[a], cells[b]) < c * scale) taken[static_cast<std::size_t>(color[b])] = 1;
        }
        int k = 0;
        while (taken[static_cast<std::size_t>(k)]) ++k;
        color[a] = k;
        colors = std::max(colors, k + 1);
    }
    ColoredCover out;
    out.s = scale;
    out.c = c;
    out.classes.assign(static_cast<std::size_t>(std::max(colors, 1)), {});
    for (std::size_t a = 0; a < cells.size(); ++a) {
        out.classes[static_cast<std::size_t>(color[a])].push_back(std::move(cells[a]));
    }
    return out;
}

ColoredCover restrict_cover(const ColoredCover& cover, const Subset& subset) {
    ColoredCover out{{}, cover.s, cover.c};
    out.classes.resize(cover.classes.size());
    for (std::size_t k = 0; k < cover.classes.size(); ++k) {
        for (const auto& set : cover.classes[k]) {
            Subset part = set_intersection(set, subset);
            if (!part.empty()) out.classes[k].push_back(std::move(part));
        }
    }
    return out;
}

ColoredCover dilate_cover(const ColoredCover& cover, double lambda) {
    if (!(lambda > 0.0)) throw Error(ErrorCode::NonPositiveLambda, "dilation factor must be positive");
    ColoredCover out = cover;
    out.s *= lambda;
    return out;
}

ColoredCover lift_cover(const ColoredCover& cover, const std::vector<Index>& map) {
    ColoredCover out{{}, cover.s, cover.c};
    out.classes.resize(cover.classes.size());
    for (std::size_t k = 0; k < cover.classes.size(); ++k) {
        for (const auto& set : cover.classes[k]) {
            std::vector<Index> lifted;
            for (Index p : set) {
                if (p >= map.size()) throw Error(ErrorCode::IndexOutOfRange, "local index", {p});
                lifted.push_back(map[p]);
            }
            out.classes[k].push_back(make_subset(std::move(lifted)));
        }
    }
    return out;
}

}  // namespace coarsedim
