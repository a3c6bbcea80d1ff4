#include "coarsedim/covering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>

#include "coarsedim/parallel.hpp"

namespace coarsedim {

NeighborIndex::NeighborIndex(const FiniteMetricSpace& s) : space_(&s), n_(s.size()), order_(n_ * n_) {
    parallel_for(n_, [&](std::size_t i) {
        Index* row = order_.data() + i * n_;
        std::iota(row, row + n_, Index{0});
        auto d = s.row(i);
        std::stable_sort(row, row + n_, [&](Index a, Index b) { return d[a] < d[b]; });
    });
}

std::span<const Index> NeighborIndex::within(Index i, double r) const {
    auto row = sorted(i);
    auto d = space_->row(i);
    auto end = std::partition_point(row.begin(), row.end(), [&](Index j) { return d[j] < r; });
    return {row.data(), static_cast<std::size_t>(end - row.begin())};
}

namespace {

BallCover greedy_cover(const FiniteMetricSpace& s, const Subset& target, double r,
                       const NeighborIndex* index) {
    BallCover out;
    std::vector<char> covered(s.size(), 0);
    for (Index x : target) {
        if (covered[x]) continue;
        out.centers.push_back(x);
        if (index) {
            for (Index y : index->within(x, r)) covered[y] = 1;
        } else {
            auto row = s.row(x);
            for (Index y : target) {
                if (row[y] < r) covered[y] = 1;
            }
        }
    }
    out.count = out.centers.size();
    return out;
}

struct SetCoverSearch {
    std::vector<std::uint32_t> masks;
    std::vector<Index> owners;
    std::uint32_t full = 0;
    std::size_t best_count = 0;
    std::vector<Index> best;
    std::vector<Index> current;
    int max_bits = 1;

    void run(std::uint32_t covered) {
        if (covered == full) {
            if (current.size() < best_count) {
                best_count = current.size();
                best = current;
            }
            return;
        }
        const int missing = std::popcount(full & ~covered);
        const std::size_t lower = current.size() + static_cast<std::size_t>((missing + max_bits - 1) / max_bits);
        if (lower >= best_count) return;
        const int pivot = std::countr_zero(full & ~covered);
        for (std::size_t m = 0; m < masks.size(); ++m) {
            if (!(masks[m] >> pivot & 1u)) continue;
            current.push_back(owners[m]);
            run(covered | masks[m]);
            current.pop_back();
        }
    }
};

BallCover exact_cover(const FiniteMetricSpace& s, const Subset& target, double r,
                      const NeighborIndex* index) {
    if (target.size() > kExactCoverCap) {
        throw Error(ErrorCode::ExactTooLarge, "exact cover limited to " + std::to_string(kExactCoverCap) +
                                                  " points, target has " + std::to_string(target.size()));
    }
    BallCover greedy = greedy_cover(s, target, r, index);
    if (target.empty()) return greedy;

    SetCoverSearch search;
    search.full = target.size() == 32 ? ~0u : ((1u << target.size()) - 1u);
    std::vector<std::pair<std::uint32_t, Index>> candidates;
    for (Index x = 0; x < s.size(); ++x) {
        auto row = s.row(x);
        std::uint32_t m = 0;
        for (std::size_t t = 0; t < target.size(); ++t) {
            if (row[target[t]] < r) m |= 1u << t;
        }
        if (m) candidates.emplace_back(m, x);
    }
    // Drop balls whose trace on the target is contained in another ball's trace.
    std::stable_sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        return std::popcount(a.first) > std::popcount(b.first);
    });
    for (const auto& [m, x] : candidates) {
        bool dominated = false;
        for (auto kept : search.masks) {
            if ((m & kept) == m) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            search.masks.push_back(m);
            search.owners.push_back(x);
        }
    }
    search.max_bits = search.masks.empty() ? 1 : std::popcount(search.masks.front());
    search.best_count = greedy.count + 1;
    search.best = greedy.centers;
    search.run(0u);
    if (search.best_count > greedy.count) return greedy;
    return BallCover{search.best_count, search.best};
}

void check_scales(const FiniteMetricSpace& s, Index center, double R, double r) {
    if (center >= s.size()) throw Error(ErrorCode::IndexOutOfRange, "center", {center});
    if (!(r > 0.0) || !(R > r)) {
        throw Error(ErrorCode::InvalidArgument, "covering number needs 0 < r < R");
    }
}

}  // namespace

BallCover cover_set(const FiniteMetricSpace& s, const Subset& target, double r, CoverMode mode,
                    const NeighborIndex* index) {
    if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "cover radius must be positive");
    for (Index t : target) {
        if (t >= s.size()) throw Error(ErrorCode::IndexOutOfRange, "cover target", {t});
    }
    return mode == CoverMode::Exact ? exact_cover(s, target, r, index) : greedy_cover(s, target, r, index);
}

std::size_t covering_number(const FiniteMetricSpace& s, Index center, double R, double r, CoverMode mode) {
    check_scales(s, center, R, r);
    return cover_set(s, ball(s, center, R), r, mode).count;
}

std::vector<double> grid_values(const FiniteMetricSpace& s, const ScaleGrid& grid) {
    if (!(grid.ratio > 1.0)) throw Error(ErrorCode::DegenerateGrid, "grid ratio must exceed 1");
    const double lo = grid.lo.value_or(s.min_positive_distance());
    const double hi = grid.hi.value_or(s.diameter());
    std::vector<double> out;
    if (!(lo > 0.0)) return out;
    for (double v = lo; v <= hi * (1.0 + 1e-12); v *= grid.ratio) out.push_back(v);
    return out;
}

AssouadReport assouad_scan(const FiniteMetricSpace& s, const ScaleGrid& grid) {
    const auto values = grid_values(s, grid);
    struct Pair {
        double R, r;
        std::size_t count = 0;
        Index center = 0;
    };
    std::vector<Pair> pairs;
    for (std::size_t a = 0; a < values.size(); ++a) {
        for (std::size_t b = a + 1; b < values.size(); ++b) pairs.push_back({values[b], values[a]});
    }
    if (pairs.empty()) throw Error(ErrorCode::DegenerateGrid, "scale grid yields no pair r < R");

    const NeighborIndex index(s);
    const std::size_t n = s.size();
    for (auto& p : pairs) {
        std::vector<std::size_t> counts(n);
        parallel_for(n, [&](std::size_t c) {
            counts[c] = greedy_cover(s, ball(s, c, p.R), p.r, &index).count;
        });
        auto it = std::max_element(counts.begin(), counts.end());
        p.count = *it;
        p.center = static_cast<Index>(it - counts.begin());
    }

    std::vector<double> xs, ys;
    for (const auto& p : pairs) {
        xs.push_back(std::log(p.R / p.r));
        ys.push_back(std::log(static_cast<double>(p.count)));
    }
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    double beta = 0.0;
    if (sxx > 1e-12 * std::max(1.0, mx * mx)) {
        beta = std::max(0.0, sxy / sxx);
    } else if (syy > 0.0) {
        throw Error(ErrorCode::DegenerateGrid, "a single scale ratio with varying counts");
    }
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xs.size(); ++i) worst = std::max(worst, ys[i] - beta * xs[i]);

    AssouadReport report;
    report.beta = beta;
    report.C = std::max(1.0, std::exp(worst)) * (1.0 + 1e-12);
    report.Rbar = values.back();
    for (const auto& p : pairs) {
        EvidenceRow row{p.center, p.R, p.r, p.count, report.C * std::pow(p.R / p.r, beta), true};
        row.pass = static_cast<double>(row.count) <= row.bound;
        report.pass = report.pass && row.pass;
        report.evidence.push_back(row);
    }
    return report;
}

namespace {

struct RawRow {
    Index center;
    std::uint32_t R_idx, r_idx;
    std::uint32_t cheap;
    std::uint32_t ball_size;
};

// Cheap upper bound for every (center, R, r) with realized r < R < Rbar:
// greedy r-net of the whole space, counting net points within R + r of the center.
std::vector<RawRow> cheap_rows(const FiniteMetricSpace& s, const NeighborIndex& index,
                               const std::vector<double>& dists, double Rbar) {
    const std::size_t n = s.size();
    std::vector<std::vector<RawRow>> per_center(n);
    std::size_t top = 0;
    while (top < dists.size() && dists[top] < Rbar) ++top;
    for (std::uint32_t ri = 0; ri + 1 < top; ++ri) {
        const double r = dists[ri];
        const Subset net = greedy_cover(s, s.all_points(), r, &index).centers;
        parallel_for(n, [&](std::size_t c) {
            auto row = s.row(c);
            std::vector<double> nd;
            nd.reserve(net.size());
            for (Index y : net) nd.push_back(row[y]);
            std::sort(nd.begin(), nd.end());
            auto sorted = index.sorted(c);
            std::size_t ball = 0, reach = 0;
            for (std::uint32_t Ri = ri + 1; Ri < top; ++Ri) {
                const double R = dists[Ri];
                while (ball < n && row[sorted[ball]] < R) ++ball;
                while (reach < nd.size() && nd[reach] < R + r) ++reach;
                per_center[c].push_back({c, Ri, ri, static_cast<std::uint32_t>(std::min(ball, reach)),
                                         static_cast<std::uint32_t>(ball)});
            }
        });
    }
    std::vector<RawRow> rows;
    for (auto& v : per_center) rows.insert(rows.end(), v.begin(), v.end());
    return rows;
}

std::size_t refined_count(const FiniteMetricSpace& s, const NeighborIndex& index, Index c, double R,
                          double r, double bound) {
    const Subset target = ball(s, c, R);
    std::size_t count = greedy_cover(s, target, r, &index).count;
    if (static_cast<double>(count) > bound && target.size() <= kExactCoverCap) {
        count = exact_cover(s, target, r, &index).count;
    }
    return count;
}

}  // namespace

AssouadReport verify_assouad(const FiniteMetricSpace& s, double beta, double C, double Rbar) {
    if (!(C > 0.0) || !(beta >= 0.0) || !(Rbar > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "verify_assouad needs C > 0, beta >= 0, Rbar > 0");
    }
    AssouadReport report;
    report.beta = beta;
    report.C = C;
    report.Rbar = Rbar;
    const auto dists = s.distinct_distances();
    const NeighborIndex index(s);
    const auto raw = cheap_rows(s, index, dists, Rbar);
    report.evidence.resize(raw.size());
    parallel_for(raw.size(), [&](std::size_t k) {
        const RawRow& w = raw[k];
        EvidenceRow row{w.center, dists[w.R_idx], dists[w.r_idx], w.cheap, 0.0, true};
        row.bound = C * std::pow(row.R / row.r, beta);
        if (static_cast<double>(row.count) > row.bound) {
            row.count = std::min<std::size_t>(row.count, refined_count(s, index, w.center, row.R, row.r, row.bound));
        }
        row.pass = static_cast<double>(row.count) <= row.bound;
        report.evidence[k] = row;
    });
    std::sort(report.evidence.begin(), report.evidence.end(), [](const EvidenceRow& a, const EvidenceRow& b) {
        if (a.center != b.center) return a.center < b.center;
        if (a.R != b.R) return a.R < b.R;
        return a.r < b.r;
    });
    for (const auto& row : report.evidence) report.pass = report.pass && row.pass;
    return report;
}

double minimal_assouad_constant(const FiniteMetricSpace& s, double beta, double Rbar) {
    const auto dists = s.distinct_distances();
    const NeighborIndex index(s);
    auto raw = cheap_rows(s, index, dists, Rbar);
    auto weight = [&](const RawRow& w, std::size_t count) {
        return static_cast<double>(count) / std::pow(dists[w.R_idx] / dists[w.r_idx], beta);
    };
    std::sort(raw.begin(), raw.end(), [&](const RawRow& a, const RawRow& b) {
        return weight(a, a.cheap) > weight(b, b.cheap);
    });
    double best = 0.0;
    for (const auto& w : raw) {
        if (weight(w, w.cheap) <= best) break;
        const double R = dists[w.R_idx], r = dists[w.r_idx];
        // Refine against the running maximum; the exact solver only runs when greedy exceeds it.
        const double threshold = best * std::pow(R / r, beta);
        std::size_t count = std::min<std::size_t>(w.cheap, refined_count(s, index, w.center, R, r, threshold));
        best = std::max(best, weight(w, count));
    }
    return std::max(best, 1.0) * (1.0 + 1e-12);
}

std::pair<double, double> rescale_assouad(double Ceta, double Reta, double eta, double Cbeta, double Rbeta,
                                          double beta) {
    if (!(Ceta > 0.0) || !(Reta > 0.0) || !(eta >= 0.0) || !(Cbeta > 0.0) || !(Rbeta > 0.0) || !(beta >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "rescale_assouad inputs must be positive");
    }
    if (Rbeta > Reta) throw Error(ErrorCode::BadOrdering, "Rbeta exceeds Reta");
    return {Ceta * Cbeta * std::pow(Reta / Rbeta, eta), Reta};
}

std::string evidence_csv(const FiniteMetricSpace& s, const AssouadReport& report) {
    std::ostringstream out;
    out.precision(17);
    out << "center_label,R,r,count,bound,pass\n";
    for (const auto& row : report.evidence) {
        out << s.label(row.center) << ',' << row.R << ',' << row.r << ',' << row.count << ',' << row.bound << ','
            << (row.pass ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace coarsedim
