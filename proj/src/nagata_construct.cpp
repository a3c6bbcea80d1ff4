#include <algorithm>
#include <cmath>
#include <optional>

#include "coarsedim/covering.hpp"
#include "coarsedim/nagata.hpp"
#include "coarsedim/parallel.hpp"

namespace coarsedim {

namespace {

// Shell i holds distances in [R - (i+1) r, R - i r); the same expressions define the pieces below.
std::optional<std::size_t> annulus_of(double d, double R, double r, std::size_t K) {
    if (!(d < R)) return std::nullopt;
    double guess = std::floor((R - d) / r);
    if (guess < 0.0) guess = 0.0;
    auto i = static_cast<std::size_t>(guess);
    while (i > 0 && !(d < R - static_cast<double>(i) * r)) --i;
    while (!(R - static_cast<double>(i + 1) * r <= d)) ++i;
    if (i >= K) return std::nullopt;
    return i;
}

}  // namespace

std::vector<double> codimension_constants(double alpha, double C, std::size_t m) {
    std::vector<double> out;
    double ck = C;
    for (std::size_t k = 0; k < m; ++k) {
        out.push_back(ck);
        ck *= C * std::pow(16.0, alpha) * 12.0;
    }
    return out;
}

bool construction_threshold_holds(double alpha, double C, double R, double r) {
    const auto m = static_cast<std::size_t>(std::floor(alpha)) + 1;
    // Log space: the constants overflow long before the threshold is met.
    double log_c = std::log(C);
    for (std::size_t k = 1; k < m; ++k) log_c += std::log(C) + alpha * std::log(16.0) + std::log(12.0);
    return std::log(12.0) + log_c + (alpha - static_cast<double>(m)) * std::log(R / r) < 0.0;
}

double auto_construction_radius(const FiniteMetricSpace& s, double alpha, double C, double R) {
    if (!(R > 0.0)) throw Error(ErrorCode::BadScales, "R must be positive");
    const double floor_ratio = static_cast<double>(s.size()) + 1.0;
    for (int j = 3;; ++j) {
        const double r = std::ldexp(R, -j);
        if (construction_threshold_holds(alpha, C, R, r) || R / (2.0 * r) > floor_ratio) return r;
    }
}

ColoredCover construct_cover_assouad(const FiniteMetricSpace& s, double alpha, double R, double r,
                                     ConstructionTrace* trace) {
    if (!(r > 0.0) || !(r < R / 4.0)) throw Error(ErrorCode::BadScales, "need 0 < r < R/4");
    if (!(alpha >= 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be nonnegative");
    const auto m = static_cast<std::size_t>(std::floor(alpha)) + 1;
    std::size_t K = 1;
    while (static_cast<double>(K + 1) * r < R / 2.0) ++K;

    ColoredCover out;
    out.s = 2.0 * R;
    out.c = r / (2.0 * R);
    out.classes.resize(m);
    Subset current = s.all_points();
    for (std::size_t round = 0; round < m && !current.empty(); ++round) {
        const Subset net = max_separated_net(s, R / 4.0, current);
        std::vector<std::size_t> chosen(net.size(), 0);
        parallel_for(net.size(), [&](std::size_t n) {
            const Index xn = net[n];
            Subset target;
            for (Index p : current) {
                if (s(xn, p) < R) target.push_back(p);
            }
            const BallCover cover = cover_set(s, target, r, CoverMode::Greedy);
            std::vector<std::size_t> count(K, 0);
            std::vector<char> met(K, 0);
            for (Index y : cover.centers) {
                std::fill(met.begin(), met.end(), 0);
                for (Index p : target) {
                    if (!(s(y, p) < r)) continue;
                    if (auto i = annulus_of(s(xn, p), R, r, K)) met[*i] = 1;
                }
                for (std::size_t i = 0; i < K; ++i) count[i] += static_cast<std::size_t>(met[i]);
            }
            chosen[n] = static_cast<std::size_t>(std::min_element(count.begin(), count.end()) - count.begin());
        });

        std::vector<char> in_next(s.size(), 0);
        for (std::size_t n = 0; n < net.size(); ++n) {
            for (Index p : current) {
                auto i = annulus_of(s(net[n], p), R, r, K);
                if (i && *i == chosen[n]) in_next[p] = 1;
            }
        }
        std::vector<char> claimed(s.size(), 0);
        for (std::size_t n = 0; n < net.size(); ++n) {
            const double inner = R - static_cast<double>(chosen[n] + 1) * r;
            const double outer = R - static_cast<double>(chosen[n]) * r;
            Subset piece;
            for (Index p : current) {
                if (!in_next[p] && !claimed[p] && s(net[n], p) < inner) piece.push_back(p);
            }
            for (Index p : current) {
                if (s(net[n], p) < outer) claimed[p] = 1;
            }
            if (!piece.empty()) out.classes[round].push_back(std::move(piece));
        }
        Subset next;
        for (Index p : current) {
            if (in_next[p]) next.push_back(p);
        }
        if (trace) {
            trace->net_sizes.push_back(net.size());
            trace->annulus_counts.push_back(K);
            trace->chosen.push_back(chosen);
            trace->residual_sizes.push_back(next.size());
        }
        current = std::move(next);
    }
    if (!current.empty()) {
        throw Error(ErrorCode::ResidualNonempty,
                    std::to_string(current.size()) + " points left after " + std::to_string(m) + " rounds",
                    current);
    }
    return out;
}

}  // namespace coarsedim
