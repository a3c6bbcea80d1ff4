#include <algorithm>
#include <cmath>
#include <limits>

#include "coarsedim/nagata.hpp"

namespace coarsedim {

namespace {

bool close_rel(double a, double b, double tol = kTolerance) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

ColoredCover empty_cover(std::size_t classes, double s, double c) {
    ColoredCover out;
    out.classes.resize(std::max<std::size_t>(classes, 1));
    out.s = s;
    out.c = c;
    return out;
}

}  // namespace

ColoredCover glue_separated(const FiniteMetricSpace& s, const std::vector<ColoredCover>& covers, double r,
                            double tolerance) {
    if (covers.empty()) throw Error(ErrorCode::InvalidArgument, "nothing to glue");
    const double scale = covers.front().s, c = covers.front().c;
    std::size_t classes = 0;
    for (std::size_t i = 0; i < covers.size(); ++i) {
        if (!close_rel(covers[i].s, scale) || !close_rel(covers[i].c, c)) {
            throw Error(ErrorCode::MismatchedParams, "covers disagree on s or c", {0, i});
        }
        classes = std::max(classes, covers[i].classes.size());
    }
    std::vector<Subset> supports;
    for (const auto& cover : covers) supports.push_back(cover.support());
    for (std::size_t i = 0; i < covers.size(); ++i) {
        for (std::size_t j = i + 1; j < covers.size(); ++j) {
            if (supports[i].empty() || supports[j].empty()) continue;
            if (set_distance(s, supports[i], supports[j]) < r * (1.0 - tolerance)) {
                throw Error(ErrorCode::NotSeparated, "pieces closer than r", {i, j});
            }
        }
    }
    ColoredCover out = empty_cover(classes, scale, std::min(c, r / scale));
    for (const auto& cover : covers) {
        for (std::size_t k = 0; k < cover.classes.size(); ++k) {
            for (const auto& set : cover.classes[k]) {
                if (!set.empty()) out.classes[k].push_back(set);
            }
        }
    }
    return out;
}

double glue_two_constant(double c1, double c2) { return c1 * std::min(1.0, c2) / std::max(5.0, 3.0 + 4.0 * c1); }

double glue_two_scale(double c1, double s) { return (1.0 + 4.0 * c1 / 3.0) * s; }

ColoredCover glue_two(const FiniteMetricSpace& s, const Subset& X, const Subset& Y, const ColoredCover& coverX,
                      const ColoredCover& coverYfine, double tolerance) {
    const double c1 = coverX.c, c2 = coverYfine.c, scale = coverX.s;
    if (!(c1 > 0.0) || !(c2 > 0.0) || !(scale > 0.0)) {
        throw Error(ErrorCode::InputCertInvalid, "certificates need positive s and c");
    }
    if (!close_rel(coverYfine.s, c1 * scale / 3.0)) {
        throw Error(ErrorCode::InputCertInvalid, "fine cover of Y must have scale c1 s / 3");
    }
    if (!verify_certificate(s, coverX, X, tolerance).pass) {
        throw Error(ErrorCode::InputCertInvalid, "cover of X does not verify");
    }
    if (!verify_certificate(s, coverYfine, Y, tolerance).pass) {
        throw Error(ErrorCode::InputCertInvalid, "fine cover of Y does not verify");
    }
    const std::size_t classes = std::max(coverX.classes.size(), coverYfine.classes.size());
    ColoredCover out = empty_cover(classes, glue_two_scale(c1, scale), glue_two_constant(c1, c2));
    const double attach = c1 * scale / 3.0;
    for (std::size_t k = 0; k < classes; ++k) {
        const std::vector<Subset> none;
        const auto& us = k < coverX.classes.size() ? coverX.classes[k] : none;
        const auto& vs = k < coverYfine.classes.size() ? coverYfine.classes[k] : none;
        std::vector<Subset> merged(us.begin(), us.end());
        for (const auto& v : vs) {
            if (v.empty()) continue;
            // Sets of one class are c1 s apart, so at most one of them is this close.
            std::size_t target = us.size();
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t u = 0; u < us.size(); ++u) {
                const double d = set_distance(s, us[u], v);
                if (d < best) {
                    best = d;
                    target = u;
                }
            }
            if (target < us.size() && best < attach) {
                merged[target] = set_union(merged[target], v);
            } else {
                merged.push_back(v);
            }
        }
        for (auto& set : merged) {
            if (!set.empty()) out.classes[k].push_back(std::move(set));
        }
    }
    return out;
}

CertifiedFamily glue_two_family(const FiniteMetricSpace& s, const CertifiedFamily& X, const CertifiedFamily& Y) {
    const double c1 = X.c;
    const double lo = std::max(X.s_lo, 3.0 * Y.s_lo / c1);
    const double hi = std::min(X.s_hi, 3.0 * Y.s_hi / c1);
    if (!(lo <= hi)) throw Error(ErrorCode::EmptyWindow, "scale windows of the two pieces do not overlap");
    CertifiedFamily out;
    out.points = set_union(X.points, Y.points);
    out.n = std::max(X.n, Y.n);
    out.c = glue_two_constant(c1, Y.c);
    out.s_lo = glue_two_scale(c1, lo);
    out.s_hi = glue_two_scale(c1, hi);
    out.at = [&s, X, Y, c1, lo, hi](double scale) {
        const double in = std::clamp(scale / glue_two_scale(c1, 1.0), lo, hi);
        if (!close_rel(glue_two_scale(c1, in), scale, 1e-9)) {
            throw Error(ErrorCode::EmptyWindow, "requested scale outside the certified window");
        }
        ColoredCover cover = glue_two(s, X.points, Y.points, X.at(in), Y.at(c1 * in / 3.0));
        cover.s = scale;
        return cover;
    };
    return out;
}

CertifiedFamily glue_many(const FiniteMetricSpace& s, const std::vector<CertifiedFamily>& pieces) {
    if (pieces.empty()) throw Error(ErrorCode::InvalidArgument, "nothing to glue");
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        if (!close_rel(pieces[i].c, pieces[0].c)) {
            throw Error(ErrorCode::MismatchedParams, "pieces disagree on c", {0, i});
        }
    }
    CertifiedFamily acc = pieces[0];
    for (std::size_t i = 1; i < pieces.size(); ++i) acc = glue_two_family(s, pieces[i], acc);
    return acc;
}

CertifiedFamily glue_annuli(const FiniteMetricSpace& s, Index x0, const std::vector<double>& radii,
                            const std::vector<CertifiedFamily>& per_ball) {
    if (x0 >= s.size()) throw Error(ErrorCode::IndexOutOfRange, "center", {x0});
    if (radii.empty() || radii.size() != per_ball.size()) {
        throw Error(ErrorCode::InvalidArgument, "need one certificate family per radius");
    }
    const double c = per_ball[0].c;
    double s_lo = 0.0, s_hi = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < per_ball.size(); ++k) {
        if (!close_rel(per_ball[k].c, c)) throw Error(ErrorCode::MismatchedParams, "balls disagree on c", {0, k});
        s_lo = std::max(s_lo, per_ball[k].s_lo);
        s_hi = std::min(s_hi, per_ball[k].s_hi);
    }
    if (!(s_lo <= s_hi)) throw Error(ErrorCode::EmptyWindow, "ball windows do not overlap");
    for (std::size_t k = 1; k < radii.size(); ++k) {
        if (!(radii[k] > radii[k - 1])) throw Error(ErrorCode::BadOrdering, "radii must increase", {k - 1, k});
        if (!(radii[k] - radii[k - 1] > c * s_hi)) {
            throw Error(ErrorCode::GapsTooSmall, "consecutive radii must differ by more than c s", {k - 1, k});
        }
    }
    if (ball(s, x0, radii.back()).size() != s.size()) {
        throw Error(ErrorCode::RadiiNotExhaustive, "largest ball must contain every point");
    }
    std::vector<Subset> shells;
    Subset inner;
    for (std::size_t k = 0; k < radii.size(); ++k) {
        Subset b = ball(s, x0, radii[k]);
        Subset shell = set_difference(b, inner);
        if (!std::includes(per_ball[k].points.begin(), per_ball[k].points.end(), shell.begin(), shell.end())) {
            throw Error(ErrorCode::InputCertInvalid, "ball certificate does not cover its ball", {k});
        }
        shells.push_back(std::move(shell));
        inner = std::move(b);
    }
    const double r_sep = c * s_hi;
    auto group = [&](std::size_t parity) {
        CertifiedFamily fam;
        std::vector<std::size_t> members;
        for (std::size_t k = parity; k < shells.size(); k += 2) {
            if (shells[k].empty()) continue;
            members.push_back(k);
            fam.points = set_union(fam.points, shells[k]);
            fam.n = std::max(fam.n, per_ball[k].n);
        }
        fam.c = c;
        fam.s_lo = s_lo;
        fam.s_hi = s_hi;
        fam.at = [&s, per_ball, shells, members, r_sep, c](double scale) {
            std::vector<ColoredCover> covers;
            for (std::size_t k : members) covers.push_back(restrict_cover(per_ball[k].at(scale), shells[k]));
            if (covers.empty()) return empty_cover(1, scale, c);
            ColoredCover glued = glue_separated(s, covers, r_sep);
            glued.c = c;  // r_sep / scale >= c throughout the window
            return glued;
        };
        return fam;
    };
    CertifiedFamily even = group(0), odd = group(1);
    if (odd.points.empty()) return even;
    if (even.points.empty()) return odd;
    return glue_two_family(s, even, odd);
}

std::vector<int> color_net(const FiniteMetricSpace& s, const Subset& net, double s0, int colors) {
    const double reach = 3.0 * s0;
    std::vector<int> color(net.size(), 0);
    for (std::size_t a = 0; a < net.size(); ++a) {
        std::vector<char> taken(net.size() + 2, 0);
        for (std::size_t b = 0; b < a; ++b) {
            const double d = s(net[a], net[b]);
            if (d > 0.0 && d <= reach) taken[static_cast<std::size_t>(color[b])] = 1;
        }
        int k = 1;
        while (taken[static_cast<std::size_t>(k)]) ++k;
        if (k > colors) {
            throw Error(ErrorCode::NotEnoughColors, "greedy coloring needs color " + std::to_string(k), {net[a]});
        }
        color[a] = k;
    }
    return color;
}

double transfer_constant(double c, double s, double eps) { return (c * s - 2.0 * eps) / (s + 2.0 * eps); }

ColoredCover transfer_certificate(const PointedSpace& X, const PointedSpace& Y, const DistanceExtension& ext,
                                  const ColoredCover& cert, double r, double r_prime) {
    const std::size_t nx = X.space.size(), ny = Y.space.size();
    if (ext.rows != nx || ext.cols != ny || ext.cross.size() != nx * ny) {
        throw Error(ErrorCode::InvalidArgument, "extension shape does not match the spaces");
    }
    const double eps = ext.epsilon;
    if (!(cert.c * cert.s > 2.0 * eps)) throw Error(ErrorCode::EpsilonTooLarge, "need c s > 2 eps");
    const double limit = std::min(eps > 0.0 ? 1.0 / eps : std::numeric_limits<double>::infinity(), r - 2.0 * eps);
    if (r_prime > limit * (1.0 + kTolerance)) {
        throw Error(ErrorCode::RadiusInfeasible, "r' exceeds min{1/eps, r - 2 eps}");
    }
    if (!verify_certificate(Y.space, cert, ball(Y.space, Y.base, r)).pass) {
        throw Error(ErrorCode::InputCertInvalid, "certificate does not verify on the ball of Y");
    }
    const Subset target = ball(X.space, X.base, r_prime);
    const double reach = eps * (1.0 + kTolerance) + 1e-300;
    ColoredCover out = empty_cover(cert.classes.size(), cert.s + 2.0 * eps, transfer_constant(cert.c, cert.s, eps));
    for (std::size_t k = 0; k < cert.classes.size(); ++k) {
        for (const auto& u : cert.classes[k]) {
            Subset v;
            for (Index x : target) {
                for (Index y : u) {
                    if (ext(x, y) <= reach) {
                        v.push_back(x);
                        break;
                    }
                }
            }
            if (!v.empty()) out.classes[k].push_back(std::move(v));
        }
    }
    return out;
}

double epsilon_threshold(int nbar, double cbar, double c, double a, double b, double s0) {
    const double c1 = std::min(c / 2.0, cbar);
    const double denom = std::pow(2.0 + 3.0 / c1, nbar - 1) * (b * (2.0 + c) / c + b) - b;
    return a * s0 / denom;
}

LcCertificate assemble_lc_certificate(const FiniteMetricSpace& s, const Subset& K, const ColoredCover& coarse,
                                      const BallCertificateProvider& per_ball, const LcParams& p) {
    if (K.empty()) throw Error(ErrorCode::EmptySet, "K is empty");
    if (!(p.a > 0.0 && p.b > 0.0 && p.c > 0.0 && p.cbar > 0.0 && p.s0 > 0.0 && p.r > 0.0 && p.eps >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "parameters must be positive");
    }
    if (!close_rel(coarse.s, p.r / 2.0) || coarse.c < p.cbar * (1.0 - kTolerance) ||
        !verify_certificate(s, coarse, K).pass) {
        throw Error(ErrorCode::InputCertInvalid, "coarse cover must certify K at scale r/2 with constant cbar");
    }
    const double c1 = std::min(p.c / 2.0, p.cbar);
    const double t_lo = p.b * (2.0 + p.c) * p.eps / (p.a * p.c);
    const double t_hi = std::min(p.s0, (0.5 - p.b * p.eps) / p.a);
    if (!(t_lo < t_hi)) throw Error(ErrorCode::EmptyWindow, "eps too large for the ball certificates");
    auto fine_scale = [&p](double t) { return p.r * (p.a * t + p.b * p.eps); };
    auto parameter = [p](double scale) { return (scale / p.r - p.b * p.eps) / p.a; };

    struct Piece {
        Subset set;
        Index center;
    };
    std::vector<CertifiedFamily> colors;
    for (std::size_t k = 0; k < coarse.classes.size(); ++k) {
        std::vector<Piece> pieces;
        for (const auto& u : coarse.classes[k]) {
            Subset part = set_intersection(u, K);
            if (part.empty()) continue;
            Index center = part[0];
            double ecc = std::numeric_limits<double>::infinity();
            for (Index x : part) {
                double e = 0.0;
                for (Index y : part) e = std::max(e, s(x, y));
                if (e < ecc) {
                    ecc = e;
                    center = x;
                }
            }
            pieces.push_back({std::move(part), center});
        }
        if (pieces.empty()) continue;
        CertifiedFamily fam;
        for (const auto& piece : pieces) fam.points = set_union(fam.points, piece.set);
        fam.c = c1;
        fam.s_lo = fine_scale(t_lo);
        fam.s_hi = fine_scale(t_hi);
        const double r_sep = p.cbar * p.r / 2.0;
        fam.at = [&s, pieces, per_ball, p, c1, r_sep, parameter](double scale) {
            const double t = parameter(scale);
            const double c_ball = (p.c * p.a * t - p.b * p.eps) / (p.a * t + p.b * p.eps);
            std::vector<ColoredCover> covers;
            for (const auto& piece : pieces) {
                ColoredCover cert = per_ball(piece.center, t);
                if (!close_rel(cert.s, scale) || cert.c < c_ball * (1.0 - kTolerance) ||
                    !verify_certificate(s, cert, piece.set).pass) {
                    throw Error(ErrorCode::InputCertInvalid, "ball certificate does not verify", {piece.center});
                }
                cert = restrict_cover(cert, piece.set);
                cert.s = scale;
                cert.c = c1;
                covers.push_back(std::move(cert));
            }
            ColoredCover glued = glue_separated(s, covers, r_sep);
            if (glued.c < c1 * (1.0 - kTolerance)) {
                throw Error(ErrorCode::InputCertInvalid, "pieces of one color too close for the fine scale");
            }
            glued.c = c1;
            return glued;
        };
        colors.push_back(std::move(fam));
    }
    CertifiedFamily whole = glue_many(s, colors);

    LcCertificate out;
    out.c = whole.c;
    out.s_lo = whole.s_lo;
    out.s_hi = whole.s_hi;
    const std::size_t samples = std::max<std::size_t>(p.samples, 1);
    for (std::size_t i = 0; i < samples; ++i) {
        const double f = samples == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(samples - 1);
        double scale = out.s_lo * std::pow(out.s_hi / out.s_lo, f);
        if (i + 1 == samples && samples > 1) scale = out.s_hi;
        ColoredCover cover = whole.at(scale);
        if (!verify_certificate(s, cover, K).pass) {
            throw Error(ErrorCode::InputCertInvalid, "assembled certificate does not verify");
        }
        out.n = std::max(out.n, cover.dimension());
        out.witnesses.push_back({scale, std::move(cover)});
    }
    return out;
}

}  // namespace coarsedim
