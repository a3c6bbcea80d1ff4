// Batch front end: one subcommand per library operation, JSON/CSV on stdout or -o.
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coarsedim/covering.hpp"
#include "coarsedim/fixtures.hpp"
#include "coarsedim/gromov_hausdorff.hpp"
#include "coarsedim/io.hpp"
#include "coarsedim/nagata.hpp"
#include "coarsedim/tangents.hpp"

namespace {

using namespace coarsedim;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
    } else {
        write_text_file(path, text);
    }
}

void emit(const Json& j, const std::string& path) { emit(j.dump(2), path); }

Index resolve_point(const FiniteMetricSpace& s, const std::string& ref) {
    if (auto i = s.find_label(ref)) return *i;
    try {
        std::size_t used = 0;
        const auto i = std::stoul(ref, &used);
        if (used == ref.size() && i < s.size()) return i;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidArgument, "no point named " + ref);
}

struct GenOpts {
    std::string kind = "grid";
    int levels = 3, depth = 3, d = 2, n = 8, which = 1;
    std::optional<double> spacing;
    std::string metric = "linf";
    double p = 1.0;
    std::size_t cap = kFixtureCap;
    std::string out;
};

int run_gen(const GenOpts& o) {
    FixtureSpec fixture;
    static const std::map<std::string, FixtureKind> kinds{{"progression", FixtureKind::Progression},
                                                          {"circle_clusters", FixtureKind::CircleClusters},
                                                          {"hypercube_clusters", FixtureKind::HypercubeClusters},
                                                          {"two_distance", FixtureKind::TwoDistance},
                                                          {"grid", FixtureKind::Grid},
                                                          {"snowflake_path", FixtureKind::SnowflakePath}};
    fixture.kind = kinds.at(o.kind);
    fixture.levels = o.levels;
    fixture.depth = o.depth;
    fixture.which = o.which;
    fixture.grid.d = o.d;
    fixture.grid.n = o.n;
    fixture.grid.spacing = o.spacing;
    fixture.grid.metric = o.metric == "l2" ? CoordMetric::L2 : CoordMetric::Linf;
    fixture.grid.p = o.p;
    fixture.grid.cap = o.cap;
    emit(space_to_json(generate(fixture)), o.out);
    return kPass;
}

struct AssouadOpts {
    std::string space;
    std::optional<double> beta, C, Rbar;
    double ratio = 2.0;
    std::optional<double> lo, hi;
    std::string csv, out;
};

int run_assouad(const AssouadOpts& o) {
    const FiniteMetricSpace s = load_space(o.space);
    AssouadReport report;
    if (o.beta) {
        const double Rbar = o.Rbar.value_or(s.diameter());
        const double C = o.C ? *o.C : minimal_assouad_constant(s, *o.beta, Rbar);
        report = verify_assouad(s, *o.beta, C, Rbar);
    } else {
        report = assouad_scan(s, ScaleGrid{o.ratio, o.lo, o.hi});
    }
    if (!o.csv.empty()) write_text_file(o.csv, evidence_csv(s, report));
    emit(assouad_report_to_json(s, report), o.out);
    return report.pass ? kPass : kFail;
}

struct BuildOpts {
    std::string space;
    double alpha = 1.0;
    std::optional<double> C;
    double R = 1.0;
    std::string r = "auto";
    std::string out;
};

int run_build(const BuildOpts& o) {
    const FiniteMetricSpace s = load_space(o.space);
    double r = 0.0;
    if (o.r == "auto") {
        const double C = o.C ? *o.C : minimal_assouad_constant(s, o.alpha, s.diameter() + 1.0);
        r = auto_construction_radius(s, o.alpha, C, o.R);
    } else {
        r = std::stod(o.r);
    }
    try {
        const ColoredCover cover = construct_cover_assouad(s, o.alpha, o.R, r);
        emit(cover_to_json(cover), o.out);
        std::cerr << "classes=" << cover.classes.size() << " s=" << cover.s << " c=" << cover.c << " r=" << r << '\n';
        return verify_certificate(s, cover).pass ? kPass : kFail;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ResidualNonempty) throw;
        std::cerr << e.what() << "\ntry --r " << r / 2.0 << '\n';
        return kFail;
    }
}

int run_verify(const std::string& cert, const std::string& space, const std::string& out) {
    const FiniteMetricSpace s = load_space(space);
    const CertificateReport report = verify_certificate(s, cover_from_json(read_json_file(cert)));
    emit(certificate_report_to_json(report), out);
    return report.pass ? kPass : kFail;
}

int run_min(const std::string& space, double scale, double c, std::size_t cap) {
    const FiniteMetricSpace s = load_space(space);
    Json j;
    j["scale"] = scale;
    j["c"] = c;
    j["n"] = min_nagata_bruteforce(s, scale, c, cap);
    emit(j, "");
    return kPass;
}

struct GlueOpts {
    std::string space, first, second, mode = "separated", out;
    double r = 0.0;
};

int run_glue(const GlueOpts& o) {
    const FiniteMetricSpace s = load_space(o.space);
    const ColoredCover a = cover_from_json(read_json_file(o.first));
    const ColoredCover b = cover_from_json(read_json_file(o.second));
    ColoredCover glued;
    if (o.mode == "separated") {
        glued = glue_separated(s, {a, b}, o.r);
    } else {
        glued = glue_two(s, a.support(), b.support(), a, b);
    }
    emit(cover_to_json(glued), o.out);
    return verify_certificate(s, glued).pass ? kPass : kFail;
}

struct PairOpts {
    std::string x, y, base_x = "0", base_y = "0", out;
};

int run_gh(const PairOpts& o, bool exact, std::size_t cap) {
    const FiniteMetricSpace X = load_space(o.x), Y = load_space(o.y);
    const PointedSpace px = make_pointed(X, resolve_point(X, o.base_x));
    const PointedSpace py = make_pointed(Y, resolve_point(Y, o.base_y));
    GhBracket b;
    if (exact) {
        b = gh_exact_small(px, py, cap);
    } else {
        // Label matching as the correspondence, plus the base pair.
        Correspondence corr{{px.base, py.base}};
        for (Index i = 0; i < X.size(); ++i) {
            if (auto j = Y.find_label(X.label(i))) corr.push_back({i, *j});
        }
        b = gh_upper(px, py, corr);
    }
    Json j;
    j["value_lower"] = b.lower;
    j["value_upper"] = b.upper;
    j["witness"] = extension_to_json(b.witness);
    emit(j, o.out);
    return validate_extension(px, py, b.witness).pass ? kPass : kFail;
}

int run_transfer(const PairOpts& o, const std::string& witness, const std::string& cert, double r, double r_prime) {
    const FiniteMetricSpace X = load_space(o.x), Y = load_space(o.y);
    const PointedSpace px = make_pointed(X, resolve_point(X, o.base_x));
    const PointedSpace py = make_pointed(Y, resolve_point(Y, o.base_y));
    const DistanceExtension ext = extension_from_json(read_json_file(witness));
    const ColoredCover moved = transfer_certificate(px, py, ext, cover_from_json(read_json_file(cert)), r, r_prime);
    emit(cover_to_json(moved), o.out);
    return verify_certificate(X, moved, ball(X, px.base, r_prime)).pass ? kPass : kFail;
}

struct ScanOpts {
    std::string space, family = "two_point", out;
    int n = 1;
    std::vector<double> lambdas{1.0};
    double eps = 0.1, tmin = 0.0, tmax = 10.0;
    std::size_t tcount = 41, cap = kGhExactCap;
    std::vector<std::string> points;
};

int run_scan(const ScanOpts& o) {
    const FiniteMetricSpace s = load_space(o.space);
    static const std::map<std::string, FamilyKind> kinds{
        {"two_point", FamilyKind::TwoPoint}, {"scaled_Sn", FamilyKind::ScaledSn}, {"cube", FamilyKind::Cube}};
    const TangentFamily family = candidate_family(kinds.at(o.family), o.n);
    std::vector<double> params;
    for (std::size_t k = 0; k < o.tcount; ++k) {
        const double f = o.tcount == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(o.tcount - 1);
        params.push_back(o.tmin + f * (o.tmax - o.tmin));
    }
    Subset K;
    for (const auto& ref : o.points) K.push_back(resolve_point(s, ref));
    K = o.points.empty() ? s.all_points() : make_subset(std::move(K));
    const auto rows =
        uniform_profile(s, K, o.lambdas, o.eps, [&](Index) { return FamilyChoice{family, params}; }, o.cap);
    emit(profile_csv(s, rows), o.out);
    return kPass;
}

int run_weak(const std::string& space, std::size_t imax, const std::string& out) {
    const FiniteMetricSpace s = load_space(space);
    Json list = Json::array();
    for (const auto& w : weak_tangent_search(s, imax)) {
        Json j;
        j["i"] = w.i;
        if (w.found) {
            j["x"] = s.label(w.x);
            j["r"] = w.r;
            j["diameter"] = w.diameter;
        } else {
            j["result"] = "NoWitness";
        }
        list.push_back(std::move(j));
    }
    emit(list, out);
    return kPass;
}

bool usage_error(ErrorCode code) {
    return code == ErrorCode::ParseError || code == ErrorCode::InvalidArgument || code == ErrorCode::NonSquare ||
           code == ErrorCode::LabelMismatch || code == ErrorCode::DuplicateLabel ||
           code == ErrorCode::NonSymmetric || code == ErrorCode::NegativeEntry ||
           code == ErrorCode::NonzeroDiagonal || code == ErrorCode::TriangleViolation ||
           code == ErrorCode::IndexOutOfRange;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dimension certificates for finite metric spaces"};
    app.require_subcommand(1);
    int status = kPass;

    GenOpts gen;
    auto* g = app.add_subcommand("gen", "Write a fixture space as JSON");
    g->add_option("kind", gen.kind, "progression|circle_clusters|hypercube_clusters|two_distance|grid|snowflake_path")
        ->check(CLI::IsMember(
            {"progression", "circle_clusters", "hypercube_clusters", "two_distance", "grid", "snowflake_path"}));
    g->add_option("--levels", gen.levels, "N for the cluster spaces, Nmax for two_distance");
    g->add_option("--depth", gen.depth, "I for progression, D for the cluster spaces");
    g->add_option("--d", gen.d, "Grid dimension");
    g->add_option("--n", gen.n, "Points per grid side / path length");
    g->add_option("--spacing", gen.spacing, "Grid spacing (default 1/(n-1))");
    g->add_option("--metric", gen.metric)->check(CLI::IsMember({"linf", "l2"}));
    g->add_option("--p", gen.p, "Snowflake exponent");
    g->add_option("--which", gen.which, "two_distance metric (1 or 2)")->check(CLI::Range(1, 2));
    g->add_option("--cap", gen.cap, "Point cap");
    g->add_option("-o,--out", gen.out);
    g->callback([&] { status = run_gen(gen); });

    AssouadOpts as;
    auto* a = app.add_subcommand("assouad", "Scan or verify Assouad bounds");
    a->add_option("space", as.space)->required();
    a->add_option("--beta", as.beta, "Verify with this exponent instead of scanning");
    a->add_option("--C", as.C, "Constant (default: the least passing one)");
    a->add_option("--Rbar", as.Rbar, "Scale ceiling (default: diameter)");
    a->add_option("--ratio", as.ratio, "Scan grid ratio");
    a->add_option("--lo", as.lo);
    a->add_option("--hi", as.hi);
    a->add_option("--csv", as.csv, "Evidence CSV path");
    a->add_option("-o,--out", as.out);
    a->callback([&] { status = run_assouad(as); });

    BuildOpts bo;
    auto* b = app.add_subcommand("nagata-build", "Constructive cover from an Assouad bound");
    b->add_option("space", bo.space)->required();
    b->add_option("--alpha", bo.alpha)->required();
    b->add_option("--C", bo.C, "Assouad constant used by --r auto (default: the least passing one)");
    b->add_option("--R", bo.R)->required();
    b->add_option("--r", bo.r, "auto or a value below R/4");
    b->add_option("-o,--out", bo.out);
    b->callback([&] { status = run_build(bo); });

    std::string cert, space, out;
    auto* v = app.add_subcommand("nagata-verify", "Verify a certificate");
    v->add_option("cert", cert)->required();
    v->add_option("space", space)->required();
    v->add_option("-o,--out", out);
    v->callback([&] { status = run_verify(cert, space, out); });

    double scale = 1.0, c = 0.5;
    std::size_t cap = 12;
    auto* m = app.add_subcommand("nagata-min", "Exhaustive minimal dimension at one scale");
    m->add_option("space", space)->required();
    m->add_option("--scale", scale)->required();
    m->add_option("--c", c)->required();
    m->add_option("--cap", cap);
    m->callback([&] { status = run_min(space, scale, c, cap); });

    GlueOpts gl;
    auto* gu = app.add_subcommand("glue", "Glue two certificates");
    gu->add_option("space", gl.space)->required();
    gu->add_option("first", gl.first)->required();
    gu->add_option("second", gl.second)->required();
    gu->add_option("--mode", gl.mode, "separated|two")->check(CLI::IsMember({"separated", "two"}));
    gu->add_option("--r", gl.r, "Separation of the pieces (mode separated)");
    gu->add_option("-o,--out", gl.out);
    gu->callback([&] { status = run_glue(gl); });

    PairOpts po;
    bool exact = false;
    std::size_t gh_cap = kGhExactCap;
    auto* gh = app.add_subcommand("gh", "Pointed closeness of two spaces");
    gh->add_option("x", po.x)->required();
    gh->add_option("y", po.y)->required();
    gh->add_option("--base-x", po.base_x);
    gh->add_option("--base-y", po.base_y);
    gh->add_flag("--exact", exact, "Exact solver instead of the label correspondence");
    gh->add_option("--cap", gh_cap);
    gh->add_option("-o,--out", po.out);
    gh->callback([&] { status = run_gh(po, exact, gh_cap); });

    std::string witness;
    double r = 1.0, r_prime = 1.0;
    auto* t = app.add_subcommand("transfer", "Move a ball certificate of Y to X");
    t->add_option("x", po.x)->required();
    t->add_option("y", po.y)->required();
    t->add_option("witness", witness)->required();
    t->add_option("cert", cert)->required();
    t->add_option("--base-x", po.base_x);
    t->add_option("--base-y", po.base_y);
    t->add_option("--r", r)->required();
    t->add_option("--rprime", r_prime)->required();
    t->add_option("-o,--out", po.out);
    t->callback([&] { status = run_transfer(po, witness, cert, r, r_prime); });

    ScanOpts so;
    auto* ts = app.add_subcommand("tangent-scan", "Closeness profile to a tangent family");
    ts->add_option("space", so.space)->required();
    ts->add_option("--family", so.family)->check(CLI::IsMember({"two_point", "scaled_Sn", "cube"}));
    ts->add_option("--n", so.n);
    ts->add_option("--lambda", so.lambdas)->expected(1, -1);
    ts->add_option("--eps", so.eps, "Window parameter");
    ts->add_option("--tmin", so.tmin);
    ts->add_option("--tmax", so.tmax);
    ts->add_option("--tcount", so.tcount);
    ts->add_option("--points", so.points, "Labels or indices (default: all)")->expected(1, -1);
    ts->add_option("--cap", so.cap);
    ts->add_option("-o,--out", so.out);
    ts->callback([&] { status = run_scan(so); });

    std::size_t imax = 3;
    auto* w = app.add_subcommand("weak-tangent", "Search chain-component witnesses");
    w->add_option("space", space)->required();
    w->add_option("--imax", imax);
    w->add_option("-o,--out", out);
    w->callback([&] { status = run_weak(space, imax, out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return usage_error(e.code()) ? kUsage : kFail;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return kUsage;
    }
    return status;
}
