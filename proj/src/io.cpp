#include "coarsedim/io.hpp"

#include <fstream>
#include <sstream>

#include "coarsedim/fixtures.hpp"

namespace coarsedim {

namespace {

template <class T>
T get(const Json& j, const char* key) {
    if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("field \"") + key + "\": " + e.what());
    }
}

std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
}

}  // namespace

FiniteMetricSpace space_from_json(const Json& j) {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "space must be a JSON object");
    const std::string name = j.contains("name") ? get<std::string>(j, "name") : std::string{};
    if (j.contains("matrix")) {
        auto matrix = get<std::vector<std::vector<double>>>(j, "matrix");
        auto labels = j.contains("labels") ? get<std::vector<std::string>>(j, "labels") : default_labels(matrix.size());
        return validate_metric(matrix, std::move(labels), kTolerance, name);
    }
    if (j.contains("coords")) {
        auto coords = get<std::vector<std::vector<double>>>(j, "coords");
        auto labels = j.contains("labels") ? get<std::vector<std::string>>(j, "labels") : default_labels(coords.size());
        const std::string metric = j.contains("metric") ? get<std::string>(j, "metric") : "l2";
        if (metric != "linf" && metric != "l2") throw Error(ErrorCode::ParseError, "metric must be linf or l2");
        const double p = j.contains("snowflake") ? get<double>(j, "snowflake") : 1.0;
        return space_from_coords(coords, std::move(labels), metric == "linf" ? CoordMetric::Linf : CoordMetric::L2,
                                 p, name);
    }
    throw Error(ErrorCode::ParseError, "space needs \"matrix\" or \"coords\"");
}

Json space_to_json(const FiniteMetricSpace& s) {
    Json j;
    j["name"] = s.name();
    j["labels"] = s.labels();
    Json m = Json::array();
    for (Index i = 0; i < s.size(); ++i) {
        auto row = s.row(i);
        m.push_back(std::vector<double>(row.begin(), row.end()));
    }
    j["matrix"] = std::move(m);
    return j;
}

ColoredCover cover_from_json(const Json& j) {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "certificate must be a JSON object");
    ColoredCover c;
    c.s = get<double>(j, "s");
    c.c = get<double>(j, "c");
    c.classes = get<std::vector<std::vector<Subset>>>(j, "classes");
    for (auto& cls : c.classes) {
        for (auto& set : cls) set = make_subset(std::move(set));
    }
    return c;
}

Json cover_to_json(const ColoredCover& cover) {
    Json j;
    j["s"] = cover.s;
    j["c"] = cover.c;
    j["classes"] = cover.classes;
    return j;
}

DistanceExtension extension_from_json(const Json& j) {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "witness must be a JSON object");
    DistanceExtension ext;
    ext.epsilon = get<double>(j, "epsilon");
    const auto cross = get<std::vector<std::vector<double>>>(j, "cross");
    ext.rows = cross.size();
    ext.cols = cross.empty() ? 0 : cross[0].size();
    for (const auto& row : cross) {
        if (row.size() != ext.cols) throw Error(ErrorCode::ParseError, "cross matrix rows differ in length");
        ext.cross.insert(ext.cross.end(), row.begin(), row.end());
    }
    return ext;
}

Json extension_to_json(const DistanceExtension& ext) {
    Json j;
    j["epsilon"] = ext.epsilon;
    Json rows = Json::array();
    for (std::size_t r = 0; r < ext.rows; ++r) {
        rows.push_back(std::vector<double>(ext.cross.begin() + static_cast<std::ptrdiff_t>(r * ext.cols),
                                           ext.cross.begin() + static_cast<std::ptrdiff_t>((r + 1) * ext.cols)));
    }
    j["cross"] = std::move(rows);
    return j;
}

Json certificate_report_to_json(const CertificateReport& report) {
    Json j;
    j["pass"] = report.pass;
    j["uncovered"] = report.uncovered;
    Json wide = Json::array();
    for (const auto& v : report.too_wide) wide.push_back({{"class", v.cls}, {"set", v.set}, {"diameter", v.diameter}});
    j["too_wide"] = std::move(wide);
    Json close = Json::array();
    for (const auto& v : report.too_close) {
        close.push_back({{"class", v.cls}, {"first", v.first}, {"second", v.second}, {"distance", v.distance}});
    }
    j["too_close"] = std::move(close);
    Json bad = Json::array();
    for (const auto& [k, s] : report.bad_sets) bad.push_back({{"class", k}, {"set", s}});
    j["bad_sets"] = std::move(bad);
    return j;
}

Json assouad_report_to_json(const FiniteMetricSpace& s, const AssouadReport& report) {
    Json j;
    j["beta"] = report.beta;
    j["C"] = report.C;
    j["Rbar"] = report.Rbar;
    j["pass"] = report.pass;
    std::size_t failures = 0;
    Json first_failure = nullptr;
    for (const auto& row : report.evidence) {
        if (row.pass) continue;
        if (failures++ == 0) {
            first_failure = {{"center", s.label(row.center)}, {"R", row.R},        {"r", row.r},
                             {"count", row.count},            {"bound", row.bound}};
        }
    }
    j["rows"] = report.evidence.size();
    j["failures"] = failures;
    j["first_failure"] = std::move(first_failure);
    return j;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

FiniteMetricSpace load_space(const std::string& path) { return space_from_json(read_json_file(path)); }

}  // namespace coarsedim
