#ifndef COARSEDIM_IO_HPP
#define COARSEDIM_IO_HPP

#include <string>

#include <json.hpp>

#include "coarsedim/covering.hpp"
#include "coarsedim/gromov_hausdorff.hpp"
#include "coarsedim/nagata.hpp"

namespace coarsedim {

using Json = nlohmann::ordered_json;

/**
 * Accepts {"name", "labels", "matrix"} or {"labels", "coords", "metric":
 * "linf"|"l2", "snowflake": p}. Missing labels default to "0", "1", ...
 * Throws ParseError for malformed documents.
 */
FiniteMetricSpace space_from_json(const Json& j);
Json space_to_json(const FiniteMetricSpace& s);

/// {"s", "c", "classes": [[[indices]]]}.
ColoredCover cover_from_json(const Json& j);
Json cover_to_json(const ColoredCover& cover);

/// {"epsilon", "cross": [[...]]}.
DistanceExtension extension_from_json(const Json& j);
Json extension_to_json(const DistanceExtension& ext);

Json certificate_report_to_json(const CertificateReport& report);
Json assouad_report_to_json(const FiniteMetricSpace& s, const AssouadReport& report);

Json read_json_file(const std::string& path);
/// Writes `text`, adding a trailing newline when missing.
void write_text_file(const std::string& path, const std::string& text);

FiniteMetricSpace load_space(const std::string& path);

}  // namespace coarsedim

#endif
