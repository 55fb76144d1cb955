#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "symflex/certify.hpp"
#include "symflex/document.hpp"
#include "symflex/trace.hpp"

namespace symflex {

/// The float format shared by every file and report ("%.17g", at least one
/// decimal point or exponent). Text reports use it too so that each printed
/// number appears verbatim in the JSON report.
std::string format_number(double value);

/// Type-map and symmetry-equation check of a parsed document.
nlohmann::json validation_json(const FrameworkDocument& doc, const Tolerances& tol);

/// Ranks, block sizes, Maxwell table, symmetric flexes and self-stresses.
/// Throws ValidationError when the document fails validation.
nlohmann::json analysis_json(const FrameworkDocument& doc, const Tolerances& tol);

nlohmann::json certificate_json(const FlexCertificate& cert);

/// Summary of a traced path and its validation.
nlohmann::json path_summary_json(const FlexPath& path, const PathReport& report);

/// Frame export: {"format": "symflex-frames", "frames": [[[x, y, ...], ...], ...]}.
nlohmann::json frames_json(const FlexPath& path);
/// One frame per row: frame index, then the flattened coordinates.
std::string frames_csv(const FlexPath& path);

}  // namespace symflex
