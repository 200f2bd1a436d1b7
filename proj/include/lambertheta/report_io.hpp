#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lambertheta/verify.hpp"

namespace lambertheta {

// JSON layout of one report:
//   {"family", "spec", "form", "params": {name: [re, im], …},
//    "lhs": {"value": [re, im], "terms", "tail", "converged"} | null, "rhs": …,
//    "abs_gap", "rel_gap", "tol", "verdict", "reason", "flags": […]}
// Doubles are written with 17 significant digits; NaN as null and ±inf as
// the strings "inf"/"-inf", so parsing reproduces every field bit for bit.

std::string report_to_json(const IdentityReport& report);

/// A JSON array, one report object per line.
std::string reports_to_json(const std::vector<IdentityReport>& reports);

/// Accepts a single object or an array. Throws InvalidArgument on malformed input.
std::vector<IdentityReport> reports_from_json(std::string_view text);

/// Header plus one row per report; parameters are joined as name=value with ';'.
std::string reports_to_csv(const std::vector<IdentityReport>& reports);

/// One line per report.
std::string report_to_text(const IdentityReport& report);

}  // namespace lambertheta
