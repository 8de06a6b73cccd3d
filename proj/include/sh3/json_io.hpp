#pragma once

#include <string>
#include <vector>

#include "sh3/invariant_forms.hpp"
#include "sh3/pushforward.hpp"
#include "sh3/zeta.hpp"

namespace sh3 {

/// Rows of {identity_id, trials, max_residual, seed}.
std::string identity_report_to_json(const IdentitySuiteReport &report);

/// Boundary density pair document:
/// {"L": int, "g_minus": [[l, m, re, im], ...], "g_plus": [...]}
BoundaryDensityPair load_pair_json(const std::string &path);
BoundaryDensityPair parse_pair_json(const std::string &text);
std::string pair_to_json(const BoundaryDensityPair &pair);

/// Geodesic records document: [{"T": float, "P": [[...4x4...]]}, ...]
std::vector<ClosedGeodesicRecord> load_records_json(const std::string &path);
std::vector<ClosedGeodesicRecord> parse_records_json(const std::string &text);

}  // namespace sh3
