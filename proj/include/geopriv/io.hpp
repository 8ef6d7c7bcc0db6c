#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "geopriv/eval.hpp"
#include "geopriv/geo.hpp"
#include "geopriv/lp.hpp"
#include "geopriv/mech.hpp"
#include "geopriv/prior.hpp"
#include "geopriv/spanner.hpp"

namespace geopriv::io {

using nlohmann::json;

// LocationSet: [{"x": .., "y": .., "label"?: ..}, ...]; index = position.
json location_set_to_json(const LocationSet& locs);
LocationSet location_set_from_json(const json& j);

// Spanner: {"delta": .., "edges": [[i, j, weight], ...]}.
json spanner_to_json(const Spanner& s);
Spanner spanner_from_json(const json& j, const LocationSet& locs, const Metric& dx);

// LpModel: {num_vars, sense?, objective: [[idx, coef]..], le_rows:
// [{coefs: [[idx, coef]..], rhs}..], eq_rows: [...], lower_bounds, names?}.
json lp_model_to_json(const LpModel& m);
LpModel lp_model_from_json(const json& j);

// Mechanism JSON: {"provenance": {...}, "matrix": [[...], ...]}.
json mechanism_to_json(const Mechanism& m);
Mechanism mechanism_from_json(const json& j, const LocationSet& locs);

// Mechanism CSV: header row of location labels, then one row of |X|
// probabilities per true location, 12 significant digits.
std::string mechanism_to_csv(const Mechanism& m);

json prior_to_json(const Prior& p, const std::string& name = "");
Prior prior_from_json(const json& j);
std::string prior_to_csv(const Prior& p);

struct ReportRow {
  std::string user_id;     // may be empty
  std::string prior_name;
  std::string mechanism_kind;
  double epsilon = 0.0;
  std::optional<double> delta;
  double ql_km = 0.0;
  double adv_error_km = 0.0;
  double effective_epsilon = 0.0;  // +inf allowed
};

std::string report_to_csv(const std::vector<ReportRow>& rows);
json report_to_json(const std::vector<ReportRow>& rows);

// Formats with 12 significant digits (the mechanism CSV contract).
std::string format_probability(double v);

// Whole-file atomic write: temp file in the same directory, then rename.
void atomic_write_file(const std::string& path, const std::string& contents);

std::string read_file(const std::string& path);
json load_json(const std::string& path);

}  // namespace geopriv::io
