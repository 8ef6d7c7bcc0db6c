#include "geopriv/io.hpp"

#include <unistd.h>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include "geopriv/errors.hpp"

namespace geopriv::io {

namespace fs = std::filesystem;

json location_set_to_json(const LocationSet& locs) {
  json arr = json::array();
  for (int i = 0; i < locs.size(); ++i) {
    json o;
    o["x"] = locs.point(i).x;
    o["y"] = locs.point(i).y;
    if (locs.has_labels()) o["label"] = locs.labels()[static_cast<std::size_t>(i)];
    arr.push_back(std::move(o));
  }
  return arr;
}

LocationSet location_set_from_json(const json& j) {
  if (!j.is_array()) throw input_error("location set JSON must be an array");
  std::vector<Point> pts;
  std::vector<std::string> labels;
  bool any_label = false;
  for (const auto& o : j) {
    pts.push_back({o.at("x").get<double>(), o.at("y").get<double>()});
    if (o.contains("label")) {
      any_label = true;
      labels.push_back(o["label"].get<std::string>());
    } else {
      labels.push_back("");
    }
  }
  if (!any_label) labels.clear();
  return LocationSet(std::move(pts), std::move(labels));
}

json spanner_to_json(const Spanner& s) {
  json j;
  j["delta"] = s.delta_requested();
  json edges = json::array();
  for (const SpannerEdge& e : s.edges()) edges.push_back(json::array({e.a, e.b, e.weight}));
  j["edges"] = std::move(edges);
  return j;
}

Spanner spanner_from_json(const json& j, const LocationSet& locs, const Metric& dx) {
  std::vector<SpannerEdge> edges;
  for (const auto& e : j.at("edges"))
    edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
  return Spanner::from_edges(locs, dx, std::move(edges), j.at("delta").get<double>());
}

namespace {

json sparse_to_json(const std::vector<SparseEntry>& entries) {
  json arr = json::array();
  for (const SparseEntry& e : entries) arr.push_back(json::array({e.index, e.value}));
  return arr;
}

std::vector<SparseEntry> sparse_from_json(const json& j) {
  std::vector<SparseEntry> out;
  for (const auto& e : j) out.push_back({e.at(0).get<int>(), e.at(1).get<double>()});
  return out;
}

json rows_to_json(const std::vector<SparseRow>& rows) {
  json arr = json::array();
  for (const SparseRow& r : rows) {
    json o;
    o["coefs"] = sparse_to_json(r.coefs);
    o["rhs"] = r.rhs;
    arr.push_back(std::move(o));
  }
  return arr;
}

std::vector<SparseRow> rows_from_json(const json& j) {
  std::vector<SparseRow> out;
  for (const auto& o : j) out.push_back({sparse_from_json(o.at("coefs")), o.at("rhs").get<double>()});
  return out;
}

// JSON has no inf; bounds use a large sentinel string instead.
json bound_to_json(double v) {
  if (v == -std::numeric_limits<double>::infinity()) return "-inf";
  if (v == std::numeric_limits<double>::infinity()) return "inf";
  return v;
}

double bound_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    throw input_error("bad bound value: " + s);
  }
  return j.get<double>();
}

}  // namespace

json lp_model_to_json(const LpModel& m) {
  json j;
  j["num_vars"] = m.num_vars;
  j["sense"] = m.sense == Sense::minimize ? "minimize" : "maximize";
  j["objective"] = sparse_to_json(m.objective);
  j["le_rows"] = rows_to_json(m.le_rows);
  j["eq_rows"] = rows_to_json(m.eq_rows);
  json lb = json::array();
  for (double v : m.lower_bounds) lb.push_back(bound_to_json(v));
  j["lower_bounds"] = std::move(lb);
  if (!m.upper_bounds.empty()) {
    json ub = json::array();
    for (double v : m.upper_bounds) ub.push_back(bound_to_json(v));
    j["upper_bounds"] = std::move(ub);
  }
  if (!m.var_names.empty()) j["names"] = m.var_names;
  return j;
}

LpModel lp_model_from_json(const json& j) {
  LpModel m;
  m.num_vars = j.at("num_vars").get<int>();
  if (j.contains("sense"))
    m.sense = j["sense"].get<std::string>() == "maximize" ? Sense::maximize : Sense::minimize;
  m.objective = sparse_from_json(j.at("objective"));
  m.le_rows = rows_from_json(j.at("le_rows"));
  m.eq_rows = rows_from_json(j.at("eq_rows"));
  if (j.contains("lower_bounds"))
    for (const auto& v : j["lower_bounds"]) m.lower_bounds.push_back(bound_from_json(v));
  if (j.contains("upper_bounds"))
    for (const auto& v : j["upper_bounds"]) m.upper_bounds.push_back(bound_from_json(v));
  if (j.contains("names")) m.var_names = j["names"].get<std::vector<std::string>>();
  return m;
}

json mechanism_to_json(const Mechanism& m) {
  json prov;
  prov["kind"] = to_string(m.provenance().kind);
  prov["epsilon"] = m.provenance().epsilon;
  if (m.provenance().delta) prov["delta"] = *m.provenance().delta;
  if (m.provenance().seed) prov["seed"] = *m.provenance().seed;
  json matrix = json::array();
  const int n = m.size();
  for (int x = 0; x < n; ++x) {
    json row = json::array();
    for (int z = 0; z < n; ++z) row.push_back(m.at(x, z));
    matrix.push_back(std::move(row));
  }
  json j;
  j["provenance"] = std::move(prov);
  j["matrix"] = std::move(matrix);
  return j;
}

Mechanism mechanism_from_json(const json& j, const LocationSet& locs) {
  const json& matrix = j.at("matrix");
  const int n = locs.size();
  if (static_cast<int>(matrix.size()) != n)
    throw input_error("mechanism matrix does not match the location set");
  std::vector<double> k;
  k.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : matrix) {
    if (static_cast<int>(row.size()) != n) throw input_error("mechanism matrix must be square");
    for (const auto& v : row) k.push_back(v.get<double>());
  }
  Provenance prov;
  if (j.contains("provenance")) {
    const json& p = j["provenance"];
    if (p.contains("kind")) prov.kind = mechanism_kind_from_string(p["kind"].get<std::string>());
    if (p.contains("epsilon")) prov.epsilon = p["epsilon"].get<double>();
    if (p.contains("delta")) prov.delta = p["delta"].get<double>();
    if (p.contains("seed")) prov.seed = p["seed"].get<std::uint64_t>();
  }
  return Mechanism(locs, std::move(k), prov);
}

std::string format_probability(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string mechanism_to_csv(const Mechanism& m) {
  std::string out;
  const int n = m.size();
  for (int z = 0; z < n; ++z) {
    if (z) out += ',';
    out += m.locations().label_or_index(z);
  }
  out += '\n';
  for (int x = 0; x < n; ++x) {
    for (int z = 0; z < n; ++z) {
      if (z) out += ',';
      out += format_probability(m.at(x, z));
    }
    out += '\n';
  }
  return out;
}

json prior_to_json(const Prior& p, const std::string& name) {
  json j;
  if (!name.empty()) j["name"] = name;
  j["weights"] = p.weights();
  return j;
}

Prior prior_from_json(const json& j) {
  if (j.is_array()) return Prior(j.get<std::vector<double>>());
  return Prior(j.at("weights").get<std::vector<double>>());
}

std::string prior_to_csv(const Prior& p) {
  std::string out;
  for (int i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += format_probability(p.at(i));
  }
  out += '\n';
  return out;
}

namespace {
std::string eff_eps_to_string(double v) {
  if (std::isinf(v)) return "inf";
  return format_probability(v);
}
}  // namespace

std::string report_to_csv(const std::vector<ReportRow>& rows) {
  std::string out = "user_id,prior_name,mechanism_kind,epsilon,delta,ql_km,adv_error_km,effective_epsilon\n";
  for (const ReportRow& r : rows) {
    out += r.user_id + ',' + r.prior_name + ',' + r.mechanism_kind + ',';
    out += format_probability(r.epsilon);
    out += ',';
    if (r.delta) out += format_probability(*r.delta);
    out += ',';
    out += format_probability(r.ql_km);
    out += ',';
    out += format_probability(r.adv_error_km);
    out += ',';
    out += eff_eps_to_string(r.effective_epsilon);
    out += '\n';
  }
  return out;
}

json report_to_json(const std::vector<ReportRow>& rows) {
  json arr = json::array();
  for (const ReportRow& r : rows) {
    json o;
    if (!r.user_id.empty()) o["user_id"] = r.user_id;
    o["prior_name"] = r.prior_name;
    o["mechanism_kind"] = r.mechanism_kind;
    o["epsilon"] = r.epsilon;
    if (r.delta) o["delta"] = *r.delta;
    o["ql_km"] = r.ql_km;
    o["adv_error_km"] = r.adv_error_km;
    if (std::isinf(r.effective_epsilon))
      o["effective_epsilon"] = "inf";
    else
      o["effective_epsilon"] = r.effective_epsilon;
    arr.push_back(std::move(o));
  }
  return arr;
}

void atomic_write_file(const std::string& path, const std::string& contents) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.parent_path() /
                       (target.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw input_error("short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw input_error("bad JSON in " + path + ": " + e.what());
  }
}

}  // namespace geopriv::io
