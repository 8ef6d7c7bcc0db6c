#include "geopriv/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <utility>

#include "geopriv/errors.hpp"

namespace geopriv {

namespace fs = std::filesystem;

namespace {

constexpr double kMalformedThreshold = 0.01;
constexpr std::size_t kReportedLines = 20;

// Days since 1970-01-01 for a civil date (Howard Hinnant's algorithm).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool parse_int(const std::string& s, std::size_t begin, std::size_t len, int& out) {
  if (begin + len > s.size()) return false;
  int value = 0;
  for (std::size_t i = begin; i < begin + len; ++i) {
    const char c = s[i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  out = value;
  return true;
}

bool civil_to_epoch(int y, int mo, int d, int h, int mi, int se, std::int64_t& out) {
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || se > 60) return false;
  out = days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + se;
  return true;
}

// "YYYY-MM-DDTHH:MM:SS" with optional fractional seconds and trailing 'Z';
// a space may stand in for the 'T'.
bool parse_iso8601(const std::string& s, std::int64_t& out) {
  int y, mo, d, h, mi, se;
  if (s.size() < 19) return false;
  if (!parse_int(s, 0, 4, y) || s[4] != '-' || !parse_int(s, 5, 2, mo) || s[7] != '-' ||
      !parse_int(s, 8, 2, d))
    return false;
  if (s[10] != 'T' && s[10] != ' ') return false;
  if (!parse_int(s, 11, 2, h) || s[13] != ':' || !parse_int(s, 14, 2, mi) || s[16] != ':' ||
      !parse_int(s, 17, 2, se))
    return false;
  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
  }
  if (pos < s.size() && s[pos] == 'Z') ++pos;
  if (pos != s.size()) return false;
  return civil_to_epoch(y, mo, d, h, mi, se, out);
}

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + s.size() && s.size() > 0 && std::isfinite(out);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

bool valid_coords(double lat, double lon) {
  return std::isfinite(lat) && std::isfinite(lon) && std::abs(lat) <= 90.0 &&
         std::abs(lon) <= 180.0;
}

void note_malformed(ParseReport& report, long line) {
  ++report.malformed;
  if (report.malformed_lines.size() < kReportedLines) report.malformed_lines.push_back(line);
}

void finalize(std::vector<TracePoint>& points, const ParseReport& report) {
  if (report.total_lines > 0 &&
      static_cast<double>(report.malformed) > kMalformedThreshold * report.total_lines) {
    std::string lines;
    for (long l : report.malformed_lines) lines += (lines.empty() ? "" : ", ") + std::to_string(l);
    throw input_error("more than 1% malformed trace lines (" + std::to_string(report.malformed) +
                      " of " + std::to_string(report.total_lines) + "; first at lines " + lines +
                      ")");
  }
  std::stable_sort(points.begin(), points.end(), [](const TracePoint& a, const TracePoint& b) {
    if (a.user_id != b.user_id) return a.user_id < b.user_id;
    return a.timestamp < b.timestamp;
  });
}

}  // namespace

TimePeriod::TimePeriod(std::string name, std::vector<std::pair<int, int>> hour_ranges)
    : name_(std::move(name)), ranges_(std::move(hour_ranges)) {
  if (name_.empty()) throw input_error("time period needs a name");
  if (ranges_.empty()) throw input_error("time period needs at least one hour range");
  for (auto& [s, e] : ranges_) {
    if (s == 24) s = 0;
    if (e == 24) e = 0;
    if (s < 0 || s > 23 || e < 0 || e > 23) throw input_error("period hours must lie in [0,24)");
  }
}

bool TimePeriod::contains_hour(int hour) const {
  for (const auto& [s, e] : ranges_) {
    if (s < e) {
      if (hour >= s && hour < e) return true;
    } else {
      // wrap-around; s == e covers the full day
      if (hour >= s || hour < e) return true;
    }
  }
  return false;
}

std::vector<TimePeriod> default_periods() {
  return {TimePeriod("full-day", {{0, 0}}), TimePeriod("morning", {{7, 12}}),
          TimePeriod("afternoon", {{12, 19}}), TimePeriod("night", {{19, 7}})};
}

std::vector<TracePoint> parse_trace_csv(std::istream& in, ParseReport* report) {
  ParseReport local;
  std::vector<TracePoint> points;
  std::string line;
  long line_no = 0;
  bool header_skipped = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!header_skipped) {
      header_skipped = true;  // format declares a header row
      continue;
    }
    if (line.empty() || line == "\r") continue;
    ++local.total_lines;
    const auto fields = split_csv(line);
    TracePoint p;
    double lat, lon;
    std::int64_t ts;
    if (fields.size() != 4 || fields[0].empty() || !parse_iso8601(fields[1], ts) ||
        !parse_double(fields[2], lat) || !parse_double(fields[3], lon) ||
        !valid_coords(lat, lon)) {
      note_malformed(local, line_no);
      continue;
    }
    p.user_id = fields[0];
    p.timestamp = ts;
    p.lat = lat;
    p.lon = lon;
    points.push_back(std::move(p));
  }
  local.files = 1;
  finalize(points, local);
  if (report) *report = local;
  return points;
}

namespace {

// PLT line: lat,lon,0,alt,days,YYYY-MM-DD,HH:MM:SS
bool parse_plt_line(const std::string& line, const std::string& user, TracePoint& out) {
  const auto fields = split_csv(line);
  if (fields.size() < 7) return false;
  double lat, lon;
  if (!parse_double(fields[0], lat) || !parse_double(fields[1], lon) || !valid_coords(lat, lon))
    return false;
  const std::string& date = fields[5];
  const std::string& time = fields[6];
  int y, mo, d, h, mi, se;
  if (date.size() != 10 || !parse_int(date, 0, 4, y) || date[4] != '-' ||
      !parse_int(date, 5, 2, mo) || date[7] != '-' || !parse_int(date, 8, 2, d))
    return false;
  if (time.size() != 8 || !parse_int(time, 0, 2, h) || time[2] != ':' ||
      !parse_int(time, 3, 2, mi) || time[5] != ':' || !parse_int(time, 6, 2, se))
    return false;
  std::int64_t ts;
  if (!civil_to_epoch(y, mo, d, h, mi, se, ts)) return false;
  out = {user, ts, lat, lon};
  return true;
}

}  // namespace

std::vector<TracePoint> parse_plt_dir(const std::string& dir, ParseReport* report) {
  ParseReport local;
  std::vector<TracePoint> points;
  if (!fs::is_directory(dir)) throw input_error("not a directory: " + dir);

  std::vector<fs::path> user_dirs;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_directory()) user_dirs.push_back(entry.path());
  std::sort(user_dirs.begin(), user_dirs.end());

  for (const fs::path& user_dir : user_dirs) {
    const std::string user = user_dir.filename().string();
    std::vector<fs::path> plt_files;
    for (const auto& entry : fs::recursive_directory_iterator(user_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".plt")
        plt_files.push_back(entry.path());
    std::sort(plt_files.begin(), plt_files.end());
    for (const fs::path& file : plt_files) {
      std::ifstream in(file);
      if (!in) throw input_error("cannot open " + file.string());
      ++local.files;
      std::string line;
      long line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (line_no <= 6) continue;  // PLT preamble
        if (line.empty() || line == "\r") continue;
        ++local.total_lines;
        TracePoint p;
        if (!parse_plt_line(line, user, p)) {
          note_malformed(local, line_no);
          continue;
        }
        points.push_back(std::move(p));
      }
    }
  }
  finalize(points, local);
  if (report) *report = local;
  return points;
}

std::vector<TracePoint> parse_traces(const std::string& path, ParseReport* report) {
  if (fs::is_directory(path)) return parse_plt_dir(path, report);
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  return parse_trace_csv(in, report);
}

std::vector<TracePoint> densest_window(const std::vector<TracePoint>& points, int days) {
  if (days < 1) throw input_error("window must cover at least one day");
  const std::int64_t span = static_cast<std::int64_t>(days) * 86400;
  std::vector<TracePoint> kept;
  // points are sorted per user; process each user's contiguous block
  std::size_t begin = 0;
  while (begin < points.size()) {
    std::size_t end = begin;
    while (end < points.size() && points[end].user_id == points[begin].user_id) ++end;
    // two-pointer max-count window, earliest on ties
    std::size_t best_lo = begin, best_hi = begin;
    std::size_t lo = begin;
    for (std::size_t hi = begin; hi < end; ++hi) {
      while (points[hi].timestamp - points[lo].timestamp >= span) ++lo;
      if (hi - lo > best_hi - best_lo) {
        best_lo = lo;
        best_hi = hi;
      }
    }
    for (std::size_t i = best_lo; i <= best_hi && i < end; ++i) kept.push_back(points[i]);
    begin = end;
  }
  return kept;
}

CountTable count_points(const std::vector<TracePoint>& points, const GridFrame& frame,
                        const std::vector<TimePeriod>& periods) {
  if (periods.empty()) throw input_error("need at least one time period");
  if (frame.grid.cell_width <= 0.0 || frame.grid.cell_height <= 0.0 || frame.grid.columns < 1 ||
      frame.grid.rows < 1)
    throw input_error("invalid grid");
  CountTable table(periods);
  long dropped = 0;
  // Dedup key: one count per (user, region, absolute calendar hour).
  std::map<std::string, std::set<std::pair<int, std::int64_t>>> seen;
  for (const TracePoint& p : points) {
    const Point xy = project(p.lat, p.lon, frame.ref_lat, frame.ref_lon);
    const double fc = std::floor((xy.x - frame.grid.origin.x) / frame.grid.cell_width);
    const double fr = std::floor((xy.y - frame.grid.origin.y) / frame.grid.cell_height);
    if (fc < 0 || fc >= frame.grid.columns || fr < 0 || fr >= frame.grid.rows) {
      ++dropped;
      continue;
    }
    const int region = static_cast<int>(fr) * frame.grid.columns + static_cast<int>(fc);
    const std::int64_t local = p.timestamp + 3600LL * frame.utc_offset_hours;
    // floor division keeps pre-1970 timestamps in the right hour bucket
    std::int64_t hour_bucket = local / 3600;
    if (local % 3600 < 0) --hour_bucket;
    if (!seen[p.user_id].insert({region, hour_bucket}).second) continue;
    const int hour_of_day = static_cast<int>(((hour_bucket % 24) + 24) % 24);
    auto& counts = table.mutable_data()[p.user_id];
    if (counts.per_period.empty()) counts.per_period.resize(periods.size());
    ++counts.total[region];
    for (std::size_t pi = 0; pi < periods.size(); ++pi)
      if (periods[pi].contains_hour(hour_of_day)) ++counts.per_period[pi][region];
  }
  table.add_dropped(dropped);
  return table;
}

std::vector<std::string> CountTable::users() const {
  std::vector<std::string> out;
  out.reserve(data_.size());
  for (const auto& [user, _] : data_) out.push_back(user);
  return out;
}

bool CountTable::has_user(const std::string& user) const { return data_.count(user) > 0; }

long CountTable::total_count(const std::string& user, int region) const {
  auto it = data_.find(user);
  if (it == data_.end()) return 0;
  auto rit = it->second.total.find(region);
  return rit == it->second.total.end() ? 0 : rit->second;
}

long CountTable::period_count(const std::string& user, int period_index, int region) const {
  auto it = data_.find(user);
  if (it == data_.end()) return 0;
  if (period_index < 0 || period_index >= static_cast<int>(periods_.size()))
    throw input_error("period index out of range");
  const auto& m = it->second.per_period[static_cast<std::size_t>(period_index)];
  auto rit = m.find(region);
  return rit == m.end() ? 0 : rit->second;
}

long CountTable::period_total(const std::string& user, int period_index) const {
  auto it = data_.find(user);
  if (it == data_.end()) return 0;
  if (period_index < 0 || period_index >= static_cast<int>(periods_.size()))
    throw input_error("period index out of range");
  long sum = 0;
  for (const auto& [_, c] : it->second.per_period[static_cast<std::size_t>(period_index)]) sum += c;
  return sum;
}

long CountTable::period_total_restricted(const std::string& user, int period_index,
                                         const std::vector<int>& regions) const {
  long sum = 0;
  for (int r : regions) sum += period_count(user, period_index, r);
  return sum;
}

const std::map<int, long>& CountTable::totals_by_region(const std::string& user) const {
  auto it = data_.find(user);
  if (it == data_.end()) throw input_error("unknown user: " + user);
  return it->second.total;
}

int CountTable::period_index(const std::string& name) const {
  for (std::size_t i = 0; i < periods_.size(); ++i)
    if (periods_[i].name() == name) return static_cast<int>(i);
  throw input_error("unknown period: " + name);
}

std::vector<std::string> filter_users(const CountTable& table, long min_points) {
  std::vector<std::string> kept;
  for (const auto& user : table.users()) {
    bool ok = true;
    for (std::size_t p = 0; p < table.periods().size() && ok; ++p)
      ok = table.period_total(user, static_cast<int>(p)) >= min_points;
    if (ok) kept.push_back(user);
  }
  return kept;
}

std::vector<std::string> filter_users_restricted(const CountTable& table, long min_points,
                                                 const std::vector<int>& regions) {
  std::vector<std::string> kept;
  for (const auto& user : table.users()) {
    bool ok = true;
    for (std::size_t p = 0; p < table.periods().size() && ok; ++p)
      ok = table.period_total_restricted(user, static_cast<int>(p), regions) >= min_points;
    if (ok) kept.push_back(user);
  }
  return kept;
}

RegionSelection select_regions(const CountTable& table, int per_user_top, int keep,
                               const std::vector<std::string>* user_subset) {
  if (per_user_top < 1 || keep < 1) throw input_error("selection sizes must be positive");
  const std::vector<std::string> users = user_subset ? *user_subset : table.users();

  std::map<int, int> score;
  for (const auto& user : users) {
    if (!table.has_user(user)) continue;
    std::vector<std::pair<int, long>> ranked(table.totals_by_region(user).begin(),
                                             table.totals_by_region(user).end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    const std::size_t top = std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(per_user_top));
    for (std::size_t i = 0; i < top; ++i) ++score[ranked[i].first];
  }

  std::vector<std::pair<int, int>> scored(score.begin(), score.end());
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  RegionSelection sel;
  sel.truncated = static_cast<int>(scored.size()) < keep;
  const std::size_t take = std::min<std::size_t>(scored.size(), static_cast<std::size_t>(keep));
  for (std::size_t i = 0; i < take; ++i) sel.regions.push_back(scored[i].first);
  return sel;
}

Prior build_prior(const CountTable& table, const std::string& user, const std::string& period,
                  const std::vector<int>& regions) {
  if (regions.empty()) throw input_error("need at least one region");
  const int pidx = table.period_index(period);
  std::vector<double> weights(regions.size(), 0.0);
  long total = 0;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const long c = table.period_count(user, pidx, regions[i]);
    weights[i] = static_cast<double>(c);
    total += c;
  }
  if (total == 0)
    throw input_error("user " + user + " has no points in the selected regions for period " +
                      period);
  for (double& w : weights) w /= static_cast<double>(total);
  return Prior(std::move(weights));
}

LocationSet regions_to_locations(const GridSpec& grid, const std::vector<int>& regions) {
  if (regions.empty()) throw input_error("need at least one region");
  std::vector<Point> pts;
  std::vector<std::string> labels;
  pts.reserve(regions.size());
  for (int r : regions) {
    if (r < 0 || r >= grid.columns * grid.rows) throw input_error("region index out of range");
    const int row = r / grid.columns;
    const int col = r % grid.columns;
    pts.push_back({grid.origin.x + (col + 0.5) * grid.cell_width,
                   grid.origin.y + (row + 0.5) * grid.cell_height});
    labels.push_back("r" + std::to_string(r));
  }
  return LocationSet(std::move(pts), std::move(labels));
}

}  // namespace geopriv
