#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "geopriv/geo.hpp"
#include "geopriv/prior.hpp"

namespace geopriv {

struct TracePoint {
  std::string user_id;
  std::int64_t timestamp = 0;  // epoch seconds of the recorded civil time
  double lat = 0.0;
  double lon = 0.0;
};

// Named set of [start, end) hour-of-day ranges. start == end denotes the
// full day (the range wraps all the way around); start > end wraps past
// midnight, e.g. night = [19, 7).
class TimePeriod {
 public:
  TimePeriod(std::string name, std::vector<std::pair<int, int>> hour_ranges);

  const std::string& name() const { return name_; }
  const std::vector<std::pair<int, int>>& hour_ranges() const { return ranges_; }
  bool contains_hour(int hour) const;

 private:
  std::string name_;
  std::vector<std::pair<int, int>> ranges_;
};

// full day, morning [7,12), afternoon [12,19), night [19,7).
std::vector<TimePeriod> default_periods();

struct ParseReport {
  long total_lines = 0;
  long malformed = 0;
  std::vector<long> malformed_lines;  // first few, 1-based
  long files = 0;
};

// Reads a trace file (CSV: header then user_id,timestamp,lat,lon) or a
// GeoLife-layout directory (per-user folders of .plt files, six header
// lines each). Points come back sorted per user chronologically. More than
// 1% malformed lines is an ingestion error.
std::vector<TracePoint> parse_traces(const std::string& path, ParseReport* report = nullptr);
std::vector<TracePoint> parse_trace_csv(std::istream& in, ParseReport* report = nullptr);
std::vector<TracePoint> parse_plt_dir(const std::string& dir, ParseReport* report = nullptr);

// Keeps, per user, the densest window of `days` consecutive days (by point
// count; the earliest such window on ties).
std::vector<TracePoint> densest_window(const std::vector<TracePoint>& points, int days);

// Grid in projected coordinates plus the geographic reference that places
// trace points onto it. utc_offset_hours converts stored timestamps to the
// local clock used for hour bucketing.
struct GridFrame {
  GridSpec grid;
  double ref_lat = 0.0;
  double ref_lon = 0.0;
  int utc_offset_hours = 0;
};

// Deduplicated presence counts: a point counts at most once per
// (user, region, calendar hour), aggregated into periods by hour of day.
class CountTable {
 public:
  CountTable(std::vector<TimePeriod> periods) : periods_(std::move(periods)) {}

  const std::vector<TimePeriod>& periods() const { return periods_; }
  std::vector<std::string> users() const;
  bool has_user(const std::string& user) const;

  // All-hours deduplicated count (the "full day" ranking key).
  long total_count(const std::string& user, int region) const;
  long period_count(const std::string& user, int period_index, int region) const;
  long period_total(const std::string& user, int period_index) const;
  long period_total_restricted(const std::string& user, int period_index,
                               const std::vector<int>& regions) const;
  const std::map<int, long>& totals_by_region(const std::string& user) const;

  long dropped_outside_grid() const { return dropped_outside_; }
  int period_index(const std::string& name) const;

  struct UserCounts {
    std::map<int, long> total;                      // region -> all-hours count
    std::vector<std::map<int, long>> per_period;    // period -> region -> count
  };
  std::map<std::string, UserCounts>& mutable_data() { return data_; }
  const std::map<std::string, UserCounts>& data() const { return data_; }
  void add_dropped(long n) { dropped_outside_ += n; }

 private:
  std::vector<TimePeriod> periods_;
  std::map<std::string, UserCounts> data_;
  long dropped_outside_ = 0;
};

CountTable count_points(const std::vector<TracePoint>& points, const GridFrame& frame,
                        const std::vector<TimePeriod>& periods);

// Users whose deduplicated count reaches min_points in every period.
std::vector<std::string> filter_users(const CountTable& table, long min_points);
// Same, counting only the given regions.
std::vector<std::string> filter_users_restricted(const CountTable& table, long min_points,
                                                 const std::vector<int>& regions);

struct RegionSelection {
  std::vector<int> regions;
  bool truncated = false;  // fewer distinct regions than requested
};

// Per user: top per_user_top regions by all-hours count (ties to the lower
// region index). A region scores one point per user listing it; the `keep`
// highest-scoring regions win (ties to the lower index).
RegionSelection select_regions(const CountTable& table, int per_user_top, int keep,
                               const std::vector<std::string>* user_subset = nullptr);

// Prior proportional to the user's deduplicated counts in the period,
// restricted to the selected regions (in their given order).
Prior build_prior(const CountTable& table, const std::string& user, const std::string& period,
                  const std::vector<int>& regions);

// Centers of the selected grid cells, labelled "r<region-index>".
LocationSet regions_to_locations(const GridSpec& grid, const std::vector<int>& regions);

}  // namespace geopriv
