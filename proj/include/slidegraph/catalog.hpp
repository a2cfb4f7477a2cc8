#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slidegraph/types.hpp"

namespace slidegraph {

/// Calendar date. Accepts ISO-8601 (YYYY-MM-DD) and MM/DD/YYYY on parse,
/// always renders ISO-8601.
struct Date {
  int year = 0;
  int month = 0;  // 1..12
  int day = 0;    // 1..31, validated against the actual month/year

  static std::optional<Date> parse(const std::string& text);
  bool valid() const;
  /// 1-based ordinal day within the year (leap-aware).
  int day_of_year() const;
  std::string to_iso() const;
  auto operator<=>(const Date&) const = default;
};

enum class LocationAccuracy { Exact, Km1, Km5, Km10, Km25, Km50, Unknown };
enum class LandslideSize { Small, Medium, Large, VeryLarge, Catastrophic, Unknown };

LocationAccuracy parse_location_accuracy(const std::string& text);
LandslideSize parse_landslide_size(const std::string& text);
std::string to_string(LocationAccuracy a);
std::string to_string(LandslideSize s);

/// One catalog row. Missing impact counts parse to 0 with the corresponding
/// *_missing flag set; they are never grounds for rejecting the row.
struct EventRecord {
  std::string event_id;
  Date event_date;
  std::optional<Date> submitted_date;
  double latitude = 0.0;   // [-90, 90]
  double longitude = 0.0;  // [-180, 180]
  std::string location_description;
  LocationAccuracy location_accuracy = LocationAccuracy::Unknown;
  std::int64_t fatality_count = 0;
  std::int64_t injury_count = 0;
  bool fatality_missing = false;
  bool injury_missing = false;
  std::string event_title;
  std::string event_description;
  LandslideSize landslide_size = LandslideSize::Unknown;
  std::string trigger;
  std::string source_name;
  std::string source_link;

  bool operator==(const EventRecord&) const = default;
};

struct RowDiagnostic {
  std::size_t row = 0;  // 1-based data row number (header excluded)
  std::string reason;
};

struct ParseResult {
  std::vector<EventRecord> records;
  std::vector<RowDiagnostic> diagnostics;
};

struct BoundingBox {
  double lat_min = 0.0;
  double lat_max = 0.0;
  double lon_min = 0.0;
  double lon_max = 0.0;

  bool valid() const { return lat_min <= lat_max && lon_min <= lon_max; }
  bool contains(double lat, double lon) const {
    return lat >= lat_min && lat <= lat_max && lon >= lon_min && lon <= lon_max;
  }
};

/// Default High Mountain Asia study region.
inline BoundingBox hma_default_bbox() { return {24.0, 46.0, 60.0, 106.0}; }

struct CatalogStats {
  std::size_t n_events = 0;
  std::size_t n_sources = 0;
  std::size_t n_gazetteer = 0;
  std::size_t n_profiles = 0;
  std::optional<std::pair<Date, Date>> date_range;
  std::optional<BoundingBox> bbox;
};

enum class CatalogFormat { Csv, Json };

ParseResult parse_catalog(const std::string& path, CatalogFormat format);
ParseResult parse_catalog_csv(std::istream& in);
ParseResult parse_catalog_json(std::istream& in);

void write_catalog_csv(const std::vector<EventRecord>& records, std::ostream& out);
void write_catalog_json(const std::vector<EventRecord>& records, std::ostream& out);

/// Keeps records inside `box` (inclusive edges), preserving order.
std::vector<EventRecord> filter_region(const std::vector<EventRecord>& records,
                                       const BoundingBox& box);

CatalogStats compute_stats(const std::vector<EventRecord>& records);

/// Dedup keys shared by the knowledge-graph builder and its count oracles.
/// Gazetteer points share a node when coordinates match at 4 decimals (~11 m).
std::pair<std::int64_t, std::int64_t> gazetteer_key(double lat, double lon);
/// Sources share a node per distinct (name, link); records with both fields
/// empty contribute no source at all.
std::optional<std::pair<std::string, std::string>> source_key(const EventRecord& r);
std::pair<std::string, std::string> profile_key(const EventRecord& r);

}  // namespace slidegraph
