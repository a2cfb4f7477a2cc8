#include "slidegraph/catalog.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace slidegraph {

namespace {

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_int_field(const std::string& text, std::int64_t& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  return ec == std::errc{} && ptr == t.data() + t.size();
}

bool parse_double_field(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size() && std::isfinite(out);
}

// Reads one CSV record, honoring quoted fields (embedded commas, doubled
// quotes, embedded newlines). Returns false at end of input.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool saw_any = false;
  int c;
  while ((c = in.get()) != EOF) {
    saw_any = true;
    char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"') {
      in_quotes = true;
    } else if (ch == ',') {
      fields.push_back(field);
      field.clear();
    } else if (ch == '\n') {
      break;
    } else if (ch != '\r') {
      field.push_back(ch);
    }
  }
  if (!saw_any) return false;
  fields.push_back(field);
  return true;
}

void write_csv_field(std::ostream& out, const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos) {
    out << value;
    return;
  }
  out << '"';
  for (char ch : value) {
    if (ch == '"') out << "\"\"";
    out << ch;
  }
  out << '"';
}

const std::array<const char*, 15> kColumns = {
    "event_id",        "event_date",        "submitted_date",
    "latitude",        "longitude",         "location_description",
    "location_accuracy", "fatality_count",  "injury_count",
    "event_title",     "event_description", "landslide_size",
    "trigger",         "source_name",       "source_link"};

const std::array<const char*, 4> kMandatory = {"event_id", "event_date", "latitude",
                                               "longitude"};

struct RawRow {
  std::map<std::string, std::string> fields;
  const std::string& get(const char* name) const {
    static const std::string empty;
    auto it = fields.find(name);
    return it == fields.end() ? empty : it->second;
  }
};

// Validates one raw row and appends either a record or a diagnostic.
void ingest_row(const RawRow& row, std::size_t row_number, std::set<std::string>& seen_ids,
                ParseResult& result) {
  auto reject = [&](const std::string& reason) {
    result.diagnostics.push_back({row_number, reason});
  };

  EventRecord rec;
  rec.event_id = trim(row.get("event_id"));
  if (rec.event_id.empty()) return reject("missing event_id");
  if (seen_ids.count(rec.event_id)) return reject("duplicate event_id '" + rec.event_id + "'");

  auto date = Date::parse(row.get("event_date"));
  if (!date) return reject("unparseable event_date '" + trim(row.get("event_date")) + "'");
  rec.event_date = *date;

  const std::string submitted = trim(row.get("submitted_date"));
  if (!submitted.empty()) {
    auto sub = Date::parse(submitted);
    if (!sub) return reject("unparseable submitted_date '" + submitted + "'");
    rec.submitted_date = *sub;
  }

  if (!parse_double_field(row.get("latitude"), rec.latitude))
    return reject("unparseable latitude");
  if (rec.latitude < -90.0 || rec.latitude > 90.0) return reject("latitude out of range");
  if (!parse_double_field(row.get("longitude"), rec.longitude))
    return reject("unparseable longitude");
  if (rec.longitude < -180.0 || rec.longitude > 180.0) return reject("longitude out of range");

  const std::string fat = trim(row.get("fatality_count"));
  if (fat.empty()) {
    rec.fatality_missing = true;
  } else if (!parse_int_field(fat, rec.fatality_count) || rec.fatality_count < 0) {
    return reject("invalid fatality_count '" + fat + "'");
  }
  const std::string inj = trim(row.get("injury_count"));
  if (inj.empty()) {
    rec.injury_missing = true;
  } else if (!parse_int_field(inj, rec.injury_count) || rec.injury_count < 0) {
    return reject("invalid injury_count '" + inj + "'");
  }

  rec.location_description = trim(row.get("location_description"));
  rec.location_accuracy = parse_location_accuracy(row.get("location_accuracy"));
  rec.event_title = trim(row.get("event_title"));
  rec.event_description = trim(row.get("event_description"));
  rec.landslide_size = parse_landslide_size(row.get("landslide_size"));
  rec.trigger = trim(row.get("trigger"));
  rec.source_name = trim(row.get("source_name"));
  rec.source_link = trim(row.get("source_link"));

  seen_ids.insert(rec.event_id);
  result.records.push_back(std::move(rec));
}

}  // namespace

std::optional<Date> Date::parse(const std::string& text) {
  const std::string t = trim(text);
  Date d;
  auto all_digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(),
                                     [](unsigned char c) { return std::isdigit(c); });
  };
  auto split = [&](char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(t);
    std::string part;
    while (std::getline(ss, part, sep)) parts.push_back(part);
    return parts;
  };
  if (t.find('-') != std::string::npos) {
    auto parts = split('-');
    if (parts.size() != 3 || !all_digits(parts[0]) || !all_digits(parts[1]) ||
        !all_digits(parts[2]))
      return std::nullopt;
    d = {std::stoi(parts[0]), std::stoi(parts[1]), std::stoi(parts[2])};
  } else if (t.find('/') != std::string::npos) {
    auto parts = split('/');
    if (parts.size() != 3 || !all_digits(parts[0]) || !all_digits(parts[1]) ||
        !all_digits(parts[2]))
      return std::nullopt;
    d = {std::stoi(parts[2]), std::stoi(parts[0]), std::stoi(parts[1])};
  } else {
    return std::nullopt;
  }
  if (!d.valid()) return std::nullopt;
  return d;
}

bool Date::valid() const {
  namespace chr = std::chrono;
  if (year < 1 || year > 9999) return false;
  const chr::year_month_day ymd{chr::year{year}, chr::month{static_cast<unsigned>(month)},
                                chr::day{static_cast<unsigned>(day)}};
  return ymd.ok();
}

int Date::day_of_year() const {
  namespace chr = std::chrono;
  const chr::year_month_day ymd{chr::year{year}, chr::month{static_cast<unsigned>(month)},
                                chr::day{static_cast<unsigned>(day)}};
  const chr::year_month_day jan1{chr::year{year}, chr::January, chr::day{1}};
  return static_cast<int>((chr::sys_days{ymd} - chr::sys_days{jan1}).count()) + 1;
}

std::string Date::to_iso() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

LocationAccuracy parse_location_accuracy(const std::string& text) {
  const std::string t = to_lower(trim(text));
  if (t == "exact") return LocationAccuracy::Exact;
  if (t == "1km") return LocationAccuracy::Km1;
  if (t == "5km") return LocationAccuracy::Km5;
  if (t == "10km") return LocationAccuracy::Km10;
  if (t == "25km") return LocationAccuracy::Km25;
  if (t == "50km") return LocationAccuracy::Km50;
  return LocationAccuracy::Unknown;
}

LandslideSize parse_landslide_size(const std::string& text) {
  const std::string t = to_lower(trim(text));
  if (t == "small") return LandslideSize::Small;
  if (t == "medium") return LandslideSize::Medium;
  if (t == "large") return LandslideSize::Large;
  if (t == "very_large") return LandslideSize::VeryLarge;
  if (t == "catastrophic") return LandslideSize::Catastrophic;
  return LandslideSize::Unknown;
}

std::string to_string(LocationAccuracy a) {
  switch (a) {
    case LocationAccuracy::Exact: return "exact";
    case LocationAccuracy::Km1: return "1km";
    case LocationAccuracy::Km5: return "5km";
    case LocationAccuracy::Km10: return "10km";
    case LocationAccuracy::Km25: return "25km";
    case LocationAccuracy::Km50: return "50km";
    case LocationAccuracy::Unknown: break;
  }
  return "unknown";
}

std::string to_string(LandslideSize s) {
  switch (s) {
    case LandslideSize::Small: return "small";
    case LandslideSize::Medium: return "medium";
    case LandslideSize::Large: return "large";
    case LandslideSize::VeryLarge: return "very_large";
    case LandslideSize::Catastrophic: return "catastrophic";
    case LandslideSize::Unknown: break;
  }
  return "unknown";
}

ParseResult parse_catalog(const std::string& path, CatalogFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open catalog file: " + path);
  switch (format) {
    case CatalogFormat::Csv: return parse_catalog_csv(in);
    case CatalogFormat::Json: return parse_catalog_json(in);
  }
  throw FormatError("unknown catalog format");
}

ParseResult parse_catalog_csv(std::istream& in) {
  std::vector<std::string> header;
  if (!read_csv_record(in, header)) throw SchemaError("catalog csv is missing a header row");
  std::map<std::string, std::size_t> col_index;
  for (std::size_t i = 0; i < header.size(); ++i) col_index[to_lower(trim(header[i]))] = i;
  for (const char* col : kMandatory) {
    if (!col_index.count(col))
      throw SchemaError(std::string("catalog csv is missing mandatory column '") + col + "'");
  }

  ParseResult result;
  std::set<std::string> seen_ids;
  std::vector<std::string> fields;
  std::size_t row_number = 0;
  while (read_csv_record(in, fields)) {
    ++row_number;
    if (fields.size() == 1 && trim(fields[0]).empty()) {
      --row_number;  // ignore blank trailing lines
      continue;
    }
    RawRow row;
    for (const char* col : kColumns) {
      auto it = col_index.find(col);
      if (it != col_index.end() && it->second < fields.size())
        row.fields[col] = fields[it->second];
    }
    ingest_row(row, row_number, seen_ids, result);
  }
  return result;
}

ParseResult parse_catalog_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("catalog json is not parseable: ") + e.what());
  }
  if (!doc.is_array()) throw FormatError("catalog json must be an array of objects");

  ParseResult result;
  std::set<std::string> seen_ids;
  std::size_t row_number = 0;
  for (const auto& item : doc) {
    ++row_number;
    if (!item.is_object()) {
      result.diagnostics.push_back({row_number, "entry is not an object"});
      continue;
    }
    RawRow row;
    bool has_mandatory = true;
    for (const char* col : kMandatory) {
      if (!item.contains(col)) has_mandatory = false;
    }
    if (!has_mandatory)
      throw SchemaError("catalog json entry " + std::to_string(row_number) +
                        " is missing a mandatory key (event_id, event_date, latitude, longitude)");
    for (const char* col : kColumns) {
      if (!item.contains(col) || item[col].is_null()) continue;
      const auto& v = item[col];
      if (v.is_string()) {
        row.fields[col] = v.get<std::string>();
      } else if (v.is_number_integer()) {
        row.fields[col] = std::to_string(v.get<std::int64_t>());
      } else if (v.is_number()) {
        std::ostringstream os;
        os.precision(17);
        os << v.get<double>();
        row.fields[col] = os.str();
      }
    }
    ingest_row(row, row_number, seen_ids, result);
  }
  return result;
}

void write_catalog_csv(const std::vector<EventRecord>& records, std::ostream& out) {
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (i) out << ',';
    out << kColumns[i];
  }
  out << '\n';
  for (const auto& r : records) {
    std::ostringstream lat, lon;
    lat.precision(17);
    lon.precision(17);
    lat << r.latitude;
    lon << r.longitude;
    const std::array<std::string, 15> values = {
        r.event_id,
        r.event_date.to_iso(),
        r.submitted_date ? r.submitted_date->to_iso() : "",
        lat.str(),
        lon.str(),
        r.location_description,
        to_string(r.location_accuracy),
        r.fatality_missing ? "" : std::to_string(r.fatality_count),
        r.injury_missing ? "" : std::to_string(r.injury_count),
        r.event_title,
        r.event_description,
        to_string(r.landslide_size),
        r.trigger,
        r.source_name,
        r.source_link};
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out << ',';
      write_csv_field(out, values[i]);
    }
    out << '\n';
  }
}

void write_catalog_json(const std::vector<EventRecord>& records, std::ostream& out) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json item;
    item["event_id"] = r.event_id;
    item["event_date"] = r.event_date.to_iso();
    item["submitted_date"] = r.submitted_date ? nlohmann::json(r.submitted_date->to_iso())
                                              : nlohmann::json(nullptr);
    item["latitude"] = r.latitude;
    item["longitude"] = r.longitude;
    item["location_description"] = r.location_description;
    item["location_accuracy"] = to_string(r.location_accuracy);
    if (r.fatality_missing) {
      item["fatality_count"] = nullptr;
    } else {
      item["fatality_count"] = r.fatality_count;
    }
    if (r.injury_missing) {
      item["injury_count"] = nullptr;
    } else {
      item["injury_count"] = r.injury_count;
    }
    item["event_title"] = r.event_title;
    item["event_description"] = r.event_description;
    item["landslide_size"] = to_string(r.landslide_size);
    item["trigger"] = r.trigger;
    item["source_name"] = r.source_name;
    item["source_link"] = r.source_link;
    arr.push_back(std::move(item));
  }
  out << arr.dump(2) << '\n';
}

std::vector<EventRecord> filter_region(const std::vector<EventRecord>& records,
                                       const BoundingBox& box) {
  if (!box.valid()) throw ArgumentError("inverted bounding box");
  std::vector<EventRecord> kept;
  kept.reserve(records.size());
  for (const auto& r : records) {
    if (box.contains(r.latitude, r.longitude)) kept.push_back(r);
  }
  return kept;
}

CatalogStats compute_stats(const std::vector<EventRecord>& records) {
  CatalogStats stats;
  stats.n_events = records.size();
  std::set<std::pair<std::string, std::string>> sources;
  std::set<std::pair<std::int64_t, std::int64_t>> gazetteer;
  std::set<std::pair<std::string, std::string>> profiles;
  for (const auto& r : records) {
    if (auto key = source_key(r)) sources.insert(*key);
    gazetteer.insert(gazetteer_key(r.latitude, r.longitude));
    profiles.insert(profile_key(r));
    if (!stats.date_range) {
      stats.date_range = {r.event_date, r.event_date};
    } else {
      stats.date_range->first = std::min(stats.date_range->first, r.event_date);
      stats.date_range->second = std::max(stats.date_range->second, r.event_date);
    }
    if (!stats.bbox) {
      stats.bbox = BoundingBox{r.latitude, r.latitude, r.longitude, r.longitude};
    } else {
      stats.bbox->lat_min = std::min(stats.bbox->lat_min, r.latitude);
      stats.bbox->lat_max = std::max(stats.bbox->lat_max, r.latitude);
      stats.bbox->lon_min = std::min(stats.bbox->lon_min, r.longitude);
      stats.bbox->lon_max = std::max(stats.bbox->lon_max, r.longitude);
    }
  }
  stats.n_sources = sources.size();
  stats.n_gazetteer = gazetteer.size();
  stats.n_profiles = profiles.size();
  return stats;
}

std::pair<std::int64_t, std::int64_t> gazetteer_key(double lat, double lon) {
  return {std::llround(lat * 1e4), std::llround(lon * 1e4)};
}

std::optional<std::pair<std::string, std::string>> source_key(const EventRecord& r) {
  if (r.source_name.empty() && r.source_link.empty()) return std::nullopt;
  return std::make_pair(r.source_name, r.source_link);
}

std::pair<std::string, std::string> profile_key(const EventRecord& r) {
  return {to_string(r.landslide_size), r.trigger};
}

}  // namespace slidegraph
