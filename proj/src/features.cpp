#include "slidegraph/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "slidegraph/rng.hpp"

namespace slidegraph {

namespace {

double minmax_norm(double v, double lo, double hi) {
  if (lo == hi) return 0.5;
  return (v - lo) / (hi - lo);
}

}  // namespace

NormalizedCoordinates normalize_coordinates(const std::vector<EventRecord>& records) {
  if (records.empty()) throw ArgumentError("cannot normalize an empty record set");
  NormalizedCoordinates out;
  out.scaling = {records[0].latitude, records[0].latitude, records[0].longitude,
                 records[0].longitude};
  for (const auto& r : records) {
    out.scaling.lat_min = std::min(out.scaling.lat_min, r.latitude);
    out.scaling.lat_max = std::max(out.scaling.lat_max, r.latitude);
    out.scaling.lon_min = std::min(out.scaling.lon_min, r.longitude);
    out.scaling.lon_max = std::max(out.scaling.lon_max, r.longitude);
  }
  out.lat_norm.reserve(records.size());
  out.lon_norm.reserve(records.size());
  for (const auto& r : records) {
    out.lat_norm.push_back(minmax_norm(r.latitude, out.scaling.lat_min, out.scaling.lat_max));
    out.lon_norm.push_back(minmax_norm(r.longitude, out.scaling.lon_min, out.scaling.lon_max));
  }
  return out;
}

TemporalEncoding encode_temporal(const Date& date) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  TemporalEncoding enc;
  const double month_phase = two_pi * (date.month - 1) / 12.0;
  enc.month_sin = std::sin(month_phase);
  enc.month_cos = std::cos(month_phase);
  const double doy_phase = two_pi * (date.day_of_year() - 1) / 366.0;
  enc.doy_sin = std::sin(doy_phase);
  enc.doy_cos = std::cos(doy_phase);
  return enc;
}

double severity_raw(double fatalities, double injuries) {
  return std::log1p(fatalities) + 0.5 * std::log1p(injuries);
}

double max_severity_raw(const std::vector<EventRecord>& records) {
  double mx = 0.0;
  for (const auto& r : records) mx = std::max(mx, severity_raw(r.fatality_count, r.injury_count));
  return mx;
}

double severity_score(double fatalities, double injuries, double max_raw) {
  if (max_raw <= 0.0) return 0.0;
  return severity_raw(fatalities, injuries) / max_raw;
}

double accuracy_code(LocationAccuracy accuracy) {
  switch (accuracy) {
    case LocationAccuracy::Exact: return 6.0 / 6.0;
    case LocationAccuracy::Km1: return 5.0 / 6.0;
    case LocationAccuracy::Km5: return 4.0 / 6.0;
    case LocationAccuracy::Km10: return 3.0 / 6.0;
    case LocationAccuracy::Km25: return 2.0 / 6.0;
    case LocationAccuracy::Km50: return 1.0 / 6.0;
    case LocationAccuracy::Unknown: break;
  }
  return 0.0;
}

int size_rank(LandslideSize size) {
  switch (size) {
    case LandslideSize::Small: return 0;
    case LandslideSize::Medium: return 1;
    case LandslideSize::Large: return 2;
    case LandslideSize::VeryLarge: return 3;
    case LandslideSize::Catastrophic: return 4;
    case LandslideSize::Unknown: break;
  }
  return 0;
}

FeatureMatrixResult build_feature_matrix(const std::vector<EventRecord>& records) {
  const auto coords = normalize_coordinates(records);
  FeatureMatrixResult out;
  out.scaling = coords.scaling;
  out.max_severity_raw = max_severity_raw(records);
  out.features = Matrix::Zero(static_cast<Eigen::Index>(records.size()), kFeatureDim);
  for (Eigen::Index i = 0; i < out.features.rows(); ++i) {
    const auto& r = records[static_cast<std::size_t>(i)];
    const auto enc = encode_temporal(r.event_date);
    out.features(i, 0) = coords.lat_norm[static_cast<std::size_t>(i)];
    out.features(i, 1) = coords.lon_norm[static_cast<std::size_t>(i)];
    out.features(i, 2) = enc.month_sin;
    out.features(i, 3) = enc.month_cos;
    out.features(i, 4) = enc.doy_sin;
    out.features(i, 5) = enc.doy_cos;
    out.features(i, 6) = severity_score(r.fatality_count, r.injury_count, out.max_severity_raw);
    out.features(i, 7) = accuracy_code(r.location_accuracy);
    if (r.landslide_size != LandslideSize::Unknown) {
      out.features(i, 8 + size_rank(r.landslide_size)) = 1.0;
    }
  }
  return out;
}

void LabelingConfig::validate() const {
  if (w_casualty < 0 || w_magnitude < 0 || w_seasonal < 0)
    throw ArgumentError("labeling weights must be nonnegative");
  if (std::abs(w_casualty + w_magnitude + w_seasonal - 1.0) > 1e-9)
    throw ArgumentError("labeling weights must sum to 1");
}

LabelingResult synthesize_labels(const std::vector<EventRecord>& records,
                                 const LabelingConfig& config) {
  config.validate();
  LabelingResult out;
  if (records.empty()) return out;

  const double max_raw = max_severity_raw(records);
  std::vector<double> scores;
  scores.reserve(records.size());
  for (const auto& r : records) {
    const double severity = severity_score(r.fatality_count, r.injury_count, max_raw);
    const double magnitude = size_rank(r.landslide_size) / 4.0;
    const double seasonal = config.monsoon_months.count(r.event_date.month) ? 1.0 : 0.0;
    scores.push_back(config.w_casualty * severity + config.w_magnitude * magnitude +
                     config.w_seasonal * seasonal);
  }

  // tertile thresholds over the full score multiset; ties break low
  std::vector<double> sorted = scores;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const std::size_t k1 = (n + 2) / 3;      // ceil(n/3)
  const std::size_t k2 = (2 * n + 2) / 3;  // ceil(2n/3)
  out.tertile_low = sorted[k1 - 1];
  out.tertile_mid = sorted[k2 - 1];

  out.labels.reserve(n);
  for (double s : scores) {
    RiskClass cls = s <= out.tertile_low   ? RiskClass::Low
                    : s <= out.tertile_mid ? RiskClass::Medium
                                           : RiskClass::High;
    out.labels.push_back({cls, s});
  }
  return out;
}

DatasetSplit split_dataset(const std::vector<int>& labels, const SplitRatios& ratios,
                           std::uint64_t seed) {
  const double sum = ratios.train + ratios.val + ratios.test;
  if (ratios.train <= 0 || ratios.val <= 0 || ratios.test <= 0 || std::abs(sum - 1.0) > 1e-9)
    throw ArgumentError("split ratios must be positive and sum to 1");

  DatasetSplit out;
  const int n = static_cast<int>(labels.size());
  if (n == 0) return out;
  const double r[3] = {ratios.train, ratios.val, ratios.test};

  // global split sizes by largest remainder
  int target[3];
  double frac_global[3];
  int assigned = 0;
  for (int s = 0; s < 3; ++s) {
    const double exact = n * r[s];
    target[s] = static_cast<int>(std::floor(exact));
    frac_global[s] = exact - target[s];
    assigned += target[s];
  }
  for (int left = n - assigned; left > 0; --left) {
    int best = 0;
    for (int s = 1; s < 3; ++s)
      if (frac_global[s] > frac_global[best]) best = s;
    ++target[best];
    frac_global[best] = -1.0;
  }

  // group by class, degrade to a single group when any class is too small
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[labels[i]].push_back(i);
  bool stratified = true;
  for (const auto& [cls, members] : groups) {
    if (members.size() < 3) {
      stratified = false;
      out.warning = "class " + std::to_string(cls) +
                    " has fewer members than splits; falling back to an unstratified split";
      break;
    }
  }
  if (!stratified) {
    groups.clear();
    for (int i = 0; i < n; ++i) groups[0].push_back(i);
  }

  SplitMix64 rng(seed);
  int totals[3] = {0, 0, 0};
  struct GroupAlloc {
    std::vector<int> members;
    int alloc[3] = {0, 0, 0};
    double frac[3] = {0, 0, 0};
    int leftover = 0;
  };
  std::vector<GroupAlloc> allocs;
  for (auto& [cls, members] : groups) {
    (void)cls;
    GroupAlloc ga;
    ga.members = members;
    // Fisher-Yates with the shared deterministic generator
    for (std::size_t i = ga.members.size(); i > 1; --i) {
      std::swap(ga.members[i - 1], ga.members[rng.next_below(i)]);
    }
    int floor_sum = 0;
    for (int s = 0; s < 3; ++s) {
      const double exact = static_cast<double>(ga.members.size()) * r[s];
      ga.alloc[s] = static_cast<int>(std::floor(exact));
      ga.frac[s] = exact - ga.alloc[s];
      floor_sum += ga.alloc[s];
      totals[s] += ga.alloc[s];
    }
    ga.leftover = static_cast<int>(ga.members.size()) - floor_sum;
    allocs.push_back(std::move(ga));
  }
  // hand out leftovers toward the split with the largest global deficit
  for (auto& ga : allocs) {
    for (int u = 0; u < ga.leftover; ++u) {
      int best = 0;
      for (int s = 1; s < 3; ++s) {
        const int ds = target[s] - totals[s];
        const int db = target[best] - totals[best];
        if (ds > db || (ds == db && ga.frac[s] > ga.frac[best])) best = s;
      }
      ++ga.alloc[best];
      ++totals[best];
    }
  }
  for (const auto& ga : allocs) {
    std::size_t pos = 0;
    for (int s = 0; s < 3; ++s) {
      auto* dest = s == 0 ? &out.train : s == 1 ? &out.val : &out.test;
      for (int c = 0; c < ga.alloc[s]; ++c) dest->push_back(ga.members[pos++]);
    }
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.val.begin(), out.val.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

}  // namespace slidegraph
