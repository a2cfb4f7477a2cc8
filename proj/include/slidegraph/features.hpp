#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "slidegraph/catalog.hpp"
#include "slidegraph/types.hpp"

namespace slidegraph {

/// Feature layout for one event, 13 components:
///   0 lat_norm, 1 lon_norm, 2 month_sin, 3 month_cos, 4 doy_sin, 5 doy_cos,
///   6 severity, 7 accuracy_code, 8..12 size one-hot
///   (small/medium/large/very_large/catastrophic; unknown -> all zeros).
inline constexpr int kFeatureDim = 13;

struct CoordScaling {
  double lat_min = 0.0, lat_max = 0.0;
  double lon_min = 0.0, lon_max = 0.0;
};

struct NormalizedCoordinates {
  std::vector<double> lat_norm;
  std::vector<double> lon_norm;
  CoordScaling scaling;
};

/// Min-max scaling over the dataset; a degenerate axis maps to 0.5.
NormalizedCoordinates normalize_coordinates(const std::vector<EventRecord>& records);

struct TemporalEncoding {
  double month_sin = 0.0;
  double month_cos = 0.0;
  double doy_sin = 0.0;
  double doy_cos = 0.0;
};

/// Cyclic encoding: phase 0 at January / day 1, month period 12, day period 366.
TemporalEncoding encode_temporal(const Date& date);

/// Unnormalized impact: ln(1+fatalities) + 0.5*ln(1+injuries).
double severity_raw(double fatalities, double injuries);
double max_severity_raw(const std::vector<EventRecord>& records);
/// Raw impact scaled by the dataset maximum; 0 when the maximum is 0.
double severity_score(double fatalities, double injuries, double max_raw);

/// Coordinate precision mapped to [0,1]: exact=1 descending to 50km=1/6,
/// unknown=0.
double accuracy_code(LocationAccuracy accuracy);

/// 0..4 over small..catastrophic, unknown -> 0.
int size_rank(LandslideSize size);

struct FeatureMatrixResult {
  Matrix features;  // n x kFeatureDim
  CoordScaling scaling;
  double max_severity_raw = 0.0;
};

FeatureMatrixResult build_feature_matrix(const std::vector<EventRecord>& records);

enum class RiskClass : int { Low = 0, Medium = 1, High = 2 };

struct RiskLabel {
  RiskClass cls = RiskClass::Low;
  double risk_score = 0.0;  // retained for audit
};

struct LabelingConfig {
  double w_casualty = 0.5;
  double w_magnitude = 0.3;
  double w_seasonal = 0.2;
  std::set<int> monsoon_months = {6, 7, 8, 9};

  void validate() const;
};

struct LabelingResult {
  std::vector<RiskLabel> labels;
  double tertile_low = 0.0;   // score <= this -> Low
  double tertile_mid = 0.0;   // score <= this -> Medium, else High
};

/// Multifactor risk scoring with dataset-tertile class assignment
/// (ties break toward the lower class).
LabelingResult synthesize_labels(const std::vector<EventRecord>& records,
                                 const LabelingConfig& config);

struct SplitRatios {
  double train = 0.7;
  double val = 0.15;
  double test = 0.15;
};

struct DatasetSplit {
  std::vector<int> train;
  std::vector<int> val;
  std::vector<int> test;
  std::optional<std::string> warning;  // set when stratification degraded
};

/// Deterministic stratified split. Classes with fewer members than splits
/// degrade the whole split to unstratified with a warning.
DatasetSplit split_dataset(const std::vector<int>& labels, const SplitRatios& ratios,
                           std::uint64_t seed);

}  // namespace slidegraph
