#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "penair/ingest.hpp"
#include "penair/segmentation.hpp"

namespace penair {

/// The six per-file measurements, in table column order.
enum class Feature : std::uint8_t { TS, TAS, TAL, StrokesS, StrokesAS, StrokesAL };

inline constexpr std::array<Feature, 6> kFeatures = {Feature::TS,       Feature::TAS,
                                                     Feature::TAL,      Feature::StrokesS,
                                                     Feature::StrokesAS, Feature::StrokesAL};

/// "T_S", "T_AS", ... "Strokes_AL".
std::string_view to_string(Feature f) noexcept;
std::optional<Feature> parse_feature(std::string_view name) noexcept;

struct FeatureVector {
  Tick t_s = 0;
  Tick t_as = 0;
  Tick t_al = 0;
  std::int64_t strokes_s = 0;
  std::int64_t strokes_as = 0;
  std::int64_t strokes_al = 0;
  bool anomalous = false;
  ManifestRecord source;

  double get(Feature f) const noexcept;
  Tick total_time() const noexcept { return t_s + t_as + t_al; }
};

/// A file is anomalous when in-air-long time is strictly greater than
/// `threshold` of its total time. The threshold is compared exactly at
/// micro resolution, so 0.7 means 700000/1000000.
struct AnomalyPolicy {
  double threshold = 0.7;
};

bool is_anomalous(Tick t_s, Tick t_as, Tick t_al, const AnomalyPolicy& policy);

FeatureVector feature_vector(const SessionSegmentation& seg, const AnomalyPolicy& policy = {},
                             ManifestRecord source = {});

struct Percentages {
  double on_surface = 0;
  double in_air_short = 0;
  double in_air_long = 0;
};

/// 100 * T_k / (T_S + T_AS + T_AL); throws UndefinedPercentage on a zero total.
Percentages relative_times(double t_s, double t_as, double t_al);

struct CohortSummary {
  std::string database;
  std::string task;
  std::string cohort;
  std::size_t n_files = 0;
  std::size_t n_anomalous = 0;
  double mean_t_s = 0, mean_t_as = 0, mean_t_al = 0;
  Percentages pct;  // ratio of the mean times
  double mean_strokes_s = 0, mean_strokes_as = 0, mean_strokes_al = 0;
};

/// Means over the non-anomalous vectors. All inputs must share database,
/// task and cohort (Value error otherwise); EmptyCohort when every vector is
/// anomalous or the input is empty.
CohortSummary aggregate_cohort(std::span<const FeatureVector> vectors);

/// Groups by (database, task, cohort) in order of first appearance and
/// aggregates each group.
std::vector<CohortSummary> aggregate_all(std::span<const FeatureVector> vectors);

}  // namespace penair
