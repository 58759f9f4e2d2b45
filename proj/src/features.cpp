#include "penair/features.hpp"

#include <cmath>
#include <tuple>

#include "penair/error.hpp"

namespace penair {

std::string_view to_string(Feature f) noexcept {
  switch (f) {
    case Feature::TS: return "T_S";
    case Feature::TAS: return "T_AS";
    case Feature::TAL: return "T_AL";
    case Feature::StrokesS: return "Strokes_S";
    case Feature::StrokesAS: return "Strokes_AS";
    case Feature::StrokesAL: return "Strokes_AL";
  }
  return "?";
}

std::optional<Feature> parse_feature(std::string_view name) noexcept {
  for (Feature f : kFeatures) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

double FeatureVector::get(Feature f) const noexcept {
  switch (f) {
    case Feature::TS: return static_cast<double>(t_s);
    case Feature::TAS: return static_cast<double>(t_as);
    case Feature::TAL: return static_cast<double>(t_al);
    case Feature::StrokesS: return static_cast<double>(strokes_s);
    case Feature::StrokesAS: return static_cast<double>(strokes_as);
    case Feature::StrokesAL: return static_cast<double>(strokes_al);
  }
  return 0;
}

bool is_anomalous(Tick t_s, Tick t_as, Tick t_al, const AnomalyPolicy& policy) {
  if (!(policy.threshold > 0.0 && policy.threshold <= 1.0)) {
    throw Error(ErrorKind::Value, "anomaly threshold must lie in (0, 1]");
  }
  __extension__ using Wide = __int128;
  constexpr std::int64_t kScale = 1'000'000;
  const auto num = static_cast<Wide>(std::llround(policy.threshold * kScale));
  const Wide total = static_cast<Wide>(t_s) + t_as + t_al;
  return static_cast<Wide>(t_al) * kScale > num * total;
}

FeatureVector feature_vector(const SessionSegmentation& seg, const AnomalyPolicy& policy,
                             ManifestRecord source) {
  FeatureVector v;
  v.t_s = seg.time[StrokeClass::OnSurface];
  v.t_as = seg.time[StrokeClass::InAirShort];
  v.t_al = seg.time[StrokeClass::InAirLong];
  v.strokes_s = static_cast<std::int64_t>(seg.count[StrokeClass::OnSurface]);
  v.strokes_as = static_cast<std::int64_t>(seg.count[StrokeClass::InAirShort]);
  v.strokes_al = static_cast<std::int64_t>(seg.count[StrokeClass::InAirLong]);
  v.anomalous = is_anomalous(v.t_s, v.t_as, v.t_al, policy);
  v.source = std::move(source);
  return v;
}

Percentages relative_times(double t_s, double t_as, double t_al) {
  const double total = t_s + t_as + t_al;
  if (!(total > 0.0)) {
    throw Error(ErrorKind::UndefinedPercentage, "percentages undefined for a zero total time");
  }
  return {100.0 * t_s / total, 100.0 * t_as / total, 100.0 * t_al / total};
}

CohortSummary aggregate_cohort(std::span<const FeatureVector> vectors) {
  if (vectors.empty()) throw Error(ErrorKind::EmptyCohort, "no feature vectors to aggregate");

  CohortSummary s;
  s.database = vectors.front().source.database;
  s.task = vectors.front().source.task;
  s.cohort = vectors.front().source.cohort;
  s.n_files = vectors.size();

  // integer sums keep the means independent of input order
  std::int64_t sum[6] = {0, 0, 0, 0, 0, 0};
  for (const auto& v : vectors) {
    if (v.source.database != s.database || v.source.task != s.task || v.source.cohort != s.cohort) {
      throw Error(ErrorKind::Value, "aggregate_cohort needs vectors from a single group");
    }
    if (v.anomalous) {
      ++s.n_anomalous;
      continue;
    }
    sum[0] += v.t_s;
    sum[1] += v.t_as;
    sum[2] += v.t_al;
    sum[3] += v.strokes_s;
    sum[4] += v.strokes_as;
    sum[5] += v.strokes_al;
  }
  const std::size_t kept = s.n_files - s.n_anomalous;
  if (kept == 0) {
    throw Error(ErrorKind::EmptyCohort, "every file of " + s.database + "/" + s.task + "/" +
                                            s.cohort + " is anomalous");
  }
  const auto n = static_cast<double>(kept);
  s.mean_t_s = static_cast<double>(sum[0]) / n;
  s.mean_t_as = static_cast<double>(sum[1]) / n;
  s.mean_t_al = static_cast<double>(sum[2]) / n;
  s.mean_strokes_s = static_cast<double>(sum[3]) / n;
  s.mean_strokes_as = static_cast<double>(sum[4]) / n;
  s.mean_strokes_al = static_cast<double>(sum[5]) / n;
  s.pct = relative_times(s.mean_t_s, s.mean_t_as, s.mean_t_al);
  return s;
}

std::vector<CohortSummary> aggregate_all(std::span<const FeatureVector> vectors) {
  using Key = std::tuple<std::string, std::string, std::string>;
  std::vector<Key> order;
  std::vector<std::vector<FeatureVector>> groups;
  for (const auto& v : vectors) {
    Key key{v.source.database, v.source.task, v.source.cohort};
    std::size_t g = 0;
    while (g < order.size() && order[g] != key) ++g;
    if (g == order.size()) {
      order.push_back(std::move(key));
      groups.emplace_back();
    }
    groups[g].push_back(v);
  }
  std::vector<CohortSummary> out;
  out.reserve(groups.size());
  for (const auto& g : groups) out.push_back(aggregate_cohort(g));
  return out;
}

}  // namespace penair
