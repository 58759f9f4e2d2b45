#include "penair/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "penair/error.hpp"
#include "penair/kernels.hpp"

namespace penair {

std::string_view to_string(StrokeClass c) noexcept {
  switch (c) {
    case StrokeClass::OnSurface: return "on_surface";
    case StrokeClass::InAirShort: return "in_air_short";
    case StrokeClass::InAirLong: return "in_air_long";
  }
  return "unknown";
}

namespace {

void require_two(const SampleStream& stream) {
  if (stream.size() < 2) {
    throw Error(ErrorKind::InsufficientData,
                "need at least 2 samples, got " + std::to_string(stream.size()));
  }
}

void check_config(const SegmentationConfig& config) {
  if (!(config.gap_factor > 1.0) || !std::isfinite(config.gap_factor)) {
    throw Error(ErrorKind::Value, "gap factor must be a finite number > 1");
  }
}

StrokeClass status_class(std::uint8_t status) {
  return status != 0 ? StrokeClass::OnSurface : StrokeClass::InAirShort;
}

}  // namespace

Tick nominal_period(const SampleStream& stream) {
  require_two(stream);
  std::vector<Tick> diffs(stream.size() - 1);
  kernels::active().adjacent_differences(stream.timestamps(), diffs);
  std::sort(diffs.begin(), diffs.end());

  Tick best = diffs.front();
  std::size_t best_count = 0;
  for (std::size_t i = 0; i < diffs.size();) {
    std::size_t j = i;
    while (j < diffs.size() && diffs[j] == diffs[i]) ++j;
    // strict '>' keeps the smaller value on ties, the run order is ascending
    if (j - i > best_count) {
      best = diffs[i];
      best_count = j - i;
    }
    i = j;
  }
  return best;
}

Tick gap_threshold(Tick period, const SegmentationConfig& config) {
  check_config(config);
  const auto scaled = static_cast<Tick>(std::floor(config.gap_factor * static_cast<double>(period)));
  return std::max(scaled, config.min_gap_ticks.value_or(period + 1));
}

std::vector<Gap> detect_gaps(const SampleStream& stream, const SegmentationConfig& config) {
  require_two(stream);
  const Tick threshold = gap_threshold(nominal_period(stream), config);

  std::vector<std::size_t> idx;
  kernels::active().find_gaps(stream.timestamps(), threshold, idx);

  const auto t = stream.timestamps();
  std::vector<Gap> gaps;
  gaps.reserve(idx.size());
  for (std::size_t i : idx) gaps.push_back({i, t[i + 1] - t[i]});
  return gaps;
}

SessionSegmentation segment(const SampleStream& stream, const SegmentationConfig& config) {
  check_config(config);
  SessionSegmentation seg;
  const auto t = stream.timestamps();
  const auto status = stream.status();

  if (stream.size() == 1) {
    const StrokeClass c = status_class(status[0]);
    seg.strokes.push_back({c, t[0], t[0], {0, 1}});
    seg.count[c] = 1;
    return seg;
  }

  seg.nominal_period = nominal_period(stream);
  const Tick threshold = gap_threshold(seg.nominal_period, config);
  std::vector<std::size_t> gap_idx;
  kernels::active().find_gaps(t, threshold, gap_idx);

  const std::size_t intervals = stream.size() - 1;
  std::size_t next_gap = 0;
  const auto interval_class = [&](std::size_t i) {
    if (next_gap < gap_idx.size() && gap_idx[next_gap] == i) return StrokeClass::InAirLong;
    return status_class(status[i]);
  };

  std::size_t run_start = 0;
  StrokeClass run_class = interval_class(0);
  const auto push = [&](Stroke s) {
    seg.time[s.cls] += s.duration();
    seg.count[s.cls] += 1;
    seg.strokes.push_back(s);
  };
  const auto close_run = [&](std::size_t end_interval) {
    Stroke s{run_class, t[run_start], t[end_interval], {}};
    if (run_class != StrokeClass::InAirLong) s.samples = {run_start, end_interval + 1};
    push(s);
  };
  // A sample whose status matches neither neighbouring interval (it sits
  // next to a gap or at an end of the stream) still marks a stroke, of
  // zero length.
  const auto lone_sample = [&](std::size_t i, std::optional<StrokeClass> before,
                               std::optional<StrokeClass> after) {
    const StrokeClass own = status_class(status[i]);
    if (before != own && after != own) push({own, t[i], t[i], {i, i + 1}});
  };

  lone_sample(0, std::nullopt, run_class);
  for (std::size_t i = 0; i < intervals; ++i) {
    const StrokeClass c = interval_class(i);
    if (c == StrokeClass::InAirLong) ++next_gap;
    // every gap is its own stroke, even when two gaps are adjacent
    if (i > 0 && (c != run_class || c == StrokeClass::InAirLong)) {
      close_run(i);
      lone_sample(i, run_class, c);
      run_start = i;
      run_class = c;
    }
  }
  close_run(intervals);
  lone_sample(intervals, run_class, std::nullopt);
  return seg;
}

}  // namespace penair
