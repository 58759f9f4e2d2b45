#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "penair/sample.hpp"

namespace penair {

enum class StrokeClass : std::uint8_t { OnSurface = 0, InAirShort = 1, InAirLong = 2 };

inline constexpr std::array<StrokeClass, 3> kStrokeClasses = {
    StrokeClass::OnSurface, StrokeClass::InAirShort, StrokeClass::InAirLong};

std::string_view to_string(StrokeClass c) noexcept;

/// Per-class values indexed by StrokeClass.
template <typename T>
struct PerClass {
  std::array<T, 3> values{};

  T& operator[](StrokeClass c) { return values[static_cast<std::size_t>(c)]; }
  const T& operator[](StrokeClass c) const { return values[static_cast<std::size_t>(c)]; }

  friend bool operator==(const PerClass&, const PerClass&) = default;
};

/// Half-open index interval into a SampleStream.
struct SampleRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  bool empty() const noexcept { return begin == end; }

  friend bool operator==(const SampleRange&, const SampleRange&) = default;
};

/// A stroke covers [start_t, end_t]. For tracked classes the sample range
/// holds every sample whose timestamp lies in that closed interval, so
/// neighbouring strokes share their boundary sample. InAirLong strokes have
/// no samples.
struct Stroke {
  StrokeClass cls = StrokeClass::OnSurface;
  Tick start_t = 0;
  Tick end_t = 0;
  SampleRange samples;

  Tick duration() const noexcept { return end_t - start_t; }

  friend bool operator==(const Stroke&, const Stroke&) = default;
};

struct SegmentationConfig {
  double gap_factor = 3.0;
  /// Lower bound on the gap threshold; nominal period + 1 when unset.
  std::optional<Tick> min_gap_ticks;
};

struct Gap {
  std::size_t index = 0;  // interval between sample index and index + 1
  Tick ticks = 0;

  friend bool operator==(const Gap&, const Gap&) = default;
};

struct SessionSegmentation {
  std::vector<Stroke> strokes;
  Tick nominal_period = 0;  // 0 for single-sample streams
  PerClass<Tick> time;
  PerClass<std::size_t> count;
};

/// Modal consecutive timestamp difference; ties go to the smaller value.
/// Throws InsufficientData for fewer than two samples.
Tick nominal_period(const SampleStream& stream);

/// The tick count a difference has to exceed to count as a gap:
/// max(floor(gap_factor * period), min_gap_ticks or period + 1).
Tick gap_threshold(Tick period, const SegmentationConfig& config);

std::vector<Gap> detect_gaps(const SampleStream& stream, const SegmentationConfig& config = {});

/// Every interval [t_i, t_{i+1}] goes to InAirLong when it is a gap and to
/// the status class of sample i otherwise; maximal runs of one class become
/// strokes. A single-sample stream yields one zero-length stroke.
SessionSegmentation segment(const SampleStream& stream, const SegmentationConfig& config = {});

}  // namespace penair
