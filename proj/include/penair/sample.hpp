#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace penair {

using Tick = std::int64_t;

enum class PenStatus : std::uint8_t { InAir = 0, OnSurface = 1 };

struct Sample {
  std::int64_t x = 0;
  std::int64_t y = 0;
  Tick t = 0;
  PenStatus status = PenStatus::InAir;
  std::int64_t azimuth = 0;   // carried through, never interpreted
  std::int64_t altitude = 0;  // carried through, never interpreted
  std::int64_t pressure = 0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

/// One digitizer recording, stored column-wise so the scan kernels can run
/// over contiguous timestamp and status arrays.
///
/// Invariants (checked on construction): at least one sample, timestamps
/// strictly increasing, pressure non-negative.
class SampleStream {
public:
  SampleStream(std::span<const Sample> samples, std::string source_id = {});

  std::size_t size() const noexcept { return t_.size(); }
  Sample operator[](std::size_t i) const;

  std::span<const Tick> timestamps() const noexcept { return t_; }
  /// 1 = on surface, 0 = in air; same layout as PenStatus.
  std::span<const std::uint8_t> status() const noexcept { return status_; }
  std::span<const std::int64_t> xs() const noexcept { return x_; }
  std::span<const std::int64_t> ys() const noexcept { return y_; }
  std::span<const std::int64_t> pressures() const noexcept { return pressure_; }

  Tick first_t() const noexcept { return t_.front(); }
  Tick last_t() const noexcept { return t_.back(); }

  const std::string& source_id() const noexcept { return source_id_; }

  std::vector<Sample> to_samples() const;

  friend bool operator==(const SampleStream&, const SampleStream&) = default;

private:
  std::vector<std::int64_t> x_, y_;
  std::vector<Tick> t_;
  std::vector<std::uint8_t> status_;
  std::vector<std::int64_t> azimuth_, altitude_, pressure_;
  std::string source_id_;
};

}  // namespace penair
