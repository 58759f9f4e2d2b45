#include "penair/sample.hpp"

#include "penair/error.hpp"

namespace penair {

SampleStream::SampleStream(std::span<const Sample> samples, std::string source_id)
    : source_id_(std::move(source_id)) {
  if (samples.empty()) {
    throw Error(ErrorKind::EmptyInput, "sample stream needs at least one sample");
  }
  const std::size_t n = samples.size();
  x_.reserve(n);
  y_.reserve(n);
  t_.reserve(n);
  status_.reserve(n);
  azimuth_.reserve(n);
  altitude_.reserve(n);
  pressure_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Sample& s = samples[i];
    if (i > 0 && s.t <= t_.back()) {
      throw Error(ErrorKind::Order, "timestamps must be strictly increasing (sample " +
                                        std::to_string(i) + ")");
    }
    if (s.pressure < 0) {
      throw Error(ErrorKind::Value, "negative pressure at sample " + std::to_string(i));
    }
    x_.push_back(s.x);
    y_.push_back(s.y);
    t_.push_back(s.t);
    status_.push_back(static_cast<std::uint8_t>(s.status));
    azimuth_.push_back(s.azimuth);
    altitude_.push_back(s.altitude);
    pressure_.push_back(s.pressure);
  }
}

Sample SampleStream::operator[](std::size_t i) const {
  return Sample{x_[i], y_[i], t_[i], static_cast<PenStatus>(status_[i]),
                azimuth_[i], altitude_[i], pressure_[i]};
}

std::vector<Sample> SampleStream::to_samples() const {
  std::vector<Sample> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i]);
  return out;
}

}  // namespace penair
