#include "penair/kernels.hpp"

namespace penair::kernels {
namespace {

void adjacent_differences_scalar(std::span<const std::int64_t> t, std::span<std::int64_t> out) {
  for (std::size_t i = 0; i + 1 < t.size(); ++i) out[i] = t[i + 1] - t[i];
}

void find_gaps_scalar(std::span<const std::int64_t> t, std::int64_t threshold,
                      std::vector<std::size_t>& out) {
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (t[i + 1] - t[i] > threshold) out.push_back(i);
  }
}

std::size_t count_transitions_scalar(std::span<const std::uint8_t> status) {
  std::size_t n = 0;
  for (std::size_t i = 0; i + 1 < status.size(); ++i) n += status[i] != status[i + 1];
  return n;
}

}  // namespace

const KernelSet& scalar() {
  static const KernelSet set{"scalar", adjacent_differences_scalar, find_gaps_scalar,
                             count_transitions_scalar};
  return set;
}

}  // namespace penair::kernels
