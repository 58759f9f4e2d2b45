#pragma once

// Inner scan loops over timestamp and status columns. Each kernel has a
// scalar reference implementation and, on x86-64 builds, an AVX2 variant.
// The active set is picked once at first use from CPUID; setting the
// environment variable PENAIR_FORCE_SCALAR=1 pins the scalar set.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace penair::kernels {

struct KernelSet {
  std::string_view name;

  /// out[i] = t[i+1] - t[i]; out.size() must be t.size() - 1.
  void (*adjacent_differences)(std::span<const std::int64_t> t, std::span<std::int64_t> out);

  /// Appends every i with t[i+1] - t[i] > threshold to `out`, ascending.
  void (*find_gaps)(std::span<const std::int64_t> t, std::int64_t threshold,
                    std::vector<std::size_t>& out);

  /// Number of i with status[i] != status[i+1].
  std::size_t (*count_transitions)(std::span<const std::uint8_t> status);
};

const KernelSet& scalar();

/// nullptr when the AVX2 variants were not compiled in or the CPU lacks AVX2.
const KernelSet* avx2();

const KernelSet& active();

}  // namespace penair::kernels
