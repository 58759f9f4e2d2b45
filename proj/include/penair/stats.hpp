#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "penair/features.hpp"

namespace penair::stats {

/// Non-negative fraction kept in lowest terms, so equality is value
/// equality.
struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Fraction reduced(std::uint64_t num, std::uint64_t den);
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Average ranks (1-based) with ties sharing the mean of their positions.
std::vector<double> midranks(std::span<const double> values);

struct UStat {
  double u_a = 0;
  double u_b = 0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  /// Sizes of the tie groups (>= 2) in the pooled sample, ascending by value.
  std::vector<std::size_t> tie_profile;

  /// 2 * U_A; always an integer because midranks are multiples of 1/2.
  std::int64_t twice_u_a() const noexcept { return static_cast<std::int64_t>(2.0 * u_a); }
};

UStat mann_whitney_u(std::span<const double> a, std::span<const double> b);

inline constexpr std::size_t kDefaultExactLimit = 20;
/// Largest pooled size whose assignment counts fit in 64 bits.
inline constexpr std::size_t kMaxExactLimit = 60;

/// Two-sided exact p: the share of all C(n_a + n_b, n_a) splits of the
/// pooled values whose |U - n_a n_b / 2| reaches the observed deviation.
/// Throws Size when n_a + n_b > exact_limit.
Fraction exact_p(std::span<const double> a, std::span<const double> b,
                 std::size_t exact_limit = kDefaultExactLimit);

/// Normal approximation with tie-corrected variance and a 0.5 continuity
/// correction. Returns 1 when every pooled value is equal.
double approx_p(const UStat& u);

enum class Method { Exact, NormalApprox };

const char* to_string(Method m) noexcept;

inline constexpr double kSignificance = 0.05;

struct TestResult {
  std::string task;
  Feature feature = Feature::TS;
  UStat u;
  double p = 1.0;
  Method method = Method::NormalApprox;
  bool significant = false;
};

struct CompareConfig {
  std::size_t exact_limit = kDefaultExactLimit;
};

/// Rank test of one feature between two cohorts for one task. Vectors from
/// other tasks and anomalous files are skipped.
TestResult compare_cohorts(std::span<const FeatureVector> cohort_a,
                           std::span<const FeatureVector> cohort_b, const std::string& task,
                           Feature feature, const CompareConfig& config = {});

}  // namespace penair::stats
