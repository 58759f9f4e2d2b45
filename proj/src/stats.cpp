#include "penair/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "penair/error.hpp"

namespace penair::stats {
namespace {

// Indices of `values` sorted ascending, stable.
std::vector<std::size_t> order_of(std::span<const double> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });
  return idx;
}

// Twice the midrank of every value, so ranks stay integral.
std::vector<std::int64_t> doubled_midranks(std::span<const double> values,
                                           std::vector<std::size_t>* ties = nullptr) {
  const auto idx = order_of(values);
  std::vector<std::int64_t> ranks(values.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j < idx.size() && values[idx[j]] == values[idx[i]]) ++j;
    // positions i+1 .. j share (i+1+j)/2
    const auto twice = static_cast<std::int64_t>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[idx[k]] = twice;
    if (ties && j - i > 1) ties->push_back(j - i);
    i = j;
  }
  return ranks;
}

std::vector<double> pooled(std::span<const double> a, std::span<const double> b) {
  std::vector<double> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  return all;
}

void require_groups(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::EmptyGroup, "rank test needs two non-empty groups");
  for (double v : a) {
    if (std::isnan(v)) throw Error(ErrorKind::Value, "NaN in rank test input");
  }
  for (double v : b) {
    if (std::isnan(v)) throw Error(ErrorKind::Value, "NaN in rank test input");
  }
}

}  // namespace

Fraction Fraction::reduced(std::uint64_t num, std::uint64_t den) {
  const std::uint64_t g = std::gcd(num, den);
  return g == 0 ? Fraction{0, 1} : Fraction{num / g, den / g};
}

std::vector<double> midranks(std::span<const double> values) {
  const auto twice = doubled_midranks(values);
  std::vector<double> out(twice.size());
  std::transform(twice.begin(), twice.end(), out.begin(),
                 [](std::int64_t r) { return static_cast<double>(r) / 2.0; });
  return out;
}

UStat mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  require_groups(a, b);
  UStat u;
  u.n_a = a.size();
  u.n_b = b.size();
  const auto all = pooled(a, b);
  const auto ranks = doubled_midranks(all, &u.tie_profile);

  std::int64_t twice_rank_sum_a = 0;
  for (std::size_t i = 0; i < u.n_a; ++i) twice_rank_sum_a += ranks[i];
  const auto na = static_cast<std::int64_t>(u.n_a);
  const auto nb = static_cast<std::int64_t>(u.n_b);
  const std::int64_t twice_u_a = twice_rank_sum_a - na * (na + 1);
  const std::int64_t twice_u_b = 2 * na * nb - twice_u_a;
  u.u_a = static_cast<double>(twice_u_a) / 2.0;
  u.u_b = static_cast<double>(twice_u_b) / 2.0;
  return u;
}

Fraction exact_p(std::span<const double> a, std::span<const double> b, std::size_t exact_limit) {
  require_groups(a, b);
  const std::size_t n = a.size() + b.size();
  if (exact_limit > kMaxExactLimit) {
    throw Error(ErrorKind::Value, "exact limit above " + std::to_string(kMaxExactLimit));
  }
  if (n > exact_limit) {
    throw Error(ErrorKind::Size, "pooled size " + std::to_string(n) + " exceeds exact limit " +
                                     std::to_string(exact_limit));
  }

  const auto all = pooled(a, b);
  const auto ranks = doubled_midranks(all);
  const std::size_t na = a.size();
  const auto nai = static_cast<std::int64_t>(na);
  const auto nbi = static_cast<std::int64_t>(b.size());

  std::int64_t observed_sum = 0;
  for (std::size_t i = 0; i < na; ++i) observed_sum += ranks[i];
  const std::int64_t offset = nai * (nai + 1) + nai * nbi;  // 2U - n_a n_b = sum - offset
  const std::int64_t observed_dev = std::llabs(observed_sum - offset);

  // ways[k][s]: number of k-subsets of the items seen so far whose doubled
  // ranks sum to s. Walking every item once counts each of the C(n, n_a)
  // assignments exactly once, ties included.
  const auto max_sum = static_cast<std::size_t>(n * (n + 1));
  std::vector<std::vector<std::uint64_t>> ways(na + 1, std::vector<std::uint64_t>(max_sum + 1, 0));
  ways[0][0] = 1;
  std::size_t reach = 0;
  for (std::size_t item = 0; item < n; ++item) {
    const auto r = static_cast<std::size_t>(ranks[item]);
    reach += r;
    for (std::size_t k = std::min(na, item + 1); k >= 1; --k) {
      auto& dst = ways[k];
      const auto& src = ways[k - 1];
      for (std::size_t s = std::min(reach, max_sum); s >= r; --s) {
        dst[s] += src[s - r];
        if (s == r) break;
      }
    }
  }

  std::uint64_t extreme = 0;
  std::uint64_t total = 0;
  for (std::size_t s = 0; s <= max_sum; ++s) {
    const std::uint64_t w = ways[na][s];
    if (w == 0) continue;
    total += w;
    if (std::llabs(static_cast<std::int64_t>(s) - offset) >= observed_dev) extreme += w;
  }
  return Fraction::reduced(extreme, total);
}

double approx_p(const UStat& u) {
  if (u.n_a == 0 || u.n_b == 0) throw Error(ErrorKind::EmptyGroup, "rank test needs two non-empty groups");
  const double na = static_cast<double>(u.n_a);
  const double nb = static_cast<double>(u.n_b);
  const double n = na + nb;
  double tie_term = 0;
  for (std::size_t t : u.tie_profile) {
    const double td = static_cast<double>(t);
    tie_term += td * td * td - td;
  }
  const double variance = n > 1 ? (na * nb / 12.0) * ((n + 1.0) - tie_term / (n * (n - 1.0))) : 0.0;
  if (!(variance > 1e-12)) return 1.0;

  const double mu = na * nb / 2.0;
  const double z = std::max(0.0, (std::abs(u.u_a - mu) - 0.5) / std::sqrt(variance));
  return std::clamp(std::erfc(z / std::sqrt(2.0)), 0.0, 1.0);
}

const char* to_string(Method m) noexcept {
  return m == Method::Exact ? "exact" : "normal";
}

TestResult compare_cohorts(std::span<const FeatureVector> cohort_a,
                           std::span<const FeatureVector> cohort_b, const std::string& task,
                           Feature feature, const CompareConfig& config) {
  const auto extract = [&](std::span<const FeatureVector> cohort) {
    std::vector<double> values;
    for (const auto& v : cohort) {
      if (!v.anomalous && v.source.task == task) values.push_back(v.get(feature));
    }
    return values;
  };
  const auto a = extract(cohort_a);
  const auto b = extract(cohort_b);
  if (a.empty() || b.empty()) {
    throw Error(ErrorKind::EmptyCohort,
                "task '" + task + "': a cohort has no usable files after anomaly exclusion");
  }

  TestResult r;
  r.task = task;
  r.feature = feature;
  r.u = mann_whitney_u(a, b);
  if (a.size() + b.size() <= config.exact_limit) {
    r.method = Method::Exact;
    r.p = exact_p(a, b, config.exact_limit).value();
  } else {
    r.method = Method::NormalApprox;
    r.p = approx_p(r.u);
  }
  r.significant = r.p < kSignificance;
  return r;
}

}  // namespace penair::stats
