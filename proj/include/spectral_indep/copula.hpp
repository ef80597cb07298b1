#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spectral_indep/basis.hpp"
#include "spectral_indep/errors.hpp"

namespace spectral_indep {

enum class DomainTag { Raw, Copula, Native };

/// N paired observations, stored column-wise.
struct SampleSet {
  std::vector<double> x;
  std::vector<double> y;
  DomainTag tag = DomainTag::Raw;

  SampleSet() = default;
  SampleSet(std::vector<double> xs, std::vector<double> ys, DomainTag t = DomainTag::Raw)
      : x(std::move(xs)), y(std::move(ys)), tag(t) {
    if (x.size() != y.size()) throw DataError("x and y columns differ in length");
  }

  std::size_t size() const { return x.size(); }
  bool empty() const { return x.empty(); }
};

/// Minimum sample count accepted by the statistical operations.
inline constexpr std::size_t kMinStatisticalSamples = 8;

/// 0-based ranks from a stable sort; ties keep input order.
inline std::vector<std::uint32_t> stable_ranks(std::span<const double> values) {
  std::vector<std::uint32_t> order(values.size());
  std::iota(order.begin(), order.end(), 0U);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return values[a] < values[b]; });
  std::vector<std::uint32_t> rank(values.size());
  for (std::uint32_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  return rank;
}

struct RankPairs {
  std::vector<std::uint32_t> x;
  std::vector<std::uint32_t> y;
};

inline void check_finite(const SampleSet& samples) {
  for (std::size_t n = 0; n < samples.size(); ++n)
    if (!std::isfinite(samples.x[n]) || !std::isfinite(samples.y[n]))
      throw DataError("non-finite value in row " + std::to_string(n + 1));
}

inline RankPairs copula_ranks(const SampleSet& samples) {
  if (samples.empty()) throw DataError("empty sample set");
  check_finite(samples);
  return {stable_ranks(samples.x), stable_ranks(samples.y)};
}

/// Midpoint grid value of 0-based rank r among n.
inline double midpoint(std::uint32_t r, std::size_t n) {
  return (static_cast<double>(r) + 0.5) / static_cast<double>(n);
}

/// x_n -> (rank_x(n) - 0.5)/N with 1-based ranks, likewise y.
inline SampleSet copula_transform(const SampleSet& samples) {
  const RankPairs ranks = copula_ranks(samples);
  const std::size_t n = samples.size();
  SampleSet out;
  out.x.resize(n);
  out.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.x[i] = midpoint(ranks.x[i], n);
    out.y[i] = midpoint(ranks.y[i], n);
  }
  out.tag = DomainTag::Copula;
  return out;
}

/// Copula coordinate t in [0,1] to the basis' native domain.
inline double to_native(const BasisSpec& spec, double t) {
  const Domain d = spec.domain();
  return d.lo + d.length() * t;
}

inline double from_native(const BasisSpec& spec, double u) {
  const Domain d = spec.domain();
  return (u - d.lo) / d.length();
}

inline SampleSet domain_map(const SampleSet& copula, const BasisSpec& spec) {
  if (copula.tag != DomainTag::Copula) throw DataError("domain_map expects copula data");
  SampleSet out;
  out.x.reserve(copula.size());
  out.y.reserve(copula.size());
  for (std::size_t i = 0; i < copula.size(); ++i) {
    out.x.push_back(to_native(spec, copula.x[i]));
    out.y.push_back(to_native(spec, copula.y[i]));
  }
  out.tag = DomainTag::Native;
  return out;
}

/// Piecewise-linear empirical quantile function through the points
/// ((r - 0.5)/N, x_(r)). Constant beyond the first and last midpoints.
class QuantileMap {
 public:
  QuantileMap() = default;
  explicit QuantileMap(std::span<const double> values) : sorted_(values.begin(), values.end()) {
    if (sorted_.empty()) throw DataError("quantile map needs at least one value");
    std::sort(sorted_.begin(), sorted_.end());
  }

  double operator()(double t) const {
    const std::size_t n = sorted_.size();
    const double pos = t * static_cast<double>(n) - 0.5;
    if (pos <= 0.0) return sorted_.front();
    if (pos >= static_cast<double>(n - 1)) return sorted_.back();
    const auto i = static_cast<std::size_t>(pos);
    const double w = pos - static_cast<double>(i);
    return (1.0 - w) * sorted_[i] + w * sorted_[i + 1];
  }

 private:
  std::vector<double> sorted_;
};

}  // namespace spectral_indep
