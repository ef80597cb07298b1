#pragma once

// Max-FiT / SVD-FiT / nonstandard-max independence statistics, permutation
// nulls and the copula-based test pipeline.
//
// After the copula transform both coordinates sit on the midpoint grid
// {(r - 0.5)/N}, so a data set is fully described by its pairing of x-ranks
// with y-ranks. The null distribution therefore depends only on
// (N, basis, K, statistic) and is built from random re-pairings of the grid.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spectral_indep/basis.hpp"
#include "spectral_indep/copula.hpp"
#include "spectral_indep/errors.hpp"
#include "spectral_indep/numerics.hpp"
#include "spectral_indep/rng.hpp"
#include "spectral_indep/transform.hpp"

namespace spectral_indep {

enum class StatisticKind { MaxCoeff, TopSingularValue, NonstandardMax };

inline std::string_view to_string(StatisticKind s) {
  switch (s) {
    case StatisticKind::MaxCoeff: return "max";
    case StatisticKind::TopSingularValue: return "svd";
    case StatisticKind::NonstandardMax: return "nsmax";
  }
  return "?";
}

inline std::optional<StatisticKind> parse_statistic(std::string_view name) {
  if (name == "max" || name == "max-fit") return StatisticKind::MaxCoeff;
  if (name == "svd" || name == "svd-fit") return StatisticKind::TopSingularValue;
  if (name == "nsmax" || name == "nonstandard-max") return StatisticKind::NonstandardMax;
  return std::nullopt;
}

inline void validate_statistic(BasisKind basis, StatisticKind stat) {
  const bool ns = basis == BasisKind::NonstandardHaar2D;
  if (stat == StatisticKind::NonstandardMax && !ns)
    throw ConfigError("the nonstandard max statistic needs the nonstandard Haar basis");
  if (stat != StatisticKind::NonstandardMax && ns)
    throw ConfigError("the nonstandard Haar basis supports only the nonstandard max statistic");
}

/// Max-FiT: largest |c-hat| over the interaction block (k1, k2 >= 1).
inline double max_fit_statistic(const Matrix& interaction) {
  if (interaction.empty()) throw ConfigError("K = 0 leaves no interaction block");
  return interaction.max_abs();
}

inline double max_fit_statistic(const CoefficientMatrix& c) {
  if (c.spec.order() == 0) throw ConfigError("K = 0 leaves no interaction block");
  return max_fit_statistic(c.interaction());
}

/// SVD-FiT: top singular value of the interaction block.
inline double svd_fit_statistic(const Matrix& interaction) {
  if (interaction.empty()) throw ConfigError("K = 0 leaves no interaction block");
  return spectral_norm(interaction);
}

inline double svd_fit_statistic(const CoefficientMatrix& c) {
  if (c.spec.order() == 0) throw ConfigError("K = 0 leaves no interaction block");
  return svd_fit_statistic(c.interaction());
}

/// Largest |d_k| over every non-SS nonstandard Haar function.
inline double nonstandard_max_statistic(const NSCoefficients& d) {
  if (d.size() <= 1) throw ConfigError("no nonstandard Haar wavelet coefficients");
  double z = 0.0;
  for (std::size_t i = 1; i < d.size(); ++i) z = std::max(z, std::abs(d.value[i]));
  return z;
}

/// Largest admissible truncation with K <= floor(sqrt(N)/2); dyadic families
/// round down to 2^L - 1.
inline std::size_t auto_order(std::size_t n, BasisKind kind) {
  const auto kmax = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n)) / 2.0));
  const std::size_t k = std::max<std::size_t>(kmax, 1);
  if (!is_dyadic(kind)) return k;
  std::size_t p = 1;
  while (2 * p <= k + 1) p *= 2;
  return p - 1;
}

/// Statistic evaluator for copula data given as rank pairings. Legendre and
/// Fourier use tabulated basis values on the midpoint grid; Walsh and Haar bin
/// into dyadic cells and run the fast transform; the nonstandard basis runs the
/// quadtree. Sums are taken in x-rank order, so the result depends only on the
/// pairing, never on sample order.
class RankStatistic {
 public:
  RankStatistic(std::size_t n, const BasisSpec& spec, StatisticKind stat)
      : n_(n), spec_(spec), stat_(stat) {
    validate_statistic(spec.kind(), stat);
    if (n < 1) throw DataError("empty sample set");
    if (spec.tensor() && spec.order() == 0) throw ConfigError("K = 0 leaves no interaction block");
    const std::size_t k = spec.size();
    if (spec.tensor() && !is_dyadic(spec.kind())) {
      table_.assign(n * k, 0.0);
      for (std::size_t r = 0; r < n; ++r)
        basis_eval_into(spec, to_native(spec, midpoint(static_cast<std::uint32_t>(r), n)),
                        std::span<double>(table_.data() + r * k, k));
    } else {
      const std::size_t cells = std::size_t{1} << spec.level();
      cell_.resize(n);
      for (std::size_t r = 0; r < n; ++r)
        cell_[r] = static_cast<std::uint32_t>(detail::dyadic_cell(midpoint(static_cast<std::uint32_t>(r), n), cells));
    }
  }

  const BasisSpec& spec() const { return spec_; }
  StatisticKind statistic() const { return stat_; }
  std::size_t size() const { return n_; }

  /// Full (K+1)x(K+1) coefficient matrix for y-rank partner[r] of x-rank r.
  Matrix coefficients(std::span<const std::uint32_t> partner) const {
    const std::size_t k = spec_.size();
    const double inv_n = 1.0 / static_cast<double>(n_);
    if (!table_.empty()) {
      Matrix c(k, k);
      for (std::size_t r = 0; r < n_; ++r) {
        const double* vx = table_.data() + r * k;
        const double* vy = table_.data() + static_cast<std::size_t>(partner[r]) * k;
        for (std::size_t a = 0; a < k; ++a) {
          auto row = c.row(a);
          for (std::size_t b = 0; b < k; ++b) row[b] += vx[a] * vy[b];
        }
      }
      for (double& v : c.data()) v *= inv_n;
      return c;
    }
    Matrix hist(k, k);
    for (std::size_t r = 0; r < n_; ++r) hist(cell_[r], cell_[partner[r]]) += 1.0;
    Matrix c = dyadic_transform_2d(spec_, std::move(hist));
    for (double& v : c.data()) v *= inv_n;
    return c;
  }

  double evaluate(std::span<const std::uint32_t> partner) const {
    if (partner.size() != n_) throw DataError("rank pairing has the wrong length");
    if (stat_ == StatisticKind::NonstandardMax) {
      SampleSet grid;
      grid.x.resize(n_);
      grid.y.resize(n_);
      for (std::size_t r = 0; r < n_; ++r) {
        grid.x[r] = midpoint(static_cast<std::uint32_t>(r), n_);
        grid.y[r] = midpoint(partner[r], n_);
      }
      return nonstandard_max_statistic(nonstandard_coeffs(grid, spec_.level()));
    }
    const Matrix block = coefficients(partner).block(1, 1, spec_.order(), spec_.order());
    return stat_ == StatisticKind::MaxCoeff ? max_fit_statistic(block) : svd_fit_statistic(block);
  }

  /// Statistic of arbitrary paired ranks (sample order irrelevant).
  double evaluate(const RankPairs& ranks) const { return evaluate(partner_of(ranks)); }

  static std::vector<std::uint32_t> partner_of(const RankPairs& ranks) {
    std::vector<std::uint32_t> partner(ranks.x.size());
    for (std::size_t i = 0; i < ranks.x.size(); ++i) partner[ranks.x[i]] = ranks.y[i];
    return partner;
  }

 private:
  std::size_t n_;
  BasisSpec spec_;
  StatisticKind stat_;
  std::vector<double> table_;
  std::vector<std::uint32_t> cell_;
};

struct NullKey {
  std::size_t n = 0;
  BasisKind basis = BasisKind::Legendre;
  std::size_t order = 0;
  StatisticKind statistic = StatisticKind::MaxCoeff;
  std::size_t permutations = 0;
  std::uint64_t seed = 0;

  BasisSpec spec() const { return BasisSpec::make(basis, order); }
  friend bool operator==(const NullKey&, const NullKey&) = default;
};

/// Sorted statistic values from P random pairings.
struct NullModel {
  NullKey key;
  std::vector<double> samples;  // ascending
};

/// Minimum permutation count (resolves alpha = 0.05).
inline constexpr std::size_t kMinPermutations = 19;

inline NullModel permutation_null(const NullKey& key) {
  if (key.permutations < kMinPermutations)
    throw ConfigError("at least " + std::to_string(kMinPermutations) + " permutations are required");
  if (key.n < kMinStatisticalSamples) throw ConfigError("null distribution needs N >= 8");
  const RankStatistic engine(key.n, key.spec(), key.statistic);
  Rng rng(key.seed);
  std::vector<std::uint32_t> partner(key.n);
  NullModel model{key, {}};
  model.samples.reserve(key.permutations);
  for (std::size_t p = 0; p < key.permutations; ++p) {
    std::iota(partner.begin(), partner.end(), 0U);
    rng.shuffle(std::span<std::uint32_t>(partner));
    model.samples.push_back(engine.evaluate(partner));
  }
  std::sort(model.samples.begin(), model.samples.end());
  return model;
}

inline NullModel permutation_null(std::size_t n, const BasisSpec& spec, StatisticKind stat,
                                  std::size_t permutations, std::uint64_t seed) {
  return permutation_null(NullKey{n, spec.kind(), spec.order(), stat, permutations, seed});
}

/// (1 + #{null >= z}) / (P + 1).
inline double p_value(double z, const NullModel& null) {
  const auto first = std::lower_bound(null.samples.begin(), null.samples.end(), z);
  const auto at_least = static_cast<double>(null.samples.end() - first);
  return (1.0 + at_least) / (static_cast<double>(null.samples.size()) + 1.0);
}

struct TestConfig {
  BasisKind basis = BasisKind::Legendre;
  std::optional<std::size_t> order;  // nullopt = automatic
  StatisticKind statistic = StatisticKind::TopSingularValue;
  std::size_t permutations = 200;
  std::uint64_t seed = 0;  // null seed
};

struct TestReport {
  double z = 0.0;
  double p_value = 1.0;
  BasisKind basis = BasisKind::Legendre;
  std::size_t order = 0;
  std::size_t n = 0;
  StatisticKind statistic = StatisticKind::MaxCoeff;
  std::size_t permutations = 0;
};

/// Resolves the basis truncation and the null key for N samples.
inline NullKey resolve_null_key(std::size_t n, const TestConfig& config) {
  validate_statistic(config.basis, config.statistic);
  const std::size_t k = config.order ? *config.order : auto_order(n, config.basis);
  const BasisSpec spec = BasisSpec::make(config.basis, k);  // validates dyadic sizes
  if (spec.order() == 0) throw ConfigError("K must be at least 1");
  if (spec.order() + 1 > n) throw ConfigError("truncation order exceeds the sample count");
  return NullKey{n, config.basis, spec.order(), config.statistic, config.permutations, config.seed};
}

/// Test statistic of raw samples through the copula pipeline.
inline double test_statistic(const SampleSet& samples, const NullKey& key) {
  const RankStatistic engine(samples.size(), key.spec(), key.statistic);
  return engine.evaluate(copula_ranks(samples));
}

/// Copula transform, statistic, and p-value against `null`.
inline TestReport independence_test(const SampleSet& samples, const NullModel& null) {
  if (samples.size() < kMinStatisticalSamples) throw DataError("independence test needs N >= 8");
  if (null.key.n != samples.size()) throw ConfigError("null model was built for a different N");
  TestReport report;
  report.z = test_statistic(samples, null.key);
  report.p_value = p_value(report.z, null);
  report.basis = null.key.basis;
  report.order = null.key.order;
  report.n = samples.size();
  report.statistic = null.key.statistic;
  report.permutations = null.samples.size();
  return report;
}

/// Convenience overload that builds the null in memory.
inline TestReport independence_test(const SampleSet& samples, const TestConfig& config) {
  if (samples.size() < kMinStatisticalSamples) throw DataError("independence test needs N >= 8");
  return independence_test(samples, permutation_null(resolve_null_key(samples.size(), config)));
}

}  // namespace spectral_indep
