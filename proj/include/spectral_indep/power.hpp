#pragma once

// Monte Carlo power of the independence test on the generated examples.
//
// Trial t of every noise level draws its data with seed derive_seed(seed, t),
// so all levels share the same underlying uniforms. The null comes from the
// cache once per configuration and is shared by all trials.

#include <cstdint>
#include <span>
#include <vector>

#include "spectral_indep/datagen.hpp"
#include "spectral_indep/errors.hpp"
#include "spectral_indep/independence.hpp"
#include "spectral_indep/null_cache.hpp"
#include "spectral_indep/parallel.hpp"
#include "spectral_indep/rng.hpp"

namespace spectral_indep {

inline constexpr std::size_t kMinTrials = 50;

struct PowerOptions {
  std::size_t n = 256;
  std::size_t trials = 1000;
  double alpha = 0.05;
  std::uint64_t seed = 0;  // data seed; the null seed is TestConfig::seed
};

struct PowerCurve {
  GeneratorId example;
  std::vector<double> noise;
  std::vector<double> rate;  // rejections / trials
  std::vector<std::size_t> rejections;
  std::size_t trials = 0;
  double alpha = 0.05;
};

inline PowerCurve power_experiment(GeneratorId example, std::span<const double> noise_grid, const TestConfig& config,
                                   const PowerOptions& options, NullCache& cache) {
  if (options.trials < kMinTrials) throw ConfigError("power experiments need at least 50 trials");
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (noise_grid.empty()) throw ConfigError("empty noise grid");
  const NullModel& null = cache.get(resolve_null_key(options.n, config));
  PowerCurve curve{example, {noise_grid.begin(), noise_grid.end()}, {}, {}, options.trials, options.alpha};
  for (double l : noise_grid) {
    std::vector<char> reject(options.trials, 0);
    parallel_for(options.trials, [&](std::size_t t) {
      const SampleSet data = generate(example, GenConfig{options.n, l, derive_seed(options.seed, t)});
      reject[t] = independence_test(data, null).p_value <= options.alpha;
    });
    std::size_t count = 0;
    for (char r : reject) count += r != 0;
    curve.rejections.push_back(count);
    curve.rate.push_back(static_cast<double>(count) / static_cast<double>(options.trials));
  }
  return curve;
}

inline PowerCurve power_experiment(GeneratorId example, std::span<const double> noise_grid, const TestConfig& config,
                                   const PowerOptions& options) {
  NullCache cache;
  return power_experiment(example, noise_grid, config, options, cache);
}

}  // namespace spectral_indep
