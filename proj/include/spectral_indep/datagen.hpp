#pragma once

// Seeded generators for the manufactured data sets.
//
// Noise conventions, by family (l = GenConfig::noise):
//   dependence-test family (linear ... local):  eps ~ N(0, sigma^2), sigma = l/40
//   bump family (bump-*):                        eps ~ l * N(0, 1)
//   curve family (circle, lemniscate, ...):      eps ~ N(0, (l/40)^2)
// Draws happen in a fixed order per sample, so (id, config) fixes the output.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "spectral_indep/copula.hpp"
#include "spectral_indep/errors.hpp"
#include "spectral_indep/rng.hpp"

namespace spectral_indep {

enum class Generator {
  Linear,
  Parabolic,
  Circular,
  Sine,
  Checkerboard,
  Local,
  IndependentUniform,
  BumpLinear,
  BumpParabolic,
  BumpSine,
  BumpCubic,
  CircleHG,
  LemniscateHG,
  HyperbolaHG,
  CrossHG,
};

enum class NoiseSide { Y, X };

struct GeneratorId {
  Generator tag = Generator::Linear;
  NoiseSide side = NoiseSide::Y;  // curve family only; the circle perturbs both
};

inline constexpr std::array<std::pair<Generator, std::string_view>, 15> kGeneratorNames{{
    {Generator::Linear, "linear"},
    {Generator::Parabolic, "parabolic"},
    {Generator::Circular, "circular"},
    {Generator::Sine, "sine"},
    {Generator::Checkerboard, "checkerboard"},
    {Generator::Local, "local"},
    {Generator::IndependentUniform, "independent"},
    {Generator::BumpLinear, "bump-linear"},
    {Generator::BumpParabolic, "bump-parabolic"},
    {Generator::BumpSine, "bump-sine"},
    {Generator::BumpCubic, "bump-cubic"},
    {Generator::CircleHG, "circle"},
    {Generator::LemniscateHG, "lemniscate"},
    {Generator::HyperbolaHG, "hyperbola"},
    {Generator::CrossHG, "cross"},
}};

inline std::string_view to_string(Generator g) {
  for (const auto& [tag, name] : kGeneratorNames)
    if (tag == g) return name;
  return "?";
}

inline std::optional<Generator> parse_generator(std::string_view name) {
  for (const auto& [tag, n] : kGeneratorNames)
    if (n == name) return tag;
  return std::nullopt;
}

/// The six dependent examples used for power curves.
inline constexpr std::array<Generator, 6> kDependenceExamples{
    Generator::Linear, Generator::Parabolic, Generator::Circular,
    Generator::Sine,   Generator::Checkerboard, Generator::Local};

struct GenConfig {
  std::size_t n = 256;
  double noise = 0.0;  // l
  std::uint64_t seed = 0;
};

inline double dependence_sigma(double l) { return l / 40.0; }
inline double curve_sigma(double l) { return l / 40.0; }

// Angle ranges of the hyperbola branches x^2 - y^2 = 1.
inline constexpr double kHyperbolaA0 = -0.69, kHyperbolaA1 = 0.68;
inline constexpr double kHyperbolaB0 = 2.46, kHyperbolaB1 = 3.83;

inline SampleSet generate(GeneratorId id, const GenConfig& config) {
  if (config.n < 1) throw ConfigError("generator needs N >= 1");
  if (!(config.noise >= 0.0) || !std::isfinite(config.noise)) throw ConfigError("noise level must be >= 0");
  Rng rng(config.seed);
  const double l = config.noise;
  const double sigma = dependence_sigma(l);
  const double curve = curve_sigma(l);
  const bool noise_x = id.side == NoiseSide::X;
  SampleSet s;
  s.x.resize(config.n);
  s.y.resize(config.n);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < config.n; ++i) {
    double x = 0.0, y = 0.0;
    switch (id.tag) {
      case Generator::Linear:
        x = rng.uniform();
        y = 2.0 * x + 10.0 * sigma * rng.normal();
        break;
      case Generator::Parabolic:
        x = rng.uniform();
        y = (x - 0.5) * (x - 0.5) + 1.5 * sigma * rng.normal();
        break;
      case Generator::Circular: {
        const double theta = two_pi * rng.uniform();
        x = 5.0 * std::cos(theta) + 40.0 * sigma * rng.normal();
        y = 5.0 * std::sin(theta) + 40.0 * sigma * rng.normal();
        break;
      }
      case Generator::Sine:
        x = rng.uniform();
        y = std::sin(two_pi * x) + 15.0 * sigma * rng.normal();
        break;
      case Generator::Checkerboard: {
        const auto w = 1 + static_cast<int>(rng.below(3));
        x = w + sigma * rng.normal();
        if (w == 2)
          y = 2.0 + 2.0 * static_cast<double>(rng.below(2)) + sigma * rng.normal();
        else
          y = 1.0 + 2.0 * static_cast<double>(rng.below(3)) + sigma * rng.normal();
        break;
      }
      case Generator::Local: {
        const double g1 = 0.5 * rng.normal();
        const double g2 = 0.5 * rng.normal();
        const double eps = sigma * rng.normal();
        x = g1;
        y = (g1 >= 0.0 && g1 <= 1.0 && g2 >= 0.0 && g2 <= 1.0) ? x + eps : g2;
        break;
      }
      case Generator::IndependentUniform:
        x = rng.uniform();
        y = rng.uniform();
        break;
      case Generator::BumpLinear:
      case Generator::BumpParabolic:
      case Generator::BumpSine:
      case Generator::BumpCubic: {
        x = rng.uniform(-1.0, 1.0);
        const double eps = l * rng.normal();
        const double f = id.tag == Generator::BumpLinear      ? x
                         : id.tag == Generator::BumpParabolic ? x * x
                         : id.tag == Generator::BumpSine      ? std::sin(x)
                                                              : x * x * x;
        y = f + eps;
        break;
      }
      case Generator::CircleHG: {
        const double theta = two_pi * rng.uniform();
        x = 2.0 * std::sin(theta) + curve * rng.normal();
        y = 2.0 * std::cos(theta) + curve * rng.normal();
        break;
      }
      case Generator::LemniscateHG: {
        const double theta = two_pi * rng.uniform();
        const double eps = curve * rng.normal();
        x = std::sin(theta) + (noise_x ? eps : 0.0);
        y = std::sin(2.0 * theta) + (noise_x ? 0.0 : eps);
        break;
      }
      case Generator::HyperbolaHG: {
        const double len_a = kHyperbolaA1 - kHyperbolaA0;
        const double len_b = kHyperbolaB1 - kHyperbolaB0;
        const double u = rng.uniform() * (len_a + len_b);
        const double theta = u < len_a ? kHyperbolaA0 + u : kHyperbolaB0 + (u - len_a);
        const double r = 1.0 / std::sqrt(std::cos(2.0 * theta));
        const double eps = curve * rng.normal();
        x = std::cos(theta) * r + (noise_x ? eps : 0.0);
        y = std::sin(theta) * r + (noise_x ? 0.0 : eps);
        break;
      }
      case Generator::CrossHG: {
        const double base = rng.uniform(-1.0, 1.0);
        const double sign = rng.below(2) == 0 ? 1.0 : -1.0;
        const double eps = curve * rng.normal();
        if (noise_x) {
          y = base;
          x = sign * y + eps;
        } else {
          x = base;
          y = sign * x + eps;
        }
        break;
      }
    }
    s.x[i] = x;
    s.y[i] = y;
  }
  return s;
}

inline SampleSet generate(Generator tag, const GenConfig& config) { return generate(GeneratorId{tag}, config); }

}  // namespace spectral_indep
