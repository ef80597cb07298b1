#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spectral_indep/datagen.hpp"
#include "spectral_indep/transform.hpp"

using namespace spectral_indep;

namespace {

SampleSet uniform_native(std::size_t n, const BasisSpec& spec, std::uint64_t seed) {
  const SampleSet raw = generate(Generator::IndependentUniform, GenConfig{n, 0.0, seed});
  return domain_map(copula_transform(raw), spec);
}

SampleSet random_points(std::size_t n, std::uint64_t seed) {
  // raw uniforms rather than the copula grid, so cell counts are irregular
  Rng rng(seed);
  SampleSet s;
  for (std::size_t i = 0; i < n; ++i) {
    s.x.push_back(rng.uniform());
    s.y.push_back(rng.uniform());
  }
  return s;
}

double direct_ns(const SampleSet& s, const NSIndex& idx) {
  double sum = 0;
  for (std::size_t i = 0; i < s.size(); ++i) sum += nonstandard_haar_eval(idx, s.x[i], s.y[i]);
  return sum / static_cast<double>(s.size());
}

}  // namespace

// c_01 = W0(x) W1(y) = W1(0.75) = -1 and c_10 = W1(0.25) W0(y) = +1
TEST(CoeffMatrix, SingleSampleWalsh) {
  const SampleSet s({0.25}, {0.75});
  EXPECT_EQ(coeff_matrix(s, BasisSpec::walsh(1)).entries, (Matrix{{1, -1}, {1, -1}}));
  EXPECT_EQ(coeff_matrix(s, BasisSpec::walsh(1), CoeffMethod::FastDyadic).entries, (Matrix{{1, -1}, {1, -1}}));
  EXPECT_EQ(coeff_matrix(SampleSet({0.25}, {0.25}), BasisSpec::walsh(1)).entries, (Matrix{{1, 1}, {1, 1}}));
}

TEST(CoeffMatrix, IndependentWalshSmallCoefficients) {
  const CoefficientMatrix c = coeff_matrix(uniform_native(4096, BasisSpec::walsh(7), 11), BasisSpec::walsh(7));
  double worst = 0;
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b)
      if (a || b) worst = std::max(worst, std::abs(c(a, b)));
  EXPECT_LE(worst, 4 / std::sqrt(4096.0));
}

TEST(CoeffMatrix, ConstantEntryOnCopulaData) {
  for (BasisKind k : {BasisKind::Legendre, BasisKind::Fourier, BasisKind::Walsh, BasisKind::Haar}) {
    const BasisSpec spec = BasisSpec::make(k, 7);
    const CoefficientMatrix c = coeff_matrix(uniform_native(100, spec, 2), spec);
    EXPECT_NEAR(c(0, 0), is_dyadic(k) ? 1.0 : 0.5, 1e-14);
  }
}

TEST(CoeffMatrix, FastDyadicEqualsDirect) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed)
    for (BasisKind k : {BasisKind::Walsh, BasisKind::Haar})
      for (std::size_t size : {2, 4, 8, 16, 32, 64}) {
        const BasisSpec spec = BasisSpec::make(k, size - 1);
        const SampleSet s = random_points(1000 + 797 * seed, seed * 31 + size);
        const Matrix d = coeff_matrix(s, spec, CoeffMethod::Direct).entries;
        const Matrix f = coeff_matrix(s, spec, CoeffMethod::FastDyadic).entries;
        EXPECT_LE((d - f).max_abs(), 1e-12) << to_string(k) << " K+1=" << size;
      }
}

TEST(CoeffMatrix, HaarK31) {
  const SampleSet s = random_points(1000, 99);
  const BasisSpec spec = BasisSpec::haar(31);
  EXPECT_LE((coeff_matrix(s, spec).entries - coeff_matrix(s, spec, CoeffMethod::FastDyadic).entries).max_abs(), 1e-12);
}

TEST(CoeffMatrix, Errors) {
  EXPECT_THROW(coeff_matrix(SampleSet({0.1}, {0.2}), BasisSpec::legendre(2), CoeffMethod::FastDyadic), UnsupportedError);
  EXPECT_THROW(coeff_matrix(SampleSet(), BasisSpec::walsh(1)), DataError);
  EXPECT_THROW(coeff_matrix(SampleSet({0.1}, {0.2}), BasisSpec::nonstandard_haar(1)), KindError);
}

// Density f = (1 + 0.5 L1(x) L1(y)) / 4 on [-1,1]^2 has expansion
// coefficient c_11 = 1/8 (f is a density: 1 - 0.5 * 3/2 > 0).
TEST(CoeffMatrix, ConsistentEstimateOfKnownDensity) {
  Rng rng(123);
  const BasisSpec spec = BasisSpec::legendre(3);
  SampleSet s;
  const double fmax = (1 + 0.5 * 1.5) / 4;
  while (s.size() < 20000) {
    const double x = rng.uniform(-1, 1), y = rng.uniform(-1, 1);
    const double f = (1 + 0.5 * 1.5 * x * y) / 4;
    if (rng.uniform() * fmax <= f) {
      s.x.push_back(x);
      s.y.push_back(y);
    }
  }
  const CoefficientMatrix c = coeff_matrix(s, spec);
  EXPECT_NEAR(c(1, 1), 0.125, 3 / std::sqrt(20000.0));
  EXPECT_NEAR(c(0, 0), 0.5, 1e-12);
}

TEST(CoeffMatrix, RankOneUnderIndependence) {
  const BasisSpec spec = BasisSpec::legendre(8);
  const Matrix c = coeff_matrix(uniform_native(4096, spec, 17), spec).entries;
  oracle::Mat rows(c.rows(), std::vector<double>(c.cols()));
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) rows[i][j] = c(i, j);
  const auto s = oracle::singular_values(rows);
  EXPECT_NEAR(s[0], 0.5, 0.05);
  EXPECT_LE(s[1], 6 / std::sqrt(4096.0));
}

TEST(Moments, CopulaRowZeroVanishes) {
  for (BasisKind k : {BasisKind::Legendre, BasisKind::Fourier, BasisKind::Walsh, BasisKind::Haar}) {
    const BasisSpec spec = BasisSpec::make(k, 7);
    const MomentSet m = moment_matrices(uniform_native(300, spec, 4), spec);
    for (std::size_t j = 0; j < 8; ++j) {
      EXPECT_NEAR(m.sigma_xy(0, j), 0.0, 1e-12);
      EXPECT_NEAR(m.sigma_xy(j, 0), 0.0, 1e-12);
      EXPECT_NEAR(m.sigma_xx(0, j), 0.0, 1e-12);
    }
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) EXPECT_NEAR(m.sigma_xx(i, j), m.sigma_xx(j, i), 1e-14);
  }
}

TEST(Moments, TwoSampleWalsh) {
  const SampleSet s({0.25, 0.75}, {0.25, 0.75});
  EXPECT_EQ(moment_matrices(s, BasisSpec::walsh(1)).tilde_xx(), (Matrix{{1}}));
}

// Legendre is orthonormal for dx on [-1,1]; under the uniform probability
// marginal (density 1/2) the rescaled family sqrt(2) phi_k is orthonormal, so
// 2 * Sigma-tilde estimates the identity.
TEST(Moments, IndependentLegendreNearIdentity) {
  const BasisSpec spec = BasisSpec::legendre(8);
  const MomentSet m = moment_matrices(uniform_native(4096, spec, 8), spec);
  EXPECT_LE((2.0 * m.tilde_xx() - Matrix::identity(8)).max_abs(), 0.1);
  EXPECT_LE((2.0 * m.tilde_yy() - Matrix::identity(8)).max_abs(), 0.1);
}

TEST(Moments, CrossBlockIsCoefficientsMinusRankOne) {
  const BasisSpec spec = BasisSpec::fourier(6);
  const SampleSet raw = generate(Generator::Sine, GenConfig{500, 3.0, 5});
  const SampleSet s = domain_map(copula_transform(raw), spec);
  const MomentSet m = moment_matrices(s, spec);
  const Matrix c = coeff_matrix(s, spec).interaction();
  std::vector<double> mx(7, 0), my(7, 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t k = 0; k < 7; ++k) {
      mx[k] += basis_eval(spec, k, s.x[i]) / static_cast<double>(s.size());
      my[k] += basis_eval(spec, k, s.y[i]) / static_cast<double>(s.size());
    }
  }
  const Matrix t = m.tilde_xy();
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) EXPECT_NEAR(t(a, b), c(a, b) - mx[a + 1] * my[b + 1], 1e-12);
}

TEST(Moments, NonstandardUnsupported) {
  EXPECT_THROW(moment_matrices(SampleSet({0.1}, {0.2}), BasisSpec::nonstandard_haar(1)), UnsupportedError);
}

TEST(VarianceGrid, WalshIdentity) {
  const BasisSpec spec = BasisSpec::walsh(7);
  const SampleSet s = uniform_native(512, spec, 3);
  const Matrix v = variance_grid(s, spec);
  const CoefficientMatrix c = coeff_matrix(s, spec);
  EXPECT_EQ(v(0, 0), 0.0);
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b)
      if (a || b) {
        EXPECT_NEAR(v(a, b), 1 - c(a, b) * c(a, b), 1e-12);
      }
}

// same rescaling: (sqrt(2) phi_a)^2 (sqrt(2) phi_b)^2 has mean 1, so 4 v -> 1
TEST(VarianceGrid, LegendreInteractionNearOne) {
  const BasisSpec spec = BasisSpec::legendre(4);
  const Matrix v = variance_grid(uniform_native(4096, spec, 12), spec);
  EXPECT_EQ(v(0, 0), 0.0);
  for (std::size_t a = 1; a <= 4; ++a)
    for (std::size_t b = 1; b <= 4; ++b) EXPECT_NEAR(4 * v(a, b), 1.0, 0.15);
  for (double e : v.data()) EXPECT_GE(e, -1e-12);
}

TEST(HigherMoment, Examples) {
  const BasisSpec w = BasisSpec::walsh(3);
  const SampleSet s = uniform_native(64, w, 1);
  const CoefficientMatrix c = coeff_matrix(s, w);
  EXPECT_NEAR(moment(s, w, 1, 2, 3), c(2, 3), 1e-15);
  EXPECT_EQ(moment(s, w, 2, 1, 3), 1.0);
  EXPECT_EQ(moment(SampleSet({0.25}, {0.25}), BasisSpec::haar(1), 3, 1, 1), 1.0);
  EXPECT_THROW(moment(s, w, 9, 1, 1), ConfigError);
  EXPECT_THROW(moment(s, w, 2, 4, 1), IndexError);
}

TEST(Nonstandard, Examples) {
  const SampleSet s = uniform_native(256, BasisSpec::walsh(1), 6);
  const NSCoefficients d = nonstandard_coeffs(s, 3);
  EXPECT_EQ(d.value[0], 1.0);
  EXPECT_EQ(d.index[0].type, NSType::SS);
  const NSCoefficients one = nonstandard_coeffs(SampleSet({0.25}, {0.75}), 1);
  EXPECT_EQ(one.value[ns_position({0, NSType::MM, 0, 0})], -1.0);
}

TEST(Nonstandard, QuadtreeEqualsDirectSummation) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
    for (unsigned L = 0; L <= 4; ++L) {
      const SampleSet s = random_points(300 + 211 * seed, seed);
      const NSCoefficients d = nonstandard_coeffs(s, L);
      ASSERT_EQ(d.size(), std::size_t{1} << (2 * L));
      for (std::size_t k = 0; k < d.size(); ++k) {
        EXPECT_EQ(ns_position(d.index[k]), k);
        EXPECT_NEAR(d.value[k], direct_ns(s, d.index[k]), 1e-12);
      }
    }
}

TEST(Nonstandard, IndependentBound) {
  const SampleSet s = random_points(1000, 1000);
  const NSCoefficients d = nonstandard_coeffs(s, 3);
  for (std::size_t k = 1; k < d.size(); ++k)
    EXPECT_LE(std::abs(d.value[k]), 5 * std::ldexp(1.0, static_cast<int>(d.index[k].level)) / std::sqrt(1000.0));
}
