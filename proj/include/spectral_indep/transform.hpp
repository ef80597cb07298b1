#pragma once

// Physical domain -> frequency domain: coefficient matrix C-hat, moment
// matrices, variance grid, higher moments and nonstandard Haar coefficients.
// Every quantity is an empirical mean with weight 1/N.

#include <cmath>
#include <span>
#include <vector>

#include "spectral_indep/basis.hpp"
#include "spectral_indep/copula.hpp"
#include "spectral_indep/errors.hpp"
#include "spectral_indep/matrix.hpp"

namespace spectral_indep {

struct CoefficientMatrix {
  Matrix entries;  // (K+1) x (K+1), entries(k1, k2) = mean phi_k1(x) phi_k2(y)
  BasisSpec spec;
  std::size_t n_samples = 0;

  double operator()(std::size_t k1, std::size_t k2) const { return entries(k1, k2); }
  /// Block with both indices >= 1.
  Matrix interaction() const { return entries.block(1, 1, spec.order(), spec.order()); }
};

enum class CoeffMethod { Direct, FastDyadic };

namespace detail {

inline void require_samples(const SampleSet& s) {
  if (s.empty()) throw DataError("empty sample set");
}

// In-place natural-order fast Walsh-Hadamard transform (unnormalized).
inline void fwht_natural(std::span<double> a) {
  for (std::size_t h = 1; h < a.size(); h *= 2)
    for (std::size_t i = 0; i < a.size(); i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const double x = a[j], y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
}

// Sequency-ordered Walsh coefficients of a cell-constant mass vector.
inline void walsh_transform(std::span<double> a, unsigned L) {
  fwht_natural(a);
  std::vector<double> natural(a.begin(), a.end());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = natural[walsh_natural_row(k, L)];
}

// Haar coefficients (index k = 2^i + j) of a cell-constant mass vector.
inline void haar_transform(std::span<double> a) {
  std::vector<double> level(a.begin(), a.end());
  std::vector<double> out(a.size());
  for (std::size_t len = a.size(); len > 1; len /= 2) {
    const std::size_t half = len / 2;
    const double scale = std::sqrt(static_cast<double>(half));
    for (std::size_t j = 0; j < half; ++j) {
      out[half + j] = scale * (level[2 * j] - level[2 * j + 1]);
      level[j] = level[2 * j] + level[2 * j + 1];
    }
  }
  out[0] = level[0];
  std::copy(out.begin(), out.end(), a.begin());
}

inline void dyadic_transform_1d(const BasisSpec& spec, std::span<double> a) {
  if (spec.kind() == BasisKind::Walsh)
    walsh_transform(a, spec.level());
  else
    haar_transform(a);
}

}  // namespace detail

/// 2D dyadic transform of a (K+1)x(K+1) cell-mass histogram (rows = x cells).
inline Matrix dyadic_transform_2d(const BasisSpec& spec, Matrix hist) {
  const std::size_t n = spec.size();
  for (std::size_t r = 0; r < n; ++r) detail::dyadic_transform_1d(spec, hist.row(r));
  std::vector<double> col(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) col[r] = hist(r, c);
    detail::dyadic_transform_1d(spec, col);
    for (std::size_t r = 0; r < n; ++r) hist(r, c) = col[r];
  }
  return hist;
}

inline CoefficientMatrix coeff_matrix(const SampleSet& samples, const BasisSpec& spec,
                                      CoeffMethod method = CoeffMethod::Direct) {
  detail::require_samples(samples);
  if (!spec.tensor()) throw KindError("coefficient matrix needs a tensor-product basis");
  const std::size_t n = spec.size();
  const double inv_n = 1.0 / static_cast<double>(samples.size());
  CoefficientMatrix out{Matrix(n, n), spec, samples.size()};
  if (method == CoeffMethod::FastDyadic) {
    if (!(spec.kind() == BasisKind::Walsh || spec.kind() == BasisKind::Haar))
      throw UnsupportedError("fast dyadic transform is available for Walsh and Haar only");
    Matrix hist(n, n);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      detail::check_domain(spec, samples.x[i]);
      detail::check_domain(spec, samples.y[i]);
      hist(detail::dyadic_cell(samples.x[i], n), detail::dyadic_cell(samples.y[i], n)) += 1.0;
    }
    // integer counts keep the transform exact; scale once at the end
    out.entries = dyadic_transform_2d(spec, std::move(hist));
    for (double& v : out.entries.data()) v *= inv_n;
    return out;
  }
  std::vector<double> vx(n), vy(n);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    basis_eval_into(spec, samples.x[i], vx);
    basis_eval_into(spec, samples.y[i], vy);
    for (std::size_t a = 0; a < n; ++a) {
      const double xa = vx[a];
      auto row = out.entries.row(a);
      for (std::size_t b = 0; b < n; ++b) row[b] += xa * vy[b];
    }
  }
  for (double& v : out.entries.data()) v *= inv_n;
  return out;
}

/// Sigma_XX, Sigma_YY, Sigma_XY with their blocks dropping index 0.
struct MomentSet {
  Matrix sigma_xx;
  Matrix sigma_yy;
  Matrix sigma_xy;

  std::size_t order() const { return sigma_xx.rows() - 1; }
  Matrix tilde_xx() const { return sigma_xx.block(1, 1, order(), order()); }
  Matrix tilde_yy() const { return sigma_yy.block(1, 1, order(), order()); }
  Matrix tilde_xy() const { return sigma_xy.block(1, 1, order(), order()); }
};

inline MomentSet moment_matrices(const SampleSet& samples, const BasisSpec& spec) {
  detail::require_samples(samples);
  if (!spec.tensor())
    throw UnsupportedError("moment matrices are not defined for the nonstandard Haar basis");
  const std::size_t n = spec.size();
  const double inv_n = 1.0 / static_cast<double>(samples.size());
  Matrix sxx(n, n), syy(n, n), sxy(n, n);
  std::vector<double> mx(n, 0.0), my(n, 0.0), vx(n), vy(n);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    basis_eval_into(spec, samples.x[i], vx);
    basis_eval_into(spec, samples.y[i], vy);
    for (std::size_t a = 0; a < n; ++a) {
      mx[a] += vx[a];
      my[a] += vy[a];
      for (std::size_t b = 0; b < n; ++b) {
        sxx(a, b) += vx[a] * vx[b];
        syy(a, b) += vy[a] * vy[b];
        sxy(a, b) += vx[a] * vy[b];
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    mx[a] *= inv_n;
    my[a] *= inv_n;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      sxx(a, b) = sxx(a, b) * inv_n - mx[a] * mx[b];
      syy(a, b) = syy(a, b) * inv_n - my[a] * my[b];
      sxy(a, b) = sxy(a, b) * inv_n - mx[a] * my[b];
    }
  return {std::move(sxx), std::move(syy), std::move(sxy)};
}

/// entry(k1,k2) = mean (phi_k1(x) phi_k2(y))^2 - c-hat_{k1,k2}^2.
inline Matrix variance_grid(const SampleSet& samples, const BasisSpec& spec) {
  detail::require_samples(samples);
  if (!spec.tensor()) throw KindError("variance grid needs a tensor-product basis");
  const std::size_t n = spec.size();
  const double inv_n = 1.0 / static_cast<double>(samples.size());
  Matrix first(n, n), second(n, n);
  std::vector<double> vx(n), vy(n);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    basis_eval_into(spec, samples.x[i], vx);
    basis_eval_into(spec, samples.y[i], vy);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const double d = vx[a] * vy[b];
        first(a, b) += d;
        second(a, b) += d * d;
      }
  }
  Matrix out(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const double c = first(a, b) * inv_n;
      out(a, b) = second(a, b) * inv_n - c * c;
    }
  // phi_0 phi_0 is constant: its variance vanishes exactly.
  out(0, 0) = 0.0;
  return out;
}

/// (1/N) sum_n (phi_k1(x_n) phi_k2(y_n))^p, 1 <= p <= 8.
inline double moment(const SampleSet& samples, const BasisSpec& spec, int p, std::size_t k1, std::size_t k2) {
  detail::require_samples(samples);
  if (p < 1 || p > 8) throw ConfigError("moment order must be in [1, 8]");
  if (k1 > spec.order() || k2 > spec.order()) throw IndexError("moment index exceeds truncation order");
  double s = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double d = basis_eval(spec, k1, samples.x[i]) * basis_eval(spec, k2, samples.y[i]);
    double term = d;
    for (int e = 1; e < p; ++e) term *= d;
    s += term;
  }
  return s / static_cast<double>(samples.size());
}

struct NSCoefficients {
  unsigned level = 0;
  std::vector<NSIndex> index;  // nonstandard_indices(level) order
  std::vector<double> value;

  std::size_t size() const { return value.size(); }
};

/// Position of `idx` in nonstandard_indices(L).
inline std::size_t ns_position(const NSIndex& idx) {
  if (idx.type == NSType::SS) return 0;
  const std::size_t cells = std::size_t{1} << idx.level;
  const std::size_t type_offset = static_cast<std::size_t>(idx.type) - 1;
  return cells * cells + 3 * (idx.jy * cells + idx.jx) + type_offset;
}

/// Nonstandard Haar coefficients up to level L-1 from quadtree cell counts,
/// O(N + 4^L).
inline NSCoefficients nonstandard_coeffs(const SampleSet& samples, unsigned L) {
  detail::require_samples(samples);
  if (L > 12) throw ConfigError("nonstandard Haar level too large");
  const double inv_n = 1.0 / static_cast<double>(samples.size());
  std::size_t cells = std::size_t{1} << L;
  // counts[jy * cells + jx] at the finest level
  std::vector<double> counts(cells * cells, 0.0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double x = samples.x[i], y = samples.y[i];
    if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
      throw DomainError("nonstandard Haar coefficients need points in the unit square");
    counts[detail::dyadic_cell(y, cells) * cells + detail::dyadic_cell(x, cells)] += 1.0;
  }
  NSCoefficients out;
  out.level = L;
  out.index = nonstandard_indices(L);
  out.value.assign(out.index.size(), 0.0);
  for (unsigned i = L; i-- > 0;) {
    const std::size_t parents = cells / 2;
    const double scale = std::ldexp(1.0, static_cast<int>(i)) * inv_n;
    std::vector<double> up(parents * parents, 0.0);
    for (std::size_t jy = 0; jy < parents; ++jy)
      for (std::size_t jx = 0; jx < parents; ++jx) {
        // q[a][b]: a = upper half in x, b = upper half in y
        const double q00 = counts[(2 * jy) * cells + 2 * jx];
        const double q10 = counts[(2 * jy) * cells + 2 * jx + 1];
        const double q01 = counts[(2 * jy + 1) * cells + 2 * jx];
        const double q11 = counts[(2 * jy + 1) * cells + 2 * jx + 1];
        const std::size_t base = ns_position({i, NSType::SM, jx, jy});
        out.value[base] = scale * ((q00 + q10) - (q01 + q11));      // SM
        out.value[base + 1] = scale * ((q00 + q01) - (q10 + q11));  // MS
        out.value[base + 2] = scale * ((q00 + q11) - (q10 + q01));  // MM
        up[jy * parents + jx] = q00 + q10 + q01 + q11;
      }
    counts = std::move(up);
    cells = parents;
  }
  out.value[0] = counts[0] * inv_n;
  return out;
}

}  // namespace spectral_indep
