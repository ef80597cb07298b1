#pragma once

// Small dense kernels: symmetric Jacobi eigensolver, top singular triple,
// symmetric (inverse) square roots, Gauss-Legendre rules, a straight-line
// least-squares fit and a thin Householder QR.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "spectral_indep/errors.hpp"
#include "spectral_indep/matrix.hpp"

namespace spectral_indep {

struct SymEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // column i pairs with values[i]
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
inline SymEigen sym_eigen(const Matrix& input) {
  const std::size_t n = input.rows();
  Matrix a = input;
  Matrix v = Matrix::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      diag += a(i, i) * a(i, i);
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    }
    if (off <= 1e-32 * diag || off == 0.0) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
  SymEigen out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

struct SingularTriple {
  double sigma = 0.0;
  std::vector<double> u;  // left, length rows
  std::vector<double> v;  // right, length cols
};

namespace detail {

// Flip so the first component of v that is not negligible is positive.
inline void apply_sign_convention(SingularTriple& t) {
  const double scale = std::max(1.0, *std::max_element(t.v.begin(), t.v.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  }));
  for (double c : t.v) {
    if (std::abs(c) > 1e-12 * scale) {
      if (c < 0.0) {
        for (double& x : t.v) x = -x;
        for (double& x : t.u) x = -x;
      }
      return;
    }
  }
}

inline void normalize(std::vector<double>& x) {
  const double n = norm2(x);
  if (n > 0.0)
    for (double& c : x) c /= n;
}

}  // namespace detail

/// Largest singular value with its singular vectors, from the Jacobi
/// eigendecomposition of the smaller Gram matrix plus one refinement step.
inline SingularTriple top_singular_triple(const Matrix& m) {
  if (!m.all_finite()) throw DataError("non-finite matrix entry");
  const std::size_t rows = m.rows(), cols = m.cols();
  SingularTriple t;
  t.u.assign(rows, 0.0);
  t.v.assign(cols, 0.0);
  if (rows == 0 || cols == 0) return t;
  const Matrix mt = m.transpose();
  if (m.max_abs() == 0.0) {
    t.u[0] = 1.0;
    t.v[0] = 1.0;
    return t;
  }
  if (cols <= rows) {
    const SymEigen e = sym_eigen(mt * m);
    t.v = e.vectors.column(0);
    t.u = m * std::span<const double>(t.v);
    t.sigma = norm2(t.u);
    detail::normalize(t.u);
    t.v = mt * std::span<const double>(t.u);
    detail::normalize(t.v);
    t.u = m * std::span<const double>(t.v);
    t.sigma = norm2(t.u);
    detail::normalize(t.u);
  } else {
    const SymEigen e = sym_eigen(m * mt);
    t.u = e.vectors.column(0);
    t.v = mt * std::span<const double>(t.u);
    t.sigma = norm2(t.v);
    detail::normalize(t.v);
    t.u = m * std::span<const double>(t.v);
    detail::normalize(t.u);
    t.v = mt * std::span<const double>(t.u);
    t.sigma = norm2(t.v);
    detail::normalize(t.v);
  }
  if (t.sigma == 0.0) {
    std::fill(t.u.begin(), t.u.end(), 0.0);
    std::fill(t.v.begin(), t.v.end(), 0.0);
    t.u[0] = 1.0;
    t.v[0] = 1.0;
  }
  detail::apply_sign_convention(t);
  return t;
}

/// Largest singular value only.
inline double spectral_norm(const Matrix& m) { return top_singular_triple(m).sigma; }

inline void check_symmetric(const Matrix& m) {
  if (m.rows() != m.cols()) throw DataError("matrix is not square");
  if (!m.all_finite()) throw DataError("non-finite matrix entry");
  const double tol = 1e-10 * std::max(1.0, m.max_abs());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol) throw DataError("matrix is not symmetric");
}

/// Ridge used when whitening moment matrices: 1e-8 * trace(M) / dim.
inline double default_ridge(const Matrix& m) {
  double tr = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) tr += m(i, i);
  return m.rows() == 0 ? 0.0 : 1e-8 * std::max(tr, 0.0) / static_cast<double>(m.rows());
}

namespace detail {

template <typename F>
Matrix sym_function(const Matrix& m, double ridge, F f) {
  check_symmetric(m);
  if (ridge < 0.0) throw ConfigError("ridge must be non-negative");
  Matrix shifted = m;
  for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) += ridge;
  const SymEigen e = sym_eigen(shifted);
  const std::size_t n = m.rows();
  if (n == 0) return {};
  const double lmax = e.values.front();
  if (!(lmax > 0.0)) throw DataError("matrix has no positive eigenvalue; add a ridge");
  const double floor = 1e-12 * lmax;
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double g = f(std::max(e.values[k], floor));
    for (std::size_t i = 0; i < n; ++i) {
      const double vik = e.vectors(i, k) * g;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * e.vectors(j, k);
    }
  }
  return out;
}

}  // namespace detail

/// V diag(1/sqrt(lambda)) V^T of M + ridge*I, eigenvalues floored at 1e-12 lambda_max.
inline Matrix inv_sqrt_sym(const Matrix& m, double ridge = 0.0) {
  return detail::sym_function(m, ridge, [](double l) { return 1.0 / std::sqrt(l); });
}

inline Matrix sqrt_sym(const Matrix& m, double ridge = 0.0) {
  return detail::sym_function(m, ridge, [](double l) { return std::sqrt(l); });
}

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
inline QuadratureRule gauss_legendre_nodes(std::size_t n) {
  if (n < 1 || n > 128) throw ConfigError("Gauss-Legendre node count must be in [1, 128]");
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - static_cast<double>(k) * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      // P_n = p1, P_{n-1} = p0
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    if (n == 1) {
      x = 0.0;
      dp = 1.0;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

/// Integral of f over [a, b] with `panels` equal sub-intervals, each with an
/// `points`-node Gauss-Legendre rule.
template <typename F>
double integrate(F&& f, double a, double b, std::size_t points = 64, std::size_t panels = 1) {
  const QuadratureRule rule = gauss_legendre_nodes(points);
  const double h = (b - a) / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    double s = 0.0;
    for (std::size_t i = 0; i < points; ++i) s += rule.weights[i] * f(lo + 0.5 * h * (rule.nodes[i] + 1.0));
    total += 0.5 * h * s;
  }
  return total;
}

struct LineFit {
  double lambda = 0.0;
  double gamma = 0.0;
};

/// Minimizes sum_n (u_n - (lambda v_n + gamma))^2.
inline LineFit least_squares_line(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size() || u.size() < 2) throw DataError("line fit needs two equal-length vectors, n >= 2");
  const double n = static_cast<double>(u.size());
  const double mu = std::accumulate(u.begin(), u.end(), 0.0) / n;
  const double mv = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double svv = 0.0, suv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    svv += (v[i] - mv) * (v[i] - mv);
    suv += (v[i] - mv) * (u[i] - mu);
  }
  const double scale = std::max(1.0, std::abs(mv));
  if (svv <= 1e-24 * n * scale * scale) throw DataError("degenerate line fit: regressor is constant");
  LineFit fit;
  fit.lambda = suv / svv;
  fit.gamma = mu - fit.lambda * mv;
  return fit;
}

struct ThinQR {
  Matrix q;  // rows x cols, orthonormal columns
  Matrix r;  // cols x cols, upper triangular
};

/// Householder QR of a tall matrix (rows >= cols).
inline ThinQR householder_qr(const Matrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  if (m < n) throw DataError("QR needs rows >= cols");
  Matrix r = a;
  std::vector<std::vector<double>> reflectors;
  reflectors.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> v(m - k);
    for (std::size_t i = k; i < m; ++i) v[i - k] = r(i, k);
    const double alpha = (v[0] >= 0.0 ? -1.0 : 1.0) * norm2(v);
    v[0] -= alpha;
    const double vn = norm2(v);
    if (vn > 0.0)
      for (double& c : v) c /= vn;
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += v[i - k] * r(i, j);
      for (std::size_t i = k; i < m; ++i) r(i, j) -= 2.0 * v[i - k] * s;
    }
    reflectors.push_back(std::move(v));
  }
  ThinQR out{Matrix(m, n), r.block(0, 0, n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) out.r(i, j) = 0.0;
  for (std::size_t j = 0; j < n; ++j) out.q(j, j) = 1.0;
  for (std::size_t kk = n; kk-- > 0;) {
    const auto& v = reflectors[kk];
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = kk; i < m; ++i) s += v[i - kk] * out.q(i, j);
      for (std::size_t i = kk; i < m; ++i) out.q(i, j) -= 2.0 * v[i - kk] * s;
    }
  }
  return out;
}

/// Solves R x = b for upper-triangular R.
inline std::vector<double> solve_upper(const Matrix& r, std::span<const double> b) {
  const std::size_t n = r.rows();
  std::vector<double> x(b.begin(), b.end());
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= r(i, j) * x[j];
    if (r(i, i) == 0.0) throw DataError("singular triangular system");
    x[i] /= r(i, i);
  }
  return x;
}

}  // namespace spectral_indep
