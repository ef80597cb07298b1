#pragma once

// Low-dimensional structure: bump functions (conditional means) and
// separable relations H(x) = G(y) from the whitened cross-moment matrix.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spectral_indep/basis.hpp"
#include "spectral_indep/copula.hpp"
#include "spectral_indep/errors.hpp"
#include "spectral_indep/matrix.hpp"
#include "spectral_indep/numerics.hpp"
#include "spectral_indep/transform.hpp"

namespace spectral_indep {

namespace detail {

inline void require_tensor(const BasisSpec& spec, const char* what) {
  if (!spec.tensor()) throw ConfigError(std::string(what) + " needs a tensor-product basis");
}

inline void require_admissible(const SampleSet& samples, const BasisSpec& spec) {
  if (samples.size() < kMinStatisticalSamples)
    throw DataError("need at least " + std::to_string(kMinStatisticalSamples) + " samples");
  if (spec.order() < 1) throw ConfigError("order K must be at least 1");
  if (spec.size() > samples.size()) throw ConfigError("order K must be below the sample count");
}

inline double expansion(const BasisSpec& spec, std::span<const double> coeffs, double x, std::size_t first) {
  const std::vector<double> phi = basis_eval_vector(spec, x);
  double s = 0.0;
  for (std::size_t k = first; k < phi.size(); ++k) s += coeffs[k - first] * phi[k];
  return s;
}

// <t, phi_j(t)> over the native domain.
inline std::vector<double> identity_moments(const BasisSpec& spec) {
  std::vector<double> ip(spec.size(), 0.0);
  if (spec.kind() == BasisKind::Legendre) {
    if (ip.size() > 1) ip[1] = std::sqrt(2.0 / 3.0);
    return ip;
  }
  const Domain d = spec.domain();
  for (std::size_t j = 0; j < ip.size(); ++j)
    ip[j] = integrate([&](double t) { return t * basis_eval(spec, j, t); }, d.lo, d.hi, 16, spec.size());
  return ip;
}

}  // namespace detail

// ---------------------------------------------------------------- bump hunting

enum class BumpAxis { YonX, XonY };

/// H(s) = sum_i h_i phi_i(s) on the native domain: the conditional mean of
/// the other coordinate, also in native units.
struct BumpModel {
  BasisSpec spec;
  std::vector<double> h;
  BumpAxis axis = BumpAxis::YonX;

  double native(double s) const { return detail::expansion(spec, h, s, 0); }
  /// Copula coordinate in, copula coordinate out.
  double operator()(double t) const { return from_native(spec, native(to_native(spec, t))); }
};

inline BumpModel bump_hunt(const SampleSet& samples, const BasisSpec& spec, BumpAxis axis = BumpAxis::YonX) {
  detail::require_tensor(spec, "bump hunting");
  detail::require_admissible(samples, spec);
  const SampleSet native = domain_map(copula_transform(samples), spec);
  const CoeffMethod method = is_dyadic(spec.kind()) ? CoeffMethod::FastDyadic : CoeffMethod::Direct;
  Matrix c = coeff_matrix(native, spec, method).entries;
  if (axis == BumpAxis::XonY) c = c.transpose();

  const Domain d = spec.domain();
  const std::vector<double> ip = detail::identity_moments(spec);
  const double one_phi0 = integrate([&](double) { return spec.phi0(); }, d.lo, d.hi, 2);
  // marginal density of the conditioning coordinate: <1, phi_0> c_00 phi_0
  const double denom = one_phi0 * c(0, 0) * spec.phi0();

  BumpModel model{spec, std::vector<double>(spec.size(), 0.0), axis};
  for (std::size_t i = 0; i < spec.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) s += c(i, j) * ip[j];
    model.h[i] = s / denom;
  }
  return model;
}

// ------------------------------------------------------- separable relations

enum class LdsMethod { Svd, Cca };
enum class Orientation { GonH, HonG };
enum class FitDomain { Copula, Raw };

inline std::string_view to_string(LdsMethod m) { return m == LdsMethod::Svd ? "svd" : "cca"; }
inline std::string_view to_string(Orientation o) { return o == Orientation::GonH ? "g-on-h" : "h-on-g"; }
inline std::string_view to_string(FitDomain f) { return f == FitDomain::Copula ? "copula" : "raw"; }

struct LdsOptions {
  LdsMethod method = LdsMethod::Svd;
  Orientation orientation = Orientation::GonH;
  FitDomain domain = FitDomain::Copula;
  std::optional<double> ridge;  // default: default_ridge per moment block
};

/// Maps one data coordinate to the native domain and back.
struct AxisMap {
  FitDomain mode = FitDomain::Copula;
  double lo = 0.0, hi = 1.0;  // raw mode: data range
  QuantileMap quantile;       // copula mode
};

/// Native coordinates of `samples` under the fitting convention.
inline SampleSet to_fit_domain(const SampleSet& samples, const BasisSpec& spec, FitDomain mode,
                               AxisMap* mx = nullptr, AxisMap* my = nullptr) {
  check_finite(samples);
  if (mode == FitDomain::Copula) {
    if (mx) *mx = AxisMap{mode, 0.0, 1.0, QuantileMap(samples.x)};
    if (my) *my = AxisMap{mode, 0.0, 1.0, QuantileMap(samples.y)};
    return domain_map(copula_transform(samples), spec);
  }
  const auto [xlo, xhi] = std::minmax_element(samples.x.begin(), samples.x.end());
  const auto [ylo, yhi] = std::minmax_element(samples.y.begin(), samples.y.end());
  if (!(*xhi > *xlo) || !(*yhi > *ylo)) throw DataError("raw fit needs non-constant coordinates");
  if (mx) *mx = AxisMap{mode, *xlo, *xhi, {}};
  if (my) *my = AxisMap{mode, *ylo, *yhi, {}};
  SampleSet out;
  out.tag = DomainTag::Native;
  out.x.reserve(samples.size());
  out.y.reserve(samples.size());
  const Domain d = spec.domain();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out.x.push_back(std::clamp(to_native(spec, (samples.x[i] - *xlo) / (*xhi - *xlo)), d.lo, d.hi));
    out.y.push_back(std::clamp(to_native(spec, (samples.y[i] - *ylo) / (*yhi - *ylo)), d.lo, d.hi));
  }
  return out;
}

/// Whitened cross-moment matrix M = Wx Sxy Wy, Wx = (Sxx + tau I)^{-1/2}.
struct Whitening {
  MomentSet moments;
  Matrix wx, wy;
  Matrix m;
  double ridge_x = 0.0, ridge_y = 0.0;
};

inline Whitening whiten(const SampleSet& native, const BasisSpec& spec, std::optional<double> ridge = {}) {
  Whitening w{moment_matrices(native, spec), {}, {}, {}, 0.0, 0.0};
  const Matrix sxx = w.moments.tilde_xx(), syy = w.moments.tilde_yy();
  w.ridge_x = ridge.value_or(default_ridge(sxx));
  w.ridge_y = ridge.value_or(default_ridge(syy));
  try {
    w.wx = inv_sqrt_sym(sxx, w.ridge_x);
    w.wy = inv_sqrt_sym(syy, w.ridge_y);
  } catch (const DataError& e) {
    throw DataError(std::string("whitening failed (") + e.what() + "); retry with a larger --ridge");
  }
  w.m = w.wx * w.moments.tilde_xy() * w.wy;
  return w;
}

/// H(x) = sum_k omega_k phi_k(x), G(y) = lambda sum_k beta_k phi_k(y) + gamma
/// for G-on-H; for H-on-G the affine pair moves to H. Indices k = 1..K.
struct CurveModel {
  BasisSpec spec;
  std::vector<double> omega{}, beta{};
  std::vector<double> c{}, d{};  // whitened directions, x side and y side
  double lambda = 1.0, gamma = 0.0;
  Orientation orientation = Orientation::GonH;
  LdsMethod method = LdsMethod::Svd;
  double sigma = 0.0;  // top canonical correlation
  double rho = 0.0;    // correlation of H(x_n) and G(y_n)
  double residual_rms = 0.0;
  double signal_rms = 0.0;
  AxisMap x_map{}, y_map{};
  std::vector<std::string> warnings{};

  double h_raw(double s) const { return detail::expansion(spec, omega, s, 1); }
  double g_raw(double t) const { return detail::expansion(spec, beta, t, 1); }
  double H(double s) const {
    const double v = h_raw(s);
    return orientation == Orientation::HonG ? lambda * v + gamma : v;
  }
  double G(double t) const {
    const double v = g_raw(t);
    return orientation == Orientation::GonH ? lambda * v + gamma : v;
  }

  /// Native coordinate to data units.
  double x_to_data(double s) const { return to_data(x_map, s); }
  double y_to_data(double t) const { return to_data(y_map, t); }

 private:
  double to_data(const AxisMap& m, double u) const {
    const double t = from_native(spec, u);
    return m.mode == FitDomain::Copula ? m.quantile(t) : m.lo + (m.hi - m.lo) * t;
  }
};

struct CurveDiagnostics {
  double residual_rms = 0.0;
  double signal_rms = 0.0;  // RMS of H(x_n) about its mean
  double rho = 0.0;
  std::vector<std::string> warnings;
};

namespace detail {

inline void orient_pair(std::vector<double>& c, std::vector<double>& d) {
  SingularTriple t{0.0, c, d};
  apply_sign_convention(t);
  c = std::move(t.u);
  d = std::move(t.v);
}

inline double pearson(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa <= 0.0 || sbb <= 0.0) return 0.0;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

inline CurveDiagnostics diagnose(const CurveModel& model, const SampleSet& native) {
  CurveDiagnostics out;
  const std::size_t n = native.size();
  std::vector<double> h(n), g(n);
  for (std::size_t i = 0; i < n; ++i) {
    h[i] = model.H(native.x[i]);
    g[i] = model.G(native.y[i]);
  }
  double mean_h = 0.0;
  for (double v : h) mean_h += v;
  mean_h /= static_cast<double>(n);
  double res = 0.0, sig = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    res += (h[i] - g[i]) * (h[i] - g[i]);
    sig += (h[i] - mean_h) * (h[i] - mean_h);
  }
  out.residual_rms = std::sqrt(res / static_cast<double>(n));
  out.signal_rms = std::sqrt(sig / static_cast<double>(n));
  out.rho = pearson(h, g);
  if (std::all_of(model.omega.begin(), model.omega.end(), [](double w) { return w == 0.0; }))
    out.warnings.emplace_back("degenerate model: omega is zero");
  return out;
}

// Top canonical pair through Householder QR of the centred, ridge-augmented
// design matrices: [Phi / sqrt(N); sqrt(tau) I] = Q R, so R^T R = S + tau I.
inline std::pair<SingularTriple, std::array<Matrix, 2>> cca_pair(const SampleSet& native, const BasisSpec& spec,
                                                                  double ridge_x, double ridge_y) {
  const std::size_t n = native.size(), k = spec.order();
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  auto design = [&](const std::vector<double>& col, double ridge) {
    Matrix a(n + k, k);
    std::vector<double> mean(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::vector<double> phi = basis_eval_vector(spec, col[i]);
      for (std::size_t j = 0; j < k; ++j) {
        a(i, j) = phi[j + 1];
        mean[j] += phi[j + 1];
      }
    }
    for (std::size_t j = 0; j < k; ++j) mean[j] /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) a(i, j) = (a(i, j) - mean[j]) * inv_sqrt_n;
    for (std::size_t j = 0; j < k; ++j) a(n + j, j) = std::sqrt(ridge);
    return householder_qr(a);
  };
  const ThinQR qx = design(native.x, ridge_x);
  const ThinQR qy = design(native.y, ridge_y);
  Matrix cross(k, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) cross(a, b) += qx.q(i, a) * qy.q(i, b);
  return {top_singular_triple(cross), {qx.r, qy.r}};
}

}  // namespace detail

inline constexpr double kNoStructureFloor = 1e-8;

/// Fits H(x) = G(y) from the top canonical pair of the basis expansions.
inline CurveModel lds_fit(const SampleSet& samples, const BasisSpec& spec, const LdsOptions& options = {}) {
  detail::require_tensor(spec, "structure fitting");
  detail::require_admissible(samples, spec);
  CurveModel model{.spec = spec};
  model.orientation = options.orientation;
  model.method = options.method;
  const SampleSet native = to_fit_domain(samples, spec, options.domain, &model.x_map, &model.y_map);
  const Whitening w = whiten(native, spec, options.ridge);

  if (options.method == LdsMethod::Svd) {
    const SingularTriple t = top_singular_triple(w.m);
    model.sigma = t.sigma;
    model.c = t.u;
    model.d = t.v;
    model.omega = w.wx * std::span<const double>(model.c);
    model.beta = w.wy * std::span<const double>(model.d);
  } else {
    const auto [t, r] = detail::cca_pair(native, spec, w.ridge_x, w.ridge_y);
    model.sigma = t.sigma;
    model.omega = solve_upper(r[0], t.u);
    model.beta = solve_upper(r[1], t.v);
    const Matrix sx = sqrt_sym(w.moments.tilde_xx(), w.ridge_x);
    const Matrix sy = sqrt_sym(w.moments.tilde_yy(), w.ridge_y);
    model.c = sx * std::span<const double>(model.omega);
    model.d = sy * std::span<const double>(model.beta);
    const double nc = norm2(model.c), nd = norm2(model.d);
    for (auto* vec : {&model.c, &model.omega})
      for (double& v : *vec) v /= nc;
    for (auto* vec : {&model.d, &model.beta})
      for (double& v : *vec) v /= nd;
    const bool flip = [&] {
      std::vector<double> c0 = model.c, d0 = model.d;
      detail::orient_pair(c0, d0);
      return c0 != model.c;
    }();
    if (flip) {
      for (auto* vec : {&model.c, &model.d, &model.omega, &model.beta})
        for (double& v : *vec) v = -v;
    }
  }

  std::vector<double> h(native.size()), g(native.size());
  for (std::size_t i = 0; i < native.size(); ++i) {
    h[i] = model.h_raw(native.x[i]);
    g[i] = model.g_raw(native.y[i]);
  }
  const double floor = std::max(kNoStructureFloor, 4.0 / std::sqrt(static_cast<double>(native.size())));
  if (model.sigma <= floor)
    model.warnings.emplace_back("no structure: top canonical correlation is at the noise level");
  try {
    const LineFit fit = options.orientation == Orientation::GonH ? least_squares_line(h, g) : least_squares_line(g, h);
    model.lambda = fit.lambda;
    model.gamma = fit.gamma;
  } catch (const DataError&) {
    model.lambda = 0.0;
    model.gamma = 0.0;
    model.warnings.emplace_back("degenerate line fit: expansion is constant on the data");
  }
  const CurveDiagnostics diag = detail::diagnose(model, native);
  model.rho = diag.rho;
  model.residual_rms = diag.residual_rms;
  model.signal_rms = diag.signal_rms;
  for (const auto& msg : diag.warnings) model.warnings.push_back(msg);
  return model;
}

/// Residual and correlation of H(x_n) - G(y_n). Samples are mapped with the
/// model's fitting convention (copula mode re-ranks the given samples).
inline CurveDiagnostics curve_residual(const CurveModel& model, const SampleSet& samples) {
  SampleSet native;
  if (model.x_map.mode == FitDomain::Copula) {
    native = domain_map(copula_transform(samples), model.spec);
  } else {
    check_finite(samples);
    native.tag = DomainTag::Native;
    const Domain d = model.spec.domain();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double tx = (samples.x[i] - model.x_map.lo) / (model.x_map.hi - model.x_map.lo);
      const double ty = (samples.y[i] - model.y_map.lo) / (model.y_map.hi - model.y_map.lo);
      native.x.push_back(std::clamp(to_native(model.spec, tx), d.lo, d.hi));
      native.y.push_back(std::clamp(to_native(model.spec, ty), d.lo, d.hi));
    }
  }
  if (native.empty()) throw DataError("empty sample set");
  return detail::diagnose(model, native);
}

// ---------------------------------------------------------------- contouring

struct Segment {
  double x0, y0, x1, y1;
};

inline constexpr std::size_t kMaxContourResolution = 2048;

/// Zero set of F(s, t) on a (resolution+1)^2 node grid over the native square,
/// by marching squares. Segments are emitted cell by cell, rows of t first.
template <typename F>
std::vector<Segment> zero_contour(F&& f, Domain dom, std::size_t resolution) {
  if (resolution < 1 || resolution > kMaxContourResolution)
    throw ConfigError("contour resolution must be in [1, 2048]");
  const std::size_t m = resolution + 1;
  const double step = dom.length() / static_cast<double>(resolution);
  auto coord = [&](std::size_t i) { return i == resolution ? dom.hi : dom.lo + step * static_cast<double>(i); };
  std::vector<double> grid(m * m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) grid[j * m + i] = f(coord(i), coord(j));

  std::vector<Segment> out;
  for (std::size_t j = 0; j < resolution; ++j) {
    for (std::size_t i = 0; i < resolution; ++i) {
      const double x0 = coord(i), x1 = coord(i + 1), y0 = coord(j), y1 = coord(j + 1);
      // corners counter-clockwise from (x0, y0)
      const std::array<double, 4> v{grid[j * m + i], grid[j * m + i + 1], grid[(j + 1) * m + i + 1],
                                    grid[(j + 1) * m + i]};
      const std::array<std::pair<double, double>, 4> p{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
      std::array<std::pair<double, double>, 4> cross{};
      std::array<bool, 4> has{};
      for (int e = 0; e < 4; ++e) {
        const int a = e, b = (e + 1) % 4;
        const bool sa = v[a] >= 0.0, sb = v[b] >= 0.0;
        if (sa == sb) continue;
        const double w = v[a] / (v[a] - v[b]);
        cross[e] = {p[a].first + w * (p[b].first - p[a].first), p[a].second + w * (p[b].second - p[a].second)};
        has[e] = true;
      }
      const int count = has[0] + has[1] + has[2] + has[3];
      if (count == 2) {
        int e0 = -1, e1 = -1;
        for (int e = 0; e < 4; ++e)
          if (has[e]) (e0 < 0 ? e0 : e1) = e;
        out.push_back({cross[e0].first, cross[e0].second, cross[e1].first, cross[e1].second});
      } else if (count == 4) {
        // saddle: the centre value decides which corners connect
        const double centre = 0.25 * (v[0] + v[1] + v[2] + v[3]);
        const bool joined = (centre >= 0.0) == (v[0] >= 0.0);
        const std::array<int, 4> order = joined ? std::array<int, 4>{0, 1, 2, 3} : std::array<int, 4>{3, 0, 1, 2};
        out.push_back({cross[order[0]].first, cross[order[0]].second, cross[order[1]].first, cross[order[1]].second});
        out.push_back({cross[order[2]].first, cross[order[2]].second, cross[order[3]].first, cross[order[3]].second});
      }
    }
  }
  return out;
}

/// Zero set of H(s) - G(t) in native units.
inline std::vector<Segment> curve_contour(const CurveModel& model, std::size_t resolution = 256) {
  const BasisSpec& spec = model.spec;
  const std::size_t m = resolution + 1;
  if (resolution < 1 || resolution > kMaxContourResolution)
    throw ConfigError("contour resolution must be in [1, 2048]");
  const Domain dom = spec.domain();
  const double step = dom.length() / static_cast<double>(resolution);
  std::vector<double> hv(m), gv(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double u = i == resolution ? dom.hi : dom.lo + step * static_cast<double>(i);
    hv[i] = model.H(u);
    gv[i] = model.G(u);
  }
  auto index = [&](double u) {
    return std::min(resolution, static_cast<std::size_t>(std::llround((u - dom.lo) / step)));
  };
  return zero_contour([&](double s, double t) { return hv[index(s)] - gv[index(t)]; }, dom, resolution);
}

}  // namespace spectral_indep
