#pragma once

// Orthonormal basis families on their native domains.
//
//   Legendre   [-1, 1]  L_n = sqrt((2n+1)/2) P_n, three-term recurrence
//   Fourier    [-1, 1]  1/sqrt(2), cos(m pi x), sin(m pi x) (real form)
//   Walsh      [0, 1]   rows of the sequency-ordered Hadamard matrix
//   Haar       [0, 1]   H_0 = s, H_{2^i + j} = 2^{i/2} m(2^i x - j)
//   NonstandardHaar2D   [0, 1]^2, 2^i a(2^i x - jx) b(2^i y - jy), a, b in {s, m}
//
// Dyadic supports are half-open; x == 1 is assigned to the last cell.

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spectral_indep/errors.hpp"
#include "spectral_indep/matrix.hpp"

namespace spectral_indep {

enum class BasisKind { Legendre, Fourier, Walsh, Haar, NonstandardHaar2D };

inline std::string_view to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::Legendre: return "legendre";
    case BasisKind::Fourier: return "fourier";
    case BasisKind::Walsh: return "walsh";
    case BasisKind::Haar: return "haar";
    case BasisKind::NonstandardHaar2D: return "nonstandard-haar";
  }
  return "?";
}

inline std::optional<BasisKind> parse_basis_kind(std::string_view name) {
  for (auto k : {BasisKind::Legendre, BasisKind::Fourier, BasisKind::Walsh, BasisKind::Haar,
                 BasisKind::NonstandardHaar2D})
    if (name == to_string(k)) return k;
  if (name == "nonstandard" || name == "nshaar") return BasisKind::NonstandardHaar2D;
  return std::nullopt;
}

inline bool is_dyadic(BasisKind kind) {
  return kind == BasisKind::Walsh || kind == BasisKind::Haar ||
         kind == BasisKind::NonstandardHaar2D;
}

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

struct Domain {
  double lo;
  double hi;
  double length() const { return hi - lo; }
};

/// Basis family plus truncation. `order` is K (indices 0..K) for the tensor
/// families; for NonstandardHaar2D `level` is L (wavelet levels 0..L-1, 4^L
/// functions) and `order` mirrors 2^L - 1.
class BasisSpec {
 public:
  static BasisSpec legendre(std::size_t K) { return BasisSpec(BasisKind::Legendre, K, 0); }
  static BasisSpec fourier(std::size_t K) { return BasisSpec(BasisKind::Fourier, K, 0); }
  static BasisSpec walsh(std::size_t K) { return dyadic(BasisKind::Walsh, K); }
  static BasisSpec haar(std::size_t K) { return dyadic(BasisKind::Haar, K); }
  static BasisSpec nonstandard_haar(unsigned L) {
    if (L > 15) throw ConfigError("nonstandard Haar level too large");
    return BasisSpec(BasisKind::NonstandardHaar2D, (std::size_t{1} << L) - 1, L);
  }

  /// Generic constructor; for NonstandardHaar2D, K+1 must be 2^L.
  static BasisSpec make(BasisKind kind, std::size_t K) {
    switch (kind) {
      case BasisKind::Legendre: return legendre(K);
      case BasisKind::Fourier: return fourier(K);
      case BasisKind::Walsh: return walsh(K);
      case BasisKind::Haar: return haar(K);
      case BasisKind::NonstandardHaar2D:
        if (!is_power_of_two(K + 1)) throw ConfigError("nonstandard Haar needs K+1 = 2^L");
        return nonstandard_haar(static_cast<unsigned>(std::countr_zero(K + 1)));
    }
    throw ConfigError("unknown basis kind");
  }

  BasisKind kind() const { return kind_; }
  std::size_t order() const { return order_; }
  std::size_t size() const { return order_ + 1; }
  unsigned level() const { return level_; }
  bool tensor() const { return kind_ != BasisKind::NonstandardHaar2D; }

  Domain domain() const {
    if (kind_ == BasisKind::Legendre || kind_ == BasisKind::Fourier) return {-1.0, 1.0};
    return {0.0, 1.0};
  }

  /// Value of the constant function phi_0 = 1/||1||.
  double phi0() const { return 1.0 / std::sqrt(domain().length()); }

  friend bool operator==(const BasisSpec&, const BasisSpec&) = default;

 private:
  BasisSpec(BasisKind kind, std::size_t order, unsigned level)
      : kind_(kind), order_(order), level_(level) {}

  static BasisSpec dyadic(BasisKind kind, std::size_t K) {
    if (!is_power_of_two(K + 1))
      throw ConfigError(std::string(to_string(kind)) + " order K requires K+1 to be a power of two");
    return BasisSpec(kind, K, static_cast<unsigned>(std::countr_zero(K + 1)));
  }

  BasisKind kind_;
  std::size_t order_;
  unsigned level_;
};

namespace detail {

inline double haar_mother(double t) {
  if (t >= 0.0 && t < 0.5) return 1.0;
  if (t >= 0.5 && t < 1.0) return -1.0;
  return 0.0;
}

inline double haar_scaling(double t) { return (t >= 0.0 && t < 1.0) ? 1.0 : 0.0; }

// Half-open dyadic convention: the right endpoint belongs to the last cell.
inline double clamp_unit(double x) { return x >= 1.0 ? std::nextafter(1.0, 0.0) : x; }

inline std::uint64_t reverse_bits(std::uint64_t v, unsigned bits) {
  std::uint64_t r = 0;
  for (unsigned b = 0; b < bits; ++b) {
    r = (r << 1) | (v & 1U);
    v >>= 1;
  }
  return r;
}

inline std::size_t dyadic_cell(double x, std::size_t cells) {
  const auto c = static_cast<std::size_t>(std::floor(x * static_cast<double>(cells)));
  return c >= cells ? cells - 1 : c;
}

inline void check_domain(const BasisSpec& spec, double x) {
  const Domain d = spec.domain();
  if (!(x >= d.lo && x <= d.hi))
    throw DomainError("point " + std::to_string(x) + " outside the " +
                      std::string(to_string(spec.kind())) + " domain");
}

}  // namespace detail

/// Natural (Sylvester) Hadamard row holding the sequency-k Walsh function at
/// resolution 2^L: bit-reversal of the Gray code of k.
inline std::size_t walsh_natural_row(std::size_t k, unsigned L) {
  return static_cast<std::size_t>(detail::reverse_bits(k ^ (k >> 1), L));
}

/// Walsh function of sequency k evaluated on dyadic cell `cell` of 2^L cells.
inline double walsh_value(std::size_t k, std::size_t cell, unsigned L) {
  return (std::popcount(walsh_natural_row(k, L) & cell) & 1U) ? -1.0 : 1.0;
}

/// Haar function k (0 = scaling) on cell `cell` of 2^L cells, k < 2^L.
inline double haar_value(std::size_t k, std::size_t cell, unsigned L) {
  if (k == 0) return 1.0;
  const unsigned i = static_cast<unsigned>(std::bit_width(k) - 1);
  const std::size_t j = k - (std::size_t{1} << i);
  const std::size_t block = cell >> (L - i);  // support index at level i
  if (block != j) return 0.0;
  const bool upper_half = (cell >> (L - i - 1)) & 1U;
  const double scale = std::sqrt(static_cast<double>(std::size_t{1} << i));
  return upper_half ? -scale : scale;
}

inline double basis_eval(const BasisSpec& spec, std::size_t k, double x) {
  if (!spec.tensor())
    throw KindError("nonstandard Haar is two-dimensional; use nonstandard_haar_eval");
  if (k > spec.order()) throw IndexError("basis index exceeds truncation order");
  detail::check_domain(spec, x);
  switch (spec.kind()) {
    case BasisKind::Legendre: {
      double p_prev = 1.0, p = x;
      if (k == 0) return std::sqrt(0.5);
      for (std::size_t n = 1; n < k; ++n) {
        const double next = ((2.0 * n + 1.0) * x * p - static_cast<double>(n) * p_prev) / (n + 1.0);
        p_prev = p;
        p = next;
      }
      return std::sqrt((2.0 * k + 1.0) / 2.0) * p;
    }
    case BasisKind::Fourier: {
      if (k == 0) return std::numbers::sqrt2 / 2.0;
      const double m = static_cast<double>((k + 1) / 2);
      return (k % 2 == 1) ? std::cos(m * std::numbers::pi * x) : std::sin(m * std::numbers::pi * x);
    }
    case BasisKind::Walsh:
      return walsh_value(k, detail::dyadic_cell(x, spec.size()), spec.level());
    case BasisKind::Haar: {
      if (k == 0) return 1.0;
      const unsigned i = static_cast<unsigned>(std::bit_width(k) - 1);
      const double j = static_cast<double>(k - (std::size_t{1} << i));
      const double scale = std::ldexp(1.0, static_cast<int>(i));
      return std::sqrt(scale) * detail::haar_mother(scale * detail::clamp_unit(x) - j);
    }
    case BasisKind::NonstandardHaar2D: break;
  }
  throw KindError("unhandled basis kind");
}

/// All K+1 basis values at x, written into `out`.
inline void basis_eval_into(const BasisSpec& spec, double x, std::span<double> out) {
  if (!spec.tensor())
    throw KindError("nonstandard Haar is two-dimensional; use nonstandard_haar_eval");
  detail::check_domain(spec, x);
  const std::size_t n = spec.size();
  switch (spec.kind()) {
    case BasisKind::Legendre: {
      double p_prev = 1.0, p = x;
      out[0] = std::sqrt(0.5);
      if (n > 1) out[1] = std::sqrt(1.5) * x;
      for (std::size_t k = 1; k + 1 < n; ++k) {
        const double next = ((2.0 * k + 1.0) * x * p - static_cast<double>(k) * p_prev) / (k + 1.0);
        p_prev = p;
        p = next;
        out[k + 1] = std::sqrt((2.0 * (k + 1) + 1.0) / 2.0) * p;
      }
      return;
    }
    case BasisKind::Fourier:
      for (std::size_t k = 0; k < n; ++k) out[k] = basis_eval(spec, k, x);
      return;
    case BasisKind::Walsh: {
      const std::size_t cell = detail::dyadic_cell(x, n);
      for (std::size_t k = 0; k < n; ++k) out[k] = walsh_value(k, cell, spec.level());
      return;
    }
    case BasisKind::Haar: {
      const std::size_t cell = detail::dyadic_cell(x, n);
      for (std::size_t k = 0; k < n; ++k) out[k] = haar_value(k, cell, spec.level());
      return;
    }
    case BasisKind::NonstandardHaar2D: break;
  }
}

inline std::vector<double> basis_eval_vector(const BasisSpec& spec, double x) {
  std::vector<double> out(spec.size());
  basis_eval_into(spec, x, out);
  return out;
}

/// 2^n x 2^n Hadamard matrix with rows in sequency order (row r has r sign
/// changes).
inline Matrix sequency_hadamard(unsigned n) {
  if (n > 20) throw ConfigError("Hadamard order too large");
  const std::size_t size = std::size_t{1} << n;
  Matrix h(size, size);
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c) h(r, c) = walsh_value(r, c, n);
  return h;
}

// ---------------------------------------------------------------------------
// Nonstandard 2D Haar

/// Type of a nonstandard Haar function: first letter acts on x, second on y
/// (S = scaling, M = mother wavelet). SS exists at level 0 only.
enum class NSType { SS, SM, MS, MM };

inline std::string_view to_string(NSType t) {
  switch (t) {
    case NSType::SS: return "SS";
    case NSType::SM: return "SM";
    case NSType::MS: return "MS";
    case NSType::MM: return "MM";
  }
  return "?";
}

struct NSIndex {
  unsigned level = 0;
  NSType type = NSType::SS;
  std::size_t jx = 0;
  std::size_t jy = 0;
  friend bool operator==(const NSIndex&, const NSIndex&) = default;
};

inline void check_ns_index(const NSIndex& idx) {
  if (idx.level > 30) throw IndexError("nonstandard Haar level out of range");
  const std::size_t cells = std::size_t{1} << idx.level;
  if (idx.jx >= cells || idx.jy >= cells) throw IndexError("nonstandard Haar cell out of range");
  if (idx.type == NSType::SS && idx.level != 0)
    throw IndexError("SS function exists at level 0 only");
}

/// c * a(2^i x - jx) * b(2^i y - jy) with c = 2^i (unit L2 norm on the square).
inline double nonstandard_haar_eval(const NSIndex& idx, double x, double y) {
  check_ns_index(idx);
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
    throw DomainError("nonstandard Haar point outside the unit square");
  const double scale = std::ldexp(1.0, static_cast<int>(idx.level));
  const double tx = scale * detail::clamp_unit(x) - static_cast<double>(idx.jx);
  const double ty = scale * detail::clamp_unit(y) - static_cast<double>(idx.jy);
  const bool mx = idx.type == NSType::MS || idx.type == NSType::MM;
  const bool my = idx.type == NSType::SM || idx.type == NSType::MM;
  const double fx = mx ? detail::haar_mother(tx) : detail::haar_scaling(tx);
  const double fy = my ? detail::haar_mother(ty) : detail::haar_scaling(ty);
  return scale * fx * fy;
}

/// Canonical ordering of the 4^L functions up to level L-1: SS first, then by
/// level, cell row jy, cell column jx, and type SM, MS, MM.
inline std::vector<NSIndex> nonstandard_indices(unsigned L) {
  std::vector<NSIndex> out;
  out.reserve(std::size_t{1} << (2 * L));
  out.push_back({0, NSType::SS, 0, 0});
  for (unsigned i = 0; i < L; ++i) {
    const std::size_t cells = std::size_t{1} << i;
    for (std::size_t jy = 0; jy < cells; ++jy)
      for (std::size_t jx = 0; jx < cells; ++jx)
        for (NSType t : {NSType::SM, NSType::MS, NSType::MM}) out.push_back({i, t, jx, jy});
  }
  return out;
}

}  // namespace spectral_indep
