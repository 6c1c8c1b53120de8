#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

namespace gml {

using cplx = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// ---------------------------------------------------------------------------
// Errors. Precondition failures derive from std::invalid_argument, numerical
// failures from gml::numerical_error, so callers can map them to exit codes.
// ---------------------------------------------------------------------------

struct dimension_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct invalid_symplectic : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Neumann series requested for an element of quasi-norm >= 1.
struct contraction_violation : numerical_error {
  using numerical_error::numerical_error;
};

/// Fourier series vanishes (numerically) on the sampling grid.
struct vanishing_fourier_series : numerical_error {
  using numerical_error::numerical_error;
};

struct not_invertible : numerical_error {
  using numerical_error::numerical_error;
};

// ---------------------------------------------------------------------------
// Quasi-norm parameters of l^q_{v_s}.
// ---------------------------------------------------------------------------

struct QParams {
  double q = 1.0;
  double s = 0.0;

  QParams() = default;
  QParams(double q_, double s_) : q(q_), s(s_) {
    if (!(q > 0.0 && q <= 1.0)) {
      throw std::invalid_argument("QParams: q must lie in (0,1], got " + std::to_string(q));
    }
    if (!(s >= 0.0)) {
      throw std::invalid_argument("QParams: s must be >= 0, got " + std::to_string(s));
    }
  }
};

/// Polynomial weight (1 + |lam|)^s, |.| the Euclidean norm.
template <class Int>
double weight_eval(std::span<const Int> lam, double s) {
  if (!(s >= 0.0)) {
    throw std::invalid_argument("weight_eval: negative weight order");
  }
  double r2 = 0.0;
  for (auto v : lam) r2 += static_cast<double>(v) * static_cast<double>(v);
  return std::pow(1.0 + std::sqrt(r2), s);
}

inline double weight_eval(std::initializer_list<long> lam, double s) {
  return weight_eval(std::span<const long>(lam.begin(), lam.size()), s);
}

// ---------------------------------------------------------------------------
// Residue arithmetic on Z_N.
// ---------------------------------------------------------------------------

inline long mod(long v, long n) {
  long r = v % n;
  return r < 0 ? r + n : r;
}

/// Representative of v mod n in (-n/2, n/2]; unique minimal |.| for odd n.
inline long centered(long v, long n) {
  long r = mod(v, n);
  return 2 * r > n ? r - n : r;
}

inline long inverse_mod(long a, long n) {
  long t = 0, new_t = 1;
  long r = n, new_r = mod(a, n);
  while (new_r != 0) {
    long quot = r / new_r;
    t = t - quot * new_t;
    std::swap(t, new_t);
    r = r - quot * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) {
    throw std::invalid_argument("inverse_mod: " + std::to_string(a) + " not invertible mod " +
                                std::to_string(n));
  }
  return mod(t, n);
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Multiplicative inverse of 2 mod an odd n.
inline long half_mod(long n) { return (n + 1) / 2; }

inline cplx unit_phase(double turns) { return std::polar(1.0, two_pi * turns); }

/// e^{2 pi i num / n} with num reduced first to keep the argument small.
inline cplx root_of_unity(long num, long n) {
  return unit_phase(static_cast<double>(mod(num, n)) / static_cast<double>(n));
}

}  // namespace gml
