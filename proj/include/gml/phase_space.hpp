#pragma once

// Signals on Z_N, time-frequency shifts, the STFT on the full lattice
// Z_N x Z_N, and Gabor frames over it.

#include <Eigen/Dense>
#include <random>

#include "gml/core.hpp"
#include "gml/dft.hpp"

namespace gml {

using Signal = Eigen::VectorXcd;
/// Complex field on Z_N x Z_N, entry (k, l).
using LatticeField = Eigen::MatrixXcd;

struct LatticePoint {
  long k = 0;  // time
  long l = 0;  // frequency

  LatticePoint reduced(long n) const { return {mod(k, n), mod(l, n)}; }
  LatticePoint centered_rep(long n) const { return {centered(k, n), centered(l, n)}; }
  friend LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.k + b.k, a.l + b.l}; }
  friend LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.k - b.k, a.l - b.l}; }
  friend LatticePoint operator-(LatticePoint a) { return {-a.k, -a.l}; }
  friend bool operator==(LatticePoint, LatticePoint) = default;
};

/// Row-major position of (k, l) in a length-N^2 coefficient vector.
inline Eigen::Index lattice_index(long k, long l, long n) { return mod(k, n) * n + mod(l, n); }
inline Eigen::Index lattice_index(LatticePoint z, long n) { return lattice_index(z.k, z.l, n); }

inline Eigen::VectorXcd flatten(const LatticeField& c) {
  const long n = c.rows();
  Eigen::VectorXcd v(n * n);
  for (long k = 0; k < n; ++k)
    for (long l = 0; l < n; ++l) v(k * n + l) = c(k, l);
  return v;
}

inline LatticeField unflatten(const Eigen::VectorXcd& v, long n) {
  if (v.size() != n * n) throw dimension_mismatch("unflatten: length is not N^2");
  LatticeField c(n, n);
  for (long k = 0; k < n; ++k)
    for (long l = 0; l < n; ++l) c(k, l) = v(k * n + l);
  return c;
}

inline void require_same_modulus(long n1, long n2, const char* where) {
  if (n1 != n2) {
    throw dimension_mismatch(std::string(where) + ": modulus mismatch (" + std::to_string(n1) +
                             " vs " + std::to_string(n2) + ")");
  }
}

/// (pi(z) f)(t) = e^{2 pi i l t / N} f(t - k).
inline Signal tf_shift(LatticePoint z, const Signal& f) {
  const long n = f.size();
  Signal out(n);
  for (long t = 0; t < n; ++t) out(t) = root_of_unity(z.l * t, n) * f(mod(t - z.k, n));
  return out;
}

/// pi(z) as an N x N unitary matrix.
inline Eigen::MatrixXcd tf_shift_matrix(LatticePoint z, long n) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (long t = 0; t < n; ++t) m(t, mod(t - z.k, n)) = root_of_unity(z.l * t, n);
  return m;
}

/// V_g f(k, l) = <f, pi(k, l) g>, one length-N FFT per time shift k.
inline LatticeField stft(const Signal& f, const Signal& g) {
  require_same_modulus(f.size(), g.size(), "stft");
  if (g.isZero(0.0)) throw std::invalid_argument("stft: zero window");
  const long n = f.size();
  LatticeField out(n, n);
  Eigen::VectorXcd prod(n);
  for (long k = 0; k < n; ++k) {
    for (long t = 0; t < n; ++t) prod(t) = f(t) * std::conj(g(mod(t - k, n)));
    out.row(k) = dft::forward(prod).transpose();
  }
  return out;
}

/// g(t) = sum_j exp(-pi c (t - jN)^2 / N), t in Z_N.
inline Signal periodized_gaussian(long n, double c = 1.0) {
  Signal g(n);
  for (long t = 0; t < n; ++t) {
    double acc = 0.0;
    for (long j = -4; j <= 4; ++j) {
      const double d = static_cast<double>(t - j * n);
      acc += std::exp(-std::numbers::pi * c * d * d / static_cast<double>(n));
    }
    g(t) = acc;
  }
  return g;
}

inline Signal unit_signal(long n, long at = 0) {
  Signal f = Signal::Zero(n);
  f(mod(at, n)) = 1.0;
  return f;
}

template <class Rng>
Signal random_signal(long n, Rng& rng) {
  std::normal_distribution<double> gauss;
  Signal f(n);
  for (long t = 0; t < n; ++t) f(t) = cplx(gauss(rng), gauss(rng));
  return f;
}

/// Gabor system over the full lattice Z_N x Z_N.
class GaborSystem {
 public:
  enum class Normalization { parseval, none };

  explicit GaborSystem(Signal window, Normalization norm = Normalization::parseval)
      : window_(std::move(window)) {
    if (window_.size() < 1 || window_.isZero(0.0)) {
      throw std::invalid_argument("GaborSystem: window must be nonzero");
    }
    if (norm == Normalization::parseval) {
      scale_ = 1.0 / std::sqrt(static_cast<double>(window_.size()) * window_.squaredNorm());
      window_ *= scale_;
    }
  }

  static GaborSystem gaussian(long n, double c = 1.0) { return GaborSystem(periodized_gaussian(n, c)); }

  long N() const { return window_.size(); }
  const Signal& window() const { return window_; }
  /// Factor applied to the supplied window (1 when not normalized).
  double scale() const { return scale_; }
  /// Frame constant N ||g||^2 of the full lattice.
  double frame_constant() const { return static_cast<double>(N()) * window_.squaredNorm(); }
  bool is_parseval(double tol = 1e-12) const { return std::abs(frame_constant() - 1.0) <= tol; }

  Signal atom(LatticePoint z) const { return tf_shift(z, window_); }

 private:
  Signal window_;
  double scale_ = 1.0;
};

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Extreme eigenvalues of S = sum_lambda <., pi(lambda) g> pi(lambda) g.
inline FrameBounds frame_bounds(const GaborSystem& sys) {
  const long n = sys.N();
  Eigen::MatrixXcd frame_op = Eigen::MatrixXcd::Zero(n, n);
  for (long k = 0; k < n; ++k) {
    for (long l = 0; l < n; ++l) {
      const Signal a = sys.atom({k, l});
      frame_op.noalias() += a * a.adjoint();
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(frame_op, Eigen::EigenvaluesOnly);
  return {eig.eigenvalues().minCoeff(), eig.eigenvalues().maxCoeff()};
}

/// sum_lambda c(lambda) pi(lambda) g; inverse of stft for a Parseval system.
inline Signal synthesize(const LatticeField& coeffs, const GaborSystem& sys) {
  const long n = sys.N();
  if (coeffs.rows() != n || coeffs.cols() != n) {
    throw dimension_mismatch("synthesize: coefficient field is not N x N");
  }
  if (!sys.is_parseval(1e-10)) throw std::invalid_argument("synthesize: system is not Parseval");
  const Signal& g = sys.window();
  Signal f = Signal::Zero(n);
  for (long k = 0; k < n; ++k) {
    // sum_l c(k,l) e^{2 pi i l t / N}
    const Eigen::VectorXcd mod_sum = dft::backward(coeffs.row(k).transpose());
    for (long t = 0; t < n; ++t) f(t) += mod_sum(t) * g(mod(t - k, n));
  }
  return f;
}

}  // namespace gml
