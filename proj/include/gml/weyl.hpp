#pragma once

// Discrete Wigner distribution and Weyl calculus on Z_N (N odd), Gabor
// matrices, and the finite M^{inf,q}_{1 (x) v_s} symbol quasi-norm.
//
// Conventions, h = (N+1)/2 the inverse of 2 mod N:
//   W(f,g)(x,xi) = sum_t f(x+ht) conj(g(x-ht)) e^{-2 pi i xi t/N}
//   Op(sigma)(x,y) = (1/N) sum_xi sigma(h(x+y), xi) e^{2 pi i xi (x-y)/N}
// so that <Op(sigma) f, g> = (1/N) sum sigma conj(W(g,f)) holds exactly.

#include <Eigen/Dense>

#include "gml/core.hpp"
#include "gml/dft.hpp"
#include "gml/parallel.hpp"
#include "gml/phase_space.hpp"

namespace gml {

/// Weyl symbol on Z_N x Z_N, entry (x, xi).
using Symbol = Eigen::MatrixXcd;
/// Operator on signals of length N.
using OperatorMatrix = Eigen::MatrixXcd;
/// Matrix indexed by the lattice (row mu, column lambda, both row-major).
using GaborMatrix = Eigen::MatrixXcd;

inline void require_odd_modulus(long n, const char* where) {
  if (n < 1 || n % 2 == 0) throw std::invalid_argument(std::string(where) + ": N must be odd");
}

inline Symbol wigner(const Signal& f, const Signal& g) {
  require_same_modulus(f.size(), g.size(), "wigner");
  const long n = f.size();
  require_odd_modulus(n, "wigner");
  const long h = half_mod(n);
  Symbol w(n, n);
  Eigen::VectorXcd u(n);
  for (long x = 0; x < n; ++x) {
    for (long t = 0; t < n; ++t) u(t) = f(mod(x + h * t, n)) * std::conj(g(mod(x - h * t, n)));
    w.row(x) = dft::forward(u).transpose();
  }
  return w;
}

inline OperatorMatrix weyl_quantize(const Symbol& sigma) {
  const long n = sigma.rows();
  if (sigma.cols() != n) throw dimension_mismatch("weyl_quantize: symbol is not square");
  require_odd_modulus(n, "weyl_quantize");
  const long h = half_mod(n);
  OperatorMatrix kernel(n, n);
  for (long centre = 0; centre < n; ++centre) {
    const Eigen::VectorXcd c = dft::backward(sigma.row(centre).transpose()) / static_cast<double>(n);
    for (long t = 0; t < n; ++t) kernel(mod(centre + h * t, n), mod(centre - h * t, n)) = c(t);
  }
  return kernel;
}

/// Exact inverse of weyl_quantize.
inline Symbol weyl_dequantize(const OperatorMatrix& op) {
  const long n = op.rows();
  if (op.cols() != n) throw dimension_mismatch("weyl_dequantize: operator is not square");
  require_odd_modulus(n, "weyl_dequantize");
  const long h = half_mod(n);
  Symbol sigma(n, n);
  Eigen::VectorXcd u(n);
  for (long centre = 0; centre < n; ++centre) {
    for (long t = 0; t < n; ++t) u(t) = op(mod(centre + h * t, n), mod(centre - h * t, n));
    sigma.row(centre) = dft::forward(u).transpose();
  }
  return sigma;
}

/// Entry (mu, lambda) = <T pi(lambda) g, pi(mu) g>.
inline GaborMatrix gabor_matrix(const OperatorMatrix& op, const GaborSystem& sys) {
  const long n = sys.N();
  if (op.rows() != n || op.cols() != n) throw dimension_mismatch("gabor_matrix: modulus mismatch");
  GaborMatrix m(n * n, n * n);
  parallel_for(n * n, [&](long col) {
    const LatticePoint lambda{col / n, col % n};
    const Signal image = op * sys.atom(lambda);
    m.col(col) = flatten(stft(image, sys.window()));
  });
  return m;
}

/// Restricted analysis map V_g^Lambda as a flattened coefficient vector.
inline Eigen::VectorXcd analysis(const Signal& f, const GaborSystem& sys) {
  return flatten(stft(f, sys.window()));
}

/// Tensor Gaussian on Z_N x Z_N with unit l^2 norm.
inline Symbol default_symbol_window(long n) {
  const Signal g = periodized_gaussian(n);
  Symbol phi = g * g.transpose();
  return phi / phi.norm();
}

/// ||zeta -> max_z |V_Phi sigma(z, zeta)| ||_{l^q_{v_s}}, with
/// V_Phi sigma(z, zeta) = sum_w sigma(w) conj(Phi(w - z)) e^{-2 pi i zeta.w / N}.
inline double modulation_norm(const Symbol& sigma, const QParams& p, const Symbol& phi) {
  const long n = sigma.rows();
  if (sigma.cols() != n || phi.rows() != n || phi.cols() != n) {
    throw dimension_mismatch("modulation_norm: symbol and window sizes differ");
  }
  if (phi.isZero(0.0)) throw std::invalid_argument("modulation_norm: zero window");
  std::vector<Eigen::MatrixXd> partial(n * n);
  parallel_for(n * n, [&](long zi) {
    const long zx = zi / n, zxi = zi % n;
    Eigen::MatrixXcd prod(n, n);
    for (long a = 0; a < n; ++a)
      for (long b = 0; b < n; ++b) prod(a, b) = sigma(a, b) * std::conj(phi(mod(a - zx, n), mod(b - zxi, n)));
    partial[zi] = dft::forward2(prod).cwiseAbs();
  });
  Eigen::MatrixXd sup = Eigen::MatrixXd::Zero(n, n);
  for (const auto& m : partial) sup = sup.cwiseMax(m);
  double acc = 0.0;
  for (long a = 0; a < n; ++a) {
    for (long b = 0; b < n; ++b) {
      if (sup(a, b) == 0.0) continue;
      const double w = weight_eval({centered(a, n), centered(b, n)}, p.s);
      acc += std::pow(sup(a, b) * w, p.q);
    }
  }
  return std::pow(acc, 1.0 / p.q);
}

inline double modulation_norm(const Symbol& sigma, const QParams& p) {
  return modulation_norm(sigma, p, default_symbol_window(sigma.rows()));
}

}  // namespace gml
