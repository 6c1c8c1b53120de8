#pragma once

// Matrices on the lattice Z_N x Z_N with l^q_{v_s} off-diagonal decay.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <optional>

#include "gml/core.hpp"
#include "gml/phase_space.hpp"

namespace gml {

/// Nonnegative field on Z_N x Z_N; entry (k, l) holds the value at the
/// offset whose centered representative is (centered(k), centered(l)).
struct DecayProfile {
  Eigen::MatrixXd values;

  long N() const { return values.rows(); }
  double at(LatticePoint mu) const { return values(mod(mu.k, N()), mod(mu.l, N())); }
  double& at(LatticePoint mu) { return values(mod(mu.k, N()), mod(mu.l, N())); }
  double peak() const { return values.maxCoeff(); }
};

/// Side N of a Lambda-indexed matrix with N^2 rows.
inline long lattice_side(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw dimension_mismatch("lattice matrix must be square");
  const auto n = static_cast<long>(std::lround(std::sqrt(static_cast<double>(a.rows()))));
  if (n * n != a.rows()) throw dimension_mismatch("lattice matrix size is not N^2");
  return n;
}

/// d_A(mu) = max_lambda |a_{lambda, lambda - mu}|.
inline DecayProfile diagonal_envelope(const Eigen::MatrixXcd& a) {
  const long n = lattice_side(a);
  DecayProfile d{Eigen::MatrixXd::Zero(n, n)};
  for (long lk = 0; lk < n; ++lk) {
    for (long ll = 0; ll < n; ++ll) {
      const Eigen::Index row = lk * n + ll;
      for (long mk = 0; mk < n; ++mk) {
        for (long ml = 0; ml < n; ++ml) {
          const double v = std::abs(a(row, lattice_index(lk - mk, ll - ml, n)));
          double& slot = d.values(mk, ml);
          slot = std::max(slot, v);
        }
      }
    }
  }
  return d;
}

/// ||d||_{l^q_{v_s}} with v_s evaluated on centered offsets.
inline double profile_qnorm(const DecayProfile& d, const QParams& p) {
  const long n = d.N();
  double acc = 0.0;
  for (long k = 0; k < n; ++k) {
    for (long l = 0; l < n; ++l) {
      const double v = d.values(k, l);
      if (v == 0.0) continue;
      acc += std::pow(v * weight_eval({centered(k, n), centered(l, n)}, p.s), p.q);
    }
  }
  return std::pow(acc, 1.0 / p.q);
}

inline double cb_norm(const Eigen::MatrixXcd& a, const QParams& p) {
  return profile_qnorm(diagonal_envelope(a), p);
}

/// Cyclic convolution on Z_N x Z_N.
inline DecayProfile cyclic_convolve(const DecayProfile& a, const DecayProfile& b) {
  const long n = a.N();
  if (b.N() != n) throw dimension_mismatch("cyclic_convolve: size mismatch");
  DecayProfile out{Eigen::MatrixXd::Zero(n, n)};
  for (long ik = 0; ik < n; ++ik)
    for (long il = 0; il < n; ++il) {
      const double x = a.values(ik, il);
      if (x == 0.0) continue;
      for (long jk = 0; jk < n; ++jk)
        for (long jl = 0; jl < n; ++jl) out.values((ik + jk) % n, (il + jl) % n) += x * b.values(jk, jl);
    }
  return out;
}

/// Matrix of c -> a * c (cyclic): entry (lambda, lambda') = a(lambda - lambda').
inline Eigen::MatrixXcd convolution_matrix(const LatticeField& a) {
  const long n = a.rows();
  Eigen::MatrixXcd m(n * n, n * n);
  for (long k = 0; k < n; ++k)
    for (long l = 0; l < n; ++l)
      for (long k2 = 0; k2 < n; ++k2)
        for (long l2 = 0; l2 < n; ++l2) m(k * n + l, k2 * n + l2) = a(mod(k - k2, n), mod(l - l2, n));
  return m;
}

inline LatticeField apply_to_sequence(const Eigen::MatrixXcd& a, const LatticeField& c) {
  const long n = lattice_side(a);
  if (c.rows() != n || c.cols() != n) throw dimension_mismatch("apply_to_sequence: size mismatch");
  return unflatten(a * flatten(c), n);
}

/// ||c||_{l^q_{v_s}} on the centered lattice.
inline double field_qnorm(const LatticeField& c, const QParams& p) {
  return profile_qnorm(DecayProfile{c.cwiseAbs()}, p);
}

/// Moore-Penrose inverse through the SVD; singular values <= rank_tol are
/// treated as zero. Default tolerance: 1e-10 times the largest singular value.
inline Eigen::MatrixXcd pseudo_inverse(const Eigen::MatrixXcd& a, std::optional<double> rank_tol = std::nullopt) {
  if (rank_tol && !(*rank_tol > 0.0)) throw std::invalid_argument("pseudo_inverse: rank_tol must be positive");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cut = rank_tol.value_or(sv.size() > 0 ? 1e-10 * sv(0) : 0.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) inv(i) = 1.0 / sv(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

}  // namespace gml
