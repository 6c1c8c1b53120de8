#pragma once

// Seeded random instances for the property suites.

#include <random>

#include "gml/matrix_algebra.hpp"
#include "gml/metaplectic.hpp"
#include "gml/seq_algebra.hpp"
#include "gml/weyl.hpp"

namespace gml::gen {

using Rng = std::mt19937_64;

inline cplx gaussian_complex(Rng& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng)};
}

/// Up to max_terms entries with coordinates in [-radius, radius]^dim.
inline SparseSeq sparse_seq(Rng& rng, int dim, int max_terms = 8, long radius = 5) {
  std::uniform_int_distribution<int> terms(1, max_terms);
  std::uniform_int_distribution<long> coord(-radius, radius);
  SparseSeq a(dim);
  const int count = terms(rng);
  for (int i = 0; i < count; ++i) {
    SparseSeq::Index n(dim);
    for (auto& c : n) c = coord(rng);
    a.add(n, gaussian_complex(rng));
  }
  return a;
}

/// Rescaled so that its quasi-norm equals target.
inline SparseSeq with_qnorm(SparseSeq a, const QParams& p, double target) {
  const double r = qnorm(a, p);
  return r > 0.0 ? (target / r) * std::move(a) : a;
}

/// Lattice matrix with entries random * (1 + |lambda - lambda'|)^{-decay}.
inline Eigen::MatrixXcd decaying_matrix(Rng& rng, long n, double decay = 3.0) {
  Eigen::MatrixXcd a(n * n, n * n);
  for (long r = 0; r < n * n; ++r)
    for (long c = 0; c < n * n; ++c) {
      const long dk = centered(r / n - c / n, n), dl = centered(r % n - c % n, n);
      a(r, c) = gaussian_complex(rng) * std::pow(1.0 + std::hypot(double(dk), double(dl)), -decay);
    }
  return a;
}

/// 1 + amp * sum_{|zeta|_inf <= band} c_zeta e^{2 pi i (zeta_1 x + zeta_2 xi)/N}
/// with sum |c_zeta| = 1, so ||Op(sigma) - I|| <= amp.
inline Symbol smooth_symbol(Rng& rng, long n, double amp = 0.3, long band = 2) {
  Symbol sigma = Symbol::Constant(n, n, 1.0);
  Symbol pert = Symbol::Zero(n, n);
  double total = 0.0;
  for (long z1 = -band; z1 <= band; ++z1)
    for (long z2 = -band; z2 <= band; ++z2) {
      const cplx c = gaussian_complex(rng) / std::pow(1.0 + std::hypot(double(z1), double(z2)), 2.0);
      total += std::abs(c);
      for (long x = 0; x < n; ++x)
        for (long xi = 0; xi < n; ++xi) pert(x, xi) += c * root_of_unity(z1 * x + z2 * xi, n);
    }
  return sigma + (amp / total) * pert;
}

/// 1 + amp * periodized Gaussian bump (peak 1 at the origin).
inline Symbol gaussian_bump_symbol(long n, double amp = 0.1) {
  const Signal g = periodized_gaussian(n);
  const Symbol bump = (g * g.transpose()) / (g(0) * g(0));
  return Symbol::Constant(n, n, 1.0) + amp * bump;
}

inline Symbol random_symbol(Rng& rng, long n) {
  Symbol s(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) s(i, j) = gaussian_complex(rng);
  return s;
}

inline SympMat symplectic(Rng& rng, long n) {
  const auto all = all_symplectic(n);
  std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
  return all[pick(rng)];
}

}  // namespace gml::gen
