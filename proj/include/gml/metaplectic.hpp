#pragma once

// SL(2, Z_N) for an odd prime N, its generators
//   J = [[0,1],[-1,0]],  Chirp(C) = [[1,0],[C,1]],  Dilate(a) = [[1/a,0],[0,a]],
// and the finite metaplectic operators
//   mu(J) f = unitary DFT,  mu(Chirp(C)) f(t) = e^{2 pi i h C t^2/N} f(t),
//   mu(Dilate(a)) f(t) = f(a t),
// which satisfy mu(chi) pi(z) mu(chi)^{-1} = c pi(chi z), |c| = 1.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <string>
#include <vector>

#include "gml/core.hpp"
#include "gml/phase_space.hpp"

namespace gml {

class SympMat {
 public:
  SympMat(long a, long b, long c, long d, long n) : n_(n) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("SympMat: modulus must be odd and >= 3");
    a_ = mod(a, n);
    b_ = mod(b, n);
    c_ = mod(c, n);
    d_ = mod(d, n);
    if (mod(a_ * d_ - b_ * c_, n) != 1) {
      throw invalid_symplectic("SympMat: determinant is not 1 mod " + std::to_string(n));
    }
  }

  static SympMat identity(long n) { return {1, 0, 0, 1, n}; }
  static SympMat standard_j(long n) { return {0, 1, -1, 0, n}; }
  static SympMat chirp(long c, long n) { return {1, 0, c, 1, n}; }
  static SympMat dilate(long a, long n) { return {inverse_mod(a, n), 0, 0, a, n}; }

  long a() const { return a_; }
  long b() const { return b_; }
  long c() const { return c_; }
  long d() const { return d_; }
  long N() const { return n_; }

  LatticePoint apply(LatticePoint z) const {
    return {mod(a_ * z.k + b_ * z.l, n_), mod(c_ * z.k + d_ * z.l, n_)};
  }

  SympMat inverse() const { return {d_, -b_, -c_, a_, n_}; }

  friend SympMat operator*(const SympMat& x, const SympMat& y) {
    if (x.n_ != y.n_) throw dimension_mismatch("SympMat: modulus mismatch");
    return {x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_, x.c_ * y.a_ + x.d_ * y.c_,
            x.c_ * y.b_ + x.d_ * y.d_, x.n_};
  }

  friend bool operator==(const SympMat&, const SympMat&) = default;

 private:
  long a_ = 1, b_ = 0, c_ = 0, d_ = 1, n_ = 3;
};

/// All of SL(2, Z_N) in lexicographic (a, b, c, d) order.
inline std::vector<SympMat> all_symplectic(long n) {
  std::vector<SympMat> out;
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      for (long c = 0; c < n; ++c)
        for (long d = 0; d < n; ++d)
          if (mod(a * d - b * c, n) == 1) out.emplace_back(a, b, c, d, n);
  return out;
}

struct Generator {
  enum class Kind { j, chirp, dilate };
  Kind kind = Kind::j;
  long param = 0;

  static Generator j() { return {Kind::j, 0}; }
  static Generator chirp(long c) { return {Kind::chirp, c}; }
  static Generator dilate(long a) { return {Kind::dilate, a}; }

  friend bool operator==(const Generator&, const Generator&) = default;
};

using GeneratorWord = std::vector<Generator>;

inline std::string to_string(const Generator& g) {
  switch (g.kind) {
    case Generator::Kind::j: return "J";
    case Generator::Kind::chirp: return "Chirp(" + std::to_string(g.param) + ")";
    case Generator::Kind::dilate: return "Dilate(" + std::to_string(g.param) + ")";
  }
  return {};
}

inline SympMat generator_matrix(const Generator& g, long n) {
  switch (g.kind) {
    case Generator::Kind::j: return SympMat::standard_j(n);
    case Generator::Kind::chirp: return SympMat::chirp(g.param, n);
    case Generator::Kind::dilate:
      if (mod(g.param, n) == 0) throw std::invalid_argument("Dilate(0) is not invertible");
      return SympMat::dilate(g.param, n);
  }
  return SympMat::identity(n);
}

inline SympMat word_matrix(const GeneratorWord& word, long n) {
  SympMat m = SympMat::identity(n);
  for (const auto& g : word) m = m * generator_matrix(g, n);
  return m;
}

namespace detail {
inline void push_chirp(GeneratorWord& w, long c, long n) {
  if (mod(c, n) != 0) w.push_back(Generator::chirp(mod(c, n)));
}
inline void push_dilate(GeneratorWord& w, long a, long n) {
  if (mod(a, n) != 1) w.push_back(Generator::dilate(mod(a, n)));
}
}  // namespace detail

/// Word of length <= 4 whose product is chi:
///   b invertible:  chi = Chirp(d/b) Dilate(1/b) J Chirp(a/b)
///   b = 0:         chi = Chirp(c/a) Dilate(1/a)
inline GeneratorWord factor_generators(const SympMat& chi) {
  const long n = chi.N();
  if (!is_prime(n)) throw std::invalid_argument("factor_generators: modulus must be prime");
  GeneratorWord w;
  if (chi.b() != 0) {
    const long binv = inverse_mod(chi.b(), n);
    detail::push_chirp(w, chi.d() * binv, n);
    detail::push_dilate(w, binv, n);
    w.push_back(Generator::j());
    detail::push_chirp(w, chi.a() * binv, n);
  } else {
    const long ainv = inverse_mod(chi.a(), n);
    detail::push_chirp(w, chi.c() * ainv, n);
    detail::push_dilate(w, ainv, n);
  }
  return w;
}

/// Independent route: factor chi J^{-1}, then append J.
inline GeneratorWord alternate_factorization(const SympMat& chi) {
  GeneratorWord w = factor_generators(chi * SympMat::standard_j(chi.N()).inverse());
  w.push_back(Generator::j());
  return w;
}

inline Eigen::MatrixXcd generator_operator(const Generator& g, long n) {
  const long h = half_mod(n);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
  switch (g.kind) {
    case Generator::Kind::j: {
      const double s = 1.0 / std::sqrt(static_cast<double>(n));
      for (long x = 0; x < n; ++x)
        for (long y = 0; y < n; ++y) u(x, y) = s * root_of_unity(-x * y, n);
      break;
    }
    case Generator::Kind::chirp:
      for (long t = 0; t < n; ++t) u(t, t) = root_of_unity(mod(h * g.param, n) * mod(t * t, n), n);
      break;
    case Generator::Kind::dilate: {
      if (mod(g.param, n) == 0) throw std::invalid_argument("Dilate(0) is not invertible");
      for (long t = 0; t < n; ++t) u(t, mod(g.param * t, n)) = 1.0;
      break;
    }
  }
  return u;
}

/// Product of the generator operators in word order.
inline Eigen::MatrixXcd build_metaplectic(const GeneratorWord& word, long n) {
  if (!is_prime(n) || n == 2) throw std::invalid_argument("build_metaplectic: N must be an odd prime");
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  for (const auto& g : word) u = u * generator_operator(g, n);
  return u;
}

inline Eigen::MatrixXcd metaplectic_operator(const SympMat& chi) {
  return build_metaplectic(factor_generators(chi), chi.N());
}

inline double operator_norm(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

inline double unitarity_defect(const Eigen::MatrixXcd& u) {
  return operator_norm(u.adjoint() * u - Eigen::MatrixXcd::Identity(u.cols(), u.cols()));
}

/// Unimodular c maximising Re tr((c b)^* a); minimises ||a - c b||_F.
inline cplx best_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const cplx overlap = (b.adjoint() * a).trace();
  return std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0);
}

/// max |a - c b| entrywise after aligning the global phase.
inline double phase_aligned_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - best_phase(a, b) * b).cwiseAbs().maxCoeff();
}

/// max_z min_{|c|=1} ||U pi(z) U^{-1} - c pi(chi z)||_op, with c taken as the
/// Frobenius-optimal phase (exact whenever the two are proportional).
inline double intertwine_defect(const SympMat& chi, const Eigen::MatrixXcd& u, const GaborSystem& sys) {
  const long n = sys.N();
  if (u.rows() != n || u.cols() != n || chi.N() != n) throw dimension_mismatch("intertwine_defect: modulus mismatch");
  if (unitarity_defect(u) > 1e-8) throw std::invalid_argument("intertwine_defect: operator is not unitary");
  const Eigen::MatrixXcd uinv = u.adjoint();
  double worst = 0.0;
  for (long k = 0; k < n; ++k) {
    for (long l = 0; l < n; ++l) {
      const Eigen::MatrixXcd conj = u * tf_shift_matrix({k, l}, n) * uinv;
      const Eigen::MatrixXcd target = tf_shift_matrix(chi.apply({k, l}), n);
      worst = std::max(worst, operator_norm(conj - best_phase(conj, target) * target));
    }
  }
  return worst;
}

}  // namespace gml
