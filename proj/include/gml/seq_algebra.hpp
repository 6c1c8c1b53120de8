#pragma once

// Finitely supported sequences on Z^m as elements of the convolution
// quasi-algebra l^q_{v_s}(Z^m).

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "gml/core.hpp"
#include "gml/decay_fit.hpp"
#include "gml/dft.hpp"

namespace gml {

class SparseSeq {
 public:
  using Index = std::vector<long>;
  using Map = std::map<Index, cplx>;

  explicit SparseSeq(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("SparseSeq: dimension must be >= 1");
  }

  static SparseSeq delta(int dim) { return unit(Index(dim, 0)); }

  static SparseSeq unit(Index at, cplx value = 1.0) {
    SparseSeq a(static_cast<int>(at.size()));
    a.set(std::move(at), value);
    return a;
  }

  int dim() const { return dim_; }
  const Map& entries() const { return entries_; }
  size_t support_size() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  cplx operator[](const Index& n) const {
    auto it = entries_.find(n);
    return it == entries_.end() ? cplx{} : it->second;
  }

  /// Stores value at n; an exact zero erases the entry.
  void set(Index n, cplx value) {
    check_index(n);
    if (value == cplx{}) {
      entries_.erase(n);
    } else {
      entries_[std::move(n)] = value;
    }
  }

  void add(const Index& n, cplx value) {
    check_index(n);
    auto [it, inserted] = entries_.try_emplace(n, value);
    if (!inserted) {
      it->second += value;
      if (it->second == cplx{}) entries_.erase(it);
    }
  }

  SparseSeq& operator+=(const SparseSeq& other) {
    require_same_dim(other);
    for (const auto& [n, v] : other.entries_) add(n, v);
    return *this;
  }

  SparseSeq& operator-=(const SparseSeq& other) {
    require_same_dim(other);
    for (const auto& [n, v] : other.entries_) add(n, -v);
    return *this;
  }

  SparseSeq& operator*=(cplx c) {
    if (c == cplx{}) {
      entries_.clear();
      return *this;
    }
    for (auto& [n, v] : entries_) v *= c;
    return *this;
  }

  friend SparseSeq operator+(SparseSeq a, const SparseSeq& b) { return a += b; }
  friend SparseSeq operator-(SparseSeq a, const SparseSeq& b) { return a -= b; }
  friend SparseSeq operator*(cplx c, SparseSeq a) { return a *= c; }

  void require_same_dim(const SparseSeq& other) const {
    if (other.dim_ != dim_) {
      throw dimension_mismatch("SparseSeq: dimension mismatch (" + std::to_string(dim_) +
                               " vs " + std::to_string(other.dim_) + ")");
    }
  }

 private:
  void check_index(const Index& n) const {
    if (static_cast<int>(n.size()) != dim_) {
      throw dimension_mismatch("SparseSeq: index of wrong dimension");
    }
  }

  int dim_;
  Map entries_;
};

inline double weight_eval(const SparseSeq::Index& lam, double s) {
  return weight_eval(std::span<const long>(lam), s);
}

/// (sum |a(n)|^r w(n)^r)^{1/r} for r in (0, inf]; r = inf gives the weighted sup.
template <class Weight>
double lp_norm(const SparseSeq& a, double r, Weight&& weight) {
  if (!(r > 0.0)) throw std::invalid_argument("lp_norm: exponent must be positive");
  if (std::isinf(r)) {
    double m = 0.0;
    for (const auto& [n, v] : a.entries()) m = std::max(m, std::abs(v) * weight(n));
    return m;
  }
  double acc = 0.0;
  for (const auto& [n, v] : a.entries()) acc += std::pow(std::abs(v) * weight(n), r);
  return std::pow(acc, 1.0 / r);
}

inline double qnorm(const SparseSeq& a, const QParams& p) {
  return lp_norm(a, p.q, [&](const SparseSeq::Index& n) { return weight_eval(n, p.s); });
}

inline double l1_norm(const SparseSeq& a) {
  return lp_norm(a, 1.0, [](const SparseSeq::Index&) { return 1.0; });
}

inline SparseSeq convolve(const SparseSeq& a, const SparseSeq& b) {
  a.require_same_dim(b);
  SparseSeq out(a.dim());
  SparseSeq::Index n(a.dim());
  for (const auto& [i, x] : a.entries()) {
    for (const auto& [j, y] : b.entries()) {
      for (int k = 0; k < a.dim(); ++k) n[k] = i[k] + j[k];
      out.add(n, x * y);
    }
  }
  return out;
}

/// Entrywise product a(n) b(n).
inline SparseSeq pointwise_product(const SparseSeq& a, const SparseSeq& b) {
  a.require_same_dim(b);
  SparseSeq out(a.dim());
  for (const auto& [n, v] : a.entries()) {
    if (cplx w = b[n]; w != cplx{}) out.set(n, v * w);
  }
  return out;
}

inline SparseSeq abs_seq(const SparseSeq& a) {
  SparseSeq out(a.dim());
  for (const auto& [n, v] : a.entries()) out.set(n, std::abs(v));
  return out;
}

struct NeumannResult {
  SparseSeq inverse;   // s_n = delta + x + ... + x^n
  int degree = 0;      // n
  double x_norm = 0.0; // ||x||
  double tail_bound = 0.0; // (sum_{j>n} ||x||^{jq})^{1/q}
};

/// Closed-form q-norm tail of the geometric majorant beyond degree n.
inline double neumann_tail_bound(double x_norm, double q, int n) {
  if (x_norm == 0.0) return 0.0;
  const double rq = std::pow(x_norm, q);
  return std::pow(std::pow(rq, n + 1) / (1.0 - rq), 1.0 / q);
}

/// Truncated Neumann series for (delta - x)^{-1}; requires ||x|| < 1.
inline NeumannResult neumann_inverse(const SparseSeq& x, const QParams& p, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("neumann_inverse: tol must be positive");
  const double r = qnorm(x, p);
  if (!(r < 1.0)) {
    throw contraction_violation("neumann_inverse: ||x|| = " + std::to_string(r) + " >= 1");
  }
  NeumannResult res{SparseSeq::delta(x.dim()), 0, r, neumann_tail_bound(r, p.q, 0)};
  if (r == 0.0) return res;
  SparseSeq power = SparseSeq::delta(x.dim());
  while (res.tail_bound > tol) {
    power = convolve(power, x);
    res.inverse += power;
    ++res.degree;
    res.tail_bound = neumann_tail_bound(r, p.q, res.degree);
  }
  return res;
}

/// Fourier series sum_n a(n) e^{2 pi i n.xi}.
inline cplx fourier_series_eval(const SparseSeq& a, std::span<const double> xi) {
  if (static_cast<int>(xi.size()) != a.dim()) {
    throw dimension_mismatch("fourier_series_eval: point of wrong dimension");
  }
  cplx acc{};
  for (const auto& [n, v] : a.entries()) {
    double phase = 0.0;
    for (int k = 0; k < a.dim(); ++k) {
      phase += static_cast<double>(n[k]) * xi[k];
    }
    acc += v * unit_phase(phase - std::floor(phase));
  }
  return acc;
}

inline cplx fourier_series_eval(const SparseSeq& a, std::initializer_list<double> xi) {
  return fourier_series_eval(a, std::span<const double>(xi.begin(), xi.size()));
}

struct FourierInverseOptions {
  long grid = 0;                // samples per axis; 0 picks 4096 in 1-D, 256 in 2-D
  double decay_cutoff = 1e-14;  // coefficients below this magnitude are dropped
  double vanishing_floor = 1e-9; // relative to ||a||_1
};

struct FourierInverse {
  SparseSeq inverse;
  double residual_l1 = 0.0;      // ||a * b - delta||_1
  double grid_min = 0.0;         // min |F a| over the grid
  double exponential_rate = 0.0; // fitted decay of |b(n)|
  double polynomial_exponent = 0.0;
};

/// Inverse of a in l^1(Z^m), m <= 2, from samples of 1 / F a on an M^m grid.
inline FourierInverse invert_by_fourier(const SparseSeq& a, const FourierInverseOptions& opt = {}) {
  const int m = a.dim();
  const long M = opt.grid != 0 ? opt.grid : (m == 1 ? 4096 : 256);
  if (m > 2) throw std::invalid_argument("invert_by_fourier: dimension must be 1 or 2");
  if (M < 2) throw std::invalid_argument("invert_by_fourier: grid must be >= 2");
  if (a.is_zero()) throw vanishing_fourier_series("invert_by_fourier: zero sequence");
  for (int k = 0; k < m; ++k) {
    long lo = std::numeric_limits<long>::max(), hi = std::numeric_limits<long>::min();
    for (const auto& [n, v] : a.entries()) {
      lo = std::min(lo, n[k]);
      hi = std::max(hi, n[k]);
    }
    if (hi - lo >= M) throw std::invalid_argument("invert_by_fourier: support wider than grid");
  }

  const Eigen::Index rows = M, cols = (m == 2 ? M : 1);
  Eigen::MatrixXcd coeffs = Eigen::MatrixXcd::Zero(rows, cols);
  for (const auto& [n, v] : a.entries()) {
    coeffs(mod(n[0], M), m == 2 ? mod(n[1], M) : 0) += v;
  }
  Eigen::MatrixXcd samples = (m == 2) ? dft::backward2(coeffs) : Eigen::MatrixXcd(dft::backward(coeffs.col(0)));

  const double grid_min = samples.cwiseAbs().minCoeff();
  if (grid_min <= opt.vanishing_floor * l1_norm(a)) {
    throw vanishing_fourier_series("invert_by_fourier: min |F a| on grid = " +
                                   std::to_string(grid_min));
  }
  Eigen::MatrixXcd recip = samples.cwiseInverse();
  Eigen::MatrixXcd b_grid = (m == 2) ? dft::forward2(recip) : Eigen::MatrixXcd(dft::forward(recip.col(0)));
  b_grid /= static_cast<double>(m == 2 ? M * M : M);

  FourierInverse out{SparseSeq(m), 0.0, grid_min, 0.0, 0.0};
  std::map<long, double> shells;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const cplx v = b_grid(i, j);
      if (std::abs(v) < opt.decay_cutoff) continue;
      SparseSeq::Index n{centered(i, M)};
      if (m == 2) n.push_back(centered(j, M));
      const long radius = std::lround(std::sqrt(static_cast<double>(
          n[0] * n[0] + (m == 2 ? n[1] * n[1] : 0))));
      auto& slot = shells[radius];
      slot = std::max(slot, std::abs(v));
      out.inverse.set(std::move(n), v);
    }
  }
  out.residual_l1 = l1_norm(convolve(a, out.inverse) - SparseSeq::delta(m));
  const DecayFit fit = fit_shell_decay(shells);
  out.exponential_rate = fit.exponential_rate;
  out.polynomial_exponent = fit.polynomial_exponent;
  return out;
}

}  // namespace gml
