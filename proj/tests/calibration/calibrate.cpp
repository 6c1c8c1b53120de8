// Pre-build calibration run. Every quantity below is computed with the
// brute-force oracles of tests/support (explicit inner products, dense
// loops, Eigen's LU / complete orthogonal decomposition), never with the
// library's fast paths, and on seeds disjoint from the ones the test suites
// use. Thresholds are measured value * margin.
//
//   gml_calibrate [out.json]

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <vector>

#include "gml/generators.hpp"
#include "gml/io.hpp"
#include "support/oracles.hpp"

namespace {

using namespace gml;
using nlohmann::json;

constexpr double margin = 1.25;
constexpr std::uint64_t seed_base = 1000;

Eigen::VectorXcd parseval_gaussian(long n, double c = 1.0) {
  Eigen::VectorXcd g = periodized_gaussian(n, c);
  return g / std::sqrt(static_cast<double>(n) * g.squaredNorm());
}

double tail(const Eigen::MatrixXcd& t, const SympMat& chi, const Eigen::VectorXcd& g, double q, double s) {
  return oracle::tail_fraction(oracle::fio_envelope(t, chi, g), q, s);
}

Eigen::MatrixXcd fio_op(const Symbol& sigma, const SympMat& chi) {
  return oracle::weyl_kernel(sigma) * metaplectic_operator(chi);
}

json inverse_closedness() {
  const long n = 31;
  const double q = 0.8, s = 1.0;
  const Eigen::VectorXcd g = parseval_gaussian(n);
  const Eigen::MatrixXcd t = oracle::weyl_kernel(gen::gaussian_bump_symbol(n, 0.1));
  const Eigen::MatrixXcd tinv = t.fullPivLu().inverse();
  const SympMat id = SympMat::identity(n);
  const double inv_tail = tail(tinv, id, g, q, s);
  const double fwd_tail = tail(t, id, g, q, s);
  const double id_tail = tail(Eigen::MatrixXcd::Identity(n, n), id, g, q, s);
  std::printf("inverse closedness N=31: inverse tail %.6e  forward %.6e  identity %.6e\n", inv_tail, fwd_tail,
              id_tail);
  return {{"N", n}, {"q", q}, {"s", s}, {"amp", 0.1},
          {"measured_inverse_tail", inv_tail}, {"measured_forward_tail", fwd_tail},
          {"measured_identity_tail", id_tail},
          {"inverse_tail_threshold", inv_tail * margin}, {"identity_tail_threshold", id_tail * margin}};
}

struct Fio {
  Eigen::MatrixXcd t;
  SympMat chi;
};

std::vector<Fio> fio_suite(long n, int count, std::uint64_t seed) {
  gen::Rng rng(seed);
  std::vector<Fio> out;
  for (int i = 0; i < count; ++i) {
    const Symbol sigma = gen::smooth_symbol(rng, n, 0.3, 2);
    const SympMat chi = gen::symplectic(rng, n);
    out.push_back({fio_op(sigma, chi), chi});
  }
  return out;
}

json composition_and_inversion() {
  const long n = 11;
  const double q = 0.8, s = 1.0;
  const int pairs = 30;
  const Eigen::VectorXcd g = parseval_gaussian(n);
  const auto ops = fio_suite(n, 2 * pairs, seed_base + 10);
  double worst_compose = 0.0, worst_inverse = 0.0, worst_ratio = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const Fio& a = ops[2 * i];
    const Fio& b = ops[2 * i + 1];
    const Eigen::MatrixXd ha = oracle::fio_envelope(a.t, a.chi, g), hb = oracle::fio_envelope(b.t, b.chi, g);
    const Eigen::MatrixXd hab = oracle::fio_envelope(a.t * b.t, a.chi * b.chi, g);
    const Eigen::MatrixXd hinv = oracle::fio_envelope(a.t.fullPivLu().inverse(), a.chi.inverse(), g);
    const double ta = oracle::tail_fraction(ha, q, s), tb = oracle::tail_fraction(hb, q, s);
    worst_compose = std::max(worst_compose, oracle::tail_fraction(hab, q, s) / std::max(ta, tb));
    worst_inverse = std::max(worst_inverse, oracle::tail_fraction(hinv, q, s) / ta);
    worst_ratio = std::max(worst_ratio, oracle::lattice_qnorm(hab, q, s) /
                                            (oracle::lattice_qnorm(ha, q, s) * oracle::lattice_qnorm(hb, q, s)));
  }
  std::printf("composition N=11, %d pairs: tail factor compose %.4f inverse %.4f, norm ratio %.4f\n", pairs,
              worst_compose, worst_inverse, worst_ratio);
  const double factor = std::max(worst_compose, worst_inverse);
  return {{"N", n}, {"q", q}, {"s", s}, {"pairs", pairs},
          {"measured_compose_tail_factor", worst_compose}, {"measured_inverse_tail_factor", worst_inverse},
          {"tail_factor_threshold", factor * margin},
          {"measured_compose_norm_ratio", worst_ratio}, {"compose_ratio_threshold", worst_ratio * margin}};
}

json window_robustness() {
  const long n = 11;
  const double q = 0.8, s = 1.0;
  const Eigen::VectorXcd g1 = parseval_gaussian(n, 1.0), g2 = parseval_gaussian(n, 0.5);
  double worst = 1.0;
  const auto ops = fio_suite(n, 30, seed_base + 20);
  for (const Fio& f : ops) {
    const double t1 = tail(f.t, f.chi, g1, q, s), t2 = tail(f.t, f.chi, g2, q, s);
    worst = std::max({worst, t1 / t2, t2 / t1});
  }
  std::printf("window robustness N=11, 30 operators: worst tail factor %.4f\n", worst);
  return {{"N", n}, {"q", q}, {"s", s}, {"window_widths", {1.0, 0.5}}, {"operators", 30},
          {"measured_factor", worst}, {"factor_threshold", worst * margin}};
}

std::vector<Symbol> symbol_suite(long n, std::uint64_t seed) {
  gen::Rng rng(seed);
  std::vector<Symbol> out;
  for (double amp : {0.1, 0.3, 0.6, 0.9})
    for (long band : {1, 2, 3})
      for (int rep = 0; rep < 2; ++rep) out.push_back(gen::smooth_symbol(rng, n, amp, band));
  for (double amp : {0.1, 0.5, 1.0}) out.push_back(gen::gaussian_bump_symbol(n, amp));
  return out;
}

json norm_equivalence() {
  const long n = 7;
  const double q = 0.8, s = 1.0;
  const Eigen::VectorXcd g = parseval_gaussian(n);
  const Symbol phi = default_symbol_window(n);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  const auto suite = symbol_suite(n, seed_base + 30);
  for (const Symbol& sigma : suite) {
    const Eigen::MatrixXcd m = oracle::gabor_matrix(oracle::weyl_kernel(sigma), g);
    const double cb = oracle::lattice_qnorm(oracle::diagonal_envelope(m, n), q, s);
    const double mn = oracle::lattice_qnorm(oracle::symbol_stft_sup(sigma, phi), q, s);
    lo = std::min(lo, cb / mn);
    hi = std::max(hi, cb / mn);
  }
  std::printf("norm equivalence N=7, %zu symbols: cb/modulation in [%.6f, %.6f], spread %.4f\n", suite.size(), lo,
              hi, hi / lo);
  return {{"N", n}, {"q", q}, {"s", s}, {"symbols", suite.size()},
          {"measured_min_ratio", lo}, {"measured_max_ratio", hi},
          {"lower_bound", lo / margin}, {"upper_bound", hi * margin}, {"spread_threshold", hi / lo * margin * margin}};
}

json pseudo_inverse() {
  const long n = 7;
  const double q = 0.8, s = 1.0;
  const Eigen::VectorXcd g = parseval_gaussian(n);
  gen::Rng rng(seed_base + 40);
  double worst = 0.0;
  for (int i = 0; i < 15; ++i) {
    const Eigen::MatrixXcd m = oracle::gabor_matrix(oracle::weyl_kernel(gen::smooth_symbol(rng, n, 0.5, 2)), g);
    const Eigen::MatrixXcd pinv = m.completeOrthogonalDecomposition().pseudoInverse();
    worst = std::max(worst, oracle::lattice_qnorm(oracle::diagonal_envelope(pinv, n), q, s) /
                                oracle::lattice_qnorm(oracle::diagonal_envelope(m, n), q, s));
  }
  std::printf("pseudo-inverse N=7, 15 operators: worst cb ratio %.4f\n", worst);
  return {{"N", n}, {"q", q}, {"s", s}, {"operators", 15}, {"measured_cb_ratio", worst},
          {"cb_ratio_threshold", worst * margin}};
}

// Amalgam norm and grid convolution written out over the nonzero samples.
struct Grid {
  long r, m;
  Eigen::MatrixXd v;
};

Grid sample_bump(long r, long m) {
  const PlaneFunction f = bump_field();
  const long side = 2 * r * m + 1;
  Grid out{r, m, Eigen::MatrixXd::Zero(side, side)};
  for (long i = 0; i < side; ++i)
    for (long j = 0; j < side; ++j)
      out.v(i, j) = std::abs(f(-r + static_cast<double>(i) / m, -r + static_cast<double>(j) / m));
  return out;
}

double grid_norm(const Grid& f, double q, double s) {
  double acc = 0.0;
  for (long cx = -f.r; cx < f.r; ++cx)
    for (long cy = -f.r; cy < f.r; ++cy) {
      double mx = 0.0;
      for (long i = 0; i <= f.m; ++i)
        for (long j = 0; j <= f.m; ++j) mx = std::max(mx, f.v((cx + f.r) * f.m + i, (cy + f.r) * f.m + j));
      if (mx > 0.0) acc += std::pow(mx * std::pow(1.0 + std::hypot(double(cx), double(cy)), s), q);
    }
  return std::pow(acc, 1.0 / q);
}

Grid grid_convolve(const Grid& f) {
  const long side = f.v.rows(), c = f.r * f.m;
  std::vector<std::pair<long, long>> nz;
  for (long i = 0; i < side; ++i)
    for (long j = 0; j < side; ++j)
      if (f.v(i, j) != 0.0) nz.emplace_back(i, j);
  Grid out{f.r, f.m, Eigen::MatrixXd::Zero(side, side)};
  const double h2 = 1.0 / static_cast<double>(f.m * f.m);
  for (auto [i1, j1] : nz)
    for (auto [i2, j2] : nz) {
      const long i = i1 + i2 - c, j = j1 + j2 - c;
      if (i >= 0 && i < side && j >= 0 && j < side) out.v(i, j) += f.v(i1, j1) * f.v(i2, j2) * h2;
    }
  return out;
}

json conv_embedding() {
  const double q = 0.8, s = 1.0;
  const long r = 4;
  json grids = json::array();
  double worst = 0.0;
  for (long m : {16, 32}) {
    const Grid f = sample_bump(r, m);
    const double nf = grid_norm(f, q, s);
    const double ratio = grid_norm(grid_convolve(f), q, s) / (nf * nf);
    std::printf("conv embedding bump R=%ld M=%ld: ratio %.6f\n", r, m, ratio);
    grids.push_back({{"M", m}, {"ratio", ratio}});
    worst = std::max(worst, ratio);
  }
  return {{"R", r}, {"q", q}, {"s", s}, {"field", "bump"}, {"measured", grids}, {"ratio_threshold", worst * margin}};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : "calibration.json";
  json out;
  out["margin"] = margin;
  out["seed_base"] = seed_base;
  out["note"] = "Produced by gml_calibrate from brute-force oracles; thresholds = measured * margin. "
                "Regenerate with build/tests/gml_calibrate tests/data/calibration.json.";
  out["inverse_closedness"] = inverse_closedness();
  out["composition"] = composition_and_inversion();
  out["window_robustness"] = window_robustness();
  out["norm_equivalence"] = norm_equivalence();
  out["pseudo_inverse"] = pseudo_inverse();
  out["conv_embedding"] = conv_embedding();
  std::ofstream f(path);
  if (!f) {
    std::cerr << "cannot write " << path << "\n";
    return 2;
  }
  f << out.dump(2) << "\n";
  std::printf("wrote %s\n", path.c_str());
  return 0;
}
