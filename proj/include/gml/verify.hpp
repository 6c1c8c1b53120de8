#pragma once

// Randomized property suite run by `gml verify`. Every property is checked
// on a seeded batch of instances; a case fails when the inequality or
// identity misses by more than its slack.

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "gml/amalgam.hpp"
#include "gml/fio.hpp"
#include "gml/generators.hpp"

namespace gml {

struct PropertyResult {
  std::string name;
  long cases = 0;
  long failures = 0;
  // max over cases of lhs - bound; negative when every case has room to spare
  double worst = -std::numeric_limits<double>::infinity();

  bool passed() const { return failures == 0; }
};

struct VerifySettings {
  long N = 7;
  QParams params{};
  std::uint64_t seed = 0;
  long cases = 200;
};

namespace detail {

class Tally {
 public:
  explicit Tally(std::string name) { r_.name = std::move(name); }

  /// Records lhs <= rhs with relative slack.
  void leq(double lhs, double rhs, double slack = 1e-12) {
    ++r_.cases;
    const double excess = lhs - rhs * (1.0 + slack) - slack;
    r_.worst = std::max(r_.worst, excess);
    if (excess > 0.0) ++r_.failures;
  }

  /// Records |value| <= tol.
  void small(double value, double tol) { leq(std::abs(value), tol, 0.0); }

  PropertyResult done() && { return std::move(r_); }

 private:
  PropertyResult r_;
};

}  // namespace detail

inline std::vector<PropertyResult> run_property_suite(const VerifySettings& cfg) {
  using detail::Tally;
  gen::Rng rng(cfg.seed);
  const long n = cfg.N;
  const QParams& p = cfg.params;
  const bool prime = is_prime(n) && n > 2;
  std::vector<PropertyResult> out;

  // --- sequence quasi-algebra ---
  {
    Tally tri("seq.q_triangle"), young("seq.young"), incl("seq.inclusion"), sub("seq.weight_submultiplicative"),
        holder("seq.holder"), absf("seq.l1_equals_sup_abs_fourier");
    for (long i = 0; i < cfg.cases; ++i) {
      const int dim = 1 + static_cast<int>(i % 2);
      const SparseSeq a = gen::sparse_seq(rng, dim), b = gen::sparse_seq(rng, dim);
      tri.leq(std::pow(qnorm(a + b, p), p.q), std::pow(qnorm(a, p), p.q) + std::pow(qnorm(b, p), p.q));
      young.leq(qnorm(convolve(a, b), p), qnorm(a, p) * qnorm(b, p));
      const double q2 = p.q + (1.0 - p.q) * 0.5;
      incl.leq(qnorm(a, {q2, p.s}), qnorm(a, p));
      const auto& lam = a.entries().begin()->first;
      const auto& mu = b.entries().begin()->first;
      SparseSeq::Index sum(dim);
      for (int k = 0; k < dim; ++k) sum[k] = lam[k] + mu[k];
      sub.leq(weight_eval(sum, p.s), weight_eval(lam, p.s) * weight_eval(mu, p.s));
      // 1/p1 + 1/p2 = 1/r, weights v_s and 1/v_s.
      const double p1 = 0.5 + (i % 4), p2 = 0.3 + 0.5 * (i % 3), r = 1.0 / (1.0 / p1 + 1.0 / p2);
      const auto w = [&](const SparseSeq::Index& k) { return weight_eval(k, p.s); };
      const auto winv = [&](const SparseSeq::Index& k) { return 1.0 / weight_eval(k, p.s); };
      holder.leq(lp_norm(pointwise_product(a, b), r, [](const auto&) { return 1.0; }),
                 lp_norm(a, p1, w) * lp_norm(b, p2, winv));
      if (dim == 1) {
        const SparseSeq aa = abs_seq(a);
        double best = 0.0;
        for (int g = 0; g < 64; ++g) best = std::max(best, std::abs(fourier_series_eval(aa, {g / 64.0})));
        absf.small(best - l1_norm(a), 1e-12 * l1_norm(a));
      }
    }
    for (auto* t : {&tri, &young, &incl, &sub, &holder, &absf}) out.push_back(std::move(*t).done());
  }
  {
    Tally neu("seq.neumann_bound");
    std::uniform_real_distribution<double> radius(0.05, 0.9);
    for (long i = 0; i < cfg.cases / 4; ++i) {
      const SparseSeq x = gen::with_qnorm(gen::sparse_seq(rng, 1, 4, 3), p, radius(rng));
      const double tol = 1e-10;
      const NeumannResult res = neumann_inverse(x, p, tol);
      const double r = qnorm(x, p);
      const SparseSeq one = SparseSeq::delta(1);
      neu.leq(qnorm(convolve(one - x, res.inverse) - one, p), tol, 1e-9);
      neu.leq(qnorm(res.inverse - one - x, p), r * r / std::pow(1.0 - std::pow(r, p.q), 1.0 / p.q), 1e-9);
    }
    out.push_back(std::move(neu).done());
  }

  // --- phase space and Weyl calculus ---
  const GaborSystem sys = GaborSystem::gaussian(n);
  {
    Tally unit("phase.tf_unitarity"), comm("phase.tf_commutation"), pars("phase.parseval");
    const Signal f = gen::gaussian_complex(rng) * random_signal(n, rng);
    for (long k = 0; k < n; ++k)
      for (long l = 0; l < n; ++l) {
        unit.small(tf_shift({k, l}, f).norm() - f.norm(), 1e-14 * (1.0 + f.norm()));
        for (long k2 = 0; k2 < n; ++k2)
          for (long l2 = 0; l2 < n; ++l2) {
            const Eigen::MatrixXcd lhs = tf_shift_matrix({k, l}, n) * tf_shift_matrix({k2, l2}, n);
            const Eigen::MatrixXcd rhs = tf_shift_matrix({k + k2, l + l2}, n);
            comm.small(phase_aligned_distance(lhs, rhs), 1e-12);
          }
      }
    for (int i = 0; i < 10; ++i) {
      const Signal g = random_signal(n, rng), h = random_signal(n, rng);
      pars.small(stft(h, g).squaredNorm() - h.squaredNorm() * n * g.squaredNorm(),
                 1e-12 * h.squaredNorm() * n * g.squaredNorm());
    }
    for (auto* t : {&unit, &comm, &pars}) out.push_back(std::move(*t).done());
  }
  {
    Tally dual("weyl.duality"), bij("weyl.bijection"), gcomm("weyl.gabor_commutation");
    for (int i = 0; i < 20; ++i) {
      const Symbol sigma = gen::random_symbol(rng, n);
      const Signal f = random_signal(n, rng), g = random_signal(n, rng);
      const OperatorMatrix op = weyl_quantize(sigma);
      const cplx lhs = g.dot(op * f);
      const cplx rhs = sigma.cwiseProduct(wigner(g, f).conjugate()).sum() / static_cast<double>(n);
      dual.small(std::abs(lhs - rhs), 1e-11 * (1.0 + std::abs(rhs)));
      bij.small((weyl_dequantize(op) - sigma).cwiseAbs().maxCoeff(), 1e-12 * (1.0 + sigma.cwiseAbs().maxCoeff()));
      if (i < 5) {
        const GaborMatrix m = gabor_matrix(op, sys);
        gcomm.small((analysis(op * f, sys) - m * analysis(f, sys)).norm(), 1e-10 * (1.0 + f.norm()));
      }
    }
    for (auto* t : {&dual, &bij, &gcomm}) out.push_back(std::move(*t).done());
  }

  // --- matrix class C_B ---
  {
    const long m = std::min<long>(n, 5);
    Tally alg("cb.algebra_norm"), env("cb.envelope_convolution"), solid("cb.solidity"), act("cb.bounded_action");
    for (long i = 0; i < cfg.cases / 4; ++i) {
      const Eigen::MatrixXcd a = gen::decaying_matrix(rng, m), b = gen::decaying_matrix(rng, m);
      alg.leq(cb_norm(a * b, p), cb_norm(a, p) * cb_norm(b, p));
      const DecayProfile dab = diagonal_envelope(a * b);
      const DecayProfile conv = cyclic_convolve(diagonal_envelope(a), diagonal_envelope(b));
      env.leq((dab.values - conv.values).maxCoeff(), 0.0, 1e-12 * conv.peak());
      Eigen::MatrixXcd shrunk = a;
      std::uniform_real_distribution<double> unit_interval(0.0, 1.0);
      for (Eigen::Index r = 0; r < shrunk.rows(); ++r)
        for (Eigen::Index c = 0; c < shrunk.cols(); ++c) shrunk(r, c) *= unit_interval(rng);
      solid.leq(cb_norm(shrunk, p), cb_norm(a, p));
      LatticeField c(m, m);
      for (long k = 0; k < m; ++k)
        for (long l = 0; l < m; ++l) c(k, l) = gen::gaussian_complex(rng);
      const LatticeField ac = apply_to_sequence(a, c);
      act.leq(ac.norm(), cb_norm(a, p) * c.norm());
      act.leq(field_qnorm(ac, p), cb_norm(a, p) * field_qnorm(c, p));
    }
    for (auto* t : {&alg, &env, &solid, &act}) out.push_back(std::move(*t).done());
  }
  {
    Tally pinv("cb.pseudo_inverse_consistency");
    for (int i = 0; i < 3; ++i) {
      const OperatorMatrix op = weyl_quantize(gen::smooth_symbol(rng, n));
      const GaborMatrix m = gabor_matrix(op, sys);
      const GaborMatrix expected = gabor_matrix(op.inverse(), sys);
      pinv.small((pseudo_inverse(m) - expected).cwiseAbs().maxCoeff(), 1e-8);
    }
    out.push_back(std::move(pinv).done());
  }

  // --- metaplectic and FIO calculus (prime moduli only) ---
  if (prime) {
    Tally fac("meta.factor_roundtrip"), uni("meta.unitarity"), inter("meta.intertwining"), proj("meta.projectivity"),
        conc("meta.envelope_concentration");
    const auto group = all_symplectic(n);
    const size_t stride = std::max<size_t>(1, group.size() / 120);
    for (size_t i = 0; i < group.size(); i += stride) {
      const SympMat& chi = group[i];
      const GeneratorWord w = factor_generators(chi);
      fac.small(word_matrix(w, n) == chi ? 0.0 : 1.0, 0.0);
      const Eigen::MatrixXcd u = build_metaplectic(w, n);
      uni.small(unitarity_defect(u), 1e-12);
      inter.small(intertwine_defect(chi, u, sys), 1e-10);
      proj.small(phase_aligned_distance(u, build_metaplectic(alternate_factorization(chi), n)), 1e-10);
      if (i % (7 * stride) == 0) {
        const FioEnvelope h = envelope(u, chi, sys);
        const Eigen::MatrixXd expect = stft(u * sys.window(), sys.window()).cwiseAbs();
        conc.small((h.values.values - expect).cwiseAbs().maxCoeff(), 1e-12);
      }
    }
    for (auto* t : {&fac, &uni, &inter, &proj, &conc}) out.push_back(std::move(*t).done());

    Tally adj("fio.adjoint_law"), fact("fio.factorization_exactness"), minim("fio.envelope_minimality");
    for (int i = 0; i < 5; ++i) {
      const SympMat chi = gen::symplectic(rng, n);
      const OperatorMatrix t = weyl_quantize(gen::smooth_symbol(rng, n)) * metaplectic_operator(chi);
      const GaborMatrix gm = gabor_matrix(t, sys);
      const FioEnvelope h = envelope(gm, chi);
      const FioEnvelope hs = envelope(t.adjoint(), chi.inverse(), sys);
      double diff = 0.0;
      for (long k = 0; k < n; ++k)
        for (long l = 0; l < n; ++l) {
          const LatticePoint reflected = -chi.apply({k, l});
          diff = std::max(diff, std::abs(hs.values.at({k, l}) - h.values.at(reflected)));
        }
      adj.small(diff, 1e-12);
      const Factorization fz = factorize_fio(t, chi, sys);
      fact.small(std::max(fz.residual_left, fz.residual_right), 1e-9);
      // Every entry is dominated, and every envelope value is attained.
      double excess = 0.0, shortfall = 0.0;
      for (long lam = 0; lam < n * n; ++lam) {
        const LatticePoint image = chi.apply({lam / n, lam % n});
        for (long mu = 0; mu < n * n; ++mu) {
          excess = std::max(excess, std::abs(gm(mu, lam)) - h.values.at(LatticePoint{mu / n, mu % n} - image));
        }
      }
      for (long k = 0; k < n; ++k)
        for (long l = 0; l < n; ++l) {
          double best = 0.0;
          for (long lam = 0; lam < n * n; ++lam) {
            const LatticePoint image = chi.apply({lam / n, lam % n});
            best = std::max(best, std::abs(gm(lattice_index(LatticePoint{k, l} + image, n), lam)));
          }
          shortfall = std::max(shortfall, std::abs(best - h.values.values(k, l)));
        }
      minim.small(std::max(excess, shortfall), 1e-15);
    }
    for (auto* t : {&adj, &fact, &minim}) out.push_back(std::move(*t).done());
  }

  // --- amalgam norms (coarse grid) ---
  {
    Tally incl("amalgam.inclusion"), solid("amalgam.solidity"), refine("amalgam.refinement_monotone");
    const SampledField gauss = SampledField::sample(gaussian_field, 4, 8);
    const SampledField chirp = SampledField::sample(chirped_gaussian_field, 4, 8);
    const QParams coarse{std::min(1.0, p.q + 0.3), p.s};
    incl.leq(amalgam_norm(gauss, coarse), amalgam_norm(gauss, p));
    incl.leq(amalgam_norm(chirp, coarse), amalgam_norm(chirp, p));
    const SampledField half = SampledField::sample([](double x, double y) { return 0.5 * gaussian_field(x, y); }, 4, 8);
    solid.leq(amalgam_norm(half, p), amalgam_norm(gauss, p));
    const RefinedNorm rn = amalgam_norm_refined(gaussian_field, 4, 8, p);
    refine.leq(rn.norm, rn.refined_norm);
    for (auto* t : {&incl, &solid, &refine}) out.push_back(std::move(*t).done());
  }
  return out;
}

}  // namespace gml
