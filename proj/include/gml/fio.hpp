#pragma once

// Envelope calculus for generalized metaplectic operators on the finite
// phase space: h(mu) = max_lambda |<T pi(lambda) g, pi(chi lambda + mu) g>|.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <map>

#include "gml/decay_fit.hpp"
#include "gml/matrix_algebra.hpp"
#include "gml/metaplectic.hpp"
#include "gml/weyl.hpp"

namespace gml {

struct FioEnvelope {
  SympMat chi;
  DecayProfile values;
};

struct FioReport {
  double quasi_norm = 0.0;
  double tail_fraction = 0.0;   // q-mass outside |mu| <= N/4
  double decay_exponent = 0.0;  // polynomial exponent of shell maxima
};

/// Minimal dominating envelope of a Gabor matrix with respect to chi.
inline FioEnvelope envelope(const GaborMatrix& m, const SympMat& chi) {
  const long n = lattice_side(m);
  require_same_modulus(n, chi.N(), "envelope");
  DecayProfile h{Eigen::MatrixXd::Zero(n, n)};
  for (long lk = 0; lk < n; ++lk) {
    for (long ll = 0; ll < n; ++ll) {
      const LatticePoint image = chi.apply({lk, ll});
      const Eigen::Index col = lk * n + ll;
      for (long nk = 0; nk < n; ++nk) {
        for (long nl = 0; nl < n; ++nl) {
          double& slot = h.at(LatticePoint{nk, nl} - image);
          slot = std::max(slot, std::abs(m(nk * n + nl, col)));
        }
      }
    }
  }
  return {chi, std::move(h)};
}

inline FioEnvelope envelope(const OperatorMatrix& t, const SympMat& chi, const GaborSystem& sys) {
  require_same_modulus(t.rows(), sys.N(), "envelope");
  return envelope(gabor_matrix(t, sys), chi);
}

inline FioReport fio_report(const DecayProfile& h, const QParams& p) {
  const long n = h.N();
  const double radius = static_cast<double>(n) / 4.0;
  double total = 0.0, tail = 0.0;
  std::map<long, double> shells;
  for (long k = 0; k < n; ++k) {
    for (long l = 0; l < n; ++l) {
      const long ck = centered(k, n), cl = centered(l, n);
      const double r = std::sqrt(static_cast<double>(ck * ck + cl * cl));
      const double v = h.values(k, l);
      const double mass = v == 0.0 ? 0.0 : std::pow(v * weight_eval({ck, cl}, p.s), p.q);
      total += mass;
      if (r > radius) tail += mass;
      auto& slot = shells[std::lround(r)];
      slot = std::max(slot, v);
    }
  }
  FioReport rep;
  rep.quasi_norm = std::pow(total, 1.0 / p.q);
  rep.tail_fraction = total > 0.0 ? tail / total : 0.0;
  rep.decay_exponent = fit_shell_decay(shells).polynomial_exponent;
  return rep;
}

inline FioReport fio_report(const FioEnvelope& h, const QParams& p) { return fio_report(h.values, p); }

struct ComposeCheck {
  FioReport composite;
  FioReport first;
  FioReport second;
  double ratio = 0.0;  // ||h_{T1 T2}|| / (||h_{T1}|| ||h_{T2}||)
};

inline ComposeCheck compose_check(const OperatorMatrix& t1, const SympMat& chi1, const OperatorMatrix& t2,
                                  const SympMat& chi2, const GaborSystem& sys, const QParams& p) {
  ComposeCheck out;
  out.first = fio_report(envelope(t1, chi1, sys), p);
  out.second = fio_report(envelope(t2, chi2, sys), p);
  out.composite = fio_report(envelope(t1 * t2, chi1 * chi2, sys), p);
  out.ratio = out.composite.quasi_norm / (out.first.quasi_norm * out.second.quasi_norm);
  return out;
}

inline double condition_number(const Eigen::MatrixXcd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  return smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
}

struct FioInverse {
  OperatorMatrix inverse;
  FioReport report;   // envelope of the inverse w.r.t. chi^{-1}
  FioReport forward;  // envelope of T w.r.t. chi
  double condition = 0.0;
};

inline FioInverse invert_fio(const OperatorMatrix& t, const SympMat& chi, const GaborSystem& sys, const QParams& p,
                             double cond_tol = 1e12) {
  require_same_modulus(t.rows(), sys.N(), "invert_fio");
  FioInverse out;
  out.condition = condition_number(t);
  if (!(out.condition < cond_tol)) {
    throw not_invertible("invert_fio: condition number " + std::to_string(out.condition) + " exceeds tolerance");
  }
  out.inverse = t.inverse();
  out.report = fio_report(envelope(out.inverse, chi.inverse(), sys), p);
  out.forward = fio_report(envelope(t, chi, sys), p);
  return out;
}

/// (sigma o chi)(z) = sigma(chi z).
inline Symbol compose_symbol(const Symbol& sigma, const SympMat& chi) {
  const long n = sigma.rows();
  Symbol out(n, n);
  for (long x = 0; x < n; ++x)
    for (long xi = 0; xi < n; ++xi) {
      const LatticePoint z = chi.apply({x, xi});
      out(x, xi) = sigma(z.k, z.l);
    }
  return out;
}

struct Factorization {
  Symbol sigma1;  // T = Op(sigma1) U
  Symbol sigma2;  // T = U Op(sigma2)
  double residual_left = 0.0;
  double residual_right = 0.0;
  double egorov_defect = 0.0;  // || |sigma2| - |sigma1 o chi| ||_inf
};

inline Factorization factorize_fio(const OperatorMatrix& t, const SympMat& chi, const GaborSystem& sys) {
  require_same_modulus(t.rows(), sys.N(), "factorize_fio");
  require_same_modulus(chi.N(), sys.N(), "factorize_fio");
  const Eigen::MatrixXcd u = metaplectic_operator(chi);
  const Eigen::MatrixXcd uinv = u.adjoint();
  Factorization out;
  out.sigma1 = weyl_dequantize(t * uinv);
  out.sigma2 = weyl_dequantize(uinv * t);
  out.residual_left = operator_norm(t - weyl_quantize(out.sigma1) * u);
  out.residual_right = operator_norm(t - u * weyl_quantize(out.sigma2));
  out.egorov_defect = (out.sigma2.cwiseAbs() - compose_symbol(out.sigma1, chi).cwiseAbs()).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace gml
