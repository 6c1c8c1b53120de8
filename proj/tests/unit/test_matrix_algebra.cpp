#include <gtest/gtest.h>

#include "gml/generators.hpp"
#include "support/oracles.hpp"

using namespace gml;

namespace {

LatticeField random_field(gen::Rng& rng, long n, double decay = 2.0) {
  LatticeField a(n, n);
  for (long k = 0; k < n; ++k)
    for (long l = 0; l < n; ++l)
      a(k, l) = gen::gaussian_complex(rng) *
                std::pow(1.0 + std::hypot(double(centered(k, n)), double(centered(l, n))), -decay);
  return a;
}

}  // namespace

TEST(DiagonalEnvelope, Identity) {
  const DecayProfile d = diagonal_envelope(Eigen::MatrixXcd::Identity(25, 25));
  for (long k = 0; k < 5; ++k)
    for (long l = 0; l < 5; ++l) EXPECT_EQ(d.values(k, l), (k == 0 && l == 0) ? 1.0 : 0.0);
}

TEST(DiagonalEnvelope, ConvolutionMatrixGivesAbsKernel) {
  gen::Rng rng(1);
  const LatticeField a = random_field(rng, 5);
  const DecayProfile d = diagonal_envelope(convolution_matrix(a));
  EXPECT_LT((d.values - a.cwiseAbs()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DiagonalEnvelope, MatchesBruteForce) {
  gen::Rng rng(2);
  for (long n : {3L, 5L}) {
    const Eigen::MatrixXcd a = gen::decaying_matrix(rng, n);
    EXPECT_LT((diagonal_envelope(a).values - oracle::diagonal_envelope(a, n)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(DiagonalEnvelope, RejectsNonLatticeShapes) {
  EXPECT_THROW(diagonal_envelope(Eigen::MatrixXcd::Zero(25, 24)), dimension_mismatch);
  EXPECT_THROW(diagonal_envelope(Eigen::MatrixXcd::Zero(24, 24)), dimension_mismatch);
}

TEST(CbNorm, Examples) {
  for (QParams p : {QParams{0.3, 0.0}, QParams{1.0, 2.0}})
    EXPECT_DOUBLE_EQ(cb_norm(Eigen::MatrixXcd::Identity(49, 49), p), 1.0);
  gen::Rng rng(3);
  const LatticeField a = random_field(rng, 5);
  for (QParams p : {QParams{0.5, 1.0}, QParams{0.8, 0.0}}) {
    const double ref = oracle::lattice_qnorm(a.cwiseAbs(), p.q, p.s);
    EXPECT_NEAR(cb_norm(convolution_matrix(a), p), ref, 1e-12 * ref);
    EXPECT_NEAR(field_qnorm(a, p), ref, 1e-12 * ref);
  }
}

TEST(CbNorm, QuasiTriangle) {
  gen::Rng rng(4);
  for (QParams p : {QParams{0.5, 1.0}, QParams{1.0, 0.0}})
    for (int i = 0; i < 30; ++i) {
      const Eigen::MatrixXcd a = gen::decaying_matrix(rng, 5), b = gen::decaying_matrix(rng, 5);
      EXPECT_LE(std::pow(cb_norm(a + b, p), p.q),
                (std::pow(cb_norm(a, p), p.q) + std::pow(cb_norm(b, p), p.q)) * (1 + 1e-12));
    }
}

TEST(CbNorm, AlgebraPropertyAndEnvelopeConvolution) {
  gen::Rng rng(5);
  for (QParams p : {QParams{0.5, 0.0}, QParams{0.5, 2.0}, QParams{1.0, 1.0}})
    for (int i = 0; i < 30; ++i) {
      const Eigen::MatrixXcd a = gen::decaying_matrix(rng, 5), b = gen::decaying_matrix(rng, 5);
      const DecayProfile dab = diagonal_envelope(a * b);
      const DecayProfile conv = cyclic_convolve(diagonal_envelope(a), diagonal_envelope(b));
      EXPECT_LE((dab.values - conv.values * (1 + 1e-12)).maxCoeff(), 1e-14);
      EXPECT_LE(cb_norm(a * b, p), cb_norm(a, p) * cb_norm(b, p) * (1 + 1e-12));
    }
}

TEST(CbNorm, Solidity) {
  gen::Rng rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const Eigen::MatrixXcd a = gen::decaying_matrix(rng, 5);
    Eigen::MatrixXcd smaller = a;
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      for (Eigen::Index c = 0; c < a.cols(); ++c) smaller(r, c) *= u(rng) * std::polar(1.0, two_pi * u(rng));
    EXPECT_LE(cb_norm(smaller, {0.5, 1.0}), cb_norm(a, {0.5, 1.0}));
  }
}

TEST(ApplyToSequence, Examples) {
  gen::Rng rng(7);
  const LatticeField c = random_field(rng, 5, 0.0);
  EXPECT_LT((apply_to_sequence(Eigen::MatrixXcd::Identity(25, 25), c) - c).norm(), 1e-15);
  const LatticeField a = random_field(rng, 5);
  LatticeField expect = LatticeField::Zero(5, 5);
  for (long k = 0; k < 5; ++k)
    for (long l = 0; l < 5; ++l)
      for (long k2 = 0; k2 < 5; ++k2)
        for (long l2 = 0; l2 < 5; ++l2) expect(k, l) += a(mod(k - k2, 5), mod(l - l2, 5)) * c(k2, l2);
  EXPECT_LT((apply_to_sequence(convolution_matrix(a), c) - expect).norm(), 1e-13);
  EXPECT_THROW(apply_to_sequence(convolution_matrix(a), LatticeField::Zero(4, 4)), dimension_mismatch);
}

TEST(ApplyToSequence, BoundedAction) {
  gen::Rng rng(8);
  const QParams p{0.6, 1.0};
  for (int i = 0; i < 10; ++i) {
    const Eigen::MatrixXcd a = gen::decaying_matrix(rng, 5);
    const double na = cb_norm(a, p);
    for (int j = 0; j < 10; ++j) {
      const LatticeField c = random_field(rng, 5, 1.0);
      const LatticeField ac = apply_to_sequence(a, c);
      EXPECT_LE(ac.norm(), na * c.norm() * (1 + 1e-12));
      EXPECT_LE(field_qnorm(ac, p), na * field_qnorm(c, p) * (1 + 1e-12));
    }
  }
}

TEST(PseudoInverse, Projection) {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(4, 4);
  d(0, 0) = 1.0;
  EXPECT_LT((pseudo_inverse(d) - d).norm(), 1e-15);
}

TEST(PseudoInverse, InvertibleMatrix) {
  gen::Rng rng(9);
  const Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(25, 25) + 0.2 * gen::decaying_matrix(rng, 5);
  EXPECT_LT((pseudo_inverse(a) - a.inverse()).norm(), 1e-9);
  EXPECT_THROW(pseudo_inverse(a, 0.0), std::invalid_argument);
  EXPECT_THROW(pseudo_inverse(a, -1.0), std::invalid_argument);
}

TEST(PseudoInverse, GaborMatrixOfInvertibleWeylOperator) {
  gen::Rng rng(10);
  const GaborSystem sys = GaborSystem::gaussian(7);
  const OperatorMatrix t = weyl_quantize(gen::smooth_symbol(rng, 7));
  const GaborMatrix m = gabor_matrix(t, sys);
  const Eigen::MatrixXcd mp = pseudo_inverse(m);
  // Moore-Penrose identities on the range, kernel = range complement.
  EXPECT_LT((m * mp * m - m).norm(), 1e-9);
  EXPECT_LT((mp * m * mp - mp).norm(), 1e-9);
  const Eigen::VectorXcd in_range = analysis(periodized_gaussian(7), sys);
  EXPECT_LT((mp * m * in_range - in_range).norm(), 1e-9);
  EXPECT_LT((m * mp * in_range - in_range).norm(), 1e-9);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(49);
  e(3) = 1.0;
  const Eigen::VectorXcd orth = e - m * mp * e;
  EXPECT_LT((mp * orth).norm(), 1e-9);
  // M(sigma)^dagger is the Gabor matrix of the inverse operator.
  EXPECT_LT((mp - gabor_matrix(t.inverse(), sys)).cwiseAbs().maxCoeff(), 1e-8);
}
