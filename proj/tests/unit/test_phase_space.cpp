#include <gtest/gtest.h>

#include "gml/generators.hpp"
#include "support/oracles.hpp"

using namespace gml;

TEST(TfShift, Examples) {
  gen::Rng rng(1);
  const Signal f = random_signal(5, rng);
  EXPECT_LT((tf_shift({0, 0}, f) - f).norm(), 1e-15);
  EXPECT_LT((tf_shift({1, 0}, unit_signal(5, 0)) - unit_signal(5, 1)).norm(), 1e-15);
  const Signal mod = tf_shift({0, 1}, Signal::Ones(5));
  for (long t = 0; t < 5; ++t) EXPECT_LT(std::abs(mod(t) - std::polar(1.0, two_pi * t / 5.0)), 1e-15);
}

TEST(TfShift, MatchesOracleAndMatrix) {
  gen::Rng rng(2);
  for (long n : {5L, 7L, 9L}) {
    const Signal f = random_signal(n, rng);
    for (long k = -n; k < 2 * n; k += 3)
      for (long l = -n; l < 2 * n; l += 2) {
        EXPECT_LT((tf_shift({k, l}, f) - oracle::shift(k, l, f)).norm(), 1e-12);
        EXPECT_LT((tf_shift_matrix({k, l}, n) * f - tf_shift({k, l}, f)).norm(), 1e-12);
      }
  }
}

TEST(TfShift, Unitary) {
  gen::Rng rng(3);
  const Signal f = random_signal(11, rng);
  for (long k = 0; k < 11; ++k)
    for (long l = 0; l < 11; ++l) EXPECT_NEAR(tf_shift({k, l}, f).norm(), f.norm(), 1e-14 * f.norm());
}

TEST(TfShift, CommutationUpToPhase) {
  const long n = 5;
  for (long a = 0; a < n * n; ++a)
    for (long b = 0; b < n * n; ++b) {
      const LatticePoint z{a / n, a % n}, w{b / n, b % n};
      const Eigen::MatrixXcd lhs = tf_shift_matrix(z, n) * tf_shift_matrix(w, n);
      const Eigen::MatrixXcd rhs = tf_shift_matrix(z + w, n);
      // pi(z) pi(w) = e^{-2 pi i l_w k_z / N} pi(z + w)
      const cplx phase = root_of_unity(-w.l * z.k, n);
      EXPECT_LT((lhs - phase * rhs).norm(), 1e-12);
    }
}

TEST(Lattice, CenteredRepresentative) {
  EXPECT_EQ(centered(0, 7), 0);
  EXPECT_EQ(centered(3, 7), 3);
  EXPECT_EQ(centered(4, 7), -3);
  EXPECT_EQ(centered(-1, 7), -1);
  EXPECT_EQ(centered(13, 7), -1);
  const LatticePoint z = LatticePoint{9, -8}.centered_rep(5);
  EXPECT_EQ(z.k, -1);
  EXPECT_EQ(z.l, 2);
  EXPECT_EQ(lattice_index({-1, 6}, 5), 4 * 5 + 1);
}

TEST(Stft, Examples) {
  const Signal d = unit_signal(5);
  const LatticeField v = stft(d, d);
  EXPECT_NEAR(std::abs(v(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_LT(std::abs(v(1, 0)), 1e-15);
  EXPECT_THROW(stft(d, Signal::Zero(5)), std::invalid_argument);
  EXPECT_THROW(stft(d, unit_signal(7)), dimension_mismatch);
}

TEST(Stft, GaussianMatchesBruteForce) {
  const Signal g = periodized_gaussian(11);
  EXPECT_LT((stft(g, g) - oracle::stft(g, g)).cwiseAbs().maxCoeff(), 1e-12);
  gen::Rng rng(4);
  for (long n : {5L, 7L, 8L, 13L}) {
    const Signal f = random_signal(n, rng), h = random_signal(n, rng);
    EXPECT_LT((stft(f, h) - oracle::stft(f, h)).cwiseAbs().maxCoeff(), 1e-12 * f.norm() * h.norm());
  }
}

TEST(Stft, ParsevalIdentity) {
  gen::Rng rng(5);
  for (long n : {5L, 7L, 11L}) {
    const Signal f = random_signal(n, rng), g = random_signal(n, rng);
    const double lhs = stft(f, g).squaredNorm();
    const double rhs = f.squaredNorm() * static_cast<double>(n) * g.squaredNorm();
    EXPECT_NEAR(lhs, rhs, 1e-12 * rhs);
  }
}

TEST(FrameBounds, UnitWindow) {
  const FrameBounds fb = frame_bounds(GaborSystem(unit_signal(5), GaborSystem::Normalization::none));
  EXPECT_NEAR(fb.lower, 5.0, 1e-12);
  EXPECT_NEAR(fb.upper, 5.0, 1e-12);
  const Eigen::MatrixXcd s = oracle::frame_operator(unit_signal(5));
  EXPECT_LT((s - 5.0 * Eigen::MatrixXcd::Identity(5, 5)).norm(), 1e-12);
}

TEST(FrameBounds, ParsevalNormalization) {
  const GaborSystem sys = GaborSystem::gaussian(7);
  EXPECT_TRUE(sys.is_parseval());
  const FrameBounds fb = frame_bounds(sys);
  EXPECT_NEAR(fb.lower, 1.0, 1e-12);
  EXPECT_NEAR(fb.upper, 1.0, 1e-12);
}

TEST(FrameBounds, RandomWindowsAgreeWithOracle) {
  gen::Rng rng(6);
  for (long n : {5L, 7L, 11L}) {
    const Signal g = random_signal(n, rng);
    const GaborSystem sys(g, GaborSystem::Normalization::none);
    const FrameBounds fb = frame_bounds(sys);
    const double c = static_cast<double>(n) * g.squaredNorm();
    EXPECT_NEAR(fb.lower, c, 1e-10 * c);
    EXPECT_NEAR(fb.upper, c, 1e-10 * c);
    EXPECT_LT((oracle::frame_operator(g) - c * Eigen::MatrixXcd::Identity(n, n)).norm(), 1e-10 * c);
  }
}

TEST(GaborSystem, RejectsZeroWindow) {
  EXPECT_THROW(GaborSystem(Signal::Zero(5)), std::invalid_argument);
  EXPECT_THROW(GaborSystem(Signal(0)), std::invalid_argument);
}

TEST(Synthesize, Examples) {
  const GaborSystem sys = GaborSystem::gaussian(11);
  gen::Rng rng(7);
  const Signal f = random_signal(11, rng);
  EXPECT_LT((synthesize(stft(f, sys.window()), sys) - f).norm(), 1e-10 * f.norm());
  LatticeField c = LatticeField::Zero(11, 11);
  c(0, 0) = 1.0;
  EXPECT_LT((synthesize(c, sys) - sys.window()).norm(), 1e-14);
}

TEST(Synthesize, RequiresParseval) {
  const GaborSystem raw(unit_signal(5), GaborSystem::Normalization::none);
  EXPECT_THROW(synthesize(LatticeField::Zero(5, 5), raw), std::invalid_argument);
  EXPECT_THROW(synthesize(LatticeField::Zero(4, 4), GaborSystem::gaussian(5)), dimension_mismatch);
}
