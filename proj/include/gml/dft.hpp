#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "gml/core.hpp"

namespace gml::dft {

// Unscaled transforms:
//   forward(x)[k]  = sum_t x[t] e^{-2 pi i k t / n}
//   backward(x)[k] = sum_t x[t] e^{+2 pi i k t / n}

inline Eigen::VectorXcd forward(const Eigen::VectorXcd& x) {
  thread_local Eigen::FFT<double> fft;
  Eigen::VectorXcd out(x.size());
  fft.fwd(out, x);
  return out;
}

inline Eigen::VectorXcd backward(const Eigen::VectorXcd& x) {
  thread_local Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  Eigen::VectorXcd out(x.size());
  fft.inv(out, x);
  return out;
}

/// Row-then-column 2-D transform of a dense array.
inline Eigen::MatrixXcd forward2(const Eigen::MatrixXcd& a) {
  Eigen::MatrixXcd out(a.rows(), a.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    out.row(r) = forward(a.row(r).transpose()).transpose();
  }
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    out.col(c) = forward(out.col(c));
  }
  return out;
}

inline Eigen::MatrixXcd backward2(const Eigen::MatrixXcd& a) {
  Eigen::MatrixXcd out(a.rows(), a.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    out.row(r) = backward(a.row(r).transpose()).transpose();
  }
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    out.col(c) = backward(out.col(c));
  }
  return out;
}

}  // namespace gml::dft
