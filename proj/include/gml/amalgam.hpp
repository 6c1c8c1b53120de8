#pragma once

// Sampled Wiener amalgam norms W(C, l^q_{v_s})(R^2) and the convolution and
// GL-invariance estimates for them.

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <string>

#include "gml/core.hpp"
#include "gml/dft.hpp"

namespace gml {

using PlaneFunction = std::function<cplx(double, double)>;

/// Samples on the grid -R + i/M, i = 0..2RM, per axis (box [-R, R]^2).
class SampledField {
 public:
  SampledField(long extent, long samples_per_cell, Eigen::MatrixXcd values)
      : extent_(extent), per_cell_(samples_per_cell), values_(std::move(values)) {
    if (per_cell_ < 4) throw std::invalid_argument("SampledField: need at least 4 samples per cell");
    if (extent_ < 1) throw std::invalid_argument("SampledField: extent must be >= 1");
    if (values_.rows() != side() || values_.cols() != side()) {
      throw dimension_mismatch("SampledField: grid size does not match extent and resolution");
    }
    if (!values_.allFinite()) throw std::invalid_argument("SampledField: non-finite sample");
  }

  static SampledField sample(const PlaneFunction& f, long extent, long samples_per_cell) {
    const long n = 2 * extent * samples_per_cell + 1;
    Eigen::MatrixXcd v(n, n);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        v(i, j) = f(coordinate(i, extent, samples_per_cell), coordinate(j, extent, samples_per_cell));
      }
    return {extent, samples_per_cell, std::move(v)};
  }

  static double coordinate(long i, long extent, long per_cell) {
    return -static_cast<double>(extent) + static_cast<double>(i) / static_cast<double>(per_cell);
  }

  long extent() const { return extent_; }
  long samples_per_cell() const { return per_cell_; }
  long side() const { return 2 * extent_ * per_cell_ + 1; }
  double spacing() const { return 1.0 / static_cast<double>(per_cell_); }
  const Eigen::MatrixXcd& values() const { return values_; }

  /// Largest |F| on the boundary of the box; the recorded truncation tail.
  double boundary_max() const {
    const long e = side() - 1;
    return std::max({values_.row(0).cwiseAbs().maxCoeff(), values_.row(e).cwiseAbs().maxCoeff(),
                     values_.col(0).cwiseAbs().maxCoeff(), values_.col(e).cwiseAbs().maxCoeff()});
  }

  bool same_grid(const SampledField& o) const { return extent_ == o.extent_ && per_cell_ == o.per_cell_; }

 private:
  long extent_;
  long per_cell_;
  Eigen::MatrixXcd values_;
};

/// (sum_lambda (max_{z in lambda + [0,1]^2} |F(z)|)^q v_s(lambda)^q)^{1/q},
/// cell maxima taken over the closed cell's grid points.
inline double amalgam_norm(const SampledField& f, const QParams& p) {
  const long r = f.extent(), m = f.samples_per_cell();
  const Eigen::MatrixXd mag = f.values().cwiseAbs();
  double acc = 0.0;
  for (long cx = -r; cx < r; ++cx) {
    for (long cy = -r; cy < r; ++cy) {
      const double cell_max = mag.block((cx + r) * m, (cy + r) * m, m + 1, m + 1).maxCoeff();
      if (cell_max == 0.0) continue;
      acc += std::pow(cell_max * weight_eval({cx, cy}, p.s), p.q);
    }
  }
  return std::pow(acc, 1.0 / p.q);
}

struct RefinedNorm {
  double norm = 0.0;          // at M samples per cell
  double refined_norm = 0.0;  // at 2M
  double error_estimate = 0.0; // |refined - norm|; grid maxima only increase under refinement
};

inline RefinedNorm amalgam_norm_refined(const PlaneFunction& f, long extent, long samples_per_cell,
                                        const QParams& p) {
  RefinedNorm out;
  out.norm = amalgam_norm(SampledField::sample(f, extent, samples_per_cell), p);
  out.refined_norm = amalgam_norm(SampledField::sample(f, extent, 2 * samples_per_cell), p);
  out.error_estimate = std::abs(out.refined_norm - out.norm);
  return out;
}

/// Riemann-sum convolution on the common grid, restricted to the same box.
inline SampledField convolve_fields(const SampledField& f, const SampledField& g) {
  if (!f.same_grid(g)) throw dimension_mismatch("convolve_fields: grid mismatch");
  const long len = f.side();
  const long pad = 2 * len - 1;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(pad, pad), b = Eigen::MatrixXcd::Zero(pad, pad);
  a.topLeftCorner(len, len) = f.values();
  b.topLeftCorner(len, len) = g.values();
  Eigen::MatrixXcd prod = dft::forward2(a).cwiseProduct(dft::forward2(b));
  Eigen::MatrixXcd full = dft::backward2(prod);
  const double h = f.spacing();
  const double scale = h * h / static_cast<double>(pad * pad);
  // Linear index p sits at coordinate -2R + p/M; the box starts at p = R M.
  const long offset = f.extent() * f.samples_per_cell();
  return {f.extent(), f.samples_per_cell(), full.block(offset, offset, len, len) * scale};
}

/// ||F * G|| / (||F|| ||G||), zero when either factor vanishes.
inline double conv_embedding_check(const SampledField& f, const SampledField& g, const QParams& p) {
  const double nf = amalgam_norm(f, p), ng = amalgam_norm(g, p);
  if (nf == 0.0 || ng == 0.0) return 0.0;
  return amalgam_norm(convolve_fields(f, g), p) / (nf * ng);
}

using Mat2 = Eigen::Matrix2d;

/// Largest number of unit cells lambda' + [0,1]^2 meeting M(lambda + [0,1]^2)
/// in positive area, over cells lambda of [-R, R)^2.
inline long covering_multiplicity(const Mat2& m, long extent) {
  const double eps = 1e-12;
  const std::array<Eigen::Vector2d, 4> unit{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 1),
                                            Eigen::Vector2d(0, 1)};
  std::array<Eigen::Vector2d, 4> axes{Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)};
  {
    const Eigen::Vector2d e1 = m.col(0), e2 = m.col(1);
    axes[2] = Eigen::Vector2d(-e1.y(), e1.x());
    axes[3] = Eigen::Vector2d(-e2.y(), e2.x());
  }
  long beta = 0;
  for (long cx = -extent; cx < extent; ++cx) {
    for (long cy = -extent; cy < extent; ++cy) {
      std::array<Eigen::Vector2d, 4> poly;
      for (int i = 0; i < 4; ++i) poly[i] = m * (unit[i] + Eigen::Vector2d(cx, cy));
      double lo_x = poly[0].x(), hi_x = lo_x, lo_y = poly[0].y(), hi_y = lo_y;
      for (const auto& v : poly) {
        lo_x = std::min(lo_x, v.x());
        hi_x = std::max(hi_x, v.x());
        lo_y = std::min(lo_y, v.y());
        hi_y = std::max(hi_y, v.y());
      }
      long count = 0;
      for (long qx = static_cast<long>(std::floor(lo_x)) - 1; qx <= static_cast<long>(std::ceil(hi_x)); ++qx) {
        for (long qy = static_cast<long>(std::floor(lo_y)) - 1; qy <= static_cast<long>(std::ceil(hi_y)); ++qy) {
          bool overlap = true;
          for (const auto& axis : axes) {
            double p_lo = poly[0].dot(axis), p_hi = p_lo;
            for (const auto& v : poly) {
              p_lo = std::min(p_lo, v.dot(axis));
              p_hi = std::max(p_hi, v.dot(axis));
            }
            double s_lo = std::numeric_limits<double>::infinity(), s_hi = -s_lo;
            for (const auto& u : unit) {
              const double d = (u + Eigen::Vector2d(qx, qy)).dot(axis);
              s_lo = std::min(s_lo, d);
              s_hi = std::max(s_hi, d);
            }
            if (std::min(p_hi, s_hi) - std::max(p_lo, s_lo) <= eps * axis.norm()) {
              overlap = false;
              break;
            }
          }
          if (overlap) ++count;
        }
      }
      beta = std::max(beta, count);
    }
  }
  return beta;
}

struct GlInvarianceCheck {
  double ratio = 0.0;  // ||F o M|| / ||F||
  long beta = 0;       // measured covering multiplicity
  double bound = 0.0;  // 4^d |det A| beta with d = 1, A = I
  bool holds = false;  // ratio^q <= bound
};

inline GlInvarianceCheck gl_invariance_check(const PlaneFunction& f, long extent, long samples_per_cell,
                                             const Mat2& m, const QParams& p) {
  if (std::abs(m.determinant()) < 1e-14) throw std::invalid_argument("gl_invariance_check: singular matrix");
  const auto composed = [&](double x, double y) {
    const Eigen::Vector2d z = m * Eigen::Vector2d(x, y);
    return f(z.x(), z.y());
  };
  GlInvarianceCheck out;
  const double base = amalgam_norm(SampledField::sample(f, extent, samples_per_cell), p);
  const double moved = amalgam_norm(SampledField::sample(composed, extent, samples_per_cell), p);
  out.ratio = base > 0.0 ? moved / base : 0.0;
  out.beta = covering_multiplicity(m, extent);
  out.bound = 4.0 * static_cast<double>(out.beta);
  out.holds = std::pow(out.ratio, p.q) <= out.bound;
  return out;
}

// Named presets.

inline cplx gaussian_field(double x, double y) { return std::exp(-std::numbers::pi * (x * x + y * y)); }

inline cplx chirped_gaussian_field(double x, double y) {
  return gaussian_field(x, y) * std::polar(1.0, std::numbers::pi * (x * x - y * y));
}

/// Smooth bump of peak 1 at (cx, cy), supported in the disc of radius rho.
inline PlaneFunction bump_field(double cx = 0.5, double cy = 0.5, double rho = 0.4) {
  return [=](double x, double y) -> cplx {
    const double r2 = ((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (rho * rho);
    return r2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0;
  };
}

inline PlaneFunction field_preset(const std::string& name) {
  if (name == "gaussian") return gaussian_field;
  if (name == "chirped-gaussian") return chirped_gaussian_field;
  if (name == "bump") return bump_field();
  throw std::invalid_argument("unknown field preset '" + name + "'");
}

}  // namespace gml
