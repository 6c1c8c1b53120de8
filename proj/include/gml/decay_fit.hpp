#pragma once

#include <cmath>
#include <map>
#include <vector>

namespace gml {

/// Least-squares slope of y against x; 0 for fewer than two distinct abscissae.
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

struct DecayFit {
  double exponential_rate = 0.0;    // |b| ~ exp(-rate * r)
  double polynomial_exponent = 0.0; // |b| ~ (1 + r)^(-exponent)
};

/// Fits shell maxima (integer radius -> max magnitude). Shell values below
/// 1e-16 of the peak are clamped to that floor, so exactly vanishing shells
/// count as machine-precision decay rather than being dropped.
inline DecayFit fit_shell_decay(const std::map<long, double>& shell_max) {
  double peak = 0.0;
  for (const auto& [r, v] : shell_max) peak = std::max(peak, v);
  DecayFit fit;
  if (peak <= 0.0 || shell_max.size() < 2) return fit;
  const double floor = peak * 1e-16;
  std::vector<double> r, logr, logv;
  for (const auto& [radius, v] : shell_max) {
    r.push_back(static_cast<double>(radius));
    logr.push_back(std::log1p(static_cast<double>(radius)));
    logv.push_back(std::log(std::max(v, floor)));
  }
  fit.exponential_rate = -ls_slope(r, logv);
  fit.polynomial_exponent = -ls_slope(logr, logv);
  return fit;
}

}  // namespace gml
