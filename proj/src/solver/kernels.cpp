#include "ltlplan/solver/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace ltlplan::solver::kernels {

namespace serial {

void project_and_update_dual(std::span<double> z, std::span<double> y,
                             std::span<const double> zt,
                             std::span<const double> rho,
                             std::span<const double> lo,
                             std::span<const double> hi, double alpha) {
  const std::size_t m = z.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double zr = alpha * zt[i] + (1.0 - alpha) * z[i];
    const double zn = std::clamp(zr + y[i] / rho[i], lo[i], hi[i]);
    y[i] += rho[i] * (zr - zn);
    z[i] = zn;
  }
}

double weighted_diff_inf_norm(std::span<const double> a,
                              std::span<const double> b,
                              std::span<const double> w) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double v = std::abs(a[i] - b[i]);
    if (!w.empty()) v *= w[i];
    out = std::max(out, v);
  }
  return out;
}

double weighted_inf_norm(std::span<const double> a, std::span<const double> w) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double v = std::abs(a[i]);
    if (!w.empty()) v *= w[i];
    out = std::max(out, v);
  }
  return out;
}

}  // namespace serial

namespace omp {

void project_and_update_dual(std::span<double> z, std::span<double> y,
                             std::span<const double> zt,
                             std::span<const double> rho,
                             std::span<const double> lo,
                             std::span<const double> hi, double alpha) {
  const long m = static_cast<long>(z.size());
#pragma omp parallel for schedule(static) if (m >= kParallelThreshold)
  for (long i = 0; i < m; ++i) {
    const double zr = alpha * zt[i] + (1.0 - alpha) * z[i];
    const double zn = std::clamp(zr + y[i] / rho[i], lo[i], hi[i]);
    y[i] += rho[i] * (zr - zn);
    z[i] = zn;
  }
}

double weighted_diff_inf_norm(std::span<const double> a,
                              std::span<const double> b,
                              std::span<const double> w) {
  const long m = static_cast<long>(a.size());
  double out = 0.0;
#pragma omp parallel for schedule(static) reduction(max : out) \
    if (m >= kParallelThreshold)
  for (long i = 0; i < m; ++i) {
    double v = std::abs(a[i] - b[i]);
    if (!w.empty()) v *= w[i];
    out = std::max(out, v);
  }
  return out;
}

double weighted_inf_norm(std::span<const double> a, std::span<const double> w) {
  const long m = static_cast<long>(a.size());
  double out = 0.0;
#pragma omp parallel for schedule(static) reduction(max : out) \
    if (m >= kParallelThreshold)
  for (long i = 0; i < m; ++i) {
    double v = std::abs(a[i]);
    if (!w.empty()) v *= w[i];
    out = std::max(out, v);
  }
  return out;
}

}  // namespace omp

void project_and_update_dual(Backend backend, std::span<double> z,
                             std::span<double> y, std::span<const double> zt,
                             std::span<const double> rho,
                             std::span<const double> lo,
                             std::span<const double> hi, double alpha) {
  if (backend == Backend::OpenMP) {
    omp::project_and_update_dual(z, y, zt, rho, lo, hi, alpha);
  } else {
    serial::project_and_update_dual(z, y, zt, rho, lo, hi, alpha);
  }
}

double weighted_diff_inf_norm(Backend backend, std::span<const double> a,
                              std::span<const double> b,
                              std::span<const double> w) {
  return backend == Backend::OpenMP ? omp::weighted_diff_inf_norm(a, b, w)
                                    : serial::weighted_diff_inf_norm(a, b, w);
}

double weighted_inf_norm(Backend backend, std::span<const double> a,
                         std::span<const double> w) {
  return backend == Backend::OpenMP ? omp::weighted_inf_norm(a, w)
                                    : serial::weighted_inf_norm(a, w);
}

}  // namespace ltlplan::solver::kernels
