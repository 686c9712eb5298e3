#pragma once

#include <span>

namespace ltlplan::solver::kernels {

// Row-wise ADMM kernels. Each has a plain serial reference and an OpenMP
// version; both produce bit-identical results (element-wise updates and
// max-reductions are order independent), which the unit tests assert.

enum class Backend { Serial, OpenMP };

/// Below this many rows the OpenMP path runs serially.
inline constexpr int kParallelThreshold = 4096;

/// Relaxed projection and dual ascent for the splitting variable:
///   zr = alpha*zt + (1-alpha)*z
///   z' = clamp(zr + y/rho, lo, hi)
///   y' = y + rho*(zr - z')
void project_and_update_dual(Backend backend, std::span<double> z,
                             std::span<double> y, std::span<const double> zt,
                             std::span<const double> rho,
                             std::span<const double> lo,
                             std::span<const double> hi, double alpha);

/// max_i |a_i - b_i| * w_i (w may be empty for unit weights).
double weighted_diff_inf_norm(Backend backend, std::span<const double> a,
                              std::span<const double> b,
                              std::span<const double> w);

/// max_i |a_i| * w_i (w may be empty).
double weighted_inf_norm(Backend backend, std::span<const double> a,
                         std::span<const double> w);

namespace serial {
void project_and_update_dual(std::span<double> z, std::span<double> y,
                             std::span<const double> zt,
                             std::span<const double> rho,
                             std::span<const double> lo,
                             std::span<const double> hi, double alpha);
double weighted_diff_inf_norm(std::span<const double> a,
                              std::span<const double> b,
                              std::span<const double> w);
double weighted_inf_norm(std::span<const double> a, std::span<const double> w);
}  // namespace serial

namespace omp {
void project_and_update_dual(std::span<double> z, std::span<double> y,
                             std::span<const double> zt,
                             std::span<const double> rho,
                             std::span<const double> lo,
                             std::span<const double> hi, double alpha);
double weighted_diff_inf_norm(std::span<const double> a,
                              std::span<const double> b,
                              std::span<const double> w);
double weighted_inf_norm(std::span<const double> a, std::span<const double> w);
}  // namespace omp

}  // namespace ltlplan::solver::kernels
