/// @file quadrature.hpp
/// @brief Adaptive Gauss quadrature for the reduction operators.

#pragma once

#include <functional>

namespace westv {

/// Adaptive 7-point Gauss-Legendre integration of f over [a, b] by interval
/// bisection, to relative tolerance rel_tol (absolute floor abs_floor for
/// integrands that vanish).  Throws std::runtime_error if the recursion depth
/// is exhausted before the tolerance is met.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12, double abs_floor = 1e-300);

}  // namespace westv
