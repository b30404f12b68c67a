#include "westv/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace westv {
namespace {

// 7-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kNodes[7] = {
    -0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
    0.0,
    0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
constexpr double kWeights[7] = {
    0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
    0.4179591836734694,
    0.3818300505051189, 0.2797053914892766, 0.1294849661688697};

double gauss7(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 7; ++i) s += kWeights[i] * f(c + h * kNodes[i]);
    return h * s;
}

double recurse(const std::function<double(double)>& f, double a, double b, double whole,
               double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = gauss7(f, a, m);
    const double right = gauss7(f, m, b);
    const double diff = left + right - whole;
    if (std::abs(diff) <= tol || depth == 0) return left + right + diff / 63.0;
    return recurse(f, a, m, left, 0.5 * tol, depth - 1) +
           recurse(f, m, b, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_floor) {
    if (a == b) return 0.0;
    const double whole = gauss7(f, a, b);
    const double scale = std::max(std::abs(whole), abs_floor);
    const double result = recurse(f, a, b, whole, rel_tol * scale, 40);
    if (!std::isfinite(result))
        throw std::runtime_error("integrate_adaptive: quadrature did not converge");
    return result;
}

}  // namespace westv
