/// Shared test utilities: deterministic random vectors and grids.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "westv/mesh.hpp"

namespace testutil {

inline std::vector<double> random_vector(std::size_t n, unsigned seed, double lo = -1.0,
                                         double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

/// Random dyadic rationals k/2^26: stencil sums and differences of these stay
/// exactly representable, so integer-cancellation identities hold bitwise.
inline std::vector<double> random_dyadic_vector(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-(1 << 26), 1 << 26);
    std::vector<double> v(n);
    for (auto& x : v) x = std::ldexp(static_cast<double>(dist(rng)), -26);
    return v;
}

inline westv::TensorGrid grid1d(int n, double length = 1.0, double origin = 0.0) {
    return westv::build_tensor_grid({westv::build_grid_1d(n, length, origin)});
}

inline westv::TensorGrid grid2d(int nx, int ny, double lx = 1.0, double ly = 1.0) {
    return westv::build_tensor_grid(
        {westv::build_grid_1d(nx, lx, 0.0), westv::build_grid_1d(ny, ly, 0.0)});
}

inline westv::TensorGrid grid3d(int nx, int ny, int nz, double l = 1.0) {
    return westv::build_tensor_grid({westv::build_grid_1d(nx, l, 0.0),
                                     westv::build_grid_1d(ny, l, 0.0),
                                     westv::build_grid_1d(nz, l, 0.0)});
}

inline double rel_close(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs(const std::vector<double>& a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace testutil
