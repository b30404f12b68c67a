#include "westv/derham.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "westv/quadrature.hpp"

namespace westv {
namespace {

// Padded shape: unused axes get extent 1 so a single triple loop covers 1D-3D.
struct Shape {
    int n[3];
    std::size_t total;
};

Shape shape_of(const TensorGrid& g) {
    Shape s{{1, 1, 1}, 1};
    for (int a = 0; a < g.dim; ++a) s.n[a] = g.extent(a);
    s.total = static_cast<std::size_t>(s.n[0]) * s.n[1] * s.n[2];
    return s;
}

enum class Acc { assign, add };

/// out (op)= sign * (in[shifted along axis] - in[.]); the shift is +1 for the
/// forward difference d0 and -1 for its transpose.
void diff_axis(const Shape& s, int axis, bool transpose, double sign, Acc acc,
               const double* in, double* out) {
    const std::size_t stride[3] = {static_cast<std::size_t>(s.n[1]) * s.n[2],
                                   static_cast<std::size_t>(s.n[2]), 1};
    const int na = s.n[axis];
    for (int i0 = 0; i0 < s.n[0]; ++i0)
        for (int i1 = 0; i1 < s.n[1]; ++i1)
            for (int i2 = 0; i2 < s.n[2]; ++i2) {
                const int ia = axis == 0 ? i0 : axis == 1 ? i1 : i2;
                const std::size_t idx =
                    (static_cast<std::size_t>(i0) * s.n[1] + i1) * s.n[2] + i2;
                int ja = transpose ? (ia == 0 ? na - 1 : ia - 1)
                                   : (ia == na - 1 ? 0 : ia + 1);
                const std::size_t nb = idx + (ja - ia) * stride[axis];
                const double val = sign * (in[nb] - in[idx]);
                if (acc == Acc::assign)
                    out[idx] = val;
                else
                    out[idx] += val;
            }
}

void require_dim(const TensorGrid& g, int lo, int hi, const char* who) {
    if (g.dim < lo || g.dim > hi) throw std::invalid_argument(std::string(who) + ": unsupported grid dimension");
}

}  // namespace

LinearOp build_d0_1d(int n) {
    if (n < 3) throw std::invalid_argument("build_d0_1d: n must be >= 3");
    Shape s{{n, 1, 1}, static_cast<std::size_t>(n)};
    auto fwd = [s](const double* in, double* out) { diff_axis(s, 0, false, 1.0, Acc::assign, in, out); };
    auto tr = [s](const double* in, double* out) { diff_axis(s, 0, true, 1.0, Acc::assign, in, out); };
    return LinearOp(LinearOp::Kind::circulant_stencil, static_cast<std::size_t>(n),
                    static_cast<std::size_t>(n), fwd, tr);
}

LinearOp build_gradient(const TensorGrid& grid) {
    require_dim(grid, 1, 3, "build_gradient");
    const Shape s = shape_of(grid);
    const int dim = grid.dim;
    const std::size_t N = s.total;
    auto fwd = [s, dim, N](const double* in, double* out) {
        for (int a = 0; a < dim; ++a) diff_axis(s, a, false, 1.0, Acc::assign, in, out + a * N);
    };
    auto tr = [s, dim, N](const double* in, double* out) {
        std::fill(out, out + N, 0.0);
        for (int a = 0; a < dim; ++a) diff_axis(s, a, true, 1.0, Acc::add, in + a * N, out);
    };
    return LinearOp(LinearOp::Kind::kronecker, N * static_cast<std::size_t>(dim), N, fwd, tr);
}

LinearOp build_curl(const TensorGrid& grid) {
    require_dim(grid, 2, 3, "build_curl");
    const Shape s = shape_of(grid);
    const std::size_t N = s.total;
    if (grid.dim == 2) {
        // C = (I (x) d0, -d0 (x) I): curl v = d_y v_x - d_x v_y.
        auto fwd = [s, N](const double* in, double* out) {
            diff_axis(s, 1, false, 1.0, Acc::assign, in, out);
            diff_axis(s, 0, false, -1.0, Acc::add, in + N, out);
        };
        auto tr = [s, N](const double* in, double* out) {
            diff_axis(s, 1, true, 1.0, Acc::assign, in, out);
            diff_axis(s, 0, true, -1.0, Acc::assign, in, out + N);
        };
        return LinearOp(LinearOp::Kind::kronecker, N, 2 * N, fwd, tr);
    }
    // 3D: (C v)_a = d_b v_c - d_c v_b with (a, b, c) cyclic.
    auto fwd = [s, N](const double* in, double* out) {
        for (int a = 0; a < 3; ++a) {
            const int b = (a + 1) % 3, c = (a + 2) % 3;
            diff_axis(s, b, false, 1.0, Acc::assign, in + c * N, out + a * N);
            diff_axis(s, c, false, -1.0, Acc::add, in + b * N, out + a * N);
        }
    };
    auto tr = [s, N](const double* in, double* out) {
        for (int a = 0; a < 3; ++a) {
            const int b = (a + 1) % 3, c = (a + 2) % 3;
            diff_axis(s, c, true, 1.0, Acc::assign, in + b * N, out + a * N);
            diff_axis(s, b, true, -1.0, Acc::add, in + c * N, out + a * N);
        }
    };
    return LinearOp(LinearOp::Kind::kronecker, 3 * N, 3 * N, fwd, tr);
}

LinearOp build_divergence(const TensorGrid& grid) {
    require_dim(grid, 3, 3, "build_divergence");
    const Shape s = shape_of(grid);
    const std::size_t N = s.total;
    // Forward-difference divergence of the primal complex: the same one-sided
    // stencil as G and C, so D(C w) cancels to exactly zero.  (The dual-complex
    // divergence -G^T lands on dual cells and is what the dynamics use.)
    auto fwd = [s, N](const double* in, double* out) {
        std::fill(out, out + N, 0.0);
        for (int a = 0; a < 3; ++a) diff_axis(s, a, false, 1.0, Acc::add, in + a * N, out);
    };
    auto tr = [s, N](const double* in, double* out) {
        for (int a = 0; a < 3; ++a) diff_axis(s, a, true, 1.0, Acc::assign, in, out + a * N);
    };
    return LinearOp(LinearOp::Kind::kronecker, N, 3 * N, fwd, tr);
}

LinearOp build_hodge_diagonal(const TensorGrid& grid, int degree) {
    require_dim(grid, 1, 3, "build_hodge_diagonal");
    const int dim = grid.dim;
    const int ncomp = component_count(dim, degree);
    const std::size_t N = grid.num_nodes();
    std::vector<double> d(N * static_cast<std::size_t>(ncomp));
    for (int c = 0; c < ncomp; ++c) {
        // Which axes this block is "aligned" with (h1 factor 1/dx instead of dx):
        // degree 1 -> axis c; degree 2 in 3D -> the two axes transverse to c;
        // top degree -> all axes; degree 0 -> none.
        double w = 1.0;
        for (int a = 0; a < dim; ++a) {
            bool aligned;
            if (degree == 0) aligned = false;
            else if (degree == dim) aligned = true;
            else if (degree == 1) aligned = (a == c);
            else aligned = (a != c);  // 2-forms in 3D
            const double dx = grid.axis(a).dx;
            w *= aligned ? 1.0 / dx : dx;
        }
        std::fill(d.begin() + c * static_cast<long>(N), d.begin() + (c + 1) * static_cast<long>(N), w);
    }
    return LinearOp::diagonal(std::move(d));
}

LinearOp build_h0_natural_1d(int n, double dx) {
    if (n < 3) throw std::invalid_argument("build_h0_natural_1d: n must be >= 3");
    const double c0 = 6.0 * dx / 8.0, c1 = dx / 8.0;
    auto mul = [n, c0, c1](const double* in, double* out) {
        for (int i = 0; i < n; ++i) {
            const int im = i == 0 ? n - 1 : i - 1;
            const int ip = i == n - 1 ? 0 : i + 1;
            out[i] = c1 * in[im] + c0 * in[i] + c1 * in[ip];
        }
    };
    return LinearOp(LinearOp::Kind::circulant_stencil, static_cast<std::size_t>(n),
                    static_cast<std::size_t>(n), mul, mul);
}

double gershgorin_laplacian_bound(const TensorGrid& grid) {
    double s = 0.0;
    for (int a = 0; a < grid.dim; ++a) {
        const double dx = grid.axis(a).dx;
        s += 1.0 / (dx * dx);
    }
    return 4.0 * s;
}

// ---- reduction -----------------------------------------------------------

FormCoefficients reduce_0form(const TensorGrid& grid, const ScalarField& f) {
    FormCoefficients out = FormCoefficients::zeros(grid, 0);
    const std::size_t N = grid.num_nodes();
    for (std::size_t idx = 0; idx < N; ++idx) {
        const auto mi = inverse_flat_index(grid, idx);
        out.data[idx] = f(grid.primal_point(mi));
    }
    check_finite(out.data, "reduce_0form");
    return out;
}

FormCoefficients reduce_1form(const TensorGrid& grid, const std::vector<FieldComponent>& F) {
    if (static_cast<int>(F.size()) != grid.dim)
        throw std::invalid_argument("reduce_1form: one component per axis required");
    FormCoefficients out = FormCoefficients::zeros(grid, 1);
    const std::size_t N = grid.num_nodes();
    for (int a = 0; a < grid.dim; ++a) {
        const double dx = grid.axis(a).dx;
        double* block = out.component(a);
        for (std::size_t idx = 0; idx < N; ++idx) {
            const auto mi = inverse_flat_index(grid, idx);
            Vec3 x0 = grid.primal_point(mi);
            if (F[static_cast<std::size_t>(a)].antiderivative) {
                Vec3 x1 = x0;
                x1[static_cast<std::size_t>(a)] += dx;
                block[idx] = F[static_cast<std::size_t>(a)].antiderivative(x1) -
                             F[static_cast<std::size_t>(a)].antiderivative(x0);
            } else {
                const auto& val = F[static_cast<std::size_t>(a)].value;
                auto along = [&val, &x0, a](double t) {
                    Vec3 x = x0;
                    x[static_cast<std::size_t>(a)] = t;
                    return val(x);
                };
                const double xa = x0[static_cast<std::size_t>(a)];
                block[idx] = integrate_adaptive(along, xa, xa + dx);
            }
        }
    }
    check_finite(out.data, "reduce_1form");
    return out;
}

namespace {

/// Iterated adaptive integral of f over the cell spanned by `axes` starting
/// at base point x0 (other coordinates held fixed).
double cell_integral(const TensorGrid& grid, const ScalarField& f, Vec3 x0,
                     const std::vector<int>& axes, std::size_t level) {
    if (level == axes.size()) return f(x0);
    const int a = axes[level];
    const double xa = x0[static_cast<std::size_t>(a)];
    auto slice = [&](double t) {
        Vec3 x = x0;
        x[static_cast<std::size_t>(a)] = t;
        return cell_integral(grid, f, x, axes, level + 1);
    };
    return integrate_adaptive(slice, xa, xa + grid.axis(a).dx);
}

}  // namespace

FormCoefficients reduce_2form_3d(const TensorGrid& grid, const std::vector<ScalarField>& F) {
    require_dim(grid, 3, 3, "reduce_2form_3d");
    if (F.size() != 3) throw std::invalid_argument("reduce_2form_3d: three components required");
    FormCoefficients out = FormCoefficients::zeros(grid, 2);
    const std::size_t N = grid.num_nodes();
    for (int a = 0; a < 3; ++a) {
        const std::vector<int> axes = {(a + 1) % 3 < (a + 2) % 3 ? (a + 1) % 3 : (a + 2) % 3,
                                       (a + 1) % 3 < (a + 2) % 3 ? (a + 2) % 3 : (a + 1) % 3};
        double* block = out.component(a);
        for (std::size_t idx = 0; idx < N; ++idx) {
            const auto mi = inverse_flat_index(grid, idx);
            block[idx] = cell_integral(grid, F[static_cast<std::size_t>(a)],
                                       grid.primal_point(mi), axes, 0);
        }
    }
    check_finite(out.data, "reduce_2form_3d");
    return out;
}

FormCoefficients reduce_top_form(const TensorGrid& grid, const ScalarField& f) {
    FormCoefficients out = FormCoefficients::zeros(grid, grid.dim);
    std::vector<int> axes;
    for (int a = 0; a < grid.dim; ++a) axes.push_back(a);
    const std::size_t N = grid.num_nodes();
    for (std::size_t idx = 0; idx < N; ++idx) {
        const auto mi = inverse_flat_index(grid, idx);
        out.data[idx] = cell_integral(grid, f, grid.primal_point(mi), axes, 0);
    }
    check_finite(out.data, "reduce_top_form");
    return out;
}

// ---- interpolation -------------------------------------------------------

namespace {

struct Loc {
    int cell;      // wrapped lower cell index
    double theta;  // fractional position within the cell, in [0, 1)
};

Loc locate(const UniformPeriodicGrid1D& g, double x) {
    const double t = (x - g.origin) / g.dx;
    const double f = std::floor(t);
    Loc l;
    l.cell = g.wrap(static_cast<int>(std::fmod(f, static_cast<double>(g.n_cells))));
    l.theta = t - f;
    return l;
}

}  // namespace

ScalarField interpolate_0form(const TensorGrid& grid, FormCoefficients coeffs) {
    if (coeffs.degree != 0) throw std::invalid_argument("interpolate_0form: degree-0 coefficients required");
    auto data = std::make_shared<std::vector<double>>(std::move(coeffs.data));
    TensorGrid g = grid;
    return [g, data](const Vec3& x) {
        Loc loc[3];
        for (int a = 0; a < g.dim; ++a) loc[a] = locate(g.axis(a), x[static_cast<std::size_t>(a)]);
        double v = 0.0;
        const int corners = 1 << g.dim;
        for (int corner = 0; corner < corners; ++corner) {
            std::array<int, 3> mi{0, 0, 0};
            double w = 1.0;
            for (int a = 0; a < g.dim; ++a) {
                const bool hi = (corner >> a) & 1;
                mi[static_cast<std::size_t>(a)] = loc[a].cell + (hi ? 1 : 0);
                w *= hi ? loc[a].theta : 1.0 - loc[a].theta;
            }
            v += w * (*data)[flat_index(g, mi)];
        }
        return v;
    };
}

std::function<Vec3(const Vec3&)> interpolate_1form(const TensorGrid& grid, FormCoefficients coeffs) {
    if (coeffs.degree != 1) throw std::invalid_argument("interpolate_1form: degree-1 coefficients required");
    auto data = std::make_shared<FormCoefficients>(std::move(coeffs));
    TensorGrid g = grid;
    return [g, data](const Vec3& x) {
        Loc loc[3];
        for (int a = 0; a < g.dim; ++a) loc[a] = locate(g.axis(a), x[static_cast<std::size_t>(a)]);
        Vec3 out{0.0, 0.0, 0.0};
        for (int comp = 0; comp < g.dim; ++comp) {
            // Edge polynomial 1/dx along the component axis, nodal hats across.
            const double* block = data->component(comp);
            double v = 0.0;
            const int corners = 1 << g.dim;
            for (int corner = 0; corner < corners; ++corner) {
                if ((corner >> comp) & 1) continue;  // no offset along own axis
                std::array<int, 3> mi{0, 0, 0};
                double w = 1.0;
                for (int a = 0; a < g.dim; ++a) {
                    const bool hi = (corner >> a) & 1;
                    mi[static_cast<std::size_t>(a)] = loc[a].cell + (hi ? 1 : 0);
                    if (a != comp) w *= hi ? loc[a].theta : 1.0 - loc[a].theta;
                }
                v += w * block[flat_index(g, mi)];
            }
            out[static_cast<std::size_t>(comp)] = v / g.axis(comp).dx;
        }
        return out;
    };
}

std::function<Vec3(const Vec3&)> interpolate_2form_3d(const TensorGrid& grid, FormCoefficients coeffs) {
    if (grid.dim != 3 || coeffs.degree != 2)
        throw std::invalid_argument("interpolate_2form_3d: 3D degree-2 coefficients required");
    auto data = std::make_shared<FormCoefficients>(std::move(coeffs));
    TensorGrid g = grid;
    return [g, data](const Vec3& x) {
        Loc loc[3];
        for (int a = 0; a < 3; ++a) loc[a] = locate(g.axis(a), x[static_cast<std::size_t>(a)]);
        Vec3 out{0.0, 0.0, 0.0};
        for (int comp = 0; comp < 3; ++comp) {
            // Face polynomial 1/(dx_b dx_c) across the face, nodal hat along comp.
            const double* block = data->component(comp);
            double v = 0.0, area = 1.0;
            for (int a = 0; a < 3; ++a)
                if (a != comp) area *= g.axis(a).dx;
            for (int hi = 0; hi <= 1; ++hi) {
                std::array<int, 3> mi{loc[0].cell, loc[1].cell, loc[2].cell};
                mi[static_cast<std::size_t>(comp)] += hi;
                const double w = hi ? loc[comp].theta : 1.0 - loc[comp].theta;
                v += w * block[flat_index(g, mi)];
            }
            out[static_cast<std::size_t>(comp)] = v / area;
        }
        return out;
    };
}

ScalarField interpolate_top_form(const TensorGrid& grid, FormCoefficients coeffs) {
    if (coeffs.degree != grid.dim)
        throw std::invalid_argument("interpolate_top_form: top-degree coefficients required");
    auto data = std::make_shared<std::vector<double>>(std::move(coeffs.data));
    TensorGrid g = grid;
    const double vol = grid.cell_volume();
    return [g, data, vol](const Vec3& x) {
        std::array<int, 3> mi{0, 0, 0};
        for (int a = 0; a < g.dim; ++a)
            mi[static_cast<std::size_t>(a)] = locate(g.axis(a), x[static_cast<std::size_t>(a)]).cell;
        return (*data)[flat_index(g, mi)] / vol;
    };
}

DeRhamComplex build_derham(const TensorGrid& grid) {
    DeRhamComplex c;
    c.grid = grid;
    c.G = build_gradient(grid);
    if (grid.dim >= 2) c.C = build_curl(grid);
    if (grid.dim == 3) c.D = build_divergence(grid);
    for (int deg = 0; deg <= grid.dim; ++deg) c.hodge.push_back(build_hodge_diagonal(grid, deg));
    if (grid.dim == 1) c.h0_natural = build_h0_natural_1d(grid.extent(0), grid.axis(0).dx);
    return c;
}

}  // namespace westv
