/// @file mesh.hpp
/// @brief Uniform periodic grids, their tensor products, and the flat-index
///        layout shared by every operator in the library.
///
/// Index convention (binding for all operator builders): flat indices are
/// lexicographic with the LAST axis fastest, i.e. x is outermost.  For a
/// 2D grid of shape (nx, ny): flat = ix*ny + iy.  This makes the x-block of
/// the gradient equal to d0 (x) I exactly as a Kronecker product.

#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace westv {

using Vec3 = std::array<double, 3>;

/// One axis of the mesh: n_cells primal nodes x_i = origin + i*dx and the
/// staggered dual nodes x_{i+1/2} = origin + (i + 1/2)*dx, all modulo length.
struct UniformPeriodicGrid1D {
    int n_cells = 0;
    double length = 0.0;
    double origin = 0.0;
    double dx = 0.0;

    double primal_node(int i) const { return origin + wrap(i) * dx; }
    double dual_node(int i) const { return origin + (wrap(i) + 0.5) * dx; }

    int wrap(int i) const {
        int m = i % n_cells;
        return m < 0 ? m + n_cells : m;
    }
};

/// Throws std::invalid_argument for degenerate grids (n_cells < 3 keeps the
/// 3-point stencils from self-overlapping; length must be positive).
UniformPeriodicGrid1D build_grid_1d(int n_cells, double length, double origin = 0.0);

/// Tensor product of 1-3 periodic axes, ordered (x, y, z).
struct TensorGrid {
    int dim = 0;
    std::array<UniformPeriodicGrid1D, 3> axes{};

    const UniformPeriodicGrid1D& axis(int a) const { return axes[static_cast<std::size_t>(a)]; }
    int extent(int a) const { return axes[static_cast<std::size_t>(a)].n_cells; }

    std::size_t num_nodes() const {
        std::size_t n = 1;
        for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(extent(a));
        return n;
    }

    double cell_volume() const {
        double v = 1.0;
        for (int a = 0; a < dim; ++a) v *= axes[static_cast<std::size_t>(a)].dx;
        return v;
    }

    /// Coordinates of the primal node with the given (unwrapped) multi-index.
    Vec3 primal_point(std::array<int, 3> mi) const {
        Vec3 x{0.0, 0.0, 0.0};
        for (int a = 0; a < dim; ++a)
            x[static_cast<std::size_t>(a)] = axes[static_cast<std::size_t>(a)].primal_node(mi[static_cast<std::size_t>(a)]);
        return x;
    }
};

TensorGrid build_tensor_grid(const std::vector<UniformPeriodicGrid1D>& axes);

/// Periodic-wrapping flat index; bijective on [0, num_nodes).
std::size_t flat_index(const TensorGrid& grid, std::array<int, 3> multi_index);

/// Inverse of flat_index (components in [0, n_cells) per axis).
std::array<int, 3> inverse_flat_index(const TensorGrid& grid, std::size_t flat);

/// How many scalar blocks a degree-ell form carries on a dim-dimensional grid
/// (1-forms and, in 3D, 2-forms are vector-valued with one block per axis).
int component_count(int dim, int degree);

/// Total coefficient count for a degree-ell form.
std::size_t dof_count(const TensorGrid& grid, int degree);

enum class ComplexTag { primal, dual };

/// Flat coefficient vector tagged with its form degree; components (if any)
/// are concatenated in axis order, each of length num_nodes().
struct FormCoefficients {
    int degree = 0;
    ComplexTag complex_tag = ComplexTag::primal;
    int dim = 0;
    std::vector<double> data;

    static FormCoefficients zeros(const TensorGrid& grid, int degree,
                                  ComplexTag tag = ComplexTag::primal);

    int num_components() const { return component_count(dim, degree); }
    std::size_t block_size() const { return data.size() / static_cast<std::size_t>(num_components()); }

    double* component(int c) { return data.data() + static_cast<std::size_t>(c) * block_size(); }
    const double* component(int c) const { return data.data() + static_cast<std::size_t>(c) * block_size(); }
};

/// Verifies that every entry is finite; throws std::runtime_error otherwise.
void check_finite(const std::vector<double>& data, const char* what);

}  // namespace westv
