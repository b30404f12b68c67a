#include "westv/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace westv {

UniformPeriodicGrid1D build_grid_1d(int n_cells, double length, double origin) {
    if (n_cells < 3)
        throw std::invalid_argument("build_grid_1d: n_cells must be >= 3, got " +
                                    std::to_string(n_cells));
    if (!(length > 0.0))
        throw std::invalid_argument("build_grid_1d: length must be positive");
    UniformPeriodicGrid1D g;
    g.n_cells = n_cells;
    g.length = length;
    g.origin = origin;
    g.dx = length / n_cells;
    return g;
}

TensorGrid build_tensor_grid(const std::vector<UniformPeriodicGrid1D>& axes) {
    if (axes.empty() || axes.size() > 3)
        throw std::invalid_argument("build_tensor_grid: dim must be 1, 2, or 3");
    TensorGrid g;
    g.dim = static_cast<int>(axes.size());
    for (std::size_t a = 0; a < axes.size(); ++a) g.axes[a] = axes[a];
    return g;
}

std::size_t flat_index(const TensorGrid& grid, std::array<int, 3> multi_index) {
    std::size_t flat = 0;
    for (int a = 0; a < grid.dim; ++a) {
        const auto& ax = grid.axes[static_cast<std::size_t>(a)];
        flat = flat * static_cast<std::size_t>(ax.n_cells) +
               static_cast<std::size_t>(ax.wrap(multi_index[static_cast<std::size_t>(a)]));
    }
    return flat;
}

std::array<int, 3> inverse_flat_index(const TensorGrid& grid, std::size_t flat) {
    std::array<int, 3> mi{0, 0, 0};
    for (int a = grid.dim - 1; a >= 0; --a) {
        std::size_t n = static_cast<std::size_t>(grid.extent(a));
        mi[static_cast<std::size_t>(a)] = static_cast<int>(flat % n);
        flat /= n;
    }
    return mi;
}

int component_count(int dim, int degree) {
    if (degree < 0 || degree > dim)
        throw std::invalid_argument("component_count: degree out of range for dim");
    if (degree == 0 || degree == dim) return 1;
    if (degree == 1) return dim;
    return 3;  // 2-forms in 3D
}

std::size_t dof_count(const TensorGrid& grid, int degree) {
    return grid.num_nodes() * static_cast<std::size_t>(component_count(grid.dim, degree));
}

FormCoefficients FormCoefficients::zeros(const TensorGrid& grid, int degree, ComplexTag tag) {
    FormCoefficients f;
    f.degree = degree;
    f.complex_tag = tag;
    f.dim = grid.dim;
    f.data.assign(dof_count(grid, degree), 0.0);
    return f;
}

void check_finite(const std::vector<double>& data, const char* what) {
    for (std::size_t i = 0; i < data.size(); ++i)
        if (!std::isfinite(data[i]))
            throw std::runtime_error(std::string(what) + ": non-finite entry at index " +
                                     std::to_string(i));
}

}  // namespace westv
