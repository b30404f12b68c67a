#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "westv/mesh.hpp"

using namespace westv;

TEST_CASE("build_grid_1d populates spacing and staggered nodes") {
    const auto g = build_grid_1d(320, 1.0, 0.0);
    CHECK(g.dx == doctest::Approx(1.0 / 320).epsilon(1e-15));
    CHECK(g.dx * g.n_cells == doctest::Approx(g.length).epsilon(1e-15));

    const auto unit = build_grid_1d(4, 4.0, 0.0);
    CHECK(unit.dx == 1.0);

    const auto g10 = build_grid_1d(10, 10.0, 0.0);
    CHECK(g10.dual_node(0) == doctest::Approx(0.5));
    CHECK(g10.primal_node(3) == doctest::Approx(3.0));
    // periodic index arithmetic
    CHECK(g10.primal_node(13) == g10.primal_node(3));
    CHECK(g10.primal_node(-1) == g10.primal_node(9));
}

TEST_CASE("build_grid_1d rejects degenerate grids") {
    CHECK_THROWS_AS(build_grid_1d(2, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_grid_1d(0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_grid_1d(8, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_grid_1d(8, -2.0, 0.0), std::invalid_argument);
}

TEST_CASE("grids carry an explicit origin") {
    const auto g = build_grid_1d(5, 10.0, 3.0);
    CHECK(g.primal_node(0) == 3.0);
    CHECK(g.dual_node(0) == doctest::Approx(4.0));
}

TEST_CASE("dual nodes sit midway between consecutive primal nodes") {
    const auto g = build_grid_1d(7, 1.0, 0.25);
    for (int i = 0; i < g.n_cells; ++i) {
        // unwrapped neighbor: node i+1 before periodic identification
        const double lo = g.origin + i * g.dx;
        const double hi = g.origin + (i + 1) * g.dx;
        CHECK(g.dual_node(i) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-15));
    }
}

TEST_CASE("flat_index follows the x-outermost lexicographic layout") {
    const TensorGrid g =
        build_tensor_grid({build_grid_1d(3, 1.0, 0.0), build_grid_1d(4, 1.0, 0.0)});
    CHECK(flat_index(g, {1, 2, 0}) == 6);  // i_x * n_y + i_y
    CHECK(flat_index(g, {0, 0, 0}) == 0);
    CHECK(flat_index(g, {4, -1, 0}) == 7);  // wraps to (1, 3)
}

TEST_CASE("flat_index is bijective on grids up to 8x8x8 (exhaustive)") {
    const TensorGrid g = build_tensor_grid(
        {build_grid_1d(8, 1.0, 0.0), build_grid_1d(8, 1.0, 0.0), build_grid_1d(8, 1.0, 0.0)});
    std::vector<bool> seen(g.num_nodes(), false);
    for (int ix = 0; ix < 8; ++ix)
        for (int iy = 0; iy < 8; ++iy)
            for (int iz = 0; iz < 8; ++iz) {
                const std::size_t f = flat_index(g, {ix, iy, iz});
                REQUIRE(f < g.num_nodes());
                CHECK(!seen[f]);
                seen[f] = true;
                const auto mi = inverse_flat_index(g, f);
                CHECK(mi[0] == ix);
                CHECK(mi[1] == iy);
                CHECK(mi[2] == iz);
            }
}

TEST_CASE("form coefficient block counts match the degree") {
    const TensorGrid g2 =
        build_tensor_grid({build_grid_1d(3, 1.0, 0.0), build_grid_1d(5, 1.0, 0.0)});
    CHECK(dof_count(g2, 0) == 15);
    CHECK(dof_count(g2, 1) == 30);
    CHECK(dof_count(g2, 2) == 15);
    const TensorGrid g3 = build_tensor_grid(
        {build_grid_1d(3, 1.0, 0.0), build_grid_1d(4, 1.0, 0.0), build_grid_1d(5, 1.0, 0.0)});
    CHECK(component_count(3, 2) == 3);
    CHECK(dof_count(g3, 2) == 180);

    auto f = FormCoefficients::zeros(g2, 1);
    CHECK(f.num_components() == 2);
    CHECK(f.block_size() == 15);
    f.component(1)[0] = 2.5;
    CHECK(f.data[15] == 2.5);
}

TEST_CASE("cell volume and node counts multiply over axes") {
    const TensorGrid g =
        build_tensor_grid({build_grid_1d(10, 1.0, 0.0), build_grid_1d(20, 2.0, 0.0)});
    CHECK(g.num_nodes() == 200);
    CHECK(g.cell_volume() == doctest::Approx(0.1 * 0.1).epsilon(1e-15));
}

TEST_CASE("check_finite rejects NaN and Inf") {
    CHECK_NOTHROW(check_finite({1.0, -2.0, 0.0}, "ok"));
    CHECK_THROWS_AS(check_finite({1.0, std::nan("")}, "bad"), std::runtime_error);
    CHECK_THROWS_AS(check_finite({std::numeric_limits<double>::infinity()}, "bad"),
                    std::runtime_error);
}
