#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"
#include "westv/westervelt.hpp"

using namespace westv;
using testutil::grid1d;
using testutil::grid2d;

TEST_CASE("constitutive map rho = h^d (1 - k p) p and its inverse") {
    WesterveltParams prm;
    prm.k = 0.2;

    // unit cell volume: p = 0.5 -> rho = (1 - 0.1) * 0.5 = 0.45
    const auto rho = rho_of_p({0.5}, prm, 1.0);
    CHECK(rho[0] == doctest::Approx(0.45).epsilon(1e-15));
    const auto p = p_of_rho({0.45}, prm, 1.0);
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-14));

    // cell volume scales rho linearly
    CHECK(rho_of_p({0.5}, prm, 0.25)[0] == doctest::Approx(0.1125).epsilon(1e-15));
    CHECK(p_of_rho({0.1125}, prm, 0.25)[0] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("constitutive round trip to 1e-13 on random safe states") {
    WesterveltParams prm;
    prm.k = 0.2;
    const auto p = testutil::random_vector(64, 3, -1.0, 1.0);  // |kp| <= 0.2, safe branch
    const auto back = p_of_rho(rho_of_p(p, prm, 0.015625), prm, 0.015625);
    CHECK(testutil::max_abs_diff(back, p) < 1e-13);
}

TEST_CASE("k = 0 uses the exact linear branch") {
    WesterveltParams prm;  // k = 0
    const auto p = p_of_rho({0.3, -0.7, 0.0}, prm, 0.5);
    CHECK(p[0] == 0.6);
    CHECK(p[1] == -1.4);
    CHECK(p[2] == 0.0);
}

TEST_CASE("negative discriminant reports the offending entry") {
    WesterveltParams prm;
    prm.k = 0.2;
    // 1 - 4*0.2*2.0 = -0.6 < 0 at index 2
    try {
        p_of_rho({0.0, 0.1, 2.0, 0.1}, prm, 1.0);
        FAIL("expected DiscriminantNegative");
    } catch (const DiscriminantNegative& e) {
        CHECK(e.index == 2);
        CHECK(e.value == doctest::Approx(-0.6).epsilon(1e-14));
    }
}

TEST_CASE("Hamiltonian matches hand values on small grids") {
    const TensorGrid g = grid1d(4);  // dx = 0.25
    const DeRhamComplex cplx = build_derham(g);

    WesterveltParams lin;  // k = 0
    const SoundSpeedWeights unit = build_sound_speed_weights(g, lin);
    // p = ones, v = 0: H = 1/2 sum dx = 0.5
    SolverState s = make_state(0.0, std::vector<double>(4, 1.0), std::vector<double>(4, 0.0),
                               lin, g.cell_volume());
    CHECK(hamiltonian(s, lin, cplx, unit) == doctest::Approx(0.5).epsilon(1e-15));

    // cubic term: k = 0.3 subtracts (2k/3) * 4 * dx = 0.2
    WesterveltParams nl;
    nl.k = 0.3;
    SolverState sn = make_state(0.0, std::vector<double>(4, 1.0), std::vector<double>(4, 0.0),
                                nl, g.cell_volume());
    CHECK(hamiltonian(sn, nl, cplx, unit) == doctest::Approx(0.3).epsilon(1e-14));

    // kinetic term: p = 0, v = ones: H = 1/2 sum (1/dx) = 8
    SolverState sv = make_state(0.0, std::vector<double>(4, 0.0), std::vector<double>(4, 1.0),
                                lin, g.cell_volume());
    CHECK(hamiltonian(sv, lin, cplx, unit) == doctest::Approx(8.0).epsilon(1e-15));
}

TEST_CASE("momentum is the weighted H1 image of v") {
    const TensorGrid g = grid1d(10, 1.0);  // dx = 0.1
    const DeRhamComplex cplx = build_derham(g);
    WesterveltParams prm;
    const auto unit = build_sound_speed_weights(g, prm);
    const auto m = momentum_of_v(std::vector<double>(10, 1.0), cplx.H(1), unit);
    for (double x : m) CHECK(x == doctest::Approx(10.0).epsilon(1e-15));
}

TEST_CASE("dissipation rate is -b (Gp)^T H1 (Gp)") {
    const TensorGrid g = grid1d(4);  // dx = 0.25
    const DeRhamComplex cplx = build_derham(g);
    WesterveltParams prm;
    prm.b = 1.0;
    // p = e0: Gp = (-1,0,0,1), rate = -1 * 4 * 2 = -8
    CHECK(dissipation_rate({1, 0, 0, 0}, prm, cplx) == doctest::Approx(-8.0).epsilon(1e-15));

    prm.b = 0.37;
    const auto p = testutil::random_vector(4, 9);
    CHECK(dissipation_rate(p, prm, cplx) <= 0.0);
    CHECK(dissipation_rate(p, prm, cplx) ==
          doctest::Approx(0.37 * dissipation_rate(p, WesterveltParams{0.0, 1.0, {}, {}}, cplx))
              .epsilon(1e-14));
}

TEST_CASE("Hamiltonian gradients: dH/drho = p and dH/dv = m") {
    const TensorGrid g = grid1d(8);
    const DeRhamComplex cplx = build_derham(g);
    WesterveltParams prm;
    prm.k = 0.2;
    const auto weights = build_sound_speed_weights(g, prm);
    const double vol = g.cell_volume();

    // keep |p| bounded away from 0 so the relative comparison is meaningful
    auto p0 = testutil::random_vector(8, 21, 0.2, 0.6);
    for (std::size_t i = 1; i < 8; i += 2) p0[i] = -p0[i];
    const auto v0 = testutil::random_vector(8, 22);
    const SolverState base = make_state(0.0, p0, v0, prm, vol);

    const double eps = 1e-5;
    auto H_of = [&](const std::vector<double>& rho, const std::vector<double>& v) {
        SolverState s;
        s.rho = rho;
        s.p = p_of_rho(rho, prm, vol);
        s.v = v;
        return hamiltonian(s, prm, cplx, weights);
    };

    for (std::size_t i = 0; i < 8; ++i) {
        auto rp = base.rho, rm = base.rho;
        rp[i] += eps;
        rm[i] -= eps;
        const double grad = (H_of(rp, base.v) - H_of(rm, base.v)) / (2 * eps);
        CHECK(testutil::rel_close(grad, base.p[i]) < 1e-8);
    }

    const auto m = momentum_of_v(base.v, cplx.H(1), weights);
    for (std::size_t i = 0; i < 8; ++i) {
        auto vp = base.v, vm = base.v;
        vp[i] += eps;
        vm[i] -= eps;
        const double grad = (H_of(base.rho, vp) - H_of(base.rho, vm)) / (2 * eps);
        CHECK(testutil::rel_close(grad, m[i]) < 1e-8);
    }
}

TEST_CASE("sound-speed weights: unit shortcut and staggered sampling") {
    const TensorGrid g2 = grid2d(4, 4);  // dx = dy = 0.25
    WesterveltParams unit_prm;
    const auto unit = build_sound_speed_weights(g2, unit_prm);
    CHECK(unit.unit);
    CHECK(unit.max_value == 1.0);
    for (double w : unit.values) CHECK(w == 1.0);

    WesterveltParams prm;
    prm.sound_speed_sq = [](const Vec3& x) { return x[0] + 2.0 * x[1] + 0.5; };
    const auto w = build_sound_speed_weights(g2, prm);
    CHECK(!w.unit);
    // x-block at (x_ix, y_{iy+1/2}): (ix,iy) = (1,2) -> (0.25, 0.625) -> 2.0
    CHECK(w.values[flat_index(g2, {1, 2, 0})] == doctest::Approx(2.0).epsilon(1e-15));
    // y-block at (x_{ix+1/2}, y_iy): (ix,iy) = (2,1) -> (0.625, 0.25) -> 1.625
    CHECK(w.values[16 + flat_index(g2, {2, 1, 0})] == doctest::Approx(1.625).epsilon(1e-15));
    // max over both blocks: x-block (0.75, 0.875) -> 3.0; y-block (0.875, 0.75) -> 2.875
    CHECK(w.max_value == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("edge-average weights integrate c_S^2 over the edge interval") {
    const TensorGrid g = grid1d(4);  // dx = 0.25
    WesterveltParams prm;
    prm.sound_speed_sq = [](const Vec3& x) { return x[0] * x[0] + 0.01; };
    prm.weight_quadrature = WeightQuadrature::edge_average;
    const auto w = build_sound_speed_weights(g, prm);
    // average of x^2 over [x_i - dx/2, x_i + dx/2] is x_i^2 + dx^2/12
    const double dx = 0.25;
    CHECK(w.values[1] == doctest::Approx(0.0625 + dx * dx / 12 + 0.01).epsilon(1e-12));
    CHECK(w.values[0] == doctest::Approx(dx * dx / 12 + 0.01).epsilon(1e-12));

    prm.weight_quadrature = WeightQuadrature::point_sample;
    const auto ps = build_sound_speed_weights(g, prm);
    CHECK(ps.values[1] == doctest::Approx(0.0725).epsilon(1e-15));
}

TEST_CASE("nonpositive sound-speed samples are rejected") {
    const TensorGrid g = grid1d(8);
    WesterveltParams prm;
    prm.sound_speed_sq = [](const Vec3& x) { return x[0] - 0.5; };
    CHECK_THROWS_AS(build_sound_speed_weights(g, prm), std::invalid_argument);
}

TEST_CASE("make_state produces mutually consistent fields") {
    const TensorGrid g = grid1d(6);
    WesterveltParams prm;
    prm.k = 0.15;
    const auto p = testutil::random_vector(6, 30, -0.8, 0.8);
    const auto v = testutil::random_vector(6, 31);
    const SolverState s = make_state(1.5, p, v, prm, g.cell_volume());
    CHECK(s.t == 1.5);
    CHECK(s.p == p);
    CHECK(s.v == v);
    CHECK(testutil::max_abs_diff(s.rho, rho_of_p(p, prm, g.cell_volume())) == 0.0);
    CHECK(testutil::max_abs_diff(p_of_rho(s.rho, prm, g.cell_volume()), p) < 1e-13);
}
