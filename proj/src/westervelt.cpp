#include "westv/westervelt.hpp"

#include <cmath>
#include <string>

#include "westv/quadrature.hpp"

namespace westv {

DiscriminantNegative::DiscriminantNegative(std::size_t i, double v)
    : std::runtime_error("constitutive solve: negative discriminant " + std::to_string(v) +
                         " at index " + std::to_string(i)),
      index(i), value(v) {}

std::vector<double> rho_of_p(const std::vector<double>& p, const WesterveltParams& params,
                             double cell_volume) {
    std::vector<double> rho(p.size());
    const double k = params.k;
    for (std::size_t i = 0; i < p.size(); ++i)
        rho[i] = cell_volume * (1.0 - k * p[i]) * p[i];
    return rho;
}

std::vector<double> p_of_rho(const std::vector<double>& rho, const WesterveltParams& params,
                             double cell_volume) {
    std::vector<double> p(rho.size());
    const double k = params.k;
    if (k == 0.0) {
        for (std::size_t i = 0; i < rho.size(); ++i) p[i] = rho[i] / cell_volume;
        return p;
    }
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double disc = 1.0 - 4.0 * k * rho[i] / cell_volume;
        if (disc < 0.0) throw DiscriminantNegative(i, disc);
        p[i] = (1.0 - std::sqrt(disc)) / (2.0 * k);
    }
    return p;
}

SoundSpeedWeights build_sound_speed_weights(const TensorGrid& grid, const WesterveltParams& params) {
    SoundSpeedWeights w;
    const std::size_t N = grid.num_nodes();
    if (!params.sound_speed_sq) {
        w.values.assign(N * static_cast<std::size_t>(grid.dim), 1.0);
        w.max_value = 1.0;
        w.unit = true;
        return w;
    }
    w.unit = false;
    w.values.resize(N * static_cast<std::size_t>(grid.dim));
    w.max_value = 0.0;
    for (int comp = 0; comp < grid.dim; ++comp) {
        double* block = w.values.data() + static_cast<std::size_t>(comp) * N;
        const auto& ax = grid.axis(comp);
        for (std::size_t idx = 0; idx < N; ++idx) {
            const auto mi = inverse_flat_index(grid, idx);
            // Primal coordinate along the component axis, dual across.
            Vec3 x{0.0, 0.0, 0.0};
            for (int a = 0; a < grid.dim; ++a)
                x[static_cast<std::size_t>(a)] =
                    a == comp ? grid.axis(a).primal_node(mi[static_cast<std::size_t>(a)])
                              : grid.axis(a).dual_node(mi[static_cast<std::size_t>(a)]);
            double val;
            if (params.weight_quadrature == WeightQuadrature::point_sample) {
                val = params.sound_speed_sq(x);
            } else {
                auto along = [&](double t) {
                    Vec3 xx = x;
                    xx[static_cast<std::size_t>(comp)] = t;
                    return params.sound_speed_sq(xx);
                };
                const double xa = x[static_cast<std::size_t>(comp)];
                val = integrate_adaptive(along, xa - 0.5 * ax.dx, xa + 0.5 * ax.dx) / ax.dx;
            }
            if (!(val > 0.0))
                throw std::invalid_argument("build_sound_speed_weights: nonpositive c_S^2 sample");
            block[idx] = val;
            if (val > w.max_value) w.max_value = val;
        }
    }
    return w;
}

std::vector<double> momentum_of_v(const std::vector<double>& v, const LinearOp& H1,
                                  const SoundSpeedWeights& weights) {
    std::vector<double> m = H1.apply(v);
    if (!weights.unit)
        for (std::size_t i = 0; i < m.size(); ++i) m[i] *= weights.values[i];
    return m;
}

double hamiltonian(const SolverState& state, const WesterveltParams& params,
                   const DeRhamComplex& complex, const SoundSpeedWeights& weights) {
    const double vol = complex.grid.cell_volume();
    const std::vector<double> h0p = complex.H(0).apply(state.p);
    const std::vector<double> m = momentum_of_v(state.v, complex.H(1), weights);
    double cubic = 0.0;
    for (double pi : state.p) cubic += pi * pi * pi;
    return 0.5 * dot(state.p, h0p) + 0.5 * dot(state.v, m) -
           (2.0 * params.k / 3.0) * cubic * vol;
}

double dissipation_rate(const std::vector<double>& p, const WesterveltParams& params,
                        const DeRhamComplex& complex) {
    if (params.b == 0.0) return 0.0;
    const std::vector<double> gp = complex.G.apply(p);
    const std::vector<double> h1gp = complex.H(1).apply(gp);
    return -params.b * dot(gp, h1gp);
}

SolverState make_state(double t, const std::vector<double>& p, const std::vector<double>& v,
                       const WesterveltParams& params, double cell_volume) {
    SolverState s;
    s.t = t;
    s.p = p;
    s.v = v;
    s.rho = rho_of_p(p, params, cell_volume);
    return s;
}

}  // namespace westv
