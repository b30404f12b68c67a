/// @file westervelt.hpp
/// @brief Model layer for the Westervelt system: parameters, solver state,
///        the constitutive map rho <-> p with its closed-form inverse, the
///        discrete Hamiltonian, the dissipation-rate functional, and the
///        variable-sound-speed weighting of the kinetic term.

#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "westv/derham.hpp"
#include "westv/mesh.hpp"

namespace westv {

enum class WeightQuadrature { point_sample, edge_average };

struct WesterveltParams {
    double k = 0.0;  // nonlinearity strength
    double b = 0.0;  // dissipation coefficient
    ScalarField sound_speed_sq;  // empty => unit sound speed
    WeightQuadrature weight_quadrature = WeightQuadrature::point_sample;
};

/// Time plus the three mutually consistent coefficient vectors:
/// rho = h^d (1 - k p) (.) p entrywise, v a primal 1-form.
struct SolverState {
    double t = 0.0;
    std::vector<double> rho;
    std::vector<double> p;
    std::vector<double> v;
};

/// Thrown when 1 - 4 k rho_i / h^d < 0: the state has left the invertible
/// branch of the constitutive relation (blow-up or too-large amplitude).
struct DiscriminantNegative : std::runtime_error {
    std::size_t index;
    double value;
    DiscriminantNegative(std::size_t i, double v);
};

std::vector<double> rho_of_p(const std::vector<double>& p, const WesterveltParams& params,
                             double cell_volume);

/// Negative branch p = (1 - sqrt(1 - 4 k rho/h^d)) / (2k); analytic linear
/// branch at k = 0.  Throws DiscriminantNegative.
std::vector<double> p_of_rho(const std::vector<double>& rho, const WesterveltParams& params,
                             double cell_volume);

/// Per-entry diagonal weights multiplying H1 in the kinetic term.  Sampled at
/// the staggered points (x-block at (x_ix, y_{iy+1/2}), y-block at
/// (x_{ix+1/2}, y_iy)); the edge-average variant integrates c_S^2 over the
/// primal-node-centered interval instead.
struct SoundSpeedWeights {
    std::vector<double> values;  // one per 1-form coefficient
    double max_value = 1.0;
    bool unit = true;            // constant unit speed shortcut
};

SoundSpeedWeights build_sound_speed_weights(const TensorGrid& grid, const WesterveltParams& params);

/// m = (weights (.) H1) v.
std::vector<double> momentum_of_v(const std::vector<double>& v, const LinearOp& H1,
                                  const SoundSpeedWeights& weights);

/// H = 1/2 p^T H0 p + 1/2 v^T (weights (.) H1) v - (2k/3) sum_i p_i^3 h^d.
double hamiltonian(const SolverState& state, const WesterveltParams& params,
                   const DeRhamComplex& complex, const SoundSpeedWeights& weights);

/// Hdot = -b (G p)^T H1 (G p) <= 0; always the unweighted H1 (the symmetric
/// bracket is fixed even when the Hamiltonian's kinetic term is weighted).
double dissipation_rate(const std::vector<double>& p, const WesterveltParams& params,
                        const DeRhamComplex& complex);

/// Convenience: build a consistent state from p and v coefficient vectors.
SolverState make_state(double t, const std::vector<double>& p, const std::vector<double>& v,
                       const WesterveltParams& params, double cell_volume);

}  // namespace westv
