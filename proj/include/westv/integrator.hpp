/// @file integrator.hpp
/// @brief Exact conservative partial flows, first/second-order dissipative
///        flows, and their Lie-Trotter and Strang compositions with external
///        forcing and stable time-step selection.
///
/// Forcing stage times: each phi_rho / phi_v stage integrates its source over
/// its own substep interval.  Inside a Strang step the rho stages cover the
/// two half-intervals and the v stages the four quarter-intervals, so each
/// substep remains exact when closed-form step integrals are supplied.

#pragma once

#include <functional>
#include <vector>

#include "westv/derham.hpp"
#include "westv/mesh.hpp"
#include "westv/westervelt.hpp"

namespace westv {

/// Scalar and vector sources with optional exact time antiderivatives
/// (int_{t0}^{t1} S dt = P(x, t1) - P(x, t0)).  Without an antiderivative a
/// stage uses the midpoint rule dt * S(x, t0 + dt/2).
struct ForcingSpec {
    std::function<double(const Vec3&, double)> S_p;
    std::function<double(const Vec3&, double)> S_p_time_antideriv;
    std::vector<std::function<double(const Vec3&, double)>> S_v;
    std::vector<std::function<double(const Vec3&, double)>> S_v_time_antideriv;

    bool empty() const { return !S_p && S_v.empty(); }
    static ForcingSpec none() { return {}; }
};

enum class Scheme { strang, lie_trotter };

struct StepPlan {
    double dt = 0.0;
    Scheme scheme = Scheme::strang;
    double cfl_safety = 0.9;
    double t_end = 0.0;
};

/// cfl_safety * min(conservative, dissipative) stability bound with the
/// operator norm replaced by the closed-form Gershgorin bound 4*sum(dx^-2);
/// b = 0 leaves only the conservative bound.
double stable_dt(const TensorGrid& grid, const WesterveltParams& params, double max_c2,
                 double cfl_safety);

class SplitStepIntegrator {
public:
    SplitStepIntegrator(const DeRhamComplex& complex, WesterveltParams params,
                        SoundSpeedWeights weights, ForcingSpec forcing);

    /// rho += dt * G^T (weights (.) H1) v + H0 * int S_p dt over [t0, t0+dt];
    /// p re-solved.  t is advanced only by the step_* drivers.
    void phi_rho(SolverState& s, double t0, double dt);

    /// v -= dt * G p + R^1(int S_v dt over [t0, t0+dt]).
    void phi_v(SolverState& s, double t0, double dt);

    /// phi_v(dt/2) o phi_rho(dt) o phi_v(dt/2) with stage-local source clocks.
    void phi_cons_strang(SolverState& s, double t0, double dt);

    /// Forward Euler (order 1) or midpoint RK2 (order 2) on the diffusion.
    void phi_diss(SolverState& s, double dt, int order);

    /// Seven-stage composition; advances s.t by dt; exactly 4 solves.
    void step_strang(SolverState& s, double dt);

    /// phi_diss^(1)(dt) o phi_v(dt) o phi_rho(dt); advances s.t; 2 solves.
    void step_lie_trotter(SolverState& s, double dt);

    long solve_count() const { return solve_count_; }
    void reset_solve_count() { solve_count_ = 0; }

    const WesterveltParams& params() const { return params_; }
    const SoundSpeedWeights& weights() const { return weights_; }

private:
    void solve_p(SolverState& s);
    void apply_laplacian(const std::vector<double>& p, std::vector<double>& out);

    const DeRhamComplex& cx_;
    WesterveltParams params_;
    SoundSpeedWeights weights_;
    ForcingSpec forcing_;
    double vol_;
    long solve_count_ = 0;
    std::vector<Vec3> nodes_;  // primal node coordinates in flat order
    std::vector<double> scratch_edge_, scratch_node_, scratch_node2_;
};

}  // namespace westv
