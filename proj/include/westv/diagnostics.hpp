/// @file diagnostics.hpp
/// @brief Scalar time series (energy, predicted dissipation integral,
///        vorticity drift) and space-time error norms against exact solutions.

#pragma once

#include <vector>

#include "westv/derham.hpp"
#include "westv/mesh.hpp"
#include "westv/westervelt.hpp"

namespace westv {

struct TimeSeries {
    std::vector<double> times;
    std::vector<double> H;
    std::vector<double> diss_rate;
    std::vector<double> diss_integral;   // running trapezoidal integral of diss_rate
    std::vector<double> vorticity_drift; // ||Cv - Cv0||_inf / max(||Cv0||_inf, eps)
    std::vector<long> solves;
};

/// C v; rejects 1D grids (no curl).
std::vector<double> vorticity(const std::vector<double>& v, const DeRhamComplex& complex);

/// Appends one row per call; the first call pins Cv0 and zeroes the integral.
class Recorder {
public:
    Recorder(const DeRhamComplex& complex, const WesterveltParams& params,
             const SoundSpeedWeights& weights);

    void record(const SolverState& state, long solve_count);
    const TimeSeries& series() const { return series_; }

private:
    const DeRhamComplex& cx_;
    const WesterveltParams& params_;
    const SoundSpeedWeights& weights_;
    TimeSeries series_;
    bool track_vorticity_;
    std::vector<double> curl_v0_;
    double curl_v0_norm_ = 0.0;
};

struct ErrorReport {
    double rel_l2 = 0.0;
    double rel_linf = 0.0;
};

/// Online space-time norm accumulator: feed one snapshot per time step
/// (including t = 0 and t = T); trapezoidal weighting in time (half weights
/// on the first and last snapshot), node sums weighted by h^d.
class SpaceTimeErrorAccumulator {
public:
    SpaceTimeErrorAccumulator(double cell_volume, double dt)
        : vol_(cell_volume), dt_(dt) {}

    void add_snapshot(const std::vector<double>& numeric, const std::vector<double>& exact);
    ErrorReport report() const;
    std::size_t snapshots() const { return count_; }

private:
    double vol_, dt_;
    std::size_t count_ = 0;
    double err_sq_sum_ = 0.0, ref_sq_sum_ = 0.0;      // full-weight sums over all snapshots
    double err_sq_first_ = 0.0, ref_sq_first_ = 0.0;  // per-snapshot sums for end corrections
    double err_sq_last_ = 0.0, ref_sq_last_ = 0.0;
    double err_max_ = 0.0, ref_max_ = 0.0;
};

/// Convenience wrapper over stored snapshot lists.
ErrorReport spacetime_error(const std::vector<std::vector<double>>& numeric,
                            const std::vector<std::vector<double>>& exact,
                            double cell_volume, double dt);

/// order_j = log2(e_j / e_{j+1}) for resolutions doubling.
std::vector<double> convergence_orders(const std::vector<double>& errors);

}  // namespace westv
