#include "westv/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace westv {

std::vector<double> vorticity(const std::vector<double>& v, const DeRhamComplex& complex) {
    if (!complex.C) throw std::invalid_argument("vorticity: grid has no curl (1D)");
    return complex.C->apply(v);
}

Recorder::Recorder(const DeRhamComplex& complex, const WesterveltParams& params,
                   const SoundSpeedWeights& weights)
    : cx_(complex), params_(params), weights_(weights), track_vorticity_(complex.C.has_value()) {}

void Recorder::record(const SolverState& state, long solve_count) {
    const double H = hamiltonian(state, params_, cx_, weights_);
    const double rate = dissipation_rate(state.p, params_, cx_);
    double integral = 0.0;
    if (!series_.times.empty()) {
        const double dt = state.t - series_.times.back();
        integral = series_.diss_integral.back() + 0.5 * dt * (series_.diss_rate.back() + rate);
    }
    double drift = 0.0;
    if (track_vorticity_) {
        std::vector<double> cv = cx_.C->apply(state.v);
        if (series_.times.empty()) {
            curl_v0_ = cv;
            for (double x : cv) curl_v0_norm_ = std::max(curl_v0_norm_, std::abs(x));
        } else {
            double diff = 0.0;
            for (std::size_t i = 0; i < cv.size(); ++i)
                diff = std::max(diff, std::abs(cv[i] - curl_v0_[i]));
            drift = diff / std::max(curl_v0_norm_, 1e-300);
        }
    }
    series_.times.push_back(state.t);
    series_.H.push_back(H);
    series_.diss_rate.push_back(rate);
    series_.diss_integral.push_back(integral);
    series_.vorticity_drift.push_back(drift);
    series_.solves.push_back(solve_count);
}

void SpaceTimeErrorAccumulator::add_snapshot(const std::vector<double>& numeric,
                                             const std::vector<double>& exact) {
    if (numeric.size() != exact.size())
        throw std::invalid_argument("SpaceTimeErrorAccumulator: size mismatch");
    double err_sq = 0.0, ref_sq = 0.0;
    for (std::size_t i = 0; i < numeric.size(); ++i) {
        const double e = numeric[i] - exact[i];
        err_sq += e * e;
        ref_sq += exact[i] * exact[i];
        err_max_ = std::max(err_max_, std::abs(e));
        ref_max_ = std::max(ref_max_, std::abs(exact[i]));
    }
    err_sq *= vol_;
    ref_sq *= vol_;
    if (count_ == 0) {
        err_sq_first_ = err_sq;
        ref_sq_first_ = ref_sq;
    }
    err_sq_last_ = err_sq;
    ref_sq_last_ = ref_sq;
    err_sq_sum_ += err_sq;
    ref_sq_sum_ += ref_sq;
    ++count_;
}

ErrorReport SpaceTimeErrorAccumulator::report() const {
    if (count_ == 0) throw std::logic_error("SpaceTimeErrorAccumulator: no snapshots");
    ErrorReport r;
    const double err_sq = dt_ * (err_sq_sum_ - 0.5 * (err_sq_first_ + err_sq_last_));
    const double ref_sq = dt_ * (ref_sq_sum_ - 0.5 * (ref_sq_first_ + ref_sq_last_));
    r.rel_l2 = ref_sq > 0.0 ? std::sqrt(err_sq / ref_sq) : std::sqrt(err_sq);
    r.rel_linf = ref_max_ > 0.0 ? err_max_ / ref_max_ : err_max_;
    return r;
}

ErrorReport spacetime_error(const std::vector<std::vector<double>>& numeric,
                            const std::vector<std::vector<double>>& exact,
                            double cell_volume, double dt) {
    if (numeric.empty() || numeric.size() != exact.size())
        throw std::invalid_argument("spacetime_error: empty or mismatched snapshot lists");
    SpaceTimeErrorAccumulator acc(cell_volume, dt);
    for (std::size_t i = 0; i < numeric.size(); ++i) acc.add_snapshot(numeric[i], exact[i]);
    return acc.report();
}

std::vector<double> convergence_orders(const std::vector<double>& errors) {
    if (errors.size() < 2)
        throw std::invalid_argument("convergence_orders: need at least two resolutions");
    std::vector<double> orders;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        if (!(errors[i] > 0.0) || !(errors[i + 1] > 0.0))
            throw std::invalid_argument("convergence_orders: errors must be positive");
        orders.push_back(std::log2(errors[i] / errors[i + 1]));
    }
    return orders;
}

}  // namespace westv
