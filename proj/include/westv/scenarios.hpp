/// @file scenarios.hpp
/// @brief The four reference experiments (manufactured-solution convergence
///        in 1D/2D, Gaussian pulse, nonuniform medium), run configuration,
///        and the drivers that integrate and write artifacts.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "westv/csv_io.hpp"
#include "westv/diagnostics.hpp"
#include "westv/integrator.hpp"
#include "westv/mesh.hpp"
#include "westv/westervelt.hpp"

namespace westv {

// Exit codes shared by the runners and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericError = 3;
inline constexpr int kExitIoError = 4;

/// Exact solution, forcing with closed-form step integrals, and initial data.
/// The exact pressure is separable, p(x, t) = time_factor(t) * profile(x),
/// which the run loop exploits when accumulating error norms.
struct ManufacturedSolution {
    int dim = 1;
    std::function<double(const Vec3&, double)> exact_p;
    ScalarField p_profile;
    std::function<double(double)> p_time_factor;
    ScalarField initial_p;                 // p at t = 0
    std::vector<FieldComponent> initial_v; // empty => v0 = 0
    ForcingSpec forcing;
};

ManufacturedSolution manufactured_1d(double k, double b);
ManufacturedSolution manufactured_2d(double k, double b);

/// p0(x) = exp(-((x/L - mu)^2) / (2 sigma^2)).
ScalarField gaussian_1d_initial(double mu, double L, double sigma);

/// The nonuniform-medium sound speed
/// c_S^2 = 1 - 3/4 sin^2(pi x) sin^2(pi y) - 1/2 sin^2(2pi x) sin^2(2pi y)
///           - 1/4 sin^2(4pi x) sin^2(4pi y), range [0.0782421, 1.0].
ScalarField medium_sound_speed_sq();

/// Initial velocity (cos(2pi x)cos(2pi y), sin(2pi x)sin(2pi y)) with exact
/// edge antiderivatives; its curl is 4pi cos(2pi x) sin(2pi y) != 0.
std::vector<FieldComponent> medium_initial_v();

struct ScenarioConfig {
    std::string scenario;            // converge-1d | converge-2d | gaussian-1d | medium-2d | custom
    double k = 0.2;
    double b = 0.01;
    bool k_set = false;  // true when the user supplied the value (config or flag);
    bool b_set = false;  // otherwise scenario-specific defaults may apply
    std::vector<int> resolutions;    // convergence studies (empty => defaults)
    int n = 0;                       // single-run resolution (0 => scenario default)
    double t_end = -1.0;             // < 0 => scenario default
    std::string dt_policy = "paper"; // "paper" | "auto"
    double dt_override = 0.0;        // explicit dt, wins over policy
    double cfl_safety = 0.9;
    std::string scheme = "strang";   // "strang" | "lt"
    std::string out_dir;             // empty => no files written
    int snapshot_stride = 0;         // 0 => no snapshots
    bool full_scale = false;         // adds the 320^2 row to converge-2d
};

/// Flat key=value files with optional [scenario-name] sections; keys in a
/// section apply only when that scenario is selected.  Throws
/// std::invalid_argument on malformed input or unknown keys.
ScenarioConfig parse_config_file(const std::string& path);
void apply_config_key(ScenarioConfig& cfg, const std::string& key, const std::string& value);

struct RunResult {
    int exit_code = kExitOk;
    std::string message;
    long steps = 0;
    double dt = 0.0;
    TimeSeries series;
    bool has_error_report = false;
    ErrorReport error;
    std::vector<double> final_p;
};

/// Single run (gaussian-1d, medium-2d, or custom); writes run_manifest.txt,
/// timeseries.csv, and snapshots when configured.
RunResult run_scenario(const ScenarioConfig& cfg);

/// Convergence study (converge-1d / converge-2d); per-resolution runs execute
/// concurrently.  Writes convergence.csv/.txt plus per-resolution artifacts.
struct StudyResult {
    int exit_code = kExitOk;
    std::string message;
    ConvergenceTable table;
};
StudyResult run_convergence_study(const ScenarioConfig& cfg);

/// The dt the configuration resolves to on an n-cell grid (paper formulas:
/// dx^2/(4b) in 1D, (4b(1/dx^2 + 1/dy^2))^-1 in 2D; "auto" uses stable_dt).
double resolved_dt(const ScenarioConfig& cfg, const TensorGrid& grid,
                   const WesterveltParams& params, double max_c2);

/// Human-readable breakdown of the stability bound for `stable-dt`.
std::string stable_dt_report(const ScenarioConfig& cfg);

}  // namespace westv
