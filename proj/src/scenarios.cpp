#include "westv/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace westv {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr const char* kVersion = "westervelt-0.1.0";

/// Two-slot memo for the time-dependent trig factors of the forcing
/// closures: the step integral evaluates the antiderivative at the same two
/// stage times for every node, so both stay hot.
struct TimeTrigCache {
    double t[2] = {-1e308, -1e308};
    double a[2] = {0, 0}, b[2] = {0, 0}, c[2] = {0, 0};
    int next = 0;
};

ManufacturedSolution manufactured_common(int dim, double k, double b) {
    ManufacturedSolution m;
    m.dim = dim;
    m.p_time_factor = [](double t) { return std::cos(kTwoPi * t); };
    if (dim == 1) {
        m.p_profile = [](const Vec3& x) { return std::cos(kTwoPi * x[0]); };
    } else {
        m.p_profile = [](const Vec3& x) {
            return std::cos(kTwoPi * x[0]) * std::cos(kTwoPi * x[1]);
        };
    }
    auto profile = m.p_profile;
    auto tf = m.p_time_factor;
    m.exact_p = [profile, tf](const Vec3& x, double t) { return tf(t) * profile(x); };
    m.initial_p = profile;  // time factor is 1 at t = 0
    (void)k;
    (void)b;
    return m;
}

}  // namespace

ManufacturedSolution manufactured_1d(double k, double b) {
    ManufacturedSolution m = manufactured_common(1, k, b);
    m.forcing.S_p = [k, b](const Vec3& x, double t) {
        const double cx = std::cos(kTwoPi * x[0]);
        const double st = std::sin(kTwoPi * t), ct = std::cos(kTwoPi * t);
        const double pi = 0.5 * kTwoPi;
        return 4.0 * pi * (b * pi + k * st * cx) * ct * cx;
    };
    // Antiderivative in t: 2 b pi cos(2 pi x) sin(2 pi t) + k cos^2(2 pi x) sin^2(2 pi t).
    auto cache = std::make_shared<TimeTrigCache>();
    m.forcing.S_p_time_antideriv = [k, b, cache](const Vec3& x, double t) {
        int slot = -1;
        for (int s = 0; s < 2; ++s)
            if (cache->t[s] == t) slot = s;
        if (slot < 0) {
            slot = cache->next;
            cache->next = 1 - cache->next;
            cache->t[slot] = t;
            const double st = std::sin(kTwoPi * t);
            cache->a[slot] = st;
            cache->b[slot] = st * st;
        }
        const double cx = std::cos(kTwoPi * x[0]);
        const double pi = 0.5 * kTwoPi;
        return 2.0 * b * pi * cx * cache->a[slot] + k * cx * cx * cache->b[slot];
    };
    return m;
}

ManufacturedSolution manufactured_2d(double k, double b) {
    ManufacturedSolution m = manufactured_common(2, k, b);
    m.forcing.S_p = [k, b](const Vec3& x, double t) {
        const double C = std::cos(kTwoPi * x[0]) * std::cos(kTwoPi * x[1]);
        const double st = std::sin(kTwoPi * t), ct = std::cos(kTwoPi * t);
        const double s2t = std::sin(2.0 * kTwoPi * t);
        const double pi = 0.5 * kTwoPi;
        return 2.0 * pi * (4.0 * b * pi * ct + st + k * C * s2t) * C;
    };
    // Antiderivative in t: C (4 b pi sin(2 pi t) - cos(2 pi t)) - (k/2) C^2 cos(4 pi t).
    auto cache = std::make_shared<TimeTrigCache>();
    m.forcing.S_p_time_antideriv = [k, b, cache](const Vec3& x, double t) {
        int slot = -1;
        for (int s = 0; s < 2; ++s)
            if (cache->t[s] == t) slot = s;
        if (slot < 0) {
            slot = cache->next;
            cache->next = 1 - cache->next;
            cache->t[slot] = t;
            cache->a[slot] = std::sin(kTwoPi * t);
            cache->b[slot] = std::cos(kTwoPi * t);
            cache->c[slot] = std::cos(2.0 * kTwoPi * t);
        }
        const double C = std::cos(kTwoPi * x[0]) * std::cos(kTwoPi * x[1]);
        const double pi = 0.5 * kTwoPi;
        return C * (4.0 * b * pi * cache->a[slot] - cache->b[slot]) -
               0.5 * k * C * C * cache->c[slot];
    };
    return m;
}

ScalarField gaussian_1d_initial(double mu, double L, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_1d_initial: sigma must be positive");
    return [mu, L, sigma](const Vec3& x) {
        const double u = (x[0] / L - mu) / sigma;
        return std::exp(-0.5 * u * u);
    };
}

ScalarField medium_sound_speed_sq() {
    return [](const Vec3& x) {
        const double pi = 0.5 * kTwoPi;
        const double s1 = std::sin(pi * x[0]) * std::sin(pi * x[1]);
        const double s2 = std::sin(2.0 * pi * x[0]) * std::sin(2.0 * pi * x[1]);
        const double s4 = std::sin(4.0 * pi * x[0]) * std::sin(4.0 * pi * x[1]);
        return 1.0 - 0.75 * s1 * s1 - 0.5 * s2 * s2 - 0.25 * s4 * s4;
    };
}

std::vector<FieldComponent> medium_initial_v() {
    FieldComponent vx, vy;
    vx.value = [](const Vec3& x) { return std::cos(kTwoPi * x[0]) * std::cos(kTwoPi * x[1]); };
    vx.antiderivative = [](const Vec3& x) {
        return std::sin(kTwoPi * x[0]) * std::cos(kTwoPi * x[1]) / kTwoPi;
    };
    vy.value = [](const Vec3& x) { return std::sin(kTwoPi * x[0]) * std::sin(kTwoPi * x[1]); };
    vy.antiderivative = [](const Vec3& x) {
        return -std::sin(kTwoPi * x[0]) * std::cos(kTwoPi * x[1]) / kTwoPi;
    };
    return {vx, vy};
}

// ---- configuration -------------------------------------------------------

void apply_config_key(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
    auto to_double = [&](const std::string& v) {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("bad numeric value for " + key);
        return d;
    };
    auto to_int = [&](const std::string& v) {
        std::size_t pos = 0;
        int i = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("bad integer value for " + key);
        return i;
    };
    if (key == "scenario") cfg.scenario = value;
    else if (key == "k") { cfg.k = to_double(value); cfg.k_set = true; }
    else if (key == "b") { cfg.b = to_double(value); cfg.b_set = true; }
    else if (key == "n") cfg.n = to_int(value);
    else if (key == "t_end") cfg.t_end = to_double(value);
    else if (key == "dt") cfg.dt_override = to_double(value);
    else if (key == "dt_policy") {
        if (value != "paper" && value != "auto")
            throw std::invalid_argument("dt_policy must be 'paper' or 'auto'");
        cfg.dt_policy = value;
    } else if (key == "cfl_safety") cfg.cfl_safety = to_double(value);
    else if (key == "scheme") {
        if (value != "strang" && value != "lt")
            throw std::invalid_argument("scheme must be 'strang' or 'lt'");
        cfg.scheme = value;
    } else if (key == "out") cfg.out_dir = value;
    else if (key == "snapshot_stride") cfg.snapshot_stride = to_int(value);
    else if (key == "full_scale") cfg.full_scale = (value == "1" || value == "true");
    else if (key == "resolutions") {
        cfg.resolutions.clear();
        std::stringstream ss(value);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) cfg.resolutions.push_back(std::stoi(tok));
    } else {
        throw std::invalid_argument("unknown config key: " + key);
    }
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    std::vector<std::array<std::string, 3>> entries;  // section, key, value
    std::string line, section;
    while (std::getline(f, line)) {
        const auto h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            const auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("malformed config line: " + line);
        entries.push_back({section, trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
    }
    ScenarioConfig cfg;
    for (const auto& e : entries)
        if (e[0].empty()) apply_config_key(cfg, e[1], e[2]);
    for (const auto& e : entries)
        if (!e[0].empty() && e[0] == cfg.scenario) apply_config_key(cfg, e[1], e[2]);
    return cfg;
}

// ---- run machinery -------------------------------------------------------

namespace {

struct RunSpec {
    TensorGrid grid;
    WesterveltParams params;
    ForcingSpec forcing;
    std::vector<double> p0, v0;
    double dt = 0.0, t_end = 0.0;
    Scheme scheme = Scheme::strang;
    bool has_exact = false;
    std::vector<double> exact_profile;
    std::function<double(double)> exact_time_factor;
    std::string out_dir;
    int snapshot_stride = 0;
};

Scheme scheme_of(const std::string& s) {
    return s == "lt" ? Scheme::lie_trotter : Scheme::strang;
}

std::string fmtd(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_snapshot(const RunSpec& rs, const DeRhamComplex& cx, const SolverState& s, long step) {
    char name[64];
    std::snprintf(name, sizeof name, "p_%06ld.csv", step);
    write_grid_scalar_csv(rs.out_dir + "/" + name, rs.grid, s.p);
    if (rs.grid.dim == 2) {
        std::snprintf(name, sizeof name, "vorticity_%06ld.csv", step);
        write_grid_scalar_csv(rs.out_dir + "/" + name, rs.grid, cx.C->apply(s.v));
    }
}

RunResult execute_run(const RunSpec& rs) {
    RunResult res;
    res.dt = rs.dt;
    const DeRhamComplex cx = build_derham(rs.grid);
    SoundSpeedWeights weights = build_sound_speed_weights(rs.grid, rs.params);
    SplitStepIntegrator integ(cx, rs.params, weights, rs.forcing);
    SolverState state = make_state(0.0, rs.p0, rs.v0, rs.params, rs.grid.cell_volume());

    const long nsteps = static_cast<long>(std::ceil(rs.t_end / rs.dt - 1e-9));
    res.steps = nsteps;
    Recorder rec(cx, rs.params, weights);
    SpaceTimeErrorAccumulator acc(rs.grid.cell_volume(), rs.dt);
    std::vector<double> exact(rs.has_exact ? rs.exact_profile.size() : 0);

    const bool writing = !rs.out_dir.empty();
    try {
        if (writing) std::filesystem::create_directories(rs.out_dir);

        auto observe = [&](long step) {
            rec.record(state, integ.solve_count());
            if (rs.has_exact) {
                const double tf = rs.exact_time_factor(state.t);
                for (std::size_t i = 0; i < exact.size(); ++i)
                    exact[i] = tf * rs.exact_profile[i];
                acc.add_snapshot(state.p, exact);
            }
            if (writing && rs.snapshot_stride > 0 &&
                (step % rs.snapshot_stride == 0 || step == nsteps))
                write_snapshot(rs, cx, state, step);
        };
        observe(0);

        for (long step = 1; step <= nsteps; ++step) {
            if (rs.scheme == Scheme::strang)
                integ.step_strang(state, rs.dt);
            else
                integ.step_lie_trotter(state, rs.dt);
            observe(step);
            if (!std::isfinite(rec.series().H.back())) {
                res.exit_code = kExitNumericError;
                res.message = "non-finite energy at step " + std::to_string(step);
                break;
            }
        }
    } catch (const DiscriminantNegative& e) {
        res.exit_code = kExitNumericError;
        res.message = std::string(e.what()) + " (t = " + std::to_string(state.t) + ")";
    } catch (const std::runtime_error& e) {
        res.exit_code = kExitIoError;
        res.message = e.what();
    }

    res.series = rec.series();
    res.final_p = state.p;
    if (rs.has_exact && res.exit_code == kExitOk) {
        res.error = acc.report();
        res.has_error_report = true;
    }
    if (writing) {
        try {
            write_timeseries_csv(rs.out_dir + "/timeseries.csv", res.series);
        } catch (const std::runtime_error& e) {
            res.exit_code = kExitIoError;
            res.message = e.what();
        }
    }
    return res;
}

double paper_dt(const TensorGrid& grid, const WesterveltParams& params, double max_c2,
                double cfl_safety) {
    if (params.b > 0.0) {
        double inv = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            const double dx = grid.axis(a).dx;
            inv += 1.0 / (dx * dx);
        }
        return 1.0 / (4.0 * params.b * inv);
    }
    return stable_dt(grid, params, max_c2, cfl_safety);
}

TensorGrid square_grid(int n, int dim, double length) {
    std::vector<UniformPeriodicGrid1D> axes;
    for (int a = 0; a < dim; ++a) axes.push_back(build_grid_1d(n, length));
    return build_tensor_grid(axes);
}

}  // namespace

double resolved_dt(const ScenarioConfig& cfg, const TensorGrid& grid,
                   const WesterveltParams& params, double max_c2) {
    if (cfg.dt_override > 0.0) return cfg.dt_override;
    if (cfg.dt_policy == "auto") return stable_dt(grid, params, max_c2, cfg.cfl_safety);
    return paper_dt(grid, params, max_c2, cfg.cfl_safety);
}

namespace {

/// Assembles the RunSpec for a single (non-study) scenario; throws
/// std::invalid_argument on incomplete configuration.
RunSpec build_single_runspec(const ScenarioConfig& cfg) {
    RunSpec rs;
    if (cfg.scenario == "gaussian-1d") {
        const int n = cfg.n > 0 ? cfg.n : 320;
        rs.grid = square_grid(n, 1, 10.0);
        rs.params.k = cfg.k;
        rs.params.b = cfg.b;
        rs.t_end = cfg.t_end >= 0.0 ? cfg.t_end : 6.0;
        const FormCoefficients p0 = reduce_0form(rs.grid, gaussian_1d_initial(0.2, 10.0, 0.05));
        rs.p0 = p0.data;
        rs.v0.assign(dof_count(rs.grid, 1), 0.0);
    } else if (cfg.scenario == "medium-2d") {
        const int n = cfg.n > 0 ? cfg.n : 320;
        rs.grid = square_grid(n, 2, 1.0);
        rs.params.k = cfg.k;
        rs.params.b = cfg.b_set ? cfg.b : 1e-3;
        rs.params.sound_speed_sq = medium_sound_speed_sq();
        rs.t_end = cfg.t_end >= 0.0 ? cfg.t_end : 1.0;
        rs.p0.assign(rs.grid.num_nodes(), 0.0);
        rs.v0 = reduce_1form(rs.grid, medium_initial_v()).data;
    } else if (cfg.scenario == "custom") {
        if (cfg.n <= 0) throw std::invalid_argument("custom scenario requires n");
        if (cfg.t_end < 0.0) throw std::invalid_argument("custom scenario requires t_end");
        rs.grid = square_grid(cfg.n, 1, 1.0);
        rs.params.k = cfg.k;
        rs.params.b = cfg.b;
        rs.t_end = cfg.t_end;
        const FormCoefficients p0 = reduce_0form(
            rs.grid, [](const Vec3& x) { return std::cos(kTwoPi * x[0]); });
        rs.p0 = p0.data;
        rs.v0.assign(dof_count(rs.grid, 1), 0.0);
    } else {
        throw std::invalid_argument("unknown single-run scenario: " + cfg.scenario);
    }
    const SoundSpeedWeights w = build_sound_speed_weights(rs.grid, rs.params);
    rs.dt = resolved_dt(cfg, rs.grid, rs.params, w.max_value);
    rs.scheme = scheme_of(cfg.scheme);
    rs.out_dir = cfg.out_dir;
    rs.snapshot_stride = cfg.snapshot_stride;
    return rs;
}

void write_run_manifest(const ScenarioConfig& cfg, const RunResult& res, int n) {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("version", kVersion);
    kv.emplace_back("scenario", cfg.scenario);
    kv.emplace_back("k", fmtd(cfg.k));
    kv.emplace_back("b", fmtd(cfg.b));
    kv.emplace_back("n", std::to_string(n));
    kv.emplace_back("t_end", fmtd(cfg.t_end));
    kv.emplace_back("dt_policy", cfg.dt_policy);
    kv.emplace_back("dt", fmtd(res.dt));
    kv.emplace_back("scheme", cfg.scheme);
    kv.emplace_back("snapshot_stride", std::to_string(cfg.snapshot_stride));
    kv.emplace_back("steps", std::to_string(res.steps));
    write_manifest(cfg.out_dir + "/run_manifest.txt", kv);
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg) {
    RunResult res;
    RunSpec rs;
    try {
        rs = build_single_runspec(cfg);
    } catch (const std::invalid_argument& e) {
        res.exit_code = kExitConfigError;
        res.message = e.what();
        return res;
    }
    res = execute_run(rs);
    if (!cfg.out_dir.empty() && res.exit_code != kExitIoError) {
        ScenarioConfig echo = cfg;
        echo.t_end = rs.t_end;
        try {
            write_run_manifest(echo, res, rs.grid.extent(0));
        } catch (const std::runtime_error& e) {
            res.exit_code = kExitIoError;
            res.message = e.what();
        }
    }
    return res;
}

StudyResult run_convergence_study(const ScenarioConfig& cfg) {
    StudyResult out;
    int dim;
    if (cfg.scenario == "converge-1d") dim = 1;
    else if (cfg.scenario == "converge-2d") dim = 2;
    else {
        out.exit_code = kExitConfigError;
        out.message = "not a convergence scenario: " + cfg.scenario;
        return out;
    }
    std::vector<int> res_list = cfg.resolutions;
    if (res_list.empty()) {
        res_list = {20, 40, 80, 160};
        if (dim == 1 || cfg.full_scale) res_list.push_back(320);
    }
    const double t_end = cfg.t_end >= 0.0 ? cfg.t_end : 1.0;

    auto make_spec = [&](int n) {
        RunSpec rs;
        rs.grid = square_grid(n, dim, 1.0);
        rs.params.k = cfg.k;
        rs.params.b = cfg.b;
        rs.t_end = t_end;
        const ManufacturedSolution ms =
            dim == 1 ? manufactured_1d(cfg.k, cfg.b) : manufactured_2d(cfg.k, cfg.b);
        rs.forcing = ms.forcing;
        rs.p0 = reduce_0form(rs.grid, ms.initial_p).data;
        rs.v0.assign(dof_count(rs.grid, 1), 0.0);
        rs.has_exact = true;
        rs.exact_profile = reduce_0form(rs.grid, ms.p_profile).data;
        rs.exact_time_factor = ms.p_time_factor;
        rs.dt = resolved_dt(cfg, rs.grid, rs.params, 1.0);
        rs.scheme = scheme_of(cfg.scheme);
        if (!cfg.out_dir.empty()) rs.out_dir = cfg.out_dir + "/N" + std::to_string(n);
        rs.snapshot_stride = cfg.snapshot_stride;
        return rs;
    };

    std::vector<std::future<RunResult>> futures;
    for (int n : res_list)
        futures.push_back(std::async(std::launch::async, [&, n] { return execute_run(make_spec(n)); }));

    std::vector<double> l2s, linfs;
    for (std::size_t i = 0; i < futures.size(); ++i) {
        RunResult r = futures[i].get();
        if (r.exit_code != kExitOk || !r.has_error_report) {
            out.exit_code = r.exit_code != kExitOk ? r.exit_code : kExitNumericError;
            out.message = "resolution " + std::to_string(res_list[i]) + ": " +
                          (r.message.empty() ? "no error report" : r.message);
            break;
        }
        out.table.rows.push_back({res_list[i], r.error.rel_l2, r.error.rel_linf});
        l2s.push_back(r.error.rel_l2);
        linfs.push_back(r.error.rel_linf);
    }
    if (l2s.size() >= 2) {
        out.table.l2_orders = convergence_orders(l2s);
        out.table.linf_orders = convergence_orders(linfs);
    }
    if (!cfg.out_dir.empty() && !out.table.rows.empty()) {
        try {
            std::filesystem::create_directories(cfg.out_dir);
            write_convergence_csv(cfg.out_dir + "/convergence.csv", out.table);
            write_convergence_txt(cfg.out_dir + "/convergence.txt", out.table);
        } catch (const std::runtime_error& e) {
            out.exit_code = kExitIoError;
            out.message = e.what();
        }
    }
    return out;
}

std::string stable_dt_report(const ScenarioConfig& cfg) {
    const bool two_d = cfg.scenario == "converge-2d" || cfg.scenario == "medium-2d";
    const int dim = two_d ? 2 : 1;
    int n = cfg.n;
    if (n <= 0) n = cfg.resolutions.empty() ? 320 : cfg.resolutions.front();
    const double length = cfg.scenario == "gaussian-1d" ? 10.0 : 1.0;
    const TensorGrid grid = square_grid(n, dim, length);
    WesterveltParams params;
    params.k = cfg.k;
    params.b = cfg.b;
    if (cfg.scenario == "medium-2d") {
        params.sound_speed_sq = medium_sound_speed_sq();
        if (!cfg.b_set) params.b = 1e-3;
    }
    const SoundSpeedWeights w = build_sound_speed_weights(grid, params);
    const double L = gershgorin_laplacian_bound(grid);
    const double cons = 1.0 / std::sqrt(w.max_value * L);
    std::ostringstream os;
    os << "grid: " << dim << "D, n = " << n << " per axis, dx = " << grid.axis(0).dx << "\n";
    os << "gershgorin bound ||H0^-1 G^T H1 G|| <= " << L << "\n";
    os << "max c_S^2 = " << w.max_value << "\n";
    os << "conservative bound: " << cons << "\n";
    if (params.b > 0.0)
        os << "dissipative bound:  " << 1.0 / (params.b * L) << "\n";
    else
        os << "dissipative bound:  (none, b = 0)\n";
    os << "stable_dt(cfl_safety = " << cfg.cfl_safety
       << "): " << stable_dt(grid, params, w.max_value, cfg.cfl_safety) << "\n";
    os << "resolved dt for this config: " << resolved_dt(cfg, grid, params, w.max_value) << "\n";
    return os.str();
}

}  // namespace westv
