/// Command-line driver: reproduces the convergence studies, the Gaussian
/// pulse, and the nonuniform-medium run, plus generic config-driven runs and
/// a stability-bound report.
///
/// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 I/O error.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "westv/scenarios.hpp"

namespace {

struct FlagSet {
    std::string config_path;
    double k = 0.0, b = 0.0, t_end = 0.0, dt = 0.0, cfl_safety = 0.0;
    int n = 0, snapshot_stride = 0;
    std::string dt_policy, scheme, out_dir, resolutions;
    bool full_scale = false;
};

void add_common_flags(CLI::App* cmd, FlagSet& f) {
    cmd->add_option("--config", f.config_path, "key=value config file (flags win)");
    cmd->add_option("--k", f.k, "nonlinearity strength");
    cmd->add_option("--b", f.b, "dissipation coefficient");
    cmd->add_option("--n", f.n, "cells per axis");
    cmd->add_option("--t-end", f.t_end, "final time");
    cmd->add_option("--dt", f.dt, "explicit time step (overrides policy)");
    cmd->add_option("--dt-policy", f.dt_policy, "paper | auto")
        ->check(CLI::IsMember({"paper", "auto"}));
    cmd->add_option("--cfl-safety", f.cfl_safety, "safety factor for dt-policy auto");
    cmd->add_option("--scheme", f.scheme, "strang | lt")->check(CLI::IsMember({"strang", "lt"}));
    cmd->add_option("--out", f.out_dir, "output directory");
    cmd->add_option("--snapshot-stride", f.snapshot_stride, "steps between grid snapshots");
    cmd->add_option("--resolutions", f.resolutions, "comma-separated resolution list");
    cmd->add_flag("--full-scale", f.full_scale, "include the 320^2 row in converge-2d");
}

int apply_flags(const CLI::App* cmd, const FlagSet& f, westv::ScenarioConfig& cfg) {
    try {
        if (!f.config_path.empty()) {
            westv::ScenarioConfig from_file = westv::parse_config_file(f.config_path);
            if (!cfg.scenario.empty()) from_file.scenario = cfg.scenario;
            std::string scen = cfg.scenario;
            cfg = from_file;
            if (!scen.empty()) cfg.scenario = scen;
        }
        if (cmd->count("--k")) { cfg.k = f.k; cfg.k_set = true; }
        if (cmd->count("--b")) { cfg.b = f.b; cfg.b_set = true; }
        if (cmd->count("--n")) cfg.n = f.n;
        if (cmd->count("--t-end")) cfg.t_end = f.t_end;
        if (cmd->count("--dt")) cfg.dt_override = f.dt;
        if (cmd->count("--dt-policy")) cfg.dt_policy = f.dt_policy;
        if (cmd->count("--cfl-safety")) cfg.cfl_safety = f.cfl_safety;
        if (cmd->count("--scheme")) cfg.scheme = f.scheme;
        if (cmd->count("--out")) cfg.out_dir = f.out_dir;
        if (cmd->count("--snapshot-stride")) cfg.snapshot_stride = f.snapshot_stride;
        if (cmd->count("--resolutions")) westv::apply_config_key(cfg, "resolutions", f.resolutions);
        if (cmd->count("--full-scale")) cfg.full_scale = f.full_scale;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return westv::kExitConfigError;
    }
    return westv::kExitOk;
}

int run_study(const westv::ScenarioConfig& cfg) {
    const westv::StudyResult res = westv::run_convergence_study(cfg);
    for (std::size_t i = 0; i < res.table.rows.size(); ++i) {
        const auto& row = res.table.rows[i];
        if (i == 0)
            std::printf("%8d  L2 %.6g   Linf %.6g\n", row.n, row.l2, row.linf);
        else
            std::printf("%8d  L2 %.6g (order %.3f)   Linf %.6g (order %.3f)\n", row.n, row.l2,
                        res.table.l2_orders[i - 1], row.linf, res.table.linf_orders[i - 1]);
    }
    if (res.exit_code != westv::kExitOk)
        std::fprintf(stderr, "error: %s\n", res.message.c_str());
    return res.exit_code;
}

int run_single(const westv::ScenarioConfig& cfg) {
    const westv::RunResult res = westv::run_scenario(cfg);
    if (res.exit_code != westv::kExitOk) {
        std::fprintf(stderr, "error: %s\n", res.message.c_str());
        return res.exit_code;
    }
    std::printf("steps: %ld  dt: %.6g  final H: %.12g\n", res.steps, res.dt,
                res.series.H.back());
    if (res.has_error_report)
        std::printf("rel L2: %.6g  rel Linf: %.6g\n", res.error.rel_l2, res.error.rel_linf);
    return westv::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structure-preserving mimetic solver for the Westervelt equation"};
    app.require_subcommand(1);

    const std::vector<std::string> subcommands = {"converge-1d", "converge-2d", "gaussian-1d",
                                                  "medium-2d", "run", "stable-dt"};
    std::vector<FlagSet> flags(subcommands.size());
    std::vector<CLI::App*> cmds;
    for (std::size_t i = 0; i < subcommands.size(); ++i) {
        CLI::App* c = app.add_subcommand(subcommands[i]);
        add_common_flags(c, flags[i]);
        cmds.push_back(c);
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < cmds.size(); ++i) {
        if (!cmds[i]->parsed()) continue;
        westv::ScenarioConfig cfg;
        const std::string& name = subcommands[i];
        if (name != "run" && name != "stable-dt") cfg.scenario = name;
        if ((name == "run" || name == "stable-dt") && flags[i].config_path.empty()) {
            std::fprintf(stderr, "config error: %s requires --config\n", name.c_str());
            return westv::kExitConfigError;
        }
        const int rc = apply_flags(cmds[i], flags[i], cfg);
        if (rc != westv::kExitOk) return rc;
        if (cfg.scenario.empty() && name != "stable-dt") {
            std::fprintf(stderr, "config error: no scenario selected\n");
            return westv::kExitConfigError;
        }
        try {
            if (name == "stable-dt") {
                std::printf("%s", westv::stable_dt_report(cfg).c_str());
                return westv::kExitOk;
            }
            if (cfg.scenario == "converge-1d" || cfg.scenario == "converge-2d")
                return run_study(cfg);
            return run_single(cfg);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return westv::kExitNumericError;
        }
    }
    return westv::kExitConfigError;
}
