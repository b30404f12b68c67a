#include "westv/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace westv {
namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    return f;
}

}  // namespace

void write_timeseries_csv(const std::string& path, const TimeSeries& series) {
    auto f = open_out(path);
    f << "t,H,diss_rate,diss_integral,vorticity_drift,nonlinear_solves\n";
    for (std::size_t i = 0; i < series.times.size(); ++i)
        f << fmt(series.times[i]) << ',' << fmt(series.H[i]) << ',' << fmt(series.diss_rate[i])
          << ',' << fmt(series.diss_integral[i]) << ',' << fmt(series.vorticity_drift[i]) << ','
          << series.solves[i] << '\n';
    if (!f) throw std::runtime_error("write failed: " + path);
}

void write_grid_scalar_csv(const std::string& path, const TensorGrid& grid,
                           const std::vector<double>& values) {
    auto f = open_out(path);
    f << (grid.dim == 1 ? "i_x,x,value\n" : "i_x,i_y,x,y,value\n");
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        const auto mi = inverse_flat_index(grid, idx);
        const Vec3 x = grid.primal_point(mi);
        if (grid.dim == 1)
            f << mi[0] << ',' << fmt(x[0]) << ',' << fmt(values[idx]) << '\n';
        else
            f << mi[0] << ',' << mi[1] << ',' << fmt(x[0]) << ',' << fmt(x[1]) << ','
              << fmt(values[idx]) << '\n';
    }
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::vector<double> read_grid_scalar_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("empty snapshot file: " + path);
    std::vector<double> values;
    while (std::getline(f, line)) {
        const auto pos = line.rfind(',');
        if (pos == std::string::npos) throw std::runtime_error("malformed row in " + path);
        values.push_back(std::stod(line.substr(pos + 1)));
    }
    return values;
}

void write_convergence_csv(const std::string& path, const ConvergenceTable& table) {
    auto f = open_out(path);
    f << "n,l2_error,l2_order,linf_error,linf_order\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        f << table.rows[i].n << ',' << fmt(table.rows[i].l2) << ',';
        if (i > 0) f << fmt(table.l2_orders[i - 1]);
        f << ',' << fmt(table.rows[i].linf) << ',';
        if (i > 0) f << fmt(table.linf_orders[i - 1]);
        f << '\n';
    }
    if (!f) throw std::runtime_error("write failed: " + path);
}

void write_convergence_txt(const std::string& path, const ConvergenceTable& table) {
    auto f = open_out(path);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%8s %14s %8s %14s %8s\n", "n", "L2 error", "order",
                  "Linf error", "order");
    f << buf;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (i == 0)
            std::snprintf(buf, sizeof buf, "%8d %14.6g %8s %14.6g %8s\n", table.rows[i].n,
                          table.rows[i].l2, "---", table.rows[i].linf, "---");
        else
            std::snprintf(buf, sizeof buf, "%8d %14.6g %8.3f %14.6g %8.3f\n", table.rows[i].n,
                          table.rows[i].l2, table.l2_orders[i - 1], table.rows[i].linf,
                          table.linf_orders[i - 1]);
        f << buf;
    }
    if (!f) throw std::runtime_error("write failed: " + path);
}

void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
    auto f = open_out(path);
    for (const auto& [k, v] : entries) f << k << '=' << v << '\n';
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace westv
