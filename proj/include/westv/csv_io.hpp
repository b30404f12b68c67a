/// @file csv_io.hpp
/// @brief Deterministic CSV writers/readers for time series, grid snapshots,
///        and convergence tables.  Values are printed with %.17g so a written
///        file round-trips bit-for-bit.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "westv/diagnostics.hpp"
#include "westv/mesh.hpp"

namespace westv {

/// Columns, fixed order: t, H, diss_rate, diss_integral, vorticity_drift, nonlinear_solves.
void write_timeseries_csv(const std::string& path, const TimeSeries& series);

/// 1D columns: i_x, x, value.  2D columns: i_x, i_y, x, y, value.
void write_grid_scalar_csv(const std::string& path, const TensorGrid& grid,
                           const std::vector<double>& values);

/// Reads back the value column of a grid snapshot written above.
std::vector<double> read_grid_scalar_csv(const std::string& path);

struct ConvergenceRow {
    int n = 0;
    double l2 = 0.0;
    double linf = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    std::vector<double> l2_orders;
    std::vector<double> linf_orders;
};

void write_convergence_csv(const std::string& path, const ConvergenceTable& table);
void write_convergence_txt(const std::string& path, const ConvergenceTable& table);

/// key=value manifest lines, deterministic order.
void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries);

}  // namespace westv
