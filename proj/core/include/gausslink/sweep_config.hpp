#pragma once

// INI-style sweep configuration.
//
//   experiment = fig2bc_capacity_maps
//   output = fig2b.csv
//   emit_svg = true
//
//   [fixed]
//   zeta_o = 0.8
//   n_th = 0
//
//   [axis C_om]
//   min = 0.1
//   max = 10
//   points = 100
//   scale = log
//
// Axis sections are ordered; the first is the outer (slow) index of the grid.
// If no axis section is given, the experiment's default axes are used.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gausslink {

enum class Experiment {
    kFig1aDqtBoundary,
    kFig1bEqtIdeal,
    kFig2aGainCurves,
    kFig2bcCapacityMaps,
    kFig2dEofMap,
    kFig4aMmEof,
    kFig4bMmCapacity,
    kFig5aClickRate,
    kFig5bHomodyneRate,
    kCustom,
};

std::string_view to_string(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);

enum class AxisScale { kLinear, kLog };

struct AxisSpec {
    std::string name;  ///< one of C_om, C_em, kappa, n_th, tau
    double min = 0.0;
    double max = 1.0;
    int points = 2;
    AxisScale scale = AxisScale::kLinear;

    /// Grid values; endpoints are exactly min and max.
    std::vector<double> values() const;
};

/// Parameters held constant over the grid. Rates are in units of kappa_m.
struct FixedParams {
    double zeta_o = 1.0;
    double zeta_e = 1.0;
    double n_th = 0.0;
    double tau = 1.0;
    double dt = 1.0;  ///< click-scheme pulse duration, units of 1/kappa_m
    double kappa_o = 1.0;
    double kappa_e = 1.0;
    double c_om = 1.0;
    double c_em = 1.0;
    double kappa = 1.0;  ///< teleportation gain where an experiment uses a fixed one
};

struct SweepConfig {
    Experiment experiment = Experiment::kCustom;
    FixedParams fixed;
    std::vector<AxisSpec> axes;
    std::string output;  ///< CSV path; defaults to "<experiment>.csv"
    bool emit_svg = false;
    std::string metric;  ///< heatmap column; defaults per experiment

    /// Throws ConfigError.
    void validate() const;
};

bool is_axis_name(std::string_view name);

/// Defaults for a named experiment (100 x 100 grids for maps).
SweepConfig default_config(Experiment e);

/// Throws ConfigError with the offending line.
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig load_sweep_config(const std::filesystem::path& path);

}  // namespace gausslink
