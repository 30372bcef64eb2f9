#pragma once

#include "gausslink/sweep_config.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gausslink {

/// Metric columns emitted for an experiment, in CSV order.
std::vector<std::string> metric_columns(Experiment e);

/// A computed grid. Cells are already formatted; unstable rows carry empty
/// metric cells.
struct SweepTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::size_t n_axes = 0;
};

/// 12 significant digits, "%.12g"; negative zero prints as 0.
std::string format_number(double x);

/// Evaluates every grid point on `jobs` worker threads. Row order is
/// row-major over the axes regardless of completion order. Numerical failures
/// at stable points propagate as NumericalError.
SweepTable compute_sweep(const SweepConfig& config, unsigned jobs = 1);

/// Comma-separated, LF line endings, header first.
std::string to_csv(const SweepTable& table);

struct SweepRunOptions {
    std::optional<std::filesystem::path> out_dir;  ///< replaces the directory of config.output
    unsigned jobs = 1;
    bool emit_svg = false;  ///< ORed with config.emit_svg
};

struct SweepOutputs {
    std::filesystem::path csv;
    std::optional<std::filesystem::path> svg;
    std::size_t rows = 0;
};

/// Throws std::runtime_error when an output file cannot be written.
SweepOutputs run_sweep(const SweepConfig& config, const SweepRunOptions& options = {});

}  // namespace gausslink
