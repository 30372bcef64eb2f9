#include "gausslink/errors.hpp"
#include "gausslink/heatmap.hpp"
#include "gausslink/selftest.hpp"
#include "gausslink/sweep.hpp"
#include "gausslink/sweep_config.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

unsigned resolve_jobs(std::optional<unsigned> flag) {
    if (flag) {
        if (*flag == 0) throw gausslink::ConfigError("--jobs must be at least 1");
        return *flag;
    }
    if (const char* env = std::getenv("GAUSSLINK_JOBS"); env != nullptr && *env != '\0') {
        unsigned jobs = 0;
        const char* end = env + std::strlen(env);
        const auto [ptr, ec] = std::from_chars(env, end, jobs);
        if (ec != std::errc() || ptr != end || jobs == 0) {
            throw gausslink::ConfigError("GAUSSLINK_JOBS must be a positive integer, got '" + std::string(env) + "'");
        }
        return jobs;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int run_sweep_command(const std::string& config_path, const std::optional<std::string>& out_dir, bool svg,
                      std::optional<unsigned> jobs) {
    const gausslink::SweepConfig config = gausslink::load_sweep_config(config_path);
    gausslink::SweepRunOptions options;
    if (out_dir) options.out_dir = *out_dir;
    options.jobs = resolve_jobs(jobs);
    options.emit_svg = svg;
    const gausslink::SweepOutputs out = gausslink::run_sweep(config, options);
    std::cout << "wrote " << out.rows << " rows to " << out.csv.string() << '\n';
    if (out.svg) std::cout << "wrote heatmap " << out.svg->string() << '\n';
    return 0;
}

int run_selftest_command(std::uint64_t seed) {
    const gausslink::SelfTestReport report = gausslink::run_selftest(seed);
    for (const auto& c : report.cases) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    }
    std::cout << (report.all_passed() ? "selftest passed" : "selftest FAILED") << " (seed " << seed << ")\n";
    return report.all_passed() ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian-channel models of microwave-optical transduction"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_dir;
    bool svg = false;
    std::optional<unsigned> jobs;
    std::uint64_t seed = 20210401;

    CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep from an INI config and write CSV");
    sweep->add_option("config", config_path, "Sweep config path")->required();
    sweep->add_option("--out", out_dir, "Output directory (overrides the config's directory)");
    sweep->add_flag("--svg", svg, "Also render the configured metric as an SVG heatmap");
    sweep->add_option("--jobs", jobs, "Worker threads (fallback: GAUSSLINK_JOBS, then all cores)");
    sweep->add_option("--seed", seed, "Unused by sweeps; accepted for symmetry with selftest");

    CLI::App* selftest = app.add_subcommand("selftest", "Run the randomized oracle-equivalence suites");
    selftest->add_option("--seed", seed, "RNG seed");

    std::string csv_path;
    std::string metric;
    std::string svg_path;
    CLI::App* heatmap = app.add_subcommand("heatmap", "Render one column of a two-axis sweep CSV as SVG");
    heatmap->add_option("csv", csv_path, "Sweep CSV")->required();
    heatmap->add_option("--metric", metric, "Column to plot")->required();
    heatmap->add_option("--out", svg_path, "SVG path (default: CSV path with .svg)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*sweep) return run_sweep_command(config_path, out_dir, svg, jobs);
        if (*selftest) return run_selftest_command(seed);
        if (*heatmap) {
            std::filesystem::path out = svg_path.empty() ? std::filesystem::path(csv_path).replace_extension(".svg")
                                                          : std::filesystem::path(svg_path);
            gausslink::emit_heatmap(csv_path, metric, out);
            std::cout << "wrote heatmap " << out.string() << '\n';
            return 0;
        }
    } catch (const gausslink::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const gausslink::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}
