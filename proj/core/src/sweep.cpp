#include "gausslink/sweep.hpp"

#include "gausslink/channel_metrics.hpp"
#include "gausslink/entanglement.hpp"
#include "gausslink/errors.hpp"
#include "gausslink/heatmap.hpp"
#include "gausslink/swapping.hpp"
#include "gausslink/teleportation.hpp"
#include "gausslink/transducer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace gausslink {

namespace {

struct PointParams {
    FixedParams f;

    void set(const std::string& axis, double value) {
        if (axis == "C_om") f.c_om = value;
        else if (axis == "C_em") f.c_em = value;
        else if (axis == "kappa") f.kappa = value;
        else if (axis == "n_th") f.n_th = value;
        else if (axis == "tau") f.tau = value;
    }

    TransducerParams device(Detuning d) const {
        return TransducerParams::from_cooperativities(f.c_om, f.c_em, f.zeta_o, f.zeta_e, f.n_th, d, f.kappa_o,
                                                      f.kappa_e);
    }
};

using Cells = std::vector<std::string>;

std::string cell(double x) { return format_number(x); }

// Returns nullopt for points where the blue-detuned device is unstable.
std::optional<Cells> evaluate(Experiment e, const PointParams& pt) {
    const FixedParams& f = pt.f;
    if (e == Experiment::kFig1aDqtBoundary) {
        const TransducerParams red = pt.device(Detuning::kRed);
        const DqtChannel ch = dqt_channel(red);
        const auto boundary = dqt_capacity_boundary(f.zeta_o, f.zeta_e);
        return Cells{cell(f.c_om * f.c_em), cell(ch.eta), cell(ch.n_e), cell(dqt_capacity_density(red, 0.0)),
                     boundary ? cell(*boundary) : std::string()};
    }

    const TransducerParams blue = pt.device(Detuning::kBlue);
    if (!stability_check(blue)) return std::nullopt;

    switch (e) {
        case Experiment::kFig5aClickRate: {
            const ClickRates rates = click_rate(blue, f.tau, f.dt);
            return Cells{cell(rates.r_t), cell(rates.r_b)};
        }
        case Experiment::kFig5bHomodyneRate:
            return Cells{cell(entanglement_rate(blue, f.tau))};
        default:
            break;
    }

    const TwoModeStandardForm form = apply_optical_loss(output_mo_covariance(blue), f.tau);
    switch (e) {
        case Experiment::kFig1bEqtIdeal: {
            const GainSearchResult g = optimize_gain(form);
            return Cells{cell(form.u), cell(form.v), cell(form.w), cell(g.kappa_opt), cell(g.q_lb_opt)};
        }
        case Experiment::kFig2aGainCurves: {
            const BosonicChannel ch = induced_channel(form, f.kappa);
            const double raw = q_lb_raw(ch);
            return Cells{cell(form.u), cell(form.v), cell(form.w), std::string(to_string(ch.kind)), cell(raw),
                         cell(std::max(0.0, raw))};
        }
        case Experiment::kFig2bcCapacityMaps: {
            const GainSearchResult g = optimize_gain(form);
            const double dqt = dqt_capacity_density(pt.device(Detuning::kRed), 0.0);
            return Cells{cell(form.u), cell(form.v), cell(form.w), cell(g.kappa_opt), cell(g.q_lb_opt), cell(dqt)};
        }
        case Experiment::kFig2dEofMap:
            return Cells{cell(form.u), cell(form.v), cell(form.w), cell(entanglement_of_formation(form))};
        case Experiment::kFig4aMmEof: {
            const TwoModeStandardForm mm = mm_form(form);
            return Cells{cell(mm.u), cell(mm.w), cell(entanglement_of_formation(mm))};
        }
        case Experiment::kFig4bMmCapacity: {
            const TwoModeStandardForm mm = mm_form(form);
            const GainSearchResult g = optimize_gain(mm);
            const double dqt = dqt_capacity_density(pt.device(Detuning::kRed), 0.0);
            return Cells{cell(mm.u), cell(mm.w), cell(g.kappa_opt), cell(g.q_lb_opt), cell(dqt)};
        }
        case Experiment::kCustom: {
            const TransducerParams red = pt.device(Detuning::kRed);
            const GainSearchResult g = optimize_gain(form);
            const TwoModeStandardForm mm = mm_form(form);
            return Cells{cell(dqt_efficiency(red)),
                         cell(dqt_capacity_density(red, 0.0)),
                         cell(form.u),
                         cell(form.v),
                         cell(form.w),
                         cell(entanglement_of_formation(form)),
                         cell(g.kappa_opt),
                         cell(g.q_lb_opt),
                         cell(q_lb(induced_channel(form, f.kappa))),
                         cell(entanglement_of_formation(mm)),
                         cell(mm_capacity(mm))};
        }
        default:
            break;
    }
    throw std::logic_error("evaluate: unhandled experiment");
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << contents;
    out.close();
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

std::vector<std::string> metric_columns(Experiment e) {
    switch (e) {
        case Experiment::kFig1aDqtBoundary: return {"c_product", "eta", "n_e", "q_lb_dqt", "boundary"};
        case Experiment::kFig1bEqtIdeal: return {"u", "v", "w", "kappa_opt", "q_lb_eqt"};
        case Experiment::kFig2aGainCurves: return {"u", "v", "w", "channel", "q_lb_raw", "q_lb"};
        case Experiment::kFig2bcCapacityMaps: return {"u", "v", "w", "kappa_opt", "q_lb_eqt", "q_lb_dqt"};
        case Experiment::kFig2dEofMap: return {"u", "v", "w", "e_f"};
        case Experiment::kFig4aMmEof: return {"u_mm", "w_mm", "e_f_mm"};
        case Experiment::kFig4bMmCapacity: return {"u_mm", "w_mm", "kappa_opt", "q_lb_mm", "q_lb_dqt"};
        case Experiment::kFig5aClickRate: return {"r_t", "r_b"};
        case Experiment::kFig5bHomodyneRate: return {"e_r"};
        case Experiment::kCustom:
            return {"eta_dqt", "q_lb_dqt", "u",     "v",      "w",      "e_f",
                    "kappa_opt", "q_lb_eqt", "q_lb_kappa", "e_f_mm", "q_lb_mm"};
    }
    return {};
}

std::string format_number(double x) {
    if (!std::isfinite(x)) throw NumericalError("format_number: non-finite value");
    if (x == 0.0) x = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

SweepTable compute_sweep(const SweepConfig& config, unsigned jobs) {
    config.validate();
    SweepTable table;
    table.n_axes = config.axes.size();
    for (const AxisSpec& a : config.axes) table.header.push_back(a.name);
    table.header.emplace_back("stable");
    const std::vector<std::string> metrics = metric_columns(config.experiment);
    table.header.insert(table.header.end(), metrics.begin(), metrics.end());

    std::vector<std::vector<double>> grids;
    std::size_t total = 1;
    for (const AxisSpec& a : config.axes) {
        grids.push_back(a.values());
        total *= grids.back().size();
    }
    table.rows.resize(total);

    auto evaluate_row = [&](std::size_t index) {
        PointParams pt{config.fixed};
        Cells row(grids.size());
        std::size_t rem = index;
        for (std::size_t k = grids.size(); k-- > 0;) {
            const double value = grids[k][rem % grids[k].size()];
            rem /= grids[k].size();
            pt.set(config.axes[k].name, value);
            row[k] = format_number(value);
        }
        const std::optional<Cells> values = evaluate(config.experiment, pt);
        row.emplace_back(values ? "1" : "0");
        if (values) {
            row.insert(row.end(), values->begin(), values->end());
        } else {
            row.resize(row.size() + metrics.size());
        }
        table.rows[index] = std::move(row);
    };

    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_index = total;
    std::exception_ptr error;
    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            try {
                evaluate_row(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (i < error_index) {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> threads;
    for (unsigned t = 1; t < jobs; ++t) threads.emplace_back(worker);
    worker();
    for (std::thread& t : threads) t.join();
    if (error) std::rethrow_exception(error);
    return table;
}

std::string to_csv(const SweepTable& table) {
    std::string out;
    auto append_row = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    append_row(table.header);
    for (const auto& row : table.rows) append_row(row);
    return out;
}

SweepOutputs run_sweep(const SweepConfig& config, const SweepRunOptions& options) {
    const bool svg_requested = options.emit_svg || config.emit_svg;
    if (svg_requested) {
        if (config.axes.size() != 2) throw ConfigError("emit_svg: heatmaps need exactly two axes");
        const std::vector<std::string> metrics = metric_columns(config.experiment);
        if (std::find(metrics.begin(), metrics.end(), config.metric) == metrics.end() || config.metric == "channel") {
            throw ConfigError("metric: '" + config.metric + "' is not a numeric column of " +
                              std::string(to_string(config.experiment)));
        }
    }
    const SweepTable table = compute_sweep(config, options.jobs);
    std::filesystem::path csv = config.output;
    if (options.out_dir) csv = *options.out_dir / csv.filename();

    const std::string text = to_csv(table);
    write_file(csv, text);

    SweepOutputs result{csv, std::nullopt, table.rows.size()};
    if (svg_requested) {
        std::filesystem::path svg = csv;
        svg.replace_extension(".svg");
        write_file(svg, render_heatmap_svg(text, config.metric));
        result.svg = svg;
    }
    return result;
}

}  // namespace gausslink
