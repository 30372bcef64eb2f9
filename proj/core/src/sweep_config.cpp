#include "gausslink/sweep_config.hpp"

#include "gausslink/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <utility>

namespace gausslink {

namespace {

constexpr std::array<std::pair<Experiment, std::string_view>, 10> kExperimentNames{{
    {Experiment::kFig1aDqtBoundary, "fig1a_dqt_boundary"},
    {Experiment::kFig1bEqtIdeal, "fig1b_eqt_ideal"},
    {Experiment::kFig2aGainCurves, "fig2a_gain_curves"},
    {Experiment::kFig2bcCapacityMaps, "fig2bc_capacity_maps"},
    {Experiment::kFig2dEofMap, "fig2d_eof_map"},
    {Experiment::kFig4aMmEof, "fig4a_mm_eof"},
    {Experiment::kFig4bMmCapacity, "fig4b_mm_capacity"},
    {Experiment::kFig5aClickRate, "fig5a_click_rate"},
    {Experiment::kFig5bHomodyneRate, "fig5b_homodyne_rate"},
    {Experiment::kCustom, "custom"},
}};

constexpr std::array<std::string_view, 5> kAxisNames{"C_om", "C_em", "kappa", "n_th", "tau"};

// Source line of each key, for error messages raised after parsing.
using LineMap = std::map<std::string, int>;

// Falls back to the enclosing section ("axis.tau.min" -> "axis.tau").
int line_of(const LineMap* lines, std::string key) {
    if (lines == nullptr) return 0;
    while (true) {
        if (const auto it = lines->find(key); it != lines->end()) return it->second;
        const auto dot = key.rfind('.');
        if (dot == std::string::npos) return 0;
        key.resize(dot);
    }
}

void require(bool ok, const std::string& message, const LineMap* lines, const std::string& key) {
    if (!ok) throw ConfigError(key + ": " + message, line_of(lines, key));
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& text, int line, const std::string& key) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw ConfigError(key + ": expected a finite number, got '" + text + "'", line);
    }
    return value;
}

int parse_int(const std::string& text, int line, const std::string& key) {
    int value = 0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) throw ConfigError(key + ": expected an integer, got '" + text + "'", line);
    return value;
}

bool parse_bool(const std::string& text, int line, const std::string& key) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError(key + ": expected true or false, got '" + text + "'", line);
}

double* fixed_field(FixedParams& f, std::string_view key) {
    if (key == "zeta_o") return &f.zeta_o;
    if (key == "zeta_e") return &f.zeta_e;
    if (key == "n_th") return &f.n_th;
    if (key == "tau") return &f.tau;
    if (key == "dt") return &f.dt;
    if (key == "kappa_o") return &f.kappa_o;
    if (key == "kappa_e") return &f.kappa_e;
    if (key == "C_om") return &f.c_om;
    if (key == "C_em") return &f.c_em;
    if (key == "kappa") return &f.kappa;
    return nullptr;
}

AxisSpec axis(std::string name, double min, double max, int points, AxisScale scale) {
    return {std::move(name), min, max, points, scale};
}

void validate_config(const SweepConfig& c, const LineMap* lines) {
    const FixedParams& f = c.fixed;
    require(f.zeta_o > 0.0 && f.zeta_o <= 1.0, "must lie in (0, 1]", lines, "fixed.zeta_o");
    require(f.zeta_e > 0.0 && f.zeta_e <= 1.0, "must lie in (0, 1]", lines, "fixed.zeta_e");
    require(f.n_th >= 0.0, "must be non-negative", lines, "fixed.n_th");
    require(f.tau >= 0.0 && f.tau <= 1.0, "must lie in [0, 1]", lines, "fixed.tau");
    require(f.dt > 0.0, "must be positive", lines, "fixed.dt");
    require(f.kappa_o > 0.0, "must be positive", lines, "fixed.kappa_o");
    require(f.kappa_e > 0.0, "must be positive", lines, "fixed.kappa_e");
    require(f.c_om >= 0.0, "must be non-negative", lines, "fixed.C_om");
    require(f.c_em >= 0.0, "must be non-negative", lines, "fixed.C_em");
    require(f.kappa > 0.0, "must be positive", lines, "fixed.kappa");

    require(!c.axes.empty(), "at least one axis is required", lines, "axis");
    require(c.axes.size() <= 2, "at most two axes are supported", lines, "axis");
    for (std::size_t i = 0; i < c.axes.size(); ++i) {
        const AxisSpec& a = c.axes[i];
        const std::string key = "axis." + a.name;
        require(is_axis_name(a.name), "unknown axis; expected C_om, C_em, kappa, n_th or tau", lines, key);
        for (std::size_t j = 0; j < i; ++j) require(c.axes[j].name != a.name, "duplicate axis", lines, key);
        require(a.points >= 2, "must be at least 2", lines, key + ".points");
        require(a.min < a.max, "must be above min", lines, key + ".max");
        require(a.scale == AxisScale::kLinear || a.min > 0.0, "log scale needs min > 0", lines, key + ".min");
        if (a.name == "tau") {
            require(a.min >= 0.0, "tau must lie in [0, 1]", lines, key + ".min");
            require(a.max <= 1.0, "tau must lie in [0, 1]", lines, key + ".max");
        }
        if (a.name == "kappa") require(a.min > 0.0, "kappa must be positive", lines, key + ".min");
        if (a.name == "n_th" || a.name == "C_om" || a.name == "C_em") {
            require(a.min >= 0.0, "must be non-negative", lines, key + ".min");
        }
    }
}

}  // namespace

std::string_view to_string(Experiment e) {
    for (const auto& [value, name] : kExperimentNames) {
        if (value == e) return name;
    }
    return "custom";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
    for (const auto& [value, text] : kExperimentNames) {
        if (text == name) return value;
    }
    return std::nullopt;
}

bool is_axis_name(std::string_view name) {
    return std::find(kAxisNames.begin(), kAxisNames.end(), name) != kAxisNames.end();
}

std::vector<double> AxisSpec::values() const {
    std::vector<double> out(static_cast<std::size_t>(std::max(points, 0)));
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        out[i] = scale == AxisScale::kLog ? std::exp(std::log(min) + t * (std::log(max) - std::log(min)))
                                          : min + t * (max - min);
    }
    if (points >= 2) {
        out.front() = min;
        out.back() = max;
    }
    return out;
}

void SweepConfig::validate() const { validate_config(*this, nullptr); }

SweepConfig default_config(Experiment e) {
    SweepConfig c;
    c.experiment = e;
    c.output = std::string(to_string(e)) + ".csv";
    const AxisSpec c_om = axis("C_om", 0.1, 10.0, 100, AxisScale::kLog);
    const AxisSpec c_em = axis("C_em", 0.1, 10.0, 100, AxisScale::kLog);
    switch (e) {
        case Experiment::kFig1aDqtBoundary:
            c.axes = {c_om, c_em};
            c.metric = "q_lb_dqt";
            break;
        case Experiment::kFig1bEqtIdeal:
            c.axes = {c_om, c_em};
            c.metric = "q_lb_eqt";
            break;
        case Experiment::kFig2aGainCurves:
            c.fixed.zeta_o = 0.8;
            c.axes = {axis("n_th", 0.0, 1.0, 3, AxisScale::kLinear), axis("kappa", 0.5, 3.0, 200, AxisScale::kLinear)};
            c.metric = "q_lb";
            break;
        case Experiment::kFig2bcCapacityMaps:
            c.fixed.zeta_o = 0.8;
            c.axes = {c_om, c_em};
            c.metric = "q_lb_eqt";
            break;
        case Experiment::kFig2dEofMap:
            c.fixed.zeta_o = 0.8;
            c.axes = {c_om, c_em};
            c.metric = "e_f";
            break;
        case Experiment::kFig4aMmEof:
            c.axes = {c_om, c_em};
            c.metric = "e_f_mm";
            break;
        case Experiment::kFig4bMmCapacity:
            c.axes = {c_om, c_em};
            c.metric = "q_lb_mm";
            break;
        case Experiment::kFig5aClickRate:
            c.fixed.c_em = 10.0;
            c.axes = {c_om, axis("tau", 0.0, 1.0, 100, AxisScale::kLinear)};
            c.metric = "r_b";
            break;
        case Experiment::kFig5bHomodyneRate:
            c.fixed.c_em = 10.0;
            c.axes = {c_om, axis("tau", 0.0, 1.0, 100, AxisScale::kLinear)};
            c.metric = "e_r";
            break;
        case Experiment::kCustom:
            c.axes = {c_om, c_em};
            c.metric = "q_lb_eqt";
            break;
    }
    return c;
}

SweepConfig parse_sweep_config(std::istream& in) {
    struct RawAxis {
        std::string name;
        int line;
        std::map<std::string, std::pair<std::string, int>> keys;
    };
    std::map<std::string, std::pair<std::string, int>> global;
    std::map<std::string, std::pair<std::string, int>> fixed;
    std::vector<RawAxis> axes;
    enum class Section { kGlobal, kFixed, kAxis } section = Section::kGlobal;

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find_first_of("#;");
        const std::string line = trim(std::string_view(raw).substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("malformed section header '" + line + "'", line_no);
            const std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
            if (name == "fixed") {
                section = Section::kFixed;
            } else if (name.rfind("axis ", 0) == 0) {
                const std::string axis_name = trim(std::string_view(name).substr(5));
                if (!is_axis_name(axis_name)) {
                    throw ConfigError("unknown axis '" + axis_name + "'; expected C_om, C_em, kappa, n_th or tau",
                                      line_no);
                }
                for (const RawAxis& a : axes) {
                    if (a.name == axis_name) throw ConfigError("duplicate axis '" + axis_name + "'", line_no);
                }
                axes.push_back({axis_name, line_no, {}});
                section = Section::kAxis;
            } else {
                throw ConfigError("unknown section '" + name + "'", line_no);
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + line + "'", line_no);
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) throw ConfigError("missing key before '='", line_no);
        auto& target = section == Section::kGlobal ? global : section == Section::kFixed ? fixed : axes.back().keys;
        if (!target.emplace(key, std::make_pair(value, line_no)).second) {
            throw ConfigError("duplicate key '" + key + "'", line_no);
        }
    }

    LineMap lines;
    const auto exp_it = global.find("experiment");
    if (exp_it == global.end()) throw ConfigError("missing required key 'experiment'");
    const auto experiment = parse_experiment(exp_it->second.first);
    if (!experiment) throw ConfigError("unknown experiment '" + exp_it->second.first + "'", exp_it->second.second);
    SweepConfig config = default_config(*experiment);

    for (const auto& [key, entry] : global) {
        const auto& [value, line] = entry;
        lines[key] = line;
        if (key == "experiment") continue;
        if (key == "output") {
            if (value.empty()) throw ConfigError("output: must not be empty", line);
            config.output = value;
        } else if (key == "emit_svg") {
            config.emit_svg = parse_bool(value, line, key);
        } else if (key == "metric") {
            config.metric = value;
        } else {
            throw ConfigError("unknown key '" + key + "'", line);
        }
    }
    for (const auto& [key, entry] : fixed) {
        double* field = fixed_field(config.fixed, key);
        if (field == nullptr) throw ConfigError("unknown fixed parameter '" + key + "'", entry.second);
        *field = parse_double(entry.first, entry.second, key);
        lines["fixed." + key] = entry.second;
    }
    if (!axes.empty()) {
        config.axes.clear();
        for (const RawAxis& a : axes) {
            AxisSpec spec;
            spec.name = a.name;
            lines["axis." + a.name] = a.line;
            for (const char* required : {"min", "max", "points"}) {
                if (!a.keys.contains(required)) {
                    throw ConfigError("axis " + a.name + ": missing key '" + required + "'", a.line);
                }
            }
            for (const auto& [key, entry] : a.keys) {
                const auto& [value, line] = entry;
                lines["axis." + a.name + "." + key] = line;
                if (key == "min") {
                    spec.min = parse_double(value, line, key);
                } else if (key == "max") {
                    spec.max = parse_double(value, line, key);
                } else if (key == "points") {
                    spec.points = parse_int(value, line, key);
                } else if (key == "scale") {
                    if (value == "linear") {
                        spec.scale = AxisScale::kLinear;
                    } else if (value == "log") {
                        spec.scale = AxisScale::kLog;
                    } else {
                        throw ConfigError("scale: expected linear or log, got '" + value + "'", line);
                    }
                } else {
                    throw ConfigError("axis " + a.name + ": unknown key '" + key + "'", line);
                }
            }
            config.axes.push_back(std::move(spec));
        }
    }
    validate_config(config, &lines);
    return config;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    return parse_sweep_config(in);
}

}  // namespace gausslink
