// Copyright 2026 The mzisim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "mzi/bounds.h"
#include "mzi/drift.h"
#include "mzi/kernels.h"

namespace mzi {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

constexpr const char *kDefaultSchemes = "intensity,intensity-difference,homodyne,parity";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Every flag of every subcommand. Each subcommand gets its own copy, seeded
/// with that subcommand's defaults.
struct Params {
    MziConfig physics;
    std::string schemes = kDefaultSchemes;
    std::string out;
    std::string config;

    double phi_min = 0.0;
    double phi_max = 2.0 * std::numbers::pi;
    int phi_steps = 1025;

    double alpha_sq_min = 1e3;
    double alpha_sq_max = 1e6;
    int alpha_sq_steps = 31;

    double sigma_drift = 0.15;
    int m_max = 200;
    uint64_t seed = 1;

    /// Total over both arms; each arm receives half.
    double n_th = 1.0;
    double t_mix = 0.25;
};

std::string number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string trim(const std::string &s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct NamedScheme {
    std::string name;
    MeasurementScheme scheme;
};

std::vector<NamedScheme> parse_scheme_list(const std::string &text) {
    std::vector<NamedScheme> result;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            throw UsageError("empty entry in --schemes");
        }
        auto scheme = parse_scheme(item);
        result.push_back({scheme_name(scheme), scheme});
    }
    if (result.empty()) {
        throw UsageError("--schemes must name at least one detection scheme");
    }
    return result;
}

std::vector<double> phase_grid(const Params &p) {
    if (p.phi_steps < 1 || !std::isfinite(p.phi_min) || !std::isfinite(p.phi_max)) {
        throw UsageError("phase grid needs --phi-steps >= 1 and finite bounds");
    }
    if (p.phi_steps > 1 && !(p.phi_max > p.phi_min)) {
        throw UsageError("--phi-max must exceed --phi-min");
    }
    std::vector<double> grid(p.phi_steps);
    for (int i = 0; i < p.phi_steps; i++) {
        grid[i] = p.phi_steps == 1 ? p.phi_min : p.phi_min + (p.phi_max - p.phi_min) * i / (p.phi_steps - 1);
    }
    return grid;
}

std::vector<double> power_grid(const Params &p) {
    if (p.alpha_sq_steps < 1 || !(p.alpha_sq_min > 0.0) || !std::isfinite(p.alpha_sq_max)) {
        throw UsageError("power grid needs --alpha-sq-steps >= 1 and positive finite bounds");
    }
    if (p.alpha_sq_steps > 1 && !(p.alpha_sq_max > p.alpha_sq_min)) {
        throw UsageError("--alpha-sq-max must exceed --alpha-sq-min");
    }
    std::vector<double> grid(p.alpha_sq_steps);
    const double lo = std::log(p.alpha_sq_min);
    const double hi = std::log(p.alpha_sq_max);
    for (int i = 0; i < p.alpha_sq_steps; i++) {
        grid[i] = std::exp(lo + (hi - lo) * i / std::max(1, p.alpha_sq_steps - 1));
    }
    grid.front() = p.alpha_sq_min;
    if (p.alpha_sq_steps > 1) {
        grid.back() = p.alpha_sq_max;
    }
    return grid;
}

double qcrb_or_inf(double alpha_sq, double r, double loss) {
    return loss >= 1.0 ? std::numeric_limits<double>::infinity() : qcrb_lossy(alpha_sq, r, loss);
}

std::string header(const char *first, const std::vector<NamedScheme> &schemes, bool bounds) {
    std::string h = first;
    for (const auto &s : schemes) {
        h += "," + s.name;
    }
    if (bounds) {
        h += ",snl,qcrb_lossy";
    }
    return h + "\n";
}

MeasurementScheme resolve_and_report(const MziConfig &base, const NamedScheme &s, std::ostream &err) {
    const auto resolved = resolve_port(base, s.scheme);
    if (!port_resolved(s.scheme)) {
        err << s.name << ": using " << scheme_name(resolved) << "\n";
    }
    return resolved;
}

// Phase sweep shared by sweep-phase and thermal. `effective_loss` feeds the
// qcrb_lossy reference column.
std::string phase_sweep(const Params &p, const MziConfig &base, double effective_loss, std::ostream &err) {
    base.validate();
    const auto schemes = parse_scheme_list(p.schemes);
    const auto phis = phase_grid(p);
    std::vector<std::vector<double>> columns;
    for (const auto &s : schemes) {
        columns.push_back(phase_curve(base, resolve_and_report(base, s, err), phis, Execution::parallel));
    }
    const std::string snl_text = number(snl(base.alpha_sq, base.r));
    const std::string qcrb_text = number(qcrb_or_inf(base.alpha_sq, base.r, effective_loss));

    std::string csv = header("phi", schemes, true);
    for (size_t i = 0; i < phis.size(); i++) {
        csv += number(phis[i]);
        for (const auto &c : columns) {
            csv += "," + number(c[i]);
        }
        csv += "," + snl_text + "," + qcrb_text + "\n";
    }
    return csv;
}

std::string cmd_sweep_phase(const Params &p, std::ostream &err) {
    return phase_sweep(p, p.physics, p.physics.loss, err);
}

std::string cmd_thermal(const Params &p, std::ostream &err) {
    if (!(p.n_th >= 0.0)) {
        throw UsageError("--n-th must be non-negative");
    }
    MziConfig base = p.physics;
    base.thermal_mix = p.t_mix;
    base.n_th = p.n_th / 2.0;
    const double effective_loss = 1.0 - (1.0 - base.loss) * (1.0 - base.thermal_mix);
    return phase_sweep(p, base, effective_loss, err);
}

std::string cmd_sweep_power(const Params &p, std::ostream &err) {
    p.physics.validate();
    const auto schemes = parse_scheme_list(p.schemes);
    const auto alphas = power_grid(p);
    std::vector<std::vector<PhaseSensitivity>> columns;
    for (const auto &s : schemes) {
        columns.push_back(power_curve(p.physics, s.scheme, alphas, Execution::parallel));
        if (!port_resolved(s.scheme)) {
            std::map<std::string, int> used;
            for (const auto &point : columns.back()) {
                used[scheme_name(point.scheme)]++;
            }
            for (const auto &[name, count] : used) {
                err << s.name << ": using " << name << " at " << count << " of " << alphas.size() << " points\n";
            }
        }
    }
    std::string csv = header("alpha_sq", schemes, true);
    for (size_t i = 0; i < alphas.size(); i++) {
        csv += number(alphas[i]);
        for (const auto &c : columns) {
            csv += "," + number(c[i].variance);
        }
        csv += "," + number(snl(alphas[i], p.physics.r)) + "," +
               number(qcrb_or_inf(alphas[i], p.physics.r, p.physics.loss)) + "\n";
    }
    return csv;
}

std::string cmd_drift(const Params &p, std::ostream &err) {
    const auto schemes = parse_scheme_list(p.schemes);
    std::vector<DriftSeries> columns;
    for (const auto &s : schemes) {
        DriftConfig config{p.physics, s.scheme, p.sigma_drift, p.m_max, p.seed};
        config.validate();
        columns.push_back(running_average(config));
        const auto &series = columns.back();
        err << s.name << ": " << scheme_name(series.optimum.scheme) << " centred at phi="
            << number(series.optimum.at_phase) << ", " << series.redraws << " redraws\n";
        if (series.pathological) {
            err << "warning: " << s.name << " redrew more than 10% of its samples at stationary points\n";
        }
    }
    std::string csv = header("m", schemes, false);
    for (int m = 0; m < p.m_max; m++) {
        csv += std::to_string(m + 1);
        for (const auto &c : columns) {
            csv += "," + number(c.ratios[m]);
        }
        csv += "\n";
    }
    return csv;
}

std::string cmd_bounds(const Params &p, std::ostream &) {
    p.physics.validate();
    if (p.physics.loss >= 1.0) {
        throw UsageError("--loss must be below 1");
    }
    const auto report = bound_report(p.physics.alpha_sq, p.physics.r, p.physics.loss);
    std::string csv = "quantity,value\n";
    csv += "snl," + number(report.snl) + "\n";
    csv += "qcrb," + number(report.qcrb) + "\n";
    for (const auto &[name, value] : report.closed_forms) {
        csv += name + "," + number(value) + "\n";
    }
    return csv;
}

void add_physics(CLI::App &sub, Params &p) {
    sub.add_option("--alpha-sq", p.physics.alpha_sq, "Mean coherent photon number |alpha|^2")->capture_default_str();
    sub.add_option("--r", p.physics.r, "Squeezing strength r")->capture_default_str();
    sub.add_option("--theta", p.physics.theta, "Coherent phase theta (rad)")->capture_default_str();
    sub.add_option("--delta", p.physics.delta, "Squeezing angle delta (rad)")->capture_default_str();
    sub.add_option("--loss", p.physics.loss, "Combined loss L in [0, 1]")->capture_default_str();
}

void add_io(CLI::App &sub, Params &p, bool with_schemes) {
    if (with_schemes) {
        sub.add_option("--schemes", p.schemes, "Comma-separated detection schemes")->capture_default_str();
    }
    sub.add_option("--out", p.out, "Output file (default: standard output)");
    sub.add_option("--config", p.config, "key=value file; command-line flags take precedence");
}

void add_phase_grid(CLI::App &sub, Params &p) {
    sub.add_option("--phi-min", p.phi_min, "First phase (rad)")->capture_default_str();
    sub.add_option("--phi-max", p.phi_max, "Last phase (rad)")->capture_default_str();
    sub.add_option("--phi-steps", p.phi_steps, "Number of phases")->capture_default_str();
}

std::optional<std::string> find_config(const std::vector<std::string> &args) {
    for (size_t i = 0; i < args.size(); i++) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                throw UsageError("--config needs a file name");
            }
            return args[i + 1];
        }
        if (args[i].rfind("--config=", 0) == 0) {
            return args[i].substr(9);
        }
    }
    return std::nullopt;
}

bool flag_given(const std::vector<std::string> &args, const std::string &flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string &a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

// Appends config-file entries as flags for the chosen subcommand unless the
// same flag is already on the command line.
void inject_config(CLI::App &app, std::vector<std::string> &args) {
    const auto path = find_config(args);
    if (!path) {
        return;
    }
    CLI::App *sub = nullptr;
    for (const auto &a : args) {
        if (auto *candidate = app.get_subcommand_no_throw(a)) {
            sub = candidate;
            break;
        }
    }
    if (sub == nullptr) {
        return;
    }
    std::ifstream in(*path);
    if (!in) {
        throw std::runtime_error("cannot read config file " + *path);
    }
    std::string line;
    int line_no = 0;
    std::vector<std::string> extra;
    while (std::getline(in, line)) {
        line_no++;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(*path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        std::replace(key.begin(), key.end(), '_', '-');
        const std::string flag = "--" + key;
        if (key == "config") {
            throw UsageError(*path + ":" + std::to_string(line_no) + ": config files cannot nest");
        }
        if (sub->get_option_no_throw(flag) == nullptr) {
            bool known = false;
            for (const auto *other : app.get_subcommands({})) {
                known = known || other->get_option_no_throw(flag) != nullptr;
            }
            if (!known) {
                throw UsageError(*path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
            }
            continue;
        }
        if (!flag_given(args, flag)) {
            extra.push_back(flag);
            extra.push_back(value);
        }
    }
    args.insert(args.end(), extra.begin(), extra.end());
}

int write_output(const std::string &csv, const std::string &path, std::ostream &out, std::ostream &err) {
    if (path.empty()) {
        out << csv;
        out.flush();
        return out ? kExitOk : kExitRuntime;
    }
    std::ofstream file(path, std::ios::binary);
    file << csv;
    file.close();
    if (!file) {
        err << "error: cannot write " << path << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Phase sensitivity of a Mach-Zehnder interferometer fed with coherent and squeezed light", "mzi"};
    app.require_subcommand(1);

    using Command = std::string (*)(const Params &, std::ostream &);
    std::map<std::string, std::pair<Params, Command>> commands;

    auto &phase = commands["sweep-phase"];
    phase.first.physics.loss = 0.2;
    phase.second = cmd_sweep_phase;
    auto *sweep_phase = app.add_subcommand("sweep-phase", "Delta^2 phi against the unknown phase");
    add_physics(*sweep_phase, phase.first);
    add_phase_grid(*sweep_phase, phase.first);
    add_io(*sweep_phase, phase.first, true);

    auto &power = commands["sweep-power"];
    power.first.physics.loss = 0.2;
    power.second = cmd_sweep_power;
    auto *sweep_power = app.add_subcommand("sweep-power", "Optimal Delta^2 phi against |alpha|^2 (log grid)");
    add_physics(*sweep_power, power.first);
    sweep_power->add_option("--alpha-sq-min", power.first.alpha_sq_min, "Smallest |alpha|^2")->capture_default_str();
    sweep_power->add_option("--alpha-sq-max", power.first.alpha_sq_max, "Largest |alpha|^2")->capture_default_str();
    sweep_power->add_option("--alpha-sq-steps", power.first.alpha_sq_steps, "Number of grid points")
        ->capture_default_str();
    add_io(*sweep_power, power.first, true);

    auto &drift = commands["drift"];
    drift.first.physics.alpha_sq = 100.0;
    drift.second = cmd_drift;
    auto *drift_cmd = app.add_subcommand("drift", "Running average of Delta^2 phi / QCRB under phase jitter");
    add_physics(*drift_cmd, drift.first);
    drift_cmd->add_option("--sigma-drift", drift.first.sigma_drift, "Jitter standard deviation (rad)")
        ->capture_default_str();
    drift_cmd->add_option("--m-max", drift.first.m_max, "Number of measurements")->capture_default_str();
    drift_cmd->add_option("--seed", drift.first.seed, "Random seed")->capture_default_str();
    add_io(*drift_cmd, drift.first, true);

    auto &thermal = commands["thermal"];
    thermal.second = cmd_thermal;
    auto *thermal_cmd = app.add_subcommand("thermal", "Phase sweep with thermal photons mixed into both arms");
    add_physics(*thermal_cmd, thermal.first);
    thermal_cmd->add_option("--n-th", thermal.first.n_th, "Total thermal photons over both arms")
        ->capture_default_str();
    thermal_cmd->add_option("--t-mix", thermal.first.t_mix, "Thermal beam-splitter mixing ratio")
        ->capture_default_str();
    add_phase_grid(*thermal_cmd, thermal.first);
    add_io(*thermal_cmd, thermal.first, true);

    auto &bounds = commands["bounds"];
    bounds.first.physics.loss = 0.0;
    bounds.second = cmd_bounds;
    auto *bounds_cmd = app.add_subcommand("bounds", "SNL, QCRB and closed-form optima");
    bounds_cmd->add_option("--alpha-sq", bounds.first.physics.alpha_sq, "Mean coherent photon number")
        ->capture_default_str();
    bounds_cmd->add_option("--r", bounds.first.physics.r, "Squeezing strength r")->capture_default_str();
    bounds_cmd->add_option("--loss", bounds.first.physics.loss, "Combined loss L in [0, 1)")->capture_default_str();
    add_io(*bounds_cmd, bounds.first, false);

    try {
        inject_config(app, args);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    const auto &[params, command] = commands.at(name);
    std::string csv;
    try {
        csv = command(params, err);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return write_output(csv, params.out, out, err);
}

}  // namespace mzi
