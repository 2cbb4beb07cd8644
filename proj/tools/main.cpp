// swpclock: command-line front end for the barrier-clock library.
//
// Subcommands: stationary, average, sweep, spectrum, resonances, propagate.
// Every run echoes its fully-resolved parameters as '#' comment lines before
// any numbers, so output files and terminal captures are self-describing.
// All quantities are in the library's natural units (hbar = mass = 1).
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "swpclock/averaging.hpp"
#include "swpclock/clock_times.hpp"
#include "swpclock/packet.hpp"
#include "swpclock/params.hpp"
#include "swpclock/plot.hpp"
#include "swpclock/potential.hpp"
#include "swpclock/propagation.hpp"
#include "swpclock/resonance.hpp"
#include "swpclock/scattering.hpp"
#include "swpclock/sweep.hpp"

namespace {

using namespace swpclock;

enum class Command { Stationary, Average, Sweep, Spectrum, Resonances, Propagate };

/// Everything a run needs, filled by the command line / config file.
struct RunConfig {
    Command command = Command::Stationary;

    // Potential family ("rect" or "dd") and its parameters.
    std::string potential = "rect";
    double v0 = 0.5;
    double a = 10.0;
    double gamma = 16.0;
    double d = 5.0;

    // Single-wavenumber evaluation.
    double k = 0.0;

    // Gaussian packet.
    double k0 = 0.0;
    double sigma = 0.0;
    double z0 = 0.0;

    // Spectral quadrature.
    double relTol = 1e-9;
    double windowSigmas = 12.0;
    int maxDepth = 40;
    bool seedSplit = true;

    // Sweep axis.
    std::string kind; // width | strength | separation
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 60;
    bool logAxis = false;
    unsigned workers = 1;

    // Spectrum grid (0 = derive from the packet window).
    double kMin = 0.0;
    double kMax = 0.0;
    std::size_t points = 401;

    // Propagation.
    double zMin = 0.0;
    double zMax = 0.0;
    std::size_t gridPoints = 0;
    double tMax = 0.0;
    double dt = 0.0;
    double insideTol = 1e-3;
    double boundaryTol = 1e-10;
    std::vector<double> snapshotTimes;
    std::string snapshotOut;

    // Output paths ("" = stdout for tables, no plot).
    std::string out;
    std::string plot;
    bool plotLogY = false;

    std::string configFile;
    bool dumpConfig = false;
};

PhysicalParams natural_units() { return {}; }

Potential family_potential(const RunConfig& rc) {
    if (rc.potential == "rect")
        return Potential::rectangular(rc.v0, rc.a);
    return Potential::double_delta(rc.gamma, rc.d);
}

GaussianPacket packet_of(const RunConfig& rc) { return {rc.k0, rc.sigma, rc.z0}; }

QuadratureOptions quadrature_of(const RunConfig& rc) {
    QuadratureOptions opt;
    opt.relTol = rc.relTol;
    opt.windowSigmas = rc.windowSigmas;
    opt.maxDepth = rc.maxDepth;
    opt.resonanceSplit = rc.seedSplit;
    return opt;
}

// ---------------------------------------------------------------------------
// Option registration

void add_potential_options(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--potential", rc.potential, "potential family: rect or dd")
        ->required()
        ->check(CLI::IsMember({"rect", "dd"}));
    sub->add_option("--v0", rc.v0, "barrier height (rect)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sub->add_option("--a", rc.a, "barrier width (rect)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--gamma", rc.gamma, "delta strength (dd)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sub->add_option("--d", rc.d, "delta spacing (dd)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void add_packet_options(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--k0", rc.k0, "packet central wavenumber")
        ->required()
        ->check(CLI::PositiveNumber);
    sub->add_option("--sigma", rc.sigma, "packet position-space width")
        ->required()
        ->check(CLI::PositiveNumber);
    sub->add_option("--z0", rc.z0, "packet initial centre")->required();
}

void add_quadrature_options(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--rel_tol", rc.relTol, "spectral quadrature relative tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--window_sigmas", rc.windowSigmas,
                    "k-window half-width in units of sigma_k")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--max_depth", rc.maxDepth, "adaptive bisection depth limit")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--seed_split", rc.seedSplit,
                    "seed quadrature panels at resonances / thresholds (true/false)")
        ->capture_default_str();
}

void finish_subcommand(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--config", rc.configFile, "read options from a 'key = value' file")
        ->configurable(false);
    sub->add_flag("--dump-config", rc.dumpConfig,
                  "print the fully-resolved configuration and exit")
        ->configurable(false);
}

/// New subcommand with take-last duplicate handling, so config-file values
/// (injected ahead of the command line) are overridden by explicit flags.
CLI::App* new_subcommand(CLI::App& app, const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    return sub;
}

CLI::App* build_cli(CLI::App& app, RunConfig& rc,
                    std::vector<std::pair<Command, CLI::App*>>& table) {
    app.require_subcommand(1);
    app.set_version_flag("--version", "swpclock 1.0.0");

    CLI::App* stationary = new_subcommand(
        app, "stationary", "scattering amplitudes, dwell and clock times at one wavenumber");
    add_potential_options(stationary, rc);
    stationary->add_option("--k", rc.k, "wavenumber")->required()->check(CLI::PositiveNumber);
    finish_subcommand(stationary, rc);
    table.emplace_back(Command::Stationary, stationary);

    CLI::App* average = new_subcommand(
        app, "average", "post-selected packet-averaged times over the spectral window");
    add_potential_options(average, rc);
    add_packet_options(average, rc);
    add_quadrature_options(average, rc);
    finish_subcommand(average, rc);
    table.emplace_back(Command::Average, average);

    CLI::App* sweep =
        new_subcommand(app, "sweep", "averaged times along one potential parameter");
    sweep->add_option("--kind", rc.kind,
                      "swept parameter: width (rect, fixed --v0), strength (dd, fixed --d), "
                      "separation (dd, fixed --gamma)")
        ->required()
        ->check(CLI::IsMember({"width", "strength", "separation"}));
    sweep->add_option("--v0", rc.v0, "barrier height (kind=width)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sweep->add_option("--gamma", rc.gamma, "delta strength (kind=separation)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sweep->add_option("--d", rc.d, "delta spacing (kind=strength)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_packet_options(sweep, rc);
    sweep->add_option("--start", rc.start, "first axis value")->required();
    sweep->add_option("--stop", rc.stop, "last axis value")->required();
    sweep->add_option("--count", rc.count, "number of rows")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep->add_flag("--log", rc.logAxis, "log-spaced axis")->capture_default_str();
    sweep->add_option("--workers", rc.workers, "row-level worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_quadrature_options(sweep, rc);
    sweep->add_option("--out", rc.out, "CSV output path (default: stdout)");
    sweep->add_option("--plot", rc.plot, "SVG plot path");
    sweep->add_flag("--log_y", rc.plotLogY, "log-scale time axis in the plot")
        ->capture_default_str();
    finish_subcommand(sweep, rc);
    table.emplace_back(Command::Sweep, sweep);

    CLI::App* spectrum = new_subcommand(
        app, "spectrum", "normalised incident / transmitted / reflected spectral densities");
    add_potential_options(spectrum, rc);
    add_packet_options(spectrum, rc);
    add_quadrature_options(spectrum, rc);
    spectrum->add_option("--kmin", rc.kMin, "grid lower edge (0 = packet window)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    spectrum->add_option("--kmax", rc.kMax, "grid upper edge (0 = packet window)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    spectrum->add_option("--points", rc.points, "number of grid samples")
        ->check(CLI::Range(static_cast<std::size_t>(2), static_cast<std::size_t>(2000000)))
        ->capture_default_str();
    spectrum->add_option("--out", rc.out, "CSV output path (default: stdout)");
    spectrum->add_option("--plot", rc.plot, "SVG plot path");
    finish_subcommand(spectrum, rc);
    table.emplace_back(Command::Spectrum, spectrum);

    CLI::App* resonances = new_subcommand(
        app, "resonances", "double-delta transmission resonances in a wavenumber range");
    resonances->add_option("--gamma", rc.gamma, "delta strength")
        ->required()
        ->check(CLI::NonNegativeNumber);
    resonances->add_option("--d", rc.d, "delta spacing")
        ->required()
        ->check(CLI::PositiveNumber);
    resonances->add_option("--kmin", rc.kMin, "range lower edge")
        ->required()
        ->check(CLI::NonNegativeNumber);
    resonances->add_option("--kmax", rc.kMax, "range upper edge")
        ->required()
        ->check(CLI::PositiveNumber);
    resonances->add_option("--out", rc.out, "CSV output path (default: stdout table)");
    finish_subcommand(resonances, rc);
    table.emplace_back(Command::Resonances, resonances);

    CLI::App* propagate = new_subcommand(
        app, "propagate", "real-time Crank-Nicolson evolution on a hard-wall grid");
    add_potential_options(propagate, rc);
    add_packet_options(propagate, rc);
    propagate->add_option("--zmin", rc.zMin, "grid left edge")->required();
    propagate->add_option("--zmax", rc.zMax, "grid right edge")->required();
    propagate->add_option("--points", rc.gridPoints, "grid node count")->required();
    propagate->add_option("--tmax", rc.tMax, "evolution time")
        ->required()
        ->check(CLI::PositiveNumber);
    propagate->add_option("--dt", rc.dt, "time step (0 = stability default)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    propagate->add_option("--inside_tol", rc.insideTol,
                          "max final probability inside the clock window")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    propagate->add_option("--boundary_tol", rc.boundaryTol,
                          "max boundary-cell density before abort")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    propagate->add_option("--snapshot_times", rc.snapshotTimes,
                          "times at which to write |psi|^2 snapshots")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    propagate->add_option("--snapshot_out", rc.snapshotOut,
                          "path prefix for snapshot CSV files");
    finish_subcommand(propagate, rc);
    table.emplace_back(Command::Propagate, propagate);

    return &app;
}

/// Conditional requirements that depend on other option values. Throws CLI
/// errors so they surface exactly like built-in usage errors (exit code 2).
void validate_config(const RunConfig& rc, const CLI::App* sub) {
    auto need = [&](const char* flag, const char* why) {
        if (sub->count(flag) == 0)
            throw CLI::RequiredError(std::string(flag) + " (" + why + ")");
    };
    switch (rc.command) {
        case Command::Stationary:
        case Command::Average:
        case Command::Spectrum:
        case Command::Propagate:
            if (rc.potential == "rect") {
                need("--v0", "needed for --potential rect");
                need("--a", "needed for --potential rect");
            } else {
                need("--gamma", "needed for --potential dd");
                need("--d", "needed for --potential dd");
            }
            break;
        case Command::Sweep:
            if (rc.kind == "width")
                need("--v0", "needed for --kind width");
            else if (rc.kind == "strength")
                need("--d", "needed for --kind strength");
            else
                need("--gamma", "needed for --kind separation");
            break;
        case Command::Resonances:
            break;
    }
    if (rc.command == Command::Propagate && !rc.snapshotTimes.empty() &&
        rc.snapshotOut.empty())
        throw CLI::RequiredError("--snapshot_out (needed with --snapshot_times)");
    if (rc.command == Command::Spectrum && (rc.kMin > 0.0 || rc.kMax > 0.0) &&
        !(rc.kMax > rc.kMin))
        throw CLI::ValidationError("--kmax", "must exceed --kmin");
    if (rc.command == Command::Resonances && !(rc.kMax > rc.kMin))
        throw CLI::ValidationError("--kmax", "must exceed --kmin");
}

// ---------------------------------------------------------------------------
// Config files: plain 'key = value' lines, '#' starts a comment, keys are the
// long option names without the leading dashes. Values are injected ahead of
// the command-line tokens, so explicit flags always win.

struct ConfigEntry {
    std::string key;
    std::string value;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<ConfigEntry> read_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw CLI::FileError::Missing(path);
    std::vector<ConfigEntry> entries;
    std::string raw;
    std::size_t lineNo = 0;
    while (std::getline(f, raw)) {
        ++lineNo;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ConfigError(path + ":" + std::to_string(lineNo) +
                                   ": expected 'key = value', got: " + line);
        ConfigEntry e;
        e.key = trim(line.substr(0, eq));
        e.value = trim(line.substr(eq + 1));
        if (e.value.size() >= 2 &&
            ((e.value.front() == '"' && e.value.back() == '"') ||
             (e.value.front() == '\'' && e.value.back() == '\'')))
            e.value = e.value.substr(1, e.value.size() - 2);
        if (e.key.empty())
            throw CLI::ConfigError(path + ":" + std::to_string(lineNo) + ": empty key");
        entries.push_back(std::move(e));
    }
    return entries;
}

/// Locate a `--config <file>` / `--config=<file>` among the raw tokens.
std::string config_path_of(const std::vector<std::string>& tokens) {
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (tokens[i] == "--config" && i + 1 < tokens.size())
            return tokens[i + 1];
        if (tokens[i].rfind("--config=", 0) == 0)
            return tokens[i].substr(9);
    }
    return {};
}

/// Turn config entries into command-line tokens for `sub`, validating keys.
std::vector<std::string> tokens_from_config(const CLI::App* sub, const std::string& path,
                                            const std::vector<ConfigEntry>& entries) {
    std::vector<std::string> out;
    for (const auto& e : entries) {
        const CLI::Option* opt = sub->get_option_no_throw("--" + e.key);
        if (opt == nullptr || !opt->get_configurable())
            throw CLI::ConfigError(path + ": unknown configuration key '" + e.key + "' for '" +
                                   sub->get_name() + "'");
        if (opt->get_expected_max() > 1) {
            // Vector option: accept either '0 40 80' or the dumped '[0, 40, 80]'.
            std::string cleaned = e.value;
            for (char& c : cleaned)
                if (c == '[' || c == ']' || c == ',')
                    c = ' ';
            out.push_back("--" + e.key);
            std::istringstream vals(cleaned);
            std::string v;
            while (vals >> v)
                out.push_back(v);
        } else {
            out.push_back("--" + e.key + "=" + e.value);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Output helpers

/// Reformat CLI11's "key=value" config lines as "key = value".
std::string spaced_config(const std::string& cfg) {
    std::istringstream in(cfg);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        const auto pos = line.find('=');
        if (!line.empty() && line.front() != '#' && pos != std::string::npos)
            out << line.substr(0, pos) << " = " << line.substr(pos + 1) << '\n';
        else
            out << line << '\n';
    }
    return out.str();
}

/// '#'-prefixed parameter echo: subcommand name plus every resolved option.
void print_provenance(std::ostream& os, const CLI::App* sub) {
    os << "# swpclock " << sub->get_name() << '\n';
    std::istringstream in(spaced_config(sub->config_to_str(true, false)));
    std::string line;
    while (std::getline(in, line))
        if (!line.empty())
            os << "# " << line << '\n';
    os << "# hbar = 1, mass = 1 (natural units)\n";
}

void kv(std::ostream& os, const char* name, double value) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    os << name << " = " << buf << '\n';
}

void kv(std::ostream& os, const char* name, bool value) {
    os << name << " = " << (value ? 1 : 0) << '\n';
}

void kv(std::ostream& os, const char* name, std::size_t value) {
    os << name << " = " << value << '\n';
}

std::string g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// Open an output file or fail loudly; never writes anywhere unnamed.
std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open output file: " + path);
    return f;
}

void finish_out(std::ofstream& f, const std::string& path) {
    f.flush();
    if (!f.good())
        throw std::runtime_error("write failed: " + path);
}

void write_plot_file(const std::string& path, const std::vector<PlotSeries>& series,
                     const PlotStyle& style) {
    std::ofstream f = open_out(path);
    write_svg(f, series, style);
    finish_out(f, path);
}

// ---------------------------------------------------------------------------
// Subcommand bodies

int run_stationary(const RunConfig& rc, const CLI::App* sub) {
    const PhysicalParams pp = natural_units();
    const Potential pot = family_potential(rc);
    const ScatteringResult sr = amplitudes(pot, pp, rc.k);
    const ClockTimes ct = clock_times(pot, pp, rc.k);

    print_provenance(std::cout, sub);
    kv(std::cout, "k", rc.k);
    kv(std::cout, "prob_T", sr.probT);
    kv(std::cout, "prob_R", sr.probR);
    kv(std::cout, "phase_T", sr.phiT);
    kv(std::cout, "phase_R", sr.phiR);
    kv(std::cout, "log_mag_T", sr.logMagT);
    kv(std::cout, "dwell", ct.dwell);
    kv(std::cout, "t_T", ct.tT);
    kv(std::cout, "t_R", ct.tR);
    kv(std::cout, "t_R_valid", ct.tRValid);
    kv(std::cout, "err_t_T", ct.errT);
    kv(std::cout, "err_t_R", ct.errR);
    kv(std::cout, "fd_step", ct.step);
    kv(std::cout, "t_free", free_traversal_time(pot, pp, rc.k));
    kv(std::cout, "relation_residual", weighted_relation_residual(pot, pp, rc.k));
    return 0;
}

int run_average(const RunConfig& rc, const CLI::App* sub) {
    const PhysicalParams pp = natural_units();
    const Potential pot = family_potential(rc);
    const AverageTimes at = averaged_times(packet_of(rc), pot, pp, quadrature_of(rc));

    print_provenance(std::cout, sub);
    kv(std::cout, "prob_T", at.probT);
    kv(std::cout, "prob_R", at.probR);
    kv(std::cout, "avg_t_T", at.avgT);
    kv(std::cout, "avg_t_R", at.avgR);
    kv(std::cout, "mean_dwell", at.meanDwell);
    kv(std::cout, "t_free", at.tFree);
    kv(std::cout, "avg_T_valid", at.avgTValid);
    kv(std::cout, "avg_R_valid", at.avgRValid);
    kv(std::cout, "excluded_mass", at.excludedMass);
    kv(std::cout, "k_lo", at.kLo);
    kv(std::cout, "k_hi", at.kHi);
    kv(std::cout, "err_avg_t_T", at.errAvgT);
    kv(std::cout, "err_avg_t_R", at.errAvgR);
    kv(std::cout, "err_mean_dwell", at.errMeanDwell);
    kv(std::cout, "evaluations", at.evaluations);
    const double combined = at.probT * at.avgT + at.probR * at.avgR;
    kv(std::cout, "decomp_residual",
       std::abs(at.meanDwell - combined) / std::max(std::abs(at.meanDwell), 1e-300));
    return 0;
}

int run_sweep_cmd(const RunConfig& rc, const CLI::App* sub) {
    SweepSpec spec;
    spec.kind = rc.kind == "width"      ? SweepKind::BarrierWidth
                : rc.kind == "strength" ? SweepKind::DeltaStrength
                                        : SweepKind::DeltaSpacing;
    spec.packet = packet_of(rc);
    spec.barrierHeight = rc.v0;
    spec.deltaStrength = rc.gamma;
    spec.deltaSpacing = rc.d;
    spec.axis = {rc.start, rc.stop, rc.count, rc.logAxis};
    spec.quadrature = quadrature_of(rc);
    spec.workers = rc.workers;

    const std::vector<SweepRow> rows = run_sweep(spec);

    if (rc.out.empty()) {
        print_provenance(std::cout, sub);
        write_csv(std::cout, spec, rows);
    } else {
        // The file carries only the sweep writer's output (its '#' description
        // already names every data-relevant parameter), so identical sweeps
        // give byte-identical files regardless of worker count.
        std::ofstream f = open_out(rc.out);
        write_csv(f, spec, rows);
        finish_out(f, rc.out);
        print_provenance(std::cout, sub);
        std::cout << "wrote " << rows.size() << " rows to " << rc.out << '\n';
    }

    std::size_t failed = 0;
    for (const auto& r : rows)
        failed += r.failed ? 1 : 0;
    if (failed > 0)
        std::cout << "rows_failed = " << failed << '\n';

    if (!rc.plot.empty()) {
        std::vector<PlotSeries> series(4);
        series[0].label = "avg_t_T";
        series[1].label = "avg_t_R";
        series[2].label = "mean_dwell";
        series[3].label = "free_time";
        for (const auto& r : rows) {
            if (r.failed)
                continue;
            if (r.times.avgTValid)
                series[0].points.emplace_back(r.x, r.times.avgT);
            if (r.times.avgRValid)
                series[1].points.emplace_back(r.x, r.times.avgR);
            series[2].points.emplace_back(r.x, r.times.meanDwell);
            series[3].points.emplace_back(r.x, r.times.tFree);
        }
        PlotStyle style;
        style.title = spec.describe();
        style.xLabel = rc.kind;
        style.yLabel = "time";
        style.logX = rc.logAxis;
        style.logY = rc.plotLogY;
        write_plot_file(rc.plot, series, style);
        std::cout << "wrote plot to " << rc.plot << '\n';
    }
    return 0;
}

int run_spectrum(const RunConfig& rc, const CLI::App* sub) {
    const PhysicalParams pp = natural_units();
    const Potential pot = family_potential(rc);
    const GaussianPacket packet = packet_of(rc);
    const QuadratureOptions opt = quadrature_of(rc);

    double lo = rc.kMin, hi = rc.kMax;
    if (!(hi > lo) || hi <= 0.0) {
        lo = std::max(1e-6, packet.k0 - opt.windowSigmas * packet.sigma_k());
        hi = packet.k0 + opt.windowSigmas * packet.sigma_k();
    }
    std::vector<double> grid(rc.points);
    for (std::size_t i = 0; i < rc.points; ++i)
        grid[i] = lo + (hi - lo) * static_cast<double>(i) /
                           static_cast<double>(rc.points - 1);

    const auto rows = spectral_densities(packet, pot, pp, grid, opt);

    auto emit = [&](std::ostream& os) {
        print_provenance(os, sub);
        os << "k,incident,transmitted,reflected\n";
        for (const auto& r : rows)
            os << g12(r.k) << ',' << g12(r.incident) << ',' << g12(r.transmitted) << ','
               << g12(r.reflected) << '\n';
    };
    if (rc.out.empty()) {
        emit(std::cout);
    } else {
        std::ofstream f = open_out(rc.out);
        emit(f);
        finish_out(f, rc.out);
        print_provenance(std::cout, sub);
        std::cout << "wrote " << rows.size() << " rows to " << rc.out << '\n';
    }

    if (!rc.plot.empty()) {
        std::vector<PlotSeries> series(3);
        series[0].label = "incident";
        series[1].label = "transmitted";
        series[2].label = "reflected";
        for (const auto& r : rows) {
            series[0].points.emplace_back(r.k, r.incident);
            series[1].points.emplace_back(r.k, r.transmitted);
            series[2].points.emplace_back(r.k, r.reflected);
        }
        PlotStyle style;
        style.title = "normalised spectral densities";
        style.xLabel = "k";
        style.yLabel = "density";
        write_plot_file(rc.plot, series, style);
        std::cout << "wrote plot to " << rc.plot << '\n';
    }
    return 0;
}

int run_resonances(const RunConfig& rc, const CLI::App* sub) {
    const PhysicalParams pp = natural_units();
    const auto res = find_resonances(rc.gamma, rc.d, pp, rc.kMin, rc.kMax);

    print_provenance(std::cout, sub);
    std::printf("%4s  %-22s %-22s %-22s\n", "n", "k_n", "tau_D_n", "width");
    for (const auto& r : res)
        std::printf("%4d  %-22.17g %-22.17g %-22.17g\n", r.index, r.k, r.dwell, r.width);
    std::printf("count = %zu\n", res.size());

    if (!rc.out.empty()) {
        std::ofstream f = open_out(rc.out);
        print_provenance(f, sub);
        f << "n,k_n,tau_D_n,width\n";
        for (const auto& r : res)
            f << r.index << ',' << g12(r.k) << ',' << g12(r.dwell) << ',' << g12(r.width)
              << '\n';
        finish_out(f, rc.out);
        std::cout << "wrote " << res.size() << " rows to " << rc.out << '\n';
    }
    return 0;
}

void print_report(std::ostream& os, const PropagationReport& rep) {
    kv(os, "prob_T", rep.probT);
    kv(os, "prob_R", rep.probR);
    kv(os, "prob_inside", rep.probInside);
    kv(os, "norm_drift", rep.normDrift);
    kv(os, "boundary_max", rep.boundaryMax);
    kv(os, "t_max", rep.tMax);
    kv(os, "dt", rep.dt);
    kv(os, "steps", rep.steps);
}

int run_propagate(const RunConfig& rc, const CLI::App* sub) {
    const PhysicalParams pp = natural_units();
    const Potential pot = family_potential(rc);
    const Grid1D grid{rc.zMin, rc.zMax, rc.gridPoints};

    EvolveOptions evo;
    evo.tMax = rc.tMax;
    evo.dt = rc.dt;
    evo.snapshotTimes = rc.snapshotTimes;
    evo.insideTolerance = rc.insideTol;
    evo.boundaryTolerance = rc.boundaryTol;

    std::size_t snapIndex = 0;
    if (!rc.snapshotOut.empty()) {
        evo.snapshotSink = [&](const PacketState& state) {
            const std::string path = rc.snapshotOut + std::to_string(snapIndex++) + ".csv";
            std::ofstream f = open_out(path);
            f << "# |psi|^2 snapshot at t = " << g12(state.t) << '\n';
            f << "z,density\n";
            for (const auto& [z, rho] : snapshot_density(state, grid))
                f << g12(z) << ',' << g12(rho) << '\n';
            finish_out(f, path);
            std::cout << "wrote snapshot t=" << g12(state.t) << " to " << path << '\n';
        };
    }

    print_provenance(std::cout, sub);
    try {
        const PropagationReport rep = evolve(packet_of(rc), pot, pp, grid, evo);
        print_report(std::cout, rep);
    } catch (const AsymptoticError& e) {
        print_report(std::cout, e.report);
        std::cerr << "asymptotic condition unmet: " << e.what() << '\n';
        return 1;
    } catch (const BoundaryError& e) {
        print_report(std::cout, e.report);
        std::cerr << "boundary contamination: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

int run(const RunConfig& rc, const CLI::App* sub) {
    switch (rc.command) {
        case Command::Stationary: return run_stationary(rc, sub);
        case Command::Average: return run_average(rc, sub);
        case Command::Sweep: return run_sweep_cmd(rc, sub);
        case Command::Spectrum: return run_spectrum(rc, sub);
        case Command::Resonances: return run_resonances(rc, sub);
        case Command::Propagate: return run_propagate(rc, sub);
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"swpclock: quantum-clock tunnelling times for 1D barriers "
                 "(natural units, hbar = mass = 1)",
                 "swpclock"};
    RunConfig rc;
    std::vector<std::pair<Command, CLI::App*>> table;
    build_cli(app, rc, table);

    const CLI::App* active = nullptr;
    try {
        std::vector<std::string> tokens(argv + 1, argv + argc);

        // Config-file values become tokens placed right after the subcommand
        // name, ahead of the explicit flags, which therefore override them.
        if (!tokens.empty() && tokens.front().rfind("-", 0) != 0) {
            const std::string cfgPath = config_path_of(tokens);
            if (!cfgPath.empty()) {
                for (const auto& [cmd, sub] : table) {
                    if (sub->get_name() != tokens.front())
                        continue;
                    const auto injected =
                        tokens_from_config(sub, cfgPath, read_config_file(cfgPath));
                    tokens.insert(tokens.begin() + 1, injected.begin(), injected.end());
                    break;
                }
            }
        }

        std::reverse(tokens.begin(), tokens.end());
        app.parse(tokens);
        for (const auto& [cmd, sub] : table)
            if (sub->parsed()) {
                rc.command = cmd;
                active = sub;
            }
        if (active == nullptr)
            throw CLI::RequiredError("a subcommand");
        validate_config(rc, active);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const CLI::Error& e) {
        std::cerr << "swpclock: " << e.what() << '\n';
        return 2;
    }

    if (rc.dumpConfig) {
        std::cout << spaced_config(active->config_to_str(true, false));
        return 0;
    }

    try {
        return run(rc, active);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
