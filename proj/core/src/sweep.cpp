#include "swpclock/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "swpclock/potential.hpp"
#include "swpclock/quadrature.hpp"
#include "swpclock/warnings.hpp"

namespace swpclock {

namespace {

Potential make_potential(const SweepSpec& spec, double x) {
    switch (spec.kind) {
        case SweepKind::BarrierWidth:
            return Potential::rectangular(spec.barrierHeight, x);
        case SweepKind::DeltaStrength:
            return Potential::double_delta(x, spec.deltaSpacing);
        case SweepKind::DeltaSpacing:
            return Potential::double_delta(spec.deltaStrength, x);
    }
    throw std::logic_error("make_potential: unknown sweep kind");
}

const char* kind_name(SweepKind k) {
    switch (k) {
        case SweepKind::BarrierWidth: return "barrier-width";
        case SweepKind::DeltaStrength: return "delta-strength";
        case SweepKind::DeltaSpacing: return "delta-spacing";
    }
    return "?";
}

std::string format_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

std::vector<double> SweepAxis::values() const {
    validate();
    std::vector<double> xs(count);
    if (count == 1) {
        xs[0] = start;
        return xs;
    }
    if (logSpaced) {
        const double la = std::log(start), lb = std::log(stop);
        for (std::size_t i = 0; i < count; ++i)
            xs[i] = std::exp(la + (lb - la) * static_cast<double>(i) /
                                      static_cast<double>(count - 1));
    } else {
        for (std::size_t i = 0; i < count; ++i)
            xs[i] = start + (stop - start) * static_cast<double>(i) /
                                static_cast<double>(count - 1);
    }
    xs.back() = stop; // land exactly on the endpoint
    return xs;
}

void SweepAxis::validate() const {
    if (count < 1)
        throw std::invalid_argument("SweepAxis: count must be >= 1");
    if (count > 1 && !(stop > start))
        throw std::invalid_argument("SweepAxis: need stop > start");
    if (logSpaced && !(start > 0.0))
        throw std::invalid_argument("SweepAxis: log spacing needs start > 0");
}

std::string SweepSpec::describe() const {
    std::ostringstream out;
    out.precision(12);
    out << kind_name(kind) << " sweep, " << axis.count << " rows in [" << axis.start << ", "
        << axis.stop << "]" << (axis.logSpaced ? " (log)" : "");
    switch (kind) {
        case SweepKind::BarrierWidth: out << ", height=" << barrierHeight; break;
        case SweepKind::DeltaStrength: out << ", spacing=" << deltaSpacing; break;
        case SweepKind::DeltaSpacing: out << ", strength=" << deltaStrength; break;
    }
    out << "; packet k0=" << packet.k0 << " sigma=" << packet.sigma << " z0=" << packet.z0
        << "; relTol=" << quadrature.relTol << " window=" << quadrature.windowSigmas
        << " sigma_k";
    return out.str();
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.params.validate();
    spec.packet.validate();
    spec.quadrature.validate();
    const std::vector<double> xs = spec.axis.values();

    std::vector<SweepRow> rows(xs.size());
    const unsigned workers =
        std::max(1u, std::min<unsigned>(spec.workers, static_cast<unsigned>(xs.size())));

    auto compute_row = [&](std::size_t i) {
        const Potential pot = make_potential(spec, xs[i]);
        SweepRow row;
        row.x = xs[i];
        try {
            row.times = averaged_times(spec.packet, pot, spec.params, spec.quadrature);
            const double combined =
                row.times.probT * row.times.avgT + row.times.probR * row.times.avgR;
            row.decompositionResidual =
                std::abs(row.times.meanDwell - combined) /
                std::max(std::abs(row.times.meanDwell), 1e-300);
        } catch (const QuadratureError& e) {
            row.failed = true;
            row.error = e.what();
            row.times = AverageTimes{};
            std::ostringstream msg;
            msg << "sweep row x=" << row.x << " failed: " << e.what();
            emit_warning(msg.str());
        }
        rows[i] = row;
    };

    if (workers == 1) {
        for (std::size_t i = 0; i < xs.size(); ++i)
            compute_row(i);
        return rows;
    }

    // Row-level pool. Each row is computed by exactly one worker with a
    // fixed serial evaluation order inside, so values do not depend on the
    // schedule; warnings are collected per worker and re-emitted serially.
    std::atomic<std::size_t> next{0};
    std::vector<std::vector<std::string>> workerWarnings(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            WarningCollector collector;
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= xs.size())
                    break;
                compute_row(i);
            }
            workerWarnings[w] = collector.messages();
        });
    }
    for (auto& t : pool)
        t.join();
    for (const auto& ws : workerWarnings)
        for (const auto& msg : ws)
            emit_warning(msg);
    return rows;
}

void write_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    out << "# " << spec.describe() << "\n";
    out << "# units: hbar = " << format_g12(spec.params.hbar)
        << ", mass = " << format_g12(spec.params.mass)
        << "; times in natural units, x is a length"
        << (spec.kind == SweepKind::DeltaStrength ? " (strength)" : "") << "\n";
    out << "x,prob_T,prob_R,avg_t_T,avg_t_R,mean_dwell,free_time,excluded_mass,"
           "decomp_residual,err_avg_t_T,err_avg_t_R,err_mean_dwell,avg_T_valid,"
           "avg_R_valid,status\n";
    for (const auto& r : rows) {
        out << format_g12(r.x) << ',' << format_g12(r.times.probT) << ','
            << format_g12(r.times.probR) << ',' << format_g12(r.times.avgT) << ','
            << format_g12(r.times.avgR) << ',' << format_g12(r.times.meanDwell) << ','
            << format_g12(r.times.tFree) << ',' << format_g12(r.times.excludedMass) << ','
            << format_g12(r.decompositionResidual) << ',' << format_g12(r.times.errAvgT) << ','
            << format_g12(r.times.errAvgR) << ',' << format_g12(r.times.errMeanDwell) << ','
            << (r.times.avgTValid ? 1 : 0) << ',' << (r.times.avgRValid ? 1 : 0) << ','
            << (r.failed ? "failed" : "ok") << '\n';
    }
}

} // namespace swpclock
