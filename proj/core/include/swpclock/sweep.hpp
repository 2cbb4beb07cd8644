#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "swpclock/averaging.hpp"
#include "swpclock/packet.hpp"
#include "swpclock/params.hpp"

namespace swpclock {

/// What the sweep varies. BarrierWidth sweeps a rectangular barrier's width
/// at fixed height; DeltaStrength / DeltaSpacing sweep one double-delta
/// parameter with the other fixed.
enum class SweepKind { BarrierWidth, DeltaStrength, DeltaSpacing };

struct SweepAxis {
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 0;
    bool logSpaced = false;

    std::vector<double> values() const;
    void validate() const;
};

struct SweepSpec {
    SweepKind kind = SweepKind::BarrierWidth;
    GaussianPacket packet;
    PhysicalParams params;
    double barrierHeight = 0.0; ///< fixed height (BarrierWidth)
    double deltaStrength = 0.0; ///< fixed strength (DeltaSpacing)
    double deltaSpacing = 0.0;  ///< fixed spacing (DeltaStrength)
    SweepAxis axis;
    QuadratureOptions quadrature;
    unsigned workers = 1; ///< row-level parallelism; results identical for any value

    std::string describe() const;
};

struct SweepRow {
    double x = 0.0;
    AverageTimes times;
    /// |meanDwell - (probT avgT + probR avgR)| / meanDwell: a live
    /// consistency probe of two independent computation routes.
    double decompositionResidual = 0.0;
    /// A quadrature failure on one row is recorded here (and as a warning)
    /// instead of aborting the whole sweep; failed rows carry zeroed times.
    bool failed = false;
    std::string error;
};

/// Run the sweep. Rows are independent; with workers > 1 they are computed
/// on a thread pool but every row's value is identical to the serial result
/// and the returned order is always the axis order.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Deterministic CSV: '#' description lines, a header row, then one line per
/// row with 12-significant-digit values and LF line endings. Byte-identical
/// across runs and worker counts.
void write_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);

} // namespace swpclock
