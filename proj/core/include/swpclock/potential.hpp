#pragma once

#include <string>
#include <vector>

namespace swpclock {

/// Constant-height segment [begin, end) of a piecewise potential.
struct Segment {
    double begin = 0.0;
    double end = 0.0;
    double height = 0.0;
    double width() const { return end - begin; }
};

/// Dirac delta term strength * delta(z - position).
struct DeltaSpike {
    double position = 0.0;
    double strength = 0.0;
};

/// Region over which the clock couples to the particle (and over which dwell
/// times are defined). The clock perturbation adds a constant to the
/// potential exactly on [left, right].
struct ClockWindow {
    double left = 0.0;
    double right = 0.0;
    double length() const { return right - left; }
};

enum class PotentialKind { Rectangular, DoubleDelta, Piecewise };

/// One-dimensional static potential of compact support: a list of constant
/// segments plus a list of delta spikes, with a distinguished clock window.
/// The two canonical families used throughout carry their defining parameters
/// so that closed-form expressions (dwell times, resonances) can dispatch on
/// them; arbitrary shapes go through the Piecewise kind.
class Potential {
  public:
    /// Barrier of height `height` (>= 0) on [0, width]; window [0, width].
    static Potential rectangular(double height, double width);

    /// strength * [delta(z) + delta(z - spacing)]; window [0, spacing].
    static Potential double_delta(double strength, double spacing);

    /// General shape. Segments must be sorted and non-overlapping (touching
    /// is fine); window defaults to the support hull when left == right.
    static Potential piecewise(std::vector<Segment> segments,
                               std::vector<DeltaSpike> deltas,
                               ClockWindow window = {});

    PotentialKind kind() const { return kind_; }
    const std::vector<Segment>& segments() const { return segments_; }
    const std::vector<DeltaSpike>& deltas() const { return deltas_; }
    const ClockWindow& window() const { return window_; }

    /// Copy with a different clock window.
    Potential with_window(ClockWindow window) const;

    /// Canonical-family accessors; throw std::logic_error on the wrong kind.
    double barrier_height() const;
    double barrier_width() const;
    double delta_strength() const;
    double delta_spacing() const;

    /// Segment part of V(z) (delta spikes excluded).
    double value(double z) const;

    /// Hull of segments, spikes and window.
    double support_left() const;
    double support_right() const;

    std::string describe() const;

  private:
    Potential() = default;
    void validate() const;

    PotentialKind kind_ = PotentialKind::Piecewise;
    std::vector<Segment> segments_;
    std::vector<DeltaSpike> deltas_;
    ClockWindow window_;
    double p1_ = 0.0; // height / strength
    double p2_ = 0.0; // width / spacing
};

} // namespace swpclock
