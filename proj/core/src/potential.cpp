#include "swpclock/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace swpclock {

Potential Potential::rectangular(double height, double width) {
    if (!(height >= 0.0) || !std::isfinite(height))
        throw std::invalid_argument("rectangular: height must be finite and >= 0");
    if (!(width > 0.0) || !std::isfinite(width))
        throw std::invalid_argument("rectangular: width must be finite and > 0");
    Potential p;
    p.kind_ = PotentialKind::Rectangular;
    p.p1_ = height;
    p.p2_ = width;
    if (height != 0.0)
        p.segments_ = {{0.0, width, height}};
    p.window_ = {0.0, width};
    return p;
}

Potential Potential::double_delta(double strength, double spacing) {
    if (!(strength >= 0.0) || !std::isfinite(strength))
        throw std::invalid_argument("double_delta: strength must be finite and >= 0");
    if (!(spacing > 0.0) || !std::isfinite(spacing))
        throw std::invalid_argument("double_delta: spacing must be finite and > 0");
    Potential p;
    p.kind_ = PotentialKind::DoubleDelta;
    p.p1_ = strength;
    p.p2_ = spacing;
    if (strength != 0.0)
        p.deltas_ = {{0.0, strength}, {spacing, strength}};
    p.window_ = {0.0, spacing};
    return p;
}

Potential Potential::piecewise(std::vector<Segment> segments,
                               std::vector<DeltaSpike> deltas,
                               ClockWindow window) {
    Potential p;
    p.kind_ = PotentialKind::Piecewise;
    p.segments_ = std::move(segments);
    p.deltas_ = std::move(deltas);
    std::sort(p.segments_.begin(), p.segments_.end(),
              [](const Segment& a, const Segment& b) { return a.begin < b.begin; });
    std::sort(p.deltas_.begin(), p.deltas_.end(),
              [](const DeltaSpike& a, const DeltaSpike& b) { return a.position < b.position; });
    if (window.left == window.right) {
        // Default window: hull of the structure.
        double lo = 0.0, hi = 0.0;
        bool any = false;
        for (const auto& s : p.segments_) {
            lo = any ? std::min(lo, s.begin) : s.begin;
            hi = any ? std::max(hi, s.end) : s.end;
            any = true;
        }
        for (const auto& d : p.deltas_) {
            lo = any ? std::min(lo, d.position) : d.position;
            hi = any ? std::max(hi, d.position) : d.position;
            any = true;
        }
        if (!any || lo == hi)
            throw std::invalid_argument("piecewise: empty potential needs an explicit window");
        window = {lo, hi};
    }
    p.window_ = window;
    p.validate();
    return p;
}

void Potential::validate() const {
    for (const auto& s : segments_) {
        if (!std::isfinite(s.begin) || !std::isfinite(s.end) || !std::isfinite(s.height))
            throw std::invalid_argument("piecewise: segment values must be finite");
        if (!(s.end > s.begin))
            throw std::invalid_argument("piecewise: segment must have positive width");
    }
    for (std::size_t i = 1; i < segments_.size(); ++i) {
        if (segments_[i].begin < segments_[i - 1].end - 1e-15)
            throw std::invalid_argument("piecewise: segments must not overlap");
    }
    for (const auto& d : deltas_) {
        if (!std::isfinite(d.position) || !std::isfinite(d.strength))
            throw std::invalid_argument("piecewise: delta values must be finite");
    }
    if (!(window_.right > window_.left))
        throw std::invalid_argument("piecewise: window must have positive length");
}

Potential Potential::with_window(ClockWindow window) const {
    if (!(window.right > window.left))
        throw std::invalid_argument("with_window: window must have positive length");
    Potential p = *this;
    p.window_ = window;
    return p;
}

double Potential::barrier_height() const {
    if (kind_ != PotentialKind::Rectangular)
        throw std::logic_error("barrier_height: not a rectangular potential");
    return p1_;
}

double Potential::barrier_width() const {
    if (kind_ != PotentialKind::Rectangular)
        throw std::logic_error("barrier_width: not a rectangular potential");
    return p2_;
}

double Potential::delta_strength() const {
    if (kind_ != PotentialKind::DoubleDelta)
        throw std::logic_error("delta_strength: not a double-delta potential");
    return p1_;
}

double Potential::delta_spacing() const {
    if (kind_ != PotentialKind::DoubleDelta)
        throw std::logic_error("delta_spacing: not a double-delta potential");
    return p2_;
}

double Potential::value(double z) const {
    double v = 0.0;
    for (const auto& s : segments_)
        if (z >= s.begin && z < s.end)
            v += s.height;
    return v;
}

double Potential::support_left() const {
    double lo = window_.left;
    for (const auto& s : segments_) lo = std::min(lo, s.begin);
    for (const auto& d : deltas_) lo = std::min(lo, d.position);
    return lo;
}

double Potential::support_right() const {
    double hi = window_.right;
    for (const auto& s : segments_) hi = std::max(hi, s.end);
    for (const auto& d : deltas_) hi = std::max(hi, d.position);
    return hi;
}

std::string Potential::describe() const {
    std::ostringstream out;
    out.precision(12);
    switch (kind_) {
        case PotentialKind::Rectangular:
            out << "rectangular barrier height=" << p1_ << " width=" << p2_;
            break;
        case PotentialKind::DoubleDelta:
            out << "double delta strength=" << p1_ << " spacing=" << p2_;
            break;
        case PotentialKind::Piecewise:
            out << "piecewise potential segments=" << segments_.size()
                << " deltas=" << deltas_.size();
            break;
    }
    out << " window=[" << window_.left << "," << window_.right << "]";
    return out.str();
}

} // namespace swpclock
