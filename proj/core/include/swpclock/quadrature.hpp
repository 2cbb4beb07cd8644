#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace swpclock {

/// Thrown when the adaptive scheme cannot reach the requested tolerance
/// within its depth / evaluation budget.
class QuadratureError : public std::runtime_error {
  public:
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

template <std::size_t N>
struct QuadratureOutcome {
    std::array<double, N> value{};
    std::array<double, N> errorEstimate{};
    std::size_t evaluations = 0;
    std::size_t panels = 0;
};

namespace gk_detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (QUADPACK dqk15 constants).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N>
struct Panel {
    double a = 0.0, b = 0.0;
    int depth = 0;
    /// Consecutive ancestor splits that failed to reduce the error estimate:
    /// the signature of a roundoff/noise-dominated region, where the
    /// Gauss-Kronrod difference is a fixed amplitude times the width and
    /// bisection cannot make the summed estimate shrink.
    int stagnation = 0;
    std::array<double, N> value{};
    std::array<double, N> error{};
};

template <std::size_t N, typename Fn>
Panel<N> evaluate_panel(const Fn& fn, double a, double b, int depth, std::size_t& evals) {
    Panel<N> p;
    p.a = a;
    p.b = b;
    p.depth = depth;
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    std::array<double, N> kronrod{};
    std::array<double, N> gauss{};

    const std::array<double, N> fc = fn(c);
    ++evals;
    for (std::size_t j = 0; j < N; ++j) {
        kronrod[j] = kWgk[7] * fc[j];
        gauss[j] = kWg[3] * fc[j];
    }
    for (std::size_t i = 0; i < 7; ++i) {
        const std::array<double, N> lo = fn(c - h * kXgk[i]);
        const std::array<double, N> hi = fn(c + h * kXgk[i]);
        evals += 2;
        for (std::size_t j = 0; j < N; ++j) {
            const double sum = lo[j] + hi[j];
            kronrod[j] += kWgk[i] * sum;
            if (i % 2 == 1) // Kronrod nodes 1,3,5 are the Gauss-7 nodes
                gauss[j] += kWg[i / 2] * sum;
        }
    }
    for (std::size_t j = 0; j < N; ++j) {
        p.value[j] = kronrod[j] * h;
        p.error[j] = std::abs((kronrod[j] - gauss[j]) * h);
    }
    return p;
}

} // namespace gk_detail

/// Adaptive vector-valued Gauss-Kronrod 7-15 integration of fn over [a, b].
/// All N components share the evaluation points; a panel is bisected until
/// every component's accumulated error estimate is below relTol relative to
/// the magnitude of its own integral. Panel selection and final summation
/// order are fully deterministic (worst normalised error first — scores taken
/// against the running totals when a panel is enqueued — with ties by left
/// edge; the final sum runs in left-to-right panel order with compensated
/// accumulation), so results are bitwise reproducible. The refinement loop is
/// O(P log P) in the panel count: running totals are updated incrementally
/// (and recomputed exactly every 1024 splits to shed rounding drift) and the
/// worst panel is kept in a lazy-deletion priority queue.
///
/// Roundoff handling: on a noise-dominated panel the Kronrod-Gauss difference
/// is a fixed amplitude times the panel width, so bisection never reduces the
/// summed estimate. Deep panels (depth >= 16) whose lineage shows three
/// consecutive non-improving splits are frozen: they stop being refined,
/// their error stays in the *returned* errorEstimate (which may therefore
/// exceed relTol times the value — callers that care must check), but no
/// longer blocks termination. If the frozen error on any component grows past
/// min(1e3 * relTol, 0.3) of that component's integral the tolerance request
/// is hopeless and a QuadratureError is thrown instead of returning a value
/// dominated by noise. Structure that genuinely needs more resolution still
/// exhausts maxDepth / the panel budget with a QuadratureError, as before.
///
/// `seeds` lists interior points forced to be panel boundaries from the
/// start (thresholds, resonance cores) so narrow features cannot be missed.
template <std::size_t N, typename Fn>
QuadratureOutcome<N> adaptive_gauss_kronrod(const Fn& fn, double a, double b, double relTol,
                                            int maxDepth, std::vector<double> seeds = {}) {
    if (!(b > a))
        throw std::invalid_argument("adaptive_gauss_kronrod: need b > a");
    if (!(relTol > 0.0))
        throw std::invalid_argument("adaptive_gauss_kronrod: relTol must be positive");

    using gk_detail::Panel;
    std::size_t evals = 0;

    seeds.push_back(a);
    seeds.push_back(b);
    std::sort(seeds.begin(), seeds.end());
    std::vector<double> edges;
    for (double s : seeds) {
        if (s < a || s > b)
            continue;
        if (edges.empty() || s - edges.back() > 1e-14 * std::max(1.0, std::abs(s)))
            edges.push_back(s);
    }
    if (edges.size() < 2)
        edges = {a, b};

    // Panels are append-only; a split marks the parent dead and appends the
    // two children, so priority-queue entries can be dropped lazily.
    std::vector<Panel<N>> panels;
    std::vector<char> dead;
    panels.reserve(512);
    dead.reserve(512);
    std::array<double, N> total{};
    std::array<double, N> err{};       // over all alive panels
    std::array<double, N> errFrozen{}; // subset: noise-frozen panels

    constexpr int kStagnationMinDepth = 16;
    constexpr int kStagnationFreeze = 3;
    auto frozen = [&](const Panel<N>& p) { return p.stagnation >= kStagnationFreeze; };

    struct Entry {
        double score = 0.0;
        double a = 0.0;
        std::size_t idx = 0;
    };
    struct LowerPriority {
        bool operator()(const Entry& x, const Entry& y) const {
            if (x.score != y.score)
                return x.score < y.score; // max-heap on score
            return x.a > y.a;             // equal scores: leftmost panel first
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, LowerPriority> queue;

    auto add_panel = [&](Panel<N>&& p) {
        for (std::size_t j = 0; j < N; ++j) {
            total[j] += p.value[j];
            err[j] += p.error[j];
            if (frozen(p))
                errFrozen[j] += p.error[j];
        }
        panels.push_back(std::move(p));
        dead.push_back(0);
    };
    auto enqueue = [&](std::size_t idx) {
        if (frozen(panels[idx]))
            return;
        double score = 0.0;
        for (std::size_t j = 0; j < N; ++j)
            score = std::max(score,
                             panels[idx].error[j] / std::max(std::abs(total[j]), 1e-300));
        if (score > 0.0)
            queue.push(Entry{score, panels[idx].a, idx});
    };

    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        add_panel(gk_detail::evaluate_panel<N>(fn, edges[i], edges[i + 1], 0, evals));
    for (std::size_t i = 0; i < panels.size(); ++i)
        enqueue(i);

    constexpr std::size_t kMaxPanels = 200000;
    std::size_t alive = panels.size();
    std::size_t splitsSinceRebuild = 0;

    for (;;) {
        // Refine until the non-frozen error is within tolerance; frozen
        // (noise-floored) error is reported, not chased.
        bool done = true;
        for (std::size_t j = 0; j < N; ++j)
            if (err[j] - errFrozen[j] > relTol * std::max(std::abs(total[j]), 1e-300))
                done = false;
        if (done)
            break;

        // Pop the live panel with the worst score at enqueue time.
        std::size_t worst = panels.size();
        while (!queue.empty()) {
            const Entry top = queue.top();
            queue.pop();
            if (!dead[top.idx]) {
                worst = top.idx;
                break;
            }
        }
        if (worst == panels.size())
            break; // nothing refinable left; accept what we have

        const Panel<N> old = panels[worst]; // copy: the vector reallocates below
        if (old.depth >= maxDepth)
            throw QuadratureError("adaptive_gauss_kronrod: max bisection depth " +
                                  std::to_string(maxDepth) + " exhausted on [" +
                                  std::to_string(old.a) + ", " + std::to_string(old.b) + "]");
        if (alive + 1 > kMaxPanels)
            throw QuadratureError(
                "adaptive_gauss_kronrod: panel budget exhausted after " +
                std::to_string(evals) +
                " evaluations; the requested tolerance may sit below the integrand's "
                "noise floor");

        dead[worst] = 1;
        for (std::size_t j = 0; j < N; ++j) {
            total[j] -= old.value[j];
            err[j] -= old.error[j];
        }
        const double mid = 0.5 * (old.a + old.b);
        Panel<N> left = gk_detail::evaluate_panel<N>(fn, old.a, mid, old.depth + 1, evals);
        Panel<N> right = gk_detail::evaluate_panel<N>(fn, mid, old.b, old.depth + 1, evals);

        // Noise detection: at sufficient depth, a split that fails to shrink
        // the panel's normalised worst-component error by at least 10% marks
        // the lineage as stagnating; three in a row freezes it. The score is
        // the same quantity that drives panel selection, so a converging
        // smooth component cannot mask a noise-stuck dominant one.
        double parentScore = 0.0, childScore = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            const double scale = std::max(std::abs(total[j]), 1e-300);
            parentScore = std::max(parentScore, old.error[j] / scale);
            childScore = std::max(childScore, (left.error[j] + right.error[j]) / scale);
        }
        const bool improved = childScore < 0.9 * parentScore;
        const int stagnation =
            (old.depth + 1 >= kStagnationMinDepth && !improved) ? old.stagnation + 1 : 0;
        left.stagnation = stagnation;
        right.stagnation = stagnation;

        add_panel(std::move(left));
        add_panel(std::move(right));
        enqueue(panels.size() - 2);
        enqueue(panels.size() - 1);
        ++alive;

        // A component whose frozen (noise-floor) error swamps the requested
        // tolerance cannot be answered honestly at this relTol.
        for (std::size_t j = 0; j < N; ++j) {
            const double cap =
                std::min(1e3 * relTol, 0.3) * std::max(std::abs(total[j]), 1e-300);
            if (errFrozen[j] > cap)
                throw QuadratureError(
                    "adaptive_gauss_kronrod: roundoff noise floor at " +
                    std::to_string(errFrozen[j] / std::max(std::abs(total[j]), 1e-300)) +
                    " (relative) on component " + std::to_string(j) +
                    " is far above the requested tolerance " + std::to_string(relTol));
        }

        if (++splitsSinceRebuild == 1024) { // shed incremental rounding drift
            splitsSinceRebuild = 0;
            total.fill(0.0);
            err.fill(0.0);
            errFrozen.fill(0.0);
            for (std::size_t i = 0; i < panels.size(); ++i)
                if (!dead[i])
                    for (std::size_t j = 0; j < N; ++j) {
                        total[j] += panels[i].value[j];
                        err[j] += panels[i].error[j];
                        if (frozen(panels[i]))
                            errFrozen[j] += panels[i].error[j];
                    }
        }
    }

    std::vector<std::size_t> order;
    order.reserve(alive);
    for (std::size_t i = 0; i < panels.size(); ++i)
        if (!dead[i])
            order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return panels[x].a < panels[y].a;
    });

    QuadratureOutcome<N> out;
    out.evaluations = evals;
    out.panels = order.size();
    std::array<double, N> comp{}; // Kahan compensation
    for (std::size_t i : order)
        for (std::size_t j = 0; j < N; ++j) {
            const double y = panels[i].value[j] - comp[j];
            const double t = out.value[j] + y;
            comp[j] = (t - out.value[j]) - y;
            out.value[j] = t;
            out.errorEstimate[j] += panels[i].error[j];
        }
    return out;
}

} // namespace swpclock
