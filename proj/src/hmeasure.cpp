#include "semiflow/hmeasure.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "semiflow/curves.hpp"
#include "semiflow/parallel.hpp"
#include "semiflow/rng.hpp"

namespace semiflow {

namespace {

constexpr double kStopTolFactor = 1e-6;
constexpr int64_t kMaxWalkSteps = 1u << 20;

struct ExitPoint {
    uint32_t segment;
    double param;
};

// One Brownian exit sample: jump to a uniform point of the largest inscribed
// circle until within the stop tolerance, then snap to the nearest boundary
// point.
ExitPoint walk_exit(const JordanDomain& domain, Complex w, double stop_tol,
                    uint64_t seed, uint64_t walk_index) {
    RngStream rng(seed, walk_index);
    Complex z = w;
    for (int64_t step = 0; step < kMaxWalkSteps; ++step) {
        const auto near = domain.nearest_boundary_point(z);
        if (near.distance <= stop_tol) return {near.segment, near.param};
        const double angle = rng.next_angle();
        z += near.distance * Complex{std::cos(angle), std::sin(angle)};
    }
    const auto near = domain.nearest_boundary_point(z);
    return {near.segment, near.param};
}

double binomial_stderr(double p, int64_t n) {
    return std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n));
}

}  // namespace

std::vector<HMEstimate> harmonic_measure_multi(const JordanDomain& domain, Complex w,
                                               std::span<const BoundarySubset> subsets,
                                               int64_t walks, uint64_t seed) {
    if (walks < 1000)
        throw std::invalid_argument("harmonic measure requires >= 1000 walks");
    if (!domain.contains(w))
        throw std::invalid_argument("harmonic measure point must be interior");
    const double stop_tol = kStopTolFactor * domain.bbox_diameter();

    const int lanes = static_cast<int>(subsets.size());
    // integer hit counts commute, so the totals are scheduling-independent
    std::vector<std::atomic<int64_t>> counts(lanes);
    for (auto& c : counts) c.store(0, std::memory_order_relaxed);
    parallel_for(walks, [&](int64_t begin, int64_t end) {
        std::vector<int64_t> local(lanes, 0);
        for (int64_t i = begin; i < end; ++i) {
            const ExitPoint exit = walk_exit(domain, w, stop_tol, seed,
                                             static_cast<uint64_t>(i));
            for (int s = 0; s < lanes; ++s)
                if (subsets[s].covers(exit.segment, exit.param)) ++local[s];
        }
        for (int s = 0; s < lanes; ++s)
            counts[s].fetch_add(local[s], std::memory_order_relaxed);
    });

    std::vector<HMEstimate> out(lanes);
    for (int s = 0; s < lanes; ++s) {
        const double p = static_cast<double>(counts[s].load()) /
                         static_cast<double>(walks);
        out[s] = {p, binomial_stderr(p, walks), walks, stop_tol, seed};
    }
    return out;
}

HMEstimate harmonic_measure(const JordanDomain& domain, Complex w,
                            const BoundarySubset& subset, int64_t walks, uint64_t seed) {
    return harmonic_measure_multi(domain, w, {&subset, 1}, walks, seed)[0];
}

double disc_arc_oracle(double theta1, double theta2) {
    const double span = theta2 - theta1;
    if (!(span >= 0.0) || !(span <= 2.0 * std::numbers::pi + 1e-12))
        throw std::invalid_argument("disc arc oracle needs 0 <= theta2-theta1 <= 2*pi");
    return span / (2.0 * std::numbers::pi);
}

// ---------------------------------------------------------------------------

std::vector<double> LavrentievConfig::fraction_grid() const {
    if (!fractions.empty()) return fractions;
    std::vector<double> g;
    for (int i = 1; i <= 50; ++i) g.push_back(0.01 * i);
    return g;
}

CutSquare make_cut_square(Complex corner, double a, uint64_t seed, uint64_t index,
                          double re_span_fraction) {
    // Monotone random staircase from below the bottom edge to above the top
    // edge; strict increments on both axes keep the clipped curve simple.
    RngStream rng(seed, 0xC0FFEE00ULL + index);
    const int steps = 48;
    const double re_span = re_span_fraction * a;
    std::vector<Complex> pts;
    pts.reserve(steps + 2);
    double x = corner.real() + 0.02 * a + 0.5 * re_span * rng.next_unit();
    double y = corner.imag() - 0.02 * a;
    pts.emplace_back(x, y);
    std::vector<double> dy(steps);
    double dy_total = 0.0;
    for (int i = 0; i < steps; ++i) {
        dy[i] = 0.1 + rng.next_unit();
        dy_total += dy[i];
    }
    const double y_scale = 1.04 * a / dy_total;
    const double x_budget = 0.45 * re_span;
    for (int i = 0; i < steps; ++i) {
        y += dy[i] * y_scale;
        x += rng.next_unit() * x_budget / steps;
        pts.emplace_back(x, y);
    }
    const Square square{corner, a};
    auto parts = build_proof_domain_parts(square, make_polyline(std::move(pts)));
    std::vector<BoundarySubset::Arc> arcs;
    double cut_len = 0.0;
    for (uint32_t s = parts.cut_first_segment;
         s < parts.cut_first_segment + parts.cut_segment_count; ++s) {
        arcs.push_back({s, 0.0, 1.0});
        cut_len += parts.domain.segment_length(s);
    }
    auto cut = BoundarySubset::from_arcs(parts.domain, std::move(arcs));
    return {std::move(parts.domain), std::move(cut), cut_len};
}

LavrentievResult lavrentiev_experiment(const LavrentievConfig& cfg) {
    if (!(cfg.a > 0.0)) throw std::invalid_argument("lavrentiev: a must be > 0");
    if (cfg.domain_count < 1) throw std::invalid_argument("lavrentiev: empty family");
    const auto fractions = cfg.fraction_grid();
    for (size_t i = 1; i < fractions.size(); ++i)
        if (!(fractions[i] > fractions[i - 1]))
            throw std::invalid_argument("lavrentiev: fractions must ascend");

    LavrentievResult result;
    std::vector<bool> fraction_ok(fractions.size(), true);
    for (int d = 0; d < cfg.domain_count; ++d) {
        const Complex corner{0.0, 0.0};
        CutSquare cs = make_cut_square(corner, cfg.a, cfg.seed,
                                       static_cast<uint64_t>(d));
        const Complex w = corner + cfg.a * cfg.center_offset;

        // family preconditions
        if (cs.domain.boundary_length() > 4.0 * cfg.a + 1e-9 * cfg.a)
            throw std::invalid_argument("lavrentiev: boundary length exceeds 4a");
        if (!cs.domain.contains(w) ||
            cs.domain.nearest_boundary_point(w).distance <= 0.25 * cfg.a)
            throw std::invalid_argument("lavrentiev: D(w, a/4) not inside the domain");

        // nested windows anchored at the bottom end of the cut (the boundary
        // ring ends there, so they are suffix arclength windows)
        const double total = cs.domain.boundary_length();
        std::vector<BoundarySubset> subsets;
        subsets.reserve(fractions.size());
        for (double f : fractions) {
            const double len = std::min(f * cfg.a, cs.cut_length);
            subsets.push_back(BoundarySubset::from_arclength(cs.domain, total - len, total));
        }
        const auto estimates = harmonic_measure_multi(
            cs.domain, w, subsets, cfg.walks, cfg.seed + 1000 + static_cast<uint64_t>(d));
        for (size_t fi = 0; fi < fractions.size(); ++fi) {
            const auto& e = estimates[fi];
            result.rows.push_back(
                {d, fractions[fi], subsets[fi].measure(), e.value, e.stderr_});
            if (!(e.value + 3.0 * e.stderr_ < 0.125)) fraction_ok[fi] = false;
        }
    }
    double rho = 0.0;
    for (size_t fi = 0; fi < fractions.size() && fraction_ok[fi]; ++fi)
        rho = fractions[fi];
    result.rho_hat = rho;
    result.small_subsets_pass = true;
    for (const auto& row : result.rows)
        if (row.fraction <= result.threshold_fraction &&
            !(row.omega + 3.0 * row.stderr_ < 0.125))
            result.small_subsets_pass = false;
    return result;
}

// ---------------------------------------------------------------------------

SubordinationResult subordination_check(const JordanDomain& inner,
                                        const JordanDomain& outer, Complex w,
                                        const BoundarySubset& shared_on_outer,
                                        int64_t walks, uint64_t seed) {
    const double tol = 1e-9 * outer.bbox_diameter();
    // containment: inner vertices must lie in the closed outer domain
    for (const auto& v : inner.ring()) {
        const double d = outer.nearest_boundary_point(v).distance;
        if (!outer.contains(v) && d > tol)
            throw std::invalid_argument("subordination: inner domain not contained");
    }
    if (!inner.contains(w) || !outer.contains(w))
        throw std::invalid_argument("subordination: w must be interior to both domains");

    // inner comparison set: everything off the outer boundary, plus the trace
    // of the shared subset; classified per probe sub-arc by midpoint
    std::vector<BoundarySubset::Arc> arcs;
    const int kProbe = 8;
    for (uint32_t s = 0; s < inner.segment_count(); ++s) {
        const Complex a = inner.segment_start(s), b = inner.segment_end(s);
        for (int q = 0; q < kProbe; ++q) {
            const double u0 = static_cast<double>(q) / kProbe;
            const double u1 = static_cast<double>(q + 1) / kProbe;
            const Complex p = a + (0.5 * (u0 + u1)) * (b - a);
            const auto near = outer.nearest_boundary_point(p);
            const bool keep = near.distance > tol ||
                              shared_on_outer.covers(near.segment, near.param);
            if (keep) arcs.push_back({s, u0, u1});
        }
    }
    const auto inner_set = BoundarySubset::from_arcs(inner, std::move(arcs));

    SubordinationResult result;
    result.inner = harmonic_measure(inner, w, inner_set, walks, seed);
    result.outer = harmonic_measure(outer, w, shared_on_outer, walks, seed ^ 0x5eedULL);
    result.pass = result.inner.value + 3.0 * result.inner.stderr_ >=
                  result.outer.value - 3.0 * result.outer.stderr_;
    return result;
}

}  // namespace semiflow
