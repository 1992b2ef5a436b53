#include "semiflow/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "semiflow/parallel.hpp"
#include "semiflow/report.hpp"

namespace semiflow {

void SupSamplerConfig::validate() const {
    if (ladder_depth < 1) throw std::invalid_argument("sup lattice: ladder_depth >= 1");
    if (transverse_count < 8)
        throw std::invalid_argument("sup lattice: transverse counts >= 8");
    if (std::holds_alternative<HalfPlane>(domain)) {
        if (!(im_window > 0.0)) throw std::invalid_argument("sup lattice: window > 0");
        if (!(re_max > 0.0)) throw std::invalid_argument("sup lattice: re_max > 0");
    } else if (!std::holds_alternative<UnitDisc>(domain)) {
        throw std::invalid_argument("sup lattice: domain must be disc or half-plane");
    }
}

std::vector<Complex> SupSamplerConfig::lattice() const {
    validate();
    std::vector<Complex> pts;
    if (std::holds_alternative<UnitDisc>(domain)) {
        pts.reserve(1 + static_cast<size_t>(ladder_depth) * transverse_count);
        pts.emplace_back(0.0, 0.0);
        for (int k = 1; k <= ladder_depth; ++k) {
            const double r = 1.0 - std::ldexp(1.0, -k);
            for (int j = 0; j < transverse_count; ++j) {
                const double th = 2.0 * std::numbers::pi * j / transverse_count;
                pts.emplace_back(r * std::cos(th), r * std::sin(th));
            }
        }
    } else {
        const int half = transverse_count / 2;
        pts.reserve(static_cast<size_t>(ladder_depth + 1) * (2 * half + 1));
        for (int k = 0; k <= ladder_depth; ++k) {
            const double x = re_max * std::ldexp(1.0, -k);
            pts.emplace_back(x, 0.0);
            for (int j = 1; j <= half; ++j) {
                const double y = im_window * j / half;
                pts.emplace_back(x, y);
                pts.emplace_back(x, -y);
            }
        }
    }
    return pts;
}

SupRow sup_deviation(const GeneratorSpec& g, double t, const SupSamplerConfig& cfg) {
    if (!(t > 0.0)) throw std::invalid_argument("sup_deviation requires t > 0");
    const auto pts = cfg.lattice();
    const int64_t n = static_cast<int64_t>(pts.size());
    std::vector<double> dev(n);
    parallel_for(n, [&](int64_t begin, int64_t end) {
        for (int64_t i = begin; i < end; ++i)
            dev[i] = std::abs(advance(g, pts[i], t, cfg.integrator) - pts[i]);
    });
    // index-ordered reduction: ties resolve to the earliest lattice point
    SupRow row{t, -1.0, Complex{}};
    for (int64_t i = 0; i < n; ++i) {
        if (dev[i] > row.sup) {
            row.sup = dev[i];
            row.argmax = pts[i];
        }
    }
    return row;
}

PowerFit rate_fit(std::span<const SupRow> rows) {
    if (rows.size() < 5) throw std::invalid_argument("rate_fit needs >= 5 rows");
    for (const auto& r : rows) {
        if (!(r.sup > 0.0)) throw std::invalid_argument("rate_fit: non-positive sup row");
        if (!(r.t > 0.0)) throw std::invalid_argument("rate_fit: non-positive t row");
    }
    const double n = static_cast<double>(rows.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rows) {
        const double x = std::log(r.t), y = std::log(r.sup);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("rate_fit: degenerate t sequence");
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    double ss = 0.0;
    for (const auto& r : rows) {
        const double res = std::log(r.sup) - (intercept + slope * std::log(r.t));
        ss += res * res;
    }
    return {std::exp(intercept), slope, std::sqrt(ss / n)};
}

double pinned_sqrt_scale(std::span<const SupRow> rows) {
    if (rows.empty()) throw std::invalid_argument("pinned_sqrt_scale: no rows");
    double acc = 0.0;
    for (const auto& r : rows) {
        if (!(r.sup > 0.0) || !(r.t > 0.0))
            throw std::invalid_argument("pinned_sqrt_scale: non-positive row");
        acc += std::log(r.sup) - 0.5 * std::log(r.t);
    }
    return std::exp(acc / static_cast<double>(rows.size()));
}

double sharpness_solution(double t, double x) {
    return std::sqrt(2.0 * t + (1.0 + x) * (1.0 + x)) - 1.0;
}

double sharpness_lower_bound(double t, std::span<const double> x_grid) {
    if (!(t > 0.0)) throw std::invalid_argument("sharpness bound requires t > 0");
    if (x_grid.empty()) throw std::invalid_argument("sharpness bound: empty grid");
    double best = -std::numeric_limits<double>::infinity();
    for (double x : x_grid) {
        if (!(x > -1.0 && x < 0.0))
            throw std::invalid_argument("sharpness grid points must lie in (-1, 0)");
        best = std::max(best, sharpness_solution(t, x) - x);
    }
    return best;
}

double real_part_deviation(const GeneratorSpec& g, double t,
                           std::span<const Complex> grid, const IntegratorConfig& cfg) {
    if (std::holds_alternative<BerksonPorta>(g))
        throw std::invalid_argument("real_part_deviation requires a half-plane spec");
    const int64_t n = static_cast<int64_t>(grid.size());
    std::vector<double> dev(n);
    parallel_for(n, [&](int64_t begin, int64_t end) {
        for (int64_t i = begin; i < end; ++i)
            dev[i] = (advance(g, grid[i], t, cfg) - grid[i]).real();
    });
    double best = -std::numeric_limits<double>::infinity();
    for (int64_t i = 0; i < n; ++i) best = std::max(best, dev[i]);
    return best;
}

std::vector<WitnessRow> nonuniform_witness(std::span<const double> t_seq,
                                           std::span<const double> heights,
                                           const IntegratorConfig& cfg) {
    const GeneratorSpec g = HalfPlaneSqrt{};
    std::vector<WitnessRow> rows;
    rows.reserve(t_seq.size() * heights.size());
    for (double t : t_seq) {
        for (double height : heights) {
            if (!(height > 0.0))
                throw std::invalid_argument("witness heights must be > 0");
            const Complex z{0.0, height};
            const double closed = std::abs(closed_form(ClosedFormId::sqrt_flow, z, t) - z);
            const double advanced =
                t == 0.0 ? 0.0 : std::abs(advance(g, z, t, cfg) - z);
            rows.push_back({t, height, closed, advanced});
        }
    }
    return rows;
}

RateReport verify_sqrt_theorem(const GeneratorSpec& g, std::span<const double> t_seq,
                               const SupSamplerConfig& cfg, const std::string& id) {
    if (t_seq.size() < 5)
        throw std::invalid_argument("verify_sqrt_theorem needs >= 5 t values");
    for (size_t i = 1; i < t_seq.size(); ++i)
        if (!(t_seq[i] < t_seq[i - 1]))
            throw std::invalid_argument("t sequence must decrease strictly");

    RateReport report;
    report.generator_id = id;
    report.im_window = cfg.im_window;
    report.ladder_depth = cfg.ladder_depth;
    report.transverse_count = cfg.transverse_count;
    for (double t : t_seq) report.rows.push_back(sup_deviation(g, t, cfg));
    report.fit = rate_fit(report.rows);
    report.sqrt_scale = pinned_sqrt_scale(report.rows);
    // the bound's constant is existential: accept the envelope of either
    // fitted constant (free-exponent fits favour faster-than-sqrt data, the
    // pinned fit favours genuine sqrt data)
    bool within_free = true, within_pinned = true;
    for (const auto& r : report.rows) {
        const double root = std::sqrt(r.t);
        if (!(r.sup <= 1.1 * report.fit.scale * root)) within_free = false;
        if (!(r.sup <= 1.1 * report.sqrt_scale * root)) within_pinned = false;
    }
    report.rows_within_sqrt_bound = within_free || within_pinned;
    report.exponent_at_least_half_ish = report.fit.exponent >= 0.45;
    report.pass = report.rows_within_sqrt_bound && report.exponent_at_least_half_ish;
    return report;
}

std::string rate_rows_csv(std::span<const SupRow> rows) {
    std::string out = "t,sup,argmax_re,argmax_im\n";
    for (const auto& r : rows) {
        out += format_g17(r.t) + "," + format_g17(r.sup) + "," +
               format_g17(r.argmax.real()) + "," + format_g17(r.argmax.imag()) + "\n";
    }
    return out;
}

std::string rate_plot_data(std::span<const SupRow> rows) {
    std::string out = "log_t,log_sup\n";
    for (const auto& r : rows)
        out += format_g17(std::log(r.t)) + "," + format_g17(std::log(r.sup)) + "\n";
    return out;
}

}  // namespace semiflow
