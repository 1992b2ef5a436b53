#pragma once

#include <span>
#include <string>
#include <vector>

#include "semiflow/flow.hpp"

namespace semiflow {

/// Sample lattice for sup |Phi_t(z) - z| scans. The disc lattice samples
/// radii 1 - 2^{-k}, k = 0..ladder_depth (k = 0 is the origin) crossed with
/// equispaced angles; the half-plane lattice samples Re = re_max * 2^{-k}
/// crossed with an equispaced imaginary window [-im_window, im_window].
/// Either way the scan is a max over a finite set: a lower bound for the
/// true sup, with the window recorded next to it.
struct SupSamplerConfig {
    CanonicalDomain domain = UnitDisc{};
    int ladder_depth = 14;
    int transverse_count = 64;   // angles (disc) / imaginary values (half-plane)
    double im_window = 1e4;      // half-plane only
    double re_max = 1.0;         // half-plane ladder top
    IntegratorConfig integrator{};

    void validate() const;
    std::vector<Complex> lattice() const;
};

struct SupRow {
    double t;
    double sup;
    Complex argmax;
};

/// Max over the lattice of |Phi_t(z) - z|. Flow failures abort with the
/// offending lattice point (FlowError). Deterministic under any thread count.
SupRow sup_deviation(const GeneratorSpec& g, double t, const SupSamplerConfig& cfg);

/// Ordinary least squares in log-log coordinates: sup ~ scale * t^exponent.
struct PowerFit {
    double scale;
    double exponent;
    double rms_residual;  // in log space
};
PowerFit rate_fit(std::span<const SupRow> rows);

/// Least-squares scale of the pinned model sup ~ C * sqrt(t): the geometric
/// mean of sup / sqrt(t). This is the constant the sqrt-envelope row checks
/// compare against (the free fit's constant belongs to t^exponent, not to
/// sqrt(t)).
double pinned_sqrt_scale(std::span<const SupRow> rows);

/// Explicit comparison solution of the sharpness example on the real axis:
/// value at time t of the flow started at x of the minorant field.
double sharpness_solution(double t, double x);  // sqrt(2t + (1+x)^2) - 1

/// Max over the grid of (solution - start); >= sqrt(t) whenever the grid
/// contains sqrt(t)/2 - 1. Grid points must lie in (-1, 0).
double sharpness_lower_bound(double t, std::span<const double> x_grid);

/// Max over the grid of Re(Phi_t(z)) - Re(z); requires a half-plane spec
/// with Re H >= 0 (values below -1e-10 would indicate a broken flow).
double real_part_deviation(const GeneratorSpec& g, double t,
                           std::span<const Complex> grid,
                           const IntegratorConfig& cfg = {});

/// Deviation of the sqrt flow at boundary heights: rows pair the closed-form
/// value with the integrated one so their agreement is part of the record.
struct WitnessRow {
    double t;
    double height;        // z = i * height
    double closed_form;   // |Phi_t(z) - z| from the formula
    double advanced;      // same from the integrator
};
std::vector<WitnessRow> nonuniform_witness(std::span<const double> t_seq,
                                           std::span<const double> heights,
                                           const IntegratorConfig& cfg = {});

/// Sup rows over a decreasing t sequence plus the fitted power law and the
/// pass verdict: every row below 1.1 * sqrt_scale * sqrt(t) and the free
/// exponent >= 0.45.
struct RateReport {
    std::string generator_id;
    std::vector<SupRow> rows;
    PowerFit fit{};
    double sqrt_scale = 0.0;
    bool rows_within_sqrt_bound = false;
    bool exponent_at_least_half_ish = false;  // fit.exponent >= 0.45
    bool pass = false;
    // window metadata
    double im_window = 0.0;
    int ladder_depth = 0;
    int transverse_count = 0;
};

RateReport verify_sqrt_theorem(const GeneratorSpec& g, std::span<const double> t_seq,
                               const SupSamplerConfig& cfg,
                               const std::string& generator_id = "");

/// Report rows serialized as CSV (t, sup, argmax_re, argmax_im).
std::string rate_rows_csv(std::span<const SupRow> rows);
/// (log t, log sup) pairs for plotting.
std::string rate_plot_data(std::span<const SupRow> rows);

}  // namespace semiflow
