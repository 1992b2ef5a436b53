#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "semiflow/cplane.hpp"

namespace semiflow {

// ---------------------------------------------------------------------------
// Herglotz data: holomorphic p on the unit disc with Re p >= 0.

struct HerglotzConstant {
    Complex c{1.0, 0.0};
};

/// p(z) = scale * (1+z)/(1-z), scale > 0.
struct HerglotzMoebius {
    double scale = 1.0;
};

/// p(z) = 1/(1+z).
struct HerglotzReciprocal {};

/// Escape hatch so tests and experiments can register closed forms by name.
struct HerglotzCustom {
    std::string name;
    std::function<Complex(Complex)> fn;
};

using HerglotzSpec =
    std::variant<HerglotzConstant, HerglotzMoebius, HerglotzReciprocal, HerglotzCustom>;

HerglotzSpec make_herglotz_constant(Complex c);   // requires Re c >= 0
HerglotzSpec make_herglotz_moebius(double scale); // requires scale > 0

Complex eval_herglotz(const HerglotzSpec& p, Complex z);
std::string herglotz_name(const HerglotzSpec& p);

// ---------------------------------------------------------------------------
// Dirichlet series: constant + sum of a_n n^{-s} over finitely many terms.

struct DirichletSeriesSpec {
    struct Term {
        uint32_t n;  // n >= 1
        Complex a;
    };
    /// Declared decay |a_n| <= amplitude * n^{-exponent} past the truncation,
    /// used for the reported tail bound.
    struct TailDecay {
        double amplitude;
        double exponent;
    };

    Complex constant{0.0, 0.0};
    std::vector<Term> terms;         // sorted by n, distinct
    double abscissa = 0.0;           // evaluation requires Re(s) > abscissa
    std::optional<TailDecay> tail;   // absent => series is exactly the truncation

    static DirichletSeriesSpec make(Complex constant, std::vector<Term> terms,
                                    double abscissa = 0.0,
                                    std::optional<TailDecay> tail = std::nullopt);
};

struct DirichletValue {
    Complex value;
    /// Bound on the dropped tail: 0 for exact truncations, the integral bound
    /// amplitude * N^{1-q}/(q-1) with q = exponent + Re(s) when decay is
    /// declared (infinity when q <= 1).
    double tail_bound;
};

/// Rejects Re(s) <= abscissa.
DirichletValue dirichlet_eval(const DirichletSeriesSpec& series, Complex s);

/// Parses rows "n,re[,im]"; a row with n = 0 sets the constant term.
/// Lines starting with '#' are comments.
DirichletSeriesSpec parse_dirichlet_csv(const std::string& path, double abscissa = 0.0);

// ---------------------------------------------------------------------------
// Infinitesimal generators.

/// Disc generator H(z) = (z - tau) (conj(tau) z - 1) p(z), |tau| <= 1.
struct BerksonPorta {
    Complex fixed_point;
    HerglotzSpec herglotz;
};

/// Half-plane generator H == c, Re c >= 0.
struct HalfPlaneConstant {
    Complex c{1.0, 0.0};
};

/// Half-plane generator H(w) = sqrt(w) (principal branch).
struct HalfPlaneSqrt {};

/// Half-plane generator given by a Dirichlet series.
struct HalfPlaneDirichlet {
    DirichletSeriesSpec series;
};

/// Half-plane generator H(w) = p(exp(-w)) for a disc Herglotz function p.
struct PullbackViaLog {
    HerglotzSpec herglotz;
};

/// Half-plane generator H(w) = 2 p((w-1)/(w+1)).
struct PullbackViaCayley {
    HerglotzSpec herglotz;
};

using GeneratorSpec = std::variant<BerksonPorta, HalfPlaneConstant, HalfPlaneSqrt,
                                   HalfPlaneDirichlet, PullbackViaLog, PullbackViaCayley>;

/// Rejects |tau| > 1 (boundary tau, including 1, is allowed: non-elliptic).
GeneratorSpec make_berkson_porta(Complex fixed_point, HerglotzSpec p);
GeneratorSpec make_half_plane_constant(Complex c);  // requires Re c >= 0

/// Natural domain of the generator: unit disc for Berkson-Porta data, the
/// right half-plane otherwise.
CanonicalDomain domain_of(const GeneratorSpec& g);

/// Evaluates H(z). Throws std::domain_error when z is outside the closed
/// domain of the generator or on a branch cut.
Complex eval_generator(const GeneratorSpec& g, Complex z);

/// Formula evaluation without the domain pre-check; integrator stages probe
/// slightly past the boundary and reject on non-finite values instead.
Complex eval_generator_raw(const GeneratorSpec& g, Complex z);

// ---------------------------------------------------------------------------
// Sample grids.

/// Disc grid: radii 1 - 2^{-k}, k = 0..radial_depth (k = 0 is the origin),
/// angular_count equispaced directions per positive radius.
struct DiscGrid {
    int radial_depth = 14;
    int angular_count = 64;
    std::vector<Complex> points() const;
};

/// Half-plane grid: Re = re_max * 2^{-k}, k = 0..re_depth, crossed with an
/// odd number of imaginary values filling [-im_window, im_window] from 0
/// outward (0, +d, -d, +2d, ...).
struct HalfPlaneGrid {
    double re_max = 1.0;
    int re_depth = 12;
    double im_window = 10.0;
    int im_count = 65;  // made odd internally
    std::vector<Complex> points(double re_offset = 0.0) const;
};

// ---------------------------------------------------------------------------
// Analytic hypothesis checks.

struct GridViolation {
    Complex point;
    Complex value;
};

struct ClassGReport {
    bool maps_into_closed_half_plane = false;
    std::vector<GridViolation> violations;           // Re H < -1e-10
    std::vector<std::pair<double, double>> sup_rows; // (offset, windowed sup |H|)
    double grid_im_window = 0.0;
};

/// Checks, over the grid, that the series maps the right half-plane into its
/// closure and reports windowed sup |H| on each offset half-plane. Violations
/// are reported, never thrown.
ClassGReport check_class_G_generator(const DirichletSeriesSpec& series,
                                     const HalfPlaneGrid& grid,
                                     std::span<const double> offsets);

/// Grid estimate of the least M with |p(z)| <= M / (1 - |z|^2); requires the
/// grid to reach radius >= 1 - 1e-4. Monotone under grid refinement.
double herglotz_growth_constant(const HerglotzSpec& p, const DiscGrid& grid);

struct BoundProfileRow {
    double offset;
    double sup;
    Complex argmax;
    bool window_edge;  // argmax sits on the imaginary window boundary
};

struct BoundProfile {
    std::vector<BoundProfileRow> rows;
    /// Least K with sup <= K / offset across the rows.
    double k_hat = 0.0;
    /// Set when any row's estimate is window-limited, i.e. the sup scan ran
    /// into the imaginary window edge and the reported value is only a lower
    /// estimate of a possibly unbounded sup.
    bool window_limited = false;
};

BoundProfile halfplane_bound_profile(const GeneratorSpec& g,
                                     std::span<const double> offsets,
                                     const HalfPlaneGrid& grid);

}  // namespace semiflow
