#include "semiflow/flow.hpp"

#include <algorithm>
#include <cmath>

#include "semiflow/report.hpp"

namespace semiflow {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
// y5 - y4 error weights (b - b*).
constexpr double kE1 = kB1 - 5179.0 / 57600, kE3 = kB3 - 7571.0 / 16695,
                 kE4 = kB4 - 393.0 / 640, kE5 = kB5 + 92097.0 / 339200,
                 kE6 = kB6 - 187.0 / 2100, kE7 = -1.0 / 40;

// Generator evaluation along one trajectory. For the sqrt generator the
// branch follows the trajectory by nearest-root continuation instead of the
// raw principal branch, so sign flips of Im near the cut cannot tear the
// field.
class FlowField {
  public:
    explicit FlowField(const GeneratorSpec& g, Complex start)
        : g_(g), track_sqrt_(std::holds_alternative<HalfPlaneSqrt>(g)) {
        if (track_sqrt_) hint_ = std::sqrt(start);
    }

    Complex operator()(Complex z) const {
        if (track_sqrt_) {
            Complex r = std::sqrt(z);
            if (r.real() * hint_.real() + r.imag() * hint_.imag() < 0.0) r = -r;
            return r;
        }
        return eval_generator_raw(g_, z);
    }

    void settle(Complex accepted_velocity) {
        if (track_sqrt_) hint_ = accepted_velocity;
    }

  private:
    const GeneratorSpec& g_;
    bool track_sqrt_;
    Complex hint_{1.0, 0.0};
};

double containment_slack(Complex z) { return 1e-12 * (1.0 + std::abs(z)); }

struct Integrator {
    const GeneratorSpec& g;
    const IntegratorConfig& cfg;
    CanonicalDomain domain;
    FlowField field;
    Trajectory* record = nullptr;
    double max_dt = 0.0;

    Integrator(const GeneratorSpec& g_, const IntegratorConfig& cfg_, Complex start)
        : g(g_), cfg(cfg_), domain(domain_of(g_)), field(g_, start) {}

    Complex run(Complex z, double t_total) {
        cfg.validate();
        if (!(t_total >= 0.0)) throw std::invalid_argument("flow time must be >= 0");
        if (!is_finite(z)) throw std::invalid_argument("flow start must be finite");
        if (boundary_distance(domain, z) < -containment_slack(z))
            throw std::domain_error("flow start outside the closed domain");

        Complex k1 = field(z);
        if (!is_finite(k1))
            throw FlowError(FlowStatus::eval_failure, z, 0.0,
                            "generator not finite at the start point");
        if (record) record->nodes.push_back({0.0, z, k1});
        if (t_total == 0.0) return z;

        double t = 0.0;
        double h = initial_step(z, k1, t_total);
        int steps = 0;
        while (t < t_total) {
            if (++steps > cfg.max_steps)
                throw FlowError(FlowStatus::step_limit, z, t, "step budget exhausted");

            h = std::min(h, t_total - t);
            if (max_dt > 0.0) h = std::min(h, max_dt);
            h = clamp_to_boundary(z, k1, h, t, t_total);

            Complex k2, k3, k4, k5, k6, k7, z_new;
            double err, tol;
            bool ok = true;
            {
                const Complex y2 = z + h * (kA21 * k1);
                k2 = field(y2);
                const Complex y3 = z + h * (kA31 * k1 + kA32 * k2);
                k3 = field(y3);
                const Complex y4 = z + h * (kA41 * k1 + kA42 * k2 + kA43 * k3);
                k4 = field(y4);
                const Complex y5 = z + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4);
                k5 = field(y5);
                const Complex y6 =
                    z + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5);
                k6 = field(y6);
                z_new = z + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
                k7 = field(z_new);
                const Complex err_c =
                    h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);
                ok = is_finite(k2) && is_finite(k3) && is_finite(k4) && is_finite(k5) &&
                     is_finite(k6) && is_finite(k7) && is_finite(z_new);
                err = std::abs(err_c);
                tol = cfg.abs_tol +
                      cfg.rel_tol * std::max(std::abs(z), ok ? std::abs(z_new) : 0.0);
            }

            const bool inside =
                ok && boundary_distance(domain, z_new) >= -containment_slack(z_new);
            if (ok && inside && err <= tol) {
                t += h;
                z = z_new;
                k1 = k7;  // FSAL
                field.settle(k7);
                if (record) record->nodes.push_back({t, z, k1});
                const double grow =
                    err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
                h *= std::clamp(grow, 0.2, 5.0);
            } else if (!ok || !inside) {
                h *= 0.5;
                if (h < min_step(t_total))
                    throw FlowError(!ok ? FlowStatus::eval_failure : FlowStatus::left_domain,
                                    z, t,
                                    !ok ? "generator not finite along the step"
                                        : "trajectory left the domain");
            } else {
                const double shrink = 0.9 * std::pow(tol / err, 0.2);
                h *= std::clamp(shrink, 0.1, 0.9);
                if (h < min_step(t_total))
                    throw FlowError(FlowStatus::eval_failure, z, t,
                                    "step size underflow under error control");
            }
        }
        return z;
    }

  private:
    static double min_step(double t_total) { return 1e-16 * std::max(1.0, t_total); }

    double initial_step(Complex z, Complex k1, double t_total) const {
        const double speed = std::abs(k1);
        double h = 0.01 * (1.0 + std::abs(z)) / (speed + 1e-300);
        return std::clamp(h, 1e-12 * t_total, t_total);
    }

    double clamp_to_boundary(Complex z, Complex k1, double h, double t,
                             double t_total) const {
        const double d = boundary_distance(domain, z);
        if (d >= cfg.boundary_guard) return h;
        const double bite = std::max(d, 0.25 * cfg.boundary_guard);
        const double cap = bite / (std::abs(k1) + 1e-300);
        if (cap < min_step(t_total))
            throw FlowError(FlowStatus::left_domain, z, t,
                            "trajectory stalled inside the boundary guard");
        return std::min(h, cap);
    }
};

}  // namespace

void IntegratorConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw std::invalid_argument("integrator tolerances must be > 0");
    if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
    if (!(boundary_guard > 0.0))
        throw std::invalid_argument("boundary_guard must be > 0");
}

FlowError::FlowError(FlowStatus status, Complex at, double time, const std::string& what)
    : std::runtime_error(what), status_(status), at_(at), time_(time) {}

Complex advance(const GeneratorSpec& g, Complex z, double t, const IntegratorConfig& cfg) {
    Integrator integ(g, cfg, z);
    return integ.run(z, t);
}

Trajectory integrate_trajectory(const GeneratorSpec& g, Complex z, double t,
                                const IntegratorConfig& cfg, double max_dt) {
    Trajectory traj;
    Integrator integ(g, cfg, z);
    integ.record = &traj;
    integ.max_dt = max_dt > 0.0 ? max_dt : t / 64.0;
    integ.run(z, t);
    return traj;
}

Complex Trajectory::at(double t) const {
    if (nodes.empty()) throw std::logic_error("empty trajectory");
    if (t <= nodes.front().t) return nodes.front().z;
    if (t >= nodes.back().t) return nodes.back().z;
    auto it = std::upper_bound(nodes.begin(), nodes.end(), t,
                               [](double v, const Node& n) { return v < n.t; });
    const Node& n1 = *it;
    const Node& n0 = *(it - 1);
    const double h = n1.t - n0.t;
    const double s = (t - n0.t) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * n0.z + (s3 - 2 * s2 + s) * h * n0.velocity +
           (-2 * s3 + 3 * s2) * n1.z + (s3 - s2) * h * n1.velocity;
}

Trajectory Trajectory::resampled(int count) const {
    if (count < 2) throw std::invalid_argument("resample count must be >= 2");
    if (nodes.empty()) throw std::logic_error("empty trajectory");
    if (nodes.size() < 2)
        throw std::invalid_argument("cannot resample a single-point trajectory");
    Trajectory out;
    out.nodes.reserve(count);
    const double t0 = nodes.front().t, t1 = nodes.back().t;
    for (int i = 0; i < count; ++i) {
        const double t = t0 + (t1 - t0) * i / (count - 1);
        // central-difference velocity is good enough for post-processing
        const double dt = (t1 - t0) / (8.0 * count) + 1e-300;
        const Complex v = (at(std::min(t + dt, t1)) - at(std::max(t - dt, t0))) /
                          (std::min(t + dt, t1) - std::max(t - dt, t0));
        out.nodes.push_back({t, at(t), v});
    }
    return out;
}

Complex closed_form(ClosedFormId id, Complex z, double t, Complex velocity) {
    if (t == 0.0) return z;  // the identity, exactly
    switch (id) {
        case ClosedFormId::exp_contraction:
            return std::exp(-t) * z;
        case ClosedFormId::translation:
            return z + velocity * t;
        case ClosedFormId::sqrt_flow: {
            const Complex r = std::sqrt(z);
            const Complex s = 0.5 * t + (r.real() < 0.0 ? -r : r);
            return s * s;
        }
        case ClosedFormId::parabolic_disc: {
            const Complex w = 1.0 - z;
            return 1.0 - w / (1.0 + t * w);
        }
    }
    throw std::invalid_argument("unknown closed form id");
}

ClosedFormId closed_form_from_string(const std::string& name) {
    if (name == "exp_contraction") return ClosedFormId::exp_contraction;
    if (name == "translation") return ClosedFormId::translation;
    if (name == "sqrt_flow") return ClosedFormId::sqrt_flow;
    if (name == "parabolic_disc") return ClosedFormId::parabolic_disc;
    throw std::invalid_argument("unknown closed form id: " + name);
}

std::string to_string(ClosedFormId id) {
    switch (id) {
        case ClosedFormId::exp_contraction: return "exp_contraction";
        case ClosedFormId::translation: return "translation";
        case ClosedFormId::sqrt_flow: return "sqrt_flow";
        case ClosedFormId::parabolic_disc: return "parabolic_disc";
    }
    return "?";
}

double semigroup_defect(const GeneratorSpec& g, Complex z, double s, double t,
                        const IntegratorConfig& cfg) {
    if (!(s >= 0.0) || !(t >= 0.0))
        throw std::invalid_argument("semigroup_defect times must be >= 0");
    const Complex direct = advance(g, z, s + t, cfg);
    const Complex composed = advance(g, advance(g, z, s, cfg), t, cfg);
    return std::abs(direct - composed);
}

Complex difference_quotient_generator(const GeneratorSpec& g, Complex z, double t,
                                      const IntegratorConfig& cfg) {
    if (!(t > 0.0)) throw std::invalid_argument("difference quotient requires t > 0");
    return (advance(g, z, t, cfg) - z) / t;
}

DenjoyWolffEstimate denjoy_wolff_estimate(const GeneratorSpec& g, Complex z,
                                          double horizon, const IntegratorConfig& cfg,
                                          double divergence_radius, double converge_tol) {
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
    DenjoyWolffEstimate est;
    est.horizon = horizon;
    Complex mid, end;
    try {
        mid = advance(g, z, 0.5 * horizon, cfg);
        end = advance(g, mid, 0.5 * horizon, cfg);
    } catch (const FlowError& e) {
        est.last = e.where();
        if (std::abs(e.where()) > divergence_radius) {
            est.kind = DenjoyWolffEstimate::Kind::infinity;
            est.location = ExtendedComplex::infinity();
        }
        return est;
    }
    est.last = end;
    if (std::abs(end) > divergence_radius) {
        est.kind = DenjoyWolffEstimate::Kind::infinity;
        est.location = ExtendedComplex::infinity();
    } else if (std::abs(end - mid) <= converge_tol * (1.0 + std::abs(end))) {
        est.kind = DenjoyWolffEstimate::Kind::interior_point;
        est.location = ExtendedComplex::finite(end);
    }
    return est;
}

std::string trajectory_csv(const Trajectory& traj, const std::string& generator_id,
                           const IntegratorConfig& cfg) {
    std::string out = "# generator=" + generator_id +
                      " rel_tol=" + format_g17(cfg.rel_tol) +
                      " abs_tol=" + format_g17(cfg.abs_tol) +
                      " deterministic=yes (no random state)\n";
    out += "t,re,im\n";
    for (const auto& n : traj.nodes) {
        out += format_g17(n.t);
        out += ',';
        out += format_g17(n.z.real());
        out += ',';
        out += format_g17(n.z.imag());
        out += '\n';
    }
    return out;
}

}  // namespace semiflow
