#pragma once

#include <string>
#include <vector>

#include "semiflow/generators.hpp"

namespace semiflow {

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_steps = 200000;
    /// Distance to the boundary below which step lengths are clamped to the
    /// remaining distance. Trajectories that stall inside the guard zone fail
    /// with left_domain; they are never clipped back inside.
    double boundary_guard = 1e-9;

    void validate() const;
};

enum class FlowStatus { ok, step_limit, left_domain, eval_failure };

class FlowError : public std::runtime_error {
  public:
    FlowError(FlowStatus status, Complex at, double time, const std::string& what);
    FlowStatus status() const { return status_; }
    Complex where() const { return at_; }
    double when() const { return time_; }

  private:
    FlowStatus status_;
    Complex at_;
    double time_;
};

/// Sampled flow curve with cubic Hermite dense output between the accepted
/// integration nodes.
struct Trajectory {
    struct Node {
        double t;
        Complex z;
        Complex velocity;
    };
    std::vector<Node> nodes;

    double duration() const { return nodes.empty() ? 0.0 : nodes.back().t; }
    Complex at(double t) const;
    Trajectory resampled(int count) const;
};

/// Numerical flow value at time t >= 0 from z (adaptive embedded
/// Runge-Kutta 5(4) with step rejection). Throws FlowError on step
/// exhaustion, domain exit, or non-finite generator values; throws
/// std::domain_error / std::invalid_argument on precondition violations.
Complex advance(const GeneratorSpec& g, Complex z, double t,
                const IntegratorConfig& cfg = {});

/// Like advance but records accepted nodes. max_dt caps the step so the
/// Hermite dense output stays within tolerance; <= 0 means t / 64.
Trajectory integrate_trajectory(const GeneratorSpec& g, Complex z, double t,
                                const IntegratorConfig& cfg = {}, double max_dt = 0.0);

// ---------------------------------------------------------------------------
// Closed-form reference flows.

enum class ClosedFormId {
    exp_contraction,  // e^{-t} z            (disc, H = -z)
    translation,      // z + c t             (half-plane, H == c)
    sqrt_flow,        // (t/2 + sqrt(z))^2   (half-plane, H = sqrt(z))
    parabolic_disc,   // 1 - (1-z)/(1 + t (1-z))  (disc, H = (1-z)^2)
};

Complex closed_form(ClosedFormId id, Complex z, double t, Complex velocity = {1.0, 0.0});
ClosedFormId closed_form_from_string(const std::string& name);
std::string to_string(ClosedFormId id);

/// |Phi_{s+t}(z) - Phi_t(Phi_s(z))|, both paths integrated numerically.
double semigroup_defect(const GeneratorSpec& g, Complex z, double s, double t,
                        const IntegratorConfig& cfg = {});

/// (Phi_t(z) - z) / t for small t > 0; converges to the generator value.
Complex difference_quotient_generator(const GeneratorSpec& g, Complex z, double t,
                                      const IntegratorConfig& cfg = {});

// ---------------------------------------------------------------------------
// Denjoy-Wolff estimation.

struct DenjoyWolffEstimate {
    enum class Kind { interior_point, infinity, inconclusive };
    Kind kind = Kind::inconclusive;
    /// Meaningful for interior_point; at_infinity set for Kind::infinity.
    ExtendedComplex location;
    /// Last computed flow value and the horizon it was computed at.
    Complex last{};
    double horizon = 0.0;
};

/// Flows z to the horizon and classifies the near-limit: "infinity" once the
/// trajectory norm exceeds divergence_radius, "interior_point" when the
/// tail is Cauchy at converge_tol, otherwise "inconclusive".
DenjoyWolffEstimate denjoy_wolff_estimate(const GeneratorSpec& g, Complex z,
                                          double horizon, const IntegratorConfig& cfg = {},
                                          double divergence_radius = 1e6,
                                          double converge_tol = 1e-3);

/// Trajectory CSV: one header comment naming the generator and tolerances,
/// then "t,re,im" rows. Deterministic (no seeds involved).
std::string trajectory_csv(const Trajectory& traj, const std::string& generator_id,
                           const IntegratorConfig& cfg);

}  // namespace semiflow
