#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "semiflow/catalog.hpp"
#include "semiflow/flow.hpp"
#include "semiflow/rng.hpp"

using namespace semiflow;
using semiflow::testing::halton_disc;

namespace {

// Finite-difference consistency: every closed form must satisfy the flow
// equation of its paired generator.
void check_flow_equation(const CatalogEntry& entry, Complex z, double t) {
    const double h = 1e-6 * (1.0 + t);
    const Complex fwd = closed_form(*entry.oracle, z, t + h, entry.oracle_velocity);
    const Complex bwd = closed_form(*entry.oracle, z, t - h, entry.oracle_velocity);
    const Complex dz = (fwd - bwd) / (2.0 * h);
    const Complex at = closed_form(*entry.oracle, z, t, entry.oracle_velocity);
    const Complex rhs = eval_generator_raw(entry.spec, at);
    CHECK(std::abs(dz - rhs) < 1e-6 * (1.0 + std::abs(rhs)));
}

}  // namespace

TEST_CASE("closed forms: pinned values") {
    CHECK(closed_form(ClosedFormId::sqrt_flow, {0.0, 1.0}, 0.0) == Complex{0.0, 1.0});
    CHECK(std::abs(closed_form(ClosedFormId::parabolic_disc, {0.0, 0.0}, 1.0) -
                   Complex{0.5, 0.0}) < 1e-15);
    CHECK(std::abs(closed_form(ClosedFormId::exp_contraction, {0.0, 0.6}, std::log(2.0)) -
                   Complex{0.0, 0.3}) < 1e-15);
    CHECK(closed_form(ClosedFormId::sqrt_flow, {1.0, 0.0}, 1.0) == Complex{2.25, 0.0});
    CHECK_THROWS_AS(closed_form_from_string("nope"), std::invalid_argument);
}

TEST_CASE("closed forms satisfy their flow equations") {
    for (const auto& entry : generator_catalog()) {
        if (!entry.oracle) continue;
        const bool disc = std::holds_alternative<BerksonPorta>(entry.spec);
        for (int i = 0; i < 25; ++i) {
            const Complex z = disc ? 0.9 * halton_disc(i)
                                   : Complex{0.2, 0.0} + 2.0 * (halton_disc(i) +
                                                                Complex{1.0, 0.0});
            for (double t : {0.05, 0.4, 1.1}) check_flow_equation(entry, z, t);
        }
    }
}

TEST_CASE("advance matches pinned flow values") {
    IntegratorConfig cfg;
    const auto exp_g = parse_generator_id("bp:tau=0,p=const:1");
    CHECK(std::abs(advance(exp_g, {0.5, 0.0}, std::log(2.0), cfg) - Complex{0.25, 0.0}) <
          1e-10);
    const auto trans = parse_generator_id("hp:const:1");
    CHECK(std::abs(advance(trans, {1.0, 2.0}, 0.5, cfg) - Complex{1.5, 2.0}) < 1e-12);
    const auto sq = parse_generator_id("hp:sqrt");
    CHECK(std::abs(advance(sq, {1.0, 0.0}, 1.0, cfg) - Complex{2.25, 0.0}) < 1e-10);
}

TEST_CASE("advance agrees with closed forms over a (z,t) lattice") {
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-10;
    for (const auto& entry : generator_catalog()) {
        if (!entry.oracle) continue;
        const bool disc = std::holds_alternative<BerksonPorta>(entry.spec);
        for (int i = 0; i < 40; ++i) {
            const Complex z = disc ? (1.0 - std::ldexp(1.0, -(i % 8 + 1))) *
                                         std::exp(Complex{0.0, 0.37 * i})
                                   : Complex{0.05 + 0.2 * (i % 8), 0.0} +
                                         Complex{0.0, -3.0 + 0.15 * i};
            for (double t : {1e-3, 0.1, 0.7}) {
                const Complex want =
                    closed_form(*entry.oracle, z, t, entry.oracle_velocity);
                const Complex got = advance(entry.spec, z, t, cfg);
                CHECK(std::abs(got - want) <= 10.0 * cfg.rel_tol * (1.0 + std::abs(z)));
            }
        }
    }
}

TEST_CASE("advance precondition and error reporting") {
    IntegratorConfig cfg;
    const auto exp_g = parse_generator_id("bp:tau=0,p=const:1");
    CHECK_THROWS_AS(advance(exp_g, {1.5, 0.0}, 0.1, cfg), std::domain_error);
    CHECK_THROWS_AS(advance(exp_g, {0.5, 0.0}, -0.1, cfg), std::invalid_argument);
    // boundary start is allowed (closed domain)
    CHECK(std::abs(advance(parse_generator_id("hp:sqrt"), {0.0, 100.0}, 0.0, cfg) -
                   Complex{0.0, 100.0}) == 0.0);

    IntegratorConfig strict;
    strict.max_steps = 3;
    try {
        advance(parse_generator_id("bp:tau=1,p=recip"), {-0.9999, 0.0}, 0.25, strict);
        CHECK(false);
    } catch (const FlowError& e) {
        CHECK(e.status() == FlowStatus::step_limit);
        CHECK(std::abs(e.where()) <= 1.0);
    }
}

TEST_CASE("trajectory dense output stays within tolerance") {
    IntegratorConfig cfg;
    for (const auto& entry : generator_catalog()) {
        if (!entry.oracle) continue;
        const bool disc = std::holds_alternative<BerksonPorta>(entry.spec);
        const Complex z = disc ? Complex{0.4, -0.3} : Complex{1.0, 0.5};
        const double t = 0.8;
        const Trajectory traj = integrate_trajectory(entry.spec, z, t, cfg);
        CHECK(traj.nodes.size() >= 64);
        for (size_t i = 1; i < traj.nodes.size(); ++i)
            CHECK(traj.nodes[i].t > traj.nodes[i - 1].t);
        for (int q = 0; q <= 500; ++q) {
            const double tq = t * q / 500.0;
            const Complex want = closed_form(*entry.oracle, z, tq, entry.oracle_velocity);
            CHECK(std::abs(traj.at(tq) - want) <= 10.0 * cfg.rel_tol * (1.0 + std::abs(z)));
        }
    }
}

TEST_CASE("trajectory resampling preserves the curve") {
    IntegratorConfig cfg;
    const auto traj =
        integrate_trajectory(parse_generator_id("bp:tau=1,p=const:1"), {0.3, 0.2}, 0.9,
                             cfg);
    const auto fine = traj.resampled(257);
    REQUIRE(fine.nodes.size() == 257);
    CHECK(fine.nodes.front().t == 0.0);
    CHECK(fine.nodes.back().t == doctest::Approx(0.9));
    CHECK(std::abs(fine.nodes.front().z - Complex{0.3, 0.2}) == 0.0);
    for (size_t i = 1; i < fine.nodes.size(); ++i)
        CHECK(fine.nodes[i].t > fine.nodes[i - 1].t);
    for (const auto& n : fine.nodes)
        CHECK(std::abs(n.z - traj.at(n.t)) == 0.0);
    CHECK_THROWS_AS(traj.resampled(1), std::invalid_argument);
}

TEST_CASE("semigroup defect is small across the catalog") {
    IntegratorConfig cfg;
    const auto exp_g = parse_generator_id("bp:tau=0,p=const:1");
    CHECK(semigroup_defect(exp_g, {0.5, 0.0}, 0.3, 0.3, cfg) <= 1e-8);
    CHECK(semigroup_defect(exp_g, {0.5, 0.0}, 0.0, 0.7, cfg) <= cfg.abs_tol * 10);
    const auto sq = parse_generator_id("hp:sqrt");
    CHECK(semigroup_defect(sq, {1.0, 0.0}, 0.5, 0.5, cfg) <= 1e-8);

    RngStream rng(2024, 0);
    for (const auto& entry : generator_catalog()) {
        const bool disc = std::holds_alternative<BerksonPorta>(entry.spec);
        for (int i = 0; i < 10; ++i) {
            const Complex z = disc
                                  ? 0.95 * rng.next_in_disc()
                                  : Complex{0.05 + 2.0 * rng.next_unit(),
                                            3.0 * (rng.next_unit() - 0.5)};
            const double s = rng.next_unit(), t = rng.next_unit();
            CHECK(semigroup_defect(entry.spec, z, s, t, cfg) <= 1e-8);
        }
    }
}

TEST_CASE("difference quotient converges to the generator") {
    IntegratorConfig cfg;
    const auto exp_g = parse_generator_id("bp:tau=0,p=const:1");
    CHECK(std::abs(difference_quotient_generator(exp_g, {0.5, 0.0}, 1e-6, cfg) -
                   Complex{-0.5, 0.0}) < 1e-6);
    const auto c = make_half_plane_constant({1.0, 1.0});
    CHECK(std::abs(difference_quotient_generator(c, {2.0, 0.0}, 0.37, cfg) -
                   Complex{1.0, 1.0}) < 1e-12);
    const auto sq = parse_generator_id("hp:sqrt");
    CHECK(std::abs(difference_quotient_generator(sq, {1.0, 0.0}, 1e-6, cfg) -
                   Complex{1.0, 0.0}) < 1e-5);

    // first-order consistency: halving t roughly halves the error
    const auto parab = parse_generator_id("bp:tau=1,p=const:1");
    for (const Complex z : {Complex{0.2, 0.1}, Complex{-0.4, 0.3}}) {
        const Complex h = eval_generator(parab, z);
        double prev = -1.0;
        for (double t : {1e-2, 5e-3, 2.5e-3, 1.25e-3}) {
            const double err =
                std::abs(difference_quotient_generator(parab, z, t, cfg) - h);
            if (prev > 0.0) CHECK(err < 0.75 * prev);
            prev = err;
        }
    }
}

TEST_CASE("denjoy-wolff estimates match the catalog") {
    IntegratorConfig cfg;
    cfg.max_steps = 1000000;
    const double horizon = 4e6;

    const auto exp_g = parse_generator_id("bp:tau=0,p=const:1");
    const auto to_zero = denjoy_wolff_estimate(exp_g, {0.5, 0.3}, horizon, cfg);
    CHECK(to_zero.kind == DenjoyWolffEstimate::Kind::interior_point);
    CHECK(std::abs(to_zero.location.value) < 1e-3);

    const auto parab = parse_generator_id("bp:tau=1,p=const:1");
    const auto to_one = denjoy_wolff_estimate(parab, {0.0, 0.0}, horizon, cfg);
    CHECK(to_one.kind == DenjoyWolffEstimate::Kind::interior_point);
    CHECK(std::abs(to_one.location.value - Complex{1.0, 0.0}) < 1e-2);

    const auto sq = parse_generator_id("hp:sqrt");
    const auto to_inf = denjoy_wolff_estimate(sq, {1.0, 0.0}, horizon, cfg);
    CHECK(to_inf.kind == DenjoyWolffEstimate::Kind::infinity);
    CHECK(to_inf.location.at_infinity);

    const auto trans = parse_generator_id("hp:const:1");
    CHECK(denjoy_wolff_estimate(trans, {1.0, 0.0}, horizon, cfg).kind ==
          DenjoyWolffEstimate::Kind::infinity);

    // short horizon: translation reaches neither the radius nor a limit
    const auto undecided = denjoy_wolff_estimate(trans, {1.0, 0.0}, 10.0, cfg);
    CHECK(undecided.kind == DenjoyWolffEstimate::Kind::inconclusive);
}

TEST_CASE("monotone real part along half-plane trajectories") {
    IntegratorConfig cfg;
    for (const char* id : {"hp:const:1", "hp:sqrt", "hp:dirichlet:c0=1,a2=1",
                           "hp:cayley:recip", "hp:log:recip"}) {
        const auto g = parse_generator_id(id);
        RngStream rng(7, 11);
        for (int i = 0; i < 20; ++i) {
            const Complex z{0.05 + 2.0 * rng.next_unit(), 4.0 * (rng.next_unit() - 0.5)};
            const auto traj = integrate_trajectory(g, z, 0.5 + rng.next_unit(), cfg);
            for (size_t k = 1; k < traj.nodes.size(); ++k)
                CHECK(traj.nodes[k].z.real() >= traj.nodes[k - 1].z.real() - 1e-10);
        }
    }
}

TEST_CASE("schwarz contraction for elliptic flows fixing the origin") {
    IntegratorConfig cfg;
    const auto g = parse_generator_id("bp:tau=0,p=const:1");
    RngStream rng(3, 5);
    for (int i = 0; i < 25; ++i) {
        const Complex z = 0.999 * rng.next_in_disc();
        const auto traj = integrate_trajectory(g, z, 2.0 * rng.next_unit() + 0.01, cfg);
        double prev = std::abs(z);
        for (const auto& node : traj.nodes) {
            CHECK(std::abs(node.z) <= std::abs(z) + 1e-10);
            CHECK(std::abs(node.z) <= prev + 1e-10);
            prev = std::abs(node.z);
        }
    }
}

TEST_CASE("horodisc invariance for flows fixing the boundary point 1") {
    IntegratorConfig cfg;
    RngStream rng(17, 1);
    for (const char* id : {"bp:tau=1,p=const:1", "bp:tau=1,p=recip"}) {
        const auto g = parse_generator_id(id);
        for (int i = 0; i < 25; ++i) {
            const double lambda = 0.2 + 0.6 * rng.next_unit();
            const Complex z = Complex{lambda, 0.0} + (1.0 - lambda) * 0.99 *
                                                         rng.next_in_disc();
            const auto traj = integrate_trajectory(g, z, rng.next_unit(), cfg);
            for (const auto& node : traj.nodes)
                CHECK(std::abs(node.z - Complex{lambda, 0.0}) <= (1.0 - lambda) + 1e-10);
        }
    }
}

TEST_CASE("domain exit is reported, never clipped") {
    // a repelling field (not a herglotz symbol) pushes trajectories out of
    // the disc; the integrator must fail with left_domain instead of
    // clamping the point back inside
    const GeneratorSpec repelling = BerksonPorta{
        {0.0, 0.0}, HerglotzCustom{"minus_one", [](Complex) { return Complex{-1.0, 0.0}; }}};
    IntegratorConfig cfg;
    try {
        advance(repelling, {0.5, 0.0}, 2.0, cfg);
        CHECK(false);
    } catch (const FlowError& e) {
        CHECK(e.status() == FlowStatus::left_domain);
        CHECK(std::abs(e.where()) <= 1.0 + 1e-9);  // last accepted point is inside
        CHECK(e.when() < 2.0);
    }
}

TEST_CASE("trajectory csv shape") {
    IntegratorConfig cfg;
    const auto traj =
        integrate_trajectory(parse_generator_id("hp:const:1"), {1.0, 2.0}, 0.5, cfg);
    const std::string csv = trajectory_csv(traj, "hp:const:1", cfg);
    CHECK(csv.rfind("# generator=hp:const:1", 0) == 0);
    CHECK(csv.find("t,re,im\n") != std::string::npos);
    CHECK(csv.find("deterministic") != std::string::npos);
}
