#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "semiflow/catalog.hpp"
#include "semiflow/rates.hpp"

using namespace semiflow;

TEST_CASE("rate fit recovers exact power laws") {
    std::vector<SupRow> linear, root;
    for (int j = 1; j <= 9; ++j) {
        const double t = std::pow(2.0, -j);
        linear.push_back({t, t, {}});
        root.push_back({t, std::sqrt(t), {}});
    }
    const auto lf = rate_fit(linear);
    CHECK(lf.exponent == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(lf.scale == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(lf.rms_residual < 1e-10);
    const auto rf = rate_fit(root);
    CHECK(rf.exponent == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(rf.scale == doctest::Approx(1.0).epsilon(1e-10));

    CHECK_THROWS_AS(rate_fit(std::vector<SupRow>{{0.5, 1.0, {}}}),
                    std::invalid_argument);
    std::vector<SupRow> degenerate = linear;
    degenerate[2].sup = 0.0;
    CHECK_THROWS_AS(rate_fit(degenerate), std::invalid_argument);
}

TEST_CASE("sup deviation: constant generator gives exactly t") {
    SupSamplerConfig cfg;
    cfg.domain = HalfPlane{0.0};
    cfg.ladder_depth = 6;
    cfg.transverse_count = 17;
    cfg.im_window = 50.0;
    const auto g = make_half_plane_constant({1.0, 0.0});
    for (double t : {0.01, 0.25}) {
        const auto row = sup_deviation(g, t, cfg);
        CHECK(row.sup == doctest::Approx(t).epsilon(1e-9));
    }
}

TEST_CASE("sup deviation: disc contraction attains (1-e^-t) r_max") {
    SupSamplerConfig cfg;
    cfg.domain = UnitDisc{};
    cfg.ladder_depth = 14;
    cfg.transverse_count = 16;
    const auto g = parse_generator_id("bp:tau=0,p=const:1");
    const double t = 0.1;
    const auto row = sup_deviation(g, t, cfg);
    const double want = (1.0 - std::exp(-t)) * (1.0 - std::ldexp(1.0, -14));
    CHECK(row.sup == doctest::Approx(want).epsilon(1e-8));
    CHECK(row.sup == doctest::Approx(0.09516).epsilon(1e-3));
    CHECK(std::abs(row.argmax) == doctest::Approx(1.0 - std::ldexp(1.0, -14)));
}

TEST_CASE("sup deviation: sqrt generator is window-dominated") {
    SupSamplerConfig cfg;
    cfg.domain = HalfPlane{0.0};
    cfg.ladder_depth = 12;
    cfg.transverse_count = 33;
    cfg.im_window = 1e6;
    const auto row = sup_deviation(HalfPlaneSqrt{}, 0.01, cfg);
    // closed form at the window corner: |t^2/4 + t sqrt(i R)|
    CHECK(row.sup == doctest::Approx(10.0000177).epsilon(1e-3));
    CHECK(std::abs(row.argmax.imag()) == doctest::Approx(1e6));
}

TEST_CASE("sharpness closed form") {
    // y' = 1/(1+y), y(0) = x, via finite differences
    for (double x : {-0.9, -0.7, -0.55}) {
        CHECK(sharpness_solution(0.0, x) == doctest::Approx(x).epsilon(1e-12));
        for (double t : {0.01, 0.1}) {
            const double h = 1e-6;
            const double dy =
                (sharpness_solution(t + h, x) - sharpness_solution(t - h, x)) / (2 * h);
            CHECK(dy == doctest::Approx(1.0 / (1.0 + sharpness_solution(t, x)))
                            .epsilon(1e-6));
        }
    }
    // pinned identities at x = sqrt(t)/2 - 1
    CHECK(sharpness_solution(0.01, -0.95) - (-0.95) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(sharpness_solution(0.04, -0.9) - (-0.9) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("sharpness lower bound dominates sqrt(t)") {
    for (int k = 3; k <= 8; ++k) {
        const double t = std::pow(4.0, -k);
        std::vector<double> grid;
        for (int i = 0; i <= 20; ++i) grid.push_back(-0.95 + 0.02 * i);
        grid.push_back(0.5 * std::sqrt(t) - 1.0);
        CHECK(sharpness_lower_bound(t, grid) >= std::sqrt(t) - 1e-12);
    }
    // approaching the corner the bound tends to sqrt(2t) > sqrt(t)
    const double t = 0.01;
    std::vector<double> left{-0.999999};
    CHECK(sharpness_lower_bound(t, left) == doctest::Approx(std::sqrt(2 * t)).epsilon(1e-3));
    CHECK_THROWS_AS(sharpness_lower_bound(t, std::vector<double>{-1.5}),
                    std::invalid_argument);
}

TEST_CASE("real part deviation") {
    IntegratorConfig cfg;
    std::vector<Complex> grid;
    for (int k = 0; k < 6; ++k)
        for (int j = -3; j <= 3; ++j)
            grid.emplace_back(std::ldexp(1.0, -k), 2.0 * j);

    // purely imaginary generator: real parts frozen
    CHECK(std::abs(real_part_deviation(make_half_plane_constant({0.0, 1.0}), 0.3, grid,
                                       cfg)) < 1e-9);
    // unit speed: exactly t
    CHECK(real_part_deviation(make_half_plane_constant({1.0, 0.0}), 0.3, grid, cfg) ==
          doctest::Approx(0.3).epsilon(1e-9));
    // bounded generator: at most M t
    const auto g = parse_generator_id("hp:dirichlet:c0=1,a2=1");
    const double dev = real_part_deviation(g, 0.01, grid, cfg);
    CHECK(dev <= 2.0 * 0.01 + 1e-8);
    CHECK(dev >= 0.0);
    CHECK_THROWS_AS(
        real_part_deviation(parse_generator_id("bp:tau=0,p=const:1"), 0.1, grid, cfg),
        std::invalid_argument);
}

TEST_CASE("nonuniform witness rows") {
    const double t_seq[] = {0.0, 0.1};
    const double heights[] = {1e2, 1e4};
    const auto rows = nonuniform_witness(t_seq, heights, {});
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].closed_form == 0.0);  // t = 0
    CHECK(rows[0].advanced == 0.0);
    // t = 0.1: |t^2/4 + t sqrt(iR)|
    CHECK(rows[2].closed_form == doctest::Approx(1.0018).epsilon(2e-4));
    CHECK(rows[3].closed_form == doctest::Approx(10.0018).epsilon(2e-4));
    for (const auto& r : rows)
        CHECK(std::abs(r.closed_form - r.advanced) <= 1e-6 * (1.0 + r.height));
}

TEST_CASE("verify_sqrt_theorem on the contraction flow") {
    SupSamplerConfig cfg;
    cfg.domain = UnitDisc{};
    cfg.ladder_depth = 10;
    cfg.transverse_count = 16;
    std::vector<double> t_seq;
    for (int j = 4; j <= 12; ++j) t_seq.push_back(std::ldexp(1.0, -j));
    const auto report =
        verify_sqrt_theorem(parse_generator_id("bp:tau=0,p=const:1"), t_seq, cfg);
    CHECK(report.fit.exponent == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(report.pass);  // t <= sqrt(t) on this range, and exponent 1 >= 0.45

    std::vector<double> unsorted{0.1, 0.2, 0.05, 0.01, 0.001};
    CHECK_THROWS_AS(verify_sqrt_theorem(parse_generator_id("bp:tau=0,p=const:1"),
                                        unsorted, cfg),
                    std::invalid_argument);
}

TEST_CASE("verify_sqrt_theorem on the parabolic disc flow") {
    SupSamplerConfig cfg;
    cfg.domain = UnitDisc{};
    cfg.ladder_depth = 10;
    cfg.transverse_count = 16;
    std::vector<double> t_seq;
    for (int j = 4; j <= 12; ++j) t_seq.push_back(std::ldexp(1.0, -j));
    const auto report =
        verify_sqrt_theorem(parse_generator_id("bp:tau=1,p=const:1"), t_seq, cfg);
    CHECK(report.pass);
    CHECK(std::isfinite(report.fit.scale));
    CHECK(report.fit.scale > 0.0);
    // the deviation maxes out near the far end of the disc, linear in t
    CHECK(report.fit.exponent == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("sqrt flow window scaling: sup tracks t*sqrt(R)") {
    SupSamplerConfig cfg;
    cfg.domain = HalfPlane{0.0};
    cfg.ladder_depth = 10;
    cfg.transverse_count = 17;
    for (double t : {0.003, 0.01, 0.03}) {
        for (double window : {1e4, 1e5, 1e6}) {
            if (!(t * std::sqrt(window) > 50.0 * t * t)) continue;
            cfg.im_window = window;
            const auto row = sup_deviation(HalfPlaneSqrt{}, t, cfg);
            const double predicted = t * std::sqrt(window);
            CHECK(row.sup >= 0.95 * predicted);
            CHECK(row.sup <= 1.05 * predicted + t * t);
        }
    }
}

TEST_CASE("sup deviation aborts with the offending lattice point") {
    SupSamplerConfig cfg;
    cfg.domain = UnitDisc{};
    cfg.ladder_depth = 8;
    cfg.transverse_count = 8;
    cfg.integrator.max_steps = 2;
    try {
        sup_deviation(parse_generator_id("bp:tau=1,p=recip"), 0.5, cfg);
        CHECK(false);
    } catch (const FlowError& e) {
        CHECK(e.status() == FlowStatus::step_limit);
        CHECK(std::abs(e.where()) < 1.0);
    }
}

TEST_CASE("lattice refinement can only grow the sup") {
    SupSamplerConfig coarse;
    coarse.domain = UnitDisc{};
    coarse.ladder_depth = 6;
    coarse.transverse_count = 8;
    SupSamplerConfig fine = coarse;
    fine.ladder_depth = 12;
    fine.transverse_count = 16;
    const auto g = parse_generator_id("bp:tau=1,p=recip");
    for (double t : {0.01, 0.001}) {
        const double a = sup_deviation(g, t, coarse).sup;
        const double b = sup_deviation(g, t, fine).sup;
        CHECK(b >= a - 1e-12);
    }
}

TEST_CASE("sup scan is independent of the worker count") {
    SupSamplerConfig cfg;
    cfg.domain = UnitDisc{};
    cfg.ladder_depth = 8;
    cfg.transverse_count = 16;
    const auto g = parse_generator_id("bp:tau=1,p=recip");
    const auto parallel = sup_deviation(g, 0.01, cfg);
    setenv("SEMIFLOW_THREADS", "1", 1);
    const auto serial = sup_deviation(g, 0.01, cfg);
    unsetenv("SEMIFLOW_THREADS");
    CHECK(parallel.sup == serial.sup);
    CHECK(parallel.argmax == serial.argmax);
}

TEST_CASE("csv and plot emission") {
    std::vector<SupRow> rows{{0.5, 0.7, {0.1, -0.2}}, {0.25, 0.5, {0.0, 0.0}}};
    const auto csv = rate_rows_csv(rows);
    CHECK(csv.rfind("t,sup,argmax_re,argmax_im\n", 0) == 0);
    CHECK(csv.find("0.5,0.69999999999999996,") != std::string::npos);
    const auto plot = rate_plot_data(rows);
    CHECK(plot.rfind("log_t,log_sup\n", 0) == 0);
}
