#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <fstream>
#include <numbers>

#include "helpers.hpp"
#include "semiflow/catalog.hpp"
#include "semiflow/generators.hpp"

using namespace semiflow;
using semiflow::testing::halton_disc;

TEST_CASE("berkson-porta evaluation") {
    const auto contraction = make_berkson_porta({0.0, 0.0}, HerglotzConstant{{1.0, 0.0}});
    CHECK(std::abs(eval_generator(contraction, {0.5, 0.0}) - Complex{-0.5, 0.0}) < 1e-15);

    const auto sharp = make_berkson_porta({1.0, 0.0}, HerglotzReciprocal{});
    CHECK(std::abs(eval_generator(sharp, {0.0, 0.0}) - Complex{1.0, 0.0}) < 1e-15);
    // same thing written as (1-z)^2 / (1+z)
    for (int i = 0; i < 100; ++i) {
        const Complex z = halton_disc(i);
        const Complex direct = (1.0 - z) * (1.0 - z) / (1.0 + z);
        CHECK(std::abs(eval_generator(sharp, z) - direct) < 1e-13);
    }

    CHECK(std::abs(eval_generator(HalfPlaneSqrt{}, {4.0, 0.0}) - Complex{2.0, 0.0}) <
          1e-15);
}

TEST_CASE("berkson-porta construction rejects |tau| > 1") {
    CHECK_THROWS_AS(make_berkson_porta({1.5, 0.0}, HerglotzConstant{{1.0, 0.0}}),
                    std::invalid_argument);
    CHECK_NOTHROW(make_berkson_porta({0.0, 1.0}, HerglotzConstant{{1.0, 0.0}}));
    CHECK_THROWS_AS(make_herglotz_constant({-0.5, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_herglotz_moebius(0.0), std::invalid_argument);
}

TEST_CASE("generator domain checks") {
    const auto contraction = make_berkson_porta({0.0, 0.0}, HerglotzConstant{{1.0, 0.0}});
    CHECK_THROWS_AS(eval_generator(contraction, {2.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(eval_generator(HalfPlaneSqrt{}, {-1.0, 0.0}), std::domain_error);
    CHECK_NOTHROW(eval_generator(HalfPlaneSqrt{}, {0.0, 1.0}));  // closed half-plane
}

TEST_CASE("factor decomposition recovers the herglotz part") {
    const HerglotzSpec ps[] = {HerglotzConstant{{1.0, 0.5}}, HerglotzReciprocal{},
                               HerglotzMoebius{2.0}};
    const Complex taus[] = {{0.0, 0.0}, {1.0, 0.0}, {0.3, -0.4}};
    for (const auto& p : ps) {
        for (const auto& tau : taus) {
            const auto g = make_berkson_porta(tau, p);
            for (int i = 0; i < 10000; ++i) {
                const Complex z = halton_disc(i);
                const Complex denom = (z - tau) * (std::conj(tau) * z - 1.0);
                if (std::abs(denom) <= 1e-8) continue;
                const Complex recovered = eval_generator(g, z) / denom;
                CHECK(std::abs(recovered - eval_herglotz(p, z)) < 1e-12);
            }
        }
    }
}

TEST_CASE("herglotz positivity on the disc sample") {
    const HerglotzSpec ps[] = {HerglotzConstant{{0.0, 2.0}}, HerglotzReciprocal{},
                               HerglotzMoebius{0.7}};
    for (const auto& p : ps)
        for (int i = 0; i < 10000; ++i)
            CHECK(eval_herglotz(p, halton_disc(i)).real() >= -1e-10);
}

TEST_CASE("dirichlet evaluation and tail bounds") {
    const auto series = DirichletSeriesSpec::make({1.0, 0.0}, {{2, {1.0, 0.0}}}, -1.0);
    CHECK(std::abs(dirichlet_eval(series, {1.0, 0.0}).value - Complex{1.5, 0.0}) < 1e-15);
    CHECK(dirichlet_eval(series, {1.0, 0.0}).tail_bound == 0.0);

    // on the imaginary axis the n=2 term has modulus one and Re >= 0
    for (int k = 0; k < 64; ++k) {
        const double t = -8.0 + 0.25 * k;
        const auto v = dirichlet_eval(series, {0.0, t}).value;
        CHECK(std::abs(std::abs(v - Complex{1.0, 0.0}) - 1.0) < 1e-12);
        CHECK(v.real() >= -1e-12);
    }

    const auto empty = DirichletSeriesSpec::make({0.0, 0.0}, {});
    CHECK(std::abs(dirichlet_eval(empty, {5.0, 3.0}).value) == 0.0);

    CHECK_THROWS_AS(dirichlet_eval(DirichletSeriesSpec::make({1, 0}, {}), {-1.0, 0.0}),
                    std::domain_error);

    const auto decayed = DirichletSeriesSpec::make(
        {0.0, 0.0}, {{2, {1.0, 0.0}}}, 0.0, DirichletSeriesSpec::TailDecay{1.0, 2.0});
    const auto v = dirichlet_eval(decayed, {1.5, 0.0});
    // integral bound: sum_{n>2} n^-3.5 <= 2^-2.5 / 2.5
    CHECK(v.tail_bound == doctest::Approx(std::pow(2.0, -2.5) / 2.5));
    // declared decay too slow for convergence at this abscissa
    const auto slow = DirichletSeriesSpec::make(
        {0.0, 0.0}, {{2, {1.0, 0.0}}}, 0.0, DirichletSeriesSpec::TailDecay{1.0, 0.5});
    CHECK(std::isinf(dirichlet_eval(slow, {0.5, 0.0}).tail_bound));
}

TEST_CASE("dirichlet csv parsing") {
    const char* path = "test_coeffs.csv";
    {
        std::ofstream out(path);
        out << "# n, re, im\n0,1,0\n2,1\n3,0.25,-0.5\n";
    }
    const auto series = parse_dirichlet_csv(path);
    CHECK(series.constant == Complex{1.0, 0.0});
    REQUIRE(series.terms.size() == 2);
    CHECK(series.terms[0].n == 2);
    CHECK(series.terms[1].a == Complex{0.25, -0.5});
    std::remove(path);
    CHECK_THROWS(parse_dirichlet_csv("does_not_exist.csv"));
}

TEST_CASE("class G check: bounded series passes, negative constant fails") {
    HalfPlaneGrid grid{.re_max = 1.0, .re_depth = 8, .im_window = 64.0, .im_count = 257};
    const double offsets[] = {0.5, 0.1};

    const auto good = DirichletSeriesSpec::make({1.0, 0.0}, {{2, {1.0, 0.0}}});
    const auto good_report = check_class_G_generator(good, grid, offsets);
    CHECK(good_report.maps_into_closed_half_plane);
    CHECK(good_report.violations.empty());
    // sup on the offset half-plane approaches 1 + 2^{-eps}
    for (const auto& [eps, sup] : good_report.sup_rows) {
        CHECK(sup <= 1.0 + std::pow(2.0, -eps) + 1e-12);
        CHECK(sup > 1.0);
    }

    const auto bad = DirichletSeriesSpec::make({-1.0, 0.0}, {});
    const auto bad_report = check_class_G_generator(bad, grid, offsets);
    CHECK_FALSE(bad_report.maps_into_closed_half_plane);
    CHECK(bad_report.violations.size() == grid.points().size());
}

TEST_CASE("class G check: pure 2^-s series") {
    // modulus decays like 2^{-Re s}; the half-plane image condition holds on
    // narrow windows but genuinely fails once |Im| passes pi/(2 ln 2) ~ 2.27
    const auto series = DirichletSeriesSpec::make({0.0, 0.0}, {{2, {1.0, 0.0}}});
    const double offsets[] = {0.5, 0.25};

    HalfPlaneGrid narrow{.re_max = 1.0, .re_depth = 8, .im_window = 2.0, .im_count = 129};
    const auto ok = check_class_G_generator(series, narrow, offsets);
    CHECK(ok.maps_into_closed_half_plane);
    for (const auto& [eps, sup] : ok.sup_rows) {
        CHECK(sup <= std::pow(2.0, -eps));
        CHECK(sup >= 0.99 * std::pow(2.0, -eps));
    }

    HalfPlaneGrid wide{.re_max = 1.0, .re_depth = 8, .im_window = 8.0, .im_count = 257};
    const auto flagged = check_class_G_generator(series, wide, offsets);
    CHECK_FALSE(flagged.maps_into_closed_half_plane);
}

TEST_CASE("herglotz growth constants") {
    DiscGrid grid{.radial_depth = 14, .angular_count = 64};
    CHECK(herglotz_growth_constant(HerglotzConstant{{1.0, 0.0}}, grid) ==
          doctest::Approx(1.0));
    const double recip = herglotz_growth_constant(HerglotzReciprocal{}, grid);
    CHECK(recip >= 1.9);
    CHECK(recip <= 2.0);
    const double moebius = herglotz_growth_constant(HerglotzMoebius{1.0}, grid);
    CHECK(moebius >= 3.8);
    CHECK(moebius <= 4.0);

    // monotone under refinement (coarser angular grid can only shrink the max)
    DiscGrid coarse{.radial_depth = 14, .angular_count = 32};
    CHECK(herglotz_growth_constant(HerglotzReciprocal{}, coarse) <= recip + 1e-15);
    DiscGrid deeper{.radial_depth = 16, .angular_count = 64};
    CHECK(herglotz_growth_constant(HerglotzReciprocal{}, deeper) >= recip - 1e-15);
    // grids that stop short of radius 1 - 1e-4 are rejected
    CHECK_THROWS_AS(herglotz_growth_constant(HerglotzReciprocal{},
                                             DiscGrid{.radial_depth = 8}),
                    std::invalid_argument);
}

TEST_CASE("half-plane bound profiles") {
    HalfPlaneGrid grid{.re_max = 1.0, .re_depth = 12, .im_window = 50.0, .im_count = 201};
    std::vector<double> offsets;
    for (int k = 1; k <= 6; ++k) offsets.push_back(std::ldexp(1.0, -k));

    // constant generator: every offset sees |c|
    const auto flat = halfplane_bound_profile(make_half_plane_constant({0.5, 2.0}),
                                              offsets, grid);
    for (const auto& row : flat.rows)
        CHECK(row.sup == doctest::Approx(std::abs(Complex{0.5, 2.0})));
    CHECK_FALSE(flat.window_limited);

    // log pullback of 1/(1+z): grid sup must respect 2*M/eps with M = 2
    DiscGrid disc_grid{.radial_depth = 14, .angular_count = 64};
    const double m_hat = herglotz_growth_constant(HerglotzReciprocal{}, disc_grid);
    const auto pulled =
        halfplane_bound_profile(PullbackViaLog{HerglotzReciprocal{}}, offsets, grid);
    for (const auto& row : pulled.rows)
        CHECK(row.sup <= 2.0 * m_hat / row.offset + 1e-9);
    CHECK_FALSE(pulled.window_limited);

    // sqrt generator: the windowed sup grows with the window, flag set
    const auto sq = halfplane_bound_profile(HalfPlaneSqrt{}, offsets, grid);
    CHECK(sq.window_limited);
    HalfPlaneGrid wider = grid;
    wider.im_window = 200.0;
    const auto sq_wide = halfplane_bound_profile(HalfPlaneSqrt{}, offsets, wider);
    CHECK(sq_wide.rows[0].sup > 1.5 * sq.rows[0].sup);
}

TEST_CASE("half-plane catalog entries map into the closed half-plane") {
    // Denjoy-Wolff at infinity requires Re H >= 0 throughout the half-plane
    const char* ids[] = {"hp:const:1", "hp:sqrt", "hp:dirichlet:c0=1,a2=1",
                         "hp:cayley:recip", "hp:log:recip"};
    for (const char* id : ids) {
        const auto g = parse_generator_id(id);
        for (int i = 0; i < 10000; ++i) {
            const Complex z = halton_disc(i);
            const Complex w = (1.0 + z) / (1.0 - z);  // covers the half-plane
            CHECK(eval_generator(g, w).real() >= -1e-10);
        }
    }
}

TEST_CASE("generator id parsing") {
    CHECK(std::abs(eval_generator(parse_generator_id("bp:tau=0,p=const:1"), {0.5, 0.0}) -
                   Complex{-0.5, 0.0}) < 1e-15);
    CHECK(std::abs(eval_generator(parse_generator_id("hp:const:1+2i"), {1.0, 1.0}) -
                   Complex{1.0, 2.0}) < 1e-15);
    CHECK(std::abs(eval_generator(parse_generator_id("hp:dirichlet:c0=1,a2=1"),
                                  {1.0, 0.0}) -
                   Complex{1.5, 0.0}) < 1e-15);
    // cayley pullback of 1/(1+z) collapses to 1 + 1/w
    const auto g = parse_generator_id("hp:cayley:recip");
    for (double x : {0.5, 1.0, 3.0})
        CHECK(std::abs(eval_generator(g, {x, 0.3}) - (1.0 + 1.0 / Complex{x, 0.3})) <
              1e-13);
    CHECK_THROWS_AS(parse_generator_id("nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(parse_generator_id("bp:tau=2,p=const:1"), std::invalid_argument);
}

TEST_CASE("complex literal parsing") {
    CHECK(parse_complex("1") == Complex{1.0, 0.0});
    CHECK(parse_complex("-0.5") == Complex{-0.5, 0.0});
    CHECK(parse_complex("i") == Complex{0.0, 1.0});
    CHECK(parse_complex("-i") == Complex{0.0, -1.0});
    CHECK(parse_complex("1+2i") == Complex{1.0, 2.0});
    CHECK(parse_complex("1.5-0.25i") == Complex{1.5, -0.25});
    CHECK(parse_complex("2e-3i") == Complex{0.0, 2e-3});
    CHECK(parse_complex("1e2+1e-2i") == Complex{100.0, 0.01});
    CHECK_THROWS(parse_complex(""));
    CHECK_THROWS(parse_complex("foo"));
}

TEST_CASE("catalog entries resolve and agree with their ids") {
    for (const auto& e : generator_catalog()) {
        const auto parsed = parse_generator_id(e.id);
        const Complex probe =
            std::holds_alternative<BerksonPorta>(e.spec) ? Complex{0.3, 0.2}
                                                         : Complex{1.2, 0.4};
        CHECK(std::abs(eval_generator(parsed, probe) - eval_generator(e.spec, probe)) <
              1e-14);
    }
    CHECK(find_catalog_entry("hp:sqrt") != nullptr);
    CHECK(find_catalog_entry("hp:nope") == nullptr);
}
