#include "semiflow/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "semiflow/catalog.hpp"
#include "semiflow/curves.hpp"
#include "semiflow/report.hpp"
#include "semiflow/rng.hpp"

namespace semiflow::suites {

namespace {

void add_check(Report& report, const std::string& name, bool pass,
               const std::string& detail) {
    report.checks.push_back({name, pass, detail});
}

void write_checks(JsonWriter& w, const Report& report) {
    w.key("checks").begin_array();
    for (const auto& c : report.checks) {
        w.begin_object();
        w.key("name").value(c.name);
        w.key("pass").value(c.pass);
        w.key("detail").value(c.detail);
        w.end_object();
    }
    w.end_array();
    w.key("pass").value(report.pass);
}

void finalize(Report& report, JsonWriter& w) {
    report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                              [](const Check& c) { return c.pass; });
    write_checks(w, report);
    w.end_object();
    report.payload = w.str();
}

JsonWriter open_payload(const std::string& suite, const Options& opts) {
    JsonWriter w;
    w.begin_object();
    w.key("suite").value(suite);
    w.key("seed").value(opts.seed);
    w.key("quick").value(opts.quick);
    return w;
}

void write_rate_rows(JsonWriter& w, const RateReport& r) {
    w.key("rows").begin_array();
    for (const auto& row : r.rows) {
        w.begin_object();
        w.key("t").value(row.t);
        w.key("sup").value(row.sup);
        w.key("argmax").value_complex(row.argmax.real(), row.argmax.imag());
        w.end_object();
    }
    w.end_array();
    w.key("fit").begin_object();
    w.key("scale").value(r.fit.scale);
    w.key("exponent").value(r.fit.exponent);
    w.key("rms_residual").value(r.fit.rms_residual);
    w.key("sqrt_scale").value(r.sqrt_scale);
    w.end_object();
    w.key("window").begin_object();
    w.key("im_window").value(r.im_window);
    w.key("ladder_depth").value(r.ladder_depth);
    w.key("transverse_count").value(r.transverse_count);
    w.end_object();
}

std::vector<double> dyadic_times(int j_min, int j_max) {
    std::vector<double> t;
    for (int j = j_min; j <= j_max; ++j) t.push_back(std::ldexp(1.0, -j));
    return t;
}

// --------------------------------------------------------------------- thm1.1

Report run_thm11(const Options& opts) {
    Report report;
    report.suite = "thm1.1";
    report.seed = opts.seed;
    const std::string gen_id =
        opts.generator_id.empty() ? "bp:tau=1,p=recip" : opts.generator_id;
    const GeneratorSpec g = parse_generator_id(gen_id);

    SupSamplerConfig cfg;
    cfg.domain = UnitDisc{};
    cfg.ladder_depth = opts.quick ? 10 : 14;
    cfg.transverse_count = opts.quick ? 32 : 64;
    const auto t_seq = dyadic_times(6, opts.quick ? 12 : 18);
    const RateReport rr = verify_sqrt_theorem(g, t_seq, cfg, gen_id);

    add_check(report, "rows_within_1.1*C*sqrt(t)", rr.rows_within_sqrt_bound,
              "sqrt-law scale " + format_g17(rr.sqrt_scale));
    add_check(report, "exponent_in_[0.45,0.55]",
              rr.fit.exponent >= 0.45 && rr.fit.exponent <= 0.55,
              "fitted exponent " + format_g17(rr.fit.exponent));

    JsonWriter w = open_payload(report.suite, opts);
    w.key("generator").value(gen_id);
    write_rate_rows(w, rr);
    finalize(report, w);
    return report;
}

// --------------------------------------------------------------------- thm4.7

Report run_thm47(const Options& opts) {
    Report report;
    report.suite = "thm4.7";
    report.seed = opts.seed;
    const std::string gen_id =
        opts.generator_id.empty() ? "hp:dirichlet:c0=1,a2=1" : opts.generator_id;
    const GeneratorSpec g = parse_generator_id(gen_id);
    const auto* dirichlet = std::get_if<HalfPlaneDirichlet>(&g);
    if (!dirichlet)
        throw std::invalid_argument("thm4.7 expects a dirichlet generator id");

    // |H| <= |c0| + sum |a_n| on the right half-plane
    double m_bound = std::abs(dirichlet->series.constant);
    for (const auto& term : dirichlet->series.terms) m_bound += std::abs(term.a);

    HalfPlaneGrid class_grid{.re_max = 1.0, .re_depth = 10, .im_window = 64.0,
                             .im_count = 257};
    const double offsets[] = {0.5, 0.1, 0.01};
    const auto class_report = check_class_G_generator(dirichlet->series, class_grid,
                                                      offsets);
    add_check(report, "maps_halfplane_into_closure",
              class_report.maps_into_closed_half_plane,
              std::to_string(class_report.violations.size()) + " grid violations");

    SupSamplerConfig cfg;
    cfg.domain = HalfPlane{0.0};
    cfg.ladder_depth = opts.quick ? 8 : 10;
    cfg.transverse_count = opts.quick ? 257 : 2049;
    cfg.im_window = 1e4;
    const auto t_seq = dyadic_times(7, opts.quick ? 10 : 13);

    std::vector<SupRow> rows;
    for (double t : t_seq) rows.push_back(sup_deviation(g, t, cfg));

    bool linear_bound = true, monotone = true;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (!(rows[i].sup <= 1.05 * m_bound * rows[i].t)) linear_bound = false;
        if (i > 0 && !(rows[i].sup <= rows[i - 1].sup)) monotone = false;
    }
    add_check(report, "sup_le_1.05*M*t", linear_bound,
              "M bound " + format_g17(m_bound));
    add_check(report, "sup_decreases_with_t", monotone,
              "smallest sup " + format_g17(rows.back().sup));

    JsonWriter w = open_payload(report.suite, opts);
    w.key("generator").value(gen_id);
    w.key("m_bound").value(m_bound);
    w.key("rows").begin_array();
    for (const auto& r : rows) {
        w.begin_object();
        w.key("t").value(r.t);
        w.key("sup").value(r.sup);
        w.key("argmax").value_complex(r.argmax.real(), r.argmax.imag());
        w.end_object();
    }
    w.end_array();
    finalize(report, w);
    return report;
}

// --------------------------------------------------------------------- thm5.1

Report run_thm51(const Options& opts) {
    Report report;
    report.suite = "thm5.1";
    report.seed = opts.seed;
    const std::string gen_id =
        opts.generator_id.empty() ? "hp:cayley:recip" : opts.generator_id;
    const GeneratorSpec g = parse_generator_id(gen_id);

    // K/eps growth profile on shrinking half-planes
    std::vector<double> offsets;
    for (int k = 1; k <= 8; ++k) offsets.push_back(std::ldexp(1.0, -k));
    HalfPlaneGrid grid{.re_max = 1.0, .re_depth = 12, .im_window = 50.0,
                       .im_count = 201};
    const BoundProfile profile = halfplane_bound_profile(g, offsets, grid);
    add_check(report, "k_over_eps_profile_not_window_limited",
              !profile.window_limited, "K_hat " + format_g17(profile.k_hat));

    // contrast entry: the sqrt generator's profile must be window-limited
    const BoundProfile sqrt_profile =
        halfplane_bound_profile(HalfPlaneSqrt{}, offsets, grid);
    add_check(report, "sqrt_profile_window_limited", sqrt_profile.window_limited,
              "K_hat " + format_g17(sqrt_profile.k_hat));

    SupSamplerConfig cfg;
    cfg.domain = HalfPlane{0.0};
    cfg.ladder_depth = 14;
    cfg.transverse_count = opts.quick ? 17 : 33;
    cfg.im_window = 10.0;
    std::vector<double> t_seq;
    for (int j = opts.quick ? 8 : 6; j <= 20; j += 2)
        t_seq.push_back(std::ldexp(1.0, -j));  // spans [1e-6, 1.6e-2]

    std::vector<SupRow> rows;
    for (double t : t_seq) rows.push_back(sup_deviation(g, t, cfg));
    const PowerFit fit = rate_fit(rows);
    const double sqrt_scale = pinned_sqrt_scale(rows);
    add_check(report, "exponent_ge_0.45", fit.exponent >= 0.45,
              "fitted exponent " + format_g17(fit.exponent));
    bool sqrt_bound = true;
    double largest_t_ok = 0.0;
    for (const auto& r : rows) {
        const double envelope =
            1.1 * std::max(fit.scale, sqrt_scale) * std::sqrt(r.t);
        if (r.sup <= envelope)
            largest_t_ok = std::max(largest_t_ok, r.t);
        else
            sqrt_bound = false;
    }
    add_check(report, "rows_within_1.1*A*sqrt(t)", sqrt_bound,
              "largest t holding the bound " + format_g17(largest_t_ok));

    JsonWriter w = open_payload(report.suite, opts);
    w.key("generator").value(gen_id);
    w.key("profile").begin_array();
    for (const auto& row : profile.rows) {
        w.begin_object();
        w.key("offset").value(row.offset);
        w.key("sup").value(row.sup);
        w.key("window_edge").value(row.window_edge);
        w.end_object();
    }
    w.end_array();
    w.key("k_hat").value(profile.k_hat);
    w.key("rows").begin_array();
    for (const auto& r : rows) {
        w.begin_object();
        w.key("t").value(r.t);
        w.key("sup").value(r.sup);
        w.end_object();
    }
    w.end_array();
    w.key("fit").begin_object();
    w.key("scale").value(fit.scale);
    w.key("exponent").value(fit.exponent);
    w.key("rms_residual").value(fit.rms_residual);
    w.key("sqrt_scale").value(sqrt_scale);
    w.end_object();
    finalize(report, w);
    return report;
}

// ---------------------------------------------------------------------- ex4.8

Report run_ex48(const Options& opts) {
    Report report;
    report.suite = "ex4.8";
    report.seed = opts.seed;
    const double t_seq[] = {0.1};
    const double heights[] = {1e2, 1e3, 1e4};
    IntegratorConfig cfg;
    const auto rows = nonuniform_witness(t_seq, heights, cfg);

    bool agree = true;
    for (const auto& r : rows)
        if (!(std::abs(r.closed_form - r.advanced) <= 1e-6 * (1.0 + r.height)))
            agree = false;
    add_check(report, "closed_form_agrees_with_integrator", agree, "tol 1e-6*(1+R)");

    const double dev_small = rows.front().closed_form;
    const double dev_large = rows.back().closed_form;
    add_check(report, "deviation_at_R=100_near_1",
              std::abs(dev_small - 1.0) <= 0.01,
              "measured " + format_g17(dev_small));
    add_check(report, "deviation_at_R=1e4_near_10",
              std::abs(dev_large - 10.0) <= 0.1,
              "measured " + format_g17(dev_large));
    bool growing = true;
    for (size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].closed_form > rows[i - 1].closed_form)) growing = false;
    add_check(report, "deviation_grows_with_R", growing,
              "no uniform convergence on any offset half-plane");

    JsonWriter w = open_payload(report.suite, opts);
    w.key("rows").begin_array();
    for (const auto& r : rows) {
        w.begin_object();
        w.key("t").value(r.t);
        w.key("height").value(r.height);
        w.key("closed_form").value(r.closed_form);
        w.key("advanced").value(r.advanced);
        w.end_object();
    }
    w.end_array();
    finalize(report, w);
    return report;
}

// ---------------------------------------------------------------------- ex5.4

Report run_ex54(const Options& opts) {
    Report report;
    report.suite = "ex5.4";
    report.seed = opts.seed;
    const GeneratorSpec g = parse_generator_id("bp:tau=1,p=recip");
    IntegratorConfig icfg;

    bool lower_bound_ok = true, equality_ok = true, flow_majorizes = true;
    std::vector<std::array<double, 4>> sharp_rows;  // t, bound, sqrt_t, equality gap
    for (int k = 3; k <= 8; ++k) {
        const double t = std::pow(4.0, -k);
        const double sqrt_t = std::sqrt(t);
        const double x_star = 0.5 * sqrt_t - 1.0;
        std::vector<double> grid;
        for (int i = 0; i <= 22; ++i) grid.push_back(-0.95 + 0.02 * i);
        grid.push_back(x_star);
        const double bound = sharpness_lower_bound(t, grid);
        if (!(bound >= sqrt_t - 1e-12)) lower_bound_ok = false;
        const double gap =
            std::abs((sharpness_solution(t, x_star) - x_star) - sqrt_t);
        if (!(gap <= 1e-12)) equality_ok = false;
        for (double x : grid) {
            const Complex flowed = advance(g, Complex{x, 0.0}, t, icfg);
            if (!(flowed.real() >= sharpness_solution(t, x) - 1e-6))
                flow_majorizes = false;
        }
        sharp_rows.push_back({t, bound, sqrt_t, gap});
    }
    add_check(report, "lower_bound_ge_sqrt_t", lower_bound_ok, "grid incl. sqrt(t)/2-1");
    add_check(report, "equality_at_x_star_to_1e-12", equality_ok, "");
    add_check(report, "flow_majorizes_comparison_solution", flow_majorizes,
              "tolerance 1e-6");

    // rate fit for the same generator
    SupSamplerConfig cfg;
    cfg.domain = UnitDisc{};
    cfg.ladder_depth = opts.quick ? 10 : 12;
    cfg.transverse_count = 32;
    const auto t_seq = dyadic_times(6, opts.quick ? 11 : 14);
    const RateReport rr = verify_sqrt_theorem(g, t_seq, cfg, "bp:tau=1,p=recip");
    add_check(report, "exponent_in_[0.45,0.55]",
              rr.fit.exponent >= 0.45 && rr.fit.exponent <= 0.55,
              "fitted exponent " + format_g17(rr.fit.exponent));

    JsonWriter w = open_payload(report.suite, opts);
    w.key("sharpness").begin_array();
    for (const auto& row : sharp_rows) {
        w.begin_object();
        w.key("t").value(row[0]);
        w.key("lower_bound").value(row[1]);
        w.key("sqrt_t").value(row[2]);
        w.key("equality_gap").value(row[3]);
        w.end_object();
    }
    w.end_array();
    write_rate_rows(w, rr);
    finalize(report, w);
    return report;
}

// ----------------------------------------------------------------- lavrentiev

Report run_lavrentiev(const Options& opts) {
    Report report;
    report.suite = "lavrentiev";
    report.seed = opts.seed;
    LavrentievConfig cfg;
    cfg.a = opts.a;
    cfg.walks = opts.quick ? std::min<int64_t>(opts.walks, 20000) : opts.walks;
    cfg.seed = opts.seed;
    cfg.domain_count = opts.quick ? 5 : 20;
    const LavrentievResult result = lavrentiev_experiment(cfg);

    add_check(report, "small_subsets_below_1/8", result.small_subsets_pass,
              "threshold fraction " + format_g17(result.threshold_fraction));
    add_check(report, "rho_hat_ge_0.02", result.rho_hat >= 0.02,
              "rho_hat " + format_g17(result.rho_hat));

    JsonWriter w = open_payload(report.suite, opts);
    w.key("a").value(cfg.a);
    w.key("walks").value(static_cast<int64_t>(cfg.walks));
    w.key("domain_count").value(cfg.domain_count);
    w.key("rho_hat").value(result.rho_hat);
    w.key("rows").begin_array();
    for (const auto& r : result.rows) {
        w.begin_object();
        w.key("domain").value(r.domain_index);
        w.key("ell").value(r.ell);
        w.key("omega").value(r.omega);
        w.key("stderr").value(r.stderr_);
        w.end_object();
    }
    w.end_array();
    finalize(report, w);
    return report;
}

// ------------------------------------------------------------------- envelope

Report run_envelope(const Options& opts) {
    Report report;
    report.suite = "envelope";
    report.seed = opts.seed;
    const int cases = opts.quick ? 200 : 1000;

    // suffix-min oracle comparison
    bool oracle_ok = true, shape_ok = true;
    for (int c = 0; c < cases; ++c) {
        RngStream rng(opts.seed, 0xE17E0000ULL + c);
        const int n = 2 + static_cast<int>(rng.next_unit() * 199);
        std::vector<EnvelopeSample> in(n);
        double x = 0.0;
        for (int i = 0; i < n; ++i) {
            x += rng.next_unit();
            in[i] = {x, 10.0 * (rng.next_unit() - 0.5)};
        }
        const auto out = monotone_envelope(in);
        for (int i = 0; i < n; ++i) {
            double m = in[i].value;  // O(n^2) oracle
            for (int j = i; j < n; ++j) m = std::min(m, in[j].value);
            if (out[i].value != m) oracle_ok = false;
            if (out[i].value > in[i].value) shape_ok = false;
            if (i > 0 && out[i].value < out[i - 1].value) shape_ok = false;
        }
        const auto twice = monotone_envelope(out);
        for (int i = 0; i < n; ++i)
            if (twice[i].value != out[i].value) shape_ok = false;
    }
    add_check(report, "matches_suffix_min_oracle", oracle_ok,
              std::to_string(cases) + " random inputs");
    add_check(report, "monotone_pointwise_below_idempotent", shape_ok, "");

    // Lipschitz transfer
    bool lipschitz_ok = true;
    for (int c = 0; c < cases; ++c) {
        RngStream rng(opts.seed, 0x11B50000ULL + c);
        const int n = 2 + static_cast<int>(rng.next_unit() * 62);
        const double lip = 10.0 * rng.next_unit() + 0.1;
        std::vector<EnvelopeSample> in(n);
        double x = 0.0, f = 5.0 * rng.next_unit();
        for (int i = 0; i < n; ++i) {
            const double dx = 0.01 + rng.next_unit();
            x += dx;
            f += lip * dx * (2.0 * rng.next_unit() - 1.0);
            in[i] = {x, f};
        }
        const auto out = monotone_envelope(in);
        for (int i = 0; i < n && lipschitz_ok; ++i)
            for (int j = i + 1; j < n; ++j)
                if (std::abs(out[j].value - out[i].value) >
                    lip * (out[j].x - out[i].x) + 1e-12)
                    lipschitz_ok = false;
    }
    add_check(report, "lipschitz_constant_transfers", lipschitz_ok,
              std::to_string(cases) + " random lipschitz inputs");

    // proof-domain boundary length
    bool lengths_ok = true;
    const int domains = opts.quick ? 10 : 50;
    double worst_ratio = 0.0;
    for (int d = 0; d < domains; ++d) {
        const CutSquare cs = make_cut_square({0.0, 0.0}, opts.a, opts.seed,
                                             0xD0000000ULL + d);
        const double ratio = cs.domain.boundary_length() / (4.0 * opts.a);
        worst_ratio = std::max(worst_ratio, ratio);
        if (!(ratio <= 1.0 + 1e-9)) lengths_ok = false;
    }
    add_check(report, "proof_domain_boundary_le_4a", lengths_ok,
              "worst length/(4a) " + format_g17(worst_ratio));

    JsonWriter w = open_payload(report.suite, opts);
    w.key("cases").value(cases);
    w.key("domains").value(domains);
    w.key("worst_boundary_ratio").value(worst_ratio);
    finalize(report, w);
    return report;
}

// -------------------------------------------------------------- subordination

Report run_subordination(const Options& opts) {
    Report report;
    report.suite = "subordination";
    report.seed = opts.seed;
    const double a = opts.a;
    const int64_t walks = opts.quick ? std::min<int64_t>(opts.walks, 20000) : opts.walks;
    const JordanDomain square = square_boundary_domain({0.0, 0.0}, a);
    // shared subset: the left edge of the square (segment 3 of the CCW ring)
    const BoundarySubset left_edge = BoundarySubset::from_arcs(square, {{3, 0.0, 1.0}});

    int pass_count = 0, total = 0;
    std::vector<std::array<double, 4>> rows;  // inner, inner_se, outer, outer_se
    const auto record = [&](const SubordinationResult& r) {
        ++total;
        if (r.pass) ++pass_count;
        rows.push_back({r.inner.value, r.inner.stderr_, r.outer.value, r.outer.stderr_});
    };

    // identical domains: equality within noise
    record(subordination_check(square, square, {0.5 * a, 0.5 * a}, left_edge, walks,
                               opts.seed));

    // mid-cut square: right half, w at its center; the cut must carry at
    // least a quarter of the measure
    const JordanDomain half = JordanDomain::from_vertices(
        {{0.5 * a, 0.0}, {a, 0.0}, {a, a}, {0.5 * a, a}});
    const auto mid = subordination_check(half, square, {0.75 * a, 0.5 * a}, left_edge,
                                         walks, opts.seed + 1);
    record(mid);
    add_check(report, "mid_cut_measure_ge_quarter",
              mid.inner.value + 3.0 * mid.inner.stderr_ >= 0.25,
              "inner estimate " + format_g17(mid.inner.value));

    // inscribed disc
    const JordanDomain disc =
        regular_disc_polygon(96, {0.5 * a, 0.5 * a}, 0.45 * a);
    record(subordination_check(disc, square, {0.5 * a, 0.5 * a}, left_edge, walks,
                               opts.seed + 2));

    // cut squares
    const int extra = opts.quick ? 3 : 7;
    for (int d = 0; d < extra; ++d) {
        const CutSquare cs = make_cut_square({0.0, 0.0}, a, opts.seed,
                                             0x5B000000ULL + d);
        record(subordination_check(cs.domain, square, {0.5 * a, 0.5 * a}, left_edge,
                                   walks, opts.seed + 10 + d));
    }

    add_check(report, "all_instances_pass", pass_count == total,
              std::to_string(pass_count) + "/" + std::to_string(total));

    JsonWriter w = open_payload(report.suite, opts);
    w.key("instances").begin_array();
    for (const auto& r : rows) {
        w.begin_object();
        w.key("inner").value(r[0]);
        w.key("inner_stderr").value(r[1]);
        w.key("outer").value(r[2]);
        w.key("outer_stderr").value(r[3]);
        w.end_object();
    }
    w.end_array();
    finalize(report, w);
    return report;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "thm1.1", "thm4.7", "thm5.1",   "ex4.8",
        "ex5.4",  "lavrentiev", "envelope", "subordination"};
    return names;
}

bool is_suite(const std::string& name) {
    const auto& names = suite_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

Report run(const std::string& name, const Options& opts) {
    if (name == "thm1.1") return run_thm11(opts);
    if (name == "thm4.7") return run_thm47(opts);
    if (name == "thm5.1") return run_thm51(opts);
    if (name == "ex4.8") return run_ex48(opts);
    if (name == "ex5.4") return run_ex54(opts);
    if (name == "lavrentiev") return run_lavrentiev(opts);
    if (name == "envelope") return run_envelope(opts);
    if (name == "subordination") return run_subordination(opts);
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace semiflow::suites
