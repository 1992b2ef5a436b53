// semiflow: generator catalog, flow runs, rate suites, harmonic-measure
// experiments, and one-shot verification pipelines with machine-readable
// output.
//
// Exit codes: 0 ok, 1 suite failed, 2 numerical failure, 3 unknown id,
// 64 usage/config error. SEMIFLOW_THREADS caps worker parallelism;
// SEMIFLOW_SIMD overrides the distance-kernel variant.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "semiflow/catalog.hpp"
#include "semiflow/curves.hpp"
#include "semiflow/report.hpp"
#include "semiflow/rng.hpp"
#include "semiflow/suites.hpp"

namespace {

using namespace semiflow;

constexpr int kExitOk = 0;
constexpr int kExitSuiteFailed = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitUnknownId = 3;
constexpr int kExitUsage = 64;

class UnknownId : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

GeneratorSpec resolve_generator(const std::string& id) {
    try {
        return parse_generator_id(id);
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        if (what.rfind("unknown generator id", 0) == 0) throw UnknownId(what);
        throw;
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output path: " + path);
    out << content;
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content;
    else
        write_file(path, content);
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// The payload itself is deterministic; the timestamp lives in one header
// line so reruns differ in that line only.
std::string with_header(const std::string& payload) {
    const auto brace = payload.find("{\n");
    if (brace != 0) return payload;
    return "{\n  \"generated_at\": \"" + timestamp_utc() + "\"," + payload.substr(1);
}

int cmd_catalog() {
    std::printf("%-28s %-16s %s\n", "id", "oracle", "description");
    for (const auto& e : generator_catalog()) {
        std::printf("%-28s %-16s %s\n", e.id.c_str(),
                    e.oracle ? to_string(*e.oracle).c_str() : "-",
                    e.description.c_str());
    }
    std::printf("closed forms: exp_contraction translation sqrt_flow parabolic_disc\n");
    std::printf("suites:");
    for (const auto& s : suites::suite_names()) std::printf(" %s", s.c_str());
    std::printf("\n");
    return kExitOk;
}

struct FlowArgs {
    std::string gen, z_text, out;
    double t = 1.0;
    IntegratorConfig cfg;
};

int cmd_flow(const FlowArgs& args) {
    const GeneratorSpec g = resolve_generator(args.gen);
    const Complex z = parse_complex(args.z_text);
    const Trajectory traj = integrate_trajectory(g, z, args.t, args.cfg);
    emit(args.out, trajectory_csv(traj, args.gen, args.cfg));
    const Complex final_z = traj.nodes.back().z;
    std::fprintf(stderr, "flow %s from %s for t=%s -> %s\n", args.gen.c_str(),
                 format_complex(z).c_str(), format_g17(args.t).c_str(),
                 format_complex(final_z).c_str());
    return kExitOk;
}

struct RateArgs {
    std::string gen, out, plot_out;
    double t_min = std::ldexp(1.0, -20);
    double t_max = std::ldexp(1.0, -4);
    int t_steps = 17;
    double window = 1e4;
    int depth = 12;
    int transverse = 64;
};

int cmd_rate(const RateArgs& args) {
    const GeneratorSpec g = resolve_generator(args.gen);
    if (!(args.t_min > 0.0) || !(args.t_max > args.t_min) || args.t_steps < 5)
        throw std::invalid_argument("rate needs 0 < t-min < t-max and >= 5 steps");
    std::vector<double> t_seq(args.t_steps);
    for (int i = 0; i < args.t_steps; ++i) {
        const double f = static_cast<double>(i) / (args.t_steps - 1);
        t_seq[i] = std::exp(std::log(args.t_max) +
                            f * (std::log(args.t_min) - std::log(args.t_max)));
    }
    SupSamplerConfig cfg;
    cfg.domain = domain_of(g);
    cfg.ladder_depth = args.depth;
    cfg.transverse_count = args.transverse;
    cfg.im_window = args.window;
    const RateReport report = verify_sqrt_theorem(g, t_seq, cfg, args.gen);

    JsonWriter w;
    w.begin_object();
    w.key("generator").value(args.gen);
    w.key("window").begin_object();
    w.key("im_window").value(report.im_window);
    w.key("ladder_depth").value(report.ladder_depth);
    w.key("transverse_count").value(report.transverse_count);
    w.end_object();
    w.key("rows").begin_array();
    for (const auto& r : report.rows) {
        w.begin_object();
        w.key("t").value(r.t);
        w.key("sup").value(r.sup);
        w.key("argmax").value_complex(r.argmax.real(), r.argmax.imag());
        w.end_object();
    }
    w.end_array();
    w.key("fit").begin_object();
    w.key("scale").value(report.fit.scale);
    w.key("exponent").value(report.fit.exponent);
    w.key("rms_residual").value(report.fit.rms_residual);
    w.end_object();
    w.key("pass").value(report.pass);
    w.end_object();
    emit(args.out, with_header(w.str()));
    if (!args.plot_out.empty()) write_file(args.plot_out, rate_plot_data(report.rows));
    return kExitOk;
}

struct HarmonicArgs {
    std::string domain_file, out;
    std::string w_text = "0";
    int disc_sides = 0;
    double square_side = 0.0;
    std::vector<std::string> arcs;  // "s0:s1" arclength windows
    int64_t walks = 100000;
    uint64_t seed = 7;
};

// Domain JSON: {"vertices": [[re, im], ...],
//               "subsets": [{"arclength": [s0, s1]} | {"arcs": [[seg,u0,u1],...]}]}
int cmd_harmonic(const HarmonicArgs& args) {
    std::optional<JordanDomain> domain;
    std::vector<BoundarySubset> subsets;
    if (!args.domain_file.empty()) {
        std::ifstream in(args.domain_file);
        if (!in) throw std::invalid_argument("cannot open " + args.domain_file);
        nlohmann::json doc = nlohmann::json::parse(in);
        std::vector<Complex> vertices;
        for (const auto& v : doc.at("vertices"))
            vertices.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
        // normalize orientation for user input
        double area2 = 0.0;
        for (size_t i = 0; i + 1 < vertices.size(); ++i)
            area2 += vertices[i].real() * vertices[i + 1].imag() -
                     vertices[i + 1].real() * vertices[i].imag();
        if (area2 < 0.0) std::reverse(vertices.begin(), vertices.end());
        domain = JordanDomain::from_vertices(std::move(vertices));
        if (doc.contains("subsets")) {
            for (const auto& s : doc["subsets"]) {
                if (s.contains("arclength")) {
                    subsets.push_back(BoundarySubset::from_arclength(
                        *domain, s["arclength"].at(0).get<double>(),
                        s["arclength"].at(1).get<double>()));
                } else {
                    std::vector<BoundarySubset::Arc> arcs;
                    for (const auto& a : s.at("arcs"))
                        arcs.push_back({a.at(0).get<uint32_t>(), a.at(1).get<double>(),
                                        a.at(2).get<double>()});
                    subsets.push_back(BoundarySubset::from_arcs(*domain, std::move(arcs)));
                }
            }
        }
    } else if (args.disc_sides > 0) {
        domain = regular_disc_polygon(args.disc_sides);
    } else if (args.square_side > 0.0) {
        domain = square_boundary_domain({0.0, 0.0}, args.square_side);
    } else {
        throw std::invalid_argument("harmonic needs --domain, --disc or --square");
    }
    for (const auto& spec : args.arcs) {
        const auto colon = spec.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("arc spec must be s0:s1, got " + spec);
        subsets.push_back(BoundarySubset::from_arclength(
            *domain, std::stod(spec.substr(0, colon)), std::stod(spec.substr(colon + 1))));
    }
    if (subsets.empty()) subsets.push_back(BoundarySubset::full_boundary(*domain));

    const Complex w = parse_complex(args.w_text);
    const auto estimates =
        harmonic_measure_multi(*domain, w, subsets, args.walks, args.seed);
    std::string csv = "ell_A,omega,stderr,N,seed\n";
    for (size_t i = 0; i < subsets.size(); ++i) {
        csv += format_g17(subsets[i].measure()) + "," +
               format_g17(estimates[i].value) + "," +
               format_g17(estimates[i].stderr_) + "," +
               std::to_string(estimates[i].walks) + "," +
               std::to_string(estimates[i].seed) + "\n";
    }
    emit(args.out, csv);
    return kExitOk;
}

struct VerifyArgs {
    std::string suite, out;
    suites::Options opts;
};

int cmd_verify(const VerifyArgs& args) {
    if (!suites::is_suite(args.suite)) throw UnknownId("unknown suite: " + args.suite);
    const suites::Report report = suites::run(args.suite, args.opts);
    emit(args.out, with_header(report.payload));
    for (const auto& c : report.checks)
        std::fprintf(stderr, "[%s] %s %s\n", c.pass ? "pass" : "FAIL", c.name.c_str(),
                     c.detail.c_str());
    return report.pass ? kExitOk : kExitSuiteFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"holomorphic semigroup flows, convergence rates, and harmonic measure"};
    app.require_subcommand(1);
    app.set_config("--config");

    auto* catalog_cmd = app.add_subcommand("catalog", "list generators and suites");

    FlowArgs flow_args;
    auto* flow_cmd = app.add_subcommand("flow", "integrate one flow trajectory");
    flow_cmd->add_option("--gen", flow_args.gen, "generator id")->required();
    flow_cmd->add_option("--z", flow_args.z_text, "start point")->required();
    flow_cmd->add_option("--t", flow_args.t, "flow time")->required();
    flow_cmd->add_option("--out", flow_args.out, "trajectory CSV path (default stdout)");
    flow_cmd->add_option("--rel-tol", flow_args.cfg.rel_tol, "relative tolerance");
    flow_cmd->add_option("--abs-tol", flow_args.cfg.abs_tol, "absolute tolerance");
    flow_cmd->add_option("--max-steps", flow_args.cfg.max_steps, "step budget");

    RateArgs rate_args;
    auto* rate_cmd = app.add_subcommand("rate", "sup-deviation rows and power-law fit");
    rate_cmd->add_option("--gen", rate_args.gen, "generator id")->required();
    rate_cmd->add_option("--t-min", rate_args.t_min, "smallest t");
    rate_cmd->add_option("--t-max", rate_args.t_max, "largest t");
    rate_cmd->add_option("--t-steps", rate_args.t_steps, "number of t values");
    rate_cmd->add_option("--window-R", rate_args.window, "half-plane imaginary window");
    rate_cmd->add_option("--depth", rate_args.depth, "lattice ladder depth");
    rate_cmd->add_option("--transverse", rate_args.transverse,
                         "angular / imaginary sample count");
    rate_cmd->add_option("--out", rate_args.out, "report JSON path (default stdout)");
    rate_cmd->add_option("--emit-plot-data", rate_args.plot_out,
                         "write (log t, log sup) pairs to this path");

    HarmonicArgs hm_args;
    auto* hm_cmd = app.add_subcommand("harmonic", "walk-on-spheres harmonic measure");
    hm_cmd->add_option("--domain", hm_args.domain_file, "domain JSON document");
    hm_cmd->add_option("--disc", hm_args.disc_sides, "regular disc polygon, N sides");
    hm_cmd->add_option("--square", hm_args.square_side, "unit-corner square, side a");
    hm_cmd->add_option("--w", hm_args.w_text, "interior estimation point");
    hm_cmd->add_option("--arc", hm_args.arcs, "boundary window s0:s1 (repeatable)");
    hm_cmd->add_option("--N", hm_args.walks, "walk count");
    hm_cmd->add_option("--seed", hm_args.seed, "random seed");
    hm_cmd->add_option("--out", hm_args.out, "CSV path (default stdout)");

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("suite", verify_args.suite, "suite name")->required();
    verify_cmd->add_option("--gen", verify_args.opts.generator_id, "generator override");
    verify_cmd->add_option("--N", verify_args.opts.walks, "walk count");
    verify_cmd->add_option("--seed", verify_args.opts.seed, "random seed");
    verify_cmd->add_option("--a", verify_args.opts.a, "square side for domain families");
    verify_cmd->add_flag("--quick", verify_args.opts.quick, "reduced lattices and walks");
    verify_cmd->add_option("--out", verify_args.out, "report JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (catalog_cmd->parsed()) return cmd_catalog();
        if (flow_cmd->parsed()) return cmd_flow(flow_args);
        if (rate_cmd->parsed()) return cmd_rate(rate_args);
        if (hm_cmd->parsed()) return cmd_harmonic(hm_args);
        if (verify_cmd->parsed()) return cmd_verify(verify_args);
    } catch (const UnknownId& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUnknownId;
    } catch (const FlowError& e) {
        std::fprintf(stderr, "numerical failure: %s at %s (t=%s)\n", e.what(),
                     format_complex(e.where()).c_str(), format_g17(e.when()).c_str());
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    }
    return kExitUsage;
}
