#include "semiflow/generators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace semiflow {

namespace {

constexpr double kHerglotzSlack = 1e-10;

Complex pow_int_neg_s(uint32_t n, Complex s) {
    // n^{-s} = exp(-s ln n)
    return std::exp(-s * std::log(static_cast<double>(n)));
}

}  // namespace

// --------------------------------------------------------------------------
// Herglotz specs

HerglotzSpec make_herglotz_constant(Complex c) {
    if (!(c.real() >= 0.0))
        throw std::invalid_argument("herglotz constant requires Re(c) >= 0");
    return HerglotzConstant{c};
}

HerglotzSpec make_herglotz_moebius(double scale) {
    if (!(scale > 0.0))
        throw std::invalid_argument("herglotz moebius scale must be > 0");
    return HerglotzMoebius{scale};
}

Complex eval_herglotz(const HerglotzSpec& p, Complex z) {
    return std::visit(
        [&](const auto& v) -> Complex {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, HerglotzConstant>) {
                return v.c;
            } else if constexpr (std::is_same_v<T, HerglotzMoebius>) {
                return v.scale * (1.0 + z) / (1.0 - z);
            } else if constexpr (std::is_same_v<T, HerglotzReciprocal>) {
                return 1.0 / (1.0 + z);
            } else {
                static_assert(std::is_same_v<T, HerglotzCustom>);
                return v.fn(z);
            }
        },
        p);
}

std::string herglotz_name(const HerglotzSpec& p) {
    return std::visit(
        [&](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, HerglotzConstant>) {
                std::ostringstream os;
                os << "const(" << v.c.real() << (v.c.imag() < 0 ? "" : "+")
                   << v.c.imag() << "i)";
                return os.str();
            } else if constexpr (std::is_same_v<T, HerglotzMoebius>) {
                std::ostringstream os;
                os << "cayley(" << v.scale << ")";
                return os.str();
            } else if constexpr (std::is_same_v<T, HerglotzReciprocal>) {
                return "recip";
            } else {
                return v.name;
            }
        },
        p);
}

// --------------------------------------------------------------------------
// Dirichlet series

DirichletSeriesSpec DirichletSeriesSpec::make(Complex constant, std::vector<Term> terms,
                                              double abscissa,
                                              std::optional<TailDecay> tail) {
    for (const auto& t : terms)
        if (t.n < 1) throw std::invalid_argument("dirichlet term index must be >= 1");
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.n < b.n; });
    for (size_t i = 1; i < terms.size(); ++i)
        if (terms[i].n == terms[i - 1].n)
            throw std::invalid_argument("duplicate dirichlet term index");
    if (tail && !(tail->amplitude >= 0.0))
        throw std::invalid_argument("tail amplitude must be >= 0");
    return DirichletSeriesSpec{constant, std::move(terms), abscissa, tail};
}

DirichletValue dirichlet_eval(const DirichletSeriesSpec& series, Complex s) {
    if (!(s.real() > series.abscissa))
        throw std::domain_error("dirichlet_eval: Re(s) <= declared abscissa");
    Complex v = series.constant;
    for (const auto& t : series.terms) v += t.a * pow_int_neg_s(t.n, s);
    double tail = 0.0;
    if (series.tail && series.tail->amplitude > 0.0) {
        const double truncation =
            series.terms.empty() ? 1.0 : static_cast<double>(series.terms.back().n);
        const double q = series.tail->exponent + s.real();
        if (q > 1.0) {
            // sum_{n>N} n^{-q} <= N^{1-q} / (q-1)
            tail = series.tail->amplitude * std::pow(truncation, 1.0 - q) / (q - 1.0);
        } else {
            tail = std::numeric_limits<double>::infinity();
        }
    }
    return {v, tail};
}

DirichletSeriesSpec parse_dirichlet_csv(const std::string& path, double abscissa) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open coefficient file: " + path);
    Complex constant{0.0, 0.0};
    std::vector<DirichletSeriesSpec::Term> terms;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);
        std::string field;
        double vals[3] = {0.0, 0.0, 0.0};
        int nfields = 0;
        while (std::getline(row, field, ',') && nfields < 3) {
            try {
                vals[nfields] = std::stod(field);
            } catch (const std::exception&) {
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": bad numeric field '" + field + "'");
            }
            ++nfields;
        }
        if (nfields < 2)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected n,re[,im]");
        const double nval = vals[0];
        if (nval < 0 || nval != std::floor(nval))
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": index must be a non-negative integer");
        const Complex a{vals[1], vals[2]};
        if (nval == 0)
            constant += a;
        else
            terms.push_back({static_cast<uint32_t>(nval), a});
    }
    return DirichletSeriesSpec::make(constant, std::move(terms), abscissa);
}

// --------------------------------------------------------------------------
// Generator specs

GeneratorSpec make_berkson_porta(Complex fixed_point, HerglotzSpec p) {
    if (!(std::abs(fixed_point) <= 1.0 + kBoundaryTol))
        throw std::invalid_argument("berkson-porta point must satisfy |tau| <= 1");
    return BerksonPorta{fixed_point, std::move(p)};
}

GeneratorSpec make_half_plane_constant(Complex c) {
    if (!(c.real() >= 0.0))
        throw std::invalid_argument("half-plane constant generator requires Re(c) >= 0");
    return HalfPlaneConstant{c};
}

CanonicalDomain domain_of(const GeneratorSpec& g) {
    if (std::holds_alternative<BerksonPorta>(g)) return UnitDisc{};
    return HalfPlane{0.0};
}

Complex eval_generator_raw(const GeneratorSpec& g, Complex z) {
    return std::visit(
        [&](const auto& v) -> Complex {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BerksonPorta>) {
                const Complex tau = v.fixed_point;
                return (z - tau) * (std::conj(tau) * z - 1.0) * eval_herglotz(v.herglotz, z);
            } else if constexpr (std::is_same_v<T, HalfPlaneConstant>) {
                return v.c;
            } else if constexpr (std::is_same_v<T, HalfPlaneSqrt>) {
                return std::sqrt(z);
            } else if constexpr (std::is_same_v<T, HalfPlaneDirichlet>) {
                Complex acc = v.series.constant;
                for (const auto& t : v.series.terms) acc += t.a * pow_int_neg_s(t.n, z);
                return acc;
            } else if constexpr (std::is_same_v<T, PullbackViaLog>) {
                return eval_herglotz(v.herglotz, std::exp(-z));
            } else {
                static_assert(std::is_same_v<T, PullbackViaCayley>);
                return 2.0 * eval_herglotz(v.herglotz, (z - 1.0) / (z + 1.0));
            }
        },
        g);
}

Complex eval_generator(const GeneratorSpec& g, Complex z) {
    if (std::holds_alternative<HalfPlaneSqrt>(g) && z.imag() == 0.0 && z.real() < 0.0)
        throw std::domain_error("eval_generator: point on the sqrt branch cut");
    if (boundary_distance(domain_of(g), z) < -kBoundaryTol)
        throw std::domain_error("eval_generator: point outside the generator domain");
    if (const auto* d = std::get_if<HalfPlaneDirichlet>(&g)) {
        if (!(z.real() > d->series.abscissa))
            throw std::domain_error("eval_generator: Re(s) <= dirichlet abscissa");
    }
    return eval_generator_raw(g, z);
}

// --------------------------------------------------------------------------
// Grids

std::vector<Complex> DiscGrid::points() const {
    if (radial_depth < 1 || angular_count < 8)
        throw std::invalid_argument("disc grid: depth >= 1 and angular count >= 8");
    std::vector<Complex> pts;
    pts.reserve(1 + static_cast<size_t>(radial_depth) * angular_count);
    pts.emplace_back(0.0, 0.0);
    for (int k = 1; k <= radial_depth; ++k) {
        const double r = 1.0 - std::ldexp(1.0, -k);
        for (int j = 0; j < angular_count; ++j) {
            const double th = 2.0 * std::numbers::pi * j / angular_count;
            pts.emplace_back(r * std::cos(th), r * std::sin(th));
        }
    }
    return pts;
}

std::vector<Complex> HalfPlaneGrid::points(double re_offset) const {
    if (re_depth < 1 || im_count < 8 || !(im_window > 0.0) || !(re_max > 0.0))
        throw std::invalid_argument("half-plane grid: bad parameters");
    const int half = im_count / 2;
    std::vector<Complex> pts;
    pts.reserve(static_cast<size_t>(re_depth + 1) * (2 * half + 1));
    for (int k = 0; k <= re_depth; ++k) {
        const double x = re_offset + re_max * std::ldexp(1.0, -k);
        pts.emplace_back(x, 0.0);
        for (int j = 1; j <= half; ++j) {
            const double y = im_window * j / half;
            pts.emplace_back(x, y);
            pts.emplace_back(x, -y);
        }
    }
    return pts;
}

// --------------------------------------------------------------------------
// Hypothesis checks

ClassGReport check_class_G_generator(const DirichletSeriesSpec& series,
                                     const HalfPlaneGrid& grid,
                                     std::span<const double> offsets) {
    ClassGReport report;
    report.grid_im_window = grid.im_window;
    const auto pts = grid.points();
    for (const auto& s : pts) {
        Complex v = series.constant;
        for (const auto& t : series.terms) v += t.a * pow_int_neg_s(t.n, s);
        if (v.real() < -kHerglotzSlack) report.violations.push_back({s, v});
    }
    report.maps_into_closed_half_plane = report.violations.empty();
    for (double eps : offsets) {
        double sup = 0.0;
        for (const auto& s0 : grid.points(eps)) {
            Complex v = series.constant;
            for (const auto& t : series.terms) v += t.a * pow_int_neg_s(t.n, s0);
            sup = std::max(sup, std::abs(v));
        }
        report.sup_rows.emplace_back(eps, sup);
    }
    return report;
}

double herglotz_growth_constant(const HerglotzSpec& p, const DiscGrid& grid) {
    const double deepest = std::ldexp(1.0, -grid.radial_depth);
    if (deepest > 1e-4)
        throw std::invalid_argument(
            "herglotz_growth_constant: grid must reach radius 1 - 1e-4");
    double best = 0.0;
    for (const auto& z : grid.points()) {
        const double w = 1.0 - std::norm(z);
        best = std::max(best, w * std::abs(eval_herglotz(p, z)));
    }
    return best;
}

BoundProfile halfplane_bound_profile(const GeneratorSpec& g,
                                     std::span<const double> offsets,
                                     const HalfPlaneGrid& grid) {
    BoundProfile profile;
    const int half = grid.im_count / 2;
    const double im_step = grid.im_window / half;
    for (double eps : offsets) {
        if (!(eps > 0.0))
            throw std::invalid_argument("halfplane_bound_profile: offsets must be > 0");
        BoundProfileRow row{eps, -1.0, Complex{}, false};
        for (const auto& z : grid.points(eps)) {
            const double m = std::abs(eval_generator_raw(g, z));
            if (m > row.sup) {
                row.sup = m;
                row.argmax = z;
            }
        }
        row.window_edge = std::abs(row.argmax.imag()) > grid.im_window - 0.5 * im_step;
        profile.window_limited = profile.window_limited || row.window_edge;
        profile.rows.push_back(row);
        profile.k_hat = std::max(profile.k_hat, eps * row.sup);
    }
    return profile;
}

}  // namespace semiflow
