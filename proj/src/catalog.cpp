#include "semiflow/catalog.hpp"

#include <cmath>
#include <sstream>

#include "semiflow/report.hpp"

namespace semiflow {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

HerglotzSpec parse_herglotz(const std::string& text) {
    if (text == "recip") return HerglotzReciprocal{};
    if (text.rfind("const:", 0) == 0)
        return make_herglotz_constant(parse_complex(text.substr(6)));
    if (text.rfind("cayley:", 0) == 0)
        return make_herglotz_moebius(std::stod(text.substr(7)));
    throw std::invalid_argument("unknown herglotz spec: " + text);
}

}  // namespace

Complex parse_complex(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty complex literal");
    // forms: a, bi, a+bi, a-bi, i, -i
    std::string s = text;
    double re = 0.0, im = 0.0;
    const auto parse_num = [](const std::string& v) -> double {
        if (v.empty() || v == "+") return 1.0;
        if (v == "-") return -1.0;
        size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("bad numeric literal: " + v);
        return x;
    };
    if (s.back() == 'i' || s.back() == 'I') {
        s.pop_back();
        // split at the last +/- that is not an exponent sign and not leading
        size_t cut = std::string::npos;
        for (size_t k = s.size(); k-- > 1;) {
            if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
                cut = k;
                break;
            }
        }
        if (cut == std::string::npos) {
            im = parse_num(s);
        } else {
            re = parse_num(s.substr(0, cut));
            im = parse_num(s.substr(cut));
        }
    } else {
        re = parse_num(s);
    }
    return {re, im};
}

std::string format_complex(Complex z) {
    std::string out = format_g17(z.real());
    if (z.imag() != 0.0) {
        if (z.imag() > 0.0) out += "+";
        out += format_g17(z.imag()) + "i";
    }
    return out;
}

GeneratorSpec parse_generator_id(const std::string& id) {
    if (id.rfind("bp:", 0) == 0) {
        const auto parts = split(id.substr(3), ',');
        std::optional<Complex> tau;
        std::optional<HerglotzSpec> p;
        for (size_t k = 0; k < parts.size(); ++k) {
            const auto& part = parts[k];
            if (part.rfind("tau=", 0) == 0) {
                tau = parse_complex(part.substr(4));
            } else if (part.rfind("p=", 0) == 0) {
                // the herglotz spec may itself contain ',' only via const
                // complex literals, which never do; rejoin is not needed
                p = parse_herglotz(part.substr(2));
            } else {
                throw std::invalid_argument("bad berkson-porta field: " + part);
            }
        }
        if (!tau || !p)
            throw std::invalid_argument("berkson-porta id needs tau= and p=");
        return make_berkson_porta(*tau, std::move(*p));
    }
    if (id == "hp:sqrt") return HalfPlaneSqrt{};
    if (id.rfind("hp:const:", 0) == 0)
        return make_half_plane_constant(parse_complex(id.substr(9)));
    if (id.rfind("hp:log:", 0) == 0) return PullbackViaLog{parse_herglotz(id.substr(7))};
    if (id.rfind("hp:cayley:", 0) == 0)
        return PullbackViaCayley{parse_herglotz(id.substr(10))};
    if (id.rfind("hp:dirichlet:", 0) == 0) {
        const std::string body = id.substr(13);
        if (body.rfind("file=", 0) == 0) {
            try {
                return HalfPlaneDirichlet{parse_dirichlet_csv(body.substr(5))};
            } catch (const std::runtime_error& e) {
                throw std::invalid_argument(e.what());
            }
        }
        Complex c0{0.0, 0.0};
        std::vector<DirichletSeriesSpec::Term> terms;
        for (const auto& field : split(body, ',')) {
            if (field.rfind("c0=", 0) == 0) {
                c0 = parse_complex(field.substr(3));
            } else if (field.size() > 1 && field[0] == 'a') {
                const auto eq = field.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("bad dirichlet term: " + field);
                const int n = std::stoi(field.substr(1, eq - 1));
                terms.push_back({static_cast<uint32_t>(n),
                                 parse_complex(field.substr(eq + 1))});
            } else {
                throw std::invalid_argument("bad dirichlet field: " + field);
            }
        }
        return HalfPlaneDirichlet{DirichletSeriesSpec::make(c0, std::move(terms))};
    }
    throw std::invalid_argument("unknown generator id: " + id);
}

const std::vector<CatalogEntry>& generator_catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> v;
        v.push_back({"bp:tau=0,p=const:1",
                     "elliptic disc contraction, flow e^{-t} z",
                     make_berkson_porta({0.0, 0.0}, HerglotzConstant{{1.0, 0.0}}),
                     ClosedFormId::exp_contraction,
                     {1.0, 0.0}});
        v.push_back({"bp:tau=1,p=const:1",
                     "parabolic disc flow 1 - (1-z)/(1 + t(1-z))",
                     make_berkson_porta({1.0, 0.0}, HerglotzConstant{{1.0, 0.0}}),
                     ClosedFormId::parabolic_disc,
                     {1.0, 0.0}});
        v.push_back({"bp:tau=1,p=recip",
                     "sharpness example generator (1-z)^2/(1+z)",
                     make_berkson_porta({1.0, 0.0}, HerglotzReciprocal{}),
                     std::nullopt,
                     {1.0, 0.0}});
        v.push_back({"hp:const:1",
                     "half-plane translation flow z + t",
                     make_half_plane_constant({1.0, 0.0}),
                     ClosedFormId::translation,
                     {1.0, 0.0}});
        v.push_back({"hp:sqrt",
                     "half-plane sqrt generator, flow (t/2 + sqrt z)^2",
                     HalfPlaneSqrt{},
                     ClosedFormId::sqrt_flow,
                     {1.0, 0.0}});
        v.push_back({"hp:dirichlet:c0=1,a2=1",
                     "bounded class generator 1 + 2^{-s}",
                     HalfPlaneDirichlet{DirichletSeriesSpec::make(
                         {1.0, 0.0}, {{2, {1.0, 0.0}}})},
                     std::nullopt,
                     {1.0, 0.0}});
        v.push_back({"hp:cayley:recip",
                     "half-plane image of the sharpness example, H = 1 + 1/w",
                     PullbackViaCayley{HerglotzReciprocal{}},
                     std::nullopt,
                     {1.0, 0.0}});
        v.push_back({"hp:log:recip",
                     "log pullback of 1/(1+z), H = 1/(1 + e^{-w})",
                     PullbackViaLog{HerglotzReciprocal{}},
                     std::nullopt,
                     {1.0, 0.0}});
        return v;
    }();
    return entries;
}

const CatalogEntry* find_catalog_entry(const std::string& id) {
    for (const auto& e : generator_catalog())
        if (e.id == id) return &e;
    return nullptr;
}

}  // namespace semiflow
