#include "semiflow/curves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace semiflow {

Polyline make_polyline(std::vector<Complex> vertices) {
    if (vertices.size() < 2) throw std::invalid_argument("polyline needs >= 2 vertices");
    for (const auto& v : vertices)
        if (!is_finite(v)) throw std::invalid_argument("polyline vertex not finite");
    for (size_t i = 1; i < vertices.size(); ++i)
        if (std::abs(vertices[i] - vertices[i - 1]) == 0.0)
            throw std::invalid_argument("consecutive polyline vertices coincide");
    return Polyline{std::move(vertices)};
}

std::vector<EnvelopeSample> monotone_envelope(std::vector<EnvelopeSample> samples) {
    if (samples.size() < 2) throw std::invalid_argument("envelope needs >= 2 samples");
    for (size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i].x >= samples[i - 1].x))
            throw std::invalid_argument("envelope input must be sorted by x");
    double running = samples.back().value;
    for (size_t i = samples.size(); i-- > 0;) {
        running = std::min(running, samples[i].value);
        samples[i].value = running;
    }
    return samples;
}

Polyline envelope_curve(const Trajectory& traj) {
    if (traj.nodes.size() < 64)
        throw std::invalid_argument("envelope_curve needs a trajectory with >= 64 samples");
    std::vector<EnvelopeSample> im;
    im.reserve(traj.nodes.size());
    for (const auto& n : traj.nodes) im.push_back({n.t, n.z.imag()});
    im = monotone_envelope(std::move(im));
    std::vector<Complex> pts;
    pts.reserve(traj.nodes.size());
    for (size_t i = 0; i < traj.nodes.size(); ++i) {
        const Complex v{traj.nodes[i].z.real(), im[i].value};
        if (!pts.empty() && std::abs(v - pts.back()) == 0.0) continue;
        pts.push_back(v);
    }
    if (pts.size() < 2)
        throw std::invalid_argument("envelope_curve: trajectory collapsed to a point");
    return Polyline{std::move(pts)};
}

double polyline_length(const Polyline& p) {
    double acc = 0.0;
    for (size_t i = 1; i < p.vertices.size(); ++i)
        acc += std::abs(p.vertices[i] - p.vertices[i - 1]);
    return acc;
}

std::string polyline_csv(const Polyline& p) {
    std::string out = "re,im\n";
    for (const auto& v : p.vertices) {
        char buf[80];
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", v.real(), v.imag());
        out += buf;
    }
    return out;
}

Polyline polyline_from_csv_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Complex> pts;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("re,", 0) == 0) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("polyline csv row needs re,im");
        pts.emplace_back(std::stod(line.substr(0, comma)),
                         std::stod(line.substr(comma + 1)));
    }
    return make_polyline(std::move(pts));
}

namespace {

constexpr double kGeomTol = 1e-9;

// Clips the envelope to the horizontal band of the square, interpolating the
// first/last segment onto the bottom/top lines.
std::vector<Complex> clip_to_band(const Polyline& envelope, double y_bottom,
                                  double y_top, double scale) {
    const auto& v = envelope.vertices;
    const double tol = kGeomTol * scale;
    if (!(v.front().imag() <= y_bottom + tol))
        throw std::invalid_argument("envelope must start at or below the bottom edge");
    if (!(v.back().imag() >= y_top - tol))
        throw std::invalid_argument("envelope must end at or above the top edge");

    std::vector<Complex> out;
    const auto push = [&](Complex p) {
        if (out.empty() || std::abs(p - out.back()) > 0.0) out.push_back(p);
    };
    const auto cross_at = [](Complex a, Complex b, double y) {
        const double s = (y - a.imag()) / (b.imag() - a.imag());
        return Complex{a.real() + s * (b.real() - a.real()), y};
    };
    for (size_t i = 0; i < v.size(); ++i) {
        const Complex p = v[i];
        if (p.imag() < y_bottom) {
            if (i + 1 < v.size() && v[i + 1].imag() > y_bottom)
                push(cross_at(p, v[i + 1], y_bottom));
            continue;
        }
        if (p.imag() > y_top) {
            if (i > 0 && v[i - 1].imag() < y_top) push(cross_at(v[i - 1], p, y_top));
            break;
        }
        if (i > 0 && v[i - 1].imag() < y_bottom) push(cross_at(v[i - 1], p, y_bottom));
        push(p);
        if (i + 1 < v.size() && v[i + 1].imag() > y_top) {
            push(cross_at(p, v[i + 1], y_top));
            break;
        }
    }
    if (out.size() < 2 || std::abs(out.front().imag() - y_bottom) > tol ||
        std::abs(out.back().imag() - y_top) > tol)
        throw std::invalid_argument("envelope does not span the square band");
    // pin the clipped endpoints exactly onto the edges
    out.front() = Complex{out.front().real(), y_bottom};
    out.back() = Complex{out.back().real(), y_top};
    return out;
}

}  // namespace

ProofDomainParts build_proof_domain_parts(const Square& square, const Polyline& envelope) {
    if (!(square.side > 0.0)) throw std::invalid_argument("square side must be > 0");
    const double a = square.side;
    const double x0 = square.corner.real(), y0 = square.corner.imag();
    const double x1 = x0 + a, y1 = y0 + a;
    const double tol = kGeomTol * std::max(1.0, a);

    auto cut = clip_to_band(envelope, y0, y1, std::max(1.0, a));
    for (size_t i = 1; i < cut.size(); ++i) {
        if (cut[i].imag() < cut[i - 1].imag() - tol ||
            cut[i].real() < cut[i - 1].real() - tol)
            throw std::invalid_argument("proof domain requires a monotone envelope");
    }
    for (const auto& p : cut)
        if (p.real() < x0 - tol || p.real() > x1 + tol)
            throw std::invalid_argument("envelope exits the square horizontally");

    // ring: bottom edge east, right edge north, top edge west, envelope south
    std::vector<Complex> ring;
    const auto push = [&](Complex p) {
        if (ring.empty() || std::abs(p - ring.back()) > 0.0) ring.push_back(p);
    };
    push(cut.front());
    push(Complex{x1, y0});
    push(Complex{x1, y1});
    push(cut.back());
    const size_t cut_begin_vertex = ring.size() - 1;  // cut.back() starts the cut
    for (size_t i = cut.size() - 1; i-- > 0;) push(cut[i]);
    // the ring closes back to cut.front(); drop a duplicated closing vertex
    if (std::abs(ring.back() - ring.front()) == 0.0) ring.pop_back();

    // the construction above is counter-clockwise; the cut segment indices
    // below rely on from_vertices not re-orienting the ring
    double area2 = 0.0;
    for (size_t i = 0; i < ring.size(); ++i) {
        const Complex p = ring[i], q = ring[(i + 1) % ring.size()];
        area2 += p.real() * q.imag() - q.real() * p.imag();
    }
    if (!(area2 > 0.0))
        throw std::invalid_argument("proof domain construction produced a degenerate ring");

    ProofDomainParts parts{JordanDomain::from_vertices(ring),
                           static_cast<uint32_t>(cut_begin_vertex),
                           static_cast<uint32_t>(ring.size() - cut_begin_vertex)};
    if (parts.domain.boundary_length() > 4.0 * a + tol)
        throw std::invalid_argument("proof domain boundary exceeds 4 * side");
    return parts;
}

JordanDomain build_proof_domain(const Square& square, const Polyline& envelope) {
    return build_proof_domain_parts(square, envelope).domain;
}

}  // namespace semiflow
