#include "semiflow/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace semiflow {

namespace {

constexpr uint32_t kBruteForceLimit = 64;

double cross(Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

bool on_segment(Complex a, Complex b, Complex p) {
    return std::min(a.real(), b.real()) <= p.real() &&
           p.real() <= std::max(a.real(), b.real()) &&
           std::min(a.imag(), b.imag()) <= p.imag() &&
           p.imag() <= std::max(a.imag(), b.imag());
}

// Proper or improper intersection of closed segments.
bool segments_intersect(Complex p1, Complex p2, Complex p3, Complex p4) {
    const double d1 = cross(p3, p4, p1);
    const double d2 = cross(p3, p4, p2);
    const double d3 = cross(p1, p2, p3);
    const double d4 = cross(p1, p2, p4);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    if (d1 == 0 && on_segment(p3, p4, p1)) return true;
    if (d2 == 0 && on_segment(p3, p4, p2)) return true;
    if (d3 == 0 && on_segment(p1, p2, p3)) return true;
    if (d4 == 0 && on_segment(p1, p2, p4)) return true;
    return false;
}

}  // namespace

JordanDomain JordanDomain::from_vertices(std::vector<Complex> vertices) {
    if (vertices.size() >= 2 && std::abs(vertices.front() - vertices.back()) == 0.0)
        vertices.pop_back();
    if (vertices.size() < 3)
        throw std::invalid_argument("jordan curve needs at least 3 distinct vertices");
    for (const auto& v : vertices)
        if (!is_finite(v)) throw std::invalid_argument("jordan curve vertex not finite");

    const size_t n = vertices.size();
    for (size_t i = 0; i < n; ++i)
        if (std::abs(vertices[i] - vertices[(i + 1) % n]) == 0.0)
            throw std::invalid_argument("consecutive jordan curve vertices coincide");

    // positive (counter-clockwise) orientation
    double area2 = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const Complex a = vertices[i], b = vertices[(i + 1) % n];
        area2 += a.real() * b.imag() - b.real() * a.imag();
    }
    if (area2 == 0.0) throw std::invalid_argument("jordan curve has zero area");
    if (area2 < 0.0) std::reverse(vertices.begin(), vertices.end());

    // simplicity: non-adjacent segments must not meet (O(n^2) at build time)
    for (size_t i = 0; i < n; ++i) {
        const Complex a1 = vertices[i], a2 = vertices[(i + 1) % n];
        for (size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;  // ring-adjacent
            const Complex b1 = vertices[j], b2 = vertices[(j + 1) % n];
            if (segments_intersect(a1, a2, b1, b2))
                throw std::invalid_argument("jordan curve is not simple");
        }
    }

    JordanDomain d;
    d.ring_ = std::move(vertices);
    d.seg_len_.resize(n);
    d.cumulative_.resize(n);
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const Complex a = d.ring_[i], b = d.ring_[(i + 1) % n];
        d.soa_.push(a, b);
        d.seg_len_[i] = std::abs(b - a);
        acc += d.seg_len_[i];
        d.cumulative_[i] = acc;
    }
    d.build_index();
    return d;
}

void JordanDomain::build_index() {
    double xmin = ring_[0].real(), xmax = xmin, ymin = ring_[0].imag(), ymax = ymin;
    for (const auto& v : ring_) {
        xmin = std::min(xmin, v.real());
        xmax = std::max(xmax, v.real());
        ymin = std::min(ymin, v.imag());
        ymax = std::max(ymax, v.imag());
    }
    bbox_diameter_ = std::hypot(xmax - xmin, ymax - ymin);

    const uint32_t n = segment_count();
    if (n <= kBruteForceLimit) return;  // straight SoA scan is faster

    const int cells = std::clamp(static_cast<int>(std::sqrt(double(n))), 2, 64);
    gnx_ = gny_ = cells;
    gx0_ = xmin;
    gy0_ = ymin;
    gcw_ = (xmax - xmin) / cells;
    gch_ = (ymax - ymin) / cells;
    if (gcw_ <= 0.0) gcw_ = 1.0;
    if (gch_ <= 0.0) gch_ = 1.0;

    // CSR over cells; each segment lands in every cell its AABB overlaps
    std::vector<std::vector<uint32_t>> buckets(static_cast<size_t>(gnx_) * gny_);
    for (uint32_t i = 0; i < n; ++i) {
        const Complex a = segment_start(i), b = segment_end(i);
        const auto clampi = [&](double v, int hi) {
            return std::clamp(static_cast<int>(v), 0, hi - 1);
        };
        const int ix0 = clampi((std::min(a.real(), b.real()) - gx0_) / gcw_, gnx_);
        const int ix1 = clampi((std::max(a.real(), b.real()) - gx0_) / gcw_, gnx_);
        const int iy0 = clampi((std::min(a.imag(), b.imag()) - gy0_) / gch_, gny_);
        const int iy1 = clampi((std::max(a.imag(), b.imag()) - gy0_) / gch_, gny_);
        for (int iy = iy0; iy <= iy1; ++iy)
            for (int ix = ix0; ix <= ix1; ++ix)
                buckets[static_cast<size_t>(iy) * gnx_ + ix].push_back(i);
    }
    cell_start_.assign(buckets.size() + 1, 0);
    for (size_t c = 0; c < buckets.size(); ++c)
        cell_start_[c + 1] = cell_start_[c] + static_cast<uint32_t>(buckets[c].size());
    cell_items_.resize(cell_start_.back());
    for (size_t c = 0; c < buckets.size(); ++c)
        std::copy(buckets[c].begin(), buckets[c].end(),
                  cell_items_.begin() + cell_start_[c]);
}

bool JordanDomain::contains(Complex z) const {
    // even-odd crossing count with the half-open rule
    bool inside = false;
    const size_t n = ring_.size();
    for (size_t i = 0; i < n; ++i) {
        const Complex a = ring_[i], b = ring_[(i + 1) % n];
        if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
            const double x_cross =
                a.real() + (z.imag() - a.imag()) * (b.real() - a.real()) /
                               (b.imag() - a.imag());
            if (z.real() < x_cross) inside = !inside;
        }
    }
    return inside;
}

JordanDomain::Nearest JordanDomain::nearest_boundary_point(Complex z) const {
    const double px = z.real(), py = z.imag();
    kernels::NearestHit best;
    const bool off_grid = cell_start_.empty() || px < gx0_ || py < gy0_ ||
                          px > gx0_ + gnx_ * gcw_ || py > gy0_ + gny_ * gch_;
    if (off_grid) {
        best = kernels::nearest_in_range(soa_, px, py, 0, segment_count());
    } else {
        best = {std::numeric_limits<double>::infinity(),
                std::numeric_limits<uint32_t>::max()};
        const auto visit = [&](int ix, int iy) {
            if (ix < 0 || ix >= gnx_ || iy < 0 || iy >= gny_) return;
            const size_t c = static_cast<size_t>(iy) * gnx_ + ix;
            const uint32_t begin = cell_start_[c], end = cell_start_[c + 1];
            if (begin == end) return;
            const auto hit = kernels::nearest_gather(soa_, px, py,
                                                     cell_items_.data() + begin,
                                                     end - begin);
            if (kernels::improves(hit, best)) best = hit;
        };
        const int cx = std::clamp(static_cast<int>((px - gx0_) / gcw_), 0, gnx_ - 1);
        const int cy = std::clamp(static_cast<int>((py - gy0_) / gch_), 0, gny_ - 1);
        const double min_cell = std::min(gcw_, gch_);
        const int max_ring = std::max(std::max(cx, gnx_ - 1 - cx),
                                      std::max(cy, gny_ - 1 - cy));
        visit(cx, cy);
        for (int r = 1; r <= max_ring; ++r) {
            // every point of a ring-r cell is at least (r-1) * min_cell away
            if (std::isfinite(best.dist2)) {
                const double lb = (r - 1) * min_cell;
                if (lb * lb > best.dist2) break;
            }
            for (int ix = cx - r; ix <= cx + r; ++ix) {
                visit(ix, cy - r);
                visit(ix, cy + r);
            }
            for (int iy = cy - r + 1; iy <= cy + r - 1; ++iy) {
                visit(cx - r, iy);
                visit(cx + r, iy);
            }
        }
    }
    const auto cp = kernels::closest_point_on_segment(soa_, best.index, px, py);
    return {std::sqrt(cp.dist2), best.index, cp.param, cp.point};
}

double JordanDomain::arclength_of(uint32_t segment, double param) const {
    if (segment >= segment_count())
        throw std::out_of_range("segment index out of range");
    return arclength_before(segment) + param * seg_len_[segment];
}

std::pair<uint32_t, double> JordanDomain::at_arclength(double s) const {
    const double total = boundary_length();
    s = std::fmod(s, total);
    if (s < 0.0) s += total;
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    uint32_t seg = static_cast<uint32_t>(it - cumulative_.begin());
    if (seg >= segment_count()) seg = segment_count() - 1;
    const double before = arclength_before(seg);
    return {seg, std::clamp((s - before) / seg_len_[seg], 0.0, 1.0)};
}

// ---------------------------------------------------------------------------

BoundarySubset BoundarySubset::from_arcs(const JordanDomain& domain,
                                         std::vector<Arc> arcs) {
    for (auto& a : arcs) {
        if (a.segment >= domain.segment_count())
            throw std::invalid_argument("subset arc segment out of range");
        a.u0 = std::clamp(a.u0, 0.0, 1.0);
        a.u1 = std::clamp(a.u1, 0.0, 1.0);
        if (a.u1 < a.u0) throw std::invalid_argument("subset arc interval reversed");
    }
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
        return a.segment != b.segment ? a.segment < b.segment : a.u0 < b.u0;
    });
    BoundarySubset out;
    for (const auto& a : arcs) {
        if (a.u1 == a.u0) continue;
        if (!out.arcs_.empty() && out.arcs_.back().segment == a.segment &&
            a.u0 <= out.arcs_.back().u1) {
            out.arcs_.back().u1 = std::max(out.arcs_.back().u1, a.u1);
        } else {
            out.arcs_.push_back(a);
        }
    }
    for (const auto& a : out.arcs_)
        out.measure_ += (a.u1 - a.u0) * domain.segment_length(a.segment);
    return out;
}

BoundarySubset BoundarySubset::from_arclength(const JordanDomain& domain, double s0,
                                              double s1) {
    if (!(s1 >= s0)) throw std::invalid_argument("arclength window reversed");
    const double total = domain.boundary_length();
    if (s1 - s0 >= total) return full_boundary(domain);
    double remaining = s1 - s0;
    auto [seg, u] = domain.at_arclength(s0);
    std::vector<Arc> arcs;
    for (uint32_t hops = 0; remaining > 0.0 && hops <= domain.segment_count() + 1;
         ++hops) {
        const double len = domain.segment_length(seg);
        const double available = (1.0 - u) * len;
        if (available >= remaining) {
            arcs.push_back({seg, u, u + remaining / len});
            break;
        }
        if (available > 0.0) arcs.push_back({seg, u, 1.0});
        remaining -= available;
        seg = (seg + 1) % domain.segment_count();
        u = 0.0;
    }
    return from_arcs(domain, std::move(arcs));
}

BoundarySubset BoundarySubset::full_boundary(const JordanDomain& domain) {
    std::vector<Arc> arcs;
    arcs.reserve(domain.segment_count());
    for (uint32_t i = 0; i < domain.segment_count(); ++i) arcs.push_back({i, 0.0, 1.0});
    return from_arcs(domain, std::move(arcs));
}

bool BoundarySubset::covers(uint32_t segment, double param) const {
    auto it = std::upper_bound(arcs_.begin(), arcs_.end(), std::make_pair(segment, param),
                               [](const auto& key, const Arc& a) {
                                   return key.first != a.segment ? key.first < a.segment
                                                                 : key.second < a.u0;
                               });
    if (it == arcs_.begin()) return false;
    const Arc& a = *(it - 1);
    return a.segment == segment && a.u0 <= param && param <= a.u1;
}

// ---------------------------------------------------------------------------

JordanDomain regular_disc_polygon(int sides, Complex center, double radius) {
    if (sides < 3) throw std::invalid_argument("polygon needs >= 3 sides");
    if (!(radius > 0.0)) throw std::invalid_argument("polygon radius must be > 0");
    std::vector<Complex> v;
    v.reserve(sides);
    for (int j = 0; j < sides; ++j) {
        const double th = 2.0 * std::numbers::pi * j / sides;
        v.push_back(center + radius * Complex{std::cos(th), std::sin(th)});
    }
    return JordanDomain::from_vertices(std::move(v));
}

JordanDomain square_boundary_domain(Complex corner, double side) {
    if (!(side > 0.0)) throw std::invalid_argument("square side must be > 0");
    const double x = corner.real(), y = corner.imag();
    return JordanDomain::from_vertices(
        {{x, y}, {x + side, y}, {x + side, y + side}, {x, y + side}});
}

}  // namespace semiflow
