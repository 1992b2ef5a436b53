#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "semiflow/cplane.hpp"
#include "semiflow/kernels/segment_distance.hpp"

namespace semiflow {

/// Closed simple polyline curve with its interior; immutable after build.
/// The boundary is stored positively oriented (input orientation is
/// normalized). Distance queries run through a uniform grid bucket index
/// over the segments; small boundaries fall back to a straight scan.
class JordanDomain {
  public:
    /// vertices: ring, either explicitly closed (first == last) or implicitly
    /// closed. Throws std::invalid_argument when the ring is degenerate,
    /// consecutive vertices coincide, or the curve self-intersects.
    static JordanDomain from_vertices(std::vector<Complex> vertices);

    /// Ring without the duplicated closing vertex.
    const std::vector<Complex>& ring() const { return ring_; }
    uint32_t segment_count() const { return static_cast<uint32_t>(ring_.size()); }
    Complex segment_start(uint32_t i) const { return ring_[i]; }
    Complex segment_end(uint32_t i) const { return ring_[(i + 1) % ring_.size()]; }
    double segment_length(uint32_t i) const { return seg_len_[i]; }
    double boundary_length() const { return cumulative_.back(); }
    /// Arc length of the boundary before segment i.
    double arclength_before(uint32_t i) const { return i == 0 ? 0.0 : cumulative_[i - 1]; }

    bool contains(Complex z) const;

    struct Nearest {
        double distance;
        uint32_t segment;
        double param;   // in [0, 1] along the segment
        Complex point;  // the closest boundary point
    };
    Nearest nearest_boundary_point(Complex z) const;

    double bbox_diameter() const { return bbox_diameter_; }

    /// Arclength coordinate of (segment, param) in [0, boundary_length).
    double arclength_of(uint32_t segment, double param) const;
    /// Inverse of arclength_of; s is taken mod boundary_length.
    std::pair<uint32_t, double> at_arclength(double s) const;

  private:
    JordanDomain() = default;
    void build_index();

    std::vector<Complex> ring_;
    std::vector<double> seg_len_;
    std::vector<double> cumulative_;
    kernels::SegmentSoA soa_;
    double bbox_diameter_ = 0.0;

    // uniform bucket grid (CSR); empty when the straight scan is used
    double gx0_ = 0.0, gy0_ = 0.0, gcw_ = 1.0, gch_ = 1.0;
    int gnx_ = 0, gny_ = 0;
    std::vector<uint32_t> cell_start_;
    std::vector<uint32_t> cell_items_;
};

/// Finite union of boundary sub-arcs of one domain, each an interval of a
/// segment's parameter; normalized to sorted disjoint arcs at construction.
class BoundarySubset {
  public:
    struct Arc {
        uint32_t segment;
        double u0, u1;  // 0 <= u0 <= u1 <= 1
    };

    static BoundarySubset from_arcs(const JordanDomain& domain, std::vector<Arc> arcs);
    /// Sub-arc by arclength window; wraps around the closing vertex.
    static BoundarySubset from_arclength(const JordanDomain& domain, double s0, double s1);
    /// The whole boundary.
    static BoundarySubset full_boundary(const JordanDomain& domain);

    double measure() const { return measure_; }
    bool covers(uint32_t segment, double param) const;
    const std::vector<Arc>& arcs() const { return arcs_; }

  private:
    std::vector<Arc> arcs_;
    double measure_ = 0.0;
};

/// Regular polygon approximation of a circle; vertex j at angle 2*pi*j/sides.
JordanDomain regular_disc_polygon(int sides, Complex center = {0.0, 0.0},
                                  double radius = 1.0);
JordanDomain square_boundary_domain(Complex corner, double side);

}  // namespace semiflow
