#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semiflow/cplane.hpp"

namespace semiflow::kernels {

/// Segment endpoints in structure-of-arrays layout.
struct SegmentSoA {
    std::vector<double> ax, ay, bx, by;

    size_t size() const { return ax.size(); }
    void push(Complex a, Complex b) {
        ax.push_back(a.real());
        ay.push_back(a.imag());
        bx.push_back(b.real());
        by.push_back(b.imag());
    }
};

/// Result of a nearest-segment scan. Ties in dist2 resolve to the smallest
/// segment index; both kernel variants implement the same rule, so results
/// are bit-identical across scalar/AVX2/NEON.
struct NearestHit {
    double dist2;
    uint32_t index;
};

inline bool improves(const NearestHit& candidate, const NearestHit& best) {
    return candidate.dist2 < best.dist2 ||
           (candidate.dist2 == best.dist2 && candidate.index < best.index);
}

using RangeKernel = NearestHit (*)(const SegmentSoA&, double px, double py,
                                   uint32_t begin, uint32_t end);
using GatherKernel = NearestHit (*)(const SegmentSoA&, double px, double py,
                                    const uint32_t* idx, size_t count);

/// Scalar reference kernels. The arithmetic sequence per segment is the
/// contract the SIMD variants must reproduce exactly.
NearestHit nearest_in_range_scalar(const SegmentSoA&, double px, double py,
                                   uint32_t begin, uint32_t end);
NearestHit nearest_gather_scalar(const SegmentSoA&, double px, double py,
                                 const uint32_t* idx, size_t count);

#ifdef SEMIFLOW_KERNEL_AVX2
NearestHit nearest_in_range_avx2(const SegmentSoA&, double px, double py,
                                 uint32_t begin, uint32_t end);
NearestHit nearest_gather_avx2(const SegmentSoA&, double px, double py,
                               const uint32_t* idx, size_t count);
#endif
#ifdef SEMIFLOW_KERNEL_NEON
NearestHit nearest_in_range_neon(const SegmentSoA&, double px, double py,
                                 uint32_t begin, uint32_t end);
NearestHit nearest_gather_neon(const SegmentSoA&, double px, double py,
                               const uint32_t* idx, size_t count);
#endif

/// Runtime-selected variants. SEMIFLOW_SIMD=scalar|avx2|neon|auto overrides
/// CPU detection (unsupported requests fall back to scalar).
NearestHit nearest_in_range(const SegmentSoA&, double px, double py,
                            uint32_t begin, uint32_t end);
NearestHit nearest_gather(const SegmentSoA&, double px, double py,
                          const uint32_t* idx, size_t count);

/// Name of the variant the dispatcher selected ("scalar", "avx2", "neon").
const std::string& active_variant();

/// Closest point on segment i, recomputed with the same per-segment
/// arithmetic as the kernels; param is the clamp of the projection to [0,1].
struct ClosestPoint {
    double param;
    Complex point;
    double dist2;
};
ClosestPoint closest_point_on_segment(const SegmentSoA&, uint32_t i,
                                      double px, double py);

}  // namespace semiflow::kernels
