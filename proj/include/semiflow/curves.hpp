#pragma once

#include <vector>

#include "semiflow/flow.hpp"
#include "semiflow/jordan.hpp"

namespace semiflow {

/// Open polyline, >= 2 vertices, consecutive vertices distinct.
struct Polyline {
    std::vector<Complex> vertices;
};

Polyline make_polyline(std::vector<Complex> vertices);

struct EnvelopeSample {
    double x;
    double value;
};

/// Suffix-minimum regularization g(x_i) = min_{j >= i} f(x_j); single reverse
/// pass. Output is non-decreasing, pointwise <= input, idempotent, and
/// transfers any Lipschitz bound of the input. Rejects unsorted x.
std::vector<EnvelopeSample> monotone_envelope(std::vector<EnvelopeSample> samples);

/// Replaces the imaginary part of the sampled trajectory by its monotone
/// envelope (in the time parameter); real parts are untouched.
/// Requires >= 64 samples.
Polyline envelope_curve(const Trajectory& traj);

double polyline_length(const Polyline& p);

/// CSV round-trip, one "re,im" row per vertex.
std::string polyline_csv(const Polyline& p);
Polyline polyline_from_csv_text(const std::string& text);

/// Jordan domain bounded by the envelope curve and the right-hand portion of
/// the square boundary. The envelope must cross the square's horizontal band
/// bottom to top (endpoints may overshoot; they are clipped by linear
/// interpolation), stay within the square horizontally, and be monotone in
/// both coordinates; then the boundary length is <= 4 * side.
JordanDomain build_proof_domain(const Square& square, const Polyline& envelope);

/// Same construction, also reporting which boundary segments came from the
/// envelope (contiguous range ending at the last segment of the ring).
struct ProofDomainParts {
    JordanDomain domain;
    uint32_t cut_first_segment;
    uint32_t cut_segment_count;
};
ProofDomainParts build_proof_domain_parts(const Square& square, const Polyline& envelope);

}  // namespace semiflow
