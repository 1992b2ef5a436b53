#pragma once

#include <complex>
#include <stdexcept>
#include <variant>

namespace semiflow {

using Complex = std::complex<double>;

/// Tolerance used when testing membership of mapped/round-tripped points
/// against domain boundaries.
inline constexpr double kBoundaryTol = 1e-12;

/// A point of the extended plane. The point at infinity is a tagged state,
/// never an overflowed coordinate.
struct ExtendedComplex {
    Complex value{0.0, 0.0};
    bool at_infinity = false;

    static ExtendedComplex infinity() { return {Complex{0.0, 0.0}, true}; }
    static ExtendedComplex finite(Complex z) { return {z, false}; }
};

// ---------------------------------------------------------------------------
// Canonical domains

struct UnitDisc {};

/// { z : Re(z) > offset }, offset >= 0.
struct HalfPlane {
    double offset = 0.0;
};

/// Axis-aligned open square, lower-left corner and side length.
struct Square {
    Complex corner{0.0, 0.0};
    double side = 1.0;
};

/// Disc D(lambda, 1 - lambda), internally tangent to the unit circle at 1.
struct Horodisc {
    double lambda = 0.5;
};

using CanonicalDomain = std::variant<UnitDisc, HalfPlane, Square, Horodisc>;

CanonicalDomain make_half_plane(double offset);
CanonicalDomain make_square(Complex corner, double side);
CanonicalDomain make_horodisc(double lambda);

/// True iff z lies in the open domain.
bool contains(const CanonicalDomain& domain, Complex z);

/// Distance from z to the domain boundary, positive inside, negative outside.
/// For the square the outside value is the (negative) face distance, which is
/// enough for containment and step-control decisions.
double boundary_distance(const CanonicalDomain& domain, Complex z);

// ---------------------------------------------------------------------------
// Conformal plumbing

/// Disc -> right half-plane Moebius map z -> (1+z)/(1-z).
/// Rejects |z| >= 1 - kBoundaryTol.
Complex cayley(Complex z);

/// Right half-plane -> disc inverse w -> (w-1)/(w+1). Rejects Re(w) <= 0.
Complex inverse_cayley(Complex w);

/// Principal branch of the square root, cut along (-inf, 0); Re(result) >= 0.
/// Rejects points on the cut (z real, z < 0).
Complex principal_sqrt(Complex z);

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace semiflow
