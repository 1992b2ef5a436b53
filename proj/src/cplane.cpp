#include "semiflow/cplane.hpp"

#include <algorithm>
#include <cmath>

namespace semiflow {

CanonicalDomain make_half_plane(double offset) {
    if (!(offset >= 0.0)) throw std::invalid_argument("half-plane offset must be >= 0");
    return HalfPlane{offset};
}

CanonicalDomain make_square(Complex corner, double side) {
    if (!(side > 0.0)) throw std::invalid_argument("square side must be > 0");
    if (!is_finite(corner)) throw std::invalid_argument("square corner must be finite");
    return Square{corner, side};
}

CanonicalDomain make_horodisc(double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("horodisc parameter must lie in (0, 1)");
    return Horodisc{lambda};
}

bool contains(const CanonicalDomain& domain, Complex z) {
    return boundary_distance(domain, z) > 0.0;
}

double boundary_distance(const CanonicalDomain& domain, Complex z) {
    return std::visit(
        [&](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, UnitDisc>) {
                return 1.0 - std::abs(z);
            } else if constexpr (std::is_same_v<T, HalfPlane>) {
                return z.real() - d.offset;
            } else if constexpr (std::is_same_v<T, Square>) {
                const double dx = std::min(z.real() - d.corner.real(),
                                           d.corner.real() + d.side - z.real());
                const double dy = std::min(z.imag() - d.corner.imag(),
                                           d.corner.imag() + d.side - z.imag());
                return std::min(dx, dy);
            } else {
                static_assert(std::is_same_v<T, Horodisc>);
                return (1.0 - d.lambda) - std::abs(z - Complex{d.lambda, 0.0});
            }
        },
        domain);
}

Complex cayley(Complex z) {
    if (!(std::abs(z) < 1.0 - kBoundaryTol))
        throw std::domain_error("cayley: point not interior to the unit disc");
    return (1.0 + z) / (1.0 - z);
}

Complex inverse_cayley(Complex w) {
    if (!(w.real() > 0.0))
        throw std::domain_error("inverse_cayley: point not in the right half-plane");
    return (w - 1.0) / (w + 1.0);
}

Complex principal_sqrt(Complex z) {
    if (z.imag() == 0.0 && z.real() < 0.0)
        throw std::domain_error("principal_sqrt: point on the branch cut (-inf, 0)");
    Complex r = std::sqrt(z);
    // std::sqrt already picks the principal branch; pin Re >= 0 against
    // -0.0 imaginary parts mapping to the lower edge of the cut.
    if (r.real() < 0.0) r = -r;
    return r;
}

}  // namespace semiflow
