#pragma once

#include <cmath>

#include "semiflow/cplane.hpp"

namespace semiflow::testing {

/// Halton low-discrepancy sequence, bases 2 and 3.
inline double halton(int index, int base) {
    double f = 1.0, r = 0.0;
    for (int i = index + 1; i > 0; i /= base) {
        f /= base;
        r += f * (i % base);
    }
    return r;
}

/// Quasi-random point of the open unit disc (area measure).
inline Complex halton_disc(int index) {
    const double r = std::sqrt(halton(index, 2));
    const double th = 2.0 * 3.14159265358979323846 * halton(index, 3);
    return {r * std::cos(th), r * std::sin(th)};
}

}  // namespace semiflow::testing
