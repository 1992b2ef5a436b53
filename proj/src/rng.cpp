#include "semiflow/rng.hpp"

#include <cmath>
#include <numbers>

namespace semiflow {

namespace {

// splitmix64 finalizer (Steele/Lea/Flood; Vigna's fixed-increment variant).
inline uint64_t mix64(uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace

uint64_t counter_mix(uint64_t key, uint64_t counter) {
    return mix64(key + counter * kGolden);
}

RngStream::RngStream(uint64_t seed, uint64_t stream)
    : key_(mix64(seed ^ mix64(stream + kGolden))) {}

uint64_t RngStream::next_u64() { return counter_mix(key_, counter_++); }

double RngStream::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_angle() {
    return next_unit() * (2.0 * std::numbers::pi);
}

Complex RngStream::next_in_disc() {
    const double r = std::sqrt(next_unit());
    const double a = next_angle();
    return Complex{r * std::cos(a), r * std::sin(a)};
}

}  // namespace semiflow
