#pragma once

#include <cstdint>

#include "semiflow/cplane.hpp"

namespace semiflow {

/// Counter-based generator output: a pure function of (seed, stream, counter).
/// Parallel and serial traversals of the same streams therefore produce
/// bit-identical draws regardless of scheduling.
uint64_t counter_mix(uint64_t key, uint64_t counter);

/// One logical stream, e.g. one Monte Carlo walk. Streams with distinct
/// (seed, stream) pairs are independent.
class RngStream {
  public:
    RngStream(uint64_t seed, uint64_t stream);

    uint64_t next_u64();
    /// Uniform in [0, 1).
    double next_unit();
    /// Uniform in [0, 2*pi).
    double next_angle();
    /// Uniform on the open unit disc (area measure).
    Complex next_in_disc();

  private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

}  // namespace semiflow
