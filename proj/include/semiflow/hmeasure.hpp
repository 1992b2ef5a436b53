#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "semiflow/jordan.hpp"

namespace semiflow {

struct HMEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    int64_t walks = 0;
    double stop_tol = 0.0;
    uint64_t seed = 0;
};

/// Walk-on-spheres estimate of the harmonic measure of subset A seen from w:
/// the fraction of Brownian exit points (snapped to the nearest boundary
/// point once within the stop tolerance) that land in A. stderr is the
/// binomial sqrt(p(1-p)/N). Walks are keyed by (seed, walk index), so the
/// estimate is bit-identical across thread counts and reruns.
HMEstimate harmonic_measure(const JordanDomain& domain, Complex w,
                            const BoundarySubset& subset, int64_t walks, uint64_t seed);

/// Classifies one shared walk set against several subsets; this is also what
/// additivity/monotonicity checks across subsets should use.
std::vector<HMEstimate> harmonic_measure_multi(const JordanDomain& domain, Complex w,
                                               std::span<const BoundarySubset> subsets,
                                               int64_t walks, uint64_t seed);

/// Exact harmonic measure of a boundary arc of the unit disc seen from the
/// center. Requires 0 <= theta2 - theta1 <= 2*pi.
double disc_arc_oracle(double theta1, double theta2);

// ---------------------------------------------------------------------------
// Lavrentiev desk experiment: a family of cut squares (side a, boundary
// length <= 4a, containing D(w, a/4)), probed with nested sub-arcs of the cut.

struct LavrentievConfig {
    double a = 1.0;
    /// Estimation point relative to the square: corner + offset * side.
    Complex center_offset{0.5, 0.5};
    int domain_count = 20;
    /// Tested ratios ell(A)/a, ascending.
    std::vector<double> fractions;  // empty => 0.01, 0.02, ..., 0.50
    int64_t walks = 100000;
    uint64_t seed = 7;

    std::vector<double> fraction_grid() const;
};

struct LavrentievRow {
    int domain_index;
    double fraction;   // ell(A)/a
    double ell;        // ell(A)
    double omega;      // estimate
    double stderr_;
};

struct LavrentievResult {
    std::vector<LavrentievRow> rows;
    /// Largest tested fraction f such that every row with fraction <= f has
    /// omega + 3 stderr < 1/8, across the whole family. 0 when even the
    /// smallest fraction fails.
    double rho_hat = 0.0;
    /// All rows with fraction <= threshold_fraction pass omega + 3 stderr < 1/8.
    double threshold_fraction = 0.02;
    bool small_subsets_pass = false;
};

LavrentievResult lavrentiev_experiment(const LavrentievConfig& cfg);

// ---------------------------------------------------------------------------
// Subordination: inner domain contained in the outer one; the inner
// comparison set is the part of the inner boundary away from the outer
// boundary plus the trace of the shared outer subset.

struct SubordinationResult {
    HMEstimate inner;
    HMEstimate outer;
    bool pass = false;  // inner + 3 stderr >= outer - 3 stderr
};

SubordinationResult subordination_check(const JordanDomain& inner,
                                        const JordanDomain& outer, Complex w,
                                        const BoundarySubset& shared_on_outer,
                                        int64_t walks, uint64_t seed);

/// One generated cut-square instance for the experiments: a monotone
/// envelope cut into the square [corner, corner + (1+i) a], the resulting
/// proof domain, and the cut portion of its boundary.
struct CutSquare {
    JordanDomain domain;
    BoundarySubset cut;
    double cut_length = 0.0;
};

/// Deterministic family member (seeded); re_span caps the horizontal extent
/// of the cut so that D(center, a/4) stays inside.
CutSquare make_cut_square(Complex corner, double a, uint64_t seed, uint64_t index,
                          double re_span_fraction = 0.125);

}  // namespace semiflow
