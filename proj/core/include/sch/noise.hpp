#pragma once

// Truncated cylindrical Wiener increments with counter-based generation:
// the increment of mode k over step n of path p is a pure function of
// (master_seed, p, n, k), so any worker can regenerate any increment in any
// order, and runs at different truncation levels N share the same driving
// path by construction (common random numbers).
//
// Generator: Philox4x32-10 keyed by the master seed with counter
// (path, step, k/2, tag); each 128-bit block feeds one Box-Muller pair, so
// modes 2b+1 and 2b+2 come from block b. The mapping is part of the on-disk
// reproducibility contract and must not change.

#include <cstdint>
#include <span>
#include <vector>

namespace sch {

struct WienerIncrements {
    int K = 0;          // mode count
    double dt = 0.0;    // step size; each entry is Normal(0, dt)
    std::vector<double> increments;
};

struct NoisePlan {
    std::uint64_t master_seed = 0;
    int K = 0;
    double dt = 0.0;
    std::int64_t steps = 0;
    std::int64_t paths = 0;
};

// Deterministic Normal(0, dt) increments for (path, step); throws on
// out-of-range indices.
WienerIncrements sample_increments(const NoisePlan& plan, std::int64_t path, std::int64_t step);

// Allocation-free variant for hot loops; out.size() must equal plan.K.
void sample_increments_into(const NoisePlan& plan, std::int64_t path, std::int64_t step,
                            std::span<double> out);

// First K' modes, unchanged: the coupling rule that drives coarse and fine
// Galerkin runs with one Wiener path.
WienerIncrements restrict_modes(const WienerIncrements& w, int K_prime);

namespace detail {

// One standard-normal draw for (seed, path, step, mode k >= 1), before the
// sqrt(dt) scaling. Exposed for tests of order-independence.
double standard_normal_at(std::uint64_t seed, std::uint64_t path, std::uint64_t step, int k);

}  // namespace detail

}  // namespace sch
