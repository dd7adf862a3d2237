#pragma once

// One-step time discretizations of the spectral Galerkin system
//
//   dx_j = -lambda_j (lambda_j x_j + F_j(x)) dt + D_j(x, dW),
//
// with the stiff biharmonic factor handled exactly (ExpEuler) or implicitly
// (SemiImplicit) -- explicit treatment of lambda_j^2 ~ N^4 is unusable. The
// SplitYZ scheme advances the random-PDE decomposition x = y + z, where z is
// the discrete stochastic convolution and y carries the drift:
//
//   z' = S(dt)[z + D(y+z, dW)],   y' = S(dt)[y - dt A F(y+z)],  x' = y' + z'.
//
// The cubic drift is not tamed: blow-up aborts are surfaced as BlowUpError
// rather than silently truncated (a `tamed` config flag is reserved).

#include <cstdint>
#include <optional>
#include <vector>

#include "sch/dynamics.hpp"
#include "sch/noise.hpp"
#include "sch/spectral.hpp"

namespace sch {

enum class Scheme { ExpEuler, SemiImplicit, SplitYZ };

const char* scheme_name(Scheme s);

struct SchemeConfig {
    Scheme scheme = Scheme::ExpEuler;
    double dt = 0.0;
    double T = 0.0;
    int K = 0;                       // noise modes carried by the plan
    std::int64_t record_every = 0;   // 0 selects max(1, steps/64)

    // Step count with T snapped to an integer multiple of dt.
    std::int64_t steps() const;
    std::int64_t effective_record_every() const;
    void validate(int N) const;      // dt, T > 0 and K >= N
};

struct SolverState {
    double t = 0.0;
    SpectralField x;
    // SplitYZ only; x = y + z is recomputed exactly each step.
    std::optional<SpectralField> y;
    std::optional<SpectralField> z;
};

struct Trajectory {
    std::vector<double> times;            // strictly increasing, first 0, last T
    std::vector<SpectralField> states;
    Scheme scheme = Scheme::ExpEuler;
    double dt = 0.0;
    std::uint64_t seed = 0;
    std::int64_t path = 0;
};

// pot == nullopt disables the nonlinear drift (linear stochastic equation);
// comparison runs and several oracles rely on this.
SolverState step_exp_euler(const SolverState& s, double dt, const WienerIncrements& dW,
                           const std::optional<Potential>& pot, const DiffusionSpec& spec);

SolverState step_semi_implicit(const SolverState& s, double dt, const WienerIncrements& dW,
                               const std::optional<Potential>& pot, const DiffusionSpec& spec);

SolverState step_split_yz(const SolverState& s, double dt, const WienerIncrements& dW,
                          const std::optional<Potential>& pot, const DiffusionSpec& spec);

// Iterates the configured stepper from x0 (already in the target space) over
// plan-driven noise, recording snapshots every record_every steps plus the
// initial and final states. Throws BlowUpError naming step and mode if any
// coefficient turns non-finite.
Trajectory simulate(const SpectralField& x0, const SchemeConfig& cfg,
                    const std::optional<Potential>& pot, const DiffusionSpec& spec,
                    const NoisePlan& plan, std::int64_t path);

}  // namespace sch
