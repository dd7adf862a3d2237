#pragma once

// Monte Carlo estimators that confront simulation output with the moment,
// regularity, strong-convergence and exponential-integrability estimates of
// the semi-discrete system. Coarse and reference resolutions are coupled by
// common random numbers (counter-based noise restricted per resolution), so
// per-path differences estimate the discretization error, not statistical
// scatter. Every estimator is a deterministic function of (seed, config);
// threads only affect scheduling, reductions run in path order.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sch/integrators.hpp"

namespace sch {

enum class NormKind { H, Hminus1, H1 };

double norm_alpha(NormKind kind);        // 0, -1, +1
const char* norm_name(NormKind kind);    // "H", "Hminus1", "H1"
NormKind parse_norm(const std::string& name);

struct MonteCarloOptions {
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct ErrorCurve {
    NormKind norm_kind = NormKind::H;
    std::vector<int> Ns;                 // strictly increasing, all < N_ref
    int N_ref = 0;
    std::vector<double> errors;          // RMS error per N at time T
    std::vector<double> ci_half_widths;  // 95% CLT half-widths (delta method)
    std::int64_t paths = 0;
    std::int64_t excluded_paths = 0;
    bool sup_error = false;              // sup over recorded snapshots instead of terminal
};

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

struct IncrementCurve {
    std::vector<double> lags;         // snapped to the snapshot stride
    std::vector<double> mean_sq;      // E ||X(s+lag) - X(s)||^2, anchors in [T/2, T]
    std::vector<double> ci_half;
    std::int64_t paths = 0;
    std::int64_t excluded_paths = 0;
};

struct TemporalResult {
    IncrementCurve increments;
    RateFit fit;  // slope of log mean-square increment vs log lag
};

// Pathwise functional whose Monte Carlo mean a MomentReport carries.
struct MomentQuantity {
    enum class Kind { SupH, SupHminus1, SupHgamma, SupE, EndHgamma };
    Kind kind = Kind::SupH;
    int q = 2;            // in {2, 4, 8}
    double gamma = 0.0;   // SupHgamma / EndHgamma only

    std::string name() const;
    static MomentQuantity parse(const std::string& text);
};

struct MomentReport {
    std::string quantity;
    double estimate = 0.0;
    double ci = 0.0;      // 95% half-width
    int N = 0;
    std::int64_t paths = 0;
    std::int64_t excluded_paths = 0;
    std::int64_t overflow_activations = 0;  // lyapunov only
    bool log_domain = false;                // estimate reported as log of the mean
};

// Runs the reference resolution once per path and every coarse N under
// mode-restricted identical noise; the per-N error compares zero-padded
// X^N against X^{N_ref} in the reference space. Computing several norms from
// one sweep shares the coupled simulations. Preconditions: Ns strictly
// increasing and < N_ref, cfg.K >= 4 N_ref. Non-finite paths are excluded
// (budget 1%, else ExclusionBudgetError).
std::vector<ErrorCurve> strong_error_curves(const SchemeConfig& cfg,
                                            const std::optional<Potential>& pot,
                                            const DiffusionSpec& spec, const SpectralField& x0_ref,
                                            const std::vector<int>& Ns, std::int64_t M_paths,
                                            const std::vector<NormKind>& norms,
                                            const MonteCarloOptions& mc, bool sup_error = false,
                                            int mg_factor = 4);

ErrorCurve strong_error_curve(const SchemeConfig& cfg, const std::optional<Potential>& pot,
                              const DiffusionSpec& spec, const SpectralField& x0_ref,
                              const std::vector<int>& Ns, std::int64_t M_paths, NormKind norm_kind,
                              const MonteCarloOptions& mc, bool sup_error = false, int mg_factor = 4);

// OLS of log(error) against log(N); slope estimates the negated empirical
// rate. Throws DegenerateFitError for < 3 points or nonpositive errors.
RateFit fit_loglog_rate(const ErrorCurve& curve);

// OLS of log(ys) against log(xs).
RateFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys);

// Mean-square increments E ||X(s+lag) - X(s)||_H^2 over anchors s in
// [T/2, T - lag], averaged within a path before the cross-path CLT. Lags are
// snapped to the snapshot stride and must stay >= 8 dt.
TemporalResult temporal_regularity_estimate(const SchemeConfig& cfg,
                                            const std::optional<Potential>& pot,
                                            const DiffusionSpec& spec, const SpectralField& x0,
                                            std::int64_t M_paths, const std::vector<double>& lags,
                                            const MonteCarloOptions& mc);

// Monte Carlo mean of the pathwise supremum (over recorded snapshots) of the
// named norm functional.
MomentReport moment_sup_estimate(const SchemeConfig& cfg, const std::optional<Potential>& pot,
                                 const DiffusionSpec& spec, const SpectralField& x0,
                                 std::int64_t M_paths, const MomentQuantity& quantity,
                                 const MonteCarloOptions& mc);

// Same simulations, several functionals.
std::vector<MomentReport> moment_sup_estimates(const SchemeConfig& cfg,
                                               const std::optional<Potential>& pot,
                                               const DiffusionSpec& spec, const SpectralField& x0,
                                               std::int64_t M_paths,
                                               const std::vector<MomentQuantity>& quantities,
                                               const MonteCarloOptions& mc);

// E exp( e^{-beta T} ||X(T)||_{H^-1}^2 / 2 + c int_0^T e^{-beta s} ||X||_L4^4
// + c int_0^T e^{-beta s} ||grad X||^2 ), time integrals by trapezoid over
// snapshots. Exponents above 700 trip the overflow guard: the report switches
// to log-domain statistics instead of failing.
MomentReport lyapunov_exponential_estimate(const SchemeConfig& cfg,
                                           const std::optional<Potential>& pot,
                                           const DiffusionSpec& spec, const SpectralField& x0,
                                           std::int64_t M_paths, double beta, double c,
                                           const MonteCarloOptions& mc);

// sup-H^gamma and terminal-H^gamma second moments per gamma: the gamma < 3/2
// entries should be N-stable, gamma >= 3/2 entries are expected to grow with
// N. Two reports per gamma ("sup-..." and "end-...").
std::vector<MomentReport> regularity_profile(const SchemeConfig& cfg,
                                             const std::optional<Potential>& pot,
                                             const DiffusionSpec& spec, const SpectralField& x0,
                                             std::int64_t M_paths, const std::vector<double>& gammas,
                                             const MonteCarloOptions& mc);

}  // namespace sch
