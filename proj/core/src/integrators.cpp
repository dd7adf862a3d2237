#include "sch/integrators.hpp"

#include <cmath>
#include <string>

#include "sch/errors.hpp"

namespace sch {

namespace {

void check_dt(const WienerIncrements& dW, double dt) {
    if (dW.dt != dt)
        throw ConfigError("stepper: dW.dt=" + std::to_string(dW.dt) + " does not match dt=" +
                          std::to_string(dt));
}

std::vector<double> decay_factors(const SpectralSpace& sp, double dt) {
    std::vector<double> e(sp.modes());
    const auto& lam = sp.lambdas();
    for (int j = 0; j < sp.modes(); ++j) e[j] = std::exp(-lam[j] * lam[j] * dt);
    return e;
}

std::vector<double> implicit_factors(const SpectralSpace& sp, double dt) {
    std::vector<double> e(sp.modes());
    const auto& lam = sp.lambdas();
    for (int j = 0; j < sp.modes(); ++j) e[j] = 1.0 / (1.0 + dt * lam[j] * lam[j]);
    return e;
}

// Shared core: out_j = factor_j * (x_j - dt lambda_j F_j + D_j).
SpectralField advance(const SpectralField& x, double dt, const WienerIncrements& dW,
                      const std::optional<Potential>& pot, const DiffusionSpec& spec,
                      const std::vector<double>& factors) {
    const auto& sp = *x.space;
    const int N = sp.modes();
    const auto& lam = sp.lambdas();
    SpectralField out = zero_field(x.space);

    std::vector<double> F;
    if (pot) F = drift_f(x, *pot).coeffs;
    std::vector<double> D;
    if (spec.kind() != DiffusionSpec::Kind::Zero) D = diffusion_apply(x, dW, spec).coeffs;

    for (int j = 0; j < N; ++j) {
        double v = x.coeffs[j];
        if (pot) v -= dt * lam[j] * F[j];
        if (!D.empty()) v += D[j];
        out.coeffs[j] = factors[j] * v;
    }
    return out;
}

void check_finite_or_throw(const SpectralField& x, std::int64_t path, std::int64_t step, double t) {
    for (std::size_t j = 0; j < x.coeffs.size(); ++j)
        if (!std::isfinite(x.coeffs[j])) throw BlowUpError(path, step, static_cast<int>(j + 1), t);
}

}  // namespace

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::ExpEuler: return "exp-euler";
        case Scheme::SemiImplicit: return "semi-implicit";
        case Scheme::SplitYZ: return "split-yz";
    }
    return "?";
}

std::int64_t SchemeConfig::steps() const {
    const std::int64_t n = std::llround(T / dt);
    return n < 1 ? 1 : n;
}

std::int64_t SchemeConfig::effective_record_every() const {
    if (record_every > 0) return record_every;
    const std::int64_t n = steps();
    return n / 64 > 0 ? n / 64 : 1;
}

void SchemeConfig::validate(int N) const {
    if (!(dt > 0.0)) throw ConfigError("dt must be positive, got " + std::to_string(dt));
    if (!(T > 0.0)) throw ConfigError("T must be positive, got " + std::to_string(T));
    if (K < N)
        throw ConfigError("noise mode count K=" + std::to_string(K) + " must be >= N=" + std::to_string(N));
}

SolverState step_exp_euler(const SolverState& s, double dt, const WienerIncrements& dW,
                           const std::optional<Potential>& pot, const DiffusionSpec& spec) {
    check_dt(dW, dt);
    SolverState out;
    out.t = s.t + dt;
    out.x = advance(s.x, dt, dW, pot, spec, decay_factors(*s.x.space, dt));
    return out;
}

SolverState step_semi_implicit(const SolverState& s, double dt, const WienerIncrements& dW,
                               const std::optional<Potential>& pot, const DiffusionSpec& spec) {
    check_dt(dW, dt);
    SolverState out;
    out.t = s.t + dt;
    out.x = advance(s.x, dt, dW, pot, spec, implicit_factors(*s.x.space, dt));
    return out;
}

SolverState step_split_yz(const SolverState& s, double dt, const WienerIncrements& dW,
                          const std::optional<Potential>& pot, const DiffusionSpec& spec) {
    check_dt(dW, dt);
    if (!s.y || !s.z) throw ConfigError("step_split_yz: state does not carry the (y, z) decomposition");
    const auto& sp = *s.x.space;
    const int N = sp.modes();
    const auto& lam = sp.lambdas();
    const auto decay = decay_factors(sp, dt);

    std::vector<double> F;
    if (pot) F = drift_f(s.x, *pot).coeffs;
    std::vector<double> D;
    if (spec.kind() != DiffusionSpec::Kind::Zero) D = diffusion_apply(s.x, dW, spec).coeffs;

    SolverState out;
    out.t = s.t + dt;
    out.y = zero_field(s.x.space);
    out.z = zero_field(s.x.space);
    out.x = zero_field(s.x.space);
    for (int j = 0; j < N; ++j) {
        double zj = s.z->coeffs[j];
        if (!D.empty()) zj += D[j];
        double yj = s.y->coeffs[j];
        if (pot) yj -= dt * lam[j] * F[j];
        out.z->coeffs[j] = decay[j] * zj;
        out.y->coeffs[j] = decay[j] * yj;
        out.x.coeffs[j] = out.y->coeffs[j] + out.z->coeffs[j];
    }
    return out;
}

Trajectory simulate(const SpectralField& x0, const SchemeConfig& cfg,
                    const std::optional<Potential>& pot, const DiffusionSpec& spec,
                    const NoisePlan& plan, std::int64_t path) {
    const auto& sp = *x0.space;
    const int N = sp.modes();
    cfg.validate(N);
    validated(x0);
    if (plan.dt != cfg.dt)
        throw ConfigError("simulate: plan.dt=" + std::to_string(plan.dt) + " != cfg.dt=" + std::to_string(cfg.dt));
    if (plan.K != cfg.K)
        throw ConfigError("simulate: plan.K=" + std::to_string(plan.K) + " != cfg.K=" + std::to_string(cfg.K));
    const std::int64_t n = cfg.steps();
    if (plan.steps < n)
        throw ConfigError("simulate: plan covers " + std::to_string(plan.steps) + " steps, run needs " +
                          std::to_string(n));
    const std::int64_t stride = cfg.effective_record_every();

    // Factors precomputed once; identical arithmetic to the single-step API.
    const auto factors = cfg.scheme == Scheme::SemiImplicit ? implicit_factors(sp, cfg.dt)
                                                            : decay_factors(sp, cfg.dt);
    const auto& lam = sp.lambdas();
    const bool split = cfg.scheme == Scheme::SplitYZ;

    Trajectory traj;
    traj.scheme = cfg.scheme;
    traj.dt = cfg.dt;
    traj.seed = plan.master_seed;
    traj.path = path;
    traj.times.reserve(static_cast<std::size_t>(n / stride + 2));
    traj.states.reserve(static_cast<std::size_t>(n / stride + 2));
    traj.times.push_back(0.0);
    traj.states.push_back(x0);

    SpectralField x = x0;
    SpectralField y = split ? x0 : SpectralField{};
    SpectralField z = split ? zero_field(x0.space) : SpectralField{};

    WienerIncrements dW;
    dW.K = plan.K;
    dW.dt = plan.dt;
    dW.increments.resize(plan.K);
    const bool noisy = spec.kind() != DiffusionSpec::Kind::Zero;

    for (std::int64_t s = 0; s < n; ++s) {
        if (noisy) sample_increments_into(plan, path, s, dW.increments);
        std::vector<double> F;
        if (pot) F = drift_f(x, *pot).coeffs;
        std::vector<double> D;
        if (noisy) D = diffusion_apply(x, dW, spec).coeffs;

        if (split) {
            for (int j = 0; j < N; ++j) {
                double zj = z.coeffs[j];
                if (noisy) zj += D[j];
                double yj = y.coeffs[j];
                if (pot) yj -= cfg.dt * lam[j] * F[j];
                z.coeffs[j] = factors[j] * zj;
                y.coeffs[j] = factors[j] * yj;
                x.coeffs[j] = y.coeffs[j] + z.coeffs[j];
            }
        } else {
            for (int j = 0; j < N; ++j) {
                double v = x.coeffs[j];
                if (pot) v -= cfg.dt * lam[j] * F[j];
                if (noisy) v += D[j];
                x.coeffs[j] = factors[j] * v;
            }
        }

        const double t = static_cast<double>(s + 1) * cfg.dt;
        check_finite_or_throw(x, path, s, t);
        if ((s + 1) % stride == 0 && s + 1 != n) {
            traj.times.push_back(t);
            traj.states.push_back(x);
        }
    }
    traj.times.push_back(static_cast<double>(n) * cfg.dt);
    traj.states.push_back(x);
    return traj;
}

}  // namespace sch
