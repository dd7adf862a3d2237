#include "sch/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sch/errors.hpp"
#include "sch/parallel.hpp"

namespace sch {

namespace {

constexpr double kZ95 = 1.959963984540054;  // 97.5% normal quantile

struct MeanCi {
    double mean = 0.0;
    double ci_half = 0.0;
};

MeanCi mean_ci(const std::vector<double>& xs) {
    MeanCi r;
    const std::size_t n = xs.size();
    if (n == 0) return r;
    r.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
    if (n > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - r.mean) * (x - r.mean);
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        r.ci_half = kZ95 * sd / std::sqrt(static_cast<double>(n));
    }
    return r;
}

void check_exclusion_budget(std::int64_t excluded, std::int64_t total) {
    if (excluded * 100 > total) throw ExclusionBudgetError(excluded, total);
}

// ||embed(xN) - xref||_{H^alpha} in the reference space (zero-padding xN).
double embedded_diff_norm(const SpectralField& xN, const SpectralField& xref, double alpha) {
    const auto& lam = xref.space->lambdas();
    const std::size_t n_coarse = xN.coeffs.size();
    double acc = 0.0;
    for (std::size_t j = 0; j < xref.coeffs.size(); ++j) {
        const double d = (j < n_coarse ? xN.coeffs[j] : 0.0) - xref.coeffs[j];
        acc += (alpha == 0.0 ? 1.0 : std::pow(lam[j], alpha)) * d * d;
    }
    return std::sqrt(acc);
}

double quantity_value(const Trajectory& traj, const MomentQuantity& qty) {
    using Kind = MomentQuantity::Kind;
    double v = 0.0;
    switch (qty.kind) {
        case Kind::SupH:
        case Kind::SupHminus1:
        case Kind::SupHgamma: {
            const double alpha = qty.kind == Kind::SupH ? 0.0
                                 : qty.kind == Kind::SupHminus1 ? -1.0
                                                                : qty.gamma;
            for (const auto& x : traj.states) v = std::max(v, sobolev_norm(x, alpha));
            break;
        }
        case Kind::SupE:
            for (const auto& x : traj.states) v = std::max(v, lp_norm(x, std::numeric_limits<double>::infinity()));
            break;
        case Kind::EndHgamma:
            v = sobolev_norm(traj.states.back(), qty.gamma);
            break;
    }
    double out = v * v;
    for (int k = 2; k < qty.q; k += 2) out *= v * v;
    return out;
}

}  // namespace

double norm_alpha(NormKind kind) {
    switch (kind) {
        case NormKind::H: return 0.0;
        case NormKind::Hminus1: return -1.0;
        case NormKind::H1: return 1.0;
    }
    return 0.0;
}

const char* norm_name(NormKind kind) {
    switch (kind) {
        case NormKind::H: return "H";
        case NormKind::Hminus1: return "Hminus1";
        case NormKind::H1: return "H1";
    }
    return "?";
}

NormKind parse_norm(const std::string& name) {
    if (name == "H") return NormKind::H;
    if (name == "Hminus1") return NormKind::Hminus1;
    if (name == "H1") return NormKind::H1;
    throw ConfigError("unknown norm '" + name + "' (expected H, Hminus1 or H1)");
}

std::string MomentQuantity::name() const {
    using Kind = MomentQuantity::Kind;
    std::string base;
    switch (kind) {
        case Kind::SupH: base = "sup-H"; break;
        case Kind::SupHminus1: base = "sup-Hminus1"; break;
        case Kind::SupHgamma: base = "sup-Hgamma"; break;
        case Kind::SupE: base = "sup-E"; break;
        case Kind::EndHgamma: base = "end-Hgamma"; break;
    }
    base += "-" + std::to_string(q);
    if (kind == Kind::SupHgamma || kind == Kind::EndHgamma) {
        std::string g = std::to_string(gamma);
        while (g.size() > 1 && g.back() == '0') g.pop_back();
        if (!g.empty() && g.back() == '.') g.pop_back();
        base += "@" + g;
    }
    return base;
}

MomentQuantity MomentQuantity::parse(const std::string& text) {
    MomentQuantity qty;
    std::string body = text;
    const auto at = text.find('@');
    if (at != std::string::npos) {
        qty.gamma = std::stod(text.substr(at + 1));
        body = text.substr(0, at);
    }
    const auto last_dash = body.rfind('-');
    if (last_dash == std::string::npos || last_dash + 1 >= body.size())
        throw ConfigError("cannot parse moment quantity '" + text + "'");
    qty.q = std::stoi(body.substr(last_dash + 1));
    if (qty.q != 2 && qty.q != 4 && qty.q != 8)
        throw ConfigError("moment quantity '" + text + "': q must be one of {2, 4, 8}");
    const std::string head = body.substr(0, last_dash);
    if (head == "sup-H") qty.kind = Kind::SupH;
    else if (head == "sup-Hminus1") qty.kind = Kind::SupHminus1;
    else if (head == "sup-Hgamma") qty.kind = Kind::SupHgamma;
    else if (head == "sup-E") qty.kind = Kind::SupE;
    else if (head == "end-Hgamma") qty.kind = Kind::EndHgamma;
    else throw ConfigError("unknown moment quantity '" + text + "'");
    if ((qty.kind == Kind::SupHgamma || qty.kind == Kind::EndHgamma) && at == std::string::npos)
        throw ConfigError("moment quantity '" + text + "' needs a gamma suffix, e.g. sup-Hgamma-2@1.0");
    return qty;
}

std::vector<ErrorCurve> strong_error_curves(const SchemeConfig& cfg,
                                            const std::optional<Potential>& pot,
                                            const DiffusionSpec& spec, const SpectralField& x0_ref,
                                            const std::vector<int>& Ns, std::int64_t M_paths,
                                            const std::vector<NormKind>& norms,
                                            const MonteCarloOptions& mc, bool sup_error,
                                            int mg_factor) {
    const auto& ref_space = x0_ref.space;
    const int N_ref = ref_space->modes();
    if (Ns.size() < 1) throw ConfigError("strong_error_curves: empty resolution list");
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        if (Ns[i] >= N_ref)
            throw ConfigError("strong_error_curves: N=" + std::to_string(Ns[i]) +
                              " must be < N_ref=" + std::to_string(N_ref));
        if (i > 0 && Ns[i] <= Ns[i - 1])
            throw ConfigError("strong_error_curves: resolutions must be strictly increasing");
    }
    if (cfg.K < 4 * N_ref)
        throw ConfigError("strong_error_curves: K=" + std::to_string(cfg.K) +
                          " violates the coupling precondition K >= 4 N_ref = " + std::to_string(4 * N_ref));
    if (M_paths < 1) throw ConfigError("strong_error_curves: M_paths must be >= 1");
    cfg.validate(N_ref);

    SchemeConfig run_cfg = cfg;
    if (!sup_error) run_cfg.record_every = cfg.steps();  // terminal state only

    const double L = ref_space->length();
    std::vector<SpacePtr> spaces;
    std::vector<SpectralField> x0s;
    for (int N : Ns) {
        auto sp = build_space(L, N, mg_factor * N);
        SpectralField x0{sp, std::vector<double>(x0_ref.coeffs.begin(), x0_ref.coeffs.begin() + N)};
        spaces.push_back(sp);
        x0s.push_back(std::move(x0));
    }

    const NoisePlan plan{mc.seed, cfg.K, cfg.dt, cfg.steps(), M_paths};
    const std::size_t n_norms = norms.size();
    const std::size_t n_res = Ns.size();

    // err2[path][iN * n_norms + inorm]; a path is excluded entirely if any of
    // its runs (reference or coarse) is non-finite, keeping per-N samples
    // aligned.
    std::vector<std::vector<double>> err2(static_cast<std::size_t>(M_paths));
    std::vector<char> excluded(static_cast<std::size_t>(M_paths), 0);

    parallel_for(static_cast<std::size_t>(M_paths), mc.threads, [&](std::size_t p) {
        try {
            const Trajectory ref = simulate(x0_ref, run_cfg, pot, spec, plan, static_cast<std::int64_t>(p));
            std::vector<double> row(n_res * n_norms, 0.0);
            for (std::size_t i = 0; i < n_res; ++i) {
                const Trajectory coarse =
                    simulate(x0s[i], run_cfg, pot, spec, plan, static_cast<std::int64_t>(p));
                for (std::size_t q = 0; q < n_norms; ++q) {
                    const double alpha = norm_alpha(norms[q]);
                    double e2;
                    if (sup_error) {
                        double sup = 0.0;
                        for (std::size_t k = 0; k < ref.states.size(); ++k)
                            sup = std::max(sup, embedded_diff_norm(coarse.states[k], ref.states[k], alpha));
                        e2 = sup * sup;
                    } else {
                        const double e = embedded_diff_norm(coarse.states.back(), ref.states.back(), alpha);
                        e2 = e * e;
                    }
                    row[i * n_norms + q] = e2;
                }
            }
            err2[p] = std::move(row);
        } catch (const BlowUpError&) {
            excluded[p] = 1;
        }
    });

    std::int64_t n_excluded = 0;
    for (char e : excluded) n_excluded += e;
    check_exclusion_budget(n_excluded, M_paths);

    std::vector<ErrorCurve> curves(n_norms);
    for (std::size_t q = 0; q < n_norms; ++q) {
        ErrorCurve& c = curves[q];
        c.norm_kind = norms[q];
        c.Ns = Ns;
        c.N_ref = N_ref;
        c.paths = M_paths;
        c.excluded_paths = n_excluded;
        c.sup_error = sup_error;
        for (std::size_t i = 0; i < n_res; ++i) {
            std::vector<double> samples;
            samples.reserve(static_cast<std::size_t>(M_paths));
            for (std::int64_t p = 0; p < M_paths; ++p)
                if (!excluded[p]) samples.push_back(err2[p][i * n_norms + q]);
            const MeanCi s = mean_ci(samples);
            const double err = std::sqrt(std::max(0.0, s.mean));
            c.errors.push_back(err);
            // Delta method: hw(err) = hw(err^2) / (2 err).
            c.ci_half_widths.push_back(err > 0.0 ? s.ci_half / (2.0 * err) : 0.0);
        }
    }
    return curves;
}

ErrorCurve strong_error_curve(const SchemeConfig& cfg, const std::optional<Potential>& pot,
                              const DiffusionSpec& spec, const SpectralField& x0_ref,
                              const std::vector<int>& Ns, std::int64_t M_paths, NormKind norm_kind,
                              const MonteCarloOptions& mc, bool sup_error, int mg_factor) {
    return strong_error_curves(cfg, pot, spec, x0_ref, Ns, M_paths, {norm_kind}, mc, sup_error,
                               mg_factor)[0];
}

RateFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 3)
        throw DegenerateFitError("log-log fit needs >= 3 points");
    std::vector<double> lx(xs.size()), ly(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw DegenerateFitError("log-log fit on nonpositive data (exact resolution or degenerate run)");
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
    }
    const double n = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    RateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

RateFit fit_loglog_rate(const ErrorCurve& curve) {
    std::vector<double> Ns(curve.Ns.begin(), curve.Ns.end());
    return fit_loglog(Ns, curve.errors);
}

TemporalResult temporal_regularity_estimate(const SchemeConfig& cfg,
                                            const std::optional<Potential>& pot,
                                            const DiffusionSpec& spec, const SpectralField& x0,
                                            std::int64_t M_paths, const std::vector<double>& lags,
                                            const MonteCarloOptions& mc) {
    const int N = x0.space->modes();
    cfg.validate(N);
    if (lags.size() < 3) throw ConfigError("temporal_regularity_estimate: need >= 3 lags");
    const std::int64_t n = cfg.steps();
    const std::int64_t stride = cfg.effective_record_every();
    if (n % stride != 0)
        throw ConfigError("temporal_regularity_estimate: record_every must divide the step count");
    const double snap_dt = static_cast<double>(stride) * cfg.dt;
    const std::int64_t n_snap = n / stride;  // snapshots at i*snap_dt, i=0..n_snap

    std::vector<std::int64_t> lag_steps;
    std::vector<double> snapped;
    for (double lag : lags) {
        if (lag < 8.0 * cfg.dt)
            throw ConfigError("lag " + std::to_string(lag) + " below the resolution floor 8 dt = " +
                              std::to_string(8.0 * cfg.dt));
        const std::int64_t k = std::llround(lag / snap_dt);
        if (k < 1 || k >= n_snap)
            throw ConfigError("lag " + std::to_string(lag) + " not representable on the snapshot grid");
        lag_steps.push_back(k);
        snapped.push_back(static_cast<double>(k) * snap_dt);
    }

    const NoisePlan plan{mc.seed, cfg.K, cfg.dt, n, M_paths};
    const std::size_t n_lags = lag_steps.size();
    std::vector<std::vector<double>> per_path(static_cast<std::size_t>(M_paths));
    std::vector<char> excluded(static_cast<std::size_t>(M_paths), 0);

    parallel_for(static_cast<std::size_t>(M_paths), mc.threads, [&](std::size_t p) {
        try {
            const Trajectory traj = simulate(x0, cfg, pot, spec, plan, static_cast<std::int64_t>(p));
            std::vector<double> vals(n_lags, 0.0);
            for (std::size_t il = 0; il < n_lags; ++il) {
                const std::int64_t k = lag_steps[il];
                double acc = 0.0;
                std::int64_t count = 0;
                for (std::int64_t i = 0; i + k <= n_snap; ++i) {
                    if (traj.times[i] < cfg.T / 2.0) continue;  // anchors in [T/2, T]
                    const auto& a = traj.states[i].coeffs;
                    const auto& b = traj.states[i + k].coeffs;
                    double d2 = 0.0;
                    for (std::size_t j = 0; j < a.size(); ++j) d2 += (b[j] - a[j]) * (b[j] - a[j]);
                    acc += d2;
                    ++count;
                }
                vals[il] = count > 0 ? acc / static_cast<double>(count) : 0.0;
            }
            per_path[p] = std::move(vals);
        } catch (const BlowUpError&) {
            excluded[p] = 1;
        }
    });

    std::int64_t n_excluded = 0;
    for (char e : excluded) n_excluded += e;
    check_exclusion_budget(n_excluded, M_paths);

    TemporalResult result;
    result.increments.lags = snapped;
    result.increments.paths = M_paths;
    result.increments.excluded_paths = n_excluded;
    for (std::size_t il = 0; il < n_lags; ++il) {
        std::vector<double> samples;
        for (std::int64_t p = 0; p < M_paths; ++p)
            if (!excluded[p]) samples.push_back(per_path[p][il]);
        const MeanCi s = mean_ci(samples);
        result.increments.mean_sq.push_back(s.mean);
        result.increments.ci_half.push_back(s.ci_half);
    }
    result.fit = fit_loglog(result.increments.lags, result.increments.mean_sq);
    return result;
}

std::vector<MomentReport> moment_sup_estimates(const SchemeConfig& cfg,
                                               const std::optional<Potential>& pot,
                                               const DiffusionSpec& spec, const SpectralField& x0,
                                               std::int64_t M_paths,
                                               const std::vector<MomentQuantity>& quantities,
                                               const MonteCarloOptions& mc) {
    const int N = x0.space->modes();
    cfg.validate(N);
    if (quantities.empty()) throw ConfigError("moment_sup_estimates: no quantities");
    const NoisePlan plan{mc.seed, cfg.K, cfg.dt, cfg.steps(), M_paths};

    std::vector<std::vector<double>> per_path(static_cast<std::size_t>(M_paths));
    std::vector<char> excluded(static_cast<std::size_t>(M_paths), 0);
    parallel_for(static_cast<std::size_t>(M_paths), mc.threads, [&](std::size_t p) {
        try {
            const Trajectory traj = simulate(x0, cfg, pot, spec, plan, static_cast<std::int64_t>(p));
            std::vector<double> vals(quantities.size());
            for (std::size_t i = 0; i < quantities.size(); ++i) vals[i] = quantity_value(traj, quantities[i]);
            per_path[p] = std::move(vals);
        } catch (const BlowUpError&) {
            excluded[p] = 1;
        }
    });

    std::int64_t n_excluded = 0;
    for (char e : excluded) n_excluded += e;
    check_exclusion_budget(n_excluded, M_paths);

    std::vector<MomentReport> reports;
    for (std::size_t i = 0; i < quantities.size(); ++i) {
        std::vector<double> samples;
        for (std::int64_t p = 0; p < M_paths; ++p)
            if (!excluded[p]) samples.push_back(per_path[p][i]);
        const MeanCi s = mean_ci(samples);
        MomentReport r;
        r.quantity = quantities[i].name();
        r.estimate = s.mean;
        r.ci = s.ci_half;
        r.N = N;
        r.paths = M_paths;
        r.excluded_paths = n_excluded;
        reports.push_back(std::move(r));
    }
    return reports;
}

MomentReport moment_sup_estimate(const SchemeConfig& cfg, const std::optional<Potential>& pot,
                                 const DiffusionSpec& spec, const SpectralField& x0,
                                 std::int64_t M_paths, const MomentQuantity& quantity,
                                 const MonteCarloOptions& mc) {
    return moment_sup_estimates(cfg, pot, spec, x0, M_paths, {quantity}, mc)[0];
}

MomentReport lyapunov_exponential_estimate(const SchemeConfig& cfg,
                                           const std::optional<Potential>& pot,
                                           const DiffusionSpec& spec, const SpectralField& x0,
                                           std::int64_t M_paths, double beta, double c,
                                           const MonteCarloOptions& mc) {
    const int N = x0.space->modes();
    cfg.validate(N);
    if (!(beta > 0.0)) throw ConfigError("lyapunov: beta must be positive");
    if (!(c > 0.0)) throw ConfigError("lyapunov: c must be positive");
    const NoisePlan plan{mc.seed, cfg.K, cfg.dt, cfg.steps(), M_paths};

    std::vector<double> exponents(static_cast<std::size_t>(M_paths), 0.0);
    std::vector<char> excluded(static_cast<std::size_t>(M_paths), 0);
    parallel_for(static_cast<std::size_t>(M_paths), mc.threads, [&](std::size_t p) {
        try {
            const Trajectory traj = simulate(x0, cfg, pot, spec, plan, static_cast<std::int64_t>(p));
            const std::size_t n = traj.states.size();
            std::vector<double> f4(n), fg(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double damp = std::exp(-beta * traj.times[i]);
                const double l4 = lp_norm(traj.states[i], 4.0);
                const double h1 = sobolev_norm(traj.states[i], 1.0);
                f4[i] = damp * l4 * l4 * l4 * l4;
                fg[i] = damp * h1 * h1;
            }
            double i4 = 0.0, ig = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const double h = traj.times[i + 1] - traj.times[i];
                i4 += 0.5 * h * (f4[i] + f4[i + 1]);
                ig += 0.5 * h * (fg[i] + fg[i + 1]);
            }
            const double hm1 = sobolev_norm(traj.states.back(), -1.0);
            exponents[p] = 0.5 * std::exp(-beta * traj.times.back()) * hm1 * hm1 + c * (i4 + ig);
        } catch (const BlowUpError&) {
            excluded[p] = 1;
        }
    });

    std::int64_t n_excluded = 0;
    for (char e : excluded) n_excluded += e;
    check_exclusion_budget(n_excluded, M_paths);

    std::vector<double> S;
    for (std::int64_t p = 0; p < M_paths; ++p)
        if (!excluded[p]) S.push_back(exponents[p]);

    MomentReport r;
    r.quantity = "lyapunov-exp@beta=" + std::to_string(beta) + ",c=" + std::to_string(c);
    r.N = N;
    r.paths = M_paths;
    r.excluded_paths = n_excluded;
    const double max_S = *std::max_element(S.begin(), S.end());
    if (max_S > 700.0) {
        // Overflow guard: log-domain statistics. estimate = log(mean exp S)
        // via a stable log-sum-exp; ci is the CLT half-width of the exponent.
        r.log_domain = true;
        for (double s : S)
            if (s > 700.0) ++r.overflow_activations;
        double acc = 0.0;
        for (double s : S) acc += std::exp(s - max_S);
        r.estimate = max_S + std::log(acc / static_cast<double>(S.size()));
        r.ci = mean_ci(S).ci_half;
    } else {
        std::vector<double> vals;
        vals.reserve(S.size());
        for (double s : S) vals.push_back(std::exp(s));
        const MeanCi m = mean_ci(vals);
        r.estimate = m.mean;
        r.ci = m.ci_half;
    }
    return r;
}

std::vector<MomentReport> regularity_profile(const SchemeConfig& cfg,
                                             const std::optional<Potential>& pot,
                                             const DiffusionSpec& spec, const SpectralField& x0,
                                             std::int64_t M_paths, const std::vector<double>& gammas,
                                             const MonteCarloOptions& mc) {
    if (gammas.empty()) throw ConfigError("regularity_profile: no gammas");
    for (double g : gammas)
        if (!(g > 0.0 && g <= 2.0))
            throw ConfigError("regularity_profile: gamma must lie in (0, 2], got " + std::to_string(g));
    std::vector<MomentQuantity> quantities;
    for (double g : gammas) {
        quantities.push_back(MomentQuantity{MomentQuantity::Kind::SupHgamma, 2, g});
        quantities.push_back(MomentQuantity{MomentQuantity::Kind::EndHgamma, 2, g});
    }
    return moment_sup_estimates(cfg, pot, spec, x0, M_paths, quantities, mc);
}

}  // namespace sch
