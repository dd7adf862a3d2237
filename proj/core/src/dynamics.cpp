#include "sch/dynamics.hpp"

#include <cmath>
#include <string>

#include "sch/errors.hpp"

namespace sch {

Potential::Potential(double c4, double c3, double c2, double c1, double c0)
    : c_{c0, c1, c2, c3, c4}, d3_(4.0 * c4), d2_(3.0 * c3), d1_(2.0 * c2), d0_(c1) {}

Potential Potential::quartic(double c4, double c3, double c2, double c1, double c0) {
    if (!(c4 > 0.0))
        throw ConfigError("potential: leading coefficient c4 must be positive, got " + std::to_string(c4));
    return Potential(c4, c3, c2, c1, c0);
}

Potential Potential::double_well() { return Potential(0.25, 0.0, -0.5, 0.0, 0.25); }

DiffusionSpec DiffusionSpec::zero() { return DiffusionSpec(Kind::Zero, 0.0, 0.0); }

DiffusionSpec DiffusionSpec::constant(double sigma) {
    if (sigma < 0.0) throw ConfigError("diffusion: sigma must be >= 0, got " + std::to_string(sigma));
    return DiffusionSpec(Kind::Constant, sigma, 0.0);
}

DiffusionSpec DiffusionSpec::sublinear_power(double sigma, double alpha) {
    if (sigma < 0.0) throw ConfigError("diffusion: sigma must be >= 0, got " + std::to_string(sigma));
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw ConfigError("diffusion.alpha must lie in [0,1), got " + std::to_string(alpha));
    return DiffusionSpec(Kind::SublinearPower, sigma, alpha);
}

double DiffusionSpec::g(double xi) const {
    switch (kind_) {
        case Kind::Zero:
            return 0.0;
        case Kind::Constant:
            return sigma_;
        case Kind::SublinearPower:
            if (alpha_ == 0.5) return sigma_ * std::sqrt(std::sqrt(1.0 + xi * xi));
            return sigma_ * std::pow(1.0 + xi * xi, 0.5 * alpha_);
    }
    return 0.0;
}

SpectralField drift_f(const SpectralField& u, const Potential& pot) {
    const auto& sp = *u.space;
    const int N = sp.modes();
    const int Mg = sp.grid_size();
    PhysicalField grid = to_physical(u);
    for (int m = 0; m < Mg; ++m) grid.values[m] = pot.f_prime(grid.values[m]);
    return to_spectral(grid, N);
}

SpectralField drift_full(const SpectralField& u, const Potential& pot) {
    SpectralField out = drift_f(u, pot);
    const auto& lam = u.space->lambdas();
    for (std::size_t j = 0; j < out.coeffs.size(); ++j)
        out.coeffs[j] = -lam[j] * (lam[j] * u.coeffs[j] + out.coeffs[j]);
    return out;
}

SpectralField diffusion_apply(const SpectralField& u, const WienerIncrements& dW,
                              const DiffusionSpec& spec) {
    const auto& sp = *u.space;
    const int N = sp.modes();
    if (spec.kind() == DiffusionSpec::Kind::Zero) return zero_field(u.space);
    if (dW.K < N)
        throw ConfigError("diffusion_apply: dW carries K=" + std::to_string(dW.K) +
                          " modes, fewer than N=" + std::to_string(N));
    const int Mg = sp.grid_size();
    const int K_eff = std::min(dW.K, Mg);

    PhysicalField grid = to_physical(u);
    const double s = sp.basis_scale();
    const double* db = dW.increments.data();
    for (int m = 0; m < Mg; ++m) {
        const double* row = sp.sine_row(m);
        double w = 0.0;
        for (int k = 0; k < K_eff; ++k) w += db[k] * row[k];
        grid.values[m] = spec.g(grid.values[m]) * (s * w);
    }
    return to_spectral(grid, N);
}

}  // namespace sch
