#pragma once

// Nemytskii drift and diffusion for the Cahn-Hilliard nonlinearity, evaluated
// pseudo-spectrally: synthesize on the collocation grid, apply the scalar
// function pointwise, project back. With M_g >= 3N the cubic part of f' is
// projected alias-free; components of f' that are even in the state (the
// xi^2 and constant terms) pick up an O(M_g^-2) quadrature error because even
// functions are not in the sine quadrature's exactness class. The shipped
// double well f'(xi) = xi^3 - xi is odd, hence exact.

#include <optional>

#include "sch/noise.hpp"
#include "sch/spectral.hpp"

namespace sch {

// Quartic potential f(xi) = c4 xi^4 + c3 xi^3 + c2 xi^2 + c1 xi + c0 with
// c4 > 0. Derivative coefficients are cached at construction.
class Potential {
public:
    static Potential quartic(double c4, double c3, double c2, double c1, double c0);
    static Potential double_well();  // f = (xi^2 - 1)^2 / 4

    double c(int i) const { return c_[i]; }
    double f(double xi) const { return ((c_[4] * xi + c_[3]) * xi + c_[2]) * xi * xi + c_[1] * xi + c_[0]; }
    double f_prime(double xi) const { return ((d3_ * xi + d2_) * xi + d1_) * xi + d0_; }

private:
    Potential(double c4, double c3, double c2, double c1, double c0);
    double c_[5];                   // c_[i] multiplies xi^i
    double d3_, d2_, d1_, d0_;      // f'(xi) = d3 xi^3 + d2 xi^2 + d1 xi + d0
};

// Diffusion function g. SublinearPower is g(xi) = sigma (1 + xi^2)^(alpha/2)
// with alpha in [0, 1): globally Lipschitz with constant <= sigma and
// |g(xi)| <= sigma sqrt(2) (1 + |xi|^alpha). Constant is the alpha = 0 case;
// Zero gives the deterministic equation.
class DiffusionSpec {
public:
    enum class Kind { Zero, Constant, SublinearPower };

    static DiffusionSpec zero();
    static DiffusionSpec constant(double sigma);
    static DiffusionSpec sublinear_power(double sigma, double alpha);

    Kind kind() const { return kind_; }
    double sigma() const { return sigma_; }
    double alpha() const { return alpha_; }

    double g(double xi) const;

private:
    DiffusionSpec(Kind kind, double sigma, double alpha) : kind_(kind), sigma_(sigma), alpha_(alpha) {}
    Kind kind_;
    double sigma_;
    double alpha_;
};

// P^N f'(u): grid synthesis, pointwise f', projection to N modes.
SpectralField drift_f(const SpectralField& u, const Potential& pot);

// Negated right-hand-side drift of the Galerkin system,
// -lambda_j (lambda_j a_j + F_j(u)) coefficient-wise.
SpectralField drift_full(const SpectralField& u, const Potential& pot);

// P^N [ g(u(.)) w(.) ] with w = sum_{k <= K_eff} dbeta_k e_k synthesized on
// the grid and K_eff = min(dW.K, M_g): modes above the grid capacity are not
// linearly independent on M_g points and would alias into the band, so they
// are excluded rather than folded. Requires dW.K >= N.
SpectralField diffusion_apply(const SpectralField& u, const WienerIncrements& dW,
                              const DiffusionSpec& spec);

}  // namespace sch
