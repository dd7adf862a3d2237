#include "sch/spectral.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sch/errors.hpp"

namespace sch {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double SpectralSpace::lambda(int j) const {
    if (j < 1 || j > grid_size_)
        throw ConfigError("mode index j=" + std::to_string(j) + " outside [1, M_g=" +
                          std::to_string(grid_size_) + "]");
    const double w = j * kPi / length_;
    return w * w;
}

SpacePtr build_space(double L, int N, int Mg) {
    if (!(L > 0.0)) throw ConfigError("domain length L must be positive, got " + std::to_string(L));
    if (N < 1) throw ConfigError("truncation order N must be >= 1, got " + std::to_string(N));
    if (Mg < 0) Mg = 4 * N;
    if (Mg < 3 * N)
        throw ConfigError("grid size M_g=" + std::to_string(Mg) + " violates the dealiasing floor M_g >= 3N=" +
                          std::to_string(3 * N) + " (cubic products of N sine modes span 3N modes)");

    auto space = std::shared_ptr<SpectralSpace>(new SpectralSpace());
    space->length_ = L;
    space->modes_ = N;
    space->grid_size_ = Mg;
    space->quad_weight_ = L / (Mg + 1);
    space->basis_scale_ = std::sqrt(2.0 / L);

    space->lambdas_.resize(N);
    for (int j = 1; j <= N; ++j) {
        const double w = j * kPi / L;
        space->lambdas_[j - 1] = w * w;
    }
    space->grid_.resize(Mg);
    for (int m = 1; m <= Mg; ++m) space->grid_[m - 1] = m * L / (Mg + 1);

    // sin(k pi m/(M+1)), row-major over grid points. Plain std::sin: the table
    // is built once per space and shared.
    space->sine_.resize(static_cast<std::size_t>(Mg) * Mg);
    for (int m = 1; m <= Mg; ++m) {
        double* row = space->sine_.data() + static_cast<std::size_t>(m - 1) * Mg;
        for (int k = 1; k <= Mg; ++k) row[k - 1] = std::sin(k * kPi * m / (Mg + 1));
    }
    return space;
}

SpectralField zero_field(const SpacePtr& space) {
    return SpectralField{space, std::vector<double>(space->modes(), 0.0)};
}

SpectralField mode_field(const SpacePtr& space, int j, double amplitude) {
    if (j < 1 || j > space->modes())
        throw ConfigError("mode_field: j=" + std::to_string(j) + " outside [1, N=" +
                          std::to_string(space->modes()) + "]");
    auto v = zero_field(space);
    v.coeffs[j - 1] = amplitude;
    return v;
}

const SpectralField& validated(const SpectralField& v) {
    if (!v.space) throw ConfigError("field has no space");
    if (static_cast<int>(v.coeffs.size()) != v.space->modes())
        throw ConfigError("field has " + std::to_string(v.coeffs.size()) + " coefficients, space expects N=" +
                          std::to_string(v.space->modes()));
    for (double a : v.coeffs)
        if (!std::isfinite(a)) throw ConfigError("field has a non-finite coefficient");
    return v;
}

PhysicalField eigenfunction_values(const SpacePtr& space, int j) {
    const int Mg = space->grid_size();
    if (j < 1 || j > Mg)
        throw ConfigError("eigenfunction_values: j=" + std::to_string(j) + " outside [1, M_g=" +
                          std::to_string(Mg) + "]");
    PhysicalField u{space, std::vector<double>(Mg)};
    const double s = space->basis_scale();
    for (int m = 0; m < Mg; ++m) u.values[m] = s * space->sine_row(m)[j - 1];
    return u;
}

PhysicalField to_physical(const SpectralField& v) {
    const auto& sp = *v.space;
    const int N = sp.modes();
    const int Mg = sp.grid_size();
    PhysicalField u{v.space, std::vector<double>(Mg)};
    const double s = sp.basis_scale();
    const double* a = v.coeffs.data();
    for (int m = 0; m < Mg; ++m) {
        const double* row = sp.sine_row(m);
        double acc = 0.0;
        for (int j = 0; j < N; ++j) acc += a[j] * row[j];
        u.values[m] = s * acc;
    }
    return u;
}

SpectralField to_spectral(const PhysicalField& u, int N) {
    const auto& sp = *u.space;
    const int Mg = sp.grid_size();
    if (N < 1 || N > Mg)
        throw ConfigError("to_spectral: target N=" + std::to_string(N) + " outside [1, M_g=" +
                          std::to_string(Mg) + "]");
    if (N > sp.modes())
        throw ConfigError("to_spectral: N=" + std::to_string(N) + " exceeds the space truncation N=" +
                          std::to_string(sp.modes()));
    // Realizes P^N as an endomorphism of the space: modes above N stay zero.
    SpectralField v = zero_field(u.space);
    double* a = v.coeffs.data();
    for (int m = 0; m < Mg; ++m) {
        const double um = u.values[m];
        const double* row = sp.sine_row(m);
        for (int j = 0; j < N; ++j) a[j] += um * row[j];
    }
    const double w = sp.quad_weight() * sp.basis_scale();
    for (int j = 0; j < N; ++j) a[j] *= w;
    return v;
}

double sobolev_norm(const SpectralField& v, double alpha) {
    const auto& lam = v.space->lambdas();
    double acc = 0.0;
    if (alpha == 0.0) {
        for (double a : v.coeffs) acc += a * a;
    } else {
        for (std::size_t j = 0; j < v.coeffs.size(); ++j)
            acc += std::pow(lam[j], alpha) * v.coeffs[j] * v.coeffs[j];
    }
    return std::sqrt(acc);
}

double lp_norm(const SpectralField& v, double p) {
    const PhysicalField u = to_physical(v);
    const int Mg = v.space->grid_size();
    if (std::isinf(p)) {
        double m = 0.0;
        for (int i = 0; i < Mg; ++i) m = std::max(m, std::abs(u.values[i]));
        return m;
    }
    int ip = static_cast<int>(p);
    if (!(p == 2.0 || p == 4.0 || p == 6.0 || p == 8.0))
        throw ConfigError("lp_norm: p must be one of {2, 4, 6, 8, inf}, got " + std::to_string(p));
    double acc = 0.0;
    for (int i = 0; i < Mg; ++i) {
        const double x2 = u.values[i] * u.values[i];
        double t = x2;
        for (int k = 2; k < ip; k += 2) t *= x2;
        acc += t;
    }
    acc *= v.space->quad_weight();
    return std::pow(acc, 1.0 / p);
}

SpectralField semigroup_apply(const SpectralField& v, double t) {
    if (t < 0.0) throw ConfigError("semigroup_apply: t must be >= 0, got " + std::to_string(t));
    SpectralField out = v;
    if (t == 0.0) return out;
    const auto& lam = v.space->lambdas();
    for (std::size_t j = 0; j < out.coeffs.size(); ++j)
        out.coeffs[j] *= std::exp(-lam[j] * lam[j] * t);
    return out;
}

SpectralField apply_A_power(const SpectralField& v, double beta) {
    SpectralField out = v;
    if (beta == 0.0) return out;
    const auto& lam = v.space->lambdas();
    for (std::size_t j = 0; j < out.coeffs.size(); ++j)
        out.coeffs[j] *= std::pow(lam[j], beta);
    return out;
}

}  // namespace sch
