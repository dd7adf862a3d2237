#pragma once

// Dirichlet sine eigenbasis on (0, L): eigenpairs of A = -d^2/dx^2 with
// homogeneous Dirichlet boundary conditions,
//
//   e_j(x) = sqrt(2/L) sin(j pi x / L),   lambda_j = (j pi / L)^2,
//
// truncated at N modes, together with a uniform interior collocation grid
// x_m = m L / (M_g + 1), m = 1..M_g, and exact DST-I style transforms between
// coefficient and grid representations.
//
// The grid quadrature sum_m u(x_m) v(x_m) * L/(M_g+1) reproduces the L^2
// inner product exactly whenever the product u*v contains no sine/cosine
// frequency at a nonzero multiple of 2(M_g+1); in particular all pairings of
// sine modes a, b with a + b <= 2 M_g + 1 are exact. With the default grid
// M_g = 4N this makes projections of cubic nonlinearities of N-mode fields
// alias-free, and L^p norms with p in {2,4,6,8} exact.

#include <memory>
#include <vector>

namespace sch {

class SpectralSpace {
public:
    double length() const { return length_; }
    int modes() const { return modes_; }       // N
    int grid_size() const { return grid_size_; }  // M_g

    const std::vector<double>& lambdas() const { return lambdas_; }
    const std::vector<double>& grid() const { return grid_; }

    // 1-based mode index, valid for j = 1..M_g (the grid resolves that many).
    double lambda(int j) const;

    double quad_weight() const { return quad_weight_; }   // L/(M_g+1)
    double basis_scale() const { return basis_scale_; }   // sqrt(2/L)

    // Row m (0-based grid point) of the sine table: sin(k pi (m+1)/(M_g+1))
    // for k = 1..M_g stored contiguously. Shared by all transforms.
    const double* sine_row(int m) const { return sine_.data() + static_cast<std::size_t>(m) * grid_size_; }

    friend std::shared_ptr<const SpectralSpace> build_space(double L, int N, int Mg);

private:
    SpectralSpace() = default;

    double length_ = 0.0;
    int modes_ = 0;
    int grid_size_ = 0;
    double quad_weight_ = 0.0;
    double basis_scale_ = 0.0;
    std::vector<double> lambdas_;
    std::vector<double> grid_;
    std::vector<double> sine_;  // grid_size_ x grid_size_, row-major
};

using SpacePtr = std::shared_ptr<const SpectralSpace>;

// Builds the eigensystem. Mg < 0 selects the default grid M_g = 4N; explicit
// grids must satisfy M_g >= 3N (dealiasing floor for cubic products).
SpacePtr build_space(double L, int N, int Mg = -1);

// A function in span{e_1..e_N} stored as its N expansion coefficients.
struct SpectralField {
    SpacePtr space;
    std::vector<double> coeffs;
};

// Collocation-grid samples u(x_1)..u(x_Mg).
struct PhysicalField {
    SpacePtr space;
    std::vector<double> values;
};

SpectralField zero_field(const SpacePtr& space);

// Coefficient field with a_j = amplitude, all others zero (1 <= j <= N).
SpectralField mode_field(const SpacePtr& space, int j, double amplitude = 1.0);

// Throws ConfigError unless the field is structurally valid with all
// coefficients finite. Used at API boundaries; hot loops check separately.
const SpectralField& validated(const SpectralField& v);

// Grid samples of e_j, 1 <= j <= M_g.
PhysicalField eigenfunction_values(const SpacePtr& space, int j);

// Exact sine synthesis u(x_m) = sum_j a_j e_j(x_m).
PhysicalField to_physical(const SpectralField& v);

// Quadrature projection a_j = <u, e_j>_quad onto the first N <= space N
// modes, exact for band-limited u of sine-degree <= M_g paired within degree
// 2 M_g + 1. Returned in the same space with modes above N zeroed (P^N as an
// endomorphism of the truncation).
SpectralField to_spectral(const PhysicalField& u, int N);

// (sum_j lambda_j^alpha a_j^2)^(1/2); alpha = 0 is the H = L^2 norm. Negative
// alpha is diagonal on the truncation (no infinite-tail correction).
double sobolev_norm(const SpectralField& v, double alpha);

// Grid-quadrature L^p norm, p in {2,4,6,8}; p = infinity returns the grid
// sup max_m |u(x_m)|, a lower bound of the true sup-norm.
double lp_norm(const SpectralField& v, double p);

// S(t) = exp(-t A^2): a_j -> exp(-lambda_j^2 t) a_j, t >= 0.
SpectralField semigroup_apply(const SpectralField& v, double t);

// A^beta: a_j -> lambda_j^beta a_j (diagonal, any real beta).
SpectralField apply_A_power(const SpectralField& v, double beta);

}  // namespace sch
