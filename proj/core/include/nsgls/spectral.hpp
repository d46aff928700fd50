#ifndef NSGLS_SPECTRAL_HPP
#define NSGLS_SPECTRAL_HPP

#include <complex>
#include <vector>

#include "nsgls/field.hpp"

// Fourier-side operators. Coefficients follow the convention
//   u(x) = sum_k uhat_k exp(i xi . x),  xi = 2 pi k / L,
// so a physical single mode of unit amplitude carries coefficient 1/2 on the
// +-k pair. All multiplier operators act coefficient-wise and are pure.

namespace nsgls {

struct SpectralField {
    Grid grid;
    std::vector<std::vector<std::complex<double>>> comp;

    SpectralField() = default;
    explicit SpectralField(const Grid& g, int ncomp = -1);

    int ncomp() const { return static_cast<int>(comp.size()); }
};

namespace spectral {

// Integer wavevector of flat index i along axis ax, in [-n/2, n/2).
int wavenumber(const Grid& g, std::size_t i, int ax);
// Physical wavevector xi = 2 pi k / L, all axes at once.
void wavevector(const Grid& g, std::size_t i, double* xi);

SpectralField forward(const VectorField& u);
VectorField inverse(const SpectralField& f);

// Scalar transforms (single-component fields, e.g. pressure and products).
SpectralField forward_scalar(const Grid& g, const std::vector<double>& samples);
std::vector<double> inverse_scalar(const SpectralField& f);

// Riesz transform R_j: multiplier -i xi_j / ||xi||, zero mode mapped to 0.
SpectralField riesz(const SpectralField& f, int j);

// Helmholtz-Weyl projection onto divergence-free fields; zero mode passed
// through unchanged.
SpectralField leray_project(const SpectralField& f);

// Heat semigroup e^{t Laplacian}: multiplier exp(-||xi||^2 t), t >= 0.
SpectralField heat_semigroup(const SpectralField& f, double t);

// d/dx_m applied to every component.
SpectralField derivative(const SpectralField& f, int m);
// All first derivatives; result[m] = d/dx_m of every component.
std::vector<SpectralField> gradient(const SpectralField& f);
// Scalar divergence of a d-component field.
SpectralField divergence(const SpectralField& f);
SpectralField laplacian(const SpectralField& f);

// 2/3-rule truncation: zero every coefficient with |k_m| > n/3 on some axis.
SpectralField dealias(const SpectralField& f);
void dealias_inplace(SpectralField& f);

// Zero coefficients with |k| outside [lo, hi] (Euclidean modulus of the
// integer wavevector).
void band_pass_inplace(SpectralField& f, double lo, double hi);

// Max modulus of the divergence coefficients, an absolute solenoidality
// diagnostic.
double divergence_max(const SpectralField& f);

// Pointwise squared Frobenius norm of grad u in physical space.
std::vector<double> gradient_squared(const VectorField& u);

// l2 norm of coefficients (Parseval check helper): ||u||_2 = sqrt(V sum |uhat|^2).
double parseval_l2(const SpectralField& f);

} // namespace spectral

} // namespace nsgls

#endif
