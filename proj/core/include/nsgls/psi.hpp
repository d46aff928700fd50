#ifndef NSGLS_PSI_HPP
#define NSGLS_PSI_HPP

#include <string>
#include <vector>

#include "nsgls/field.hpp"

// psi-function algebra: the weight functions p -> psi(p) generating Grand
// Lebesgue norms, and the norm functionals built from p -> ||f||_p profiles.
// Values are stored as logarithms so that profiles of extremely small fields
// never underflow; "excluded" grid points carry an explicit marker (the
// degenerate psi convention C/infinity = 0 is applied at the norm level).

namespace nsgls {

struct PsiFunction {
    double support_a = 1.0; // support interval [a, b)
    double support_b = 2.0;
    std::vector<double> grid;      // strictly increasing p samples
    std::vector<double> log_value; // log psi(p) at included points
    std::vector<char> included;    // excluded points never evaluate to a number
    bool log_convexity_warning = false;

    bool has_support() const;
    // log psi(p); exact grid match or log-linear interpolation in 1/p between
    // included neighbours. Throws std::domain_error for excluded p.
    double log_value_at(double p) const;
    double value_at(double p) const;
};

struct NormProfile {
    std::vector<double> grid;
    std::vector<double> log_value; // log ||f||_p, -infinity for the zero field
    std::string source;
};

namespace psi {

// Default p grid: npoints log-spaced samples of [a, b_end].
std::vector<double> log_spaced_grid(double a, double b, int npoints = 33);

// Build a psi from plain (not log) positive values; checks midpoint
// log-convexity in 1/p and attaches a warning when violated beyond 1e-9.
PsiFunction make_psi(std::vector<double> grid, const std::vector<double>& values,
                     double support_a, double support_b);

// Degenerate psi_r: value 1 at p = r, excluded elsewhere; G psi_r = L_r.
PsiFunction degenerate_psi(double r);

// p -> ||u||_p profile of a field over a p grid.
NormProfile profile_from_field(const VectorField& u, const std::vector<double>& grid,
                               const std::string& source = "");
// Per-component profile (vector GLS component-max convention).
NormProfile profile_from_component(const VectorField& u, int k, const std::vector<double>& grid,
                                   const std::string& source = "");

// sup_p ||f||_p / psi(p) over the shared included grid. Throws
// std::invalid_argument("disjoint supports") when the shared grid is empty.
double gls_norm(const NormProfile& profile, const PsiFunction& psi);
double gls_norm_log(const NormProfile& profile, const PsiFunction& psi);

// max over components of the per-component GLS norms.
double gls_norm_component_max(const std::vector<NormProfile>& component_profiles,
                              const PsiFunction& psi);

// Pointwise sup of finitely many profiles; errors when all profiles vanish
// identically (psi must be positive).
PsiFunction natural_psi(const std::vector<NormProfile>& profiles, double support_a,
                        double support_b);

// Z_{a,b}(x,y;p) = x^{a(b-p)/(p(b-a))} y^{b(p-a)/(p(b-a))}, p in [a,b].
double interpolation_Z(double x, double y, double a, double b, double p);

// psi_b(p) = Z_{2,b}(y2, yb; p) on support [2, b).
PsiFunction psi_from_Lab(double y2, double yb, double b, int npoints = 33);

// kappa_p(u) = ||u||_p^{p(d-2)/(d(p-2))} ||u||_2^{2(p-d)/(d(p-2))}, p > 2.
double kappa(double lp, double l2, int d, double p);
double kappa_log(double lp_log, double l2_log, int d, double p);

// Restriction of psi to supp psi intersect J. Throws std::runtime_error
// "supp psi-tilde is empty" when nothing survives.
PsiFunction psi_tilde(const PsiFunction& psi, const std::vector<char>& j_mask);

// psi * max(1, kappa_p^{2d/p}); kappa_log_values aligned with the psi grid.
// Entries may be -infinity (zero field), which behaves as factor 1.
PsiFunction psi_kappa(const PsiFunction& psi, const std::vector<double>& kappa_log_values, int d);

// Same pointwise formula returned as a profile h_0(p).
NormProfile h_zero(const PsiFunction& psi, const std::vector<double>& kappa_log_values, int d);

// m.r.i. norm flavors applied to a profile h on its grid.
//  - sup-weighted: sup_p h(p)/w(p) (recovers the GLS norm with w = psi);
//  - p-average:    (integral h(p)^q dp)^{1/q}, trapezoid on the grid.
double mri_norm_sup(const NormProfile& h, const PsiFunction& weight);
double mri_norm_avg(const NormProfile& h, double q);
double mri_norm_avg_log(const NormProfile& h, double q);

// theta_{d,psi}(p) = [B21(d,p)/p]^{1/r(p)} psi(d)^{2/(p-d+2)} psi(p)^{(p-d)/(p-d+2)}.
double theta(const PsiFunction& psi, int d, double p);
double theta_log(const PsiFunction& psi, int d, double p);

} // namespace psi

} // namespace nsgls

#endif
