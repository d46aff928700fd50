#ifndef NSGLS_CONSTANTS_HPP
#define NSGLS_CONSTANTS_HPP

#include <vector>

// Closed-form evaluators for the constants entering the a-priori estimates:
// the sharp Sobolev constant, Riesz-transform operator-norm bounds, the
// Young-type coefficients, and the small-data threshold derived from them.

namespace nsgls::constants {

// Sharp constant in ||phi||_r <= K_S(d,q) ||grad phi||_q, 1/r = 1/q - 1/d.
// Domain: d >= 2, 1 <= q < d.
double ks_sobolev(int d, double q);

// K_S(d, 2d/3) via its explicit gamma-function form, d >= 3.
double ks_2d3(int d);
// Same value through the even-d / odd-d factorial expansions (cross-checks).
double ks_2d3_even(int d);
double ks_2d3_odd(int d);

// Gamma-product factor I(p) = Gamma(1/2 - 1/2p) Gamma(1/2p) / (2 sqrt(pi)),
// equal to the integral of t^{-1/p} (1+t^2)^{-1/2} over (0, inf). p > 1.
double i_factor(double p);

// Surface factor 4 pi^{d/2-1} / Gamma(d/2).
double omega_tilde(int d);

// |c(d)| = pi^{(d+1)/2} / Gamma((d+1)/2), the Riesz kernel constant taken
// with positive sign so that operator-norm bounds stay positive.
double c_abs(int d);

// Riesz transform L_p -> L_p bound |c(d)| * p/(p-1) * omega_tilde(d) * I(p).
double kr_riesz(int d, double p);

// Dimension-free sharp bound cot(pi / (2 p*)), p* = max(p, p/(p-1)).
double pichorides_norm(double p);

// A(d,p) = ((p+d)/p)^{(p+d)/(p-d)}, p > d.
double constant_A(int d, double p);

// B21(d,p) = K_S^2(d,2d/3) p^2 / 4, d >= 3.
double constant_B21(int d, double p);

// C27(d,p) = p^2/4 * K_S^2(d,2d/3) * K_R^2(d,p) * (d^2+d), d >= 3, p > 1.
double constant_C27(int d, double p);

// C77(d,p) = A(d,p) * C27(d,p)^{2p/(p-d)}, p > d. May overflow for p near d;
// use log_constant_C77 where the magnitude matters.
double constant_C77(int d, double p);
double log_constant_C77(int d, double p);

// Small-data threshold 1/(2 C77(d,p)) and its logarithm.
double threshold(int d, double p);
double log_threshold(int d, double p);

// Time exponent r(p) = p(p-d+2)/(p-d), p > d.
double r_exponent(int d, double p);

// All constants at one (d,p). Fields whose domain constraint is not met are
// quiet NaN.
struct ConstantsRecord {
    int d = 0;
    double p = 0.0;
    double KS_sobolev = 0.0; // K_S(d,p), defined for 1 <= p < d
    double KS_2d3 = 0.0;
    double KR = 0.0;
    double pichorides = 0.0;
    double A = 0.0;
    double B21 = 0.0;
    double C27 = 0.0;
    double C77 = 0.0;
    double threshold = 0.0;
};

ConstantsRecord evaluate(int d, double p);

// Mask {p : log ||u0||_d < log threshold(d,p)} over a p grid; entries with
// p <= d are always false (the threshold needs p > d).
std::vector<char> smallness_mask(int d, double log_u0_d_norm, const std::vector<double>& p_grid);

} // namespace nsgls::constants

#endif
