#include "nsgls/constants.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nsgls/specfun.hpp"

namespace nsgls::constants {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

using specfun::double_factorial;
using specfun::gamma;
using specfun::log_gamma;

// Common prefactor of the explicit K_S(d,2d/3) expansions.
double ks_2d3_prefactor(int d) {
    const double dd = d;
    return std::pow(2.0, 1.0 / dd) * std::pow(kPi, -(dd + 1.0) / (2.0 * dd)) *
           (2.0 - 3.0 / dd) * std::pow(2.0 * dd - 3.0, -3.0 / (2.0 * dd));
}

} // namespace

double ks_sobolev(int d, double q) {
    if (d < 2)
        throw std::domain_error("ks_sobolev: d must be >= 2");
    if (!(q >= 1.0) || !(q < d))
        throw std::domain_error("ks_sobolev: need 1 <= q < d");
    const double dd = d;
    const double ratio = (q > 1.0) ? std::pow((q - 1.0) / (dd - q), (q - 1.0) / q) : 1.0;
    const double g = gamma(1.0 + dd / 2.0) * gamma(dd) / (gamma(dd / q) * gamma(1.0 + dd - dd / q));
    return std::pow(kPi, -0.5) * std::pow(dd, -1.0 / q) * ratio * std::pow(g, 1.0 / dd);
}

double ks_2d3(int d) {
    if (d < 3)
        throw std::domain_error("ks_2d3: d must be >= 3");
    const double dd = d;
    const double g = gamma(1.0 + dd / 2.0) * gamma(dd) / gamma(dd - 0.5);
    return ks_2d3_prefactor(d) * std::pow(g, 1.0 / dd);
}

double ks_2d3_even(int d) {
    if (d < 3 || d % 2 != 0)
        throw std::domain_error("ks_2d3_even: d must be even and >= 4");
    const double dd = d;
    const double num = std::pow(2.0, dd - 1.0) * gamma(dd / 2.0 + 1.0) * gamma(dd);
    const double den = std::sqrt(kPi) * double_factorial(2 * d - 3);
    return ks_2d3_prefactor(d) * std::pow(num / den, 1.0 / dd);
}

double ks_2d3_odd(int d) {
    if (d < 3 || d % 2 != 1)
        throw std::domain_error("ks_2d3_odd: d must be odd and >= 3");
    const double dd = d;
    const double num = std::pow(2.0, (dd - 3.0) / 2.0) * double_factorial(d) * gamma(dd);
    const double den = double_factorial(2 * d - 3);
    return ks_2d3_prefactor(d) * std::pow(num / den, 1.0 / dd);
}

double i_factor(double p) {
    if (!(p > 1.0))
        throw std::domain_error("i_factor: p must be > 1");
    return gamma(0.5 - 0.5 / p) * gamma(0.5 / p) / (2.0 * std::sqrt(kPi));
}

double omega_tilde(int d) {
    if (d < 2)
        throw std::domain_error("omega_tilde: d must be >= 2");
    return 4.0 * std::pow(kPi, d / 2.0 - 1.0) / gamma(d / 2.0);
}

double c_abs(int d) {
    if (d < 1)
        throw std::domain_error("c_abs: d must be >= 1");
    return std::pow(kPi, (d + 1.0) / 2.0) / gamma((d + 1.0) / 2.0);
}

double kr_riesz(int d, double p) {
    if (d < 2)
        throw std::domain_error("kr_riesz: d must be >= 2");
    if (!(p > 1.0))
        throw std::domain_error("kr_riesz: p must be > 1");
    return c_abs(d) * (p / (p - 1.0)) * omega_tilde(d) * i_factor(p);
}

double pichorides_norm(double p) {
    if (!(p > 1.0))
        throw std::domain_error("pichorides_norm: p must be > 1");
    const double pstar = std::max(p, p / (p - 1.0));
    return specfun::cot(kPi / (2.0 * pstar));
}

double constant_A(int d, double p) {
    if (!(p > d))
        throw std::domain_error("constant_A: p must be > d");
    const double dd = d;
    return std::pow((p + dd) / p, (p + dd) / (p - dd));
}

double constant_B21(int d, double p) {
    if (d < 3)
        throw std::domain_error("constant_B21: d must be >= 3");
    const double k = ks_2d3(d);
    return k * k * p * p / 4.0;
}

double constant_C27(int d, double p) {
    if (d < 3)
        throw std::domain_error("constant_C27: d must be >= 3");
    if (!(p > 1.0))
        throw std::domain_error("constant_C27: p must be > 1");
    const double ks = ks_2d3(d);
    const double kr = kr_riesz(d, p);
    const double dd = d;
    return 0.25 * p * p * ks * ks * kr * kr * (dd * dd + dd);
}

double log_constant_C77(int d, double p) {
    if (!(p > d))
        throw std::domain_error("constant_C77: p must be > d");
    const double dd = d;
    return std::log(constant_A(d, p)) + (2.0 * p / (p - dd)) * std::log(constant_C27(d, p));
}

double constant_C77(int d, double p) {
    return std::exp(log_constant_C77(d, p));
}

double threshold(int d, double p) {
    return std::exp(log_threshold(d, p));
}

double log_threshold(int d, double p) {
    return -std::log(2.0) - log_constant_C77(d, p);
}

double r_exponent(int d, double p) {
    if (!(p > d))
        throw std::domain_error("r_exponent: p must be > d");
    const double dd = d;
    return p * (p - dd + 2.0) / (p - dd);
}

ConstantsRecord evaluate(int d, double p) {
    if (d < 3)
        throw std::domain_error("constants::evaluate: d must be >= 3");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    ConstantsRecord r;
    r.d = d;
    r.p = p;
    r.KS_sobolev = (p >= 1.0 && p < d) ? ks_sobolev(d, p) : nan;
    r.KS_2d3 = ks_2d3(d);
    r.KR = (p > 1.0) ? kr_riesz(d, p) : nan;
    r.pichorides = (p > 1.0) ? pichorides_norm(p) : nan;
    r.A = (p > d) ? constant_A(d, p) : nan;
    r.B21 = constant_B21(d, p);
    r.C27 = (p > 1.0) ? constant_C27(d, p) : nan;
    r.C77 = (p > d) ? constant_C77(d, p) : nan;
    r.threshold = (p > d) ? threshold(d, p) : nan;
    return r;
}

std::vector<char> smallness_mask(int d, double log_u0_d_norm, const std::vector<double>& p_grid) {
    std::vector<char> mask(p_grid.size(), 0);
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        const double p = p_grid[i];
        if (p > d)
            mask[i] = log_u0_d_norm < log_threshold(d, p) ? 1 : 0;
    }
    return mask;
}

} // namespace nsgls::constants
