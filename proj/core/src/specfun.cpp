#include "nsgls/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace nsgls::specfun {

namespace {

// Lanczos coefficients, g = 7.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kSqrtTwoPi = 2.5066282746310002;
constexpr double kGammaOverflowX = 171.62437695630272;

double lanczos_series(double x) {
    double a = kLanczos[0];
    for (int i = 1; i < 9; ++i)
        a += kLanczos[i] / (x + static_cast<double>(i) - 1.0);
    return a;
}

} // namespace

double gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("specfun::gamma: argument must be positive");
    if (x > kGammaOverflowX)
        throw std::overflow_error("specfun::gamma: result not representable");
    // Shift small arguments up via Gamma(x) = Gamma(x+1)/x; no reflection
    // needed on the positive axis.
    if (x < 0.5)
        return gamma(x + 1.0) / x;
    const double z = x - 1.0;
    const double t = z + 7.5;
    // split t^{z+0.5} so the intermediate never overflows for x near the cap
    const double half = std::pow(t, 0.5 * (z + 0.5));
    return kSqrtTwoPi * half * std::exp(-t) * half * lanczos_series(z + 1.0);
}

double log_gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("specfun::log_gamma: argument must be positive");
    if (x < 0.5)
        return log_gamma(x + 1.0) - std::log(x);
    const double z = x - 1.0;
    const double t = z + 7.5;
    return std::log(kSqrtTwoPi) + (z + 0.5) * std::log(t) - t + std::log(lanczos_series(z + 1.0));
}

double double_factorial(int n) {
    if (n < -1)
        throw std::domain_error("specfun::double_factorial: n must be >= -1");
    double r = 1.0;
    for (int k = n; k > 1; k -= 2)
        r *= static_cast<double>(k);
    return r;
}

double cot(double x) {
    if (!(x > 0.0) || !(x < 3.141592653589793238462643383279502884))
        throw std::domain_error("specfun::cot: argument must lie in (0, pi)");
    return std::cos(x) / std::sin(x);
}

} // namespace nsgls::specfun
