#ifndef NSGLS_SPECFUN_HPP
#define NSGLS_SPECFUN_HPP

// Real special functions on the positive axis. All evaluators are pure and
// thread-safe.

namespace nsgls::specfun {

// Gamma function for x > 0, Lanczos approximation (g = 7, 9 terms).
// Relative error is a few ulp across [0.05, 200].
// Throws std::domain_error for x <= 0, std::overflow_error past ~171.6.
double gamma(double x);

// log Gamma for x > 0, same approximation without the final exp.
double log_gamma(double x);

// n!! with the conventions (-1)!! = 0!! = 1. Exact for n <= 20.
double double_factorial(int n);

// cot(x) on (0, pi). Throws std::domain_error at the endpoints.
double cot(double x);

} // namespace nsgls::specfun

#endif
