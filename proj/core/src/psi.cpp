#include "nsgls/psi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nsgls/constants.hpp"

namespace nsgls {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool grid_match(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}
} // namespace

bool PsiFunction::has_support() const {
    return std::any_of(included.begin(), included.end(), [](char c) { return c != 0; });
}

double PsiFunction::log_value_at(double p) const {
    long lo = -1, hi = -1;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!included[i])
            continue;
        if (grid_match(grid[i], p))
            return log_value[i];
        if (grid[i] < p)
            lo = static_cast<long>(i);
        else if (hi < 0)
            hi = static_cast<long>(i);
    }
    if (lo < 0 || hi < 0)
        throw std::domain_error("PsiFunction: p outside support");
    // log-linear in 1/p between included neighbours
    const double x0 = 1.0 / grid[lo], x1 = 1.0 / grid[hi], x = 1.0 / p;
    const double w = (x - x0) / (x1 - x0);
    return (1.0 - w) * log_value[lo] + w * log_value[hi];
}

double PsiFunction::value_at(double p) const { return std::exp(log_value_at(p)); }

namespace psi {

std::vector<double> log_spaced_grid(double a, double b, int npoints) {
    if (!(a > 0.0) || !(b > a) || npoints < 2)
        throw std::invalid_argument("log_spaced_grid: need 0 < a < b, npoints >= 2");
    std::vector<double> g(npoints);
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < npoints; ++i)
        g[i] = std::exp(la + (lb - la) * i / (npoints - 1));
    g.front() = a;
    g.back() = b;
    return g;
}

namespace {

void check_log_convexity(PsiFunction& f) {
    // midpoint convexity of log psi in the variable 1/p
    for (std::size_t i = 0; i + 2 < f.grid.size(); ++i) {
        if (!f.included[i] || !f.included[i + 1] || !f.included[i + 2])
            continue;
        const double x0 = 1.0 / f.grid[i], x1 = 1.0 / f.grid[i + 1], x2 = 1.0 / f.grid[i + 2];
        const double w = (x1 - x0) / (x2 - x0);
        const double chord = (1.0 - w) * f.log_value[i] + w * f.log_value[i + 2];
        if (f.log_value[i + 1] > chord + 1e-9) {
            f.log_convexity_warning = true;
            return;
        }
    }
}

} // namespace

PsiFunction make_psi(std::vector<double> grid, const std::vector<double>& values, double support_a,
                     double support_b) {
    if (grid.size() != values.size() || grid.empty())
        throw std::invalid_argument("make_psi: grid/value size mismatch");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("make_psi: grid must be increasing");
    PsiFunction f;
    f.support_a = support_a;
    f.support_b = support_b;
    f.grid = std::move(grid);
    f.log_value.resize(f.grid.size());
    f.included.assign(f.grid.size(), 1);
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        if (!(values[i] > 0.0))
            throw std::invalid_argument("make_psi: psi values must be positive");
        f.log_value[i] = std::log(values[i]);
        if (f.grid[i] < support_a || f.grid[i] >= support_b)
            f.included[i] = 0;
    }
    check_log_convexity(f);
    return f;
}

PsiFunction degenerate_psi(double r) {
    if (!(r >= 1.0))
        throw std::invalid_argument("degenerate_psi: r must be >= 1");
    PsiFunction f;
    f.support_a = r;
    f.support_b = r;
    f.grid = {r};
    f.log_value = {0.0};
    f.included = {1};
    return f;
}

NormProfile profile_from_field(const VectorField& u, const std::vector<double>& grid,
                               const std::string& source) {
    NormProfile prof;
    prof.grid = grid;
    prof.source = source;
    prof.log_value.reserve(grid.size());
    for (double p : grid)
        prof.log_value.push_back(lp_norm_log(u, p));
    return prof;
}

NormProfile profile_from_component(const VectorField& u, int k, const std::vector<double>& grid,
                                   const std::string& source) {
    NormProfile prof;
    prof.grid = grid;
    prof.source = source;
    prof.log_value.reserve(grid.size());
    for (double p : grid) {
        const double v = lp_norm_component(u, k, p);
        prof.log_value.push_back(v > 0.0 ? std::log(v) : -kInf);
    }
    return prof;
}

double gls_norm_log(const NormProfile& profile, const PsiFunction& psi) {
    double best = -kInf;
    bool shared = false;
    for (std::size_t i = 0; i < profile.grid.size(); ++i) {
        for (std::size_t j = 0; j < psi.grid.size(); ++j) {
            if (!psi.included[j] || !grid_match(profile.grid[i], psi.grid[j]))
                continue;
            shared = true;
            if (profile.log_value[i] != -kInf)
                best = std::max(best, profile.log_value[i] - psi.log_value[j]);
        }
    }
    if (!shared)
        throw std::invalid_argument("disjoint supports");
    return best;
}

double gls_norm(const NormProfile& profile, const PsiFunction& psi) {
    const double lg = gls_norm_log(profile, psi);
    return lg == -kInf ? 0.0 : std::exp(lg);
}

double gls_norm_component_max(const std::vector<NormProfile>& component_profiles,
                              const PsiFunction& psi) {
    if (component_profiles.empty())
        throw std::invalid_argument("gls_norm_component_max: no profiles");
    double m = 0.0;
    for (const auto& prof : component_profiles)
        m = std::max(m, gls_norm(prof, psi));
    return m;
}

PsiFunction natural_psi(const std::vector<NormProfile>& profiles, double support_a,
                        double support_b) {
    if (profiles.empty())
        throw std::invalid_argument("natural_psi: need at least one profile");
    const auto& grid = profiles.front().grid;
    for (const auto& prof : profiles)
        if (prof.grid.size() != grid.size())
            throw std::invalid_argument("natural_psi: profiles on different grids");
    PsiFunction f;
    f.support_a = support_a;
    f.support_b = support_b;
    f.grid = grid;
    f.log_value.assign(grid.size(), -kInf);
    f.included.assign(grid.size(), 1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (const auto& prof : profiles)
            f.log_value[i] = std::max(f.log_value[i], prof.log_value[i]);
        if (grid[i] < support_a || grid[i] >= support_b)
            f.included[i] = 0;
    }
    bool positive = false;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (f.included[i] && f.log_value[i] != -kInf)
            positive = true;
    if (!positive)
        throw std::invalid_argument("natural_psi: all profiles vanish, psi must be positive");
    // exclude points where the sup is zero (psi must stay positive there)
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (f.log_value[i] == -kInf)
            f.included[i] = 0;
    check_log_convexity(f);
    return f;
}

double interpolation_Z(double x, double y, double a, double b, double p) {
    if (!(a > 1.0) || !(b > a) || !std::isfinite(b))
        throw std::domain_error("interpolation_Z: need 1 < a < b < inf");
    if (!(x > 0.0) || !(y > 0.0))
        throw std::domain_error("interpolation_Z: x,y must be positive");
    if (p < a - 1e-12 || p > b + 1e-12)
        throw std::domain_error("interpolation_Z: p outside [a,b]");
    const double ea = a * (b - p) / (p * (b - a));
    const double eb = b * (p - a) / (p * (b - a));
    return std::pow(x, ea) * std::pow(y, eb);
}

PsiFunction psi_from_Lab(double y2, double yb, double b, int npoints) {
    if (!(b > 2.0))
        throw std::domain_error("psi_from_Lab: b must be > 2");
    if (!(y2 > 0.0) || !(yb > 0.0))
        throw std::domain_error("psi_from_Lab: norms must be positive");
    PsiFunction f;
    f.support_a = 2.0;
    f.support_b = b;
    f.grid = log_spaced_grid(2.0, b, npoints);
    f.log_value.resize(f.grid.size());
    f.included.assign(f.grid.size(), 1);
    const double ly2 = std::log(y2), lyb = std::log(yb);
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        const double p = f.grid[i];
        const double ea = 2.0 * (b - p) / (p * (b - 2.0));
        const double eb = b * (p - 2.0) / (p * (b - 2.0));
        f.log_value[i] = ea * ly2 + eb * lyb;
        if (p >= b)
            f.included[i] = 0; // half-open support [2, b)
    }
    return f;
}

double kappa_log(double lp_log, double l2_log, int d, double p) {
    if (!(p > 2.0))
        throw std::domain_error("kappa: p must be > 2");
    if (d < 2)
        throw std::domain_error("kappa: d must be >= 2");
    const double dd = d;
    const double alpha = p * (dd - 2.0) / (dd * (p - 2.0));
    const double beta = 2.0 * (p - dd) / (dd * (p - 2.0));
    return alpha * lp_log + beta * l2_log;
}

double kappa(double lp, double l2, int d, double p) {
    if (!(lp > 0.0) || !(l2 > 0.0))
        throw std::domain_error("kappa: norms must be positive");
    return std::exp(kappa_log(std::log(lp), std::log(l2), d, p));
}

PsiFunction psi_tilde(const PsiFunction& psi, const std::vector<char>& j_mask) {
    if (j_mask.size() != psi.grid.size())
        throw std::invalid_argument("psi_tilde: mask not aligned with grid");
    PsiFunction f = psi;
    for (std::size_t i = 0; i < f.grid.size(); ++i)
        if (!j_mask[i])
            f.included[i] = 0;
    if (!f.has_support())
        throw std::runtime_error("supp psi-tilde is empty");
    return f;
}

namespace {
std::vector<double> kappa_factor_log(const PsiFunction& psi,
                                     const std::vector<double>& kappa_log_values, int d) {
    if (kappa_log_values.size() != psi.grid.size())
        throw std::invalid_argument("psi_kappa: kappa values not aligned with grid");
    std::vector<double> f(psi.grid.size(), 0.0);
    for (std::size_t i = 0; i < psi.grid.size(); ++i) {
        const double p = psi.grid[i];
        const double k = kappa_log_values[i];
        // max(1, kappa^{2d/p}) in log form; -inf kappa (zero field) acts as 1
        if (k != -kInf)
            f[i] = std::max(0.0, (2.0 * d / p) * k);
    }
    return f;
}
} // namespace

PsiFunction psi_kappa(const PsiFunction& psi, const std::vector<double>& kappa_log_values, int d) {
    const auto fac = kappa_factor_log(psi, kappa_log_values, d);
    PsiFunction f = psi;
    for (std::size_t i = 0; i < f.grid.size(); ++i)
        f.log_value[i] += fac[i];
    return f;
}

NormProfile h_zero(const PsiFunction& psi, const std::vector<double>& kappa_log_values, int d) {
    const auto fac = kappa_factor_log(psi, kappa_log_values, d);
    NormProfile h;
    h.grid = psi.grid;
    h.source = "h0";
    h.log_value.resize(psi.grid.size());
    for (std::size_t i = 0; i < psi.grid.size(); ++i)
        h.log_value[i] = psi.included[i] ? psi.log_value[i] + fac[i] : -kInf;
    return h;
}

double mri_norm_sup(const NormProfile& h, const PsiFunction& weight) {
    return gls_norm(h, weight);
}

double mri_norm_avg_log(const NormProfile& h, double q) {
    if (!(q >= 1.0))
        throw std::domain_error("mri_norm_avg: q must be >= 1");
    if (h.grid.size() < 2)
        throw std::invalid_argument("mri_norm_avg: need at least two grid points");
    double m = -kInf;
    for (double lv : h.log_value)
        m = std::max(m, q * lv);
    if (m == -kInf)
        return -kInf;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < h.grid.size(); ++i) {
        const double hstep = h.grid[i + 1] - h.grid[i];
        const double a = h.log_value[i] == -kInf ? 0.0 : std::exp(q * h.log_value[i] - m);
        const double b = h.log_value[i + 1] == -kInf ? 0.0 : std::exp(q * h.log_value[i + 1] - m);
        acc += 0.5 * hstep * (a + b);
    }
    return (m + std::log(acc)) / q;
}

double mri_norm_avg(const NormProfile& h, double q) {
    const double lg = mri_norm_avg_log(h, q);
    return lg == -kInf ? 0.0 : std::exp(lg);
}

double theta_log(const PsiFunction& psi, int d, double p) {
    const double r = constants::r_exponent(d, p);
    const double b21 = constants::constant_B21(d, p);
    const double dd = d;
    double log_psi_d;
    try {
        log_psi_d = psi.log_value_at(dd);
    } catch (const std::domain_error&) {
        throw std::domain_error("theta: d not in supp psi");
    }
    const double log_psi_p = psi.log_value_at(p);
    return std::log(b21 / p) / r + (2.0 / (p - dd + 2.0)) * log_psi_d +
           ((p - dd) / (p - dd + 2.0)) * log_psi_p;
}

double theta(const PsiFunction& psi, int d, double p) { return std::exp(theta_log(psi, d, p)); }

} // namespace psi

} // namespace nsgls
