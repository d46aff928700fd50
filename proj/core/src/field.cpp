#include "nsgls/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "nsgls/spectral.hpp"

namespace nsgls {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
} // namespace

Grid::Grid(int d_, int n_, double L_) : d(d_), n(n_), L(L_) {
    if (d != 2 && d != 3)
        throw std::domain_error("Grid: d must be 2 or 3");
    if (n < 8 || !is_pow2(n))
        throw std::domain_error("Grid: n must be a power of two >= 8");
    if (!(L > 0.0))
        throw std::domain_error("Grid: L must be positive");
}

std::size_t Grid::npoints() const {
    std::size_t m = 1;
    for (int i = 0; i < d; ++i)
        m *= static_cast<std::size_t>(n);
    return m;
}

double Grid::cell_volume() const { return std::pow(L / n, d); }

VectorField::VectorField(const Grid& g) : grid(g), comp(g.d, std::vector<double>(g.npoints(), 0.0)) {}

double VectorField::magnitude(std::size_t i) const {
    // scale by the largest component so squares of denormal-range samples
    // do not flush to zero
    double m = 0.0;
    for (const auto& c : comp)
        m = std::max(m, std::abs(c[i]));
    if (m == 0.0)
        return 0.0;
    double s = 0.0;
    for (const auto& c : comp) {
        const double r = c[i] / m;
        s += r * r;
    }
    return m * std::sqrt(s);
}

double VectorField::max_magnitude() const {
    double m = 0.0;
    const std::size_t np = grid.npoints();
    for (std::size_t i = 0; i < np; ++i)
        m = std::max(m, magnitude(i));
    return m;
}

bool VectorField::all_finite() const {
    for (const auto& c : comp)
        for (double v : c)
            if (!std::isfinite(v))
                return false;
    return true;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument("VectorField +: grids differ");
    VectorField r(a.grid);
    for (int k = 0; k < a.grid.d; ++k)
        for (std::size_t i = 0; i < r.comp[k].size(); ++i)
            r.comp[k][i] = a.comp[k][i] + b.comp[k][i];
    return r;
}

VectorField operator*(double s, const VectorField& u) {
    VectorField r = u;
    for (auto& c : r.comp)
        for (double& v : c)
            v *= s;
    return r;
}

double lp_norm(const VectorField& u, double p) {
    const double lg = lp_norm_log(u, p);
    return lg == -kInf ? 0.0 : std::exp(lg);
}

double lp_norm_log(const VectorField& u, double p) {
    if (!(p >= 1.0))
        throw std::domain_error("lp_norm: p must be >= 1");
    const double m = u.max_magnitude();
    if (m == 0.0)
        return -kInf;
    if (p == kInf)
        return std::log(m);
    const std::size_t np = u.grid.npoints();
    double s = 0.0;
    for (std::size_t i = 0; i < np; ++i)
        s += std::pow(u.magnitude(i) / m, p);
    return std::log(m) + (std::log(s) + std::log(u.grid.cell_volume())) / p;
}

double lp_norm_component(const VectorField& u, int k, double p) {
    if (!(p >= 1.0))
        throw std::domain_error("lp_norm_component: p must be >= 1");
    if (k < 0 || k >= u.grid.d)
        throw std::out_of_range("lp_norm_component: bad component");
    const auto& c = u.comp[k];
    double m = 0.0;
    for (double v : c)
        m = std::max(m, std::abs(v));
    if (m == 0.0)
        return 0.0;
    if (p == kInf)
        return m;
    double s = 0.0;
    for (double v : c)
        s += std::pow(std::abs(v) / m, p);
    return m * std::pow(s * u.grid.cell_volume(), 1.0 / p);
}

double w_functional(const VectorField& u, const std::vector<double>& grad_sq, double p) {
    if (!(p >= 2.0))
        throw std::domain_error("w_functional: p must be >= 2");
    const std::size_t np = u.grid.npoints();
    if (grad_sq.size() != np)
        throw std::invalid_argument("w_functional: gradient data size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
        const double g = grad_sq[i];
        s += (p == 2.0 ? g : std::pow(u.magnitude(i), p - 2.0) * g);
    }
    return s * u.grid.cell_volume();
}

VectorField dilate(const VectorField& u, double lambda) {
    if (!(lambda > 0.0))
        throw std::domain_error("dilate: lambda must be positive");
    VectorField r = u;
    r.grid.L = u.grid.L / lambda;
    for (auto& c : r.comp)
        for (double& v : c)
            v *= lambda;
    r.time_tag.reset();
    return r;
}

double NormTimeSeries::lp(std::size_t k, std::size_t j) const {
    const double v = lp_log[k][j];
    return v == -kInf ? 0.0 : std::exp(v);
}

double NormTimeSeries::l2(std::size_t k) const {
    const double v = l2_log[k];
    return v == -kInf ? 0.0 : std::exp(v);
}

namespace {
std::size_t find_p(const NormTimeSeries& s, double p) {
    for (std::size_t j = 0; j < s.p_grid.size(); ++j)
        if (std::abs(s.p_grid[j] - p) <= 1e-12 * std::max(1.0, std::abs(p)))
            return j;
    throw std::invalid_argument("mixed_norm: exponent p not sampled");
}
} // namespace

double mixed_norm_log_pow(const NormTimeSeries& s, double p, double r) {
    if (!(r >= 1.0))
        throw std::domain_error("mixed_norm: r must be >= 1");
    const std::size_t j = find_p(s, p);
    if (s.times.size() < 2)
        return -kInf;
    // trapezoid weights
    std::vector<double> w(s.times.size(), 0.0);
    for (std::size_t k = 0; k + 1 < s.times.size(); ++k) {
        const double h = s.times[k + 1] - s.times[k];
        w[k] += 0.5 * h;
        w[k + 1] += 0.5 * h;
    }
    double m = -kInf;
    for (std::size_t k = 0; k < s.times.size(); ++k)
        m = std::max(m, r * s.lp_log[k][j]);
    if (m == -kInf)
        return -kInf;
    double acc = 0.0;
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        const double e = r * s.lp_log[k][j];
        if (e != -kInf)
            acc += w[k] * std::exp(e - m);
    }
    return m + std::log(acc);
}

double mixed_norm(const NormTimeSeries& s, double p, double r) {
    const double lg = mixed_norm_log_pow(s, p, r);
    return lg == -kInf ? 0.0 : std::exp(lg / r);
}

namespace {

// index helpers for generators
void fill_taylor_green_2d(VectorField& u) {
    const int n = u.grid.n;
    const double h = 2.0 * 3.141592653589793238462643383279502884 / n; // phase step for unit wavenumber
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const std::size_t idx = static_cast<std::size_t>(i) * n + j;
            u.comp[0][idx] = std::sin(i * h) * std::cos(j * h);
            u.comp[1][idx] = -std::cos(i * h) * std::sin(j * h);
        }
}

void fill_taylor_green_3d(VectorField& u) {
    const int n = u.grid.n;
    const double h = 2.0 * 3.141592653589793238462643383279502884 / n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const std::size_t idx = (static_cast<std::size_t>(i) * n + j) * static_cast<std::size_t>(n) + k;
                u.comp[0][idx] = std::cos(i * h) * std::sin(j * h) * std::sin(k * h);
                u.comp[1][idx] = -std::sin(i * h) * std::cos(j * h) * std::sin(k * h);
                u.comp[2][idx] = 0.0;
            }
}

void fill_gaussian_bump(VectorField& u, double s) {
    const int n = u.grid.n;
    const double L = u.grid.L;
    const double c = L / 2.0;
    const std::size_t np = u.grid.npoints();
    for (std::size_t idx = 0; idx < np; ++idx) {
        std::size_t rem = idx;
        double r2 = 0.0;
        for (int ax = u.grid.d - 1; ax >= 0; --ax) {
            const int i = static_cast<int>(rem % n);
            rem /= n;
            const double x = i * (L / n) - c;
            r2 += x * x;
        }
        u.comp[0][idx] = std::exp(-r2 / (4.0 * s));
    }
}

void fill_random(VectorField& u, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (auto& c : u.comp)
        for (double& v : c)
            v = dist(rng);
}

} // namespace

VectorField make_initial(const InitialSpec& spec, const Grid& grid) {
    VectorField u(grid);
    switch (spec.kind) {
    case InitialSpec::Kind::TaylorGreen2D:
        if (grid.d != 2)
            throw std::invalid_argument("make_initial: taylor-green-2d needs d=2");
        fill_taylor_green_2d(u);
        break;
    case InitialSpec::Kind::TaylorGreen3D:
        if (grid.d != 3)
            throw std::invalid_argument("make_initial: taylor-green-3d needs d=3");
        fill_taylor_green_3d(u);
        break;
    case InitialSpec::Kind::RandomSolenoidal: {
        fill_random(u, spec.seed);
        SpectralField f = spectral::forward(u);
        spectral::band_pass_inplace(f, spec.band_lo, spec.band_hi);
        f = spectral::leray_project(f);
        u = spectral::inverse(f);
        const double m = u.max_magnitude();
        if (m > 0.0)
            u = (1.0 / m) * u;
        break;
    }
    case InitialSpec::Kind::GaussianBump: {
        fill_gaussian_bump(u, spec.width);
        SpectralField f = spectral::forward(u);
        f = spectral::leray_project(f);
        u = spectral::inverse(f);
        break;
    }
    }
    if (spec.amplitude != 1.0)
        u = spec.amplitude * u;
    u.time_tag = 0.0;
    return u;
}

double boundary_leakage(const VectorField& u) {
    const int n = u.grid.n;
    const std::size_t np = u.grid.npoints();
    const double m = u.max_magnitude();
    if (m == 0.0)
        return 0.0;
    double acc = 0.0;
    std::size_t cnt = 0;
    for (std::size_t idx = 0; idx < np; ++idx) {
        std::size_t rem = idx;
        bool shell = false;
        for (int ax = 0; ax < u.grid.d; ++ax) {
            const int i = static_cast<int>(rem % n);
            rem /= n;
            if (i == 0 || i == n - 1)
                shell = true;
        }
        if (shell) {
            acc += u.magnitude(idx);
            ++cnt;
        }
    }
    return acc / (static_cast<double>(cnt) * m);
}

} // namespace nsgls
