#include "nsgls/spectral.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include <fftw3.h>

namespace nsgls {

SpectralField::SpectralField(const Grid& g, int ncomp_)
    : grid(g), comp(ncomp_ < 0 ? g.d : ncomp_, std::vector<std::complex<double>>(g.npoints())) {}

namespace spectral {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Cached FFTW plans, one per (d, n, sign). Plans are created with
// FFTW_ESTIMATE | FFTW_UNALIGNED so they can be executed on any buffer.
class PlanCache {
  public:
    static fftw_plan get(int d, int n, int sign) {
        static PlanCache cache;
        std::lock_guard<std::mutex> lock(cache.mutex_);
        const auto key = std::tuple<int, int, int>(d, n, sign);
        auto it = cache.plans_.find(key);
        if (it != cache.plans_.end())
            return it->second;
        std::vector<int> dims(d, n);
        std::size_t np = 1;
        for (int i = 0; i < d; ++i)
            np *= static_cast<std::size_t>(n);
        std::vector<std::complex<double>> buf(np);
        fftw_plan p = fftw_plan_dft(d, dims.data(),
                                    reinterpret_cast<fftw_complex*>(buf.data()),
                                    reinterpret_cast<fftw_complex*>(buf.data()),
                                    sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        cache.plans_[key] = p;
        return p;
    }

  private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void execute(int d, int n, int sign, std::complex<double>* data) {
    fftw_plan p = PlanCache::get(d, n, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data), reinterpret_cast<fftw_complex*>(data));
}

template <typename F>
void for_each_mode(const Grid& g, F&& f) {
    const std::size_t np = g.npoints();
    const int n = g.n;
    double xi[3] = {0, 0, 0};
    int k[3] = {0, 0, 0};
    // iterate with incremental index decode
    std::vector<int> idx(g.d, 0);
    for (std::size_t flat = 0; flat < np; ++flat) {
        for (int ax = 0; ax < g.d; ++ax) {
            const int i = idx[ax];
            k[ax] = i < n / 2 ? i : i - n;
            xi[ax] = kTwoPi * k[ax] / g.L;
        }
        f(flat, k, xi);
        for (int ax = g.d - 1; ax >= 0; --ax) {
            if (++idx[ax] < n)
                break;
            idx[ax] = 0;
        }
    }
}

} // namespace

int wavenumber(const Grid& g, std::size_t i, int ax) {
    const int n = g.n;
    std::size_t rem = i;
    int coord = 0;
    for (int a = g.d - 1; a >= 0; --a) {
        const int c = static_cast<int>(rem % n);
        rem /= n;
        if (a == ax)
            coord = c;
    }
    return coord < n / 2 ? coord : coord - n;
}

void wavevector(const Grid& g, std::size_t i, double* xi) {
    const int n = g.n;
    std::size_t rem = i;
    for (int a = g.d - 1; a >= 0; --a) {
        const int c = static_cast<int>(rem % n);
        rem /= n;
        const int k = c < n / 2 ? c : c - n;
        xi[a] = kTwoPi * k / g.L;
    }
}

SpectralField forward(const VectorField& u) {
    if (!u.all_finite())
        throw std::invalid_argument("spectral::forward: non-finite samples");
    SpectralField f(u.grid, u.grid.d);
    const std::size_t np = u.grid.npoints();
    const double scale = 1.0 / static_cast<double>(np);
    for (int c = 0; c < u.grid.d; ++c) {
        for (std::size_t i = 0; i < np; ++i)
            f.comp[c][i] = u.comp[c][i];
        execute(u.grid.d, u.grid.n, FFTW_FORWARD, f.comp[c].data());
        for (auto& z : f.comp[c])
            z *= scale;
    }
    return f;
}

VectorField inverse(const SpectralField& f) {
    VectorField u(f.grid);
    u.comp.resize(f.comp.size());
    const std::size_t np = f.grid.npoints();
    std::vector<std::complex<double>> buf(np);
    for (int c = 0; c < f.ncomp(); ++c) {
        buf = f.comp[c];
        execute(f.grid.d, f.grid.n, FFTW_BACKWARD, buf.data());
        u.comp[c].resize(np);
        for (std::size_t i = 0; i < np; ++i)
            u.comp[c][i] = buf[i].real();
    }
    return u;
}

SpectralField forward_scalar(const Grid& g, const std::vector<double>& samples) {
    if (samples.size() != g.npoints())
        throw std::invalid_argument("spectral::forward_scalar: sample count mismatch");
    SpectralField f(g, 1);
    const double scale = 1.0 / static_cast<double>(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        f.comp[0][i] = samples[i];
    execute(g.d, g.n, FFTW_FORWARD, f.comp[0].data());
    for (auto& z : f.comp[0])
        z *= scale;
    return f;
}

std::vector<double> inverse_scalar(const SpectralField& f) {
    if (f.ncomp() != 1)
        throw std::invalid_argument("spectral::inverse_scalar: needs a one-component field");
    std::vector<std::complex<double>> buf = f.comp[0];
    execute(f.grid.d, f.grid.n, FFTW_BACKWARD, buf.data());
    std::vector<double> out(buf.size());
    for (std::size_t i = 0; i < buf.size(); ++i)
        out[i] = buf[i].real();
    return out;
}

SpectralField riesz(const SpectralField& f, int j) {
    if (j < 0 || j >= f.grid.d)
        throw std::out_of_range("spectral::riesz: bad direction");
    SpectralField r = f;
    for_each_mode(f.grid, [&](std::size_t flat, const int*, const double* xi) {
        double norm2 = 0.0;
        for (int a = 0; a < f.grid.d; ++a)
            norm2 += xi[a] * xi[a];
        if (norm2 == 0.0) {
            for (auto& c : r.comp)
                c[flat] = 0.0;
            return;
        }
        const std::complex<double> mult(0.0, -xi[j] / std::sqrt(norm2));
        for (auto& c : r.comp)
            c[flat] *= mult;
    });
    return r;
}

SpectralField leray_project(const SpectralField& f) {
    if (f.ncomp() != f.grid.d)
        throw std::invalid_argument("spectral::leray_project: needs a d-component field");
    SpectralField r = f;
    const int d = f.grid.d;
    for_each_mode(f.grid, [&](std::size_t flat, const int*, const double* xi) {
        double norm2 = 0.0;
        for (int a = 0; a < d; ++a)
            norm2 += xi[a] * xi[a];
        if (norm2 == 0.0)
            return; // zero mode passes through
        std::complex<double> dot(0.0, 0.0);
        for (int a = 0; a < d; ++a)
            dot += xi[a] * f.comp[a][flat];
        for (int a = 0; a < d; ++a)
            r.comp[a][flat] = f.comp[a][flat] - xi[a] * dot / norm2;
    });
    return r;
}

SpectralField heat_semigroup(const SpectralField& f, double t) {
    if (t < 0.0)
        throw std::domain_error("spectral::heat_semigroup: t must be nonnegative");
    SpectralField r = f;
    for_each_mode(f.grid, [&](std::size_t flat, const int*, const double* xi) {
        double norm2 = 0.0;
        for (int a = 0; a < f.grid.d; ++a)
            norm2 += xi[a] * xi[a];
        const double e = std::exp(-norm2 * t);
        for (auto& c : r.comp)
            c[flat] *= e;
    });
    return r;
}

SpectralField derivative(const SpectralField& f, int m) {
    if (m < 0 || m >= f.grid.d)
        throw std::out_of_range("spectral::derivative: bad axis");
    SpectralField r = f;
    for_each_mode(f.grid, [&](std::size_t flat, const int*, const double* xi) {
        const std::complex<double> mult(0.0, xi[m]);
        for (auto& c : r.comp)
            c[flat] *= mult;
    });
    return r;
}

std::vector<SpectralField> gradient(const SpectralField& f) {
    std::vector<SpectralField> g;
    g.reserve(f.grid.d);
    for (int m = 0; m < f.grid.d; ++m)
        g.push_back(derivative(f, m));
    return g;
}

SpectralField divergence(const SpectralField& f) {
    if (f.ncomp() != f.grid.d)
        throw std::invalid_argument("spectral::divergence: needs a d-component field");
    SpectralField r(f.grid, 1);
    for_each_mode(f.grid, [&](std::size_t flat, const int*, const double* xi) {
        std::complex<double> s(0.0, 0.0);
        for (int a = 0; a < f.grid.d; ++a)
            s += std::complex<double>(0.0, xi[a]) * f.comp[a][flat];
        r.comp[0][flat] = s;
    });
    return r;
}

SpectralField laplacian(const SpectralField& f) {
    SpectralField r = f;
    for_each_mode(f.grid, [&](std::size_t flat, const int*, const double* xi) {
        double norm2 = 0.0;
        for (int a = 0; a < f.grid.d; ++a)
            norm2 += xi[a] * xi[a];
        for (auto& c : r.comp)
            c[flat] *= -norm2;
    });
    return r;
}

void dealias_inplace(SpectralField& f) {
    const double cut = f.grid.n / 3.0;
    for_each_mode(f.grid, [&](std::size_t flat, const int* k, const double*) {
        for (int a = 0; a < f.grid.d; ++a)
            if (std::abs(k[a]) > cut) {
                for (auto& c : f.comp)
                    c[flat] = 0.0;
                return;
            }
    });
}

SpectralField dealias(const SpectralField& f) {
    SpectralField r = f;
    dealias_inplace(r);
    return r;
}

void band_pass_inplace(SpectralField& f, double lo, double hi) {
    for_each_mode(f.grid, [&](std::size_t flat, const int* k, const double*) {
        double k2 = 0.0;
        for (int a = 0; a < f.grid.d; ++a)
            k2 += static_cast<double>(k[a]) * k[a];
        const double kk = std::sqrt(k2);
        if (kk < lo || kk > hi)
            for (auto& c : f.comp)
                c[flat] = 0.0;
    });
}

double divergence_max(const SpectralField& f) {
    SpectralField div = divergence(f);
    double m = 0.0;
    for (const auto& z : div.comp[0])
        m = std::max(m, std::abs(z));
    return m;
}

std::vector<double> gradient_squared(const VectorField& u) {
    SpectralField f = forward(u);
    const std::size_t np = u.grid.npoints();
    std::vector<double> g(np, 0.0);
    for (int m = 0; m < u.grid.d; ++m) {
        VectorField dm = inverse(derivative(f, m));
        for (int c = 0; c < u.grid.d; ++c)
            for (std::size_t i = 0; i < np; ++i)
                g[i] += dm.comp[c][i] * dm.comp[c][i];
    }
    return g;
}

double parseval_l2(const SpectralField& f) {
    double s = 0.0;
    for (const auto& c : f.comp)
        for (const auto& z : c)
            s += std::norm(z);
    const double V = std::pow(f.grid.L, f.grid.d);
    return std::sqrt(V * s);
}

} // namespace spectral

} // namespace nsgls
