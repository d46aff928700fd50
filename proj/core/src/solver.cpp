#include "nsgls/solver.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "nsgls/psi.hpp"
#include "nsgls/snapshot.hpp"

namespace nsgls {

namespace {

using nlohmann::json;

InitialSpec initial_from_json(const json& j) {
    InitialSpec s;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "taylor-green-2d")
        s.kind = InitialSpec::Kind::TaylorGreen2D;
    else if (kind == "taylor-green-3d")
        s.kind = InitialSpec::Kind::TaylorGreen3D;
    else if (kind == "random-solenoidal")
        s.kind = InitialSpec::Kind::RandomSolenoidal;
    else if (kind == "gaussian-bump")
        s.kind = InitialSpec::Kind::GaussianBump;
    else
        throw std::invalid_argument("initial: unknown kind '" + kind + "'");
    s.amplitude = j.value("amplitude", 1.0);
    if (j.contains("seed"))
        s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("band")) {
        s.band_lo = j.at("band").at(0).get<double>();
        s.band_hi = j.at("band").at(1).get<double>();
    }
    s.width = j.value("width", 0.05);
    return s;
}

json initial_to_json(const InitialSpec& s) {
    json j;
    switch (s.kind) {
    case InitialSpec::Kind::TaylorGreen2D: j["kind"] = "taylor-green-2d"; break;
    case InitialSpec::Kind::TaylorGreen3D: j["kind"] = "taylor-green-3d"; break;
    case InitialSpec::Kind::RandomSolenoidal:
        j["kind"] = "random-solenoidal";
        j["seed"] = s.seed;
        j["band"] = {s.band_lo, s.band_hi};
        break;
    case InitialSpec::Kind::GaussianBump:
        j["kind"] = "gaussian-bump";
        j["width"] = s.width;
        break;
    }
    j["amplitude"] = s.amplitude;
    return j;
}

} // namespace

SimulationConfig SimulationConfig::from_json(const json& j) {
    std::vector<std::string> problems;
    SimulationConfig c;
    try {
        c.d = j.at("d").get<int>();
    } catch (...) { problems.push_back("d"); }
    try {
        c.n = j.at("n").get<int>();
    } catch (...) { problems.push_back("n"); }
    try {
        c.L = j.at("L").get<double>();
    } catch (...) { problems.push_back("L"); }
    try {
        c.dt = j.at("dt").get<double>();
    } catch (...) { problems.push_back("dt"); }
    try {
        c.T = j.at("T").get<double>();
    } catch (...) { problems.push_back("T"); }
    try {
        c.initial = initial_from_json(j.at("initial"));
    } catch (...) { problems.push_back("initial"); }
    try {
        if (j.contains("forcing") && !j.at("forcing").is_null())
            c.forcing = ForcingSpec{initial_from_json(j.at("forcing"))};
    } catch (...) { problems.push_back("forcing"); }
    try {
        c.sample_every = j.value("sample_every", 1);
    } catch (...) { problems.push_back("sample_every"); }
    try {
        c.p_grid = j.value("p_grid", std::vector<double>{});
    } catch (...) { problems.push_back("p_grid"); }
    try {
        if (j.contains("snapshot_every") && !j.at("snapshot_every").is_null())
            c.snapshot_every = j.at("snapshot_every").get<int>();
    } catch (...) { problems.push_back("snapshot_every"); }
    try {
        if (j.contains("seed"))
            c.seed = j.at("seed").get<std::uint64_t>();
    } catch (...) { problems.push_back("seed"); }
    try {
        c.record_w = j.value("record_w", false);
    } catch (...) { problems.push_back("record_w"); }

    if (!problems.empty()) {
        std::string msg = "config schema violations:";
        for (const auto& f : problems)
            msg += " " + f;
        throw std::invalid_argument(msg);
    }
    if (!(c.dt > 0.0))
        throw std::invalid_argument("config: dt must be positive");
    if (c.T < 0.0)
        throw std::invalid_argument("config: T must be nonnegative");
    if (c.sample_every < 1)
        throw std::invalid_argument("config: sample_every must be >= 1");
    c.initial.seed = c.seed;
    return c;
}

json SimulationConfig::to_json() const {
    json j;
    j["d"] = d;
    j["n"] = n;
    j["L"] = L;
    j["dt"] = dt;
    j["T"] = T;
    j["initial"] = initial_to_json(initial);
    j["forcing"] = forcing ? initial_to_json(forcing->field) : json(nullptr);
    j["sample_every"] = sample_every;
    j["p_grid"] = p_grid;
    if (snapshot_every)
        j["snapshot_every"] = *snapshot_every;
    else
        j["snapshot_every"] = json(nullptr);
    j["seed"] = seed;
    j["record_w"] = record_w;
    return j;
}

namespace solver {

namespace {

double max_coefficient(const SpectralField& f) {
    double m = 0.0;
    for (const auto& c : f.comp)
        for (const auto& z : c)
            m = std::max(m, std::abs(z));
    return m;
}

void zero_mean_inplace(SpectralField& f) {
    for (auto& c : f.comp)
        c[0] = 0.0;
}

void check_solenoidal(const SpectralField& uh) {
    const double scale = max_coefficient(uh);
    if (scale == 0.0)
        return;
    const double xi_max = 2.0 * 3.141592653589793238462643383279502884 * (uh.grid.n / 2) / uh.grid.L;
    if (spectral::divergence_max(uh) > 1e-8 * xi_max * scale)
        throw std::invalid_argument("nonlinear_term: input field is not solenoidal");
}

void add_inplace(SpectralField& a, const SpectralField& b, double s = 1.0) {
    for (std::size_t c = 0; c < a.comp.size(); ++c)
        for (std::size_t i = 0; i < a.comp[c].size(); ++i)
            a.comp[c][i] += s * b.comp[c][i];
}

} // namespace

SpectralField nonlinear_term_spectral(const SpectralField& uh) {
    const Grid& g = uh.grid;
    const int d = g.d;
    check_solenoidal(uh);

    const VectorField u = spectral::inverse(spectral::dealias(uh));
    const std::size_t np = g.npoints();

    // spectra of the symmetric products u_i u_j
    std::vector<std::vector<SpectralField>> prod(d);
    std::vector<double> buf(np);
    for (int i = 0; i < d; ++i) {
        prod[i].resize(d);
        for (int j = i; j < d; ++j) {
            for (std::size_t k = 0; k < np; ++k)
                buf[k] = u.comp[i][k] * u.comp[j][k];
            prod[i][j] = spectral::forward_scalar(g, buf);
            spectral::dealias_inplace(prod[i][j]);
        }
    }

    // conv_i = sum_j i xi_j (u_i u_j)^
    SpectralField conv(g, d);
    double xi[3];
    for (std::size_t k = 0; k < np; ++k) {
        spectral::wavevector(g, k, xi);
        for (int i = 0; i < d; ++i) {
            std::complex<double> s(0.0, 0.0);
            for (int j = 0; j < d; ++j) {
                const auto& pij = (i <= j) ? prod[i][j] : prod[j][i];
                s += std::complex<double>(0.0, xi[j]) * pij.comp[0][k];
            }
            conv.comp[i][k] = -s;
        }
    }
    SpectralField out = spectral::leray_project(conv);
    zero_mean_inplace(out);
    return out;
}

VectorField nonlinear_term(const VectorField& u) {
    return spectral::inverse(nonlinear_term_spectral(spectral::forward(u)));
}

SpectralField step_spectral(const SpectralField& uh, double dt, const SpectralField* forcing) {
    if (!(dt > 0.0))
        throw std::domain_error("step: dt must be positive");

    SpectralField n0 = nonlinear_term_spectral(uh);
    if (forcing)
        add_inplace(n0, *forcing);

    // predictor: E(dt) (u + dt G(u))
    SpectralField pred = uh;
    add_inplace(pred, n0, dt);
    pred = spectral::heat_semigroup(pred, dt);

    SpectralField n1 = nonlinear_term_spectral(pred);
    if (forcing)
        add_inplace(n1, *forcing);

    // corrector: E(dt) u + dt/2 (E(dt) G(u) + G(pred))
    SpectralField out = spectral::heat_semigroup(uh, dt);
    SpectralField en0 = spectral::heat_semigroup(n0, dt);
    add_inplace(out, en0, 0.5 * dt);
    add_inplace(out, n1, 0.5 * dt);

    const double before = max_coefficient(uh);
    const double after = max_coefficient(out);
    if (before > 0.0 && after > 10.0 * before)
        throw BlowUpError("resolution/timestep failure: field grew more than 10x in one step");
    return out;
}

VectorField step(const VectorField& u, double dt) {
    return spectral::inverse(step_spectral(spectral::forward(u), dt));
}

namespace {

void sample(NormTimeSeries& series, const SpectralField& uh, double t, bool record_w) {
    VectorField u = spectral::inverse(uh);
    u.time_tag = t;
    series.times.push_back(t);
    std::vector<double> lp;
    lp.reserve(series.p_grid.size());
    for (double p : series.p_grid)
        lp.push_back(lp_norm_log(u, p));
    series.lp_log.push_back(std::move(lp));
    series.l2_log.push_back(lp_norm_log(u, 2.0));
    if (record_w) {
        const auto gsq = spectral::gradient_squared(u);
        std::vector<double> w;
        w.reserve(series.p_grid.size());
        for (double p : series.p_grid)
            w.push_back(p >= 2.0 ? w_functional(u, gsq, p)
                                 : std::numeric_limits<double>::quiet_NaN());
        series.w_values.push_back(std::move(w));
    }
}

} // namespace

RunResult run(const SimulationConfig& config, const std::string& outdir) {
    const Grid grid(config.d, config.n, config.L);
    RunResult result;

    InitialSpec ispec = config.initial;
    ispec.seed = config.seed;
    result.u0 = make_initial(ispec, grid);
    result.boundary_leakage_u0 = boundary_leakage(result.u0);

    SpectralField uh = spectral::forward(result.u0);
    zero_mean_inplace(uh);
    result.u0 = spectral::inverse(uh);
    result.u0.time_tag = 0.0;

    SpectralField fh;
    const bool forced = config.forcing.has_value();
    if (forced) {
        fh = spectral::forward(make_initial(config.forcing->field, grid));
        fh = spectral::leray_project(fh);
        zero_mean_inplace(fh);
    }

    result.series.p_grid = config.p_grid;
    sample(result.series, uh, 0.0, config.record_w);

    double dt = config.dt;
    double t = 0.0;
    long step_count = 0;
    const double t_eps = 1e-12 * std::max(config.T, 1.0);

    auto write_snap = [&](const SpectralField& f, double tt) {
        if (!config.snapshot_every || outdir.empty())
            return;
        VectorField u = spectral::inverse(f);
        u.time_tag = tt;
        char name[64];
        std::snprintf(name, sizeof(name), "snap_%06ld.nsgls", step_count);
        write_snapshot((std::filesystem::path(outdir) / name).string(), u);
        ++result.snapshots_written;
    };
    if (config.snapshot_every)
        write_snap(uh, 0.0);

    try {
        while (t < config.T - t_eps) {
            const double umax = spectral::inverse(uh).max_magnitude();
            double cfl = dt * umax * grid.n / grid.L;
            while (cfl > 0.5) {
                dt *= 0.5;
                ++result.dt_halvings;
                cfl = dt * umax * grid.n / grid.L;
            }
            result.cfl_max = std::max(result.cfl_max, cfl);
            const double dt_step = std::min(dt, config.T - t);
            uh = step_spectral(uh, dt_step, forced ? &fh : nullptr);
            t += dt_step;
            ++step_count;
            if (step_count % config.sample_every == 0 || t >= config.T - t_eps)
                sample(result.series, uh, t, config.record_w);
            if (config.snapshot_every && step_count % *config.snapshot_every == 0)
                write_snap(uh, t);
        }
    } catch (const BlowUpError& e) {
        result.aborted = true;
        result.failure = e.what();
    }

    result.dt_final = dt;
    result.u_final = spectral::inverse(uh);
    result.u_final.time_tag = t;
    result.divergence_max_final = spectral::divergence_max(uh);
    double mean_max = 0.0;
    for (const auto& c : uh.comp)
        mean_max = std::max(mean_max, std::abs(c[0]));
    result.mean_max_final = mean_max;
    return result;
}

std::vector<double> pressure(const VectorField& u) {
    const Grid& g = u.grid;
    const int d = g.d;
    const std::size_t np = g.npoints();
    SpectralField acc(g, 1);
    std::vector<double> buf(np);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            for (std::size_t k = 0; k < np; ++k)
                buf[k] = u.comp[i][k] * u.comp[j][k];
            SpectralField pij = spectral::forward_scalar(g, buf);
            spectral::dealias_inplace(pij);
            // R_i R_j multiplier is -xi_i xi_j / ||xi||^2; the (i,j) and (j,i)
            // terms coincide, hence the factor 2 off the diagonal.
            const double factor = (i == j) ? 1.0 : 2.0;
            double xi[3];
            for (std::size_t k = 0; k < np; ++k) {
                spectral::wavevector(g, k, xi);
                double norm2 = 0.0;
                for (int a = 0; a < d; ++a)
                    norm2 += xi[a] * xi[a];
                if (norm2 == 0.0)
                    continue;
                acc.comp[0][k] += factor * (-xi[i] * xi[j] / norm2) * pij.comp[0][k];
            }
        }
    acc.comp[0][0] = 0.0; // mean-zero
    return spectral::inverse_scalar(acc);
}

VectorField picard_mild_solution(const VectorField& u0, double T, int nodes, int iters) {
    if (nodes < 2 || iters < 1)
        throw std::invalid_argument("picard_mild_solution: need nodes >= 2, iters >= 1");
    SpectralField uh0 = spectral::forward(u0);
    zero_mean_inplace(uh0);
    const double h = T / (nodes - 1);

    // u^0(t_j) = E(t_j) u0
    std::vector<SpectralField> u(nodes);
    for (int j = 0; j < nodes; ++j)
        u[j] = spectral::heat_semigroup(uh0, j * h);

    for (int m = 0; m < iters; ++m) {
        std::vector<SpectralField> nl(nodes);
        for (int j = 0; j < nodes; ++j)
            nl[j] = nonlinear_term_spectral(u[j]);
        std::vector<SpectralField> next(nodes);
        for (int j = 0; j < nodes; ++j) {
            SpectralField acc = spectral::heat_semigroup(uh0, j * h);
            for (int l = 0; l <= j; ++l) {
                const double w = (l == 0 || l == j) ? 0.5 * h : h;
                if (j > 0)
                    add_inplace(acc, spectral::heat_semigroup(nl[l], (j - l) * h), w);
            }
            next[j] = std::move(acc);
        }
        u = std::move(next);
    }
    return spectral::inverse(u.back());
}

} // namespace solver

} // namespace nsgls
