#include "nsgls/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "nsgls/constants.hpp"
#include "nsgls/snapshot.hpp"
#include "nsgls/spectral.hpp"

namespace nsgls {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool grid_match(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}
} // namespace

nlohmann::json Tolerances::to_json() const {
    return {{"upper_ratio_slack", upper_ratio_slack},
            {"mono_rel_slack", mono_rel_slack},
            {"sup_at_zero_slack", sup_at_zero_slack},
            {"exact_slack", exact_slack}};
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json m = nlohmann::json::array();
    for (const auto& cm : margins) {
        nlohmann::json e = {{"kind", cm.kind}, {"p", cm.p}, {"ok", cm.ok}};
        e[cm.is_violation ? "violation" : "ratio"] = cm.value;
        m.push_back(e);
    }
    return {{"theorem", theorem},   {"pass", pass},
            {"hypothesis_met", hypothesis_met}, {"note", note},
            {"tolerances", tolerances},         {"margins", m},
            {"diagnostics", diagnostics},       {"config", config_echo}};
}

namespace verify {

namespace {

std::vector<double> joined_grid(std::vector<double> g, std::initializer_list<double> extra) {
    for (double e : extra)
        g.push_back(e);
    std::sort(g.begin(), g.end());
    std::vector<double> out;
    for (double p : g)
        if (out.empty() || !grid_match(out.back(), p))
            out.push_back(p);
    return out;
}

NormProfile profile_at(const NormTimeSeries& s, std::size_t k) {
    NormProfile prof;
    prof.grid = s.p_grid;
    prof.log_value = s.lp_log[k];
    return prof;
}

// Zero the profile outside the included points of psi so that integral-flavor
// norms see the same support.
NormProfile restrict_profile(NormProfile prof, const PsiFunction& psi) {
    for (std::size_t i = 0; i < prof.grid.size(); ++i) {
        bool keep = false;
        for (std::size_t j = 0; j < psi.grid.size(); ++j)
            if (psi.included[j] && grid_match(prof.grid[i], psi.grid[j]))
                keep = true;
        if (!keep)
            prof.log_value[i] = -kInf;
    }
    return prof;
}

long series_index(const NormTimeSeries& s, double p) {
    for (std::size_t j = 0; j < s.p_grid.size(); ++j)
        if (grid_match(s.p_grid[j], p))
            return static_cast<long>(j);
    return -1;
}

long require_series_index(const NormTimeSeries& s, double p) {
    const long j = series_index(s, p);
    if (j < 0)
        throw std::invalid_argument("verify: exponent " + std::to_string(p) +
                                    " is not on the sampled p grid");
    return j;
}

// log kappa_p(u0) on the psi grid; p <= 2 carries log 1 = 0 (the correction
// factor degenerates there).
std::vector<double> kappa0_logs(const NormTimeSeries& s, const PsiFunction& psi, int d) {
    std::vector<double> out(psi.grid.size(), 0.0);
    for (std::size_t i = 0; i < psi.grid.size(); ++i) {
        const double p = psi.grid[i];
        if (p <= 2.0 + 1e-9)
            continue;
        const long j = require_series_index(s, p);
        const double lp = s.lp_log[0][static_cast<std::size_t>(j)];
        const double l2 = s.l2_log[0];
        if (lp == -kInf || l2 == -kInf) {
            out[i] = -kInf;
            continue;
        }
        out[i] = psi::kappa_log(lp, l2, d, p);
    }
    return out;
}

void start_report(VerificationReport& rep, const std::string& theorem,
                  const SimulationConfig& config, const Tolerances& tol) {
    rep.theorem = theorem;
    rep.tolerances = tol.to_json();
    rep.config_echo = config.to_json();
    rep.diagnostics = nlohmann::json::object();
}

void run_diagnostics(VerificationReport& rep, const RunResult& run) {
    rep.diagnostics["aborted"] = run.aborted;
    if (run.aborted)
        rep.diagnostics["failure"] = run.failure;
    rep.diagnostics["dt_halvings"] = run.dt_halvings;
    rep.diagnostics["dt_final"] = run.dt_final;
    rep.diagnostics["cfl_max"] = run.cfl_max;
    rep.diagnostics["boundary_leakage_u0"] = run.boundary_leakage_u0;
    rep.diagnostics["divergence_max_final"] = run.divergence_max_final;
    rep.diagnostics["nsamples"] = run.series.nsamples();
}

void hypothesis_fail(VerificationReport& rep, const std::string& why) {
    rep.hypothesis_met = false;
    rep.pass = false;
    rep.note = "hypothesis not met: " + why;
}

bool finish(VerificationReport& rep, const RunResult& run) {
    bool ok = !run.aborted;
    for (const auto& m : rep.margins)
        ok = ok && m.ok;
    rep.pass = ok && rep.hypothesis_met;
    if (run.aborted && rep.note.empty())
        rep.note = "solver aborted: " + run.failure;
    return rep.pass;
}

// Fraction of the time integral of ||u||_p^r that the observed terminal decay
// rate attributes to (T, infinity); reported, not asserted.
double tail_fraction(const NormTimeSeries& s, std::size_t j, double r, double log_int) {
    const std::size_t K = s.nsamples();
    if (K < 3 || log_int == -kInf)
        return 0.0;
    const double l1 = s.lp_log[K - 2][j], l2 = s.lp_log[K - 1][j];
    const double dtk = s.times[K - 1] - s.times[K - 2];
    if (dtk <= 0.0 || l2 == -kInf || l1 == -kInf)
        return 0.0;
    const double lambda = (l1 - l2) / dtk; // log decay rate
    if (lambda <= 0.0)
        return 1.0; // not decaying: the truncation is not justified
    const double log_tail = r * l2 - std::log(r * lambda);
    return std::exp(log_tail - log_int);
}

} // namespace

std::vector<double> harness_grid(const SimulationConfig& config) {
    return joined_grid(config.p_grid, {2.0, static_cast<double>(config.d)});
}

PsiFunction build_psi(const nlohmann::json& spec, const std::vector<double>& grid,
                      const VectorField* u0) {
    if (!spec.contains("kind"))
        throw std::invalid_argument("psi spec: missing \"kind\"");
    const std::string kind = spec.at("kind").get<std::string>();
    if (grid.empty())
        throw std::invalid_argument("psi spec: empty p grid");

    double a = grid.front();
    double b = grid.back() + 1e-9 * std::max(1.0, grid.back()); // include the last point
    if (spec.contains("support")) {
        const auto& s = spec.at("support");
        if (!s.is_array() || s.size() != 2)
            throw std::invalid_argument("psi spec: \"support\" must be [a, b]");
        a = s[0].get<double>();
        b = s[1].get<double>();
    }

    if (kind == "degenerate")
        return psi::degenerate_psi(spec.at("r").get<double>());

    if (kind == "natural") {
        std::vector<NormProfile> profiles;
        std::vector<std::string> fields = {"u0"};
        if (spec.contains("fields"))
            fields = spec.at("fields").get<std::vector<std::string>>();
        for (const auto& f : fields) {
            if (f == "u0") {
                if (!u0)
                    throw std::invalid_argument("psi spec: \"u0\" requested but no run available");
                profiles.push_back(psi::profile_from_field(*u0, grid, "u0"));
            } else {
                profiles.push_back(psi::profile_from_field(read_snapshot(f), grid, f));
            }
        }
        return psi::natural_psi(profiles, a, b);
    }

    if (kind == "interpolation") {
        const double y2 = spec.at("y2").get<double>();
        const double yb = spec.at("yb").get<double>();
        const double bb = spec.at("b").get<double>();
        if (!(bb > 2.0) || !(y2 > 0.0) || !(yb > 0.0))
            throw std::invalid_argument("psi spec: interpolation needs b > 2 and positive norms");
        PsiFunction f;
        f.support_a = 2.0;
        f.support_b = bb;
        f.grid = grid;
        f.log_value.assign(grid.size(), 0.0);
        f.included.assign(grid.size(), 1);
        const double ly2 = std::log(y2), lyb = std::log(yb);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double p = grid[i];
            if (p < 2.0 - 1e-12 || p >= bb) {
                f.included[i] = 0;
                continue;
            }
            const double ea = 2.0 * (bb - p) / (p * (bb - 2.0));
            const double eb = bb * (p - 2.0) / (p * (bb - 2.0));
            f.log_value[i] = ea * ly2 + eb * lyb;
        }
        if (!f.has_support())
            throw std::invalid_argument("psi spec: interpolation support misses the p grid");
        return f;
    }

    if (kind == "table") {
        auto tgrid = spec.at("grid").get<std::vector<double>>();
        auto tvals = spec.at("values").get<std::vector<double>>();
        if (!spec.contains("support") && !tgrid.empty()) {
            a = tgrid.front();
            b = tgrid.back() + 1e-9 * std::max(1.0, tgrid.back());
        }
        PsiFunction table = psi::make_psi(std::move(tgrid), tvals, a, b);
        PsiFunction f;
        f.support_a = a;
        f.support_b = b;
        f.grid = grid;
        f.log_value.assign(grid.size(), 0.0);
        f.included.assign(grid.size(), 1);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            try {
                f.log_value[i] = table.log_value_at(grid[i]);
            } catch (const std::domain_error&) {
                f.included[i] = 0;
            }
            if (grid[i] < a || grid[i] >= b)
                f.included[i] = 0;
        }
        if (!f.has_support())
            throw std::invalid_argument("psi spec: table support misses the p grid");
        return f;
    }

    throw std::invalid_argument("psi spec: unknown kind \"" + kind + "\"");
}

VerificationReport check_thm31_with(const SimulationConfig& config, const RunResult& run,
                                    const PsiFunction& psi, const Tolerances& tol) {
    VerificationReport rep;
    start_report(rep, "thm31", config, tol);
    run_diagnostics(rep, run);
    const int d = config.d;

    if (d < 3) {
        hypothesis_fail(rep, "d >= 3 required");
        return rep;
    }
    if (static_cast<double>(d) < psi.support_a || static_cast<double>(d) >= psi.support_b) {
        hypothesis_fail(rep, "d not in supp psi");
        return rep;
    }

    const double log_u0_d = lp_norm_log(run.u0, static_cast<double>(d));
    rep.diagnostics["log_u0_d"] = log_u0_d;

    const auto mask = constants::smallness_mask(d, log_u0_d, psi.grid);
    std::size_t small_count = 0;
    for (char c : mask)
        small_count += c != 0;
    rep.diagnostics["smallness_count"] = small_count;

    PsiFunction pt;
    try {
        pt = psi::psi_tilde(psi, mask);
    } catch (const std::runtime_error&) {
        hypothesis_fail(rep, "no exponent satisfies the smallness condition (supp psi-tilde empty)");
        return rep;
    }

    const NormTimeSeries& s = run.series;
    const std::size_t K = s.nsamples();
    for (std::size_t i = 0; i < pt.grid.size(); ++i) {
        if (!pt.included[i])
            continue;
        const double p = pt.grid[i];
        const auto j = static_cast<std::size_t>(require_series_index(s, p));
        const double l0 = s.lp_log[0][j];
        double worst = 0.0;
        for (std::size_t k = 0; k + 1 < K; ++k) {
            // (||u(t_{k+1})||_p - ||u(t_k)||_p) / ||u0||_p, positive = growth
            const double a = s.lp_log[k][j], b = s.lp_log[k + 1][j];
            const double va = a == -kInf ? 0.0 : std::exp(a - l0);
            const double vb = b == -kInf ? 0.0 : std::exp(b - l0);
            worst = std::max(worst, vb - va);
        }
        if (l0 == -kInf)
            worst = 0.0; // zero field: trivially monotone
        rep.margins.push_back({"monotone-decay", p, worst, true, worst <= tol.mono_rel_slack});
    }

    double sup_log = -kInf;
    for (std::size_t k = 0; k < K; ++k)
        sup_log = std::max(sup_log, psi::gls_norm_log(profile_at(s, k), pt));
    const double g0_log = psi::gls_norm_log(profile_at(s, 0), psi);
    const double ratio = (sup_log == -kInf && g0_log == -kInf) ? 1.0 : std::exp(sup_log - g0_log);
    rep.margins.push_back(
        {"sup-at-zero", 0.0, ratio, false, std::abs(ratio - 1.0) <= tol.sup_at_zero_slack});
    rep.diagnostics["gls_u0_log"] = g0_log;
    rep.diagnostics["gls_sup_log"] = sup_log;

    finish(rep, run);
    return rep;
}

VerificationReport check_thm41_with(const SimulationConfig& config, const RunResult& run,
                                    const PsiFunction& psi, const Tolerances& tol) {
    VerificationReport rep;
    start_report(rep, "thm41", config, tol);
    run_diagnostics(rep, run);
    const int d = config.d;

    if (!(psi.support_b > static_cast<double>(d))) {
        hypothesis_fail(rep, "supp psi must reach past d (b > d)");
        return rep;
    }
    const NormTimeSeries& s = run.series;
    const double gls0 = psi::gls_norm_log(profile_at(s, 0), psi);
    rep.diagnostics["gls_u0_log"] = gls0;
    if (gls0 > std::log1p(1e-6)) {
        hypothesis_fail(rep, "psi does not dominate u0 (GLS norm of u0 exceeds 1)");
        return rep;
    }

    const auto k0 = kappa0_logs(s, psi, d);
    const PsiFunction pk = psi::psi_kappa(psi, k0, d);

    for (std::size_t i = 0; i < pk.grid.size(); ++i) {
        if (!pk.included[i])
            continue;
        const double p = pk.grid[i];
        const auto j = static_cast<std::size_t>(require_series_index(s, p));
        double sup = -kInf;
        for (std::size_t k = 0; k < s.nsamples(); ++k)
            sup = std::max(sup, s.lp_log[k][j]);
        const double ratio = sup == -kInf ? 0.0 : std::exp(sup - pk.log_value[i]);
        rep.margins.push_back({"gls-kappa-bound", p, ratio, false,
                               ratio <= 1.0 + tol.upper_ratio_slack});
    }

    finish(rep, run);
    return rep;
}

VerificationReport check_thm51_with(const SimulationConfig& config, const RunResult& run,
                                    const PsiFunction& psi, MriFlavor flavor, double q,
                                    const Tolerances& tol) {
    VerificationReport rep;
    start_report(rep, "thm51", config, tol);
    run_diagnostics(rep, run);
    const int d = config.d;

    if (!(psi.support_b > static_cast<double>(d))) {
        hypothesis_fail(rep, "supp psi must reach past d (b > d)");
        return rep;
    }

    const NormTimeSeries& s = run.series;
    const auto k0 = kappa0_logs(s, psi, d);
    const NormProfile h0 = psi::h_zero(psi, k0, d);
    rep.diagnostics["flavor"] = flavor == MriFlavor::SupWeighted ? "sup-weighted" : "p-average";

    if (flavor == MriFlavor::SupWeighted) {
        // weight = psi_kappa; the bound <h_0> is then exactly 1
        const PsiFunction weight = psi::psi_kappa(psi, k0, d);
        const double rhs = psi::gls_norm_log(h0, weight); // 0 by construction
        rep.diagnostics["h0_mri_log"] = rhs;
        double sup = -kInf;
        for (std::size_t k = 0; k < s.nsamples(); ++k)
            sup = std::max(sup, psi::gls_norm_log(profile_at(s, k), weight));
        const double ratio = sup == -kInf ? 0.0 : std::exp(sup - rhs);
        rep.margins.push_back({"mri-sup-bound", 0.0, ratio, false,
                               ratio <= 1.0 + tol.upper_ratio_slack});
    } else {
        rep.diagnostics["q"] = q;
        const double rhs = psi::mri_norm_avg_log(h0, q);
        rep.diagnostics["h0_mri_log"] = rhs;
        double sup = -kInf;
        for (std::size_t k = 0; k < s.nsamples(); ++k) {
            const NormProfile prof = restrict_profile(profile_at(s, k), psi);
            sup = std::max(sup, psi::mri_norm_avg_log(prof, q));
        }
        const double ratio = sup == -kInf ? 0.0 : std::exp(sup - rhs);
        rep.margins.push_back({"mri-avg-bound", 0.0, ratio, false,
                               ratio <= 1.0 + tol.upper_ratio_slack});
    }

    finish(rep, run);
    return rep;
}

VerificationReport check_thm61_with(const SimulationConfig& config, const RunResult& run,
                                    const PsiFunction& psi, const Tolerances& tol) {
    VerificationReport rep;
    start_report(rep, "thm61", config, tol);
    run_diagnostics(rep, run);
    const int d = config.d;
    const double dd = d;

    if (!(psi.support_b > dd)) {
        hypothesis_fail(rep, "supp psi must reach past d (b > d)");
        return rep;
    }

    const NormTimeSeries& s = run.series;
    const double log_u0_d = lp_norm_log(run.u0, dd);
    const double gls0 = psi::gls_norm_log(profile_at(s, 0), psi);
    rep.diagnostics["gls_u0_log"] = gls0;

    // horizon adequacy: the sup/integral truncation is justified when the
    // l2 norm has dropped by three decades
    const double l2_drop = std::exp(s.l2_log[s.nsamples() - 1] - s.l2_log[0]);
    rep.diagnostics["l2_final_over_initial"] = l2_drop;

    nlohmann::json tails = nlohmann::json::object();
    bool theta_usable = true;
    try {
        psi.log_value_at(dd);
    } catch (const std::domain_error&) {
        theta_usable = false;
    }

    for (std::size_t i = 0; i < psi.grid.size(); ++i) {
        if (!psi.included[i])
            continue;
        const double p = psi.grid[i];
        if (!(p > dd + 1e-9) || !(p < psi.support_b))
            continue;
        const auto j = static_cast<std::size_t>(require_series_index(s, p));
        const double r = constants::r_exponent(d, p);
        const double log_int = mixed_norm_log_pow(s, p, r);
        const double l0p = s.lp_log[0][j];

        // integral bound: (B21/p) ||u0||_d^{2p/(p-d)} ||u0||_p^p
        const double log_bound = std::log(constants::constant_B21(d, p) / p) +
                                 (2.0 * p / (p - dd)) * log_u0_d + p * l0p;
        const double ratio_int = log_int == -kInf ? 0.0 : std::exp(log_int - log_bound);
        rep.margins.push_back({"integral-bound", p, ratio_int, false,
                               ratio_int <= 1.0 + tol.upper_ratio_slack});

        // exponent identities tying the theta weight to the integral bound
        const double id1 = std::abs(2.0 / (p - dd + 2.0) - (2.0 * p / (p - dd)) / r);
        const double id2 = std::abs((p - dd) / (p - dd + 2.0) - p / r);
        const double idv = std::max(id1, id2);
        rep.margins.push_back({"exponent-identity", p, idv, true, idv <= tol.exact_slack});

        if (theta_usable) {
            const double log_mixed = log_int == -kInf ? -kInf : log_int / r;
            const double lt = psi::theta_log(psi, d, p);
            const double ratio_theta = log_mixed == -kInf ? 0.0 : std::exp(log_mixed - lt);
            rep.margins.push_back({"theta-bound", p, ratio_theta, false,
                                   ratio_theta <= 1.0 + tol.upper_ratio_slack});
        }

        tails[std::to_string(p)] = tail_fraction(s, j, r, log_int);
    }
    if (!theta_usable)
        rep.diagnostics["theta_skipped"] = "d not in supp psi";
    rep.diagnostics["tail_fraction"] = tails;

    if (rep.margins.empty()) {
        hypothesis_fail(rep, "no sampled exponent lies in (d, b)");
        return rep;
    }

    finish(rep, run);
    return rep;
}

VerificationReport check_thm31(const SimulationConfig& config, const nlohmann::json& psi_spec,
                               const Tolerances& tol) {
    SimulationConfig c = config;
    c.p_grid = harness_grid(config);
    const RunResult run = solver::run(c);
    const PsiFunction psi = build_psi(psi_spec, c.p_grid, &run.u0);
    return check_thm31_with(c, run, psi, tol);
}

VerificationReport check_thm41(const SimulationConfig& config, const nlohmann::json& psi_spec,
                               const Tolerances& tol) {
    SimulationConfig c = config;
    c.p_grid = harness_grid(config);
    const RunResult run = solver::run(c);
    const PsiFunction psi = build_psi(psi_spec, c.p_grid, &run.u0);
    return check_thm41_with(c, run, psi, tol);
}

VerificationReport check_thm51(const SimulationConfig& config, const nlohmann::json& psi_spec,
                               MriFlavor flavor, double q, const Tolerances& tol) {
    SimulationConfig c = config;
    c.p_grid = harness_grid(config);
    const RunResult run = solver::run(c);
    const PsiFunction psi = build_psi(psi_spec, c.p_grid, &run.u0);
    return check_thm51_with(c, run, psi, flavor, q, tol);
}

VerificationReport check_thm61(const SimulationConfig& config, const nlohmann::json& psi_spec,
                               const Tolerances& tol) {
    SimulationConfig c = config;
    c.p_grid = harness_grid(config);
    const RunResult run = solver::run(c);
    const PsiFunction psi = build_psi(psi_spec, c.p_grid, &run.u0);
    return check_thm61_with(c, run, psi, tol);
}

VerificationReport check_inequalities(const SimulationConfig& config, const Tolerances& tol) {
    VerificationReport rep;
    start_report(rep, "inequalities", config, tol);
    const int d = config.d;
    const double dd = d;

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> logu(std::log(1e-3), std::log(1e3));

    // pointwise Young-type inequality on random (v, w)
    for (double p : config.p_grid) {
        if (!(p > dd))
            continue;
        const double A = constants::constant_A(d, p);
        double worst = 0.0;
        for (int it = 0; it < 10000; ++it) {
            const double v = std::exp(logu(rng));
            const double w = std::exp(logu(rng));
            const double lhs = v * w;
            const double rhs = A * std::pow(v, 2.0 * p / (p - dd)) +
                               0.5 * std::pow(w, 2.0 * p / (p + dd));
            worst = std::max(worst, lhs / rhs);
        }
        rep.margins.push_back({"young-vw", p, worst, false, worst <= 1.0 + tol.exact_slack});
    }

    // norm interpolation on random band-limited fields
    {
        const Grid g(d, 16, config.L);
        std::vector<double> grid = joined_grid(config.p_grid, {2.0});
        const double a = grid.front();
        const double b = grid.back();
        double worst = 0.0;
        for (int it = 0; it < 100; ++it) {
            InitialSpec ispec;
            ispec.kind = InitialSpec::Kind::RandomSolenoidal;
            ispec.seed = config.seed + 1000 + static_cast<std::uint64_t>(it);
            const VectorField f = make_initial(ispec, g);
            const double la = lp_norm(f, a);
            const double lb = lp_norm(f, b);
            for (double p : grid) {
                if (p <= a + 1e-12 || p >= b - 1e-12)
                    continue;
                const double lhs = lp_norm(f, p);
                const double rhs = psi::interpolation_Z(la, lb, a, b, p);
                worst = std::max(worst, lhs / rhs);
            }
        }
        rep.margins.push_back({"interpolation", 0.0, worst, false, worst <= 1.0 + tol.exact_slack});
    }

    // discrete-time differential inequality along one trajectory
    SimulationConfig c = config;
    c.record_w = true;
    c.p_grid = harness_grid(config);
    const RunResult run = solver::run(c);
    run_diagnostics(rep, run);
    const NormTimeSeries& s = run.series;
    const std::size_t K = s.nsamples();

    for (std::size_t j = 0; j < s.p_grid.size(); ++j) {
        const double p = s.p_grid[j];
        if (!(p > dd))
            continue;
        const double C27 = constants::constant_C27(d, p);
        const double logC77 = constants::log_constant_C77(d, p);
        const double A = constants::constant_A(d, p);
        double worst35 = 0.0, worst36 = 0.0, worst210 = 0.0;
        for (std::size_t k = 1; k + 1 < K; ++k) {
            const double lp = std::exp(s.lp_log[k][j]);
            const double W = s.w_values[k][j];
            const double phi_prev = std::pow(std::exp(s.lp_log[k - 1][j]), p) / p;
            const double phi_next = std::pow(std::exp(s.lp_log[k + 1][j]), p) / p;
            const double ddt = (phi_next - phi_prev) / (s.times[k + 1] - s.times[k - 1]);

            const double rhs35 = C27 * std::pow(lp, 1.0 + (p - dd) / 2.0) *
                                 std::pow(W, (p + dd) / (2.0 * p));
            if (rhs35 > 0.0)
                worst35 = std::max(worst35, (ddt + W) / rhs35);

            const double lhs36 = ddt + 0.5 * W;
            if (lhs36 > 0.0) {
                const double log_rhs36 =
                    logC77 + (p * (p - dd + 2.0) / (p - dd)) * s.lp_log[k][j];
                worst36 = std::max(worst36, std::exp(std::log(lhs36) - log_rhs36));
            }

            // pointwise consequence of the Young-type inequality on the
            // trajectory values
            const double lhs210 = std::pow(lp, 1.0 + (p - dd) / 2.0) *
                                  std::pow(W, (p + dd) / (2.0 * p));
            const double rhs210 = A * std::pow(lp, p * (p - dd + 2.0) / (p - dd)) + 0.5 * W;
            if (rhs210 > 0.0)
                worst210 = std::max(worst210, lhs210 / rhs210);
        }
        rep.margins.push_back({"diff-ineq-C27", p, worst35, false, worst35 <= 1.0 + tol.upper_ratio_slack});
        rep.margins.push_back({"diff-ineq-C77", p, worst36, false, worst36 <= 1.0 + tol.upper_ratio_slack});
        rep.margins.push_back({"young-trajectory", p, worst210, false, worst210 <= 1.0 + 1e-9});
    }

    finish(rep, run);
    return rep;
}

} // namespace verify

} // namespace nsgls
