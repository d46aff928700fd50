// Command-line front door: constants tables, psi evaluation, norms on
// snapshots, simulations, theorem verification, parameter sweeps.
//
// Exit codes: 0 success/pass, 2 hypothesis not met, 3 numerical failure,
// 4 bad input.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nsgls/constants.hpp"
#include "nsgls/field.hpp"
#include "nsgls/psi.hpp"
#include "nsgls/snapshot.hpp"
#include "nsgls/solver.hpp"
#include "nsgls/verify.hpp"

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

constexpr int kExitPass = 0;
constexpr int kExitHypothesis = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitBadInput = 4;

std::string fmt(double v) {
    if (std::isnan(v))
        return "n/a";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int max_threads() {
    if (const char* env = std::getenv("NSGLS_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0)
            return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

std::vector<double> parse_p_values(const std::string& list, const std::string& range) {
    std::vector<double> out;
    if (!list.empty()) {
        std::stringstream ss(list);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty())
                out.push_back(std::stod(item));
    }
    if (!range.empty()) {
        double a = 0, b = 0, step = 0;
        if (std::sscanf(range.c_str(), "%lf:%lf:%lf", &a, &b, &step) != 3 || step <= 0)
            throw std::invalid_argument("p range must be start:stop:step with step > 0");
        for (double p = a; p <= b + 1e-12 * std::max(1.0, std::abs(b)); p += step)
            out.push_back(p);
    }
    if (out.empty())
        throw std::invalid_argument("no p values given (use --p or --p-range)");
    std::sort(out.begin(), out.end());
    return out;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_manifest(const std::string& outdir, const std::string& command,
                    const std::string& config_path, std::uint64_t seed, double wall_seconds) {
    if (outdir.empty())
        return;
    std::filesystem::create_directories(outdir);
    json m = {{"command", command},
              {"config", config_path},
              {"output_directory", outdir},
              {"seed", seed},
              {"tool_version", kVersion},
              {"wall_time_seconds", wall_seconds}};
    write_text(std::filesystem::path(outdir) / "manifest.json", m.dump(2) + "\n");
}

// ---------------------------------------------------------------- constants

int cmd_constants(int d, const std::string& plist, const std::string& prange,
                  const std::string& format, const std::string& outpath) {
    if (d < 3)
        throw std::invalid_argument("constants: d must be >= 3");
    const auto ps = parse_p_values(plist, prange);

    std::ostringstream csv;
    json rows = json::array();
    csv << "d,p,KS_2d3,KR,pichorides,A,B21,C27,C77,threshold\n";
    int valid_cells = 0;
    for (double p : ps) {
        const auto rec = nsgls::constants::evaluate(d, p);
        const double cells[] = {rec.KS_2d3, rec.KR,  rec.pichorides, rec.A,
                                rec.B21,    rec.C27, rec.C77,        rec.threshold};
        for (double c : cells)
            if (!std::isnan(c))
                ++valid_cells;
        csv << d << ',' << fmt(p);
        for (double c : cells)
            csv << ',' << fmt(c);
        csv << '\n';
        json row = {{"d", d}, {"p", p}};
        auto put = [&row](const char* key, double v) {
            if (std::isnan(v))
                row[key] = "n/a: domain constraint not met";
            else
                row[key] = v;
        };
        put("KS_2d3", rec.KS_2d3);
        put("KR", rec.KR);
        put("pichorides", rec.pichorides);
        put("A", rec.A);
        put("B21", rec.B21);
        put("C27", rec.C27);
        put("C77", rec.C77);
        put("threshold", rec.threshold);
        rows.push_back(row);
    }
    if (valid_cells == 0)
        throw std::invalid_argument("constants: no valid cells for the requested (d,p)");

    const std::string text = format == "json" ? rows.dump(2) + "\n" : csv.str();
    if (outpath.empty())
        std::cout << text;
    else
        write_text(outpath, text);
    return kExitPass;
}

// ---------------------------------------------------------------------- psi

int cmd_psi(const std::string& spec_path, const std::string& plist, const std::string& prange,
            const std::string& format, const std::string& outpath) {
    const json spec = load_json(spec_path);
    const auto grid = parse_p_values(plist, prange);
    const nsgls::PsiFunction f = nsgls::verify::build_psi(spec, grid, nullptr);

    std::ostringstream csv;
    csv << "p,psi\n";
    json rows = json::array();
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        const bool inc = f.included[i] != 0;
        csv << fmt(f.grid[i]) << ',' << (inc ? fmt(std::exp(f.log_value[i])) : "excluded") << '\n';
        rows.push_back({{"p", f.grid[i]},
                        {"psi", inc ? json(std::exp(f.log_value[i])) : json("excluded")}});
    }
    json out = {{"support", {f.support_a, f.support_b}},
                {"log_convexity_warning", f.log_convexity_warning},
                {"values", rows}};
    const std::string text = format == "json" ? out.dump(2) + "\n" : csv.str();
    if (outpath.empty())
        std::cout << text;
    else
        write_text(outpath, text);
    if (f.log_convexity_warning)
        std::cerr << "warning: psi is not log-convex in 1/p on this grid\n";
    return kExitPass;
}

// -------------------------------------------------------------------- norms

int cmd_norms(const std::string& snapshot_path, const std::string& plist,
              const std::string& prange, const std::string& spec_path,
              const std::string& outpath) {
    const nsgls::VectorField u = nsgls::read_snapshot(snapshot_path);
    const auto ps = parse_p_values(plist, prange);
    const int d = u.grid.d;

    json out;
    out["snapshot"] = snapshot_path;
    out["d"] = d;
    out["n"] = u.grid.n;
    out["L"] = u.grid.L;
    if (u.time_tag)
        out["t"] = *u.time_tag;
    const double l2 = nsgls::lp_norm(u, 2.0);
    out["l2"] = l2;
    json lp = json::array();
    json kap = json::array();
    for (double p : ps) {
        const double v = nsgls::lp_norm(u, p);
        lp.push_back({{"p", p}, {"lp", v}});
        if (p > std::max(2.0, static_cast<double>(d)) - 1e-12 && p > 2.0 && v > 0.0 && l2 > 0.0)
            kap.push_back({{"p", p}, {"kappa", nsgls::psi::kappa(v, l2, d, p)}});
    }
    out["lp"] = lp;
    out["kappa"] = kap;
    if (!spec_path.empty()) {
        const nsgls::PsiFunction f = nsgls::verify::build_psi(load_json(spec_path), ps, &u);
        out["gls"] = nsgls::psi::gls_norm(nsgls::psi::profile_from_field(u, ps), f);
    }
    const std::string text = out.dump(2) + "\n";
    if (outpath.empty())
        std::cout << text;
    else
        write_text(outpath, text);
    return kExitPass;
}

// ----------------------------------------------------------------- simulate

std::string norms_csv(const nsgls::NormTimeSeries& s) {
    std::ostringstream csv;
    csv << "t,p,lp,l2,W\n";
    for (std::size_t k = 0; k < s.nsamples(); ++k) {
        for (std::size_t j = 0; j < s.p_grid.size(); ++j) {
            csv << fmt(s.times[k]) << ',' << fmt(s.p_grid[j]) << ',' << fmt(s.lp(k, j)) << ','
                << fmt(s.l2(k)) << ',';
            if (!s.w_values.empty())
                csv << fmt(s.w_values[k][j]);
            csv << '\n';
        }
    }
    return csv.str();
}

int cmd_simulate(const std::string& config_path, const std::string& outdir,
                 std::optional<std::uint64_t> seed_override) {
    const auto t0 = std::chrono::steady_clock::now();
    nsgls::SimulationConfig config = nsgls::SimulationConfig::from_json(load_json(config_path));
    if (seed_override) {
        config.seed = *seed_override;
        config.initial.seed = *seed_override;
    }
    std::filesystem::create_directories(outdir);
    const nsgls::RunResult run = nsgls::solver::run(config, outdir);

    write_text(std::filesystem::path(outdir) / "norms.csv", norms_csv(run.series));
    nsgls::write_snapshot((std::filesystem::path(outdir) / "final.nsgls").string(), run.u_final);
    json summary = {{"aborted", run.aborted},
                    {"failure", run.failure},
                    {"dt_halvings", run.dt_halvings},
                    {"dt_final", run.dt_final},
                    {"cfl_max", run.cfl_max},
                    {"boundary_leakage_u0", run.boundary_leakage_u0},
                    {"divergence_max_final", run.divergence_max_final},
                    {"mean_max_final", run.mean_max_final},
                    {"snapshots_written", run.snapshots_written},
                    {"nsamples", run.series.nsamples()}};
    write_text(std::filesystem::path(outdir) / "summary.json", summary.dump(2) + "\n");
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(outdir, "simulate", config_path, config.seed, wall);
    if (run.aborted) {
        std::cerr << "simulation aborted: " << run.failure << "\n";
        return kExitNumerical;
    }
    return kExitPass;
}

// ------------------------------------------------------------------- verify

nsgls::VerificationReport run_check(const std::string& theorem,
                                    const nsgls::SimulationConfig& config, const json& psi_spec,
                                    const std::string& flavor, double q) {
    using namespace nsgls::verify;
    if (theorem == "thm31")
        return check_thm31(config, psi_spec);
    if (theorem == "thm41")
        return check_thm41(config, psi_spec);
    if (theorem == "thm51")
        return check_thm51(config, psi_spec,
                           flavor == "avg" ? MriFlavor::PAverage : MriFlavor::SupWeighted, q);
    if (theorem == "thm61")
        return check_thm61(config, psi_spec);
    if (theorem == "inequalities")
        return check_inequalities(config);
    throw std::invalid_argument("unknown theorem id '" + theorem +
                                "' (thm31, thm41, thm51, thm61, inequalities)");
}

int report_exit(const nsgls::VerificationReport& rep) {
    if (!rep.hypothesis_met)
        return kExitHypothesis;
    return rep.pass ? kExitPass : kExitNumerical;
}

int cmd_verify(const std::string& theorem, const std::string& config_path,
               const std::string& spec_path, const std::string& flavor, double q,
               const std::string& outdir) {
    const auto t0 = std::chrono::steady_clock::now();
    const nsgls::SimulationConfig config =
        nsgls::SimulationConfig::from_json(load_json(config_path));
    const json psi_spec = spec_path.empty() ? json{{"kind", "natural"}} : load_json(spec_path);

    const nsgls::VerificationReport rep = run_check(theorem, config, psi_spec, flavor, q);
    const std::string text = rep.to_json().dump(2) + "\n";
    if (!outdir.empty()) {
        std::filesystem::create_directories(outdir);
        write_text(std::filesystem::path(outdir) / ("report_" + theorem + ".json"), text);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_manifest(outdir, "verify " + theorem, config_path, config.seed, wall);
    }
    std::cout << text;
    return report_exit(rep);
}

// -------------------------------------------------------------------- sweep

int cmd_sweep(const std::string& config_path, const std::string& theorem, const std::string& axis,
              const std::string& values_list, const std::string& spec_path,
              const std::string& outdir) {
    const auto t0 = std::chrono::steady_clock::now();
    const json base = load_json(config_path);
    const json psi_spec = spec_path.empty() ? json{{"kind", "natural"}} : load_json(spec_path);
    const auto values = parse_p_values(values_list, "");

    std::vector<nsgls::VerificationReport> reports(values.size());
    std::vector<std::string> errors(values.size());

    const int workers = std::min<int>(max_threads(), static_cast<int>(values.size()));
    std::vector<std::thread> pool;
    std::mutex next_mutex;
    std::size_t next = 0;
    auto work = [&]() {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(next_mutex);
                if (next >= values.size())
                    return;
                i = next++;
            }
            try {
                json j = base;
                if (axis == "amplitude")
                    j["initial"]["amplitude"] = values[i];
                else if (axis == "n")
                    j["n"] = static_cast<int>(values[i]);
                else if (axis == "dt")
                    j["dt"] = values[i];
                else
                    throw std::invalid_argument("sweep axis must be amplitude, n or dt");
                const auto cfg = nsgls::SimulationConfig::from_json(j);
                reports[i] = run_check(theorem, cfg, psi_spec, "sup", 2.0);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    for (int w = 0; w < workers; ++w)
        pool.emplace_back(work);
    for (auto& th : pool)
        th.join();

    std::ostringstream csv;
    csv << "axis,value,theorem,pass,hypothesis_met,worst_kind,worst_p,worst_value,error\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        csv << axis << ',' << fmt(values[i]) << ',' << theorem << ',';
        if (!errors[i].empty()) {
            csv << ",,,,," << errors[i] << '\n';
            continue;
        }
        const auto& rep = reports[i];
        // worst margin: largest ratio among bound checks, else largest violation
        const nsgls::CheckMargin* worst = nullptr;
        for (const auto& m : rep.margins)
            if (!worst || m.value > worst->value)
                worst = &m;
        csv << (rep.pass ? 1 : 0) << ',' << (rep.hypothesis_met ? 1 : 0) << ',';
        if (worst)
            csv << worst->kind << ',' << fmt(worst->p) << ',' << fmt(worst->value);
        else
            csv << ",,";
        csv << ",\n";
    }
    if (!outdir.empty()) {
        std::filesystem::create_directories(outdir);
        write_text(std::filesystem::path(outdir) / "sweep.csv", csv.str());
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_manifest(outdir, "sweep " + theorem + " " + axis, config_path, 0, wall);
    }
    std::cout << csv.str();
    for (const auto& e : errors)
        if (!e.empty())
            return kExitNumerical;
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grand Lebesgue norm laboratory for periodic Navier-Stokes dynamics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // constants
    auto* c_const = app.add_subcommand("constants", "Tabulate the estimate constants over (d, p)");
    int d = 3;
    std::string plist, prange, format = "csv", outpath;
    c_const->add_option("--d", d, "spatial dimension (>= 3)");
    c_const->add_option("--p", plist, "comma-separated p values");
    c_const->add_option("--p-range", prange, "p range start:stop:step");
    c_const->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    c_const->add_option("--out", outpath, "output file (default stdout)");

    // psi
    auto* c_psi = app.add_subcommand("psi", "Evaluate a psi weight spec on a p grid");
    std::string psi_spec_path, psi_plist, psi_prange, psi_format = "csv", psi_out;
    c_psi->add_option("--spec", psi_spec_path, "psi spec JSON file")->required();
    c_psi->add_option("--p", psi_plist, "comma-separated p values");
    c_psi->add_option("--p-range", psi_prange, "p range start:stop:step");
    c_psi->add_option("--format", psi_format)->check(CLI::IsMember({"csv", "json"}));
    c_psi->add_option("--out", psi_out, "output file (default stdout)");

    // norms
    auto* c_norms = app.add_subcommand("norms", "Norms and kappa of a snapshot");
    std::string snap_path, norms_plist, norms_prange, norms_spec, norms_out;
    c_norms->add_option("--snapshot", snap_path, "NSGLS1 snapshot file")->required();
    c_norms->add_option("--p", norms_plist, "comma-separated p values");
    c_norms->add_option("--p-range", norms_prange, "p range start:stop:step");
    c_norms->add_option("--psi-spec", norms_spec, "optional psi spec JSON for the GLS norm");
    c_norms->add_option("--out", norms_out, "output file (default stdout)");

    // simulate
    auto* c_sim = app.add_subcommand("simulate", "Run the mild-solution integrator");
    std::string sim_config, sim_outdir = "out";
    std::optional<std::uint64_t> sim_seed;
    c_sim->add_option("--config", sim_config, "simulation config JSON")->required();
    c_sim->add_option("--outdir", sim_outdir, "output directory");
    std::uint64_t sim_seed_raw = 0;
    auto* sim_seed_opt = c_sim->add_option("--seed", sim_seed_raw, "override the config seed");

    // verify
    auto* c_ver = app.add_subcommand("verify", "Run a theorem verification");
    std::string ver_theorem, ver_config, ver_spec, ver_flavor = "sup", ver_outdir;
    double ver_q = 2.0;
    c_ver->add_option("--theorem", ver_theorem, "thm31|thm41|thm51|thm61|inequalities")
        ->required();
    c_ver->add_option("--config", ver_config, "simulation config JSON")->required();
    c_ver->add_option("--psi-spec", ver_spec, "psi spec JSON (default: natural function of u0)");
    c_ver->add_option("--flavor", ver_flavor, "m.r.i. flavor for thm51")
        ->check(CLI::IsMember({"sup", "avg"}));
    c_ver->add_option("--q", ver_q, "average order for the avg flavor");
    c_ver->add_option("--outdir", ver_outdir, "where to write report and manifest");

    // sweep
    auto* c_sweep = app.add_subcommand("sweep", "Vary one scalar and aggregate margins");
    std::string sw_config, sw_theorem = "thm31", sw_axis = "amplitude", sw_values, sw_spec,
                sw_outdir;
    c_sweep->add_option("--config", sw_config, "template config JSON")->required();
    c_sweep->add_option("--theorem", sw_theorem, "check to run per value");
    c_sweep->add_option("--axis", sw_axis, "amplitude|n|dt");
    c_sweep->add_option("--values", sw_values, "comma-separated axis values")->required();
    c_sweep->add_option("--psi-spec", sw_spec, "psi spec JSON");
    c_sweep->add_option("--outdir", sw_outdir, "where to write sweep.csv and manifest");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitBadInput;
    }

    try {
        if (*c_const)
            return cmd_constants(d, plist, prange, format, outpath);
        if (*c_psi)
            return cmd_psi(psi_spec_path, psi_plist, psi_prange, psi_format, psi_out);
        if (*c_norms)
            return cmd_norms(snap_path, norms_plist, norms_prange, norms_spec, norms_out);
        if (*c_sim) {
            if (*sim_seed_opt)
                sim_seed = sim_seed_raw;
            return cmd_simulate(sim_config, sim_outdir, sim_seed);
        }
        if (*c_ver)
            return cmd_verify(ver_theorem, ver_config, ver_spec, ver_flavor, ver_q, ver_outdir);
        if (*c_sweep)
            return cmd_sweep(sw_config, sw_theorem, sw_axis, sw_values, sw_spec, sw_outdir);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitBadInput;
}
