#ifndef NSGLS_VERIFY_HPP
#define NSGLS_VERIFY_HPP

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nsgls/psi.hpp"
#include "nsgls/solver.hpp"

// Theorem-by-theorem verification harness: turns simulations plus constants
// into pass/fail reports with numerical margins. Upper-bound checks pass at
// ratio <= 1 + upper_ratio_slack; monotonicity passes when per-step
// violations stay below mono_rel_slack * ||u0||_p.

namespace nsgls {

struct CheckMargin {
    std::string kind;
    double p = 0.0;
    double value = 0.0; // ratio for upper-bound checks, violation otherwise
    bool is_violation = false;
    bool ok = true;
};

struct VerificationReport {
    std::string theorem;
    bool pass = false;
    bool hypothesis_met = true;
    std::string note;
    std::vector<CheckMargin> margins;
    nlohmann::json to_json() const; // includes tolerances, diagnostics, config
    nlohmann::json tolerances;
    nlohmann::json diagnostics;
    nlohmann::json config_echo;
};

struct Tolerances {
    double upper_ratio_slack = 0.05; // bound checks: ratio <= 1 + this
    double mono_rel_slack = 1e-8;    // monotonicity: per-step violation budget
    double sup_at_zero_slack = 0.01; // sup_t attained at t = 0 within this
    double exact_slack = 1e-12;      // algebraic identities
    nlohmann::json to_json() const;
};

namespace verify {

// p grid used by the harness: config p grid joined with {2, d}, sorted.
std::vector<double> harness_grid(const SimulationConfig& config);

// Build a psi function from its JSON spec on the given grid. Kinds:
//   {"kind":"degenerate","r":r}
//   {"kind":"natural","fields":[snapshot paths]}  (or "u0" entries, resolved
//    against the run's initial datum)
//   {"kind":"interpolation","y2":..,"yb":..,"b":..}
//   {"kind":"table","grid":[..],"values":[..]}
// plus an optional "support":[a,b] override.
PsiFunction build_psi(const nlohmann::json& spec, const std::vector<double>& grid,
                      const VectorField* u0);

// Small-data monotone decay and sup-at-zero equality.
VerificationReport check_thm31(const SimulationConfig& config, const nlohmann::json& psi_spec,
                               const Tolerances& tol = {});
VerificationReport check_thm31_with(const SimulationConfig& config, const RunResult& run,
                                    const PsiFunction& psi, const Tolerances& tol = {});

// Global GLS bound with the kappa-corrected weight.
VerificationReport check_thm41(const SimulationConfig& config, const nlohmann::json& psi_spec,
                               const Tolerances& tol = {});
VerificationReport check_thm41_with(const SimulationConfig& config, const RunResult& run,
                                    const PsiFunction& psi, const Tolerances& tol = {});

// m.r.i. norm bound via h_0, both flavors.
enum class MriFlavor { SupWeighted, PAverage };
VerificationReport check_thm51(const SimulationConfig& config, const nlohmann::json& psi_spec,
                               MriFlavor flavor, double q = 2.0, const Tolerances& tol = {});
VerificationReport check_thm51_with(const SimulationConfig& config, const RunResult& run,
                                    const PsiFunction& psi, MriFlavor flavor, double q = 2.0,
                                    const Tolerances& tol = {});

// Mixed-norm integral bound and theta weight.
VerificationReport check_thm61(const SimulationConfig& config, const nlohmann::json& psi_spec,
                               const Tolerances& tol = {});
VerificationReport check_thm61_with(const SimulationConfig& config, const RunResult& run,
                                    const PsiFunction& psi, const Tolerances& tol = {});

// Pointwise inequalities: Young-type (v,w) sampling, norm interpolation on
// random fields, and the discrete-time differential inequality along a
// moderate-amplitude trajectory.
VerificationReport check_inequalities(const SimulationConfig& config, const Tolerances& tol = {});

} // namespace verify

} // namespace nsgls

#endif
