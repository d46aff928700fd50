#ifndef NSGLS_SOLVER_HPP
#define NSGLS_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nsgls/field.hpp"
#include "nsgls/spectral.hpp"

// Mild-solution integrator for the Leray-projected incompressible
// Navier-Stokes system on the periodic box, unit viscosity. The time scheme
// is a two-stage integrating-factor (exponential) method; a Picard iteration
// of the Duhamel form is provided for cross-validation at desk scale.

namespace nsgls {

struct ForcingSpec {
    InitialSpec field; // steady solenoidal force built like an initial datum
};

struct SimulationConfig {
    int d = 3;
    int n = 32;
    double L = 6.283185307179586476925286766559;
    double dt = 1e-2;
    double T = 1.0;
    InitialSpec initial;
    std::optional<ForcingSpec> forcing;
    int sample_every = 1;
    std::vector<double> p_grid;
    std::optional<int> snapshot_every;
    std::uint64_t seed = 1;
    bool record_w = false;

    static SimulationConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct RunResult {
    VectorField u0;
    VectorField u_final;
    NormTimeSeries series;
    bool aborted = false;
    std::string failure;
    int dt_halvings = 0;
    double dt_final = 0.0;
    double cfl_max = 0.0;
    double boundary_leakage_u0 = 0.0;
    double divergence_max_final = 0.0;
    double mean_max_final = 0.0;
    int snapshots_written = 0;
};

namespace solver {

// Raised by step() on blow-up; run() converts it into an aborted RunResult.
struct BlowUpError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Projected convection N(u) = -Q[div(u (x) u)], dealiased before and after
// the quadratic product. Throws std::invalid_argument for input whose
// spectral divergence exceeds tolerance.
SpectralField nonlinear_term_spectral(const SpectralField& uh);
VectorField nonlinear_term(const VectorField& u);

// One step of the integrating-factor predictor/corrector:
//   utilde = E(dt) (u + dt (N(u)+f)),  u+ = E(dt) u + dt/2 (E(dt)(N(u)+f) + N(utilde)+f).
SpectralField step_spectral(const SpectralField& uh, double dt, const SpectralField* forcing = nullptr);
VectorField step(const VectorField& u, double dt);

// Full trajectory driver. Writes snapshots into outdir when configured and
// outdir is nonempty. Deterministic given the config.
RunResult run(const SimulationConfig& config, const std::string& outdir = "");

// P = sum_{j,k} R_j R_k (u_j u_k), mean-zero scalar samples.
std::vector<double> pressure(const VectorField& u);

// Picard iteration of the Duhamel integral on [0, T] with `nodes` trapezoid
// nodes and `iters` fixed-point sweeps; returns the field at time T.
VectorField picard_mild_solution(const VectorField& u0, double T, int nodes, int iters);

} // namespace solver

} // namespace nsgls

#endif
