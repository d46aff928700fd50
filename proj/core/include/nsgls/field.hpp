#ifndef NSGLS_FIELD_HPP
#define NSGLS_FIELD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Discrete stand-in for functions on R^d: uniform periodic grids carrying
// real vector fields, with the L_p machinery built on top of them.

namespace nsgls {

struct Grid {
    int d = 3;     // spatial dimension, 2 or 3
    int n = 32;    // points per axis, power of two, >= 8
    double L = 6.283185307179586476925286766559; // box edge length

    Grid() = default;
    Grid(int d_, int n_, double L_);

    std::size_t npoints() const; // n^d
    double cell_volume() const;  // (L/n)^d
    double spacing() const { return L / n; }

    bool operator==(const Grid&) const = default;
};

// d-component real field sampled on a Grid. Component arrays are flattened
// row-major: the last coordinate varies fastest.
struct VectorField {
    Grid grid;
    std::vector<std::vector<double>> comp;
    std::optional<double> time_tag;

    VectorField() = default;
    explicit VectorField(const Grid& g);

    // Pointwise Euclidean magnitude at flat index i.
    double magnitude(std::size_t i) const;
    double max_magnitude() const;
    bool all_finite() const;
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& u);

// ||u||_p by rectangle-rule quadrature of the Euclidean magnitude. Accepts
// p = infinity for the max norm. The sum is scaled by the max magnitude, so
// extremely small fields do not underflow. Throws for p < 1.
double lp_norm(const VectorField& u, double p);
// log ||u||_p; -infinity for the zero field.
double lp_norm_log(const VectorField& u, double p);
// Per-component scalar L_p norm (the component-max convention of the vector
// GLS norm is built from these).
double lp_norm_component(const VectorField& u, int k, double p);

// W_{d,p}(u) = integral |u|^{p-2} |grad u|^2 dx. grad_sq is the pointwise
// squared Frobenius norm of the gradient (see spectral::gradient_squared).
// Throws for p < 2.
double w_functional(const VectorField& u, const std::vector<double>& grad_sq, double p);

// T_lambda[u](x) = lambda u(lambda x): same samples, box L/lambda, amplitude
// scaled by lambda.
VectorField dilate(const VectorField& u, double lambda);

// Sampled trajectory of norms along a simulation.
struct NormTimeSeries {
    std::vector<double> times;
    std::vector<double> p_grid;
    std::vector<std::vector<double>> lp_log;   // lp_log[k][j] = log ||u(t_k)||_{p_j}
    std::vector<double> l2_log;                // log ||u(t_k)||_2
    std::vector<std::vector<double>> w_values; // optional, empty when not recorded

    std::size_t nsamples() const { return times.size(); }
    double lp(std::size_t k, std::size_t j) const;
    double l2(std::size_t k) const;
};

// (integral_0^T ||u(t)||_p^r dt)^{1/r} by trapezoid rule over the sampled
// times; r = 1 gives the plain time integral. p must be a sampled exponent.
double mixed_norm(const NormTimeSeries& s, double p, double r);
// log of the r-th power of the mixed norm, i.e. log integral ||u||_p^r dt,
// computed by log-sum-exp so that tiny trajectories do not underflow.
double mixed_norm_log_pow(const NormTimeSeries& s, double p, double r);

// Initial-data generators.
struct InitialSpec {
    enum class Kind { TaylorGreen2D, TaylorGreen3D, RandomSolenoidal, GaussianBump };
    Kind kind = Kind::TaylorGreen2D;
    double amplitude = 1.0;
    std::uint64_t seed = 1;       // random-solenoidal
    double band_lo = 1.0;         // random-solenoidal: |k| band
    double band_hi = 2.5;
    double width = 0.05;          // gaussian-bump: scale s in exp(-||x-c||^2/(4s))
};

// Deterministic, divergence-free (after one Leray projection where needed),
// linear in amplitude.
VectorField make_initial(const InitialSpec& spec, const Grid& grid);

// Mean field magnitude on the outermost one-cell shell of the box, relative
// to the max magnitude; used as a whole-space truncation diagnostic.
double boundary_leakage(const VectorField& u);

} // namespace nsgls

#endif
