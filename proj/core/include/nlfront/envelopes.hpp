// Explicit lower/upper solutions for the spreading regime and numerical
// certification of the inequalities that make them sub/super solutions.
//
// Lower envelopes (fat-tail regime, front h_(t), fields vanishing at the
// front): for tails with exponent alpha in (1,2),
//
//     h_(t) = (C1 t + sigma)^{1/(alpha-1)},   R = (h_ - |x|)/h_,
//     psi(t) = h_ / (C2 h_^{1-alpha} + 1),
//     Psi(x,t) = max(R, 1 - psi/h_),
//
// and the pair (u_, v_) is delta1 R^lambda, delta2 Psi R^{lambda-1} when the
// second kernel dominates, with the kinked factor moved onto u_ when the
// first kernel dominates. At the critical exponent alpha = 2,
//
//     h_(t) = C1 (t+sigma) ln(t+sigma),  Q = (h_ - |x|)/(t+sigma)^beta,
//     psi(t) = (h_ - C3 ln(t+sigma)) / (C2/(t+sigma) + 1),
//
// with capped profiles delta1 min{1, Q^lambda} and delta2 min{1, Psi Q^{lambda-1}}.
// (delta1, delta2) come from the linearized eigenpair below the equilibrium.
//
// Upper envelopes are flat: (M u*, M v*) behind h-(t) = (C t + sigma)^{1/(alpha-1)}
// (or (C t + sigma) ln(C t + sigma) at alpha = 2).
//
// residual_check certifies, on a log-in-time sample grid, the boundary-flux
// inequality and the two field inequalities, with convolutions integrated by
// panelwise Gauss-Legendre split at every profile kink and at the kernel
// cusp. search_constants makes the existence proofs constructive: it scans a
// coarse grid over the free constants and returns the first certified spec.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nlfront/kernels.hpp"
#include "nlfront/model.hpp"
#include "nlfront/simulator.hpp"

namespace nlfront::envelopes {

enum class EnvelopeCase {
    lower_J2dom_alpha_in_1_2,
    lower_J2dom_alpha_2,
    upper_power,
    upper_tlnt,
    lower_J1dom_alpha_in_1_2,
    lower_J1dom_alpha_2,
};

std::string case_name(EnvelopeCase c);
EnvelopeCase case_from_name(const std::string& name);  // throws ValidationError
bool is_lower(EnvelopeCase c);

struct EnvelopeSpec {
    EnvelopeCase kind = EnvelopeCase::upper_power;
    double alpha = 1.5;  // tail exponent the front formulas target
    double C1 = 1.0;     // front-speed constant (C in the upper cases)
    double C2 = 1.0;     // plateau-width constant (lower cases)
    double C3 = 1.0;     // alpha = 2 lower cases only
    double sigma = 1.0;  // time shift fixing the initial front position
    double lambda = 2.0;
    double beta = 0.4;   // alpha = 2 lower cases: beta in (0, 1/2), lambda > 1/beta
    double M = 2.0;      // upper cases: M > 1
    model::LinearizedEigenpair eigen;  // delta1/delta2 feed the lower profiles

    std::vector<std::string> validate() const;
};

struct LowerValues {
    double u = 0.0, v = 0.0;
    double g = 0.0, h = 0.0;
};
struct UpperValues {
    double u = 0.0, v = 0.0;
    double g = 0.0, h = 0.0;
};

double front_position(const EnvelopeSpec& spec, double t);
double front_speed(const EnvelopeSpec& spec, double t);  // analytic d/dt

// |x| values (radii) where the profiles or their time derivatives have kinks
// at time t: the Psi switch, the min-caps, and the front itself
std::vector<double> kink_radii(const EnvelopeSpec& spec, double t);

// throws ValidationError when |x| > h_(t) or the spec is not a lower case
LowerValues eval_lower(const EnvelopeSpec& spec, double x, double t);
// throws ValidationError when the spec is not an upper case
UpperValues eval_upper(const EnvelopeSpec& spec, double t);

// analytic time derivatives of the lower profiles; x must not sit on a kink
struct LowerRates {
    double ut = 0.0, vt = 0.0;
};
LowerRates lower_time_derivative(const EnvelopeSpec& spec, double x, double t);

struct SampleGrid {
    double T_check = 200.0;
    std::size_t nt = 64;   // log-spaced times (plus t = 0)
    std::size_t nx = 128;  // radii per time
};

struct ResidualReport {
    // signed minima over the sample set; a sub/super solution needs them >= 0
    // up to the -1e-9 quadrature allowance
    double boundary_residual = 0.0;  // lower: flux - h_' ; upper: h-' - flux
    double pde_residual_u = 0.0;     // lower: RHS - u_t ; upper: u_t - RHS
    double pde_residual_v = 0.0;
    bool pass = false;
    std::size_t samples = 0;
    std::size_t skipped = 0;  // sample points dropped for sitting on a kink
};

ResidualReport residual_check(const EnvelopeSpec& spec, const model::ModelParams& params,
                              const model::GFunction& G, const kernels::Kernel& J1,
                              const kernels::Kernel& K, const kernels::Kernel& J2,
                              const SampleGrid& grid = {});

struct SearchOptions {
    SampleGrid grid;
    double alpha = 1.5;   // kernel tail exponent of the power-front cases
    double h0 = 20.0;     // the upper front must start at or above this
    double M = 2.0;       // upper-case field level
    double lambda = 2.0;  // lower-case profile exponent
    double beta = 0.4;    // alpha = 2 lower cases
};

struct SearchResult {
    std::optional<EnvelopeSpec> spec;  // first candidate whose residuals pass
    EnvelopeSpec best_candidate;       // least-violated candidate seen
    ResidualReport best_report;
    std::size_t tried = 0;
};

SearchResult search_constants(EnvelopeCase kind, const model::ModelParams& params,
                              const model::GFunction& G, const kernels::Kernel& J1,
                              const kernels::Kernel& K, const kernels::Kernel& J2,
                              const SearchOptions& options = {});

struct CompareReport {
    bool ok = false;
    double t0 = 0.0;          // anchoring shift for the lower envelope
    std::size_t checked = 0;  // trajectory samples inside the window
    double min_margin_lower = 0.0;  // min over the window of h(t) - h_(t - t0)
    double min_margin_upper = 0.0;  // min over the window of h-(t) - h(t)
    std::string note;
};

// Sandwiches h_(t - t0) <= h(t) <= h-(t) on [t_lo, t_hi]. The lower envelope
// is anchored at the first snapshot whose fields dominate the lower initial
// data; the upper bound needs M u* >= ||u0||, M v* >= ||v0|| and h-(0) >= h0,
// which is checked against the first snapshot. Either side may be omitted.
CompareReport envelope_compare(const sim::Trajectory& traj,
                               const std::optional<EnvelopeSpec>& lower,
                               const std::optional<EnvelopeSpec>& upper, double t_lo,
                               double t_hi);

}  // namespace nlfront::envelopes
