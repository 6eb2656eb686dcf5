// Explicit time-stepping for the two-species free-boundary system
//
//     u_t = d1 (J1*u - u) - a11 u + a12 (K*v)      on (g(t), h(t))
//     v_t = d2 (J2*v - v) - a22 v + G(u)
//     u = v = 0 at x = g(t), h(t)
//     h'(t) =  mu int_g^h [ u(x) T1(h - x) + rho_flux v(x) T2(h - x) ] dx
//     g'(t) = -mu int_g^h [ u(x) T1(x - g) + rho_flux v(x) T2(x - g) ] dx
//
// where T_i(a) is the analytic one-sided tail mass of the kernel — the inner
// integral over the exterior is never truncated numerically, which is what
// preserves the fat-tail acceleration this code exists to measure.
//
// Scheme: forward Euler in time (the nonlocal operator is bounded, so
// dt (d_i + a_ii) < 1 is the positivity bound), grid nodes at integer
// multiples of dx, boundaries kept as exact reals; the partial cell between
// the outermost node and the boundary is integrated with the field linearly
// interpolated to its Dirichlet zero. When a boundary crosses the next
// multiple of dx a node is appended with value 0. No randomness anywhere:
// identical inputs replay bit-identically.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nlfront/convolution.hpp"
#include "nlfront/kernels.hpp"
#include "nlfront/model.hpp"

namespace nlfront::sim {

struct SimConfig {
    double dx = 0.25;
    double dt = 0.02;
    double T = 2000.0;
    std::size_t snapshot_every = 0;  // steps between snapshots; 0 = none
    double vanish_threshold = 1e-8;
    double spread_threshold = 200.0;  // interval length marking confirmed spreading
    // Optional early exit once spreading is certified: interval longer than
    // spread_threshold and center values within spread_center_tol of the
    // equilibrium. Off by default so horizons mean what they say.
    bool stop_on_spread = false;
    double spread_center_tol = 0.04;
    conv::Backend backend = conv::Backend::automatic;

    std::vector<std::string> validate(const model::ModelParams& p) const;
};

// Initial data on [-h0, h0]. Default: parabolic bumps A (1 - (x/h0)^2) and
// B (1 - (x/h0)^2). Custom profiles must vanish at +-h0, keep u0 > 0 on the
// open interval and v0 >= 0.
struct InitProfile {
    double A = 1.0;
    double B = 1.0;
    std::function<double(double)> u0;  // overrides A when set
    std::function<double(double)> v0;  // overrides B when set
};

struct FieldState {
    double t = 0.0;
    double g = 0.0, h = 0.0;  // exact boundary positions, not grid-snapped
    double dx = 0.0;
    std::int64_t i_left = 0;    // node k sits at (i_left + k) * dx
    std::vector<double> u, v;   // values on the nodes inside [g, h]

    std::size_t n() const { return u.size(); }
    double x(std::size_t k) const {
        return static_cast<double>(i_left + static_cast<std::int64_t>(k)) * dx;
    }
};

struct Snapshot {
    double t = 0.0;
    std::vector<double> x, u, v;
};

enum class StopReason { horizon, vanished, spread };
std::string stop_reason_name(StopReason r);

struct Trajectory {
    std::vector<double> times, g_series, h_series;
    std::vector<double> u_center, v_center;  // field values at x = 0
    std::vector<Snapshot> snapshots;
    FieldState final_state;
    StopReason stop = StopReason::horizon;
    std::size_t steps = 0;
    std::string verdict;  // filled by the analysis module
};

// Trapezoid weights for int_g^h ... dx on the state's nodes: dx in the
// interior, (dx + gap)/2 at the outermost nodes where gap is the distance to
// the exact boundary (the linear-to-zero partial cell).
std::vector<double> quadrature_weights(const FieldState& s);

// int_g^h J(x_i - y) w(y) dy at every node, w linearly interpolated to 0 at
// the boundaries. Convenience entry point for tests; the stepping loop reuses
// persistent convolvers instead.
std::vector<double> convolve(const kernels::Kernel& J, const std::vector<double>& w,
                             const FieldState& s,
                             conv::Backend backend = conv::Backend::automatic);

class Simulator {
public:
    // throws ValidationError listing every violated precondition
    Simulator(model::ModelParams params, model::GFunction G, kernels::Kernel J1,
              kernels::Kernel K, kernels::Kernel J2, SimConfig config);

    // grid over [-h0, h0] with boundary nodes pinned exactly; h0 must be an
    // integer multiple of dx so that nodes stay on the common lattice
    FieldState initialize(const InitProfile& init) const;

    // (g', h') from the flux law, evaluated on the given state
    std::pair<double, double> boundary_flux(const FieldState& s) const;

    // one forward-Euler step: fields updated at interior nodes, then
    // boundaries advanced with the pre-update flux, then new nodes appended
    void step(FieldState& s);

    // iterate until t >= T, the fields vanish with a stalled interval, or
    // (opt-in) spreading is certified
    Trajectory run(const InitProfile& init);

    const model::ModelParams& params() const { return params_; }
    const SimConfig& config() const { return config_; }

private:
    model::ModelParams params_;
    model::GFunction G_;
    kernels::Kernel J1_, K_, J2_;
    SimConfig config_;
    mutable conv::GridConvolver conv1_, convK_, conv2_;
    double u_star_ = 0.0, v_star_ = 0.0;  // 0 when R0 <= 1
    // scratch buffers reused across steps
    std::vector<double> wu_, wv_, cu_, ck_, cv_;
};

}  // namespace nlfront::sim
