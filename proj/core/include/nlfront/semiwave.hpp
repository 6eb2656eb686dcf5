// Semi-wave profile and speed for the finite-speed regime.
//
// On x < 0 the profile pair (phi1, phi2) with speed c solves
//
//   d1 [ int_{-inf}^0 J1(x-y) phi1(y) dy - phi1 ] + c phi1' - a11 phi1
//                                        + a12 int_{-inf}^0 K(x-y) phi2(y) dy = 0
//   d2 [ int_{-inf}^0 J2(x-y) phi2(y) dy - phi2 ] + c phi2' - a22 phi2 + G(phi1) = 0
//
// with phi(-inf) = (u*, v*), phi(0) = (0, 0), both components non-increasing,
// and the speed pinned by the flux identity
//
//   c = mu int_{-inf}^0 [ phi1(x) T1(-x) + rho_flux phi2(x) T2(-x) ] dx.
//
// A solution exists iff both J1 and J2 have a finite first moment; kernels
// with fat tails are rejected before any iteration. Numerics: truncate to
// [-L_trunc, 0] with the far field closed by phi = (u*, v*), first-order
// difference for c phi', damped Gauss-Seidel sweeps for the profiles, outer
// bisection on c against the flux identity.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nlfront/convolution.hpp"
#include "nlfront/kernels.hpp"
#include "nlfront/model.hpp"

namespace nlfront::semiwave {

struct SemiWaveConfig {
    double L_trunc = 40.0;
    std::size_t n = 1601;      // grid nodes on [-L_trunc, 0]
    double fix_tol = 1e-9;     // fixed-point and speed tolerance
    double c_lo = 1e-4, c_hi = 50.0;  // bisection bracket for the speed
    std::size_t max_iter = 20000;     // Gauss-Seidel sweep budget per profile solve

    std::vector<std::string> validate() const;
};

struct SemiWaveProfiles {
    std::vector<double> x;     // uniform grid over [-L_trunc, 0]
    std::vector<double> phi1, phi2;
};

struct SemiWaveSolution {
    double c0 = 0.0;
    SemiWaveProfiles profiles;
    double profile_residual = 0.0;  // sup norm of the discrete profile equations
    double speed_residual = 0.0;    // |c0 - flux(profiles)|
    std::size_t sweeps = 0;         // total Gauss-Seidel sweeps across the solve
    std::size_t bisections = 0;
};

class SemiWaveSolver {
public:
    // throws ValidationError if parameters are invalid, R0 <= 1 (no positive
    // equilibrium to connect to), a kernel lacks a finite first moment (the
    // infinite-speed regime), or the truncation leaves visible tail mass
    SemiWaveSolver(model::ModelParams params, model::GFunction G, kernels::Kernel J1,
                   kernels::Kernel K, kernels::Kernel J2, SemiWaveConfig config);

    // damped fixed-point solve of the profile equations at fixed c > 0;
    // throws SolverAbort with the residual history if max_iter is exhausted
    SemiWaveProfiles solve_profile(double c) const;

    // c - mu * flux(profiles); the inner exterior integrals use analytic tail
    // masses and the far field beyond -L_trunc is closed with (u*, v*)
    double speed_mismatch(double c, const SemiWaveProfiles& p) const;

    // bisection on c |-> speed_mismatch(c, solve_profile(c)); throws
    // SolverAbort if the bracket shows no sign change
    SemiWaveSolution solve_speed() const;

    double u_star() const { return u_star_; }
    double v_star() const { return v_star_; }

private:
    SemiWaveProfiles solve_profile_from(double c, SemiWaveProfiles guess,
                                        std::size_t* sweeps_out) const;
    double profile_residual(double c, const SemiWaveProfiles& p) const;

    model::ModelParams params_;
    model::GFunction G_;
    kernels::Kernel J1_, K_, J2_;
    SemiWaveConfig config_;
    double u_star_ = 0.0, v_star_ = 0.0;
    double dxw_ = 0.0;
};

}  // namespace nlfront::semiwave
