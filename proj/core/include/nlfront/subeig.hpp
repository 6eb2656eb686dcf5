// Principal sub-eigenfunction profiles and the inequality check
//
//     int_{-L}^{L} J(x - y) phi(y) dy  >=  (1 - eps) phi(x),   phi(x) = psi(x/L),
//
// for the shipped template families psi on [-1, 1]:
//
//   power       psi = (1 - |xi|)^lambda,                        lambda >= 1
//   power_kink  psi = (1 - |xi|)^{lambda-1} max(1-|xi|, 1-eta), lambda >= 2, eta in [4/5, 1]
//   capped      psi = min{1, [(1-|xi|) eta1]^{lambda-1}} psi1,  lambda >= 2, eta1 > 1
//               with psi1 = min{1, (1-|xi|) eta1} for |xi| <= eta2 and frozen at
//               min{1, (1-eta2) eta1} beyond; flat plateau psi = 1 on |xi| <= 1 - 1/eta1
//   custom      user-sampled psi on a uniform grid over [-1, 1]
//
// All profiles are even, take values in [0, 1] and are non-increasing in |xi|.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nlfront/kernels.hpp"

namespace nlfront::subeig {

enum class ProfileFamily { power, power_kink, capped, custom };

std::string family_name(ProfileFamily f);
ProfileFamily family_from_name(const std::string& name);  // throws ValidationError

struct ProfileSpec {
    ProfileFamily family = ProfileFamily::power;
    double lambda = 1.0;
    double eta = 1.0;    // power_kink
    double eta1 = 2.0;   // capped
    double eta2 = 0.9;   // capped
    std::vector<double> samples;  // custom: psi on a uniform grid over [-1, 1]
    double L = 1.0;               // half-length of the physical interval

    std::vector<std::string> validate() const;

    // Lipschitz bound M for psi: lambda for power/power_kink, lambda*eta1 for
    // capped, max sample slope for custom.
    double lipschitz_bound() const;
};

// psi evaluated on the reference interval; 0 outside [-1, 1]
double psi(const ProfileSpec& spec, double xi);

struct SampledProfile {
    std::vector<double> x;    // uniform grid over [-L, L], endpoints included
    std::vector<double> phi;  // phi(x) = psi(x / L)
    double L = 0.0;
    double dx = 0.0;
};

// throws ValidationError if the spec is invalid or grid_n < 2
SampledProfile build_profile(const ProfileSpec& spec, std::size_t grid_n = 4096);

struct SubEigReport {
    double epsilon = 0.0;
    double min_ratio = 0.0;  // min over grid points with phi > 0 of (J*phi)/phi
    bool pass = false;       // min_ratio >= 1 - epsilon
    double worst_x = 0.0;    // location of the minimum
    double max_ratio = 0.0;
    std::size_t grid_n = 0;
    std::size_t excluded = 0;  // grid points skipped because phi == 0 there
    double L = 0.0;
};

// Trapezoid quadrature for the convolution on the same grid as phi.
// Points with phi == 0 are excluded from the ratio: the inequality reads
// 0 >= 0 there because the integral is non-negative.
// throws ValidationError if grid_n < 512 or the spec is invalid
SubEigReport verify_subeigen(const kernels::Kernel& kernel, const ProfileSpec& spec,
                             double epsilon, std::size_t grid_n = 4096);

struct MinimalScaleResult {
    std::optional<double> L;  // first grid entry that passes; empty if none do
    std::vector<SubEigReport> attempts;
};

// L_grid must be strictly increasing; spec.L is overridden by each candidate
MinimalScaleResult minimal_scale(const kernels::Kernel& kernel, const ProfileSpec& spec,
                                 double epsilon, const std::vector<double>& L_grid,
                                 std::size_t grid_n = 4096);

// Second differences of psi on [xi_lo, xi_hi] stay >= -1e-12 (convexity up to
// roundoff). Only points interior to the region enter, so a profile may be
// checked on its convex tail even when it has a concave junction just outside.
bool check_convexity(const ProfileSpec& spec, double xi_lo, double xi_hi,
                     std::size_t samples_n = 513);

}  // namespace nlfront::subeig
