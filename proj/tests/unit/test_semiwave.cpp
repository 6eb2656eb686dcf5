#include <cmath>
#include <string>

#include "doctest.h"
#include "nlfront/errors.hpp"
#include "nlfront/kernels.hpp"
#include "nlfront/model.hpp"
#include "nlfront/semiwave.hpp"

using namespace nlfront;
using kernels::KernelSpec;

namespace {
kernels::Kernel tri() { return kernels::normalize(KernelSpec::triangle(1.0)); }

semiwave::SemiWaveConfig small_config() {
    semiwave::SemiWaveConfig c;
    c.L_trunc = 30.0;
    c.n = 1201;
    return c;
}
}  // namespace

TEST_CASE("fat-tailed kernels are rejected before any iteration") {
    const auto fat = kernels::normalize(KernelSpec::power(1.5));
    model::ModelParams params;
    try {
        semiwave::SemiWaveSolver solver(params, model::GFunction::monod(2.0), fat, tri(), tri(),
                                        small_config());
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("rate-fitting") != std::string::npos);
    }
}

TEST_CASE("no semi-wave below the epidemic threshold") {
    model::ModelParams params;
    CHECK_THROWS_AS(semiwave::SemiWaveSolver(params, model::GFunction::monod(0.8), tri(), tri(),
                                             tri(), small_config()),
                    ValidationError);
}

TEST_CASE("semi-wave for compact dispersal: speed and profile certificates") {
    model::ModelParams params;
    const auto G = model::GFunction::monod(2.0);
    semiwave::SemiWaveSolver solver(params, G, tri(), tri(), tri(), small_config());
    const auto sol = solver.solve_speed();

    CHECK(sol.c0 > 0.0);
    CHECK(sol.c0 < 10.0);  // sanity: unit coefficients give an O(1) speed
    CHECK(sol.speed_residual < 1e-6);
    // the profile residual is a forward-difference diagnostic, first order in
    // the grid spacing, so it is small but not at solver tolerance
    CHECK(sol.profile_residual < 0.05);
    CHECK(sol.bisections > 0);
    CHECK(sol.sweeps > 0);

    const auto& p = sol.profiles;
    REQUIRE(p.x.size() == p.phi1.size());
    REQUIRE(p.x.size() == p.phi2.size());
    CHECK(p.x.front() == doctest::Approx(-30.0));
    CHECK(p.x.back() == doctest::Approx(0.0));

    // boundary and far-field values: (u*, v*) = (1, 1) behind, 0 at the front
    CHECK(p.phi1.back() == doctest::Approx(0.0));
    CHECK(p.phi2.back() == doctest::Approx(0.0));
    CHECK(p.phi1.front() == doctest::Approx(1.0).epsilon(0.01));
    CHECK(p.phi2.front() == doctest::Approx(1.0).epsilon(0.01));

    // both components decrease toward the front
    for (std::size_t k = 1; k < p.x.size(); ++k) {
        CHECK(p.phi1[k] <= p.phi1[k - 1] + 1e-12);
        CHECK(p.phi2[k] <= p.phi2[k - 1] + 1e-12);
    }
    // and stay inside [0, u*] x [0, v*]
    for (std::size_t k = 0; k < p.x.size(); ++k) {
        CHECK(p.phi1[k] >= 0.0);
        CHECK(p.phi1[k] <= 1.0 + 1e-9);
        CHECK(p.phi2[k] >= 0.0);
        CHECK(p.phi2[k] <= 1.0 + 1e-9);
    }
}

TEST_CASE("speed mismatch changes sign across the solved speed") {
    model::ModelParams params;
    const auto G = model::GFunction::monod(2.0);
    semiwave::SemiWaveSolver solver(params, G, tri(), tri(), tri(), small_config());
    const auto sol = solver.solve_speed();
    const double lo = 0.5 * sol.c0, hi = 2.0 * sol.c0;
    const double mlo = solver.speed_mismatch(lo, solver.solve_profile(lo));
    const double mhi = solver.speed_mismatch(hi, solver.solve_profile(hi));
    CHECK(mlo < 0.0);  // slow frame: the flux integral outruns c
    CHECK(mhi > 0.0);
}

TEST_CASE("semi-wave solves are deterministic") {
    model::ModelParams params;
    const auto G = model::GFunction::monod(2.0);
    semiwave::SemiWaveSolver a(params, G, tri(), tri(), tri(), small_config());
    semiwave::SemiWaveSolver b(params, G, tri(), tri(), tri(), small_config());
    const auto sa = a.solve_speed();
    const auto sb = b.solve_speed();
    CHECK(sa.c0 == sb.c0);  // bitwise: same inputs, same arithmetic
    REQUIRE(sa.profiles.phi1.size() == sb.profiles.phi1.size());
    for (std::size_t k = 0; k < sa.profiles.phi1.size(); ++k)
        CHECK(sa.profiles.phi1[k] == sb.profiles.phi1[k]);
}

TEST_CASE("semi-wave configuration is validated") {
    semiwave::SemiWaveConfig c;
    c.n = 3;           // far too coarse
    c.c_lo = 2.0;      // inverted bracket
    c.c_hi = 1.0;
    CHECK(c.validate().size() >= 2);
    model::ModelParams params;
    CHECK_THROWS_AS(semiwave::SemiWaveSolver(params, model::GFunction::monod(2.0), tri(), tri(),
                                             tri(), c),
                    ValidationError);
}
