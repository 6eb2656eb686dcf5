#pragma once
// Post-processing of trajectories: the spreading/vanishing dichotomy and
// front growth-rate regression. Everything here is pure arithmetic over the
// recorded series; nothing re-runs the solver.

#include <string>
#include <vector>

#include "nlfront/model.hpp"
#include "nlfront/simulator.hpp"

namespace nlfront::analysis {

enum class VerdictKind { spreading, vanishing, undecided };
std::string verdict_name(VerdictKind v);

struct Thresholds {
    double spread_width = 200.0;  // h - g above this counts as unbounded growth
    double vanish_field = 1e-8;   // sup norm below this counts as extinction
    double center_tol = 0.10;     // relative deviation of (u, v)(0) from (u*, v*)
    double stall_growth = 1e-8;   // width gain over the trailing half = "stalled"
};

struct DichotomyVerdict {
    VerdictKind kind = VerdictKind::undecided;
    double final_field_max = 0.0;     // sup norm of the final state
    double growth_last_window = 0.0;  // width gain over the trailing half
    double center_deviation = 0.0;    // relative deviation at x = 0; inf when R0 <= 1
};

// A spreading verdict needs both a wide interval and center values locked to
// the positive equilibrium; a vanishing verdict needs a tiny field on a
// stalled interval. Anything else is undecided (e.g. a horizon too short for
// either certificate).
DichotomyVerdict classify(const sim::Trajectory& traj, const model::Equilibrium& eq,
                          const Thresholds& thresholds = {});

enum class RateLaw { power, t_log_t, linear };
std::string rate_law_name(RateLaw law);

struct RateFit {
    RateLaw law = RateLaw::power;
    double coefficient = 0.0;   // prefactor of the fitted law
    double exponent = 1.0;      // power law only
    double rms_residual = 0.0;  // relative rms of (h - fit)/h over the window
    double t_lo = 0.0, t_hi = 0.0;
    bool super_linear = false;  // linear fit only: h/t kept climbing, no plateau
};

// All fits use the same relative residual sqrt(mean(((h - fit)/h)^2)) so the
// rms values of competing laws are directly comparable. Windows must be
// tail-only (t_lo >= t_hi/2) and contain at least 10 samples.
RateFit fit_power(const std::vector<double>& t, const std::vector<double>& h,
                  double t_lo, double t_hi);
RateFit fit_linear_speed(const std::vector<double>& t, const std::vector<double>& h,
                         double t_lo, double t_hi);

// h ~ c t ln t through the origin, bundled with the best pure-power fit on
// the same window so callers can discriminate the two laws by rms.
struct TlntFit {
    RateFit tlnt;
    RateFit power;
};
TlntFit fit_tlnt(const std::vector<double>& t, const std::vector<double>& h,
                 double t_lo, double t_hi);

// Trajectory conveniences fitting the right front h(t).
RateFit fit_power(const sim::Trajectory& traj, double t_lo, double t_hi);
RateFit fit_linear_speed(const sim::Trajectory& traj, double t_lo, double t_hi);
TlntFit fit_tlnt(const sim::Trajectory& traj, double t_lo, double t_hi);

// Expected growth law for a power-law tail exponent alpha in (1, 2]:
// t^{1/(alpha-1)} below 2, t ln t at 2. Heavier tails decay fast enough for a
// finite spreading speed, which is the semi-wave regime, so they are rejected.
RateFit theory_rate(double alpha);

}  // namespace nlfront::analysis
