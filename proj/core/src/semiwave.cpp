#include "nlfront/semiwave.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlfront/errors.hpp"

namespace nlfront::semiwave {

std::vector<std::string> SemiWaveConfig::validate() const {
    std::vector<std::string> issues;
    if (!(L_trunc > 0.0) || !std::isfinite(L_trunc))
        issues.push_back("semiwave.L_trunc: must be positive and finite");
    if (n < 16) issues.push_back("semiwave.n: need at least 16 grid nodes");
    if (!(fix_tol > 0.0)) issues.push_back("semiwave.fix_tol: must be positive");
    if (!(c_lo > 0.0 && c_lo < c_hi))
        issues.push_back("semiwave.c_bracket: need 0 < c_lo < c_hi");
    if (max_iter < 100) issues.push_back("semiwave.max_iter: need at least 100 sweeps");
    return issues;
}

SemiWaveSolver::SemiWaveSolver(model::ModelParams params, model::GFunction G,
                               kernels::Kernel J1, kernels::Kernel K, kernels::Kernel J2,
                               SemiWaveConfig config)
    : params_(params),
      G_(std::move(G)),
      J1_(std::move(J1)),
      K_(std::move(K)),
      J2_(std::move(J2)),
      config_(config) {
    std::vector<std::string> issues = params_.validate();
    for (const std::string& m : config_.validate()) issues.push_back(m);

    // finite spreading speed exists iff both dispersal kernels have a finite
    // first moment; fat-tailed kernels belong to the accelerated regime
    if (!std::isfinite(J1_.first_moment()))
        issues.push_back(
            "kernels.J1: infinite first moment — no finite-speed semi-wave exists for "
            "fat-tailed dispersal; use the rate-fitting pipeline instead");
    if (!std::isfinite(J2_.first_moment()))
        issues.push_back(
            "kernels.J2: infinite first moment — no finite-speed semi-wave exists for "
            "fat-tailed dispersal; use the rate-fitting pipeline instead");

    if (issues.empty()) {
        const model::Equilibrium eq = model::positive_equilibrium(params_, G_);
        if (!eq.u_star) {
            issues.push_back("semiwave: R0 <= 1 leaves no positive equilibrium to connect to");
        } else {
            u_star_ = *eq.u_star;
            v_star_ = *eq.v_star;
        }
        const double t1 = J1_.tail_mass(0.5 * config_.L_trunc);
        const double t2 = J2_.tail_mass(0.5 * config_.L_trunc);
        if (!(t1 < 1e-6 && t2 < 1e-6)) {
            std::ostringstream msg;
            msg << "semiwave.L_trunc: truncation leaves visible kernel tail mass "
                << "(tail at L/2: J1 " << t1 << ", J2 " << t2 << "); increase L_trunc";
            issues.push_back(msg.str());
        }
    }
    if (!issues.empty()) throw ValidationError(issues);
    dxw_ = config_.L_trunc / static_cast<double>(config_.n - 1);
}

SemiWaveProfiles SemiWaveSolver::solve_profile(double c) const {
    if (!(c > 0.0) || !std::isfinite(c))
        throw ValidationError("semiwave: profile speed c must be positive and finite");
    const std::size_t n = config_.n;
    SemiWaveProfiles guess;
    guess.x.resize(n);
    guess.phi1.resize(n);
    guess.phi2.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = -config_.L_trunc + static_cast<double>(j) * dxw_;
        guess.x[j] = j + 1 == n ? 0.0 : x;
        const double ramp = -guess.x[j] / config_.L_trunc;
        guess.phi1[j] = u_star_ * ramp;
        guess.phi2[j] = v_star_ * ramp;
    }
    guess.phi1.front() = u_star_;
    guess.phi2.front() = v_star_;
    guess.phi1.back() = 0.0;
    guess.phi2.back() = 0.0;
    return solve_profile_from(c, std::move(guess), nullptr);
}

SemiWaveProfiles SemiWaveSolver::solve_profile_from(double c, SemiWaveProfiles p,
                                                    std::size_t* sweeps_out) const {
    const std::size_t n = config_.n;
    const double d1 = params_.d1, d2 = params_.d2;
    const double a11 = params_.a11, a12 = params_.a12, a22 = params_.a22;

    conv::GridConvolver conv1(J1_, dxw_), convK(K_, dxw_), conv2(J2_, dxw_);
    std::vector<double> F1(n), FK(n), F2(n);  // far-field closure phi = (u*, v*)
    for (std::size_t j = 0; j < n; ++j) {
        const double d = p.x[j] + config_.L_trunc;
        F1[j] = u_star_ * J1_.tail_mass(d);
        FK[j] = v_star_ * K_.tail_mass(d);
        F2[j] = v_star_ * J2_.tail_mass(d);
    }

    std::vector<double> w1(n), w2(n), I1, IK, I2;
    const double cd = c / dxw_;
    const double den1 = d1 + a11 + cd, den2 = d2 + a22 + cd;
    std::vector<double> history;
    for (std::size_t sweep = 1; sweep <= config_.max_iter; ++sweep) {
        for (std::size_t j = 0; j < n; ++j) {
            const double w = (j == 0 || j + 1 == n) ? 0.5 * dxw_ : dxw_;
            w1[j] = w * p.phi1[j];
            w2[j] = w * p.phi2[j];
        }
        conv1.apply(w1, I1);
        convK.apply(w2, IK);
        conv2.apply(w2, I2);

        double diff = 0.0;
        for (std::size_t j = n - 1; j-- > 1;) {  // fresh phi_{j+1} feeds node j
            const double S1 = d1 * (I1[j] + F1[j]) + a12 * (IK[j] + FK[j]);
            const double cand1 = (S1 + cd * p.phi1[j + 1]) / den1;
            const double new1 = 0.5 * (p.phi1[j] + cand1);
            diff = std::max(diff, std::fabs(new1 - p.phi1[j]));
            p.phi1[j] = new1;

            const double S2 = d2 * (I2[j] + F2[j]) + G_(p.phi1[j]);
            const double cand2 = (S2 + cd * p.phi2[j + 1]) / den2;
            const double new2 = 0.5 * (p.phi2[j] + cand2);
            diff = std::max(diff, std::fabs(new2 - p.phi2[j]));
            p.phi2[j] = new2;
        }
        if (history.size() >= 8) history.erase(history.begin());
        history.push_back(diff);
        if (diff < config_.fix_tol) {
            if (sweeps_out) *sweeps_out += sweep;
            return p;
        }
    }
    std::ostringstream msg;
    msg << "semiwave: profile fixed point did not converge in " << config_.max_iter
        << " sweeps at c = " << c << "; recent sup-norm updates:";
    for (double d : history) msg << ' ' << d;
    throw SolverAbort(msg.str());
}

double SemiWaveSolver::profile_residual(double c, const SemiWaveProfiles& p) const {
    const std::size_t n = config_.n;
    conv::GridConvolver conv1(J1_, dxw_), convK(K_, dxw_), conv2(J2_, dxw_);
    std::vector<double> w1(n), w2(n), I1, IK, I2;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = (j == 0 || j + 1 == n) ? 0.5 * dxw_ : dxw_;
        w1[j] = w * p.phi1[j];
        w2[j] = w * p.phi2[j];
    }
    conv1.apply(w1, I1);
    convK.apply(w2, IK);
    conv2.apply(w2, I2);
    double sup = 0.0;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double d = p.x[j] + config_.L_trunc;
        const double e1 = params_.d1 * (I1[j] + u_star_ * J1_.tail_mass(d) - p.phi1[j]) +
                          c * (p.phi1[j + 1] - p.phi1[j]) / dxw_ - params_.a11 * p.phi1[j] +
                          params_.a12 * (IK[j] + v_star_ * K_.tail_mass(d));
        const double e2 = params_.d2 * (I2[j] + v_star_ * J2_.tail_mass(d) - p.phi2[j]) +
                          c * (p.phi2[j + 1] - p.phi2[j]) / dxw_ - params_.a22 * p.phi2[j] +
                          G_(p.phi1[j]);
        sup = std::max(sup, std::max(std::fabs(e1), std::fabs(e2)));
    }
    return sup;
}

double SemiWaveSolver::speed_mismatch(double c, const SemiWaveProfiles& p) const {
    const std::size_t n = p.x.size();
    double flux = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = (j == 0 || j + 1 == n) ? 0.5 * dxw_ : dxw_;
        flux += w * (p.phi1[j] * J1_.tail_mass(-p.x[j]) +
                     params_.rho_flux * p.phi2[j] * J2_.tail_mass(-p.x[j]));
    }
    flux += u_star_ * J1_.tail_integral(config_.L_trunc) +
            params_.rho_flux * v_star_ * J2_.tail_integral(config_.L_trunc);
    return c - params_.mu * flux;
}

SemiWaveSolution SemiWaveSolver::solve_speed() const {
    SemiWaveSolution sol;
    double lo = config_.c_lo, hi = config_.c_hi;

    SemiWaveProfiles p = solve_profile(lo);
    double f_lo = speed_mismatch(lo, p);
    SemiWaveProfiles p_hi = solve_profile_from(hi, p, &sol.sweeps);
    double f_hi = speed_mismatch(hi, p_hi);
    if (f_lo > 0.0 || f_hi < 0.0) {
        std::ostringstream msg;
        msg << "semiwave: no sign change of the speed mismatch on the bracket ["
            << lo << ", " << hi << "] (F(lo) = " << f_lo << ", F(hi) = " << f_hi
            << "); widen c_bracket";
        throw SolverAbort(msg.str());
    }

    double c_best = lo, f_best = f_lo;
    SemiWaveProfiles best = std::move(p);
    for (std::size_t it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        SemiWaveProfiles pm = solve_profile_from(mid, best, &sol.sweeps);
        const double fm = speed_mismatch(mid, pm);
        ++sol.bisections;
        if (std::fabs(fm) <= std::fabs(f_best)) {
            c_best = mid;
            f_best = fm;
            best = pm;
        }
        if (fm < 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < config_.fix_tol && std::fabs(f_best) < config_.fix_tol) break;
        if (hi - lo < 1e-15 * std::max(1.0, hi)) break;  // bracket exhausted
    }
    sol.c0 = c_best;
    sol.profiles = std::move(best);
    sol.speed_residual = std::fabs(f_best);
    sol.profile_residual = profile_residual(c_best, sol.profiles);
    return sol;
}

}  // namespace nlfront::semiwave
