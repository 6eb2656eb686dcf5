#include "nlfront/subeig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlfront/convolution.hpp"
#include "nlfront/errors.hpp"

namespace nlfront::subeig {

std::string family_name(ProfileFamily f) {
    switch (f) {
        case ProfileFamily::power: return "power";
        case ProfileFamily::power_kink: return "power_kink";
        case ProfileFamily::capped: return "capped";
        case ProfileFamily::custom: return "custom";
    }
    return "power";
}

ProfileFamily family_from_name(const std::string& name) {
    if (name == "power") return ProfileFamily::power;
    if (name == "power_kink") return ProfileFamily::power_kink;
    if (name == "capped") return ProfileFamily::capped;
    if (name == "custom") return ProfileFamily::custom;
    throw ValidationError("profile.family: unknown family '" + name +
                          "' (expected power, power_kink, capped or custom)");
}

std::vector<std::string> ProfileSpec::validate() const {
    std::vector<std::string> issues;
    if (!(L > 0.0) || !std::isfinite(L)) issues.push_back("profile.L: must be positive and finite");
    switch (family) {
        case ProfileFamily::power:
            if (!(lambda >= 1.0) || !std::isfinite(lambda))
                issues.push_back("profile.lambda: power family needs lambda >= 1");
            break;
        case ProfileFamily::power_kink:
            if (!(lambda >= 2.0) || !std::isfinite(lambda))
                issues.push_back("profile.lambda: power_kink family needs lambda >= 2");
            if (!(eta >= 0.8 && eta <= 1.0))
                issues.push_back("profile.eta: power_kink family needs eta in [4/5, 1]");
            break;
        case ProfileFamily::capped:
            if (!(lambda >= 2.0) || !std::isfinite(lambda))
                issues.push_back("profile.lambda: capped family needs lambda >= 2");
            if (!(eta1 > 1.0) || !std::isfinite(eta1))
                issues.push_back("profile.eta1: capped family needs eta1 > 1");
            if (!(eta2 > 0.8 && eta2 < 1.0))
                issues.push_back("profile.eta2: capped family needs eta2 in (4/5, 1)");
            break;
        case ProfileFamily::custom: {
            if (samples.size() < 3)
                issues.push_back("profile.samples: need at least 3 samples on [-1, 1]");
            const std::size_t m = samples.size();
            bool range_ok = true, even_ok = true, mono_ok = true;
            for (std::size_t k = 0; k < m; ++k) {
                if (!std::isfinite(samples[k]) || samples[k] < 0.0 || samples[k] > 1.0)
                    range_ok = false;
                if (std::fabs(samples[k] - samples[m - 1 - k]) > 1e-12) even_ok = false;
            }
            for (std::size_t k = m / 2; k + 1 < m; ++k)
                if (samples[k + 1] > samples[k] + 1e-12) mono_ok = false;
            if (!range_ok) issues.push_back("profile.samples: values must be finite and in [0, 1]");
            if (m >= 3 && !even_ok) issues.push_back("profile.samples: must be even in xi");
            if (m >= 3 && !mono_ok)
                issues.push_back("profile.samples: must be non-increasing in |xi|");
            break;
        }
    }
    return issues;
}

double ProfileSpec::lipschitz_bound() const {
    switch (family) {
        case ProfileFamily::power:
        case ProfileFamily::power_kink: return lambda;
        case ProfileFamily::capped: return lambda * eta1;
        case ProfileFamily::custom: {
            if (samples.size() < 2) return 0.0;
            const double dxi = 2.0 / static_cast<double>(samples.size() - 1);
            double m = 0.0;
            for (std::size_t k = 0; k + 1 < samples.size(); ++k)
                m = std::max(m, std::fabs(samples[k + 1] - samples[k]) / dxi);
            return m;
        }
    }
    return 0.0;
}

double psi(const ProfileSpec& spec, double xi) {
    const double a = std::fabs(xi);
    if (a > 1.0) return 0.0;
    switch (spec.family) {
        case ProfileFamily::power: return std::pow(1.0 - a, spec.lambda);
        case ProfileFamily::power_kink:
            return std::pow(1.0 - a, spec.lambda - 1.0) * std::max(1.0 - a, 1.0 - spec.eta);
        case ProfileFamily::capped: {
            const double t = (1.0 - a) * spec.eta1;
            const double f1 = std::pow(std::min(1.0, t), spec.lambda - 1.0);
            const double psi1 = a <= spec.eta2 ? std::min(1.0, t)
                                               : std::min(1.0, (1.0 - spec.eta2) * spec.eta1);
            return f1 * psi1;
        }
        case ProfileFamily::custom: {
            if (a > 1.0) return 0.0;
            const std::size_t m = spec.samples.size();
            const double pos = (xi + 1.0) * 0.5 * static_cast<double>(m - 1);
            const std::size_t k =
                std::min(static_cast<std::size_t>(std::max(0.0, pos)), m - 2);
            const double frac = pos - static_cast<double>(k);
            return spec.samples[k] + frac * (spec.samples[k + 1] - spec.samples[k]);
        }
    }
    return 0.0;
}

SampledProfile build_profile(const ProfileSpec& spec, std::size_t grid_n) {
    if (auto issues = spec.validate(); !issues.empty()) throw ValidationError(issues);
    if (grid_n < 2) throw ValidationError("profile: grid_n must be at least 2");
    SampledProfile out;
    out.L = spec.L;
    out.dx = 2.0 * spec.L / static_cast<double>(grid_n - 1);
    out.x.resize(grid_n);
    out.phi.resize(grid_n);
    for (std::size_t k = 0; k < grid_n; ++k) {
        double x = -spec.L + static_cast<double>(k) * out.dx;
        if (k == 0) x = -spec.L;
        if (k == grid_n - 1) x = spec.L;
        out.x[k] = x;
        out.phi[k] = psi(spec, x / spec.L);
    }
    return out;
}

SubEigReport verify_subeigen(const kernels::Kernel& kernel, const ProfileSpec& spec,
                             double epsilon, std::size_t grid_n) {
    if (grid_n < 512) throw ValidationError("subeig: grid_n must be at least 512");
    if (!(epsilon >= 0.0 && epsilon < 1.0) || !std::isfinite(epsilon))
        throw ValidationError("subeig: epsilon must lie in [0, 1)");
    const SampledProfile prof = build_profile(spec, grid_n);

    std::vector<double> w(grid_n);
    for (std::size_t k = 0; k < grid_n; ++k) w[k] = prof.dx * prof.phi[k];
    w.front() *= 0.5;
    w.back() *= 0.5;

    conv::GridConvolver convolver(kernel, prof.dx);
    std::vector<double> integral;
    convolver.apply(w, integral);

    SubEigReport rep;
    rep.epsilon = epsilon;
    rep.grid_n = grid_n;
    rep.L = spec.L;
    rep.min_ratio = std::numeric_limits<double>::infinity();
    rep.max_ratio = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid_n; ++k) {
        if (prof.phi[k] <= 0.0) {
            ++rep.excluded;
            continue;
        }
        const double ratio = integral[k] / prof.phi[k];
        if (ratio < rep.min_ratio) {
            rep.min_ratio = ratio;
            rep.worst_x = prof.x[k];
        }
        rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
    rep.pass = rep.min_ratio >= 1.0 - epsilon;
    return rep;
}

MinimalScaleResult minimal_scale(const kernels::Kernel& kernel, const ProfileSpec& spec,
                                 double epsilon, const std::vector<double>& L_grid,
                                 std::size_t grid_n) {
    if (L_grid.empty()) throw ValidationError("subeig: L_grid must not be empty");
    for (std::size_t k = 0; k + 1 < L_grid.size(); ++k)
        if (!(L_grid[k] < L_grid[k + 1]))
            throw ValidationError("subeig: L_grid must be strictly increasing");
    MinimalScaleResult result;
    for (double cand : L_grid) {
        ProfileSpec at = spec;
        at.L = cand;
        result.attempts.push_back(verify_subeigen(kernel, at, epsilon, grid_n));
        if (result.attempts.back().pass) {
            result.L = cand;
            break;
        }
    }
    return result;
}

bool check_convexity(const ProfileSpec& spec, double xi_lo, double xi_hi,
                     std::size_t samples_n) {
    if (auto issues = spec.validate(); !issues.empty()) throw ValidationError(issues);
    if (!(xi_lo < xi_hi) || xi_lo < -1.0 || xi_hi > 1.0)
        throw ValidationError("subeig: convexity region must satisfy -1 <= lo < hi <= 1");
    if (samples_n < 3) throw ValidationError("subeig: convexity check needs >= 3 samples");
    const double d = (xi_hi - xi_lo) / static_cast<double>(samples_n - 1);
    double prev = psi(spec, xi_lo), cur = psi(spec, xi_lo + d);
    for (std::size_t k = 1; k + 1 < samples_n; ++k) {
        const double next = psi(spec, xi_lo + static_cast<double>(k + 1) * d);
        if (prev - 2.0 * cur + next < -1e-12) return false;
        prev = cur;
        cur = next;
    }
    return true;
}

}  // namespace nlfront::subeig
