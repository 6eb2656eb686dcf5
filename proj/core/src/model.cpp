#include "nlfront/model.hpp"

#include <cmath>

#include "nlfront/errors.hpp"

namespace nlfront::model {

std::vector<std::string> ModelParams::validate() const {
    std::vector<std::string> bad;
    auto pos = [&](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            bad.push_back(std::string(name) + " must be a positive finite number");
    };
    pos(d1, "d1");
    pos(d2, "d2");
    pos(a11, "a11");
    pos(a12, "a12");
    pos(a22, "a22");
    pos(mu, "mu");
    pos(rho_flux, "rho_flux");
    pos(h0, "h0");
    return bad;
}

GFunction GFunction::monod(double b) {
    if (!(b > 0.0)) throw ValidationError("monod: b must be positive");
    GFunction g;
    g.family_ = GFamily::monod;
    g.b_ = b;
    g.gprime0_ = b;
    g.label_ = "monod";
    g.eval_ = [b](double z) { return b * z / (1.0 + z); };
    return g;
}

GFunction GFunction::linear_capped(double b, double cap) {
    if (!(b > 0.0) || !(cap > 0.0))
        throw ValidationError("linear_capped: b and cap must be positive");
    GFunction g;
    g.family_ = GFamily::linear_capped;
    g.b_ = b;
    g.cap_ = cap;
    g.gprime0_ = b;
    g.label_ = "linear_capped";
    g.eval_ = [b, cap](double z) { return std::min(b * z, cap); };
    return g;
}

GFunction GFunction::custom(std::function<double(double)> g, double gprime0,
                            std::string label) {
    GFunction out;
    out.family_ = GFamily::custom;
    out.gprime0_ = gprime0;
    out.eval_ = std::move(g);
    out.label_ = std::move(label);
    return out;
}

std::vector<std::string> GFunction::check_certificates(const ModelParams& params) const {
    std::vector<std::string> bad;
    if (std::abs(eval_(0.0)) > 1e-14) bad.push_back("G(0) must be 0");

    // 200 log-spaced samples over twelve decades
    const int n = 200;
    double prev_z = 0.0, prev_g = 0.0, prev_ratio = 0.0;
    bool have_prev = false;
    bool increasing = true, ratio_ok = true;
    for (int k = 0; k < n; ++k) {
        const double z = std::pow(10.0, -6.0 + 12.0 * k / (n - 1.0));
        const double g = eval_(z);
        const double ratio = g / z;
        if (have_prev) {
            if (!(g > prev_g)) increasing = false;
            if (ratio > prev_ratio * (1.0 + 1e-12)) ratio_ok = false;
        }
        prev_z = z;
        prev_g = g;
        prev_ratio = ratio;
        have_prev = true;
    }
    (void)prev_z;
    if (!increasing) bad.push_back("G must be strictly increasing on the sampled grid");
    if (!ratio_ok) bad.push_back("G(z)/z must be non-increasing on the sampled grid");

    const double theta = params.a11 * params.a22 / params.a12;
    const double far_ratio = eval_(1e6) / 1e6;
    if (!(far_ratio < theta))
        bad.push_back("limit of G(z)/z at infinity must fall below a11*a22/a12");
    return bad;
}

double basic_reproduction_number(const ModelParams& params, const GFunction& G) {
    return params.a12 * G.prime0() / (params.a11 * params.a22);
}

Equilibrium positive_equilibrium(const ModelParams& params, const GFunction& G) {
    Equilibrium eq;
    eq.R0 = basic_reproduction_number(params, G);
    if (!(eq.R0 > 1.0)) return eq;

    // G(u)/u is non-increasing, starts at G'(0) > theta and must cross theta
    const double theta = params.a11 * params.a22 / params.a12;
    auto f = [&](double u) { return G(u) / u - theta; };

    double hi = 1.0;
    const double u_max = 1e12;
    while (f(hi) > 0.0) {
        hi *= 2.0;
        if (hi > u_max)
            throw ValidationError(
                "positive_equilibrium: no root below 1e12; G(z)/z does not drop "
                "below a11*a22/a12 (growth condition violated)");
    }
    double lo = 0.0;  // f(0+) = G'(0) - theta > 0, so the root is bracketed
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15 * hi) break;
    }
    const double u_star = 0.5 * (lo + hi);
    eq.u_star = u_star;
    eq.v_star = params.a11 / params.a12 * u_star;
    return eq;
}

bool eigenpair_inequalities_hold(const ModelParams& params, const GFunction& G,
                                 double delta1, double delta2, double rho,
                                 int s_grid) {
    const double lhs1 = -params.a11 * delta1 + params.a12 * delta2;
    if (lhs1 < rho * (delta1 + delta2)) return false;
    for (int k = 0; k < s_grid; ++k) {
        const double s = std::pow(10.0, -6.0 * (1.0 - k / (s_grid - 1.0)));  // (1e-6, 1]
        const double lhs2 = G(s * delta1) - params.a22 * s * delta2;
        if (lhs2 < s * rho * (delta1 + delta2)) return false;
    }
    return true;
}

LinearizedEigenpair linearized_eigenpair(const ModelParams& params, const GFunction& G) {
    const double R0 = basic_reproduction_number(params, G);
    if (!(R0 > 1.0))
        throw ValidationError(
            "linearized_eigenpair: no positive eigenvalue when R0 <= 1");

    const Equilibrium eq = positive_equilibrium(params, G);
    const double u_star = *eq.u_star, v_star = *eq.v_star;

    LinearizedEigenpair pair;
    const double a11 = params.a11, a22 = params.a22, a12 = params.a12;
    const double disc = (a11 - a22) * (a11 - a22) + 4.0 * a12 * G.prime0();
    pair.rho1 = 0.5 * (-(a11 + a22) + std::sqrt(disc));

    // eigenvector slope from the first row: a12 d2 = (rho1 + a11) d1
    const double slope = (pair.rho1 + a11) / a12;
    double delta1 = 0.5 * u_star;
    double delta2 = slope * delta1;

    // halve (direction-preserving: both components exactly halved) until the
    // vector sits below the equilibrium and the margin inequalities hold
    auto rho_of = [&](double d1, double d2) {
        return std::min(pair.rho1 * d1 / (d1 + d2), pair.rho1 * d2 / (2.0 * (d1 + d2)));
    };
    int halvings = 0;
    const int max_halvings = 60;
    while (halvings <= max_halvings) {
        const double rho = rho_of(delta1, delta2);
        if (delta1 < u_star && delta2 < v_star &&
            eigenpair_inequalities_hold(params, G, delta1, delta2, rho)) {
            pair.delta1 = delta1;
            pair.delta2 = delta2;
            pair.rho_lin = rho;
            pair.halvings = halvings;
            return pair;
        }
        delta1 *= 0.5;
        delta2 *= 0.5;
        ++halvings;
    }
    throw SolverAbort(
        "linearized_eigenpair: rescaling cap reached without satisfying the "
        "margin inequalities");
}

}  // namespace nlfront::model
