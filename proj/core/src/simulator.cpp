#include "nlfront/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlfront/errors.hpp"

namespace nlfront::sim {

std::vector<std::string> SimConfig::validate(const model::ModelParams& p) const {
    std::vector<std::string> issues;
    if (!(dx > 0.0) || !std::isfinite(dx)) issues.push_back("sim.dx: must be positive and finite");
    if (!(dt > 0.0) || !std::isfinite(dt)) issues.push_back("sim.dt: must be positive and finite");
    if (!(T > 0.0) || !std::isfinite(T)) issues.push_back("sim.T: must be positive and finite");
    if (dt > 0.0) {
        if (!(dt * (p.d1 + p.a11) < 1.0))
            issues.push_back("sim.dt: positivity bound dt*(d1 + a11) < 1 violated");
        if (!(dt * (p.d2 + p.a22) < 1.0))
            issues.push_back("sim.dt: positivity bound dt*(d2 + a22) < 1 violated");
    }
    if (!(vanish_threshold > 0.0))
        issues.push_back("sim.vanish_threshold: must be positive");
    if (!(spread_threshold > 0.0))
        issues.push_back("sim.spread_threshold: must be positive");
    if (!(spread_center_tol > 0.0 && spread_center_tol < 1.0))
        issues.push_back("sim.spread_center_tol: must lie in (0, 1)");
    return issues;
}

std::string stop_reason_name(StopReason r) {
    switch (r) {
        case StopReason::horizon: return "horizon";
        case StopReason::vanished: return "vanished";
        case StopReason::spread: return "spread";
    }
    return "horizon";
}

std::vector<double> quadrature_weights(const FieldState& s) {
    const std::size_t n = s.n();
    std::vector<double> w(n, s.dx);
    if (n == 0) return w;
    const double lg = s.x(0) - s.g;
    const double lh = s.h - s.x(n - 1);
    if (n == 1) {
        w[0] = 0.5 * (lg + lh);
    } else {
        w[0] = 0.5 * (s.dx + lg);
        w[n - 1] = 0.5 * (s.dx + lh);
    }
    return w;
}

std::vector<double> convolve(const kernels::Kernel& J, const std::vector<double>& w,
                             const FieldState& s, conv::Backend backend) {
    if (w.size() != s.n())
        throw ValidationError("convolve: field length does not match the state grid");
    const std::vector<double> omega = quadrature_weights(s);
    std::vector<double> wq(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) wq[k] = omega[k] * w[k];
    conv::GridConvolver c(J, s.dx, backend);
    std::vector<double> out;
    c.apply(wq, out);
    return out;
}

Simulator::Simulator(model::ModelParams params, model::GFunction G, kernels::Kernel J1,
                     kernels::Kernel K, kernels::Kernel J2, SimConfig config)
    : params_(params),
      G_(std::move(G)),
      J1_(std::move(J1)),
      K_(std::move(K)),
      J2_(std::move(J2)),
      config_(config),
      conv1_(J1_, config.dx, config.backend),
      convK_(K_, config.dx, config.backend),
      conv2_(J2_, config.dx, config.backend) {
    std::vector<std::string> issues = params_.validate();
    for (const std::string& m : config_.validate(params_)) issues.push_back(m);
    if (!issues.empty()) throw ValidationError(issues);
    const model::Equilibrium eq = model::positive_equilibrium(params_, G_);
    if (eq.u_star) {
        u_star_ = *eq.u_star;
        v_star_ = *eq.v_star;
    }
}

FieldState Simulator::initialize(const InitProfile& init) const {
    const double h0 = params_.h0;
    const double dx = config_.dx;
    const double m_real = h0 / dx;
    const auto m = static_cast<std::int64_t>(std::llround(m_real));
    if (m < 1 || std::fabs(static_cast<double>(m) * dx - h0) > 1e-9 * std::max(1.0, h0))
        throw ValidationError(
            "model.h0: must be a positive integer multiple of sim.dx so the initial "
            "boundaries sit on grid nodes");

    FieldState s;
    s.t = 0.0;
    s.dx = dx;
    s.i_left = -m;
    s.h = static_cast<double>(m) * dx;
    s.g = -s.h;
    const std::size_t n = static_cast<std::size_t>(2 * m + 1);
    s.u.assign(n, 0.0);
    s.v.assign(n, 0.0);

    const double hb = s.h;  // grid-exact half-width used in the default bumps
    std::vector<std::string> issues;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double x = s.x(k);
        const double bump = 1.0 - (x / hb) * (x / hb);
        const double u0 = init.u0 ? init.u0(x) : init.A * bump;
        const double v0 = init.v0 ? init.v0(x) : init.B * bump;
        if (!std::isfinite(u0) || !std::isfinite(v0)) {
            issues.push_back("init: profile returned a non-finite value");
            break;
        }
        if (!(u0 > 0.0)) {
            issues.push_back("init.u0: must be positive on the open interval (-h0, h0)");
            break;
        }
        if (v0 < 0.0) {
            issues.push_back("init.v0: must be nonnegative");
            break;
        }
        s.u[k] = u0;
        s.v[k] = v0;
    }
    if (init.u0 && (std::fabs(init.u0(s.g)) > 1e-12 || std::fabs(init.u0(s.h)) > 1e-12))
        issues.push_back("init.u0: must vanish at the boundaries +-h0");
    if (init.v0 && (std::fabs(init.v0(s.g)) > 1e-12 || std::fabs(init.v0(s.h)) > 1e-12))
        issues.push_back("init.v0: must vanish at the boundaries +-h0");
    if (!init.u0 && !(init.A > 0.0)) issues.push_back("init.A: must be positive");
    if (!init.v0 && init.B < 0.0) issues.push_back("init.B: must be nonnegative");
    if (!issues.empty()) throw ValidationError(issues);
    return s;
}

std::pair<double, double> Simulator::boundary_flux(const FieldState& s) const {
    const std::size_t n = s.n();
    if (n == 0) return {0.0, 0.0};
    const std::vector<double> w = quadrature_weights(s);
    const double rho = params_.rho_flux;

    // Skipping nodes beyond every compact support only ever drops exact
    // zeros, so the trimmed loops are bit-identical to full ones.
    std::size_t h_from = 0, g_upto = n - 1;
    if (J1_.compact_support() && J2_.compact_support()) {
        const double R = std::max(J1_.support_radius(), J2_.support_radius());
        const double lo = s.h - R, hi = s.g + R;
        if (lo > s.x(0)) {
            const auto k = static_cast<std::int64_t>(std::floor(lo / s.dx)) - s.i_left - 1;
            h_from = static_cast<std::size_t>(std::clamp<std::int64_t>(
                k, 0, static_cast<std::int64_t>(n - 1)));
        }
        if (hi < s.x(n - 1)) {
            const auto k = static_cast<std::int64_t>(std::ceil(hi / s.dx)) - s.i_left + 1;
            g_upto = static_cast<std::size_t>(std::clamp<std::int64_t>(
                k, 0, static_cast<std::int64_t>(n - 1)));
        }
    }

    double hp = 0.0;
    for (std::size_t k = h_from; k < n; ++k) {
        const double d = s.h - s.x(k);
        hp += w[k] * (s.u[k] * J1_.tail_mass(d) + rho * s.v[k] * J2_.tail_mass(d));
    }
    // descending order mirrors the h-side sum so symmetric states give
    // bit-exact g' = -h'
    double gp = 0.0;
    for (std::size_t k = g_upto + 1; k-- > 0;) {
        const double d = s.x(k) - s.g;
        gp += w[k] * (s.u[k] * J1_.tail_mass(d) + rho * s.v[k] * J2_.tail_mass(d));
    }
    return {-params_.mu * gp, params_.mu * hp};
}

void Simulator::step(FieldState& s) {
    const std::size_t n = s.n();
    const double dx = s.dx, dt = config_.dt;
    const double d1 = params_.d1, d2 = params_.d2;
    const double a11 = params_.a11, a12 = params_.a12, a22 = params_.a22;

    wu_.resize(n);
    wv_.resize(n);
    const double lg = s.x(0) - s.g;
    const double lh = s.h - s.x(n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        wu_[k] = dx * s.u[k];
        wv_[k] = dx * s.v[k];
    }
    if (n == 1) {
        wu_[0] = 0.5 * (lg + lh) * s.u[0];
        wv_[0] = 0.5 * (lg + lh) * s.v[0];
    } else {
        wu_[0] = 0.5 * (dx + lg) * s.u[0];
        wv_[0] = 0.5 * (dx + lg) * s.v[0];
        wu_[n - 1] = 0.5 * (dx + lh) * s.u[n - 1];
        wv_[n - 1] = 0.5 * (dx + lh) * s.v[n - 1];
    }
    conv1_.apply(wu_, cu_);
    convK_.apply(wv_, ck_);
    conv2_.apply(wv_, cv_);

    const auto [gp, hp] = boundary_flux(s);

    auto abort_at = [&](const char* what, std::size_t k, double val) {
        std::ostringstream msg;
        msg << what << " at t = " << s.t + dt << ", x = " << s.x(k) << " (value " << val
            << "); the scheme requires dt*(d + a) < 1 and nonnegative data";
        throw SolverAbort(msg.str());
    };
    auto update = [&](std::size_t k) {
        const double uk = s.u[k], vk = s.v[k];
        double un = uk + dt * (d1 * (cu_[k] - uk) - a11 * uk + a12 * ck_[k]);
        double vn = vk + dt * (d2 * (cv_[k] - vk) - a22 * vk + G_(uk));
        if (!std::isfinite(un) || !std::isfinite(vn))
            abort_at("non-finite field value", k, std::isfinite(un) ? vn : un);
        if (un < 0.0) {
            if (un < -1e-14) abort_at("negativity beyond roundoff in u", k, un);
            un = 0.0;
        }
        if (vn < 0.0) {
            if (vn < -1e-14) abort_at("negativity beyond roundoff in v", k, vn);
            vn = 0.0;
        }
        s.u[k] = un;
        s.v[k] = vn;
    };
    // only the outermost nodes can coincide with a boundary (Dirichlet: they
    // stay 0 until the boundary moves past them)
    if (n >= 1 && s.x(0) > s.g && s.x(0) < s.h) update(0);
    for (std::size_t k = 1; k + 1 < n; ++k) update(k);
    if (n >= 2 && s.x(n - 1) > s.g && s.x(n - 1) < s.h) update(n - 1);

    s.t += dt;
    s.h += dt * hp;
    s.g += dt * gp;

    while (static_cast<double>(s.i_left + static_cast<std::int64_t>(s.n())) * dx <= s.h) {
        s.u.push_back(0.0);
        s.v.push_back(0.0);
    }
    while (static_cast<double>(s.i_left - 1) * dx >= s.g) {
        s.u.insert(s.u.begin(), 0.0);
        s.v.insert(s.v.begin(), 0.0);
        --s.i_left;
    }
}

Trajectory Simulator::run(const InitProfile& init) {
    FieldState s = initialize(init);
    Trajectory tr;

    auto center = [&](const FieldState& st) -> std::size_t {
        return static_cast<std::size_t>(-st.i_left);
    };
    auto record = [&](const FieldState& st) {
        tr.times.push_back(st.t);
        tr.g_series.push_back(st.g);
        tr.h_series.push_back(st.h);
        tr.u_center.push_back(st.u[center(st)]);
        tr.v_center.push_back(st.v[center(st)]);
    };
    auto snapshot = [&](const FieldState& st) {
        Snapshot snap;
        snap.t = st.t;
        snap.x.resize(st.n());
        for (std::size_t k = 0; k < st.n(); ++k) snap.x[k] = st.x(k);
        snap.u = st.u;
        snap.v = st.v;
        tr.snapshots.push_back(std::move(snap));
    };
    record(s);
    if (config_.snapshot_every > 0) snapshot(s);  // initial data, t = 0

    constexpr std::size_t stall_lag = 1000;
    std::vector<double> width_hist(stall_lag, s.h - s.g);

    while (s.t < config_.T - 0.5 * config_.dt) {
        step(s);
        ++tr.steps;
        record(s);
        if (config_.snapshot_every > 0 && tr.steps % config_.snapshot_every == 0) snapshot(s);

        double fmax = 0.0;
        for (double val : s.u) fmax = std::max(fmax, val);
        for (double val : s.v) fmax = std::max(fmax, val);
        const double width = s.h - s.g;

        if (fmax < config_.vanish_threshold && tr.steps >= stall_lag &&
            width - width_hist[tr.steps % stall_lag] < 1e-10) {
            tr.stop = StopReason::vanished;
            break;
        }
        width_hist[tr.steps % stall_lag] = width;

        if (config_.stop_on_spread && u_star_ > 0.0 && width > config_.spread_threshold) {
            const double du = std::fabs(tr.u_center.back() - u_star_) / u_star_;
            const double dv = std::fabs(tr.v_center.back() - v_star_) / v_star_;
            if (du < config_.spread_center_tol && dv < config_.spread_center_tol) {
                tr.stop = StopReason::spread;
                break;
            }
        }
    }
    tr.final_state = std::move(s);
    return tr;
}

}  // namespace nlfront::sim
