#include "nlfront/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlfront/errors.hpp"

namespace nlfront::analysis {

std::string verdict_name(VerdictKind v) {
    switch (v) {
        case VerdictKind::spreading: return "spreading";
        case VerdictKind::vanishing: return "vanishing";
        case VerdictKind::undecided: return "undecided";
    }
    return "undecided";
}

std::string rate_law_name(RateLaw law) {
    switch (law) {
        case RateLaw::power: return "power";
        case RateLaw::t_log_t: return "t_log_t";
        case RateLaw::linear: return "linear";
    }
    return "power";
}

DichotomyVerdict classify(const sim::Trajectory& traj, const model::Equilibrium& eq,
                          const Thresholds& thresholds) {
    if (traj.times.empty()) throw ValidationError("classify: empty trajectory");
    DichotomyVerdict out;

    for (double val : traj.final_state.u) out.final_field_max = std::max(out.final_field_max, val);
    for (double val : traj.final_state.v) out.final_field_max = std::max(out.final_field_max, val);

    const double t_end = traj.times.back();
    const double width_end = traj.h_series.back() - traj.g_series.back();
    std::size_t half = 0;
    while (half + 1 < traj.times.size() && traj.times[half] < 0.5 * t_end) ++half;
    out.growth_last_window = width_end - (traj.h_series[half] - traj.g_series[half]);

    out.center_deviation = std::numeric_limits<double>::infinity();
    if (eq.u_star) {
        out.center_deviation =
            std::max(std::fabs(traj.u_center.back() - *eq.u_star) / *eq.u_star,
                     std::fabs(traj.v_center.back() - *eq.v_star) / *eq.v_star);
    }

    // the solver's own early stops are certificates in themselves
    if (traj.stop == sim::StopReason::vanished) {
        out.kind = VerdictKind::vanishing;
        return out;
    }
    if (traj.stop == sim::StopReason::spread) {
        out.kind = VerdictKind::spreading;
        return out;
    }
    if (out.final_field_max < thresholds.vanish_field &&
        out.growth_last_window < thresholds.stall_growth) {
        out.kind = VerdictKind::vanishing;
    } else if (width_end > thresholds.spread_width &&
               out.center_deviation < thresholds.center_tol) {
        out.kind = VerdictKind::spreading;
    }
    return out;
}

namespace {
struct WindowData {
    std::vector<double> t, h;
};

WindowData window_samples(const std::vector<double>& t, const std::vector<double>& h,
                          double t_lo, double t_hi) {
    if (t.size() != h.size()) throw ValidationError("rates: t and h lengths differ");
    if (!(t_lo > 0.0) || !(t_hi > t_lo))
        throw ValidationError("rates.window: need 0 < t_lo < t_hi");
    if (t_lo < 0.5 * t_hi - 1e-12 * t_hi)
        throw ValidationError("rates.window: tail-only fitting requires t_lo >= t_hi / 2");
    WindowData w;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi) continue;
        if (!(h[i] > 0.0))
            throw ValidationError("rates: h must be positive on the fit window");
        w.t.push_back(t[i]);
        w.h.push_back(h[i]);
    }
    if (w.t.size() < 10)
        throw ValidationError("rates.window: need at least 10 samples in the window");
    return w;
}

double relative_rms(const WindowData& w, const std::vector<double>& fit) {
    double acc = 0.0;
    for (std::size_t i = 0; i < w.h.size(); ++i) {
        const double r = (w.h[i] - fit[i]) / w.h[i];
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(w.h.size()));
}
}  // namespace

RateFit fit_power(const std::vector<double>& t, const std::vector<double>& h,
                  double t_lo, double t_hi) {
    const WindowData w = window_samples(t, h, t_lo, t_hi);
    const auto n = static_cast<double>(w.t.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < w.t.size(); ++i) {
        mx += std::log(w.t[i]);
        my += std::log(w.h[i]);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < w.t.size(); ++i) {
        const double dx = std::log(w.t[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(w.h[i]) - my);
    }
    if (!(sxx > 0.0)) throw ValidationError("rates: window has no time spread");

    RateFit fit;
    fit.law = RateLaw::power;
    fit.exponent = sxy / sxx;
    fit.coefficient = std::exp(my - fit.exponent * mx);
    fit.t_lo = t_lo;
    fit.t_hi = t_hi;
    std::vector<double> pred(w.t.size());
    for (std::size_t i = 0; i < w.t.size(); ++i)
        pred[i] = fit.coefficient * std::pow(w.t[i], fit.exponent);
    fit.rms_residual = relative_rms(w, pred);
    return fit;
}

TlntFit fit_tlnt(const std::vector<double>& t, const std::vector<double>& h,
                 double t_lo, double t_hi) {
    if (!(t_lo > std::exp(1.0)))
        throw ValidationError("rates.window: t ln t fitting needs t_lo > e");
    const WindowData w = window_samples(t, h, t_lo, t_hi);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < w.t.size(); ++i) {
        const double b = w.t[i] * std::log(w.t[i]);
        num += w.h[i] * b;
        den += b * b;
    }
    TlntFit out;
    out.tlnt.law = RateLaw::t_log_t;
    out.tlnt.coefficient = num / den;
    out.tlnt.t_lo = t_lo;
    out.tlnt.t_hi = t_hi;
    std::vector<double> pred(w.t.size());
    for (std::size_t i = 0; i < w.t.size(); ++i)
        pred[i] = out.tlnt.coefficient * w.t[i] * std::log(w.t[i]);
    out.tlnt.rms_residual = relative_rms(w, pred);
    out.power = fit_power(t, h, t_lo, t_hi);
    return out;
}

RateFit fit_linear_speed(const std::vector<double>& t, const std::vector<double>& h,
                         double t_lo, double t_hi) {
    const WindowData w = window_samples(t, h, t_lo, t_hi);
    double mean_speed = 0.0;
    for (std::size_t i = 0; i < w.t.size(); ++i) mean_speed += w.h[i] / w.t[i];
    mean_speed /= static_cast<double>(w.t.size());

    RateFit fit;
    fit.law = RateLaw::linear;
    fit.coefficient = mean_speed;
    fit.t_lo = t_lo;
    fit.t_hi = t_hi;
    std::vector<double> pred(w.t.size());
    for (std::size_t i = 0; i < w.t.size(); ++i) pred[i] = mean_speed * w.t[i];
    fit.rms_residual = relative_rms(w, pred);
    // no plateau: h/t still climbing from one end of the window to the other
    fit.super_linear = w.h.back() / w.t.back() > 1.2 * (w.h.front() / w.t.front());
    return fit;
}

RateFit fit_power(const sim::Trajectory& traj, double t_lo, double t_hi) {
    return fit_power(traj.times, traj.h_series, t_lo, t_hi);
}
RateFit fit_linear_speed(const sim::Trajectory& traj, double t_lo, double t_hi) {
    return fit_linear_speed(traj.times, traj.h_series, t_lo, t_hi);
}
TlntFit fit_tlnt(const sim::Trajectory& traj, double t_lo, double t_hi) {
    return fit_tlnt(traj.times, traj.h_series, t_lo, t_hi);
}

RateFit theory_rate(double alpha) {
    if (!(alpha > 1.0 && alpha <= 2.0))
        throw ValidationError(
            "rates.alpha: growth laws cover alpha in (1, 2]; heavier tails give a finite "
            "spreading speed, use the semi-wave solver instead");
    RateFit fit;
    if (std::fabs(alpha - 2.0) <= 1e-12) {
        fit.law = RateLaw::t_log_t;
        fit.coefficient = 0.0;  // the prefactor is not predicted, only the law
    } else {
        fit.law = RateLaw::power;
        fit.exponent = 1.0 / (alpha - 1.0);
    }
    return fit;
}

}  // namespace nlfront::analysis
