#include "nlfront/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlfront/errors.hpp"
#include "nlfront/quadrature.hpp"

namespace nlfront::kernels {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::power_law: return "power_law";
        case Family::compact: return "compact";
        case Family::gaussian: return "gaussian";
        case Family::laplace: return "laplace";
        case Family::table: return "table";
    }
    return "unknown";
}

KernelSpec KernelSpec::power(double alpha, double s) {
    KernelSpec k;
    k.family = Family::power_law;
    k.alpha = alpha;
    k.s = s;
    return k;
}
KernelSpec KernelSpec::triangle(double a) {
    KernelSpec k;
    k.family = Family::compact;
    k.shape = CompactShape::triangle;
    k.a = a;
    return k;
}
KernelSpec KernelSpec::cosine(double a) {
    KernelSpec k;
    k.family = Family::compact;
    k.shape = CompactShape::cosine;
    k.a = a;
    return k;
}
KernelSpec KernelSpec::gauss(double sigma) {
    KernelSpec k;
    k.family = Family::gaussian;
    k.sigma = sigma;
    return k;
}
KernelSpec KernelSpec::laplacian(double b) {
    KernelSpec k;
    k.family = Family::laplace;
    k.b = b;
    return k;
}
KernelSpec KernelSpec::sampled(double xmax, std::vector<double> values) {
    KernelSpec k;
    k.family = Family::table;
    k.table_xmax = xmax;
    k.table_values = std::move(values);
    return k;
}

std::vector<std::string> KernelSpec::validate() const {
    std::vector<std::string> bad;
    switch (family) {
        case Family::power_law:
            if (!(alpha > 1.0))
                bad.push_back("power_law: alpha must exceed 1 (density not integrable)");
            if (!(s > 0.0)) bad.push_back("power_law: scale s must be positive");
            break;
        case Family::compact:
            if (!(a > 0.0)) bad.push_back("compact: half-width a must be positive");
            break;
        case Family::gaussian:
            if (!(sigma > 0.0)) bad.push_back("gaussian: sigma must be positive");
            break;
        case Family::laplace:
            if (!(b > 0.0)) bad.push_back("laplace: b must be positive");
            break;
        case Family::table: {
            if (!(table_xmax > 0.0)) bad.push_back("table: xmax must be positive");
            if (table_values.size() < 2) bad.push_back("table: need at least two samples");
            bool neg = false, mass = false;
            for (double v : table_values) {
                if (v < 0.0) neg = true;
                if (v > 0.0) mass = true;
            }
            if (neg) bad.push_back("table: negative density sample");
            if (!mass) bad.push_back("table: density is identically zero");
            if (!table_values.empty() && !(table_values.front() > 0.0))
                bad.push_back("table: density must be positive at the origin");
            break;
        }
    }
    return bad;
}

// ---------------------------------------------------------------------------
// construction

Kernel normalize(const KernelSpec& spec) {
    auto bad = spec.validate();
    if (!bad.empty()) throw ValidationError(bad);

    Kernel k;
    k.spec_ = spec;
    switch (spec.family) {
        case Family::power_law:
            // int_R dx / (s + |x|^alpha) = 2 s^{1/alpha - 1} (pi/alpha) / sin(pi/alpha)
            k.c_ = spec.alpha * std::sin(kPi / spec.alpha) *
                   std::pow(spec.s, 1.0 - 1.0 / spec.alpha) / (2.0 * kPi);
            // The alternating tail series in q = s a^{-alpha} is used once
            // q <= 1/2, i.e. beyond a = (2s)^{1/alpha}.
            k.near_cut_ = std::pow(2.0 * spec.s, 1.0 / spec.alpha);
            break;
        case Family::compact:
            // triangle (1-|x|/a) integrates to a; cosine arch to 4a/pi
            k.c_ = (spec.shape == CompactShape::triangle) ? 1.0 / spec.a
                                                          : kPi / (4.0 * spec.a);
            break;
        case Family::gaussian:
            k.c_ = 1.0 / (spec.sigma * std::sqrt(2.0 * kPi));
            break;
        case Family::laplace:
            k.c_ = 1.0 / (2.0 * spec.b);
            break;
        case Family::table: {
            const std::size_t n = spec.table_values.size();
            const double dx = spec.table_xmax / static_cast<double>(n - 1);
            k.tab_x_.resize(n);
            double half_mass = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                k.tab_x_[i] = static_cast<double>(i) * dx;
                if (i > 0)
                    half_mass += 0.5 * dx * (spec.table_values[i - 1] + spec.table_values[i]);
            }
            k.c_ = 1.0 / (2.0 * half_mass);
            k.tab_j_.resize(n);
            for (std::size_t i = 0; i < n; ++i) k.tab_j_[i] = k.c_ * spec.table_values[i];
            // cumulative int_0^{x_i} J and int_0^{x_i} yJ of the interpolant
            k.tab_cdf_.assign(n, 0.0);
            k.tab_mom_.assign(n, 0.0);
            for (std::size_t i = 1; i < n; ++i) {
                const double x0 = k.tab_x_[i - 1], x1 = k.tab_x_[i];
                const double j0 = k.tab_j_[i - 1], j1 = k.tab_j_[i];
                k.tab_cdf_[i] = k.tab_cdf_[i - 1] + 0.5 * (j0 + j1) * dx;
                // int y * linear(y) dy over [x0, x1], exact for the interpolant
                const double m = (j1 - j0) / dx;
                const double q0 = j0 - m * x0;  // J(y) = m y + q0 on the segment
                k.tab_mom_[i] = k.tab_mom_[i - 1] + m * (x1 * x1 * x1 - x0 * x0 * x0) / 3.0 +
                                q0 * (x1 * x1 - x0 * x0) / 2.0;
            }
            break;
        }
    }
    return k;
}

// ---------------------------------------------------------------------------
// evaluation

double Kernel::raw(double ax) const {
    switch (spec_.family) {
        case Family::power_law:
            return 1.0 / (spec_.s + std::pow(ax, spec_.alpha));
        case Family::compact:
            if (ax >= spec_.a) return 0.0;
            return (spec_.shape == CompactShape::triangle)
                       ? 1.0 - ax / spec_.a
                       : std::cos(kPi * ax / (2.0 * spec_.a));
        case Family::gaussian:
            return std::exp(-ax * ax / (2.0 * spec_.sigma * spec_.sigma));
        case Family::laplace:
            return std::exp(-ax / spec_.b);
        case Family::table: {
            if (ax >= spec_.table_xmax) return 0.0;
            const double dx = tab_x_[1];
            const std::size_t i = std::min<std::size_t>(
                static_cast<std::size_t>(ax / dx), tab_x_.size() - 2);
            const double t = (ax - tab_x_[i]) / dx;
            // note: raw table values (c_ applied by the caller)
            return spec_.table_values[i] * (1.0 - t) + spec_.table_values[i + 1] * t;
        }
    }
    return 0.0;
}

double Kernel::operator()(double x) const { return c_ * raw(std::abs(x)); }

bool Kernel::compact_support() const {
    return spec_.family == Family::compact || spec_.family == Family::table;
}

double Kernel::support_radius() const {
    if (spec_.family == Family::compact) return spec_.a;
    if (spec_.family == Family::table) return spec_.table_xmax;
    return kInf;
}

// ---------------------------------------------------------------------------
// power-law integrals
//
// Far field (q = s a^{-alpha} <= 1/2): expand 1/(s+y^alpha) = y^{-alpha}
// sum_k (-s)^k y^{-alpha k} and integrate term by term. Near field: Gauss-
// Legendre after the substitution y = u^2, which removes the |y|^alpha cusp
// at the origin for fractional alpha.

double Kernel::power_cdf_near(double a) const {
    if (a <= 0.0) return 0.0;
    const double alpha = spec_.alpha, s = spec_.s, c = c_;
    auto f = [&](double u) { return 2.0 * u / (s + std::pow(u * u, alpha)); };
    return c * quad::gl_composite(f, 0.0, std::sqrt(a), 4, 24);
}

double Kernel::power_moment_near(double a) const {
    if (a <= 0.0) return 0.0;
    const double alpha = spec_.alpha, s = spec_.s, c = c_;
    auto f = [&](double u) {
        return 2.0 * u * u * u / (s + std::pow(u * u, alpha));
    };
    return c * quad::gl_composite(f, 0.0, std::sqrt(a), 4, 24);
}

double Kernel::tail_mass(double a) const {
    a = std::abs(a);
    if (a == 0.0) return 0.5;
    switch (spec_.family) {
        case Family::power_law: {
            const double alpha = spec_.alpha, s = spec_.s;
            if (alpha == 2.0)
                return c_ / std::sqrt(s) * (kPi / 2.0 - std::atan(a / std::sqrt(s)));
            if (a < near_cut_) return 0.5 - power_cdf_near(a);
            const double q = s * std::pow(a, -alpha);
            double sum = 0.0, qk = 1.0;
            for (int k = 0; k < 200; ++k) {
                const double term = qk / (alpha * (k + 1) - 1.0);
                sum += term;
                if (std::abs(term) < 1e-17 * std::abs(sum)) break;
                qk *= -q;
            }
            return c_ * std::pow(a, 1.0 - alpha) * sum;
        }
        case Family::compact: {
            if (a >= spec_.a) return 0.0;
            const double r = a / spec_.a;
            return (spec_.shape == CompactShape::triangle)
                       ? 0.5 * (1.0 - r) * (1.0 - r)
                       : 0.5 * (1.0 - std::sin(kPi * r / 2.0));
        }
        case Family::gaussian:
            return 0.5 * std::erfc(a / (spec_.sigma * std::sqrt(2.0)));
        case Family::laplace:
            return 0.5 * std::exp(-a / spec_.b);
        case Family::table: {
            if (a >= spec_.table_xmax) return 0.0;
            const double dx = tab_x_[1];
            const std::size_t i = std::min<std::size_t>(
                static_cast<std::size_t>(a / dx), tab_x_.size() - 2);
            // trapezoid piece from a to x_{i+1} of the interpolant
            const double t = (a - tab_x_[i]) / dx;
            const double ja = tab_j_[i] * (1.0 - t) + tab_j_[i + 1] * t;
            const double piece = 0.5 * (ja + tab_j_[i + 1]) * (tab_x_[i + 1] - a);
            return (tab_cdf_.back() - tab_cdf_[i + 1]) + piece;
        }
    }
    return 0.0;
}

double Kernel::moment_tail(double a) const {
    a = std::abs(a);
    switch (spec_.family) {
        case Family::power_law: {
            const double alpha = spec_.alpha, s = spec_.s;
            if (alpha <= 2.0) return kInf;
            const double start = std::max(a, near_cut_);
            const double q = s * std::pow(start, -alpha);
            double sum = 0.0, qk = 1.0;
            for (int k = 0; k < 200; ++k) {
                const double term = qk / (alpha * (k + 1) - 2.0);
                sum += term;
                if (std::abs(term) < 1e-17 * std::abs(sum)) break;
                qk *= -q;
            }
            double tail = c_ * std::pow(start, 2.0 - alpha) * sum;
            if (a < near_cut_) tail += power_moment_near(near_cut_) - power_moment_near(a);
            return tail;
        }
        case Family::compact: {
            if (a >= spec_.a) return 0.0;
            const double a0 = spec_.a;
            if (spec_.shape == CompactShape::triangle)
                return a0 / 6.0 - a * a / (2.0 * a0) + a * a * a / (3.0 * a0 * a0);
            const double kw = kPi / (2.0 * a0);
            return 0.5 * (a0 - a * std::sin(kw * a) - std::cos(kw * a) / kw);
        }
        case Family::gaussian:
            return spec_.sigma * spec_.sigma * (*this)(a);
        case Family::laplace:
            return 0.5 * (a + spec_.b) * std::exp(-a / spec_.b);
        case Family::table: {
            if (a >= spec_.table_xmax) return 0.0;
            const double dx = tab_x_[1];
            const std::size_t i = std::min<std::size_t>(
                static_cast<std::size_t>(a / dx), tab_x_.size() - 2);
            const double m = (tab_j_[i + 1] - tab_j_[i]) / dx;
            const double q0 = tab_j_[i] - m * tab_x_[i];
            const double x1 = tab_x_[i + 1];
            const double piece = m * (x1 * x1 * x1 - a * a * a) / 3.0 +
                                 q0 * (x1 * x1 - a * a) / 2.0;
            return (tab_mom_.back() - tab_mom_[i + 1]) + piece;
        }
    }
    return 0.0;
}

double Kernel::first_moment() const {
    if (spec_.family == Family::power_law) {
        const double alpha = spec_.alpha, s = spec_.s;
        if (alpha <= 2.0) return kInf;
        // int_0^inf y c/(s+y^alpha) dy = c s^{2/alpha - 1} (pi/alpha)/sin(2 pi/alpha)
        return c_ * std::pow(s, 2.0 / alpha - 1.0) * (kPi / alpha) /
               std::sin(2.0 * kPi / alpha);
    }
    return moment_tail(0.0);
}

double Kernel::tail_integral(double a) const {
    // int_a^inf T(s) ds = int_a^inf (y - a) J(y) dy = moment_tail(a) - a T(a)
    const double mt = moment_tail(a);
    if (std::isinf(mt)) return kInf;
    return mt - std::abs(a) * tail_mass(a);
}

double Kernel::power_moment_partial(double X) const {
    // int_0^X y J(y) dy for power laws of any exponent (always finite)
    const double alpha = spec_.alpha, s = spec_.s;
    if (X <= near_cut_) return power_moment_near(X);
    const double a0 = near_cut_;
    double sum = 0.0, sk = 1.0;
    for (int k = 0; k < 200; ++k) {
        const double p = 2.0 - alpha * (k + 1);
        double inc;
        if (std::abs(p) < 1e-12) {
            inc = sk * std::log(X / a0);
        } else {
            inc = sk * (std::pow(X, p) - std::pow(a0, p)) / p;
        }
        sum += inc;
        if (std::abs(inc) < 1e-17 * std::abs(sum) && k > 0) break;
        sk *= -s;
    }
    return power_moment_near(a0) + c_ * sum;
}

double Kernel::partial_tail_integral(double X) const {
    X = std::abs(X);
    if (X == 0.0) return 0.0;
    // int_0^X T = X T(X) + int_0^X y J(y) dy  (integrate by parts, T' = -J)
    double moment_part;
    if (spec_.family == Family::power_law) {
        moment_part = power_moment_partial(X);
    } else {
        moment_part = first_moment() - moment_tail(X);
    }
    return X * tail_mass(X) + moment_part;
}

// ---------------------------------------------------------------------------
// condition report

KernelReport check_conditions(const Kernel& kernel) {
    KernelReport rep;
    rep.satisfies_J = kernel(0.0) > 0.0;
    rep.first_moment = kernel.first_moment();
    rep.satisfies_J1 = std::isfinite(rep.first_moment);

    // log-log tail slope between 1e3 and 1e6, when there is any tail left
    const double j3 = kernel(1e3), j6 = kernel(1e6);
    if (j3 > 0.0 && j6 > 0.0) {
        rep.tail_exponent_estimate = -(std::log(j6) - std::log(j3)) / std::log(1e3);
    }

    if (kernel.spec().family == Family::power_law) {
        // bounds of f(x) = max{1, |x|^alpha} J(x) on a log grid; the family is
        // monotone on each side of |x| = 1, so grid extrema are global up to
        // grid resolution (and |x| = 1, where the infimum sits, is on-grid)
        const double alpha = kernel.spec().alpha;
        double lo = kInf, hi = -kInf;
        for (int k = 0; k <= 900; ++k) {
            const double x = std::pow(10.0, -3.0 + k / 100.0);
            const double f = std::max(1.0, std::pow(x, alpha)) * kernel(x);
            lo = std::min(lo, f);
            hi = std::max(hi, f);
        }
        // the supremum of x^alpha J as x -> inf is c (not attained on a grid)
        hi = std::max(hi, kernel.normalization());
        rep.K1 = lo;
        rep.K2 = hi;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// dominance

namespace {

// Decides whether sup J_other / J_dom can be finite, by family tail classes.
bool ratio_bounded(const KernelSpec& dom, const KernelSpec& other,
                   double dom_radius, double other_radius) {
    const bool dom_compact =
        dom.family == Family::compact || dom.family == Family::table;
    const bool other_compact =
        other.family == Family::compact || other.family == Family::table;
    if (other_compact) {
        // bounded iff the dominating kernel is positive on the support of the
        // other; both compact shapes vanish linearly at their edges, so equal
        // radii are fine
        if (!dom_compact) return true;
        return other_radius <= dom_radius * (1.0 + 1e-15);
    }
    if (dom_compact) return false;  // positive tail over zero tail
    auto cls = [](Family f) {
        switch (f) {
            case Family::gaussian: return 1;
            case Family::laplace: return 2;
            case Family::power_law: return 3;
            default: return 0;
        }
    };
    const int cd = cls(dom.family), co = cls(other.family);
    if (co < cd) return true;
    if (co > cd) return false;
    switch (dom.family) {
        case Family::gaussian: return other.sigma <= dom.sigma * (1.0 + 1e-15);
        case Family::laplace: return other.b <= dom.b * (1.0 + 1e-15);
        case Family::power_law: return dom.alpha <= other.alpha + 1e-12;
        default: return false;
    }
}

double ratio_sup_on_grid(const Kernel& dom, const Kernel& other, int n, double xmax) {
    // even functions: sample |x| in {0} + a log grid up to xmax
    double sup = other(0.0) / dom(0.0);
    const double lo = 1e-3;
    for (int k = 0; k <= n; ++k) {
        const double x = lo * std::pow(xmax / lo, static_cast<double>(k) / n);
        const double jo = other(x);
        if (jo <= 0.0) continue;
        sup = std::max(sup, jo / dom(x));
    }
    return sup;
}

}  // namespace

std::optional<double> dominance(const Kernel& dom, const Kernel& other, int grid_n) {
    if (!ratio_bounded(dom.spec(), other.spec(), dom.support_radius(),
                       other.support_radius()))
        return std::nullopt;

    double xmax = std::min(other.support_radius(), 1e6);
    double sup = ratio_sup_on_grid(dom, other, grid_n, xmax);
    // margin check: refine until doubling the grid no longer moves the supremum
    for (int round = 0; round < 4; ++round) {
        grid_n *= 2;
        const double sup2 = ratio_sup_on_grid(dom, other, grid_n, xmax);
        const bool settled = sup2 <= sup * (1.0 + 1e-6);
        sup = std::max(sup, sup2);
        if (settled) break;
    }

    // analytic limit of the ratio at infinity for same-class tails
    const KernelSpec& sd = dom.spec();
    const KernelSpec& so = other.spec();
    if (sd.family == so.family && sd.family == Family::power_law &&
        std::abs(sd.alpha - so.alpha) < 1e-12) {
        sup = std::max(sup, other.normalization() / dom.normalization());
    }
    return sup;
}

}  // namespace nlfront::kernels
