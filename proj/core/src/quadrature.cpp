#include "nlfront/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace nlfront::quad {

namespace {

GaussRule compute_rule(int n) {
    // Roots of P_n via Newton from the Chebyshev-like initial guess; the
    // classical weight formula 2 / ((1-x^2) P_n'(x)^2) finishes the job.
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Evaluate P_n and P_n' by the three-term recurrence.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1 || n > 256) throw std::invalid_argument("gauss_legendre: order out of range");
    static std::map<int, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

double gl_panel(const std::function<double(double)>& f, double a, double b, int n) {
    const GaussRule& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

double gl_composite(const std::function<double(double)>& f, double a, double b,
                    int panels, int n) {
    if (panels < 1) throw std::invalid_argument("gl_composite: panels < 1");
    double sum = 0.0;
    const double step = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        sum += gl_panel(f, a + p * step, a + (p + 1) * step, n);
    }
    return sum;
}

double gl_geometric(const std::function<double(double)>& f, double a, double b,
                    int panels, int n) {
    if (!(a > 0.0) || !(b > a)) throw std::invalid_argument("gl_geometric: need 0 < a < b");
    if (panels < 1) throw std::invalid_argument("gl_geometric: panels < 1");
    const double ratio = std::pow(b / a, 1.0 / panels);
    double lo = a, sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double hi = (p + 1 == panels) ? b : lo * ratio;
        sum += gl_panel(f, lo, hi, n);
        lo = hi;
    }
    return sum;
}

}  // namespace nlfront::quad
