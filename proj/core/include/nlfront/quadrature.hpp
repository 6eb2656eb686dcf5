// Small quadrature toolkit: Gauss-Legendre panels and helpers used to
// normalize kernels, build oracle integrals in tests, and evaluate the
// near-field pieces of tail masses.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace nlfront::quad {

// Nodes/weights of the n-point Gauss-Legendre rule on [-1, 1].
// Computed once per n by Newton iteration on the Legendre polynomial and
// cached; accurate to machine precision for n <= 128.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

// \int_a^b f dx by a single n-point Gauss-Legendre panel.
double gl_panel(const std::function<double(double)>& f, double a, double b, int n = 32);

// \int_a^b f dx by `panels` equal Gauss-Legendre panels of n points each.
double gl_composite(const std::function<double(double)>& f, double a, double b,
                    int panels, int n = 32);

// \int_a^b f dx with panel boundaries placed geometrically between a and b
// (a > 0 required); suited to integrands that decay like a power of x.
double gl_geometric(const std::function<double(double)>& f, double a, double b,
                    int panels, int n = 32);

}  // namespace nlfront::quad
