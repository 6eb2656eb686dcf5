// Dispersal kernels: normalized even probability densities on the line,
// with analytic tail masses and moment integrals.
//
// A kernel J must be even, nonnegative, positive at the origin, and have
// unit mass. The families shipped here:
//
//   power_law(alpha, s):  J(x) = c / (s + |x|^alpha), alpha > 1 (fat tail;
//                         the first moment diverges exactly when alpha <= 2)
//   compact(shape, a):    triangle (1-|x|/a)+ or cosine arch on [-a, a]
//   gaussian(sigma), laplace(b): classical light-tailed densities
//   table(xmax, values):  piecewise-linear density sampled on [0, xmax],
//                         reflected evenly, zero beyond xmax
//
// Beyond pointwise evaluation, each kernel exposes the integrals the
// free-boundary flux law and the envelope checks need:
//
//   tail_mass(a)            = int_a^inf J(y) dy
//   moment_tail(a)          = int_a^inf y J(y) dy          (+inf if divergent)
//   first_moment()          = moment_tail(0)
//   tail_integral(a)        = int_a^inf tail_mass(s) ds    (+inf if divergent)
//   partial_tail_integral(X)= int_0^X tail_mass(s) ds      (always finite)
//
// All of these use closed forms or rapidly convergent series; quadrature
// only appears in the near field of general power laws and for tables.
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace nlfront::kernels {

enum class Family { power_law, compact, gaussian, laplace, table };
enum class CompactShape { triangle, cosine };

std::string family_name(Family f);

struct KernelSpec {
    Family family = Family::power_law;

    double alpha = 2.0;  // power_law exponent (> 1)
    double s = 1.0;      // power_law scale (> 0)

    CompactShape shape = CompactShape::triangle;
    double a = 1.0;  // compact support half-width (> 0)

    double sigma = 1.0;  // gaussian
    double b = 1.0;      // laplace

    std::vector<double> table_values;  // raw density samples at uniform x in [0, xmax]
    double table_xmax = 1.0;

    static KernelSpec power(double alpha, double s = 1.0);
    static KernelSpec triangle(double a);
    static KernelSpec cosine(double a);
    static KernelSpec gauss(double sigma);
    static KernelSpec laplacian(double b);
    static KernelSpec sampled(double xmax, std::vector<double> values);

    // Collects every violated precondition (empty when valid).
    std::vector<std::string> validate() const;
};

class Kernel {
public:
    double operator()(double x) const;  // normalized density, exactly even
    double normalization() const { return c_; }
    const KernelSpec& spec() const { return spec_; }

    double tail_mass(double a) const;
    double moment_tail(double a) const;
    double first_moment() const;
    double tail_integral(double a) const;
    double partial_tail_integral(double X) const;

    bool compact_support() const;
    double support_radius() const;  // +inf when unbounded

private:
    friend Kernel normalize(const KernelSpec& spec);
    Kernel() = default;

    double raw(double ax) const;              // unnormalized shape at |x|
    double power_cdf_near(double a) const;    // int_0^a J for power laws, a <= near_cut_
    double power_moment_near(double a) const; // int_0^a yJ for power laws, a <= near_cut_
    double power_moment_partial(double X) const;  // int_0^X yJ, any X >= 0

    KernelSpec spec_;
    double c_ = 0.0;         // normalization constant
    double near_cut_ = 0.0;  // power_law: series valid for a >= near_cut_

    // table kernels: node positions and cumulative integrals of J and yJ
    std::vector<double> tab_x_, tab_j_, tab_cdf_, tab_mom_;
};

// Builds a unit-mass kernel from a spec; throws ValidationError when the
// spec is rejected (non-integrable exponent, negative samples, ...).
Kernel normalize(const KernelSpec& spec);

struct KernelReport {
    bool satisfies_J = false;
    double first_moment = 0.0;  // +inf flags a divergent moment
    bool satisfies_J1 = false;  // finite first moment
    std::optional<double> tail_exponent_estimate;
    std::optional<double> K1, K2;  // power_law: bounds of max{1,|x|^alpha} J(x)
};

KernelReport check_conditions(const Kernel& kernel);

// Least C with J_other <= C * J_dom, when such a C exists. Boundedness is
// decided by comparing family tail classes; the constant itself is a grid
// supremum of the ratio, margin-checked by re-evaluation at doubled
// resolution. Returns nullopt when the ratio is unbounded.
std::optional<double> dominance(const Kernel& dom, const Kernel& other, int grid_n = 2048);

}  // namespace nlfront::kernels
