// Scalar model data: coefficients of the two-species system, the response
// nonlinearity G, the basic reproduction number R0, the positive equilibrium
// (u*, v*), and the linearized eigenpair that seeds the lower envelopes.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nlfront::model {

struct ModelParams {
    double d1 = 1.0;        // dispersal frequency of species u
    double d2 = 1.0;        // dispersal frequency of species v
    double a11 = 1.0;       // decay rate of u
    double a12 = 1.0;       // growth of u fed by v
    double a22 = 1.0;       // decay rate of v
    double mu = 1.0;        // boundary expansion coefficient
    double rho_flux = 1.0;  // weight of v in the boundary flux law
    double h0 = 1.0;        // initial half-length of the inhabited interval

    std::vector<std::string> validate() const;  // empty when all positive
};

enum class GFamily { monod, linear_capped, custom };

// The response G: increasing, G(0) = 0, with G(z)/z non-increasing and its
// limit at infinity below a11 a22 / a12. The saturating monod family
// b z / (1 + z) satisfies all of that strictly and is the default.
class GFunction {
public:
    static GFunction monod(double b);
    static GFunction linear_capped(double b, double cap);
    static GFunction custom(std::function<double(double)> g, double gprime0,
                            std::string label = "custom");

    double operator()(double z) const { return eval_(z); }
    double prime0() const { return gprime0_; }
    GFamily family() const { return family_; }
    double b() const { return b_; }
    double cap() const { return cap_; }
    const std::string& label() const { return label_; }

    // Samples G on a log grid and reports every violated growth condition:
    // positivity/monotonicity of G, and the decreasing-ratio condition with
    // its far-field limit test against a11 a22 / a12. The ratio test accepts
    // non-increasing (within 1e-12): the capped-linear family is constant in
    // z below its cap and is admitted deliberately.
    std::vector<std::string> check_certificates(const ModelParams& params) const;

private:
    GFunction() = default;
    GFamily family_ = GFamily::custom;
    double b_ = 0.0, cap_ = 0.0, gprime0_ = 0.0;
    std::function<double(double)> eval_;
    std::string label_;
};

struct Equilibrium {
    double R0 = 0.0;
    std::optional<double> u_star;  // set only when R0 > 1
    std::optional<double> v_star;
};

// Positive eigenpair of the linearization at (0,0), rescaled until the
// sub-solution inequalities hold with margin rho_lin on (0, 1].
struct LinearizedEigenpair {
    double rho1 = 0.0;     // principal eigenvalue of [[-a11, a12], [G'(0), -a22]]
    double delta1 = 0.0;   // eigenvector components, scaled below (u*, v*)
    double delta2 = 0.0;
    double rho_lin = 0.0;  // min{rho1 d1/(d1+d2), rho1 d2/(2(d1+d2))} in deltas
    int halvings = 0;      // how many times the vector was halved
};

double basic_reproduction_number(const ModelParams& params, const GFunction& G);

// When R0 > 1, locates u* as the root of G(u)/u = a11 a22 / a12 by bracketed
// bisection (residual < 1e-10) and sets v* = (a11/a12) u*.
Equilibrium positive_equilibrium(const ModelParams& params, const GFunction& G);

// Requires R0 > 1; throws ValidationError otherwise.
LinearizedEigenpair linearized_eigenpair(const ModelParams& params, const GFunction& G);

// The two inequalities the scaled eigenvector must satisfy, exposed for
// testing: (i) -a11 d1 + a12 d2 >= rho (d1+d2), and (ii) for all s in (0,1],
// G(s d1) - a22 s d2 >= s rho (d1+d2). Checked on a log-spaced s grid.
bool eigenpair_inequalities_hold(const ModelParams& params, const GFunction& G,
                                 double delta1, double delta2, double rho,
                                 int s_grid = 200);

}  // namespace nlfront::model
