#ifndef CAVLAB_ENERGY_MODELS_HPP
#define CAVLAB_ENERGY_MODELS_HPP

#include <array>

namespace cavlab {

// Compressible stored-energy data: distortional part
//   Phi(v1,v2,v3) = mu*(v1^p + v2^p + v3^p)
// and volumetric part
//   h(d) = c1*d^gamma + c2*d^(-delta),
// strictly convex on (0,inf) with a single stress-free determinant d0.
struct MaterialModel {
    double mu    = 1.0;  // stiffness coefficient, >= 0
    double p     = 2.0;  // distortional exponent, 1 <= p < 3
    double c1    = 1.0;  // growth coefficient of h, > 0
    double c2    = 2.0;  // blow-up coefficient of h, > 0
    double gamma = 2.0;  // growth exponent, > 1
    double delta = 2.0;  // blow-up exponent, > 0

    // Throws std::invalid_argument if a parameter is out of range.
    void validate() const;
};

// Penalty data for the decoupled functional: the phase field v is charged
//   (eps^alpha/alpha)*|v'|^alpha + (1/(q*eps^q))*phi_tau(v),
// with phi_tau(v) = K*v^2*(v-tau)^2 on [0,tau], zero above tau, and
// (extended form only) M*v^2 below zero.  K normalizes max phi_tau = 1.
struct PenaltyModel {
    double eps   = 1e-3;
    double tau   = 3.0;
    double alpha = 2.0;
    double q     = 2.0;   // conjugate exponent: 1/alpha + 1/q = 1
    double K     = 16.0 / 81.0;
    double M     = 0.0;   // negative-branch weight, used by the extended form

    void validate() const;

    // Builds a consistent model: q from alpha, K from tau.
    static PenaltyModel make(double eps, double tau, double alpha = 2.0,
                             double M = 0.0);
};

struct ValueAndDerivative {
    double value = 0.0;
    double derivative = 0.0;
};

// h(d) and h'(d).  d <= 0 signals an infeasible determinant.
ValueAndDerivative h_eval(double d, const MaterialModel& model);

// The stress-free determinant (delta*c2/(gamma*c1))^(1/(gamma+delta)),
// the unique minimizer of h.
double d0_of(const MaterialModel& model);

// c2 making the reference configuration stress free: (p*mu + gamma*c1)/delta.
double stress_free_c2(double mu, double p, double gamma, double delta,
                      double c1);

// phi_tau and its derivative; the derivative is 0 at both junctions v=0 and
// v=tau.  With extended=false the function vanishes for v < 0.
ValueAndDerivative phi_tau_eval(double v, const PenaltyModel& pen,
                                bool extended = false);

// 16/tau^4: max of v^2*(v-tau)^2 on [0,tau] is tau^4/16, attained at tau/2.
double k_normalizer(double tau);

struct OgdenValue {
    double value = 0.0;
    std::array<double, 3> partials{};
};

// mu*(v1^p+v2^p+v3^p) with partials mu*p*vi^(p-1); arguments must be > 0.
OgdenValue ogden_phi(double v1, double v2, double v3,
                     const MaterialModel& model);

// H_tau(s) = integral of phi_tau^(1/q) from 0 to s, by composite Simpson
// quadrature with at least 1000 panels.  Constant for s >= tau.
double H_tau(double s, const PenaltyModel& pen);

}  // namespace cavlab

#endif
