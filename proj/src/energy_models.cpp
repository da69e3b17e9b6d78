#include "cavlab/energy_models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cavlab {

void MaterialModel::validate() const {
    if (!(mu >= 0.0)) throw std::invalid_argument("material: mu must be >= 0");
    if (!(p >= 1.0 && p < 3.0))
        throw std::invalid_argument("material: p must lie in [1, 3)");
    if (!(c1 > 0.0)) throw std::invalid_argument("material: c1 must be > 0");
    if (!(c2 > 0.0)) throw std::invalid_argument("material: c2 must be > 0");
    if (!(gamma > 1.0))
        throw std::invalid_argument("material: gamma must be > 1");
    if (!(delta > 0.0))
        throw std::invalid_argument("material: delta must be > 0");
}

void PenaltyModel::validate() const {
    if (!(eps > 0.0)) throw std::invalid_argument("penalty: eps must be > 0");
    if (!(tau > 0.0)) throw std::invalid_argument("penalty: tau must be > 0");
    if (!(alpha > 1.0))
        throw std::invalid_argument("penalty: alpha must be > 1");
    if (std::abs(1.0 / alpha + 1.0 / q - 1.0) > 1e-12)
        throw std::invalid_argument("penalty: 1/alpha + 1/q != 1");
    if (!(M >= 0.0)) throw std::invalid_argument("penalty: M must be >= 0");
}

PenaltyModel PenaltyModel::make(double eps, double tau, double alpha,
                                double M) {
    PenaltyModel pen;
    pen.eps = eps;
    pen.tau = tau;
    pen.alpha = alpha;
    pen.q = alpha / (alpha - 1.0);
    pen.K = k_normalizer(tau);
    pen.M = M;
    pen.validate();
    return pen;
}

ValueAndDerivative h_eval(double d, const MaterialModel& m) {
    if (!(d > 0.0))
        throw std::domain_error("h_eval: nonpositive determinant d = " +
                                std::to_string(d));
    const double dg = std::pow(d, m.gamma);
    const double dd = std::pow(d, -m.delta);
    ValueAndDerivative out;
    out.value = m.c1 * dg + m.c2 * dd;
    out.derivative = m.gamma * m.c1 * dg / d - m.delta * m.c2 * dd / d;
    return out;
}

double d0_of(const MaterialModel& m) {
    return std::pow(m.delta * m.c2 / (m.gamma * m.c1),
                    1.0 / (m.gamma + m.delta));
}

double stress_free_c2(double mu, double p, double gamma, double delta,
                      double c1) {
    return (p * mu + gamma * c1) / delta;
}

double k_normalizer(double tau) {
    return 16.0 / (tau * tau * tau * tau);
}

ValueAndDerivative phi_tau_eval(double v, const PenaltyModel& pen,
                                bool extended) {
    ValueAndDerivative out;
    if (v < 0.0) {
        if (extended) {
            out.value = pen.M * v * v;
            out.derivative = 2.0 * pen.M * v;
        }
        return out;
    }
    if (v >= pen.tau) return out;
    const double w = v - pen.tau;
    out.value = pen.K * v * v * w * w;
    out.derivative = 2.0 * pen.K * v * w * (2.0 * v - pen.tau);
    return out;
}

OgdenValue ogden_phi(double v1, double v2, double v3,
                     const MaterialModel& m) {
    if (!(v1 > 0.0 && v2 > 0.0 && v3 > 0.0))
        throw std::domain_error("ogden_phi: nonpositive principal stretch");
    OgdenValue out;
    const std::array<double, 3> v{v1, v2, v3};
    for (int i = 0; i < 3; ++i) {
        const double vp = std::pow(v[i], m.p);
        out.value += m.mu * vp;
        out.partials[i] = m.mu * m.p * vp / v[i];
    }
    return out;
}

double H_tau(double s, const PenaltyModel& pen) {
    if (s < 0.0) throw std::domain_error("H_tau: s must be >= 0");
    const double upper = std::min(s, pen.tau);  // supp phi_tau in (0, tau)
    if (upper <= 0.0) return 0.0;
    const int panels = 1000;
    const double hstep = upper / panels;
    const double inv_q = 1.0 / pen.q;
    auto f = [&](double t) {
        return std::pow(phi_tau_eval(t, pen).value, inv_q);
    };
    double acc = f(0.0) + f(upper);
    for (int i = 1; i < panels; ++i)
        acc += (i % 2 ? 4.0 : 2.0) * f(i * hstep);
    return acc * hstep / 3.0;
}

}  // namespace cavlab
