#include "cavlab/radial_classical.hpp"

#include <cmath>
#include <stdexcept>

namespace cavlab {

RadialEnergyParts energy_rad_parts(const RadialField& field,
                                   const MaterialModel& model) {
    const auto& g = field.grid;
    RadialEnergyParts parts;
    for (int i = 1; i <= g.m; ++i) {
        const CellQuantities c = cell_quantities(field, i);
        if (!(c.det - c.v_mid > 0.0))
            throw std::domain_error("energy_rad: infeasible determinant");
        const double w = g.h_step * c.R_mid * c.R_mid;
        parts.tilde += w * ogden_phi(c.slope, c.ratio, c.ratio, model).value;
        parts.h_part += w * h_eval(c.det - c.v_mid, model).value;
    }
    return parts;
}

double energy_rad(const RadialField& field, const MaterialModel& model) {
    return energy_rad_parts(field, model).total();
}

Eigen::VectorXd energy_rad_gradient(const RadialField& field,
                                    const MaterialModel& model) {
    const auto& g = field.grid;
    const int m = g.m;
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(m);  // d/dr_j, j = 0..m-1
    for (int i = 1; i <= m; ++i) {
        const CellQuantities c = cell_quantities(field, i);
        const double w = g.h_step * c.R_mid * c.R_mid;
        const auto phi = ogden_phi(c.slope, c.ratio, c.ratio, model);
        const double hp = h_eval(c.det - c.v_mid, model).derivative;
        const double sigma = 1.0 / (g.node(i) + g.node(i - 1));
        const double ratio_term =
            (phi.partials[1] + phi.partials[2]) * sigma +
            hp * 2.0 * c.slope * c.ratio * sigma;
        const double slope_term =
            (phi.partials[0] + hp * c.ratio * c.ratio) / g.h_step;
        // upper node r_i
        if (i <= m - 1) grad[i] += w * (slope_term + ratio_term);
        // lower node r_{i-1}
        grad[i - 1] += w * (-slope_term + ratio_term);
    }
    return grad;
}

namespace {

RadialField cavity_profile(const RadialGrid& grid, double lambda,
                           double r0_guess) {
    // Constant-determinant ansatz (r0^3 + (lambda^3 - r0^3) R^3)^(1/3).
    RadialField f(grid);
    const double a = lambda * lambda * lambda - r0_guess * r0_guess * r0_guess;
    for (int i = 0; i <= grid.m; ++i) {
        const double R = grid.node(i);
        f.r[i] = std::cbrt(r0_guess * r0_guess * r0_guess + a * R * R * R);
    }
    return f;
}

ClassicalResult run_from(const RadialField& start, double lambda,
                         const MaterialModel& model, const RadialGrid& grid,
                         const OptOptions& opts) {
    const int m = grid.m;
    OptProblem prob;
    prob.dim = m;  // r_0 .. r_{m-1}
    prob.x0 = Eigen::VectorXd(m);
    for (int j = 0; j < m; ++j) prob.x0[j] = start.r[j];
    prob.lower_bounds = Eigen::VectorXd::Constant(
        m, -std::numeric_limits<double>::infinity());
    prob.lower_bounds[0] = 0.0;

    auto unpack = [lambda, grid](const Eigen::VectorXd& x) {
        RadialField f(grid);
        for (int j = 0; j < grid.m; ++j) f.r[j] = x[j];
        f.r[grid.m] = lambda;
        return f;
    };
    prob.feasibility = [unpack](const Eigen::VectorXd& x) {
        return field_feasible(unpack(x));
    };
    prob.objective = [unpack, &model](const Eigen::VectorXd& x,
                                      Eigen::VectorXd* g) {
        const RadialField f = unpack(x);
        if (g) *g = energy_rad_gradient(f, model);
        return energy_rad(f, model);
    };

    ClassicalResult res;
    res.report = minimize(prob, opts);
    res.field = unpack(res.report.x_final);
    res.energy = res.report.f_final;
    res.cavity_radius = res.field.r[0];
    return res;
}

}  // namespace

ClassicalResult minimize_classical(double lambda, const MaterialModel& model,
                                   const RadialGrid& grid,
                                   const OptOptions& opts) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("minimize_classical: lambda must be > 0");
    model.validate();

    ClassicalResult best =
        run_from(affine_field(grid, lambda), lambda, model, grid, opts);
    ClassicalResult cav = run_from(cavity_profile(grid, lambda, 0.5 * lambda),
                                   lambda, model, grid, opts);
    if (cav.energy < best.energy) best = cav;
    return best;
}

double fluid_radial_exact(double lambda, double d0, double R) {
    if (lambda * lambda > d0)
        return std::sqrt(d0 * R * R + lambda * lambda - d0);
    return lambda * R;
}

}  // namespace cavlab
