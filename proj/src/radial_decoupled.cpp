#include "cavlab/radial_decoupled.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

namespace cavlab {

namespace {

double pow_abs_signed(double x, double e) {
    // |x|^e * sgn(x), the derivative kernel of |x|^(e+1)/(e+1)
    if (x == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(x), e), x);
}

}  // namespace

DecoupledEnergyParts energy_decoupled(const RadialField& field,
                                      const PenaltyModel& pen,
                                      const MaterialModel& model) {
    const auto& g = field.grid;
    for (double vi : field.v)
        if (vi < 0.0)
            throw std::domain_error("energy_decoupled: negative phase value");
    const double eps_a = std::pow(pen.eps, pen.alpha) / pen.alpha;
    const double phi_w = 1.0 / (pen.q * std::pow(pen.eps, pen.q));

    DecoupledEnergyParts parts;
    for (int i = 1; i <= g.m; ++i) {
        const CellQuantities c = cell_quantities(field, i);
        if (!(c.det - c.v_mid > 0.0))
            throw std::domain_error("energy_decoupled: infeasible determinant");
        const double w = g.h_step * c.R_mid * c.R_mid;
        parts.tilde += w * ogden_phi(c.slope, c.ratio, c.ratio, model).value;
        parts.h_part += w * h_eval(c.det - c.v_mid, model).value;
        parts.grad_v += w * eps_a * std::pow(std::abs(c.v_slope), pen.alpha);
        parts.phi += w * phi_w * phi_tau_eval(c.v_mid, pen).value;
    }
    return parts;
}

Eigen::VectorXd pack_free(const RadialField& field) {
    const int m = field.grid.m;
    Eigen::VectorXd x(2 * m - 1);
    for (int j = 1; j <= m - 1; ++j) x[j - 1] = field.r[j];
    for (int j = 0; j <= m - 1; ++j) x[m - 1 + j] = field.v[j];
    return x;
}

RadialField unpack_free(const Eigen::VectorXd& x, const RadialGrid& grid,
                        double lambda) {
    RadialField f(grid);
    const int m = grid.m;
    f.r[0] = 0.0;
    for (int j = 1; j <= m - 1; ++j) f.r[j] = x[j - 1];
    f.r[m] = lambda;
    for (int j = 0; j <= m - 1; ++j) f.v[j] = x[m - 1 + j];
    f.v[m] = 0.0;
    return f;
}

Eigen::VectorXd grad_decoupled(const RadialField& field,
                               const PenaltyModel& pen,
                               const MaterialModel& model) {
    const auto& g = field.grid;
    const int m = g.m;
    const double eps_a = std::pow(pen.eps, pen.alpha);
    const double phi_w = 1.0 / (pen.q * std::pow(pen.eps, pen.q));

    Eigen::VectorXd grad = Eigen::VectorXd::Zero(2 * m - 1);
    auto r_slot = [m](int j) { return j - 1; };      // r_j, j in 1..m-1
    auto v_slot = [m](int j) { return m - 1 + j; };  // v_j, j in 0..m-1

    for (int i = 1; i <= m; ++i) {
        const CellQuantities c = cell_quantities(field, i);
        const double w = g.h_step * c.R_mid * c.R_mid;
        const auto phi = ogden_phi(c.slope, c.ratio, c.ratio, model);
        const double hp = h_eval(c.det - c.v_mid, model).derivative;
        const double sigma = 1.0 / (g.node(i) + g.node(i - 1));

        const double ratio_term = (phi.partials[1] + phi.partials[2]) * sigma +
                                  hp * 2.0 * c.slope * c.ratio * sigma;
        const double slope_term =
            (phi.partials[0] + hp * c.ratio * c.ratio) / g.h_step;
        if (i <= m - 1) grad[r_slot(i)] += w * (slope_term + ratio_term);
        if (i >= 2) grad[r_slot(i - 1)] += w * (-slope_term + ratio_term);

        const double dv_term =
            eps_a * pow_abs_signed(c.v_slope, pen.alpha - 1.0) / g.h_step;
        const double react_term =
            0.5 * (-hp + phi_w * phi_tau_eval(c.v_mid, pen).derivative);
        if (i <= m - 1) grad[v_slot(i)] += w * (dv_term + react_term);
        grad[v_slot(i - 1)] += w * (-dv_term + react_term);
    }
    return grad;
}

namespace {

RadialField cavity_seed(const RadialGrid& grid, double lambda,
                        const MaterialModel& model) {
    // Constant-determinant profile with det == d0 away from the first cell;
    // the first cell takes the whole volume jump, shielded by a one-cell
    // phase cliff v_0 = 2*(det_1 - d0) so that h sits at its minimum there.
    const double d0 = d0_of(model);
    const double r0 = std::cbrt(lambda * lambda * lambda - d0);
    RadialField f(grid);
    const double a = lambda * lambda * lambda - r0 * r0 * r0;
    f.r[0] = 0.0;
    for (int i = 1; i <= grid.m; ++i) {
        const double R = grid.node(i);
        f.r[i] = std::cbrt(r0 * r0 * r0 + a * R * R * R);
    }
    const CellQuantities c1 = cell_quantities(f, 1);
    f.v[0] = std::max(2.0 * (c1.det - d0), 0.0);
    return f;
}

DecoupledRun run_decoupled_from(double lambda, const PenaltyModel& pen,
                                const MaterialModel& model,
                                const RadialGrid& grid,
                                const RadialField& init,
                                const OptOptions& opts) {
    const int m = grid.m;
    OptProblem prob;
    prob.dim = 2 * m - 1;
    prob.x0 = pack_free(init);
    prob.lower_bounds = Eigen::VectorXd::Constant(
        2 * m - 1, -std::numeric_limits<double>::infinity());
    for (int j = 0; j <= m - 1; ++j) prob.lower_bounds[m - 1 + j] = 0.0;

    prob.feasibility = [&grid, lambda](const Eigen::VectorXd& x) {
        return field_feasible(unpack_free(x, grid, lambda));
    };
    prob.objective = [&grid, lambda, &pen, &model](const Eigen::VectorXd& x,
                                                   Eigen::VectorXd* g) {
        const RadialField f = unpack_free(x, grid, lambda);
        if (g) *g = grad_decoupled(f, pen, model);
        return energy_decoupled(f, pen, model).total();
    };

    DecoupledRun run;
    run.lambda = lambda;
    run.pen = pen;
    run.model = model;
    run.init = init;
    run.report = minimize(prob, opts);
    run.result = unpack_free(run.report.x_final, grid, lambda);
    run.parts = energy_decoupled(run.result, pen, model);
    run.energy = run.parts.total();
    run.first_slope = cell_quantities(run.result, 1).slope;
    return run;
}

}  // namespace

DecoupledRun minimize_decoupled(double lambda, const PenaltyModel& pen,
                                const MaterialModel& model,
                                const RadialGrid& grid,
                                const RadialField& init,
                                const DecoupledOptions& opts) {
    pen.validate();
    model.validate();
    if (!field_feasible(init))
        throw std::invalid_argument("minimize_decoupled: infeasible init");

    DecoupledRun best =
        run_decoupled_from(lambda, pen, model, grid, init, opts.opt);
    const double d0 = d0_of(model);
    if (opts.cavity_start && lambda * lambda * lambda > d0 + 1e-9) {
        const RadialField seed = cavity_seed(grid, lambda, model);
        if (field_feasible(seed)) {
            DecoupledRun cav =
                run_decoupled_from(lambda, pen, model, grid, seed, opts.opt);
            if (cav.energy < best.energy) best = cav;
        }
    }
    return best;
}

DecoupledRun minimize_decoupled(double lambda, const PenaltyModel& pen,
                                const MaterialModel& model,
                                const RadialGrid& grid,
                                const DecoupledOptions& opts) {
    return minimize_decoupled(lambda, pen, model, grid,
                              affine_field(grid, lambda), opts);
}

ElResidual el_residual(const RadialField& field, const PenaltyModel& pen,
                       const MaterialModel& model) {
    const auto& g = field.grid;
    const int m = g.m;
    const double eps_a = std::pow(pen.eps, pen.alpha);
    const double phi_w = 1.0 / (pen.q * std::pow(pen.eps, pen.q));

    // Nodal quantities with central slopes (one-sided at the ends).
    std::vector<double> slope(m + 1), ratio(m + 1), flux_r(m + 1),
        flux_v(m + 1), phi2(m + 1), phi4(m + 1);
    for (int i = 0; i <= m; ++i) {
        if (i == 0)
            slope[i] = (field.r[1] - field.r[0]) / g.h_step;
        else if (i == m)
            slope[i] = (field.r[m] - field.r[m - 1]) / g.h_step;
        else
            slope[i] = (field.r[i + 1] - field.r[i - 1]) / (2.0 * g.h_step);
        ratio[i] = (i == 0) ? slope[0] : field.r[i] / g.node(i);

        const double det = slope[i] * ratio[i] * ratio[i];
        const auto phi = ogden_phi(std::max(slope[i], 1e-300), ratio[i],
                                   ratio[i], model);
        const double hp = h_eval(det - field.v[i], model).derivative;
        const double R = g.node(i);
        flux_r[i] = R * R * (phi.partials[0] + hp * ratio[i] * ratio[i]);
        phi2[i] = phi.partials[1] + hp * slope[i] * ratio[i];
        phi4[i] = -hp;

        double vs;
        if (i == 0)
            vs = (field.v[1] - field.v[0]) / g.h_step;
        else if (i == m)
            vs = (field.v[m] - field.v[m - 1]) / g.h_step;
        else
            vs = (field.v[i + 1] - field.v[i - 1]) / (2.0 * g.h_step);
        flux_v[i] = R * R * pow_abs_signed(vs, pen.alpha - 1.0);
    }

    ElResidual res;
    res.res_r.resize(m - 1);
    res.res_v.resize(m - 1);
    for (int i = 1; i <= m - 1; ++i) {
        const double R = g.node(i);
        res.res_r[i - 1] =
            (flux_r[i + 1] - flux_r[i - 1]) / (2.0 * g.h_step) -
            2.0 * R * phi2[i];
        const double phid = phi_tau_eval(field.v[i], pen).derivative;
        res.res_v[i - 1] =
            std::sqrt(std::max(field.v[i], 0.0)) *
            (eps_a * (flux_v[i + 1] - flux_v[i - 1]) / (2.0 * g.h_step) -
             R * R * (phi4[i] + phi_w * phid));
    }
    return res;
}

GammaPair gamma_test_pair(double delta, double beta1, double lambda,
                          const RadialField& r_c_field,
                          const MaterialModel& model,
                          const PenaltyModel& pen_template) {
    if (!(delta > 0.0 && delta < 0.5))
        throw std::invalid_argument("gamma_test_pair: delta outside (0, 0.5)");
    const double q = pen_template.q;
    if (!(beta1 > std::max(3.0 * model.gamma - 2.0, q)))
        throw std::invalid_argument(
            "gamma_test_pair: beta1 must exceed max(3*gamma - 2, q)");

    const double d0 = d0_of(model);

    // r_c(delta) by linear interpolation on the classical field.
    const auto rc_at = [&r_c_field](double R) {
        const auto& gg = r_c_field.grid;
        const double pos = std::min(R / gg.h_step, (double)gg.m);
        const int k = std::min((int)pos, gg.m - 1);
        const double w = pos - k;
        return (1.0 - w) * r_c_field.r[k] + w * r_c_field.r[k + 1];
    };

    const double core_slope = rc_at(delta) / delta;
    const double tau = core_slope * core_slope * core_slope - d0;
    if (!(tau > 0.0))
        throw std::invalid_argument(
            "gamma_test_pair: delta too large, core determinant below d0");
    const double eta = std::pow(delta, beta1);
    const double alpha = pen_template.alpha;
    const double eps =
        std::pow(delta, ((beta1 + 3.0) * alpha + beta1) / (alpha + q));

    // Fine enough to resolve the ramp width eta (capped for memory).
    const long long wanted = (long long)std::ceil(4.0 / eta);
    const int m_fine =
        (int)std::min<long long>(std::max<long long>(wanted, r_c_field.grid.m),
                                 4000000);
    RadialGrid fine(m_fine);

    GammaPair out;
    out.eps = eps;
    out.tau = tau;
    out.eta = eta;
    out.field = RadialField(fine);
    for (int i = 0; i <= m_fine; ++i) {
        const double R = fine.node(i);
        out.field.r[i] = (R <= delta) ? core_slope * R : rc_at(R);
        if (R <= delta - eta)
            out.field.v[i] = tau;
        else if (R < delta)
            out.field.v[i] = tau / eta * (delta - R);
        else
            out.field.v[i] = 0.0;
    }

    PenaltyModel pen = PenaltyModel::make(eps, tau, alpha, pen_template.M);
    out.parts = energy_decoupled(out.field, pen, model);
    out.energy = out.parts.total();
    return out;
}

std::vector<Table1Row> table1_sweep(double lambda, double tau,
                                    const std::vector<double>& eps2_list,
                                    const MaterialModel& model,
                                    const RadialGrid& grid,
                                    const DecoupledOptions& opts) {
    std::vector<Table1Row> rows(eps2_list.size());

    auto run_row = [&](std::size_t k) {
        Table1Row& row = rows[k];
        row.eps2 = eps2_list[k];
        try {
            const PenaltyModel pen =
                PenaltyModel::make(std::sqrt(eps2_list[k]), tau);
            const DecoupledRun run =
                minimize_decoupled(lambda, pen, model, grid, opts);
            row.energy = run.energy;
            row.dr_half = run.first_slope;
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.message = e.what();
        }
    };

    int threads = 1;
    if (const char* env = std::getenv("CAVLAB_THREADS"))
        threads = std::max(1, std::atoi(env));
    threads = std::min<int>(threads, (int)rows.size());

    if (threads <= 1) {
        for (std::size_t k = 0; k < rows.size(); ++k) run_row(k);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t]() {
                for (std::size_t k = t; k < rows.size(); k += threads)
                    run_row(k);
            });
        for (auto& th : pool) th.join();
    }
    return rows;
}

}  // namespace cavlab
