#include "cavlab/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace cavlab {

namespace {

void project_bounds(const Eigen::VectorXd& lb, Eigen::VectorXd& x) {
    if (lb.size() == 0) return;
    x = x.cwiseMax(lb);
}

// At an active lower bound only the components pointing into the feasible
// set count toward stationarity.
Eigen::VectorXd projected_gradient(const Eigen::VectorXd& g,
                                   const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& lb) {
    if (lb.size() == 0) return g;
    Eigen::VectorXd pg = g;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (x[i] <= lb[i]) pg[i] = std::min(g[i], 0.0);
    return pg;
}

struct LbfgsMemory {
    std::deque<Eigen::VectorXd> s, y;
    std::deque<double> rho;
    double gamma = 1.0;
    int capacity = 10;

    void push(const Eigen::VectorXd& si, const Eigen::VectorXd& yi) {
        const double sy = si.dot(yi);
        if (!(sy > 1e-12 * si.norm() * yi.norm())) return;  // curvature guard
        s.push_back(si);
        y.push_back(yi);
        rho.push_back(1.0 / sy);
        gamma = sy / yi.squaredNorm();
        if ((int)s.size() > capacity) {
            s.pop_front();
            y.pop_front();
            rho.pop_front();
        }
    }

    Eigen::VectorXd apply(const Eigen::VectorXd& g) const {
        Eigen::VectorXd q = g;
        const int k = (int)s.size();
        std::vector<double> a(k);
        for (int i = k - 1; i >= 0; --i) {
            a[i] = rho[i] * s[i].dot(q);
            q -= a[i] * y[i];
        }
        q *= gamma;
        for (int i = 0; i < k; ++i) {
            const double b = rho[i] * y[i].dot(q);
            q += (a[i] - b) * s[i];
        }
        return q;
    }
};

}  // namespace

OptReport minimize(const OptProblem& problem, const OptOptions& opts) {
    const auto& lb = problem.lower_bounds;
    auto feasible = [&](const Eigen::VectorXd& x) {
        return !problem.feasibility || problem.feasibility(x);
    };

    Eigen::VectorXd x = problem.x0;
    if (lb.size() != 0 && (x.array() < lb.array()).any())
        throw std::invalid_argument("minimize: x0 violates lower bounds");
    if (!feasible(x))
        throw std::invalid_argument("minimize: x0 fails feasibility oracle");

    constexpr double armijo_c = 1e-4;
    constexpr int max_halvings = 60;

    LbfgsMemory mem;
    mem.capacity = std::max(1, opts.memory);
    const int window = std::max(1, opts.nonmonotone_window);

    OptReport rep;
    Eigen::VectorXd g(x.size());
    double f = problem.objective(x, &g);
    rep.f_history.push_back(f);
    Eigen::VectorXd pg = projected_gradient(g, x, lb);

    for (int iter = 0; iter < opts.max_iter; ++iter) {
        rep.iterations = iter;
        if (pg.lpNorm<Eigen::Infinity>() < opts.grad_tol) {
            rep.stop_reason = StopReason::gradient_tol;
            rep.converged = true;
            rep.x_final = x;
            rep.f_final = f;
            return rep;
        }

        Eigen::VectorXd d = -mem.apply(pg);
        if (!(d.dot(g) < 0.0)) d = -pg;  // fall back to steepest descent

        const double f_ref =
            *std::max_element(rep.f_history.end() -
                                  std::min<std::size_t>(window,
                                                        rep.f_history.size()),
                              rep.f_history.end());

        double t = 1.0;
        Eigen::VectorXd x_trial;
        double f_trial = f;
        bool accepted = false;
        for (int halving = 0; halving < max_halvings; ++halving) {
            x_trial = x + t * d;
            project_bounds(lb, x_trial);
            if (feasible(x_trial)) {
                const double slope = g.dot(x_trial - x);
                if (slope < 0.0) {
                    f_trial = problem.objective(x_trial, nullptr);
                    if (f_trial <= f_ref + armijo_c * slope) {
                        accepted = true;
                        break;
                    }
                }
            }
            t *= 0.5;
        }
        if (!accepted) {
            rep.stop_reason = StopReason::step_tol;
            rep.converged = true;
            rep.x_final = x;
            rep.f_final = f;
            return rep;
        }

        const Eigen::VectorXd step = x_trial - x;
        Eigen::VectorXd g_new(x.size());
        f = problem.objective(x_trial, &g_new);
        Eigen::VectorXd pg_new = projected_gradient(g_new, x_trial, lb);
        mem.push(step, pg_new - pg);

        x = x_trial;
        g = g_new;
        pg = pg_new;
        rep.f_history.push_back(f);

        if (step.lpNorm<Eigen::Infinity>() < opts.step_tol) {
            rep.stop_reason = StopReason::step_tol;
            rep.converged = true;
            rep.x_final = x;
            rep.f_final = f;
            rep.iterations = iter + 1;
            return rep;
        }
    }

    rep.stop_reason = StopReason::max_iter;
    rep.converged = false;
    rep.x_final = x;
    rep.f_final = f;
    rep.iterations = opts.max_iter;
    return rep;
}

double grad_check(const Objective& objective, const Eigen::VectorXd& x,
                  double fd_step) {
    Eigen::VectorXd g(x.size());
    objective(x, &g);

    double worst = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        double h = fd_step;
        bool done = false;
        for (int attempt = 0; attempt < 8 && !done; ++attempt) {
            Eigen::VectorXd xp = x, xm = x;
            xp[i] += h;
            xm[i] -= h;
            try {
                const double fp = objective(xp, nullptr);
                const double fm = objective(xm, nullptr);
                const double num = (fp - fm) / (2.0 * h);
                const double denom =
                    std::max({std::abs(num), std::abs(g[i]), 1e-10});
                worst = std::max(worst, std::abs(num - g[i]) / denom);
                done = true;
            } catch (const std::domain_error&) {
                h *= 0.5;  // stencil left the feasible set
            }
        }
        if (!done)
            throw std::runtime_error(
                "grad_check: stencil infeasible after 8 shrinks");
    }
    return worst;
}

}  // namespace cavlab
