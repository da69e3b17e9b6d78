#ifndef CAVLAB_RADIAL_DECOUPLED_HPP
#define CAVLAB_RADIAL_DECOUPLED_HPP

#include <string>
#include <vector>

#include "cavlab/energy_models.hpp"
#include "cavlab/optimizer.hpp"
#include "cavlab/radial_classical.hpp"
#include "cavlab/radial_grid.hpp"

namespace cavlab {

struct DecoupledEnergyParts {
    double tilde = 0.0;
    double h_part = 0.0;
    double grad_v = 0.0;
    double phi = 0.0;
    double total() const { return ((tilde + h_part) + grad_v) + phi; }
};

// Discrete decoupled-penalized energy
//   h_step * sum R_mid^2 [ Phi + h(det - v_mid)
//                          + (eps^a/a)|dv|^a + (1/(q eps^q)) phi_tau(v_mid) ]
// with v_mid the nodal mean and dv the nodal difference quotient.  With
// v == 0 this reduces bit-for-bit to energy_rad.  Infeasible fields (per
// the discrete constraint set) throw std::domain_error.
DecoupledEnergyParts energy_decoupled(const RadialField& field,
                                      const PenaltyModel& pen,
                                      const MaterialModel& model);

// Analytic gradient over the free nodes [r_1..r_{m-1}, v_0..v_{m-1}];
// r_0 = 0, r_m = lambda, v_m = 0 are excluded.
Eigen::VectorXd grad_decoupled(const RadialField& field,
                               const PenaltyModel& pen,
                               const MaterialModel& model);

// Free-vector packing used by grad_decoupled and the minimizer.
Eigen::VectorXd pack_free(const RadialField& field);
RadialField unpack_free(const Eigen::VectorXd& x, const RadialGrid& grid,
                        double lambda);

struct DecoupledOptions {
    OptOptions opt;
    // Also try a deterministic pre-cavitated start (constant-determinant
    // profile with a one-cell phase cliff) when lambda^3 > d0, keeping the
    // lower of the two final energies.  The plain descent from the affine
    // start cannot cross the phase barrier at small eps, whose height
    // scales like h_step^3 / (8 q eps^q).
    bool cavity_start = true;
};

struct DecoupledRun {
    double lambda = 0.0;
    PenaltyModel pen;
    MaterialModel model;
    RadialField init;
    RadialField result;
    double energy = 0.0;
    DecoupledEnergyParts parts;
    double first_slope = 0.0;  // delta r_{1/2}
    OptReport report;
};

// Constrained minimization of energy_decoupled with lower bounds v_i >= 0
// and the strict determinant constraint enforced through the feasibility
// oracle (the volumetric term blows up at its boundary).
DecoupledRun minimize_decoupled(double lambda, const PenaltyModel& pen,
                                const MaterialModel& model,
                                const RadialGrid& grid,
                                const RadialField& init,
                                const DecoupledOptions& opts = {});

// Default cold start: affine deformation with v == 0.
DecoupledRun minimize_decoupled(double lambda, const PenaltyModel& pen,
                                const MaterialModel& model,
                                const RadialGrid& grid,
                                const DecoupledOptions& opts = {});

// Nodal central-difference residuals of the Euler-Lagrange system at the
// interior nodes (independent of the midpoint quadrature used by the
// energy): res_r discretizes d/dR[R^2 Phi_1] - 2 R Phi_2 and res_v the
// v^(1/2)-weighted phase equation.
struct ElResidual {
    std::vector<double> res_r;  // nodes 1..m-1
    std::vector<double> res_v;
};
ElResidual el_residual(const RadialField& field, const PenaltyModel& pen,
                       const MaterialModel& model);

// Explicit certificate pair: affine core glued to the classical cavitating
// field, with a phase plateau tau = (r_c(delta)/delta)^3 - d0 ramped down
// over eta = delta^beta1 and eps^(alpha+q) = delta^((beta1+3)alpha+beta1).
// The pair is sampled on an internal grid fine enough to resolve the ramp
// and evaluated with energy_decoupled.
struct GammaPair {
    RadialField field;
    double eps = 0.0;
    double tau = 0.0;
    double eta = 0.0;
    double energy = 0.0;
    DecoupledEnergyParts parts;
};
GammaPair gamma_test_pair(double delta, double beta1, double lambda,
                          const RadialField& r_c_field,
                          const MaterialModel& model,
                          const PenaltyModel& pen_template);

struct Table1Row {
    double eps2 = 0.0;
    double energy = 0.0;
    double dr_half = 0.0;
    bool ok = false;
    std::string message;
};

// One minimize_decoupled per eps^2, each cold-started from (affine, 0);
// rows come back in input order.  Per-row failures are recorded in the row
// and the sweep continues.  CAVLAB_THREADS caps the fan-out.
std::vector<Table1Row> table1_sweep(double lambda, double tau,
                                    const std::vector<double>& eps2_list,
                                    const MaterialModel& model,
                                    const RadialGrid& grid,
                                    const DecoupledOptions& opts = {});

}  // namespace cavlab

#endif
