#ifndef CAVLAB_RADIAL_CLASSICAL_HPP
#define CAVLAB_RADIAL_CLASSICAL_HPP

#include "cavlab/energy_models.hpp"
#include "cavlab/optimizer.hpp"
#include "cavlab/radial_grid.hpp"

namespace cavlab {

struct RadialEnergyParts {
    double tilde = 0.0;   // distortional sum
    double h_part = 0.0;  // volumetric sum
    double total() const { return tilde + h_part; }
};

// Midpoint-rule value of
//   int_0^1 R^2 [ Phi(r', r/R, r/R) + h(r' (r/R)^2) ] dR
// using the cell quantities of the grid.  No 4*pi factor.  The field must
// have v == 0; an infeasible determinant throws std::domain_error.
RadialEnergyParts energy_rad_parts(const RadialField& field,
                                   const MaterialModel& model);
double energy_rad(const RadialField& field, const MaterialModel& model);

// Gradient of energy_rad with respect to the nodal values r_0..r_{m-1}
// (r_m is pinned to the boundary stretch).
Eigen::VectorXd energy_rad_gradient(const RadialField& field,
                                    const MaterialModel& model);

struct ClassicalResult {
    RadialField field;
    double energy = 0.0;
    double cavity_radius = 0.0;  // r_0
    OptReport report;
};

// Direct minimization of energy_rad over nodal r with r_0 >= 0 free and
// r_m = lambda fixed.  Two deterministic starts are run -- the affine field
// and a pre-cavitated profile with r_0 = lambda/2 -- and the lower energy is
// kept, since the landscape has two basins near the critical stretch.
ClassicalResult minimize_classical(double lambda, const MaterialModel& model,
                                   const RadialGrid& grid,
                                   const OptOptions& opts = {});

// Exact radial minimizer of the 2D elastic fluid:
// sqrt(d0 R^2 + lambda^2 - d0) for lambda > sqrt(d0), else lambda*R.
double fluid_radial_exact(double lambda, double d0, double R);

}  // namespace cavlab

#endif
