#ifndef CAVLAB_RADIAL_GRID_HPP
#define CAVLAB_RADIAL_GRID_HPP

#include <vector>

namespace cavlab {

// Uniform grid on [0,1]: nodes R_i = i/m, cell midpoints R_{i-1/2}.
// (The spacing is h_step; plain `h` is reserved for the volumetric energy.)
struct RadialGrid {
    int m = 100;
    double h_step = 0.01;

    explicit RadialGrid(int m_ = 100);

    double node(int i) const { return i * h_step; }
    double midpoint(int i) const { return (2 * i - 1) * 0.5 * h_step; }  // cell i in 1..m
};

// Nodal radial deformation r and phase field v on a RadialGrid.
struct RadialField {
    RadialGrid grid{100};
    std::vector<double> r;  // size m+1
    std::vector<double> v;  // size m+1

    RadialField() { resize(); }
    explicit RadialField(const RadialGrid& g) : grid(g) { resize(); }

    void resize() {
        r.assign(grid.m + 1, 0.0);
        v.assign(grid.m + 1, 0.0);
    }
};

// Midpoint quantities of cell i (1-based): the discrete slope, the radial
// stretch ratio (r_i + r_{i-1})/(R_i + R_{i-1}), the determinant
// slope * ratio^2, and the v midpoint/slope.
struct CellQuantities {
    double R_mid = 0.0;
    double slope = 0.0;
    double ratio = 0.0;
    double det = 0.0;
    double v_mid = 0.0;
    double v_slope = 0.0;
};

CellQuantities cell_quantities(const RadialField& f, int i);

// Affine field r = lambda*R with v = 0.
RadialField affine_field(const RadialGrid& grid, double lambda);

// Strict discrete feasibility: v_i >= 0 and det_{i-1/2} - v_{i-1/2} > margin
// for every cell.
bool field_feasible(const RadialField& f, double margin = 1e-14);

// Linear interpolation of nodal values onto a (finer) grid.
RadialField interpolate_field(const RadialField& f, const RadialGrid& fine);

}  // namespace cavlab

#endif
