#include "cavlab/radial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cavlab {

RadialGrid::RadialGrid(int m_) : m(m_) {
    if (m < 1) throw std::invalid_argument("RadialGrid: m must be >= 1");
    h_step = 1.0 / m;
}

CellQuantities cell_quantities(const RadialField& f, int i) {
    const auto& g = f.grid;
    CellQuantities c;
    c.R_mid = g.midpoint(i);
    c.slope = (f.r[i] - f.r[i - 1]) / g.h_step;
    c.ratio = (f.r[i] + f.r[i - 1]) / (g.node(i) + g.node(i - 1));
    c.det = c.slope * c.ratio * c.ratio;
    c.v_mid = 0.5 * (f.v[i] + f.v[i - 1]);
    c.v_slope = (f.v[i] - f.v[i - 1]) / g.h_step;
    return c;
}

RadialField affine_field(const RadialGrid& grid, double lambda) {
    RadialField f(grid);
    for (int i = 0; i <= grid.m; ++i) f.r[i] = lambda * grid.node(i);
    return f;
}

bool field_feasible(const RadialField& f, double margin) {
    for (double vi : f.v)
        if (vi < 0.0) return false;
    for (int i = 1; i <= f.grid.m; ++i) {
        const CellQuantities c = cell_quantities(f, i);
        if (!(c.det - c.v_mid > margin)) return false;
    }
    return true;
}

RadialField interpolate_field(const RadialField& f, const RadialGrid& fine) {
    RadialField out(fine);
    const int m = f.grid.m;
    for (int i = 0; i <= fine.m; ++i) {
        const double R = fine.node(i);
        const double pos = std::min(R / f.grid.h_step, (double)m);
        const int k = std::min((int)pos, m - 1);
        const double w = pos - k;
        out.r[i] = (1.0 - w) * f.r[k] + w * f.r[k + 1];
        out.v[i] = (1.0 - w) * f.v[k] + w * f.v[k + 1];
    }
    return out;
}

}  // namespace cavlab
