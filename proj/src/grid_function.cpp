#include "dyham/grid_function.hpp"

#include <cmath>
#include <stdexcept>

namespace dyham {

GridFunction::GridFunction(const GridGeometry& g, std::vector<double> values)
    : geom_(g), v_(std::move(values)) {
    if (static_cast<index_t>(v_.size()) != g.cell_count())
        throw std::invalid_argument("GridFunction: value count does not match geometry");
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
    require_same_geometry(geom_, o.geom_);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
    require_same_geometry(geom_, o.geom_);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
}

GridFunction& GridFunction::operator*=(double s) {
    for (auto& x : v_) x *= s;
    return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double s, GridFunction a) { return a *= s; }

GridFunction pointwise_product(const GridFunction& a, const GridFunction& b) {
    require_same_geometry(a.geometry(), b.geometry());
    GridFunction r = a;
    for (index_t i = 0; i < r.size(); ++i) r[i] *= b[i];
    return r;
}

double pairing(const GridFunction& f, const GridFunction& g) {
    require_same_geometry(f.geometry(), g.geometry());
    double s = 0;
    for (index_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
    return s * f.geometry().cell_measure();
}

CellBox cell_box(const GridGeometry& g, const DyadicCube& q) {
    g.require(q);
    CellBox box;
    box.extent = index_t(1) << (g.level_max() - q.level);
    for (int nu = 0; nu < g.dim(); ++nu) box.first[nu] = q.index[nu] * box.extent;
    return box;
}

void for_each_cell(const GridGeometry& g, const DyadicCube& q,
                   const std::function<void(index_t)>& fn) {
    const CellBox box = cell_box(g, q);
    const index_t side = g.cells_per_axis();
    const int n = g.dim();
    if (n == 1) {
        for (index_t i = 0; i < box.extent; ++i) fn(box.first[0] + i);
        return;
    }
    if (n == 2) {
        for (index_t i = 0; i < box.extent; ++i) {
            const index_t row = (box.first[0] + i) * side + box.first[1];
            for (index_t j = 0; j < box.extent; ++j) fn(row + j);
        }
        return;
    }
    for (index_t i = 0; i < box.extent; ++i)
        for (index_t j = 0; j < box.extent; ++j) {
            const index_t row =
                ((box.first[0] + i) * side + box.first[1] + j) * side + box.first[2];
            for (index_t k = 0; k < box.extent; ++k) fn(row + k);
        }
}

double cube_mean(const GridFunction& f, const DyadicCube& q) {
    const GridGeometry& g = f.geometry();
    double s = 0;
    for_each_cell(g, q, [&](index_t i) { s += f[i]; });
    return s / double(g.cells_in_cube(q));
}

double base_mean(const GridFunction& f) {
    double s = 0;
    for (index_t i = 0; i < f.size(); ++i) s += f[i];
    return s / double(f.size());
}

GridFunction indicator(const GridGeometry& g, const DyadicCube& q) {
    GridFunction r(g);
    for_each_cell(g, q, [&](index_t i) { r[i] = 1.0; });
    return r;
}

GridFunction constant_function(const GridGeometry& g, double c) {
    GridFunction r(g);
    for (index_t i = 0; i < r.size(); ++i) r[i] = c;
    return r;
}

double linf_norm(const GridFunction& f) {
    double m = 0;
    for (index_t i = 0; i < f.size(); ++i) m = std::max(m, std::fabs(f[i]));
    return m;
}

double linf_distance(const GridFunction& f, const GridFunction& g) {
    require_same_geometry(f.geometry(), g.geometry());
    double m = 0;
    for (index_t i = 0; i < f.size(); ++i) m = std::max(m, std::fabs(f[i] - g[i]));
    return m;
}

}  // namespace dyham
