#pragma once

#include <vector>

#include "dyham/geometry.hpp"

namespace dyham {

// Piecewise-constant function on the finest cells of a grid, row-major layout.
class GridFunction {
public:
    explicit GridFunction(const GridGeometry& g)
        : geom_(g), v_(static_cast<std::size_t>(g.cell_count()), 0.0) {}
    GridFunction(const GridGeometry& g, std::vector<double> values);

    const GridGeometry& geometry() const { return geom_; }
    index_t size() const { return static_cast<index_t>(v_.size()); }

    double operator[](index_t i) const { return v_[static_cast<std::size_t>(i)]; }
    double& operator[](index_t i) { return v_[static_cast<std::size_t>(i)]; }

    const std::vector<double>& values() const { return v_; }
    std::vector<double>& values() { return v_; }

    GridFunction& operator+=(const GridFunction& o);
    GridFunction& operator-=(const GridFunction& o);
    GridFunction& operator*=(double s);

private:
    GridGeometry geom_;
    std::vector<double> v_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double s, GridFunction a);

// Pointwise product (a b)(x) = a(x) b(x).
GridFunction pointwise_product(const GridFunction& a, const GridFunction& b);

// <f, g> = integral of f g over the base cube.
double pairing(const GridFunction& f, const GridFunction& g);

// m_Q(f) = |Q|^-1 integral_Q f.
double cube_mean(const GridFunction& f, const DyadicCube& q);
double base_mean(const GridFunction& f);

GridFunction indicator(const GridGeometry& g, const DyadicCube& q);
GridFunction constant_function(const GridGeometry& g, double c);

double linf_norm(const GridFunction& f);
double linf_distance(const GridFunction& f, const GridFunction& g);

// Row-major range of finest-cell indices covered by q, as [begin, extent) per axis.
struct CellBox {
    std::array<index_t, kMaxDim> first{};
    index_t extent = 0;  // cells per axis
};
CellBox cell_box(const GridGeometry& g, const DyadicCube& q);

// Applies fn to the flat index of every finest cell inside q.
void for_each_cell(const GridGeometry& g, const DyadicCube& q,
                   const std::function<void(index_t)>& fn);

}  // namespace dyham
