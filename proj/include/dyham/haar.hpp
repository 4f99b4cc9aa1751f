#pragma once

#include <vector>

#include "dyham/grid_function.hpp"

namespace dyham {

// Haar expansion of a grid function over the base cube:
//
//   f = base_mean + sum_{j = j_min}^{J-1} sum_{Q in D_j} sum_{eps} <f, h^eps_Q> h^eps_Q
//
// where h^eps_Q takes the values +-|Q|^{-1/2} on the children of Q according to
// the sign pattern eps (see geometry.hpp) and has mean zero and unit L^2 norm.
// Coefficients are stored level-ascending, cubes row-major within a level,
// patterns in increasing mask order within a cube.
class HaarCoefficients {
public:
    explicit HaarCoefficients(const GridGeometry& g);

    const GridGeometry& geometry() const { return geom_; }

    double base_mean() const { return base_mean_; }
    double& base_mean() { return base_mean_; }

    double at(int level, index_t cube_flat, unsigned pattern) const {
        return c_[slot(level, cube_flat, pattern)];
    }
    double& at(int level, index_t cube_flat, unsigned pattern) {
        return c_[slot(level, cube_flat, pattern)];
    }
    double at(const DyadicCube& q, unsigned pattern) const;
    double& at(const DyadicCube& q, unsigned pattern);

    // number of (level, cube, pattern) slots
    std::size_t size() const { return c_.size(); }
    const std::vector<double>& raw() const { return c_; }
    std::vector<double>& raw() { return c_; }

    // Detail levels run over [j_min, J-1]; a grid with J == j_min has none.
    int level_begin() const { return geom_.level_min(); }
    int level_end() const { return geom_.level_max(); }

    std::size_t slot(int level, index_t cube_flat, unsigned pattern) const;

private:
    GridGeometry geom_;
    double base_mean_ = 0.0;
    std::vector<double> c_;
    std::vector<std::size_t> level_offset_;
};

// Exact O(N log N) analysis/synthesis pair; inverse_transform(forward_transform(f))
// reproduces f up to roundoff.
HaarCoefficients forward_transform(const GridFunction& f);
GridFunction inverse_transform(const HaarCoefficients& c);

// Per-level cube means m_Q(f): means[j - j_min][flat(Q)] for j in [j_min, J].
std::vector<std::vector<double>> mean_tree(const GridFunction& f);

// h^eps_Q sampled on the grid.
GridFunction haar_function(const GridGeometry& g, const DyadicCube& q, unsigned pattern);

// f_j = sum_{Q in D_j} sum_eps c(eps,Q) h^eps_Q, or a single pattern's part.
GridFunction level_slice(const HaarCoefficients& c, int level);
GridFunction level_slice(const HaarCoefficients& c, int level, unsigned pattern);

// S^eps f = ( sum_j |f^eps_j|^2 )^{1/2} pointwise, for one fixed pattern.
GridFunction square_function(const GridFunction& f, unsigned pattern);
// ell^2 aggregate over all patterns and levels.
GridFunction square_function_total(const GridFunction& f);

// Detail levels with |j| <= M (intersected with the grid's level range),
// optionally plus the base mean.
GridFunction partial_sum(const HaarCoefficients& c, int M, bool include_mean = true);

// E_k f: conditional expectation on D_k, piecewise constant at level k.
GridFunction expectation_projection(const GridFunction& f, int k);

// Detail levels in [level_lo, level_hi] only; mean dropped unless requested.
GridFunction project_levels(const GridFunction& f, int level_lo, int level_hi,
                            bool include_mean = false);

// f minus its base mean: the part spanned by the Haar system.
GridFunction haar_part(const GridFunction& f);

}  // namespace dyham
