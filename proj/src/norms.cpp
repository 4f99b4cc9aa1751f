#include "dyham/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "dyham/haar.hpp"

namespace dyham {

void SpaceParams::require_morrey() const {
    if (!(q >= 1.0) || !(p >= q) || !std::isfinite(p) || !std::isfinite(q))
        throw std::invalid_argument("Morrey exponents require 1 <= q <= p < inf (got p=" +
                                    std::to_string(p) + ", q=" + std::to_string(q) + ")");
}

void SpaceParams::require_block() const {
    if (!(p > 1.0) || !(q >= p) || !std::isfinite(p) || !std::isfinite(q))
        throw std::invalid_argument("block exponents require 1 < p <= q < inf (got p=" +
                                    std::to_string(p) + ", q=" + std::to_string(q) + ")");
}

SpaceParams SpaceParams::conjugate() const {
    if (!(p > 1.0) || !(q > 1.0))
        throw std::invalid_argument("conjugate exponents need p, q > 1");
    return SpaceParams{p / (p - 1.0), q / (q - 1.0)};
}

double pow_abs(double x, double q) {
    x = std::fabs(x);
    if (q == 1.0) return x;
    if (q == 2.0) return x * x;
    double ip;
    if (std::modf(q, &ip) == 0.0 && q > 0 && q <= 8.0) {
        double r = 1.0;
        for (int k = 0; k < int(ip); ++k) r *= x;
        return r;
    }
    return std::pow(x, q);
}

double root_q(double s, double q) {
    if (q == 1.0) return s;
    if (q == 2.0) return std::sqrt(s);
    return std::pow(s, 1.0 / q);
}

std::vector<std::vector<double>> power_mass_tree(const GridFunction& f, double q) {
    const GridGeometry& g = f.geometry();
    const int depth = g.refinement_depth();
    std::vector<std::vector<double>> mass(std::size_t(depth) + 1);
    const double mu = g.cell_measure();
    mass[std::size_t(depth)].resize(std::size_t(g.cell_count()));
    for (index_t i = 0; i < g.cell_count(); ++i)
        mass[std::size_t(depth)][std::size_t(i)] = pow_abs(f[i], q) * mu;
    for (int j = g.level_max() - 1; j >= g.level_min(); --j) {
        const std::size_t lj = std::size_t(j - g.level_min());
        mass[lj].assign(std::size_t(g.cube_count(j)), 0.0);
        for (index_t c = 0; c < g.cube_count(j + 1); ++c) {
            // child flat index / 2^n is not the parent in row-major order for n > 1,
            // so recover the parent index explicitly
            const DyadicCube child = g.cube_from_flat(j + 1, c);
            const index_t parent = g.cube_flat_index(parent_cube(child));
            mass[lj][std::size_t(parent)] += mass[lj + 1][std::size_t(c)];
        }
    }
    return mass;
}

double lq_norm(const GridFunction& f, double q) {
    return lq_norm(f, q, f.geometry().base_cube());
}

double lq_norm(const GridFunction& f, double q, const DyadicCube& R) {
    if (!(q >= 1.0) || !std::isfinite(q))
        throw std::invalid_argument("lq_norm needs 1 <= q < inf");
    const GridGeometry& g = f.geometry();
    const double mu = g.cell_measure();
    double s = 0;
    for_each_cell(g, R, [&](index_t i) { s += pow_abs(f[i], q) * mu; });
    return root_q(s, q);
}

NormReport morrey_norm_report(const GridFunction& f, const SpaceParams& pq) {
    pq.require_morrey();
    const GridGeometry& g = f.geometry();
    const auto mass = power_mass_tree(f, pq.q);
    const double w_exp = 1.0 / pq.p - 1.0 / pq.q;
    NormReport best{-1.0, g.base_cube()};
    for (int j = g.level_min(); j <= g.level_max(); ++j) {
        const double w = g.measure_pow(j, w_exp);
        const auto& mj = mass[std::size_t(j - g.level_min())];
        for (index_t c = 0; c < g.cube_count(j); ++c) {
            const double v = w * root_q(mj[std::size_t(c)], pq.q);
            if (v > best.value) best = NormReport{v, g.cube_from_flat(j, c)};
        }
    }
    return best;
}

double morrey_norm(const GridFunction& f, const SpaceParams& pq) {
    return morrey_norm_report(f, pq).value;
}

namespace {

// m_Q(|f - m_Q f|) for every cube, level by level.
std::vector<std::vector<double>> oscillation_tree(const GridFunction& f) {
    const GridGeometry& g = f.geometry();
    const auto means = mean_tree(f);
    std::vector<std::vector<double>> osc(means.size());
    for (int j = g.level_min(); j <= g.level_max(); ++j) {
        const std::size_t lj = std::size_t(j - g.level_min());
        osc[lj].assign(std::size_t(g.cube_count(j)), 0.0);
        const double inv_cells = 1.0 / double(g.cells_in_cube(DyadicCube{j, {}}));
        for (index_t c = 0; c < g.cube_count(j); ++c) {
            const double m = means[lj][std::size_t(c)];
            double s = 0;
            for_each_cell(g, g.cube_from_flat(j, c),
                          [&](index_t i) { s += std::fabs(f[i] - m); });
            osc[lj][std::size_t(c)] = s * inv_cells;
        }
    }
    return osc;
}

}  // namespace

GridFunction sharp_maximal(const GridFunction& f) {
    const GridGeometry& g = f.geometry();
    const auto osc = oscillation_tree(f);
    GridFunction out(g);
    for (int j = g.level_min(); j < g.level_max(); ++j) {  // level-J oscillation is 0
        const auto& oj = osc[std::size_t(j - g.level_min())];
        for (index_t c = 0; c < g.cube_count(j); ++c) {
            const double o = oj[std::size_t(c)];
            for_each_cell(g, g.cube_from_flat(j, c),
                          [&](index_t i) { out[i] = std::max(out[i], o); });
        }
    }
    return out;
}

NormReport bmo_report(const GridFunction& a) {
    const GridGeometry& g = a.geometry();
    const auto osc = oscillation_tree(a);
    NormReport best{-1.0, g.base_cube()};
    for (int j = g.level_min(); j <= g.level_max(); ++j) {
        const auto& oj = osc[std::size_t(j - g.level_min())];
        for (index_t c = 0; c < g.cube_count(j); ++c)
            if (oj[std::size_t(c)] > best.value)
                best = NormReport{oj[std::size_t(c)], g.cube_from_flat(j, c)};
    }
    return best;
}

double bmo_norm(const GridFunction& a) { return bmo_report(a).value; }

double oscillation_norm(const GridFunction& f, const DyadicCube& R, double q) {
    if (!(q >= 1.0) || !std::isfinite(q))
        throw std::invalid_argument("oscillation_norm needs 1 <= q < inf");
    const GridGeometry& g = f.geometry();
    const double m = cube_mean(f, R);
    const double mu = g.cell_measure();
    double s = 0;
    for_each_cell(g, R, [&](index_t i) { s += pow_abs(f[i] - m, q) * mu; });
    return root_q(s, q);
}

}  // namespace dyham
