#include "dyham/haar.hpp"

#include <cmath>
#include <stdexcept>

namespace dyham {

namespace {

// children of the cube with flat index `flat` at level j have flat indices
// interleaving the offset bits of each axis; precompute them generically.
void child_flats(const GridGeometry& g, int level, index_t flat, index_t* out) {
    const DyadicCube q = g.cube_from_flat(level, flat);
    const index_t child_side = g.cubes_per_axis(level + 1);
    const int n = g.dim();
    const unsigned nb = 1u << n;
    for (unsigned b = 0; b < nb; ++b) {
        index_t cf = 0;
        for (int nu = 0; nu < n; ++nu)
            cf = cf * child_side + 2 * q.index[nu] + ((b >> (n - 1 - nu)) & 1u);
        out[b] = cf;
    }
}

}  // namespace

HaarCoefficients::HaarCoefficients(const GridGeometry& g) : geom_(g) {
    const int e = pattern_count(g.dim());
    std::size_t total = 0;
    level_offset_.resize(std::size_t(g.refinement_depth()) + 1, 0);
    for (int j = g.level_min(); j < g.level_max(); ++j) {
        level_offset_[std::size_t(j - g.level_min())] = total;
        total += std::size_t(g.cube_count(j)) * std::size_t(e);
    }
    level_offset_[std::size_t(g.refinement_depth())] = total;
    c_.assign(total, 0.0);
}

std::size_t HaarCoefficients::slot(int level, index_t cube_flat, unsigned pattern) const {
    if (level < geom_.level_min() || level >= geom_.level_max())
        throw std::out_of_range("HaarCoefficients: level outside [j_min, J-1]");
    const int e = pattern_count(geom_.dim());
    if (pattern < 1 || pattern > unsigned(e))
        throw std::out_of_range("HaarCoefficients: invalid sign pattern");
    if (cube_flat < 0 || cube_flat >= geom_.cube_count(level))
        throw std::out_of_range("HaarCoefficients: cube index outside level");
    return level_offset_[std::size_t(level - geom_.level_min())] +
           std::size_t(cube_flat) * std::size_t(e) + (pattern - 1);
}

double HaarCoefficients::at(const DyadicCube& q, unsigned pattern) const {
    geom_.require(q);
    return at(q.level, geom_.cube_flat_index(q), pattern);
}

double& HaarCoefficients::at(const DyadicCube& q, unsigned pattern) {
    geom_.require(q);
    return at(q.level, geom_.cube_flat_index(q), pattern);
}

std::vector<std::vector<double>> mean_tree(const GridFunction& f) {
    const GridGeometry& g = f.geometry();
    const int depth = g.refinement_depth();
    std::vector<std::vector<double>> means(std::size_t(depth) + 1);
    means[std::size_t(depth)] = f.values();
    const unsigned nb = 1u << g.dim();
    index_t cf[1u << kMaxDim];
    for (int j = g.level_max() - 1; j >= g.level_min(); --j) {
        const std::size_t lj = std::size_t(j - g.level_min());
        means[lj].assign(std::size_t(g.cube_count(j)), 0.0);
        for (index_t q = 0; q < g.cube_count(j); ++q) {
            child_flats(g, j, q, cf);
            double s = 0;
            for (unsigned b = 0; b < nb; ++b) s += means[lj + 1][std::size_t(cf[b])];
            means[lj][std::size_t(q)] = s / double(nb);
        }
    }
    return means;
}

HaarCoefficients forward_transform(const GridFunction& f) {
    const GridGeometry& g = f.geometry();
    HaarCoefficients c(g);
    const auto means = mean_tree(f);
    c.base_mean() = means[0][0];
    const int n = g.dim();
    const unsigned nb = 1u << n;
    const int e = pattern_count(n);
    index_t cf[1u << kMaxDim];
    for (int j = g.level_min(); j < g.level_max(); ++j) {
        const std::size_t lj = std::size_t(j - g.level_min());
        // <f, h^eps_Q> = |Q|^{1/2} 2^{-n} sum_b sign(eps,b) m_{child b}(f)
        const double scale = g.measure_pow(j, 0.5) / double(nb);
        for (index_t q = 0; q < g.cube_count(j); ++q) {
            child_flats(g, j, q, cf);
            for (int p = 1; p <= e; ++p) {
                double s = 0;
                for (unsigned b = 0; b < nb; ++b)
                    s += child_sign(unsigned(p), b) * means[lj + 1][std::size_t(cf[b])];
                c.at(j, q, unsigned(p)) = scale * s;
            }
        }
    }
    return c;
}

GridFunction inverse_transform(const HaarCoefficients& c) {
    const GridGeometry& g = c.geometry();
    const int n = g.dim();
    const unsigned nb = 1u << n;
    const int e = pattern_count(n);
    std::vector<double> cur(1, c.base_mean());
    index_t cf[1u << kMaxDim];
    for (int j = g.level_min(); j < g.level_max(); ++j) {
        std::vector<double> next(std::size_t(g.cube_count(j + 1)));
        const double scale = g.measure_pow(j, -0.5);  // |Q|^{-1/2}
        for (index_t q = 0; q < g.cube_count(j); ++q) {
            child_flats(g, j, q, cf);
            for (unsigned b = 0; b < nb; ++b) {
                double v = cur[std::size_t(q)];
                for (int p = 1; p <= e; ++p)
                    v += c.at(j, q, unsigned(p)) * child_sign(unsigned(p), b) * scale;
                next[std::size_t(cf[b])] = v;
            }
        }
        cur.swap(next);
    }
    GridFunction f(g);
    f.values() = std::move(cur);
    return f;
}

GridFunction haar_function(const GridGeometry& g, const DyadicCube& q, unsigned pattern) {
    g.require(q);
    if (q.level >= g.level_max())
        throw std::out_of_range("haar_function: cube has no children in this grid");
    if (pattern < 1 || pattern > unsigned(pattern_count(g.dim())))
        throw std::out_of_range("haar_function: invalid sign pattern");
    GridFunction h(g);
    const double height = g.measure_pow(q.level, -0.5);
    children(q, g.dim(), [&](const DyadicCube& child) {
        unsigned bits = 0;
        for (int nu = 0; nu < g.dim(); ++nu)
            bits = (bits << 1) | unsigned(child.index[nu] & 1);
        const double v = child_sign(pattern, bits) * height;
        for_each_cell(g, child, [&](index_t i) { h[i] = v; });
    });
    return h;
}

namespace {

void add_level_terms(GridFunction& out, const HaarCoefficients& c, int level, int pattern_lo,
                     int pattern_hi, double weight) {
    const GridGeometry& g = c.geometry();
    const unsigned nb = 1u << g.dim();
    const double scale = g.measure_pow(level, -0.5) * weight;
    index_t cf[1u << kMaxDim];
    for (index_t q = 0; q < g.cube_count(level); ++q) {
        child_flats(g, level, q, cf);
        for (unsigned b = 0; b < nb; ++b) {
            double v = 0;
            for (int p = pattern_lo; p <= pattern_hi; ++p)
                v += c.at(level, q, unsigned(p)) * child_sign(unsigned(p), b);
            if (v == 0.0) continue;
            const DyadicCube child = g.cube_from_flat(level + 1, cf[b]);
            for_each_cell(g, child, [&](index_t i) { out[i] += v * scale; });
        }
    }
}

}  // namespace

GridFunction level_slice(const HaarCoefficients& c, int level) {
    GridFunction out(c.geometry());
    add_level_terms(out, c, level, 1, pattern_count(c.geometry().dim()), 1.0);
    return out;
}

GridFunction level_slice(const HaarCoefficients& c, int level, unsigned pattern) {
    GridFunction out(c.geometry());
    add_level_terms(out, c, level, int(pattern), int(pattern), 1.0);
    return out;
}

GridFunction square_function(const GridFunction& f, unsigned pattern) {
    const HaarCoefficients c = forward_transform(f);
    const GridGeometry& g = f.geometry();
    GridFunction acc(g);
    for (int j = g.level_min(); j < g.level_max(); ++j) {
        const GridFunction s = level_slice(c, j, pattern);
        for (index_t i = 0; i < acc.size(); ++i) acc[i] += s[i] * s[i];
    }
    for (index_t i = 0; i < acc.size(); ++i) acc[i] = std::sqrt(acc[i]);
    return acc;
}

GridFunction square_function_total(const GridFunction& f) {
    const HaarCoefficients c = forward_transform(f);
    const GridGeometry& g = f.geometry();
    GridFunction acc(g);
    for (int p = 1; p <= pattern_count(g.dim()); ++p)
        for (int j = g.level_min(); j < g.level_max(); ++j) {
            const GridFunction s = level_slice(c, j, unsigned(p));
            for (index_t i = 0; i < acc.size(); ++i) acc[i] += s[i] * s[i];
        }
    for (index_t i = 0; i < acc.size(); ++i) acc[i] = std::sqrt(acc[i]);
    return acc;
}

GridFunction partial_sum(const HaarCoefficients& c, int M, bool include_mean) {
    if (M < 0) throw std::invalid_argument("partial_sum: M must be nonnegative");
    const GridGeometry& g = c.geometry();
    GridFunction out(g);
    if (include_mean) out += constant_function(g, c.base_mean());
    for (int j = std::max(-M, g.level_min()); j <= std::min(M, g.level_max() - 1); ++j)
        out += level_slice(c, j);
    return out;
}

GridFunction expectation_projection(const GridFunction& f, int k) {
    const GridGeometry& g = f.geometry();
    if (k < g.level_min() || k > g.level_max())
        throw std::out_of_range("expectation_projection: level outside [j_min, J]");
    if (k == g.level_max()) return f;
    const auto means = mean_tree(f);
    const auto& mk = means[std::size_t(k - g.level_min())];
    GridFunction out(g);
    for (index_t q = 0; q < g.cube_count(k); ++q) {
        const double v = mk[std::size_t(q)];
        for_each_cell(g, g.cube_from_flat(k, q), [&](index_t i) { out[i] = v; });
    }
    return out;
}

GridFunction project_levels(const GridFunction& f, int level_lo, int level_hi,
                            bool include_mean) {
    const GridGeometry& g = f.geometry();
    const HaarCoefficients c = forward_transform(f);
    GridFunction out(g);
    if (include_mean) out += constant_function(g, c.base_mean());
    const int lo = std::max(level_lo, g.level_min());
    const int hi = std::min(level_hi, g.level_max() - 1);
    for (int j = lo; j <= hi; ++j) out += level_slice(c, j);
    return out;
}

GridFunction haar_part(const GridFunction& f) {
    const double m = base_mean(f);
    GridFunction out = f;
    for (index_t i = 0; i < out.size(); ++i) out[i] -= m;
    return out;
}

}  // namespace dyham
