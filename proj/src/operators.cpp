#include "dyham/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace dyham {

namespace {

void require_order(double alpha, int n) {
    if (!(alpha > 0.0) || !(alpha < double(n)))
        throw std::invalid_argument("fractional order requires 0 < alpha < n (got alpha=" +
                                    std::to_string(alpha) + ", n=" + std::to_string(n) + ")");
}

}  // namespace

FractionalParams FractionalParams::derive(double alpha, const SpaceParams& source, int n) {
    require_order(alpha, n);
    source.require_morrey();
    if (!(source.q > 1.0))
        throw std::invalid_argument("fractional exponent map needs q > 1");
    const double inv_s = 1.0 / source.p - alpha / double(n);
    if (!(inv_s > 0.0))
        throw std::invalid_argument(
            "fractional exponent map needs alpha < n/p so that 1/s = 1/p - alpha/n > 0 "
            "(got alpha=" + std::to_string(alpha) + ", n/p=" +
            std::to_string(double(n) / source.p) + ")");
    FractionalParams fp;
    fp.alpha = alpha;
    fp.dim = n;
    fp.source = source;
    const double s = 1.0 / inv_s;
    fp.target = SpaceParams{s, s * source.q / source.p};
    fp.target.require_morrey();
    return fp;
}

HaarCoefficients fractional_integral(const HaarCoefficients& c, double alpha) {
    const GridGeometry& g = c.geometry();
    require_order(alpha, g.dim());
    HaarCoefficients out(g);
    out.base_mean() = 0.0;
    const int e = pattern_count(g.dim());
    for (int j = g.level_min(); j < g.level_max(); ++j) {
        const double w = g.measure_pow(j, alpha / double(g.dim()));
        for (index_t q = 0; q < g.cube_count(j); ++q)
            for (int p = 1; p <= e; ++p)
                out.at(j, q, unsigned(p)) = w * c.at(j, q, unsigned(p));
    }
    return out;
}

GridFunction fractional_integral(const GridFunction& f, double alpha) {
    return inverse_transform(fractional_integral(forward_transform(f), alpha));
}

namespace {

GridFunction paraproduct_impl(const GridFunction& a, const GridFunction& f, int pattern_lo,
                              int pattern_hi, bool normalized) {
    require_same_geometry(a.geometry(), f.geometry());
    const GridGeometry& g = a.geometry();
    const HaarCoefficients ac = forward_transform(a);
    const auto means = mean_tree(f);
    HaarCoefficients out(g);
    for (int j = g.level_min(); j < g.level_max(); ++j) {
        const std::size_t lj = std::size_t(j - g.level_min());
        const double cube_measure = g.measure(j);
        for (index_t q = 0; q < g.cube_count(j); ++q) {
            double w = means[lj][std::size_t(q)];
            if (!normalized) w *= cube_measure;  // <f, chi_Q> instead of m_Q(f)
            for (int p = pattern_lo; p <= pattern_hi; ++p)
                out.at(j, q, unsigned(p)) = w * ac.at(j, q, unsigned(p));
        }
    }
    return inverse_transform(out);
}

}  // namespace

GridFunction paraproduct(const GridFunction& a, const GridFunction& f, bool normalized) {
    return paraproduct_impl(a, f, 1, pattern_count(a.geometry().dim()), normalized);
}

GridFunction paraproduct(const GridFunction& a, const GridFunction& f, unsigned pattern,
                         bool normalized) {
    if (pattern < 1 || pattern > unsigned(pattern_count(a.geometry().dim())))
        throw std::out_of_range("paraproduct: invalid sign pattern");
    return paraproduct_impl(a, f, int(pattern), int(pattern), normalized);
}

GridFunction commutator_direct(const GridFunction& a, const GridFunction& f, double alpha) {
    require_same_geometry(a.geometry(), f.geometry());
    const GridFunction t_f = fractional_integral(f, alpha);
    const GridFunction a_f = pointwise_product(a, f);
    return pointwise_product(a, t_f) - fractional_integral(a_f, alpha);
}

CommutatorTerms commutator_terms(const GridFunction& a, const GridFunction& f, double alpha,
                                 unsigned pattern) {
    require_same_geometry(a.geometry(), f.geometry());
    const GridGeometry& g = a.geometry();
    require_order(alpha, g.dim());
    if (pattern < 1 || pattern > unsigned(pattern_count(g.dim())))
        throw std::out_of_range("commutator_terms: invalid sign pattern");

    const double an = alpha / double(g.dim());
    const HaarCoefficients ac = forward_transform(a);
    const HaarCoefficients fc = forward_transform(f);
    const GridFunction t_f = fractional_integral(f, alpha);
    const auto tf_means = mean_tree(t_f);
    const auto f_means = mean_tree(f);
    const double f_base = f_means[0][0];

    HaarCoefficients c1(g), c2(g);
    GridFunction diag(g);  // sum_Q <a,h^eps_Q><f,h^eps_Q> |h^eps_Q|^2
    GridFunction ii(g);
    for (int j = g.level_min(); j < g.level_max(); ++j) {
        const std::size_t lj = std::size_t(j - g.level_min());
        const double wq = g.measure_pow(j, an);
        const double inv_measure = g.measure_pow(j, -1.0);  // |h^eps_Q|^2 = |Q|^{-1} chi_Q
        for (index_t q = 0; q < g.cube_count(j); ++q) {
            const double a_coeff = ac.at(j, q, pattern);
            c1.at(j, q, pattern) = tf_means[lj][std::size_t(q)] * a_coeff;
            c2.at(j, q, pattern) = wq * a_coeff * (f_means[lj][std::size_t(q)] - f_base);
            const double prod = a_coeff * fc.at(j, q, pattern);
            if (prod != 0.0) {
                const DyadicCube cube = g.cube_from_flat(j, q);
                for_each_cell(g, cube, [&](index_t i) {
                    diag[i] += prod * inv_measure;
                    ii[i] += prod * inv_measure * wq;
                });
            }
        }
    }
    CommutatorTerms t{inverse_transform(c1), inverse_transform(c2), std::move(ii),
                      fractional_integral(diag, alpha)};
    return t;
}

GridFunction commutator_tail_high(const GridFunction& a, const GridFunction& f, double alpha,
                                  int L) {
    const GridFunction com = commutator_direct(a, f, alpha);
    return project_levels(com, L, a.geometry().level_max() - 1, false);
}

GridFunction commutator_tail_low(const GridFunction& a, const GridFunction& f, double alpha,
                                 int L) {
    const GridFunction com = commutator_direct(a, f, alpha);
    return project_levels(com, a.geometry().level_min(), -L, false);
}

GridFunction scale_truncate(const GridFunction& a, int L) {
    if (L < 0) throw std::invalid_argument("scale_truncate: L must be nonnegative");
    return project_levels(a, -L, L, false);
}

GridFunction spatial_truncate(const GridFunction& a, int level, double R) {
    const GridGeometry& g = a.geometry();
    if (level < g.level_min() || level >= g.level_max())
        throw std::out_of_range("spatial_truncate: level outside [j_min, J-1]");
    const HaarCoefficients c = forward_transform(a);
    HaarCoefficients out(g);
    const int e = pattern_count(g.dim());
    for (index_t q = 0; q < g.cube_count(level); ++q) {
        const DyadicCube cube = g.cube_from_flat(level, q);
        double norm2 = 0;
        for (int nu = 0; nu < g.dim(); ++nu)
            norm2 += double(cube.index[nu]) * double(cube.index[nu]);
        if (std::sqrt(norm2) > R)
            for (int p = 1; p <= e; ++p)
                out.at(level, q, unsigned(p)) = c.at(level, q, unsigned(p));
    }
    return inverse_transform(out);
}

MajorantPair pointwise_majorant(const GridFunction& f, double alpha, const SpaceParams& pq,
                                unsigned pattern) {
    const GridGeometry& g = f.geometry();
    const FractionalParams fp = FractionalParams::derive(alpha, pq, g.dim());
    const double n_over_s = double(g.dim()) / fp.target.p;
    const double p_over_s = pq.p / fp.target.p;

    const HaarCoefficients c = forward_transform(f);
    GridFunction lhs(g), peak(g);
    for (int j = g.level_min(); j < g.level_max(); ++j) {
        const GridFunction s = level_slice(c, j, pattern);
        const double w = g.measure_pow(j, alpha / double(g.dim()));
        for (index_t i = 0; i < lhs.size(); ++i) {
            lhs[i] += w * std::fabs(s[i]);
            peak[i] = std::max(peak[i], std::fabs(s[i]));
        }
    }

    const double constant =
        1.0 / (1.0 - std::exp2(-alpha)) + 1.0 / (1.0 - std::exp2(-n_over_s));
    const double fnorm = morrey_norm(f, pq);
    const double fpow = (fnorm > 0) ? std::pow(fnorm, 1.0 - p_over_s) : 0.0;
    GridFunction rhs(g);
    for (index_t i = 0; i < rhs.size(); ++i)
        rhs[i] = constant * fpow * std::pow(peak[i], p_over_s);
    return MajorantPair{std::move(lhs), std::move(rhs), constant};
}

}  // namespace dyham
