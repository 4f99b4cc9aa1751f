#pragma once

#include "dyham/grid_function.hpp"

namespace dyham {

// Exponent pair; admissibility depends on the role:
//   Morrey scale M^p_q   : 1 <= q <= p < inf
//   block scale (predual): 1 <  p <= q < inf
struct SpaceParams {
    double p = 2.0;
    double q = 2.0;

    void require_morrey() const;
    void require_block() const;
    // Hoelder conjugates (p', q'); needs p, q > 1.
    SpaceParams conjugate() const;
};

struct NormReport {
    double value = 0.0;
    DyadicCube witness;  // cube attaining the sup (coarsest, then lexicographic)
};

// || f ||_{L^q(R)}; the whole base cube when R is omitted.  1 <= q < inf.
double lq_norm(const GridFunction& f, double q);
double lq_norm(const GridFunction& f, double q, const DyadicCube& R);

// || f ||_{M^p_q} = sup_Q |Q|^{1/p - 1/q} || f ||_{L^q(Q)}, exhaustive over all
// dyadic cubes of the grid.  Ties resolved toward the coarsest cube, then
// row-major order, so the witness is reproducible.
NormReport morrey_norm_report(const GridFunction& f, const SpaceParams& pq);
double morrey_norm(const GridFunction& f, const SpaceParams& pq);

// Dyadic sharp maximal function: (M^# f)(x) = sup_{Q ni x} m_Q(|f - m_Q(f)|),
// the sup running over all grid cubes containing x.
GridFunction sharp_maximal(const GridFunction& f);

// || a ||_{BMO} = sup_Q m_Q(|a - m_Q(a)|) = || M^# a ||_inf.
NormReport bmo_report(const GridFunction& a);
double bmo_norm(const GridFunction& a);

// || f - m_R(f) ||_{L^q(R)}.
double oscillation_norm(const GridFunction& f, const DyadicCube& R, double q);

// |x|^q and s^{1/q} with exact fast paths for q = 1, 2 and small integers.
double pow_abs(double x, double q);
double root_q(double s, double q);

// Per-cube masses integral_Q |f|^q: masses[j - j_min][flat(Q)], j in [j_min, J].
std::vector<std::vector<double>> power_mass_tree(const GridFunction& f, double q);

}  // namespace dyham
