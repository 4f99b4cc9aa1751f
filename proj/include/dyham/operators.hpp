#pragma once

#include "dyham/haar.hpp"
#include "dyham/norms.hpp"

namespace dyham {

// Exponent bookkeeping for the dyadic fractional integral of order alpha:
// source M^p_q maps to target M^s_t with 1/s = 1/p - alpha/n and t/s = q/p.
// Construction fails unless 0 < alpha < n/p, which is exactly what keeps
// s finite and positive.
struct FractionalParams {
    double alpha = 0.0;
    int dim = 1;
    SpaceParams source;
    SpaceParams target;

    static FractionalParams derive(double alpha, const SpaceParams& source, int n);
};

// I_alpha f: multiplies the coefficient of h^eps_Q by |Q|^{alpha/n} and sends
// the base mean to zero; h^eps_Q is an eigenfunction with value |Q|^{alpha/n}.
GridFunction fractional_integral(const GridFunction& f, double alpha);
HaarCoefficients fractional_integral(const HaarCoefficients& c, double alpha);

// Paraproduct of a against f.  The normalized form weighs each coefficient of
// a by the mean of f on the cube,
//     Pi_a f = sum_{eps,Q} m_Q(f) <a, h^eps_Q> h^eps_Q,
// the raw form uses <f, chi_Q> = |Q| m_Q(f) instead.
GridFunction paraproduct(const GridFunction& a, const GridFunction& f,
                         bool normalized = true);
GridFunction paraproduct(const GridFunction& a, const GridFunction& f, unsigned pattern,
                         bool normalized = true);

// [a, I_alpha] f = a I_alpha f - I_alpha(a f), products taken cell by cell.
GridFunction commutator_direct(const GridFunction& a, const GridFunction& f, double alpha);

// Four-term splitting of the commutator for one sign pattern of a.  For
// base-mean-zero a and f,
//     [a, I_alpha] f = sum_eps ( I1 - I2 + II - III )
// holds cell by cell at finite resolution:
//   I1  = sum_Q m_Q(I_alpha f) <a,h^eps_Q> h^eps_Q        (coarser scales of f,
//         weighted |R|^{alpha/n} through I_alpha)
//   I2  = sum_Q |Q|^{alpha/n} <a,h^eps_Q> (m_Q(f) - mean f) h^eps_Q
//   II  = sum_Q |Q|^{alpha/n} <a,h^eps_Q><f,h^eps_Q> |h^eps_Q|^2
//   III = I_alpha [ sum_Q <a,h^eps_Q><f,h^eps_Q> |h^eps_Q|^2 ]
struct CommutatorTerms {
    GridFunction i1, i2, ii, iii;
};
CommutatorTerms commutator_terms(const GridFunction& a, const GridFunction& f,
                                 double alpha, unsigned pattern);

// Projection of [a, I_alpha] f onto output scales j >= L (resp. j <= -L).
GridFunction commutator_tail_high(const GridFunction& a, const GridFunction& f,
                                  double alpha, int L);
GridFunction commutator_tail_low(const GridFunction& a, const GridFunction& f,
                                 double alpha, int L);

// a_(L): the part of a expanded over detail levels |j| <= L (no mean).
GridFunction scale_truncate(const GridFunction& a, int L);

// Keeps only the level-nu coefficients whose cube index satisfies |m|_2 > R.
GridFunction spatial_truncate(const GridFunction& a, int level, double R);

// Pointwise domination of the fractional integral's level sums:
//   sum_j | sum_{Q in D_j} |Q|^{alpha/n} <f,h^eps_Q> h^eps_Q(x) |
//     <= C ||f||_{M^p_q}^{1-p/s} ( sup_l |f^eps_l(x)| )^{p/s}
// with C = 1/(1 - 2^{-alpha}) + 1/(1 - 2^{-n/s}) from the two geometric tails.
struct MajorantPair {
    GridFunction lhs;
    GridFunction rhs;
    double constant = 0.0;
};
MajorantPair pointwise_majorant(const GridFunction& f, double alpha,
                                const SpaceParams& pq, unsigned pattern);

}  // namespace dyham
