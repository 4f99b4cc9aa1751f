#pragma once

#include <string>

#include "dyham/norms.hpp"

namespace dyham {

// A (p,q)-block with 1 < p <= q: supported on one dyadic cube and scaled so
// that ||A||_{L^q} <= |Q|^{1/q - 1/p}.  Sums  f = sum_j lambda_j A_j  of such
// atoms give the predual norm  inf sum_j |lambda_j|  of the Morrey scale with
// conjugate exponents.
struct Block {
    DyadicCube support;
    GridFunction data;
    SpaceParams pq;

    Block(const DyadicCube& support, GridFunction data, const SpaceParams& pq);
};

struct BlockDecomposition {
    std::vector<double> weight;
    std::vector<Block> blocks;
    double cost = 0.0;  // sum |lambda_j|: a certified upper bound
    bool converged = true;
    int iterations = 0;

    GridFunction assemble(const GridGeometry& g) const;
};

struct UpperBoundOptions {
    int max_iterations = 2000;
    double tolerance = 1e-8;  // relative cost improvement considered progress
    int stall_window = 50;    // iterations without progress before stopping
};

// Minimizes sum_Q |Q|^{1/p-1/q} || f_Q ||_{L^q} over splittings f = sum_Q f_Q
// (f_Q supported on Q) by projected subgradient descent from the single-cube
// start f_base = f, with a pointwise realignment step, closed-form candidate
// splittings (full one-level splits) folded in, and a final coordinate-descent
// polish over sum-preserving single-cell transfers between levels.  Always
// returns a feasible decomposition, hence a valid upper bound, whether or not
// the iteration converged.
BlockDecomposition block_norm_upper(const GridFunction& f, const SpaceParams& pq,
                                    const UpperBoundOptions& opts = {});

struct LowerBoundOptions {
    int ascent_steps = 500;
};

struct LowerBoundWitness {
    double value = 0.0;
    GridFunction witness;
    std::string family = "none";  // which search family produced the bound

    explicit LowerBoundWitness(const GridGeometry& g) : witness(g) {}
};

// max |<f, g>| / ||g||_{M^{p'}_{q'}} over haar functions, cube indicators,
// sign f, and a deterministic coordinate ascent polish started from sign f.
// Any g gives a valid lower bound for the block norm, by duality.
LowerBoundWitness block_norm_lower(const GridFunction& f, const SpaceParams& pq,
                                   const LowerBoundOptions& opts = {});

struct DualityGapReport {
    double upper = 0.0;
    double lower = 0.0;
    double gap = 0.0;
    bool upper_converged = true;
};

DualityGapReport duality_gap_report(const GridFunction& f, const SpaceParams& pq,
                                    const UpperBoundOptions& uopts = {},
                                    const LowerBoundOptions& lopts = {});

}  // namespace dyham
