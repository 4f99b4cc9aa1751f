#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "dyham/operators.hpp"
#include "dyham/rng.hpp"

namespace dyham {

// Random function with independent uniform[-1,1] haar coefficients, the level-j
// ones scaled by 2^(theta j).  Draw order is fixed so seeded runs reproduce
// byte for byte: base mean first (skipped entirely when mean_zero), then levels
// ascending, cubes row-major within a level, patterns in increasing mask order.
GridFunction random_function(const GridGeometry& g, SplitMix64& rng,
                             double theta = 0.0, bool mean_zero = false);

using Operator = std::function<GridFunction(const GridFunction&)>;
using NormFunctional = std::function<double(const GridFunction&)>;

struct ProbeResult {
    double best_ratio = 0.0;
    int best_index = -1;  // ensemble member attaining the max
    int ensemble = 0;
};

// max ||T f|| / ||f|| over a seeded ensemble: an empirical lower bound for the
// operator norm of T between the two normed spaces.
ProbeResult opnorm_probe(const Operator& op, const NormFunctional& input_norm,
                         const NormFunctional& output_norm, const GridGeometry& g,
                         int ensemble, std::uint64_t seed, double theta = 0.0,
                         bool mean_zero = true);

// Empirical operator norm of f -> paraproduct(a, f) on L^q resp. M^p_q.
double paraproduct_opnorm_lq(const GridFunction& a, double q, int ensemble,
                             std::uint64_t seed, double theta = 0.0);
double paraproduct_opnorm_morrey(const GridFunction& a, const SpaceParams& pq,
                                 int ensemble, std::uint64_t seed, double theta = 0.0);

// Testing the commutator [a, I_alpha] on normalized single-cube inputs:
//   value = max over (U, input) of || [a, I_alpha] (h / ||h||_source) ||_target,
// where the inputs at each cube U are its indicator (witness_pattern 0) and its
// haar functions (witness_pattern = the sign pattern).  bmo_side reports
// sup_U m_U( | sum_{Q subset U, eps} <a,h^eps_Q> h^eps_Q | ), which the localized
// expansion identifies with ||a||_BMO.
struct CubeTestingReport {
    double value = 0.0;
    DyadicCube witness;
    unsigned witness_pattern = 0;
    double bmo_side = 0.0;
};
CubeTestingReport cube_testing_lower(const GridFunction& a, const FractionalParams& fp);

// One row of the commutator comparison: BMO norm of the symbol against the
// haar-testing lower bound and a random-ensemble probe of the operator norm.
struct SurveyRow {
    std::string label;
    double bmo = 0.0;
    double testing = 0.0;
    double probe = 0.0;
    double testing_over_bmo = 0.0;
    double probe_over_bmo = 0.0;
};
SurveyRow survey_symbol(const std::string& label, const GridFunction& a,
                        const FractionalParams& fp, int ensemble, std::uint64_t seed,
                        double theta = 0.0);

// BMO distance from a to its truncation onto detail levels |j| <= L.
double vmo_distance(const GridFunction& a, int L);

struct DecayProfile {
    std::vector<double> parameter;
    std::vector<double> value;

    bool nonincreasing(double rel_slack, double abs_slack = 0.0) const;
};

struct CompactnessConfig {
    std::vector<int> scale_cuts;      // L grid for the tail and vmo profiles
    std::vector<double> radius_cuts;  // R grid for the spatial profile
    int spatial_level = 0;
    int ensemble = 50;
    std::uint64_t seed = 42;
    double theta = 0.0;
};

// Decay diagnostics behind compactness of the commutator: probes of the high
// and low output-scale tails (same ensemble replayed at every cut), the BMO
// size of the far-field part of a, and the BMO distance to scale truncations.
struct CompactnessDiagnostic {
    DecayProfile high_tail;
    DecayProfile low_tail;
    DecayProfile spatial;
    DecayProfile vmo;
};
CompactnessDiagnostic compactness_diagnostic(const GridFunction& a,
                                             const FractionalParams& fp,
                                             const CompactnessConfig& cfg);

}  // namespace dyham
