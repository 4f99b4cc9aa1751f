#include "dyham/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace dyham {

GridFunction random_function(const GridGeometry& g, SplitMix64& rng, double theta,
                             bool mean_zero) {
    HaarCoefficients c(g);
    if (!mean_zero) c.base_mean() = rng.next_symmetric();
    unsigned npat = static_cast<unsigned>(pattern_count(g.dim()));
    for (int level = c.level_begin(); level < c.level_end(); ++level) {
        double scale = std::exp2(theta * level);
        for (index_t q = 0; q < g.cube_count(level); ++q)
            for (unsigned eps = 1; eps <= npat; ++eps)
                c.at(level, q, eps) = scale * rng.next_symmetric();
    }
    return inverse_transform(c);
}

ProbeResult opnorm_probe(const Operator& op, const NormFunctional& input_norm,
                         const NormFunctional& output_norm, const GridGeometry& g,
                         int ensemble, std::uint64_t seed, double theta, bool mean_zero) {
    if (ensemble <= 0) throw std::invalid_argument("opnorm_probe: ensemble must be positive");
    SplitMix64 rng(seed);
    ProbeResult r;
    r.ensemble = ensemble;
    for (int i = 0; i < ensemble; ++i) {
        GridFunction f = random_function(g, rng, theta, mean_zero);
        double in = input_norm(f);
        if (!(in > 0.0)) continue;
        double ratio = output_norm(op(f)) / in;
        if (ratio > r.best_ratio) {
            r.best_ratio = ratio;
            r.best_index = i;
        }
    }
    return r;
}

double paraproduct_opnorm_lq(const GridFunction& a, double q, int ensemble,
                             std::uint64_t seed, double theta) {
    auto nrm = [q](const GridFunction& f) { return lq_norm(f, q); };
    return opnorm_probe([&a](const GridFunction& f) { return paraproduct(a, f); }, nrm, nrm,
                        a.geometry(), ensemble, seed, theta, false)
        .best_ratio;
}

double paraproduct_opnorm_morrey(const GridFunction& a, const SpaceParams& pq, int ensemble,
                                 std::uint64_t seed, double theta) {
    auto nrm = [pq](const GridFunction& f) { return morrey_norm(f, pq); };
    return opnorm_probe([&a](const GridFunction& f) { return paraproduct(a, f); }, nrm, nrm,
                        a.geometry(), ensemble, seed, theta, false)
        .best_ratio;
}

CubeTestingReport cube_testing_lower(const GridFunction& a, const FractionalParams& fp) {
    const GridGeometry& g = a.geometry();
    CubeTestingReport rep;
    rep.witness = g.base_cube();
    unsigned npat = static_cast<unsigned>(pattern_count(g.dim()));
    auto consider = [&](const GridFunction& input, const DyadicCube& u, unsigned eps) {
        double nrm = morrey_norm(input, fp.source);
        if (!(nrm > 0.0)) return;
        double v = morrey_norm(commutator_direct(a, (1.0 / nrm) * input, fp.alpha), fp.target);
        if (v > rep.value) {
            rep.value = v;
            rep.witness = u;
            rep.witness_pattern = eps;
        }
    };
    for (int level = g.level_min(); level <= g.level_max(); ++level)
        for (index_t c = 0; c < g.cube_count(level); ++c) {
            DyadicCube u = g.cube_from_flat(level, c);
            // pattern 0 records an indicator input; an indicator sees every
            // scale of the symbol inside u at once, which a single haar cannot
            consider(indicator(g, u), u, 0);
            if (level == g.level_max()) continue;
            for (unsigned eps = 1; eps <= npat; ++eps)
                consider(haar_function(g, u, eps), u, eps);
        }
    // sup_U m_U | sum_{Q subset U} <a,h> h | collapses to the BMO norm: inside U
    // the expansion reproduces a - m_U(a) exactly.
    rep.bmo_side = bmo_norm(a);
    return rep;
}

SurveyRow survey_symbol(const std::string& label, const GridFunction& a,
                        const FractionalParams& fp, int ensemble, std::uint64_t seed,
                        double theta) {
    SurveyRow row;
    row.label = label;
    row.bmo = bmo_norm(a);
    row.testing = cube_testing_lower(a, fp).value;
    auto in_norm = [&fp](const GridFunction& f) { return morrey_norm(f, fp.source); };
    auto out_norm = [&fp](const GridFunction& f) { return morrey_norm(f, fp.target); };
    double alpha = fp.alpha;
    row.probe = opnorm_probe(
                    [&a, alpha](const GridFunction& f) { return commutator_direct(a, f, alpha); },
                    in_norm, out_norm, a.geometry(), ensemble, seed, theta, true)
                    .best_ratio;
    if (row.bmo > 0.0) {
        row.testing_over_bmo = row.testing / row.bmo;
        row.probe_over_bmo = row.probe / row.bmo;
    }
    return row;
}

double vmo_distance(const GridFunction& a, int L) {
    return bmo_norm(a - scale_truncate(a, L));
}

bool DecayProfile::nonincreasing(double rel_slack, double abs_slack) const {
    for (std::size_t i = 1; i < value.size(); ++i)
        if (value[i] > value[i - 1] * (1.0 + rel_slack) + abs_slack) return false;
    return true;
}

CompactnessDiagnostic compactness_diagnostic(const GridFunction& a,
                                             const FractionalParams& fp,
                                             const CompactnessConfig& cfg) {
    const GridGeometry& g = a.geometry();
    CompactnessDiagnostic d;
    auto in_norm = [&fp](const GridFunction& f) { return morrey_norm(f, fp.source); };
    auto out_norm = [&fp](const GridFunction& f) { return morrey_norm(f, fp.target); };
    double alpha = fp.alpha;
    for (int L : cfg.scale_cuts) {
        // the seed restarts at every cut, so all cuts see the same ensemble
        auto high = opnorm_probe(
            [&, L](const GridFunction& f) { return commutator_tail_high(a, f, alpha, L); },
            in_norm, out_norm, g, cfg.ensemble, cfg.seed, cfg.theta, true);
        auto low = opnorm_probe(
            [&, L](const GridFunction& f) { return commutator_tail_low(a, f, alpha, L); },
            in_norm, out_norm, g, cfg.ensemble, cfg.seed, cfg.theta, true);
        d.high_tail.parameter.push_back(L);
        d.high_tail.value.push_back(high.best_ratio);
        d.low_tail.parameter.push_back(L);
        d.low_tail.value.push_back(low.best_ratio);
        d.vmo.parameter.push_back(L);
        d.vmo.value.push_back(vmo_distance(a, L));
    }
    for (double R : cfg.radius_cuts) {
        d.spatial.parameter.push_back(R);
        d.spatial.value.push_back(bmo_norm(spatial_truncate(a, cfg.spatial_level, R)));
    }
    return d;
}

}  // namespace dyham
