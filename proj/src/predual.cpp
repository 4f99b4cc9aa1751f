#include "dyham/predual.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dyham/haar.hpp"

namespace dyham {

namespace {

double signed_pow(double v, double e) {
    if (v == 0.0) return 0.0;
    double m = pow_abs(v, e);
    return v > 0.0 ? m : -m;
}

// cell_cube[d][x] = row-major index of the level (j_min + d) cube containing cell x
std::vector<std::vector<index_t>> build_cell_cube(const GridGeometry& g) {
    int depth = g.level_max() - g.level_min() + 1;
    std::vector<std::vector<index_t>> map(static_cast<std::size_t>(depth));
    for (int d = 0; d < depth; ++d) {
        auto& row = map[static_cast<std::size_t>(d)];
        row.assign(static_cast<std::size_t>(g.cell_count()), 0);
        int level = g.level_min() + d;
        index_t cubes = g.cube_count(level);
        for (index_t c = 0; c < cubes; ++c) {
            DyadicCube q = g.cube_from_flat(level, c);
            for_each_cell(g, q, [&](index_t x) { row[static_cast<std::size_t>(x)] = c; });
        }
    }
    return map;
}

// One full grid of values per level; the piece assigned to a cube Q at level j
// is field[j - j_min] restricted to Q's cells.
using Field = std::vector<std::vector<double>>;

struct CostModel {
    const GridGeometry* g = nullptr;
    SpaceParams pq;
    int depth = 0;
    double cellmu = 0.0;
    std::vector<double> weight;                     // |Q|^{1/p-1/q} per depth
    std::vector<std::vector<index_t>> cell_cube;

    explicit CostModel(const GridGeometry& geom, const SpaceParams& exps)
        : g(&geom), pq(exps), depth(geom.level_max() - geom.level_min() + 1),
          cellmu(geom.cell_measure()), cell_cube(build_cell_cube(geom)) {
        weight.resize(static_cast<std::size_t>(depth));
        for (int d = 0; d < depth; ++d)
            weight[static_cast<std::size_t>(d)] =
                geom.measure_pow(geom.level_min() + d, 1.0 / pq.p - 1.0 / pq.q);
    }

    // masses[d][c] = integral over cube c (level j_min+d) of |field[d]|^q
    std::vector<std::vector<double>> masses(const Field& field) const {
        std::vector<std::vector<double>> m(static_cast<std::size_t>(depth));
        for (int d = 0; d < depth; ++d) {
            auto& row = m[static_cast<std::size_t>(d)];
            row.assign(static_cast<std::size_t>(g->cube_count(g->level_min() + d)), 0.0);
            const auto& vals = field[static_cast<std::size_t>(d)];
            const auto& cmap = cell_cube[static_cast<std::size_t>(d)];
            for (std::size_t x = 0; x < vals.size(); ++x)
                row[static_cast<std::size_t>(cmap[x])] += pow_abs(vals[x], pq.q) * cellmu;
        }
        return m;
    }

    double cost(const std::vector<std::vector<double>>& m) const {
        double total = 0.0;
        for (int d = 0; d < depth; ++d)
            for (double mass : m[static_cast<std::size_t>(d)])
                if (mass > 0.0) total += weight[static_cast<std::size_t>(d)] * root_q(mass, pq.q);
        return total;
    }

    // d cost / d field[d][x] = w_d mu |v|^{q-1} sgn v mass_Q^{1/q - 1}
    Field subgradient(const Field& field, const std::vector<std::vector<double>>& m) const {
        Field grad(field.size());
        for (int d = 0; d < depth; ++d) {
            const auto& vals = field[static_cast<std::size_t>(d)];
            const auto& cmap = cell_cube[static_cast<std::size_t>(d)];
            auto& grow = grad[static_cast<std::size_t>(d)];
            grow.assign(vals.size(), 0.0);
            for (std::size_t x = 0; x < vals.size(); ++x) {
                double mass = m[static_cast<std::size_t>(d)][static_cast<std::size_t>(cmap[x])];
                if (mass <= 0.0 || vals[x] == 0.0) continue;
                grow[x] = weight[static_cast<std::size_t>(d)] * cellmu *
                          signed_pow(vals[x], pq.q - 1.0) * pow_abs(root_q(mass, pq.q), 1.0 - pq.q);
            }
        }
        return grad;
    }
};

// restores sum_d field[d][x] = f[x], spreading the residual evenly
void project_to_feasible(Field& field, const GridFunction& f) {
    int depth = static_cast<int>(field.size());
    for (index_t x = 0; x < f.size(); ++x) {
        double s = 0.0;
        for (int d = 0; d < depth; ++d) s += field[static_cast<std::size_t>(d)][static_cast<std::size_t>(x)];
        double r = (f[x] - s) / depth;
        for (int d = 0; d < depth; ++d) field[static_cast<std::size_t>(d)][static_cast<std::size_t>(x)] += r;
    }
}

// Replaces the column over cell x by f(x) |v_d| / sum |v_d|.  Keeps the sum
// equal to f(x) and shrinks every |v_d| (since sum |v_d| >= |f(x)|), so no
// per-cube mass grows: the cost never increases.
void realign(Field& field, const GridFunction& f) {
    int depth = static_cast<int>(field.size());
    for (index_t x = 0; x < f.size(); ++x) {
        double tot = 0.0;
        for (int d = 0; d < depth; ++d) tot += std::fabs(field[static_cast<std::size_t>(d)][static_cast<std::size_t>(x)]);
        if (tot <= 0.0) continue;
        for (int d = 0; d < depth; ++d) {
            double& v = field[static_cast<std::size_t>(d)][static_cast<std::size_t>(x)];
            v = f[x] * std::fabs(v) / tot;
        }
    }
}

// Cyclic coordinate descent over single-cell transfers between two levels.
// Moving t from level d1 to d2 at cell x changes the cost by a convex, C^1
// function of t (two L^q norms of affinely perturbed vectors), so repeated
// exact 1D minimization converges to the optimum of the smooth convex cost.
void pairwise_polish(const CostModel& cm, Field& field, double f_span) {
    if (cm.depth < 2) return;
    auto m = cm.masses(field);
    double mu = cm.cellmu;
    double q = cm.pq.q;
    double cost = cm.cost(m);
    for (int sweep = 0; sweep < 60; ++sweep) {
        for (std::size_t x = 0; x < field[0].size(); ++x) {
            for (int d1 = 0; d1 < cm.depth; ++d1)
                for (int d2 = d1 + 1; d2 < cm.depth; ++d2) {
                    index_t c1 = cm.cell_cube[static_cast<std::size_t>(d1)][x];
                    index_t c2 = cm.cell_cube[static_cast<std::size_t>(d2)][x];
                    double& v1 = field[static_cast<std::size_t>(d1)][x];
                    double& v2 = field[static_cast<std::size_t>(d2)][x];
                    double& m1 = m[static_cast<std::size_t>(d1)][static_cast<std::size_t>(c1)];
                    double& m2 = m[static_cast<std::size_t>(d2)][static_cast<std::size_t>(c2)];
                    double rest1 = std::max(0.0, m1 - pow_abs(v1, q) * mu);
                    double rest2 = std::max(0.0, m2 - pow_abs(v2, q) * mu);
                    double w1 = cm.weight[static_cast<std::size_t>(d1)];
                    double w2 = cm.weight[static_cast<std::size_t>(d2)];
                    auto phi = [&](double t) {
                        return w1 * root_q(rest1 + pow_abs(v1 - t, q) * mu, q) +
                               w2 * root_q(rest2 + pow_abs(v2 + t, q) * mu, q);
                    };
                    double span = std::fabs(v1) + std::fabs(v2) + f_span + 1.0;
                    double lo = -span, hi = span;
                    for (int it = 0; it < 72; ++it) {
                        double ta = lo + (hi - lo) / 3.0, tb = hi - (hi - lo) / 3.0;
                        if (phi(ta) <= phi(tb))
                            hi = tb;
                        else
                            lo = ta;
                    }
                    double t = 0.5 * (lo + hi);
                    double before = phi(0.0), after = phi(t);
                    if (after < before) {
                        v1 -= t;
                        v2 += t;
                        m1 = rest1 + pow_abs(v1, q) * mu;
                        m2 = rest2 + pow_abs(v2, q) * mu;
                    }
                }
        }
        m = cm.masses(field);  // refresh to cancel incremental drift
        double c = cm.cost(m);
        if (c >= cost - std::max(1e-12, 1e-10 * cost)) {
            cost = c;
            break;
        }
        cost = c;
    }
}

BlockDecomposition field_to_decomposition(const CostModel& cm, const Field& field,
                                          bool converged, int iterations) {
    const GridGeometry& g = *cm.g;
    auto m = cm.masses(field);
    BlockDecomposition out;
    out.converged = converged;
    out.iterations = iterations;
    for (int d = 0; d < cm.depth; ++d) {
        int level = g.level_min() + d;
        const auto& vals = field[static_cast<std::size_t>(d)];
        for (index_t c = 0; c < g.cube_count(level); ++c) {
            double mass = m[static_cast<std::size_t>(d)][static_cast<std::size_t>(c)];
            if (mass <= 0.0) continue;
            double lambda = cm.weight[static_cast<std::size_t>(d)] * root_q(mass, cm.pq.q);
            if (!(lambda > 0.0)) continue;
            DyadicCube q = g.cube_from_flat(level, c);
            GridFunction atom(g);
            for_each_cell(g, q, [&](index_t x) {
                atom[x] = vals[static_cast<std::size_t>(x)] / lambda;
            });
            out.weight.push_back(lambda);
            out.blocks.emplace_back(q, std::move(atom), cm.pq);
            out.cost += lambda;
        }
    }
    return out;
}

}  // namespace

Block::Block(const DyadicCube& sup, GridFunction vals, const SpaceParams& exps)
    : support(sup), data(std::move(vals)), pq(exps) {
    pq.require_block();
    const GridGeometry& g = data.geometry();
    g.require(support);
    std::vector<char> inside(static_cast<std::size_t>(g.cell_count()), 0);
    for_each_cell(g, support, [&](index_t x) { inside[static_cast<std::size_t>(x)] = 1; });
    for (index_t x = 0; x < data.size(); ++x)
        if (!inside[static_cast<std::size_t>(x)] && data[x] != 0.0)
            throw std::invalid_argument("block data does not vanish outside its support cube");
    double bound = g.measure_pow(support.level, 1.0 / pq.q - 1.0 / pq.p);
    if (lq_norm(data, pq.q) > bound * (1.0 + 1e-12))
        throw std::invalid_argument("block exceeds the size bound |Q|^{1/q-1/p}");
}

GridFunction BlockDecomposition::assemble(const GridGeometry& g) const {
    GridFunction out(g);
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        require_same_geometry(g, blocks[j].data.geometry());
        double lambda = weight[j];
        const GridFunction& atom = blocks[j].data;
        for_each_cell(g, blocks[j].support, [&](index_t x) { out[x] += lambda * atom[x]; });
    }
    return out;
}

BlockDecomposition block_norm_upper(const GridFunction& f, const SpaceParams& pq,
                                    const UpperBoundOptions& opts) {
    pq.require_block();
    const GridGeometry& g = f.geometry();
    CostModel cm(g, pq);
    std::size_t n = f.values().size();

    double fnorm2 = 0.0;
    for (double v : f.values()) fnorm2 += v * v;
    fnorm2 = std::sqrt(fnorm2);
    if (fnorm2 == 0.0) {
        BlockDecomposition out;
        out.iterations = 0;
        return out;  // zero function: empty sum, cost 0
    }

    // start from the single-piece splitting carried by the base cube
    Field field(static_cast<std::size_t>(cm.depth));
    for (auto& row : field) row.assign(n, 0.0);
    field[0] = f.values();

    Field best = field;
    double best_cost = cm.cost(cm.masses(field));
    int no_progress = 0;
    bool converged = false;
    int iter = 0;

    for (iter = 1; iter <= opts.max_iterations; ++iter) {
        auto m = cm.masses(field);
        Field grad = cm.subgradient(field, m);
        double gnorm = 0.0;
        for (const auto& row : grad)
            for (double v : row) gnorm += v * v;
        gnorm = std::sqrt(gnorm);
        if (gnorm <= 0.0) {
            converged = true;
            break;
        }
        double step = fnorm2 / (gnorm * iter);
        for (std::size_t d = 0; d < field.size(); ++d)
            for (std::size_t x = 0; x < n; ++x) field[d][x] -= step * grad[d][x];
        project_to_feasible(field, f);
        realign(field, f);

        double c = cm.cost(cm.masses(field));
        if (c < best_cost * (1.0 - opts.tolerance)) {
            best_cost = c;
            best = field;
            no_progress = 0;
        } else {
            if (c < best_cost) {
                best_cost = c;
                best = field;
            }
            if (++no_progress >= opts.stall_window) {
                converged = true;
                break;
            }
        }
    }

    // closed-form candidates: split f along one full level
    auto tree = power_mass_tree(f, pq.q);
    int best_level = -1;
    double best_level_cost = best_cost;
    for (int d = 0; d < cm.depth; ++d) {
        double c = 0.0;
        for (double mass : tree[static_cast<std::size_t>(d)])
            if (mass > 0.0) c += cm.weight[static_cast<std::size_t>(d)] * root_q(mass, pq.q);
        if (c < best_level_cost) {
            best_level_cost = c;
            best_level = d;
        }
    }
    if (best_level >= 0) {
        for (auto& row : best) std::fill(row.begin(), row.end(), 0.0);
        best[static_cast<std::size_t>(best_level)] = f.values();
    }

    pairwise_polish(cm, best, linf_norm(f));

    return field_to_decomposition(cm, best, converged, iter);
}

LowerBoundWitness block_norm_lower(const GridFunction& f, const SpaceParams& pq,
                                   const LowerBoundOptions& opts) {
    pq.require_block();
    SpaceParams dual = pq.conjugate();
    dual.require_morrey();
    const GridGeometry& g = f.geometry();

    LowerBoundWitness best(g);
    auto consider = [&](const GridFunction& cand, const char* family) {
        double den = morrey_norm(cand, dual);
        if (!(den > 0.0)) return;
        double r = std::fabs(pairing(f, cand)) / den;
        if (r > best.value) {
            best.value = r;
            best.witness = cand;
            best.family = family;
        }
    };

    unsigned npat = static_cast<unsigned>(pattern_count(g.dim()));
    for (int level = g.level_min(); level < g.level_max(); ++level)
        for (index_t c = 0; c < g.cube_count(level); ++c) {
            DyadicCube q = g.cube_from_flat(level, c);
            for (unsigned eps = 1; eps <= npat; ++eps)
                consider(haar_function(g, q, eps), "haar");
        }
    for (int level = g.level_min(); level <= g.level_max(); ++level)
        for (index_t c = 0; c < g.cube_count(level); ++c)
            consider(indicator(g, g.cube_from_flat(level, c)), "indicator");

    GridFunction sgn(g);
    bool any = false;
    for (index_t x = 0; x < f.size(); ++x) {
        sgn[x] = f[x] > 0.0 ? 1.0 : (f[x] < 0.0 ? -1.0 : 0.0);
        if (sgn[x] != 0.0) any = true;
    }
    if (!any) return best;
    consider(sgn, "sign");

    // deterministic cyclic coordinate ascent polish, incremental bookkeeping
    CostModel cm(g, dual);  // reuses the cell->cube maps; weights unused here
    std::vector<double> dw(static_cast<std::size_t>(cm.depth));
    for (int d = 0; d < cm.depth; ++d)
        dw[static_cast<std::size_t>(d)] = g.measure_pow(g.level_min() + d, 1.0 / dual.p - 1.0 / dual.q);
    GridFunction cur = sgn;
    auto masses = power_mass_tree(cur, dual.q);
    double mu = g.cell_measure();
    double pair_val = pairing(f, cur);

    auto morrey_of = [&](const std::vector<std::vector<double>>& m) {
        double v = 0.0;
        for (int d = 0; d < cm.depth; ++d)
            for (double mass : m[static_cast<std::size_t>(d)]) {
                double w = dw[static_cast<std::size_t>(d)] * root_q(mass, dual.q);
                if (w > v) v = w;
            }
        return v;
    };
    double cur_ratio = 0.0;
    {
        double den = morrey_of(masses);
        cur_ratio = den > 0.0 ? std::fabs(pair_val) / den : 0.0;
    }

    std::size_t ncell = static_cast<std::size_t>(g.cell_count());
    for (int step = 0; step < opts.ascent_steps; ++step) {
        index_t x = static_cast<index_t>(static_cast<std::size_t>(step) % ncell);
        double delta = 1.0 / (1.0 + static_cast<double>(step) / static_cast<double>(ncell));
        double old = cur[x];
        double pick = old;
        double pick_ratio = cur_ratio;
        for (double trial : {old + delta, old - delta}) {
            auto m = masses;
            for (int d = 0; d < cm.depth; ++d) {
                index_t c = cm.cell_cube[static_cast<std::size_t>(d)][static_cast<std::size_t>(x)];
                double& mass = m[static_cast<std::size_t>(d)][static_cast<std::size_t>(c)];
                mass = std::max(0.0, mass - pow_abs(old, dual.q) * mu) + pow_abs(trial, dual.q) * mu;
            }
            double den = morrey_of(m);
            if (!(den > 0.0)) continue;
            double pv = pair_val + f[x] * (trial - old) * mu;
            double r = std::fabs(pv) / den;
            if (r > pick_ratio) {
                pick_ratio = r;
                pick = trial;
            }
        }
        if (pick != old) {
            for (int d = 0; d < cm.depth; ++d) {
                index_t c = cm.cell_cube[static_cast<std::size_t>(d)][static_cast<std::size_t>(x)];
                double& mass = masses[static_cast<std::size_t>(d)][static_cast<std::size_t>(c)];
                mass = std::max(0.0, mass - pow_abs(old, dual.q) * mu) + pow_abs(pick, dual.q) * mu;
            }
            pair_val += f[x] * (pick - old) * mu;
            cur[x] = pick;
            cur_ratio = pick_ratio;
        }
    }
    consider(cur, "ascent");  // re-evaluated from scratch, so the bound is exact

    return best;
}

DualityGapReport duality_gap_report(const GridFunction& f, const SpaceParams& pq,
                                    const UpperBoundOptions& uopts,
                                    const LowerBoundOptions& lopts) {
    DualityGapReport rep;
    BlockDecomposition dec = block_norm_upper(f, pq, uopts);
    LowerBoundWitness low = block_norm_lower(f, pq, lopts);
    rep.upper = dec.cost;
    rep.lower = low.value;
    rep.gap = rep.upper - rep.lower;
    rep.upper_converged = dec.converged;
    return rep;
}

}  // namespace dyham
