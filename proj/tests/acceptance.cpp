// Acceptance gate for the toolkit.  Each numbered check prints one line,
//   [PASS] <name>  (<measurements>)
// and the binary exits 0 only if every line passes.  Tolerances are part of
// the contract and are asserted, never adjusted at runtime.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "dyham/estimation.hpp"
#include "dyham/io.hpp"
#include "dyham/verify.hpp"

using namespace dyham;

namespace {

int failures = 0;

void line(const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] %s  (%s)\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) { return io::format_double(v); }

// the two geometries every exact identity must hold on
const struct {
    int n, J;
} kGeometries[] = {{1, 8}, {2, 5}};

void check_roundtrip_parseval() {
    auto t0 = std::chrono::steady_clock::now();
    double worst_round = 0.0, worst_parseval = 0.0;
    for (auto [n, J] : kGeometries) {
        GridGeometry g(n, 0, J);
        SplitMix64 rng(42);
        for (int i = 0; i < 50; ++i) {
            GridFunction f = random_function(g, rng, 0.0, false);
            HaarCoefficients c = forward_transform(f);
            worst_round = std::max(
                worst_round, linf_distance(f, inverse_transform(c)) / (linf_norm(f) + 1e-300));
            double lhs = lq_norm(f, 2.0);
            double rhs = c.base_mean() * c.base_mean() * g.base_measure();
            for (double v : c.raw()) rhs += v * v;
            worst_parseval = std::max(worst_parseval,
                                      std::fabs(lhs * lhs - rhs) / std::max(lhs * lhs, 1e-300));
        }
    }
    double dt = seconds_since(t0);
    line("1a transform round trip and energy identity",
         worst_round <= 1e-10 && worst_parseval <= 1e-10 && dt < 10.0,
         "roundtrip=" + fmt(worst_round) + " parseval=" + fmt(worst_parseval) + " t=" + fmt(dt));
}

void check_localized_identity() {
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (auto [n, J] : kGeometries) {
        GridGeometry g(n, 0, J);
        SplitMix64 rng(43);
        for (int i = 0; i < 10; ++i) {
            GridFunction f = random_function(g, rng, 0.0, false);
            HaarCoefficients c = forward_transform(f);
            double total = lq_norm(f, 2.0);
            double scale = std::max(total * total, 1e-300);
            // subtree sums of squared coefficients, finest level first
            std::vector<std::vector<double>> sub(static_cast<std::size_t>(g.refinement_depth()));
            for (int level = g.level_max() - 1; level >= g.level_min(); --level) {
                auto& row = sub[static_cast<std::size_t>(level - g.level_min())];
                row.assign(static_cast<std::size_t>(g.cube_count(level)), 0.0);
                for (index_t cu = 0; cu < g.cube_count(level); ++cu) {
                    double s = 0.0;
                    for (unsigned eps = 1; eps <= static_cast<unsigned>(pattern_count(n)); ++eps) {
                        double v = c.at(level, cu, eps);
                        s += v * v;
                    }
                    if (level + 1 < g.level_max()) {
                        children(g.cube_from_flat(level, cu), n, [&](const DyadicCube& ch) {
                            s += sub[static_cast<std::size_t>(level + 1 - g.level_min())]
                                    [static_cast<std::size_t>(g.cube_flat_index(ch))];
                        });
                    }
                    row[static_cast<std::size_t>(cu)] = s;
                }
            }
            for (int level = g.level_min(); level < g.level_max(); ++level)
                for (index_t cu = 0; cu < g.cube_count(level); ++cu) {
                    double osc = oscillation_norm(f, g.cube_from_flat(level, cu), 2.0);
                    double rhs = sub[static_cast<std::size_t>(level - g.level_min())]
                                    [static_cast<std::size_t>(cu)];
                    worst = std::max(worst, std::fabs(osc * osc - rhs) / scale);
                }
        }
    }
    double dt = seconds_since(t0);
    line("1b localized energy identity on every cube", worst <= 1e-9 && dt < 10.0,
         "residual=" + fmt(worst) + " t=" + fmt(dt));
}

void check_eigen_relation() {
    auto t0 = std::chrono::steady_clock::now();
    const double alpha = 0.125;
    double worst = 0.0;
    for (auto [n, J] : kGeometries) {
        GridGeometry g(n, 0, J);
        for (int level = g.level_min(); level < g.level_max(); ++level)
            for (index_t cu = 0; cu < g.cube_count(level); ++cu) {
                DyadicCube q = g.cube_from_flat(level, cu);
                for (unsigned eps = 1; eps <= static_cast<unsigned>(pattern_count(n)); ++eps) {
                    GridFunction h = haar_function(g, q, eps);
                    GridFunction expect = g.measure_pow(level, alpha / n) * h;
                    worst = std::max(worst, linf_distance(fractional_integral(h, alpha), expect) /
                                                linf_norm(expect));
                }
            }
    }
    double dt = seconds_since(t0);
    line("1c coefficient map acts diagonally on haar inputs", worst <= 1e-12 && dt < 10.0,
         "residual=" + fmt(worst) + " t=" + fmt(dt));
}

void check_four_term_identity() {
    auto t0 = std::chrono::steady_clock::now();
    const double alpha = 0.125;
    double worst = 0.0;
    for (auto [n, J] : kGeometries) {
        GridGeometry g(n, 0, J);
        SplitMix64 rng(44);
        for (int i = 0; i < 50; ++i) {
            GridFunction a = random_function(g, rng, 0.0, true);
            GridFunction f = random_function(g, rng, 0.0, true);
            GridFunction direct = commutator_direct(a, f, alpha);
            GridFunction sum(g);
            for (unsigned eps = 1; eps <= static_cast<unsigned>(pattern_count(n)); ++eps) {
                CommutatorTerms t = commutator_terms(a, f, alpha, eps);
                sum += t.i1;
                sum -= t.i2;
                sum += t.ii;
                sum -= t.iii;
            }
            worst = std::max(worst,
                             linf_distance(direct, sum) / (linf_norm(direct) + 1e-300));
        }
    }
    double dt = seconds_since(t0);
    line("1d four-term splitting reproduces the commutator", worst <= 1e-9 && dt < 10.0,
         "residual=" + fmt(worst) + " t=" + fmt(dt));
}

SuiteConfig band_config() {
    SuiteConfig cfg;  // n=1, jmin=0, J=8, J_low=4, seed 42
    cfg.ensemble = 500;
    cfg.command_line = "acceptance";
    return cfg;
}

void check_suite(const std::string& label, const std::string& suite, const SuiteConfig& cfg,
                 double budget_s) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteResult res = run_suite(suite, cfg);
    double dt = seconds_since(t0);
    std::string detail = "checks=" + std::to_string(res.checks.size()) + " t=" + fmt(dt);
    if (!res.passed()) detail += " first_fail=" + res.first_failure();
    line(label, res.passed() && dt < budget_s, detail);
}

void check_majorant() {
    auto t0 = std::chrono::steady_clock::now();
    SpaceParams pq{4.0, 2.0};
    long violations = 0;
    long cells = 0;
    GridGeometry g(1, 0, 8);
    for (double alpha : {0.125, 0.1875}) {
        SplitMix64 rng(42);
        for (int i = 0; i < 500; ++i) {
            GridFunction f = random_function(g, rng, 0.0, true);
            MajorantPair mp = pointwise_majorant(f, alpha, pq, 1);
            for (index_t x = 0; x < mp.lhs.size(); ++x) {
                ++cells;
                if (mp.lhs[x] > mp.rhs[x] * (1.0 + 1e-9) + 1e-12) ++violations;
            }
        }
    }
    double dt = seconds_since(t0);
    line("4 pointwise majorant dominates at every cell", violations == 0,
         "violations=" + std::to_string(violations) + " cells=" + std::to_string(cells) +
             " t=" + fmt(dt));
}

void check_exact_vmo_zero() {
    // single-level span with +-1 coefficients: every step of the reconstruction
    // stays in dyadic rationals, so the truncation residual must vanish bitwise
    GridGeometry g(1, 0, 8);
    HaarCoefficients c(g);
    for (index_t k = 0; k < 8; ++k) c.at(2, k % 4, 1) = (k % 2) ? -1.0 : 1.0;
    GridFunction a = inverse_transform(c);
    a *= 1.0 / bmo_norm(a);
    double exact = vmo_distance(a, 2);

    // generic span with real coefficients keeps only an ulp-level floor
    HaarCoefficients c2(g);
    c2.at(0, 0, 1) = 1.0;
    c2.at(1, 1, 1) = -0.7;
    c2.at(3, 4, 1) = 0.4;
    GridFunction b = inverse_transform(c2);
    b *= 1.0 / bmo_norm(b);
    double generic = vmo_distance(b, 3);

    line("6a scale truncation annihilates finite spans", exact == 0.0 && generic <= 1e-12,
         "single_level=" + fmt(exact) + " generic=" + fmt(generic));
}

void check_determinism() {
    auto t0 = std::chrono::steady_clock::now();
    SuiteConfig cfg;
    cfg.ensemble = 100;
    cfg.command_line = "acceptance determinism";
    std::string a1 = run_suite("thm1", cfg).table.to_csv();
    std::string a2 = run_suite("thm1", cfg).table.to_csv();
    std::string d1 = run_suite("decomp", cfg).table.to_csv();
    std::string d2 = run_suite("decomp", cfg).table.to_csv();
    double dt = seconds_since(t0);
    line("7 repeated seeded runs emit byte-identical reports", a1 == a2 && d1 == d2 && !a1.empty(),
         "bytes=" + std::to_string(a1.size() + d1.size()) + " t=" + fmt(dt));
}

}  // namespace

int main() {
    check_roundtrip_parseval();
    check_localized_identity();
    check_eigen_relation();
    check_four_term_identity();

    check_suite("2a norm vs square-function band", "thm1", band_config(), 120.0);
    check_suite("2b plain-integrability band and identities", "prop21", band_config(), 120.0);
    check_suite("2c oscillation norm vs cube testing", "thm5", band_config(), 120.0);

    check_suite("3a paraproduct band", "thm2", band_config(), 120.0);
    check_suite("3b fractional-integral band and exponent fence", "thm3", band_config(), 120.0);
    check_suite("3c commutator band", "thm4", band_config(), 120.0);

    check_majorant();

    {
        SuiteConfig cfg;
        cfg.J = 6;
        cfg.J_low = 3;
        cfg.p = 2.0;
        cfg.q = 3.0;
        cfg.ensemble = 200;
        cfg.command_line = "acceptance";
        check_suite("5 block decomposition bracket and pairing bound", "thm6", cfg, 120.0);
    }

    {
        SuiteConfig cfg;
        cfg.ensemble = 100;
        cfg.command_line = "acceptance";
        check_suite("6 decay profiles of the fixed symbol models", "thm7", cfg, 120.0);
    }
    check_exact_vmo_zero();

    check_determinism();

    if (failures) std::printf("ACCEPTANCE: %d gate(s) failed\n", failures);
    else std::printf("ACCEPTANCE: all gates passed\n");
    return failures == 0 ? 0 : 1;
}
