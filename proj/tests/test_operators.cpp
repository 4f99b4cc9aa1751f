#include <doctest.h>

#include <stdexcept>

#include "dyham/operators.hpp"
#include "oracles.hpp"

using namespace dyham;

namespace {

GridFunction random_mean_zero(const GridGeometry& g, SplitMix64& rng) {
    HaarCoefficients c(g);
    for (auto& x : c.raw()) x = rng.next_symmetric();
    return inverse_transform(c);
}

}  // namespace

TEST_CASE("exponent map: admissible values derive, endpoint and beyond are rejected") {
    const SpaceParams pq{4.0, 2.0};
    const FractionalParams fp = FractionalParams::derive(0.125, pq, 1);
    CHECK(fp.target.p == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(fp.target.q == doctest::Approx(4.0).epsilon(1e-14));

    // 1/s = 1/p - alpha/n must stay positive: alpha = n/p is the endpoint
    CHECK_THROWS_AS(FractionalParams::derive(0.25, pq, 1), std::invalid_argument);
    CHECK_THROWS_AS(FractionalParams::derive(0.5, pq, 1), std::invalid_argument);
    CHECK_THROWS_AS(FractionalParams::derive(0.0, pq, 1), std::invalid_argument);
    CHECK_THROWS_AS(FractionalParams::derive(1.5, pq, 1), std::invalid_argument);
    // in two dimensions alpha = 0.25 becomes admissible for the same (p,q)
    const FractionalParams fp2 = FractionalParams::derive(0.25, pq, 2);
    CHECK(fp2.target.p == doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("haar functions are eigenfunctions of the fractional integral") {
    for (int n : {1, 2}) {
        GridGeometry g(n, 0, n == 1 ? 5 : 3);
        const double alpha = 0.5;
        oracle::for_all_cubes(g, [&](const DyadicCube& q) {
            if (q.level >= g.level_max()) return;
            for (int p = 1; p <= pattern_count(n); ++p) {
                const GridFunction h = haar_function(g, q, unsigned(p));
                const GridFunction th = fractional_integral(h, alpha);
                const double ev = g.measure_pow(q.level, alpha / double(n));
                CHECK(linf_distance(th, ev * h) < 1e-12);
            }
        });
    }
}

TEST_CASE("fractional integral kills constants and composes additively") {
    GridGeometry g(1, 0, 6);
    CHECK(linf_norm(fractional_integral(constant_function(g, 2.0), 0.3)) == 0.0);

    SplitMix64 rng(7);
    const GridFunction f = random_mean_zero(g, rng);
    const GridFunction two_step = fractional_integral(fractional_integral(f, 0.3), 0.45);
    const GridFunction one_step = fractional_integral(f, 0.75);
    CHECK(linf_distance(two_step, one_step) < 1e-12);
}

TEST_CASE("fractional integral of a normalized indicator: on-cube value and leakage") {
    // f = |Q|^{-1} chi_Q picks up |R|^{alpha/n - 1} from every strict ancestor R:
    // constant (2^n - 1) sum_{k=1..K} 2^{-k(n-alpha)} times |Q|^{alpha/n-1} on Q,
    // plus a nonzero remainder outside Q: the ancestor series does not telescope
    // away once the |R|^{alpha/n} weights are applied.
    const double alpha = 0.5;
    for (int levels : {1, 2, 3}) {
        GridGeometry g(1, 0, 4);
        const DyadicCube q{levels, {0}};
        GridFunction f = indicator(g, q);
        f *= 1.0 / g.measure(q.level);
        const GridFunction tf = fractional_integral(f, alpha);

        double series = 0;
        for (int k = 1; k <= levels; ++k) series += std::exp2(-double(k) * (1.0 - alpha));
        const double on_value = g.measure_pow(q.level, alpha - 1.0) * series;
        for_each_cell(g, q, [&](index_t i) {
            CHECK(tf[i] == doctest::Approx(on_value).epsilon(1e-12));
        });

        double off = 0;
        for (index_t i = 0; i < tf.size(); ++i) off = std::max(off, std::fabs(tf[i]));
        GridFunction outside = tf;
        for_each_cell(g, q, [&](index_t i) { outside[i] = 0.0; });
        CHECK(linf_norm(outside) > 0.1);  // the off-cube residual is real, not roundoff
    }
}

TEST_CASE("paraproduct matches direct summation in both normalizations") {
    GridGeometry g(1, 0, 4);
    SplitMix64 rng(8);
    const GridFunction a = random_mean_zero(g, rng);
    GridFunction f = oracle::random_values(g, 55);

    for (bool normalized : {true, false}) {
        GridFunction direct(g);
        oracle::for_all_cubes(g, [&](const DyadicCube& q) {
            if (q.level >= g.level_max()) return;
            const double mean = cube_mean(f, q);
            const double w = normalized ? mean : mean * g.measure(q.level);
            for (int p = 1; p <= pattern_count(1); ++p) {
                const GridFunction h = haar_function(g, q, unsigned(p));
                direct += (w * oracle::haar_coefficient(a, q, unsigned(p))) * h;
            }
        });
        CHECK(linf_distance(paraproduct(a, f, normalized), direct) < 1e-11);
    }

    // the two normalizations differ by the cube measures, so on a unit base
    // grid they agree only for coefficients at level 0
    CHECK(linf_distance(paraproduct(a, f, true), paraproduct(a, f, false)) > 1e-6);
}

TEST_CASE("commutator four-term splitting is exact for mean-zero inputs") {
    for (int n : {1, 2}) {
        GridGeometry g(n, 0, n == 1 ? 5 : 3);
        SplitMix64 rng(900 + std::uint64_t(n));
        const double alpha = 0.6;
        for (int rep = 0; rep < 5; ++rep) {
            const GridFunction a = random_mean_zero(g, rng);
            const GridFunction f = random_mean_zero(g, rng);
            const GridFunction com = commutator_direct(a, f, alpha);

            GridFunction sum(g);
            for (int p = 1; p <= pattern_count(n); ++p) {
                const CommutatorTerms t = commutator_terms(a, f, alpha, unsigned(p));
                sum += t.i1;
                sum -= t.i2;
                sum += t.ii;
                sum -= t.iii;
            }
            // cell-by-cell, means included: the splitting reproduces the
            // commutator exactly at finite resolution
            const double scale = std::max(1.0, linf_norm(com));
            CHECK(linf_distance(sum, com) / scale < 1e-11);
        }
    }
}

TEST_CASE("commutator terms: I1 is the paraproduct against the fractional image") {
    GridGeometry g(1, 0, 5);
    SplitMix64 rng(17);
    const GridFunction a = random_mean_zero(g, rng);
    const GridFunction f = random_mean_zero(g, rng);
    const double alpha = 0.4;
    const CommutatorTerms t = commutator_terms(a, f, alpha, 1);
    const GridFunction tf = fractional_integral(f, alpha);
    CHECK(linf_distance(t.i1, paraproduct(a, tf, 1u, true)) < 1e-12);
}

TEST_CASE("tail projections split the commutator by output scale") {
    GridGeometry g(1, 0, 5);
    SplitMix64 rng(18);
    const GridFunction a = random_mean_zero(g, rng);
    const GridFunction f = random_mean_zero(g, rng);
    const double alpha = 0.5;
    const GridFunction com = commutator_direct(a, f, alpha);

    for (int L = 0; L <= 5; ++L) {
        const GridFunction high = commutator_tail_high(a, f, alpha, L);
        const GridFunction rest = project_levels(com, g.level_min(), L - 1, true);
        CHECK(linf_distance(high + rest, com) < 1e-11);
    }
    // L beyond the finest level leaves nothing
    CHECK(linf_norm(commutator_tail_high(a, f, alpha, 6)) == 0.0);
    // the low tail with -L below j_min is empty; with -L at the top it is the
    // whole mean-free part
    CHECK(linf_norm(commutator_tail_low(a, f, alpha, 1)) == 0.0);
    const GridFunction low_all = commutator_tail_low(a, f, alpha, -4);
    CHECK(linf_distance(low_all, haar_part(com)) < 1e-11);
}

TEST_CASE("scale truncation recovers a finite haar sum once L covers its levels") {
    GridGeometry g(1, 0, 5);
    GridFunction a(g);
    a += 2.0 * haar_function(g, DyadicCube{0, {0}}, 1);
    a -= 1.5 * haar_function(g, DyadicCube{3, {5}}, 1);
    CHECK(linf_distance(scale_truncate(a, 3), a) < 1e-12);
    CHECK(linf_distance(scale_truncate(a, 4), a) < 1e-12);
    // L = 2 drops the level-3 piece
    const GridFunction partial = scale_truncate(a, 2);
    CHECK(linf_distance(partial, 2.0 * haar_function(g, DyadicCube{0, {0}}, 1)) < 1e-12);
}

TEST_CASE("spatial truncation keeps only far-out indices at one level") {
    GridGeometry g(1, 0, 4);
    SplitMix64 rng(19);
    const GridFunction a = random_mean_zero(g, rng);
    const HaarCoefficients c = forward_transform(a);
    const int nu = 3;
    const GridFunction far = spatial_truncate(a, nu, 4.0);
    const HaarCoefficients fc = forward_transform(far);
    for (index_t q = 0; q < g.cube_count(nu); ++q) {
        const double kept = (double(q) > 4.0) ? c.at(nu, q, 1) : 0.0;
        CHECK(fc.at(nu, q, 1) == doctest::Approx(kept).epsilon(1e-12));
    }
    // radius beyond every index wipes the function out
    CHECK(linf_norm(spatial_truncate(a, nu, 8.0)) < 1e-13);
    // bmo is nonincreasing along growing radii
    double prev = 1e300;
    for (double R : {-1.0, 0.0, 2.0, 5.0, 8.0}) {
        const double b = bmo_norm(spatial_truncate(a, nu, R));
        CHECK(b <= prev + 1e-12);
        prev = b;
    }
}

TEST_CASE("pointwise majorant dominates the weighted level sums everywhere") {
    const SpaceParams pq{4.0, 2.0};
    const double alpha = 0.125;
    GridGeometry g(1, 0, 6);
    SplitMix64 rng(20);
    for (int rep = 0; rep < 20; ++rep) {
        const GridFunction f = random_mean_zero(g, rng);
        const MajorantPair m = pointwise_majorant(f, alpha, pq, 1);
        CHECK(m.constant > 1.0);
        for (index_t i = 0; i < m.lhs.size(); ++i)
            CHECK(m.lhs[i] <= m.rhs[i] + 1e-9 * std::max(1.0, m.rhs[i]));
    }
}
