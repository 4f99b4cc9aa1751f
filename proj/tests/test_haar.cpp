#include <doctest.h>

#include "dyham/haar.hpp"
#include "oracles.hpp"

using namespace dyham;

TEST_CASE("haar function takes the two half values with the right signs") {
    // One dimension, unit base cube: h on [0,1) is +1 on [0,1/2), -1 on [1/2,1).
    GridGeometry g(1, 0, 3);
    const GridFunction h = haar_function(g, g.base_cube(), 1);
    for (index_t i = 0; i < 4; ++i) CHECK(h[i] == 1.0);
    for (index_t i = 4; i < 8; ++i) CHECK(h[i] == -1.0);

    // level-1 cube [1/2,1): height |Q|^{-1/2} = sqrt(2)
    const GridFunction h1 = haar_function(g, DyadicCube{1, {1}}, 1);
    CHECK(h1[0] == 0.0);
    CHECK(h1[4] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(h1[6] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));

    // every value matches the tensor-definition oracle, all dims and patterns
    for (int n = 1; n <= 3; ++n) {
        GridGeometry gn(n, -1, n == 3 ? 1 : 2);
        oracle::for_all_cubes(gn, [&](const DyadicCube& q) {
            if (q.level >= gn.level_max()) return;
            for (int p = 1; p <= pattern_count(n); ++p) {
                const GridFunction hh = haar_function(gn, q, unsigned(p));
                oracle::for_all_cells(gn, [&](const std::array<index_t, kMaxDim>& c) {
                    CHECK(oracle::flat_value(hh, c) ==
                          doctest::Approx(oracle::haar_value(gn, q, unsigned(p), c))
                              .epsilon(1e-14));
                });
            }
        });
    }
}

TEST_CASE("haar system is orthonormal with mean zero") {
    GridGeometry g(2, 0, 2);
    struct Item {
        DyadicCube q;
        unsigned p;
    };
    std::vector<Item> sys;
    oracle::for_all_cubes(g, [&](const DyadicCube& q) {
        if (q.level >= g.level_max()) return;
        for (int p = 1; p <= pattern_count(g.dim()); ++p) sys.push_back({q, unsigned(p)});
    });
    for (const auto& a : sys) {
        const GridFunction ha = haar_function(g, a.q, a.p);
        CHECK(base_mean(ha) == doctest::Approx(0.0).epsilon(1e-15));
        for (const auto& b : sys) {
            const GridFunction hb = haar_function(g, b.q, b.p);
            const double ip = pairing(ha, hb);
            const double expected = (a.q == b.q && a.p == b.p) ? 1.0 : 0.0;
            CHECK(ip == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("forward transform equals direct pairing with every haar function") {
    for (int n = 1; n <= 2; ++n) {
        GridGeometry g(n, 0, 3);
        const GridFunction f = oracle::random_values(g, 21 + std::uint64_t(n));
        const HaarCoefficients c = forward_transform(f);
        CHECK(c.base_mean() == doctest::Approx(base_mean(f)).epsilon(1e-13));
        oracle::for_all_cubes(g, [&](const DyadicCube& q) {
            if (q.level >= g.level_max()) return;
            for (int p = 1; p <= pattern_count(n); ++p) {
                CHECK(c.at(q, unsigned(p)) ==
                      doctest::Approx(oracle::haar_coefficient(f, q, unsigned(p)))
                          .epsilon(1e-12));
            }
        });
    }
}

TEST_CASE("round trip, Parseval, slices and partial sums") {
    for (int n : {1, 2}) {
        GridGeometry g(n, n == 1 ? -2 : 0, n == 1 ? 4 : 3);
        const GridFunction f = oracle::random_values(g, 31 + std::uint64_t(n));
        const HaarCoefficients c = forward_transform(f);

        // analysis then synthesis reproduces f
        CHECK(linf_distance(inverse_transform(c), f) < 1e-12);

        // || f ||_2^2 = mean^2 |base| + sum of squared coefficients
        double coeff_sq = 0;
        for (double x : c.raw()) coeff_sq += x * x;
        const double lhs = pairing(f, f);
        const double rhs = c.base_mean() * c.base_mean() * g.base_measure() + coeff_sq;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

        // slices sum to f - mean; slices are mutually orthogonal
        GridFunction acc = constant_function(g, c.base_mean());
        for (int j = g.level_min(); j < g.level_max(); ++j) acc += level_slice(c, j);
        CHECK(linf_distance(acc, f) < 1e-12);
        for (int j = g.level_min(); j < g.level_max(); ++j)
            for (int l = j + 1; l < g.level_max(); ++l)
                CHECK(pairing(level_slice(c, j), level_slice(c, l)) ==
                      doctest::Approx(0.0).epsilon(1e-12));

        // pattern slices refine level slices
        for (int j = g.level_min(); j < g.level_max(); ++j) {
            GridFunction sum_p(g);
            for (int p = 1; p <= pattern_count(n); ++p) sum_p += level_slice(c, j, unsigned(p));
            CHECK(linf_distance(sum_p, level_slice(c, j)) < 1e-13);
        }

        // E_{k+1} - E_k is the level-k slice; E at the finest level is f itself
        for (int k = g.level_min(); k < g.level_max(); ++k) {
            const GridFunction diff =
                expectation_projection(f, k + 1) - expectation_projection(f, k);
            CHECK(linf_distance(diff, level_slice(c, k)) < 1e-12);
        }
        CHECK(linf_distance(expectation_projection(f, g.level_max()), f) == 0.0);

        // partial sums: with M big enough and the mean included we recover f
        const int m_all = std::max(std::abs(g.level_min()), std::abs(g.level_max() - 1));
        CHECK(linf_distance(partial_sum(c, m_all, true), f) < 1e-12);
        // L^2 error of the truncation is monotone in M
        double prev = 1e300;
        for (int M = 0; M <= m_all; ++M) {
            const GridFunction r = f - partial_sum(c, M, true);
            const double err = std::sqrt(pairing(r, r));
            CHECK(err <= prev + 1e-12);
            prev = err;
        }
    }
}

TEST_CASE("square function of a single haar function is its absolute value") {
    GridGeometry g(1, 0, 4);
    const DyadicCube q{2, {1}};
    const GridFunction h = haar_function(g, q, 1);
    const GridFunction s = square_function(h, 1);
    for (index_t i = 0; i < s.size(); ++i)
        CHECK(s[i] == doctest::Approx(std::fabs(h[i])).epsilon(1e-13));
}

TEST_CASE("haar part and level projections") {
    GridGeometry g(1, 0, 5);
    const GridFunction f = oracle::random_values(g, 77);
    const GridFunction hp = haar_part(f);
    CHECK(base_mean(hp) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(linf_distance(project_levels(f, g.level_min(), g.level_max() - 1, true), f) <
          1e-12);
    // complementary bands add back to the haar part
    const GridFunction lo = project_levels(f, 0, 2, false);
    const GridFunction hi = project_levels(f, 3, 4, false);
    CHECK(linf_distance(lo + hi, hp) < 1e-12);
}
