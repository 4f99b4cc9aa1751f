#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dyham/haar.hpp"
#include "dyham/predual.hpp"
#include "dyham/rng.hpp"
#include "oracles.hpp"

using namespace dyham;

namespace {

GridFunction random_grid(const GridGeometry& g, std::uint64_t seed) {
    return oracle::random_values(g, seed);
}

// scales f so its L^q norm over the whole grid equals exactly `target`
GridFunction scale_to_lq(GridFunction f, double q, double target) {
    double nrm = lq_norm(f, q);
    REQUIRE(nrm > 0.0);
    f *= target / nrm;
    return f;
}

}  // namespace

TEST_CASE("block constructor accepts saturating blocks and rejects violations") {
    GridGeometry g(1, 0, 3);
    SpaceParams pq{2.0, 3.0};
    DyadicCube q{1, {1, 0, 0}};

    // data on q scaled to exactly the admissible size
    GridFunction ind = indicator(g, q);
    double bound = g.measure_pow(1, 1.0 / pq.q - 1.0 / pq.p);
    GridFunction ok = scale_to_lq(ind, pq.q, bound);
    CHECK_NOTHROW(Block(q, ok, pq));

    // too large by 1 percent
    GridFunction big = scale_to_lq(ind, pq.q, bound * 1.01);
    CHECK_THROWS_AS(Block(q, big, pq), std::invalid_argument);

    // leaks outside the support cube
    GridFunction leaky = ok;
    leaky[0] = 0.5;  // cell 0 lies in the sibling cube
    CHECK_THROWS_AS(Block(q, leaky, pq), std::invalid_argument);

    // exponents must satisfy 1 < p <= q
    CHECK_THROWS_AS(Block(q, ok, SpaceParams{3.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(Block(q, ok, SpaceParams{1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("zero function has empty decomposition and zero bounds") {
    GridGeometry g(1, 0, 4);
    SpaceParams pq{2.0, 3.0};
    GridFunction z(g);
    auto dec = block_norm_upper(z, pq);
    CHECK(dec.blocks.empty());
    CHECK(dec.cost == 0.0);
    auto low = block_norm_lower(z, pq);
    CHECK(low.value == 0.0);
    CHECK(low.family == "none");
    auto rep = duality_gap_report(z, pq);
    CHECK(rep.gap == 0.0);
}

TEST_CASE("indicator of the base cube has block norm one, certified both sides") {
    for (SpaceParams pq : {SpaceParams{2.0, 3.0}, SpaceParams{1.5, 1.5}, SpaceParams{2.0, 5.0}}) {
        GridGeometry g(1, 0, 5);
        GridFunction one = constant_function(g, 1.0);
        auto rep = duality_gap_report(one, pq);
        CHECK(rep.upper == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(rep.lower == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("haar functions are pinned between matching upper and lower bounds") {
    // upper: the single-cube splitting costs |Q|^{1/p-1/2};
    // lower: pairing against the same haar function certifies the same value.
    GridGeometry g(1, 0, 5);
    SpaceParams pq{2.0, 3.0};
    for (int level = 0; level < 5; ++level) {
        DyadicCube q = g.cube_from_flat(level, g.cube_count(level) - 1);
        GridFunction h = haar_function(g, q, 1);
        double expect = g.measure_pow(level, 1.0 / pq.p - 0.5);
        auto rep = duality_gap_report(h, pq);
        CHECK(rep.upper == doctest::Approx(expect).epsilon(1e-9));
        CHECK(rep.lower == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("single-block inputs are recognized with cost at most one") {
    GridGeometry g(1, 0, 6);
    SpaceParams pq{2.0, 3.0};
    int cases = 0;
    for (int level = 0; level <= 4; ++level) {
        for (index_t c : {index_t(0), g.cube_count(level) - 1}) {
            DyadicCube q = g.cube_from_flat(level, c);
            double bound = g.measure_pow(level, 1.0 / pq.q - 1.0 / pq.p);
            // random data supported on q, scaled to saturate the block bound
            GridFunction f(g);
            GridFunction vals = oracle::random_values(g, 1000 + 17 * static_cast<std::uint64_t>(cases));
            for_each_cell(g, q, [&](index_t x) { f[x] = vals[x]; });
            f = scale_to_lq(f, pq.q, bound);
            auto dec = block_norm_upper(f, pq);
            CHECK(dec.cost <= 1.0 + 1e-9);
            ++cases;
        }
    }
    CHECK(cases == 10);
}

TEST_CASE("returned decomposition is feasible and every block is admissible") {
    GridGeometry g(1, 0, 5);
    SpaceParams pq{2.0, 3.0};
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        GridFunction f = random_grid(g, seed);
        auto dec = block_norm_upper(f, pq);
        REQUIRE(dec.weight.size() == dec.blocks.size());
        double sum = 0.0;
        for (double w : dec.weight) {
            CHECK(w > 0.0);
            sum += w;
        }
        CHECK(dec.cost == doctest::Approx(sum).epsilon(1e-12));
        GridFunction back = dec.assemble(g);
        CHECK(linf_distance(back, f) < 1e-9 * (1.0 + linf_norm(f)));
    }
    // feasibility survives a tiny iteration budget
    GridFunction f = random_grid(g, 99);
    UpperBoundOptions opts;
    opts.max_iterations = 3;
    auto dec = block_norm_upper(f, pq, opts);
    CHECK(linf_distance(dec.assemble(g), f) < 1e-9 * (1.0 + linf_norm(f)));
}

TEST_CASE("two-cell exhaustive scan confirms the optimizer on the smallest grid") {
    // J = 1: pieces live on the base cube and the two half cells; eliminating
    // the constraint leaves two free parameters (a, b) = the base piece.
    GridGeometry g(1, 0, 1);
    SpaceParams pq{2.0, 3.0};
    double w1 = g.measure_pow(1, 1.0 / pq.p - 1.0 / pq.q);
    SplitMix64 rng(5150);
    for (int rep = 0; rep < 5; ++rep) {
        double f0 = rng.next_symmetric(), f1 = rng.next_symmetric();
        GridFunction f(g, {f0, f1});
        double span = 2.0 * std::max(std::fabs(f0), std::fabs(f1)) + 1e-6;
        double scan = 1e300;
        const int steps = 240;
        for (int i = 0; i <= steps; ++i)
            for (int k = 0; k <= steps; ++k) {
                double a = -span + 2.0 * span * i / steps;
                double b = -span + 2.0 * span * k / steps;
                double base = root_q(0.5 * (pow_abs(a, pq.q) + pow_abs(b, pq.q)), pq.q);
                double left = root_q(0.5 * pow_abs(f0 - a, pq.q), pq.q);
                double right = root_q(0.5 * pow_abs(f1 - b, pq.q), pq.q);
                double c = base + w1 * (left + right);
                if (c < scan) scan = c;
            }
        auto dec = block_norm_upper(f, pq);
        // the solver may legitimately beat the finite scan, never trail it far
        CHECK(dec.cost <= scan * (1.0 + 1e-3));
        CHECK(dec.cost >= block_norm_lower(f, pq).value - 1e-12);
    }
}

TEST_CASE("lower bound never exceeds upper bound on random data") {
    for (int n : {1, 2}) {
        GridGeometry g(n, 0, n == 1 ? 5 : 3);
        for (SpaceParams pq : {SpaceParams{2.0, 3.0}, SpaceParams{1.25, 2.0}}) {
            for (std::uint64_t s = 0; s < 12; ++s) {
                GridFunction f = random_grid(g, 300 + s);
                auto rep = duality_gap_report(f, pq);
                CHECK(rep.lower <= rep.upper + 1e-9 * (1.0 + rep.upper));
                CHECK(rep.gap == rep.upper - rep.lower);
            }
        }
    }
}

TEST_CASE("upper bound certifies the pairing inequality against morrey functions") {
    GridGeometry g(1, 0, 5);
    SpaceParams pq{2.0, 3.0};
    SpaceParams dual = pq.conjugate();
    for (std::uint64_t s = 0; s < 8; ++s) {
        GridFunction f = random_grid(g, 400 + s);
        double up = block_norm_upper(f, pq).cost;
        for (std::uint64_t t = 0; t < 6; ++t) {
            GridFunction h = random_grid(g, 4000 + 31 * s + t);
            double rhs = up * morrey_norm(h, dual);
            CHECK(std::fabs(pairing(f, h)) <= rhs * (1.0 + 1e-9) + 1e-12);
        }
    }
}

TEST_CASE("bounds scale linearly") {
    GridGeometry g(1, 0, 5);
    SpaceParams pq{2.0, 3.0};
    GridFunction f = random_grid(g, 777);
    double u1 = block_norm_upper(f, pq).cost;
    double l1 = block_norm_lower(f, pq).value;
    GridFunction f2 = 2.0 * f;
    CHECK(block_norm_upper(f2, pq).cost == doctest::Approx(2.0 * u1).epsilon(1e-9));
    CHECK(block_norm_lower(f2, pq).value == doctest::Approx(2.0 * l1).epsilon(1e-9));
}
