#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qtradeoff/pairwise.hpp"
#include "qtradeoff/validators.hpp"

using namespace qtradeoff;

namespace {

TspInstance triangle()
{
    return {3, {0, 1, 3, 1, 0, 2, 3, 2, 0}};
}

}  // namespace

TEST_CASE("splitmix64 reference values")
{
    // First outputs for seed 0 of the published reference generator.
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
    SplitMix64 a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.below(7) == b.below(7));
        const double u = a.unit();
        CHECK(u == b.unit());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("held-karp small cases")
{
    CHECK(held_karp(triangle()).cost == 6);
    TspInstance unit{4, std::vector<std::int64_t>(16, 1)};
    for (int i = 0; i < 4; ++i)
        unit.dist[i * 4 + i] = 0;
    CHECK(held_karp(unit).cost == 4);
    CHECK_THROWS_AS(held_karp(TspInstance{2, {0, 1, 1, 0}}), std::invalid_argument);
    TspInstance bad = triangle();
    bad.dist[0] = 5;
    CHECK_THROWS_AS(held_karp(bad), std::invalid_argument);
}

TEST_CASE("held-karp equals permutation brute force")
{
    for (int n = 3; n <= 9; ++n)
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto inst = TspInstance::random(n, 1000 * n + seed);
            INFO("n=" << n << " seed=" << 1000 * n + seed);
            CHECK(held_karp(inst).cost == tsp_brute_force(inst));
        }
}

TEST_CASE("gurevich-shelah recursion")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto inst = TspInstance::random(8, 7000 + seed);
        const auto hk = held_karp(inst);
        const auto s0 = gurevich_shelah(inst, 0);
        const auto s1 = gurevich_shelah(inst, 1);
        const auto s2 = gurevich_shelah(inst, 2);
        INFO("seed=" << 7000 + seed);
        CHECK(s0.cost == hk.cost);
        CHECK(s0.peak_table_cells == hk.peak_table_cells);
        CHECK(s1.cost == hk.cost);
        CHECK(s2.cost == hk.cost);
        CHECK(s1.peak_table_cells <= s0.peak_table_cells);
        CHECK(s2.peak_table_cells < s1.peak_table_cells);
    }
    CHECK(held_karp(TspInstance::random(8, 1)).peak_table_cells == 7u * 128u);
    CHECK_THROWS_AS(gurevich_shelah(TspInstance::random(6, 1), 2), std::invalid_argument);
    CHECK_THROWS_AS(gurevich_shelah(TspInstance::random(4, 1), 2), std::invalid_argument);
}

TEST_CASE("hypercube reachability")
{
    CHECK(hypercube_full_dp(CubeGraph::full(10)));
    CHECK_FALSE(hypercube_full_dp(CubeGraph::empty(10)));
    CHECK(hypercube_bfs(CubeGraph::full(6)));
    int both = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed)
        for (const double p : {0.85, 0.3}) {
            const auto g = CubeGraph::random(10, seed, p);
            const bool r = hypercube_full_dp(g);
            CHECK(r == hypercube_bfs(g));
            both += r ? 1 : 0;
        }
    CHECK(both > 100);
    CHECK(both < 200);
}

TEST_CASE("pairwise decision")
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto g = CubeGraph::random(10, 500 + seed, seed % 2 ? 0.85 : 0.3);
        const bool full = hypercube_full_dp(g);
        for (int k = 0; k <= 3; ++k) {
            const auto d = pairwise_decide(g, k);
            CHECK(d.reachable == full);
            REQUIRE(d.conforming_per_mask.size() == (std::size_t{1} << k));
            for (const auto c : d.conforming_per_mask)
                CHECK(BigInt(c) == conforming_count(10, k));
        }
    }
    CHECK_THROWS_AS(pairwise_decide(CubeGraph::full(4), 3), std::invalid_argument);
}

TEST_CASE("conforming sets by enumeration")
{
    for (int n = 0; n <= 16; ++n)
        for (int k = 0; 2 * k <= n; ++k)
            for (std::uint32_t o : {0u, (1u << k) - 1u}) {
                std::uint64_t c = 0;
                for (std::uint32_t s = 0; s < (1u << n); ++s)
                    c += conforms(s, k, o);
                CHECK(BigInt(c) == conforming_count(n, k));
            }
    CHECK(conforms(0b10, 1, 1));
    CHECK_FALSE(conforms(0b10, 1, 0));
}

TEST_CASE("lattice reduction")
{
    for (std::uint32_t o = 0; o < 4; ++o) {
        const auto c = lattice_reduce_check(CubeGraph::full(8), 2, o);
        CHECK(c.lattice_reachable);
        CHECK(c.dp_reachable);
        CHECK(c.vertices == 36 * 4);
    }
    int reachable = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto g = CubeGraph::random(8, 900 + seed, seed % 2 ? 0.85 : 0.3);
        for (std::uint32_t o = 0; o < 4; ++o) {
            const auto c = lattice_reduce_check(g, 2, o);
            CHECK(c.matches());
            CHECK(BigInt(c.vertices) == conforming_count(8, 2));
            reachable += c.lattice_reachable;
        }
    }
    CHECK(reachable > 0);
    CHECK(reachable < 400);
}

TEST_CASE("grover cost model")
{
    CHECK(grover_cost_model(BigInt(1)) == 0.0);
    CHECK(grover_cost_model(BigInt(1) << 40) == doctest::Approx(20.0));
    CHECK(grover_cost_model(BigInt(70)) == doctest::Approx(std::log2(70.0) / 2).epsilon(1e-15));
    CHECK(grover_cost_model(BigInt(70)) == doctest::Approx(3.065).epsilon(0.0005 / 3.065));
    CHECK_THROWS_AS(grover_cost_model(BigInt(0)), std::domain_error);
}

TEST_CASE("suite reports")
{
    SuiteOptions opts;
    opts.max_n = 10;
    opts.cube_instances = 20;
    opts.tsp_instances = 5;
    const auto a = run_validator_suite(opts);
    const auto b = run_validator_suite(opts);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].passed);
        CHECK(a[i].line() == b[i].line());
        CHECK(a[i].line().rfind("VALIDATOR " + a[i].name + " seed=42 result=PASS detail=", 0) == 0);
    }
}
