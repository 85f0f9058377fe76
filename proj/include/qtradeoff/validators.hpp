#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qtradeoff/entropy.hpp"

namespace qtradeoff {

// splitmix64; every random instance is a pure function of its seed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// Uniform in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [0, 1) with 53 random bits.
    double unit();

private:
    std::uint64_t state_;
};

// ---- travelling salesman ------------------------------------------------

struct TspInstance {
    int n = 0;
    std::vector<std::int64_t> dist;   // row-major n x n, zero diagonal

    std::int64_t at(int i, int j) const { return dist[static_cast<std::size_t>(i) * n + j]; }
    /// Throws std::invalid_argument on a bad size, diagonal or weight range.
    void validate() const;
    /// Asymmetric weights in [1, max_weight].
    static TspInstance random(int n, std::uint64_t seed, std::int64_t max_weight = 1000);
};

struct TspSolution {
    std::int64_t cost = 0;
    std::uint64_t peak_table_cells = 0;
};

/// Bellman-Held-Karp subset DP over tours through vertex 0. Requires 3 <= n <= 14.
TspSolution held_karp(const TspInstance& inst);

/// Minimum over all (n-1)! tours. Requires 3 <= n <= 10.
std::int64_t tsp_brute_force(const TspInstance& inst);

/// Balanced-bipartition recursion: a path a -> b through S is split at a
/// midpoint m with a half X of size (|S|-1)/2, s_levels deep, exact path DP at
/// the leaves. peak_table_cells is the largest leaf table. Throws
/// std::invalid_argument unless n is a multiple of 2^s_levels with quotient >= 2.
TspSolution gurevich_shelah(const TspInstance& inst, int s_levels);

// ---- hypercube subgraphs -------------------------------------------------

// Directed edges x -> x | (1 << i) for i not in x.
struct CubeGraph {
    int n = 0;
    std::vector<std::uint32_t> out;   // out[x] bit i: edge x -> x | (1 << i)

    bool has_edge(std::uint32_t x, int i) const { return (out[x] >> i) & 1u; }
    std::uint32_t top() const { return (1u << n) - 1; }

    static CubeGraph full(int n);
    static CubeGraph empty(int n);
    /// Each edge present independently with probability p.
    static CubeGraph random(int n, std::uint64_t seed, double p = 0.85);
};

/// f(S) = OR_{i in S} f(S \ i) and edge(S \ i -> S) over all 2^n sets. n <= 20.
bool hypercube_full_dp(const CubeGraph& g);

/// Breadth-first search from 0^n to 1^n.
bool hypercube_bfs(const CubeGraph& g);

/// Pair i is {2i, 2i+1}; orientation bit i set means 2i+1 precedes 2i.
bool conforms(std::uint32_t set, int k, std::uint32_t orientation);

struct PairwiseDecision {
    bool reachable = false;
    std::vector<std::uint64_t> conforming_per_mask;
};

/// OR over all 2^k orientations of the DP restricted to conforming sets.
/// Requires 2k <= n <= 16.
PairwiseDecision pairwise_decide(const CubeGraph& g, int k);

/// Mask-restricted DP for one orientation.
bool restricted_dp(const CubeGraph& g, int k, std::uint32_t orientation);

struct LatticeCheck {
    bool lattice_reachable = false;
    bool dp_reachable = false;
    std::uint64_t vertices = 0;
    bool matches() const { return lattice_reachable == dp_reachable; }
};

/// Reachability on {0,1,2}^k x {0,1}^(n-2k) from the origin to (2^k, 1^(n-2k)),
/// layer by coordinate sum, against restricted_dp. Requires 2k <= n <= 14.
LatticeCheck lattice_reduce_check(const CubeGraph& g, int k, std::uint32_t orientation);

/// Modeled Grover cost (1/2) log2(size) in absolute bits. Throws on size < 1.
double grover_cost_model(const BigInt& search_space_size);

// ---- suite ----------------------------------------------------------------

struct ValidatorReport {
    std::string name;
    std::uint64_t seed = 0;
    bool passed = false;
    std::string detail;
    /// VALIDATOR name seed=... result=PASS|FAIL detail=...
    std::string line() const;
};

struct SuiteOptions {
    int max_n = 12;
    std::uint64_t seed = 42;
    int tsp_instances = 20;
    int cube_instances = 100;
    double density = 0.85;
    // Second sweep: at 0.85 nearly every subgraph reaches 1^n, so sparser
    // graphs supply the unreachable cases.
    double sparse_density = 0.3;
};

/// Every oracle comparison, one report per validator, in a fixed order.
std::vector<ValidatorReport> run_validator_suite(const SuiteOptions& options);

}  // namespace qtradeoff
