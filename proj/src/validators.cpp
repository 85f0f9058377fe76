#include "qtradeoff/validators.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qtradeoff/pairwise.hpp"

namespace qtradeoff {

namespace {

constexpr std::int64_t kInfCost = std::numeric_limits<std::int64_t>::max() / 4;

struct PathResult {
    std::int64_t cost;
    std::uint64_t cells;
};

// Cheapest path a -> ... -> b visiting exactly the vertices `via` in between.
PathResult path_dp(const TspInstance& inst, int a, int b, const std::vector<int>& via)
{
    const int m = static_cast<int>(via.size());
    if (m == 0)
        return {inst.at(a, b), 0};
    const std::size_t sets = std::size_t{1} << m;
    std::vector<std::int64_t> dp(sets * m, kInfCost);
    for (int j = 0; j < m; ++j)
        dp[(std::size_t{1} << j) * m + j] = inst.at(a, via[j]);
    for (std::size_t s = 1; s < sets; ++s)
        for (int j = 0; j < m; ++j) {
            const std::int64_t cur = dp[s * m + j];
            if (!((s >> j) & 1) || cur >= kInfCost)
                continue;
            for (int x = 0; x < m; ++x) {
                if ((s >> x) & 1)
                    continue;
                auto& next = dp[(s | (std::size_t{1} << x)) * m + x];
                next = std::min(next, cur + inst.at(via[j], via[x]));
            }
        }
    std::int64_t best = kInfCost;
    for (int j = 0; j < m; ++j)
        best = std::min(best, dp[(sets - 1) * m + j] + inst.at(via[j], b));
    return {best, static_cast<std::uint64_t>(sets) * m};
}

PathResult split_search(const TspInstance& inst, int a, int b, const std::vector<int>& via, int levels)
{
    const int m = static_cast<int>(via.size());
    if (levels == 0 || m == 0)
        return path_dp(inst, a, b, via);
    const int half = (m - 1) / 2;
    PathResult best{kInfCost, 0};
    for (int mid = 0; mid < m; ++mid) {
        std::vector<int> rest;
        for (int j = 0; j < m; ++j)
            if (j != mid)
                rest.push_back(via[j]);
        std::vector<bool> pick(rest.size(), false);
        std::fill(pick.begin(), pick.begin() + half, true);
        do {
            std::vector<int> left, right;
            for (std::size_t j = 0; j < rest.size(); ++j)
                (pick[j] ? left : right).push_back(rest[j]);
            const PathResult l = split_search(inst, a, via[mid], left, levels - 1);
            const PathResult r = split_search(inst, via[mid], b, right, levels - 1);
            best.cost = std::min(best.cost, l.cost + r.cost);
            best.cells = std::max({best.cells, l.cells, r.cells});
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return best;
}

std::vector<int> non_start_vertices(int n)
{
    std::vector<int> v(static_cast<std::size_t>(n - 1));
    std::iota(v.begin(), v.end(), 1);
    return v;
}

void check_cube(const CubeGraph& g, int max_n)
{
    if (g.n < 1 || g.n > max_n || g.out.size() != (std::size_t{1} << g.n))
        throw std::invalid_argument("CubeGraph: dimension out of range");
}

std::uint64_t instance_seed(std::uint64_t base, int index)
{
    SplitMix64 mix(base ^ (0x5851F42D4C957F2DULL * static_cast<std::uint64_t>(index + 1)));
    return mix.next();
}

std::string hex_seed(std::uint64_t seed)
{
    std::ostringstream os;
    os << std::hex << seed;
    return os.str();
}

std::string density_tag(double p)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.2f", p);
    return buf;
}

}  // namespace

std::uint64_t SplitMix64::next()
{
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound)
{
    if (bound == 0)
        throw std::invalid_argument("SplitMix64::below: bound must be positive");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do
        x = next();
    while (x >= limit);
    return x % bound;
}

double SplitMix64::unit()
{
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

void TspInstance::validate() const
{
    if (n < 3 || n > 14)
        throw std::invalid_argument("TspInstance: n must lie in [3, 14]");
    if (dist.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("TspInstance: distance matrix size mismatch");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto w = at(i, j);
            if (i == j ? w != 0 : (w < 0 || w >= (std::int64_t{1} << 20)))
                throw std::invalid_argument("TspInstance: weight out of range");
        }
}

TspInstance TspInstance::random(int n, std::uint64_t seed, std::int64_t max_weight)
{
    SplitMix64 rng(seed);
    TspInstance inst{n, std::vector<std::int64_t>(static_cast<std::size_t>(n) * n, 0)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                inst.dist[static_cast<std::size_t>(i) * n + j] =
                    1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(max_weight)));
    inst.validate();
    return inst;
}

TspSolution held_karp(const TspInstance& inst)
{
    inst.validate();
    const PathResult r = path_dp(inst, 0, 0, non_start_vertices(inst.n));
    return {r.cost, r.cells};
}

std::int64_t tsp_brute_force(const TspInstance& inst)
{
    inst.validate();
    if (inst.n > 10)
        throw std::invalid_argument("tsp_brute_force: n must be <= 10");
    std::vector<int> order = non_start_vertices(inst.n);
    std::int64_t best = kInfCost;
    do {
        std::int64_t c = inst.at(0, order.front()) + inst.at(order.back(), 0);
        for (std::size_t i = 0; i + 1 < order.size(); ++i)
            c += inst.at(order[i], order[i + 1]);
        best = std::min(best, c);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

TspSolution gurevich_shelah(const TspInstance& inst, int s_levels)
{
    inst.validate();
    if (s_levels < 0 || s_levels > 3 || inst.n % (1 << s_levels) != 0 || inst.n / (1 << s_levels) < 2)
        throw std::invalid_argument("gurevich_shelah: n must be a multiple of 2^s_levels with quotient >= 2");
    const PathResult r = split_search(inst, 0, 0, non_start_vertices(inst.n), s_levels);
    return {r.cost, r.cells};
}

CubeGraph CubeGraph::full(int n)
{
    CubeGraph g{n, std::vector<std::uint32_t>(std::size_t{1} << n)};
    for (std::uint32_t x = 0; x < g.out.size(); ++x)
        g.out[x] = ~x & g.top();
    return g;
}

CubeGraph CubeGraph::empty(int n)
{
    return {n, std::vector<std::uint32_t>(std::size_t{1} << n, 0)};
}

CubeGraph CubeGraph::random(int n, std::uint64_t seed, double p)
{
    SplitMix64 rng(seed);
    CubeGraph g = empty(n);
    for (std::uint32_t x = 0; x < g.out.size(); ++x)
        for (int i = 0; i < n; ++i)
            if (!((x >> i) & 1) && rng.unit() < p)
                g.out[x] |= 1u << i;
    return g;
}

bool hypercube_full_dp(const CubeGraph& g)
{
    check_cube(g, 20);
    std::vector<char> f(g.out.size(), 0);
    f[0] = 1;
    for (std::uint32_t s = 1; s < f.size(); ++s)
        for (int i = 0; i < g.n && !f[s]; ++i) {
            const std::uint32_t prev = s & ~(1u << i);
            f[s] = prev != s && f[prev] && g.has_edge(prev, i);
        }
    return f[g.top()];
}

bool hypercube_bfs(const CubeGraph& g)
{
    check_cube(g, 20);
    std::vector<char> seen(g.out.size(), 0);
    std::vector<std::uint32_t> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t x = queue[head];
        for (int i = 0; i < g.n; ++i) {
            const std::uint32_t y = x | (1u << i);
            if (g.has_edge(x, i) && !seen[y]) {
                seen[y] = 1;
                queue.push_back(y);
            }
        }
    }
    return seen[g.top()];
}

bool conforms(std::uint32_t set, int k, std::uint32_t orientation)
{
    for (int i = 0; i < k; ++i) {
        const bool flip = (orientation >> i) & 1;
        const int first = 2 * i + (flip ? 1 : 0);
        const int second = 2 * i + (flip ? 0 : 1);
        if (((set >> second) & 1) && !((set >> first) & 1))
            return false;
    }
    return true;
}

namespace {

// Restricted DP for one orientation; returns reachability and visited count.
std::pair<bool, std::uint64_t> restricted_run(const CubeGraph& g, int k, std::uint32_t orientation)
{
    std::vector<char> f(g.out.size(), 0);
    std::uint64_t visited = 0;
    for (std::uint32_t s = 0; s < f.size(); ++s) {
        if (!conforms(s, k, orientation))
            continue;
        ++visited;
        if (s == 0) {
            f[0] = 1;
            continue;
        }
        for (int i = 0; i < g.n && !f[s]; ++i) {
            const std::uint32_t prev = s & ~(1u << i);
            f[s] = prev != s && f[prev] && g.has_edge(prev, i);
        }
    }
    return {f[g.top()] != 0, visited};
}

void check_pairs(const CubeGraph& g, int k, int max_n)
{
    check_cube(g, max_n);
    if (k < 0 || 2 * k > g.n)
        throw std::invalid_argument("pairwise: need 2k <= n");
}

}  // namespace

bool restricted_dp(const CubeGraph& g, int k, std::uint32_t orientation)
{
    check_pairs(g, k, 16);
    return restricted_run(g, k, orientation).first;
}

PairwiseDecision pairwise_decide(const CubeGraph& g, int k)
{
    check_pairs(g, k, 16);
    PairwiseDecision d;
    for (std::uint32_t o = 0; o < (1u << k); ++o) {
        const auto [reach, visited] = restricted_run(g, k, o);
        d.reachable = d.reachable || reach;
        d.conforming_per_mask.push_back(visited);
    }
    return d;
}

LatticeCheck lattice_reduce_check(const CubeGraph& g, int k, std::uint32_t orientation)
{
    check_pairs(g, k, 14);
    const int dims = g.n - k;
    std::vector<int> radix(static_cast<std::size_t>(dims));
    for (int d = 0; d < dims; ++d)
        radix[d] = d < k ? 3 : 2;
    std::size_t count = 1;
    for (int r : radix)
        count *= static_cast<std::size_t>(r);

    // The hypercube set a lattice vertex stands for: 0, {first}, {first, second}
    // in paired coordinates, the single element otherwise.
    auto decode = [&](std::size_t idx, std::vector<int>& coord) {
        std::uint32_t set = 0;
        int weight = 0;
        for (int d = 0; d < dims; ++d) {
            coord[d] = static_cast<int>(idx % radix[d]);
            idx /= radix[d];
            weight += coord[d];
            if (d < k) {
                const bool flip = (orientation >> d) & 1;
                const int first = 2 * d + (flip ? 1 : 0);
                const int second = 2 * d + (flip ? 0 : 1);
                if (coord[d] >= 1)
                    set |= 1u << first;
                if (coord[d] == 2)
                    set |= 1u << second;
            } else if (coord[d] == 1) {
                set |= 1u << (2 * k + (d - k));
            }
        }
        return std::pair{set, weight};
    };

    const int max_weight = 2 * k + (g.n - 2 * k);
    std::vector<std::vector<std::size_t>> layers(static_cast<std::size_t>(max_weight) + 1);
    std::vector<std::uint32_t> sets(count);
    std::vector<int> coord(static_cast<std::size_t>(dims));
    for (std::size_t idx = 0; idx < count; ++idx) {
        const auto [set, weight] = decode(idx, coord);
        sets[idx] = set;
        layers[static_cast<std::size_t>(weight)].push_back(idx);
    }

    std::vector<char> reach(count, 0);
    reach[0] = 1;
    for (const auto& layer : layers)
        for (const std::size_t idx : layer) {
            if (!reach[idx])
                continue;
            decode(idx, coord);
            std::size_t stride = 1;
            for (int d = 0; d < dims; ++d) {
                if (coord[d] + 1 < radix[d]) {
                    const std::size_t next = idx + stride;
                    const std::uint32_t added = sets[next] & ~sets[idx];
                    const int bit = std::countr_zero(added);
                    if (g.has_edge(sets[idx], bit))
                        reach[next] = 1;
                }
                stride *= static_cast<std::size_t>(radix[d]);
            }
        }

    LatticeCheck out;
    out.vertices = count;
    out.lattice_reachable = reach[count - 1] != 0;
    out.dp_reachable = restricted_run(g, k, orientation).first;
    return out;
}

double grover_cost_model(const BigInt& search_space_size)
{
    if (search_space_size < 1)
        throw std::domain_error("grover_cost_model: size must be >= 1");
    return 0.5 * log2_big(search_space_size);
}

std::string ValidatorReport::line() const
{
    return "VALIDATOR " + name + " seed=" + std::to_string(seed) + " result=" + (passed ? "PASS" : "FAIL") +
           " detail=" + detail;
}

std::vector<ValidatorReport> run_validator_suite(const SuiteOptions& options)
{
    if (options.max_n < 3)
        throw std::invalid_argument("validator suite: max_n must be >= 3");
    std::vector<ValidatorReport> reports;
    const std::uint64_t base = options.seed;

    auto run_instances = [](int count, auto&& body) {
        std::vector<std::string> failures(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 1)
        for (int i = 0; i < count; ++i)
            failures[static_cast<std::size_t>(i)] = body(i);
        std::string first;
        int failed = 0;
        for (const auto& f : failures)
            if (!f.empty()) {
                ++failed;
                if (first.empty())
                    first = f;
            }
        return std::pair{failed, first};
    };
    auto add = [&](std::string name, int count, std::pair<int, std::string> outcome, std::string what) {
        ValidatorReport r{std::move(name), base, outcome.first == 0, {}};
        r.detail = std::to_string(count - outcome.first) + "/" + std::to_string(count) + "_" + what;
        if (!r.passed)
            r.detail += "_first_failure=" + outcome.second;
        reports.push_back(std::move(r));
    };

    {
        const int hi = std::min(9, options.max_n);
        const int count = options.tsp_instances * (hi - 2);
        add("held_karp_vs_brute_force", count,
            run_instances(count, [&](int i) -> std::string {
                const int n = 3 + i % (hi - 2);
                const auto seed = instance_seed(base, i);
                const auto inst = TspInstance::random(n, seed);
                if (held_karp(inst).cost == tsp_brute_force(inst))
                    return {};
                return "n" + std::to_string(n) + "_seed" + hex_seed(seed);
            }),
            "instances_n3.." + std::to_string(hi));
    }
    if (options.max_n >= 8) {
        const int count = options.tsp_instances;
        add("gurevich_shelah_vs_held_karp", count,
            run_instances(count, [&](int i) -> std::string {
                const auto seed = instance_seed(base + 1, i);
                const auto inst = TspInstance::random(8, seed);
                const auto hk = held_karp(inst);
                std::uint64_t prev_cells = std::numeric_limits<std::uint64_t>::max();
                for (int s = 0; s <= 2; ++s) {
                    const auto gs = gurevich_shelah(inst, s);
                    if (gs.cost != hk.cost || gs.peak_table_cells > prev_cells ||
                        (s == 0 && gs.peak_table_cells != hk.peak_table_cells))
                        return "s" + std::to_string(s) + "_seed" + hex_seed(seed);
                    prev_cells = gs.peak_table_cells;
                }
                return {};
            }),
            "instances_n8_s0..2");
    }
    for (const double density : {options.density, options.sparse_density}) {
        const std::string tag = "_p" + density_tag(density);
        const std::uint64_t salt = density == options.density ? 2 : 4;
        const int n = std::min(10, options.max_n);
        const int count = options.cube_instances;
        std::vector<char> outcomes(static_cast<std::size_t>(count), 0);
        auto outcome = run_instances(count, [&](int i) -> std::string {
            const auto seed = instance_seed(base + salt, i);
            const auto g = CubeGraph::random(n, seed, density);
            const bool full = hypercube_full_dp(g);
            outcomes[static_cast<std::size_t>(i)] = full;
            if (hypercube_bfs(g) != full)
                return "bfs_seed" + hex_seed(seed);
            for (int k = 0; 2 * k <= n && k <= 3; ++k) {
                const auto d = pairwise_decide(g, k);
                if (d.reachable != full)
                    return "k" + std::to_string(k) + "_seed" + hex_seed(seed);
                for (const auto v : d.conforming_per_mask)
                    if (BigInt(v) != conforming_count(n, k))
                        return "count_k" + std::to_string(k) + "_seed" + hex_seed(seed);
            }
            return {};
        });
        const auto reachable = std::count(outcomes.begin(), outcomes.end(), 1);
        add("pairwise_vs_full_dp_vs_bfs" + tag, count, outcome,
            "subgraphs_n" + std::to_string(n) + "_k0..3_reachable=" + std::to_string(reachable));
    }
    for (const double density : {options.density, options.sparse_density}) {
        const std::string tag = "_p" + density_tag(density);
        const std::uint64_t salt = density == options.density ? 3 : 5;
        const int n = std::min(8, options.max_n);
        const int k = std::min(2, n / 2);
        const int count = options.cube_instances;
        std::vector<char> outcomes(static_cast<std::size_t>(count), 0);
        auto outcome = run_instances(count, [&](int i) -> std::string {
            const auto seed = instance_seed(base + salt, i);
            const auto g = CubeGraph::random(n, seed, density);
            for (std::uint32_t o = 0; o < (1u << k); ++o) {
                const auto c = lattice_reduce_check(g, k, o);
                outcomes[static_cast<std::size_t>(i)] |= c.lattice_reachable;
                if (!c.matches() || BigInt(c.vertices) != conforming_count(n, k))
                    return "mask" + std::to_string(o) + "_seed" + hex_seed(seed);
            }
            return {};
        });
        const auto reachable = std::count(outcomes.begin(), outcomes.end(), 1);
        add("lattice_reduce_vs_restricted_dp" + tag, count, outcome,
            "subgraphs_n" + std::to_string(n) + "_k" + std::to_string(k) + "_all_masks_reachable=" +
                std::to_string(reachable));
    }
    {
        std::vector<std::pair<int, int>> cases;
        for (int n = 0; n <= 16; ++n)
            for (int k = 0; 2 * k <= n; ++k)
                cases.emplace_back(n, k);
        const int count = static_cast<int>(cases.size());
        add("conforming_count_exhaustive", count,
            run_instances(count, [&](int i) -> std::string {
                const auto [n, k] = cases[static_cast<std::size_t>(i)];
                const BigInt expected = conforming_count(n, k);
                for (std::uint32_t o = 0; o < (1u << k); ++o) {
                    std::uint64_t c = 0;
                    for (std::uint32_t s = 0; s < (1u << n); ++s)
                        c += conforms(s, k, o);
                    if (BigInt(c) != expected)
                        return "n" + std::to_string(n) + "_k" + std::to_string(k);
                }
                return {};
            }),
            "cases_n0..16");
    }
    return reports;
}

}  // namespace qtradeoff
