#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <random>
#include <stdexcept>

#include "qtradeoff/hypercube.hpp"

using namespace qtradeoff;

namespace {

double h(double x)
{
    return x <= 0.0 || x >= 1.0 ? 0.0 : -(x * std::log2(x) + (1 - x) * std::log2(1 - x));
}

double grover(double a, double b) { return 0.5 * h(a / b) * b; }

// A decreasing row in [0.6, 1] standing in for an earlier depth.
TableRow synthetic_row(int n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        v[j] = 1.0 - 0.4 * std::sqrt(static_cast<double>(j) / (n - 1));
    return TableRow(v);
}

// Cost of a whole chain node(0) = u_1 <= u_2 <= ... <= u_{k+1} = count as
// max over j of (subcube_j + sum_{i >= j} grover_i).
double chain_cost(double s, const LayerGrid& g, const std::vector<int>& chain, const TableRow& row)
{
    double worst = 0.0;
    for (std::size_t j = 1; j < chain.size(); ++j) {
        double v = row.subcube(s, g.gap(chain[j - 1], chain[j]));
        for (std::size_t i = j; i < chain.size(); ++i)
            v += grover(g.node(chain[i - 1]), g.node(chain[i]));
        worst = std::max(worst, v);
    }
    return worst;
}

double brute_force_step(double s, const GridSpec& grid, const TableRow& row)
{
    double best = 1e9;
    for (const double a1 : alpha1_candidates(s, grid.alpha_grid)) {
        const LayerGrid g(a1, grid.alpha_grid);
        double cheapest = 1e9;
        std::vector<int> chain{0};
        std::function<void(int)> extend = [&](int layer) {
            if (layer == grid.k + 1) {
                chain.push_back(g.count);
                cheapest = std::min(cheapest, chain_cost(s, g, chain, row));
                chain.pop_back();
                return;
            }
            for (int t = chain.back(); t <= g.count; ++t) {
                chain.push_back(t);
                extend(layer + 1);
                chain.pop_back();
            }
        };
        extend(2);
        best = std::min(best, std::max(h(a1), 0.5 + cheapest));
    }
    return best;
}

GridSpec small_grid(int k)
{
    GridSpec g;
    g.s_grid = 32;
    g.alpha_grid = 16;
    g.k = k;
    return g;
}

}  // namespace

TEST_CASE("grid validation")
{
    CHECK_NOTHROW(GridSpec{}.validate());
    GridSpec g;
    g.s_grid = 8;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g = {};
    g.k = 9;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g = {};
    g.converge_tol = 0.0;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g = {};
    g.depth_cap = 0;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("budget cutoff")
{
    CHECK(lambda_from_budget(1.0, 1.0) == doctest::Approx(0.5));
    CHECK(lambda_from_budget(0.0, 1.0) == 0.0);
    CHECK(lambda_from_budget(0.5, 0.5) == doctest::Approx(0.5));
    CHECK(h(lambda_from_budget(0.3, 0.6)) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK_THROWS_AS(lambda_from_budget(1.5, 1.0), std::domain_error);
}

TEST_CASE("table rows")
{
    for (int j : {0, 5, 100})
        CHECK(table_T_base(j) == 1.0);
    const auto base = TableRow::base(16);
    CHECK(base.size() == 16);
    const TableRow row(std::vector<double>{1.0, 0.9, 0.8, 0.7, 0.6});
    CHECK(row.at_budget(0.0) == 1.0);
    CHECK(row.at_budget(0.49) == 0.9);   // rounds down
    CHECK(row.at_budget(0.5) == 0.8);
    CHECK(row.at_budget(1.0) == 0.6);
    CHECK(row.subcube(0.2, 0.0) == 0.0);
    CHECK(row.subcube(0.2, 0.4) == doctest::Approx(0.4 * 0.8));
    CHECK(row.subcube(0.9, 0.5) == doctest::Approx(0.5 * 0.6));   // ratio clamps to 1
}

TEST_CASE("second-layer cost")
{
    const auto ones = TableRow::base(64);
    CHECK(table_P_layer2(0.3, 0.25, 0.5, ones) == doctest::Approx(0.5));
    CHECK(table_P_layer2(0.3, 0.0, 0.4, ones) == doctest::Approx(0.4));
    CHECK(table_P_layer2(0.3, 0.5 - 1e-9, 0.5, ones) == doctest::Approx(0.0).epsilon(1e-6));
    CHECK_THROWS_AS(table_P_layer2(0.3, 0.4, 0.3, ones), std::invalid_argument);

    const LayerGrid g(0.25, 16);
    CHECK(table_P_layer2(0.3, g, 16, ones) == doctest::Approx(0.5));
    CHECK(table_P_layer2(0.3, g, 0, ones) == 0.0);
    CHECK_THROWS_AS(table_P_layer2(0.3, g, 17, ones), std::invalid_argument);
}

TEST_CASE("layer grid and candidates")
{
    const LayerGrid g(0.1, 16);
    CHECK(g.node(0) == 0.1);
    CHECK(g.node(16) == 0.5);
    CHECK(g.gap(3, 7) == doctest::Approx(0.1));
    const auto c = alpha1_candidates(0.5, 16);
    CHECK(c.front() == 0.0);
    CHECK(c.back() == doctest::Approx(entropy_inverse(0.5)));
    CHECK(std::is_sorted(c.begin(), c.end()));
    CHECK(alpha1_candidates(1.0, 16).size() == 17);
    CHECK(alpha1_candidates(0.0, 16).size() == 1);
}

TEST_CASE("general layers equal brute-force chain enumeration")
{
    const auto row = synthetic_row(32);
    for (int k : {1, 2, 3, 4}) {
        const GridSpec grid = small_grid(k);
        for (double s : {0.0, 0.15, 0.4, 0.7, 1.0}) {
            INFO("k=" << k << " s=" << s);
            CHECK(table_T_step(s, grid, row) == doctest::Approx(brute_force_step(s, grid, row)).epsilon(1e-12));
        }
    }
    const LayerGrid g(0.2, 16);
    std::vector<double> slice(16);
    CHECK_THROWS_AS(table_P_general(0.3, g, slice, 4, row), std::invalid_argument);
}

TEST_CASE("parallel kernel equals the serial reference")
{
    for (int k : {1, 3, 6}) {
        const GridSpec grid = small_grid(k);
        const auto ref = optimize_serial(grid);
        for (int threads : {1, 3, 8}) {
            const auto par = optimize(grid, {threads});
            CHECK(par.t_row == ref.t_row);
            CHECK(par.depth_reached == ref.depth_reached);
        }
    }
}

TEST_CASE("table shape")
{
    GridSpec grid;
    grid.s_grid = 64;
    grid.alpha_grid = 32;
    grid.k = 3;
    const auto r = optimize(grid);
    CHECK(r.converged);
    const double eps = 2.0 / grid.alpha_grid;
    for (std::size_t j = 0; j < r.t_row.size(); ++j) {
        CHECK(r.t_row[j] >= 0.0);
        CHECK(r.t_row[j] <= 1.0);
        if (j > 0)
            CHECK(r.t_row[j] <= r.t_row[j - 1] + eps);
    }
    CHECK(r.t_row.front() == 1.0);

    const auto curve = r.curve();
    CHECK(curve.points().back().space_exp == doctest::Approx(r.full_memory_time()));
    for (std::size_t i = 1; i < curve.size(); ++i)
        CHECK(curve.points()[i].time_exp <= curve.points()[i - 1].time_exp);
}

TEST_CASE("depth rounds are monotone")
{
    GridSpec grid = small_grid(2);
    double prev_full = 2.0;
    for (int cap = 1; cap <= 6; ++cap) {
        grid.depth_cap = cap;
        const auto r = optimize(grid);
        CHECK(r.full_memory_time() <= prev_full);
        prev_full = r.full_memory_time();
    }
}

TEST_CASE("published cells at the CI grid, k = 2")
{
    GridSpec grid;
    grid.k = 2;
    const auto r = optimize(grid);
    int cells = 0;
    for (const auto& cell : published_complexities()) {
        if (cell.k != 2)
            continue;
        ++cells;
        CHECK(reproduce_cell(r, cell) == doctest::Approx(cell.t_base).epsilon(0.005 / cell.t_base));
    }
    CHECK(cells == 6);
    CHECK(std::abs(std::exp2(r.time_at(std::log2(1.4))) - std::exp2(r.time_at(std::log2(1.6)))) <= 0.005);
    CHECK_THROWS_AS(reproduce_cell(r, published_complexities()[0]), std::invalid_argument);
}

TEST_CASE("published table layout")
{
    const auto cells = published_complexities();
    CHECK(cells.size() == 36);
    int full_rows = 0;
    for (const auto& c : cells) {
        CHECK(c.k >= 1);
        CHECK(c.k <= 6);
        if (!c.s_base)
            ++full_rows;
        if (c.s_base && *c.s_base == 1.0)
            CHECK(c.t_base == 2.0);
    }
    CHECK(full_rows == 6);
}

TEST_CASE("grid refinement")
{
    std::vector<double> bases;
    for (int scale : {1, 2, 4}) {
        GridSpec grid;
        grid.k = 2;
        grid.s_grid = 64 * scale;
        grid.alpha_grid = 32 * scale;
        bases.push_back(std::exp2(optimize(grid).full_memory_time()));
    }
    CHECK(std::abs(bases[2] - bases[1]) < 0.01);
    CHECK(std::abs(bases[1] - bases[0]) < 0.02);
}

TEST_CASE("fractalization is built in")
{
    GridSpec grid;
    grid.s_grid = 128;
    grid.alpha_grid = 64;
    grid.k = 6;
    const auto r = optimize(grid);
    const auto curve = r.curve();
    TradeoffPoint p{r.full_memory_time(), r.full_memory_time(), ""};
    for (int i = 0; i < 4; ++i) {
        p = fractalize(p);
        const auto t = curve.time_at(p.space_exp + 1.0 / (grid.s_grid - 1));
        REQUIRE(t.has_value());
        CHECK(*t <= p.time_exp + 1e-9);
    }
}

TEST_CASE("unconstrained balance")
{
    const auto g6 = unconstrained_gamma(6);
    CHECK(g6.converged);
    CHECK(g6.base == doctest::Approx(std::exp2(0.861483)).epsilon(2e-4 / 1.8169));
    CHECK(g6.base == doctest::Approx(1.816905).epsilon(2e-4 / 1.8169));
    REQUIRE(g6.schedule.size() == 7);
    CHECK(g6.schedule.back() == 0.5);
    CHECK(std::is_sorted(g6.schedule.begin(), g6.schedule.end()));
    CHECK(h(g6.schedule.front()) == doctest::Approx(g6.g).epsilon(1e-9));

    CHECK(unconstrained_gamma(6).g - unconstrained_gamma(7).g < 1e-3);
    CHECK(unconstrained_gamma(7).g <= unconstrained_gamma(6).g + 1e-12);
    CHECK(unconstrained_gamma(1).base == doctest::Approx(1.868583).epsilon(0.002 / 1.87));
    CHECK_THROWS_AS(unconstrained_gamma(0), std::invalid_argument);
    CHECK_THROWS_AS(unconstrained_gamma(9), std::invalid_argument);

    // The balance system for k = 1 in closed form: g = 1/2 + 1/4 h(2 a) + (1/2 - a) g, h(a) = g.
    const auto g1 = unconstrained_gamma(1);
    const double a = g1.schedule.front();
    CHECK(g1.g == doctest::Approx(0.5 + 0.25 * h(2 * a) + (0.5 - a) * g1.g).epsilon(1e-9));

    // The grid DP at full memory cannot beat the unconstrained optimum by more
    // than its discretisation error.
    for (int k : {1, 2}) {
        GridSpec grid;
        grid.s_grid = 64;
        grid.alpha_grid = 64;
        grid.k = k;
        CHECK(optimize(grid).full_memory_time() >= unconstrained_gamma(k).g - 1e-3);
    }
}

TEST_CASE("table cache")
{
    GridSpec grid = small_grid(2);
    const auto r = optimize(grid);
    const auto text = cache_to_json(r);
    const auto back = cache_from_json(text, grid);
    REQUIRE(back.has_value());
    CHECK(back->t_row == r.t_row);
    CHECK(back->depth_reached == r.depth_reached);

    GridSpec other = grid;
    other.alpha_grid = 32;
    CHECK_FALSE(cache_from_json(text, other).has_value());
    std::string stale = text;
    stale.replace(stale.find("\"format_version\": 1"), 19, "\"format_version\": 0");
    CHECK_FALSE(cache_from_json(stale, grid).has_value());
    CHECK_FALSE(cache_from_json("{not json", grid).has_value());

    const auto dir = std::filesystem::temp_directory_path() / "qtradeoff_cache_test";
    std::filesystem::remove_all(dir);
    CHECK_FALSE(load_cached(dir, grid).has_value());
    store_cached(dir, r);
    const auto loaded = load_cached(dir, grid);
    REQUIRE(loaded.has_value());
    CHECK(loaded->t_row == r.t_row);
    CHECK(cache_file_name(grid) != cache_file_name(other));
    std::filesystem::remove_all(dir);
}
