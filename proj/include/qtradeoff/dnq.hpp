#pragma once

#include <vector>

#include "qtradeoff/entropy.hpp"
#include "qtradeoff/tradeoff.hpp"

namespace qtradeoff {

/// The k >= 1 with 1/2^(k+1) <= x < 1/2^k; x = 1/2 maps to k = 1.
int level_index(Fraction x);

/// The m >= 0 with 1/2^(m+1) < beta <= 1/2^m.
int dyadic_level(Fraction beta);

/// R(rho, l) = 1 - (2 - h(2^l rho)) / 2^(l+1): exponent of the Grover
/// divide & conquer stage that halves down to sets of size rho*n.
Exponent rate_R(Fraction rho, int ell);

/// Precompute all sets up to alpha*n into qROM, then Grover-halve.
TradeoffPoint dnq_opt_point(Fraction alpha);

struct DnqBalance {
    Fraction alpha = 0.0;
    Exponent exponent = 0.0;   // time = space at the optimum
    int level = 0;
};

/// Minimises the time of dnq_opt_point over alpha by root-finding
/// R(alpha, k) = h(alpha) in every level branch k <= 8.
DnqBalance dnq_opt_balance();

/// Outer Grover divide & conquer down to sets of size beta*n, which are solved
/// with dnq_opt_point(alpha) (needs writable quantum memory).
TradeoffPoint dnq_improved_point(Fraction alpha, Fraction beta);

/// Closed form of the improved time for beta = 1/2^m:
/// max{1 - beta (2 - h(2^k alpha))/2^(k+1), 1 - beta + beta h(alpha)}.
Exponent dnq_improved_time_dyadic(Fraction alpha, int m);

struct DnqSweep {
    int alpha_samples = 4096;     // alpha = i / (2 * alpha_samples), i = 1..alpha_samples
    int beta_samples = 256;       // beta = j / beta_samples, plus every 1/2^m
    int max_dyadic_level = 24;
    int plateau_steps = 1024;     // step-point resolution on s in [0, 1]
};

/// Pareto curve of the alpha sweep of dnq_opt_point (no plateau points).
TradeoffCurve dnq_opt_curve(const DnqSweep& sweep);

/// Pareto-filtered, plateau-completed improved tradeoff. The sweep runs on
/// OpenMP threads; the result does not depend on the thread count.
TradeoffCurve dnq_improved_curve(const DnqSweep& sweep);

/// Single-threaded reference for dnq_improved_curve.
TradeoffCurve dnq_improved_curve_serial(const DnqSweep& sweep);

/// Leftmost point where the improved and plain curves coincide: the smallest
/// S whose plain time reaches the first fractal plateau sqrt(2 * T_opt).
TradeoffPoint dnq_coincidence_start();

struct ExactDnqCost {
    int n = 0;
    int alpha_units = 0;
    int level = 0;
    BigInt precompute;               // sum_{i <= alpha n} C(n, i)
    std::vector<BigInt> search_sizes; // Grover search space per recursion level
    double precompute_exp = 0.0;     // log2(precompute) / n
    double search_exp = 0.0;         // log2(prod sqrt(search_sizes)) / n
    double total_exp = 0.0;          // log2(precompute + search cost) / n
};

/// Exact modeled cost of dnq_opt for a concrete power-of-two n <= 4096 and
/// alpha*n = alpha_units in [1, n/2].
ExactDnqCost exact_dnq_cost(int n, int alpha_units);

}  // namespace qtradeoff
