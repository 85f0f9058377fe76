#pragma once

#include "qtradeoff/entropy.hpp"
#include "qtradeoff/tradeoff.hpp"

namespace qtradeoff {

// Complexity bases of the lattice path-detection algorithm, per dimension.
// These are solver outputs and are consumed as given.
struct PairwiseConstants {
    double lattice3 = 2.65907;    // size-3 lattice dimension
    double lattice2 = 1.82653;    // size-2 lattice dimension
    double space_gain = 1.25465;  // space divisor per paired coordinate
    double time_cost = 1.12718;   // time multiplier per paired coordinate

    /// Positivity, lattice3 < lattice2^2, and the two cross-checks
    /// lattice3/lattice2^2 = 1/space_gain, sqrt(2)/space_gain = time_cost to 1e-4.
    bool consistent() const;
};

inline constexpr PairwiseConstants kPairwise{};

/// kappa = k/n pairs fixed: S = lattice2 / space_gain^kappa,
/// T = lattice2 * time_cost^kappa. Throws std::domain_error outside [0, 1/2].
TradeoffPoint pairwise_point(Fraction kappa);

struct PowerFit {
    double coefficient = 0.0;
    double exponent = 0.0;
};

/// T = coefficient / S^exponent along the kappa segment.
PowerFit pairwise_fit();

struct PairwiseSweep {
    int kappa_samples = 512;
    int depth = 32;
    int plateau_steps = 1024;
};

/// Fractal closure of the kappa segment, plateau-completed.
TradeoffCurve pairwise_extended_curve(const PairwiseSweep& sweep = {});

/// The kappa segment alone.
TradeoffCurve pairwise_segment(int kappa_samples);

/// Subsets of [n] conforming to k fixed pair orders: 3^k 2^(n-2k).
/// Throws std::domain_error unless 0 <= 2k <= n <= 64.
BigInt conforming_count(int n, int k);

}  // namespace qtradeoff
