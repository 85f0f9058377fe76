#include "qtradeoff/pairwise.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qtradeoff {

bool PairwiseConstants::consistent() const
{
    if (!(lattice3 > 0 && lattice2 > 0 && space_gain > 0 && time_cost > 0))
        return false;
    if (!(lattice3 < lattice2 * lattice2))
        return false;
    return std::abs(lattice3 / (lattice2 * lattice2) - 1.0 / space_gain) < 1e-4 &&
           std::abs(std::sqrt(2.0) / space_gain - time_cost) < 1e-4;
}

TradeoffPoint pairwise_point(Fraction kappa)
{
    if (!(kappa >= 0.0 && kappa <= 0.5))
        throw std::domain_error("pairwise_point: kappa must lie in [0, 1/2]");
    char label[64];
    std::snprintf(label, sizeof label, "pairwise kappa=%.6f", kappa);
    return {std::log2(kPairwise.lattice2) - kappa * std::log2(kPairwise.space_gain),
            std::log2(kPairwise.lattice2) + kappa * std::log2(kPairwise.time_cost), label};
}

PowerFit pairwise_fit()
{
    const double e = std::log2(kPairwise.time_cost) / std::log2(kPairwise.space_gain);
    return {std::pow(kPairwise.lattice2, 1.0 + e), e};
}

TradeoffCurve pairwise_segment(int kappa_samples)
{
    if (kappa_samples < 1)
        throw std::invalid_argument("pairwise_segment: need at least one sample");
    std::vector<TradeoffPoint> pts;
    for (int i = 0; i <= kappa_samples; ++i)
        pts.push_back(pairwise_point(0.5 * i / kappa_samples));
    return pareto_filter(pts);
}

TradeoffCurve pairwise_extended_curve(const PairwiseSweep& sweep)
{
    return fractal_closure(pairwise_segment(sweep.kappa_samples), sweep.depth, sweep.plateau_steps);
}

BigInt conforming_count(int n, int k)
{
    if (k < 0 || 2 * k > n || n > 64)
        throw std::domain_error("conforming_count: need 0 <= 2k <= n <= 64");
    BigInt v = 1;
    for (int i = 0; i < k; ++i)
        v *= 3;
    return v << (n - 2 * k);
}

}  // namespace qtradeoff
