#include "qtradeoff/entropy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qtradeoff {

namespace {

constexpr int kInverseIterations = 200;
// Bracket width; well below the 1e-12 accuracy promised on x.
constexpr double kBracketWidth = 1e-15;
constexpr int kMaxBinomialN = 256;

}  // namespace

Exponent entropy(Fraction x)
{
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("entropy: argument " + std::to_string(x) + " outside [0, 1]");
    if (x == 0.0 || x == 1.0)
        return 0.0;
    return -(x * std::log2(x) + (1.0 - x) * std::log2(1.0 - x));
}

Fraction entropy_inverse(Exponent y)
{
    if (!(y >= 0.0 && y <= 1.0))
        throw std::domain_error("entropy_inverse: argument " + std::to_string(y) + " outside [0, 1]");
    if (y == 0.0)
        return 0.0;
    if (y == 1.0)
        return 0.5;

    // Bisection on the monotone branch; Newton stalls near 1/2 where h' -> 0.
    double lo = 0.0;
    double hi = 0.5;
    for (int i = 0; i < kInverseIterations && hi - lo > kBracketWidth; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (entropy(mid) < y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

BigInt binomial_exact(int n, int k)
{
    if (n < 0 || k < 0 || k > n)
        throw std::domain_error("binomial_exact: need 0 <= k <= n");
    if (k > n - k)
        k = n - k;
    BigInt result = 1;
    for (int i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

BigInt binomial_sum_exact(int n, int k)
{
    if (n < 0 || n > kMaxBinomialN)
        throw std::domain_error("binomial_sum_exact: n must lie in [0, 256]");
    return binomial_prefix_sum(n, k);
}

BigInt binomial_prefix_sum(int n, int k)
{
    if (n < 0 || k < 0 || k > n)
        throw std::domain_error("binomial sum: need 0 <= k <= n");
    BigInt term = 1;
    BigInt sum = 1;
    for (int i = 1; i <= k; ++i) {
        term *= n - i + 1;
        term /= i;
        sum += term;
    }
    return sum;
}

double log2_big(const BigInt& value)
{
    if (value <= 0)
        throw std::domain_error("log2_big: value must be positive");
    const auto top = static_cast<long>(boost::multiprecision::msb(value));
    if (top < 53)
        return std::log2(value.convert_to<double>());
    const long shift = top - 60;
    const BigInt head = value >> shift;
    return std::log2(head.convert_to<double>()) + static_cast<double>(shift);
}

}  // namespace qtradeoff
