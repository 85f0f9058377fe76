#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace qtradeoff {

// An exponent e stands for a quantity growing as 2^(e*n). A fraction is a
// real in [0, 1] (cutoffs, relative dimensions, k/n).
using Exponent = double;
using Fraction = double;
using BigInt = boost::multiprecision::cpp_int;

/// Binary entropy h(x) = -(x log2 x + (1-x) log2(1-x)), with h(0) = h(1) = 0.
/// Throws std::domain_error outside [0, 1].
Exponent entropy(Fraction x);

/// Inverse of h on the increasing branch: the x in [0, 1/2] with h(x) = y.
Fraction entropy_inverse(Exponent y);

/// Sum_{i=0..k} C(n, i), exact. Requires 0 <= k <= n <= 256.
BigInt binomial_sum_exact(int n, int k);

/// Same sum without the n <= 256 cap; used by the exact cost counter.
BigInt binomial_prefix_sum(int n, int k);

/// C(n, k), exact.
BigInt binomial_exact(int n, int k);

/// log2 of a positive big integer, accurate to double precision even when the
/// value does not fit in a double.
double log2_big(const BigInt& value);

}  // namespace qtradeoff
