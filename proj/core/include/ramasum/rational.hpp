// rational.hpp — exact rational arithmetic for the combinatorial layer:
// Bernoulli numbers under the z/(e^z-1) convention (B_1 = -1/2), harmonic
// numbers H_n^{(j)}, factorials and binomials. Backed by GMP.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "ramasum/precision.hpp"

namespace ramasum {

using Rational = mpq_class;
using Integer = mpz_class;

Integer factorial(unsigned long n);
Integer binomial(unsigned long n, unsigned long k);

// Exact value of a decimal literal such as "0.5", "-1.25e-3", "3", "7/2".
Rational rational_from_string(const std::string& text);

BigReal to_bigreal(const Rational& q, const PrecisionContext& ctx);
std::string to_string(const Rational& q);

// Memoized Bernoulli numbers from the defining recurrence
//   sum_{j=0}^{n} C(n+1, j) B_j = 0,  B_0 = 1   (so B_1 = -1/2).
// Extension is internally synchronized; reads return copies.
class BernoulliCache {
public:
    static BernoulliCache& instance();
    Rational get(unsigned long n);
    void ensure(unsigned long n);

private:
    BernoulliCache();
    struct Impl;
    Impl* impl_;
};

Rational bernoulli_number(unsigned long n);

// H_n^{(j)} = sum_{m<=n} m^{-j}; H_0^{(j)} = 0.
Rational harmonic_number(unsigned long n, unsigned long j = 1);

}  // namespace ramasum
