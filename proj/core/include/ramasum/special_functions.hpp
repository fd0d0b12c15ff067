// special_functions.hpp — classical special functions at arbitrary precision:
// Bernoulli polynomials, digamma/polygamma (asymptotic series + recurrence
// shift), Hurwitz zeta and the Riemann zeta derivative through a single
// Euler-Maclaurin continuation, Ei on the negative axis, and the
// polylogarithm Li_j(e^{-z}).
#pragma once

#include <utility>

#include "ramasum/precision.hpp"
#include "ramasum/rational.hpp"

namespace ramasum {

// B_n(x) = sum_{m<=n} C(n,m) B_m x^{n-m}; exact for rational x.
Rational bernoulli_polynomial(unsigned long n, const Rational& x);
BigReal bernoulli_polynomial(unsigned long n, const BigReal& x, const PrecisionContext& ctx);

// b_N(t) = B_N(t - floor(t)), the 1-periodic extension.
BigReal periodic_bernoulli(unsigned long N, const BigReal& t, const PrecisionContext& ctx);
Rational periodic_bernoulli(unsigned long N, const Rational& t);

// psi^{(m)}(x) for x > 0; error kept below ctx.target_tol.
BigReal polygamma(unsigned long m, const BigReal& x, const PrecisionContext& ctx);

// Euler-Mascheroni constant as -psi(1); cached per precision.
BigReal euler_gamma(const PrecisionContext& ctx);

// psi(x+1) + gamma, evaluated to relative accuracy: for |x| <= 1/2 the
// zeta series sum_{k>=2} (-1)^k zeta(k) x^{k-1} avoids the cancellation that
// the naive combination suffers near x = 0.
BigReal digamma1p_plus_gamma(const BigReal& x, const PrecisionContext& ctx);

// zeta(k) at integer k >= 2, cached per precision.
BigReal riemann_zeta_int(unsigned long k, const PrecisionContext& ctx);

// Hurwitz zeta(x, s) = sum_{n>=0} (n+x)^{-s}, continued to all real s != 1.
BigReal hurwitz_zeta(const BigReal& x, const BigReal& s, const PrecisionContext& ctx);

// (zeta(s), zeta'(s)) by termwise s-differentiation of the same expansion.
std::pair<BigReal, BigReal> zeta_and_derivative(const BigReal& s, const PrecisionContext& ctx);
BigReal riemann_zeta(const BigReal& s, const PrecisionContext& ctx);

// Ei(-z) for z > 0: entire series for z <= 2, quadrature of -int_z^inf e^-u/u
// otherwise (both paths agree within tolerance when cross-checked in tests).
BigReal ei_negative(const BigReal& z, const PrecisionContext& ctx);

// sum_{n>=1} (-1)^n z^n / (n n!) = Ei(-z) - gamma - log z (entire part).
BigReal ei_entire_series(const BigReal& z, const PrecisionContext& ctx);

// Li_j(e^{-z}) for j >= 1, 0 < z < pi. Direct series; for z < 1/2 the
// Bernoulli/log expansion is evaluated as a cross-check.
BigReal polylog(unsigned long j, const BigReal& z, const PrecisionContext& ctx);

// zeta(j) with the convention zeta(1) = gamma used by the identity layers.
BigReal zeta_with_gamma_convention(unsigned long j, const PrecisionContext& ctx);

// The Bernoulli/log expansion of Li_j(e^{-z}) used as the polylog cross-check
// (the independent second path of the remark4 identity checks).
BigReal polylog_bernoulli_expansion(unsigned long j, const BigReal& z,
                                    const PrecisionContext& ctx);

}  // namespace ramasum
