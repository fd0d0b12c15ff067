// ramanujan.hpp — Ramanujan summation of series terms a(n) (optionally
// depending on a parameter z) by four strategies: the closed-form catalog,
// the shadow formula for convergent series, the Euler-Maclaurin engine, and
// coefficientwise Taylor summation for exponentially growing terms. Also the
// Euler-sum function h(s) = sum H_n n^{-s} with its analytic continuation.
#pragma once

#include <map>
#include <optional>
#include <string>

#include "ramasum/laplace.hpp"
#include "ramasum/precision.hpp"
#include "ramasum/series_expr.hpp"

namespace ramasum {

enum class Strategy { ClosedForm, ShadowCGT, EulerMaclaurin, TaylorCoefficient };

std::string to_string(Strategy s);

struct RamanujanResult {
    BigReal value;
    BigReal error_estimate;
    Strategy strategy;
    std::map<std::string, std::string> diagnostics;
};

struct EulerMaclaurinConfig {
    long start_index = 32;       // M: expansion point, doubled on demand
    unsigned correction_order = 16;  // N: even, 2..64
    double tail_tol_log10 = 0.0;     // 0: derive from ctx.target_tol

    void validate() const;
};

struct CatalogKey {
    enum class Kind {
        PowerTerm,              // a(n) = n^{-s}
        LogOverPower,           // a(n) = log n / n^s
        ExpTerm,                // a(n) = e^{nz}
        ExpOverN,               // a(n) = e^{-nz}/n
        ExpHarmonic,            // a(n) = e^{-nz} H_n
        ExpLog,                 // a(n) = e^{nz} log n
        ExpHarmonicJ,           // a(n) = e^{-nz} H_n^{(j)}
        MonomialTimesHarmonic,  // a(n) = n^k H_n
    };
    Kind kind;
    BigReal param;  // s or z, per kind
    long j = 1;     // ExpHarmonicJ order
    long k = 0;     // MonomialTimesHarmonic power

    static CatalogKey power_term(const BigReal& s) { return {Kind::PowerTerm, s, 1, 0}; }
    static CatalogKey log_over_power(const BigReal& s) { return {Kind::LogOverPower, s, 1, 0}; }
    static CatalogKey exp_term(const BigReal& z) { return {Kind::ExpTerm, z, 1, 0}; }
    static CatalogKey exp_over_n(const BigReal& z) { return {Kind::ExpOverN, z, 1, 0}; }
    static CatalogKey exp_harmonic(const BigReal& z) { return {Kind::ExpHarmonic, z, 1, 0}; }
    static CatalogKey exp_log(const BigReal& z) { return {Kind::ExpLog, z, 1, 0}; }
    static CatalogKey exp_harmonic_j(const BigReal& z, long j) {
        return {Kind::ExpHarmonicJ, z, j, 0};
    }
    static CatalogKey monomial_times_harmonic(long k) {
        return {Kind::MonomialTimesHarmonic, BigReal(), 1, k};
    }
};

// dispatch: catalog -> shadow -> Euler-Maclaurin -> Taylor coefficients, with
// a cross-check against a second applicable strategy when that is cheap
RamanujanResult ramanujan_sum(const SeriesExpr& expr, const std::optional<BigReal>& z,
                              const PrecisionContext& ctx);

RamanujanResult catalog_sum(const CatalogKey& key, const PrecisionContext& ctx);

// fractional-remainder function R_a(x) for PowerTerm and ExpTerm
BigReal catalog_R_function(const CatalogKey& key, const BigReal& x, const PrecisionContext& ctx);

RamanujanResult sum_via_cgt(const SeriesExpr& expr, const std::optional<BigReal>& z,
                            const PrecisionContext& ctx);

RamanujanResult sum_via_euler_maclaurin(const SeriesExpr& expr, const std::optional<BigReal>& z,
                                        const EulerMaclaurinConfig& config,
                                        const PrecisionContext& ctx);

// K = 0 selects the truncation adaptively
RamanujanResult sum_via_taylor_coefficients(const SeriesExpr& expr,
                                            const std::optional<BigReal>& z, unsigned K,
                                            const PrecisionContext& ctx);

// sumR a(n+N) = sumR a(n) - [a(1)+...+a(N)] + int_1^{N+1} a(t) dt
RamanujanResult translate_shift(const SeriesExpr& expr, long N, const std::optional<BigReal>& z,
                                const PrecisionContext& ctx);

// h(s) = sum_{n>=1} H_n n^{-s}: direct sum with Euler-Maclaurin tail for
// s > 1, analytic continuation through the Ramanujan interpolation identity
// for s <= 1. PoleError within 1e-6 of the poles of the sin/zeta factors.
BigReal euler_sum_h(const BigReal& s, const PrecisionContext& ctx);

// --- building blocks shared with the identity suite -----------------------

// zeta'(-k), cached per precision
BigReal zeta_prime_neg(long k, const PrecisionContext& ctx);
// sumR n^k log n = -zeta'(-k) - 1/(k+1)^2
BigReal sumR_nk_logn(long k, const PrecisionContext& ctx);
// sumR n^k H_n reconstructed from Corollary 1 with the exact rational part
BigReal sumR_nk_Hn(long k, const PrecisionContext& ctx);
// int_0^1 psi(x+1) e^{-zx} dx
BigReal psi_exp_integral01(const BigReal& z, const PrecisionContext& ctx);
// int_0^1 x^{-s} (psi(x+1)+gamma) dx, graded toward 0
BigReal int01_x_pow_psi(const BigReal& s, const PrecisionContext& ctx);
// int_A^inf x^{-s} (psi(x+1)+gamma) dx by the asymptotic expansion; s > 1
BigReal psi_tail_integral(const BigReal& s, const BigReal& A, const PrecisionContext& ctx);
// sum_{n>=M} f(n) by Euler-Maclaurin (exact identity with remainder quadrature)
BigReal em_tail_sum(const SeriesExpr& expr, long M, const std::optional<BigReal>& z,
                    const PrecisionContext& ctx);
// L(psi(x+1))(z) and L(1/(x+1))(z) with log/constant growth models
BigReal laplace_psi1p(const BigReal& z, const PrecisionContext& ctx);
BigReal laplace_inv1p(const BigReal& z, const PrecisionContext& ctx);

}  // namespace ramasum
