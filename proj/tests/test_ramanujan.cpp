#include "doctest.h"
#include <cmath>

#include "ramasum/formal_series.hpp"
#include "ramasum/quadrature.hpp"
#include "ramasum/ramanujan.hpp"
#include "ramasum/special_functions.hpp"

using namespace ramasum;

namespace {
const PrecisionContext kCtx(256, -30);
const std::optional<BigReal> kNoZ;

std::optional<BigReal> zval(const char* s) { return BigReal::from_string(s, kCtx); }

double err_vs(const BigReal& v, const char* ref) {
    return std::abs((v - BigReal::from_string(ref, kCtx)).to_double());
}
}  // namespace

TEST_CASE("catalog closed forms") {
    // sumR 1/n^2 = zeta(2) - 1
    auto r = catalog_sum(CatalogKey::power_term(BigReal::from_long(2, kCtx)), kCtx);
    CHECK(err_vs(r.value, "0.644934066848226436472415166646025189") < 1e-29);
    CHECK(r.strategy == Strategy::ClosedForm);
    // s = 1 branch: gamma exactly
    auto g = catalog_sum(CatalogKey::power_term(BigReal::from_long(1, kCtx)), kCtx);
    CHECK(err_vs(g.value, "0.577215664901532860606512090082402431") < 1e-29);
    // plain monomial via PowerTerm(-2): 1/3 exactly (B_3 = 0)
    auto m = catalog_sum(CatalogKey::power_term(BigReal::from_long(-2, kCtx)), kCtx);
    CHECK(err_vs(m.value, "0.33333333333333333333333333333333333") < 1e-29);
    // and it matches (1 - B_{k+1})/(k+1)
    CHECK((Rational(1) - bernoulli_number(3)) / Rational(3) == Rational(1, 3));
    // sumR log n = -1 + log sqrt(2 pi)
    auto l = catalog_sum(CatalogKey::log_over_power(BigReal::zero(kCtx)), kCtx);
    CHECK(err_vs(l.value, "-0.0810614667953272582196702635943823601") < 1e-29);
    // sumR e^{nz} at z = 1/2
    auto e = catalog_sum(CatalogKey::exp_term(BigReal::from_string("0.5", kCtx)), kCtx);
    CHECK(err_vs(e.value, "0.755948458863458009566198131155812505") < 1e-29);
    // Lemma 3 values
    auto o = catalog_sum(CatalogKey::exp_over_n(BigReal::from_long(1, kCtx)), kCtx);
    CHECK(err_vs(o.value, "0.239291210991561617344479869607208053") < 1e-29);
    // Lemma 2 value at z = 1/2
    auto h = catalog_sum(CatalogKey::exp_harmonic(BigReal::from_string("0.5", kCtx)), kCtx);
    CHECK(err_vs(h.value, "0.297065223805845160564392528813379003") < 1e-27);
    // corrected Lemma 1 value at z = 1/2
    auto el = catalog_sum(CatalogKey::exp_log(BigReal::from_string("0.5", kCtx)), kCtx);
    CHECK(err_vs(el.value, "-0.134980246145521827666174523808140109") < 1e-27);
    // corrected Theorem 4 values at z = 1/2
    auto t2 = catalog_sum(CatalogKey::exp_harmonic_j(BigReal::from_string("0.5", kCtx), 2), kCtx);
    CHECK(err_vs(t2.value, "0.309414710838008477195425022486731223") < 1e-24);
    auto t3 = catalog_sum(CatalogKey::exp_harmonic_j(BigReal::from_string("0.5", kCtx), 3), kCtx);
    CHECK(err_vs(t3.value, "0.317242271465077355666199338986176764") < 1e-24);
    // sumR n^k H_n reconstructions
    auto a0 = catalog_sum(CatalogKey::monomial_times_harmonic(0), kCtx);
    CHECK(err_vs(a0.value, "0.446884964147626549129438398717986007") < 1e-28);
    auto a3 = catalog_sum(CatalogKey::monomial_times_harmonic(3), kCtx);
    CHECK(err_vs(a3.value, "0.216520552685510810255162190859022299") < 1e-28);
    CHECK_THROWS_AS(catalog_sum(CatalogKey::exp_term(BigReal::from_long(4, kCtx)), kCtx),
                    DomainError);
}

TEST_CASE("catalog R functions") {
    // R_{1/n}(1) = -psi(1) = gamma
    BigReal r1 = catalog_R_function(CatalogKey::power_term(BigReal::from_long(1, kCtx)),
                                    BigReal::from_long(1, kCtx), kCtx);
    CHECK(err_vs(r1, "0.577215664901532860606512090082402431") < 1e-29);
    // difference equation at x = 1.7 for PowerTerm(2)
    BigReal x = BigReal::from_string("1.7", kCtx);
    CatalogKey k2 = CatalogKey::power_term(BigReal::from_long(2, kCtx));
    BigReal d = catalog_R_function(k2, x, kCtx) -
                catalog_R_function(k2, x + BigReal::from_long(1, kCtx), kCtx);
    CHECK(std::abs((d - pow(x, BigReal::from_long(-2, kCtx), kCtx)).to_double()) < 1e-29);
    // int_1^2 R_a = 0 for ExpTerm(1/2) by quadrature
    CatalogKey ek = CatalogKey::exp_term(BigReal::from_string("0.5", kCtx));
    RealFn f = [&](const BigReal& t) { return catalog_R_function(ek, t, kCtx); };
    auto q = integrate_panels(f, BigReal::from_long(1, kCtx), BigReal::from_long(2, kCtx), kCtx,
                              BigReal::from_string("1e-32", kCtx));
    CHECK(std::abs(q.value.to_double()) < 1e-29);
    // and for PowerTerm(2)
    RealFn f2 = [&](const BigReal& t) { return catalog_R_function(k2, t, kCtx); };
    auto q2 = integrate_panels(f2, BigReal::from_long(1, kCtx), BigReal::from_long(2, kCtx), kCtx,
                               BigReal::from_string("1e-32", kCtx));
    CHECK(std::abs(q2.value.to_double()) < 1e-29);
    CHECK_THROWS_AS(catalog_R_function(CatalogKey::exp_harmonic(BigReal::from_long(1, kCtx)),
                                       BigReal::from_long(1, kCtx), kCtx),
                    DomainError);
}

TEST_CASE("euler-maclaurin engine on the classical constants") {
    EulerMaclaurinConfig cfg;
    // sumR 1/n = gamma to 1e-30
    auto r = sum_via_euler_maclaurin(parse("1/n"), kNoZ, cfg, kCtx);
    CHECK(err_vs(r.value, "0.577215664901532860606512090082402431") < 1e-30);
    CHECK(r.strategy == Strategy::EulerMaclaurin);
    // sumR log n
    auto l = sum_via_euler_maclaurin(parse("log(n)"), kNoZ, cfg, kCtx);
    CHECK(err_vs(l.value, "-0.0810614667953272582196702635943823601") < 1e-25);
    // sumR H_n
    auto h = sum_via_euler_maclaurin(parse("H(n)"), kNoZ, cfg, kCtx);
    CHECK(err_vs(h.value, "0.446884964147626549129438398717986007") < 1e-25);
    CHECK_THROWS_AS(
        sum_via_euler_maclaurin(parse("exp(n*z)"), zval("0.5"), cfg, kCtx),
        ConvergenceError);
    EulerMaclaurinConfig bad;
    bad.correction_order = 7;
    CHECK_THROWS_AS(sum_via_euler_maclaurin(parse("1/n"), kNoZ, bad, kCtx), DomainError);
}

TEST_CASE("shadow formula strategy") {
    auto r = sum_via_cgt(parse("1/n^2"), kNoZ, kCtx);
    CHECK(err_vs(r.value, "0.644934066848226436472415166646025189") < 1e-27);
    CHECK(r.strategy == Strategy::ShadowCGT);
    auto e = sum_via_cgt(parse("exp(-n*z)/n"), zval("1"), kCtx);
    CHECK(err_vs(e.value, "0.239291210991561617344479869607208053") < 1e-27);
    CHECK_THROWS_AS(sum_via_cgt(parse("n"), kNoZ, kCtx), ConvergenceError);
}

TEST_CASE("taylor-coefficient strategy") {
    // g = 1, z = 1/2: matches the Example 2 closed form
    auto r = sum_via_taylor_coefficients(parse("exp(n*z)"), zval("0.5"), 0, kCtx);
    CHECK(err_vs(r.value, "0.755948458863458009566198131155812505") < 1e-26);
    CHECK(r.strategy == Strategy::TaylorCoefficient);
    // g = log n, z = 1/2: matches corrected Lemma 1 value
    auto l = sum_via_taylor_coefficients(parse("exp(n*z)*log(n)"), zval("0.5"), 0, kCtx);
    CHECK(err_vs(l.value, "-0.134980246145521827666174523808140109") < 1e-22);
    // g = H_n with negative rate: matches Lemma 2 value
    auto h = sum_via_taylor_coefficients(parse("H(n)*exp(-n*z)"), zval("0.5"), 0, kCtx);
    CHECK(err_vs(h.value, "0.297065223805845160564392528813379003") < 1e-22);
    CHECK_THROWS_AS(
        sum_via_taylor_coefficients(parse("exp(n*z)"), zval("3.2"), 0, kCtx),
        InadmissibleError);
}

TEST_CASE("dispatch and cross-checks") {
    auto r = ramanujan_sum(parse("1/n"), kNoZ, kCtx);
    CHECK(r.strategy == Strategy::ClosedForm);
    CHECK(err_vs(r.value, "0.577215664901532860606512090082402431") < 1e-29);
    auto e = ramanujan_sum(parse("exp(n*z)"), zval("0.5"), kCtx);
    CHECK(err_vs(e.value, "0.755948458863458009566198131155812505") < 1e-26);
    auto h = ramanujan_sum(parse("H(n)"), kNoZ, kCtx);
    CHECK(err_vs(h.value, "0.446884964147626549129438398717986007") < 1e-26);
    // convergent catalog paths carry the shadow cross-check
    auto o = ramanujan_sum(parse("exp(-n*z)/n"), zval("1"), kCtx);
    CHECK(o.diagnostics.count("cross_check") == 1);
    // linearity split
    auto s = ramanujan_sum(parse("1/n + log(n)"), kNoZ, kCtx);
    CHECK(err_vs(s.value, "0.496154198106205602386841826488019") < 1e-25);
    CHECK_THROWS_AS(ramanujan_sum(parse("exp(n*z)"), zval("3.5"), kCtx), InadmissibleError);
}

TEST_CASE("catalog at negative z agrees with the Taylor path") {
    // sumR e^{0.5 n} H_n: catalog Lemma-2 value continued to z = -1/2 vs the
    // coefficientwise reconstruction
    auto viacat = ramanujan_sum(parse("H(n)*exp(-n*z)"), zval("-0.5"), kCtx);
    CHECK(viacat.strategy == Strategy::ClosedForm);
    auto viatay = sum_via_taylor_coefficients(parse("H(n)*exp(-n*z)"), zval("-0.5"), 0, kCtx);
    CHECK(std::abs((viacat.value - viatay.value).to_double()) < 1e-21);
}

TEST_CASE("translate shift") {
    // a = 1/n, N = 1 -> gamma - 1 + log 2
    auto r = translate_shift(parse("1/n"), 1, kNoZ, kCtx);
    CHECK(err_vs(r.value, "0.270362845461478170023744211540578999") < 1e-27);
    // N = 0 identical
    auto r0 = translate_shift(parse("1/n"), 0, kNoZ, kCtx);
    auto base = ramanujan_sum(parse("1/n"), kNoZ, kCtx);
    CHECK(std::abs((r0.value - base.value).to_double()) == 0.0);
    // consistency with the e^{-nz} relation at z = 0.7:
    // sumR e^{-(n+1) 0.7} = e^{-0.7} sumR e^{-0.7 n}
    auto lhs = translate_shift(parse("exp(-n*z)"), 1, zval("0.7"), kCtx);
    auto rhs = ramanujan_sum(parse("exp(-n*z)"), zval("0.7"), kCtx);
    BigReal scale = exp(BigReal::from_string("-0.7", kCtx), kCtx);
    CHECK(std::abs((lhs.value - scale * rhs.value).to_double()) < 1e-25);
    // reflection relation: sumR e^{-nz} = -e^{-z} sumR e^{nz} + (1 - e^{-z})/z
    BigReal zz = BigReal::from_string("0.7", kCtx);
    auto plus = ramanujan_sum(parse("exp(n*z)"), zval("0.7"), kCtx);
    BigReal want = -exp(-zz, kCtx) * plus.value +
                   (BigReal::from_long(1, kCtx) - exp(-zz, kCtx)) / zz;
    CHECK(std::abs((rhs.value - want).to_double()) < 1e-25);
}

TEST_CASE("fractional powers through catalog and engine") {
    // sumR n^{1/2} = zeta(-1/2) + 2/3
    auto c = ramanujan_sum(parse("n^(1/2)"), kNoZ, kCtx);
    CHECK(err_vs(c.value, "0.458780441689312100649359941269617365") < 1e-28);
    EulerMaclaurinConfig cfg;
    auto e = sum_via_euler_maclaurin(parse("n^(1/2)"), kNoZ, cfg, kCtx);
    CHECK(std::abs((c.value - e.value).to_double()) < 1e-25);
    CHECK_THROWS_AS(translate_shift(parse("1/n"), -1, kNoZ, kCtx), DomainError);
}

TEST_CASE("euler sum h") {
    // h(2) = 2 zeta(3)
    BigReal h2 = euler_sum_h(BigReal::from_long(2, kCtx), kCtx);
    CHECK(err_vs(h2, "2.40411380631918857079947632302289998") < 1e-26);
    // h(3/2) continuation equals direct
    BigReal hd = euler_sum_h(BigReal::from_string("1.5", kCtx), kCtx);
    CHECK(err_vs(hd, "6.02330166880714421544898060503991072") < 1e-20);
    CHECK_THROWS_AS(euler_sum_h(BigReal::from_long(1, kCtx), kCtx), PoleError);
    CHECK_THROWS_AS(euler_sum_h(BigReal::zero(kCtx), kCtx), PoleError);
}

TEST_CASE("h continuation at s = 1/2 is finite") {
    BigReal v = euler_sum_h(BigReal::from_string("0.5", kCtx), kCtx);
    CHECK(std::isfinite(v.to_double()));
}

TEST_CASE("interpolation-integral helpers") {
    // int_0^1 + int_1^A + asymptotic tail equals pi zeta(3/2) at s = 3/2
    PrecisionContext ctx(256, -14);
    BigReal s = BigReal::from_string("1.5", ctx);
    BigReal I0 = int01_x_pow_psi(s, ctx);
    PrecisionContext work(ctx.bits + 32, -16);
    BigReal g = euler_gamma(work);
    RealFn f = [&](const BigReal& x) {
        return pow(x, BigReal::from_string("-1.5", work), work) *
               (polygamma(0, x + BigReal::from_long(1, work), work) + g);
    };
    BigReal A = BigReal::from_long(64, work);
    auto mid = integrate_panels(f, BigReal::from_long(1, work), A, work,
                                BigReal::from_string("1e-20", work), 63);
    BigReal tail = psi_tail_integral(s, BigReal::from_long(64, ctx), ctx);
    BigReal total = I0 + mid.value + tail;
    CHECK(err_vs(total, "8.2070192038494047041621926728109747") < 1e-11);
}
