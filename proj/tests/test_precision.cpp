#include "doctest.h"

#include <cmath>
#include <thread>

#include "ramasum/precision.hpp"

using namespace ramasum;

namespace {

// Independent oracle for pi: Machin's formula with the arctan power series
// evaluated directly, no mpfr_const_pi involved.
BigReal pi_machin_oracle(const PrecisionContext& ctx) {
    PrecisionContext work(ctx.bits + 32, ctx.target_tol_log10);
    auto atan_inv = [&](long q) {
        // arctan(1/q) = sum (-1)^k / ((2k+1) q^{2k+1})
        BigReal acc = BigReal::zero(work);
        BigReal qq = BigReal::from_long(q, work);
        BigReal p = BigReal::from_long(1, work) / qq;
        BigReal q2 = qq * qq;
        for (long k = 0; k < 100000; ++k) {
            BigReal term = p / BigReal::from_long(2 * k + 1, work);
            if (k % 2 == 0)
                acc += term;
            else
                acc -= term;
            if (term.exponent2() < -static_cast<long>(work.bits)) break;
            p = p / q2;
        }
        return acc;
    };
    BigReal r = BigReal::from_long(16, work) * atan_inv(5) -
                BigReal::from_long(4, work) * atan_inv(239);
    BigReal out = BigReal::zero(ctx);
    mpfr_set(out.raw_mut(), r.raw(), MPFR_RNDN);
    return out;
}

bool close_bits(const BigReal& a, const BigReal& b, long bits) {
    BigReal d = abs(a - b);
    if (d.is_zero()) return true;
    return d.exponent2() <= std::max(a.exponent2(), b.exponent2()) - bits;
}

}  // namespace

TEST_CASE("context validation") {
    CHECK_THROWS_AS(PrecisionContext(32, -10), PrecisionError);
    CHECK_THROWS_AS(PrecisionContext(256, 1), PrecisionError);
    PrecisionContext ctx(256, -20);
    CHECK(ctx.decimal_digits() > 70);
    PrecisionContext t = PrecisionContext::for_tolerance(-30);
    CHECK(t.bits >= 256);
    CHECK(PrecisionContext::for_tolerance(-40).bits == 533);
}

TEST_CASE("exp/log identity cases") {
    PrecisionContext ctx(256, -20);
    BigReal one = BigReal::from_long(1, ctx);
    BigReal r = exp(BigReal::zero(ctx), ctx);
    CHECK(mpfr_cmp_ui(r.raw(), 1) == 0);
    BigReal l = log(const_e(ctx), ctx);
    CHECK(close_bits(l, one, 250));
    CHECK_THROWS_AS(log(BigReal::from_long(-1, ctx), ctx), DomainError);
    CHECK_THROWS_AS(evaluate_elementary(Elementary::Log,
                                        {BigReal::from_long(-1, ctx)}, ctx),
                    DomainError);
}

TEST_CASE("pi against arctan-series oracle") {
    PrecisionContext ctx(256, -20);
    BigReal p = pi(ctx);
    BigReal oracle = pi_machin_oracle(ctx);
    CHECK(close_bits(p, oracle, 250));
    CHECK(p.to_double() == doctest::Approx(3.14159265358979).epsilon(1e-12));
}

TEST_CASE("evaluate_elementary dispatch") {
    PrecisionContext ctx(256, -20);
    BigReal two = BigReal::from_long(2, ctx);
    BigReal half = BigReal::from_string("0.5", ctx);
    BigReal r = evaluate_elementary(Elementary::Pow, {two, half}, ctx);
    CHECK(r.to_double() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    BigReal s = evaluate_elementary(Elementary::Sin, {pi(ctx) / two}, ctx);
    CHECK(s.to_double() == doctest::Approx(1.0).epsilon(1e-14));
    BigReal a = evaluate_elementary(Elementary::Atan, {BigReal::from_long(1, ctx)}, ctx);
    CHECK((a * BigReal::from_long(4, ctx)).to_double() ==
          doctest::Approx(3.14159265358979).epsilon(1e-12));
    CHECK(evaluate_elementary(Elementary::ConstE, {}, ctx).to_double() ==
          doctest::Approx(2.718281828459045).epsilon(1e-14));
    CHECK_THROWS_AS(evaluate_elementary(Elementary::Pow, {two}, ctx), DomainError);
}

TEST_CASE("compare_within") {
    PrecisionContext ctx(256, -20);
    BigReal one = BigReal::from_long(1, ctx);
    auto r = compare_within(one, one, BigReal::from_string("1e-30", ctx));
    CHECK(r.within);
    CHECK(r.diff.is_zero());
    auto r2 = compare_within(one, BigReal::from_string("1.5", ctx),
                             BigReal::from_string("0.1", ctx));
    CHECK_FALSE(r2.within);
    CHECK(r2.diff.to_double() == doctest::Approx(-0.5));
}

TEST_CASE("monotone refinement") {
    // |result(2B) - result(B)| <= err(B) on a composite expression
    for (mpfr_prec_t B : {64, 128, 256}) {
        PrecisionContext lo((int)B, -5);
        PrecisionContext hi((int)(2 * B), -5);
        auto compute = [](const PrecisionContext& c) {
            BigReal x = BigReal::from_string("1.7", c);
            BigReal y = exp(log(x, c) * BigReal::from_string("2.5", c), c);
            return y + sin(x, c) / atan(x, c);
        };
        BigReal a = compute(lo);
        BigReal b = compute(hi);
        BigReal diff = abs(a - b);
        CHECK(diff <= a.err() + b.err());
    }
}

TEST_CASE("error radius propagates") {
    PrecisionContext ctx(128, -20);
    BigReal x = BigReal::from_long(2, ctx);
    BigReal e = BigReal::from_string("1e-10", ctx);
    x.set_err(e);
    BigReal y = x * x;
    // d(x^2) = 2x dx = 4e-10
    CHECK(y.err().to_double() == doctest::Approx(4e-10).epsilon(1e-3));
    CHECK_THROWS_AS(x.set_err(BigReal::from_long(-1, ctx)), DomainError);
}

TEST_CASE("no global precision state across threads") {
    auto compute = [](mpfr_prec_t bits) {
        PrecisionContext c(bits, -10);
        BigReal x = BigReal::from_string("2.5", c);
        return (exp(log(x, c) * BigReal::from_string("1.25", c), c) + atan(x, c)).to_string(25);
    };
    std::string s256 = compute(256);
    std::string s128 = compute(128);
    std::string r256, r128;
    std::thread t1([&] { r256 = compute(256); });
    std::thread t2([&] { r128 = compute(128); });
    t1.join();
    t2.join();
    CHECK(r256 == s256);
    CHECK(r128 == s128);
}

TEST_CASE("string round-trip and formatting") {
    PrecisionContext ctx(256, -20);
    CHECK_THROWS_AS(BigReal::from_string("abc", ctx), DomainError);
    CHECK_THROWS_AS(BigReal::from_string("1.5x", ctx), DomainError);
    BigReal x = BigReal::from_string("-0.00125", ctx);
    CHECK(x.to_string(6) == "-1.25e-3");
    BigReal y = BigReal::from_long(1, ctx);
    CHECK(y.to_string(10) == "1e+0");
}
