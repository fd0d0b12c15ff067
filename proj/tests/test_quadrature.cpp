#include "doctest.h"

#include "ramasum/quadrature.hpp"
#include "ramasum/special_functions.hpp"

using namespace ramasum;

namespace {
bool small(const BigReal& x, double bound) { return std::abs(x.to_double()) < bound; }
}  // namespace

TEST_CASE("polynomial exactness") {
    PrecisionContext ctx(256, -30);
    RealFn f = [&](const BigReal& x) { return x * x * x - x; };
    BigReal v = integrate_gl(f, BigReal::from_long(0, ctx), BigReal::from_long(2, ctx), 16, ctx);
    CHECK(small(v - BigReal::from_long(2, ctx), 1e-60));  // int = 4 - 2
}

TEST_CASE("int_0^1 B_3(t) dt = 0 by quadrature") {
    PrecisionContext ctx(256, -30);
    RealFn f = [&](const BigReal& x) { return bernoulli_polynomial(3, x, ctx); };
    auto q = integrate_panels(f, BigReal::from_long(0, ctx), BigReal::from_long(1, ctx), ctx,
                              BigReal::from_string("1e-40", ctx));
    CHECK(small(q.value, 1e-40));
}

TEST_CASE("panel refinement reaches tolerance") {
    PrecisionContext ctx(256, -30);
    RealFn f = [&](const BigReal& x) { return exp(-x, ctx) / (x + BigReal::from_long(1, ctx)); };
    auto q = integrate_panels(f, BigReal::from_long(0, ctx), BigReal::from_long(40, ctx), ctx,
                              BigReal::from_string("1e-35", ctx), 8);
    // reference from an independent 40-digit computation (e E1(1) minus tail):
    CHECK(q.value.to_double() == doctest::Approx(0.5963473623231940743).epsilon(1e-12));
}

TEST_CASE("graded panels handle algebraic endpoint") {
    PrecisionContext ctx(256, -30);
    // int_0^1 x^{-1/2} dx = 2
    RealFn f = [&](const BigReal& x) {
        return pow(x, BigReal::from_string("-0.5", ctx), ctx);
    };
    auto q = integrate_graded_left(f, BigReal::from_long(0, ctx), BigReal::from_long(1, ctx), ctx,
                                   BigReal::from_string("1e-34", ctx));
    CHECK(small(q.value - BigReal::from_long(2, ctx), 1e-30));
}

TEST_CASE("unit-interval tail") {
    PrecisionContext ctx(256, -30);
    // int_1^inf e^{-x} dx = e^{-1}
    RealFn f = [&](const BigReal& x) { return exp(-x, ctx); };
    auto q = integrate_unit_intervals(f, BigReal::from_long(1, ctx), ctx,
                                      BigReal::from_string("1e-45", ctx));
    BigReal ref = exp(BigReal::from_long(-1, ctx), ctx);
    CHECK(small(q.value - ref, 1e-40));
}
