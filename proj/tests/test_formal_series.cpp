#include "doctest.h"

#include "ramasum/formal_series.hpp"

using namespace ramasum;

TEST_CASE("named series coefficients") {
    FormalSeries gf = formal_series(SeriesKind::BernoulliGF, 8);
    CHECK(gf.coeff(0) == Rational(1));
    CHECK(gf.coeff(1) == Rational(-1, 2));
    CHECK(gf.coeff(2) == Rational(1, 12));

    FormalSeries lg = formal_series(SeriesKind::LogOneMinusExpOverZ, 6);
    CHECK(lg.coeff(1) == Rational(-1, 2));
    CHECK(lg.coeff(2) == Rational(1, 24));

    FormalSeries inv = formal_series(SeriesKind::InvOneMinusExp, 4);
    CHECK(inv.offset() == -1);
    CHECK(inv.coeff(-1) == Rational(1));
    CHECK(inv.coeff(0) == Rational(1, 2));
    CHECK(inv.coeff(1) == Rational(1, 12));
    CHECK(inv.coeff(2) == Rational(0));

    FormalSeries ei = formal_series(SeriesKind::EiEntirePart, 5);
    CHECK(ei.coeff(1) == Rational(-1));
    CHECK(ei.coeff(2) == Rational(1, 4));
    CHECK(ei.coeff(3) == Rational(-1, 18));
}

TEST_CASE("series arithmetic is exact") {
    // inv_one_minus_exp * (1 - e^{-z}) == 1
    long K = 12;
    FormalSeries inv = formal_series(SeriesKind::InvOneMinusExp, K);
    std::vector<Rational> d;
    d.push_back(Rational(0));
    for (long n = 1; n < K + 2; ++n) {
        Rational q = Rational(1) / Rational(factorial(static_cast<unsigned long>(n)));
        if (n % 2 == 0) q = -q;
        d.push_back(q);
    }
    FormalSeries den(0, std::move(d));
    FormalSeries prod = inv * den;
    CHECK(prod.coeff(0) == Rational(1));
    for (long k = 1; k < 8; ++k) CHECK(prod.coeff(k) == Rational(0));

    // log of the unit series (1-e^{-z})/z reproduces LogOneMinusExpOverZ
    std::vector<Rational> u;
    for (long n = 0; n < K; ++n) {
        Rational q = Rational(1) / Rational(factorial(static_cast<unsigned long>(n + 1)));
        if (n % 2 == 1) q = -q;
        u.push_back(q);
    }
    FormalSeries unit(0, std::move(u));
    FormalSeries lg = unit.log_unit();
    FormalSeries ref = formal_series(SeriesKind::LogOneMinusExpOverZ, 8);
    for (long k = 0; k < 8; ++k) CHECK(lg.coeff(k) == ref.coeff(k));
}

TEST_CASE("truncation is tracked") {
    FormalSeries gf = formal_series(SeriesKind::BernoulliGF, 4);
    CHECK_THROWS_AS(gf.coeff(4), TruncationError);
    CHECK_THROWS_AS(formal_series(SeriesKind::BernoulliGF, 0), TruncationError);
}

TEST_CASE("corollary rationals") {
    CHECK(corollary_rational(0) == Rational(-1, 2));
    CHECK(corollary_rational(1) == Rational(-5, 8));
    CHECK(corollary_rational(2) == Rational(-47, 144));
    CHECK(corollary_rational(3) == Rational(-187, 1728));
    CHECK(corollary_rational(4) == Rational(-251, 9600));
    CHECK(corollary_rational(5) == Rational(-289, 57600));

    CHECK(corollary_rho(0) == Rational(1, 2));
    CHECK(corollary_rho(1) == Rational(7, 8));
    CHECK(corollary_rho(2) == Rational(17, 24));
    CHECK(corollary_rho(3) == Rational(169, 288));
}

TEST_CASE("corollary rational independent of truncation order") {
    for (long k = 0; k <= 5; ++k) {
        Rational base = corollary_rational(k);
        for (long K : {k + 2, k + 5, k + 11}) {
            FormalSeries q = formal_series(SeriesKind::Theorem1QPart, K);
            CHECK(q.coeff(k) == base);
        }
    }
}

TEST_CASE("lemma1 inner-bound readings coincide") {
    FormalSeries a = formal_series(SeriesKind::Lemma1QPart, 14);
    FormalSeries b = lemma1_qpart_extended_bound(14);
    for (long k = 0; k < 14; ++k) CHECK(a.coeff(k) == b.coeff(k));
}

TEST_CASE("calculus edge cases") {
    FormalSeries inv = formal_series(SeriesKind::InvOneMinusExp, 6);
    CHECK_THROWS_AS(inv.integral(), DomainError);  // has a z^{-1} term
    FormalSeries expz = formal_series(SeriesKind::ExpZ, 8);
    FormalSeries d = expz.derivative();
    for (long k = 0; k < 6; ++k) CHECK(d.coeff(k) == expz.coeff(k));
    FormalSeries scaled = expz.scale_argument(Rational(2));  // e^{2z}
    CHECK(scaled.coeff(3) == Rational(4, 3));
    CHECK_THROWS_AS(FormalSeries(0, {Rational(0), Rational(0)}) /
                        FormalSeries(0, {Rational(0), Rational(0)}),
                    DomainError);
}

TEST_CASE("numeric evaluation with tail estimate") {
    PrecisionContext ctx(256, -25);
    FormalSeries q = formal_series(SeriesKind::Theorem1QPart, 80);
    BigReal z = BigReal::from_string("0.5", ctx);
    BigReal v = q.evaluate(z, ctx);
    // frozen from the exact-rational evaluation in the design notes
    CHECK(std::abs(v.to_double() - (-0.90942910426772898840584692878)) < 1e-12);
    CHECK(v.err().to_double() < 1e-25);
}
