#include "ramasum/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "ramasum/quadrature.hpp"

namespace ramasum {

Rational bernoulli_polynomial(unsigned long n, const Rational& x) {
    // Horner in x: B_n(x) = sum_m C(n,m) B_m x^{n-m}
    Rational acc(0);
    for (unsigned long m = 0; m <= n; ++m)
        acc = acc * x + Rational(binomial(n, m)) * bernoulli_number(m);
    return acc;
}

BigReal bernoulli_polynomial(unsigned long n, const BigReal& x, const PrecisionContext& ctx) {
    BigReal acc = BigReal::zero(ctx);
    for (unsigned long m = 0; m <= n; ++m) {
        acc = acc * x + to_bigreal(Rational(binomial(n, m)) * bernoulli_number(m), ctx);
    }
    return acc;
}

BigReal periodic_bernoulli(unsigned long N, const BigReal& t, const PrecisionContext& ctx) {
    BigReal u = BigReal::zero(ctx);
    mpfr_floor(u.raw_mut(), t.raw());
    BigReal frac = t - u;
    frac.clear_err();
    return bernoulli_polynomial(N, frac, ctx);
}

Rational periodic_bernoulli(unsigned long N, const Rational& t) {
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
    return bernoulli_polynomial(N, t - Rational(fl));
}

// ---------------------------------------------------------------------------
// polygamma
// ---------------------------------------------------------------------------

BigReal polygamma(unsigned long m, const BigReal& x, const PrecisionContext& ctx) {
    if (x.sign() <= 0) throw DomainError("polygamma: x must be positive");
    PrecisionContext work(ctx.bits + 64, ctx.target_tol_log10);
    int digits = work.decimal_digits();
    // shift until the asymptotic series converges comfortably
    double x0 = x.to_double();
    double want = std::max<double>(static_cast<double>(m) + 8.0, 0.38 * digits + 8.0);
    long shift = x0 >= want ? 0 : static_cast<long>(std::ceil(want - x0));

    BigReal y = BigReal::zero(work);
    mpfr_add_si(y.raw_mut(), x.raw(), shift, MPFR_RNDN);

    BigReal tol = work.target_tol() * BigReal::from_double(1e-8, work);

    // asymptotic series at y
    BigReal result = BigReal::zero(work);
    BigReal yinv = BigReal::from_long(1, work) / y;
    if (m == 0) {
        result = log(y, work) - yinv * BigReal::from_double(0.5, work);
        BigReal y2inv = yinv * yinv;
        BigReal p = y2inv;
        for (unsigned long k = 1; k < 700; ++k) {
            BigReal term = to_bigreal(bernoulli_number(2 * k) / Rational(2 * k), work) * p;
            result -= term;
            if (abs(term) < tol) break;
            p *= y2inv;
        }
    } else {
        // (-1)^{m-1} [ (m-1)!/y^m + m!/(2 y^{m+1}) + sum B_2k (2k+m-1)!/((2k)! y^{2k+m}) ]
        BigReal ym = pow_si(y, -static_cast<long>(m), work);
        BigReal facm1 = to_bigreal(Rational(factorial(m - 1)), work);
        BigReal facm = to_bigreal(Rational(factorial(m)), work);
        result = facm1 * ym + facm * BigReal::from_double(0.5, work) * ym * yinv;
        BigReal y2inv = yinv * yinv;
        BigReal p = ym * y2inv;
        for (unsigned long k = 1; k < 700; ++k) {
            Rational c = bernoulli_number(2 * k) *
                         Rational(factorial(2 * k + m - 1)) / Rational(factorial(2 * k));
            BigReal term = to_bigreal(c, work) * p;
            result += term;
            if (abs(term) < tol) break;
            p *= y2inv;
        }
        if (m % 2 == 0) result = -result;
    }

    // downward recurrence: psi^{(m)}(x) = psi^{(m)}(x+L) - (-1)^m m! sum (x+i)^{-(m+1)}
    if (shift > 0) {
        BigReal corr = BigReal::zero(work);
        for (long i = 0; i < shift; ++i) {
            BigReal xi = BigReal::zero(work);
            mpfr_add_si(xi.raw_mut(), x.raw(), i, MPFR_RNDN);
            corr += pow_si(xi, -static_cast<long>(m + 1), work);
        }
        BigReal facm = to_bigreal(Rational(factorial(m)), work);
        if (m % 2 == 0)
            result -= facm * corr;
        else
            result += facm * corr;
    }
    result.bump_err_ulps(8);
    return result;
}

namespace {
std::mutex g_gamma_mutex;
std::map<mpfr_prec_t, BigReal> g_gamma_cache;
}  // namespace

BigReal euler_gamma(const PrecisionContext& ctx) {
    {
        std::lock_guard<std::mutex> lock(g_gamma_mutex);
        auto it = g_gamma_cache.find(ctx.bits);
        if (it != g_gamma_cache.end()) return it->second;
    }
    // full-precision gamma regardless of the caller's tolerance: cached values
    // are shared across contexts with different target tolerances
    PrecisionContext full(ctx.bits,
                          -0.28 * static_cast<double>(ctx.bits));
    BigReal g = -polygamma(0, BigReal::from_long(1, full), full);
    std::lock_guard<std::mutex> lock(g_gamma_mutex);
    g_gamma_cache.emplace(ctx.bits, g);
    return g;
}

namespace {
std::mutex g_zeta_int_mutex;
std::map<std::pair<unsigned long, mpfr_prec_t>, BigReal> g_zeta_int_cache;
}  // namespace

BigReal riemann_zeta_int(unsigned long k, const PrecisionContext& ctx) {
    if (k < 2) throw DomainError("riemann_zeta_int: k must be >= 2");
    {
        std::lock_guard<std::mutex> lock(g_zeta_int_mutex);
        auto it = g_zeta_int_cache.find({k, ctx.bits});
        if (it != g_zeta_int_cache.end()) return it->second;
    }
    PrecisionContext full(ctx.bits, -0.28 * static_cast<double>(ctx.bits));
    BigReal v = riemann_zeta(BigReal::from_long(static_cast<long>(k), full), full);
    std::lock_guard<std::mutex> lock(g_zeta_int_mutex);
    g_zeta_int_cache.emplace(std::make_pair(k, ctx.bits), v);
    return v;
}

BigReal digamma1p_plus_gamma(const BigReal& x, const PrecisionContext& ctx) {
    BigReal half = BigReal::from_double(0.5, ctx);
    if (abs(x) > half) return polygamma(0, x + BigReal::from_long(1, ctx), ctx) + euler_gamma(ctx);
    if (x.is_zero()) return BigReal::zero(ctx);
    // sum_{k>=2} (-1)^k zeta(k) x^{k-1}; ratio <= |x| so the tail is geometric
    PrecisionContext work(ctx.bits + 32, ctx.target_tol_log10);
    BigReal xw = BigReal::zero(work);
    mpfr_set(xw.raw_mut(), x.raw(), MPFR_RNDN);
    BigReal acc = BigReal::zero(work);
    BigReal p = xw;  // x^{k-1} at k = 2
    // relative tolerance: scale by the leading term zeta(2) |x|
    BigReal tol = abs(xw) * BigReal::from_double(
        std::pow(10.0, ctx.target_tol_log10 - 6), work);
    for (unsigned long k = 2; k < 100000; ++k) {
        BigReal term = riemann_zeta_int(k, work) * p;
        if (k % 2 == 0)
            acc += term;
        else
            acc -= term;
        if (abs(term) < tol) {
            acc.set_err(acc.err() + abs(term) * BigReal::from_long(2, work));
            break;
        }
        p *= xw;
    }
    BigReal out = BigReal::zero(ctx);
    mpfr_set(out.raw_mut(), acc.raw(), MPFR_RNDN);
    BigReal e = BigReal::zero(ctx);
    mpfr_set(e.raw_mut(), acc.err_raw(), MPFR_RNDU);
    out.set_err(e);
    out.bump_err_ulps(8);
    return out;
}

// ---------------------------------------------------------------------------
// Hurwitz zeta / zeta' — one Euler-Maclaurin continuation
// ---------------------------------------------------------------------------

namespace {

struct ZetaEM {
    BigReal value;
    BigReal deriv;  // d/ds, filled when want_deriv
};

// zeta(x, s) = sum_{n<M} (n+x)^{-s} + (M+x)^{1-s}/(s-1) + (M+x)^{-s}/2
//            + sum_{k>=1} B_2k/(2k)! (s)_{2k-1} (M+x)^{-s-2k+1} + R
// with the number of direct terms M doubled until the Bernoulli corrections
// fall below tol before stalling. s-derivatives are carried termwise.
ZetaEM zeta_em(const BigReal& x, const BigReal& s, bool want_deriv,
               const PrecisionContext& ctx) {
    if (mpfr_cmp_ui(s.raw(), 1) == 0) throw PoleError("zeta: pole at s = 1");
    double sd = s.to_double();
    // guard bits: cancellation for negative s scales like (1-s) log2(M+x)
    long M = 16;
    int digits = ctx.decimal_digits();
    double need = 0.45 * digits + 4;
    if (M < static_cast<long>(need)) M = static_cast<long>(need);
    for (int attempt = 0; attempt < 10; ++attempt, M *= 2) {
        long guard = 96;
        if (sd < 0) guard += static_cast<long>((2.0 - sd) * std::log2(M + x.to_double() + 2) + 32);
        PrecisionContext work(ctx.bits + guard, ctx.target_tol_log10);
        BigReal tol = work.target_tol();
        {
            // translate target tol to the requested ctx tolerance, with margin
            PrecisionContext c4(work.bits, ctx.target_tol_log10);
            tol = c4.target_tol() * BigReal::from_double(0.25, work);
        }
        BigReal sw = BigReal::zero(work);
        mpfr_set(sw.raw_mut(), s.raw(), MPFR_RNDN);
        BigReal xw = BigReal::zero(work);
        mpfr_set(xw.raw_mut(), x.raw(), MPFR_RNDN);

        BigReal val = BigReal::zero(work), der = BigReal::zero(work);
        for (long n = 0; n < M; ++n) {
            BigReal base = xw + BigReal::from_long(n, work);
            BigReal t = pow(base, -sw, work);
            val += t;
            if (want_deriv) der -= log(base, work) * t;
        }
        BigReal Mx = xw + BigReal::from_long(M, work);
        BigReal lMx = log(Mx, work);
        BigReal one = BigReal::from_long(1, work);
        BigReal sm1 = sw - one;
        // (M+x)^{1-s}/(s-1)
        BigReal p1 = pow(Mx, one - sw, work);
        val += p1 / sm1;
        if (want_deriv) der += -lMx * p1 / sm1 - p1 / (sm1 * sm1);
        // (M+x)^{-s}/2
        BigReal p0 = pow(Mx, -sw, work);
        BigReal half = BigReal::from_double(0.5, work);
        val += p0 * half;
        if (want_deriv) der -= lMx * p0 * half;

        // Bernoulli corrections with pochhammer pair recurrence
        BigReal poch = sw;        // (s)_1
        BigReal dpoch = one;      // d/ds (s)_1
        BigReal Minv2 = one / (Mx * Mx);
        BigReal mpow = p0 / Mx;   // (M+x)^{-s-1}
        bool converged = false;
        BigReal prev_mag;
        bool have_prev = false;
        for (unsigned long k = 1; k <= 512; ++k) {
            BigReal c = to_bigreal(bernoulli_number(2 * k) / Rational(factorial(2 * k)), work);
            BigReal term = c * poch * mpow;
            val += term;
            BigReal mag = abs(term);
            if (want_deriv) {
                BigReal dterm = c * (dpoch * mpow - poch * lMx * mpow);
                der += dterm;
                BigReal dm = abs(dterm);
                if (dm > mag) mag = dm;
            }
            if (mag <= tol) {
                val.bump_err_ulps(1);
                val.set_err(val.err() + mag);
                if (want_deriv) der.set_err(der.err() + mag);
                converged = true;
                break;
            }
            if (have_prev && mag > prev_mag) break;  // asymptotic stall: raise M
            prev_mag = mag;
            have_prev = true;
            // advance pochhammer: multiply by (s+2k-1)(s+2k)
            for (int step = 0; step < 2; ++step) {
                BigReal f = sw + BigReal::from_long(2 * static_cast<long>(k) - 1 + step, work);
                dpoch = dpoch * f + poch;
                poch = poch * f;
            }
            mpow *= Minv2;
        }
        if (!converged) continue;

        // round down to caller precision
        BigReal out_v = BigReal::zero(ctx);
        mpfr_set(out_v.raw_mut(), val.raw(), MPFR_RNDN);
        out_v.bump_err_ulps(16);
        ZetaEM out{out_v, BigReal::zero(ctx)};
        if (want_deriv) {
            mpfr_set(out.deriv.raw_mut(), der.raw(), MPFR_RNDN);
            out.deriv.bump_err_ulps(16);
        }
        return out;
    }
    throw ConvergenceError("zeta: Euler-Maclaurin corrections did not reach tolerance");
}

}  // namespace

BigReal hurwitz_zeta(const BigReal& x, const BigReal& s, const PrecisionContext& ctx) {
    if (x.sign() <= 0) throw DomainError("hurwitz_zeta: x must be positive");
    return zeta_em(x, s, false, ctx).value;
}

std::pair<BigReal, BigReal> zeta_and_derivative(const BigReal& s, const PrecisionContext& ctx) {
    PrecisionContext c = ctx;
    BigReal one = BigReal::from_long(1, c);
    ZetaEM r = zeta_em(one, s, true, ctx);
    return {r.value, r.deriv};
}

BigReal riemann_zeta(const BigReal& s, const PrecisionContext& ctx) {
    BigReal one = BigReal::from_long(1, ctx);
    return zeta_em(one, s, false, ctx).value;
}

// ---------------------------------------------------------------------------
// Ei / polylog
// ---------------------------------------------------------------------------

BigReal ei_entire_series(const BigReal& z, const PrecisionContext& ctx) {
    PrecisionContext work(ctx.bits + 32, ctx.target_tol_log10);
    BigReal zz = BigReal::zero(work);
    mpfr_set(zz.raw_mut(), z.raw(), MPFR_RNDN);
    BigReal acc = BigReal::zero(work);
    BigReal p = BigReal::from_long(1, work);  // z^n / n! running
    BigReal tol;
    {
        PrecisionContext c(work.bits, ctx.target_tol_log10);
        tol = c.target_tol() * BigReal::from_double(1e-8, work);
    }
    BigReal trunc = BigReal::zero(work);
    for (unsigned long n = 1; n < 10000; ++n) {
        p = p * zz / BigReal::from_long(static_cast<long>(n), work);
        BigReal term = p / BigReal::from_long(static_cast<long>(n), work);
        if (n % 2 == 1)
            acc -= term;
        else
            acc += term;
        if (n > 4 && abs(term) < tol) {
            trunc = abs(term) * BigReal::from_long(2, work);
            break;
        }
    }
    BigReal out = BigReal::zero(ctx);
    mpfr_set(out.raw_mut(), acc.raw(), MPFR_RNDN);
    BigReal e = BigReal::zero(ctx);
    mpfr_set(e.raw_mut(), (acc.err() + trunc).raw(), MPFR_RNDU);
    out.set_err(e);
    out.bump_err_ulps(8);
    return out;
}

BigReal ei_negative(const BigReal& z, const PrecisionContext& ctx) {
    if (z.sign() <= 0) throw DomainError("ei_negative: z must be positive");
    if (z <= BigReal::from_long(2, ctx)) {
        return euler_gamma(ctx) + log(z, ctx) + ei_entire_series(z, ctx);
    }
    // -int_z^inf e^{-u}/u du: panels to A then geometric tail bound
    PrecisionContext work(ctx.bits + 32, ctx.target_tol_log10);
    int digits = work.decimal_digits();
    BigReal A = z + BigReal::from_double(2.303 * digits + 16, work);
    RealFn f = [&work](const BigReal& u) {
        return exp(-u, work) / u;
    };
    BigReal tol;
    {
        PrecisionContext c(work.bits, ctx.target_tol_log10);
        tol = c.target_tol() * BigReal::from_double(1e-6, work);
    }
    BigReal zw = BigReal::zero(work);
    mpfr_set(zw.raw_mut(), z.raw(), MPFR_RNDN);
    auto q = integrate_panels(f, zw, A, work, tol, 8, 48);
    BigReal tail = exp(-A, work) / A;  // < int_A^inf e^-u/u du bound scale
    BigReal out = BigReal::zero(ctx);
    mpfr_set(out.raw_mut(), (-q.value).raw(), MPFR_RNDN);
    BigReal e = q.err + tail;
    BigReal eo = BigReal::zero(ctx);
    mpfr_set(eo.raw_mut(), e.raw(), MPFR_RNDU);
    out.set_err(eo);
    out.bump_err_ulps(8);
    return out;
}

BigReal zeta_with_gamma_convention(unsigned long j, const PrecisionContext& ctx) {
    if (j == 1) return euler_gamma(ctx);
    return riemann_zeta(BigReal::from_long(static_cast<long>(j), ctx), ctx);
}

// Bernoulli/log expansion of Li_j(e^{-z}):
// Li_j = sum_{i=0}^{j-2} zeta(j-i) (-z)^i / i!
//      + (-1)^j z^{j-1}/(j-1)! (log z - H_{j-1})
//      + (-1)^j sum_{n>=1} B_n/n * z^{n+j-1} / ((n+1)...(n+j-1) n!)
BigReal polylog_bernoulli_expansion(unsigned long j, const BigReal& z,
                                    const PrecisionContext& ctx) {
    PrecisionContext work(ctx.bits + 32, ctx.target_tol_log10);
    BigReal zz = BigReal::zero(work);
    mpfr_set(zz.raw_mut(), z.raw(), MPFR_RNDN);
    BigReal acc = BigReal::zero(work);
    BigReal p = BigReal::from_long(1, work);
    for (unsigned long i = 0; i + 2 <= j; ++i) {
        BigReal zi = riemann_zeta(BigReal::from_long(static_cast<long>(j - i), work), work);
        acc += zi * p / to_bigreal(Rational(factorial(i)), work);
        p = p * (-zz);
    }
    BigReal zj1 = pow_si(zz, static_cast<long>(j - 1), work) /
                  to_bigreal(Rational(factorial(j - 1)), work);
    BigReal logH = log(zz, work) - to_bigreal(harmonic_number(j - 1, 1), work);
    BigReal signj = BigReal::from_long(j % 2 == 0 ? 1 : -1, work);
    acc += signj * zj1 * logH;
    BigReal tol;
    {
        PrecisionContext c(work.bits, ctx.target_tol_log10);
        tol = c.target_tol() * BigReal::from_double(1e-6, work);
    }
    BigReal tail = BigReal::zero(work);
    BigReal zp = pow_si(zz, static_cast<long>(j), work);  // z^{n+j-1} at n=1
    for (unsigned long n = 1; n < 2000; ++n) {
        Rational c = bernoulli_number(n) / Rational(n) / Rational(factorial(n));
        for (unsigned long i = 1; i < j; ++i) c /= Rational(n + i);
        if (c != 0) {
            BigReal term = to_bigreal(c, work) * zp;
            tail += term;
            if (n > 3 && abs(term) < tol) {
                tail.set_err(tail.err() + abs(term) * BigReal::from_long(2, work));
                break;
            }
        } else if (n > 3) {
            // odd Bernoulli vanish; check neighbour scale before stopping
            BigReal probe = zp / to_bigreal(Rational(factorial(n)), work);
            if (abs(probe) < tol) break;
        }
        zp *= zz;
    }
    acc += signj * tail;
    BigReal out = BigReal::zero(ctx);
    mpfr_set(out.raw_mut(), acc.raw(), MPFR_RNDN);
    out.bump_err_ulps(16);
    return out;
}

BigReal polylog(unsigned long j, const BigReal& z, const PrecisionContext& ctx) {
    if (j < 1) throw DomainError("polylog: j must be >= 1");
    if (z.sign() <= 0) throw DomainError("polylog: z must be positive");
    if (z >= pi(ctx)) throw DomainError("polylog: z must be < pi");
    PrecisionContext work(ctx.bits + 32, ctx.target_tol_log10);
    BigReal zz = BigReal::zero(work);
    mpfr_set(zz.raw_mut(), z.raw(), MPFR_RNDN);
    BigReal q = exp(-zz, work);
    BigReal tol;
    {
        PrecisionContext c(work.bits, ctx.target_tol_log10);
        tol = c.target_tol() * BigReal::from_double(1e-4, work);
    }
    BigReal acc = BigReal::zero(work);
    BigReal qn = BigReal::from_long(1, work);
    BigReal gtail = BigReal::from_long(1, work) / (BigReal::from_long(1, work) - q);
    BigReal trunc = BigReal::zero(work);
    for (unsigned long n = 1; n < 200000; ++n) {
        qn *= q;
        BigReal term = qn / pow_si(BigReal::from_long(static_cast<long>(n), work),
                                   static_cast<long>(j), work);
        acc += term;
        if (term * gtail < tol) {
            trunc = term * gtail;
            break;
        }
    }
    BigReal out = BigReal::zero(ctx);
    mpfr_set(out.raw_mut(), acc.raw(), MPFR_RNDN);
    BigReal e0 = BigReal::zero(ctx);
    mpfr_set(e0.raw_mut(), (acc.err() + trunc).raw(), MPFR_RNDU);
    out.set_err(e0);
    out.bump_err_ulps(16);
    if (z < BigReal::from_double(0.5, ctx)) {
        BigReal alt = polylog_bernoulli_expansion(j, z, ctx);
        BigReal d = abs(out - alt);
        BigReal lim = ctx.target_tol() + out.err() + alt.err();
        if (d > lim)
            throw InternalConsistencyError("polylog: series and Bernoulli expansion disagree");
    }
    return out;
}

}  // namespace ramasum
