#include "ramasum/ramanujan.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "ramasum/formal_series.hpp"
#include "ramasum/quadrature.hpp"
#include "ramasum/special_functions.hpp"

namespace ramasum {

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::ClosedForm: return "ClosedForm";
        case Strategy::ShadowCGT: return "ShadowCGT";
        case Strategy::EulerMaclaurin: return "EulerMaclaurin";
        case Strategy::TaylorCoefficient: return "TaylorCoefficient";
    }
    return "?";
}

void EulerMaclaurinConfig::validate() const {
    if (correction_order % 2 != 0 || correction_order < 2 || correction_order > 64)
        throw DomainError("EulerMaclaurinConfig: N must be even in [2, 64]");
    if (start_index < 2) throw DomainError("EulerMaclaurinConfig: M must be >= 2");
}

namespace {

PrecisionContext work_ctx(const PrecisionContext& ctx, long guard = 64) {
    return PrecisionContext(ctx.bits + guard, ctx.target_tol_log10);
}

BigReal round_to(const BigReal& v, const PrecisionContext& ctx, const BigReal& extra_err) {
    BigReal out = BigReal::zero(ctx);
    mpfr_set(out.raw_mut(), v.raw(), MPFR_RNDN);
    BigReal e = BigReal::zero(ctx);
    mpfr_t tmp;
    mpfr_init2(tmp, 96);
    mpfr_add(tmp, v.err_raw(), extra_err.raw(), MPFR_RNDU);
    mpfr_set(e.raw_mut(), tmp, MPFR_RNDU);
    mpfr_clear(tmp);
    out.set_err(e);
    out.bump_err_ulps(4);
    return out;
}

// exact rational from the binary value of a BigReal
Rational to_rational_exact(const BigReal& x) {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), x.raw());
    q.canonicalize();
    return q;
}

// --------------------------------------------------------------------------
// cached zeta'(-k) / A_k
// --------------------------------------------------------------------------

std::mutex g_cache_mutex;
std::map<std::pair<long, mpfr_prec_t>, BigReal> g_zeta_prime_cache;
std::map<std::pair<long, mpfr_prec_t>, BigReal> g_ak_cache;

}  // namespace

BigReal zeta_prime_neg(long k, const PrecisionContext& ctx) {
    if (k < 0) throw DomainError("zeta_prime_neg: k must be >= 0");
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_zeta_prime_cache.find({k, ctx.bits});
        if (it != g_zeta_prime_cache.end()) return it->second;
    }
    BigReal v = zeta_and_derivative(BigReal::from_long(-k, ctx), ctx).second;
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_zeta_prime_cache.emplace(std::make_pair(k, ctx.bits), v);
    return v;
}

BigReal sumR_nk_logn(long k, const PrecisionContext& ctx) {
    BigReal inv = to_bigreal(Rational(1) / Rational((k + 1) * (k + 1)), ctx);
    return -zeta_prime_neg(k, ctx) - inv;
}

BigReal sumR_nk_Hn(long k, const PrecisionContext& ctx) {
    if (k < 0) throw DomainError("sumR_nk_Hn: k must be >= 0");
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_ak_cache.find({k, ctx.bits});
        if (it != g_ak_cache.end()) return it->second;
    }
    Rational gcoef =
        (Rational(1) - bernoulli_number(static_cast<unsigned long>(k) + 1)) / Rational(k + 1);
    BigReal v = euler_gamma(ctx) * to_bigreal(gcoef, ctx) -
                log(BigReal::from_long(2, ctx) * pi(ctx), ctx) /
                    BigReal::from_long(2, ctx) +
                to_bigreal(corollary_rho(k), ctx);
    for (long m = 1; m <= k; ++m) {
        BigReal c = to_bigreal(Rational(binomial(static_cast<unsigned long>(k),
                                                 static_cast<unsigned long>(m))) *
                                   Rational(m % 2 == 0 ? 1 : -1),
                               ctx);
        v += c * zeta_prime_neg(m, ctx);
    }
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_ak_cache.emplace(std::make_pair(k, ctx.bits), v);
    return v;
}

// --------------------------------------------------------------------------
// quadrature building blocks
// --------------------------------------------------------------------------

BigReal psi_exp_integral01(const BigReal& z, const PrecisionContext& ctx) {
    PrecisionContext work = work_ctx(ctx, 32);
    BigReal zw = BigReal::zero(work);
    mpfr_set(zw.raw_mut(), z.raw(), MPFR_RNDN);
    RealFn f = [&](const BigReal& x) {
        return polygamma(0, x + BigReal::from_long(1, work), work) * exp(-(x * zw), work);
    };
    BigReal tol = PrecisionContext(work.bits, ctx.target_tol_log10).target_tol() *
                  BigReal::from_double(1e-4, work);
    auto q = integrate_panels(f, BigReal::zero(work), BigReal::from_long(1, work), work, tol, 4);
    return round_to(q.value, ctx, q.err);
}

BigReal int01_x_pow_psi(const BigReal& s, const PrecisionContext& ctx) {
    PrecisionContext work = work_ctx(ctx, 32);
    BigReal sw = BigReal::zero(work);
    mpfr_set(sw.raw_mut(), s.raw(), MPFR_RNDN);
    RealFn f = [&](const BigReal& x) {
        return pow(x, -sw, work) * digamma1p_plus_gamma(x, work);
    };
    BigReal tol = PrecisionContext(work.bits, ctx.target_tol_log10).target_tol() *
                  BigReal::from_double(1e-4, work);
    auto q = integrate_graded_left(f, BigReal::zero(work), BigReal::from_long(1, work), work, tol);
    return round_to(q.value, ctx, q.err);
}

BigReal psi_tail_integral(const BigReal& s, const BigReal& A, const PrecisionContext& ctx) {
    if (s <= BigReal::from_long(1, ctx))
        throw DomainError("psi_tail_integral: requires s > 1");
    PrecisionContext work = work_ctx(ctx, 32);
    BigReal sw = BigReal::zero(work), Aw = BigReal::zero(work);
    mpfr_set(sw.raw_mut(), s.raw(), MPFR_RNDN);
    mpfr_set(Aw.raw_mut(), A.raw(), MPFR_RNDN);
    BigReal one = BigReal::from_long(1, work);
    BigReal sm1 = sw - one;
    BigReal lA = log(Aw, work);
    BigReal g = euler_gamma(work);
    // int_A^inf x^{-s}(log x + gamma) dx + 1/2 int x^{-s-1} - sum B_2k/2k int x^{-s-2k}
    BigReal A1ms = pow(Aw, one - sw, work);
    BigReal acc = A1ms * (lA / sm1 + one / (sm1 * sm1) + g / sm1);
    acc += pow(Aw, -sw, work) / (BigReal::from_long(2, work) * sw);
    BigReal tol = PrecisionContext(work.bits, ctx.target_tol_log10).target_tol() *
                  BigReal::from_double(1e-4, work);
    BigReal Apow = A1ms / (Aw * Aw);  // A^{-s-1}
    BigReal err = BigReal::zero(work);
    bool converged = false;
    for (unsigned long kk = 1; kk <= 400; ++kk) {
        BigReal c = to_bigreal(bernoulli_number(2 * kk) / Rational(2 * kk), work);
        BigReal term = c * Apow / (sw + BigReal::from_long(2 * (long)kk - 1, work));
        acc -= term;
        if (abs(term) < tol) {
            err = abs(term) * BigReal::from_long(2, work);
            converged = true;
            break;
        }
        Apow = Apow / (Aw * Aw);
    }
    if (!converged)
        throw ConvergenceError("psi_tail_integral: asymptotic series stalled; raise A");
    return round_to(acc, ctx, err);
}

BigReal laplace_psi1p(const BigReal& z, const PrecisionContext& ctx) {
    PrecisionContext work = work_ctx(ctx, 32);
    LaplaceConfig cfg;
    cfg.tail_bound_model = GrowthModel::logarithmic(2.0);
    RealFn f = [&work](const BigReal& x) {
        return polygamma(0, x + BigReal::from_long(1, work), work);
    };
    BigReal zw = BigReal::zero(work);
    mpfr_set(zw.raw_mut(), z.raw(), MPFR_RNDN);
    BigReal v = laplace_transform(f, zw, cfg, PrecisionContext(work.bits, ctx.target_tol_log10));
    return round_to(v, ctx, v.err());
}

BigReal laplace_inv1p(const BigReal& z, const PrecisionContext& ctx) {
    PrecisionContext work = work_ctx(ctx, 32);
    LaplaceConfig cfg;
    RealFn f = [&work](const BigReal& x) {
        return BigReal::from_long(1, work) / (x + BigReal::from_long(1, work));
    };
    BigReal zw = BigReal::zero(work);
    mpfr_set(zw.raw_mut(), z.raw(), MPFR_RNDN);
    BigReal v = laplace_transform(f, zw, cfg, PrecisionContext(work.bits, ctx.target_tol_log10));
    return round_to(v, ctx, v.err());
}

// --------------------------------------------------------------------------
// Euler-Maclaurin engine
// --------------------------------------------------------------------------

namespace {

struct EmRun {
    BigReal value;
    BigReal err;
    long tail_units;
};

// R(1) = sum_{k<M} f(k) - int_1^M f - sum_{k<=N} B_k/k! f^{(k-1)}(M)
//      + (-1)^{N+1} int_M^inf f^{(N)}(t) b_N(t)/N! dt
EmRun em_single(const std::vector<SeriesExpr>& derivs, const std::optional<BigReal>& z, long M,
                unsigned N, const PrecisionContext& work, const BigReal& tail_tol,
                std::map<std::string, std::string>* diag) {
    const SeriesExpr& f = derivs[0];
    BigReal S = BigReal::zero(work);
    for (long k = 1; k < M; ++k)
        S += evaluate(f, BigReal::from_long(k, work), z, work);

    RealFn fv = [&](const BigReal& x) { return evaluate(f, x, z, work); };
    auto I = integrate_panels(fv, BigReal::from_long(1, work), BigReal::from_long(M, work), work,
                              tail_tol, static_cast<unsigned>(std::min<long>(M - 1, 64)));

    BigReal corr = BigReal::zero(work);
    BigReal Mb = BigReal::from_long(M, work);
    BigReal prev_mag;
    bool have_prev = false, stalled = false;
    for (unsigned k = 1; k <= N; ++k) {
        BigReal c = to_bigreal(bernoulli_number(k) / Rational(factorial(k)), work);
        if (k > 1 && k % 2 == 1) continue;  // odd Bernoulli vanish
        BigReal term = c * evaluate(derivs[k - 1], Mb, z, work);
        corr += term;
        BigReal mag = abs(term);
        if (have_prev && mag > prev_mag) stalled = true;
        prev_mag = mag;
        have_prev = true;
    }
    if (diag && stalled) (*diag)["correction_stall"] = "1";

    const SeriesExpr& fN = derivs[N];
    BigReal Nfact = to_bigreal(Rational(factorial(N)), work);
    RealFn tail_f = [&](const BigReal& t) {
        return evaluate(fN, t, z, work) * periodic_bernoulli(N, t, work) / Nfact;
    };
    auto T = integrate_unit_intervals(tail_f, Mb, work, tail_tol, 32);
    {
        // classical bound |b_N| <= 2 N! zeta(N)/(2 pi)^N on the unreached rest
        BigReal mstar = Mb + BigReal::from_long(T.evaluations / 32, work);
        BigReal bscale = BigReal::from_long(2, work) * riemann_zeta_int(N, work) /
                         pow_si(BigReal::from_long(2, work) * pi(work), N, work);
        T.err += bscale * abs(evaluate(derivs[N - 1], mstar, z, work));
    }

    BigReal R = -I.value - corr;
    if (N % 2 == 0)
        R -= T.value;  // (-1)^{N+1} = -1 for even N
    else
        R += T.value;
    EmRun out{S + R, I.err + T.err, T.evaluations / 32};
    return out;
}

}  // namespace

RamanujanResult sum_via_euler_maclaurin(const SeriesExpr& expr, const std::optional<BigReal>& z,
                                        const EulerMaclaurinConfig& config,
                                        const PrecisionContext& ctx) {
    config.validate();
    PrecisionContext work = work_ctx(ctx);
    auto growth = classify_growth(expr, z, work);
    if (growth.kind == GrowthClass::Kind::ExponentialGrowing)
        throw ConvergenceError(
            "sum_via_euler_maclaurin: remainder integral diverges for growing terms");

    std::optional<BigReal> zw;
    if (z) {
        BigReal t = BigReal::zero(work);
        mpfr_set(t.raw_mut(), z->raw(), MPFR_RNDN);
        zw = t;
    }

    unsigned N = config.correction_order;
    std::vector<SeriesExpr> derivs;
    derivs.push_back(canonical(expr));
    for (unsigned k = 1; k <= N; ++k) derivs.push_back(differentiate(derivs.back()));

    BigReal tail_tol =
        config.tail_tol_log10 != 0.0
            ? pow(BigReal::from_long(10, work), BigReal::from_double(config.tail_tol_log10, work),
                  work)
            : PrecisionContext(work.bits, ctx.target_tol_log10).target_tol() *
                  BigReal::from_double(0.1, work);

    RamanujanResult res{BigReal::zero(ctx), BigReal::zero(ctx), Strategy::EulerMaclaurin, {}};
    res.diagnostics["N"] = std::to_string(N);

    long M = std::max<long>(config.start_index, 2);
    EmRun prev = em_single(derivs, zw, M, N, work, tail_tol, &res.diagnostics);
    for (; M <= (1 << 14); ) {
        long M2 = 2 * M;
        EmRun next = em_single(derivs, zw, M2, N, work, tail_tol, &res.diagnostics);
        BigReal delta = abs(next.value - prev.value);
        if (delta <= tail_tol * BigReal::from_long(16, work)) {
            res.diagnostics["M"] = std::to_string(M2);
            res.diagnostics["tail_units"] = std::to_string(next.tail_units);
            res.diagnostics["m_doubling_delta"] = delta.to_string(3);
            res.value = round_to(next.value, ctx, next.err + delta);
            res.error_estimate = res.value.err();
            return res;
        }
        prev = next;
        M = M2;
    }
    throw ConvergenceError("sum_via_euler_maclaurin: estimates not stabilizing under M doubling");
}

BigReal em_tail_sum(const SeriesExpr& expr, long M, const std::optional<BigReal>& z,
                    const PrecisionContext& ctx) {
    PrecisionContext work = work_ctx(ctx);
    std::optional<BigReal> zw;
    if (z) {
        BigReal t = BigReal::zero(work);
        mpfr_set(t.raw_mut(), z->raw(), MPFR_RNDN);
        zw = t;
    }
    const unsigned N = 16;
    std::vector<SeriesExpr> derivs;
    derivs.push_back(canonical(expr));
    for (unsigned k = 1; k <= N; ++k) derivs.push_back(differentiate(derivs.back()));

    BigReal tol = PrecisionContext(work.bits, ctx.target_tol_log10).target_tol() *
                  BigReal::from_double(0.05, work);
    BigReal Mb = BigReal::from_long(M, work);
    // int_M^inf f via x -> 1/u, graded toward u = 0
    RealFn sub = [&](const BigReal& u) {
        BigReal x = BigReal::from_long(1, work) / u;
        return evaluate(derivs[0], x, zw, work) * x * x;
    };
    auto I = integrate_graded_left(sub, BigReal::zero(work), BigReal::from_long(1, work) / Mb,
                                   work, tol);

    BigReal corr = BigReal::zero(work);
    for (unsigned k = 1; k <= N; ++k) {
        if (k > 1 && k % 2 == 1) continue;
        BigReal c = to_bigreal(bernoulli_number(k) / Rational(factorial(k)), work);
        corr += c * evaluate(derivs[k - 1], Mb, zw, work);
    }
    BigReal Nfact = to_bigreal(Rational(factorial(N)), work);
    RealFn tail_f = [&](const BigReal& t) {
        return evaluate(derivs[N], t, zw, work) * periodic_bernoulli(N, t, work) / Nfact;
    };
    auto T = integrate_unit_intervals(tail_f, Mb, work, tol, 32);
    {
        BigReal mstar = Mb + BigReal::from_long(T.evaluations / 32, work);
        BigReal bscale = BigReal::from_long(2, work) * riemann_zeta_int(N, work) /
                         pow_si(BigReal::from_long(2, work) * pi(work), N, work);
        T.err += bscale * abs(evaluate(derivs[N - 1], mstar, zw, work));
    }
    BigReal v = I.value - corr - T.value;  // (-1)^{N+1} = -1 at N = 16
    return round_to(v, ctx, I.err + T.err);
}

// --------------------------------------------------------------------------
// catalog
// --------------------------------------------------------------------------

namespace {

std::mutex g_series_mutex;
std::map<long, FormalSeries> g_lemma1_series;   // K -> S1+S2* series
std::map<long, FormalSeries> g_theorem1_series;

FormalSeries lemma1_series(long K) {
    std::lock_guard<std::mutex> lock(g_series_mutex);
    auto it = g_lemma1_series.find(K);
    if (it == g_lemma1_series.end())
        it = g_lemma1_series.emplace(K, formal_series(SeriesKind::Lemma1QPart, K)).first;
    return it->second;
}

long series_order_for(const BigReal& z, const PrecisionContext& ctx) {
    double zd = std::abs(z.to_double());
    if (zd < 1e-30) return 8;
    double digits = -ctx.target_tol_log10 + 6;
    double ratio = std::log(2 * M_PI / zd);
    if (ratio < 0.15) ratio = 0.15;
    long K = static_cast<long>(digits * 2.302585 / ratio) + 16;
    return std::min<long>(K, 640);
}

BigReal check_z_domain(const BigReal& z, const PrecisionContext& ctx, bool nonzero = true) {
    if (abs(z) >= pi(ctx)) throw DomainError("catalog: |z| must be < pi");
    if (nonzero && z.is_zero()) throw DomainError("catalog: z must be nonzero");
    return z;
}

}  // namespace

RamanujanResult catalog_sum(const CatalogKey& key, const PrecisionContext& ctx) {
    PrecisionContext work = work_ctx(ctx, 32);
    RamanujanResult res{BigReal::zero(ctx), BigReal::zero(ctx), Strategy::ClosedForm, {}};
    BigReal one = BigReal::from_long(1, work);
    auto finish = [&](const BigReal& v, const char* name) {
        res.value = round_to(v, ctx, BigReal::zero(work));
        res.error_estimate = res.value.err();
        res.diagnostics["catalog"] = name;
        return res;
    };
    switch (key.kind) {
        case CatalogKey::Kind::PowerTerm: {
            BigReal s = BigReal::zero(work);
            mpfr_set(s.raw_mut(), key.param.raw(), MPFR_RNDN);
            if (mpfr_cmp_ui(s.raw(), 1) == 0)
                return finish(euler_gamma(work), "PowerTerm(s=1)->gamma");
            BigReal v = riemann_zeta(s, work) - one / (s - one);
            return finish(v, "PowerTerm");
        }
        case CatalogKey::Kind::LogOverPower: {
            BigReal s = BigReal::zero(work);
            mpfr_set(s.raw_mut(), key.param.raw(), MPFR_RNDN);
            if (mpfr_cmp_ui(s.raw(), 1) == 0)
                throw DomainError("catalog: log n / n has no closed form here (s = 1)");
            auto [zs, zps] = zeta_and_derivative(s, work);
            BigReal v = -zps - one / ((s - one) * (s - one));
            return finish(v, "LogOverPower");
        }
        case CatalogKey::Kind::ExpTerm: {
            BigReal z = BigReal::zero(work);
            mpfr_set(z.raw_mut(), key.param.raw(), MPFR_RNDN);
            check_z_domain(z, work, false);
            if (z.is_zero()) return finish(BigReal::from_double(0.5, work), "ExpTerm(z=0)");
            BigReal ez = exp(z, work);
            return finish(ez / (one - ez) + ez / z, "ExpTerm");
        }
        case CatalogKey::Kind::ExpOverN: {
            BigReal z = BigReal::zero(work);
            mpfr_set(z.raw_mut(), key.param.raw(), MPFR_RNDN);
            check_z_domain(z, work, false);
            if (z.is_zero()) return finish(euler_gamma(work), "ExpOverN(z=0)->gamma");
            BigReal v = log(z / (one - exp(-z, work)), work) + euler_gamma(work) +
                        ei_entire_series(z, work);
            return finish(v, "ExpOverN");
        }
        case CatalogKey::Kind::ExpHarmonic: {
            BigReal z = BigReal::zero(work);
            mpfr_set(z.raw_mut(), key.param.raw(), MPFR_RNDN);
            check_z_domain(z, work);
            BigReal em1 = one / (one - exp(-z, work));
            BigReal I01 = psi_exp_integral01(z, work);
            BigReal v = em1 * log(z * em1, work) + em1 * ei_entire_series(z, work) +
                        euler_gamma(work) * (em1 - exp(-z, work) / z) -
                        I01 / (exp(z, work) - one);
            res.value = round_to(v, ctx, I01.err());
            res.error_estimate = res.value.err();
            res.diagnostics["catalog"] = "ExpHarmonic";
            return res;
        }
        case CatalogKey::Kind::ExpLog: {
            BigReal z = BigReal::zero(work);
            mpfr_set(z.raw_mut(), key.param.raw(), MPFR_RNDN);
            check_z_domain(z, work);
            BigReal I01 = psi_exp_integral01(z, work);
            FormalSeries ser = lemma1_series(series_order_for(z, ctx));
            BigReal s12 = ser.evaluate(z, work);
            BigReal v = I01 / (one - exp(-z, work)) + s12;
            res.value = round_to(v, ctx, I01.err() + s12.err());
            res.error_estimate = res.value.err();
            res.diagnostics["catalog"] = "ExpLog";
            return res;
        }
        case CatalogKey::Kind::ExpHarmonicJ: {
            BigReal z = BigReal::zero(work);
            mpfr_set(z.raw_mut(), key.param.raw(), MPFR_RNDN);
            if (z.sign() <= 0)
                throw DomainError("catalog: ExpHarmonicJ needs 0 < z < pi");
            check_z_domain(z, work);
            long j = key.j;
            if (j < 1) throw DomainError("catalog: ExpHarmonicJ needs j >= 1");
            if (j == 1) return catalog_sum(CatalogKey::exp_harmonic(key.param), ctx);
            BigReal emz = exp(-z, work);
            BigReal li = polylog(static_cast<unsigned long>(j), z, work);
            BigReal v = li / (one - emz) -
                        emz / z * riemann_zeta(BigReal::from_long(j, work), work);
            for (long m = 1; m <= j - 1; ++m) {
                Rational c = Rational(factorial(static_cast<unsigned long>(j - m - 1))) /
                             Rational(factorial(static_cast<unsigned long>(j - 1)));
                if (m % 2 == 0) c = -c;
                BigReal zjm = zeta_with_gamma_convention(static_cast<unsigned long>(j - m), work);
                v += emz * pow_si(z, m - 1, work) * to_bigreal(c, work) * (zjm - one);
            }
            BigReal Lsum = laplace_psi1p(z, work) + laplace_inv1p(z, work);
            Rational sgn(j % 2 == 0 ? 1 : -1);
            v += to_bigreal(sgn / Rational(factorial(static_cast<unsigned long>(j - 1))), work) *
                 pow_si(z, j - 1, work) * emz * Lsum;
            res.value = round_to(v, ctx, Lsum.err());
            res.error_estimate = res.value.err();
            res.diagnostics["catalog"] = "ExpHarmonicJ";
            return res;
        }
        case CatalogKey::Kind::MonomialTimesHarmonic: {
            BigReal v = sumR_nk_Hn(key.k, work);
            return finish(v, "MonomialTimesHarmonic");
        }
    }
    throw Error("catalog_sum: unreachable");
}

BigReal catalog_R_function(const CatalogKey& key, const BigReal& x, const PrecisionContext& ctx) {
    if (x.sign() <= 0) throw DomainError("catalog_R_function: x must be positive");
    PrecisionContext work = work_ctx(ctx, 32);
    BigReal xw = BigReal::zero(work);
    mpfr_set(xw.raw_mut(), x.raw(), MPFR_RNDN);
    BigReal one = BigReal::from_long(1, work);
    switch (key.kind) {
        case CatalogKey::Kind::PowerTerm: {
            BigReal s = BigReal::zero(work);
            mpfr_set(s.raw_mut(), key.param.raw(), MPFR_RNDN);
            if (mpfr_cmp_ui(s.raw(), 1) == 0) {
                BigReal v = -polygamma(0, xw, work);
                return round_to(v, ctx, BigReal::zero(work));
            }
            BigReal v = hurwitz_zeta(xw, s, work) - one / (s - one);
            return round_to(v, ctx, BigReal::zero(work));
        }
        case CatalogKey::Kind::ExpTerm: {
            BigReal z = BigReal::zero(work);
            mpfr_set(z.raw_mut(), key.param.raw(), MPFR_RNDN);
            check_z_domain(z, work);
            BigReal ez = exp(z, work);
            BigReal v = exp(xw * z, work) / (one - ez) + ez / z;
            return round_to(v, ctx, BigReal::zero(work));
        }
        default:
            throw DomainError("catalog_R_function: only PowerTerm and ExpTerm have R functions");
    }
}

// --------------------------------------------------------------------------
// shadow (convergent) strategy
// --------------------------------------------------------------------------

RamanujanResult sum_via_cgt(const SeriesExpr& expr, const std::optional<BigReal>& z,
                            const PrecisionContext& ctx) {
    PrecisionContext work = work_ctx(ctx);
    auto growth = classify_growth(expr, z, work);
    if (growth.kind != GrowthClass::Kind::ConvergentDecaying)
        throw ConvergenceError("sum_via_cgt: series must be convergent and decaying");

    std::optional<BigReal> zw;
    if (z) {
        BigReal t = BigReal::zero(work);
        mpfr_set(t.raw_mut(), z->raw(), MPFR_RNDN);
        zw = t;
    }
    SeriesExpr f = canonical(expr);
    BigReal tol = PrecisionContext(work.bits, ctx.target_tol_log10).target_tol() *
                  BigReal::from_double(0.05, work);
    RamanujanResult res{BigReal::zero(ctx), BigReal::zero(ctx), Strategy::ShadowCGT, {}};

    BigReal S = BigReal::zero(work);
    BigReal series_err = BigReal::zero(work);
    bool exp_decay = growth.rate.sign() > 0;
    if (exp_decay) {
        BigReal prev = BigReal::zero(work);
        double worst_ratio = 0.0;
        long n = 1;
        for (;; ++n) {
            if (n > 200000)
                throw ConvergenceError("sum_via_cgt: series tail bound not achieved");
            BigReal t = evaluate(f, BigReal::from_long(n, work), zw, work);
            S += t;
            BigReal at = abs(t);
            if (n > 4 && !prev.is_zero()) {
                double r = (at / prev).to_double();
                worst_ratio = std::max(worst_ratio * 0.7, r);
                if (r < 0.97) {
                    BigReal rb = BigReal::from_double(std::min(0.97, worst_ratio), work);
                    BigReal bound = at * rb / (BigReal::from_long(1, work) - rb);
                    if (bound < tol) {
                        series_err = bound;
                        break;
                    }
                }
            }
            prev = at;
        }
        res.diagnostics["series_terms"] = std::to_string(n);
    } else {
        // power decay: partial sum + Euler-Maclaurin accelerated tail
        const long M = 48;
        for (long n = 1; n < M; ++n)
            S += evaluate(f, BigReal::from_long(n, work), zw, work);
        BigReal tail = em_tail_sum(f, M, zw, work);
        S += tail;
        series_err = tail.err();
        res.diagnostics["series_terms"] = std::to_string(M);
        res.diagnostics["em_tail"] = "1";
    }

    // integral int_1^inf a(x) dx
    BigReal I = BigReal::zero(work);
    BigReal int_err = BigReal::zero(work);
    if (exp_decay) {
        double rate = growth.rate.to_double();
        double A = 1.0 + (2.302585 * (-ctx.target_tol_log10 + 8)) / rate;
        RealFn fv = [&](const BigReal& x) { return evaluate(f, x, zw, work); };
        auto q = integrate_panels(fv, BigReal::from_long(1, work),
                                  BigReal::from_double(A, work), work, tol,
                                  static_cast<unsigned>(std::clamp(A / 2.0, 8.0, 2048.0)));
        // tail beyond A bounded by the last panel scale
        BigReal tail_bound = abs(evaluate(f, BigReal::from_double(A, work), zw, work)) /
                             growth.rate * BigReal::from_long(2, work);
        I = q.value;
        int_err = q.err + tail_bound;
    } else {
        RealFn sub = [&](const BigReal& u) {
            BigReal x = BigReal::from_long(1, work) / u;
            return evaluate(f, x, zw, work) * x * x;
        };
        auto q = integrate_graded_left(sub, BigReal::zero(work), BigReal::from_long(1, work),
                                       work, tol);
        I = q.value;
        int_err = q.err;
    }

    res.value = round_to(S - I, ctx, series_err + int_err);
    res.error_estimate = res.value.err();
    return res;
}

// --------------------------------------------------------------------------
// Taylor-coefficient strategy
// --------------------------------------------------------------------------

namespace {

struct TermShape {
    Rational coeff = Rational(1);
    Rational n_power = Rational(0);
    bool has_log = false;
    long harmonic_j = 0;  // 0 = none
    bool has_exp = false;
    BigReal rate;  // w in exp(w n), numeric
    bool supported = true;
};

// decompose a canonical single-term product over the catalog factor alphabet
TermShape analyze_term(const ExprPtr& term, const std::optional<BigReal>& z,
                       const PrecisionContext& ctx) {
    TermShape sh;
    sh.rate = BigReal::zero(ctx);
    Rational coeff;
    std::vector<ExprPtr> factors;
    if (term->kind == NodeKind::RationalConst) {
        sh.coeff = term->value;
        return sh;
    }
    if (term->kind == NodeKind::Mul) {
        coeff = term->value;
        factors = term->kids;
    } else {
        coeff = 1;
        factors = {term};
    }
    sh.coeff = coeff;
    for (auto& fct : factors) {
        ExprPtr base = fct;
        Rational expo(1);
        if (fct->kind == NodeKind::Pow) {
            base = fct->kids[0];
            expo = fct->kids[1]->value;
        }
        switch (base->kind) {
            case NodeKind::VarN: sh.n_power += expo; break;
            case NodeKind::Log:
                if (expo != 1 || base->kids[0]->kind != NodeKind::VarN || sh.has_log) {
                    sh.supported = false;
                    return sh;
                }
                sh.has_log = true;
                break;
            case NodeKind::Harmonic:
                if (expo != 1 || base->kids[0]->kind != NodeKind::VarN || sh.harmonic_j != 0) {
                    sh.supported = false;
                    return sh;
                }
                sh.harmonic_j = base->order;
                break;
            case NodeKind::Exp: {
                if (expo != 1) {
                    sh.supported = false;
                    return sh;
                }
                try {
                    SeriesExpr arg(base->kids[0]);
                    SeriesExpr d = differentiate(arg);
                    SeriesExpr dd = differentiate(d);
                    // affine in n with zero offset: plain e^{w n}
                    if (!structurally_equal(dd, parse("0"))) {
                        sh.supported = false;
                        return sh;
                    }
                    BigReal w = evaluate(d, BigReal::from_long(1, ctx), z, ctx);
                    BigReal at0 = evaluate(arg, BigReal::zero(ctx), z, ctx);
                    if (!at0.is_zero()) {
                        sh.supported = false;
                        return sh;
                    }
                    sh.has_exp = true;
                    sh.rate += w;
                } catch (const Error&) {
                    sh.supported = false;
                    return sh;
                }
                break;
            }
            default:
                sh.supported = false;
                return sh;
        }
    }
    return sh;
}

BigReal sumR_monomial(long k, const PrecisionContext& ctx) {
    if (k == 0) return BigReal::from_double(0.5, ctx);
    Rational q = (Rational(1) - bernoulli_number(static_cast<unsigned long>(k) + 1)) /
                 Rational(k + 1);
    return to_bigreal(q, ctx);
}

}  // namespace

RamanujanResult sum_via_taylor_coefficients(const SeriesExpr& expr,
                                            const std::optional<BigReal>& z, unsigned K,
                                            const PrecisionContext& ctx) {
    PrecisionContext work = work_ctx(ctx);
    std::optional<BigReal> zw;
    if (z) {
        BigReal t = BigReal::zero(work);
        mpfr_set(t.raw_mut(), z->raw(), MPFR_RNDN);
        zw = t;
    }
    ExprPtr c = canonical(expr).root();
    if (c->kind == NodeKind::Add)
        throw DomainError("sum_via_taylor_coefficients: expects a single product term");
    TermShape sh = analyze_term(c, zw, work);
    if (!sh.supported || !sh.has_exp || sh.n_power.get_den() != 1 || sh.n_power < 0 ||
        (sh.has_log && sh.harmonic_j != 0) || sh.harmonic_j > 1)
        throw DomainError(
            "sum_via_taylor_coefficients: term must be n^k g(n) e^{wn} with g in {1, log n, H_n}");
    BigReal w = sh.rate;
    if (abs(w) >= pi(work))
        throw InadmissibleError("sum_via_taylor_coefficients: |rate| >= pi");
    long kshift = static_cast<long>(sh.n_power.get_num().get_si());

    BigReal tol = PrecisionContext(work.bits, ctx.target_tol_log10).target_tol() *
                  BigReal::from_double(0.25, work);
    unsigned Kmax = K > 0 ? K : 400;
    BigReal acc = BigReal::zero(work);
    BigReal wp = BigReal::from_long(1, work);  // w^i / i!
    BigReal last = BigReal::zero(work);
    int small_streak = 0;
    unsigned i = 0;
    for (; i <= Kmax; ++i) {
        BigReal base;
        long kk = static_cast<long>(i) + kshift;
        if (sh.harmonic_j == 1)
            base = sumR_nk_Hn(kk, work);
        else if (sh.has_log)
            base = sumR_nk_logn(kk, work);
        else
            base = sumR_monomial(kk, work);
        BigReal term = wp * base;
        acc += term;
        last = abs(term);
        if (last < tol) {
            if (++small_streak >= 3 && i > 2) break;
        } else {
            small_streak = 0;
        }
        wp = wp * w / BigReal::from_long(static_cast<long>(i) + 1, work);
    }
    if (K == 0 && i > Kmax)
        throw ConvergenceError("sum_via_taylor_coefficients: truncation did not converge");
    // geometric tail margin at ratio |w|/pi
    BigReal r = abs(w) / pi(work);
    BigReal tail = last * r / (BigReal::from_long(1, work) - r);
    BigReal v = to_bigreal(sh.coeff, work) * acc;
    RamanujanResult res{BigReal::zero(ctx), BigReal::zero(ctx), Strategy::TaylorCoefficient, {}};
    res.value = round_to(v, ctx, tail);
    res.error_estimate = res.value.err();
    res.diagnostics["terms"] = std::to_string(i);
    res.diagnostics["rate"] = w.to_string(6);
    return res;
}

// --------------------------------------------------------------------------
// dispatch
// --------------------------------------------------------------------------

namespace {

std::optional<std::pair<CatalogKey, Rational>> match_catalog(const ExprPtr& term,
                                                             const std::optional<BigReal>& z,
                                                             const PrecisionContext& ctx) {
    TermShape sh = analyze_term(term, z, ctx);
    if (!sh.supported) return std::nullopt;
    Rational c = sh.coeff;
    if (c == 0) return std::nullopt;
    if (!sh.has_exp) {
        if (sh.has_log && sh.harmonic_j == 0) {
            BigReal s = to_bigreal(-sh.n_power, ctx);
            if (mpfr_cmp_ui(s.raw(), 1) == 0) return std::nullopt;
            return std::make_pair(CatalogKey::log_over_power(s), c);
        }
        if (!sh.has_log && sh.harmonic_j == 0)
            return std::make_pair(CatalogKey::power_term(to_bigreal(-sh.n_power, ctx)), c);
        if (!sh.has_log && sh.harmonic_j == 1 && sh.n_power.get_den() == 1 && sh.n_power >= 0)
            return std::make_pair(CatalogKey::monomial_times_harmonic(
                                      static_cast<long>(sh.n_power.get_num().get_si())),
                                  c);
        return std::nullopt;
    }
    BigReal w = sh.rate;
    if (sh.harmonic_j == 0 && !sh.has_log && sh.n_power == 0)
        return std::make_pair(CatalogKey::exp_term(w), c);
    if (sh.harmonic_j == 0 && !sh.has_log && sh.n_power == Rational(-1))
        return std::make_pair(CatalogKey::exp_over_n(-w), c);
    if (sh.harmonic_j == 1 && !sh.has_log && sh.n_power == 0)
        return std::make_pair(CatalogKey::exp_harmonic(-w), c);
    if (sh.harmonic_j >= 2 && !sh.has_log && sh.n_power == 0 && w.sign() < 0)
        return std::make_pair(CatalogKey::exp_harmonic_j(-w, sh.harmonic_j), c);
    if (sh.has_log && sh.harmonic_j == 0 && sh.n_power == 0)
        return std::make_pair(CatalogKey::exp_log(w), c);
    return std::nullopt;
}

RamanujanResult scaled(RamanujanResult r, const Rational& c, const PrecisionContext& ctx) {
    if (c == 1) return r;
    BigReal cc = to_bigreal(c, ctx);
    r.value = r.value * cc;
    r.error_estimate = r.error_estimate * abs(cc);
    r.diagnostics["linear_coefficient"] = c.get_str();
    return r;
}

}  // namespace

RamanujanResult ramanujan_sum(const SeriesExpr& expr, const std::optional<BigReal>& z,
                              const PrecisionContext& ctx) {
    PrecisionContext work = work_ctx(ctx, 32);
    std::optional<BigReal> zw;
    if (z) {
        BigReal t = BigReal::zero(work);
        mpfr_set(t.raw_mut(), z->raw(), MPFR_RNDN);
        zw = t;
    }
    auto growth = classify_growth(expr, zw, work);  // throws when inadmissible
    ExprPtr c = canonical(expr).root();

    // linearity split over top-level sums
    if (c->kind == NodeKind::Add) {
        RamanujanResult total{BigReal::zero(ctx), BigReal::zero(ctx), Strategy::ClosedForm, {}};
        bool first = true;
        for (auto& kid : c->kids) {
            RamanujanResult part = ramanujan_sum(SeriesExpr(kid), z, ctx);
            if (first) {
                total.strategy = part.strategy;
                first = false;
            }
            total.value += part.value;
            total.error_estimate += part.error_estimate;
        }
        total.diagnostics["linear_split"] = std::to_string(c->kids.size());
        return total;
    }

    auto matched = match_catalog(c, zw, work);
    if (matched) {
        RamanujanResult primary = scaled(catalog_sum(matched->first, ctx), matched->second, ctx);
        // cross-check against the shadow formula when the term is convergent
        // (that is the cheap case); disagreements are hard errors
        if (growth.kind == GrowthClass::Kind::ConvergentDecaying) {
            RamanujanResult check = scaled(sum_via_cgt(SeriesExpr(c), zw, ctx), Rational(1), ctx);
            BigReal lim = primary.error_estimate + check.error_estimate +
                          ctx.target_tol() * BigReal::from_long(4, ctx);
            if (abs(primary.value - check.value) > lim)
                throw InternalConsistencyError(
                    "ramanujan_sum: catalog and shadow-formula values disagree");
            primary.diagnostics["cross_check"] = "ShadowCGT";
        }
        return primary;
    }

    switch (growth.kind) {
        case GrowthClass::Kind::ConvergentDecaying:
            return sum_via_cgt(SeriesExpr(c), zw, ctx);
        case GrowthClass::Kind::PolynomialBounded: {
            EulerMaclaurinConfig cfg;
            return sum_via_euler_maclaurin(SeriesExpr(c), zw, cfg, ctx);
        }
        case GrowthClass::Kind::ExponentialGrowing:
            return sum_via_taylor_coefficients(SeriesExpr(c), zw, 0, ctx);
    }
    throw Error("ramanujan_sum: unreachable");
}

RamanujanResult translate_shift(const SeriesExpr& expr, long N, const std::optional<BigReal>& z,
                                const PrecisionContext& ctx) {
    if (N < 0) throw DomainError("translate_shift: N must be >= 0");
    RamanujanResult base = ramanujan_sum(expr, z, ctx);
    if (N == 0) return base;
    PrecisionContext work = work_ctx(ctx, 32);
    std::optional<BigReal> zw;
    if (z) {
        BigReal t = BigReal::zero(work);
        mpfr_set(t.raw_mut(), z->raw(), MPFR_RNDN);
        zw = t;
    }
    SeriesExpr f = canonical(expr);
    BigReal head = BigReal::zero(work);
    for (long k = 1; k <= N; ++k) head += evaluate(f, BigReal::from_long(k, work), zw, work);
    RealFn fv = [&](const BigReal& x) { return evaluate(f, x, zw, work); };
    BigReal tol = PrecisionContext(work.bits, ctx.target_tol_log10).target_tol() *
                  BigReal::from_double(0.1, work);
    auto I = integrate_panels(fv, BigReal::from_long(1, work), BigReal::from_long(N + 1, work),
                              work, tol, static_cast<unsigned>(std::max<long>(N, 4)));
    RamanujanResult res = base;
    res.value = round_to(base.value - head + I.value, ctx, base.error_estimate + I.err);
    res.error_estimate = res.value.err();
    res.diagnostics["translated_by"] = std::to_string(N);
    return res;
}

// --------------------------------------------------------------------------
// Euler sum h(s)
// --------------------------------------------------------------------------

namespace {

SeriesExpr pow_times_harmonic_expr(const Rational& neg_s) {
    // n^{-s} H(n)
    ExprPtr p = make_node(NodeKind::Pow, {make_var_n(), make_rational(neg_s)});
    ExprPtr h = make_node(NodeKind::Harmonic, {make_var_n()}, Rational(0), 1);
    return SeriesExpr(make_node(NodeKind::Mul, {p, h}, Rational(1)));
}

}  // namespace

BigReal euler_sum_h(const BigReal& s, const PrecisionContext& ctx) {
    PrecisionContext work = work_ctx(ctx, 32);
    BigReal sw = BigReal::zero(work);
    mpfr_set(sw.raw_mut(), s.raw(), MPFR_RNDN);
    BigReal one = BigReal::from_long(1, work);
    double sd = sw.to_double();
    if (std::abs(sd - 1.0) < 1e-6) throw PoleError("euler_sum_h: pole at s = 1");
    Rational s_rat = to_rational_exact(sw);

    if (sd > 1.0) {
        // direct sum with Euler-Maclaurin tail
        const long M = 48;
        BigReal S = BigReal::zero(work);
        for (long n = 1; n < M; ++n)
            S += to_bigreal(harmonic_number(static_cast<unsigned long>(n), 1), work) *
                 pow(BigReal::from_long(n, work), -sw, work);
        SeriesExpr f = pow_times_harmonic_expr(-s_rat);
        S += em_tail_sum(f, M, std::nullopt, work);
        return round_to(S, ctx, BigReal::zero(work));
    }

    // continuation: poles of the sin/zeta factors at the integers <= 1
    if (std::abs(sd - std::round(sd)) < 1e-6)
        throw PoleError("euler_sum_h: within 1e-6 of a pole of the continuation factors");
    BigReal pis = pi(work) * sw;
    BigReal cont = -pi(work) / sin(pis, work) * riemann_zeta(sw, work);
    cont -= int01_x_pow_psi(sw, work);
    SeriesExpr f = pow_times_harmonic_expr(-s_rat);
    EulerMaclaurinConfig cfg;
    RamanujanResult r = sum_via_euler_maclaurin(f, std::nullopt, cfg, work);
    cont += r.value;
    return round_to(cont, ctx, r.error_estimate);
}

}  // namespace ramasum
