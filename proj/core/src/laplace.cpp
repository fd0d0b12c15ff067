#include "ramasum/laplace.hpp"

#include <algorithm>
#include <cmath>

#include "ramasum/errors.hpp"

namespace ramasum {

namespace {

// bound for int_A^inf e^{-xz} |f(x)| dx under the declared growth model
BigReal tail_bound(const GrowthModel& gm, const BigReal& A, const BigReal& z,
                   const PrecisionContext& ctx) {
    BigReal K = BigReal::from_double(gm.scale, ctx);
    BigReal eAz = exp(-A * z, ctx);
    switch (gm.kind) {
        case GrowthModel::Kind::Constant:
            return K * eAz / z;
        case GrowthModel::Kind::Log: {
            // |f| <= K (1 + log(1+x)); log(1+x) <= log(1+A) + (x-A)/(1+A)
            BigReal onepA = A + BigReal::from_long(1, ctx);
            BigReal l = log(onepA, ctx);
            return K * eAz * ((BigReal::from_long(1, ctx) + l) / z +
                              BigReal::from_long(1, ctx) / (onepA * z * z));
        }
        case GrowthModel::Kind::Power: {
            // (1+x)^p <= (1+A)^p e^{p (x-A)/(1+A)} for x >= A, p >= 0
            BigReal onepA = A + BigReal::from_long(1, ctx);
            BigReal p = BigReal::from_double(gm.param, ctx);
            BigReal zeff = z - p / onepA;
            if (zeff.sign() <= 0)
                throw TailBoundError("laplace: power-growth tail needs z > p/(1+A)");
            return K * pow(onepA, p, ctx) * eAz / zeff;
        }
        case GrowthModel::Kind::Exponential: {
            BigReal a = BigReal::from_double(gm.param, ctx);
            BigReal zeff = z - a;
            if (zeff.sign() <= 0)
                throw TailBoundError("laplace: exponential-growth tail needs z > rate");
            return K * exp(-A * zeff, ctx) / zeff;
        }
    }
    throw Error("tail_bound: unreachable");
}

}  // namespace

BigReal laplace_transform(const RealFn& f, const BigReal& z, const LaplaceConfig& cfg,
                          const PrecisionContext& ctx) {
    if (z.sign() <= 0) throw DomainError("laplace_transform: z must be positive");
    PrecisionContext work(ctx.bits + 32, ctx.target_tol_log10);
    BigReal tol = work.with_bits(work.bits).target_tol();
    {
        PrecisionContext c(work.bits, ctx.target_tol_log10);
        tol = c.target_tol() * BigReal::from_double(0.25, work);
    }
    BigReal zw = BigReal::zero(work);
    mpfr_set(zw.raw_mut(), z.raw(), MPFR_RNDN);

    // split point: the configured default, extended until the tail bound
    // clears the tolerance
    double zd = zw.to_double();
    double A = cfg.cut > 0 ? cfg.cut : std::max(30.0 / zd, 30.0);
    BigReal bound = BigReal::zero(work);
    for (int i = 0;; ++i) {
        bound = tail_bound(cfg.tail_bound_model, BigReal::from_double(A, work), zw, work);
        if (bound <= tol || cfg.cut > 0) break;
        if (i > 60) throw TailBoundError("laplace: could not drive tail below tolerance");
        A *= 1.5;
    }

    BigReal Ab = BigReal::from_double(A, work);
    RealFn integrand = [&f, &zw, &work](const BigReal& x) {
        return exp(-(x * zw), work) * f(x);
    };
    BigReal total = BigReal::zero(work);
    BigReal qerr = BigReal::zero(work);
    BigReal lo = BigReal::zero(work);
    if (cfg.algebraic_endpoint_power) {
        auto g = integrate_graded_left(integrand, BigReal::zero(work),
                                       BigReal::from_long(1, work), work, tol, cfg.panel_order);
        total += g.value;
        qerr += g.err;
        lo = BigReal::from_long(1, work);
    }
    unsigned initial = static_cast<unsigned>(std::clamp(A * zd / 5.0, 4.0, 4096.0));
    auto q = integrate_panels(integrand, lo, Ab, work, tol, initial, cfg.panel_order);
    total += q.value;
    qerr += q.err;

    BigReal out = BigReal::zero(ctx);
    mpfr_set(out.raw_mut(), total.raw(), MPFR_RNDN);
    BigReal e = BigReal::zero(ctx);
    mpfr_set(e.raw_mut(), (qerr + bound).raw(), MPFR_RNDU);
    out.set_err(e);
    out.bump_err_ulps(8);
    return out;
}

// ---------------------------------------------------------------------------
// Pade
// ---------------------------------------------------------------------------

namespace {

// Solve the m x m Toeplitz system for denominator coefficients q_1..q_m:
//   sum_{j=0}^m q_j b_{m+i-j} = 0, i = 1..m, q_0 = 1.
// Returns false when the system is singular.
template <typename Field>
bool solve_pade(const std::vector<Field>& b, unsigned m, const Field& one,
                std::vector<Field>& qout, std::vector<Field>& pout,
                const std::function<bool(const Field&)>& is_zero) {
    std::vector<std::vector<Field>> A(m, std::vector<Field>(m + 1));
    for (unsigned i = 0; i < m; ++i) {
        for (unsigned j = 1; j <= m; ++j) A[i][j - 1] = b[m + i + 1 - j];
        A[i][m] = -b[m + i + 1];  // RHS
    }
    // Gaussian elimination with partial pivoting
    std::vector<unsigned> perm(m);
    for (unsigned i = 0; i < m; ++i) perm[i] = i;
    for (unsigned col = 0; col < m; ++col) {
        unsigned best = col;
        for (unsigned r = col; r < m; ++r) {
            if (!is_zero(A[r][col])) {
                best = r;
                break;
            }
        }
        // prefer the largest pivot in the numeric case
        if constexpr (std::is_same_v<Field, BigReal>) {
            for (unsigned r = col; r < m; ++r)
                if (abs(A[r][col]) > abs(A[best][col])) best = r;
        }
        if (is_zero(A[best][col])) return false;
        std::swap(A[col], A[best]);
        for (unsigned r = col + 1; r < m; ++r) {
            if (is_zero(A[r][col])) continue;
            Field factor = A[r][col] / A[col][col];
            for (unsigned cc = col; cc <= m; ++cc) A[r][cc] = A[r][cc] - factor * A[col][cc];
        }
    }
    std::vector<Field> q(m);
    for (int i = static_cast<int>(m) - 1; i >= 0; --i) {
        Field acc = A[i][m];
        for (unsigned j = i + 1; j < m; ++j) acc = acc - A[i][j] * q[j];
        if (is_zero(A[i][i])) return false;
        q[i] = acc / A[i][i];
    }
    qout.clear();
    qout.push_back(one);
    for (unsigned j = 0; j < m; ++j) qout.push_back(q[j]);
    pout.assign(m + 1, Field());
    for (unsigned k = 0; k <= m; ++k) {
        Field acc = qout[0] * b[k];
        for (unsigned j = 1; j <= std::min(k, m); ++j) acc = acc + qout[j] * b[k - j];
        pout[k] = acc;
    }
    return true;
}

// verify that p/q reproduces the series through order `through`
template <typename Field>
bool verify_pade(const std::vector<Field>& b, const std::vector<Field>& p,
                 const std::vector<Field>& q, unsigned through,
                 const std::function<bool(const Field&)>& is_zero) {
    // check sum_j q_j b_{k-j} == p_k (p_k = 0 beyond its degree)
    for (unsigned k = 0; k <= through; ++k) {
        Field acc = Field();
        bool first = true;
        for (unsigned j = 0; j < q.size() && j <= k; ++j) {
            Field t = q[j] * b[k - j];
            acc = first ? t : acc + t;
            first = false;
        }
        if (k < p.size()) acc = acc - p[k];
        if (!is_zero(acc)) return false;
    }
    return true;
}

}  // namespace

PadeApproximant pade_continuation(const std::vector<Rational>& taylor_prefix, unsigned m) {
    if (taylor_prefix.size() < 2 * m + 1)
        throw InsufficientCoefficients("pade: need at least 2m+1 coefficients");
    std::function<bool(const Rational&)> zero = [](const Rational& q) { return q == 0; };
    // degenerate Toeplitz blocks: step down to the largest solvable order that
    // still reproduces the full prefix (standard Pade block structure)
    for (long mm = m; mm >= 0; --mm) {
        std::vector<Rational> q, p;
        if (mm == 0) {
            q = {Rational(1)};
            p = {taylor_prefix[0]};
        } else if (!solve_pade<Rational>(taylor_prefix, static_cast<unsigned>(mm), Rational(1),
                                         q, p, zero)) {
            continue;
        }
        if (verify_pade<Rational>(taylor_prefix, p, q, 2 * m, zero)) {
            PadeApproximant out;
            out.exact_ = true;
            out.m_eff_ = static_cast<unsigned>(mm);
            out.pq_ = p;
            out.qq_ = q;
            return out;
        }
    }
    throw DegenerateDenominator("pade: no solvable diagonal block");
}

PadeApproximant pade_continuation(const std::vector<BigReal>& taylor_prefix, unsigned m,
                                  const PrecisionContext& ctx) {
    if (taylor_prefix.size() < 2 * m + 1)
        throw InsufficientCoefficients("pade: need at least 2m+1 coefficients");
    // ill-conditioned system: solve at twice the working precision
    PrecisionContext work(2 * ctx.bits, ctx.target_tol_log10);
    std::vector<BigReal> b;
    b.reserve(taylor_prefix.size());
    for (auto& c : taylor_prefix) {
        BigReal w = BigReal::zero(work);
        mpfr_set(w.raw_mut(), c.raw(), MPFR_RNDN);
        b.push_back(w);
    }
    BigReal eps = BigReal::zero(work);
    mpfr_set_ui_2exp(eps.raw_mut(), 1, -static_cast<long>(ctx.bits) - 16, MPFR_RNDN);
    std::function<bool(const BigReal&)> zero = [eps](const BigReal& x) {
        return abs(x) <= eps;
    };
    std::vector<BigReal> q, p;
    if (!solve_pade<BigReal>(b, m, BigReal::from_long(1, work), q, p, zero))
        throw DegenerateDenominator("pade: singular Toeplitz system");
    PadeApproximant out;
    out.exact_ = false;
    out.m_eff_ = m;
    out.p_ = p;
    out.q_ = q;
    return out;
}

BigReal PadeApproximant::operator()(const BigReal& x, const PrecisionContext& ctx) const {
    auto horner_q = [&](const std::vector<Rational>& c) {
        BigReal acc = BigReal::zero(ctx);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + to_bigreal(*it, ctx);
        return acc;
    };
    auto horner_b = [&](const std::vector<BigReal>& c) {
        BigReal acc = BigReal::zero(ctx);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    };
    BigReal num = exact_ ? horner_q(pq_) : horner_b(p_);
    BigReal den = exact_ ? horner_q(qq_) : horner_b(q_);
    if (den.is_zero()) throw ContinuationError("pade: denominator vanishes at sample point");
    return num / den;
}

bool PadeApproximant::has_pole_on(const BigReal& hi, const PrecisionContext& ctx,
                                  unsigned samples) const {
    auto den_at = [&](const BigReal& x) {
        BigReal acc = BigReal::zero(ctx);
        if (exact_) {
            for (auto it = qq_.rbegin(); it != qq_.rend(); ++it)
                acc = acc * x + to_bigreal(*it, ctx);
        } else {
            for (auto it = q_.rbegin(); it != q_.rend(); ++it) acc = acc * x + *it;
        }
        return acc;
    };
    BigReal step = hi / BigReal::from_long(samples, ctx);
    BigReal prev = den_at(BigReal::zero(ctx));
    if (prev.is_zero()) return true;
    for (unsigned i = 1; i <= samples; ++i) {
        BigReal x = step * BigReal::from_long(i, ctx);
        BigReal d = den_at(x);
        if (d.is_zero() || d.sign() != prev.sign()) return true;
        prev = d;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Borel summation
// ---------------------------------------------------------------------------

BigReal borel_sum(const BorelSeries& series, const BigReal& z, const LaplaceConfig& cfg,
                  const PrecisionContext& ctx) {
    if (z.sign() <= 0) throw DomainError("borel_sum: z must be positive");
    // radius-of-convergence sanity on the Borel transform coefficients
    // b_n = c_n / n!: the ratio |b_{n+1}/b_n| must stay bounded over the prefix
    {
        PrecisionContext probe(64, -5);
        std::vector<double> ratios;
        BigReal prev = BigReal::zero(probe);
        for (unsigned long n = 0; n < series.prefix_len; ++n) {
            BigReal c = series.coeff(n, probe);
            BigReal b = c / to_bigreal(Rational(factorial(n)), probe);
            if (n > 0 && !prev.is_zero())
                ratios.push_back(std::abs((b / prev).to_double()));
            prev = b;
        }
        // a bounded radius gives ratios that level off; a linear drift in the
        // ratio sequence means the transform itself diverges factorially
        if (ratios.size() >= 8) {
            size_t mid = ratios.size() / 2;
            double slope =
                (ratios.back() - ratios[mid]) / static_cast<double>(ratios.size() - 1 - mid);
            if (slope > 0.25 && ratios.back() > 4.0)
                throw ConvergenceError(
                    "borel_sum: Borel transform coefficients suggest zero radius of convergence");
        }
    }

    if (std::holds_alternative<BorelSeries::ClosedForm>(series.continuation)) {
        const auto& cf = std::get<BorelSeries::ClosedForm>(series.continuation);
        LaplaceConfig c = cfg;
        c.tail_bound_model = cf.model;
        return laplace_transform(cf.g, z, c, ctx);
    }

    const auto& pd = std::get<BorelSeries::PadeDiagonal>(series.continuation);
    unsigned need = 2 * pd.order + 1;
    PadeApproximant pade = [&]() {
        if (series.rational_coeffs) {
            const auto& rc = *series.rational_coeffs;
            if (rc.size() < need)
                throw InsufficientCoefficients("borel_sum: need 2m+1 rational coefficients");
            std::vector<Rational> b;
            for (unsigned i = 0; i < need; ++i)
                b.push_back(rc[i] / Rational(factorial(i)));
            return pade_continuation(b, pd.order);
        }
        std::vector<BigReal> b;
        for (unsigned long n = 0; n < need; ++n)
            b.push_back(series.coeff(n, ctx) / to_bigreal(Rational(factorial(n)), ctx));
        return pade_continuation(b, pd.order, ctx);
    }();

    // the continued transform must stay pole-free on the quadrature range
    double zd = z.to_double();
    double A = cfg.cut > 0 ? cfg.cut
                           : std::max({30.0 / zd, 30.0,
                                       (-ctx.target_tol_log10 * 2.303 + 12.0) / zd});
    if (pade.has_pole_on(BigReal::from_double(A, ctx), ctx))
        throw ContinuationError("borel_sum: Pade denominator has a pole on [0, A]");

    LaplaceConfig c = cfg;
    c.cut = A;
    // a diagonal Pade is bounded at infinity; scale from samples
    double K = 1.0;
    for (double x : {0.0, A / 3, A / 2, A}) {
        double v = std::abs(pade(BigReal::from_double(x, ctx), ctx).to_double());
        K = std::max(K, 4 * v);
    }
    c.tail_bound_model = GrowthModel::constant(K);
    RealFn g = [&pade, &ctx](const BigReal& x) { return pade(x, ctx); };
    return laplace_transform(g, z, c, ctx);
}

}  // namespace ramasum
