#include "ramasum/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace ramasum {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence, at the precision of x.
void legendre_pair(unsigned n, const mpfr_t x, mpfr_t p, mpfr_t dp, mpfr_prec_t prec) {
    mpfr_t p0, p1, t;
    mpfr_init2(p0, prec);
    mpfr_init2(p1, prec);
    mpfr_init2(t, prec);
    mpfr_set_ui(p0, 1, MPFR_RNDN);  // P_0
    mpfr_set(p1, x, MPFR_RNDN);     // P_1
    for (unsigned k = 2; k <= n; ++k) {
        // P_k = ((2k-1) x P_{k-1} - (k-1) P_{k-2}) / k
        mpfr_mul(t, x, p1, MPFR_RNDN);
        mpfr_mul_ui(t, t, 2 * k - 1, MPFR_RNDN);
        mpfr_mul_ui(p0, p0, k - 1, MPFR_RNDN);
        mpfr_sub(t, t, p0, MPFR_RNDN);
        mpfr_div_ui(t, t, k, MPFR_RNDN);
        mpfr_set(p0, p1, MPFR_RNDN);
        mpfr_set(p1, t, MPFR_RNDN);
    }
    mpfr_set(p, p1, MPFR_RNDN);
    // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
    mpfr_mul(dp, x, p1, MPFR_RNDN);
    mpfr_sub(dp, dp, p0, MPFR_RNDN);
    mpfr_mul_ui(dp, dp, n, MPFR_RNDN);
    mpfr_mul(t, x, x, MPFR_RNDN);
    mpfr_sub_ui(t, t, 1, MPFR_RNDN);
    mpfr_div(dp, dp, t, MPFR_RNDN);
    mpfr_clear(p0);
    mpfr_clear(p1);
    mpfr_clear(t);
}

struct RuleKey {
    unsigned order;
    mpfr_prec_t prec;
    bool operator<(const RuleKey& o) const {
        return order != o.order ? order < o.order : prec < o.prec;
    }
};

std::mutex g_rule_mutex;
std::map<RuleKey, GaussLegendreRule> g_rules;

GaussLegendreRule build_rule(unsigned order, mpfr_prec_t prec) {
    mpfr_prec_t work = prec + 32;
    GaussLegendreRule rule;
    rule.nodes.reserve(order);
    rule.weights.reserve(order);
    PrecisionContext ctx(prec, -1);
    mpfr_t x, p, dp, dx, eps;
    mpfr_init2(x, work);
    mpfr_init2(p, work);
    mpfr_init2(dp, work);
    mpfr_init2(dx, work);
    mpfr_init2(eps, work);
    mpfr_set_ui_2exp(eps, 1, -(work - 12), MPFR_RNDN);
    for (unsigned i = 1; i <= order; ++i) {
        double guess = std::cos(M_PI * (i - 0.25) / (order + 0.5));
        mpfr_set_d(x, guess, MPFR_RNDN);
        for (int it = 0; it < 200; ++it) {
            legendre_pair(order, x, p, dp, work);
            mpfr_div(dx, p, dp, MPFR_RNDN);
            mpfr_sub(x, x, dx, MPFR_RNDN);
            mpfr_abs(dx, dx, MPFR_RNDN);
            if (mpfr_cmp(dx, eps) < 0) break;
        }
        legendre_pair(order, x, p, dp, work);
        BigReal node = BigReal::zero(ctx);
        mpfr_set(node.raw_mut(), x, MPFR_RNDN);
        // w = 2 / ((1 - x^2) dp^2)
        mpfr_t w, t;
        mpfr_init2(w, work);
        mpfr_init2(t, work);
        mpfr_mul(t, x, x, MPFR_RNDN);
        mpfr_ui_sub(t, 1, t, MPFR_RNDN);
        mpfr_mul(w, dp, dp, MPFR_RNDN);
        mpfr_mul(w, w, t, MPFR_RNDN);
        mpfr_ui_div(w, 2, w, MPFR_RNDN);
        BigReal weight = BigReal::zero(ctx);
        mpfr_set(weight.raw_mut(), w, MPFR_RNDN);
        mpfr_clear(w);
        mpfr_clear(t);
        rule.nodes.push_back(std::move(node));
        rule.weights.push_back(std::move(weight));
    }
    mpfr_clear(x);
    mpfr_clear(p);
    mpfr_clear(dp);
    mpfr_clear(dx);
    mpfr_clear(eps);
    return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(unsigned order, mpfr_prec_t prec) {
    RuleKey key{order, prec};
    std::lock_guard<std::mutex> lock(g_rule_mutex);
    auto it = g_rules.find(key);
    if (it == g_rules.end()) it = g_rules.emplace(key, build_rule(order, prec)).first;
    return it->second;
}

BigReal integrate_gl(const RealFn& f, const BigReal& a, const BigReal& b,
                     unsigned order, const PrecisionContext& ctx) {
    const GaussLegendreRule& rule = gauss_legendre(order, ctx.bits);
    BigReal half = BigReal::from_double(0.5, ctx);
    BigReal mid = (a + b) * half;
    BigReal rad = (b - a) * half;
    BigReal acc = BigReal::zero(ctx);
    for (unsigned i = 0; i < rule.nodes.size(); ++i) {
        BigReal x = mid + rad * rule.nodes[i];
        acc += rule.weights[i] * f(x);
    }
    return acc * rad;
}

QuadratureResult integrate_panels(const RealFn& f, const BigReal& a, const BigReal& b,
                                  const PrecisionContext& ctx, const BigReal& tol,
                                  unsigned initial_panels, unsigned order) {
    unsigned panels = initial_panels;
    BigReal prev = BigReal::zero(ctx);
    bool have_prev = false;
    QuadratureResult out{BigReal::zero(ctx), BigReal::zero(ctx), 0};
    for (int round = 0; round < 12; ++round) {
        BigReal total = BigReal::zero(ctx);
        BigReal width = (b - a) / BigReal::from_long(panels, ctx);
        for (unsigned i = 0; i < panels; ++i) {
            BigReal lo = a + width * BigReal::from_long(i, ctx);
            BigReal hi = (i + 1 == panels) ? b : a + width * BigReal::from_long(i + 1, ctx);
            total += integrate_gl(f, lo, hi, order, ctx);
            out.evaluations += order;
        }
        if (have_prev) {
            BigReal delta = abs(total - prev);
            if (delta <= tol) {
                out.value = total;
                out.err = delta;
                return out;
            }
        }
        prev = total;
        have_prev = true;
        panels *= 2;
    }
    out.value = prev;
    out.err = tol;  // did not certify below tol; report at tol level
    return out;
}

QuadratureResult integrate_graded_left(const RealFn& f, const BigReal& a, const BigReal& b,
                                       const PrecisionContext& ctx, const BigReal& tol,
                                       unsigned order, unsigned max_panels) {
    QuadratureResult out{BigReal::zero(ctx), BigReal::zero(ctx), 0};
    BigReal quarter = BigReal::from_double(0.25, ctx);
    BigReal len = b - a;
    BigReal hi = b;
    BigReal prev_piece = BigReal::zero(ctx);
    bool have_prev = false;
    for (unsigned i = 0; i < max_panels; ++i) {
        len = len * quarter;
        BigReal lo = a + len;
        BigReal piece = integrate_gl(f, lo, hi, order, ctx);
        out.value += piece;
        out.evaluations += order;
        BigReal ap = abs(piece);
        if (i > 12 && have_prev && ap > abs(prev_piece) * BigReal::from_long(4, ctx))
            throw ConvergenceError("integrate_graded_left: panel contributions diverging");
        if (have_prev && ap <= tol) {
            // geometric bound for the sliver [a, lo]
            BigReal r = have_prev && !prev_piece.is_zero() ? ap / abs(prev_piece)
                                                           : BigReal::from_double(0.5, ctx);
            if (r >= BigReal::from_double(0.95, ctx)) r = BigReal::from_double(0.95, ctx);
            BigReal rem = ap * r / (BigReal::from_long(1, ctx) - r);
            out.err += rem;
            return out;
        }
        prev_piece = piece;
        have_prev = true;
        hi = lo;
    }
    out.err += tol;
    return out;
}

QuadratureResult integrate_unit_intervals(const RealFn& f, const BigReal& from,
                                          const PrecisionContext& ctx, const BigReal& tol,
                                          unsigned order, unsigned max_units) {
    QuadratureResult out{BigReal::zero(ctx), BigReal::zero(ctx), 0};
    BigReal lo = from;
    BigReal one = BigReal::from_long(1, ctx);
    BigReal prev = BigReal::zero(ctx);
    bool have_prev = false;
    for (unsigned m = 0; m < max_units; ++m) {
        BigReal hi = lo + one;
        BigReal piece = integrate_gl(f, lo, hi, order, ctx);
        out.value += piece;
        out.evaluations += order;
        BigReal ap = abs(piece);
        if (ap <= tol) {
            BigReal r = BigReal::from_double(0.9, ctx);
            if (have_prev && !prev.is_zero()) {
                BigReal rr = ap / abs(prev);
                if (rr < r) r = rr;
            }
            out.err += ap * r / (one - r);
            return out;
        }
        prev = ap;
        have_prev = true;
        lo = hi;
    }
    out.err += tol;
    return out;
}

}  // namespace ramasum
