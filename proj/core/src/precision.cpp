#include "ramasum/precision.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>

namespace ramasum {

PrecisionContext::PrecisionContext(mpfr_prec_t bits_, double tol_log10)
    : bits(bits_), target_tol_log10(tol_log10) {
    if (bits < 64) throw PrecisionError("PrecisionContext: bits must be >= 64");
    if (tol_log10 >= 0) throw PrecisionError("PrecisionContext: target_tol must be < 1");
    // tolerance must be representable: 10^tol > 2^(emin) trivially holds, but it
    // must not underflow the precision's usable range relative to 1.
    if (-tol_log10 > 0.3010299957 * static_cast<double>(bits) + 64)
        throw PrecisionError("PrecisionContext: target_tol not representable at this precision");
}

int PrecisionContext::decimal_digits() const {
    return static_cast<int>(static_cast<double>(bits) * 0.30102999566398) - 2;
}

BigReal PrecisionContext::target_tol() const {
    // 10^target_tol_log10 computed at this precision
    PrecisionContext c = *this;
    BigReal ten = BigReal::from_long(10, c);
    BigReal e = BigReal::from_double(target_tol_log10, c);
    return pow(ten, e, c);
}

PrecisionContext PrecisionContext::for_tolerance(double tol_log10) {
    double digits = -tol_log10;
    auto bits = static_cast<mpfr_prec_t>(std::ceil(4.0 * digits * 3.33));
    if (bits < 256) bits = 256;
    return PrecisionContext(bits, tol_log10);
}

BigReal::BigReal(mpfr_prec_t prec, bool) {
    mpfr_init2(v_, prec);
    mpfr_init2(e_, prec);
    mpfr_set_zero(v_, 1);
    mpfr_set_zero(e_, 1);
}

BigReal::BigReal() : BigReal(64, true) {}

BigReal::BigReal(long v, mpfr_prec_t prec) : BigReal(prec, true) {
    mpfr_set_si(v_, v, MPFR_RNDN);
}

BigReal::BigReal(const BigReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_init2(e_, mpfr_get_prec(o.e_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
    mpfr_set(e_, o.e_, MPFR_RNDU);
}

BigReal::BigReal(BigReal&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_init2(e_, mpfr_get_prec(o.e_));
    mpfr_swap(v_, o.v_);
    mpfr_swap(e_, o.e_);
}

BigReal& BigReal::operator=(const BigReal& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set_prec(e_, mpfr_get_prec(o.e_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
        mpfr_set(e_, o.e_, MPFR_RNDU);
    }
    return *this;
}

BigReal& BigReal::operator=(BigReal&& o) noexcept {
    if (this != &o) {
        mpfr_swap(v_, o.v_);
        mpfr_swap(e_, o.e_);
    }
    return *this;
}

BigReal::~BigReal() {
    mpfr_clear(v_);
    mpfr_clear(e_);
}

BigReal BigReal::from_long(long v, const PrecisionContext& ctx) {
    BigReal r(ctx.bits, true);
    mpfr_set_si(r.v_, v, MPFR_RNDN);
    return r;
}

BigReal BigReal::from_double(double v, const PrecisionContext& ctx) {
    BigReal r(ctx.bits, true);
    mpfr_set_d(r.v_, v, MPFR_RNDN);
    return r;
}

BigReal BigReal::from_string(const std::string& dec, const PrecisionContext& ctx) {
    BigReal r(ctx.bits, true);
    if (mpfr_set_str(r.v_, dec.c_str(), 10, MPFR_RNDN) != 0)
        throw DomainError("BigReal: cannot parse decimal '" + dec + "'");
    r.add_ulp_err();
    return r;
}

BigReal BigReal::zero(const PrecisionContext& ctx) { return BigReal(ctx.bits, true); }

BigReal BigReal::err() const {
    BigReal r(mpfr_get_prec(e_), true);
    mpfr_set(r.v_, e_, MPFR_RNDU);
    return r;
}

void BigReal::set_err(const BigReal& e) {
    if (mpfr_sgn(e.v_) < 0) throw DomainError("BigReal: error radius must be non-negative");
    mpfr_set(e_, e.v_, MPFR_RNDU);
}

void BigReal::clear_err() { mpfr_set_zero(e_, 1); }

void BigReal::add_ulp_err(int extra_ulps) {
    // one ulp of the value (or 2^-prec for a zero value)
    mpfr_prec_t p = mpfr_get_prec(v_);
    long e2 = mpfr_zero_p(v_) ? 0 : mpfr_get_exp(v_);
    mpfr_t ulp;
    mpfr_init2(ulp, 64);
    mpfr_set_ui_2exp(ulp, static_cast<unsigned long>(extra_ulps), e2 - p, MPFR_RNDU);
    mpfr_add(e_, e_, ulp, MPFR_RNDU);
    mpfr_clear(ulp);
}

void BigReal::bump_err_ulps(unsigned long k) { add_ulp_err(static_cast<int>(k)); }

std::string BigReal::to_string(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(v_)) return "0";
    mpfr_exp_t exp10 = 0;
    char* s = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    bool neg = false;
    if (!mant.empty() && mant[0] == '-') {
        neg = true;
        mant.erase(0, 1);
    }
    // strip trailing zeros but keep at least one digit
    size_t last = mant.find_last_not_of('0');
    if (last != std::string::npos) mant.erase(last + 1);
    if (mant.empty()) mant = "0";
    std::string out = (neg ? "-" : "");
    out += mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    long e = static_cast<long>(exp10) - 1;
    out += "e";
    out += (e < 0 ? "-" : "+");
    out += std::to_string(e < 0 ? -e : e);
    return out;
}

namespace {

mpfr_prec_t join_prec(const BigReal& a, const BigReal& b) {
    return std::max(a.precision(), b.precision());
}

}  // namespace

BigReal operator+(const BigReal& a, const BigReal& b) {
    BigReal r(join_prec(a, b), true);
    mpfr_add(r.raw_mut(), a.raw(), b.raw(), MPFR_RNDN);
    mpfr_t e;
    mpfr_init2(e, 96);
    mpfr_add(e, a.err_raw(), b.err_raw(), MPFR_RNDU);
    BigReal er;
    mpfr_set_prec(er.raw_mut(), 96);
    mpfr_set(er.raw_mut(), e, MPFR_RNDU);
    mpfr_clear(e);
    r.set_err(er);
    r.bump_err_ulps(1);
    return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
    BigReal r(join_prec(a, b), true);
    mpfr_sub(r.raw_mut(), a.raw(), b.raw(), MPFR_RNDN);
    mpfr_t e;
    mpfr_init2(e, 96);
    mpfr_add(e, a.err_raw(), b.err_raw(), MPFR_RNDU);
    BigReal er;
    mpfr_set_prec(er.raw_mut(), 96);
    mpfr_set(er.raw_mut(), e, MPFR_RNDU);
    mpfr_clear(e);
    r.set_err(er);
    r.bump_err_ulps(1);
    return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
    BigReal r(join_prec(a, b), true);
    mpfr_mul(r.raw_mut(), a.raw(), b.raw(), MPFR_RNDN);
    // err = |a| eb + |b| ea + ea eb
    mpfr_t t1, t2, e;
    mpfr_init2(t1, 96);
    mpfr_init2(t2, 96);
    mpfr_init2(e, 96);
    mpfr_abs(t1, a.raw(), MPFR_RNDU);
    mpfr_mul(t1, t1, b.err_raw(), MPFR_RNDU);
    mpfr_abs(t2, b.raw(), MPFR_RNDU);
    mpfr_mul(t2, t2, a.err_raw(), MPFR_RNDU);
    mpfr_add(e, t1, t2, MPFR_RNDU);
    mpfr_mul(t1, a.err_raw(), b.err_raw(), MPFR_RNDU);
    mpfr_add(e, e, t1, MPFR_RNDU);
    BigReal er;
    mpfr_set_prec(er.raw_mut(), 96);
    mpfr_set(er.raw_mut(), e, MPFR_RNDU);
    mpfr_clear(t1);
    mpfr_clear(t2);
    mpfr_clear(e);
    r.set_err(er);
    r.bump_err_ulps(1);
    return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
    if (mpfr_zero_p(b.raw())) throw DomainError("BigReal: division by zero");
    BigReal r(join_prec(a, b), true);
    mpfr_div(r.raw_mut(), a.raw(), b.raw(), MPFR_RNDN);
    // err = (ea + |a/b| eb) / |b|
    mpfr_t t1, e;
    mpfr_init2(t1, 96);
    mpfr_init2(e, 96);
    mpfr_abs(t1, r.raw(), MPFR_RNDU);
    mpfr_mul(t1, t1, b.err_raw(), MPFR_RNDU);
    mpfr_add(e, t1, a.err_raw(), MPFR_RNDU);
    mpfr_abs(t1, b.raw(), MPFR_RNDD);
    mpfr_div(e, e, t1, MPFR_RNDU);
    BigReal er;
    mpfr_set_prec(er.raw_mut(), 96);
    mpfr_set(er.raw_mut(), e, MPFR_RNDU);
    mpfr_clear(t1);
    mpfr_clear(e);
    r.set_err(er);
    r.bump_err_ulps(1);
    return r;
}

BigReal BigReal::operator-() const {
    BigReal r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

BigReal abs(const BigReal& a) {
    BigReal r(a);
    mpfr_abs(r.v_, r.v_, MPFR_RNDN);
    return r;
}

namespace {

// unary op wrapper: err = dbound * in.err + ulp, dbound computed by caller
BigReal unary(const BigReal& x, const PrecisionContext& ctx,
              int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t),
              void (*dbound)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr)) {
    BigReal r = BigReal::zero(ctx);
    fn(r.raw_mut(), x.raw(), MPFR_RNDN);
    mpfr_t d;
    mpfr_init2(d, 96);
    dbound(d, x.raw(), r.raw());
    mpfr_mul(d, d, x.err_raw(), MPFR_RNDU);
    BigReal er;
    mpfr_set_prec(er.raw_mut(), 96);
    mpfr_abs(er.raw_mut(), d, MPFR_RNDU);
    mpfr_clear(d);
    r.set_err(er);
    r.bump_err_ulps(2);
    return r;
}

}  // namespace

BigReal exp(const BigReal& x, const PrecisionContext& ctx) {
    return unary(x, ctx, mpfr_exp,
                 [](mpfr_ptr d, mpfr_srcptr, mpfr_srcptr r) { mpfr_abs(d, r, MPFR_RNDU); });
}

BigReal log(const BigReal& x, const PrecisionContext& ctx) {
    if (mpfr_sgn(x.raw()) <= 0) throw DomainError("log: argument must be positive");
    return unary(x, ctx, mpfr_log, [](mpfr_ptr d, mpfr_srcptr xx, mpfr_srcptr) {
        mpfr_ui_div(d, 1, xx, MPFR_RNDU);
        mpfr_abs(d, d, MPFR_RNDU);
    });
}

BigReal sin(const BigReal& x, const PrecisionContext& ctx) {
    return unary(x, ctx, mpfr_sin,
                 [](mpfr_ptr d, mpfr_srcptr, mpfr_srcptr) { mpfr_set_ui(d, 1, MPFR_RNDU); });
}

BigReal atan(const BigReal& x, const PrecisionContext& ctx) {
    return unary(x, ctx, mpfr_atan,
                 [](mpfr_ptr d, mpfr_srcptr, mpfr_srcptr) { mpfr_set_ui(d, 1, MPFR_RNDU); });
}

BigReal sqrt(const BigReal& x, const PrecisionContext& ctx) {
    if (mpfr_sgn(x.raw()) < 0) throw DomainError("sqrt: argument must be non-negative");
    return unary(x, ctx, mpfr_sqrt, [](mpfr_ptr d, mpfr_srcptr, mpfr_srcptr r) {
        // 1/(2 sqrt(x)) = 1/(2 r)
        if (mpfr_zero_p(r)) {
            mpfr_set_ui(d, 1, MPFR_RNDU);
            return;
        }
        mpfr_ui_div(d, 1, r, MPFR_RNDU);
        mpfr_div_ui(d, d, 2, MPFR_RNDU);
        mpfr_abs(d, d, MPFR_RNDU);
    });
}

BigReal pow(const BigReal& x, const BigReal& y, const PrecisionContext& ctx) {
    // integer exponents allow any base; otherwise require x > 0
    if (!mpfr_integer_p(y.raw()) && mpfr_sgn(x.raw()) <= 0)
        throw DomainError("pow: non-integer exponent requires positive base");
    if (mpfr_zero_p(x.raw()) && mpfr_sgn(y.raw()) < 0)
        throw DomainError("pow: zero base with negative exponent");
    BigReal r = BigReal::zero(ctx);
    mpfr_pow(r.raw_mut(), x.raw(), y.raw(), MPFR_RNDN);
    // err ~ |r| (|y| ex/|x| + |log x| ey)
    mpfr_t t, e, lx;
    mpfr_init2(t, 96);
    mpfr_init2(e, 96);
    mpfr_init2(lx, 96);
    mpfr_set_zero(e, 1);
    if (!mpfr_zero_p(x.raw())) {
        mpfr_abs(t, y.raw(), MPFR_RNDU);
        mpfr_mul(t, t, x.err_raw(), MPFR_RNDU);
        mpfr_t ax;
        mpfr_init2(ax, 96);
        mpfr_abs(ax, x.raw(), MPFR_RNDD);
        mpfr_div(t, t, ax, MPFR_RNDU);
        mpfr_add(e, e, t, MPFR_RNDU);
        mpfr_log(lx, ax, MPFR_RNDN);
        mpfr_abs(lx, lx, MPFR_RNDU);
        mpfr_mul(lx, lx, y.err_raw(), MPFR_RNDU);
        mpfr_add(e, e, lx, MPFR_RNDU);
        mpfr_clear(ax);
    }
    mpfr_abs(t, r.raw(), MPFR_RNDU);
    mpfr_mul(e, e, t, MPFR_RNDU);
    BigReal er;
    mpfr_set_prec(er.raw_mut(), 96);
    mpfr_set(er.raw_mut(), e, MPFR_RNDU);
    mpfr_clear(t);
    mpfr_clear(e);
    mpfr_clear(lx);
    r.set_err(er);
    r.bump_err_ulps(2);
    return r;
}

BigReal pow_si(const BigReal& x, long k, const PrecisionContext& ctx) {
    BigReal r = BigReal::zero(ctx);
    mpfr_pow_si(r.raw_mut(), x.raw(), k, MPFR_RNDN);
    // err ~ |k| |r| ex / |x|
    if (!mpfr_zero_p(x.raw()) && k != 0) {
        mpfr_t t, ax;
        mpfr_init2(t, 96);
        mpfr_init2(ax, 96);
        mpfr_abs(t, r.raw(), MPFR_RNDU);
        mpfr_mul_si(t, t, k < 0 ? -k : k, MPFR_RNDU);
        mpfr_mul(t, t, x.err_raw(), MPFR_RNDU);
        mpfr_abs(ax, x.raw(), MPFR_RNDD);
        mpfr_div(t, t, ax, MPFR_RNDU);
        BigReal er;
        mpfr_set_prec(er.raw_mut(), 96);
        mpfr_set(er.raw_mut(), t, MPFR_RNDU);
        mpfr_clear(t);
        mpfr_clear(ax);
        r.set_err(er);
    }
    r.bump_err_ulps(2);
    return r;
}

BigReal pi(const PrecisionContext& ctx) {
    BigReal r = BigReal::zero(ctx);
    mpfr_const_pi(r.raw_mut(), MPFR_RNDN);
    r.bump_err_ulps(1);
    return r;
}

BigReal const_e(const PrecisionContext& ctx) {
    BigReal one = BigReal::from_long(1, ctx);
    return exp(one, ctx);
}

BigReal evaluate_elementary(Elementary name, const std::vector<BigReal>& args,
                            const PrecisionContext& ctx) {
    if (ctx.bits < 64) throw PrecisionError("evaluate_elementary: bits < 64");
    auto need = [&](size_t n) {
        if (args.size() != n)
            throw DomainError("evaluate_elementary: wrong argument count");
    };
    switch (name) {
        case Elementary::Exp: need(1); return exp(args[0], ctx);
        case Elementary::Log: need(1); return log(args[0], ctx);
        case Elementary::Pow: need(2); return pow(args[0], args[1], ctx);
        case Elementary::Sin: need(1); return sin(args[0], ctx);
        case Elementary::Atan: need(1); return atan(args[0], ctx);
        case Elementary::Pi: need(0); return pi(ctx);
        case Elementary::ConstE: need(0); return const_e(ctx);
    }
    throw DomainError("evaluate_elementary: unknown function");
}

CompareResult compare_within(const BigReal& a, const BigReal& b, const BigReal& tol) {
    BigReal diff = a - b;
    diff.clear_err();
    BigReal bound = tol + a.err() + b.err();
    bool ok = abs(diff) <= bound;
    return CompareResult{ok, diff};
}

}  // namespace ramasum
