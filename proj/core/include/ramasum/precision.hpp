// precision.hpp — arbitrary-precision reals with an explicit precision context
// and a first-order error radius. Backed by MPFR; pure value semantics, no
// global rounding state, safe to share across threads.
#pragma once

#include <mpfr.h>

#include <string>
#include <utility>
#include <vector>

#include "ramasum/errors.hpp"

namespace ramasum {

class BigReal;

// Working binary precision plus the tolerance the caller ultimately wants.
// bits >= 64 is enforced; target_tol must be positive.
struct PrecisionContext {
    mpfr_prec_t bits = 256;
    double target_tol_log10 = -20;  // target_tol = 10^target_tol_log10

    PrecisionContext() = default;
    PrecisionContext(mpfr_prec_t bits_, double tol_log10);

    BigReal target_tol() const;
    int decimal_digits() const;  // usable decimal digits at this precision

    // Precision needed so that identity checks at tolerance 10^tol_log10 keep
    // enough guard digits: max(256, ceil(4 * digits * 3.33)).
    static PrecisionContext for_tolerance(double tol_log10);
    PrecisionContext with_bits(mpfr_prec_t b) const { return PrecisionContext(b, target_tol_log10); }
};

// Real scalar = value + non-negative error radius, both at the same precision.
// err is a first-order propagation estimate, not a validated enclosure.
class BigReal {
public:
    BigReal();  // 0 at 64 bits, err 0
    explicit BigReal(long v, mpfr_prec_t prec = 64);
    BigReal(const BigReal& o);
    BigReal(BigReal&& o) noexcept;
    BigReal& operator=(const BigReal& o);
    BigReal& operator=(BigReal&& o) noexcept;
    ~BigReal();

    static BigReal from_long(long v, const PrecisionContext& ctx);
    static BigReal from_double(double v, const PrecisionContext& ctx);
    // Decimal string, exact to 1 ulp at ctx.bits.
    static BigReal from_string(const std::string& dec, const PrecisionContext& ctx);
    static BigReal zero(const PrecisionContext& ctx);

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    const mpfr_t& raw() const { return v_; }
    mpfr_t& raw_mut() { return v_; }
    const mpfr_t& err_raw() const { return e_; }

    BigReal err() const;                // error radius as a BigReal (err 0)
    void set_err(const BigReal& e);     // e >= 0 required
    void clear_err();
    void bump_err_ulps(unsigned long k);  // add k ulps of the value to err

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Decimal scientific form with the given significant digits (value only).
    std::string to_string(int digits) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_negative() const { return mpfr_sgn(v_) < 0; }
    int sign() const { return mpfr_sgn(v_); }

    // exponent such that |value| < 2^exponent (0 for value 0)
    long exponent2() const { return mpfr_zero_p(v_) ? 0 : mpfr_get_exp(v_); }

    friend BigReal operator+(const BigReal& a, const BigReal& b);
    friend BigReal operator-(const BigReal& a, const BigReal& b);
    friend BigReal operator*(const BigReal& a, const BigReal& b);
    friend BigReal operator/(const BigReal& a, const BigReal& b);
    BigReal operator-() const;

    BigReal& operator+=(const BigReal& b) { *this = *this + b; return *this; }
    BigReal& operator-=(const BigReal& b) { *this = *this - b; return *this; }
    BigReal& operator*=(const BigReal& b) { *this = *this * b; return *this; }
    BigReal& operator/=(const BigReal& b) { *this = *this / b; return *this; }

    friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    friend BigReal abs(const BigReal& a);

private:
    explicit BigReal(mpfr_prec_t prec, bool /*tag*/);
    void add_ulp_err(int extra_ulps = 1);

    mpfr_t v_;
    mpfr_t e_;

    friend BigReal binary_op(const BigReal&, const BigReal&, int which);
    friend class BigRealOps;
};

// Elementary functions; result correct to well under 4 ulp at ctx.bits with
// the err field populated (input err propagated first-order).
BigReal exp(const BigReal& x, const PrecisionContext& ctx);
BigReal log(const BigReal& x, const PrecisionContext& ctx);   // DomainError for x <= 0
BigReal pow(const BigReal& x, const BigReal& y, const PrecisionContext& ctx);
BigReal pow_si(const BigReal& x, long k, const PrecisionContext& ctx);
BigReal sin(const BigReal& x, const PrecisionContext& ctx);
BigReal atan(const BigReal& x, const PrecisionContext& ctx);
BigReal sqrt(const BigReal& x, const PrecisionContext& ctx);
BigReal pi(const PrecisionContext& ctx);
BigReal const_e(const PrecisionContext& ctx);

enum class Elementary { Exp, Log, Pow, Sin, Atan, Pi, ConstE };

// Name-dispatched front end over the functions above.
BigReal evaluate_elementary(Elementary name, const std::vector<BigReal>& args,
                            const PrecisionContext& ctx);

struct CompareResult {
    bool within;
    BigReal diff;  // a - b
};

// true iff |a - b| <= tol + a.err + b.err; diff always reported.
CompareResult compare_within(const BigReal& a, const BigReal& b, const BigReal& tol);

}  // namespace ramasum
