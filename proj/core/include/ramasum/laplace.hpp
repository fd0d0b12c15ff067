// laplace.hpp — numerical Laplace transforms on [0, inf) by adaptive
// Gauss-Legendre panels plus analytic tail bounds, and Borel summation of
// factorially divergent series with closed-form or diagonal-Pade analytic
// continuation of the Borel transform.
#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "ramasum/precision.hpp"
#include "ramasum/quadrature.hpp"
#include "ramasum/rational.hpp"

namespace ramasum {

// growth descriptor of the integrand f used to bound int_A^inf e^{-xz}|f|
struct GrowthModel {
    enum class Kind { Constant, Log, Power, Exponential };
    Kind kind = Kind::Constant;
    double scale = 1.0;   // K in |f(x)| <= K * shape(x)
    double param = 0.0;   // p for Power, a for Exponential

    static GrowthModel constant(double K = 1.0) { return {Kind::Constant, K, 0.0}; }
    static GrowthModel logarithmic(double K = 2.0) { return {Kind::Log, K, 0.0}; }
    static GrowthModel power(double p, double K = 2.0) { return {Kind::Power, K, p}; }
    static GrowthModel exponential(double a, double K = 2.0) {
        return {Kind::Exponential, K, a};
    }
};

struct LaplaceConfig {
    unsigned panel_order = 64;
    double cut = 0.0;  // finite/infinite split A; 0 = max(30/z, 30) extended for tol
    GrowthModel tail_bound_model = GrowthModel::constant();
    // when the integrand carries an algebraic factor x^{-s}, panels are graded
    // geometrically toward 0 to restore exponential convergence
    std::optional<double> algebraic_endpoint_power;
};

// int_0^inf e^{-xz} f(x) dx; the result's err field includes the tail bound.
BigReal laplace_transform(const RealFn& f, const BigReal& z, const LaplaceConfig& cfg,
                          const PrecisionContext& ctx);

// Diagonal [m/m] Pade approximant built from 2m+1 Taylor coefficients.
// Solved exactly when the coefficients are rational, else at twice the
// working precision. Degenerate Toeplitz blocks reduce the effective order.
class PadeApproximant {
public:
    BigReal operator()(const BigReal& x, const PrecisionContext& ctx) const;
    unsigned effective_order() const { return m_eff_; }
    // true if the denominator vanishes (to working tolerance) on [0, hi]
    bool has_pole_on(const BigReal& hi, const PrecisionContext& ctx, unsigned samples = 512) const;

private:
    friend PadeApproximant pade_continuation(const std::vector<Rational>&, unsigned);
    friend PadeApproximant pade_continuation(const std::vector<BigReal>&, unsigned,
                                             const PrecisionContext&);
    std::vector<BigReal> p_, q_;
    std::vector<Rational> pq_, qq_;
    bool exact_ = false;
    unsigned m_eff_ = 0;
};

PadeApproximant pade_continuation(const std::vector<Rational>& taylor_prefix, unsigned m);
PadeApproximant pade_continuation(const std::vector<BigReal>& taylor_prefix, unsigned m,
                                  const PrecisionContext& ctx);

struct BorelSeries {
    // c_n of the divergent series sum c_n / z^{n+1}
    std::function<BigReal(unsigned long, const PrecisionContext&)> coeff;
    std::optional<std::vector<Rational>> rational_coeffs;  // exact c_n when available

    struct ClosedForm {
        RealFn g;  // the continued Borel transform g(x) = sum c_n x^n / n!
        GrowthModel model;
    };
    struct PadeDiagonal {
        unsigned order;
    };
    std::variant<ClosedForm, PadeDiagonal> continuation;
    unsigned prefix_len = 24;  // coefficients used for the radius estimate / Pade build
};

// int_0^inf e^{-xz} g(x) dx with g the continued Borel transform.
BigReal borel_sum(const BorelSeries& series, const BigReal& z, const LaplaceConfig& cfg,
                  const PrecisionContext& ctx);

}  // namespace ramasum
