// quadrature.hpp — Gauss-Legendre panel quadrature at arbitrary precision.
// Nodes/weights are computed by Newton iteration on Legendre polynomials and
// cached per (order, precision). All routines are deterministic.
#pragma once

#include <functional>
#include <vector>

#include "ramasum/precision.hpp"

namespace ramasum {

using RealFn = std::function<BigReal(const BigReal&)>;

struct QuadratureResult {
    BigReal value;
    BigReal err;      // refinement delta + extrapolated remainder where applicable
    long evaluations = 0;
};

// Nodes and weights on [-1, 1]; order-point rule, exact through degree 2*order-1.
struct GaussLegendreRule {
    std::vector<BigReal> nodes;
    std::vector<BigReal> weights;
};

const GaussLegendreRule& gauss_legendre(unsigned order, mpfr_prec_t prec);

// Single panel [a, b].
BigReal integrate_gl(const RealFn& f, const BigReal& a, const BigReal& b,
                     unsigned order, const PrecisionContext& ctx);

// Uniform panels over [a, b], count doubled until the increment drops below
// tol; err is the last increment.
QuadratureResult integrate_panels(const RealFn& f, const BigReal& a, const BigReal& b,
                                  const PrecisionContext& ctx, const BigReal& tol,
                                  unsigned initial_panels = 4, unsigned order = 48);

// Geometrically graded panels accumulating toward the left endpoint a, for
// integrands with an algebraic (or logarithmic) endpoint factor. Panels shrink
// by 1/4 each step; the unreached sliver is bounded by geometric
// extrapolation of the last panel contributions and reported in err.
QuadratureResult integrate_graded_left(const RealFn& f, const BigReal& a, const BigReal& b,
                                       const PrecisionContext& ctx, const BigReal& tol,
                                       unsigned order = 48, unsigned max_panels = 4096);

// sum of integrals over [from, from+1], [from+1, from+2], ... stopping once a
// piece falls below tol; remainder extrapolated geometrically into err.
QuadratureResult integrate_unit_intervals(const RealFn& f, const BigReal& from,
                                          const PrecisionContext& ctx, const BigReal& tol,
                                          unsigned order = 48, unsigned max_units = 20000);

}  // namespace ramasum
