// series_expr.hpp — textual series terms a(n) / a(n, z) parsed into an
// immutable differentiable AST. Harmonic factors are interpolated through
// polygamma (H_x^{(j)} = (-1)^{j-1}/(j-1)! psi^{(j-1)}(x+1) + zeta(j), with
// zeta(1) read as gamma), never by rounding the index.
//
// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('-')? power
//   power  := atom ('^' power)?          (right associative)
//   atom   := number | 'n' | 'z' | func '(' args ')' | '(' expr ')'
//   func   := exp | log | H
//   number := integer ('/' integer)? | decimal
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ramasum/precision.hpp"
#include "ramasum/rational.hpp"

namespace ramasum {

enum class NodeKind {
    RationalConst,
    VarN,
    ParamZ,
    Add,   // binary in parse trees, n-ary in canonical form
    Sub,
    Mul,   // binary in parse trees; canonical: value = coefficient, kids = factors
    Div,
    Neg,
    Pow,   // kids = {base, exponent}; exponent folds to a rational constant
    Exp,
    Log,
    Harmonic,   // order j >= 1, kids = {argument}
    PolyGamma,  // psi^{(m)}, internal (produced by differentiation), kids = {argument}
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    NodeKind kind;
    Rational value;             // RationalConst payload, or canonical Mul coefficient
    long order = 0;             // Harmonic j / PolyGamma m
    std::vector<ExprPtr> kids;
};

class SeriesExpr {
public:
    SeriesExpr() = default;
    explicit SeriesExpr(ExprPtr root) : root_(std::move(root)) {}
    const ExprPtr& root() const { return root_; }
    bool empty() const { return root_ == nullptr; }

private:
    ExprPtr root_;
};

// Growth classification driving strategy dispatch. `rate` is the literal
// coefficient c of exp(c n) (positive = growing); `degree` the net power of n.
struct GrowthClass {
    enum class Kind { ExponentialGrowing, PolynomialBounded, ConvergentDecaying };
    Kind kind;
    BigReal rate;      // ExponentialGrowing: c > 0; ConvergentDecaying: decay rate >= 0
    Rational degree;   // PolynomialBounded / power-decay order
};

SeriesExpr parse(const std::string& text);
std::string to_string(const SeriesExpr& expr);

// Canonical form: Sub/Div/Neg eliminated, Add/Mul flattened and sorted,
// constants folded, like terms and like factors collected.
SeriesExpr canonical(const SeriesExpr& expr);
bool structurally_equal(const SeriesExpr& a, const SeriesExpr& b);
bool references_z(const SeriesExpr& expr);

BigReal evaluate(const SeriesExpr& expr, const BigReal& x,
                 const std::optional<BigReal>& z, const PrecisionContext& ctx);

// Symbolic d/dn; repeated application yields the high derivatives consumed by
// the Euler-Maclaurin remainder machinery.
SeriesExpr differentiate(const SeriesExpr& expr);

GrowthClass classify_growth(const SeriesExpr& expr, const std::optional<BigReal>& z,
                            const PrecisionContext& ctx);

// node constructors (shared by the engine's catalog matcher and tests)
ExprPtr make_rational(const Rational& q);
ExprPtr make_var_n();
ExprPtr make_param_z();
ExprPtr make_node(NodeKind kind, std::vector<ExprPtr> kids, const Rational& value = Rational(0),
                  long order = 0);

}  // namespace ramasum
