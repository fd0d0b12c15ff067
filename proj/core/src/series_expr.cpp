#include "ramasum/series_expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ramasum/special_functions.hpp"

namespace ramasum {

ExprPtr make_rational(const Rational& q) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::RationalConst;
    n->value = q;
    return n;
}

ExprPtr make_var_n() {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::VarN;
    return n;
}

ExprPtr make_param_z() {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::ParamZ;
    return n;
}

ExprPtr make_node(NodeKind kind, std::vector<ExprPtr> kids, const Rational& value, long order) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->value = value;
    n->order = order;
    n->kids = std::move(kids);
    return n;
}

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    [[noreturn]] void fail(const std::string& msg, size_t at) {
        throw SyntaxError(msg, static_cast<int>(at) + 1);
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }

    bool consume(char c) {
        if (peek_is(c)) {
            ++pos;
            return true;
        }
        return false;
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        for (;;) {
            skip_ws();
            if (pos >= s.size()) break;
            char c = s[pos];
            if (c != '+' && c != '-') break;
            size_t opcol = pos;
            ++pos;
            ExprPtr rhs;
            try {
                rhs = parse_term();
            } catch (const SyntaxError&) {
                fail(std::string("missing right operand for '") + c + "'", opcol);
            }
            lhs = make_node(c == '+' ? NodeKind::Add : NodeKind::Sub, {lhs, rhs});
        }
        return lhs;
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        for (;;) {
            skip_ws();
            if (pos >= s.size()) break;
            char c = s[pos];
            if (c != '*' && c != '/') break;
            size_t opcol = pos;
            ++pos;
            ExprPtr rhs;
            try {
                rhs = parse_factor();
            } catch (const SyntaxError&) {
                fail(std::string("missing right operand for '") + c + "'", opcol);
            }
            lhs = make_node(c == '*' ? NodeKind::Mul : NodeKind::Div, {lhs, rhs});
        }
        return lhs;
    }

    ExprPtr parse_factor() {
        skip_ws();
        if (consume('-')) {
            // unary minus spans the rest of the multiplicative term:
            // -n*z parses as Neg(Mul(n, z))
            ExprPtr inner = parse_power();
            for (;;) {
                skip_ws();
                if (pos >= s.size()) break;
                char c = s[pos];
                if (c != '*' && c != '/') break;
                size_t opcol = pos;
                ++pos;
                ExprPtr rhs;
                try {
                    rhs = parse_factor();
                } catch (const SyntaxError&) {
                    fail(std::string("missing right operand for '") + c + "'", opcol);
                }
                inner = make_node(c == '*' ? NodeKind::Mul : NodeKind::Div, {inner, rhs});
            }
            return make_node(NodeKind::Neg, {inner});
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        skip_ws();
        if (pos < s.size() && s[pos] == '^') {
            size_t opcol = pos;
            ++pos;
            ExprPtr expo;
            try {
                expo = parse_power();  // right associative
            } catch (const SyntaxError&) {
                fail("missing exponent for '^'", opcol);
            }
            expo = fold_constant(expo, opcol);
            return make_node(NodeKind::Pow, {base, expo});
        }
        return base;
    }

    // exponents (and H orders) must fold to rational constants
    ExprPtr fold_constant(const ExprPtr& e, size_t at) {
        ExprPtr folded;
        try {
            folded = canonical(SeriesExpr(e)).root();
        } catch (const Error&) {
            folded = nullptr;
        }
        if (!folded || folded->kind != NodeKind::RationalConst)
            fail("exponent must be a rational constant", at);
        return folded;
    }

    ExprPtr parse_atom() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input", pos);
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (c == '(') {
            ++pos;
            ExprPtr inner = parse_expr();
            skip_ws();
            if (!consume(')')) fail("expected ')'", pos);
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
            std::string name = s.substr(start, pos - start);
            skip_ws();
            bool call = pos < s.size() && s[pos] == '(';
            if (!call) {
                if (name == "n") return make_var_n();
                if (name == "z") return make_param_z();
                fail("unknown symbol '" + name + "'", start);
            }
            ++pos;  // '('
            std::vector<ExprPtr> args;
            skip_ws();
            if (!peek_is(')')) {
                args.push_back(parse_expr());
                while (consume(',')) args.push_back(parse_expr());
            }
            skip_ws();
            if (!consume(')')) fail("expected ')'", pos);
            if (name == "exp") {
                if (args.size() != 1) fail("exp takes one argument", start);
                return make_node(NodeKind::Exp, {args[0]});
            }
            if (name == "log") {
                if (args.size() != 1) fail("log takes one argument", start);
                return make_node(NodeKind::Log, {args[0]});
            }
            if (name == "H") {
                if (args.empty() || args.size() > 2) fail("H takes one or two arguments", start);
                long j = 1;
                if (args.size() == 2) {
                    if (args[1]->kind != NodeKind::RationalConst ||
                        args[1]->value.get_den() != 1 || args[1]->value < 1)
                        fail("H order must be a positive integer", start);
                    j = static_cast<long>(args[1]->value.get_num().get_si());
                }
                return make_node(NodeKind::Harmonic, {args[0]}, Rational(0), j);
            }
            throw UnknownFunctionError("unknown function '" + name + "'");
        }
        fail(std::string("unexpected character '") + c + "'", pos);
    }

    ExprPtr parse_number() {
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        bool is_decimal = false;
        if (pos < s.size() && s[pos] == '.') {
            is_decimal = true;
            ++pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        std::string lit = s.substr(start, pos - start);
        if (!is_decimal) {
            // greedy rational literal: integer '/' integer
            size_t save = pos;
            skip_ws();
            if (pos < s.size() && s[pos] == '/') {
                size_t slash = pos;
                ++pos;
                skip_ws();
                size_t dstart = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                if (pos > dstart &&
                    !(pos < s.size() && s[pos] == '.')) {  // "1/2.5" is a division
                    std::string den = s.substr(dstart, pos - dstart);
                    if (den.find_first_not_of('0') == std::string::npos)
                        fail("zero denominator in rational literal", slash);
                    return make_rational(rational_from_string(lit + "/" + den));
                }
                pos = save;
            } else {
                pos = save;
            }
        }
        return make_rational(rational_from_string(lit));
    }
};

}  // namespace

SeriesExpr parse(const std::string& text) {
    if (text.empty()) throw SyntaxError("empty input", 1);
    Parser p(text);
    ExprPtr root = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size())
        throw SyntaxError("unexpected trailing input", static_cast<int>(p.pos) + 1);
    return SeriesExpr(root);
}

// ---------------------------------------------------------------------------
// printing
// ---------------------------------------------------------------------------

namespace {

int precedence(NodeKind k) {
    switch (k) {
        case NodeKind::Add:
        case NodeKind::Sub: return 1;
        case NodeKind::Mul:
        case NodeKind::Div: return 2;
        case NodeKind::Neg: return 3;
        case NodeKind::Pow: return 4;
        default: return 5;
    }
}

void print_node(const ExprPtr& e, std::ostream& os, int parent_prec);

void print_child(const ExprPtr& e, std::ostream& os, int prec) {
    bool need = precedence(e->kind) < prec ||
                (e->kind == NodeKind::RationalConst && sgn(e->value) < 0 && prec >= 2) ||
                (e->kind == NodeKind::RationalConst && e->value.get_den() != 1 && prec >= 2);
    if (need) os << '(';
    print_node(e, os, 0);
    if (need) os << ')';
}

void print_node(const ExprPtr& e, std::ostream& os, int) {
    switch (e->kind) {
        case NodeKind::RationalConst:
            os << e->value.get_str();
            return;
        case NodeKind::VarN: os << 'n'; return;
        case NodeKind::ParamZ: os << 'z'; return;
        case NodeKind::Add:
        case NodeKind::Sub: {
            if (e->kids.empty()) {  // canonical n-ary
                os << '0';
                return;
            }
            print_child(e->kids[0], os, 1);
            for (size_t i = 1; i < e->kids.size(); ++i) {
                os << (e->kind == NodeKind::Sub ? " - " : " + ");
                print_child(e->kids[i], os, 2);
            }
            return;
        }
        case NodeKind::Mul: {
            bool first = true;
            if (e->value != 0 && !(e->value == 1 && !e->kids.empty())) {
                // canonical coefficient (parse-tree Mul keeps value = 0)
                os << e->value.get_str();
                first = false;
            }
            for (const auto& k : e->kids) {
                if (!first) os << '*';
                print_child(k, os, 3);
                first = false;
            }
            if (first) os << '1';
            return;
        }
        case NodeKind::Div:
            print_child(e->kids[0], os, 2);
            os << '/';
            print_child(e->kids[1], os, 3);
            return;
        case NodeKind::Neg:
            os << '-';
            print_child(e->kids[0], os, 3);
            return;
        case NodeKind::Pow:
            print_child(e->kids[0], os, 5);
            os << '^';
            print_child(e->kids[1], os, 5);
            return;
        case NodeKind::Exp:
            os << "exp(";
            print_node(e->kids[0], os, 0);
            os << ')';
            return;
        case NodeKind::Log:
            os << "log(";
            print_node(e->kids[0], os, 0);
            os << ')';
            return;
        case NodeKind::Harmonic:
            os << "H(";
            print_node(e->kids[0], os, 0);
            if (e->order != 1) os << "," << e->order;
            os << ')';
            return;
        case NodeKind::PolyGamma:
            os << "psi(" << e->order << ",";
            print_node(e->kids[0], os, 0);
            os << ')';
            return;
    }
}

}  // namespace

std::string to_string(const SeriesExpr& expr) {
    if (expr.empty()) return "";
    std::ostringstream os;
    print_node(expr.root(), os, 0);
    return os.str();
}

// ---------------------------------------------------------------------------
// canonical form
// ---------------------------------------------------------------------------

namespace {

int kind_rank(NodeKind k) { return static_cast<int>(k); }

int compare_nodes(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind) return kind_rank(a->kind) < kind_rank(b->kind) ? -1 : 1;
    if (a->order != b->order) return a->order < b->order ? -1 : 1;
    if (a->kind == NodeKind::RationalConst || a->kind == NodeKind::Mul) {
        int c = cmp(a->value, b->value);
        if (c != 0) return c < 0 ? -1 : 1;
    }
    if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
    for (size_t i = 0; i < a->kids.size(); ++i) {
        int c = compare_nodes(a->kids[i], b->kids[i]);
        if (c != 0) return c;
    }
    return 0;
}

bool node_equal(const ExprPtr& a, const ExprPtr& b) { return compare_nodes(a, b) == 0; }

Rational as_rational_or_throw(const ExprPtr& e) {
    if (e->kind != NodeKind::RationalConst)
        throw DomainError("exponent must fold to a rational constant");
    return e->value;
}

ExprPtr canon(const ExprPtr& e);

// decompose a canonical node into coefficient * sorted factor list
void split_term(const ExprPtr& e, Rational& coeff, std::vector<ExprPtr>& factors) {
    if (e->kind == NodeKind::RationalConst) {
        coeff = e->value;
        return;
    }
    if (e->kind == NodeKind::Mul) {
        coeff = e->value;
        factors = e->kids;
        return;
    }
    coeff = 1;
    factors = {e};
}

ExprPtr make_canonical_mul(Rational coeff, std::vector<ExprPtr> factors) {
    if (coeff == 0) return make_rational(Rational(0));
    // merge equal bases: represent every factor as (base, rational exponent)
    std::vector<std::pair<ExprPtr, Rational>> merged;
    for (auto& f : factors) {
        ExprPtr base = f;
        Rational expo(1);
        if (f->kind == NodeKind::Pow) {
            base = f->kids[0];
            expo = f->kids[1]->value;
        }
        if (base->kind == NodeKind::RationalConst) {
            // rational^integer folds into coeff
            if (expo.get_den() == 1) {
                long k = static_cast<long>(expo.get_num().get_si());
                Rational p(1);
                Rational b = base->value;
                if (k < 0) {
                    if (b == 0) throw DomainError("division by zero constant");
                    b = 1 / b;
                    k = -k;
                }
                for (long i = 0; i < k; ++i) p *= b;
                coeff *= p;
                continue;
            }
        }
        bool found = false;
        for (auto& m : merged)
            if (node_equal(m.first, base)) {
                m.second += expo;
                found = true;
                break;
            }
        if (!found) merged.emplace_back(base, expo);
    }
    if (coeff == 0) return make_rational(Rational(0));
    std::vector<ExprPtr> out;
    for (auto& m : merged) {
        if (m.second == 0) continue;
        if (m.second == 1) {
            out.push_back(m.first);
        } else if (m.first->kind == NodeKind::Exp) {
            // keep exp powers in the unique form exp(q u)
            ExprPtr arg = make_node(NodeKind::Mul, {make_rational(m.second), m.first->kids[0]});
            out.push_back(make_node(NodeKind::Exp, {canon(arg)}));
        } else {
            out.push_back(make_node(NodeKind::Pow, {m.first, make_rational(m.second)}));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const ExprPtr& a, const ExprPtr& b) { return compare_nodes(a, b) < 0; });
    if (out.empty()) return make_rational(coeff);
    if (out.size() == 1 && coeff == 1) return out[0];
    return make_node(NodeKind::Mul, std::move(out), coeff);
}

ExprPtr make_canonical_add(std::vector<ExprPtr> terms) {
    // collect like factor-lists
    std::vector<std::pair<ExprPtr, Rational>> groups;  // (factor-key as Mul coeff 1, coeff)
    for (auto& t : terms) {
        if (t->kind == NodeKind::RationalConst && t->value == 0) continue;
        Rational c;
        std::vector<ExprPtr> f;
        split_term(t, c, f);
        ExprPtr key = f.empty() ? make_rational(Rational(1))
                                : (f.size() == 1 ? f[0] : make_node(NodeKind::Mul, f, Rational(1)));
        bool found = false;
        for (auto& g : groups)
            if (node_equal(g.first, key)) {
                g.second += c;
                found = true;
                break;
            }
        if (!found) groups.emplace_back(key, c);
    }
    std::vector<ExprPtr> out;
    for (auto& g : groups) {
        if (g.second == 0) continue;
        Rational c;
        std::vector<ExprPtr> f;
        split_term(g.first, c, f);
        out.push_back(make_canonical_mul(g.second * c, f));
    }
    std::sort(out.begin(), out.end(),
              [](const ExprPtr& a, const ExprPtr& b) { return compare_nodes(a, b) < 0; });
    if (out.empty()) return make_rational(Rational(0));
    if (out.size() == 1) return out[0];
    return make_node(NodeKind::Add, std::move(out));
}

ExprPtr canon(const ExprPtr& e) {
    switch (e->kind) {
        case NodeKind::RationalConst:
        case NodeKind::VarN:
        case NodeKind::ParamZ:
            return e;
        case NodeKind::Add: {
            std::vector<ExprPtr> terms;
            for (auto& k : e->kids) {
                ExprPtr c = canon(k);
                if (c->kind == NodeKind::Add)
                    terms.insert(terms.end(), c->kids.begin(), c->kids.end());
                else
                    terms.push_back(c);
            }
            return make_canonical_add(std::move(terms));
        }
        case NodeKind::Sub: {
            ExprPtr a = canon(e->kids[0]);
            ExprPtr b = canon(make_node(NodeKind::Mul, {make_rational(Rational(-1)), e->kids[1]}));
            return canon(make_node(NodeKind::Add, {a, b}));
        }
        case NodeKind::Neg:
            return canon(make_node(NodeKind::Mul, {make_rational(Rational(-1)), e->kids[0]}));
        case NodeKind::Div: {
            ExprPtr inv = make_node(NodeKind::Pow, {e->kids[1], make_rational(Rational(-1))});
            return canon(make_node(NodeKind::Mul, {e->kids[0], inv}));
        }
        case NodeKind::Mul: {
            // flatten; gather coefficient and factors
            Rational coeff(1);
            std::vector<ExprPtr> factors;
            std::vector<ExprPtr> stack(e->kids.begin(), e->kids.end());
            if (e->value != 0) coeff = e->value;  // canonical Mul being re-canonicalized
            std::vector<ExprPtr> adds;  // distribute single level of Add factors
            for (auto& k : stack) {
                ExprPtr c = canon(k);
                if (c->kind == NodeKind::RationalConst) {
                    coeff *= c->value;
                } else if (c->kind == NodeKind::Mul) {
                    coeff *= c->value;
                    factors.insert(factors.end(), c->kids.begin(), c->kids.end());
                } else if (c->kind == NodeKind::Add) {
                    adds.push_back(c);
                } else {
                    factors.push_back(c);
                }
            }
            if (!adds.empty()) {
                // expand products over sums to keep collection effective
                std::vector<ExprPtr> terms = {make_canonical_mul(coeff, factors)};
                for (auto& a : adds) {
                    std::vector<ExprPtr> next;
                    for (auto& t : terms)
                        for (auto& s : a->kids)
                            next.push_back(canon(make_node(NodeKind::Mul, {t, s})));
                    terms = std::move(next);
                }
                return make_canonical_add(std::move(terms));
            }
            return make_canonical_mul(coeff, std::move(factors));
        }
        case NodeKind::Pow: {
            ExprPtr base = canon(e->kids[0]);
            ExprPtr expo = canon(e->kids[1]);
            Rational q = as_rational_or_throw(expo);
            if (q == 0) return make_rational(Rational(1));
            if (q == 1) return base;
            if (base->kind == NodeKind::Pow) {
                Rational inner = base->kids[1]->value;
                return canon(make_node(NodeKind::Pow, {base->kids[0], make_rational(inner * q)}));
            }
            if (base->kind == NodeKind::RationalConst && q.get_den() == 1) {
                return make_canonical_mul(Rational(1),
                                          {make_node(NodeKind::Pow, {base, make_rational(q)})});
            }
            if (base->kind == NodeKind::Mul && q.get_den() == 1) {
                // (c * f1 * f2)^k distributes safely for integer k
                std::vector<ExprPtr> fs;
                for (auto& f : base->kids)
                    fs.push_back(make_node(NodeKind::Pow, {f, make_rational(q)}));
                ExprPtr cpow = make_node(
                    NodeKind::Pow, {make_rational(base->value), make_rational(q)});
                fs.push_back(cpow);
                return canon(make_node(NodeKind::Mul, fs, Rational(1)));
            }
            if (base->kind == NodeKind::Exp) {
                // exp(u)^q = exp(q u)
                ExprPtr arg =
                    canon(make_node(NodeKind::Mul, {make_rational(q), base->kids[0]}));
                return make_node(NodeKind::Exp, {arg});
            }
            return make_node(NodeKind::Pow, {base, make_rational(q)});
        }
        case NodeKind::Exp: {
            ExprPtr arg = canon(e->kids[0]);
            if (arg->kind == NodeKind::RationalConst && arg->value == 0)
                return make_rational(Rational(1));
            return make_node(NodeKind::Exp, {arg});
        }
        case NodeKind::Log: {
            ExprPtr arg = canon(e->kids[0]);
            if (arg->kind == NodeKind::RationalConst && arg->value == 1)
                return make_rational(Rational(0));
            return make_node(NodeKind::Log, {arg});
        }
        case NodeKind::Harmonic:
        case NodeKind::PolyGamma: {
            ExprPtr arg = canon(e->kids[0]);
            return make_node(e->kind, {arg}, Rational(0), e->order);
        }
    }
    throw Error("canon: unreachable");
}

}  // namespace

SeriesExpr canonical(const SeriesExpr& expr) {
    if (expr.empty()) return expr;
    return SeriesExpr(canon(expr.root()));
}

bool structurally_equal(const SeriesExpr& a, const SeriesExpr& b) {
    if (a.empty() || b.empty()) return a.empty() == b.empty();
    return node_equal(canon(a.root()), canon(b.root()));
}

namespace {
bool refs_z(const ExprPtr& e) {
    if (e->kind == NodeKind::ParamZ) return true;
    for (auto& k : e->kids)
        if (refs_z(k)) return true;
    return false;
}
}  // namespace

bool references_z(const SeriesExpr& expr) { return !expr.empty() && refs_z(expr.root()); }

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

namespace {

BigReal eval_node(const ExprPtr& e, const BigReal& x, const std::optional<BigReal>& z,
                  const PrecisionContext& ctx) {
    switch (e->kind) {
        case NodeKind::RationalConst: return to_bigreal(e->value, ctx);
        case NodeKind::VarN: return x;
        case NodeKind::ParamZ:
            if (!z) throw MissingParam("expression references z but no z was given");
            return *z;
        case NodeKind::Add: {
            BigReal acc = BigReal::zero(ctx);
            for (auto& k : e->kids) acc += eval_node(k, x, z, ctx);
            return acc;
        }
        case NodeKind::Sub:
            return eval_node(e->kids[0], x, z, ctx) - eval_node(e->kids[1], x, z, ctx);
        case NodeKind::Mul: {
            // parse trees carry value 0 (plain product); canonical Muls carry
            // their rational coefficient in value.
            BigReal acc = e->value == 0 ? BigReal::from_long(1, ctx) : to_bigreal(e->value, ctx);
            for (auto& k : e->kids) acc *= eval_node(k, x, z, ctx);
            return acc;
        }
        case NodeKind::Div: {
            BigReal den = eval_node(e->kids[1], x, z, ctx);
            if (den.is_zero()) throw DomainError("division by zero during evaluation");
            return eval_node(e->kids[0], x, z, ctx) / den;
        }
        case NodeKind::Neg: return -eval_node(e->kids[0], x, z, ctx);
        case NodeKind::Pow: {
            ExprPtr ex = e->kids[1]->kind == NodeKind::RationalConst
                             ? e->kids[1]
                             : canon(e->kids[1]);
            Rational q = as_rational_or_throw(ex);
            BigReal b = eval_node(e->kids[0], x, z, ctx);
            if (q.get_den() == 1) return pow_si(b, q.get_num().get_si(), ctx);
            return pow(b, to_bigreal(q, ctx), ctx);
        }
        case NodeKind::Exp: return exp(eval_node(e->kids[0], x, z, ctx), ctx);
        case NodeKind::Log: {
            BigReal a = eval_node(e->kids[0], x, z, ctx);
            return log(a, ctx);  // log throws DomainError on a <= 0
        }
        case NodeKind::Harmonic: {
            BigReal u = eval_node(e->kids[0], x, z, ctx);
            BigReal one = BigReal::from_long(1, ctx);
            long j = e->order;
            BigReal v = polygamma(static_cast<unsigned long>(j - 1), u + one, ctx);
            Rational c = Rational((j - 1) % 2 == 0 ? 1 : -1) / Rational(factorial(j - 1));
            return to_bigreal(c, ctx) * v + zeta_with_gamma_convention(j, ctx);
        }
        case NodeKind::PolyGamma: {
            BigReal u = eval_node(e->kids[0], x, z, ctx);
            return polygamma(static_cast<unsigned long>(e->order), u, ctx);
        }
    }
    throw Error("evaluate: unreachable");
}

}  // namespace

BigReal evaluate(const SeriesExpr& expr, const BigReal& x, const std::optional<BigReal>& z,
                 const PrecisionContext& ctx) {
    if (expr.empty()) throw DomainError("evaluate: empty expression");
    return eval_node(expr.root(), x, z, ctx);
}

// ---------------------------------------------------------------------------
// differentiation (w.r.t. n)
// ---------------------------------------------------------------------------

namespace {

ExprPtr diff_node(const ExprPtr& e);

ExprPtr mul2(const ExprPtr& a, const ExprPtr& b) {
    return make_node(NodeKind::Mul, {a, b}, Rational(1));
}

ExprPtr diff_node(const ExprPtr& e) {
    switch (e->kind) {
        case NodeKind::RationalConst:
        case NodeKind::ParamZ:
            return make_rational(Rational(0));
        case NodeKind::VarN: return make_rational(Rational(1));
        case NodeKind::Add: {
            std::vector<ExprPtr> kids;
            for (auto& k : e->kids) kids.push_back(diff_node(k));
            return make_node(NodeKind::Add, std::move(kids));
        }
        case NodeKind::Sub:
            return make_node(NodeKind::Sub, {diff_node(e->kids[0]), diff_node(e->kids[1])});
        case NodeKind::Neg: return make_node(NodeKind::Neg, {diff_node(e->kids[0])});
        case NodeKind::Div: {
            // d(a/b) = (a'b - ab')/b^2
            ExprPtr a = e->kids[0], b = e->kids[1];
            ExprPtr num = make_node(NodeKind::Sub, {mul2(diff_node(a), b), mul2(a, diff_node(b))});
            ExprPtr den = make_node(NodeKind::Pow, {b, make_rational(Rational(2))});
            return make_node(NodeKind::Div, {num, den});
        }
        case NodeKind::Mul: {
            // n-ary Leibniz (also covers the binary parse form)
            std::vector<ExprPtr> terms;
            const auto& kids = e->kids;
            Rational coeff = e->value == 0 ? Rational(1) : e->value;
            for (size_t i = 0; i < kids.size(); ++i) {
                std::vector<ExprPtr> fs;
                for (size_t k = 0; k < kids.size(); ++k)
                    fs.push_back(k == i ? diff_node(kids[k]) : kids[k]);
                terms.push_back(make_node(NodeKind::Mul, std::move(fs), coeff));
            }
            if (terms.empty()) return make_rational(Rational(0));
            return make_node(NodeKind::Add, std::move(terms));
        }
        case NodeKind::Pow: {
            Rational q = as_rational_or_throw(e->kids[1]);
            // q u^{q-1} u'
            ExprPtr u = e->kids[0];
            ExprPtr p = make_node(NodeKind::Pow, {u, make_rational(q - 1)});
            return make_node(NodeKind::Mul, {p, diff_node(u)}, q);
        }
        case NodeKind::Exp: return mul2(diff_node(e->kids[0]), e);
        case NodeKind::Log: {
            ExprPtr inv = make_node(NodeKind::Pow, {e->kids[0], make_rational(Rational(-1))});
            return mul2(diff_node(e->kids[0]), inv);
        }
        case NodeKind::Harmonic: {
            // d H_j(u) = (-1)^{j-1}/(j-1)! psi^{(j)}(u+1) u'
            long j = e->order;
            ExprPtr shifted =
                make_node(NodeKind::Add, {e->kids[0], make_rational(Rational(1))});
            ExprPtr pg = make_node(NodeKind::PolyGamma, {shifted}, Rational(0), j);
            Rational c = Rational((j - 1) % 2 == 0 ? 1 : -1) / Rational(factorial(j - 1));
            return make_node(NodeKind::Mul, {pg, diff_node(e->kids[0])}, c);
        }
        case NodeKind::PolyGamma: {
            ExprPtr pg = make_node(NodeKind::PolyGamma, {e->kids[0]}, Rational(0), e->order + 1);
            return mul2(pg, diff_node(e->kids[0]));
        }
    }
    throw Error("differentiate: unreachable");
}

}  // namespace

SeriesExpr differentiate(const SeriesExpr& expr) {
    if (expr.empty()) throw DomainError("differentiate: empty expression");
    ExprPtr c = canon(expr.root());
    return SeriesExpr(canon(diff_node(c)));
}

// ---------------------------------------------------------------------------
// growth classification
// ---------------------------------------------------------------------------

namespace {

bool refs_n(const ExprPtr& e) {
    if (e->kind == NodeKind::VarN) return true;
    for (auto& k : e->kids)
        if (refs_n(k)) return true;
    return false;
}

}  // namespace

GrowthClass classify_growth(const SeriesExpr& expr, const std::optional<BigReal>& z,
                            const PrecisionContext& ctx) {
    if (expr.empty()) throw DomainError("classify_growth: empty expression");
    if (references_z(expr) && !z)
        throw MissingParam("classify_growth: expression references z but no z was given");
    ExprPtr c = canon(expr.root());

    std::vector<ExprPtr> terms =
        c->kind == NodeKind::Add ? c->kids : std::vector<ExprPtr>{c};

    struct TermGrowth {
        BigReal rate;
        Rational degree;
    };
    std::vector<TermGrowth> tg;
    BigReal one = BigReal::from_long(1, ctx);

    for (auto& t : terms) {
        Rational coeff;
        std::vector<ExprPtr> factors;
        split_term(t, coeff, factors);
        BigReal rate = BigReal::zero(ctx);
        Rational degree(0);
        for (auto& f : factors) {
            ExprPtr base = f;
            Rational expo(1);
            if (f->kind == NodeKind::Pow) {
                base = f->kids[0];
                expo = f->kids[1]->value;
            }
            switch (base->kind) {
                case NodeKind::VarN: degree += expo; break;
                case NodeKind::Exp: {
                    // exponential rate: d/dn of the argument must not contain n
                    SeriesExpr arg(base->kids[0]);
                    SeriesExpr d = differentiate(arg);
                    if (refs_n(d.root()))
                        throw InadmissibleError(
                            "classify_growth: super-exponential term exp(non-linear in n)");
                    BigReal r = evaluate(d, one, z, ctx);
                    rate += to_bigreal(expo, ctx) * r;
                    break;
                }
                case NodeKind::Log:
                case NodeKind::Harmonic:
                case NodeKind::PolyGamma:
                    break;  // sub-polynomial factors
                case NodeKind::ParamZ: break;  // constant in n
                default: break;
            }
        }
        tg.push_back(TermGrowth{rate, degree});
    }

    // dominant behaviour across terms
    bool have = false;
    BigReal max_rate = BigReal::zero(ctx);
    Rational deg(0);
    bool all_convergent = true;
    for (auto& t : tg) {
        if (!have || t.rate > max_rate) max_rate = t.rate;
        if (!have || t.degree > deg) deg = t.degree;
        have = true;
        bool conv = t.rate.sign() < 0 || (t.rate.is_zero() && t.degree < Rational(-1));
        if (!conv) all_convergent = false;
    }

    GrowthClass g{GrowthClass::Kind::PolynomialBounded, BigReal::zero(ctx), deg};
    if (max_rate.sign() > 0) {
        if (max_rate >= pi(ctx))
            throw InadmissibleError("classify_growth: exponential rate >= pi");
        g.kind = GrowthClass::Kind::ExponentialGrowing;
        g.rate = max_rate;
        return g;
    }
    if (all_convergent) {
        g.kind = GrowthClass::Kind::ConvergentDecaying;
        g.rate = -max_rate;  // 0 for pure power decay
        return g;
    }
    return g;
}

}  // namespace ramasum
