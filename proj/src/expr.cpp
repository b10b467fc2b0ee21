#include "subh/expr.hpp"

#include <cctype>
#include <cstdlib>
#include <memory>
#include <optional>

namespace subh {

namespace {

enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Re, Im, Abs, Log, Pow };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    Op op;
    double value = 0;  // Op::Const
    NodePtr a, b;
    std::size_t pos = 0;  // source offset, for error reports
    bool is_real = false;
};

struct Parser {
    const std::string& s;
    std::size_t i = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, i); }

    NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr, double v = 0,
                 std::size_t pos = 0) {
        auto n = std::make_shared<Node>();
        n->op = op;
        n->a = std::move(a);
        n->b = std::move(b);
        n->value = v;
        n->pos = pos;
        switch (op) {
            case Op::Const:
                n->is_real = true;
                break;
            case Op::Var:
                n->is_real = false;
                break;
            case Op::Re:
            case Op::Im:
            case Op::Abs:
                n->is_real = true;
                break;
            case Op::Log:
                if (!n->a->is_real)
                    throw ParseError("log() needs a real argument", n->pos);
                n->is_real = true;
                break;
            case Op::Pow:
                if (!n->a->is_real || !n->b->is_real)
                    throw ParseError("pow() needs real arguments", n->pos);
                n->is_real = true;
                break;
            case Op::Neg:
                n->is_real = n->a->is_real;
                break;
            default:
                n->is_real = n->a->is_real && n->b->is_real;
        }
        return n;
    }

    NodePtr parse() {
        NodePtr e = expr();
        skip_ws();
        if (i != s.size()) fail("unexpected trailing input");
        return e;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            skip_ws();
            std::size_t p = i;
            if (eat('+'))
                lhs = make(Op::Add, lhs, term(), 0, p);
            else if (eat('-'))
                lhs = make(Op::Sub, lhs, term(), 0, p);
            else
                return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = factor();
        for (;;) {
            skip_ws();
            std::size_t p = i;
            if (eat('*'))
                lhs = make(Op::Mul, lhs, factor(), 0, p);
            else if (eat('/'))
                lhs = make(Op::Div, lhs, factor(), 0, p);
            else
                return lhs;
        }
    }

    NodePtr factor() {
        skip_ws();
        std::size_t p = i;
        if (eat('-')) return make(Op::Neg, factor(), nullptr, 0, p);
        if (eat('+')) return factor();
        return primary();
    }

    NodePtr primary() {
        skip_ws();
        if (i >= s.size()) fail("unexpected end of expression");
        std::size_t p = i;
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            double v = std::strtod(s.c_str() + i, &end);
            if (end == s.c_str() + i) fail("bad number");
            i = end - s.c_str();
            return make(Op::Const, nullptr, nullptr, v, p);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) ++j;
            std::string word = s.substr(i, j - i);
            i = j;
            if (word == "z") return make(Op::Var, nullptr, nullptr, 0, p);
            Op op;
            int arity = 1;
            if (word == "re")
                op = Op::Re;
            else if (word == "im")
                op = Op::Im;
            else if (word == "abs")
                op = Op::Abs;
            else if (word == "log")
                op = Op::Log;
            else if (word == "pow") {
                op = Op::Pow;
                arity = 2;
            } else {
                i = p;
                fail("unknown identifier '" + word + "'");
            }
            if (!eat('(')) fail("expected '(' after " + word);
            NodePtr a = expr();
            NodePtr b;
            if (arity == 2) {
                if (!eat(',')) fail("pow() wants two arguments");
                b = expr();
            }
            if (!eat(')')) fail("expected ')'");
            return make(op, a, b, 0, p);
        }
        if (eat('(')) {
            NodePtr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

// Evaluation value: pure-real values stay in real IEEE arithmetic so that -inf
// propagates the way the field contract wants.
struct Val {
    bool real_only;
    double re, im;

    static Val real(double v) { return {true, v, 0}; }
    static Val cplx(double r, double i) { return {false, r, i}; }
};

[[noreturn]] void eval_fail(const std::string& msg, complexd z) {
    throw std::runtime_error(msg + " at point " + fmt(z));
}

Val eval_node(const Node& n, complexd z);

Val eval_bin(const Node& n, complexd z) {
    Val a = eval_node(*n.a, z);
    Val b = eval_node(*n.b, z);
    if (a.real_only && b.real_only) {
        switch (n.op) {
            case Op::Add: return Val::real(a.re + b.re);
            case Op::Sub: return Val::real(a.re - b.re);
            case Op::Mul: return Val::real(a.re * b.re);
            default:
                if (b.re == 0.0) eval_fail("division by zero", z);
                return Val::real(a.re / b.re);
        }
    }
    // Mixed/complex path: promote with explicit formulas (std::complex would
    // turn -inf*0 into NaN via its naive product rule even in benign cases).
    switch (n.op) {
        case Op::Add: return Val::cplx(a.re + b.re, a.im + b.im);
        case Op::Sub: return Val::cplx(a.re - b.re, a.im - b.im);
        case Op::Mul:
            if (a.real_only) return Val::cplx(a.re * b.re, a.re * b.im);
            if (b.real_only) return Val::cplx(a.re * b.re, a.im * b.re);
            return Val::cplx(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
        default: {
            double den = b.re * b.re + b.im * b.im;
            if (den == 0.0) eval_fail("division by zero", z);
            return Val::cplx((a.re * b.re + a.im * b.im) / den,
                             (a.im * b.re - a.re * b.im) / den);
        }
    }
}

Val eval_node(const Node& n, complexd z) {
    switch (n.op) {
        case Op::Const: return Val::real(n.value);
        case Op::Var: return Val::cplx(z.real(), z.imag());
        case Op::Neg: {
            Val a = eval_node(*n.a, z);
            return a.real_only ? Val::real(-a.re) : Val::cplx(-a.re, -a.im);
        }
        case Op::Re: {
            Val a = eval_node(*n.a, z);
            return Val::real(a.re);
        }
        case Op::Im: {
            Val a = eval_node(*n.a, z);
            return Val::real(a.real_only ? 0.0 : a.im);
        }
        case Op::Abs: {
            Val a = eval_node(*n.a, z);
            return Val::real(a.real_only ? std::fabs(a.re) : std::hypot(a.re, a.im));
        }
        case Op::Log: {
            Val a = eval_node(*n.a, z);
            if (a.re < 0) eval_fail("log of a negative value", z);
            return Val::real(a.re == 0.0 ? neg_inf : std::log(a.re));
        }
        case Op::Pow: {
            Val a = eval_node(*n.a, z);
            Val b = eval_node(*n.b, z);
            return Val::real(std::pow(a.re, b.re));
        }
        default: return eval_bin(n, z);
    }
}

// --- pretty printing (labels must re-parse to an equal field) ---

int precedence(Op op) {
    switch (op) {
        case Op::Add:
        case Op::Sub: return 1;
        case Op::Mul:
        case Op::Div: return 2;
        case Op::Neg: return 3;
        default: return 4;
    }
}

std::string const_literal(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    if (std::strtod(buf, nullptr) != v) std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string print_node(const Node& n);

std::string print_child(const Node& child, int parent_prec, bool rhs) {
    std::string s = print_node(child);
    int cp = precedence(child.op);
    bool parens = cp < parent_prec || (rhs && cp == parent_prec);
    if (child.op == Op::Const && child.value < 0) parens = true;
    return parens ? "(" + s + ")" : s;
}

std::string print_node(const Node& n) {
    switch (n.op) {
        case Op::Const: return const_literal(n.value);
        case Op::Var: return "z";
        case Op::Add: return print_child(*n.a, 1, false) + " + " + print_child(*n.b, 1, true);
        case Op::Sub: return print_child(*n.a, 1, false) + " - " + print_child(*n.b, 1, true);
        case Op::Mul: return print_child(*n.a, 2, false) + "*" + print_child(*n.b, 2, true);
        case Op::Div: return print_child(*n.a, 2, false) + "/" + print_child(*n.b, 2, true);
        case Op::Neg: return "-" + print_child(*n.a, 3, true);
        case Op::Re: return "re(" + print_node(*n.a) + ")";
        case Op::Im: return "im(" + print_node(*n.a) + ")";
        case Op::Abs: return "abs(" + print_node(*n.a) + ")";
        case Op::Log: return "log(" + print_node(*n.a) + ")";
        case Op::Pow: return "pow(" + print_node(*n.a) + ", " + print_node(*n.b) + ")";
    }
    return "?";
}

// --- log-atom extraction ---

bool contains_var(const Node& n) {
    if (n.op == Op::Var) return true;
    if (n.a && contains_var(*n.a)) return true;
    if (n.b && contains_var(*n.b)) return true;
    return false;
}

// Fold a z-free subtree to its value.
std::optional<double> const_value(const Node& n) {
    if (contains_var(n)) return std::nullopt;
    Val v = eval_node(n, complexd(0, 0));
    if (!v.real_only) return std::nullopt;
    if (!std::isfinite(v.re)) return std::nullopt;
    return v.re;
}

// Recognize alpha*z + beta.
struct Linear {
    complexd alpha, beta;
};

std::optional<Linear> linear_form(const Node& n) {
    switch (n.op) {
        case Op::Var: return Linear{complexd(1, 0), complexd(0, 0)};
        case Op::Const: return Linear{complexd(0, 0), complexd(n.value, 0)};
        case Op::Neg: {
            auto a = linear_form(*n.a);
            if (!a) return std::nullopt;
            return Linear{-a->alpha, -a->beta};
        }
        case Op::Add:
        case Op::Sub: {
            auto a = linear_form(*n.a);
            auto b = linear_form(*n.b);
            if (!a || !b) return std::nullopt;
            double s = n.op == Op::Add ? 1.0 : -1.0;
            return Linear{a->alpha + s * b->alpha, a->beta + s * b->beta};
        }
        case Op::Mul: {
            if (auto c = const_value(*n.a)) {
                auto b = linear_form(*n.b);
                if (!b) return std::nullopt;
                return Linear{*c * b->alpha, *c * b->beta};
            }
            if (auto c = const_value(*n.b)) {
                auto a = linear_form(*n.a);
                if (!a) return std::nullopt;
                return Linear{*c * a->alpha, *c * a->beta};
            }
            return std::nullopt;
        }
        case Op::Div: {
            auto c = const_value(*n.b);
            if (!c || *c == 0.0) return std::nullopt;
            auto a = linear_form(*n.a);
            if (!a) return std::nullopt;
            return Linear{a->alpha / *c, a->beta / *c};
        }
        default: return std::nullopt;
    }
}

// Try to see a term as coef * ln|alpha*z + beta|; weight k for
// log(pow(abs(.),k)).  Returns the atom and the constant ln|alpha| shift.
struct AtomMatch {
    complexd point;
    double weight;
    double constant_shift;
};

std::optional<AtomMatch> match_log_atom(const Node& n, double coef) {
    switch (n.op) {
        case Op::Neg: return match_log_atom(*n.a, -coef);
        case Op::Mul: {
            if (auto c = const_value(*n.a)) return match_log_atom(*n.b, coef * *c);
            if (auto c = const_value(*n.b)) return match_log_atom(*n.a, coef * *c);
            return std::nullopt;
        }
        case Op::Div: {
            auto c = const_value(*n.b);
            if (!c || *c == 0.0) return std::nullopt;
            return match_log_atom(*n.a, coef / *c);
        }
        case Op::Log: {
            const Node* inner = n.a.get();
            double power = 1.0;
            if (inner->op == Op::Pow && inner->a->op == Op::Abs) {
                auto k = const_value(*inner->b);
                if (!k) return std::nullopt;
                power = *k;
                inner = inner->a.get();
            }
            if (inner->op != Op::Abs) return std::nullopt;
            auto lin = linear_form(*inner->a);
            if (!lin || lin->alpha == complexd(0, 0)) return std::nullopt;
            double w = coef * power;
            return AtomMatch{-lin->beta / lin->alpha, w, w * std::log(std::abs(lin->alpha))};
        }
        default: return std::nullopt;
    }
}

// Split the top-level sum into signed terms.
void collect_terms(const NodePtr& n, double sign,
                   std::vector<std::pair<NodePtr, double>>& out) {
    if (n->op == Op::Add) {
        collect_terms(n->a, sign, out);
        collect_terms(n->b, sign, out);
    } else if (n->op == Op::Sub) {
        collect_terms(n->a, sign, out);
        collect_terms(n->b, -sign, out);
    } else if (n->op == Op::Neg) {
        collect_terms(n->a, -sign, out);
    } else {
        out.emplace_back(n, sign);
    }
}

}  // namespace

ScalarField parse_field(const std::string& text, Domain domain) {
    Parser parser(text);
    NodePtr root = parser.parse();
    if (!root->is_real) throw ParseError("non-real top-level type", root->pos);

    std::vector<std::pair<NodePtr, double>> terms;
    collect_terms(root, 1.0, terms);

    ScalarField f;
    f.domain = domain;
    f.label = print_node(*root);
    std::vector<std::pair<NodePtr, double>> residual;
    std::vector<LogAtom> raw_atoms;
    for (const auto& [node, sign] : terms) {
        if (auto c = const_value(*node)) {
            f.constant += sign * *c;
            continue;
        }
        if (auto atom = match_log_atom(*node, sign)) {
            raw_atoms.push_back({atom->point, atom->weight});
            f.constant += atom->constant_shift;
            continue;
        }
        residual.emplace_back(node, sign);
    }
    // merge duplicate atom points deterministically
    {
        ScalarField tmp;
        tmp.atoms = std::move(raw_atoms);
        ScalarField zero;
        f.atoms = (tmp + zero).atoms;
    }
    if (!residual.empty()) {
        f.smooth = [residual](complexd z) {
            double acc = 0;
            for (const auto& [node, sign] : residual) {
                Val v = eval_node(*node, z);
                acc += sign * v.re;
            }
            return acc;
        };
    }
    return f;
}

}  // namespace subh
