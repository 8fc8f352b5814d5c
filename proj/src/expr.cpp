#include "edgekit/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace edgekit::expr {
namespace {

const std::set<std::string> kFunctions{"sin", "cos",  "tan", "exp",
                                       "log", "sqrt", "atan"};

NodePtr make_literal(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::literal;
    n->value = v;
    return n;
}
NodePtr make_variable(char var) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::variable;
    n->var = var;
    return n;
}
NodePtr make_constant(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::constant;
    n->name = std::move(name);
    return n;
}
NodePtr make_unary(NodePtr operand) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::unary_minus;
    n->lhs = std::move(operand);
    return n;
}
NodePtr make_binary(char op, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::binary;
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}
NodePtr make_power(NodePtr base, int exponent) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::binary;
    n->op = '^';
    n->exponent = exponent;
    n->lhs = std::move(base);
    return n;
}
NodePtr make_call(std::string name, NodePtr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::call;
    n->name = std::move(name);
    n->lhs = std::move(arg);
    return n;
}

// ----- parser ------------------------------------------------------------

class Parser {
  public:
    explicit Parser(const std::string& text) : text_(text) {}

    NodePtr parse_full() {
        NodePtr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

    std::array<NodePtr, 3> parse_map_full() {
        skip_ws();
        std::array<NodePtr, 3> out;
        if (peek_identifier() == "map") {
            consume_identifier();
            expect('(');
            out[0] = parse_expr();
            expect(',');
            out[1] = parse_expr();
            expect(',');
            out[2] = parse_expr();
            expect(')');
            skip_ws();
            if (pos_ != text_.size()) fail("unexpected trailing input");
            return out;
        }
        out[0] = parse_expr();
        expect(';');
        out[1] = parse_expr();
        expect(';');
        out[2] = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return out;
    }

  private:
    [[noreturn]] void fail(const std::string& message) const {
        std::ostringstream os;
        os << message << " at position " << pos_;
        throw parse_error(os.str(), pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) {
            std::ostringstream os;
            os << "expected '" << c << "'";
            fail(os.str());
        }
    }

    std::string peek_identifier() {
        skip_ws();
        std::size_t p = pos_;
        if (p >= text_.size() ||
            !(std::isalpha(static_cast<unsigned char>(text_[p])) ||
              text_[p] == '_'))
            return {};
        std::size_t q = p;
        while (q < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[q])) ||
                text_[q] == '_'))
            ++q;
        return text_.substr(p, q - p);
    }
    std::string consume_identifier() {
        std::string id = peek_identifier();
        pos_ += id.size();
        return id;
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos_;
            lhs = make_binary(c, lhs, parse_term());
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            char c = peek();
            if (c != '*' && c != '/') return lhs;
            ++pos_;
            lhs = make_binary(c, lhs, parse_factor());
        }
    }

    NodePtr parse_factor() {
        if (accept('-')) return make_unary(parse_factor());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (!accept('^')) return base;
        skip_ws();
        std::size_t p = pos_;
        if (p >= text_.size() ||
            !std::isdigit(static_cast<unsigned char>(text_[p])))
            fail("expected integer exponent");
        int exponent = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + p,
                                         text_.data() + text_.size(), exponent);
        if (ec != std::errc()) fail("expected integer exponent");
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return make_power(base, exponent);
    }

    NodePtr parse_atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            NodePtr e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        std::string id = peek_identifier();
        if (!id.empty()) {
            consume_identifier();
            if (id == "u" || id == "v") return make_variable(id[0]);
            if (id == "pi") return make_constant("pi");
            if (kFunctions.count(id)) {
                expect('(');
                NodePtr arg = parse_expr();
                expect(')');
                return make_call(id, arg);
            }
            pos_ -= id.size();
            throw parse_error("unknown symbol " + id, pos_);
        }
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr parse_number() {
        skip_ws();
        double value = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + pos_,
                                         text_.data() + text_.size(), value);
        if (ec != std::errc()) fail("malformed number");
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return make_literal(value);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

// ----- printer -------------------------------------------------------------

int precedence_of(const Node& n) {
    switch (n.kind) {
        case Node::Kind::binary:
            if (n.op == '^') return 4;
            if (n.op == '*' || n.op == '/') return 2;
            return 1;
        case Node::Kind::unary_minus:
            return 3;
        default:
            return 5;  // atoms never need parentheses
    }
}

void print_rec(const NodePtr& ast, std::ostream& os, int parent_prec,
               bool right_operand) {
    const Node& n = *ast;
    const int prec = precedence_of(n);
    // Right operands of same-precedence '-' and '/' need parentheses because
    // those operators are left-associative.
    const bool parens = prec < parent_prec || (prec == parent_prec && right_operand);
    if (parens) os << '(';
    switch (n.kind) {
        case Node::Kind::literal: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            os << buf;
            break;
        }
        case Node::Kind::variable:
            os << n.var;
            break;
        case Node::Kind::constant:
            os << n.name;
            break;
        case Node::Kind::unary_minus:
            os << '-';
            print_rec(n.lhs, os, prec + 1, false);
            break;
        case Node::Kind::binary:
            if (n.op == '^') {
                print_rec(n.lhs, os, prec + 1, false);
                os << '^' << n.exponent;
            } else {
                print_rec(n.lhs, os, prec, false);
                os << ' ' << n.op << ' ';
                print_rec(n.rhs, os, prec, true);
            }
            break;
        case Node::Kind::call:
            os << n.name << '(';
            print_rec(n.lhs, os, 0, false);
            os << ')';
            break;
    }
    if (parens) os << ')';
}

// ----- elementary-function derivative tables --------------------------------
// Monomial coefficients of fn(c + x) as a univariate series in x, degree <= n.

std::vector<double> function_series(const std::string& name, double c, int n) {
    std::vector<double> d(n + 1, 0.0);
    const double tol = 1e-12;
    if (name == "sin" || name == "cos") {
        const double phase = (name == "sin") ? 0.0 : M_PI / 2;
        double fact = 1.0;
        for (int k = 0; k <= n; ++k) {
            if (k > 0) fact *= k;
            d[k] = std::sin(c + phase + k * M_PI / 2) / fact;
        }
    } else if (name == "exp") {
        const double e = std::exp(c);
        double fact = 1.0;
        for (int k = 0; k <= n; ++k) {
            if (k > 0) fact *= k;
            d[k] = e / fact;
        }
    } else if (name == "log") {
        if (c <= tol) throw eval_error("expression singular at basepoint");
        d[0] = std::log(c);
        double cpow = 1.0;
        for (int k = 1; k <= n; ++k) {
            cpow /= c;
            d[k] = ((k % 2 == 1) ? 1.0 : -1.0) * cpow / k;
        }
    } else if (name == "sqrt") {
        if (c <= tol) throw eval_error("expression singular at basepoint");
        double coeff = std::sqrt(c);
        d[0] = coeff;
        for (int k = 1; k <= n; ++k) {
            coeff *= (0.5 - (k - 1)) / k / c;
            d[k] = coeff;
        }
    } else if (name == "tan") {
        if (std::abs(std::cos(c)) <= tol)
            throw eval_error("expression singular at basepoint");
        // y(x) = tan(c+x) satisfies y' = 1 + y^2:
        // (k+1) d_{k+1} = [k == 0] + sum_{a+b=k} d_a d_b
        d[0] = std::tan(c);
        for (int k = 0; k < n; ++k) {
            double s = (k == 0) ? 1.0 : 0.0;
            for (int a = 0; a <= k; ++a) s += d[a] * d[k - a];
            d[k + 1] = s / (k + 1);
        }
    } else if (name == "atan") {
        // y' = 1/(1 + (c+x)^2); invert the quadratic as a series, integrate.
        const double q0 = 1 + c * c, q1 = 2 * c, q2 = 1;
        std::vector<double> r(std::max(n, 1), 0.0);  // series of 1/q
        r[0] = 1.0 / q0;
        for (int k = 1; k < n; ++k) {
            double s = q1 * r[k - 1] + (k >= 2 ? q2 * r[k - 2] : 0.0);
            r[k] = -s / q0;
        }
        d[0] = std::atan(c);
        for (int k = 1; k <= n; ++k) d[k] = r[k - 1] / k;
    } else {
        throw eval_error("unknown function " + name);
    }
    return d;
}

Jet2 compose_series(const std::vector<double>& d, const Jet2& arg) {
    const int n = arg.order();
    Jet2 w = arg;
    w.set_coeff(0, 0, 0.0);
    Jet2 r(n, d[n]);
    for (int k = n - 1; k >= 0; --k) r = r * w + d[k];
    return r.set_trusted(arg.trusted());
}

}  // namespace

NodePtr parse(const std::string& text) { return Parser(text).parse_full(); }

std::array<NodePtr, 3> parse_map(const std::string& text) {
    return Parser(text).parse_map_full();
}

std::string print(const NodePtr& ast) {
    std::ostringstream os;
    print_rec(ast, os, 0, false);
    return os.str();
}

bool structurally_equal(const NodePtr& a, const NodePtr& b) {
    if (!a || !b) return !a && !b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Node::Kind::literal:
            return a->value == b->value;
        case Node::Kind::variable:
            return a->var == b->var;
        case Node::Kind::constant:
            return a->name == b->name;
        case Node::Kind::unary_minus:
            return structurally_equal(a->lhs, b->lhs);
        case Node::Kind::binary:
            if (a->op != b->op) return false;
            if (a->op == '^')
                return a->exponent == b->exponent &&
                       structurally_equal(a->lhs, b->lhs);
            return structurally_equal(a->lhs, b->lhs) &&
                   structurally_equal(a->rhs, b->rhs);
        case Node::Kind::call:
            return a->name == b->name && structurally_equal(a->lhs, b->lhs);
    }
    return false;
}

double eval(const NodePtr& ast, double u, double v) {
    const Node& n = *ast;
    switch (n.kind) {
        case Node::Kind::literal:
            return n.value;
        case Node::Kind::variable:
            return n.var == 'u' ? u : v;
        case Node::Kind::constant:
            return M_PI;
        case Node::Kind::unary_minus:
            return -eval(n.lhs, u, v);
        case Node::Kind::binary: {
            if (n.op == '^') {
                double base = eval(n.lhs, u, v);
                double r = 1;
                for (int k = 0; k < n.exponent; ++k) r *= base;
                return r;
            }
            const double a = eval(n.lhs, u, v), b = eval(n.rhs, u, v);
            switch (n.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                default:  return a / b;
            }
        }
        case Node::Kind::call: {
            const double a = eval(n.lhs, u, v);
            if (n.name == "sin") return std::sin(a);
            if (n.name == "cos") return std::cos(a);
            if (n.name == "tan") return std::tan(a);
            if (n.name == "exp") return std::exp(a);
            if (n.name == "log") return std::log(a);
            if (n.name == "sqrt") return std::sqrt(a);
            return std::atan(a);
        }
    }
    return 0;
}

Jet2 elevate(const NodePtr& ast, int order, double u0, double v0) {
    const Node& n = *ast;
    switch (n.kind) {
        case Node::Kind::literal:
            return Jet2(order, n.value);
        case Node::Kind::variable:
            return Jet2::variable(order, n.var == 'u' ? Axis::u : Axis::v,
                                  n.var == 'u' ? u0 : v0);
        case Node::Kind::constant:
            return Jet2(order, M_PI);
        case Node::Kind::unary_minus:
            return -elevate(n.lhs, order, u0, v0);
        case Node::Kind::binary: {
            if (n.op == '^')
                return pow_jet(elevate(n.lhs, order, u0, v0), n.exponent);
            Jet2 a = elevate(n.lhs, order, u0, v0);
            Jet2 b = elevate(n.rhs, order, u0, v0);
            switch (n.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                default:
                    try {
                        return a * reciprocal(b);
                    } catch (const std::domain_error&) {
                        throw eval_error("expression singular at basepoint");
                    }
            }
        }
        case Node::Kind::call: {
            Jet2 arg = elevate(n.lhs, order, u0, v0);
            return compose_series(
                function_series(n.name, arg.constant_term(), order), arg);
        }
    }
    throw eval_error("malformed expression tree");
}

// ----- coefficient-table JSON ------------------------------------------

Jet2Vec3 load_table(const std::string& json_text) {
    nlohmann::json doc = nlohmann::json::parse(json_text);
    if (!doc.contains("order") || !doc["order"].is_number_integer())
        throw std::invalid_argument("coefficient table: missing integer order");
    const int order = doc["order"].get<int>();
    if (order < 0) throw std::invalid_argument("coefficient table: negative order");
    if (!doc.contains("components") || !doc["components"].is_array() ||
        doc["components"].size() != 3)
        throw std::invalid_argument(
            "coefficient table: expected exactly three components");

    std::array<Jet2, 3> comps{Jet2(order), Jet2(order), Jet2(order)};
    for (int c = 0; c < 3; ++c) {
        std::set<std::pair<int, int>> seen;
        for (const auto& entry : doc["components"][c]) {
            if (!entry.is_array() || entry.size() != 3)
                throw std::invalid_argument(
                    "coefficient table: entries must be [i, j, value]");
            const int i = entry[0].get<int>();
            const int j = entry[1].get<int>();
            const double value = entry[2].get<double>();
            if (i < 0 || j < 0 || i + j > order)
                throw std::invalid_argument(
                    "coefficient table: index beyond jet order");
            if (!std::isfinite(value))
                throw std::invalid_argument(
                    "coefficient table: non-finite value");
            if (!seen.emplace(i, j).second)
                throw std::invalid_argument(
                    "coefficient table: duplicate entry");
            comps[c].set_coeff(i, j, value);
        }
    }
    return {comps[0], comps[1], comps[2]};
}

std::string save_table(const Jet2Vec3& f) {
    nlohmann::json doc;
    doc["order"] = f.order();
    doc["components"] = nlohmann::json::array();
    for (int c = 0; c < 3; ++c) {
        nlohmann::json comp = nlohmann::json::array();
        const Jet2& jet = f[c];
        for (int i = 0; i <= f.order(); ++i)
            for (int j = 0; j <= f.order() - i; ++j)
                if (jet.coeff(i, j) != 0.0)
                    comp.push_back({i, j, jet.coeff(i, j)});
        doc["components"].push_back(comp);
    }
    return doc.dump();
}

}  // namespace edgekit::expr
