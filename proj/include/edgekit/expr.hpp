#pragma once

// A small analytic-expression DSL so germs can be given as formulas.
//
// Grammar (whitespace-insensitive):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' integer)?
//   atom   := number | 'pi' | 'u' | 'v' | fn '(' expr ')' | '(' expr ')'
//   fn     := sin | cos | tan | exp | log | sqrt | atan
//
// Precedence: ^  >  unary -  >  * /  >  + -.  The '^' exponent must be a
// non-negative integer literal, which keeps jet elevation exact.
//
// Surfaces are given either as "map(e1, e2, e3)" or as three expressions
// separated by semicolons.

#include <array>
#include <memory>
#include <stdexcept>
#include <string>

#include "edgekit/jet.hpp"

namespace edgekit::expr {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class Kind { literal, variable, constant, unary_minus, binary, call };

    Kind kind;
    double value = 0;      // literal
    char var = 0;          // variable: 'u' or 'v'
    std::string name;      // constant ("pi") or call function name
    char op = 0;           // binary: '+', '-', '*', '/'
    int exponent = 0;      // binary '^'... stored here, lhs is the base
    NodePtr lhs, rhs;
};

class parse_error : public std::runtime_error {
  public:
    parse_error(const std::string& message, std::size_t position)
        : std::runtime_error(message), position_(position) {}
    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

// Raised when an expression is not analytic at the requested basepoint
// (log of a non-positive constant, division by a jet with zero constant
// term, and so on).
class eval_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

NodePtr parse(const std::string& text);

// Parse "map(e1, e2, e3)" or "e1; e2; e3" into three component ASTs.
std::array<NodePtr, 3> parse_map(const std::string& text);

// Minimal-parenthesis printer; parse(print(ast)) reproduces the tree.
std::string print(const NodePtr& ast);

bool structurally_equal(const NodePtr& a, const NodePtr& b);

// Plain double evaluation (the closed-form oracle for finite differences).
double eval(const NodePtr& ast, double u, double v);

// Taylor expansion about (u0, v0) in offset coordinates: the result's
// constant term is the value at the basepoint.
Jet2 elevate(const NodePtr& ast, int order, double u0 = 0, double v0 = 0);

// ----- coefficient-table JSON ------------------------------------------
// Schema: {"order": int, "components": [[[i, j, value], ...]  x3 ]}.

Jet2Vec3 load_table(const std::string& json_text);
std::string save_table(const Jet2Vec3& f);

}  // namespace edgekit::expr
