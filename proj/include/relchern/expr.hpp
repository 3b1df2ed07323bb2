#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "relchern/chow_poly.hpp"

namespace relchern {

/**
 * Parsed class expression.
 *
 *   expr   := ['+'|'-'] term (('+'|'-') term)*
 *   term   := factor (('*'|'/')? factor)*      juxtaposition multiplies: "12L"
 *   factor := base ('^' uint)?
 *   base   := uint | symbol | '(' expr ')'
 */
struct ClassExpr {
    enum class Kind { Number, Symbol, Negate, Add, Sub, Mul, Div, Pow };

    Kind kind = Kind::Number;
    Integer number;            // Number
    std::string name;          // Symbol
    unsigned exponent = 0;     // Pow
    std::vector<std::shared_ptr<const ClassExpr>> args;
    int line = 1;
    int column = 1;
};

using ExprPtr = std::shared_ptr<const ClassExpr>;

/// Throws ParseError with the 1-based line and column of the offending token.
ExprPtr parse_class_expr(std::string_view src);

/// Canonical text with explicit '*' and minimal parentheses; parsing it gives back the same tree.
std::string to_string(const ClassExpr& expr);

bool structurally_equal(const ClassExpr& a, const ClassExpr& b);

/// Evaluates in `ring`.  Division by a nonzero constant is exact; any other denominator must
/// have constant term 1 (NonUnitError otherwise).  Unknown symbols raise SymbolError.
ChowPoly evaluate(const ClassExpr& expr, const RingPtr& ring);

} // namespace relchern
