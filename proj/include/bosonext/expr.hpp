#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bosonext/bosonic.hpp"
#include "bosonext/error.hpp"

namespace bosonext {

/**
 * @brief Expression tree of the CLI language.
 *
 * Grammar:
 *   expr   := term (('+'|'-') term)*
 *   term   := factor ('*' factor)*
 *   factor := atom ('^' integer)?
 *   atom   := 'f' '(' index ',' level ')' | 'dp' '(' atom ',' nat ')' | 'q' ('^' '{' halfint '}')? | integer | '(' expr ')'
 * Generator indices are 1-based; levels and integers may carry a leading '-'.
 */
struct Expr {
    enum class Kind { Sum, Product, Power, DividedPower, Generator, QPower, Integer };
    Kind kind = Kind::Integer;
    std::vector<Expr> children;
    std::vector<int> signs;  // Sum: +1 or -1 per child
    int index = 0;           // Generator: 1-based
    int level = 0;           // Generator
    int exponent = 0;        // Power, DividedPower; QPower in units of q^{1/2}
    long value = 0;          // Integer
};

/** @brief SyntaxError carrying the 0-based offset into the input. */
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& what)
        : Error(ErrorCode::SyntaxError, "at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

Expr parse_expr(const std::string& text);
/** Canonical print; parse_expr(print_expr(e)) prints back identically. */
std::string print_expr(const Expr& e);
/** Throws EvalError for an index out of range, a negative power of a non-scalar, or dp of a non-generator. */
HatElem eval_expr(const Expr& e, const HatAlgebra& h);

}  // namespace bosonext
