#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "drq/scalar.hpp"

namespace drq {

/* Shared expression AST for the one grammar used in both contexts:
 * Scalar expressions over l1..l_nvars, and jets which additionally admit
 * the exponential coordinates x1..xn. */
struct Expr {
    enum class Kind { Number, Imag, Hbar, LambdaVar, XVar, Add, Sub, Mul, Div, Neg, Pow };
    Kind kind;
    mpz_class number;                       // Number
    int var_index = 0;                      // LambdaVar / XVar, 0-based
    unsigned exponent = 0;                  // Pow
    std::vector<std::unique_ptr<Expr>> kids;
    std::size_t pos = 0;                    // source position, for diagnostics
};

using ExprPtr = std::unique_ptr<Expr>;

/* Recursive-descent parse of the full input; x-variables are rejected
 * unless allow_x, and the formal ħ token 'H' unless allow_hbar.  Throws
 * ParseError with a byte position. */
ExprPtr parse_expression(std::string_view text, bool allow_x, bool allow_hbar = false);

/* Evaluate an AST as a Scalar in nvars λ-variables.  Rejects x-variables
 * and out-of-range λ-indices; division by zero is reported at the
 * offending node's position. */
Scalar eval_scalar(const Expr& e, int nvars);

/* parse_scalar: the module's public entry point (grammar of the spec). */
Scalar parse_scalar(std::string_view text, int num_vars);

}  // namespace drq
