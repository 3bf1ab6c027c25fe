#pragma once

#include <stdexcept>
#include <string>

namespace drq {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/* Syntax error in the expression grammar; `pos` is a 0-based byte offset. */
struct ParseError : Error {
    std::size_t pos;
    ParseError(std::size_t p, const std::string& msg)
        : Error(msg + " (at position " + std::to_string(p) + ")"), pos(p) {}
};

/* Division by the zero polynomial / zero rational function. */
struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

/* Substitution point hits a pole of some coefficient. */
struct EvalPole : Error {
    EvalPole() : Error("evaluation point is a pole") {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

}  // namespace drq
