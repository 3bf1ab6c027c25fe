#include "drq/expr.hpp"

#include <cctype>

namespace drq {

namespace {

class Parser {
  public:
    Parser(std::string_view text, bool allow_x, bool allow_hbar)
        : text_(text), allow_x_(allow_x), allow_hbar_(allow_hbar) {}

    ExprPtr run() {
        skip_ws();
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError(pos_, "unexpected trailing input");
        return e;
    }

  private:
    ExprPtr expr() {
        ExprPtr lhs = term();
        for (;;) {
            skip_ws();
            if (peek() == '+' || peek() == '-') {
                char op = take();
                ExprPtr rhs = term();
                lhs = node(op == '+' ? Expr::Kind::Add : Expr::Kind::Sub, std::move(lhs), std::move(rhs));
            } else {
                return lhs;
            }
        }
    }

    ExprPtr term() {
        ExprPtr lhs = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*' || peek() == '/') {
                char op = take();
                ExprPtr rhs = factor();
                lhs = node(op == '*' ? Expr::Kind::Mul : Expr::Kind::Div, std::move(lhs), std::move(rhs));
            } else {
                return lhs;
            }
        }
    }

    ExprPtr factor() {
        skip_ws();
        if (peek() == '-') {
            take();
            ExprPtr inner = factor();
            return node(Expr::Kind::Neg, std::move(inner));
        }
        if (peek() == '+') {
            take();
            return factor();
        }
        ExprPtr base = atom();
        skip_ws();
        if (peek() == '^') {
            take();
            skip_ws();
            std::size_t at = pos_;
            if (!std::isdigit(peek())) throw ParseError(pos_, "expected nonnegative integer exponent");
            unsigned long e = 0;
            mpz_class big = read_integer();
            if (!big.fits_ulong_p()) throw ParseError(at, "exponent too large");
            e = big.get_ui();
            auto p = std::make_unique<Expr>();
            p->kind = Expr::Kind::Pow;
            p->exponent = static_cast<unsigned>(e);
            p->pos = at;
            p->kids.push_back(std::move(base));
            return p;
        }
        return base;
    }

    ExprPtr atom() {
        skip_ws();
        std::size_t at = pos_;
        char c = peek();
        if (c == '(') {
            take();
            ExprPtr e = expr();
            skip_ws();
            if (peek() != ')') throw ParseError(pos_, "expected ')'");
            take();
            return e;
        }
        if (std::isdigit(c)) {
            auto p = std::make_unique<Expr>();
            p->kind = Expr::Kind::Number;
            p->number = read_integer();
            p->pos = at;
            return p;
        }
        if (c == 'i' && !std::isdigit(peek(1))) {
            take();
            auto p = std::make_unique<Expr>();
            p->kind = Expr::Kind::Imag;
            p->pos = at;
            return p;
        }
        if (c == 'H' && allow_hbar_) {
            take();
            auto p = std::make_unique<Expr>();
            p->kind = Expr::Kind::Hbar;
            p->pos = at;
            return p;
        }
        if (c == 'l' || c == 'x') {
            take();
            if (!std::isdigit(peek())) throw ParseError(pos_, "expected variable index");
            mpz_class idx = read_integer();
            if (idx < 1 || !idx.fits_sint_p()) throw ParseError(at, "variable index out of range");
            auto p = std::make_unique<Expr>();
            p->kind = (c == 'l') ? Expr::Kind::LambdaVar : Expr::Kind::XVar;
            if (c == 'x' && !allow_x_) throw ParseError(at, "x-variables not allowed in this context");
            p->var_index = static_cast<int>(idx.get_si()) - 1;
            p->pos = at;
            return p;
        }
        throw ParseError(pos_, "expected number, 'i', variable, or '('");
    }

    ExprPtr node(Expr::Kind k, ExprPtr a, ExprPtr b = nullptr) {
        auto p = std::make_unique<Expr>();
        p->kind = k;
        p->pos = a->pos;
        p->kids.push_back(std::move(a));
        if (b) p->kids.push_back(std::move(b));
        return p;
    }

    mpz_class read_integer() {
        std::string digits;
        while (std::isdigit(peek())) digits += take();
        return mpz_class(digits);
    }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }
    char take() { return text_[pos_++]; }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string_view text_;
    bool allow_x_;
    bool allow_hbar_;
    std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expression(std::string_view text, bool allow_x, bool allow_hbar) {
    return Parser(text, allow_x, allow_hbar).run();
}

Scalar eval_scalar(const Expr& e, int nvars) {
    switch (e.kind) {
        case Expr::Kind::Number:
            return Scalar(nvars, GaussianRational(mpq_class(e.number)));
        case Expr::Kind::Imag:
            return Scalar::imag_unit(nvars);
        case Expr::Kind::LambdaVar:
            if (e.var_index >= nvars) throw ParseError(e.pos, "variable index out of range");
            return Scalar::variable(nvars, e.var_index);
        case Expr::Kind::XVar:
            throw ParseError(e.pos, "x-variables not allowed in scalar context");
        case Expr::Kind::Hbar:
            throw ParseError(e.pos, "ħ not allowed in scalar context");
        case Expr::Kind::Add:
            return eval_scalar(*e.kids[0], nvars) + eval_scalar(*e.kids[1], nvars);
        case Expr::Kind::Sub:
            return eval_scalar(*e.kids[0], nvars) - eval_scalar(*e.kids[1], nvars);
        case Expr::Kind::Mul:
            return eval_scalar(*e.kids[0], nvars) * eval_scalar(*e.kids[1], nvars);
        case Expr::Kind::Div: {
            Scalar d = eval_scalar(*e.kids[1], nvars);
            if (d.is_zero()) throw ParseError(e.kids[1]->pos, "division by zero");
            return eval_scalar(*e.kids[0], nvars) / d;
        }
        case Expr::Kind::Neg:
            return -eval_scalar(*e.kids[0], nvars);
        case Expr::Kind::Pow:
            return eval_scalar(*e.kids[0], nvars).pow(e.exponent);
    }
    throw DomainError("eval_scalar: bad node");
}

Scalar parse_scalar(std::string_view text, int num_vars) {
    ExprPtr ast = parse_expression(text, /*allow_x=*/false);
    return eval_scalar(*ast, num_vars);
}

}  // namespace drq
