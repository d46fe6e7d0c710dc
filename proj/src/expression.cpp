#include "dflow/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>
#include <variant>

namespace dflow {

ExpressionError::ExpressionError(std::size_t position, const std::string& message)
    : std::runtime_error("expression error at column " + std::to_string(position + 1) + ": " + message)
    , position_(position)
{
}

struct Expression::Node {
    enum class Op { Number, Variable, Add, Sub, Mul, Div, Neg, Sin, Cos, Exp };
    Op op = Op::Number;
    double value = 0.0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;

    double eval(double s) const
    {
        switch (op) {
        case Op::Number: return value;
        case Op::Variable: return s;
        case Op::Add: return lhs->eval(s) + rhs->eval(s);
        case Op::Sub: return lhs->eval(s) - rhs->eval(s);
        case Op::Mul: return lhs->eval(s) * rhs->eval(s);
        case Op::Div: return lhs->eval(s) / rhs->eval(s);
        case Op::Neg: return -lhs->eval(s);
        case Op::Sin: return std::sin(lhs->eval(s));
        case Op::Cos: return std::cos(lhs->eval(s));
        case Op::Exp: return std::exp(lhs->eval(s));
        }
        return 0.0;
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Op = Expression::Node::Op;

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double value = 0.0)
{
    auto n = std::make_shared<Expression::Node>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    n->value = value;
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view text)
        : text_(text)
    {
    }

    NodePtr parse()
    {
        NodePtr n = expr();
        skip_space();
        if (pos_ != text_.size()) {
            throw ExpressionError(pos_, "unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return n;
    }

    bool uses_variable() const noexcept { return uses_variable_; }

private:
    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            throw ExpressionError(pos_, std::string("expected '") + c + "'");
        }
    }

    NodePtr expr()
    {
        NodePtr n = term();
        for (;;) {
            if (accept('+')) {
                n = make(Op::Add, n, term());
            } else if (accept('-')) {
                n = make(Op::Sub, n, term());
            } else {
                return n;
            }
        }
    }

    NodePtr term()
    {
        NodePtr n = unary();
        for (;;) {
            if (accept('*')) {
                n = make(Op::Mul, n, unary());
            } else if (accept('/')) {
                n = make(Op::Div, n, unary());
            } else {
                return n;
            }
        }
    }

    NodePtr unary()
    {
        if (accept('-')) {
            return make(Op::Neg, unary());
        }
        if (accept('+')) {
            return unary();
        }
        return primary();
    }

    NodePtr primary()
    {
        skip_space();
        if (pos_ >= text_.size()) {
            throw ExpressionError(pos_, "unexpected end of expression");
        }
        if (accept('(')) {
            NodePtr n = expr();
            expect(')');
            return n;
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            const std::string_view name = text_.substr(start, pos_ - start);
            if (name == "s") {
                uses_variable_ = true;
                return make(Op::Variable);
            }
            if (name == "pi") {
                return make(Op::Number, nullptr, nullptr, std::numbers::pi);
            }
            Op op;
            if (name == "sin") {
                op = Op::Sin;
            } else if (name == "cos") {
                op = Op::Cos;
            } else if (name == "exp") {
                op = Op::Exp;
            } else {
                throw ExpressionError(start, "unknown name '" + std::string(name) + "'");
            }
            expect('(');
            NodePtr arg = expr();
            expect(')');
            return make(op, arg);
        }
        throw ExpressionError(pos_, "unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number()
    {
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr == first) {
            throw ExpressionError(pos_, "malformed number");
        }
        pos_ += static_cast<std::size_t>(ptr - first);
        return make(Op::Number, nullptr, nullptr, value);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    bool uses_variable_ = false;
};

} // namespace

Expression Expression::parse(std::string_view text)
{
    Parser p(text);
    Expression e;
    e.root_ = p.parse();
    e.source_ = std::string(text);
    e.constant_ = !p.uses_variable();
    return e;
}

double Expression::operator()(double s) const
{
    return root_->eval(s);
}

} // namespace dflow
