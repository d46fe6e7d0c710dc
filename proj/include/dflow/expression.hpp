#pragma once

// Scalar expressions in the variable s, e.g. "1 + 0.5*sin(s)".
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | primary
//   primary := number | 's' | 'pi' | func '(' expr ')' | '(' expr ')'
//   func    := sin | cos | exp

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dflow {

class ExpressionError : public std::runtime_error {
public:
    ExpressionError(std::size_t position, const std::string& message);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class Expression {
public:
    static Expression parse(std::string_view text);

    double operator()(double s) const;
    const std::string& source() const noexcept { return source_; }
    /// True when the expression does not mention s.
    bool is_constant() const noexcept { return constant_; }

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    std::string source_;
    bool constant_ = true;
};

} // namespace dflow
