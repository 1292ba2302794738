#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace psifrac {

/// Parse failure: carries the byte offset into the source string.
class ExprError : public std::runtime_error {
public:
    ExprError(const std::string& message, std::size_t offset)
        : std::runtime_error(message), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Evaluation failure (missing binding, log of non-positive, division by
/// zero, ...). offset() locates the offending node in the original source.
class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& message, std::size_t offset)
        : std::runtime_error(message), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Immutable arithmetic expression over a declared variable set.
///
/// Grammar (see docs/expr_grammar.md): numbers, variables, unary minus,
/// + - * / ^ with ^ right-associative, and the builtins sin cos exp log
/// sqrt abs pow gamma. Safe to share across threads after parse.
class Expr {
public:
    enum class NodeKind : std::uint8_t { Number, Variable, Neg, Binary, Call };

    struct Node {
        NodeKind kind;
        char op = 0;           // Binary: one of + - * / ^
        double number = 0.0;   // Number
        int index = -1;        // Variable: slot in variables(); Call: builtin id
        int lhs = -1;          // Neg/Call: operand (Call arg 0); Binary: left
        int rhs = -1;          // Binary: right; Call: arg 1 (pow)
        std::uint32_t offset = 0;  // byte offset in source
    };

    /// Parses source over the given distinct, nonempty variable list.
    /// Throws ExprError on syntax errors, unknown identifiers, arity
    /// mismatches, with the byte offset of the problem.
    static Expr parse(std::string_view source, const std::vector<std::string>& variables);

    /// Evaluates with values bound positionally to variables().
    double eval(std::span<const double> values) const;

    /// Convenience for one- and two-variable expressions.
    double eval1(double v0) const;
    double eval2(double v0, double v1) const;

    /// Precedence-aware rendering; parse(print()) yields an equal AST.
    std::string print() const;

    const std::vector<std::string>& variables() const { return variables_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    int root() const { return root_; }
    const std::string& source() const { return source_; }

    /// True if the variable with the given slot actually occurs.
    bool uses_variable(int slot) const;

    bool operator==(const Expr& other) const;

private:
    Expr() = default;

    std::vector<std::string> variables_;
    std::vector<Node> nodes_;
    int root_ = -1;
    std::string source_;
};

} // namespace psifrac
