#pragma once

// Independent reference for the expression engine: a classic shunting-yard
// translation to RPN plus a stack evaluator. Shares no parsing or evaluation
// machinery with the library's Pratt parser; used by the differential tests.
// Scalar kernels (sin, pow, gamma, ...) are deliberately the same on both
// sides so any disagreement isolates a parsing/evaluation-order bug — the
// scalar functions have their own oracle tests against libm and closed forms.

#include "psifrac/special_functions.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace refeval {

struct RefError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

enum class Kind { Num, Var, Fn, Op, LParen, RParen, Comma };

struct Tok {
    Kind kind;
    double num = 0.0;
    std::string name;
    char op = 0;
};

inline int prec(char op)
{
    switch (op) {
    case '+': case '-': return 1;
    case '*': case '/': return 2;
    case 'n': return 3;  // unary minus
    case '^': return 4;
    }
    return 0;
}

inline bool right_assoc(char op) { return op == '^' || op == 'n'; }

inline int fn_arity(const std::string& name)
{
    if (name == "pow") return 2;
    if (name == "sin" || name == "cos" || name == "exp" || name == "log" ||
        name == "sqrt" || name == "abs" || name == "gamma")
        return 1;
    return -1;
}

inline std::vector<Tok> lex(const std::string& src,
                            const std::vector<std::string>& vars)
{
    std::vector<Tok> out;
    std::size_t i = 0;
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = src.c_str() + i;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin)
                throw RefError("bad number");
            i += static_cast<std::size_t>(end - begin);
            Tok t{Kind::Num};
            t.num = v;
            out.push_back(t);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
                name += src[i++];
            Tok t{};
            if (fn_arity(name) > 0) {
                t.kind = Kind::Fn;
            } else {
                bool known = false;
                for (const auto& v : vars)
                    known = known || v == name;
                if (!known)
                    throw RefError("unknown identifier " + name);
                t.kind = Kind::Var;
            }
            t.name = name;
            out.push_back(t);
            continue;
        }
        ++i;
        Tok t{};
        switch (c) {
        case '+': case '-': case '*': case '/': case '^':
            t.kind = Kind::Op;
            t.op = c;
            break;
        case '(': t.kind = Kind::LParen; break;
        case ')': t.kind = Kind::RParen; break;
        case ',': t.kind = Kind::Comma; break;
        default: throw RefError(std::string("bad character ") + c);
        }
        out.push_back(t);
    }
    return out;
}

inline double apply_fn(const std::string& name, double a, double b)
{
    if (name == "sin") return std::sin(a);
    if (name == "cos") return std::cos(a);
    if (name == "exp") return std::exp(a);
    if (name == "abs") return std::abs(a);
    if (name == "log") {
        if (!(a > 0.0))
            throw RefError("log domain");
        return std::log(a);
    }
    if (name == "sqrt") {
        if (a < 0.0)
            throw RefError("sqrt domain");
        return std::sqrt(a);
    }
    if (name == "gamma") {
        if (std::isnan(a))
            return a;
        if (std::isinf(a))
            return a > 0.0 ? a : std::numeric_limits<double>::quiet_NaN();
        try {
            return psifrac::gamma_fn(a);
        } catch (const psifrac::SpecialFunctionError&) {
            throw RefError("gamma domain");
        }
    }
    if (name == "pow") {
        if (a == 0.0 && b < 0.0)
            throw RefError("pow domain");
        if (a < 0.0 && b != std::floor(b))
            throw RefError("pow domain");
        return std::pow(a, b);
    }
    throw RefError("unknown function " + name);
}

} // namespace detail

/// Shunting-yard evaluation of src over positional variables.
inline double eval(const std::string& src, const std::vector<std::string>& vars,
                   const std::vector<double>& values)
{
    using namespace detail;
    const std::vector<Tok> toks = lex(src, vars);
    std::vector<Tok> output;
    std::vector<Tok> stack;

    bool expect_operand = true;
    for (const Tok& t : toks) {
        switch (t.kind) {
        case Kind::Num:
        case Kind::Var:
            output.push_back(t);
            expect_operand = false;
            break;
        case Kind::Fn:
            stack.push_back(t);
            break;
        case Kind::Comma:
            while (!stack.empty() && stack.back().kind != Kind::LParen) {
                output.push_back(stack.back());
                stack.pop_back();
            }
            if (stack.empty())
                throw RefError("misplaced comma");
            expect_operand = true;
            break;
        case Kind::Op: {
            char op = t.op;
            if (expect_operand) {
                if (op == '-')
                    op = 'n';
                else if (op == '+')
                    continue;  // unary plus
                else
                    throw RefError("operator where operand expected");
            }
            while (!stack.empty() && stack.back().kind == Kind::Op) {
                const char top = stack.back().op;
                const bool pop = right_assoc(op) ? prec(top) > prec(op)
                                                 : prec(top) >= prec(op);
                if (!pop)
                    break;
                output.push_back(stack.back());
                stack.pop_back();
            }
            Tok o{Kind::Op};
            o.op = op;
            stack.push_back(o);
            expect_operand = true;
            break;
        }
        case Kind::LParen:
            stack.push_back(t);
            expect_operand = true;
            break;
        case Kind::RParen:
            while (!stack.empty() && stack.back().kind != Kind::LParen) {
                output.push_back(stack.back());
                stack.pop_back();
            }
            if (stack.empty())
                throw RefError("unbalanced parens");
            stack.pop_back();
            if (!stack.empty() && stack.back().kind == Kind::Fn) {
                output.push_back(stack.back());
                stack.pop_back();
            }
            expect_operand = false;
            break;
        }
    }
    while (!stack.empty()) {
        if (stack.back().kind == Kind::LParen)
            throw RefError("unbalanced parens");
        output.push_back(stack.back());
        stack.pop_back();
    }

    std::vector<double> st;
    for (const Tok& t : output) {
        switch (t.kind) {
        case Kind::Num:
            st.push_back(t.num);
            break;
        case Kind::Var: {
            for (std::size_t k = 0; k < vars.size(); ++k)
                if (vars[k] == t.name) {
                    st.push_back(values[k]);
                    break;
                }
            break;
        }
        case Kind::Op: {
            if (t.op == 'n') {
                if (st.empty())
                    throw RefError("stack underflow");
                st.back() = -st.back();
                break;
            }
            if (st.size() < 2)
                throw RefError("stack underflow");
            const double b = st.back();
            st.pop_back();
            const double a = st.back();
            st.pop_back();
            switch (t.op) {
            case '+': st.push_back(a + b); break;
            case '-': st.push_back(a - b); break;
            case '*': st.push_back(a * b); break;
            case '/':
                if (b == 0.0)
                    throw RefError("division by zero");
                st.push_back(a / b);
                break;
            case '^':
                if (a == 0.0 && b < 0.0)
                    throw RefError("pow domain");
                if (a < 0.0 && b != std::floor(b))
                    throw RefError("pow domain");
                st.push_back(std::pow(a, b));
                break;
            }
            break;
        }
        case Kind::Fn: {
            const int arity = detail::fn_arity(t.name);
            if (static_cast<int>(st.size()) < arity)
                throw RefError("stack underflow");
            double b = 0.0;
            if (arity == 2) {
                b = st.back();
                st.pop_back();
            }
            const double a = st.back();
            st.pop_back();
            st.push_back(detail::apply_fn(t.name, a, b));
            break;
        }
        default:
            throw RefError("bad RPN token");
        }
    }
    if (st.size() != 1)
        throw RefError("bad expression");
    return st.back();
}

/// Random well-formed expression strings over the given variables.
class ExpressionGenerator {
public:
    explicit ExpressionGenerator(std::uint32_t seed) : rng_(seed) {}

    std::string generate(const std::vector<std::string>& vars)
    {
        vars_ = &vars;
        return expr(0);
    }

private:
    std::string expr(int depth)
    {
        std::string s = term(depth);
        const int extra = pick(3);
        for (int k = 0; k < extra; ++k)
            s += (pick(2) == 0 ? "+" : "-") + term(depth);
        return s;
    }

    std::string term(int depth)
    {
        std::string s = factor(depth);
        const int extra = pick(2);
        for (int k = 0; k < extra; ++k)
            s += (pick(2) == 0 ? "*" : "/") + factor(depth);
        return s;
    }

    std::string factor(int depth)
    {
        std::string s = pick(5) == 0 ? "-" + atom(depth) : atom(depth);
        if (pick(6) == 0)
            s += "^" + small_number();
        return s;
    }

    std::string atom(int depth)
    {
        const int choice = depth >= 3 ? pick(2) : pick(6);
        switch (choice) {
        case 0: return number();
        case 1: return var();
        case 2: return "(" + expr(depth + 1) + ")";
        case 3: {
            static const char* fns[] = {"sin", "cos", "exp", "sqrt", "abs", "gamma", "log"};
            return std::string(fns[pick(7)]) + "(" + expr(depth + 1) + ")";
        }
        case 4:
            return "pow(" + expr(depth + 1) + "," + small_number() + ")";
        default:
            return number();
        }
    }

    std::string number()
    {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%.2f", 0.1 + 3.9 * real());
        return buf;
    }

    std::string small_number()
    {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%.1f", 0.5 + 2.0 * real());
        return buf;
    }

    std::string var() { return (*vars_)[static_cast<std::size_t>(pick(static_cast<int>(vars_->size())))]; }

    int pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint32_t>(n)); }
    double real() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

    std::mt19937 rng_;
    const std::vector<std::string>* vars_ = nullptr;
};

} // namespace refeval
