#include "psifrac/expr.hpp"

#include "psifrac/special_functions.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace psifrac {

namespace {

struct Builtin {
    const char* name;
    int arity;
};

// Call node index field refers to this table.
constexpr std::array<Builtin, 8> kBuiltins = {{
    {"sin", 1}, {"cos", 1}, {"exp", 1}, {"log", 1},
    {"sqrt", 1}, {"abs", 1}, {"pow", 2}, {"gamma", 1},
}};

int builtin_id(std::string_view name)
{
    for (std::size_t i = 0; i < kBuiltins.size(); ++i)
        if (name == kBuiltins[i].name)
            return static_cast<int>(i);
    return -1;
}

enum class TokKind { Number, Ident, Op, LParen, RParen, Comma, End };

struct Token {
    TokKind kind;
    std::size_t offset;
    double number = 0.0;
    std::string_view text = {};
    char op = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= src_.size())
            return {TokKind::End, start};

        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = src_.data() + pos_;
            char* end = nullptr;
            const double value = std::strtod(begin, &end);
            if (end == begin)
                throw ExprError("malformed number", start);
            pos_ += static_cast<std::size_t>(end - begin);
            return {TokKind::Number, start, value};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t len = 0;
            while (pos_ + len < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_ + len])) ||
                    src_[pos_ + len] == '_'))
                ++len;
            Token t{TokKind::Ident, start};
            t.text = src_.substr(pos_, len);
            pos_ += len;
            return t;
        }
        ++pos_;
        switch (c) {
        case '+': case '-': case '*': case '/': case '^': {
            Token t{TokKind::Op, start};
            t.op = c;
            return t;
        }
        case '(': return {TokKind::LParen, start};
        case ')': return {TokKind::RParen, start};
        case ',': return {TokKind::Comma, start};
        default:
            throw ExprError(std::string("unexpected character '") + c + "'", start);
        }
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
};

// Binding powers: ^ (right-assoc) > unary minus > * / > + -.
constexpr int kAddLbp = 10, kAddRbp = 11;
constexpr int kMulLbp = 20, kMulRbp = 21;
constexpr int kNegRbp = 25;
constexpr int kPowLbp = 30, kPowRbp = 29;

class Parser {
public:
    Parser(std::string_view src, const std::vector<std::string>& variables,
           std::vector<Expr::Node>& nodes)
        : lexer_(src), variables_(variables), nodes_(nodes)
    {
        advance();
    }

    int parse_toplevel()
    {
        const int root = parse_expr(0);
        if (tok_.kind != TokKind::End)
            throw ExprError("trailing input after expression", tok_.offset);
        return root;
    }

private:
    void advance() { tok_ = lexer_.next(); }

    int add_node(Expr::Node n)
    {
        nodes_.push_back(n);
        return static_cast<int>(nodes_.size()) - 1;
    }

    int parse_expr(int min_bp)
    {
        int lhs = parse_prefix();
        for (;;) {
            if (tok_.kind != TokKind::Op)
                break;
            const char op = tok_.op;
            int lbp, rbp;
            switch (op) {
            case '+': case '-': lbp = kAddLbp; rbp = kAddRbp; break;
            case '*': case '/': lbp = kMulLbp; rbp = kMulRbp; break;
            case '^': lbp = kPowLbp; rbp = kPowRbp; break;
            default: throw ExprError("unknown operator", tok_.offset);
            }
            if (lbp < min_bp)
                break;
            const std::size_t op_offset = tok_.offset;
            advance();
            const int rhs = parse_expr(rbp);
            Expr::Node n;
            n.kind = Expr::NodeKind::Binary;
            n.op = op;
            n.lhs = lhs;
            n.rhs = rhs;
            n.offset = static_cast<std::uint32_t>(op_offset);
            lhs = add_node(n);
        }
        return lhs;
    }

    int parse_prefix()
    {
        switch (tok_.kind) {
        case TokKind::Number: {
            Expr::Node n;
            n.kind = Expr::NodeKind::Number;
            n.number = tok_.number;
            n.offset = static_cast<std::uint32_t>(tok_.offset);
            advance();
            return add_node(n);
        }
        case TokKind::Ident:
            return parse_ident();
        case TokKind::LParen: {
            advance();
            const int inner = parse_expr(0);
            expect(TokKind::RParen, "expected ')'");
            advance();
            return inner;
        }
        case TokKind::Op:
            if (tok_.op == '-') {
                const std::size_t off = tok_.offset;
                advance();
                const int operand = parse_expr(kNegRbp);
                Expr::Node n;
                n.kind = Expr::NodeKind::Neg;
                n.lhs = operand;
                n.offset = static_cast<std::uint32_t>(off);
                return add_node(n);
            }
            if (tok_.op == '+') {  // unary plus: no-op
                advance();
                return parse_expr(kNegRbp);
            }
            throw ExprError("expected an operand", tok_.offset);
        default:
            throw ExprError("expected an operand", tok_.offset);
        }
    }

    int parse_ident()
    {
        const Token ident = tok_;
        advance();
        if (tok_.kind == TokKind::LParen) {
            const int fn = builtin_id(ident.text);
            if (fn < 0)
                throw ExprError("unknown function '" + std::string(ident.text) + "'",
                                ident.offset);
            advance();
            std::vector<int> args;
            if (tok_.kind != TokKind::RParen) {
                args.push_back(parse_expr(0));
                while (tok_.kind == TokKind::Comma) {
                    advance();
                    args.push_back(parse_expr(0));
                }
            }
            expect(TokKind::RParen, "expected ')' after arguments");
            advance();
            if (static_cast<int>(args.size()) != kBuiltins[fn].arity) {
                std::ostringstream os;
                os << "function '" << kBuiltins[fn].name << "' expects "
                   << kBuiltins[fn].arity << " argument(s), got " << args.size();
                throw ExprError(os.str(), ident.offset);
            }
            Expr::Node n;
            n.kind = Expr::NodeKind::Call;
            n.index = fn;
            n.lhs = args[0];
            n.rhs = args.size() > 1 ? args[1] : -1;
            n.offset = static_cast<std::uint32_t>(ident.offset);
            return add_node(n);
        }
        for (std::size_t i = 0; i < variables_.size(); ++i) {
            if (ident.text == variables_[i]) {
                Expr::Node n;
                n.kind = Expr::NodeKind::Variable;
                n.index = static_cast<int>(i);
                n.offset = static_cast<std::uint32_t>(ident.offset);
                return add_node(n);
            }
        }
        throw ExprError("unknown identifier '" + std::string(ident.text) + "'",
                        ident.offset);
    }

    void expect(TokKind kind, const char* message)
    {
        if (tok_.kind != kind)
            throw ExprError(message, tok_.offset);
    }

    Lexer lexer_;
    const std::vector<std::string>& variables_;
    std::vector<Expr::Node>& nodes_;
    Token tok_{TokKind::End, 0};
};

double eval_call(int fn, double a, double b, std::size_t offset)
{
    switch (fn) {
    case 0: return std::sin(a);
    case 1: return std::cos(a);
    case 2: return std::exp(a);
    case 3:
        if (!(a > 0.0))
            throw EvalError("log of non-positive value", offset);
        return std::log(a);
    case 4:
        if (a < 0.0)
            throw EvalError("sqrt of negative value", offset);
        return std::sqrt(a);
    case 5: return std::abs(a);
    case 6: {
        if (a == 0.0 && b < 0.0)
            throw EvalError("pow: zero base with negative exponent", offset);
        if (a < 0.0 && b != std::floor(b))
            throw EvalError("pow: negative base with non-integer exponent", offset);
        return std::pow(a, b);
    }
    case 7:
        // NaN and +inf propagate per the evaluation contract; -inf has no
        // limit and propagates as NaN.
        if (std::isnan(a))
            return a;
        if (std::isinf(a))
            return a > 0.0 ? a : std::numeric_limits<double>::quiet_NaN();
        try {
            return gamma_fn(a);
        } catch (const SpecialFunctionError& e) {
            throw EvalError(e.what(), offset);
        }
    default:
        throw EvalError("corrupt call node", offset);
    }
}

} // namespace

Expr Expr::parse(std::string_view source, const std::vector<std::string>& variables)
{
    if (source.empty())
        throw ExprError("empty expression", 0);
    if (variables.empty())
        throw ExprError("no variables declared", 0);
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (variables[i].empty())
            throw ExprError("empty variable name", 0);
        if (builtin_id(variables[i]) >= 0)
            throw ExprError("variable name '" + variables[i] + "' shadows a builtin", 0);
        for (std::size_t j = i + 1; j < variables.size(); ++j)
            if (variables[i] == variables[j])
                throw ExprError("duplicate variable name '" + variables[i] + "'", 0);
    }

    Expr e;
    e.variables_ = variables;
    e.source_ = std::string(source);
    Parser p(source, e.variables_, e.nodes_);
    e.root_ = p.parse_toplevel();
    return e;
}

double Expr::eval(std::span<const double> values) const
{
    if (values.size() < variables_.size())
        throw EvalError("missing binding: expected " + std::to_string(variables_.size()) +
                            " values, got " + std::to_string(values.size()),
                        0);
    // Nodes are appended post-order, so children always precede parents.
    std::vector<double> out(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        switch (n.kind) {
        case NodeKind::Number: out[i] = n.number; break;
        case NodeKind::Variable: out[i] = values[static_cast<std::size_t>(n.index)]; break;
        case NodeKind::Neg: out[i] = -out[static_cast<std::size_t>(n.lhs)]; break;
        case NodeKind::Binary: {
            const double a = out[static_cast<std::size_t>(n.lhs)];
            const double b = out[static_cast<std::size_t>(n.rhs)];
            switch (n.op) {
            case '+': out[i] = a + b; break;
            case '-': out[i] = a - b; break;
            case '*': out[i] = a * b; break;
            case '/':
                if (b == 0.0)
                    throw EvalError("division by zero", n.offset);
                out[i] = a / b;
                break;
            case '^':
                if (a == 0.0 && b < 0.0)
                    throw EvalError("zero base with negative exponent", n.offset);
                if (a < 0.0 && b != std::floor(b))
                    throw EvalError("negative base with non-integer exponent", n.offset);
                out[i] = std::pow(a, b);
                break;
            default:
                throw EvalError("corrupt binary node", n.offset);
            }
            break;
        }
        case NodeKind::Call:
            out[i] = eval_call(n.index, out[static_cast<std::size_t>(n.lhs)],
                               n.rhs >= 0 ? out[static_cast<std::size_t>(n.rhs)] : 0.0,
                               n.offset);
            break;
        }
    }
    return out[static_cast<std::size_t>(root_)];
}

double Expr::eval1(double v0) const
{
    const double vals[1] = {v0};
    return eval(vals);
}

double Expr::eval2(double v0, double v1) const
{
    const double vals[2] = {v0, v1};
    return eval(vals);
}

bool Expr::uses_variable(int slot) const
{
    for (const Node& n : nodes_)
        if (n.kind == NodeKind::Variable && n.index == slot)
            return true;
    return false;
}

namespace {

int node_precedence(const Expr::Node& n)
{
    switch (n.kind) {
    case Expr::NodeKind::Binary:
        switch (n.op) {
        case '+': case '-': return 1;
        case '*': case '/': return 2;
        case '^': return 4;
        }
        return 0;
    case Expr::NodeKind::Neg: return 3;
    default: return 5;  // atoms and calls never need parens
    }
}

void print_node(const Expr& e, int idx, std::string& out)
{
    const Expr::Node& n = e.nodes()[static_cast<std::size_t>(idx)];
    const auto child = [&](int c, bool parens) {
        if (parens) out += '(';
        print_node(e, c, out);
        if (parens) out += ')';
    };
    switch (n.kind) {
    case Expr::NodeKind::Number: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", n.number);
        out += buf;
        break;
    }
    case Expr::NodeKind::Variable:
        out += e.variables()[static_cast<std::size_t>(n.index)];
        break;
    case Expr::NodeKind::Neg: {
        out += '-';
        const int cp = node_precedence(e.nodes()[static_cast<std::size_t>(n.lhs)]);
        child(n.lhs, cp < node_precedence(n));
        break;
    }
    case Expr::NodeKind::Binary: {
        const int p = node_precedence(n);
        const int lp = node_precedence(e.nodes()[static_cast<std::size_t>(n.lhs)]);
        const int rp = node_precedence(e.nodes()[static_cast<std::size_t>(n.rhs)]);
        // Left-associative operators need parens on any equal-precedence
        // right child to preserve the tree shape; right-associative '^'
        // needs them on an equal-precedence left child.
        const bool lparens = n.op == '^' ? lp <= p : lp < p;
        const bool rparens = n.op == '^' ? rp < p : rp <= p;
        child(n.lhs, lparens);
        out += n.op;
        child(n.rhs, rparens);
        break;
    }
    case Expr::NodeKind::Call:
        out += kBuiltins[static_cast<std::size_t>(n.index)].name;
        out += '(';
        print_node(e, n.lhs, out);
        if (n.rhs >= 0) {
            out += ',';
            print_node(e, n.rhs, out);
        }
        out += ')';
        break;
    }
}

bool node_equal(const Expr& a, int ia, const Expr& b, int ib)
{
    const Expr::Node& na = a.nodes()[static_cast<std::size_t>(ia)];
    const Expr::Node& nb = b.nodes()[static_cast<std::size_t>(ib)];
    if (na.kind != nb.kind)
        return false;
    switch (na.kind) {
    case Expr::NodeKind::Number: return na.number == nb.number;
    case Expr::NodeKind::Variable: return na.index == nb.index;
    case Expr::NodeKind::Neg: return node_equal(a, na.lhs, b, nb.lhs);
    case Expr::NodeKind::Binary:
        return na.op == nb.op && node_equal(a, na.lhs, b, nb.lhs) &&
               node_equal(a, na.rhs, b, nb.rhs);
    case Expr::NodeKind::Call:
        if (na.index != nb.index || (na.rhs >= 0) != (nb.rhs >= 0))
            return false;
        if (!node_equal(a, na.lhs, b, nb.lhs))
            return false;
        return na.rhs < 0 || node_equal(a, na.rhs, b, nb.rhs);
    }
    return false;
}

} // namespace

std::string Expr::print() const
{
    std::string out;
    print_node(*this, root_, out);
    return out;
}

bool Expr::operator==(const Expr& other) const
{
    return variables_ == other.variables_ && node_equal(*this, root_, other, other.root_);
}

} // namespace psifrac
