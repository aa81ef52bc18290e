#include "acdc/lang/program.hpp"

#include "acdc/lang/printer.hpp"

namespace acdc::lang {

std::string to_string(const Type& t)
{
    switch (t.kind) {
    case Type::Kind::Void:
        return "void";
    case Type::Kind::Int:
        return "int";
    case Type::Kind::Bool:
        return "bool";
    case Type::Kind::String:
        return "string";
    case Type::Kind::IntArray:
        return "int[" + std::to_string(t.length) + "]";
    }
    return "?";
}

std::string_view to_string(BinaryOp op)
{
    switch (op) {
    case BinaryOp::Add:
        return "+";
    case BinaryOp::Sub:
        return "-";
    case BinaryOp::Mul:
        return "*";
    case BinaryOp::Div:
        return "/";
    case BinaryOp::Mod:
        return "%";
    case BinaryOp::Lt:
        return "<";
    case BinaryOp::Le:
        return "<=";
    case BinaryOp::Gt:
        return ">";
    case BinaryOp::Ge:
        return ">=";
    case BinaryOp::Eq:
        return "==";
    case BinaryOp::Ne:
        return "!=";
    case BinaryOp::And:
        return "&&";
    case BinaryOp::Or:
        return "||";
    }
    return "?";
}

std::string to_string(Stmt::Kind kind)
{
    switch (kind) {
    case Stmt::Kind::VarDecl:
        return "var";
    case Stmt::Kind::Assign:
        return "assign";
    case Stmt::Kind::If:
        return "if";
    case Stmt::Kind::While:
        return "while";
    case Stmt::Kind::Return:
        return "return";
    case Stmt::Kind::Print:
        return "print";
    case Stmt::Kind::Call:
        return "call";
    }
    return "?";
}

std::string_view to_string(Verdict v)
{
    return v == Verdict::Pass ? "PASS" : "FAIL";
}

std::optional<int> Program::find_function(std::string_view name) const
{
    for (std::size_t i = 0; i < functions.size(); ++i) {
        if (functions[i].name == name)
            return static_cast<int>(i);
    }
    return std::nullopt;
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<int> TestSuite::failing() const
{
    std::vector<int> out;
    for (std::size_t i = 0; i < verdicts.size(); ++i)
        if (verdicts[i] == Verdict::Fail)
            out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> TestSuite::passing() const
{
    std::vector<int> out;
    for (std::size_t i = 0; i < verdicts.size(); ++i)
        if (verdicts[i] == Verdict::Pass)
            out.push_back(static_cast<int>(i));
    return out;
}

std::string normalize_newlines(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\r') {
            out.push_back('\n');
            if (i + 1 < text.size() && text[i + 1] == '\n')
                ++i;
        } else {
            out.push_back(text[i]);
        }
    }
    return out;
}

namespace {

int precedence(BinaryOp op)
{
    switch (op) {
    case BinaryOp::Or:
        return 1;
    case BinaryOp::And:
        return 2;
    case BinaryOp::Eq:
    case BinaryOp::Ne:
        return 3;
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
        return 4;
    case BinaryOp::Add:
    case BinaryOp::Sub:
        return 5;
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Mod:
        return 6;
    }
    return 0;
}

constexpr int kUnaryPrecedence = 7;

int precedence(const Expr& e)
{
    if (e.kind == Expr::Kind::Binary)
        return precedence(e.binary);
    if (e.kind == Expr::Kind::Unary)
        return kUnaryPrecedence;
    return 8;
}

std::string escape(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '\n':
            out += "\\n";
            break;
        case '\t':
            out += "\\t";
            break;
        case '"':
            out += "\\\"";
            break;
        case '\\':
            out += "\\\\";
            break;
        default:
            out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

void print(const Expr& e, std::string& out);

void print_child(const Expr& child, int min_prec, std::string& out)
{
    if (precedence(child) < min_prec) {
        out.push_back('(');
        print(child, out);
        out.push_back(')');
    } else {
        print(child, out);
    }
}

void print(const Expr& e, std::string& out)
{
    switch (e.kind) {
    case Expr::Kind::IntLit:
        out += std::to_string(e.int_value);
        break;
    case Expr::Kind::BoolLit:
        out += e.bool_value ? "true" : "false";
        break;
    case Expr::Kind::StrLit:
        out += escape(e.text);
        break;
    case Expr::Kind::Var:
        out += e.text;
        break;
    case Expr::Kind::Index:
        out += e.text;
        out.push_back('[');
        print(*e.operands[0], out);
        out.push_back(']');
        break;
    case Expr::Kind::Unary:
        out += e.unary == UnaryOp::Neg ? "-" : "!";
        print_child(*e.operands[0], kUnaryPrecedence, out);
        break;
    case Expr::Kind::Binary: {
        // All binary operators are left associative.
        const int p = precedence(e.binary);
        print_child(*e.operands[0], p, out);
        out.push_back(' ');
        out += to_string(e.binary);
        out.push_back(' ');
        print_child(*e.operands[1], p + 1, out);
        break;
    }
    case Expr::Kind::Call:
        out += e.text;
        out.push_back('(');
        for (std::size_t i = 0; i < e.operands.size(); ++i) {
            if (i > 0)
                out += ", ";
            print(*e.operands[i], out);
        }
        out.push_back(')');
        break;
    }
}

} // namespace

std::string print_expr(const Expr& expr)
{
    std::string out;
    print(expr, out);
    return out;
}

} // namespace acdc::lang
