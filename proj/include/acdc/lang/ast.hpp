#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "acdc/ids.hpp"

namespace acdc::lang {

struct SourcePos
{
    int line = 1;
    int column = 1;
    std::size_t offset = 0;
};

struct SourceSpan
{
    SourcePos begin;
    std::size_t end_offset = 0; // one past the last byte
};

struct Type
{
    enum class Kind
    {
        Void,
        Int,
        Bool,
        String,
        IntArray,
    };

    Kind kind = Kind::Void;
    std::int64_t length = 0; // IntArray only

    [[nodiscard]] bool is_scalar() const noexcept
    {
        return kind == Kind::Int || kind == Kind::Bool || kind == Kind::String;
    }
    friend bool operator==(const Type&, const Type&) = default;

    static Type void_type() { return {}; }
    static Type int_type() { return {Kind::Int, 0}; }
    static Type bool_type() { return {Kind::Bool, 0}; }
    static Type string_type() { return {Kind::String, 0}; }
    static Type int_array(std::int64_t n) { return {Kind::IntArray, n}; }
};

std::string to_string(const Type& t);

enum class VarScope
{
    Local,
    Global,
};

// A resolved variable: frame slot for locals and parameters, global index otherwise.
struct VarRef
{
    VarScope scope = VarScope::Local;
    int slot = -1;

    friend bool operator==(const VarRef&, const VarRef&) = default;
};

enum class BinaryOp
{
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
    And,
    Or,
};

enum class UnaryOp
{
    Neg,
    Not,
};

std::string_view to_string(BinaryOp op);

struct Expr
{
    enum class Kind
    {
        IntLit,
        BoolLit,
        StrLit,
        Var,
        Index,
        Unary,
        Binary,
        Call,
    };

    Kind kind = Kind::IntLit;
    SourcePos pos;
    Type type;

    std::int64_t int_value = 0;
    bool bool_value = false;
    std::string text; // string literal contents, variable or callee name

    VarRef var;       // Var, Index
    int callee = -1;  // Call: index into Program::functions
    BinaryOp binary = BinaryOp::Add;
    UnaryOp unary = UnaryOp::Neg;

    // Binary: lhs, rhs. Unary: operand. Index: subscript. Call: arguments.
    std::vector<std::unique_ptr<Expr>> operands;
};

struct Stmt
{
    enum class Kind
    {
        VarDecl,
        Assign,
        If,
        While,
        Return,
        Print,
        Call,
    };

    Kind kind = Kind::Print;
    StatementId id;
    SourceSpan span;

    // VarDecl / Assign
    std::string name;
    VarRef target;
    Type decl_type;
    std::unique_ptr<Expr> index; // element assignment `a[i] = v`
    std::unique_ptr<Expr> value; // initializer, assigned value, return value, printed value, call

    // If / While
    std::unique_ptr<Expr> cond;
    SourceSpan cond_span; // the condition text between the parentheses
    PredicateId predicate;
    std::vector<std::unique_ptr<Stmt>> then_body; // while body lives here
    std::vector<std::unique_ptr<Stmt>> else_body;
    bool has_else = false;
};

struct Param
{
    std::string name;
    Type type;
};

struct LocalVar
{
    std::string name;
    Type type;
    bool is_param = false;
};

struct FunctionDecl
{
    std::string name;
    SourcePos pos;
    std::vector<Param> params;
    Type return_type;
    std::vector<std::unique_ptr<Stmt>> body;
    std::vector<LocalVar> locals; // params first, then declarations in source order; index = frame slot
    StatementId first_statement;
    std::int32_t statement_count = 0;
};

struct GlobalVar
{
    std::string name;
    Type type;
    SourcePos pos;
    std::unique_ptr<Expr> init; // literal or negated literal; may be null
};

} // namespace acdc::lang
