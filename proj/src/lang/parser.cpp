#include "acdc/lang/parser.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace acdc::lang {

namespace {

std::string join_diagnostics(const std::string& path, const std::vector<Diagnostic>& diags)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < diags.size(); ++i) {
        if (i > 0)
            os << '\n';
        os << path << ':' << diags[i].line << ':' << diags[i].column << ": " << diags[i].message;
    }
    return os.str();
}

} // namespace

CompileError::CompileError(std::string path, std::vector<Diagnostic> diagnostics)
    : Error(join_diagnostics(path, diagnostics)), path_(std::move(path)), diagnostics_(std::move(diagnostics))
{
}

namespace {

//
// Lexer
//

enum class Tok
{
    End,
    Ident,
    Int,
    String,
    KwFunc,
    KwVar,
    KwIf,
    KwElse,
    KwWhile,
    KwReturn,
    KwPrint,
    KwTrue,
    KwFalse,
    KwInt,
    KwBool,
    KwString,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Assign,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Lt,
    Le,
    Gt,
    Ge,
    EqEq,
    Ne,
    AndAnd,
    OrOr,
    Bang,
};

std::string_view spelling(Tok t)
{
    switch (t) {
    case Tok::End:
        return "end of file";
    case Tok::Ident:
        return "identifier";
    case Tok::Int:
        return "integer literal";
    case Tok::String:
        return "string literal";
    case Tok::KwFunc:
        return "'func'";
    case Tok::KwVar:
        return "'var'";
    case Tok::KwIf:
        return "'if'";
    case Tok::KwElse:
        return "'else'";
    case Tok::KwWhile:
        return "'while'";
    case Tok::KwReturn:
        return "'return'";
    case Tok::KwPrint:
        return "'print'";
    case Tok::KwTrue:
        return "'true'";
    case Tok::KwFalse:
        return "'false'";
    case Tok::KwInt:
        return "'int'";
    case Tok::KwBool:
        return "'bool'";
    case Tok::KwString:
        return "'string'";
    case Tok::LParen:
        return "'('";
    case Tok::RParen:
        return "')'";
    case Tok::LBrace:
        return "'{'";
    case Tok::RBrace:
        return "'}'";
    case Tok::LBracket:
        return "'['";
    case Tok::RBracket:
        return "']'";
    case Tok::Comma:
        return "','";
    case Tok::Semi:
        return "';'";
    case Tok::Colon:
        return "':'";
    case Tok::Assign:
        return "'='";
    case Tok::Plus:
        return "'+'";
    case Tok::Minus:
        return "'-'";
    case Tok::Star:
        return "'*'";
    case Tok::Slash:
        return "'/'";
    case Tok::Percent:
        return "'%'";
    case Tok::Lt:
        return "'<'";
    case Tok::Le:
        return "'<='";
    case Tok::Gt:
        return "'>'";
    case Tok::Ge:
        return "'>='";
    case Tok::EqEq:
        return "'=='";
    case Tok::Ne:
        return "'!='";
    case Tok::AndAnd:
        return "'&&'";
    case Tok::OrOr:
        return "'||'";
    case Tok::Bang:
        return "'!'";
    }
    return "?";
}

struct Token
{
    Tok kind = Tok::End;
    SourcePos pos;
    std::size_t end = 0;
    std::string text;
    std::int64_t value = 0;
};

class SyntaxError
{
  public:
    Diagnostic diag;
};

const std::map<std::string, Tok, std::less<>> kKeywords = {
    {"func", Tok::KwFunc},   {"var", Tok::KwVar},       {"if", Tok::KwIf},       {"else", Tok::KwElse},
    {"while", Tok::KwWhile}, {"return", Tok::KwReturn}, {"print", Tok::KwPrint}, {"true", Tok::KwTrue},
    {"false", Tok::KwFalse}, {"int", Tok::KwInt},       {"bool", Tok::KwBool},   {"string", Tok::KwString},
};

class Lexer
{
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        for (;;) {
            skip_trivia();
            Token t;
            t.pos = here();
            if (at_end()) {
                t.kind = Tok::End;
                t.end = pos_;
                out.push_back(t);
                return out;
            }
            lex_one(t);
            t.end = pos_;
            out.push_back(std::move(t));
        }
    }

  private:
    [[nodiscard]] bool at_end() const { return pos_ >= src_.size(); }
    [[nodiscard]] char peek(std::size_t ahead = 0) const
    {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }
    [[nodiscard]] SourcePos here() const { return {line_, col_, pos_}; }

    void advance()
    {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
            ++col_;
        }
        ++pos_;
    }

    [[noreturn]] void fail(SourcePos at, std::string msg) { throw SyntaxError{{at.line, at.column, std::move(msg)}}; }

    void skip_trivia()
    {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (!at_end() && peek() != '\n')
                    advance();
            } else if (c == '/' && peek(1) == '*') {
                SourcePos start = here();
                advance();
                advance();
                while (!(peek() == '*' && peek(1) == '/')) {
                    if (at_end())
                        fail(start, "unterminated block comment");
                    advance();
                }
                advance();
                advance();
            } else {
                return;
            }
        }
    }

    static bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
    static bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

    void lex_one(Token& t)
    {
        const char c = peek();
        if (ident_start(c)) {
            std::size_t start = pos_;
            while (!at_end() && ident_char(peek()))
                advance();
            t.text = std::string(src_.substr(start, pos_ - start));
            auto kw = kKeywords.find(t.text);
            t.kind = kw == kKeywords.end() ? Tok::Ident : kw->second;
            return;
        }
        if (c >= '0' && c <= '9') {
            std::size_t start = pos_;
            while (!at_end() && peek() >= '0' && peek() <= '9')
                advance();
            if (!at_end() && ident_char(peek()))
                fail(here(), "malformed integer literal");
            t.kind = Tok::Int;
            t.text = std::string(src_.substr(start, pos_ - start));
            auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
            if (ec != std::errc{})
                fail(t.pos, "integer literal out of range");
            return;
        }
        if (c == '"') {
            advance();
            t.kind = Tok::String;
            for (;;) {
                if (at_end() || peek() == '\n')
                    fail(t.pos, "unterminated string literal");
                char ch = peek();
                if (ch == '"') {
                    advance();
                    break;
                }
                if (ch == '\\') {
                    advance();
                    switch (peek()) {
                    case 'n':
                        t.text.push_back('\n');
                        break;
                    case 't':
                        t.text.push_back('\t');
                        break;
                    case '"':
                        t.text.push_back('"');
                        break;
                    case '\\':
                        t.text.push_back('\\');
                        break;
                    default:
                        fail(here(), "unknown escape sequence");
                    }
                    advance();
                    continue;
                }
                t.text.push_back(ch);
                advance();
            }
            return;
        }
        auto two = [&](char second, Tok both, Tok single) {
            advance();
            if (peek() == second) {
                advance();
                t.kind = both;
            } else {
                t.kind = single;
            }
        };
        switch (c) {
        case '(':
            t.kind = Tok::LParen;
            break;
        case ')':
            t.kind = Tok::RParen;
            break;
        case '{':
            t.kind = Tok::LBrace;
            break;
        case '}':
            t.kind = Tok::RBrace;
            break;
        case '[':
            t.kind = Tok::LBracket;
            break;
        case ']':
            t.kind = Tok::RBracket;
            break;
        case ',':
            t.kind = Tok::Comma;
            break;
        case ';':
            t.kind = Tok::Semi;
            break;
        case ':':
            t.kind = Tok::Colon;
            break;
        case '+':
            t.kind = Tok::Plus;
            break;
        case '-':
            t.kind = Tok::Minus;
            break;
        case '*':
            t.kind = Tok::Star;
            break;
        case '/':
            t.kind = Tok::Slash;
            break;
        case '%':
            t.kind = Tok::Percent;
            break;
        case '<':
            two('=', Tok::Le, Tok::Lt);
            return;
        case '>':
            two('=', Tok::Ge, Tok::Gt);
            return;
        case '=':
            two('=', Tok::EqEq, Tok::Assign);
            return;
        case '!':
            two('=', Tok::Ne, Tok::Bang);
            return;
        case '&':
            advance();
            if (peek() != '&')
                fail(t.pos, "expected '&&'");
            advance();
            t.kind = Tok::AndAnd;
            return;
        case '|':
            advance();
            if (peek() != '|')
                fail(t.pos, "expected '||'");
            advance();
            t.kind = Tok::OrOr;
            return;
        default:
            fail(t.pos, std::string("unexpected character '") + c + "'");
        }
        advance();
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

//
// Parser: builds an unresolved tree; the checker resolves names and types.
//

class Parser
{
  public:
    Parser(std::vector<Token> toks, Program& prog) : toks_(std::move(toks)), prog_(prog) {}

    void parse_program()
    {
        while (!at(Tok::End)) {
            if (at(Tok::KwVar))
                parse_global();
            else if (at(Tok::KwFunc))
                parse_function();
            else
                unexpected({Tok::KwFunc, Tok::KwVar});
        }
    }

  private:
    [[nodiscard]] const Token& cur() const { return toks_[pos_]; }
    [[nodiscard]] bool at(Tok k) const { return cur().kind == k; }

    const Token& take()
    {
        const Token& t = toks_[pos_];
        if (t.kind != Tok::End)
            ++pos_;
        return t;
    }

    [[noreturn]] void unexpected(std::initializer_list<Tok> expected)
    {
        std::string msg = "expected ";
        if (expected.size() > 1)
            msg += "one of ";
        bool first = true;
        for (Tok k : expected) {
            if (!first)
                msg += ", ";
            msg += spelling(k);
            first = false;
        }
        msg += " but found ";
        msg += cur().kind == Tok::Ident ? "'" + cur().text + "'" : std::string(spelling(cur().kind));
        throw SyntaxError{{cur().pos.line, cur().pos.column, msg}};
    }

    const Token& expect(Tok k)
    {
        if (!at(k))
            unexpected({k});
        return take();
    }

    bool accept(Tok k)
    {
        if (at(k)) {
            take();
            return true;
        }
        return false;
    }

    Type parse_type(bool allow_array)
    {
        Type t;
        if (accept(Tok::KwInt)) {
            t = Type::int_type();
            if (allow_array && accept(Tok::LBracket)) {
                const Token& n = expect(Tok::Int);
                if (n.value <= 0)
                    throw SyntaxError{{n.pos.line, n.pos.column, "array length must be positive"}};
                expect(Tok::RBracket);
                t = Type::int_array(n.value);
            }
        } else if (accept(Tok::KwBool)) {
            t = Type::bool_type();
        } else if (accept(Tok::KwString)) {
            t = Type::string_type();
        } else {
            unexpected({Tok::KwInt, Tok::KwBool, Tok::KwString});
        }
        return t;
    }

    void parse_global()
    {
        expect(Tok::KwVar);
        GlobalVar g;
        const Token& name = expect(Tok::Ident);
        g.name = name.text;
        g.pos = name.pos;
        expect(Tok::Colon);
        g.type = parse_type(true);
        if (accept(Tok::Assign))
            g.init = parse_expr();
        expect(Tok::Semi);
        prog_.globals.push_back(std::move(g));
    }

    void parse_function()
    {
        expect(Tok::KwFunc);
        FunctionDecl f;
        const Token& name = expect(Tok::Ident);
        f.name = name.text;
        f.pos = name.pos;
        expect(Tok::LParen);
        if (!at(Tok::RParen)) {
            do {
                Param p;
                p.name = expect(Tok::Ident).text;
                expect(Tok::Colon);
                p.type = parse_type(false);
                f.params.push_back(std::move(p));
            } while (accept(Tok::Comma));
        }
        expect(Tok::RParen);
        if (accept(Tok::Colon))
            f.return_type = parse_type(false);
        f.body = parse_block();
        prog_.functions.push_back(std::move(f));
    }

    std::vector<std::unique_ptr<Stmt>> parse_block()
    {
        expect(Tok::LBrace);
        std::vector<std::unique_ptr<Stmt>> out;
        while (!at(Tok::RBrace)) {
            if (at(Tok::End))
                unexpected({Tok::RBrace});
            out.push_back(parse_stmt());
        }
        take();
        return out;
    }

    // A branch or loop body: a braced block or a single statement.
    std::vector<std::unique_ptr<Stmt>> parse_body()
    {
        if (at(Tok::LBrace))
            return parse_block();
        std::vector<std::unique_ptr<Stmt>> out;
        out.push_back(parse_stmt());
        return out;
    }

    void finish(Stmt& s, const Token& first)
    {
        s.span.begin = first.pos;
        s.span.end_offset = toks_[pos_ - 1].end;
    }

    std::unique_ptr<Stmt> parse_stmt()
    {
        auto s = std::make_unique<Stmt>();
        const Token& first = cur();
        switch (first.kind) {
        case Tok::KwVar: {
            take();
            s->kind = Stmt::Kind::VarDecl;
            s->span.begin = first.pos;
            s->name = expect(Tok::Ident).text;
            expect(Tok::Colon);
            s->decl_type = parse_type(true);
            if (accept(Tok::Assign))
                s->value = parse_expr();
            expect(Tok::Semi);
            break;
        }
        case Tok::KwIf:
        case Tok::KwWhile: {
            take();
            s->kind = first.kind == Tok::KwIf ? Stmt::Kind::If : Stmt::Kind::While;
            const Token& open = expect(Tok::LParen);
            s->cond = parse_expr();
            const Token& close = expect(Tok::RParen);
            s->cond_span.begin = toks_[&open - toks_.data() + 1].pos;
            s->cond_span.end_offset = toks_[&close - toks_.data() - 1].end;
            // The statement's span covers the header only.
            finish(*s, first);
            s->then_body = parse_body();
            if (s->kind == Stmt::Kind::If && accept(Tok::KwElse)) {
                s->has_else = true;
                s->else_body = parse_body();
            }
            return s;
        }
        case Tok::KwReturn:
            take();
            s->kind = Stmt::Kind::Return;
            if (!at(Tok::Semi))
                s->value = parse_expr();
            expect(Tok::Semi);
            break;
        case Tok::KwPrint:
            take();
            s->kind = Stmt::Kind::Print;
            expect(Tok::LParen);
            s->value = parse_expr();
            expect(Tok::RParen);
            expect(Tok::Semi);
            break;
        case Tok::Ident: {
            const Token& name = take();
            if (at(Tok::LParen)) {
                s->kind = Stmt::Kind::Call;
                s->value = parse_call(name);
            } else {
                s->kind = Stmt::Kind::Assign;
                s->name = name.text;
                if (accept(Tok::LBracket)) {
                    s->index = parse_expr();
                    expect(Tok::RBracket);
                }
                expect(Tok::Assign);
                s->value = parse_expr();
            }
            expect(Tok::Semi);
            break;
        }
        default:
            unexpected({Tok::KwVar, Tok::KwIf, Tok::KwWhile, Tok::KwReturn, Tok::KwPrint, Tok::Ident});
        }
        finish(*s, first);
        return s;
    }

    std::unique_ptr<Expr> make(Expr::Kind kind, SourcePos pos)
    {
        auto e = std::make_unique<Expr>();
        e->kind = kind;
        e->pos = pos;
        return e;
    }

    std::unique_ptr<Expr> parse_expr() { return parse_binary(1); }

    static int binary_prec(Tok k)
    {
        switch (k) {
        case Tok::OrOr:
            return 1;
        case Tok::AndAnd:
            return 2;
        case Tok::EqEq:
        case Tok::Ne:
            return 3;
        case Tok::Lt:
        case Tok::Le:
        case Tok::Gt:
        case Tok::Ge:
            return 4;
        case Tok::Plus:
        case Tok::Minus:
            return 5;
        case Tok::Star:
        case Tok::Slash:
        case Tok::Percent:
            return 6;
        default:
            return 0;
        }
    }

    static BinaryOp binary_op(Tok k)
    {
        switch (k) {
        case Tok::OrOr:
            return BinaryOp::Or;
        case Tok::AndAnd:
            return BinaryOp::And;
        case Tok::EqEq:
            return BinaryOp::Eq;
        case Tok::Ne:
            return BinaryOp::Ne;
        case Tok::Lt:
            return BinaryOp::Lt;
        case Tok::Le:
            return BinaryOp::Le;
        case Tok::Gt:
            return BinaryOp::Gt;
        case Tok::Ge:
            return BinaryOp::Ge;
        case Tok::Plus:
            return BinaryOp::Add;
        case Tok::Minus:
            return BinaryOp::Sub;
        case Tok::Star:
            return BinaryOp::Mul;
        case Tok::Slash:
            return BinaryOp::Div;
        default:
            return BinaryOp::Mod;
        }
    }

    std::unique_ptr<Expr> parse_binary(int min_prec)
    {
        auto lhs = parse_unary();
        for (;;) {
            const int p = binary_prec(cur().kind);
            if (p == 0 || p < min_prec)
                return lhs;
            const Token& op = take();
            auto rhs = parse_binary(p + 1);
            auto e = make(Expr::Kind::Binary, op.pos);
            e->binary = binary_op(op.kind);
            e->operands.push_back(std::move(lhs));
            e->operands.push_back(std::move(rhs));
            lhs = std::move(e);
        }
    }

    std::unique_ptr<Expr> parse_unary()
    {
        if (at(Tok::Minus) || at(Tok::Bang)) {
            const Token& op = take();
            auto e = make(Expr::Kind::Unary, op.pos);
            e->unary = op.kind == Tok::Minus ? UnaryOp::Neg : UnaryOp::Not;
            e->operands.push_back(parse_unary());
            return e;
        }
        return parse_primary();
    }

    std::unique_ptr<Expr> parse_call(const Token& name)
    {
        auto e = make(Expr::Kind::Call, name.pos);
        e->text = name.text;
        expect(Tok::LParen);
        if (!at(Tok::RParen)) {
            do {
                e->operands.push_back(parse_expr());
            } while (accept(Tok::Comma));
        }
        expect(Tok::RParen);
        return e;
    }

    std::unique_ptr<Expr> parse_primary()
    {
        const Token& t = cur();
        switch (t.kind) {
        case Tok::Int: {
            take();
            auto e = make(Expr::Kind::IntLit, t.pos);
            e->int_value = t.value;
            return e;
        }
        case Tok::KwTrue:
        case Tok::KwFalse: {
            take();
            auto e = make(Expr::Kind::BoolLit, t.pos);
            e->bool_value = t.kind == Tok::KwTrue;
            return e;
        }
        case Tok::String: {
            take();
            auto e = make(Expr::Kind::StrLit, t.pos);
            e->text = t.text;
            return e;
        }
        case Tok::LParen: {
            take();
            auto e = parse_expr();
            expect(Tok::RParen);
            return e;
        }
        case Tok::Ident: {
            take();
            if (at(Tok::LParen))
                return parse_call(t);
            if (accept(Tok::LBracket)) {
                auto e = make(Expr::Kind::Index, t.pos);
                e->text = t.text;
                e->operands.push_back(parse_expr());
                expect(Tok::RBracket);
                return e;
            }
            auto e = make(Expr::Kind::Var, t.pos);
            e->text = t.text;
            return e;
        }
        default:
            unexpected({Tok::Int, Tok::String, Tok::KwTrue, Tok::KwFalse, Tok::Ident, Tok::LParen, Tok::Minus,
                        Tok::Bang});
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Program& prog_;
};

//
// Checker: scopes, types, identifier assignment.
//

class Checker
{
  public:
    explicit Checker(Program& p) : prog_(p) {}

    std::vector<Diagnostic> run()
    {
        check_globals();
        check_signatures();
        for (std::size_t i = 0; i < prog_.functions.size(); ++i)
            check_function(static_cast<int>(i));
        auto main = prog_.find_function("main");
        if (!main) {
            error({1, 1, 0}, "missing function 'main'");
        } else {
            prog_.main_function = *main;
            for (const auto& param : prog_.function(*main).params)
                if (param.type != Type::int_type())
                    error(prog_.function(*main).pos, "parameter '" + param.name + "' of 'main' must be int");
        }
        return std::move(diags_);
    }

  private:
    void error(SourcePos at, std::string msg) { diags_.push_back({at.line, at.column, std::move(msg)}); }

    void check_globals()
    {
        for (std::size_t i = 0; i < prog_.globals.size(); ++i) {
            GlobalVar& g = prog_.globals[i];
            if (global_index_.count(g.name)) {
                error(g.pos, "duplicate declaration of '" + g.name + "'");
                continue;
            }
            global_index_[g.name] = static_cast<int>(i);
            if (!g.init)
                continue;
            if (g.type.kind == Type::Kind::IntArray) {
                error(g.pos, "array '" + g.name + "' cannot have an initializer");
                continue;
            }
            const Expr& init = *g.init;
            const bool literal = init.kind == Expr::Kind::IntLit || init.kind == Expr::Kind::BoolLit ||
                                 init.kind == Expr::Kind::StrLit ||
                                 (init.kind == Expr::Kind::Unary && init.unary == UnaryOp::Neg &&
                                  init.operands[0]->kind == Expr::Kind::IntLit);
            if (!literal) {
                error(init.pos, "global initializer must be a literal");
                continue;
            }
            Type t = init.kind == Expr::Kind::BoolLit  ? Type::bool_type()
                     : init.kind == Expr::Kind::StrLit ? Type::string_type()
                                                       : Type::int_type();
            g.init->type = t;
            if (init.kind == Expr::Kind::Unary)
                g.init->operands[0]->type = t;
            if (t != g.type)
                error(init.pos, "type mismatch: cannot initialize " + to_string(g.type) + " '" + g.name + "' with " +
                                    to_string(t));
        }
    }

    void check_signatures()
    {
        for (std::size_t i = 0; i < prog_.functions.size(); ++i) {
            FunctionDecl& f = prog_.functions[i];
            if (function_index_.count(f.name))
                error(f.pos, "duplicate declaration of function '" + f.name + "'");
            else
                function_index_[f.name] = static_cast<int>(i);
        }
    }

    struct Scope
    {
        std::unordered_map<std::string, int> names;
    };

    void check_function(int index)
    {
        FunctionDecl& f = prog_.functions[static_cast<std::size_t>(index)];
        fn_ = &f;
        fn_index_ = index;
        scopes_.clear();
        scopes_.emplace_back();
        all_names_.clear();
        f.locals.clear();
        for (const Param& p : f.params) {
            if (!declare_local(p.name, p.type, true))
                error(f.pos, "duplicate declaration of parameter '" + p.name + "'");
        }
        f.first_statement = StatementId(static_cast<std::int32_t>(prog_.statements.size()));
        check_block(f.body, false);
        f.statement_count = static_cast<std::int32_t>(prog_.statements.size()) - f.first_statement.value;
    }

    bool declare_local(const std::string& name, Type type, bool is_param)
    {
        if (all_names_.count(name) || global_index_.count(name))
            return false;
        all_names_.insert(name);
        const int slot = static_cast<int>(fn_->locals.size());
        fn_->locals.push_back({name, type, is_param});
        scopes_.back().names[name] = slot;
        return true;
    }

    std::optional<std::pair<VarRef, Type>> lookup(const std::string& name) const
    {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto found = it->names.find(name);
            if (found != it->names.end())
                return std::pair{VarRef{VarScope::Local, found->second},
                                 fn_->locals[static_cast<std::size_t>(found->second)].type};
        }
        auto g = global_index_.find(name);
        if (g != global_index_.end())
            return std::pair{VarRef{VarScope::Global, g->second}, prog_.globals[static_cast<std::size_t>(g->second)].type};
        return std::nullopt;
    }

    void check_block(std::vector<std::unique_ptr<Stmt>>& body, bool new_scope)
    {
        if (new_scope)
            scopes_.emplace_back();
        for (auto& s : body)
            check_stmt(*s);
        if (new_scope)
            scopes_.pop_back();
    }

    void register_statement(Stmt& s)
    {
        s.id = StatementId(static_cast<std::int32_t>(prog_.statements.size()));
        StatementInfo info;
        info.kind = s.kind;
        info.function = fn_index_;
        info.span = s.span;
        info.node = &s;
        if (s.kind == Stmt::Kind::If || s.kind == Stmt::Kind::While) {
            s.predicate = PredicateId(static_cast<std::int32_t>(prog_.predicates.size()));
            info.predicate = s.predicate;
            prog_.predicates.push_back({s.id, fn_index_, s.cond_span});
        }
        prog_.statements.push_back(info);
    }

    void check_stmt(Stmt& s)
    {
        register_statement(s);
        switch (s.kind) {
        case Stmt::Kind::VarDecl: {
            if (s.value) {
                Type t = check_expr(*s.value);
                if (s.decl_type.kind == Type::Kind::IntArray)
                    error(s.span.begin, "array '" + s.name + "' cannot have an initializer");
                else if (t.kind != Type::Kind::Void && t != s.decl_type)
                    error(s.value->pos, "type mismatch: cannot initialize " + to_string(s.decl_type) + " '" + s.name +
                                            "' with " + to_string(t));
            }
            if (!declare_local(s.name, s.decl_type, false))
                error(s.span.begin, "duplicate declaration of '" + s.name + "'");
            s.target = VarRef{VarScope::Local, scopes_.back().names.count(s.name) ? scopes_.back().names[s.name] : -1};
            break;
        }
        case Stmt::Kind::Assign: {
            auto var = lookup(s.name);
            if (!var) {
                error(s.span.begin, "use of undeclared variable '" + s.name + "'");
                check_expr(*s.value);
                if (s.index)
                    check_expr(*s.index);
                break;
            }
            s.target = var->first;
            Type target_type = var->second;
            if (s.index) {
                if (target_type.kind != Type::Kind::IntArray)
                    error(s.span.begin, "'" + s.name + "' is not an array");
                expect_type(*s.index, Type::int_type(), "array index");
                target_type = Type::int_type();
            } else if (target_type.kind == Type::Kind::IntArray) {
                error(s.span.begin, "cannot assign to whole array '" + s.name + "'");
            }
            Type t = check_expr(*s.value);
            if (t.kind != Type::Kind::Void && target_type.is_scalar() && t != target_type)
                error(s.value->pos, "type mismatch: cannot assign " + to_string(t) + " to " + to_string(target_type) +
                                        " '" + s.name + "'");
            break;
        }
        case Stmt::Kind::If:
        case Stmt::Kind::While:
            expect_type(*s.cond, Type::bool_type(), "condition");
            check_block(s.then_body, true);
            if (s.has_else)
                check_block(s.else_body, true);
            break;
        case Stmt::Kind::Return:
            if (fn_->return_type.kind == Type::Kind::Void) {
                if (s.value) {
                    error(s.span.begin, "function '" + fn_->name + "' does not return a value");
                    check_expr(*s.value);
                }
            } else if (!s.value) {
                error(s.span.begin, "missing return value in function '" + fn_->name + "'");
            } else {
                expect_type(*s.value, fn_->return_type, "return value");
            }
            break;
        case Stmt::Kind::Print: {
            Type t = check_expr(*s.value);
            if (!t.is_scalar() && t.kind != Type::Kind::Void)
                error(s.value->pos, "print expects a scalar value");
            else if (t.kind == Type::Kind::Void && s.value->kind == Expr::Kind::Call)
                error(s.value->pos, "print expects a value but '" + s.value->text + "' returns nothing");
            break;
        }
        case Stmt::Kind::Call:
            check_call(*s.value, true);
            break;
        }
    }

    void expect_type(Expr& e, Type want, std::string_view what)
    {
        Type t = check_expr(e);
        if (t.kind == Type::Kind::Void && e.kind != Expr::Kind::Call)
            return; // already reported
        if (t != want)
            error(e.pos, "type mismatch: " + std::string(what) + " must be " + to_string(want) + ", found " +
                             to_string(t));
    }

    Type check_call(Expr& e, bool as_statement)
    {
        auto found = function_index_.find(e.text);
        for (auto& arg : e.operands)
            check_expr(*arg);
        if (found == function_index_.end()) {
            error(e.pos, "call to undeclared function '" + e.text + "'");
            return e.type = Type::void_type();
        }
        e.callee = found->second;
        const FunctionDecl& f = prog_.function(e.callee);
        if (f.params.size() != e.operands.size()) {
            error(e.pos, "function '" + e.text + "' expects " + std::to_string(f.params.size()) + " argument(s), got " +
                             std::to_string(e.operands.size()));
        } else {
            for (std::size_t i = 0; i < f.params.size(); ++i) {
                const Type& at = e.operands[i]->type;
                if (at.kind != Type::Kind::Void && at != f.params[i].type)
                    error(e.operands[i]->pos, "type mismatch: argument " + std::to_string(i + 1) + " of '" + e.text +
                                                  "' must be " + to_string(f.params[i].type) + ", found " +
                                                  to_string(at));
            }
        }
        if (!as_statement && f.return_type.kind == Type::Kind::Void)
            error(e.pos, "function '" + e.text + "' returns nothing and cannot be used as a value");
        return e.type = f.return_type;
    }

    Type check_expr(Expr& e)
    {
        switch (e.kind) {
        case Expr::Kind::IntLit:
            return e.type = Type::int_type();
        case Expr::Kind::BoolLit:
            return e.type = Type::bool_type();
        case Expr::Kind::StrLit:
            return e.type = Type::string_type();
        case Expr::Kind::Var: {
            auto var = lookup(e.text);
            if (!var) {
                error(e.pos, "use of undeclared variable '" + e.text + "'");
                return e.type = Type::void_type();
            }
            e.var = var->first;
            if (var->second.kind == Type::Kind::IntArray) {
                error(e.pos, "array '" + e.text + "' used as a value");
                return e.type = Type::void_type();
            }
            return e.type = var->second;
        }
        case Expr::Kind::Index: {
            auto var = lookup(e.text);
            expect_type(*e.operands[0], Type::int_type(), "array index");
            if (!var) {
                error(e.pos, "use of undeclared variable '" + e.text + "'");
                return e.type = Type::void_type();
            }
            e.var = var->first;
            if (var->second.kind != Type::Kind::IntArray)
                error(e.pos, "'" + e.text + "' is not an array");
            return e.type = Type::int_type();
        }
        case Expr::Kind::Unary:
            if (e.unary == UnaryOp::Neg) {
                expect_type(*e.operands[0], Type::int_type(), "operand of '-'");
                return e.type = Type::int_type();
            }
            expect_type(*e.operands[0], Type::bool_type(), "operand of '!'");
            return e.type = Type::bool_type();
        case Expr::Kind::Binary:
            return e.type = check_binary(e);
        case Expr::Kind::Call:
            return check_call(e, false);
        }
        return e.type;
    }

    Type check_binary(Expr& e)
    {
        const std::string op(to_string(e.binary));
        switch (e.binary) {
        case BinaryOp::Add:
        case BinaryOp::Sub:
        case BinaryOp::Mul:
        case BinaryOp::Div:
        case BinaryOp::Mod:
            expect_type(*e.operands[0], Type::int_type(), "operand of '" + op + "'");
            expect_type(*e.operands[1], Type::int_type(), "operand of '" + op + "'");
            return Type::int_type();
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge:
            expect_type(*e.operands[0], Type::int_type(), "operand of '" + op + "'");
            expect_type(*e.operands[1], Type::int_type(), "operand of '" + op + "'");
            return Type::bool_type();
        case BinaryOp::Eq:
        case BinaryOp::Ne: {
            Type l = check_expr(*e.operands[0]);
            Type r = check_expr(*e.operands[1]);
            if (l.kind != Type::Kind::Void && r.kind != Type::Kind::Void && (l != r || !l.is_scalar()))
                error(e.pos, "type mismatch: cannot compare " + to_string(l) + " with " + to_string(r));
            return Type::bool_type();
        }
        case BinaryOp::And:
        case BinaryOp::Or:
            expect_type(*e.operands[0], Type::bool_type(), "operand of '" + op + "'");
            expect_type(*e.operands[1], Type::bool_type(), "operand of '" + op + "'");
            return Type::bool_type();
        }
        return Type::void_type();
    }

    Program& prog_;
    std::vector<Diagnostic> diags_;
    std::unordered_map<std::string, int> global_index_;
    std::unordered_map<std::string, int> function_index_;
    FunctionDecl* fn_ = nullptr;
    int fn_index_ = -1;
    std::vector<Scope> scopes_;
    std::set<std::string> all_names_;
};

} // namespace

Program parse(std::string_view source, std::string path)
{
    Program prog;
    prog.source = std::string(source);
    prog.path = path;
    prog.source_digest = fnv1a64(source);
    try {
        Parser parser(Lexer(prog.source).run(), prog);
        parser.parse_program();
    } catch (const SyntaxError& e) {
        throw CompileError(std::move(path), {e.diag});
    }
    auto diags = Checker(prog).run();
    if (!diags.empty())
        throw CompileError(std::move(path), std::move(diags));
    return prog;
}

Program parse_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open source file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

std::vector<PredicateId> predicate_sites(const Program& program)
{
    std::vector<PredicateId> out;
    out.reserve(program.predicates.size());
    for (std::size_t i = 0; i < program.predicates.size(); ++i)
        out.emplace_back(static_cast<std::int32_t>(i));
    return out;
}

} // namespace acdc::lang
