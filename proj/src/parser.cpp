#include <cctype>
#include <limits>
#include <optional>

#include "eg/syntax.hpp"

namespace eg {
namespace {

enum class Tok {
    End,
    Identifier,  // lowercase start
    Variable,    // uppercase start
    Number,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Colon,
    If,  // :-
    DotDot,
    Plus,
    Minus,
    Star,
    Slash,
    Backslash,
    Power,
    Bar,
    Eq,
    Ne,
    Lt,
    Gt,
    Le,
    Ge,
    Count,  // #count
    Sum,    // #sum
    Not,
    Inf,
    Sup,
};

std::string describe(Tok tok) {
    switch (tok) {
        case Tok::End: return "end of input";
        case Tok::Identifier: return "identifier";
        case Tok::Variable: return "variable";
        case Tok::Number: return "number";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::Comma: return "','";
        case Tok::Dot: return "'.'";
        case Tok::Colon: return "':'";
        case Tok::If: return "':-'";
        case Tok::DotDot: return "'..'";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Slash: return "'/'";
        case Tok::Backslash: return "'\\'";
        case Tok::Power: return "'**'";
        case Tok::Bar: return "'|'";
        case Tok::Eq: return "'='";
        case Tok::Ne: return "'!='";
        case Tok::Lt: return "'<'";
        case Tok::Gt: return "'>'";
        case Tok::Le: return "'<='";
        case Tok::Ge: return "'>='";
        case Tok::Count: return "'#count'";
        case Tok::Sum: return "'#sum'";
        case Tok::Not: return "'not'";
        case Tok::Inf: return "'inf'";
        case Tok::Sup: return "'sup'";
    }
    return "token";
}

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::uint64_t magnitude = 0;  // numbers are lexed unsigned; sign is applied by the parser
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space_and_comments();
            Token tok;
            tok.line = line_;
            tok.column = column_;
            if (pos_ >= text_.size()) {
                out.push_back(tok);
                return out;
            }
            lex_one(tok);
            out.push_back(std::move(tok));
        }
    }

private:
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
            if (text_[pos_] == '\n') {
                ++line_;
                column_ = 1;
            } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
                ++column_;
            }
            ++pos_;
        }
    }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, column_, message); }

    void skip_space_and_comments() {
        for (;;) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '%' && peek(1) == '*') {
                const std::size_t line = line_;
                const std::size_t column = column_;
                advance(2);
                while (pos_ < text_.size() && !(peek() == '*' && peek(1) == '%')) advance();
                if (pos_ >= text_.size()) throw ParseError(line, column, "unterminated block comment");
                advance(2);
            } else if (c == '%') {
                while (pos_ < text_.size() && peek() != '\n') advance();
            } else {
                return;
            }
        }
    }

    static bool is_ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
    }

    void lex_one(Token& tok) {
        const char c = peek();
        auto simple = [&](Tok kind, std::size_t len) {
            tok.kind = kind;
            tok.text = std::string(text_.substr(pos_, len));
            advance(len);
        };
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t value = 0;
            const std::size_t start = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                const auto digit = static_cast<std::uint64_t>(peek() - '0');
                if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) fail("integer literal too large");
                value = value * 10 + digit;
                advance();
            }
            tok.kind = Tok::Number;
            tok.magnitude = value;
            tok.text = std::string(text_.substr(start, pos_ - start));
            return;
        }
        if (std::islower(static_cast<unsigned char>(c)) || std::isupper(static_cast<unsigned char>(c)) ||
            (c == '_' && is_ident_char(peek(1)))) {
            const std::size_t start = pos_;
            while (is_ident_char(peek())) advance();
            tok.text = std::string(text_.substr(start, pos_ - start));
            std::size_t first = 0;
            while (tok.text[first] == '_') ++first;
            if (first == tok.text.size() || std::isdigit(static_cast<unsigned char>(tok.text[first]))) {
                throw ParseError(tok.line, tok.column, "invalid identifier '" + tok.text + "'");
            }
            if (std::isupper(static_cast<unsigned char>(tok.text[first]))) {
                tok.kind = Tok::Variable;
            } else if (tok.text == "not") {
                tok.kind = Tok::Not;
            } else if (tok.text == "inf") {
                tok.kind = Tok::Inf;
            } else if (tok.text == "sup") {
                tok.kind = Tok::Sup;
            } else {
                tok.kind = Tok::Identifier;
            }
            return;
        }
        switch (c) {
            case '(': return simple(Tok::LParen, 1);
            case ')': return simple(Tok::RParen, 1);
            case '{': return simple(Tok::LBrace, 1);
            case '}': return simple(Tok::RBrace, 1);
            case ',': return simple(Tok::Comma, 1);
            case '.': return peek(1) == '.' ? simple(Tok::DotDot, 2) : simple(Tok::Dot, 1);
            case ':': return peek(1) == '-' ? simple(Tok::If, 2) : simple(Tok::Colon, 1);
            case '+': return simple(Tok::Plus, 1);
            case '-': return simple(Tok::Minus, 1);
            case '*': return peek(1) == '*' ? simple(Tok::Power, 2) : simple(Tok::Star, 1);
            case '/': return simple(Tok::Slash, 1);
            case '\\': return simple(Tok::Backslash, 1);
            case '|': return simple(Tok::Bar, 1);
            case '=': return peek(1) == '=' ? simple(Tok::Eq, 2) : simple(Tok::Eq, 1);
            case '!':
                if (peek(1) == '=') return simple(Tok::Ne, 2);
                break;
            case '<':
                if (peek(1) == '=') return simple(Tok::Le, 2);
                if (peek(1) == '>') return simple(Tok::Ne, 2);
                return simple(Tok::Lt, 1);
            case '>': return peek(1) == '=' ? simple(Tok::Ge, 2) : simple(Tok::Gt, 1);
            case '#': {
                const std::size_t start = pos_;
                advance();
                while (is_ident_char(peek())) advance();
                tok.text = std::string(text_.substr(start, pos_ - start));
                if (tok.text == "#count") {
                    tok.kind = Tok::Count;
                } else if (tok.text == "#sum") {
                    tok.kind = Tok::Sum;
                } else if (tok.text == "#inf") {
                    tok.kind = Tok::Inf;
                } else if (tok.text == "#sup") {
                    tok.kind = Tok::Sup;
                } else {
                    throw ParseError(tok.line, tok.column, "unknown directive '" + tok.text + "'");
                }
                return;
            }
            default: break;
        }
        std::string shown(1, c);
        if (static_cast<unsigned char>(c) >= 0x80) shown = "non-ASCII character";
        fail("unexpected character " + (shown.size() == 1 ? "'" + shown + "'" : shown));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

std::optional<Relation> relation_of(Tok tok) {
    switch (tok) {
        case Tok::Eq: return Relation::Eq;
        case Tok::Ne: return Relation::Ne;
        case Tok::Lt: return Relation::Lt;
        case Tok::Gt: return Relation::Gt;
        case Tok::Le: return Relation::Le;
        case Tok::Ge: return Relation::Ge;
        default: return std::nullopt;
    }
}

const std::vector<std::string> kRelations = {"'='", "'!='", "'<'", "'>'", "'<='", "'>='"};
const std::vector<std::string> kTermStart = {"number", "identifier", "variable", "'inf'", "'sup'",
                                             "'('",    "'-'",        "'|'"};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Program program() {
        Program prog;
        while (peek().kind != Tok::End) prog.rules.push_back(rule());
        return prog;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[i];
    }

    const Token& next() {
        const Token& tok = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return tok;
    }

    bool accept(Tok kind) {
        if (peek().kind != kind) return false;
        next();
        return true;
    }

    [[noreturn]] void fail(const Token& at, const std::string& message, std::vector<std::string> expected = {}) const {
        throw ParseError(at.line, at.column, message, std::move(expected));
    }

    [[noreturn]] void unexpected(std::vector<std::string> expected) const {
        const Token& tok = peek();
        std::string what = tok.kind == Tok::End ? "end of input" : "'" + tok.text + "'";
        fail(tok, "unexpected " + what, std::move(expected));
    }

    const Token& expect(Tok kind) {
        if (peek().kind != kind) unexpected({describe(kind)});
        return next();
    }

    Rule rule() {
        Rule r;
        const Token& start = peek();
        if (accept(Tok::LBrace)) {
            r.kind = Rule::Kind::Choice;
            r.head = atom_only();
            expect(Tok::RBrace);
        } else if (start.kind == Tok::Identifier) {
            r.kind = Rule::Kind::Basic;
            r.head = atom_only();
        } else if (start.kind == Tok::If) {
            r.kind = Rule::Kind::Constraint;
        } else {
            unexpected({"identifier", "'{'", "':-'"});
        }
        if (accept(Tok::If)) {
            if (peek().kind != Tok::Dot) {
                r.body.push_back(body_element());
                while (accept(Tok::Comma)) r.body.push_back(body_element());
            }
        }
        if (peek().kind != Tok::Dot) {
            if (r.kind != Rule::Kind::Constraint && r.body.empty()) {
                unexpected({"':-'", "'.'"});
            }
            unexpected({"','", "'.'"});
        }
        next();
        return r;
    }

    Atom atom_only() {
        const Token& at = peek();
        if (at.kind != Tok::Identifier) unexpected({"identifier"});
        Term t = term();
        Atom a;
        if (!to_atom(t, a)) fail(at, "expected an atom");
        return a;
    }

    static bool to_atom(Term& t, Atom& out) {
        if (t.kind == Term::Kind::Symbol) {
            out.predicate = std::move(t.name);
            return true;
        }
        if (t.kind == Term::Kind::Function) {
            out.predicate = std::move(t.name);
            out.args = std::move(t.args);
            return true;
        }
        return false;
    }

    BodyElement body_element() {
        const Tok kind = peek().kind;
        if (kind == Tok::Count || kind == Tok::Sum) return aggregate();
        return std::visit([](auto&& c) -> BodyElement { return std::forward<decltype(c)>(c); }, condition());
    }

    Condition condition() {
        const Token& at = peek();
        if (accept(Tok::Not)) {
            if (peek().kind != Tok::Identifier) unexpected({"identifier"});
            return Literal{true, atom_only()};
        }
        if (peek().kind == Tok::Count || peek().kind == Tok::Sum) {
            fail(peek(), "aggregates may not occur inside aggregate conditions");
        }
        Term lhs = term();
        if (auto rel = relation_of(peek().kind)) {
            next();
            Term rhs = term();
            return Comparison{std::move(lhs), *rel, std::move(rhs)};
        }
        Atom a;
        if (!to_atom(lhs, a)) {
            std::vector<std::string> expected = kRelations;
            unexpected(expected);
        }
        (void)at;
        return Literal{false, std::move(a)};
    }

    Aggregate aggregate() {
        Aggregate agg;
        agg.function = next().kind == Tok::Count ? AggregateFunction::Count : AggregateFunction::Sum;
        expect(Tok::LBrace);
        agg.tuple.push_back(term());
        while (accept(Tok::Comma)) agg.tuple.push_back(term());
        if (accept(Tok::Colon)) {
            if (peek().kind != Tok::RBrace) {
                agg.condition.push_back(condition());
                while (accept(Tok::Comma)) agg.condition.push_back(condition());
            }
        }
        if (peek().kind != Tok::RBrace) unexpected({"','", "':'", "'}'"});
        next();
        auto rel = relation_of(peek().kind);
        if (!rel) unexpected(kRelations);
        next();
        agg.rel = *rel;
        const Token& at = peek();
        agg.bound = term();
        if (!agg.bound.is_variable() && !agg.bound.is_precomputed()) {
            fail(at, "aggregate bound must be a variable or a precomputed term");
        }
        return agg;
    }

    // term := additive [".." additive]
    Term term() {
        Term lo = additive();
        if (accept(Tok::DotDot)) {
            Term hi = additive();
            return Term::interval(std::move(lo), std::move(hi));
        }
        return lo;
    }

    Term additive() {
        Term lhs = multiplicative();
        for (;;) {
            Operator op;
            if (peek().kind == Tok::Plus) {
                op = Operator::Plus;
            } else if (peek().kind == Tok::Minus) {
                op = Operator::Minus;
            } else {
                return lhs;
            }
            next();
            Term rhs = multiplicative();
            lhs = Term::operation(op, {std::move(lhs), std::move(rhs)});
        }
    }

    Term multiplicative() {
        Term lhs = power();
        for (;;) {
            Operator op;
            switch (peek().kind) {
                case Tok::Star: op = Operator::Times; break;
                case Tok::Slash: op = Operator::Divide; break;
                case Tok::Backslash: op = Operator::Modulo; break;
                default: return lhs;
            }
            next();
            Term rhs = power();
            lhs = Term::operation(op, {std::move(lhs), std::move(rhs)});
        }
    }

    Term power() {
        Term base = unary();
        if (accept(Tok::Power)) {
            Term exponent = power();
            return Term::operation(Operator::Power, {std::move(base), std::move(exponent)});
        }
        return base;
    }

    Term unary() {
        if (peek().kind == Tok::Minus) {
            const Token& minus = next();
            if (peek().kind == Tok::Number) {
                const Token& num = next();
                constexpr auto limit = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) + 1;
                if (num.magnitude > limit) fail(minus, "integer literal out of range");
                if (num.magnitude == limit) return Term::numeral(std::numeric_limits<std::int64_t>::min());
                return Term::numeral(-static_cast<std::int64_t>(num.magnitude));
            }
            return Term::operation(Operator::Negate, {unary()});
        }
        return primary();
    }

    Term primary() {
        const Token& tok = peek();
        switch (tok.kind) {
            case Tok::Number: {
                next();
                if (tok.magnitude > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
                    fail(tok, "integer literal out of range");
                }
                return Term::numeral(static_cast<std::int64_t>(tok.magnitude));
            }
            case Tok::Variable: next(); return Term::variable(tok.text);
            case Tok::Inf: next(); return Term::inf();
            case Tok::Sup: next(); return Term::sup();
            case Tok::Identifier: {
                next();
                if (!accept(Tok::LParen)) return Term::symbol(tok.text);
                if (peek().kind == Tok::RParen) fail(peek(), "empty argument list", kTermStart);
                std::vector<Term> args;
                args.push_back(term());
                while (accept(Tok::Comma)) args.push_back(term());
                if (peek().kind != Tok::RParen) unexpected({"','", "')'"});
                next();
                return Term::function(tok.text, std::move(args));
            }
            case Tok::LParen: {
                next();
                Term inner = term();
                expect(Tok::RParen);
                return inner;
            }
            case Tok::Bar: {
                next();
                Term inner = term();
                expect(Tok::Bar);
                return Term::operation(Operator::Absolute, {std::move(inner)});
            }
            default: unexpected(kTermStart);
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace

Program parse_program(std::string_view text) {
    Lexer lexer(text);
    Parser parser(lexer.run());
    return parser.program();
}

}  // namespace eg
