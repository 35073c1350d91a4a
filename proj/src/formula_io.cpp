#include <algorithm>
#include <cctype>
#include <limits>
#include <ostream>
#include <sstream>

#include "eg/formula.hpp"

namespace eg {
namespace {

constexpr int kIffPrec = 1;
constexpr int kImpliesPrec = 2;
constexpr int kOrPrec = 3;
constexpr int kAndPrec = 4;
constexpr int kUnaryPrec = 5;

int precedence(const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::Iff: return kIffPrec;
        case Formula::Kind::Implies: return kImpliesPrec;
        case Formula::Kind::Or: return kOrPrec;
        case Formula::Kind::And: return kAndPrec;
        default: return kUnaryPrec;
    }
}

struct Symbols {
    std::string_view forall, exists, neg, conj, disj, imp, eqv, in, bottom, top;
};

constexpr Symbols kAscii{"forall ", "exists ", "not ", " & ", " | ", " -> ", " <-> ", " in ", "#false", "#true"};
constexpr Symbols kUtf8{"∀", "∃", "¬", " ∧ ", " ∨ ", " → ", " ↔ ", " ∈ ", "⊥", "⊤"};

class Printer {
public:
    Printer(std::ostream& out, const RenderOptions& options)
        : out_(out), options_(options), sym_(options.utf8 ? kUtf8 : kAscii) {}

    void formula(const Formula& f, int min_prec) {
        const bool parens = precedence(f) < min_prec;
        if (parens) out_ << "(";
        switch (f.kind) {
            case Formula::Kind::Atom:
                out_ << f.predicate;
                if (!f.args.empty()) {
                    out_ << "(";
                    for (std::size_t i = 0; i < f.args.size(); ++i) {
                        if (i > 0) out_ << ",";
                        argument(f.args[i]);
                    }
                    out_ << ")";
                }
                break;
            case Formula::Kind::Compare:
                argument(f.args[0]);
                out_ << " " << (options_.utf8 ? utf8_symbol(f.rel) : symbol(f.rel)) << " ";
                argument(f.args[1]);
                break;
            case Formula::Kind::Member:
                argument(f.args[0]);
                out_ << sym_.in << to_string(f.term);
                break;
            case Formula::Kind::Bottom: out_ << sym_.bottom; break;
            case Formula::Kind::Top: out_ << sym_.top; break;
            case Formula::Kind::Not:
                out_ << sym_.neg;
                formula(f.children[0], kUnaryPrec);
                break;
            case Formula::Kind::And: nary(f, sym_.conj, kAndPrec); break;
            case Formula::Kind::Or: nary(f, sym_.disj, kOrPrec); break;
            case Formula::Kind::Implies:
                formula(f.children[0], kImpliesPrec + 1);
                out_ << sym_.imp;
                formula(f.children[1], kImpliesPrec);
                break;
            case Formula::Kind::Iff:
                formula(f.children[0], kIffPrec + 1);
                out_ << sym_.eqv;
                formula(f.children[1], kIffPrec + 1);
                break;
            case Formula::Kind::Forall:
            case Formula::Kind::Exists:
                out_ << (f.kind == Formula::Kind::Forall ? sym_.forall : sym_.exists);
                for (std::size_t i = 0; i < f.vars.size(); ++i) {
                    if (i > 0) out_ << " ";
                    out_ << f.vars[i].name;
                }
                out_ << " (";
                formula(f.children[0], 0);
                out_ << ")";
                break;
        }
        if (parens) out_ << ")";
    }

    void argument(const Argument& a) {
        if (!a.contains_aggregate()) {
            out_ << to_string(*to_term(a));
            return;
        }
        if (a.kind == Argument::Kind::Function) {
            out_ << a.name << "(";
            for (std::size_t i = 0; i < a.args.size(); ++i) {
                if (i > 0) out_ << ",";
                argument(a.args[i]);
            }
            out_ << ")";
            return;
        }
        out_ << "#" << name(a.function) << "{";
        for (std::size_t i = 0; i < a.bound.size(); ++i) {
            if (i > 0) out_ << ",";
            out_ << a.bound[i].name;
        }
        out_ << " : ";
        formula(a.condition(), 0);
        out_ << "}";
    }

private:
    void nary(const Formula& f, std::string_view sep, int prec) {
        for (std::size_t i = 0; i < f.children.size(); ++i) {
            if (i > 0) out_ << sep;
            formula(f.children[i], prec + 1);
        }
    }

    std::ostream& out_;
    const RenderOptions& options_;
    Symbols sym_;
};

// ---------------------------------------------------------------------------
// Reading formulas back.

enum class T {
    End,
    Ident,
    Var,
    Num,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    DotDot,
    Plus,
    Minus,
    Star,
    Slash,
    Backslash,
    Power,
    Bar,
    Amp,
    Arrow,
    DArrow,
    Rel,
    Not,
    Forall,
    Exists,
    In,
    True,
    False,
    Count,
    Sum,
    Inf,
    Sup,
    Neg,  // unary minus is lexed as Minus; Neg is unused placeholder
};

struct Tk {
    T kind = T::End;
    std::string text;
    std::uint64_t magnitude = 0;
    Relation rel = Relation::Eq;
    std::size_t column = 1;
};

std::vector<Tk> lex_formula(std::string_view s) {
    std::vector<Tk> out;
    std::size_t i = 0;
    std::size_t column = 1;
    auto push = [&](T kind, std::size_t len, Relation rel = Relation::Eq) {
        Tk t;
        t.kind = kind;
        t.text = std::string(s.substr(i, len));
        t.rel = rel;
        t.column = column;
        out.push_back(std::move(t));
        i += len;
        ++column;
    };
    auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            ++column;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Tk t;
            t.kind = T::Num;
            t.column = column;
            const std::size_t start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                const auto d = static_cast<std::uint64_t>(s[i] - '0');
                if (t.magnitude > (std::numeric_limits<std::uint64_t>::max() - d) / 10) {
                    throw ParseError(1, column, "integer literal too large");
                }
                t.magnitude = t.magnitude * 10 + d;
                ++i;
            }
            t.text = std::string(s.substr(start, i - start));
            column += i - start;
            out.push_back(std::move(t));
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            Tk t;
            t.column = column;
            const std::size_t start = i;
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\'')) ++i;
            t.text = std::string(s.substr(start, i - start));
            column += i - start;
            std::size_t first = 0;
            while (first < t.text.size() && t.text[first] == '_') ++first;
            if (first < t.text.size() && std::isupper(static_cast<unsigned char>(t.text[first]))) {
                t.kind = T::Var;
            } else if (t.text == "not") {
                t.kind = T::Not;
            } else if (t.text == "forall") {
                t.kind = T::Forall;
            } else if (t.text == "exists") {
                t.kind = T::Exists;
            } else if (t.text == "in" && !(i < s.size() && s[i] == '(')) {
                // in(...) is an atom of the predicate in.
                t.kind = T::In;
            } else if (t.text == "inf") {
                t.kind = T::Inf;
            } else if (t.text == "sup") {
                t.kind = T::Sup;
            } else {
                t.kind = T::Ident;
            }
            out.push_back(std::move(t));
            continue;
        }
        if (starts("<->")) { push(T::DArrow, 3); continue; }
        if (starts("->")) { push(T::Arrow, 2); continue; }
        if (starts("<=")) { push(T::Rel, 2, Relation::Le); continue; }
        if (starts(">=")) { push(T::Rel, 2, Relation::Ge); continue; }
        if (starts("!=")) { push(T::Rel, 2, Relation::Ne); continue; }
        if (starts("**")) { push(T::Power, 2); continue; }
        if (starts("..")) { push(T::DotDot, 2); continue; }
        if (starts("#true")) { push(T::True, 5); continue; }
        if (starts("#false")) { push(T::False, 6); continue; }
        if (starts("#count")) { push(T::Count, 6); continue; }
        if (starts("#sum")) { push(T::Sum, 4); continue; }
        if (starts("∀")) { push(T::Forall, 3); continue; }
        if (starts("∃")) { push(T::Exists, 3); continue; }
        if (starts("¬")) { push(T::Not, 2); continue; }
        if (starts("∧")) { push(T::Amp, 3); continue; }
        if (starts("∨")) { push(T::Bar, 3); continue; }
        if (starts("→")) { push(T::Arrow, 3); continue; }
        if (starts("↔")) { push(T::DArrow, 3); continue; }
        if (starts("∈")) { push(T::In, 3); continue; }
        if (starts("≠")) { push(T::Rel, 3, Relation::Ne); continue; }
        if (starts("≤")) { push(T::Rel, 3, Relation::Le); continue; }
        if (starts("≥")) { push(T::Rel, 3, Relation::Ge); continue; }
        if (starts("⊥")) { push(T::False, 3); continue; }
        if (starts("⊤")) { push(T::True, 3); continue; }
        switch (c) {
            case '(': push(T::LParen, 1); continue;
            case ')': push(T::RParen, 1); continue;
            case '{': push(T::LBrace, 1); continue;
            case '}': push(T::RBrace, 1); continue;
            case ',': push(T::Comma, 1); continue;
            case ':': push(T::Colon, 1); continue;
            case '+': push(T::Plus, 1); continue;
            case '-': push(T::Minus, 1); continue;
            case '*': push(T::Star, 1); continue;
            case '/': push(T::Slash, 1); continue;
            case '\\': push(T::Backslash, 1); continue;
            case '|': push(T::Bar, 1); continue;
            case '&': push(T::Amp, 1); continue;
            case '=': push(T::Rel, 1, Relation::Eq); continue;
            case '<': push(T::Rel, 1, Relation::Lt); continue;
            case '>': push(T::Rel, 1, Relation::Gt); continue;
            default: break;
        }
        throw ParseError(1, column, std::string("unexpected character '") + c + "'");
    }
    Tk end;
    end.column = column;
    out.push_back(end);
    return out;
}

bool integer_name(const std::string& name) {
    return !name.empty() && std::string_view("IJKLMN").find(name.front()) != std::string_view::npos;
}

Variable variable_named(const std::string& name) {
    return integer_name(name) ? Variable::integer(name) : Variable::general(name);
}

class FormulaParser {
public:
    explicit FormulaParser(std::vector<Tk> tokens) : toks_(std::move(tokens)) {}

    Formula parse() {
        Formula f = iff();
        if (peek().kind != T::End) fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Tk& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Tk& next() {
        const Tk& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool accept(T kind) {
        if (peek().kind != kind) return false;
        next();
        return true;
    }
    void expect(T kind, const char* what) {
        if (!accept(kind)) fail(std::string("expected ") + what);
    }
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(1, peek().column, message); }

    Formula iff() {
        Formula lhs = implies();
        if (accept(T::DArrow)) return Formula::iff(std::move(lhs), implies());
        return lhs;
    }

    Formula implies() {
        Formula lhs = disjunction();
        if (accept(T::Arrow)) return Formula::implies(std::move(lhs), implies());
        return lhs;
    }

    Formula disjunction() {
        std::vector<Formula> parts{conjunction()};
        while (accept(T::Bar)) parts.push_back(conjunction());
        return Formula::disjunction(std::move(parts));
    }

    Formula conjunction() {
        std::vector<Formula> parts{unary()};
        while (accept(T::Amp)) parts.push_back(unary());
        return Formula::conjunction(std::move(parts));
    }

    Formula unary() {
        switch (peek().kind) {
            case T::Not: next(); return Formula::negation(unary());
            case T::True: next(); return Formula::top();
            case T::False: next(); return Formula::bottom();
            case T::Forall:
            case T::Exists: {
                const bool universal = next().kind == T::Forall;
                std::vector<Variable> vars;
                while (peek().kind == T::Var) vars.push_back(variable_named(next().text));
                if (vars.empty()) fail("expected a variable after quantifier");
                expect(T::LParen, "'('");
                Formula body = iff();
                expect(T::RParen, "')'");
                return universal ? Formula::forall(std::move(vars), std::move(body))
                                 : Formula::exists(std::move(vars), std::move(body));
            }
            case T::LParen: {
                const std::size_t saved = pos_;
                try {
                    return atomic();
                } catch (const ParseError&) {
                    pos_ = saved;
                }
                next();
                Formula inner = iff();
                expect(T::RParen, "')'");
                return inner;
            }
            default: return atomic();
        }
    }

    Formula atomic() {
        Term t = term(0);
        if (accept(T::In)) {
            Argument lhs = argument_of(t);
            Term rhs = term(0);
            if (has_placeholder(rhs)) fail("an aggregate is not a term");
            return Formula::member(std::move(lhs), std::move(rhs));
        }
        if (peek().kind == T::Rel) return comparison_tail(argument_of(t));
        if (has_placeholder(t) && t.kind != Term::Kind::Function) fail("expected a relation");
        if (t.kind == Term::Kind::Symbol) return Formula::atom(t.name);
        if (t.kind == Term::Kind::Function) {
            std::vector<Argument> args;
            for (const auto& a : t.args) args.push_back(argument_of(a));
            return Formula::atom(t.name, std::move(args));
        }
        fail("expected a formula");
    }

    Formula comparison_tail(Argument lhs) {
        if (peek().kind != T::Rel) fail("expected a relation");
        const Relation rel = next().rel;
        Argument rhs = argument_of(term(0));
        return Formula::compare(std::move(lhs), rel, std::move(rhs));
    }

    Argument aggregate() {
        const AggregateFunction fn = next().kind == T::Count ? AggregateFunction::Count : AggregateFunction::Sum;
        expect(T::LBrace, "'{'");
        std::vector<Variable> vars;
        do {
            if (peek().kind != T::Var) fail("expected an aggregate variable");
            vars.push_back(variable_named(next().text));
        } while (accept(T::Comma));
        expect(T::Colon, "':'");
        Formula body = iff();
        expect(T::RBrace, "'}'");
        return Argument::aggregate(fn, std::move(vars), std::move(body));
    }

    Argument argument_of(const Term& t) {
        std::vector<std::string> names;
        collect_variables(t, names);
        std::vector<Variable> vars;
        for (const auto& n : names) vars.push_back(variable_named(n));
        auto a = to_argument(t, vars);
        if (!a) fail(has_placeholder(t) ? "an aggregate may only appear as an argument" : "'" + to_string(t) + "' is not an argument");
        resolve(*a);
        return *a;
    }

    // Aggregates nested in terms are parsed ahead and stand in as placeholder symbols.
    static constexpr std::string_view kPlaceholder = "#aggregate";

    static bool is_placeholder(const std::string& name) { return name.starts_with(kPlaceholder); }

    static bool has_placeholder(const Term& t) {
        if (t.kind == Term::Kind::Symbol) return is_placeholder(t.name);
        return std::any_of(t.args.begin(), t.args.end(), [](const Term& a) { return has_placeholder(a); });
    }

    void resolve(Argument& a) const {
        if (a.kind == Argument::Kind::Symbol && is_placeholder(a.name)) {
            a = aggregates_.at(std::stoul(a.name.substr(kPlaceholder.size())));
            return;
        }
        if (a.kind == Argument::Kind::Aggregate) return;
        for (auto& x : a.args) resolve(x);
    }

    // Term grammar of programs; `abs_depth` > 0 means a '|' closes an absolute value.
    Term term(int abs_depth) {
        Term lo = additive(abs_depth);
        if (accept(T::DotDot)) return Term::interval(std::move(lo), additive(abs_depth));
        return lo;
    }

    Term additive(int d) {
        Term lhs = multiplicative(d);
        for (;;) {
            Operator op;
            if (peek().kind == T::Plus) {
                op = Operator::Plus;
            } else if (peek().kind == T::Minus) {
                op = Operator::Minus;
            } else {
                return lhs;
            }
            next();
            lhs = Term::operation(op, {std::move(lhs), multiplicative(d)});
        }
    }

    Term multiplicative(int d) {
        Term lhs = power(d);
        for (;;) {
            Operator op;
            switch (peek().kind) {
                case T::Star: op = Operator::Times; break;
                case T::Slash: op = Operator::Divide; break;
                case T::Backslash: op = Operator::Modulo; break;
                default: return lhs;
            }
            next();
            lhs = Term::operation(op, {std::move(lhs), power(d)});
        }
    }

    Term power(int d) {
        Term base = unary_term(d);
        if (accept(T::Power)) return Term::operation(Operator::Power, {std::move(base), power(d)});
        return base;
    }

    Term unary_term(int d) {
        if (accept(T::Minus)) {
            if (peek().kind == T::Num) {
                const Tk& num = next();
                constexpr auto limit = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) + 1;
                if (num.magnitude > limit) fail("integer literal out of range");
                if (num.magnitude == limit) return Term::numeral(std::numeric_limits<std::int64_t>::min());
                return Term::numeral(-static_cast<std::int64_t>(num.magnitude));
            }
            return Term::operation(Operator::Negate, {unary_term(d)});
        }
        return primary(d);
    }

    Term primary(int d) {
        const Tk& t = peek();
        switch (t.kind) {
            case T::Num:
                next();
                if (t.magnitude > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
                    fail("integer literal out of range");
                }
                return Term::numeral(static_cast<std::int64_t>(t.magnitude));
            case T::Var: next(); return Term::variable(t.text);
            case T::Inf: next(); return Term::inf();
            case T::Sup: next(); return Term::sup();
            case T::Ident: {
                const std::string name = next().text;
                if (!accept(T::LParen)) return Term::symbol(name);
                std::vector<Term> args{term(0)};
                while (accept(T::Comma)) args.push_back(term(0));
                expect(T::RParen, "')'");
                return Term::function(name, std::move(args));
            }
            case T::LParen: {
                next();
                Term inner = term(0);
                expect(T::RParen, "')'");
                return inner;
            }
            case T::Count:
            case T::Sum:
                aggregates_.push_back(aggregate());
                return Term::symbol(std::string(kPlaceholder) + std::to_string(aggregates_.size() - 1));
            case T::Bar: {
                next();
                Term inner = term(d + 1);
                expect(T::Bar, "'|'");
                return Term::operation(Operator::Absolute, {std::move(inner)});
            }
            default: fail("expected a term");
        }
    }

    std::vector<Tk> toks_;
    std::size_t pos_ = 0;
    std::vector<Argument> aggregates_;
};

}  // namespace

std::string to_string(const Formula& f, const RenderOptions& options) {
    std::ostringstream out;
    Printer(out, options).formula(f, 0);
    return out.str();
}

std::string to_string(const Argument& a, const RenderOptions& options) {
    std::ostringstream out;
    Printer(out, options).argument(a);
    return out.str();
}

std::ostream& operator<<(std::ostream& out, const Formula& f) {
    RenderOptions options;
    Printer(out, options).formula(f, 0);
    return out;
}

std::ostream& operator<<(std::ostream& out, const Argument& a) {
    RenderOptions options;
    Printer(out, options).argument(a);
    return out;
}

Formula parse_formula(std::string_view text) { return FormulaParser(lex_formula(text)).parse(); }

}  // namespace eg
