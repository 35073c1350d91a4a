#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace eg {

// Operation names. Binary: + - * / \ **; unary: - and |.|.
enum class Operator : std::uint8_t { Plus, Minus, Times, Divide, Modulo, Power, Negate, Absolute };

std::size_t arity(Operator op);
// True when the associated integer function is defined on all of Z^n.
bool is_total(Operator op);
std::string_view symbol(Operator op);

enum class Relation : std::uint8_t { Eq, Ne, Lt, Gt, Le, Ge };

std::string_view symbol(Relation rel);
std::string_view utf8_symbol(Relation rel);
// The relation holding exactly when `rel` does not.
Relation complement(Relation rel);
// The relation R' with (a R b) iff (b R' a).
Relation converse(Relation rel);
bool holds(Relation rel, std::strong_ordering cmp);

enum class AggregateFunction : std::uint8_t { Count, Sum };

std::string_view name(AggregateFunction fn);

struct Term {
    enum class Kind : std::uint8_t { Numeral, Symbol, Variable, Inf, Sup, Function, Operation, Interval };

    Kind kind = Kind::Numeral;
    std::int64_t number = 0;
    std::string name;        // symbolic constant, variable, or function name
    Operator op = Operator::Plus;
    std::vector<Term> args;  // function/operation arguments; {lo, hi} for intervals

    static Term numeral(std::int64_t n);
    static Term symbol(std::string name);
    static Term variable(std::string name);
    static Term inf();
    static Term sup();
    // Throws std::invalid_argument on an empty argument list.
    static Term function(std::string name, std::vector<Term> args);
    // Throws std::invalid_argument when args.size() != arity(op).
    static Term operation(Operator op, std::vector<Term> args);
    static Term interval(Term lo, Term hi);

    bool is_variable() const { return kind == Kind::Variable; }
    bool is_ground() const;
    // Ground and free of operation names and intervals.
    bool is_precomputed() const;
    bool contains_operation_or_interval() const;

    bool operator==(const Term&) const = default;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    bool operator==(const Atom&) const = default;
};

struct Literal {
    bool negative = false;
    Atom atom;

    bool operator==(const Literal&) const = default;
};

struct Comparison {
    Term lhs;
    Relation rel = Relation::Eq;
    Term rhs;

    bool operator==(const Comparison&) const = default;
};

using Condition = std::variant<Literal, Comparison>;

// alpha{t : C} rel bound
struct Aggregate {
    AggregateFunction function = AggregateFunction::Count;
    std::vector<Term> tuple;
    std::vector<Condition> condition;
    Relation rel = Relation::Eq;
    Term bound;

    bool operator==(const Aggregate&) const = default;
};

using BodyElement = std::variant<Literal, Comparison, Aggregate>;

struct Rule {
    enum class Kind : std::uint8_t { Basic, Choice, Constraint };

    Kind kind = Kind::Constraint;
    Atom head;  // unused for constraints
    std::vector<BodyElement> body;

    bool operator==(const Rule&) const = default;
};

struct Program {
    std::vector<Rule> rules;

    bool operator==(const Program&) const = default;
};

struct PredicateSymbol {
    std::string name;
    std::size_t arity = 0;

    auto operator<=>(const PredicateSymbol&) const = default;
    bool operator==(const PredicateSymbol&) const = default;
};

std::string to_string(const PredicateSymbol& pred);

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, std::string message, std::vector<std::string> expected = {});

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& message() const { return message_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
    std::vector<std::string> expected_;
};

Program parse_program(std::string_view text);
std::string print_program(const Program& program);

std::string to_string(const Term& term);
std::string to_string(const Atom& atom);
std::string to_string(const Literal& lit);
std::string to_string(const Comparison& cmp);
std::string to_string(const Aggregate& agg);
std::string to_string(const BodyElement& elem);
std::string to_string(const Rule& rule);

std::ostream& operator<<(std::ostream& out, const Term& term);
std::ostream& operator<<(std::ostream& out, const Rule& rule);

// Variable names in order of first occurrence, without duplicates.
void collect_variables(const Term& term, std::vector<std::string>& out);
std::vector<std::string> variables(const Rule& rule);

struct VariableClassification {
    std::vector<std::string> locals;
    std::vector<std::string> globals;
};

// A variable is local when all of its occurrences lie inside the alpha{t : C}
// part of aggregate expressions; every other variable is global.
VariableClassification classify_variables(const Rule& rule);

// Predicates with an atom in the rule, in order of first occurrence.
std::vector<PredicateSymbol> predicates(const Rule& rule);
// All predicates of the program, sorted.
std::vector<PredicateSymbol> predicates(const Program& program);

PredicateSymbol predicate_of(const Atom& atom);

}  // namespace eg
