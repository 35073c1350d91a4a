#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eg/syntax.hpp"
#include "eg/values.hpp"

namespace eg {

struct Variable {
    enum class Sort : std::uint8_t { General, Integer };

    std::string name;
    Sort sort = Sort::General;

    static Variable general(std::string name) { return {std::move(name), Sort::General}; }
    static Variable integer(std::string name) { return {std::move(name), Sort::Integer}; }

    bool is_integer() const { return sort == Sort::Integer; }

    auto operator<=>(const Variable&) const = default;
    bool operator==(const Variable&) const = default;
};

struct Formula;

struct Argument {
    enum class Kind : std::uint8_t { Numeral, Symbol, Variable, Inf, Sup, Function, Operation, Aggregate };

    Kind kind = Kind::Numeral;
    std::int64_t number = 0;
    std::string name;  // symbol, variable, or function name
    Variable::Sort sort = Variable::Sort::General;
    Operator op = Operator::Plus;
    AggregateFunction function = AggregateFunction::Count;
    std::vector<Argument> args;
    std::vector<Variable> bound;  // aggregate tuple
    std::vector<Formula> body;    // aggregate condition; exactly one element

    static Argument numeral(std::int64_t n);
    static Argument symbol(std::string name);
    static Argument variable(const Variable& v);
    static Argument inf();
    static Argument sup();
    static Argument function_term(std::string name, std::vector<Argument> args);
    // Only total operations over integer arguments; throws std::invalid_argument otherwise.
    static Argument operation(Operator op, std::vector<Argument> args);
    static Argument aggregate(AggregateFunction fn, std::vector<Variable> vars, Formula body);
    static Argument from_value(const Value& v);

    bool is_variable() const { return kind == Kind::Variable; }
    Variable as_variable() const { return {name, sort}; }
    // Numeral, integer variable, or total operation over integer arguments.
    bool is_integer_argument() const;
    bool contains_aggregate() const;
    const Formula& condition() const { return body.front(); }

    bool operator==(const Argument& other) const;
};

struct Formula {
    enum class Kind : std::uint8_t { Atom, Compare, Member, Bottom, Top, Not, And, Or, Implies, Iff, Forall, Exists };

    Kind kind = Kind::Bottom;
    std::string predicate;         // Atom
    std::vector<Argument> args;    // Atom arguments; Compare {lhs, rhs}; Member {lhs}
    Relation rel = Relation::Eq;   // Compare
    Term term;                     // Member right-hand side
    std::vector<Formula> children; // Not: 1; And/Or: any; Implies/Iff: 2; quantifiers: 1
    std::vector<Variable> vars;    // quantifier block

    static Formula atom(std::string predicate, std::vector<Argument> args = {});
    static Formula compare(Argument lhs, Relation rel, Argument rhs);
    static Formula member(Argument lhs, Term rhs);
    static Formula bottom();
    static Formula top();
    static Formula negation(Formula f);
    // The empty conjunction is top; a singleton is returned unchanged.
    static Formula conjunction(std::vector<Formula> fs);
    // The empty disjunction is bottom; a singleton is returned unchanged.
    static Formula disjunction(std::vector<Formula> fs);
    static Formula implies(Formula a, Formula b);
    static Formula iff(Formula a, Formula b);
    // An empty block returns the body unchanged.
    static Formula forall(std::vector<Variable> vars, Formula body);
    static Formula exists(std::vector<Variable> vars, Formula body);

    bool is_atomic() const { return kind == Kind::Atom || kind == Kind::Compare || kind == Kind::Member; }
    bool is_quantifier() const { return kind == Kind::Forall || kind == Kind::Exists; }
    const Formula& child(std::size_t i = 0) const { return children[i]; }
    const Argument& lhs() const { return args[0]; }
    const Argument& rhs() const { return args[1]; }

    bool operator==(const Formula& other) const;
};

// Free variables in order of first occurrence.
std::vector<Variable> free_variables(const Formula& f);
std::vector<Variable> free_variables(const Argument& a);
bool occurs_free(const std::string& name, const Formula& f);
bool occurs_free(const std::string& name, const Argument& a);
// All variable names occurring anywhere, bound or free.
void collect_all_names(const Formula& f, std::vector<std::string>& out);

Formula substitute(const Formula& f, const std::string& var, const Value& r);
Argument substitute(const Argument& a, const std::string& var, const Value& r);

// Capture-avoiding substitution of an argument for a variable. Fails when the
// variable occurs in a Member right-hand side and the replacement is not
// expressible as a term (it contains an aggregate).
std::optional<Formula> substitute(const Formula& f, const std::string& var, const Argument& replacement);

std::optional<Term> to_term(const Argument& a);
// Arguments are exactly the terms free of operations and intervals, plus
// total integer operations over integer arguments when integer_vars names them.
std::optional<Argument> to_argument(const Term& t, const std::vector<Variable>& integer_vars = {});

// Rewrites into the primitive connectives bottom, ->, forall; derived forms
// follow the standard abbreviations.
Formula to_core(const Formula& f);

std::size_t node_count(const Formula& f);

// Universal closure over the free variables in order of first occurrence.
Formula universal_closure(const Formula& f);

struct RenderOptions {
    bool utf8 = false;
};

std::string to_string(const Formula& f, const RenderOptions& options = {});
std::string to_string(const Argument& a, const RenderOptions& options = {});
std::ostream& operator<<(std::ostream& out, const Formula& f);
std::ostream& operator<<(std::ostream& out, const Argument& a);

// Reads the ASCII or UTF-8 rendering back. Quantified and aggregate-bound
// variables whose names start with I, J, K, L, M or N are integer variables.
// Throws ParseError.
Formula parse_formula(std::string_view text);

}  // namespace eg
