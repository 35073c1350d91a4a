#pragma once

#include <map>
#include <string>
#include <vector>

#include "eg/formula.hpp"
#include "eg/syntax.hpp"

namespace eg {

// Hands out fresh variable names X1, X2, ... per base letter, skipping any
// name in the avoid list.
class NameSupply {
public:
    explicit NameSupply(std::vector<std::string> avoid = {}) : avoid_(std::move(avoid)) {}

    Variable fresh(const std::string& base);
    void avoid(const std::string& name) { avoid_.push_back(name); }

private:
    std::vector<std::string> avoid_;
    std::map<std::string, int> counters_;
};

// phi(p(t)) = exists Y (Y in t & p(Y)); phi(not p(t)) likewise with not p(Y).
Formula phi_literal(const Literal& lit, NameSupply& names);
// phi(t1 < t2) = exists X1 X2 (X1 in t1 & X2 in t2 & X1 < X2).
Formula phi_comparison(const Comparison& cmp, NameSupply& names);
// exists Y (alpha{Z | exists L (Z in t & phi C)} < Y & Y in s), L the locals occurring in the aggregate.
Formula phi_aggregate(const Aggregate& agg, const std::vector<std::string>& locals, NameSupply& names);
Formula phi_body(const std::vector<BodyElement>& body, const std::vector<std::string>& locals, NameSupply& names);

struct RuleRepresentation {
    Rule::Kind kind = Rule::Kind::Constraint;
    PredicateSymbol head;
    std::vector<Variable> head_vars;
    // Basic and choice rules: the F of F -> p(V). Constraints: not phi(Body).
    Formula antecedent;
    Formula formula;
};

// Translates the rules of one program with a consistent naming scheme: the
// head tuple of p/n is the same for every rule, and general program variables
// whose names start with I..N (reserved for integer variables in output) are
// renamed.
class Translator {
public:
    explicit Translator(const Program& program);

    const std::vector<Variable>& head_variables(const PredicateSymbol& pred);
    RuleRepresentation represent(const Rule& rule);
    // The rule with reserved variable names replaced.
    Rule renamed(const Rule& rule) const;
    const std::map<std::string, std::string>& renaming() const { return renaming_; }

private:
    std::vector<std::string> names_;  // every variable name in the program after renaming
    std::map<std::string, std::string> renaming_;
    std::map<PredicateSymbol, std::vector<Variable>> heads_;
};

RuleRepresentation represent_rule(const Rule& rule);

}  // namespace eg
