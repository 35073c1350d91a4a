#pragma once

#include <vector>

#include "eg/formula.hpp"
#include "eg/syntax.hpp"

namespace eg {

struct CompletedDefinition {
    PredicateSymbol predicate;
    std::vector<Variable> head_vars;
    // forall V (p(V) <-> exists U1 F1 | ... | exists Uk Fk)
    Formula formula;
};

struct CompletionResult {
    // Sorted by predicate.
    std::vector<CompletedDefinition> definitions;
    // Universal closures of the constraint representations, in source order.
    std::vector<Formula> constraints;
    // Predicate symbols occurring in the program; with a domain this describes the vocabulary.
    std::vector<PredicateSymbol> vocabulary;

    // Definitions followed by constraints.
    std::vector<Formula> formulas() const;
};

// Basic and choice rules whose head has the given predicate symbol.
std::vector<Rule> definitions_of(const PredicateSymbol& pred, const Program& program);

Formula completed_definition(const PredicateSymbol& pred, const Program& program);

CompletionResult completion(const Program& program);

}  // namespace eg
