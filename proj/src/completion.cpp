#include "eg/completion.hpp"

#include <algorithm>

#include "eg/translate.hpp"

namespace eg {
namespace {

CompletedDefinition build_definition(const PredicateSymbol& pred, const Program& program, Translator& translator) {
    CompletedDefinition def;
    def.predicate = pred;
    def.head_vars = translator.head_variables(pred);
    std::vector<Formula> disjuncts;
    for (const auto& rule : program.rules) {
        if (rule.kind == Rule::Kind::Constraint || predicate_of(rule.head) != pred) continue;
        RuleRepresentation rep = translator.represent(rule);
        std::vector<Variable> u;
        for (auto& v : free_variables(rep.antecedent)) {
            const bool head = std::any_of(def.head_vars.begin(), def.head_vars.end(),
                                          [&](const Variable& h) { return h.name == v.name; });
            if (!head) u.push_back(std::move(v));
        }
        disjuncts.push_back(Formula::exists(std::move(u), std::move(rep.antecedent)));
    }
    std::vector<Argument> args;
    for (const auto& v : def.head_vars) args.push_back(Argument::variable(v));
    Formula body = Formula::iff(Formula::atom(pred.name, std::move(args)), Formula::disjunction(std::move(disjuncts)));
    def.formula = Formula::forall(def.head_vars, std::move(body));
    return def;
}

}  // namespace

std::vector<Formula> CompletionResult::formulas() const {
    std::vector<Formula> out;
    for (const auto& d : definitions) out.push_back(d.formula);
    out.insert(out.end(), constraints.begin(), constraints.end());
    return out;
}

std::vector<Rule> definitions_of(const PredicateSymbol& pred, const Program& program) {
    std::vector<Rule> out;
    for (const auto& rule : program.rules) {
        if (rule.kind != Rule::Kind::Constraint && predicate_of(rule.head) == pred) out.push_back(rule);
    }
    return out;
}

Formula completed_definition(const PredicateSymbol& pred, const Program& program) {
    Translator translator(program);
    return build_definition(pred, program, translator).formula;
}

CompletionResult completion(const Program& program) {
    CompletionResult result;
    Translator translator(program);
    result.vocabulary = predicates(program);
    for (const auto& pred : result.vocabulary) {
        result.definitions.push_back(build_definition(pred, program, translator));
    }
    for (const auto& rule : program.rules) {
        if (rule.kind != Rule::Kind::Constraint) continue;
        result.constraints.push_back(universal_closure(translator.represent(rule).formula));
    }
    return result;
}

}  // namespace eg
