#include <string>

#include "cli.hpp"

namespace eg::cli {
namespace {

using nlohmann::json;

const char* op_name(Operator op) {
    switch (op) {
        case Operator::Plus: return "plus";
        case Operator::Minus: return "minus";
        case Operator::Times: return "times";
        case Operator::Divide: return "divide";
        case Operator::Modulo: return "modulo";
        case Operator::Power: return "power";
        case Operator::Negate: return "negate";
        case Operator::Absolute: return "absolute";
    }
    return "?";
}

json variable_json(const Variable& v) {
    return {{"name", v.name}, {"sort", v.is_integer() ? "integer" : "general"}};
}

json variables_json(const std::vector<Variable>& vars) {
    json out = json::array();
    for (const auto& v : vars) out.push_back(variable_json(v));
    return out;
}

json predicate_json(const PredicateSymbol& p) { return {{"name", p.name}, {"arity", p.arity}}; }

template <typename T>
json list_json(const std::vector<T>& items) {
    json out = json::array();
    for (const auto& x : items) out.push_back(to_json(x));
    return out;
}

const char* connective(Formula::Kind k) {
    switch (k) {
        case Formula::Kind::And: return "and";
        case Formula::Kind::Or: return "or";
        case Formula::Kind::Implies: return "implies";
        case Formula::Kind::Iff: return "iff";
        case Formula::Kind::Forall: return "forall";
        case Formula::Kind::Exists: return "exists";
        default: return "?";
    }
}

}  // namespace

json to_json(const Term& t) {
    switch (t.kind) {
        case Term::Kind::Numeral: return {{"kind", "numeral"}, {"value", t.number}};
        case Term::Kind::Symbol: return {{"kind", "symbol"}, {"name", t.name}};
        case Term::Kind::Variable: return {{"kind", "variable"}, {"name", t.name}};
        case Term::Kind::Inf: return {{"kind", "inf"}};
        case Term::Kind::Sup: return {{"kind", "sup"}};
        case Term::Kind::Function: return {{"kind", "function"}, {"name", t.name}, {"args", list_json(t.args)}};
        case Term::Kind::Operation: return {{"kind", "operation"}, {"op", op_name(t.op)}, {"args", list_json(t.args)}};
        case Term::Kind::Interval: return {{"kind", "interval"}, {"lo", to_json(t.args[0])}, {"hi", to_json(t.args[1])}};
    }
    return {};
}

json to_json(const Argument& a) {
    switch (a.kind) {
        case Argument::Kind::Numeral: return {{"kind", "numeral"}, {"value", a.number}};
        case Argument::Kind::Symbol: return {{"kind", "symbol"}, {"name", a.name}};
        case Argument::Kind::Variable: {
            json v = variable_json(a.as_variable());
            v["kind"] = "variable";
            return v;
        }
        case Argument::Kind::Inf: return {{"kind", "inf"}};
        case Argument::Kind::Sup: return {{"kind", "sup"}};
        case Argument::Kind::Function: return {{"kind", "function"}, {"name", a.name}, {"args", list_json(a.args)}};
        case Argument::Kind::Operation: return {{"kind", "operation"}, {"op", op_name(a.op)}, {"args", list_json(a.args)}};
        case Argument::Kind::Aggregate:
            return {{"kind", "aggregate"},
                    {"function", std::string(name(a.function))},
                    {"vars", variables_json(a.bound)},
                    {"condition", to_json(a.condition())}};
    }
    return {};
}

json to_json(const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::Atom: return {{"kind", "atom"}, {"predicate", f.predicate}, {"args", list_json(f.args)}};
        case Formula::Kind::Compare:
            return {{"kind", "compare"},
                    {"rel", std::string(symbol(f.rel))},
                    {"lhs", to_json(f.lhs())},
                    {"rhs", to_json(f.rhs())}};
        case Formula::Kind::Member: return {{"kind", "member"}, {"lhs", to_json(f.lhs())}, {"term", to_json(f.term)}};
        case Formula::Kind::Bottom: return {{"kind", "bottom"}};
        case Formula::Kind::Top: return {{"kind", "top"}};
        case Formula::Kind::Not: return {{"kind", "not"}, {"arg", to_json(f.child())}};
        case Formula::Kind::And:
        case Formula::Kind::Or: return {{"kind", connective(f.kind)}, {"args", list_json(f.children)}};
        case Formula::Kind::Implies:
        case Formula::Kind::Iff:
            return {{"kind", connective(f.kind)}, {"lhs", to_json(f.child(0))}, {"rhs", to_json(f.child(1))}};
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            return {{"kind", connective(f.kind)}, {"vars", variables_json(f.vars)}, {"body", to_json(f.child())}};
    }
    return {};
}

json to_json(const CompletionResult& completion) {
    json doc{{"schema", kSchema}};
    json vocabulary = json::array();
    for (const auto& p : completion.vocabulary) vocabulary.push_back(predicate_json(p));
    doc["vocabulary"] = vocabulary;
    doc["integer_facts"] = json::array();
    json defs = json::array();
    for (const auto& d : completion.definitions) {
        defs.push_back({{"predicate", predicate_json(d.predicate)},
                        {"head_vars", variables_json(d.head_vars)},
                        {"formula", to_json(d.formula)}});
    }
    doc["definitions"] = defs;
    doc["constraints"] = list_json(completion.constraints);
    return doc;
}

json to_json(const IntegerizeResult& result) {
    CompletionResult plain;
    plain.definitions = result.definitions;
    plain.constraints = result.constraints;
    for (const auto& d : result.definitions) plain.vocabulary.push_back(d.predicate);
    json doc = to_json(plain);
    json facts = json::array();
    for (const auto& f : result.facts) {
        facts.push_back({{"predicate", predicate_json(f.predicate)}, {"positions", f.positions}, {"formula", to_json(f.formula)}});
    }
    doc["integer_facts"] = facts;
    return doc;
}

}  // namespace eg::cli
