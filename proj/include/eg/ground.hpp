#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "eg/evaluate.hpp"
#include "eg/formula.hpp"
#include "eg/syntax.hpp"
#include "eg/values.hpp"

namespace eg {

struct GroundAggregate;

// Propositional formula over ground atoms; not F is F -> #false. An Aggregate
// node stands for the conjunction of implications over the non-justifying
// subsets of its elements; expand_aggregate spells it out.
struct GroundFormula {
    enum class Kind : std::uint8_t { Atom, Top, Bottom, And, Or, Implies, Aggregate };

    Kind kind = Kind::Top;
    GroundAtom atom;
    std::vector<GroundFormula> children;
    std::shared_ptr<const GroundAggregate> aggregate;

    static GroundFormula top();
    static GroundFormula bottom();
    static GroundFormula make_atom(GroundAtom a);
    static GroundFormula conjunction(std::vector<GroundFormula> fs);
    static GroundFormula disjunction(std::vector<GroundFormula> fs);
    static GroundFormula implies(GroundFormula a, GroundFormula b);
    static GroundFormula negation(GroundFormula a);
    static GroundFormula make_aggregate(GroundAggregate a);

    bool is_negation() const { return kind == Kind::Implies && children[1].kind == Kind::Bottom; }
};

struct GroundAggregateElement {
    ValueTuple local;                 // r, the values of the aggregate's variables
    std::vector<ValueTuple> tuples;   // [t with X := r]
    GroundFormula condition;          // tau of the condition with X := r
};

struct GroundAggregate {
    AggregateFunction function = AggregateFunction::Count;
    Relation rel = Relation::Eq;
    ValueSet bound;  // [s]
    std::vector<GroundAggregateElement> elements;
};

// alpha-hat of a finite set of tuples.
Value aggregate_value(AggregateFunction function, const std::vector<ValueTuple>& tuples);

// The subset of elements given by `chosen` justifies the aggregate.
bool justifies(const GroundAggregate& a, const std::vector<bool>& chosen);

// Conjunction over the non-justifying subsets. Throws ResourceError beyond the tuple cap.
GroundFormula expand_aggregate(const GroundAggregate& a, std::size_t max_tuples);
// Replaces every Aggregate node by its expansion.
GroundFormula expand_aggregates(const GroundFormula& f, std::size_t max_tuples);

bool satisfies(const GroundFormula& f, const Interpretation& interp);
// Kleene value over all J with certain ⊆ J ⊆ possible; aggregates use value bounds.
Truth evaluate(const GroundFormula& f, const Interpretation& certain, const Interpretation& possible);

// Ferraris reduct: every maximal subformula not satisfied by I becomes #false.
GroundFormula reduct(const GroundFormula& f, const Interpretation& interp);

// Fast path: Delta_J = elements whose reduced condition J satisfies justifies E.
// Expects I to satisfy the aggregate.
bool aggregate_reduct_holds(const GroundAggregate& a, const Interpretation& interp, const Interpretation& j);

// Unit laws for #true and #false; they preserve stable models.
GroundFormula simplify(const GroundFormula& f);
// Replaces atoms outside `universe` by #false, then simplifies.
GroundFormula restrict_to(const GroundFormula& f, const Interpretation& universe);

void collect_atoms(const GroundFormula& f, Interpretation& out);
std::string to_string(const GroundFormula& f, const RenderOptions& options = {});

struct InstantiationConfig {
    EvalDomain domain;
    std::size_t max_instances = 100'000;
    std::size_t max_aggregate_tuples = 12;
    std::size_t max_vocabulary_atoms = 24;
};

using Binding = std::map<std::string, Value>;

struct InstanceSet {
    std::vector<Binding> bindings;  // sorted, duplicate-free
    // Some variable ranged over the whole domain.
    bool unrestricted = false;
};

// Substitutions for the global variables of a rule that can make its body
// true when every true atom lies in `universe`; other instances have a false
// body. Variables not restricted by a positive literal, by X = t with t
// ground, or by an equality with an aggregate range over the domain.
InstanceSet instance_bindings(const Rule& rule, const Interpretation& universe, const InstantiationConfig& cfg);

Term substitute(const Term& t, const Binding& binding);
Rule substitute(const Rule& rule, const Binding& binding);

// Closed instances over the domain, filtered against the vocabulary of the
// domain as universe.
std::vector<Rule> instances(const Rule& rule, const InstantiationConfig& cfg, bool* unrestricted = nullptr);

struct GroundingSetting {
    const Interpretation* universe = nullptr;  // atoms outside admit nothing; null for no pruning
    const InstantiationConfig* cfg = nullptr;
    bool unrestricted = false;                 // set when a variable ranged over the domain
};

// tau of a closed body; aggregates become Aggregate nodes.
GroundFormula tau_body(const std::vector<BodyElement>& body, GroundingSetting& setting);
GroundFormula tau_rule(const Rule& closed, GroundingSetting& setting);

}  // namespace eg
