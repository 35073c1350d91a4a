#include <algorithm>
#include <map>
#include <set>

#include "eg/simplify.hpp"

namespace eg {
namespace {

using Kind = Formula::Kind;
using Known = std::map<PredicateSymbol, std::vector<bool>>;

bool binds(const std::vector<Variable>& vars, const std::string& name) {
    return std::any_of(vars.begin(), vars.end(), [&](const Variable& v) { return v.name == name; });
}

bool is_general(const Argument& a, const std::string& name) {
    return a.is_variable() && a.name == name && a.sort == Variable::Sort::General;
}

// x occurs below an operation or interval of t, so [t] is empty unless x is a numeral.
bool arithmetic_occurrence(const Term& t, const std::string& x, bool under_arithmetic) {
    switch (t.kind) {
        case Term::Kind::Variable: return under_arithmetic && t.name == x;
        case Term::Kind::Operation:
        case Term::Kind::Interval:
            return std::any_of(t.args.begin(), t.args.end(),
                               [&](const Term& a) { return arithmetic_occurrence(a, x, true); });
        case Term::Kind::Function:
            return std::any_of(t.args.begin(), t.args.end(),
                               [&](const Term& a) { return arithmetic_occurrence(a, x, under_arithmetic); });
        default: return false;
    }
}

bool arithmetic_member(const Formula& f, const std::string& x) {
    if (f.kind != Kind::Member) return false;
    const bool numeric_rhs = f.term.kind == Term::Kind::Operation || f.term.kind == Term::Kind::Interval;
    return (is_general(f.lhs(), x) && numeric_rhs) || arithmetic_occurrence(f.term, x, false);
}

// F takes part in arithmetic on the free variable x.
bool arithmetic(const Formula& f, const std::string& x);

bool arithmetic(const Argument& a, const std::string& x) {
    if (a.kind == Argument::Kind::Aggregate) return !binds(a.bound, x) && arithmetic(a.condition(), x);
    return std::any_of(a.args.begin(), a.args.end(), [&](const Argument& y) { return arithmetic(y, x); });
}

bool arithmetic(const Formula& f, const std::string& x) {
    if (arithmetic_member(f, x)) return true;
    if (f.is_quantifier() && binds(f.vars, x)) return false;
    for (const auto& a : f.args) {
        if (arithmetic(a, x)) return true;
    }
    return std::any_of(f.children.begin(), f.children.end(), [&](const Formula& c) { return arithmetic(c, x); });
}

// Whenever F holds, the free general variable x denotes a numeral.
class Forcing {
public:
    Forcing(const Known& known, bool use_atoms) : known_(known), use_atoms_(use_atoms) {}

    bool operator()(const Formula& f, const std::string& x) {
        switch (f.kind) {
            case Kind::Member: return arithmetic_member(f, x);
            case Kind::Atom: {
                if (!use_atoms_) return false;
                const PredicateSymbol pred{f.predicate, f.args.size()};
                auto it = known_.find(pred);
                if (it == known_.end()) return false;
                for (std::size_t i = 0; i < f.args.size(); ++i) {
                    if (is_general(f.args[i], x) && it->second[i]) {
                        used.insert(pred);
                        return true;
                    }
                }
                return false;
            }
            case Kind::Compare:
                if (f.rel != Relation::Eq) return false;
                return (is_general(f.lhs(), x) && f.rhs().is_integer_argument()) ||
                       (is_general(f.rhs(), x) && f.lhs().is_integer_argument());
            case Kind::And:
                return std::any_of(f.children.begin(), f.children.end(), [&](const Formula& c) { return (*this)(c, x); });
            case Kind::Or:
                return !f.children.empty() &&
                       std::all_of(f.children.begin(), f.children.end(), [&](const Formula& c) { return (*this)(c, x); });
            case Kind::Exists: return !binds(f.vars, x) && (*this)(f.child(), x);
            default: return false;
        }
    }

    std::set<PredicateSymbol> used;

private:
    const Known& known_;
    bool use_atoms_;
};

// Prefers reasons that need no side condition.
bool forced(const Formula& f, const std::string& x, const Known& known, std::set<PredicateSymbol>& used) {
    if (Forcing(known, false)(f, x)) return true;
    Forcing with_atoms(known, true);
    if (!with_atoms(f, x)) return false;
    used.insert(with_atoms.used.begin(), with_atoms.used.end());
    return true;
}

struct Shape {
    PredicateSymbol pred;
    std::vector<std::string> head;
    std::vector<Formula> cases;  // any of them makes the head true
};

std::optional<Shape> definition_shape(const Formula& f) {
    const Formula& body = f.kind == Kind::Forall ? f.child() : f;
    if (body.kind != Kind::Iff && body.kind != Kind::Implies) return std::nullopt;
    const Formula& head = body.child(0);
    if (head.kind != Kind::Atom) return std::nullopt;
    Shape shape;
    shape.pred = {head.predicate, head.args.size()};
    for (const auto& a : head.args) {
        if (!a.is_variable() || a.sort != Variable::Sort::General) return std::nullopt;
        if (std::find(shape.head.begin(), shape.head.end(), a.name) != shape.head.end()) return std::nullopt;
        shape.head.push_back(a.name);
    }
    const Formula& rhs = body.child(1);
    if (body.kind == Kind::Implies || rhs.kind != Kind::Or) {
        if (rhs.kind != Kind::Bottom) shape.cases.push_back(rhs);
    } else {
        shape.cases = rhs.children;
    }
    return shape;
}

Known derive(const std::vector<CompletedDefinition>& definitions) {
    Known known;
    std::vector<Shape> shapes;
    for (const auto& d : definitions) {
        if (auto s = definition_shape(d.formula)) {
            known.emplace(s->pred, std::vector<bool>(s->pred.arity, false));
            shapes.push_back(std::move(*s));
        }
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& s : shapes) {
            auto& positions = known[s.pred];
            for (std::size_t i = 0; i < s.head.size(); ++i) {
                if (positions[i]) continue;
                Forcing forcing(known, true);
                const bool all = std::all_of(s.cases.begin(), s.cases.end(),
                                             [&](const Formula& c) { return forcing(c, s.head[i]); });
                if (all) {
                    positions[i] = true;
                    changed = true;
                }
            }
        }
    }
    return known;
}

class Converter {
public:
    Converter(const Known& known, std::set<PredicateSymbol>& used) : known_(known), used_(used) {}

    Formula run(const Formula& f) {
        taken_.clear();
        collect_all_names(f, taken_);
        return convert(f);
    }

private:
    Formula convert(const Formula& f) {
        Formula out = f;
        for (auto& a : out.args) a = convert(a);
        if (!f.is_quantifier()) {
            for (auto& c : out.children) c = convert(c);
            return out;
        }
        for (auto& v : out.vars) {
            if (v.is_integer()) continue;
            std::set<PredicateSymbol> reasons;
            if (!licensed(out.kind, out.child(), v.name, reasons) || !arithmetic(out.child(), v.name)) continue;
            const Variable n = Variable::integer(fresh(v.name));
            auto body = substitute(out.child(), v.name, Argument::variable(n));
            if (!body) continue;
            out.children[0] = std::move(*body);
            v = n;
            used_.insert(reasons.begin(), reasons.end());
        }
        out.children[0] = convert(out.child());
        return out;
    }

    Argument convert(const Argument& a) {
        Argument out = a;
        for (auto& x : out.args) x = convert(x);
        for (auto& b : out.body) b = convert(b);
        return out;
    }

    bool licensed(Kind kind, const Formula& body, const std::string& x, std::set<PredicateSymbol>& reasons) const {
        if (kind == Kind::Exists) return forced(body, x, known_, reasons);
        switch (body.kind) {
            case Kind::Implies:
            case Kind::Not: return forced(body.child(0), x, known_, reasons);
            case Kind::Iff:
                return forced(body.child(0), x, known_, reasons) && forced(body.child(1), x, known_, reasons);
            default: return false;
        }
    }

    std::string fresh(const std::string& name) {
        auto available = [&](const std::string& n) { return std::find(taken_.begin(), taken_.end(), n) == taken_.end(); };
        std::string pick;
        const std::string suffix = name.substr(1);
        if (name.front() == 'V' && std::all_of(suffix.begin(), suffix.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
            available("N" + suffix)) {
            pick = "N" + suffix;
        }
        for (int round = 0; pick.empty(); ++round) {
            for (const char* base : {"I", "J", "K", "L", "M"}) {
                const std::string candidate = round == 0 ? std::string(base) : base + std::to_string(round);
                if (available(candidate)) {
                    pick = candidate;
                    break;
                }
            }
        }
        taken_.push_back(pick);
        return pick;
    }

    const Known& known_;
    std::set<PredicateSymbol>& used_;
    std::vector<std::string> taken_;
};

}  // namespace

std::vector<Formula> IntegerizeResult::formulas() const {
    std::vector<Formula> out;
    for (const auto& f : facts) out.push_back(f.formula);
    for (const auto& d : definitions) out.push_back(d.formula);
    out.insert(out.end(), constraints.begin(), constraints.end());
    return out;
}

Formula int_formula(const Argument& arg) {
    auto t = to_term(arg);
    if (!t) throw std::invalid_argument("int() needs an aggregate-free argument");
    std::vector<std::string> names;
    for (const auto& v : free_variables(arg)) names.push_back(v.name);
    std::string v = "V";
    for (int i = 1; std::find(names.begin(), names.end(), v) != names.end(); ++i) v = "V" + std::to_string(i);
    const Variable var = Variable::general(v);
    return Formula::exists({var}, Formula::member(Argument::variable(var),
                                                  Term::operation(Operator::Plus, {std::move(*t), Term::numeral(1)})));
}

Formula int_formula(const PredicateSymbol& pred, const std::vector<std::size_t>& positions) {
    std::vector<Variable> vars;
    std::vector<Argument> args;
    for (std::size_t i = 1; i <= pred.arity; ++i) {
        vars.push_back(Variable::general("X" + std::to_string(i)));
        args.push_back(Argument::variable(vars.back()));
    }
    std::vector<Formula> ints;
    for (std::size_t i : positions) ints.push_back(int_formula(args.at(i)));
    return Formula::forall(vars, Formula::implies(Formula::atom(pred.name, args), Formula::conjunction(std::move(ints))));
}

IntegerizeResult integerize(const CompletionResult& completion, const SimplifyOptions& options) {
    IntegerizeResult result;
    const CompletionResult simplified = simplify(completion, options, options.record_trace ? &result.trace : nullptr);
    const Known known = derive(simplified.definitions);
    std::set<PredicateSymbol> used;
    Converter converter(known, used);
    auto finish = [&](const Formula& f) {
        SimplifyResult r = simplify(converter.run(f), options);
        result.trace.insert(result.trace.end(), r.trace.begin(), r.trace.end());
        return std::move(r.formula);
    };
    for (const auto& d : simplified.definitions) {
        CompletedDefinition out = d;
        out.formula = finish(d.formula);
        result.definitions.push_back(std::move(out));
    }
    for (const auto& c : simplified.constraints) result.constraints.push_back(finish(c));
    for (const auto& pred : used) {
        IntegerFact fact;
        fact.predicate = pred;
        const auto& positions = known.at(pred);
        for (std::size_t i = 0; i < positions.size(); ++i) {
            if (positions[i]) fact.positions.push_back(i);
        }
        fact.formula = int_formula(pred, fact.positions);
        result.facts.push_back(std::move(fact));
    }
    return result;
}

}  // namespace eg
