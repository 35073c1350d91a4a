#include "eg/ground.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace eg {

using GKind = GroundFormula::Kind;

GroundFormula GroundFormula::top() { return {}; }

GroundFormula GroundFormula::bottom() {
    GroundFormula f;
    f.kind = GKind::Bottom;
    return f;
}

GroundFormula GroundFormula::make_atom(GroundAtom a) {
    GroundFormula f;
    f.kind = GKind::Atom;
    f.atom = std::move(a);
    return f;
}

GroundFormula GroundFormula::conjunction(std::vector<GroundFormula> fs) {
    GroundFormula f;
    f.kind = GKind::And;
    f.children = std::move(fs);
    return f;
}

GroundFormula GroundFormula::disjunction(std::vector<GroundFormula> fs) {
    GroundFormula f;
    f.kind = GKind::Or;
    f.children = std::move(fs);
    return f;
}

GroundFormula GroundFormula::implies(GroundFormula a, GroundFormula b) {
    GroundFormula f;
    f.kind = GKind::Implies;
    f.children.push_back(std::move(a));
    f.children.push_back(std::move(b));
    return f;
}

GroundFormula GroundFormula::negation(GroundFormula a) { return implies(std::move(a), bottom()); }

GroundFormula GroundFormula::make_aggregate(GroundAggregate a) {
    GroundFormula f;
    f.kind = GKind::Aggregate;
    f.aggregate = std::make_shared<const GroundAggregate>(std::move(a));
    return f;
}

// ---- aggregates ------------------------------------------------------------

namespace {

std::int64_t weight(const ValueTuple& t) { return !t.empty() && t.front().is_numeral() ? t.front().number : 0; }

void add_checked(std::int64_t& acc, std::int64_t w) {
    if (__builtin_add_overflow(acc, w, &acc)) throw ResourceError("integer overflow in sum aggregate");
}

std::vector<ValueTuple> union_of(const GroundAggregate& a, const std::vector<bool>& chosen) {
    std::vector<ValueTuple> out;
    for (std::size_t i = 0; i < a.elements.size(); ++i) {
        if (!chosen[i]) continue;
        out.insert(out.end(), a.elements[i].tuples.begin(), a.elements[i].tuples.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool some_bound(const GroundAggregate& a, const Value& v) {
    return std::any_of(a.bound.begin(), a.bound.end(),
                       [&](const Value& s) { return holds(a.rel, order_cmp(v, s)); });
}

Truth range_truth(std::int64_t lo, std::int64_t hi, Relation rel, const Value& s) {
    const bool at_lo = holds(rel, order_cmp(Value::numeral(lo), s));
    const bool at_hi = holds(rel, order_cmp(Value::numeral(hi), s));
    if (rel == Relation::Eq || rel == Relation::Ne) {
        const bool inside = s.is_numeral() && lo <= s.number && s.number <= hi;
        if (!inside) return rel == Relation::Eq ? Truth::False : Truth::True;
        if (lo == hi) return at_lo ? Truth::True : Truth::False;
        return Truth::Unknown;
    }
    if (at_lo == at_hi) return at_lo ? Truth::True : Truth::False;
    return Truth::Unknown;
}

}  // namespace

Value aggregate_value(AggregateFunction function, const std::vector<ValueTuple>& tuples) {
    if (function == AggregateFunction::Count) return Value::numeral(static_cast<std::int64_t>(tuples.size()));
    std::int64_t sum = 0;
    for (const auto& t : tuples) add_checked(sum, weight(t));
    return Value::numeral(sum);
}

bool justifies(const GroundAggregate& a, const std::vector<bool>& chosen) {
    return some_bound(a, aggregate_value(a.function, union_of(a, chosen)));
}

GroundFormula expand_aggregate(const GroundAggregate& a, std::size_t max_tuples) {
    const std::size_t n = a.elements.size();
    if (n > max_tuples || n >= 63) {
        throw ResourceError("aggregate with " + std::to_string(n) + " candidate tuples exceeds the cap of " +
                            std::to_string(max_tuples));
    }
    std::vector<GroundFormula> implications;
    std::vector<bool> chosen(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        for (std::size_t i = 0; i < n; ++i) chosen[i] = ((mask >> i) & 1U) != 0;
        if (justifies(a, chosen)) continue;
        std::vector<GroundFormula> inside;
        std::vector<GroundFormula> outside;
        for (std::size_t i = 0; i < n; ++i) (chosen[i] ? inside : outside).push_back(a.elements[i].condition);
        implications.push_back(GroundFormula::implies(GroundFormula::conjunction(std::move(inside)),
                                                      GroundFormula::disjunction(std::move(outside))));
    }
    return GroundFormula::conjunction(std::move(implications));
}

GroundFormula expand_aggregates(const GroundFormula& f, std::size_t max_tuples) {
    if (f.kind == GKind::Aggregate) {
        GroundAggregate a = *f.aggregate;
        for (auto& e : a.elements) e.condition = expand_aggregates(e.condition, max_tuples);
        return expand_aggregate(a, max_tuples);
    }
    GroundFormula out = f;
    for (auto& c : out.children) c = expand_aggregates(c, max_tuples);
    return out;
}

// ---- semantics -------------------------------------------------------------

bool satisfies(const GroundFormula& f, const Interpretation& interp) {
    switch (f.kind) {
        case GKind::Atom: return interp.count(f.atom) != 0;
        case GKind::Top: return true;
        case GKind::Bottom: return false;
        case GKind::And:
            return std::all_of(f.children.begin(), f.children.end(),
                               [&](const GroundFormula& c) { return satisfies(c, interp); });
        case GKind::Or:
            return std::any_of(f.children.begin(), f.children.end(),
                               [&](const GroundFormula& c) { return satisfies(c, interp); });
        case GKind::Implies: return !satisfies(f.children[0], interp) || satisfies(f.children[1], interp);
        case GKind::Aggregate: {
            const auto& a = *f.aggregate;
            std::vector<bool> chosen(a.elements.size());
            for (std::size_t i = 0; i < chosen.size(); ++i) chosen[i] = satisfies(a.elements[i].condition, interp);
            return justifies(a, chosen);
        }
    }
    return false;
}

namespace {

Truth evaluate_aggregate(const GroundAggregate& a, const Interpretation& certain, const Interpretation& possible) {
    const std::size_t n = a.elements.size();
    std::vector<bool> sure(n);
    std::vector<bool> maybe(n);
    bool open = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Truth t = evaluate(a.elements[i].condition, certain, possible);
        sure[i] = t == Truth::True;
        maybe[i] = t != Truth::False;
        open = open || t == Truth::Unknown;
    }
    if (!open) return justifies(a, sure) ? Truth::True : Truth::False;
    const auto low = union_of(a, sure);
    const auto high = union_of(a, maybe);
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    if (a.function == AggregateFunction::Count) {
        lo = static_cast<std::int64_t>(low.size());
        hi = static_cast<std::int64_t>(high.size());
    } else {
        for (const auto& t : high) {
            const std::int64_t w = weight(t);
            if (std::binary_search(low.begin(), low.end(), t)) {
                add_checked(lo, w);
                add_checked(hi, w);
            } else {
                add_checked(w < 0 ? lo : hi, w);
            }
        }
    }
    bool all_false = true;
    for (const auto& s : a.bound) {
        const Truth t = range_truth(lo, hi, a.rel, s);
        if (t == Truth::True) return Truth::True;
        all_false = all_false && t == Truth::False;
    }
    return all_false ? Truth::False : Truth::Unknown;
}

}  // namespace

Truth evaluate(const GroundFormula& f, const Interpretation& certain, const Interpretation& possible) {
    switch (f.kind) {
        case GKind::Atom:
            if (certain.count(f.atom) != 0) return Truth::True;
            return possible.count(f.atom) != 0 ? Truth::Unknown : Truth::False;
        case GKind::Top: return Truth::True;
        case GKind::Bottom: return Truth::False;
        case GKind::And: {
            Truth acc = Truth::True;
            for (const auto& c : f.children) {
                acc = truth_and(acc, evaluate(c, certain, possible));
                if (acc == Truth::False) break;
            }
            return acc;
        }
        case GKind::Or: {
            Truth acc = Truth::False;
            for (const auto& c : f.children) {
                acc = truth_or(acc, evaluate(c, certain, possible));
                if (acc == Truth::True) break;
            }
            return acc;
        }
        case GKind::Implies: {
            const Truth a = evaluate(f.children[0], certain, possible);
            if (a == Truth::False) return Truth::True;
            return truth_or(truth_not(a), evaluate(f.children[1], certain, possible));
        }
        case GKind::Aggregate: return evaluate_aggregate(*f.aggregate, certain, possible);
    }
    return Truth::Unknown;
}

GroundFormula reduct(const GroundFormula& f, const Interpretation& interp) {
    if (!satisfies(f, interp)) return GroundFormula::bottom();
    if (f.kind == GKind::Aggregate) {
        GroundAggregate a = *f.aggregate;
        for (auto& e : a.elements) e.condition = reduct(e.condition, interp);
        return GroundFormula::make_aggregate(std::move(a));
    }
    GroundFormula out = f;
    for (auto& c : out.children) c = reduct(c, interp);
    return out;
}

bool aggregate_reduct_holds(const GroundAggregate& a, const Interpretation& interp, const Interpretation& j) {
    std::vector<bool> chosen(a.elements.size());
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        chosen[i] = satisfies(reduct(a.elements[i].condition, interp), j);
    }
    return justifies(a, chosen);
}

GroundFormula simplify(const GroundFormula& f) {
    switch (f.kind) {
        case GKind::Atom:
        case GKind::Top:
        case GKind::Bottom: return f;
        case GKind::And:
        case GKind::Or: {
            const bool conj = f.kind == GKind::And;
            const GKind unit = conj ? GKind::Top : GKind::Bottom;
            const GKind zero = conj ? GKind::Bottom : GKind::Top;
            std::vector<GroundFormula> kept;
            for (const auto& c : f.children) {
                GroundFormula s = simplify(c);
                if (s.kind == zero) return s;
                if (s.kind == unit) continue;
                if (s.kind == f.kind) {
                    for (auto& g : s.children) kept.push_back(std::move(g));
                } else {
                    kept.push_back(std::move(s));
                }
            }
            if (kept.empty()) return conj ? GroundFormula::top() : GroundFormula::bottom();
            if (kept.size() == 1) return std::move(kept.front());
            return conj ? GroundFormula::conjunction(std::move(kept)) : GroundFormula::disjunction(std::move(kept));
        }
        case GKind::Implies: {
            GroundFormula a = simplify(f.children[0]);
            GroundFormula b = simplify(f.children[1]);
            if (a.kind == GKind::Bottom || b.kind == GKind::Top) return GroundFormula::top();
            if (a.kind == GKind::Top) return b;
            return GroundFormula::implies(std::move(a), std::move(b));
        }
        case GKind::Aggregate: {
            GroundAggregate a = *f.aggregate;
            std::vector<GroundAggregateElement> kept;
            bool open = false;
            for (auto& e : a.elements) {
                e.condition = simplify(e.condition);
                // Elements that can never hold, or add no tuple, do not affect justification.
                if (e.condition.kind == GKind::Bottom || e.tuples.empty()) continue;
                open = open || e.condition.kind != GKind::Top;
                kept.push_back(std::move(e));
            }
            a.elements = std::move(kept);
            if (!open) return justifies(a, std::vector<bool>(a.elements.size(), true)) ? GroundFormula::top()
                                                                                      : GroundFormula::bottom();
            return GroundFormula::make_aggregate(std::move(a));
        }
    }
    return f;
}

namespace {

GroundFormula restrict_rec(const GroundFormula& f, const Interpretation& universe) {
    if (f.kind == GKind::Atom) return universe.count(f.atom) != 0 ? f : GroundFormula::bottom();
    if (f.kind == GKind::Aggregate) {
        GroundAggregate a = *f.aggregate;
        for (auto& e : a.elements) e.condition = restrict_rec(e.condition, universe);
        return GroundFormula::make_aggregate(std::move(a));
    }
    GroundFormula out = f;
    for (auto& c : out.children) c = restrict_rec(c, universe);
    return out;
}

}  // namespace

GroundFormula restrict_to(const GroundFormula& f, const Interpretation& universe) {
    return simplify(restrict_rec(f, universe));
}

void collect_atoms(const GroundFormula& f, Interpretation& out) {
    if (f.kind == GKind::Atom) out.insert(f.atom);
    if (f.kind == GKind::Aggregate) {
        for (const auto& e : f.aggregate->elements) collect_atoms(e.condition, out);
    }
    for (const auto& c : f.children) collect_atoms(c, out);
}

// ---- printing --------------------------------------------------------------

namespace {

class GroundPrinter {
public:
    GroundPrinter(std::ostream& out, const RenderOptions& options) : out_(out), utf8_(options.utf8) {}

    void print(const GroundFormula& f, bool nested) {
        switch (f.kind) {
            case GKind::Atom: out_ << to_string(f.atom); return;
            case GKind::Top: out_ << (utf8_ ? "⊤" : "#true"); return;
            case GKind::Bottom: out_ << (utf8_ ? "⊥" : "#false"); return;
            case GKind::And:
            case GKind::Or: {
                if (f.children.empty()) {
                    print(f.kind == GKind::And ? GroundFormula::top() : GroundFormula::bottom(), nested);
                    return;
                }
                const char* sep = f.kind == GKind::And ? (utf8_ ? " ∧ " : " & ") : (utf8_ ? " ∨ " : " | ");
                if (nested && f.children.size() > 1) out_ << "(";
                for (std::size_t i = 0; i < f.children.size(); ++i) {
                    if (i > 0) out_ << sep;
                    print(f.children[i], true);
                }
                if (nested && f.children.size() > 1) out_ << ")";
                return;
            }
            case GKind::Implies:
                if (f.is_negation()) {
                    out_ << (utf8_ ? "¬" : "not ");
                    print(f.children[0], true);
                    return;
                }
                if (nested) out_ << "(";
                print(f.children[0], true);
                out_ << (utf8_ ? " → " : " -> ");
                print(f.children[1], true);
                if (nested) out_ << ")";
                return;
            case GKind::Aggregate: aggregate(*f.aggregate); return;
        }
    }

private:
    void aggregate(const GroundAggregate& a) {
        out_ << "#" << name(a.function) << "{";
        for (std::size_t i = 0; i < a.elements.size(); ++i) {
            if (i > 0) out_ << "; ";
            const auto& e = a.elements[i];
            for (std::size_t k = 0; k < e.tuples.size(); ++k) {
                if (k > 0) out_ << " ";
                out_ << "(";
                for (std::size_t m = 0; m < e.tuples[k].size(); ++m) out_ << (m > 0 ? "," : "") << e.tuples[k][m];
                out_ << ")";
            }
            out_ << " : ";
            print(e.condition, true);
        }
        out_ << "} " << (utf8_ ? utf8_symbol(a.rel) : symbol(a.rel)) << " ";
        if (a.bound.size() == 1) {
            out_ << a.bound.front();
        } else {
            out_ << "{";
            for (std::size_t i = 0; i < a.bound.size(); ++i) out_ << (i > 0 ? "," : "") << a.bound[i];
            out_ << "}";
        }
    }

    std::ostream& out_;
    bool utf8_;
};

}  // namespace

std::string to_string(const GroundFormula& f, const RenderOptions& options) {
    std::ostringstream out;
    GroundPrinter(out, options).print(f, false);
    return out.str();
}

// ---- instances -------------------------------------------------------------

Term substitute(const Term& t, const Binding& binding) {
    if (t.kind == Term::Kind::Variable) {
        auto it = binding.find(t.name);
        return it == binding.end() ? t : to_term(it->second);
    }
    Term out = t;
    for (auto& a : out.args) a = substitute(a, binding);
    return out;
}

namespace {

Atom substitute(const Atom& a, const Binding& b) {
    Atom out = a;
    for (auto& t : out.args) t = substitute(t, b);
    return out;
}

Condition substitute(const Condition& c, const Binding& b) {
    if (const auto* lit = std::get_if<Literal>(&c)) return Literal{lit->negative, substitute(lit->atom, b)};
    const auto& cmp = std::get<Comparison>(c);
    return Comparison{substitute(cmp.lhs, b), cmp.rel, substitute(cmp.rhs, b)};
}

BodyElement substitute(const BodyElement& e, const Binding& b) {
    if (const auto* lit = std::get_if<Literal>(&e)) return Literal{lit->negative, substitute(lit->atom, b)};
    if (const auto* cmp = std::get_if<Comparison>(&e)) {
        return Comparison{substitute(cmp->lhs, b), cmp->rel, substitute(cmp->rhs, b)};
    }
    Aggregate agg = std::get<Aggregate>(e);
    for (auto& t : agg.tuple) t = substitute(t, b);
    for (auto& c : agg.condition) c = substitute(c, b);
    agg.bound = substitute(agg.bound, b);
    return agg;
}

// The unbound variable x can be read off a matching value.
bool structural(const Term& t, const std::string& x) {
    if (t.kind == Term::Kind::Variable) return t.name == x;
    if (t.kind != Term::Kind::Function) return false;
    return std::any_of(t.args.begin(), t.args.end(), [&](const Term& a) { return structural(a, x); });
}

bool mentions(const Term& t, const std::string& x) {
    if (t.kind == Term::Kind::Variable) return t.name == x;
    return std::any_of(t.args.begin(), t.args.end(), [&](const Term& a) { return mentions(a, x); });
}

bool match(const Term& p, const Value& v, Binding& b) {
    switch (p.kind) {
        case Term::Kind::Variable: {
            auto [it, fresh] = b.emplace(p.name, v);
            return fresh || it->second == v;
        }
        case Term::Kind::Function:
            if (v.kind != Value::Kind::Function || v.name != p.name || v.args.size() != p.args.size()) return false;
            for (std::size_t i = 0; i < p.args.size(); ++i) {
                if (!match(p.args[i], v.args[i], b)) return false;
            }
            return true;
        case Term::Kind::Operation:
        case Term::Kind::Interval: {
            const Term g = substitute(p, b);
            if (!g.is_ground()) return true;  // checked once the instance is closed
            return contains(eval_term(g), v);
        }
        default: return *to_value(p) == v;
    }
}

std::vector<std::string> aggregate_variables(const Aggregate& agg) {
    std::vector<std::string> out;
    for (const auto& t : agg.tuple) collect_variables(t, out);
    for (const auto& c : agg.condition) {
        if (const auto* lit = std::get_if<Literal>(&c)) {
            for (const auto& t : lit->atom.args) collect_variables(t, out);
        } else {
            const auto& cmp = std::get<Comparison>(c);
            collect_variables(cmp.lhs, out);
            collect_variables(cmp.rhs, out);
        }
    }
    return out;
}

class Binder {
public:
    Binder(const Interpretation& universe, const InstantiationConfig& cfg, std::vector<std::string> vars,
           std::vector<Atom> positives, std::vector<Comparison> equalities, std::vector<Aggregate> aggregates)
        : universe_(universe),
          cfg_(cfg),
          vars_(std::move(vars)),
          positives_(std::move(positives)),
          equalities_(std::move(equalities)),
          aggregates_(std::move(aggregates)) {}

    InstanceSet run() {
        Binding b;
        rec(b);
        InstanceSet out;
        out.bindings.assign(found_.begin(), found_.end());
        out.unrestricted = unrestricted_;
        return out;
    }

private:
    void store(const Binding& b) {
        found_.insert(b);
        if (found_.size() > cfg_.max_instances) {
            throw ResourceError("more than " + std::to_string(cfg_.max_instances) + " instances");
        }
    }

    void rec(const Binding& b) {
        std::vector<std::string> open;
        for (const auto& v : vars_) {
            if (b.count(v) == 0) open.push_back(v);
        }
        if (open.empty()) {
            store(b);
            return;
        }
        for (const auto& atom : positives_) {
            const bool binds = std::any_of(open.begin(), open.end(), [&](const std::string& x) {
                return std::any_of(atom.args.begin(), atom.args.end(), [&](const Term& t) { return structural(t, x); });
            });
            if (!binds) continue;
            GroundAtom key{atom.predicate, {}};
            for (auto it = universe_.lower_bound(key); it != universe_.end() && it->predicate == atom.predicate; ++it) {
                if (it->args.size() != atom.args.size()) continue;
                Binding next = b;
                bool ok = true;
                for (std::size_t i = 0; i < atom.args.size() && ok; ++i) ok = match(atom.args[i], it->args[i], next);
                if (ok) rec(next);
            }
            return;
        }
        for (const auto& cmp : equalities_) {
            for (int side = 0; side < 2; ++side) {
                const Term& var = side == 0 ? cmp.lhs : cmp.rhs;
                const Term& other = side == 0 ? cmp.rhs : cmp.lhs;
                if (!var.is_variable() || b.count(var.name) != 0) continue;
                if (std::find(open.begin(), open.end(), var.name) == open.end()) continue;
                const Term g = substitute(other, b);
                if (!g.is_ground()) continue;
                for (const auto& v : eval_term(g)) {
                    Binding next = b;
                    next.emplace(var.name, v);
                    rec(next);
                }
                return;
            }
        }
        for (const auto& agg : aggregates_) {
            if (!agg.bound.is_variable() || b.count(agg.bound.name) != 0) continue;
            if (std::find(open.begin(), open.end(), agg.bound.name) == open.end()) continue;
            if (auto values = aggregate_values(agg, b)) {
                for (const auto& v : *values) {
                    Binding next = b;
                    next.emplace(agg.bound.name, v);
                    rec(next);
                }
                return;
            }
        }
        unrestricted_ = true;
        for (const auto& v : cfg_.domain.general) {
            Binding next = b;
            next.emplace(open.front(), v);
            rec(next);
        }
    }

    // Values alpha-hat[Delta] can take; only for an equality whose other
    // variables are all bound.
    std::optional<ValueSet> aggregate_values(const Aggregate& agg, const Binding& b) {
        if (agg.rel != Relation::Eq) return std::nullopt;
        Aggregate closed = std::get<Aggregate>(substitute(BodyElement(agg), b));
        closed.bound = Term::numeral(0);
        for (const auto& v : aggregate_variables(closed)) {
            if (std::find(vars_.begin(), vars_.end(), v) != vars_.end()) return std::nullopt;  // an open global
        }
        GroundingSetting setting{&universe_, &cfg_, false};
        const GroundFormula g = tau_body({closed}, setting);
        if (setting.unrestricted) return std::nullopt;
        GroundAggregate a = *g.aggregate;
        std::vector<bool> base;
        std::vector<std::size_t> open;
        std::vector<GroundAggregateElement> kept;
        for (auto& e : a.elements) {
            e.condition = simplify(e.condition);
            if (e.condition.kind == GKind::Bottom) continue;
            if (e.condition.kind != GKind::Top) open.push_back(kept.size());
            base.push_back(e.condition.kind == GKind::Top);
            kept.push_back(std::move(e));
        }
        a.elements = std::move(kept);
        if (open.size() > 20) return std::nullopt;
        ValueSet out;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << open.size()); ++mask) {
            std::vector<bool> chosen = base;
            for (std::size_t i = 0; i < open.size(); ++i) chosen[open[i]] = ((mask >> i) & 1U) != 0;
            out.push_back(aggregate_value(a.function, union_of(a, chosen)));
        }
        normalize(out);
        return out;
    }

    const Interpretation& universe_;
    const InstantiationConfig& cfg_;
    std::vector<std::string> vars_;
    std::vector<Atom> positives_;
    std::vector<Comparison> equalities_;
    std::vector<Aggregate> aggregates_;
    std::set<Binding> found_;
    bool unrestricted_ = false;
};

}  // namespace

Rule substitute(const Rule& rule, const Binding& binding) {
    Rule out = rule;
    out.head = substitute(rule.head, binding);
    for (auto& e : out.body) e = substitute(e, binding);
    return out;
}

InstanceSet instance_bindings(const Rule& rule, const Interpretation& universe, const InstantiationConfig& cfg) {
    std::vector<Atom> positives;
    std::vector<Comparison> equalities;
    std::vector<Aggregate> aggregates;
    for (const auto& e : rule.body) {
        if (const auto* lit = std::get_if<Literal>(&e)) {
            if (!lit->negative) positives.push_back(lit->atom);
        } else if (const auto* cmp = std::get_if<Comparison>(&e)) {
            if (cmp->rel == Relation::Eq) equalities.push_back(*cmp);
        } else {
            aggregates.push_back(std::get<Aggregate>(e));
        }
    }
    Binder binder(universe, cfg, classify_variables(rule).globals, std::move(positives), std::move(equalities),
                  std::move(aggregates));
    return binder.run();
}

namespace {

void domain_vocabulary(const std::vector<PredicateSymbol>& preds, const ValueSet& domain, Interpretation& out) {
    for (const auto& p : preds) {
        std::vector<std::size_t> index(p.arity, 0);
        if (p.arity > 0 && domain.empty()) continue;
        while (true) {
            GroundAtom a{p.name, {}};
            for (std::size_t i : index) a.args.push_back(domain[i]);
            out.insert(std::move(a));
            std::size_t k = 0;
            while (k < p.arity && ++index[k] == domain.size()) index[k++] = 0;
            if (k == p.arity) break;
        }
    }
}

}  // namespace

std::vector<Rule> instances(const Rule& rule, const InstantiationConfig& cfg, bool* unrestricted) {
    Interpretation universe;
    domain_vocabulary(predicates(rule), cfg.domain.general, universe);
    const InstanceSet set = instance_bindings(rule, universe, cfg);
    if (unrestricted != nullptr) *unrestricted = set.unrestricted;
    std::vector<Rule> out;
    for (const auto& b : set.bindings) out.push_back(substitute(rule, b));
    return out;
}

// ---- tau -------------------------------------------------------------------

namespace {

GroundFormula tau_literal(const Literal& lit, const GroundingSetting& setting) {
    std::vector<GroundFormula> out;
    for (auto& args : eval_term_tuple(lit.atom.args)) {
        GroundAtom a{lit.atom.predicate, std::move(args)};
        const bool known = setting.universe == nullptr || setting.universe->count(a) != 0;
        GroundFormula atom = known ? GroundFormula::make_atom(std::move(a)) : GroundFormula::bottom();
        out.push_back(lit.negative ? GroundFormula::negation(std::move(atom)) : std::move(atom));
    }
    return out.size() == 1 ? std::move(out.front()) : GroundFormula::disjunction(std::move(out));
}

GroundFormula tau_comparison(const Comparison& cmp) {
    const ValueSet a = eval_term(cmp.lhs);
    const ValueSet b = eval_term(cmp.rhs);
    for (const auto& x : a) {
        for (const auto& y : b) {
            if (holds(cmp.rel, order_cmp(x, y))) return GroundFormula::top();
        }
    }
    return GroundFormula::bottom();
}

GroundFormula tau_conditions(const std::vector<Condition>& conds, GroundingSetting& setting) {
    std::vector<GroundFormula> out;
    for (const auto& c : conds) {
        if (const auto* lit = std::get_if<Literal>(&c)) {
            out.push_back(tau_literal(*lit, setting));
        } else {
            out.push_back(tau_comparison(std::get<Comparison>(c)));
        }
    }
    return out.size() == 1 ? std::move(out.front()) : GroundFormula::conjunction(std::move(out));
}

GroundFormula tau_aggregate(const Aggregate& agg, GroundingSetting& setting) {
    static const InstantiationConfig kDefault{};
    const InstantiationConfig& cfg = setting.cfg != nullptr ? *setting.cfg : kDefault;
    const std::vector<std::string> locals = aggregate_variables(agg);
    GroundAggregate out;
    out.function = agg.function;
    out.rel = agg.rel;
    if (!agg.bound.is_ground()) throw std::invalid_argument("aggregate bound is not ground: " + to_string(agg.bound));
    out.bound = eval_term(agg.bound);
    std::vector<Atom> positives;
    std::vector<Comparison> equalities;
    for (const auto& c : agg.condition) {
        if (const auto* lit = std::get_if<Literal>(&c)) {
            if (!lit->negative) positives.push_back(lit->atom);
        } else if (std::get<Comparison>(c).rel == Relation::Eq) {
            equalities.push_back(std::get<Comparison>(c));
        }
    }
    Interpretation vocabulary;
    const Interpretation* universe = setting.universe;
    if (universe == nullptr) {
        std::vector<PredicateSymbol> preds;
        for (const auto& a : positives) preds.push_back(predicate_of(a));
        std::sort(preds.begin(), preds.end());
        preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
        domain_vocabulary(preds, cfg.domain.general, vocabulary);
        universe = &vocabulary;
    }
    Binder binder(*universe, cfg, locals, std::move(positives), std::move(equalities), {});
    const InstanceSet set = binder.run();
    setting.unrestricted = setting.unrestricted || set.unrestricted;
    for (const auto& b : set.bindings) {
        GroundAggregateElement e;
        for (const auto& x : locals) e.local.push_back(b.at(x));
        std::vector<Term> tuple;
        for (const auto& t : agg.tuple) tuple.push_back(substitute(t, b));
        e.tuples = eval_term_tuple(tuple);
        std::vector<Condition> conds;
        for (const auto& c : agg.condition) conds.push_back(substitute(c, b));
        e.condition = conds.empty() ? GroundFormula::top() : tau_conditions(conds, setting);
        out.elements.push_back(std::move(e));
    }
    return GroundFormula::make_aggregate(std::move(out));
}

std::vector<GroundAtom> head_atoms(const Atom& head) {
    std::vector<GroundAtom> out;
    for (auto& args : eval_term_tuple(head.args)) out.push_back({head.predicate, std::move(args)});
    return out;
}

}  // namespace

GroundFormula tau_body(const std::vector<BodyElement>& body, GroundingSetting& setting) {
    std::vector<GroundFormula> out;
    for (const auto& e : body) {
        if (const auto* lit = std::get_if<Literal>(&e)) {
            out.push_back(tau_literal(*lit, setting));
        } else if (const auto* cmp = std::get_if<Comparison>(&e)) {
            out.push_back(tau_comparison(*cmp));
        } else {
            out.push_back(tau_aggregate(std::get<Aggregate>(e), setting));
        }
    }
    return out.size() == 1 ? std::move(out.front()) : GroundFormula::conjunction(std::move(out));
}

GroundFormula tau_rule(const Rule& closed, GroundingSetting& setting) {
    GroundFormula body = tau_body(closed.body, setting);
    if (closed.kind == Rule::Kind::Constraint) return GroundFormula::negation(std::move(body));
    std::vector<GroundFormula> heads;
    for (auto& a : head_atoms(closed.head)) {
        const bool known = setting.universe == nullptr || setting.universe->count(a) != 0;
        GroundFormula atom = known ? GroundFormula::make_atom(std::move(a)) : GroundFormula::bottom();
        if (closed.kind == Rule::Kind::Choice) {
            heads.push_back(GroundFormula::disjunction({atom, GroundFormula::negation(atom)}));
        } else {
            heads.push_back(std::move(atom));
        }
    }
    return GroundFormula::implies(std::move(body), GroundFormula::conjunction(std::move(heads)));
}

}  // namespace eg
