#include "eg/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "eg/simplify.hpp"

namespace eg {
namespace {

void collect_term(const Term& t, ValueSet& values, std::int64_t& lo, std::int64_t& hi) {
    if (t.kind == Term::Kind::Numeral) {
        lo = std::min(lo, t.number);
        hi = std::max(hi, t.number);
    }
    if (auto v = to_value(t)) values.push_back(*v);
    for (const auto& a : t.args) collect_term(a, values, lo, hi);
}

void collect_atom(const Atom& a, ValueSet& values, std::int64_t& lo, std::int64_t& hi) {
    for (const auto& t : a.args) collect_term(t, values, lo, hi);
}

void collect_condition(const Condition& c, ValueSet& values, std::int64_t& lo, std::int64_t& hi) {
    if (const auto* lit = std::get_if<Literal>(&c)) {
        collect_atom(lit->atom, values, lo, hi);
    } else {
        collect_term(std::get<Comparison>(c).lhs, values, lo, hi);
        collect_term(std::get<Comparison>(c).rhs, values, lo, hi);
    }
}

void add_value_parts(const Value& v, ValueSet& out) {
    out.push_back(v);
    for (const auto& a : v.args) add_value_parts(a, out);
}

// The body can hold for some interpretation inside `universe`, judging
// literals only.
bool possibly_true(const std::vector<BodyElement>& body, const Interpretation& universe) {
    for (const auto& e : body) {
        if (const auto* lit = std::get_if<Literal>(&e)) {
            const auto tuples = eval_term_tuple(lit->atom.args);
            if (tuples.empty()) return false;
            if (lit->negative) continue;
            const bool any = std::any_of(tuples.begin(), tuples.end(), [&](const ValueTuple& args) {
                return universe.count(GroundAtom{lit->atom.predicate, args}) != 0;
            });
            if (!any) return false;
        } else if (const auto* cmp = std::get_if<Comparison>(&e)) {
            bool any = false;
            for (const auto& a : eval_term(cmp->lhs)) {
                for (const auto& b : eval_term(cmp->rhs)) any = any || holds(cmp->rel, order_cmp(a, b));
            }
            if (!any) return false;
        }
    }
    return true;
}

void check_cap(std::size_t size, std::size_t cap, const char* what) {
    if (size > cap) {
        throw ResourceError(std::string("more than ") + std::to_string(cap) + " " + what +
                            " (raise --max-atoms to allow more)");
    }
}

// Ground formulas over atom positions, for the search loops.
struct Compiled;

struct CompiledAggregate {
    Relation rel = Relation::Eq;
    ValueSet bound;
    std::vector<Compiled> conditions;
    std::vector<std::vector<std::size_t>> tuples;  // per element, indices into weights
    std::vector<std::int64_t> weights;             // per distinct tuple; 1 for count
};

struct Compiled {
    GroundFormula::Kind kind = GroundFormula::Kind::Top;
    std::size_t atom = 0;
    std::vector<Compiled> children;
    std::shared_ptr<const CompiledAggregate> aggregate;
};

using State = std::vector<Truth>;

class Compiler {
public:
    explicit Compiler(const std::vector<GroundAtom>& order) : order_(order) {}

    Compiled compile(const GroundFormula& f, std::vector<std::size_t>& atoms) const {
        using K = GroundFormula::Kind;
        Compiled out;
        out.kind = f.kind;
        if (f.kind == K::Atom) {
            auto it = std::lower_bound(order_.begin(), order_.end(), f.atom);
            if (it == order_.end() || !(*it == f.atom)) {
                out.kind = K::Bottom;
                return out;
            }
            out.atom = static_cast<std::size_t>(it - order_.begin());
            atoms.push_back(out.atom);
            return out;
        }
        if (f.kind == K::Aggregate) {
            const GroundAggregate& a = *f.aggregate;
            auto c = std::make_shared<CompiledAggregate>();
            c->rel = a.rel;
            c->bound = a.bound;
            std::map<ValueTuple, std::size_t> ids;
            for (const auto& e : a.elements) {
                c->conditions.push_back(compile(e.condition, atoms));
                std::vector<std::size_t> mine;
                for (const auto& t : e.tuples) {
                    auto [it, fresh] = ids.emplace(t, c->weights.size());
                    if (fresh) {
                        const bool numeral = a.function == AggregateFunction::Sum && !t.empty() && t.front().is_numeral();
                        c->weights.push_back(a.function == AggregateFunction::Count ? 1 : numeral ? t.front().number : 0);
                    }
                    mine.push_back(it->second);
                }
                c->tuples.push_back(std::move(mine));
            }
            out.aggregate = std::move(c);
            return out;
        }
        for (const auto& g : f.children) out.children.push_back(compile(g, atoms));
        return out;
    }

private:
    const std::vector<GroundAtom>& order_;
};

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

void add_checked(std::int64_t& acc, std::int64_t w) {
    if (__builtin_add_overflow(acc, w, &acc)) throw ResourceError("integer overflow in sum aggregate");
}

Truth eval(const Compiled& f, const State& state) {
    using K = GroundFormula::Kind;
    switch (f.kind) {
        case K::Atom: return state[f.atom];
        case K::Top: return Truth::True;
        case K::Bottom: return Truth::False;
        case K::And: {
            Truth acc = Truth::True;
            for (const auto& c : f.children) {
                acc = truth_and(acc, eval(c, state));
                if (acc == Truth::False) break;
            }
            return acc;
        }
        case K::Or: {
            Truth acc = Truth::False;
            for (const auto& c : f.children) {
                acc = truth_or(acc, eval(c, state));
                if (acc == Truth::True) break;
            }
            return acc;
        }
        case K::Implies: {
            const Truth a = eval(f.children[0], state);
            if (a == Truth::False) return Truth::True;
            return truth_or(truth_not(a), eval(f.children[1], state));
        }
        case K::Aggregate: {
            const CompiledAggregate& a = *f.aggregate;
            // bit 0: in the union for every J; bit 1: for some J.
            std::vector<std::uint8_t> marks(a.weights.size(), 0);
            for (std::size_t i = 0; i < a.conditions.size(); ++i) {
                const Truth t = eval(a.conditions[i], state);
                if (t == Truth::False) continue;
                const std::uint8_t bits = t == Truth::True ? 3 : 2;
                for (std::size_t id : a.tuples[i]) marks[id] |= bits;
            }
            std::int64_t lo = 0;
            std::int64_t hi = 0;
            for (std::size_t id = 0; id < marks.size(); ++id) {
                const std::int64_t w = a.weights[id];
                if ((marks[id] & 1U) != 0) {
                    add_checked(lo, w);
                    add_checked(hi, w);
                } else if (marks[id] != 0) {
                    add_checked(w < 0 ? lo : hi, w);
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
    }
    return Truth::Unknown;
}

// Backtracking over the atoms in order; a branch is cut as soon as some
// formula is false for every way of deciding the remaining atoms.
class GroundSearch {
public:
    // Called with each total assignment satisfying the formulas; returning false stops the search.
    using Leaf = std::function<bool(const Interpretation&)>;

    GroundSearch(std::vector<GroundAtom> order, const std::vector<GroundFormula>& formulas)
        : order_(std::move(order)), watch_(order_.size()) {
        const Compiler compiler(order_);
        for (const auto& f : formulas) {
            std::vector<std::size_t> atoms;
            compiled_.push_back(compiler.compile(f, atoms));
            std::sort(atoms.begin(), atoms.end());
            atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
            for (std::size_t a : atoms) watch_[a].push_back(compiled_.size() - 1);
        }
    }

    void run(bool false_first, const Leaf& leaf) {
        state_.assign(order_.size(), Truth::Unknown);
        for (const auto& c : compiled_) {
            if (eval(c, state_) == Truth::False) return;
        }
        false_first_ = false_first;
        stopped_ = false;
        rec(0, leaf);
    }

private:
    void rec(std::size_t k, const Leaf& leaf) {
        if (k == order_.size()) {
            Interpretation interp;
            for (std::size_t i = 0; i < order_.size(); ++i) {
                if (state_[i] == Truth::True) interp.insert(interp.end(), order_[i]);
            }
            if (!leaf(interp)) stopped_ = true;
            return;
        }
        for (bool value : {!false_first_, false_first_}) {
            state_[k] = value ? Truth::True : Truth::False;
            const bool ok = std::all_of(watch_[k].begin(), watch_[k].end(),
                                        [&](std::size_t i) { return eval(compiled_[i], state_) != Truth::False; });
            if (ok) rec(k + 1, leaf);
            if (stopped_) break;
        }
        state_[k] = Truth::Unknown;
    }

    std::vector<GroundAtom> order_;
    std::vector<Compiled> compiled_;
    std::vector<std::vector<std::size_t>> watch_;
    State state_;
    bool false_first_ = false;
    bool stopped_ = false;
};

// Some J strictly inside I satisfies the reduced formulas.
bool smaller_model(const std::vector<GroundFormula>& reduced, const Interpretation& interp) {
    bool found = false;
    GroundSearch search(std::vector<GroundAtom>(interp.begin(), interp.end()), reduced);
    search.run(true, [&](const Interpretation& j) {
        if (j.size() == interp.size()) return true;
        found = true;
        return false;
    });
    return found;
}

// Instances of the leading universal quantifiers over the domain, without
// those already true for every interpretation inside `universe`. Each is a
// consequence of `f`, so a false instance refutes it.
void split(const Formula& f, const Interpretation& universe, const EvalDomain& domain, std::vector<Formula>& out) {
    constexpr std::size_t kMaxPieces = 200'000;
    static const Interpretation none;
    if (f.kind == Formula::Kind::And) {
        for (const auto& c : f.children) split(c, universe, domain, out);
        return;
    }
    if (evaluate(f, none, universe, domain).truth == Truth::True) return;
    if (f.kind != Formula::Kind::Forall || f.vars.empty() || out.size() >= kMaxPieces) {
        out.push_back(f);
        return;
    }
    const Variable& v = f.vars.front();
    const std::vector<Variable> rest(f.vars.begin() + 1, f.vars.end());
    const Formula body = rest.empty() ? f.child() : Formula::forall(rest, f.child());
    ValueSet values;
    if (v.is_integer()) {
        for (std::int64_t n = domain.int_lo; n <= domain.int_hi; ++n) values.push_back(Value::numeral(n));
    } else {
        values = domain.general;
    }
    for (const auto& val : values) split(substitute(body, v.name, val), universe, domain, out);
}

// Backtracking over the candidate atoms; a piece is re-evaluated only when an
// atom it consulted on the current branch is decided. A piece left with few
// undecided atoms forces any atom whose other value would falsify it.
class PieceSearch {
public:
    using Leaf = std::function<void(const Interpretation&)>;

    PieceSearch(std::vector<GroundAtom> order, std::vector<Formula> pieces, const EvalDomain& domain)
        : order_(std::move(order)), pieces_(std::move(pieces)), domain_(domain), watch_(order_.size()),
          watched_(pieces_.size()), value_(order_.size(), kUndecided) {}

    void run(const Leaf& leaf) {
        possible_.insert(order_.begin(), order_.end());
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            if (!settle(i)) return;
        }
        if (propagate()) rec(0, leaf);
    }

private:
    static constexpr int kUndecided = -1;
    static constexpr std::size_t kProbeLimit = 3;

    Truth evaluate_piece(std::size_t i) {
        Interpretation consulted;
        const Truth t = evaluate(pieces_[i], certain_, possible_, domain_, &consulted).truth;
        for (const auto& a : consulted) {
            auto it = std::lower_bound(order_.begin(), order_.end(), a);
            if (it == order_.end() || !(*it == a)) continue;
            const auto k = static_cast<std::size_t>(it - order_.begin());
            if (watched_[i].insert(k).second) watch_[k].push_back(i);
        }
        return t;
    }

    void set(std::size_t k, int v) {
        value_[k] = v;
        if (v == 1) {
            certain_.insert(order_[k]);
        } else if (v == 0) {
            possible_.erase(order_[k]);
        }
    }

    void unset(std::size_t k) {
        if (value_[k] == 1) {
            certain_.erase(order_[k]);
        } else if (value_[k] == 0) {
            possible_.insert(order_[k]);
        }
        value_[k] = kUndecided;
    }

    void assign(std::size_t k, int v) {
        set(k, v);
        trail_.push_back(k);
        queue_.push_back(k);
    }

    // False when piece i is refuted; may force undecided atoms.
    bool settle(std::size_t i) {
        const Truth now = evaluate_piece(i);
        if (now != Truth::Unknown) return now != Truth::False;
        std::vector<std::size_t> open;
        for (std::size_t k : watched_[i]) {
            if (value_[k] != kUndecided) continue;
            open.push_back(k);
            if (open.size() > kProbeLimit) return true;
        }
        for (std::size_t k : open) {
            if (value_[k] != kUndecided) continue;
            for (int v : {1, 0}) {
                set(k, v);
                const Truth t = evaluate_piece(i);
                unset(k);
                if (t == Truth::False) {
                    assign(k, 1 - v);
                    if (evaluate_piece(i) == Truth::False) return false;
                    break;
                }
            }
        }
        return true;
    }

    bool propagate() {
        while (!queue_.empty()) {
            const std::size_t k = queue_.back();
            queue_.pop_back();
            for (std::size_t n = 0; n < watch_[k].size(); ++n) {
                if (!settle(watch_[k][n])) {
                    queue_.clear();
                    return false;
                }
            }
        }
        return true;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            unset(trail_.back());
            trail_.pop_back();
        }
    }

    void rec(std::size_t k, const Leaf& leaf) {
        while (k < order_.size() && value_[k] != kUndecided) ++k;
        if (k == order_.size()) {
            leaf(certain_);
            return;
        }
        for (int v : {1, 0}) {
            const std::size_t mark = trail_.size();
            assign(k, v);
            if (propagate()) rec(k + 1, leaf);
            undo(mark);
        }
    }

    std::vector<GroundAtom> order_;
    std::vector<Formula> pieces_;
    const EvalDomain& domain_;
    std::vector<std::vector<std::size_t>> watch_;
    std::vector<std::set<std::size_t>> watched_;
    std::vector<int> value_;
    std::vector<std::size_t> trail_;
    std::vector<std::size_t> queue_;
    Interpretation certain_;
    Interpretation possible_;
};

std::optional<Formula> definition_body(const CompletedDefinition& d, const GroundAtom& atom) {
    const Formula* f = &d.formula;
    if (f->kind == Formula::Kind::Forall) f = &f->child();
    if (f->kind != Formula::Kind::Iff) return std::nullopt;
    Formula body = f->child(1);
    // The head variables are distinct: the raw completion uses a fresh tuple.
    for (std::size_t i = 0; i < d.head_vars.size(); ++i) body = substitute(body, d.head_vars[i].name, atom.args[i]);
    return body;
}

std::string render(const Interpretation& interp) { return to_string(interp); }

}  // namespace

InstantiationConfig default_config(const Program& program) {
    InstantiationConfig cfg;
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = std::numeric_limits<std::int64_t>::min();
    ValueSet& values = cfg.domain.general;
    for (const auto& r : program.rules) {
        if (r.kind != Rule::Kind::Constraint) collect_atom(r.head, values, lo, hi);
        for (const auto& e : r.body) {
            if (const auto* lit = std::get_if<Literal>(&e)) {
                collect_atom(lit->atom, values, lo, hi);
            } else if (const auto* cmp = std::get_if<Comparison>(&e)) {
                collect_condition(*cmp, values, lo, hi);
            } else {
                const auto& agg = std::get<Aggregate>(e);
                for (const auto& t : agg.tuple) collect_term(t, values, lo, hi);
                for (const auto& c : agg.condition) collect_condition(c, values, lo, hi);
                collect_term(agg.bound, values, lo, hi);
            }
        }
    }
    if (lo > hi) {
        lo = 0;
        hi = 0;
    }
    cfg.domain.int_lo = lo == std::numeric_limits<std::int64_t>::min() ? lo : lo - 1;
    cfg.domain.int_hi = hi == std::numeric_limits<std::int64_t>::max() ? hi : hi + 1;
    cfg.domain.complete();
    return cfg;
}

Interpretation possible_atoms(const Program& program, const InstantiationConfig& cfg, bool* unrestricted) {
    Interpretation universe;
    bool loose = false;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& rule : program.rules) {
            if (rule.kind == Rule::Kind::Constraint) continue;
            const InstanceSet set = instance_bindings(rule, universe, cfg);
            loose = loose || set.unrestricted;
            for (const auto& b : set.bindings) {
                const Rule closed = substitute(rule, b);
                if (!possibly_true(closed.body, universe)) continue;
                for (auto& args : eval_term_tuple(closed.head.args)) {
                    changed = universe.insert(GroundAtom{closed.head.predicate, std::move(args)}).second || changed;
                }
            }
            check_cap(universe.size(), cfg.max_vocabulary_atoms, "possible atoms");
        }
    }
    if (unrestricted != nullptr) *unrestricted = loose;
    return universe;
}

GroundProgram ground_program(const Program& program, const InstantiationConfig& cfg) {
    GroundProgram out;
    bool loose = false;
    out.universe = possible_atoms(program, cfg, &loose);
    GroundingSetting setting{&out.universe, &cfg, false};
    for (std::size_t i = 0; i < program.rules.size(); ++i) {
        const Rule& rule = program.rules[i];
        const InstanceSet set = instance_bindings(rule, out.universe, cfg);
        if (set.unrestricted) {
            out.warnings.push_back("rule " + std::to_string(i + 1) +
                                   ": a global variable is not restricted by a positive literal or an equality; "
                                   "instantiated over the whole domain");
        }
        loose = loose || set.unrestricted;
        out.instance_count += set.bindings.size();
        check_cap(out.instance_count, cfg.max_instances, "instances");
        for (const auto& b : set.bindings) {
            const bool before = setting.unrestricted;
            GroundFormula f = restrict_to(tau_rule(substitute(rule, b), setting), out.universe);
            if (setting.unrestricted && !before) {
                out.warnings.push_back("rule " + std::to_string(i + 1) +
                                       ": an aggregate variable is not restricted by a positive literal; "
                                       "candidate tuples range over the whole domain");
            }
            if (f.kind != GroundFormula::Kind::Top) out.formulas.push_back(std::move(f));
        }
    }
    out.approximated = loose || setting.unrestricted;
    if (loose && out.warnings.empty()) {
        out.warnings.push_back("the possible atoms were computed with a variable ranging over the whole domain");
    }
    return out;
}

std::string to_string(const GroundProgram& ground, const RenderOptions& options) {
    std::ostringstream out;
    for (const auto& f : ground.formulas) out << to_string(f, options) << "\n";
    return out.str();
}

bool is_model(const GroundProgram& ground, const Interpretation& interp) {
    return std::all_of(ground.formulas.begin(), ground.formulas.end(),
                       [&](const GroundFormula& f) { return satisfies(f, interp); });
}

bool is_stable(const GroundProgram& ground, const Interpretation& interp) {
    if (!std::includes(ground.universe.begin(), ground.universe.end(), interp.begin(), interp.end())) return false;
    if (!is_model(ground, interp)) return false;
    std::vector<GroundFormula> reduced;
    for (const auto& f : ground.formulas) {
        GroundFormula r = simplify(reduct(f, interp));
        if (r.kind == GroundFormula::Kind::Top) continue;
        reduced.push_back(std::move(r));
    }
    return !smaller_model(reduced, interp);
}

ModelSet stable_models(const GroundProgram& ground) {
    ModelSet out;
    out.approximated = ground.approximated;
    out.warnings = ground.warnings;
    GroundSearch search(std::vector<GroundAtom>(ground.universe.begin(), ground.universe.end()), ground.formulas);
    search.run(false, [&](const Interpretation& interp) {
        std::vector<GroundFormula> reduced;
        for (const auto& f : ground.formulas) {
            GroundFormula r = simplify(reduct(f, interp));
            if (r.kind != GroundFormula::Kind::Top) reduced.push_back(std::move(r));
        }
        if (!smaller_model(reduced, interp)) out.models.push_back(interp);
        return true;
    });
    std::sort(out.models.begin(), out.models.end());
    return out;
}

ModelSet stable_models(const Program& program, const InstantiationConfig& cfg) {
    return stable_models(ground_program(program, cfg));
}

CompletionSearch completion_models(const Program& program, const InstantiationConfig& cfg,
                                   const Interpretation& extra) {
    CompletionSearch out;
    const CompletionResult comp = completion(program);
    out.domain = cfg.domain;
    for (const auto& a : extra) {
        for (const auto& v : a.args) add_value_parts(v, out.domain.general);
    }
    normalize(out.domain.general);
    const ValueSet& dom = out.domain.general;

    // Greatest fixpoint: drop atoms whose definition is false whenever the true
    // atoms lie among the remaining ones.
    constexpr std::size_t kMaxVocabulary = 200'000;
    for (const auto& d : comp.definitions) {
        double count = 1;
        for (std::size_t i = 0; i < d.predicate.arity; ++i) count *= static_cast<double>(dom.size());
        if (count > static_cast<double>(kMaxVocabulary)) {
            throw ResourceError("vocabulary of " + to_string(d.predicate) + " over the domain is too large");
        }
        std::vector<std::size_t> index(d.predicate.arity, 0);
        if (d.predicate.arity > 0 && dom.empty()) continue;
        while (true) {
            GroundAtom a{d.predicate.name, {}};
            for (std::size_t i : index) a.args.push_back(dom[i]);
            out.universe.insert(std::move(a));
            std::size_t k = 0;
            while (k < d.predicate.arity && ++index[k] == dom.size()) index[k++] = 0;
            if (k == d.predicate.arity) break;
        }
    }
    std::map<std::string, std::vector<const CompletedDefinition*>> by_name;
    for (const auto& d : comp.definitions) by_name[d.predicate.name].push_back(&d);
    auto definition = [&](const GroundAtom& a) -> const CompletedDefinition* {
        for (const auto* d : by_name[a.predicate]) {
            if (d->predicate.arity == a.args.size()) return d;
        }
        return nullptr;
    };
    const Interpretation none;
    for (bool changed = true; changed;) {
        changed = false;
        for (auto it = out.universe.begin(); it != out.universe.end();) {
            const CompletedDefinition* d = definition(*it);
            bool keep = false;
            if (d != nullptr) {
                if (auto body = definition_body(*d, *it)) {
                    const EvalResult r = evaluate(*body, none, out.universe, out.domain);
                    out.result.approximated = out.result.approximated || r.approximated;
                    keep = r.truth != Truth::False;
                } else {
                    keep = true;
                }
            }
            if (keep) {
                ++it;
            } else {
                it = out.universe.erase(it);
                changed = true;
            }
        }
    }
    check_cap(out.universe.size(), cfg.max_vocabulary_atoms, "candidate atoms for completion models");

    // Pruning uses the simplified completion; leaves are checked against the original.
    const std::vector<Formula> formulas = comp.formulas();
    std::vector<Formula> pieces;
    for (const auto& f : simplify(comp).formulas()) split(f, out.universe, out.domain, pieces);
    PieceSearch search(std::vector<GroundAtom>(out.universe.begin(), out.universe.end()), std::move(pieces),
                       out.domain);
    search.run([&](const Interpretation& interp) {
        bool ok = true;
        for (const auto& f : formulas) {
            const SatResult r = satisfies(f, interp, out.domain);
            out.result.approximated = out.result.approximated || r.approximated;
            ok = ok && r.value;
        }
        if (ok) out.result.models.push_back(interp);
    });
    std::sort(out.result.models.begin(), out.result.models.end());
    if (out.result.approximated) {
        out.result.warnings.push_back("some completion quantifier was evaluated over the finite domain only");
    }
    return out;
}

TheoremReport verify_theorems(const Program& program, const InstantiationConfig& cfg) {
    TheoremReport report;
    report.tightness = is_tight(program);
    const GroundProgram ground = ground_program(program, cfg);
    const ModelSet stable = stable_models(ground);
    report.stable = stable.models;
    report.warnings = stable.warnings;
    report.approximated = stable.approximated;

    const CompletionSearch comp = completion_models(program, cfg, ground.universe);
    report.completion = comp.result.models;
    report.approximated = report.approximated || comp.result.approximated;
    report.warnings.insert(report.warnings.end(), comp.result.warnings.begin(), comp.result.warnings.end());

    const std::vector<Formula> formulas = completion(program).formulas();
    for (const auto& m : report.stable) {
        bool ok = true;
        for (const auto& f : formulas) {
            const SatResult r = satisfies(f, m, comp.domain);
            report.approximated = report.approximated || r.approximated;
            ok = ok && r.value;
        }
        if (!ok) report.theorem1_violations.push_back(m);
    }
    report.theorem1 = report.theorem1_violations.empty();
    std::set_difference(report.completion.begin(), report.completion.end(), report.stable.begin(),
                        report.stable.end(), std::back_inserter(report.not_stable));
    std::set_difference(report.stable.begin(), report.stable.end(), report.completion.begin(),
                        report.completion.end(), std::back_inserter(report.not_completion));
    report.theorem2 = report.not_stable.empty() && report.not_completion.empty();
    return report;
}

std::string to_string(const TheoremReport& report) {
    std::ostringstream out;
    out << "stable models: " << report.stable.size() << "\n";
    for (const auto& m : report.stable) out << "  " << render(m) << "\n";
    out << "completion models: " << report.completion.size() << "\n";
    for (const auto& m : report.completion) out << "  " << render(m) << "\n";
    out << "tight: " << (report.tightness.tight ? "yes" : "no");
    if (!report.tightness.tight) {
        out << " (cycle";
        for (const auto& p : report.tightness.cycle) out << " " << to_string(p);
        out << ")";
    }
    out << "\n";
    out << "theorem 1 (stable models satisfy the completion): " << (report.theorem1 ? "pass" : "FAIL") << "\n";
    for (const auto& m : report.theorem1_violations) out << "  violation: " << render(m) << "\n";
    if (report.tightness.tight) {
        out << "theorem 2 (stable models = completion models): " << (report.theorem2 ? "pass" : "FAIL") << "\n";
    } else if (report.theorem2) {
        out << "theorem 2: not applicable (not tight); the model sets coincide\n";
    } else {
        out << "theorem 2: not applicable (not tight); stable models are a strict subset of the completion models\n";
    }
    for (const auto& m : report.not_stable) out << "  completion model, not stable: " << render(m) << "\n";
    for (const auto& m : report.not_completion) out << "  stable model, not a completion model: " << render(m) << "\n";
    for (const auto& w : report.warnings) out << "warning: " << w << "\n";
    return out.str();
}

}  // namespace eg
