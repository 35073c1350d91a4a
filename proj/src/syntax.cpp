#include "eg/syntax.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace eg {

std::size_t arity(Operator op) {
    switch (op) {
        case Operator::Negate:
        case Operator::Absolute: return 1;
        default: return 2;
    }
}

bool is_total(Operator op) {
    switch (op) {
        case Operator::Plus:
        case Operator::Minus:
        case Operator::Times:
        case Operator::Negate:
        case Operator::Absolute: return true;
        default: return false;
    }
}

std::string_view symbol(Operator op) {
    switch (op) {
        case Operator::Plus: return "+";
        case Operator::Minus: return "-";
        case Operator::Times: return "*";
        case Operator::Divide: return "/";
        case Operator::Modulo: return "\\";
        case Operator::Power: return "**";
        case Operator::Negate: return "-";
        case Operator::Absolute: return "|";
    }
    return "?";
}

std::string_view symbol(Relation rel) {
    switch (rel) {
        case Relation::Eq: return "=";
        case Relation::Ne: return "!=";
        case Relation::Lt: return "<";
        case Relation::Gt: return ">";
        case Relation::Le: return "<=";
        case Relation::Ge: return ">=";
    }
    return "?";
}

std::string_view utf8_symbol(Relation rel) {
    switch (rel) {
        case Relation::Eq: return "=";
        case Relation::Ne: return "≠";
        case Relation::Lt: return "<";
        case Relation::Gt: return ">";
        case Relation::Le: return "≤";
        case Relation::Ge: return "≥";
    }
    return "?";
}

Relation complement(Relation rel) {
    switch (rel) {
        case Relation::Eq: return Relation::Ne;
        case Relation::Ne: return Relation::Eq;
        case Relation::Lt: return Relation::Ge;
        case Relation::Gt: return Relation::Le;
        case Relation::Le: return Relation::Gt;
        case Relation::Ge: return Relation::Lt;
    }
    return rel;
}

Relation converse(Relation rel) {
    switch (rel) {
        case Relation::Lt: return Relation::Gt;
        case Relation::Gt: return Relation::Lt;
        case Relation::Le: return Relation::Ge;
        case Relation::Ge: return Relation::Le;
        default: return rel;
    }
}

bool holds(Relation rel, std::strong_ordering cmp) {
    switch (rel) {
        case Relation::Eq: return cmp == 0;
        case Relation::Ne: return cmp != 0;
        case Relation::Lt: return cmp < 0;
        case Relation::Gt: return cmp > 0;
        case Relation::Le: return cmp <= 0;
        case Relation::Ge: return cmp >= 0;
    }
    return false;
}

std::string_view name(AggregateFunction fn) {
    return fn == AggregateFunction::Count ? "count" : "sum";
}

Term Term::numeral(std::int64_t n) {
    Term t;
    t.kind = Kind::Numeral;
    t.number = n;
    return t;
}

Term Term::symbol(std::string name) {
    Term t;
    t.kind = Kind::Symbol;
    t.name = std::move(name);
    return t;
}

Term Term::variable(std::string name) {
    Term t;
    t.kind = Kind::Variable;
    t.name = std::move(name);
    return t;
}

Term Term::inf() {
    Term t;
    t.kind = Kind::Inf;
    return t;
}

Term Term::sup() {
    Term t;
    t.kind = Kind::Sup;
    return t;
}

Term Term::function(std::string name, std::vector<Term> args) {
    if (args.empty()) {
        throw std::invalid_argument("function term " + name + " needs at least one argument");
    }
    Term t;
    t.kind = Kind::Function;
    t.name = std::move(name);
    t.args = std::move(args);
    return t;
}

Term Term::operation(Operator op, std::vector<Term> args) {
    if (args.size() != arity(op)) {
        throw std::invalid_argument("operation " + std::string(eg::symbol(op)) + " expects " +
                                    std::to_string(arity(op)) + " argument(s), got " + std::to_string(args.size()));
    }
    Term t;
    t.kind = Kind::Operation;
    t.op = op;
    t.args = std::move(args);
    return t;
}

Term Term::interval(Term lo, Term hi) {
    Term t;
    t.kind = Kind::Interval;
    t.args.push_back(std::move(lo));
    t.args.push_back(std::move(hi));
    return t;
}

bool Term::is_ground() const {
    if (kind == Kind::Variable) return false;
    return std::all_of(args.begin(), args.end(), [](const Term& a) { return a.is_ground(); });
}

bool Term::contains_operation_or_interval() const {
    if (kind == Kind::Operation || kind == Kind::Interval) return true;
    return std::any_of(args.begin(), args.end(), [](const Term& a) { return a.contains_operation_or_interval(); });
}

bool Term::is_precomputed() const { return is_ground() && !contains_operation_or_interval(); }

std::string to_string(const PredicateSymbol& pred) { return pred.name + "/" + std::to_string(pred.arity); }

namespace {

std::string format_parse_error(std::size_t line, std::size_t column, const std::string& message,
                               const std::vector<std::string>& expected) {
    std::ostringstream out;
    out << line << ":" << column << ": " << message;
    if (!expected.empty()) {
        out << " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i > 0) out << (i + 1 == expected.size() ? " or " : ", ");
            out << expected[i];
        }
        out << ")";
    }
    return out.str();
}

// Binding strength used when printing terms; higher binds tighter.
constexpr int kIntervalPrec = 1;
constexpr int kAdditivePrec = 2;
constexpr int kMultiplicativePrec = 3;
constexpr int kPowerPrec = 4;
constexpr int kUnaryPrec = 5;
constexpr int kPrimaryPrec = 6;

int precedence(const Term& t) {
    switch (t.kind) {
        case Term::Kind::Interval: return kIntervalPrec;
        case Term::Kind::Numeral: return t.number < 0 ? kUnaryPrec : kPrimaryPrec;
        case Term::Kind::Operation:
            switch (t.op) {
                case Operator::Plus:
                case Operator::Minus: return kAdditivePrec;
                case Operator::Times:
                case Operator::Divide:
                case Operator::Modulo: return kMultiplicativePrec;
                case Operator::Power: return kPowerPrec;
                case Operator::Negate: return kUnaryPrec;
                case Operator::Absolute: return kPrimaryPrec;
            }
            return kPrimaryPrec;
        default: return kPrimaryPrec;
    }
}

void print_term(std::ostream& out, const Term& t, int min_prec);

void print_args(std::ostream& out, const std::vector<Term>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i > 0) out << ",";
        print_term(out, args[i], kIntervalPrec);
    }
}

void print_term(std::ostream& out, const Term& t, int min_prec) {
    const int prec = precedence(t);
    const bool parens = prec < min_prec;
    if (parens) out << "(";
    switch (t.kind) {
        case Term::Kind::Numeral: out << t.number; break;
        case Term::Kind::Symbol:
        case Term::Kind::Variable: out << t.name; break;
        case Term::Kind::Inf: out << "inf"; break;
        case Term::Kind::Sup: out << "sup"; break;
        case Term::Kind::Function:
            out << t.name << "(";
            print_args(out, t.args);
            out << ")";
            break;
        case Term::Kind::Interval:
            print_term(out, t.args[0], kAdditivePrec);
            out << "..";
            print_term(out, t.args[1], kAdditivePrec);
            break;
        case Term::Kind::Operation:
            switch (t.op) {
                case Operator::Negate: {
                    const Term& arg = t.args[0];
                    // "-3" would read back as a negative numeral
                    if (arg.kind == Term::Kind::Numeral && arg.number >= 0) {
                        out << "-(" << arg.number << ")";
                    } else {
                        out << "-";
                        print_term(out, arg, kUnaryPrec);
                    }
                    break;
                }
                case Operator::Absolute:
                    out << "|";
                    print_term(out, t.args[0], kIntervalPrec);
                    out << "|";
                    break;
                case Operator::Power:
                    print_term(out, t.args[0], kPowerPrec + 1);
                    out << "**";
                    print_term(out, t.args[1], kPowerPrec);
                    break;
                default:
                    print_term(out, t.args[0], prec);
                    out << symbol(t.op);
                    print_term(out, t.args[1], prec + 1);
                    break;
            }
            break;
    }
    if (parens) out << ")";
}

void print_atom(std::ostream& out, const Atom& atom) {
    out << atom.predicate;
    if (!atom.args.empty()) {
        out << "(";
        print_args(out, atom.args);
        out << ")";
    }
}

void print_condition(std::ostream& out, const Condition& cond);

void print_literal(std::ostream& out, const Literal& lit) {
    if (lit.negative) out << "not ";
    print_atom(out, lit.atom);
}

void print_comparison(std::ostream& out, const Comparison& cmp) {
    print_term(out, cmp.lhs, kIntervalPrec);
    out << " " << symbol(cmp.rel) << " ";
    print_term(out, cmp.rhs, kIntervalPrec);
}

void print_condition(std::ostream& out, const Condition& cond) {
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Literal>) {
                print_literal(out, c);
            } else {
                print_comparison(out, c);
            }
        },
        cond);
}

void print_aggregate(std::ostream& out, const Aggregate& agg) {
    out << "#" << name(agg.function) << "{";
    print_args(out, agg.tuple);
    if (!agg.condition.empty()) {
        out << " : ";
        for (std::size_t i = 0; i < agg.condition.size(); ++i) {
            if (i > 0) out << ", ";
            print_condition(out, agg.condition[i]);
        }
    }
    out << "} " << symbol(agg.rel) << " ";
    print_term(out, agg.bound, kIntervalPrec);
}

void print_body_element(std::ostream& out, const BodyElement& elem) {
    std::visit(
        [&](const auto& e) {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, Literal>) {
                print_literal(out, e);
            } else if constexpr (std::is_same_v<T, Comparison>) {
                print_comparison(out, e);
            } else {
                print_aggregate(out, e);
            }
        },
        elem);
}

void print_rule(std::ostream& out, const Rule& rule) {
    switch (rule.kind) {
        case Rule::Kind::Basic: print_atom(out, rule.head); break;
        case Rule::Kind::Choice:
            out << "{";
            print_atom(out, rule.head);
            out << "}";
            break;
        case Rule::Kind::Constraint: break;
    }
    if (rule.kind == Rule::Kind::Constraint || !rule.body.empty()) {
        out << (rule.kind == Rule::Kind::Constraint ? ":-" : " :-");
        if (!rule.body.empty()) out << " ";
        for (std::size_t i = 0; i < rule.body.size(); ++i) {
            if (i > 0) out << ", ";
            print_body_element(out, rule.body[i]);
        }
    }
    out << ".";
}

template <typename Fn>
std::string render(Fn&& fn) {
    std::ostringstream out;
    fn(out);
    return out.str();
}

void add_unique(std::vector<std::string>& out, const std::string& name) {
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
}

void collect_condition_variables(const Condition& cond, std::vector<std::string>& out) {
    if (const auto* lit = std::get_if<Literal>(&cond)) {
        for (const auto& a : lit->atom.args) collect_variables(a, out);
    } else {
        const auto& cmp = std::get<Comparison>(cond);
        collect_variables(cmp.lhs, out);
        collect_variables(cmp.rhs, out);
    }
}

void collect_aggregate_lhs_variables(const Aggregate& agg, std::vector<std::string>& out) {
    for (const auto& t : agg.tuple) collect_variables(t, out);
    for (const auto& c : agg.condition) collect_condition_variables(c, out);
}

void add_predicate(std::vector<PredicateSymbol>& out, const Atom& atom) {
    PredicateSymbol pred = predicate_of(atom);
    if (std::find(out.begin(), out.end(), pred) == out.end()) out.push_back(std::move(pred));
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::string message, std::vector<std::string> expected)
    : std::runtime_error(format_parse_error(line, column, message, expected)),
      line_(line),
      column_(column),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

std::string to_string(const Term& term) {
    return render([&](std::ostream& out) { print_term(out, term, kIntervalPrec); });
}
std::string to_string(const Atom& atom) {
    return render([&](std::ostream& out) { print_atom(out, atom); });
}
std::string to_string(const Literal& lit) {
    return render([&](std::ostream& out) { print_literal(out, lit); });
}
std::string to_string(const Comparison& cmp) {
    return render([&](std::ostream& out) { print_comparison(out, cmp); });
}
std::string to_string(const Aggregate& agg) {
    return render([&](std::ostream& out) { print_aggregate(out, agg); });
}
std::string to_string(const BodyElement& elem) {
    return render([&](std::ostream& out) { print_body_element(out, elem); });
}
std::string to_string(const Rule& rule) {
    return render([&](std::ostream& out) { print_rule(out, rule); });
}

std::string print_program(const Program& program) {
    std::ostringstream out;
    for (const auto& rule : program.rules) {
        print_rule(out, rule);
        out << "\n";
    }
    return out.str();
}

std::ostream& operator<<(std::ostream& out, const Term& term) {
    print_term(out, term, kIntervalPrec);
    return out;
}

std::ostream& operator<<(std::ostream& out, const Rule& rule) {
    print_rule(out, rule);
    return out;
}

void collect_variables(const Term& term, std::vector<std::string>& out) {
    if (term.kind == Term::Kind::Variable) {
        add_unique(out, term.name);
        return;
    }
    for (const auto& a : term.args) collect_variables(a, out);
}

std::vector<std::string> variables(const Rule& rule) {
    std::vector<std::string> out;
    if (rule.kind != Rule::Kind::Constraint) {
        for (const auto& a : rule.head.args) collect_variables(a, out);
    }
    for (const auto& elem : rule.body) {
        if (const auto* lit = std::get_if<Literal>(&elem)) {
            for (const auto& a : lit->atom.args) collect_variables(a, out);
        } else if (const auto* cmp = std::get_if<Comparison>(&elem)) {
            collect_variables(cmp->lhs, out);
            collect_variables(cmp->rhs, out);
        } else {
            const auto& agg = std::get<Aggregate>(elem);
            collect_aggregate_lhs_variables(agg, out);
            collect_variables(agg.bound, out);
        }
    }
    return out;
}

VariableClassification classify_variables(const Rule& rule) {
    std::vector<std::string> outside;
    if (rule.kind != Rule::Kind::Constraint) {
        for (const auto& a : rule.head.args) collect_variables(a, outside);
    }
    for (const auto& elem : rule.body) {
        if (const auto* lit = std::get_if<Literal>(&elem)) {
            for (const auto& a : lit->atom.args) collect_variables(a, outside);
        } else if (const auto* cmp = std::get_if<Comparison>(&elem)) {
            collect_variables(cmp->lhs, outside);
            collect_variables(cmp->rhs, outside);
        } else {
            collect_variables(std::get<Aggregate>(elem).bound, outside);
        }
    }
    VariableClassification result;
    for (const auto& v : variables(rule)) {
        if (std::find(outside.begin(), outside.end(), v) != outside.end()) {
            result.globals.push_back(v);
        } else {
            result.locals.push_back(v);
        }
    }
    return result;
}

PredicateSymbol predicate_of(const Atom& atom) { return {atom.predicate, atom.args.size()}; }

std::vector<PredicateSymbol> predicates(const Rule& rule) {
    std::vector<PredicateSymbol> out;
    if (rule.kind != Rule::Kind::Constraint) add_predicate(out, rule.head);
    for (const auto& elem : rule.body) {
        if (const auto* lit = std::get_if<Literal>(&elem)) {
            add_predicate(out, lit->atom);
        } else if (const auto* agg = std::get_if<Aggregate>(&elem)) {
            for (const auto& c : agg->condition) {
                if (const auto* l = std::get_if<Literal>(&c)) add_predicate(out, l->atom);
            }
        }
    }
    return out;
}

std::vector<PredicateSymbol> predicates(const Program& program) {
    std::vector<PredicateSymbol> out;
    for (const auto& rule : program.rules) {
        for (auto& p : predicates(rule)) {
            if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace eg
