#include "eg/equivalence.hpp"

#include <algorithm>
#include <numeric>

namespace eg {
namespace {

Argument normalize_argument(const Argument& a);

Formula normalize(const Formula& f) {
    Formula out = f;
    for (auto& arg : out.args) arg = normalize_argument(arg);
    out.children.clear();
    for (const auto& c : f.children) {
        Formula n = normalize(c);
        const bool flatten = (f.kind == Formula::Kind::And || f.kind == Formula::Kind::Or) && n.kind == f.kind;
        if (flatten) {
            for (auto& g : n.children) out.children.push_back(std::move(g));
        } else {
            out.children.push_back(std::move(n));
        }
    }
    if (out.is_quantifier() && out.child().kind == out.kind) {
        const Formula& inner = out.child();
        const bool overlap = std::any_of(inner.vars.begin(), inner.vars.end(), [&](const Variable& v) {
            return std::any_of(out.vars.begin(), out.vars.end(), [&](const Variable& w) { return w.name == v.name; });
        });
        if (!overlap) {
            Formula merged = inner;
            merged.vars.insert(merged.vars.begin(), out.vars.begin(), out.vars.end());
            return merged;
        }
    }
    return out;
}

Argument normalize_argument(const Argument& a) {
    Argument out = a;
    for (auto& arg : out.args) arg = normalize_argument(arg);
    for (auto& b : out.body) b = normalize(b);
    return out;
}

class Matcher {
public:
    explicit Matcher(const MatchOptions& options) : options_(options) {}

    bool formula(const Formula& a, const Formula& b) {
        if (a.kind != b.kind) return false;
        switch (a.kind) {
        case Formula::Kind::Bottom:
        case Formula::Kind::Top:
            return true;
        case Formula::Kind::Atom:
            return a.predicate == b.predicate && arguments(a.args, b.args);
        case Formula::Kind::Compare:
            if (a.rel == b.rel && argument(a.lhs(), b.lhs()) && argument(a.rhs(), b.rhs())) return true;
            return options_.symmetric_relations && a.rel == converse(b.rel) && argument(a.lhs(), b.rhs()) &&
                   argument(a.rhs(), b.lhs());
        case Formula::Kind::Member:
            return argument(a.lhs(), b.lhs()) && term(a.term, b.term);
        case Formula::Kind::Not:
        case Formula::Kind::Implies:
        case Formula::Kind::Iff:
            return ordered(a.children, b.children);
        case Formula::Kind::And:
        case Formula::Kind::Or:
            return options_.unordered_connectives ? unordered(a.children, b.children)
                                                  : ordered(a.children, b.children);
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            return block(a.vars, b.vars, options_.unordered_blocks,
                         [&] { return formula(a.child(), b.child()); });
        }
        return false;
    }

    bool argument(const Argument& a, const Argument& b) {
        if (a.kind != b.kind) return false;
        switch (a.kind) {
        case Argument::Kind::Numeral:
            return a.number == b.number;
        case Argument::Kind::Symbol:
            return a.name == b.name;
        case Argument::Kind::Inf:
        case Argument::Kind::Sup:
            return true;
        case Argument::Kind::Variable:
            return a.sort == b.sort && same_variable(a.name, b.name);
        case Argument::Kind::Function:
            return a.name == b.name && arguments(a.args, b.args);
        case Argument::Kind::Operation:
            return a.op == b.op && arguments(a.args, b.args);
        case Argument::Kind::Aggregate:
            return a.function == b.function &&
                   block(a.bound, b.bound, false, [&] { return formula(a.condition(), b.condition()); });
        }
        return false;
    }

private:
    bool arguments(const std::vector<Argument>& a, const std::vector<Argument>& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!argument(a[i], b[i])) return false;
        }
        return true;
    }

    bool term(const Term& a, const Term& b) {
        if (a.kind != b.kind || a.number != b.number || a.op != b.op || a.args.size() != b.args.size()) return false;
        if (a.kind == Term::Kind::Variable) return same_variable(a.name, b.name);
        if (a.name != b.name) return false;
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (!term(a.args[i], b.args[i])) return false;
        }
        return true;
    }

    bool ordered(const std::vector<Formula>& a, const std::vector<Formula>& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!formula(a[i], b[i])) return false;
        }
        return true;
    }

    bool unordered(const std::vector<Formula>& a, const std::vector<Formula>& b) {
        if (a.size() != b.size()) return false;
        const std::size_t n = a.size();
        // Children bind nothing outside themselves, so compatibility is fixed
        // for the current scope and can be tabulated.
        std::vector<std::vector<bool>> fits(n, std::vector<bool>(n));
        for (std::size_t i = 0; i < n; ++i) {
            bool any = false;
            for (std::size_t j = 0; j < n; ++j) {
                fits[i][j] = formula(a[i], b[j]);
                any = any || fits[i][j];
            }
            if (!any) return false;
        }
        std::vector<bool> used(n, false);
        auto assign = [&](auto&& self, std::size_t i) -> bool {
            if (i == n) return true;
            for (std::size_t j = 0; j < n; ++j) {
                if (used[j] || !fits[i][j]) continue;
                used[j] = true;
                if (self(self, i + 1)) return true;
                used[j] = false;
            }
            return false;
        };
        return assign(assign, 0);
    }

    template <typename Body>
    bool block(const std::vector<Variable>& a, const std::vector<Variable>& b, bool permute, Body&& body) {
        if (a.size() != b.size()) return false;
        std::vector<std::size_t> order(b.size());
        std::iota(order.begin(), order.end(), 0);
        const bool all_orders = permute && a.size() <= 7;
        do {
            bool sorts = true;
            for (std::size_t i = 0; i < a.size(); ++i) sorts = sorts && a[i].sort == b[order[i]].sort;
            if (sorts) {
                const std::size_t mark = left_.size();
                for (std::size_t i = 0; i < a.size(); ++i) {
                    left_.push_back(a[i].name);
                    right_.push_back(b[order[i]].name);
                }
                const bool ok = body();
                left_.resize(mark);
                right_.resize(mark);
                if (ok) return true;
            }
        } while (all_orders && std::next_permutation(order.begin(), order.end()));
        return false;
    }

    static std::ptrdiff_t innermost(const std::vector<std::string>& scope, const std::string& name) {
        for (std::size_t i = scope.size(); i-- > 0;) {
            if (scope[i] == name) return static_cast<std::ptrdiff_t>(i);
        }
        return -1;
    }

    bool same_variable(const std::string& a, const std::string& b) const {
        const auto i = innermost(left_, a);
        const auto j = innermost(right_, b);
        return i == j && (i >= 0 || a == b);
    }

    const MatchOptions& options_;
    std::vector<std::string> left_;
    std::vector<std::string> right_;
};

}  // namespace

Formula normalize_shape(const Formula& f) { return normalize(f); }

bool alpha_equivalent(const Formula& a, const Formula& b, const MatchOptions& options) {
    Matcher m(options);
    return m.formula(normalize(a), normalize(b));
}

bool alpha_equivalent(const Argument& a, const Argument& b, const MatchOptions& options) {
    Matcher m(options);
    return m.argument(normalize_argument(a), normalize_argument(b));
}

}  // namespace eg
