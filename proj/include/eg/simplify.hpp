#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "eg/completion.hpp"
#include "eg/formula.hpp"

namespace eg {

struct RewriteStep {
    std::string rule;
    Formula before;
    Formula after;
};

using RewriteTrace = std::vector<RewriteStep>;

struct SimplifyOptions {
    // Ground memberships arg in t with at most this many values of t become
    // disjunctions of equalities.
    std::size_t expansion_threshold = 1;
    std::size_t max_passes = 256;
    bool record_trace = false;
};

struct SimplifyResult {
    Formula formula;
    RewriteTrace trace;
    // The pass limit was reached before a fixpoint.
    bool capped = false;
};

// Rewrites to a fixpoint with these rules, tried in order at each node:
//   member-to-equality  arg in t  =>  arg = t'   (t an argument t')
//   ground-expansion    arg in t  =>  arg = r1 | ... | arg = rk   ([t] small)
//   integer-interval    N in a..b =>  a <= N & N <= b   (integer arguments)
//   binding             exists X (X = a & F)  =>  F[a/X]; dually for forall
//   boolean             unit laws, double negation, flattening, duplicates,
//                       negated comparisons, merging nested quantifiers
//   linear-bound        c <= N - d  =>  c + d <= N  and similar
//   choice-definition   p(V) <-> G & p(V)  =>  p(V) -> G
//   negated-existential not exists X (F & not G)  =>  forall X (F -> G)
//   unused-quantifier   exists X F  =>  F  when X is not free in F
SimplifyResult simplify(const Formula& f, const SimplifyOptions& options = {});

// Simplifies every formula of the completion, keeping its layout.
CompletionResult simplify(const CompletionResult& completion, const SimplifyOptions& options = {},
                          RewriteTrace* trace = nullptr);

std::string to_string(const RewriteTrace& trace, const RenderOptions& options = {});

struct IntegerFact {
    PredicateSymbol predicate;
    // Zero-based argument positions known to hold numerals only.
    std::vector<std::size_t> positions;
    Formula formula;
};

struct IntegerizeResult {
    // Side conditions licensing the rewrites, sorted by predicate.
    std::vector<IntegerFact> facts;
    std::vector<CompletedDefinition> definitions;
    std::vector<Formula> constraints;
    RewriteTrace trace;

    // Side conditions, then definitions, then constraints.
    std::vector<Formula> formulas() const;
};

// int(arg): exists V (V in arg + 1), V a general variable not occurring in arg.
Formula int_formula(const Argument& arg);
// forall X1..Xn (p(X1..Xn) -> int(Xi) & ...) over the given positions; with all
// positions this is int(p/n).
Formula int_formula(const PredicateSymbol& pred, const std::vector<std::size_t>& positions);

// Replaces general variables by integer variables where the formulas force
// numeral values and the variable takes part in arithmetic, then simplifies.
IntegerizeResult integerize(const CompletionResult& completion, const SimplifyOptions& options = {});

}  // namespace eg
