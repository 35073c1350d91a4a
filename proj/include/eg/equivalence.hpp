#pragma once

#include "eg/formula.hpp"

namespace eg {

struct MatchOptions {
    // Conjunctions and disjunctions match as multisets.
    bool unordered_connectives = true;
    // A quantifier block matches any permutation of itself.
    bool unordered_blocks = true;
    // a = b matches b = a; a < b matches b > a.
    bool symmetric_relations = true;
};

// Flattens nested conjunctions and disjunctions and merges directly nested
// quantifiers of the same kind.
Formula normalize_shape(const Formula& f);

// Equality up to renaming of bound variables (sorts must agree), after
// normalize_shape and under the given freedoms. Free variables must coincide.
bool alpha_equivalent(const Formula& a, const Formula& b, const MatchOptions& options = {});
bool alpha_equivalent(const Argument& a, const Argument& b, const MatchOptions& options = {});

}  // namespace eg
