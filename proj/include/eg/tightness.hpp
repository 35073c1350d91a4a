#pragma once

#include <string>
#include <vector>

#include "eg/syntax.hpp"

namespace eg {

struct DependencyEdge {
    PredicateSymbol from;  // head predicate
    PredicateSymbol to;    // body predicate
    std::size_t rule = 0;  // index of the first rule inducing the edge

    bool operator==(const DependencyEdge&) const = default;
};

struct DependencyGraph {
    std::vector<PredicateSymbol> vertices;  // sorted
    std::vector<DependencyEdge> edges;      // sorted by (from, to), no duplicates

    bool has_edge(const PredicateSymbol& from, const PredicateSymbol& to) const;
};

enum class EdgeRule {
    // Body predicates of positive literals only.
    Positive,
    // Also every predicate inside an aggregate expression.
    PositiveOrAggregate,
};

DependencyGraph dependency_graph(const Program& program, EdgeRule rule = EdgeRule::PositiveOrAggregate);

struct TightnessVerdict {
    bool tight = true;
    // Lexicographically least cycle, starting at its least vertex; empty when tight.
    std::vector<PredicateSymbol> cycle;
};

TightnessVerdict check_acyclic(const DependencyGraph& graph);
TightnessVerdict is_tight(const Program& program);

std::string to_dot(const DependencyGraph& graph);

}  // namespace eg
