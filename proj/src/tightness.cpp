#include "eg/tightness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace eg {

bool DependencyGraph::has_edge(const PredicateSymbol& from, const PredicateSymbol& to) const {
    return std::any_of(edges.begin(), edges.end(), [&](const DependencyEdge& e) { return e.from == from && e.to == to; });
}

DependencyGraph dependency_graph(const Program& program, EdgeRule edge_rule) {
    DependencyGraph g;
    g.vertices = predicates(program);
    std::map<std::pair<PredicateSymbol, PredicateSymbol>, std::size_t> edges;
    for (std::size_t i = 0; i < program.rules.size(); ++i) {
        const Rule& rule = program.rules[i];
        if (rule.kind == Rule::Kind::Constraint) continue;
        const PredicateSymbol head = predicate_of(rule.head);
        auto add = [&](const Atom& atom) { edges.emplace(std::make_pair(head, predicate_of(atom)), i); };
        for (const auto& e : rule.body) {
            if (const auto* lit = std::get_if<Literal>(&e)) {
                if (!lit->negative) add(lit->atom);
            } else if (const auto* agg = std::get_if<Aggregate>(&e)) {
                if (edge_rule != EdgeRule::PositiveOrAggregate) continue;
                for (const auto& c : agg->condition) {
                    if (const auto* l = std::get_if<Literal>(&c)) add(l->atom);
                }
            }
        }
    }
    for (const auto& [key, rule] : edges) g.edges.push_back({key.first, key.second, rule});
    return g;
}

TightnessVerdict check_acyclic(const DependencyGraph& graph) {
    const std::size_t n = graph.vertices.size();
    auto index = [&](const PredicateSymbol& p) {
        return static_cast<std::size_t>(std::lower_bound(graph.vertices.begin(), graph.vertices.end(), p) -
                                        graph.vertices.begin());
    };
    std::vector<std::vector<std::size_t>> succ(n);
    for (const auto& e : graph.edges) succ[index(e.from)].push_back(index(e.to));
    for (auto& s : succ) std::sort(s.begin(), s.end());

    // Vertices on a cycle are those that can reach themselves.
    auto reaches = [&](std::size_t from, std::size_t target) {
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> stack(succ[from].begin(), succ[from].end());
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            if (v == target) return true;
            if (seen[v]) continue;
            seen[v] = true;
            stack.insert(stack.end(), succ[v].begin(), succ[v].end());
        }
        return false;
    };

    for (std::size_t start = 0; start < n; ++start) {
        if (!reaches(start, start)) continue;
        // Every vertex of a cycle through `start` is >= start, since start is
        // the least vertex lying on any cycle. Depth-first search in sorted
        // order, closing the cycle as early as possible, yields the
        // lexicographically least one.
        std::vector<std::size_t> path{start};
        std::vector<bool> on_path(n, false);
        on_path[start] = true;
        std::function<bool(std::size_t)> dfs = [&](std::size_t v) {
            if (std::binary_search(succ[v].begin(), succ[v].end(), start)) return true;
            for (std::size_t w : succ[v]) {
                if (w < start || on_path[w] || !reaches(w, start)) continue;
                path.push_back(w);
                on_path[w] = true;
                if (dfs(w)) return true;
                on_path[w] = false;
                path.pop_back();
            }
            return false;
        };
        dfs(start);
        TightnessVerdict verdict;
        verdict.tight = false;
        for (std::size_t v : path) verdict.cycle.push_back(graph.vertices[v]);
        return verdict;
    }
    return {};
}

TightnessVerdict is_tight(const Program& program) { return check_acyclic(dependency_graph(program)); }

std::string to_dot(const DependencyGraph& graph) {
    std::ostringstream out;
    out << "digraph dependencies {\n";
    for (const auto& v : graph.vertices) out << "  \"" << to_string(v) << "\";\n";
    for (const auto& e : graph.edges) {
        out << "  \"" << to_string(e.from) << "\" -> \"" << to_string(e.to) << "\" [label=\"rule " << e.rule + 1
            << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace eg
