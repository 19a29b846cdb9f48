#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ghm/distance_table.hpp"
#include "ghm/geometry.hpp"

namespace ghm {

class evaluator;

struct graph_edge {
    std::size_t u = 0;
    std::size_t v = 0;
    double weight = 0.0;  // 1 / signature distance

    friend bool operator==(const graph_edge&, const graph_edge&) = default;
};

// Weighted undirected graph over product signatures with 1..max_factors
// factors. Nodes are kept in canonical order; edges join signatures that
// differ by one swapped factor (weight 1/table) or by one extra factor
// (weight 1).
class search_graph {
public:
    search_graph(std::vector<product_signature> nodes, std::vector<graph_edge> edges, std::size_t max_factors,
                 distance_table table);

    const std::vector<product_signature>& nodes() const { return nodes_; }
    const std::vector<graph_edge>& edges() const { return edges_; }
    std::size_t max_factors() const { return max_factors_; }
    const distance_table& table() const { return table_; }

    std::optional<std::size_t> find(const product_signature& s) const;
    std::size_t index_of(const product_signature& s) const;  // throws parameter_error if absent

    // (neighbour, weight) sorted by neighbour index.
    const std::vector<std::pair<std::size_t, double>>& neighbors(std::size_t node) const { return adjacency_[node]; }

    // Nodes reachable from `node`, ascending.
    std::vector<std::size_t> component_of(std::size_t node) const;

    friend bool operator==(const search_graph& a, const search_graph& b) {
        return a.nodes_ == b.nodes_ && a.edges_ == b.edges_ && a.max_factors_ == b.max_factors_ && a.table_ == b.table_;
    }

private:
    std::vector<product_signature> nodes_;
    std::vector<graph_edge> edges_;
    std::size_t max_factors_;
    distance_table table_;
    std::vector<std::vector<std::pair<std::size_t, double>>> adjacency_;
};

// All multisets of {E2, S2, H2} with 1..max_factors factors, canonical order.
std::vector<product_signature> enumerate_signatures(std::size_t max_factors);

search_graph build_graph(std::size_t max_factors, const distance_table& table);

enum class graph_format { dot, json };

std::string export_graph(const search_graph& g, graph_format format);
search_graph import_graph_json(const std::string& text);

// ---------------------------------------------------------------------------
// Searches
// ---------------------------------------------------------------------------

struct search_result {
    product_signature best_node;
    double best_value = 0.0;
    std::vector<std::pair<product_signature, double>> trajectory;  // evaluation order
    std::size_t evaluations = 0;
};

// Evaluates every node; ties resolve to the lowest canonical index. Nodes are
// evaluated concurrently when the evaluator is thread safe and threads > 1.
search_result search_exhaustive(const search_graph& g, const evaluator& e, unsigned threads = 1);

// Moves to the lowest-valued neighbour (ties: heavier edge, then lower index)
// while that strictly improves; stops at a local minimum.
search_result search_greedy(const search_graph& g, const evaluator& e, const product_signature& start);

// Best-first expansion from `start` until `budget` evaluations are spent or the
// frontier is empty.
search_result search_best_first(const search_graph& g, const evaluator& e, const product_signature& start,
                                std::size_t budget);

}  // namespace ghm
