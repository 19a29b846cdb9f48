#include "ghm/latent_graph.hpp"

#include <algorithm>
#include <cstdio>
#include <mutex>
#include <queue>
#include <set>
#include <sstream>

#include "ghm/error.hpp"
#include "ghm/evaluator.hpp"
#include "ghm/parallel.hpp"
#include "ghm/serialization.hpp"

namespace ghm {

search_graph::search_graph(std::vector<product_signature> nodes, std::vector<graph_edge> edges,
                           std::size_t max_factors, distance_table table)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), max_factors_(max_factors), table_(table) {
    adjacency_.resize(nodes_.size());
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& e : edges_) {
        if (e.u >= nodes_.size() || e.v >= nodes_.size()) throw parameter_error("edge endpoint out of range");
        if (e.u == e.v) throw parameter_error("self-loop on node " + nodes_[e.u].canonical_key());
        if (!(e.weight > 0.0)) throw parameter_error("edge weights must be positive");
        if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second)
            throw parameter_error("duplicate edge " + nodes_[e.u].canonical_key() + " -- " + nodes_[e.v].canonical_key());
        adjacency_[e.u].emplace_back(e.v, e.weight);
        adjacency_[e.v].emplace_back(e.u, e.weight);
    }
    for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

std::optional<std::size_t> search_graph::find(const product_signature& s) const {
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), s);
    if (it == nodes_.end() || !(*it == s)) return std::nullopt;
    return static_cast<std::size_t>(it - nodes_.begin());
}

std::size_t search_graph::index_of(const product_signature& s) const {
    if (auto i = find(s)) return *i;
    throw parameter_error("signature " + s.canonical_key() + " is not a node of the graph");
}

std::vector<std::size_t> search_graph::component_of(std::size_t node) const {
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<std::size_t> stack{node}, out;
    seen[node] = true;
    while (!stack.empty()) {
        const auto cur = stack.back();
        stack.pop_back();
        out.push_back(cur);
        for (const auto& [next, w] : adjacency_[cur]) {
            if (!seen[next]) {
                seen[next] = true;
                stack.push_back(next);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<product_signature> enumerate_signatures(std::size_t max_factors) {
    std::vector<product_signature> out;
    for (std::size_t k = 1; k <= max_factors; ++k) {
        for (std::size_t e = 0; e <= k; ++e) {
            for (std::size_t s = 0; e + s <= k; ++s) {
                std::vector<model_space> f;
                f.insert(f.end(), e, model_space::e2());
                f.insert(f.end(), s, model_space::s2());
                f.insert(f.end(), k - e - s, model_space::h2());
                out.emplace_back(std::move(f));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

search_graph build_graph(std::size_t max_factors, const distance_table& table) {
    if (max_factors < 1) throw parameter_error("max_factors must be >= 1");
    auto nodes = enumerate_signatures(max_factors);
    std::vector<graph_edge> edges;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            const auto d = signature_distance(nodes[i], nodes[j], table);
            if (d && *d > 0.0 && *d <= 1.0) edges.push_back({i, j, 1.0 / *d});
        }
    }
    return search_graph(std::move(nodes), std::move(edges), max_factors, table);
}

std::string export_graph(const search_graph& g, graph_format format) {
    if (format == graph_format::json) {
        json nodes = json::array();
        for (const auto& n : g.nodes()) nodes.push_back(n.canonical_key());
        json edges = json::array();
        for (const auto& e : g.edges()) edges.push_back({{"source", e.u}, {"target", e.v}, {"weight", e.weight}});
        json out = {{"max_factors", g.max_factors()}, {"nodes", nodes}, {"edges", edges}, {"table", to_json(g.table())}};
        return out.dump(2);
    }
    std::ostringstream out;
    out << "graph latent_geometries {\n";
    for (const auto& n : g.nodes()) out << "  \"" << n.canonical_key() << "\";\n";
    char weight[32];
    for (const auto& e : g.edges()) {
        std::snprintf(weight, sizeof weight, "%#.4g", e.weight);
        out << "  \"" << g.nodes()[e.u].canonical_key() << "\" -- \"" << g.nodes()[e.v].canonical_key()
            << "\" [weight=" << weight << ", label=\"" << weight << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

search_graph import_graph_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw io_error(std::string("invalid graph JSON: ") + e.what());
    }
    try {
        std::vector<product_signature> nodes;
        for (const auto& k : j.at("nodes")) nodes.push_back(product_signature::parse(k.get<std::string>()));
        if (!std::is_sorted(nodes.begin(), nodes.end())) throw parameter_error("graph nodes are not in canonical order");
        std::vector<graph_edge> edges;
        for (const auto& e : j.at("edges"))
            edges.push_back({e.at("source").get<std::size_t>(), e.at("target").get<std::size_t>(),
                             e.at("weight").get<double>()});
        return search_graph(std::move(nodes), std::move(edges), j.at("max_factors").get<std::size_t>(),
                            table_from_json(j.at("table")));
    } catch (const json::exception& e) {
        throw io_error(std::string("malformed graph JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------------------

namespace {

// Memoizes node values within one search and records first-evaluation order.
class memo {
public:
    memo(const search_graph& g, const evaluator& e) : graph_(g), eval_(e), values_(g.nodes().size()) {}

    double operator()(std::size_t node) {
        if (values_[node]) return *values_[node];
        const double v = call(node);
        values_[node] = v;
        order_.push_back(node);
        return v;
    }

    bool known(std::size_t node) const { return values_[node].has_value(); }
    std::size_t count() const { return order_.size(); }

    double call(std::size_t node) const {
        const auto& sig = graph_.nodes()[node];
        try {
            return eval_.evaluate(sig);
        } catch (const evaluation_error&) {
            throw;
        } catch (const std::exception& ex) {
            throw evaluation_error("evaluating node " + sig.canonical_key() + ": " + ex.what());
        }
    }

    search_result result() const {
        search_result r;
        std::size_t best = order_.front();
        for (std::size_t n : order_) {
            r.trajectory.emplace_back(graph_.nodes()[n], *values_[n]);
            if (*values_[n] < *values_[best] || (*values_[n] == *values_[best] && n < best)) best = n;
        }
        r.best_node = graph_.nodes()[best];
        r.best_value = *values_[best];
        r.evaluations = order_.size();
        return r;
    }

private:
    const search_graph& graph_;
    const evaluator& eval_;
    std::vector<std::optional<double>> values_;
    std::vector<std::size_t> order_;
};

}  // namespace

search_result search_exhaustive(const search_graph& g, const evaluator& e, unsigned threads) {
    if (g.nodes().empty()) throw parameter_error("cannot search an empty graph");
    memo m(g, e);
    if (e.thread_safe() && resolve_threads(threads) > 1) {
        std::vector<double> values(g.nodes().size());
        parallel_for(values.size(), threads, [&](std::size_t i) { values[i] = m.call(i); });
        search_result r;
        std::size_t best = 0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            r.trajectory.emplace_back(g.nodes()[i], values[i]);
            if (values[i] < values[best]) best = i;
        }
        r.best_node = g.nodes()[best];
        r.best_value = values[best];
        r.evaluations = values.size();
        return r;
    }
    for (std::size_t i = 0; i < g.nodes().size(); ++i) m(i);
    return m.result();
}

search_result search_greedy(const search_graph& g, const evaluator& e, const product_signature& start) {
    memo m(g, e);
    std::size_t current = g.index_of(start);
    double current_value = m(current);
    for (;;) {
        std::optional<std::size_t> pick;
        double pick_value = 0.0, pick_weight = 0.0;
        for (const auto& [next, w] : g.neighbors(current)) {
            const double v = m(next);
            const bool better = !pick || v < pick_value || (v == pick_value && w > pick_weight);
            if (better) {
                pick = next;
                pick_value = v;
                pick_weight = w;
            }
        }
        if (!pick || !(pick_value < current_value)) break;
        current = *pick;
        current_value = pick_value;
    }
    return m.result();
}

search_result search_best_first(const search_graph& g, const evaluator& e, const product_signature& start,
                                std::size_t budget) {
    if (budget < 1) throw parameter_error("best-first budget must be >= 1");
    memo m(g, e);
    using entry = std::pair<double, std::size_t>;
    std::priority_queue<entry, std::vector<entry>, std::greater<>> frontier;
    const std::size_t s = g.index_of(start);
    frontier.emplace(m(s), s);
    while (!frontier.empty() && m.count() < budget) {
        const auto [value, node] = frontier.top();
        frontier.pop();
        for (const auto& [next, w] : g.neighbors(node)) {
            if (m.known(next)) continue;
            if (m.count() >= budget) break;
            frontier.emplace(m(next), next);
        }
    }
    return m.result();
}

}  // namespace ghm
