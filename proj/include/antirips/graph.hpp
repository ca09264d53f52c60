#pragma once

#include <string>
#include <utility>
#include <vector>

namespace antirips {

// Simple undirected graph on vertices 0..n-1. Edges are stored as sorted
// (i,j) pairs with i < j, deduplicated.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    Graph() = default;
    Graph(int n_vertices, std::vector<std::pair<int, int>> edge_list);

    std::size_t edge_count() const { return edges.size(); }
    bool has_edge(int i, int j) const;

    // Adjacency as a flat n*n boolean matrix.
    std::vector<char> adjacency_matrix() const;
    std::vector<std::vector<int>> adjacency_lists() const;

    std::vector<int> degrees() const;
};

Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);

// r-th graph power: vertices adjacent iff shortest-path distance <= r.
Graph graph_power(const Graph& g, int r);

// Exact maximum clique cardinality (branch and bound with a greedy coloring
// bound). 0 for the empty graph.
int max_clique_size(const Graph& g);

std::string graph_to_dot(const Graph& g, const std::vector<int>* colors = nullptr);

}  // namespace antirips
