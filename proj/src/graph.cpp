#include "antirips/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>
#include <sstream>

#include "antirips/errors.hpp"

namespace antirips {

namespace {

// Tomita-style branch and bound; greedy coloring of the candidate set gives
// the pruning bound.
class MaxCliqueSolver {
public:
    explicit MaxCliqueSolver(const Graph& g) : n_(g.n), words_((n_ + 63) / 64) {
        adj_.assign(static_cast<std::size_t>(n_) * words_, 0);
        for (auto [a, b] : g.edges) {
            set_bit(&adj_[static_cast<std::size_t>(a) * words_], b);
            set_bit(&adj_[static_cast<std::size_t>(b) * words_], a);
        }
    }

    int solve() {
        if (n_ == 0) return 0;
        best_ = 1;
        std::vector<std::uint64_t> all(static_cast<std::size_t>(words_), 0);
        for (int v = 0; v < n_; ++v) set_bit(all.data(), v);
        expand(0, all);
        return best_;
    }

private:
    static void set_bit(std::uint64_t* row, int v) {
        row[v >> 6] |= std::uint64_t{1} << (v & 63);
    }
    static void clear_bit(std::uint64_t* row, int v) {
        row[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }

    void expand(int depth, std::vector<std::uint64_t>& cand) {
        std::vector<int> order;
        std::vector<int> color;
        std::vector<std::uint64_t> rest = cand;
        int c = 0;
        while (true) {
            bool any = false;
            for (int w = 0; w < words_; ++w)
                if (rest[static_cast<std::size_t>(w)]) {
                    any = true;
                    break;
                }
            if (!any) break;
            ++c;
            std::vector<std::uint64_t> cls = rest;
            for (int w = 0; w < words_; ++w) {
                while (cls[static_cast<std::size_t>(w)]) {
                    int v = w * 64 + std::countr_zero(cls[static_cast<std::size_t>(w)]);
                    clear_bit(cls.data(), v);
                    clear_bit(rest.data(), v);
                    const std::uint64_t* nb = &adj_[static_cast<std::size_t>(v) * words_];
                    for (int x = 0; x < words_; ++x)
                        cls[static_cast<std::size_t>(x)] &= ~nb[x];
                    order.push_back(v);
                    color.push_back(c);
                }
            }
        }
        for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
            if (depth + color[static_cast<std::size_t>(i)] <= best_) return;
            int v = order[static_cast<std::size_t>(i)];
            std::vector<std::uint64_t> next(static_cast<std::size_t>(words_));
            const std::uint64_t* nb = &adj_[static_cast<std::size_t>(v) * words_];
            bool empty = true;
            for (int w = 0; w < words_; ++w) {
                next[static_cast<std::size_t>(w)] = cand[static_cast<std::size_t>(w)] & nb[w];
                if (next[static_cast<std::size_t>(w)]) empty = false;
            }
            if (empty)
                best_ = std::max(best_, depth + 1);
            else
                expand(depth + 1, next);
            clear_bit(cand.data(), v);
        }
    }

    int n_;
    int words_;
    int best_ = 0;
    std::vector<std::uint64_t> adj_;
};

}  // namespace

int max_clique_size(const Graph& g) { return MaxCliqueSolver(g).solve(); }

Graph::Graph(int n_vertices, std::vector<std::pair<int, int>> edge_list) : n(n_vertices) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "negative vertex count");
    edges.reserve(edge_list.size());
    for (auto [a, b] : edge_list) {
        if (a == b) fail(ErrorKind::InvalidArgument, "loop edge");
        if (a < 0 || b < 0 || a >= n || b >= n)
            fail(ErrorKind::InvalidArgument, "edge endpoint out of range");
        if (a > b) std::swap(a, b);
        edges.emplace_back(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

bool Graph::has_edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

std::vector<char> Graph::adjacency_matrix() const {
    std::vector<char> adj(static_cast<std::size_t>(n) * n, 0);
    for (auto [a, b] : edges) {
        adj[static_cast<std::size_t>(a) * n + b] = 1;
        adj[static_cast<std::size_t>(b) * n + a] = 1;
    }
    return adj;
}

std::vector<std::vector<int>> Graph::adjacency_lists() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (auto [a, b] : edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    return adj;
}

std::vector<int> Graph::degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (auto [a, b] : edges) {
        ++deg[static_cast<std::size_t>(a)];
        ++deg[static_cast<std::size_t>(b)];
    }
    return deg;
}

Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(n, std::move(e));
}

Graph cycle_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph(n, std::move(e));
}

Graph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, std::move(e));
}

Graph graph_power(const Graph& g, int r) {
    if (r < 1) fail(ErrorKind::InvalidArgument, "graph power needs r >= 1");
    auto adj = g.adjacency_lists();
    std::vector<std::pair<int, int>> e;
    std::vector<int> depth(static_cast<std::size_t>(g.n));
    for (int s = 0; s < g.n; ++s) {
        std::fill(depth.begin(), depth.end(), -1);
        std::queue<int> q;
        q.push(s);
        depth[static_cast<std::size_t>(s)] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            if (depth[static_cast<std::size_t>(v)] >= r) continue;
            for (int w : adj[static_cast<std::size_t>(v)]) {
                if (depth[static_cast<std::size_t>(w)] < 0) {
                    depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(v)] + 1;
                    q.push(w);
                }
            }
        }
        for (int t = s + 1; t < g.n; ++t)
            if (depth[static_cast<std::size_t>(t)] > 0) e.emplace_back(s, t);
    }
    return Graph(g.n, std::move(e));
}

std::string graph_to_dot(const Graph& g, const std::vector<int>* colors) {
    static const char* kPalette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3",
                                     "#ff7f00", "#ffff33", "#a65628", "#f781bf"};
    std::ostringstream out;
    out << "graph G {\n";
    for (int v = 0; v < g.n; ++v) {
        out << "  " << v;
        if (colors && v < static_cast<int>(colors->size())) {
            int c = (*colors)[static_cast<std::size_t>(v)];
            out << " [color=\"" << kPalette[c % 8] << "\", label=\"" << v << ":" << c << "\"]";
        }
        out << ";\n";
    }
    for (auto [a, b] : g.edges) out << "  " << a << " -- " << b << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace antirips
