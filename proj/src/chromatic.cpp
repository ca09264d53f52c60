#include "antirips/chromatic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "antirips/errors.hpp"
#include "antirips/parallel.hpp"

namespace antirips {

namespace {

constexpr double kPi = std::numbers::pi;

void check_total_coloring(const Graph& g, const Coloring& coloring) {
    if (static_cast<int>(coloring.colors.size()) != g.n)
        fail(ErrorKind::PartialColoring, "coloring does not cover every vertex");
    for (int c : coloring.colors)
        if (c < 0) fail(ErrorKind::PartialColoring, "uncolored vertex");
}

// k-colorability by backtracking over a static degree-descending order with
// first-use color symmetry breaking.
bool k_colorable(const std::vector<std::vector<int>>& adj, const std::vector<int>& order, int k) {
    int n = static_cast<int>(order.size());
    std::vector<int> color(static_cast<std::size_t>(n), -1);
    auto dfs = [&](auto&& self, int pos, int used) -> bool {
        if (pos == n) return true;
        int v = order[static_cast<std::size_t>(pos)];
        int cap = std::min(k - 1, used);
        for (int c = 0; c <= cap; ++c) {
            bool clash = false;
            for (int w : adj[static_cast<std::size_t>(v)])
                if (color[static_cast<std::size_t>(w)] == c) {
                    clash = true;
                    break;
                }
            if (clash) continue;
            color[static_cast<std::size_t>(v)] = c;
            if (self(self, pos + 1, std::max(used, c + 1))) return true;
            color[static_cast<std::size_t>(v)] = -1;
        }
        return false;
    };
    return dfs(dfs, 0, 0);
}

}  // namespace

bool verify_coloring(const Graph& g, const Coloring& coloring) {
    check_total_coloring(g, coloring);
    for (auto [a, b] : g.edges)
        if (coloring.colors[static_cast<std::size_t>(a)] ==
            coloring.colors[static_cast<std::size_t>(b)])
            return false;
    return true;
}

std::vector<std::pair<int, int>> coloring_violations(const Graph& g, const Coloring& coloring) {
    check_total_coloring(g, coloring);
    std::vector<std::pair<int, int>> bad;
    for (auto [a, b] : g.edges)
        if (coloring.colors[static_cast<std::size_t>(a)] ==
            coloring.colors[static_cast<std::size_t>(b)])
            bad.emplace_back(a, b);
    return bad;
}

Coloring greedy_coloring(const Graph& g, GreedyOrder order) {
    std::vector<int> scan(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) scan[static_cast<std::size_t>(i)] = i;
    if (order == GreedyOrder::DegreeDesc) {
        auto deg = g.degrees();
        std::stable_sort(scan.begin(), scan.end(), [&](int a, int b) {
            return deg[static_cast<std::size_t>(a)] > deg[static_cast<std::size_t>(b)];
        });
    }
    auto adj = g.adjacency_lists();
    Coloring coloring;
    coloring.colors.assign(static_cast<std::size_t>(g.n), -1);
    std::vector<char> used;
    for (int v : scan) {
        used.assign(static_cast<std::size_t>(g.n) + 1, 0);
        for (int w : adj[static_cast<std::size_t>(v)]) {
            int c = coloring.colors[static_cast<std::size_t>(w)];
            if (c >= 0) used[static_cast<std::size_t>(c)] = 1;
        }
        int c = 0;
        while (used[static_cast<std::size_t>(c)]) ++c;
        coloring.colors[static_cast<std::size_t>(v)] = c;
        coloring.num_colors = std::max(coloring.num_colors, c + 1);
    }
    return coloring;
}

int exact_chromatic(const Graph& g, int limit_vertices) {
    if (g.n > limit_vertices)
        fail(ErrorKind::SizeLimitExceeded,
             std::to_string(g.n) + " vertices exceeds the exact limit " +
                 std::to_string(limit_vertices));
    if (g.n == 0) return 0;
    if (g.edges.empty()) return 1;
    int lower = max_clique_size(g);
    int upper = std::min(greedy_coloring(g, GreedyOrder::Natural).num_colors,
                         greedy_coloring(g, GreedyOrder::DegreeDesc).num_colors);
    auto adj = g.adjacency_lists();
    std::vector<int> order(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) order[static_cast<std::size_t>(i)] = i;
    auto deg = g.degrees();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return deg[static_cast<std::size_t>(a)] > deg[static_cast<std::size_t>(b)];
    });
    for (int k = lower; k < upper; ++k)
        if (k_colorable(adj, order, k)) return k;
    return upper;
}

std::vector<std::vector<double>> regular_simplex_vertices(int n) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "simplex needs n >= 1");
    // Helmert basis of the sum-zero hyperplane in R^{n+2} maps the centered
    // standard-basis construction into R^{n+1}; pairwise dots are -1/(n+1).
    int m = n + 2;
    double scale = std::sqrt(static_cast<double>(m) / (m - 1));
    std::vector<std::vector<double>> verts(static_cast<std::size_t>(m),
                                           std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
    for (int k = 1; k <= n + 1; ++k) {
        double denom = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
        for (int i = 0; i < m; ++i) {
            double b;
            if (i < k)
                b = denom;
            else if (i == k)
                b = -k * denom;
            else
                b = 0.0;
            verts[static_cast<std::size_t>(i)][static_cast<std::size_t>(k) - 1] = b * scale;
        }
    }
    return verts;
}

Coloring simplex_face_coloring(const FiniteMetricSpace& sphere_sample, double alpha) {
    if (!sphere_sample.has_ambient())
        fail(ErrorKind::NoAmbient, "face coloring needs ambient sphere coordinates");
    if (alpha <= 0.0) fail(ErrorKind::InvalidArgument, "alpha must be positive");
    int n = sphere_sample.sphere_dim.value_or(
        static_cast<int>(sphere_sample.ambient[0].size()) - 1);
    auto verts = regular_simplex_vertices(n);
    Coloring coloring;
    coloring.colors.assign(static_cast<std::size_t>(sphere_sample.size()), 0);
    coloring.num_colors = n + 2;
    parallel_for(static_cast<std::size_t>(sphere_sample.size()), [&](std::size_t i) {
        const auto& p = sphere_sample.ambient[i];
        // Exit face of the ray through p = the face opposite the vertex of
        // least inner product (max inner product with the face centroid).
        int best = 0;
        double best_dot = std::numeric_limits<double>::infinity();
        for (std::size_t v = 0; v < verts.size(); ++v) {
            double d = 0.0;
            for (std::size_t k = 0; k < p.size(); ++k) d += p[k] * verts[v][k];
            if (d < best_dot) {
                best_dot = d;
                best = static_cast<int>(v);
            }
        }
        coloring.colors[i] = best;
    });
    return coloring;
}

bool circular_coloring_check(const Graph& g, const std::vector<double>& psi, double r_circ) {
    if (static_cast<int>(psi.size()) != g.n)
        fail(ErrorKind::PartialColoring, "angle assignment does not cover every vertex");
    if (r_circ < 1.0) fail(ErrorKind::InvalidArgument, "circular parameter must be >= 1");
    double gap = 2.0 * kPi / r_circ;
    for (auto [a, b] : g.edges) {
        double d = std::fabs(std::fmod(psi[static_cast<std::size_t>(a)] -
                                           psi[static_cast<std::size_t>(b)],
                                       2.0 * kPi));
        if (d > kPi) d = 2.0 * kPi - d;
        if (!at_least(d, gap)) return false;
    }
    return true;
}

std::vector<double> kn_to_borsuk(int n) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "need n >= 1");
    std::vector<double> angles(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) angles[static_cast<std::size_t>(k)] = 2.0 * kPi * k / n;
    return angles;
}

int borsuk_to_kn(double angle, int n) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "need n >= 1");
    double a = std::fmod(angle, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    int k = static_cast<int>(std::floor(a * n / (2.0 * kPi) + 1e-9));
    return k >= n ? 0 : k;
}

bool verify_homomorphism(const Graph& g, const Graph& h, const std::vector<int>& f) {
    if (static_cast<int>(f.size()) != g.n)
        fail(ErrorKind::PartialMap, "map does not cover every vertex");
    for (int image : f)
        if (image < 0 || image >= h.n) fail(ErrorKind::PartialMap, "image vertex out of range");
    for (auto [a, b] : g.edges) {
        int fa = f[static_cast<std::size_t>(a)], fb = f[static_cast<std::size_t>(b)];
        if (fa == fb || !h.has_edge(fa, fb)) return false;
    }
    return true;
}

HomSearchResult graph_homomorphism_search(const Graph& g, const Graph& h, long time_budget_ms) {
    HomSearchResult result;
    result.status = HomSearchStatus::Exhausted;
    if (g.n == 0) {
        result.status = HomSearchStatus::Found;
        return result;
    }
    if (h.n == 0) return result;

    auto g_adj = g.adjacency_lists();
    auto h_adj_matrix = h.adjacency_matrix();
    auto h_has = [&](int a, int b) {
        return h_adj_matrix[static_cast<std::size_t>(a) * h.n + b] != 0;
    };
    std::vector<int> order(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) order[static_cast<std::size_t>(i)] = i;
    auto deg = g.degrees();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return deg[static_cast<std::size_t>(a)] > deg[static_cast<std::size_t>(b)];
    });

    std::vector<int> assignment(static_cast<std::size_t>(g.n), -1);
    auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(time_budget_ms);
    bool timed_out = false;

    auto dfs = [&](auto&& self, int pos) -> bool {
        if (pos == g.n) return true;
        if ((result.nodes & 1023) == 0 && std::chrono::steady_clock::now() > deadline) {
            timed_out = true;
            return false;
        }
        int v = order[static_cast<std::size_t>(pos)];
        for (int w = 0; w < h.n; ++w) {
            ++result.nodes;
            bool ok = true;
            for (int u : g_adj[static_cast<std::size_t>(v)]) {
                int fu = assignment[static_cast<std::size_t>(u)];
                if (fu >= 0 && (fu == w || !h_has(fu, w))) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            assignment[static_cast<std::size_t>(v)] = w;
            if (self(self, pos + 1)) return true;
            assignment[static_cast<std::size_t>(v)] = -1;
            if (timed_out) return false;
        }
        return false;
    };

    if (dfs(dfs, 0)) {
        result.status = HomSearchStatus::Found;
        result.map = assignment;
    } else if (timed_out) {
        result.status = HomSearchStatus::Timeout;
    }
    return result;
}

std::string coloring_to_json(const Coloring& coloring, bool proper) {
    nlohmann::json j;
    j["schema"] = "antirips.coloring/1";
    j["colors"] = coloring.colors;
    j["num_colors"] = coloring.num_colors;
    j["proper"] = proper;
    return j.dump(2);
}

std::string homomorphism_to_json(const HomSearchResult& result) {
    nlohmann::json j;
    j["schema"] = "antirips.homomorphism/1";
    switch (result.status) {
        case HomSearchStatus::Found: j["verdict"] = "found"; break;
        case HomSearchStatus::Exhausted: j["verdict"] = "exhausted"; break;
        case HomSearchStatus::Timeout: j["verdict"] = "timeout"; break;
    }
    j["map"] = result.map;
    j["nodes"] = result.nodes;
    return j.dump(2);
}

}  // namespace antirips
