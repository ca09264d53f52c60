// Test-only oracles, kept independent of the library code paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "antirips/complexes.hpp"
#include "antirips/graph.hpp"
#include "antirips/metric_space.hpp"

namespace oracles {

inline double brute_spread(const antirips::FiniteMetricSpace& space,
                           const std::vector<int>& subset) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < subset.size(); ++a)
        for (std::size_t b = 0; b < subset.size(); ++b)
            if (subset[a] != subset[b]) best = std::min(best, space.d(subset[a], subset[b]));
    return best;
}

inline double brute_diameter(const antirips::FiniteMetricSpace& space,
                             const std::vector<int>& subset) {
    double best = 0.0;
    for (int a : subset)
        for (int b : subset) best = std::max(best, space.d(a, b));
    return best;
}

// Exhaustive subset search for the packing number (N <= ~20).
inline int brute_packing(const antirips::FiniteMetricSpace& space, double r) {
    int n = space.size();
    int best = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> subset;
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1) subset.push_back(i);
        bool ok = true;
        for (std::size_t a = 0; a < subset.size() && ok; ++a)
            for (std::size_t b = a + 1; b < subset.size(); ++b)
                if (space.d(subset[a], subset[b]) < r - antirips::kScaleTol) {
                    ok = false;
                    break;
                }
        if (ok) best = std::max(best, static_cast<int>(subset.size()));
    }
    return best;
}

inline std::vector<std::vector<double>> floyd_warshall(const antirips::Graph& g) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(static_cast<std::size_t>(g.n),
                                       std::vector<double>(static_cast<std::size_t>(g.n), inf));
    for (int i = 0; i < g.n; ++i) d[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0;
    for (auto [a, b] : g.edges) {
        d[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
        d[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 1;
    }
    for (int k = 0; k < g.n; ++k)
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::min(
                    d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                    d[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                        d[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
    return d;
}

// Membership of a vertex set in the anti-VR complex, straight from the
// definition (all pairwise distances >= r).
inline bool avr_member(const antirips::FiniteMetricSpace& space, const std::vector<int>& verts,
                       double r) {
    for (std::size_t a = 0; a < verts.size(); ++a)
        for (std::size_t b = a + 1; b < verts.size(); ++b)
            if (space.d(verts[a], verts[b]) < r - antirips::kScaleTol) return false;
    return true;
}

// All subsets of size <= max_size that pass `member`, as sorted vertex sets.
template <typename Member>
std::vector<std::vector<int>> enumerate_members(int n, int max_size, const Member& member) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    auto rec = [&](auto&& self, int next) -> void {
        if (!current.empty()) out.push_back(current);
        if (static_cast<int>(current.size()) == max_size) return;
        for (int v = next; v < n; ++v) {
            current.push_back(v);
            if (member(current))
                self(self, v + 1);
            current.pop_back();
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::vector<int>> simplex_sets(const antirips::FilteredComplex& complex) {
    std::vector<std::vector<int>> out;
    out.reserve(complex.simplices.size());
    for (const auto& s : complex.simplices) out.push_back(s.verts);
    std::sort(out.begin(), out.end());
    return out;
}

inline antirips::FiniteMetricSpace random_space(std::mt19937_64& rng, int n, double max_dist = 2.0) {
    std::uniform_real_distribution<double> uni(0.1, max_dist);
    std::vector<std::vector<double>> m(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double v = uni(rng);
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
            m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
        }
    return antirips::from_distance_matrix(m);
}

// Random points in a Euclidean box, honest metric (triangle inequality).
inline antirips::FiniteMetricSpace random_euclidean_space(std::mt19937_64& rng, int n,
                                                          int dim = 3, double side = 2.0) {
    std::uniform_real_distribution<double> uni(0.0, side);
    std::vector<std::vector<double>> pts(static_cast<std::size_t>(n),
                                         std::vector<double>(static_cast<std::size_t>(dim)));
    for (auto& p : pts)
        for (double& c : p) c = uni(rng);
    std::vector<std::vector<double>> m(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < dim; ++k) {
                double diff = pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] -
                              pts[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                s += diff * diff;
            }
            double v = std::sqrt(s);
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
            m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
        }
    return antirips::from_distance_matrix(m, true);
}

inline antirips::Graph random_connected_graph(std::mt19937_64& rng, int n, double edge_prob) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<std::pair<int, int>> edges;
    // random spanning tree first
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> parent(0, v - 1);
        edges.emplace_back(parent(rng), v);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (uni(rng) < edge_prob) edges.emplace_back(i, j);
    return antirips::Graph(n, std::move(edges));
}

}  // namespace oracles
