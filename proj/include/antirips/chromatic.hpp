#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "antirips/graph.hpp"
#include "antirips/metric_space.hpp"

namespace antirips {

struct Coloring {
    std::vector<int> colors;
    int num_colors = 0;
};

enum class GreedyOrder { Natural, DegreeDesc };

bool verify_coloring(const Graph& g, const Coloring& coloring);
std::vector<std::pair<int, int>> coloring_violations(const Graph& g, const Coloring& coloring);

Coloring greedy_coloring(const Graph& g, GreedyOrder order = GreedyOrder::Natural);

// Exact chromatic number by iterative k-colorability search between the
// clique lower bound and the greedy upper bound.
int exact_chromatic(const Graph& g, int limit_vertices = 40);

// Colors every sample point by the face of the inscribed regular
// (n+1)-simplex that its ray exits through (equivalently, nearest projected
// face; ties to the lowest face index). Uses <= n+2 colors and is proper on
// the Borsuk graph at scales alpha > s_n.
Coloring simplex_face_coloring(const FiniteMetricSpace& sphere_sample, double alpha);

// Vertices of the inscribed regular (n+1)-simplex in R^{n+1}.
std::vector<std::vector<double>> regular_simplex_vertices(int n);

bool circular_coloring_check(const Graph& g, const std::vector<double>& psi, double r_circ);

// The homomorphism K_n -> Bor(S^1; 2pi/n), vertex k at angle 2pi k/n.
std::vector<double> kn_to_borsuk(int n);
// Arc binning [2pi k/n, 2pi (k+1)/n) -> k, a homomorphism Bor(S^1;2pi/n) -> K_n.
int borsuk_to_kn(double angle, int n);

bool verify_homomorphism(const Graph& g, const Graph& h, const std::vector<int>& f);

enum class HomSearchStatus { Found, Exhausted, Timeout };

struct HomSearchResult {
    HomSearchStatus status;
    std::vector<int> map;       // valid iff status == Found
    std::uint64_t nodes = 0;    // explored search nodes
};

// Backtracking with forward checking, deterministic canonical order.
// Exhausted on a completed search proves nonexistence for these finite
// graphs; Timeout reports an inconclusive run.
HomSearchResult graph_homomorphism_search(const Graph& g, const Graph& h,
                                          long time_budget_ms = 10000);

std::string coloring_to_json(const Coloring& coloring, bool proper);
std::string homomorphism_to_json(const HomSearchResult& result);

}  // namespace antirips
