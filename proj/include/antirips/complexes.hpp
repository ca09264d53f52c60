#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "antirips/graph.hpp"
#include "antirips/metric_space.hpp"

namespace antirips {

struct Simplex {
    std::vector<int> verts;  // sorted ascending
    double value;            // +inf for vertices

    int dim() const { return static_cast<int>(verts.size()) - 1; }
};

// Simplicial complex whose simplices carry a scale value, ordered for
// decreasing-scale persistence: the sublevel set {value >= r} is the complex
// at scale r, so values shrink as simplices are appended.
struct FilteredComplex {
    int n_vertices = 0;
    int dim_cap = 8;
    std::string flavor = "fixed";
    std::vector<Simplex> simplices;

    int dimension() const;
    std::size_t count_in_dim(int k) const;
    bool contains(std::span<const int> verts) const;  // requires canonical order

    // Canonical order: value descending, then cardinality ascending, then
    // lexicographic vertex order. Deterministic across runs and threads.
    void sort_canonical();

    // Face closure and monotone values; throws InvalidFiltrationOrder.
    void validate_filtration() const;
};

Graph far_graph(const FiniteMetricSpace& space, double r);
// Exact complement of far_graph on the same vertex set.
Graph near_graph(const FiniteMetricSpace& space, double r);

// Clique complex of a graph truncated at dim_cap; all values +inf.
FilteredComplex clique_complex(const Graph& g, int dim_cap);

// Independent sets of a graph up to dim_cap; all values +inf.
FilteredComplex independence_complex(const Graph& g, int dim_cap);

// Subsets of spread >= r (clique complex of the far graph); simplex values
// are spreads.
FilteredComplex avr_complex(const FiniteMetricSpace& space, double r, int dim_cap);

// Total anti-VR complex: sets splitting into two clusters with all cross
// distances >= r, together with all faces of such sets, truncated at dim_cap.
FilteredComplex tavr_complex(const FiniteMetricSpace& space, double r, int dim_cap);

enum class ComplexFlavor { Avr, Tavr };

// Largest r at which `verts` is a simplex of the flavor's complex:
// spread for AVR; for TAVR the max of the best bipartition min-cross and the
// best single outside witness (faces of larger simplices enter with them).
double avr_entry_value(const FiniteMetricSpace& space, std::span<const int> verts);
double tavr_entry_value(const FiniteMetricSpace& space, std::span<const int> verts);

// One complex containing every simplex alive at some r > 0, valued so that
// slicing at r reproduces avr_complex / tavr_complex exactly.
FilteredComplex anti_filtration(const FiniteMetricSpace& space, int dim_cap,
                                ComplexFlavor flavor);

// Sublevel slice {value >= r} of a filtration, preserving dim_cap.
FilteredComplex slice_at(const FilteredComplex& filtered, double r);

// A vertex v with sigma + {v} present for every simplex sigma that stays
// under the dim cap, if one exists (lowest index preferred).
std::optional<int> is_cone(const FilteredComplex& complex);

long long euler_characteristic(const FilteredComplex& complex);

bool same_simplex_sets(const FilteredComplex& a, const FilteredComplex& b);

std::string complex_to_json(const FilteredComplex& complex);
FilteredComplex complex_from_json(const std::string& text);

}  // namespace antirips
