#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "antirips/errors.hpp"
#include "antirips/graph.hpp"

namespace antirips {

// Finite metric space: labeled points with a symmetric distance matrix.
// Samples of round spheres additionally carry unit ambient coordinates, in
// which case distances are geodesic (radians, arccos of the clamped dot).
struct FiniteMetricSpace {
    std::vector<std::string> labels;
    std::vector<double> dist;  // row-major n*n, symmetric, zero diagonal
    std::vector<std::vector<double>> ambient;  // empty when not spherical
    std::optional<int> sphere_dim;

    int size() const { return static_cast<int>(labels.size()); }
    double d(int i, int j) const { return dist[static_cast<std::size_t>(i) * labels.size() + j]; }

    bool has_ambient() const { return !ambient.empty(); }

    // Checks the structural invariants (symmetry, zero diagonal, ambient
    // consistency within 1e-12). Throws on violation.
    void validate() const;
};

enum class SimilarityMode { Reciprocal, ExpNegative, MaxMinus };
enum class SphereSampling { Evenly, Fibonacci, UniformRandom };

struct SimplexConstants {
    int n;
    double r_n;  // diameter of the inscribed regular (n+1)-simplex's vertex set
    double s_n;  // diameter of a radially projected n-face
};

FiniteMetricSpace from_distance_matrix(const std::vector<std::vector<double>>& matrix,
                                       bool strict_metric = false,
                                       std::vector<std::string> labels = {});

FiniteMetricSpace from_similarity_matrix(const std::vector<std::vector<double>>& matrix,
                                         SimilarityMode mode,
                                         std::vector<std::string> labels = {});

// N points on the unit n-sphere. `Evenly` requires n=1 (angles 2*pi*k/N),
// `Fibonacci` requires n=2 (golden-angle spiral), `UniformRandom` works for
// any n >= 1 and is deterministic given the seed.
FiniteMetricSpace sample_sphere(int n, int num_points, SphereSampling method,
                                std::uint64_t seed = 42);

FiniteMetricSpace space_from_points(std::vector<std::vector<double>> points, int sphere_dim);

// Min pairwise distance over the subset; +infinity for singletons.
double spread(const FiniteMetricSpace& space, std::span<const int> subset);
// Max pairwise distance over the subset; 0 for singletons.
double diameter(const FiniteMetricSpace& space, std::span<const int> subset);

double spread_all(const FiniteMetricSpace& space);
double diameter_all(const FiniteMetricSpace& space);

// Largest cardinality of a subset with spread >= r, by exact max-clique
// search on the far graph.
int packing_number_exact(const FiniteMetricSpace& space, double r, int exact_limit = 64);

// Cardinality of a maximal greedy packing; a lower bound for the exact value.
// `order` overrides the natural scan order when nonempty.
int packing_number_greedy(const FiniteMetricSpace& space, double r,
                          std::span<const int> order = {});

// Farthest-point-sampling net seeded at index 0: every point of the space is
// within < eps of the returned subset.
std::vector<int> epsilon_net(const FiniteMetricSpace& space, double eps);

SimplexConstants simplex_constants(int n);

// All-pairs shortest-path (BFS) metric of a connected simple graph.
FiniteMetricSpace graph_metric(const Graph& g);

// CSV I/O. Doubles are printed with 17 significant digits so that
// write/read round trips are bit exact.
std::string format_double(double v);
FiniteMetricSpace read_distance_csv(const std::string& path, bool strict_metric = false);
void write_distance_csv(const FiniteMetricSpace& space, const std::string& path,
                        bool with_labels = true);
std::vector<std::vector<double>> read_points_csv(const std::string& path);
void write_points_csv(const std::vector<std::vector<double>>& points, const std::string& path);

}  // namespace antirips
