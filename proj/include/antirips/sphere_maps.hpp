#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "antirips/metric_space.hpp"
#include "antirips/transport.hpp"

namespace antirips {

// Finitely supported probability measure on the unit n-sphere, support given
// by explicit unit vectors in R^{n+1}.
struct SphereMeasure {
    int dim = 1;  // sphere dimension n
    std::vector<std::vector<double>> points;
    std::vector<double> weights;

    std::size_t size() const { return points.size(); }
};

SphereMeasure make_sphere_measure(int dim, std::vector<std::vector<double>> points,
                                  std::vector<double> weights);
SphereMeasure sphere_dirac(std::vector<double> x);

double geodesic(const std::vector<double>& a, const std::vector<double>& b);
std::vector<double> antipode(const std::vector<double>& x);

double sphere_spread(const SphereMeasure& mu);

// Membership in the anti-VR thickening at scale r: support spread >= r.
bool avrm_membership(const SphereMeasure& mu, double r);

// Exact W1 between sphere measures under the geodesic metric on their
// combined supports.
double w1_sphere(const SphereMeasure& mu, const SphereMeasure& nu);

// lambda.delta_x + (1-lambda).delta_{-x}  |->  (delta_x + delta_{-x}) / 2.
// Singletons delta_x map to the balanced pair on {x, -x}.
SphereMeasure central_core_projection(const SphereMeasure& mu);

// The homotopy inverse of the inclusion AVRm(S^n;pi) -> AVRm(S^n;r) for
// 2pi/3 < r <= pi, on measures with at most two support points: shine from
// the pole N equidistant to the support, through the Euclidean barycenter,
// onto the diameter parallel to the support chord or onto the sphere.
SphereMeasure rho_flashlight(const SphereMeasure& mu, double r);

// Slides the support along chords parallel to the original one:
// t = 0 is the identity, t = 1 equals rho_flashlight. Stays in AVRm(S^n;r).
SphereMeasure flashlight_homotopy(const SphereMeasure& mu, double r, double t);

// Positions into the support of a measure, splitting it into two clusters.
struct Bipartition {
    std::vector<int> first;
    std::vector<int> second;
};

std::optional<Bipartition> find_tavr_bipartition(const SphereMeasure& mu, double r);

// Radial projection TAVRm(S^n;r) -> AVRm(S^n;r): each cluster collapses to
// its normalized Euclidean barycenter, keeping the cluster masses. The
// inner-product bound <bar_x, bar_y> <= cos r is checked at runtime.
SphereMeasure rho_radial(const SphereMeasure& mu, double r,
                         const Bipartition* split = nullptr);

// (1-t).mu + t.rho_radial(mu); the cross-distance conditions at scale r are
// checked at runtime.
SphereMeasure tavr_linear_homotopy(const SphereMeasure& mu, double r, double t,
                                   const Bipartition* split = nullptr);

// Measure on the vertices of the inscribed equilateral triangle in the plane
// spanned by {e1,e2} having y as a vertex; x and radius pick the point whose
// barycentric coordinates become the weights. radius = 0 gives (1/3,1/3,1/3).
SphereMeasure triangle_param(const std::vector<double>& e1, const std::vector<double>& e2,
                             const std::vector<double>& y, const std::vector<double>& x,
                             double radius);

// Partition-of-unity pushforward onto a net: phi(delta_y) = sum rho_x(y)
// delta_x with hat functions subordinate to {B(x; eps/2)}, extended linearly.
// Requires `net` to be an eps/2-net of the space and the support of mu to
// split into clusters >= r + eps apart (or be a singleton).
DiscreteMeasure pou_map(const FiniteMetricSpace& space, const std::vector<int>& net,
                        const DiscreteMeasure& mu, double r, double eps);

struct DiscreteLoop {
    std::vector<SphereMeasure> samples;  // closed: first == last
    int resolution = 0;
};

// The mass-swap-then-walk loop: for t <= 1/2 interpolate masses between
// delta_x and delta_{-x}, then follow a geodesic from -x back to x.
DiscreteLoop loop_gamma(const std::vector<double>& x, int resolution);

// Applies a pointwise map to every support point of every sample (graph
// homomorphisms of Borsuk graphs act this way on loops).
DiscreteLoop map_loop(const DiscreteLoop& loop,
                      const std::function<std::vector<double>(const std::vector<double>&)>& f);

// Unordered antipodal pair {rep, -rep}, stored with a canonical-sign
// representative.
struct AntipodalClass {
    std::vector<double> rep;
};

// Per sample: flashlight at scale r, then projection to the central core.
std::vector<AntipodalClass> project_loop_to_rpn(const DiscreteLoop& loop, double r);

enum class LoopVerdict { Trivial, Nontrivial };

struct LiftResult {
    LoopVerdict verdict;
    std::vector<std::vector<double>> path;  // lifted representatives
};

// Greedy nearest-representative lift to the covering sphere; nontrivial iff
// the path ends at the antipode of its start.
LiftResult lift_loop(const std::vector<AntipodalClass>& classes, bool flip_start = false);

// Sparse weight sequence over cover-set ids (a point of |K| in barycentric
// coordinates).
struct WeightSequence {
    std::vector<std::pair<int, double>> entries;

    double total() const;
    int distinct_positive_values() const;
};

struct CoverArc {
    double center;
    double half_width;
};

struct CoverDimReport {
    std::vector<CoverArc> arcs;
    int packing = 0;
    int complex_dimension = 0;
    std::size_t complex_simplices = 0;
    int dim_bound = 0;            // (n+1)p - 1
    int multiplicity_bound = 0;   // (n+1)p
    int max_multiplicity = 0;     // observed over the test grid
    std::vector<long long> multiplicity_histogram;
    std::size_t measures_tested = 0;
    bool weight_sums_ok = true;
};

// Desk-scale run of the covering-dimension construction on S^1: arc cover of
// multiplicity 2 with diameters < eps/2, hat partition of unity, the complex
// K of co-chargeable arcs, and the observed multiplicity of the pulled-back
// star cover over a grid of test measures.
CoverDimReport cover_dim_experiment(const FiniteMetricSpace& circle_sample, double r, double eps);

std::string sphere_measure_to_json(const SphereMeasure& mu);
SphereMeasure sphere_measure_from_json(const std::string& text);
std::string loop_to_json(const DiscreteLoop& loop);
std::string cover_dim_report_to_json(const CoverDimReport& report);

}  // namespace antirips
