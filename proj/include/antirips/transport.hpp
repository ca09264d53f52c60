#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "antirips/metric_space.hpp"

namespace antirips {

// Finitely supported probability measure: indices into a FiniteMetricSpace
// plus positive weights summing to 1.
struct DiscreteMeasure {
    std::vector<int> support;
    std::vector<double> weights;

    std::size_t size() const { return support.size(); }
};

DiscreteMeasure make_measure(std::vector<int> support, std::vector<double> weights);
DiscreteMeasure dirac(int point);

// Sparse nonnegative plan over supp(mu) x supp(nu); entries index positions
// in the two support lists. Row sums <= mu and column sums <= nu (partial);
// equality in both means a full plan of mass 1.
struct TransportPlan {
    int rows = 0;
    int cols = 0;
    std::vector<std::tuple<int, int, double>> entries;
    double mass = 0.0;
    double cost = 0.0;
};

TransportPlan make_plan(int rows, int cols, std::vector<std::tuple<int, int, double>> entries,
                        const std::vector<std::vector<double>>& cost_matrix);

struct W1Result {
    double value;
    TransportPlan plan;
};

// Exact optimal transport cost on the complete bipartite support graph
// (transportation simplex). Deterministic and exactly symmetric in its
// arguments. Throws MetricMismatch when a measure does not index `space`.
W1Result w1_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     const FiniteMetricSpace& space);

// Same solver on an explicit cost matrix (used for measures supported on raw
// sphere coordinates, which carry their own geodesic metric closure).
W1Result w1_from_cost(const std::vector<double>& mu_weights,
                      const std::vector<double>& nu_weights,
                      const std::vector<std::vector<double>>& cost_matrix);

double plan_cost(const TransportPlan& plan, const std::vector<std::vector<double>>& cost_matrix);
std::pair<std::vector<double>, std::vector<double>> plan_marginals(const TransportPlan& plan);

std::vector<std::vector<double>> cost_matrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                             const FiniteMetricSpace& space);

// Extends a partial plan to a full plan with exact marginals via
// sigma + (mu - sigma_1) x (nu - sigma_2) / (1 - mass). The cost bound
// cost <= cost(sigma) + (1 - mass) * diam(support union) is checked.
TransportPlan extend_partial_plan(const TransportPlan& sigma, const DiscreteMeasure& mu,
                                  const DiscreteMeasure& nu, const FiniteMetricSpace& space);

std::string measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const std::string& text);
std::string plan_to_json(const TransportPlan& plan);

}  // namespace antirips
