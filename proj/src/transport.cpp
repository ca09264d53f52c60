#include "antirips/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include <json.hpp>

#include "antirips/errors.hpp"

namespace antirips {

namespace {

constexpr double kMassTol = 1e-12;

void validate_weights(const std::vector<double>& weights) {
    if (weights.empty()) fail(ErrorKind::InvalidArgument, "measure needs a nonempty support");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) fail(ErrorKind::InvalidArgument, "weights must be positive");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > kMassTol)
        fail(ErrorKind::InvalidArgument, "weights must sum to 1");
}

void check_measure_over(const DiscreteMeasure& mu, const FiniteMetricSpace& space) {
    if (mu.support.size() != mu.weights.size())
        fail(ErrorKind::InvalidArgument, "support/weight size mismatch");
    for (int idx : mu.support)
        if (idx < 0 || idx >= space.size())
            fail(ErrorKind::MetricMismatch, "measure indexes a different metric space");
}

// Exact transportation simplex. Supports are tiny (bounded by packing
// numbers), so a dense basis-tree implementation is plenty.
class TransportSolver {
public:
    TransportSolver(std::vector<double> supply, std::vector<double> demand,
                    const std::vector<std::vector<double>>& cost)
        : m_(static_cast<int>(supply.size())),
          n_(static_cast<int>(demand.size())),
          a_(std::move(supply)),
          b_(std::move(demand)),
          c_(cost) {
        // The two sides may disagree by accumulated rounding; push the
        // imbalance onto the largest demand so the simplex stays balanced.
        double total_a = std::accumulate(a_.begin(), a_.end(), 0.0);
        double total_b = std::accumulate(b_.begin(), b_.end(), 0.0);
        std::size_t big = 0;
        for (std::size_t j = 1; j < b_.size(); ++j)
            if (b_[j] > b_[big]) big = j;
        b_[big] += total_a - total_b;
        flow_.assign(static_cast<std::size_t>(m_) * n_, 0.0);
        in_basis_.assign(static_cast<std::size_t>(m_) * n_, 0);
        cost_scale_ = 1.0;
        for (const auto& row : c_)
            for (double v : row) cost_scale_ = std::max(cost_scale_, std::fabs(v));
    }

    void solve() {
        northwest_corner();
        const long max_iters = 10000L * (m_ + n_);
        bool bland = false;
        for (long iter = 0;; ++iter) {
            if (iter > max_iters) bland = true;  // anti-cycling fallback
            compute_duals();
            int ei = -1, ej = -1;
            double best = -1e-12 * cost_scale_;
            for (int i = 0; i < m_; ++i)
                for (int j = 0; j < n_; ++j) {
                    if (in_basis_[cell(i, j)]) continue;
                    double rc = c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                                u_[static_cast<std::size_t>(i)] - v_[static_cast<std::size_t>(j)];
                    if (rc < best) {
                        best = rc;
                        ei = i;
                        ej = j;
                        if (bland) goto have_entering;
                    }
                }
        have_entering:
            if (ei < 0) break;
            pivot(ei, ej);
        }
        repair_marginals();
    }

    double flow(int i, int j) const { return flow_[cell(i, j)]; }

private:
    std::size_t cell(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

    void northwest_corner() {
        std::vector<double> a_rem = a_, b_rem = b_;
        int i = 0, j = 0;
        for (int step = 0; step < m_ + n_ - 1; ++step) {
            double f = std::min(a_rem[static_cast<std::size_t>(i)],
                                b_rem[static_cast<std::size_t>(j)]);
            f = std::max(f, 0.0);
            flow_[cell(i, j)] = f;
            in_basis_[cell(i, j)] = 1;
            a_rem[static_cast<std::size_t>(i)] -= f;
            b_rem[static_cast<std::size_t>(j)] -= f;
            if (step == m_ + n_ - 2) break;
            if (i < m_ - 1 && (a_rem[static_cast<std::size_t>(i)] == 0.0 || j == n_ - 1))
                ++i;
            else
                ++j;
        }
    }

    // Duals from the basis tree, u_i + v_j = c_ij on basic cells.
    void compute_duals() {
        u_.assign(static_cast<std::size_t>(m_), 0.0);
        v_.assign(static_cast<std::size_t>(n_), 0.0);
        std::vector<char> done_u(static_cast<std::size_t>(m_), 0);
        std::vector<char> done_v(static_cast<std::size_t>(n_), 0);
        std::queue<int> q;  // rows are 0..m-1, cols are m..m+n-1
        done_u[0] = 1;
        q.push(0);
        while (!q.empty()) {
            int node = q.front();
            q.pop();
            if (node < m_) {
                for (int j = 0; j < n_; ++j)
                    if (in_basis_[cell(node, j)] && !done_v[static_cast<std::size_t>(j)]) {
                        v_[static_cast<std::size_t>(j)] =
                            c_[static_cast<std::size_t>(node)][static_cast<std::size_t>(j)] -
                            u_[static_cast<std::size_t>(node)];
                        done_v[static_cast<std::size_t>(j)] = 1;
                        q.push(m_ + j);
                    }
            } else {
                int j = node - m_;
                for (int i = 0; i < m_; ++i)
                    if (in_basis_[cell(i, j)] && !done_u[static_cast<std::size_t>(i)]) {
                        u_[static_cast<std::size_t>(i)] =
                            c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                            v_[static_cast<std::size_t>(j)];
                        done_u[static_cast<std::size_t>(i)] = 1;
                        q.push(i);
                    }
            }
        }
    }

    // Unique basis-tree path from row ei to col ej; cycle alternates signs
    // starting with + on the entering cell.
    void pivot(int ei, int ej) {
        int total = m_ + n_;
        std::vector<int> parent(static_cast<std::size_t>(total), -2);
        std::queue<int> q;
        parent[static_cast<std::size_t>(ei)] = -1;
        q.push(ei);
        while (!q.empty()) {
            int node = q.front();
            q.pop();
            if (node == m_ + ej) break;
            if (node < m_) {
                for (int j = 0; j < n_; ++j)
                    if (in_basis_[cell(node, j)] && parent[static_cast<std::size_t>(m_ + j)] == -2) {
                        parent[static_cast<std::size_t>(m_ + j)] = node;
                        q.push(m_ + j);
                    }
            } else {
                int j = node - m_;
                for (int i = 0; i < m_; ++i)
                    if (in_basis_[cell(i, j)] && parent[static_cast<std::size_t>(i)] == -2) {
                        parent[static_cast<std::size_t>(i)] = node;
                        q.push(i);
                    }
            }
        }
        std::vector<int> path;  // nodes from col ej back to row ei
        for (int node = m_ + ej; node != -1; node = parent[static_cast<std::size_t>(node)])
            path.push_back(node);
        // Cycle cells: entering (ei, ej) is +, then alternate along the path.
        std::vector<std::pair<int, int>> minus_cells, plus_cells;
        plus_cells.emplace_back(ei, ej);
        bool plus = false;
        for (std::size_t k = 0; k + 1 < path.size(); ++k) {
            int xa = path[k], xb = path[k + 1];
            int row = (xa < m_) ? xa : xb;
            int col = (xa < m_) ? xb - m_ : xa - m_;
            if (plus)
                plus_cells.emplace_back(row, col);
            else
                minus_cells.emplace_back(row, col);
            plus = !plus;
        }
        double theta = std::numeric_limits<double>::infinity();
        std::pair<int, int> leaving{-1, -1};
        for (auto [i, j] : minus_cells)
            if (flow_[cell(i, j)] < theta) {
                theta = flow_[cell(i, j)];
                leaving = {i, j};
            }
        for (auto [i, j] : plus_cells) flow_[cell(i, j)] += theta;
        for (auto [i, j] : minus_cells) flow_[cell(i, j)] -= theta;
        flow_[cell(leaving.first, leaving.second)] = 0.0;
        in_basis_[cell(leaving.first, leaving.second)] = 0;
        in_basis_[cell(ei, ej)] = 1;
    }

    void repair_marginals() {
        for (int i = 0; i < m_; ++i) {
            double sum = 0.0;
            int biggest = 0;
            for (int j = 0; j < n_; ++j) {
                sum += flow_[cell(i, j)];
                if (flow_[cell(i, j)] > flow_[cell(i, biggest)]) biggest = j;
            }
            flow_[cell(i, biggest)] += a_[static_cast<std::size_t>(i)] - sum;
        }
        for (int j = 0; j < n_; ++j) {
            double sum = 0.0;
            int biggest = 0;
            for (int i = 0; i < m_; ++i) {
                sum += flow_[cell(i, j)];
                if (flow_[cell(i, j)] > flow_[cell(biggest, j)]) biggest = i;
            }
            flow_[cell(biggest, j)] += b_[static_cast<std::size_t>(j)] - sum;
        }
        for (double& f : flow_) f = std::max(f, 0.0);
    }

    int m_, n_;
    std::vector<double> a_, b_;
    std::vector<std::vector<double>> c_;
    std::vector<double> flow_;
    std::vector<char> in_basis_;
    std::vector<double> u_, v_;
    double cost_scale_;
};

TransportPlan plan_from_flows(const TransportSolver& solver, int m, int n,
                              const std::vector<std::vector<double>>& cost) {
    TransportPlan plan;
    plan.rows = m;
    plan.cols = n;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            double f = solver.flow(i, j);
            if (f > 0.0) {
                plan.entries.emplace_back(i, j, f);
                plan.mass += f;
                plan.cost += f * cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            }
        }
    return plan;
}

TransportPlan transpose_plan(const TransportPlan& plan) {
    TransportPlan out;
    out.rows = plan.cols;
    out.cols = plan.rows;
    out.mass = plan.mass;
    out.cost = plan.cost;
    for (auto [i, j, f] : plan.entries) out.entries.emplace_back(j, i, f);
    std::sort(out.entries.begin(), out.entries.end());
    return out;
}

bool measure_less(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    if (a.support != b.support) return a.support < b.support;
    return a.weights < b.weights;
}

}  // namespace

DiscreteMeasure make_measure(std::vector<int> support, std::vector<double> weights) {
    if (support.size() != weights.size())
        fail(ErrorKind::InvalidArgument, "support/weight size mismatch");
    validate_weights(weights);
    std::vector<int> sorted = support;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        fail(ErrorKind::InvalidArgument, "support points must be pairwise distinct");
    double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (double& w : weights) w /= sum;
    return DiscreteMeasure{std::move(support), std::move(weights)};
}

DiscreteMeasure dirac(int point) { return DiscreteMeasure{{point}, {1.0}}; }

std::vector<std::vector<double>> cost_matrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                             const FiniteMetricSpace& space) {
    std::vector<std::vector<double>> c(mu.size(), std::vector<double>(nu.size(), 0.0));
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t j = 0; j < nu.size(); ++j)
            c[i][j] = space.d(mu.support[i], nu.support[j]);
    return c;
}

W1Result w1_from_cost(const std::vector<double>& mu_weights,
                      const std::vector<double>& nu_weights,
                      const std::vector<std::vector<double>>& cost) {
    validate_weights(mu_weights);
    validate_weights(nu_weights);
    if (cost.size() != mu_weights.size())
        fail(ErrorKind::InvalidArgument, "cost matrix row count mismatch");
    for (const auto& row : cost)
        if (row.size() != nu_weights.size())
            fail(ErrorKind::InvalidArgument, "cost matrix column count mismatch");
    TransportSolver solver(mu_weights, nu_weights, cost);
    solver.solve();
    W1Result result;
    result.plan = plan_from_flows(solver, static_cast<int>(mu_weights.size()),
                                  static_cast<int>(nu_weights.size()), cost);
    result.value = result.plan.cost;
    return result;
}

W1Result w1_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     const FiniteMetricSpace& space) {
    check_measure_over(mu, space);
    check_measure_over(nu, space);
    // Canonical argument order makes W1(mu,nu) and W1(nu,mu) bit identical.
    if (measure_less(nu, mu)) {
        W1Result swapped = w1_distance(nu, mu, space);
        swapped.plan = transpose_plan(swapped.plan);
        return swapped;
    }
    return w1_from_cost(mu.weights, nu.weights, cost_matrix(mu, nu, space));
}

TransportPlan make_plan(int rows, int cols, std::vector<std::tuple<int, int, double>> entries,
                        const std::vector<std::vector<double>>& cost) {
    TransportPlan plan;
    plan.rows = rows;
    plan.cols = cols;
    for (auto& [i, j, f] : entries) {
        if (i < 0 || i >= rows || j < 0 || j >= cols)
            fail(ErrorKind::InvalidArgument, "plan entry out of range");
        if (f < -kMassTol) fail(ErrorKind::InvalidArgument, "negative plan mass");
        f = std::max(f, 0.0);
        if (f == 0.0) continue;
        plan.entries.emplace_back(i, j, f);
        plan.mass += f;
        plan.cost += f * cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return plan;
}

double plan_cost(const TransportPlan& plan, const std::vector<std::vector<double>>& cost) {
    double total = 0.0;
    for (auto [i, j, f] : plan.entries)
        total += f * cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return total;
}

std::pair<std::vector<double>, std::vector<double>> plan_marginals(const TransportPlan& plan) {
    std::vector<double> rows(static_cast<std::size_t>(plan.rows), 0.0);
    std::vector<double> cols(static_cast<std::size_t>(plan.cols), 0.0);
    for (auto [i, j, f] : plan.entries) {
        rows[static_cast<std::size_t>(i)] += f;
        cols[static_cast<std::size_t>(j)] += f;
    }
    return {rows, cols};
}

TransportPlan extend_partial_plan(const TransportPlan& sigma, const DiscreteMeasure& mu,
                                  const DiscreteMeasure& nu, const FiniteMetricSpace& space) {
    check_measure_over(mu, space);
    check_measure_over(nu, space);
    if (sigma.rows != static_cast<int>(mu.size()) || sigma.cols != static_cast<int>(nu.size()))
        fail(ErrorKind::NotPartialPlan, "plan shape does not match the measures");
    auto [rows, cols] = plan_marginals(sigma);
    for (std::size_t i = 0; i < mu.size(); ++i)
        if (rows[i] > mu.weights[i] + kMassTol)
            fail(ErrorKind::NotPartialPlan, "row marginal exceeds mu");
    for (std::size_t j = 0; j < nu.size(); ++j)
        if (cols[j] > nu.weights[j] + kMassTol)
            fail(ErrorKind::NotPartialPlan, "column marginal exceeds nu");

    double mass = 0.0;
    for (auto [i, j, f] : sigma.entries) {
        if (f < -kMassTol) fail(ErrorKind::NotPartialPlan, "negative plan entry");
        mass += f;
    }
    if (mass >= 1.0 - kMassTol) return sigma;

    auto cost = cost_matrix(mu, nu, space);
    std::vector<double> mu_left(mu.size()), nu_left(nu.size());
    double denom = 0.0;
    for (std::size_t j = 0; j < nu.size(); ++j) {
        nu_left[j] = std::max(0.0, nu.weights[j] - cols[j]);
        denom += nu_left[j];
    }
    for (std::size_t i = 0; i < mu.size(); ++i) mu_left[i] = std::max(0.0, mu.weights[i] - rows[i]);

    std::vector<std::vector<double>> dense(mu.size(), std::vector<double>(nu.size(), 0.0));
    for (auto [i, j, f] : sigma.entries)
        dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += std::max(f, 0.0);
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t j = 0; j < nu.size(); ++j)
            dense[i][j] += mu_left[i] * nu_left[j] / denom;

    TransportPlan extended;
    extended.rows = sigma.rows;
    extended.cols = sigma.cols;
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t j = 0; j < nu.size(); ++j)
            if (dense[i][j] > 0.0) {
                extended.entries.emplace_back(static_cast<int>(i), static_cast<int>(j),
                                              dense[i][j]);
                extended.mass += dense[i][j];
                extended.cost += dense[i][j] * cost[i][j];
            }

    // Cost bound from the extension lemma; a violation means a bug.
    std::vector<int> support_union = mu.support;
    support_union.insert(support_union.end(), nu.support.begin(), nu.support.end());
    double diam = diameter(space, support_union);
    double sigma_cost = plan_cost(sigma, cost);
    if (extended.cost > sigma_cost + (1.0 - mass) * diam + 1e-9)
        throw std::logic_error("partial plan extension exceeded its cost bound");
    return extended;
}

std::string measure_to_json(const DiscreteMeasure& mu) {
    nlohmann::json j;
    j["schema"] = "antirips.measure/1";
    j["indices"] = mu.support;
    j["weights"] = mu.weights;
    return j.dump(2);
}

DiscreteMeasure measure_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(ErrorKind::ParseError, "bad measure json");
    return make_measure(j.at("indices").get<std::vector<int>>(),
                        j.at("weights").get<std::vector<double>>());
}

std::string plan_to_json(const TransportPlan& plan) {
    nlohmann::json j;
    j["schema"] = "antirips.plan/1";
    j["rows"] = plan.rows;
    j["cols"] = plan.cols;
    nlohmann::json entries = nlohmann::json::array();
    for (auto [i, jdx, f] : plan.entries) entries.push_back({i, jdx, f});
    j["entries"] = std::move(entries);
    j["mass"] = plan.mass;
    j["cost"] = plan.cost;
    return j.dump(2);
}

}  // namespace antirips
