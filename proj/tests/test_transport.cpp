#include <doctest.h>

#include <cmath>
#include <random>

#include "antirips/metric_space.hpp"
#include "antirips/transport.hpp"
#include "oracles.hpp"

using namespace antirips;

namespace {

// Exhaustive vertex enumeration on the transportation polytope: every basic
// solution is a spanning tree of K_{m,n}, recoverable by peeling rows or
// columns with a single unassigned cell. LP-free oracle for supports <= 3.
double brute_w1(const std::vector<double>& a, const std::vector<double>& b,
                const std::vector<std::vector<double>>& cost) {
    int m = static_cast<int>(a.size()), n = static_cast<int>(b.size());
    int cells = m * n;
    int basis_size = m + n - 1;
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> chosen;
    auto evaluate = [&]() {
        std::vector<double> a_rem = a, b_rem = b;
        std::vector<std::pair<int, int>> open;
        for (int c : chosen) open.emplace_back(c / n, c % n);
        std::vector<double> flow(open.size(), 0.0);
        std::vector<char> assigned(open.size(), 0);
        bool progress = true;
        std::size_t done = 0;
        while (progress && done < open.size()) {
            progress = false;
            for (int i = 0; i < m; ++i) {
                int count = 0, last = -1;
                for (std::size_t k = 0; k < open.size(); ++k)
                    if (!assigned[k] && open[k].first == i) {
                        ++count;
                        last = static_cast<int>(k);
                    }
                if (count == 1) {
                    std::size_t k = static_cast<std::size_t>(last);
                    flow[k] = a_rem[static_cast<std::size_t>(i)];
                    assigned[k] = 1;
                    a_rem[static_cast<std::size_t>(i)] = 0;
                    b_rem[static_cast<std::size_t>(open[k].second)] -= flow[k];
                    ++done;
                    progress = true;
                }
            }
            for (int j = 0; j < n; ++j) {
                int count = 0, last = -1;
                for (std::size_t k = 0; k < open.size(); ++k)
                    if (!assigned[k] && open[k].second == j) {
                        ++count;
                        last = static_cast<int>(k);
                    }
                if (count == 1) {
                    std::size_t k = static_cast<std::size_t>(last);
                    flow[k] = b_rem[static_cast<std::size_t>(j)];
                    assigned[k] = 1;
                    b_rem[static_cast<std::size_t>(j)] = 0;
                    a_rem[static_cast<std::size_t>(open[k].first)] -= flow[k];
                    ++done;
                    progress = true;
                }
            }
        }
        if (done < open.size()) return;  // contains a cycle, not a basis
        for (double f : flow)
            if (f < -1e-9) return;
        for (double rem : a_rem)
            if (std::fabs(rem) > 1e-9) return;
        for (double rem : b_rem)
            if (std::fabs(rem) > 1e-9) return;
        double total = 0.0;
        for (std::size_t k = 0; k < open.size(); ++k)
            total += std::max(0.0, flow[k]) *
                     cost[static_cast<std::size_t>(open[k].first)]
                         [static_cast<std::size_t>(open[k].second)];
        best = std::min(best, total);
    };
    auto rec = [&](auto&& self, int next) -> void {
        if (static_cast<int>(chosen.size()) == basis_size) {
            evaluate();
            return;
        }
        if (next >= cells) return;
        if (cells - next < basis_size - static_cast<int>(chosen.size())) return;
        chosen.push_back(next);
        self(self, next + 1);
        chosen.pop_back();
        self(self, next + 1);
    };
    rec(rec, 0);
    return best;
}

DiscreteMeasure random_measure(std::mt19937_64& rng, int space_size, int max_support) {
    std::uniform_int_distribution<int> size_pick(1, max_support);
    int k = std::min(size_pick(rng), space_size);
    std::vector<int> indices(static_cast<std::size_t>(space_size));
    for (int i = 0; i < space_size; ++i) indices[static_cast<std::size_t>(i)] = i;
    std::shuffle(indices.begin(), indices.end(), rng);
    indices.resize(static_cast<std::size_t>(k));
    std::uniform_real_distribution<double> uni(0.05, 1.0);
    std::vector<double> weights(static_cast<std::size_t>(k));
    double sum = 0.0;
    for (double& w : weights) {
        w = uni(rng);
        sum += w;
    }
    for (double& w : weights) w /= sum;
    return make_measure(std::move(indices), std::move(weights));
}

// Random vertex of the transportation polytope: repeatedly saturate a random
// eligible cell. Feasible by construction, so its cost bounds W1 from above.
TransportPlan random_feasible_plan(std::mt19937_64& rng, const DiscreteMeasure& mu,
                                   const DiscreteMeasure& nu,
                                   const std::vector<std::vector<double>>& cost) {
    std::vector<double> a = mu.weights, b = nu.weights;
    std::vector<std::tuple<int, int, double>> entries;
    while (true) {
        std::vector<std::pair<int, int>> eligible;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                if (a[i] > 1e-15 && b[j] > 1e-15)
                    eligible.emplace_back(static_cast<int>(i), static_cast<int>(j));
        if (eligible.empty()) break;
        auto [i, j] = eligible[rng() % eligible.size()];
        double f = std::min(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]);
        entries.emplace_back(i, j, f);
        a[static_cast<std::size_t>(i)] -= f;
        b[static_cast<std::size_t>(j)] -= f;
    }
    return make_plan(static_cast<int>(mu.size()), static_cast<int>(nu.size()), entries, cost);
}

}  // namespace

TEST_CASE("dirac isometry and identity") {
    std::mt19937_64 rng(201);
    auto space = oracles::random_euclidean_space(rng, 6);
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y)
            CHECK(w1_distance(dirac(x), dirac(y), space).value == space.d(x, y));

    auto mu = random_measure(rng, 6, 4);
    auto same = w1_distance(mu, mu, space);
    CHECK(same.value == 0.0);
    auto [rows, cols] = plan_marginals(same.plan);
    for (std::size_t i = 0; i < mu.size(); ++i) {
        CHECK(rows[i] == doctest::Approx(mu.weights[i]).epsilon(1e-12));
        CHECK(cols[i] == doctest::Approx(mu.weights[i]).epsilon(1e-12));
    }
}

TEST_CASE("splitting mass to both sides of a midpoint costs the gap") {
    auto space = from_distance_matrix({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, true);
    auto mu = make_measure({0, 2}, {0.5, 0.5});
    auto nu = dirac(1);
    CHECK(w1_distance(mu, nu, space).value == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("w1 is exactly symmetric and satisfies the triangle inequality") {
    std::mt19937_64 rng(203);
    for (int trial = 0; trial < 200; ++trial) {
        auto space = oracles::random_euclidean_space(rng, 7);
        auto mu = random_measure(rng, 7, 4);
        auto nu = random_measure(rng, 7, 4);
        auto rho = random_measure(rng, 7, 4);
        double ab = w1_distance(mu, nu, space).value;
        double ba = w1_distance(nu, mu, space).value;
        CHECK(ab == ba);  // bit identical by canonicalization
        double ac = w1_distance(mu, rho, space).value;
        double cb = w1_distance(rho, nu, space).value;
        CHECK(ab <= ac + cb + 1e-9);
    }
}

TEST_CASE("optimal value matches exhaustive vertex enumeration") {
    std::mt19937_64 rng(205);
    for (int trial = 0; trial < 120; ++trial) {
        auto space = oracles::random_euclidean_space(rng, 6);
        auto mu = random_measure(rng, 6, 3);
        auto nu = random_measure(rng, 6, 3);
        auto cost = cost_matrix(mu, nu, space);
        auto result = w1_from_cost(mu.weights, nu.weights, cost);
        double oracle = brute_w1(mu.weights, nu.weights, cost);
        CHECK(result.value == doctest::Approx(oracle).epsilon(1e-10));
        CHECK(result.value <= oracle + 1e-12);
    }
}

TEST_CASE("no random feasible plan beats the optimum") {
    std::mt19937_64 rng(207);
    auto space = oracles::random_euclidean_space(rng, 8);
    for (int instance = 0; instance < 10; ++instance) {
        auto mu = random_measure(rng, 8, 5);
        auto nu = random_measure(rng, 8, 5);
        auto cost = cost_matrix(mu, nu, space);
        double opt = w1_from_cost(mu.weights, nu.weights, cost).value;
        for (int probe = 0; probe < 100; ++probe) {
            auto plan = random_feasible_plan(rng, mu, nu, cost);
            CHECK(plan.cost >= opt - 1e-9);
            // mixtures of feasible plans stay feasible and can't beat it either
            auto other = random_feasible_plan(rng, mu, nu, cost);
            CHECK(0.5 * plan.cost + 0.5 * other.cost >= opt - 1e-9);
        }
    }
}

TEST_CASE("plan cost and marginals") {
    std::mt19937_64 space_rng(209);
    auto space = oracles::random_euclidean_space(space_rng, 5);
    auto mu = make_measure({0, 1}, {0.25, 0.75});
    auto nu = make_measure({2, 3}, {0.5, 0.5});
    auto cost = cost_matrix(mu, nu, space);

    auto empty = make_plan(2, 2, {}, cost);
    CHECK(empty.mass == 0.0);
    CHECK(plan_cost(empty, cost) == 0.0);

    auto diag_cost = cost_matrix(mu, mu, space);
    auto diag = make_plan(2, 2, {{0, 0, 0.25}, {1, 1, 0.75}}, diag_cost);
    CHECK(plan_cost(diag, diag_cost) == 0.0);
    auto [rows, cols] = plan_marginals(diag);
    CHECK(rows == mu.weights);
    CHECK(cols == mu.weights);

    // cost is linear in the plan
    std::mt19937_64 rng(211);
    for (int trial = 0; trial < 40; ++trial) {
        auto p1 = random_feasible_plan(rng, mu, nu, cost);
        auto p2 = random_feasible_plan(rng, mu, nu, cost);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        double lam = uni(rng);
        std::vector<std::tuple<int, int, double>> mixed;
        for (auto [i, j, f] : p1.entries) mixed.emplace_back(i, j, lam * f);
        for (auto [i, j, f] : p2.entries) mixed.emplace_back(i, j, (1 - lam) * f);
        auto mix = make_plan(2, 2, mixed, cost);
        CHECK(mix.cost ==
              doctest::Approx(lam * p1.cost + (1 - lam) * p2.cost).epsilon(1e-12));
    }
}

TEST_CASE("extending the empty plan gives the product plan") {
    std::mt19937_64 rng(213);
    auto space = oracles::random_euclidean_space(rng, 6);
    auto mu = random_measure(rng, 6, 3);
    auto nu = random_measure(rng, 6, 3);
    auto cost = cost_matrix(mu, nu, space);
    auto empty = make_plan(static_cast<int>(mu.size()), static_cast<int>(nu.size()), {}, cost);
    auto extended = extend_partial_plan(empty, mu, nu, space);
    for (auto [i, j, f] : extended.entries)
        CHECK(f == doctest::Approx(mu.weights[static_cast<std::size_t>(i)] *
                                   nu.weights[static_cast<std::size_t>(j)])
                       .epsilon(1e-12));
    CHECK(extended.mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-point extension example") {
    auto space = from_distance_matrix({{0, 1}, {1, 0}});
    auto mu = dirac(0);
    auto nu = make_measure({0, 1}, {0.5, 0.5});
    auto cost = cost_matrix(mu, nu, space);
    auto sigma = make_plan(1, 2, {{0, 0, 0.5}}, cost);
    auto extended = extend_partial_plan(sigma, mu, nu, space);
    REQUIRE(extended.entries.size() == 2);
    CHECK(std::get<2>(extended.entries[0]) == doctest::Approx(0.5));
    CHECK(std::get<2>(extended.entries[1]) == doctest::Approx(0.5));
    CHECK(extended.cost == doctest::Approx(0.5));  // = cost(sigma) + (1-mass)*diam
}

TEST_CASE("random partial plans extend to exact full plans within the cost bound") {
    std::mt19937_64 rng(217);
    std::uniform_real_distribution<double> scale(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        auto space = oracles::random_euclidean_space(rng, 7);
        auto mu = random_measure(rng, 7, 4);
        auto nu = random_measure(rng, 7, 4);
        auto cost = cost_matrix(mu, nu, space);
        auto optimal = w1_from_cost(mu.weights, nu.weights, cost).plan;
        std::vector<std::tuple<int, int, double>> scaled;
        for (auto [i, j, f] : optimal.entries) scaled.emplace_back(i, j, f * scale(rng));
        auto sigma = make_plan(optimal.rows, optimal.cols, scaled, cost);
        auto extended = extend_partial_plan(sigma, mu, nu, space);

        auto [rows, cols] = plan_marginals(extended);
        for (std::size_t i = 0; i < mu.size(); ++i)
            CHECK(std::fabs(rows[i] - mu.weights[i]) <= 1e-12);
        for (std::size_t j = 0; j < nu.size(); ++j)
            CHECK(std::fabs(cols[j] - nu.weights[j]) <= 1e-12);

        // entrywise >= sigma
        for (auto [i, j, f] : sigma.entries) {
            double found = 0.0;
            for (auto [ei, ej, ef] : extended.entries)
                if (ei == i && ej == j) found = ef;
            CHECK(found >= f - 1e-12);
        }

        std::vector<int> support_union = mu.support;
        support_union.insert(support_union.end(), nu.support.begin(), nu.support.end());
        double diam = diameter(space, support_union);
        CHECK(extended.cost <= sigma.cost + (1.0 - sigma.mass) * diam + 1e-9);
    }
}

TEST_CASE("transport error paths") {
    auto space = from_distance_matrix({{0, 1}, {1, 0}});
    auto mu = dirac(0);
    auto nu = make_measure({0, 1}, {0.5, 0.5});

    bool mismatch = false;
    try {
        w1_distance(make_measure({4}, {1.0}), nu, space);
    } catch (const Error& e) {
        mismatch = e.kind() == ErrorKind::MetricMismatch;
    }
    CHECK(mismatch);

    auto cost = cost_matrix(mu, nu, space);
    auto too_big = make_plan(1, 2, {{0, 0, 0.8}, {0, 1, 0.4}}, cost);
    bool not_partial = false;
    try {
        extend_partial_plan(too_big, mu, nu, space);
    } catch (const Error& e) {
        not_partial = e.kind() == ErrorKind::NotPartialPlan;
    }
    CHECK(not_partial);

    // full plans come back unchanged
    auto full = make_plan(1, 2, {{0, 0, 0.5}, {0, 1, 0.5}}, cost);
    auto same = extend_partial_plan(full, mu, nu, space);
    CHECK(same.entries == full.entries);
}
