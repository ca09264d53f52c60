#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include "antirips/metric_space.hpp"
#include "oracles.hpp"

using namespace antirips;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool throws_kind(ErrorKind kind, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}
}  // namespace

TEST_CASE("from_distance_matrix basics") {
    auto single = from_distance_matrix({{0.0}});
    CHECK(single.size() == 1);
    CHECK(diameter_all(single) == 0.0);

    auto pair = from_distance_matrix({{0, 1}, {1, 0}});
    CHECK(pair.d(0, 1) == 1.0);
    CHECK(diameter_all(pair) == 1.0);

    auto tri = from_distance_matrix({{0, 1, 3}, {1, 0, 2}, {3, 2, 0}}, true);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) CHECK(tri.d(i, k) <= tri.d(i, j) + tri.d(j, k) + 1e-9);

    CHECK(throws_kind(ErrorKind::TriangleViolation, [] {
        from_distance_matrix({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}, true);
    }));
    CHECK(throws_kind(ErrorKind::NonSymmetric, [] {
        from_distance_matrix({{0, 1}, {1.1, 0}});
    }));
    CHECK(throws_kind(ErrorKind::NegativeEntry, [] {
        from_distance_matrix({{0, -1}, {-1, 0}});
    }));
    // deviations below 1e-9 are repaired by averaging
    auto repaired = from_distance_matrix({{0, 1.0 + 4e-10}, {1.0, 0}});
    CHECK(repaired.d(0, 1) == repaired.d(1, 0));
    CHECK(repaired.d(0, 1) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("from_similarity_matrix modes") {
    auto identity_like = from_similarity_matrix({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}},
                                                SimilarityMode::MaxMinus);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(identity_like.d(i, j) == 0.0);

    auto recip = from_similarity_matrix({{1, 0.5}, {0.5, 1}}, SimilarityMode::Reciprocal);
    CHECK(recip.d(0, 1) == doctest::Approx(2.0));
    CHECK(recip.d(0, 0) == 0.0);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 3.0);
    std::vector<std::vector<double>> sim(4, std::vector<double>(4, 0.0));
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) sim[i][j] = sim[j][i] = uni(rng);
    auto expneg = from_similarity_matrix(sim, SimilarityMode::ExpNegative);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j)
                CHECK(expneg.d(i, j) == 0.0);
            else
                CHECK(expneg.d(i, j) == doctest::Approx(std::exp(-sim[i][j])).epsilon(1e-15));
        }

    CHECK(throws_kind(ErrorKind::ZeroSimilarity, [] {
        from_similarity_matrix({{1, 0}, {0, 1}}, SimilarityMode::Reciprocal);
    }));
}

TEST_CASE("sample_sphere circle and fibonacci") {
    auto four = sample_sphere(1, 4, SphereSampling::Evenly);
    CHECK(four.d(0, 2) == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(four.d(1, 3) == doctest::Approx(kPi).epsilon(1e-12));

    auto three = sample_sphere(1, 3, SphereSampling::Evenly);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            CHECK(three.d(i, j) == doctest::Approx(kTwoPi / 3).epsilon(1e-12));

    auto fib = sample_sphere(2, 200, SphereSampling::Fibonacci, 7);
    CHECK(spread_all(fib) > 0.0);
    for (const auto& p : fib.ambient) {
        double norm = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        CHECK(std::fabs(norm - 1.0) <= 1e-12);
    }

    CHECK(throws_kind(ErrorKind::MethodDimensionMismatch,
                      [] { sample_sphere(2, 8, SphereSampling::Evenly); }));
    CHECK(throws_kind(ErrorKind::MethodDimensionMismatch,
                      [] { sample_sphere(1, 8, SphereSampling::Fibonacci); }));

    auto a = sample_sphere(3, 20, SphereSampling::UniformRandom, 5);
    auto b = sample_sphere(3, 20, SphereSampling::UniformRandom, 5);
    CHECK(a.dist == b.dist);  // deterministic given seed
}

TEST_CASE("evenly spaced distances match the analytic multiset") {
    for (int n : {5, 8, 13}) {
        auto space = sample_sphere(1, n, SphereSampling::Evenly);
        std::multiset<double> got, want;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                got.insert(std::round(space.d(i, j) * 1e9));
                int k = std::min(j - i, n - (j - i));
                want.insert(std::round(kTwoPi * k / n * 1e9));
            }
        CHECK(got == want);
    }
}

TEST_CASE("spread and diameter") {
    auto space = sample_sphere(1, 3, SphereSampling::Evenly);
    std::vector<int> singleton{1};
    CHECK(spread(space, singleton) == std::numeric_limits<double>::infinity());
    CHECK(diameter(space, singleton) == 0.0);
    std::vector<int> all{0, 1, 2};
    CHECK(spread(space, all) == doctest::Approx(kTwoPi / 3).epsilon(1e-12));

    auto antipodal = sample_sphere(1, 2, SphereSampling::Evenly);
    std::vector<int> both{0, 1};
    CHECK(diameter(antipodal, both) == doctest::Approx(kPi).epsilon(1e-12));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto random = oracles::random_space(rng, 6);
        std::vector<int> subset{0, 1, 2, 3, 4, 5};
        CHECK(spread(random, subset) == oracles::brute_spread(random, subset));
        std::vector<int> five{0, 1, 2, 3, 4};
        CHECK(diameter(random, five) == oracles::brute_diameter(random, five));
    }

    CHECK(throws_kind(ErrorKind::EmptySubset, [&] { spread(space, {}); }));
    CHECK(throws_kind(ErrorKind::EmptySubset, [&] { diameter(space, {}); }));

    // spread is non-increasing under supersets, and spread <= diameter
    std::mt19937_64 rng2(4);
    auto random = oracles::random_space(rng2, 8);
    std::vector<int> small{0, 2, 4};
    std::vector<int> large{0, 1, 2, 3, 4, 5};
    CHECK(spread(random, large) <= spread(random, small));
    CHECK(spread(random, large) <= diameter(random, large));
}

TEST_CASE("packing numbers") {
    auto grid = sample_sphere(1, 360, SphereSampling::Evenly);
    CHECK(packing_number_exact(grid, 2.5, 360) == 2);  // p = 2 on (2pi/3, pi)
    CHECK(packing_number_greedy(grid, 2.5) == 2);

    auto three = sample_sphere(1, 3, SphereSampling::Evenly);
    CHECK(packing_number_exact(three, kTwoPi / 3) == 3);  // >= convention keeps all pairs

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 12; ++trial) {
        auto random = oracles::random_space(rng, 10);
        std::uniform_real_distribution<double> uni(0.2, 2.2);
        double r = uni(rng);
        int exact = packing_number_exact(random, r);
        CHECK(exact == oracles::brute_packing(random, r));
        CHECK(packing_number_greedy(random, r) <= exact);
    }

    auto pair = from_distance_matrix({{0, 1}, {1, 0}});
    CHECK(packing_number_greedy(pair, 2.0) == 1);  // r beyond the diameter
    CHECK(packing_number_exact(pair, 2.0) == 1);
    CHECK(packing_number_exact(pair, 1.0) == 2);  // r at the min positive distance

    CHECK(throws_kind(ErrorKind::SizeLimitExceeded,
                      [&] { packing_number_exact(grid, 2.5, 64); }));
}

TEST_CASE("packing monotone in r") {
    std::mt19937_64 rng(21);
    auto random = oracles::random_space(rng, 9);
    double prev = 1e9;
    for (double r : {0.2, 0.5, 0.9, 1.4, 1.9, 2.4}) {
        double cur = packing_number_exact(random, r);
        CHECK(cur <= prev);
        prev = cur;
    }
}

TEST_CASE("epsilon nets") {
    auto grid = sample_sphere(1, 8, SphereSampling::Evenly);
    auto whole = epsilon_net(grid, 4.0);  // eps beyond the diameter
    CHECK(whole == std::vector<int>{0});

    auto net = epsilon_net(grid, kPi / 2);
    CHECK(net.size() >= 2);
    for (int i = 0; i < grid.size(); ++i) {
        double mind = std::numeric_limits<double>::infinity();
        for (int x : net) mind = std::min(mind, grid.d(i, x));
        CHECK(mind < kPi / 2);
    }

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        auto random = oracles::random_space(rng, 12);
        double eps = 0.3 + 0.1 * trial;
        auto f = epsilon_net(random, eps);
        for (int i = 0; i < random.size(); ++i) {
            double mind = std::numeric_limits<double>::infinity();
            for (int x : f) mind = std::min(mind, random.d(i, x));
            CHECK(mind < eps);
        }
        // FPS nets are themselves eps-separated
        for (std::size_t a = 0; a < f.size(); ++a)
            for (std::size_t b = a + 1; b < f.size(); ++b)
                CHECK(random.d(f[a], f[b]) >= eps);
    }
}

TEST_CASE("simplex constants") {
    auto c1 = simplex_constants(1);
    CHECK(std::fabs(c1.r_n - kTwoPi / 3) <= 1e-12);
    CHECK(std::fabs(c1.s_n - kTwoPi / 3) <= 1e-12);

    auto c2 = simplex_constants(2);
    CHECK(c2.r_n == doctest::Approx(std::acos(-1.0 / 3.0)).epsilon(1e-15));
    CHECK(c2.r_n == doctest::Approx(1.9106332362490186).epsilon(1e-12));
    CHECK(c2.s_n == doctest::Approx(std::acos(-std::sqrt(2.0 / 6.0))).epsilon(1e-15));
    // the closed form evaluates to ~2.1862760, confirmed below by the
    // tetrahedron vertex-to-opposite-edge-midpoint geodesic
    CHECK(c2.s_n == doctest::Approx(2.1862760354652844).epsilon(1e-12));
    CHECK(c2.r_n < c2.s_n);

    // s_n climbs towards pi while r_n falls towards pi/2
    double prev_s = 0.0, prev_r = 10.0;
    for (int n = 1; n <= 100; ++n) {
        auto c = simplex_constants(n);
        CHECK(c.s_n > prev_s);
        CHECK(c.r_n < prev_r);
        CHECK(c.r_n > kPi / 2);
        if (n >= 2) CHECK(c.r_n < c.s_n);
        prev_s = c.s_n;
        prev_r = c.r_n;
    }
}

TEST_CASE("s_2 matches a direct geometric oracle") {
    double inv = 1.0 / std::sqrt(3.0);
    std::vector<std::vector<double>> v{{inv, inv, inv},
                                       {inv, -inv, -inv},
                                       {-inv, inv, -inv},
                                       {-inv, -inv, inv}};
    std::vector<double> mid(3);
    double norm = 0.0;
    for (int k = 0; k < 3; ++k) {
        mid[k] = v[1][k] + v[2][k];
        norm += mid[k] * mid[k];
    }
    norm = std::sqrt(norm);
    double dot = 0.0;
    for (int k = 0; k < 3; ++k) dot += (mid[k] / norm) * v[3][k];
    CHECK(simplex_constants(2).s_n == doctest::Approx(std::acos(dot)).epsilon(1e-12));
}

TEST_CASE("graph metric") {
    auto p3 = graph_metric(path_graph(3));
    CHECK(p3.d(0, 2) == 2.0);
    auto c6 = graph_metric(cycle_graph(6));
    CHECK(c6.d(0, 3) == 3.0);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = oracles::random_connected_graph(rng, 8, 0.3);
        auto space = graph_metric(g);
        auto fw = oracles::floyd_warshall(g);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) CHECK(space.d(i, j) == fw[i][j]);
    }

    CHECK(throws_kind(ErrorKind::DisconnectedGraph,
                      [] { graph_metric(Graph(4, {{0, 1}, {2, 3}})); }));
}

TEST_CASE("csv round trips are bit exact") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "antirips_test_csv";
    fs::create_directories(dir);

    std::mt19937_64 rng(23);
    auto space = oracles::random_space(rng, 7);
    auto path = (dir / "dist.csv").string();
    write_distance_csv(space, path);
    auto back = read_distance_csv(path);
    CHECK(back.dist == space.dist);
    CHECK(back.labels == space.labels);

    auto sphere = sample_sphere(2, 25, SphereSampling::Fibonacci);
    auto ppath = (dir / "points.csv").string();
    write_points_csv(sphere.ambient, ppath);
    auto pts = read_points_csv(ppath);
    CHECK(pts == sphere.ambient);

    auto bare = (dir / "bare.csv").string();
    write_distance_csv(space, bare, false);
    CHECK(read_distance_csv(bare).dist == space.dist);
}

TEST_CASE("validate checks ambient consistency") {
    auto sphere = sample_sphere(2, 30, SphereSampling::Fibonacci);
    sphere.validate();
    sphere.dist[1] += 1e-6;
    sphere.dist[static_cast<std::size_t>(sphere.size())] += 1e-6;
    CHECK_THROWS_AS(sphere.validate(), Error);
}
