#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "antirips/complexes.hpp"
#include "antirips/homology.hpp"
#include "antirips/metric_space.hpp"
#include "oracles.hpp"

using namespace antirips;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("betti numbers of small complexes") {
    auto three = sample_sphere(1, 3, SphereSampling::Evenly);
    auto full = avr_complex(three, kTwoPi / 3, 3);
    CHECK(betti_numbers(full, 2) == std::vector<int>{1, 0, 0});

    auto four = sample_sphere(1, 4, SphereSampling::Evenly);
    auto pairs = avr_complex(four, kPi, 3);
    CHECK(betti_numbers(pairs, 1) == std::vector<int>{2, 0});

    // boundary of a tetrahedron: all proper faces of K4, no 3-cell
    auto boundary = clique_complex(complete_graph(4), 2);
    boundary.dim_cap = 3;
    CHECK(betti_numbers(boundary, 2) == std::vector<int>{1, 0, 1});

    auto c6 = clique_complex(cycle_graph(6), 2);
    CHECK(betti_numbers(c6, 1) == std::vector<int>{1, 1});
}

TEST_CASE("naive betti baseline cases") {
    auto edgeless = clique_complex(Graph(5, {}), 2);
    CHECK(betti_numbers_naive(edgeless, 1) == std::vector<int>{5, 0});

    auto single_edge = clique_complex(Graph(2, {{0, 1}}), 2);
    CHECK(betti_numbers_naive(single_edge, 1) == std::vector<int>{1, 0});

    auto big = clique_complex(complete_graph(12), 8);
    CHECK_THROWS_AS(betti_numbers_naive(big, 2, 100), Error);
}

TEST_CASE("betti agrees with the naive elimination on random complexes") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> uni(0.4, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        auto space = oracles::random_space(rng, 4 + static_cast<int>(rng() % 7));
        double r = uni(rng);
        auto complex = avr_complex(space, r, 5);
        auto fast = betti_numbers(complex, 3);
        auto slow = betti_numbers_naive(complex, 3, 5000);
        CHECK(fast == slow);
    }
}

TEST_CASE("dim cap guards") {
    auto four = sample_sphere(1, 4, SphereSampling::Evenly);
    auto complex = avr_complex(four, kPi, 2);
    CHECK_THROWS_AS(betti_numbers(complex, 2), Error);
    CHECK_THROWS_AS(anti_persistence(anti_filtration(four, 2, ComplexFlavor::Avr), 2), Error);
}

TEST_CASE("anti persistence of the three-point line") {
    auto space = from_distance_matrix({{0, 1, 3}, {1, 0, 2}, {3, 2, 0}});
    auto filtered = anti_filtration(space, 4, ComplexFlavor::Avr);
    auto barcode = anti_persistence(filtered, 2);

    // three components at large scale, merging at r = 3 and r = 2
    std::vector<BarInterval> h0;
    for (const auto& bar : barcode.intervals)
        if (bar.dim == 0) h0.push_back(bar);
    REQUIRE(h0.size() == 3);
    CHECK(h0[0].birth == kInf);
    CHECK(h0[1].birth == kInf);
    CHECK(h0[2].birth == kInf);
    CHECK(h0[0].death == doctest::Approx(3.0));
    CHECK(h0[1].death == doctest::Approx(2.0));
    CHECK(h0[2].death == -kInf);

    CHECK(bars_alive_at(barcode, 0, 3.5) == 3);
    CHECK(bars_alive_at(barcode, 0, 2.5) == 2);
    CHECK(bars_alive_at(barcode, 0, 1.5) == 1);
    CHECK(bars_alive_at(barcode, 0, 0.5) == 1);
    for (const auto& bar : barcode.intervals) CHECK(bar.dim == 0);  // no 1-cycles survive
}

TEST_CASE("slice consistency of barcodes") {
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> uni(0.1, 2.4);
    for (int trial = 0; trial < 50; ++trial) {
        auto space = oracles::random_space(rng, 4 + static_cast<int>(rng() % 5));
        auto filtered = anti_filtration(space, 4, ComplexFlavor::Avr);
        auto barcode = anti_persistence(filtered, 2);
        for (int probe = 0; probe < 5; ++probe) {
            double r = uni(rng);
            bool near_value = false;
            for (const auto& s : filtered.simplices)
                if (std::isfinite(s.value) && std::fabs(s.value - r) < 1e-9) near_value = true;
            if (near_value) continue;
            auto betti = betti_numbers(slice_at(filtered, r), 2);
            for (int dim = 0; dim <= 2; ++dim)
                CHECK(bars_alive_at(barcode, dim, r) == betti[static_cast<std::size_t>(dim)]);
        }
    }
}

TEST_CASE("cones have trivial higher homology at every slice") {
    auto space = from_distance_matrix({{0.0, 0.2, 0.4, 2.0},
                                       {0.2, 0.0, 0.2, 2.1},
                                       {0.4, 0.2, 0.0, 2.2},
                                       {2.0, 2.1, 2.2, 0.0}});
    auto filtered = anti_filtration(space, 4, ComplexFlavor::Avr);
    auto barcode = anti_persistence(filtered, 2);
    for (double r : {0.1, 0.3, 0.7, 1.5, 2.05, 2.15}) {
        CHECK(bars_alive_at(barcode, 1, r) == 0);
        CHECK(bars_alive_at(barcode, 2, r) == 0);
    }
}

TEST_CASE("barcode is invariant under relabeling") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 6;
        auto space = oracles::random_space(rng, n);
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::vector<double>> permuted(static_cast<std::size_t>(n),
                                                  std::vector<double>(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                permuted[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]
                        [static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])] =
                            space.d(i, j);
        auto relabeled = from_distance_matrix(permuted);
        auto a = anti_persistence(anti_filtration(space, 4, ComplexFlavor::Avr), 2);
        auto b = anti_persistence(anti_filtration(relabeled, 4, ComplexFlavor::Avr), 2);
        REQUIRE(a.intervals.size() == b.intervals.size());
        for (std::size_t k = 0; k < a.intervals.size(); ++k) {
            CHECK(a.intervals[k].dim == b.intervals[k].dim);
            CHECK(a.intervals[k].birth == b.intervals[k].birth);
            CHECK(a.intervals[k].death == b.intervals[k].death);
        }
    }
}

TEST_CASE("euler characteristic equals the alternating betti sum") {
    std::mt19937_64 rng(109);
    std::uniform_real_distribution<double> uni(0.4, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        auto space = oracles::random_space(rng, 7);
        auto complex = avr_complex(space, uni(rng), 7);  // cap above any possible dim
        auto betti = betti_numbers(complex, 6);
        long long chi = 0;
        for (int k = 0; k <= 6; ++k)
            chi += (k % 2 == 0) ? betti[static_cast<std::size_t>(k)]
                                : -betti[static_cast<std::size_t>(k)];
        CHECK(chi == euler_characteristic(complex));
    }
}

TEST_CASE("invalid filtrations are rejected by persistence") {
    FilteredComplex bad;
    bad.n_vertices = 2;
    bad.dim_cap = 3;
    bad.simplices = {{{0}, kInf}, {{0, 1}, 2.0}, {{1}, 1.0}};
    bool caught = false;
    try {
        anti_persistence(bad, 1);
    } catch (const Error& e) {
        caught = e.kind() == ErrorKind::InvalidFiltrationOrder;
    }
    CHECK(caught);
}

TEST_CASE("barcode json and csv round trips") {
    auto space = from_distance_matrix({{0, 1, 3}, {1, 0, 2}, {3, 2, 0}});
    auto barcode = anti_persistence(anti_filtration(space, 4, ComplexFlavor::Avr), 2);
    auto back = barcode_from_json(barcode_to_json(barcode));
    REQUIRE(back.intervals.size() == barcode.intervals.size());
    for (std::size_t k = 0; k < back.intervals.size(); ++k) {
        CHECK(back.intervals[k].dim == barcode.intervals[k].dim);
        CHECK(back.intervals[k].birth == barcode.intervals[k].birth);
        CHECK(back.intervals[k].death == barcode.intervals[k].death);
    }
    auto csv = barcode_to_csv(barcode);
    CHECK(csv.find("dim,birth,death") == 0);
    CHECK(csv.find("inf") != std::string::npos);
}

TEST_CASE("tavr persistence slices match tavr betti numbers") {
    std::mt19937_64 rng(113);
    std::uniform_real_distribution<double> uni(0.1, 2.2);
    for (int trial = 0; trial < 10; ++trial) {
        auto space = oracles::random_space(rng, 6);
        auto filtered = anti_filtration(space, 4, ComplexFlavor::Tavr);
        auto barcode = anti_persistence(filtered, 2);
        for (int probe = 0; probe < 4; ++probe) {
            double r = uni(rng);
            bool near_value = false;
            for (const auto& s : filtered.simplices)
                if (std::isfinite(s.value) && std::fabs(s.value - r) < 1e-9) near_value = true;
            if (near_value) continue;
            auto betti = betti_numbers(slice_at(filtered, r), 2);
            for (int dim = 0; dim <= 2; ++dim)
                CHECK(bars_alive_at(barcode, dim, r) == betti[static_cast<std::size_t>(dim)]);
        }
    }
}
