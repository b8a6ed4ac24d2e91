#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "ordex/baselines.hpp"
#include "ordex/errors.hpp"
#include "ordex/synthgen.hpp"
#include "test_util.hpp"

using namespace ordex;

TEST_CASE("pearson matrix anchors") {
    const Dataset syn = gen_synergy(SynergyKind::asymmetric_cubic, 2000, 3, 0.05, 42);
    const MetricMatrix p = pearson_matrix(syn);
    CHECK(p.at(0, 0) == doctest::Approx(1.0));
    CHECK(std::fabs(p.at(0, 1)) < 0.1);
    CHECK(p.at(0, 1) == p.at(1, 0));

    const Dataset red = gen_redundancy(RedundancyKind::cubic, 2000, 3, 0.05, 42);
    CHECK(std::fabs(pearson_matrix(red).at(0, 1)) > 0.7);
}

TEST_CASE("pearson zeroes constant columns instead of dividing by zero") {
    Dataset ds = ordex::test::noise_dataset(3, 200, 3);
    for (auto& v : ds.columns[1]) v = 2.5;
    const MetricMatrix p = pearson_matrix(ds);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(p.at(1, j) == 0.0);
        CHECK(p.at(j, 1) == 0.0);
    }
    CHECK(p.at(0, 0) == 1.0);
}

TEST_CASE("mutual information of an identical pair is the binning ceiling") {
    // n chosen so every equal-frequency bin holds exactly n/B samples
    Dataset ds = ordex::test::noise_dataset(2, 2000, 4);
    ds.columns[1] = ds.columns[0];
    const MetricMatrix m = mutual_information_matrix(ds);
    CHECK(m.mi_bins == 20);
    CHECK(m.at(0, 1) == doctest::Approx(std::log2(20.0)).epsilon(1e-12));
    CHECK(m.at(0, 0) == doctest::Approx(std::log2(20.0)));
}

TEST_CASE("mutual information of independent normals reflects plug-in bias only") {
    const Dataset ds = ordex::test::noise_dataset(2, 5000, 6);
    const MetricMatrix m = mutual_information_matrix(ds);
    CHECK(m.mi_bins == 31);
    // Expected value of the plug-in estimate under independence is about
    // (B-1)^2 / (2 n ln 2) ~ 0.13 bits at this size; anything far above
    // signals a broken estimator, far below a broken histogram.
    CHECK(m.at(0, 1) > 0.05);
    CHECK(m.at(0, 1) < 0.25);
}

TEST_CASE("mutual information catches the square redundancy pearson misses") {
    const Dataset ds = gen_redundancy(RedundancyKind::square, 2000, 0, 0.0, 9);
    CHECK(std::fabs(pearson_matrix(ds).at(0, 1)) < 0.1);
    CHECK(mutual_information_matrix(ds).at(0, 1) > 1.0);
}

TEST_CASE("mutual information is symmetric, non-negative, and guarded") {
    const Dataset ds = ordex::test::noise_dataset(4, 300, 8);
    const MetricMatrix m = mutual_information_matrix(ds);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(m.at(i, j) >= 0.0);
            CHECK(m.at(i, j) == m.at(j, i));
        }
    CHECK_THROWS_AS(mutual_information_matrix(ordex::test::noise_dataset(2, 30, 1)),
                    InsufficientData);
}

namespace {

// all 2^n values of a seeded random game with v(empty) = 0
std::vector<double> random_game(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> v(1ULL << n);
    for (std::size_t m = 1; m < v.size(); ++m) v[m] = rng.normal();
    return v;
}

// Shapley values by direct permutation averaging (the n! definition).
std::vector<double> shapley_by_permutations(const std::vector<double>& game, std::size_t n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<double> phi(n, 0.0);
    std::size_t count = 0;
    do {
        std::uint64_t mask = 0;
        for (const int f : perm) {
            const std::uint64_t next = mask | (1ULL << f);
            phi[static_cast<std::size_t>(f)] += game[next] - game[mask];
            mask = next;
        }
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (auto& v : phi) v /= static_cast<double>(count);
    return phi;
}

}  // namespace

TEST_CASE("shapley values equal the permutation-average oracle for n <= 5") {
    for (const std::size_t n : {3UL, 4UL, 5UL}) {
        const auto game = random_game(n, 40 + n);
        const auto direct = shapley_values_game([&](std::uint64_t m) { return game[m]; }, n);
        const auto oracle = shapley_by_permutations(game, n);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(direct[i] == doctest::Approx(oracle[i]).epsilon(1e-9));
            sum += direct[i];
        }
        CHECK(sum == doctest::Approx(game.back()).epsilon(1e-9));  // efficiency
    }
}

TEST_CASE("a player that never changes the game has zero value") {
    // distractor-only stub: value depends only on players 0 and 1
    const auto v = [](std::uint64_t mask) {
        return ((mask & 1) != 0 ? 1.5 : 0.0) + ((mask & 2) != 0 ? 0.75 : 0.0);
    };
    const auto phi = shapley_values_game(v, 4);
    CHECK(phi[0] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(phi[1] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(std::fabs(phi[2]) <= 1e-12);
    CHECK(std::fabs(phi[3]) <= 1e-12);
}

TEST_CASE("additive games have identically zero interactions") {
    const double w[6] = {0.3, -1.2, 2.0, 0.05, 1.1, -0.4};
    const auto v = [&w](std::uint64_t mask) {
        double s = 0.0;
        for (int i = 0; i < 6; ++i)
            if (mask >> i & 1) s += w[i];
        return s;
    };
    const auto inter = shapley_interactions_game(v, 6);
    for (const double x : inter) CHECK(std::fabs(x) <= 1e-12);
}

TEST_CASE("interaction index agrees with an independently coded enumeration") {
    const std::size_t n = 5;
    const auto game = random_game(n, 99);

    // direct transcription: loop subsets of N\{i,j} by filtering all masks
    const auto fact = [](std::size_t k) {
        double f = 1;
        for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
        return f;
    };
    const auto oracle_pair = [&](std::size_t i, std::size_t j) {
        double total = 0.0;
        for (std::uint64_t mask = 0; mask < game.size(); ++mask) {
            if ((mask >> i & 1) || (mask >> j & 1)) continue;
            const auto s = static_cast<std::size_t>(__builtin_popcountll(mask));
            const double w = fact(s) * fact(n - s - 2) / (2.0 * fact(n - 1));
            total += w * (game[mask | (1ULL << i) | (1ULL << j)] - game[mask | (1ULL << i)] -
                          game[mask | (1ULL << j)] + game[mask]);
        }
        return total;
    };

    const auto inter = shapley_interactions_game([&](std::uint64_t m) { return game[m]; }, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            CHECK(inter[i * n + j] == doctest::Approx(oracle_pair(i, j)).epsilon(1e-12));
            CHECK(inter[i * n + j] == inter[j * n + i]);
        }
}

TEST_CASE("model-backed shapley baselines on the synthetic pairs") {
    const ModelSpec model{};
    const SplitSpec split{};

    const Dataset syn = gen_synergy(SynergyKind::multiplicative, 1000, 2, 0.05, 42);
    SubsetMseCache cache;
    const MetricMatrix values = shapley_values(syn, model, split, cache);
    const MetricMatrix inter = shapley_interaction_matrix(syn, model, split, cache);
    REQUIRE(values.is_vector);
    REQUIRE(values.values.size() == 4);

    // efficiency: values sum to v(full) = mse(empty) - mse(all)
    const SubsetEvaluator eval(syn, model, split);
    const double v_full = eval.evaluate(0) - eval.evaluate(0b1111);
    const double sum = std::accumulate(values.values.begin(), values.values.end(), 0.0);
    CHECK(sum == doctest::Approx(v_full).epsilon(1e-9));

    // the constructed pair carries the dominant interaction
    double best = 0.0;
    std::size_t best_i = 0, best_j = 0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (std::fabs(inter.at(i, j)) > best) {
                best = std::fabs(inter.at(i, j));
                best_i = i;
                best_j = j;
            }
    CHECK(best_i == 0);
    CHECK(best_j == 1);
    CHECK(inter.at(0, 1) > 0.0);  // synergy: complements

    CHECK_THROWS_AS(shapley_values(ordex::test::noise_dataset(13, 100, 5), model, split, cache),
                    CapacityError);
}

TEST_CASE("permuting feature columns permutes shapley values identically") {
    const Dataset base = gen_synergy(SynergyKind::multiplicative, 400, 1, 0.05, 17);
    Dataset permuted = base;
    std::swap(permuted.columns[0], permuted.columns[2]);
    std::swap(permuted.feature_names[0], permuted.feature_names[2]);

    SubsetMseCache c1, c2;
    const auto v1 = shapley_values(base, ModelSpec{}, SplitSpec{}, c1);
    const auto v2 = shapley_values(permuted, ModelSpec{}, SplitSpec{}, c2);
    CHECK(v2.values[2] == doctest::Approx(v1.values[0]).epsilon(1e-9));
    CHECK(v2.values[0] == doctest::Approx(v1.values[2]).epsilon(1e-9));
    CHECK(v2.values[1] == doctest::Approx(v1.values[1]).epsilon(1e-9));
}

TEST_CASE("metric csv export shape") {
    const Dataset ds = ordex::test::noise_dataset(3, 200, 12);
    const MetricMatrix p = pearson_matrix(ds);
    const auto path = std::filesystem::temp_directory_path() / "ordex_metric.csv";
    write_metric_csv(p, path);
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "x1,x2,x3");
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 3);
    std::filesystem::remove(path);
}
