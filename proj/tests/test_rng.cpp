#include <doctest.h>

#include <cmath>
#include <vector>

#include "ordex/rng.hpp"

using namespace ordex;

TEST_CASE("identical seeds give identical streams") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_u64() == b.next_u64());
        CHECK(a.normal() == b.normal());
    }
    Rng c(43);
    CHECK(c.next_u64() != Rng(42).next_u64());
}

TEST_CASE("derived streams differ per index") {
    CHECK(derive_stream(7, 0) != derive_stream(7, 1));
    CHECK(derive_stream(7, 0) != derive_stream(8, 0));
    CHECK(derive_stream(7, 3) == derive_stream(7, 3));
}

TEST_CASE("normal deviates have roughly standard moments") {
    Rng rng(1);
    const int n = 200000;
    double s = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        s += x;
        sq += x * x;
    }
    const double mean = s / n;
    const double var = sq / n - mean * mean;
    CHECK(std::fabs(mean) < 0.01);
    CHECK(std::fabs(var - 1.0) < 0.02);
}

TEST_CASE("below(n) is in range and roughly uniform") {
    Rng rng(5);
    std::vector<int> counts(10, 0);
    for (int i = 0; i < 100000; ++i) {
        const auto v = rng.below(10);
        REQUIRE(v < 10);
        ++counts[static_cast<std::size_t>(v)];
    }
    for (const int c : counts) CHECK(std::fabs(c - 10000.0) < 500.0);
}
