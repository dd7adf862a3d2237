#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "sch/errors.hpp"
#include "sch/noise.hpp"

using namespace sch;

TEST_CASE("increments are a pure function of (seed, path, step)") {
    const NoisePlan plan{42, 6, 1e-3, 100, 10};
    const auto a = sample_increments(plan, 3, 17);
    const auto b = sample_increments(plan, 3, 17);
    CHECK(a.increments == b.increments);  // bit-identical

    const auto c = sample_increments(plan, 4, 17);
    CHECK(a.increments != c.increments);
    const auto d = sample_increments(plan, 3, 18);
    CHECK(a.increments != d.increments);

    NoisePlan other = plan;
    other.master_seed = 43;
    CHECK(sample_increments(other, 3, 17).increments != a.increments);

    CHECK_THROWS_AS(sample_increments(plan, 10, 0), ConfigError);
    CHECK_THROWS_AS(sample_increments(plan, 0, 100), ConfigError);
}

TEST_CASE("generation order and batching do not matter") {
    const NoisePlan plan{123, 8, 0.01, 50, 4};
    // regenerate single modes out of order and compare against batch output
    std::vector<std::pair<int, int>> cells;
    for (int p = 0; p < 4; ++p)
        for (int s = 0; s < 50; s += 7) cells.emplace_back(p, s);
    std::mt19937_64 shuffler(5);
    std::shuffle(cells.begin(), cells.end(), shuffler);
    for (auto [p, s] : cells) {
        const auto batch = sample_increments(plan, p, s);
        for (int k = 1; k <= plan.K; ++k) {
            const double z = detail::standard_normal_at(plan.master_seed, p, s, k);
            CHECK(batch.increments[k - 1] == z * std::sqrt(plan.dt));
        }
    }
}

TEST_CASE("marginal statistics: mean, variance, cross-mode covariance") {
    const double dt = 0.02;
    const int n = 100000;
    const NoisePlan plan{2024, 4, dt, n, 1};
    double s1 = 0.0, s1sq = 0.0, s12 = 0.0, s13 = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto w = sample_increments(plan, 0, i);
        s1 += w.increments[0];
        s1sq += w.increments[0] * w.increments[0];
        s12 += w.increments[0] * w.increments[1];
        s13 += w.increments[0] * w.increments[2];
    }
    const double mean = s1 / n;
    const double var = s1sq / n;
    // CLT band for the mean: 4 sqrt(dt/n)
    CHECK(std::abs(mean) <= 4.0 * std::sqrt(dt / n));
    // chi^2 concentration: relative 4 sigma = 4 sqrt(2/n) < 5%
    CHECK(std::abs(var / dt - 1.0) <= 4.0 * std::sqrt(2.0 / n));
    // distinct modes decorrelated within 4 sigma (sd of the product mean = dt/sqrt(n))
    CHECK(std::abs(s12 / n) <= 4.0 * dt / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(s13 / n) <= 4.0 * dt / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("restrict_modes is the coupling prefix") {
    const NoisePlan plan{9, 5, 0.5, 10, 2};
    const auto w = sample_increments(plan, 1, 3);
    const auto same = restrict_modes(w, 5);
    CHECK(same.increments == w.increments);

    const auto one = restrict_modes(w, 1);
    CHECK(one.K == 1);
    CHECK(one.increments.size() == 1);
    CHECK(one.increments[0] == w.increments[0]);
    CHECK(one.dt == w.dt);

    // coupling property: the restriction equals the prefix of a fresh draw
    const auto again = sample_increments(plan, 1, 3);
    const auto r3 = restrict_modes(again, 3);
    for (int k = 0; k < 3; ++k) CHECK(r3.increments[k] == w.increments[k]);

    CHECK_THROWS_AS(restrict_modes(w, 6), ConfigError);
}

TEST_CASE("mode increments agree across plan widths (resolution coupling)") {
    // Runs at different truncation share the driving path: plan K only sets
    // how many modes are materialized, not their values.
    const NoisePlan narrow{77, 8, 1e-2, 20, 3};
    const NoisePlan wide{77, 32, 1e-2, 20, 3};
    for (int s = 0; s < 20; s += 5) {
        const auto a = sample_increments(narrow, 2, s);
        const auto b = sample_increments(wide, 2, s);
        for (int k = 0; k < 8; ++k) CHECK(a.increments[k] == b.increments[k]);
    }
}
