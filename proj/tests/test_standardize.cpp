#include <catch2/catch_amalgamated.hpp>

#include "hirebias/standardize.hpp"

#include <vector>

#include "test_support.hpp"

using namespace hirebias;
using Catch::Matchers::WithinAbs;

TEST_CASE("pooled_sigma", "[standardize]") {
    CHECK(pooled_sigma(std::vector<double>{3.0, 3.0, 3.0}) == 3.0);
    CHECK_THAT(pooled_sigma(std::vector<double>{10000.0, 0.0}), WithinAbs(7071.0678, 1e-3));
    CHECK(pooled_sigma(std::vector<double>{0.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(pooled_sigma(std::vector<double>{}), DomainError);
}

TEST_CASE("standardize", "[standardize]") {
    SECTION("worked example") {
        CompensationGroup g;
        g.resume_id = "r1";
        g.by_gender[Gender::Female] = {90000, 110000};
        g.by_gender[Gender::Male] = {100000, 100000};
        auto s = standardize(g);
        CHECK(s.mean == 100000.0);
        CHECK_THAT(s.pooled_std, WithinAbs(7071.0678, 1e-3));
        CHECK_THAT(s.by_gender[Gender::Female][0], WithinAbs(-1.41421, 1e-4));
        CHECK_THAT(s.by_gender[Gender::Female][1], WithinAbs(1.41421, 1e-4));
        CHECK(s.by_gender[Gender::Male][0] == 0.0);
        CHECK_FALSE(s.degenerate);
    }

    SECTION("all values equal is degenerate, outputs zero") {
        CompensationGroup g;
        g.resume_id = "r2";
        g.by_gender[Gender::Female] = {80000, 80000};
        g.by_gender[Gender::Male] = {80000};
        auto s = standardize(g);
        CHECK(s.degenerate);
        for (const auto& [gender, values] : s.by_gender)
            for (double v : values) CHECK(v == 0.0);
    }

    SECTION("scale invariance") {
        testsupport::Rng rng(17);
        CompensationGroup g;
        g.resume_id = "r3";
        g.by_gender[Gender::Female] = rng.uniform_vector(6, 50000, 90000);
        g.by_gender[Gender::Male] = rng.uniform_vector(7, 50000, 90000);
        auto base = standardize(g);

        CompensationGroup tripled = g;
        for (auto& [gender, values] : tripled.by_gender)
            for (double& v : values) v *= 3.0;
        auto scaled = standardize(tripled);
        for (const auto& [gender, values] : base.by_gender) {
            for (std::size_t i = 0; i < values.size(); ++i) {
                CHECK_THAT(scaled.by_gender.at(gender)[i], WithinAbs(values[i], 1e-12));
            }
        }
    }

    SECTION("standardized values have zero overall mean") {
        testsupport::Rng rng(29);
        CompensationGroup g;
        g.resume_id = "r4";
        g.by_gender[Gender::Female] = rng.uniform_vector(9, 40000, 200000);
        g.by_gender[Gender::Male] = rng.uniform_vector(4, 40000, 200000);
        g.by_gender[Gender::NonBinary] = rng.uniform_vector(6, 40000, 200000);
        auto s = standardize(g);
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& [gender, values] : s.by_gender) {
            for (double v : values) sum += v;
            count += values.size();
        }
        CHECK_THAT(sum / static_cast<double>(count), WithinAbs(0.0, 1e-9));
    }

    SECTION("identical multisets per gender standardize to mean 0 std 1") {
        testsupport::Rng rng(31);
        auto shared = rng.uniform_vector(8, 60000, 140000);
        CompensationGroup g;
        g.resume_id = "r5";
        g.by_gender[Gender::Female] = shared;
        g.by_gender[Gender::Male] = shared;
        auto s = standardize(g);
        for (const auto& [gender, values] : s.by_gender) {
            double mean = 0.0;
            for (double v : values) mean += v;
            mean /= static_cast<double>(values.size());
            CHECK_THAT(mean, WithinAbs(0.0, 1e-9));
            CHECK_THAT(population_std(values), WithinAbs(1.0, 1e-9));
        }
    }

    SECTION("empty gender group") {
        CompensationGroup g;
        g.resume_id = "r6";
        g.by_gender[Gender::Female] = {};
        g.by_gender[Gender::Male] = {1.0};
        CHECK_THROWS_AS(standardize(g), DomainError);
        CompensationGroup none;
        none.resume_id = "r7";
        CHECK_THROWS_AS(standardize(none), DomainError);
    }
}
