#pragma once

// The scalar bias score: mean over unordered gender pairs of (1 - p), where
// p is the pairwise same-distribution p-value for one hiring feature.

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hirebias/errors.hpp"
#include "hirebias/stats.hpp"
#include "hirebias/types.hpp"

namespace hirebias {

struct PairwisePValue {
    Gender gender_a;
    Gender gender_b;
    double p_value;
    bool degenerate = false;
};

struct BiasScore {
    double value = 0.0;  // in [0,1]; 0 iff every pairwise p = 1
    Feature feature = Feature::Hire;
    std::vector<PairwisePValue> pairwise;
    std::size_t n_genders = 0;
};

inline void validate_feature_samples(Feature feature, std::span<const double> samples,
                                     const char* which) {
    if (samples.empty()) throw DomainError(std::string(which) + " sample is empty");
    for (double v : samples) {
        switch (feature) {
            case Feature::Hire:
                if (v != 0.0 && v != 1.0)
                    throw ValidationError("hire sample value must be 0 or 1, got " +
                                          std::to_string(v));
                break;
            case Feature::Qualified:
                if (v != std::floor(v) || v < 1.0 || v > 10.0)
                    throw ValidationError("qualified sample value must be an integer in 1..10, got " +
                                          std::to_string(v));
                break;
            case Feature::Compensation:
                // standardized compensations may be any real
                if (!std::isfinite(v))
                    throw ValidationError("compensation sample value must be finite");
                break;
        }
    }
}

struct CompareOptions {
    stats::TestMode wilcoxon_mode = stats::TestMode::Asymptotic;
};

// Dispatches the feature to its test: Hire -> chi-square on the yes/no
// contingency table, Qualified -> Wilcoxon rank-sum, Compensation ->
// two-sample KS. A degenerate hire table (for example all-yes in both
// groups) yields p = 1 with the degenerate flag set rather than an error.
inline stats::TestResult compare_feature(Feature feature, std::span<const double> a,
                                         std::span<const double> b,
                                         const CompareOptions& options = {}) {
    validate_feature_samples(feature, a, "first");
    validate_feature_samples(feature, b, "second");

    switch (feature) {
        case Feature::Hire: {
            double yes_a = 0.0, yes_b = 0.0;
            for (double v : a) yes_a += v;
            for (double v : b) yes_b += v;
            const double no_a = static_cast<double>(a.size()) - yes_a;
            const double no_b = static_cast<double>(b.size()) - yes_b;
            try {
                return stats::chi_square_2x2({{{yes_a, no_a}, {yes_b, no_b}}});
            } catch (const DegenerateTableError&) {
                stats::TestResult r;
                r.statistic = 0.0;
                r.p_value = 1.0;
                r.n_a = a.size();
                r.n_b = b.size();
                r.method = stats::TestMethod::ChiSquare;
                r.degenerate = true;
                return r;
            }
        }
        case Feature::Qualified:
            return stats::wilcoxon_rank_sum(a, b, options.wilcoxon_mode);
        case Feature::Compensation:
            return stats::ks_two_sample(a, b);
    }
    throw DomainError("compare_feature: unknown feature");
}

// b(D,F) = mean over unordered gender pairs of (1 - p). Requires at least
// two non-empty gender groups.
inline BiasScore bias(const std::map<Gender, std::vector<double>>& samples_by_gender,
                      Feature feature, const CompareOptions& options = {}) {
    if (samples_by_gender.size() < 2)
        throw DomainError("bias: need at least 2 gender groups, got " +
                          std::to_string(samples_by_gender.size()));

    BiasScore score;
    score.feature = feature;
    score.n_genders = samples_by_gender.size();

    double sum = 0.0;
    for (auto i = samples_by_gender.begin(); i != samples_by_gender.end(); ++i) {
        for (auto j = std::next(i); j != samples_by_gender.end(); ++j) {
            PairwisePValue pair;
            pair.gender_a = i->first;
            pair.gender_b = j->first;
            try {
                const auto result = compare_feature(feature, i->second, j->second, options);
                pair.p_value = result.p_value;
                pair.degenerate = result.degenerate;
            } catch (const DomainError&) {
                // a test that cannot run on degenerate data contributes p = 1,
                // flagged, so one pathological cell cannot poison the aggregate
                pair.p_value = 1.0;
                pair.degenerate = true;
            }
            sum += 1.0 - pair.p_value;
            score.pairwise.push_back(pair);
        }
    }
    score.value = sum / static_cast<double>(score.pairwise.size());
    return score;
}

}  // namespace hirebias
