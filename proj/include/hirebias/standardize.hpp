#pragma once

// Per-resume standardization of compensation. Salaries from different roles
// live on very different scales, so each value is recentred by the resume's
// mean over all outcomes and rescaled by the root-mean-square of the
// per-gender standard deviations.

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hirebias/errors.hpp"
#include "hirebias/types.hpp"

namespace hirebias {

struct CompensationGroup {
    std::string resume_id;
    std::map<Gender, std::vector<double>> by_gender;
};

struct StandardizedGroup {
    std::string resume_id;
    std::map<Gender, std::vector<double>> by_gender;
    double mean = 0.0;        // A_r: mean of the union of all gender groups
    double pooled_std = 0.0;  // sigma_r
    bool degenerate = false;  // sigma_r == 0; all outputs forced to 0
};

// Population standard deviation (divide by n); keeps sigma well-defined for
// single-element groups.
inline double population_std(std::span<const double> values) {
    if (values.empty()) throw DomainError("population_std: empty sample");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size()));
}

// sigma_r = sqrt(mean of squared per-gender standard deviations)
inline double pooled_sigma(std::span<const double> stds_by_gender) {
    if (stds_by_gender.empty()) throw DomainError("pooled_sigma: empty list");
    double sum_sq = 0.0;
    for (double s : stds_by_gender) sum_sq += s * s;
    return std::sqrt(sum_sq / static_cast<double>(stds_by_gender.size()));
}

// Maps every compensation C to (C - A_r) / sigma_r. A zero sigma_r (all
// values identical per gender) produces all-zero outputs and the degenerate
// flag instead of a division by zero.
inline StandardizedGroup standardize(const CompensationGroup& group) {
    if (group.by_gender.empty())
        throw DomainError("standardize: no gender groups for resume " + group.resume_id);

    double total = 0.0;
    std::size_t count = 0;
    std::vector<double> stds;
    stds.reserve(group.by_gender.size());
    for (const auto& [gender, values] : group.by_gender) {
        if (values.empty())
            throw DomainError("standardize: empty " + std::string(to_string(gender)) +
                              " group for resume " + group.resume_id);
        for (double v : values) total += v;
        count += values.size();
        stds.push_back(population_std(values));
    }

    StandardizedGroup out;
    out.resume_id = group.resume_id;
    out.mean = total / static_cast<double>(count);
    out.pooled_std = pooled_sigma(stds);
    out.degenerate = out.pooled_std == 0.0;

    for (const auto& [gender, values] : group.by_gender) {
        auto& dest = out.by_gender[gender];
        dest.reserve(values.size());
        for (double v : values)
            dest.push_back(out.degenerate ? 0.0 : (v - out.mean) / out.pooled_std);
    }
    return out;
}

}  // namespace hirebias
