#pragma once

#include <array>
#include <string>
#include <string_view>

#include "hirebias/errors.hpp"

namespace hirebias {

enum class Gender { Female, Male, NonBinary };
enum class Dataset { GenderedNames, Pronouns };
enum class Feature { Hire, Qualified, Compensation };
enum class Perturbation { Baseline, Reason, DEI, ReasonAndDEI };

inline constexpr std::array<Gender, 3> kAllGenders = {Gender::Female, Gender::Male,
                                                      Gender::NonBinary};
inline constexpr std::array<Feature, 3> kAllFeatures = {Feature::Hire, Feature::Qualified,
                                                        Feature::Compensation};
inline constexpr std::array<Perturbation, 4> kAllPerturbations = {
    Perturbation::Baseline, Perturbation::Reason, Perturbation::DEI, Perturbation::ReasonAndDEI};

inline std::string_view to_string(Gender g) {
    switch (g) {
        case Gender::Female: return "female";
        case Gender::Male: return "male";
        case Gender::NonBinary: return "nonbinary";
    }
    return "?";
}

inline std::string_view to_string(Dataset d) {
    return d == Dataset::GenderedNames ? "gendered" : "pronouns";
}

inline std::string_view to_string(Feature f) {
    switch (f) {
        case Feature::Hire: return "hire";
        case Feature::Qualified: return "qualified";
        case Feature::Compensation: return "compensation";
    }
    return "?";
}

inline std::string_view to_string(Perturbation p) {
    switch (p) {
        case Perturbation::Baseline: return "baseline";
        case Perturbation::Reason: return "reason";
        case Perturbation::DEI: return "dei";
        case Perturbation::ReasonAndDEI: return "reason+dei";
    }
    return "?";
}

inline Gender gender_from_string(std::string_view s) {
    if (s == "female") return Gender::Female;
    if (s == "male") return Gender::Male;
    if (s == "nonbinary") return Gender::NonBinary;
    throw ValidationError("unknown gender: " + std::string(s));
}

inline Dataset dataset_from_string(std::string_view s) {
    if (s == "gendered") return Dataset::GenderedNames;
    if (s == "pronouns") return Dataset::Pronouns;
    throw ValidationError("unknown dataset: " + std::string(s));
}

inline Feature feature_from_string(std::string_view s) {
    if (s == "hire") return Feature::Hire;
    if (s == "qualified") return Feature::Qualified;
    if (s == "compensation") return Feature::Compensation;
    throw ValidationError("unknown feature: " + std::string(s));
}

inline Perturbation perturbation_from_string(std::string_view s) {
    if (s == "baseline") return Perturbation::Baseline;
    if (s == "reason") return Perturbation::Reason;
    if (s == "dei") return Perturbation::DEI;
    if (s == "reason+dei") return Perturbation::ReasonAndDEI;
    throw ValidationError("unknown perturbation: " + std::string(s));
}

}  // namespace hirebias
