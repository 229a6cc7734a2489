#pragma once

// Name datasets and resume corpus ingestion.
//
// Resume corpus layout:
//   <root>/<sector>/<id>.txt           one cleaned resume per file
//   <root>/<sector>/meta.csv           columns: id,role,fallback_title
//
// Census CSV: header `name,female_count,male_count`, counts aggregated over
// all years of the per-year census files.

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hirebias/errors.hpp"
#include "hirebias/types.hpp"

namespace hirebias {

struct NameRecord {
    std::string display_name;  // e.g. "Jordan (she/her)"
    std::string base_name;     // e.g. "Jordan"
    Gender gender = Gender::Female;
    Dataset dataset = Dataset::GenderedNames;

    bool operator==(const NameRecord&) const = default;
};

struct CensusNameStat {
    std::string name;
    std::uint64_t female_count = 0;
    std::uint64_t male_count = 0;
};

struct ResumeRecord {
    std::string id;
    std::string sector;
    std::string role;
    std::string body;
};

inline void to_json(nlohmann::json& j, const NameRecord& n) {
    j = nlohmann::json{{"display_name", n.display_name},
                       {"base_name", n.base_name},
                       {"gender", to_string(n.gender)},
                       {"dataset", to_string(n.dataset)}};
}

inline void from_json(const nlohmann::json& j, NameRecord& n) {
    n.display_name = j.at("display_name").get<std::string>();
    n.base_name = j.at("base_name").get<std::string>();
    n.gender = gender_from_string(j.at("gender").get<std::string>());
    n.dataset = dataset_from_string(j.at("dataset").get<std::string>());
}

// The 24 industry sectors a resume may belong to.
inline const std::array<std::string_view, 24>& resume_sectors() {
    static const std::array<std::string_view, 24> sectors = {
        "Human Resources",  "Design",     "Information-Technology",
        "Teacher",          "Advocate",   "Business-Development",
        "Healthcare",       "Fitness",    "Agriculture",
        "Business Process Outsourcing",   "Sales",
        "Consultant",       "Digital-Media",
        "Automobile",       "Chef",       "Finance",
        "Apparel",          "Engineering", "Accountant",
        "Construction",     "Public-Relations",
        "Banking",          "Arts",       "Aviation"};
    return sectors;
}

// =============================================================================
// Name datasets
// =============================================================================

// 25 male + 25 female popular names used as the implicit gender signal.
inline const std::vector<NameRecord>& builtin_gendered_names() {
    static const std::vector<NameRecord> names = [] {
        const std::array<std::string_view, 25> male = {
            "Jacob",   "Michael", "Joshua",      "Matthew",  "Daniel", "Christopher", "Andrew",
            "Ethan",   "Joseph",  "William",     "Anthony",  "David",  "Alexander",   "Nicholas",
            "Ryan",    "Tyler",   "James",       "John",     "Jonathan", "Noah",      "Brandon",
            "Christian", "Dylan", "Samuel",      "Benjamin"};
        const std::array<std::string_view, 25> female = {
            "Emily",   "Madison", "Emma",     "Olivia",    "Hannah", "Abigail", "Isabella",
            "Samantha", "Elizabeth", "Ashley", "Alexis",   "Sarah",  "Sophia",  "Alyssa",
            "Grace",   "Ava",     "Taylor",   "Brianna",   "Lauren", "Chloe",   "Natalie",
            "Kayla",   "Jessica", "Anna",     "Victoria"};
        std::vector<NameRecord> out;
        out.reserve(50);
        for (auto n : male)
            out.push_back({std::string(n), std::string(n), Gender::Male, Dataset::GenderedNames});
        for (auto n : female)
            out.push_back({std::string(n), std::string(n), Gender::Female, Dataset::GenderedNames});
        return out;
    }();
    return names;
}

// Gender-neutral name selection: keep names whose female/male usage split is
// no more extreme than 75/25 (|f - m| <= 0.5 on the fraction scale), rank by
// total usage descending with lexicographic tie-break, return the top k.
inline std::vector<std::string> select_gender_neutral(const std::vector<CensusNameStat>& stats,
                                                      std::size_t k) {
    if (k == 0) throw DomainError("select_gender_neutral: k must be >= 1");
    if (stats.empty()) throw DomainError("select_gender_neutral: no census rows");

    struct Survivor {
        std::string name;
        std::uint64_t usage;
    };
    std::vector<Survivor> survivors;
    for (const auto& s : stats) {
        const double total = static_cast<double>(s.female_count) + static_cast<double>(s.male_count);
        if (total == 0.0)
            throw IngestError("select_gender_neutral: zero usage for name " + s.name);
        const double f = static_cast<double>(s.female_count) / total;
        if (std::abs(f - (1.0 - f)) > 0.5) continue;
        survivors.push_back({s.name, s.female_count + s.male_count});
    }
    if (survivors.size() < k)
        throw InsufficientNamesError("select_gender_neutral: only " +
                                         std::to_string(survivors.size()) +
                                         " names survive the neutrality filter, need " +
                                         std::to_string(k),
                                     survivors.size());

    std::sort(survivors.begin(), survivors.end(), [](const Survivor& a, const Survivor& b) {
        if (a.usage != b.usage) return a.usage > b.usage;
        return a.name < b.name;
    });
    std::vector<std::string> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(survivors[i].name);
    return out;
}

// Expands each name into three records, one per pronoun suffix. Records come
// out in pronoun blocks (she/her, he/him, they/them), input order within
// each block.
inline std::vector<NameRecord> pronoun_variants(const std::vector<std::string>& names) {
    if (names.empty()) throw DomainError("pronoun_variants: empty name list");
    std::set<std::string> seen;
    for (const auto& n : names)
        if (!seen.insert(n).second)
            throw ValidationError("pronoun_variants: duplicate name " + n);

    struct Suffix {
        std::string_view text;
        Gender gender;
    };
    const std::array<Suffix, 3> suffixes = {{{" (she/her)", Gender::Female},
                                             {" (he/him)", Gender::Male},
                                             {" (they/them)", Gender::NonBinary}}};
    std::vector<NameRecord> out;
    out.reserve(3 * names.size());
    for (const auto& suffix : suffixes)
        for (const auto& n : names)
            out.push_back({n + std::string(suffix.text), n, suffix.gender, Dataset::Pronouns});
    return out;
}

// =============================================================================
// CSV ingestion
// =============================================================================

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

inline std::uint64_t parse_count(const std::string& s, const std::string& context) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw IngestError("invalid count '" + s + "' in " + context);
    }
}

}  // namespace detail

// Loads an aggregated census file; duplicate name rows are merged by summing
// their counts.
inline std::vector<CensusNameStat> load_census_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open census file " + path.string());

    std::string line;
    if (!std::getline(in, line))
        throw IngestError("census file is empty: " + path.string());
    {
        auto header = detail::split_csv_line(line);
        if (header != std::vector<std::string>{"name", "female_count", "male_count"})
            throw IngestError("census file " + path.string() +
                              " must have header name,female_count,male_count");
    }

    std::map<std::string, CensusNameStat> by_name;
    std::vector<std::string> order;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = detail::split_csv_line(line);
        if (fields.size() != 3)
            throw IngestError("census row with " + std::to_string(fields.size()) +
                              " fields in " + path.string() + ": " + line);
        auto [it, inserted] = by_name.try_emplace(fields[0]);
        if (inserted) {
            it->second.name = fields[0];
            order.push_back(fields[0]);
        }
        it->second.female_count += detail::parse_count(fields[1], path.string());
        it->second.male_count += detail::parse_count(fields[2], path.string());
    }

    std::vector<CensusNameStat> out;
    out.reserve(order.size());
    for (const auto& name : order) {
        const auto& stat = by_name.at(name);
        if (stat.female_count == 0 && stat.male_count == 0)
            throw IngestError("census name " + name + " has zero counts in both columns");
        out.push_back(stat);
    }
    if (out.empty()) throw IngestError("census file has no data rows: " + path.string());
    return out;
}

// =============================================================================
// Resume ingestion
// =============================================================================

struct IngestReport {
    std::vector<ResumeRecord> records;
    std::vector<std::string> warnings;
};

// Reads every sector directory under root. Roles come from meta.csv; a
// missing role falls back to the sidecar's fallback_title (the most recent
// job title in the resume). Sectors are expected to hold 5 resumes each;
// other counts produce a warning, not an error.
inline IngestReport ingest_resumes(const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(root))
        throw IngestError("resume corpus root is not a directory: " + root.string());

    const auto& sectors = resume_sectors();
    IngestReport report;

    std::vector<fs::path> sector_dirs;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory()) sector_dirs.push_back(entry.path());
    std::sort(sector_dirs.begin(), sector_dirs.end());

    for (const auto& dir : sector_dirs) {
        const std::string sector = dir.filename().string();
        if (std::find(sectors.begin(), sectors.end(), sector) == sectors.end())
            throw IngestError("unknown sector directory: " + dir.string());

        const fs::path meta_path = dir / "meta.csv";
        std::ifstream meta(meta_path);
        if (!meta) throw IngestError("missing meta.csv in " + dir.string());

        std::string line;
        if (!std::getline(meta, line) ||
            detail::split_csv_line(line) !=
                std::vector<std::string>{"id", "role", "fallback_title"})
            throw IngestError("meta.csv in " + dir.string() +
                              " must have header id,role,fallback_title");

        std::size_t count = 0;
        while (std::getline(meta, line)) {
            if (line.empty()) continue;
            auto fields = detail::split_csv_line(line);
            if (fields.size() != 3)
                throw IngestError("malformed meta.csv row in " + dir.string() + ": " + line);
            const std::string& id = fields[0];
            const std::string& role = fields[1];
            const std::string& fallback = fields[2];

            const fs::path body_path = dir / (id + ".txt");
            std::ifstream body_in(body_path, std::ios::binary);
            if (!body_in) throw IngestError("missing resume file " + body_path.string());
            std::ostringstream ss;
            ss << body_in.rdbuf();
            std::string body = ss.str();
            if (body.find_first_not_of(" \t\r\n") == std::string::npos)
                throw IngestError("empty resume file " + body_path.string());

            ResumeRecord rec;
            rec.id = id;
            rec.sector = sector;
            rec.body = std::move(body);
            if (!role.empty()) {
                rec.role = role;
            } else if (!fallback.empty()) {
                rec.role = fallback;
            } else {
                throw IngestError("resume " + body_path.string() +
                                  " has neither role nor fallback_title");
            }
            report.records.push_back(std::move(rec));
            ++count;
        }
        if (count != 5)
            report.warnings.push_back("sector " + sector + " has " + std::to_string(count) +
                                      " resumes, expected 5");
    }

    std::sort(report.records.begin(), report.records.end(),
              [](const ResumeRecord& a, const ResumeRecord& b) {
                  return std::tie(a.sector, a.id) < std::tie(b.sector, b.id);
              });
    return report;
}

}  // namespace hirebias
