#pragma once

// The append-only JSON Lines result store: one ResponseRecord per line, the
// interchange format between run, replay and analysis.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "hirebias/errors.hpp"
#include "hirebias/types.hpp"

namespace hirebias {

struct ResponseRecord {
    enum class Status { Ok, Exhausted };

    std::string query_id;
    std::string model;
    Dataset dataset = Dataset::GenderedNames;
    Perturbation perturbation = Perturbation::Baseline;
    Feature feature = Feature::Hire;
    std::string sector;
    std::string resume_id;
    std::string name;  // display name
    Gender gender = Gender::Female;
    std::string raw_text;
    std::optional<double> parsed_value;  // hire stored as 0/1
    std::optional<std::string> reason_text;
    std::size_t attempts = 1;
    std::size_t refusals = 0;
    Status status = Status::Ok;
    std::string timestamp;  // ISO-8601 UTC
};

inline std::string_view to_string(ResponseRecord::Status s) {
    return s == ResponseRecord::Status::Ok ? "ok" : "exhausted";
}

// Field order on the wire is fixed so identical runs produce identical bytes.
inline std::string to_json_line(const ResponseRecord& r) {
    nlohmann::ordered_json j;
    j["query_id"] = r.query_id;
    j["model"] = r.model;
    j["dataset"] = to_string(r.dataset);
    j["perturbation"] = to_string(r.perturbation);
    j["feature"] = to_string(r.feature);
    j["sector"] = r.sector;
    j["resume_id"] = r.resume_id;
    j["name"] = r.name;
    j["gender"] = to_string(r.gender);
    j["raw_text"] = r.raw_text;
    if (r.parsed_value)
        j["parsed_value"] = *r.parsed_value;
    else
        j["parsed_value"] = nullptr;
    if (r.reason_text)
        j["reason_text"] = *r.reason_text;
    else
        j["reason_text"] = nullptr;
    j["attempts"] = r.attempts;
    j["refusals"] = r.refusals;
    j["status"] = to_string(r.status);
    j["timestamp"] = r.timestamp;
    return j.dump();
}

inline ResponseRecord record_from_json(const nlohmann::json& j) {
    ResponseRecord r;
    r.query_id = j.at("query_id").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.dataset = dataset_from_string(j.at("dataset").get<std::string>());
    r.perturbation = perturbation_from_string(j.at("perturbation").get<std::string>());
    r.feature = feature_from_string(j.at("feature").get<std::string>());
    r.sector = j.at("sector").get<std::string>();
    r.resume_id = j.at("resume_id").get<std::string>();
    r.name = j.at("name").get<std::string>();
    r.gender = gender_from_string(j.at("gender").get<std::string>());
    r.raw_text = j.at("raw_text").get<std::string>();
    if (!j.at("parsed_value").is_null()) r.parsed_value = j.at("parsed_value").get<double>();
    if (!j.at("reason_text").is_null()) r.reason_text = j.at("reason_text").get<std::string>();
    r.attempts = j.at("attempts").get<std::size_t>();
    r.refusals = j.at("refusals").get<std::size_t>();
    const auto status = j.at("status").get<std::string>();
    if (status == "ok")
        r.status = ResponseRecord::Status::Ok;
    else if (status == "exhausted")
        r.status = ResponseRecord::Status::Exhausted;
    else
        throw ValidationError("unknown record status: " + status);
    r.timestamp = j.at("timestamp").get<std::string>();
    return r;
}

// Append-only writer. Each line is flushed as written; a write failure
// reports the last durable byte offset for resume-from-checkpoint.
class ResultStore {
  public:
    explicit ResultStore(std::filesystem::path path, bool append = true) : path_(std::move(path)) {
        if (append && std::filesystem::exists(path_))
            bytes_written_ = std::filesystem::file_size(path_);
        out_.open(path_, std::ios::binary | (append ? std::ios::app : std::ios::trunc));
        if (!out_) throw StoreError("cannot open result store " + path_.string(), 0);
    }

    void append(const ResponseRecord& record) {
        const std::string line = to_json_line(record) + "\n";
        out_ << line;
        out_.flush();
        if (!out_)
            throw StoreError("write failure on result store " + path_.string() +
                                 "; last durable byte offset " + std::to_string(bytes_written_),
                             bytes_written_);
        bytes_written_ += line.size();
    }

    std::size_t bytes_written() const { return bytes_written_; }
    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t bytes_written_ = 0;
};

// Reads a whole store; a corrupt line reports its byte offset.
inline std::vector<ResponseRecord> read_store(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StoreError("cannot open result store " + path.string(), 0);
    std::vector<ResponseRecord> records;
    std::string line;
    std::size_t offset = 0;
    while (std::getline(in, line)) {
        if (!line.empty()) {
            try {
                records.push_back(record_from_json(nlohmann::json::parse(line)));
            } catch (const nlohmann::json::exception& e) {
                throw StoreError("corrupt store line at byte offset " + std::to_string(offset) +
                                     " in " + path.string() + ": " + e.what(),
                                 offset);
            }
        }
        offset += line.size() + 1;
    }
    return records;
}

// A store may hold several records per query id after a resumed run. For
// analysis, an Ok record wins over Exhausted; among equals the later one
// wins.
inline std::vector<ResponseRecord> dedupe_latest(const std::vector<ResponseRecord>& records) {
    std::unordered_map<std::string, std::size_t> chosen;
    std::vector<ResponseRecord> out;
    for (const auto& record : records) {
        const auto it = chosen.find(record.query_id);
        if (it == chosen.end()) {
            chosen.emplace(record.query_id, out.size());
            out.push_back(record);
        } else if (record.status == ResponseRecord::Status::Ok ||
                   out[it->second].status == ResponseRecord::Status::Exhausted) {
            out[it->second] = record;
        }
    }
    return out;
}

// Raw responses by query id, as the replay provider wants them.
inline std::unordered_map<std::string, std::string> load_replay_map(
    const std::filesystem::path& path) {
    std::unordered_map<std::string, std::string> map;
    for (const auto& record : dedupe_latest(read_store(path)))
        map[record.query_id] = record.raw_text;
    return map;
}

}  // namespace hirebias
