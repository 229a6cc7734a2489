#pragma once

// Declarative run configuration: one JSON document, strictly validated.
// Secrets never live in the file; HTTP providers name an environment
// variable instead.

#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hirebias/errors.hpp"
#include "hirebias/provider.hpp"
#include "hirebias/store.hpp"
#include "hirebias/types.hpp"

namespace hirebias {

struct RunConfig {
    ProviderConfig provider;
    MockBiasProfile mock_profile;
    std::filesystem::path corpus_root;
    std::filesystem::path census_csv;
    std::size_t census_k = 25;
    std::string dataset = "gendered";  // gendered | pronouns | both
    std::vector<Perturbation> perturbations{kAllPerturbations.begin(), kAllPerturbations.end()};
    std::size_t concurrency = 8;
    std::size_t max_attempts = 20;
    std::filesystem::path store_path = "results.jsonl";
    double significance_threshold = 0.1;
};

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> known,
                                const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok) throw ConfigError("unknown config key '" + key + "' in " + where);
    }
}

inline std::map<Gender, double> gender_map(const nlohmann::json& j, const std::string& where) {
    reject_unknown_keys(j, {"female", "male", "nonbinary"}, where);
    std::map<Gender, double> out;
    for (const auto& [key, value] : j.items()) out[gender_from_string(key)] = value.get<double>();
    return out;
}

}  // namespace detail

inline RunConfig parse_config(const nlohmann::json& j) {
    detail::reject_unknown_keys(
        j,
        {"provider", "mock_profile", "corpus_root", "census_csv", "census_k", "dataset",
         "perturbations", "concurrency", "max_attempts", "store_path", "significance_threshold"},
        "config");
    RunConfig config;

    if (j.contains("provider")) {
        const auto& p = j.at("provider");
        detail::reject_unknown_keys(p,
                                    {"kind", "endpoint_url", "model_id", "api_key_env",
                                     "temperature", "system_supported", "timeout_ms",
                                     "max_retries_transport", "backoff_base_ms",
                                     "refusal_markers", "replay_store"},
                                    "provider");
        if (p.contains("kind")) {
            const auto kind = p.at("kind").get<std::string>();
            if (kind == "mock")
                config.provider.kind = ProviderKind::Mock;
            else if (kind == "http")
                config.provider.kind = ProviderKind::HttpChat;
            else if (kind == "replay")
                config.provider.kind = ProviderKind::Replay;
            else
                throw ConfigError("provider.kind must be mock, http or replay, got " + kind);
        }
        if (p.contains("endpoint_url")) config.provider.endpoint_url = p.at("endpoint_url");
        if (p.contains("model_id")) config.provider.model_id = p.at("model_id");
        if (p.contains("api_key_env")) config.provider.api_key_env = p.at("api_key_env");
        if (p.contains("temperature")) config.provider.temperature = p.at("temperature");
        if (p.contains("system_supported"))
            config.provider.system_supported = p.at("system_supported");
        if (p.contains("timeout_ms"))
            config.provider.timeout = std::chrono::milliseconds(p.at("timeout_ms").get<int>());
        if (p.contains("max_retries_transport"))
            config.provider.max_retries_transport = p.at("max_retries_transport");
        if (p.contains("backoff_base_ms"))
            config.provider.backoff_base =
                std::chrono::milliseconds(p.at("backoff_base_ms").get<int>());
        if (p.contains("refusal_markers"))
            config.provider.refusal_markers =
                p.at("refusal_markers").get<std::vector<std::string>>();
        if (p.contains("replay_store")) config.provider.replay_store = p.at("replay_store");
    }

    if (j.contains("mock_profile")) {
        const auto& m = j.at("mock_profile");
        detail::reject_unknown_keys(m,
                                    {"hire_prob", "qualified_mean", "comp_log_mean",
                                     "comp_log_std", "refusal_prob", "garble_prob", "seed"},
                                    "mock_profile");
        if (m.contains("hire_prob"))
            config.mock_profile.hire_prob = detail::gender_map(m.at("hire_prob"), "hire_prob");
        if (m.contains("qualified_mean"))
            config.mock_profile.qualified_mean =
                detail::gender_map(m.at("qualified_mean"), "qualified_mean");
        if (m.contains("comp_log_mean"))
            config.mock_profile.comp_log_mean =
                detail::gender_map(m.at("comp_log_mean"), "comp_log_mean");
        if (m.contains("comp_log_std")) config.mock_profile.comp_log_std = m.at("comp_log_std");
        if (m.contains("refusal_prob")) config.mock_profile.refusal_prob = m.at("refusal_prob");
        if (m.contains("garble_prob")) config.mock_profile.garble_prob = m.at("garble_prob");
        if (m.contains("seed")) config.mock_profile.seed = m.at("seed").get<std::uint64_t>();
        for (const auto& [gender, prob] : config.mock_profile.hire_prob)
            if (prob < 0.0 || prob > 1.0)
                throw ConfigError("mock_profile.hire_prob must lie in [0,1]");
        if (config.mock_profile.refusal_prob < 0.0 || config.mock_profile.refusal_prob > 1.0 ||
            config.mock_profile.garble_prob < 0.0 || config.mock_profile.garble_prob > 1.0)
            throw ConfigError("mock_profile probabilities must lie in [0,1]");
    }

    if (j.contains("corpus_root")) config.corpus_root = j.at("corpus_root").get<std::string>();
    if (j.contains("census_csv")) config.census_csv = j.at("census_csv").get<std::string>();
    if (j.contains("census_k")) config.census_k = j.at("census_k");
    if (j.contains("dataset")) {
        config.dataset = j.at("dataset").get<std::string>();
        if (config.dataset != "gendered" && config.dataset != "pronouns" &&
            config.dataset != "both")
            throw ConfigError("dataset must be gendered, pronouns or both, got " +
                              config.dataset);
    }
    if (j.contains("perturbations")) {
        config.perturbations.clear();
        for (const auto& p : j.at("perturbations"))
            config.perturbations.push_back(perturbation_from_string(p.get<std::string>()));
        if (config.perturbations.empty())
            throw ConfigError("perturbations list must not be empty");
    }
    if (j.contains("concurrency")) config.concurrency = j.at("concurrency");
    if (j.contains("max_attempts")) config.max_attempts = j.at("max_attempts");
    if (config.concurrency == 0) throw ConfigError("concurrency must be >= 1");
    if (config.max_attempts == 0) throw ConfigError("max_attempts must be >= 1");
    if (j.contains("store_path")) config.store_path = j.at("store_path").get<std::string>();
    if (j.contains("significance_threshold"))
        config.significance_threshold = j.at("significance_threshold");

    return config;
}

inline RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

inline std::unique_ptr<Provider> make_provider(const RunConfig& config) {
    switch (config.provider.kind) {
        case ProviderKind::Mock:
            return std::make_unique<MockProvider>(config.mock_profile);
        case ProviderKind::Replay:
            if (config.provider.replay_store.empty())
                throw ConfigError("replay provider needs provider.replay_store");
            return std::make_unique<ReplayProvider>(
                load_replay_map(config.provider.replay_store));
        case ProviderKind::HttpChat:
            return std::make_unique<HttpChatProvider>(config.provider);
    }
    throw ConfigError("unknown provider kind");
}

}  // namespace hirebias
