#pragma once

// Chat-completion providers behind one interface: a generic HTTP JSON chat
// endpoint, a deterministic synthetic-bias mock, and a replay source that
// serves stored responses. Provider instances tolerate concurrent chat()
// calls; the mock's seeding is per-(query, attempt), so concurrency never
// perturbs its output.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "hirebias/corpus.hpp"
#include "hirebias/errors.hpp"
#include "hirebias/parse.hpp"
#include "hirebias/prompt.hpp"
#include "hirebias/types.hpp"

namespace hirebias {

enum class ProviderKind { HttpChat, Mock, Replay };

struct ProviderConfig {
    ProviderKind kind = ProviderKind::Mock;
    std::string endpoint_url;  // HttpChat: scheme://host[:port]/path
    std::string model_id = "mock";
    std::string api_key_env;  // secrets live in the environment, never in config
    double temperature = 1.0;
    bool system_supported = true;
    std::chrono::milliseconds timeout{30000};
    std::size_t max_retries_transport = 3;
    std::chrono::milliseconds backoff_base{250};
    std::vector<std::string> refusal_markers = {"content_filter", "content management policy",
                                                "cannot assist with"};
    std::string replay_store;  // Replay: path to a result store JSONL
};

struct MockBiasProfile {
    std::map<Gender, double> hire_prob;       // default 0.5
    std::map<Gender, double> qualified_mean;  // default 6.0, in [1,10]
    std::map<Gender, double> comp_log_mean;   // default log(100000)
    double comp_log_std = 0.15;
    double refusal_prob = 0.0;
    double garble_prob = 0.0;
    std::uint64_t seed = 0;
};

struct ChatRequest {
    std::string query_id;
    std::optional<std::string> system_text;
    std::string user_text;
    std::size_t attempt = 1;
};

class Provider {
  public:
    virtual ~Provider() = default;
    virtual std::string chat(const ChatRequest& request) = 0;
    // deterministic providers let the runner stamp records with a fixed
    // timestamp so stores replay byte-identically
    virtual bool deterministic() const { return false; }
};

// =============================================================================
// Counter-based RNG (portable; no std distribution objects)
// =============================================================================

namespace rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

// One independent stream per (seed, key, counter) triple.
class Stream {
  public:
    Stream(std::uint64_t seed, std::string_view key, std::uint64_t counter)
        : state_(seed ^ (fnv1a64(key) + 0x9E3779B97F4A7C15ULL * (counter + 1))) {
        // burn one output so nearby counters decorrelate
        splitmix64(state_);
    }

    double uniform() {
        const double u = static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53;
        return u > 0.0 ? u : 0x1.0p-53;
    }

    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

  private:
    std::uint64_t state_;
};

}  // namespace rng

// =============================================================================
// Mock provider
// =============================================================================

// Answers prompts the way a (configurably biased) model would: it derives
// the candidate's gender from the name token in the prompt and samples the
// requested feature from MockBiasProfile. Hire is Bernoulli, Qualified is
// 1 + Binomial(9, (mean-1)/9), Compensation is log-normal, so an injected
// pay gap is multiplicative.
class MockProvider final : public Provider {
  public:
    explicit MockProvider(MockBiasProfile profile) : profile_(std::move(profile)) {}

    bool deterministic() const override { return true; }

    std::string chat(const ChatRequest& request) override {
        rng::Stream stream(profile_.seed, request.query_id, request.attempt);

        if (stream.uniform() < profile_.refusal_prob)
            throw RefusalError("mock provider: content filter refusal");
        if (stream.uniform() < profile_.garble_prob)
            return "I'm sorry, but I can't give a definitive response without more details "
                   "about the position.";

        const std::string full_prompt =
            (request.system_text ? *request.system_text + "\n" : "") + request.user_text;
        const Gender gender = derive_gender(request.user_text);

        std::string response;
        if (full_prompt.find(prompts::kHireQuestion) != std::string::npos) {
            const bool hire = stream.uniform() < lookup(profile_.hire_prob, gender, 0.5);
            response = format_hire(hire ? 1 : 0);
        } else if (full_prompt.find(prompts::kQualifiedQuestion) != std::string::npos) {
            const double mean = lookup(profile_.qualified_mean, gender, 6.0);
            const double p = std::clamp((mean - 1.0) / 9.0, 0.0, 1.0);
            int rating = 1;
            for (int i = 0; i < 9; ++i)
                if (stream.uniform() < p) ++rating;
            response = format_qualified(rating);
        } else if (full_prompt.find(prompts::kCompensationQuestion) != std::string::npos) {
            const double mu = lookup(profile_.comp_log_mean, gender, std::log(100000.0));
            const double amount = std::exp(mu + profile_.comp_log_std * stream.normal());
            response = format_compensation(std::max(1.0, std::round(amount)));
        } else {
            throw ValidationError("mock provider: prompt contains no known question");
        }

        if (full_prompt.find(prompts::kReasonClause) != std::string::npos)
            response += "\nReason: The resume lists experience aligned with the role.";
        return response;
    }

  private:
    static double lookup(const std::map<Gender, double>& m, Gender g, double fallback) {
        const auto it = m.find(g);
        return it == m.end() ? fallback : it->second;
    }

    // The user prompt presents the candidate as "Here is <name>'s resumé:".
    // Pronoun suffixes state the gender; bare names fall back to the builtin
    // gendered lists, then to a stable hash.
    Gender derive_gender(std::string_view user_text) const {
        constexpr std::string_view prefix = "Here is ";
        constexpr std::string_view suffix = "'s resum";
        const std::size_t begin = user_text.find(prefix);
        std::size_t end = std::string_view::npos;
        if (begin != std::string_view::npos)
            end = user_text.find(suffix, begin + prefix.size());
        if (begin == std::string_view::npos || end == std::string_view::npos)
            throw ValidationError("mock provider: prompt has no name marker");
        const std::string_view display = user_text.substr(begin + prefix.size(),
                                                          end - begin - prefix.size());

        if (display.ends_with("(she/her)")) return Gender::Female;
        if (display.ends_with("(he/him)")) return Gender::Male;
        if (display.ends_with("(they/them)")) return Gender::NonBinary;
        for (const auto& record : builtin_gendered_names())
            if (record.base_name == display) return record.gender;
        return rng::fnv1a64(display) % 2 == 0 ? Gender::Female : Gender::Male;
    }

    MockBiasProfile profile_;
};

// =============================================================================
// Replay provider
// =============================================================================

// Serves raw responses recorded in an earlier store, keyed by query id.
class ReplayProvider final : public Provider {
  public:
    explicit ReplayProvider(std::unordered_map<std::string, std::string> responses)
        : responses_(std::move(responses)) {}

    bool deterministic() const override { return true; }

    std::string chat(const ChatRequest& request) override {
        const auto it = responses_.find(request.query_id);
        if (it == responses_.end())
            throw ReplayMissError("replay provider: no stored response for query " +
                                  request.query_id);
        return it->second;
    }

  private:
    std::unordered_map<std::string, std::string> responses_;
};

// =============================================================================
// HTTP chat provider
// =============================================================================

// Posts the common JSON chat schema and returns the first choice's message
// content. Transport failures back off exponentially up to
// max_retries_transport; a 4xx whose body carries a refusal marker raises
// RefusalError instead so the runner can re-send the identical prompt.
class HttpChatProvider final : public Provider {
  public:
    explicit HttpChatProvider(ProviderConfig config) : config_(std::move(config)) {
        if (config_.endpoint_url.empty())
            throw ConfigError("http provider: endpoint_url is required");
        if (config_.api_key_env.empty())
            throw ConfigError("http provider: api_key_env is required");
        const char* key = std::getenv(config_.api_key_env.c_str());
        if (key == nullptr || *key == '\0')
            throw ConfigError("http provider: environment variable " + config_.api_key_env +
                              " is not set");
        api_key_ = key;

        const std::size_t scheme_end = config_.endpoint_url.find("://");
        if (scheme_end == std::string::npos)
            throw ConfigError("http provider: endpoint_url needs a scheme: " +
                              config_.endpoint_url);
        const std::size_t path_begin = config_.endpoint_url.find('/', scheme_end + 3);
        if (path_begin == std::string::npos) {
            base_ = config_.endpoint_url;
            path_ = "/";
        } else {
            base_ = config_.endpoint_url.substr(0, path_begin);
            path_ = config_.endpoint_url.substr(path_begin);
        }
    }

    std::string chat(const ChatRequest& request) override {
        nlohmann::json messages = nlohmann::json::array();
        if (request.system_text)
            messages.push_back({{"role", "system"}, {"content", *request.system_text}});
        messages.push_back({{"role", "user"}, {"content", request.user_text}});
        const std::string body = nlohmann::json{{"model", config_.model_id},
                                                {"temperature", config_.temperature},
                                                {"messages", messages}}
                                     .dump();

        std::string last_error;
        for (std::size_t attempt = 0; attempt <= config_.max_retries_transport; ++attempt) {
            if (attempt > 0)
                std::this_thread::sleep_for(config_.backoff_base * (1ULL << (attempt - 1)));

            httplib::Client client(base_);
            client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(
                config_.timeout));
            client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(
                config_.timeout));
            httplib::Headers headers = {{"Authorization", "Bearer " + api_key_}};

            auto result = client.Post(path_, headers, body, "application/json");
            if (!result) {
                last_error = httplib::to_string(result.error());
                continue;
            }
            if (result->status >= 200 && result->status < 300) {
                try {
                    const auto parsed = nlohmann::json::parse(result->body);
                    return parsed.at("choices").at(0).at("message").at("content")
                        .get<std::string>();
                } catch (const nlohmann::json::exception& e) {
                    throw TransportError("http provider: malformed response body: " +
                                         std::string(e.what()));
                }
            }
            if (result->status >= 400 && result->status < 500 && is_refusal(result->body))
                throw RefusalError("http provider: content filter refusal (HTTP " +
                                   std::to_string(result->status) + ")");
            last_error = "HTTP " + std::to_string(result->status);
        }
        throw TransportError("http provider: " + last_error + " after " +
                             std::to_string(config_.max_retries_transport + 1) + " attempts");
    }

  private:
    bool is_refusal(const std::string& body) const {
        for (const auto& marker : config_.refusal_markers)
            if (detail::ifind(body, marker) != std::string_view::npos) return true;
        return false;
    }

    ProviderConfig config_;
    std::string api_key_;
    std::string base_;
    std::string path_;
};

}  // namespace hirebias
