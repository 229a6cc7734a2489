#include <catch2/catch_amalgamated.hpp>

#include "hirebias/provider.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

#include "test_support.hpp"

using namespace hirebias;

namespace {

ChatRequest request_for(const QuerySpec& spec, std::size_t attempt = 1) {
    const auto prompt = build_prompt(spec);
    return {spec.id, prompt.system_text, prompt.user_text, attempt};
}

QuerySpec spec_for(const NameRecord& name, Feature feature,
                   Perturbation pert = Perturbation::Baseline) {
    QuerySpec spec;
    spec.model = "mock-model";
    spec.name = name;
    spec.resume = {"r1", "Chef", "Chef", "Line cook, 12 years.\n"};
    for (const auto& q : standard_questions())
        if (q.feature == feature) spec.question = q;
    spec.perturbation = pert;
    spec.system_supported = true;
    spec.id = query_id(spec.model, pert, feature, spec.resume, spec.name);
    return spec;
}

}  // namespace

TEST_CASE("mock provider", "[provider]") {
    const auto female = pronoun_variants({"Jordan"})[0];  // Jordan (she/her)
    const auto male = pronoun_variants({"Jordan"})[1];    // Jordan (he/him)

    SECTION("degenerate hire profile answers deterministically by gender") {
        MockBiasProfile profile;
        profile.hire_prob = {{Gender::Female, 1.0}, {Gender::Male, 0.0}};
        MockProvider mock(profile);
        CHECK(mock.chat(request_for(spec_for(female, Feature::Hire))) == "Answer: Yes");
        CHECK(mock.chat(request_for(spec_for(male, Feature::Hire))) == "Answer: No");
    }

    SECTION("gender derived from builtin gendered names") {
        MockBiasProfile profile;
        profile.hire_prob = {{Gender::Female, 1.0}, {Gender::Male, 0.0}};
        MockProvider mock(profile);
        const auto& names = builtin_gendered_names();
        CHECK(mock.chat(request_for(spec_for(names[0], Feature::Hire))) == "Answer: No");  // Jacob
        CHECK(mock.chat(request_for(spec_for(names[25], Feature::Hire))) ==
              "Answer: Yes");  // Emily
    }

    SECTION("responses are deterministic per (seed, query, attempt)") {
        MockBiasProfile profile;
        profile.seed = 7;
        MockProvider mock(profile);
        const auto req = request_for(spec_for(female, Feature::Compensation));
        const auto first = mock.chat(req);
        CHECK(mock.chat(req) == first);
        MockProvider second(profile);
        CHECK(second.chat(req) == first);

        auto retry = req;
        retry.attempt = 2;
        CHECK(mock.chat(retry) != first);  // retries resample
    }

    SECTION("garble produces text every parser rejects") {
        MockBiasProfile profile;
        profile.garble_prob = 1.0;
        MockProvider mock(profile);
        const auto raw = mock.chat(request_for(spec_for(female, Feature::Hire)));
        CHECK_FALSE(parse_hire(raw).has_value());
        CHECK_FALSE(parse_qualified(raw).has_value());
        CHECK_FALSE(parse_compensation(raw).has_value());
    }

    SECTION("refusal raises the refusal signal") {
        MockBiasProfile profile;
        profile.refusal_prob = 1.0;
        MockProvider mock(profile);
        CHECK_THROWS_AS(mock.chat(request_for(spec_for(female, Feature::Hire))), RefusalError);
    }

    SECTION("qualified ratings stay in domain and track the mean") {
        MockBiasProfile profile;
        profile.qualified_mean = {{Gender::Female, 8.5}, {Gender::Male, 3.0}};
        MockProvider mock(profile);
        double sum_f = 0.0, sum_m = 0.0;
        const int n = 200;
        for (int i = 0; i < n; ++i) {
            auto spec_f = spec_for(female, Feature::Qualified);
            auto spec_m = spec_for(male, Feature::Qualified);
            spec_f.id += ":" + std::to_string(i);  // separate streams per query
            spec_m.id += ":" + std::to_string(i);
            const auto vf = parse_qualified(mock.chat(request_for(spec_f)));
            const auto vm = parse_qualified(mock.chat(request_for(spec_m)));
            REQUIRE(vf.has_value());
            REQUIRE(vm.has_value());
            CHECK(vf->value >= 1);
            CHECK(vf->value <= 10);
            sum_f += vf->value;
            sum_m += vm->value;
        }
        CHECK_THAT(sum_f / n, Catch::Matchers::WithinAbs(8.5, 0.5));
        CHECK_THAT(sum_m / n, Catch::Matchers::WithinAbs(3.0, 0.5));
    }

    SECTION("reason perturbations get a reason line") {
        MockProvider mock(MockBiasProfile{});
        const auto raw =
            mock.chat(request_for(spec_for(female, Feature::Hire, Perturbation::Reason)));
        CHECK(raw.find("\nReason: ") != std::string::npos);
        CHECK(extract_reason(raw, true).has_value());
    }
}

TEST_CASE("replay provider", "[provider]") {
    ReplayProvider replay({{"q1", "Answer: Yes"}, {"q2", "Answer: $95,000"}});
    CHECK(replay.chat({"q1", std::nullopt, "ignored", 1}) == "Answer: Yes");
    CHECK(replay.chat({"q2", std::nullopt, "ignored", 3}) == "Answer: $95,000");
    CHECK_THROWS_AS(replay.chat({"missing", std::nullopt, "ignored", 1}), ReplayMissError);
    CHECK(replay.deterministic());
}

TEST_CASE("http chat provider", "[provider]") {
    httplib::Server server;
    std::atomic<int> hits{0};

    server.Post("/v1/chat", [&](const httplib::Request& req, httplib::Response& res) {
        ++hits;
        const auto body = nlohmann::json::parse(req.body);
        REQUIRE(body.at("model") == "test-model");
        REQUIRE(body.at("temperature") == 1.0);
        REQUIRE(body.at("messages").size() == 2);
        REQUIRE(req.get_header_value("Authorization") == "Bearer sekrit");
        res.set_content(
            nlohmann::json{
                {"choices",
                 {{{"message", {{"role", "assistant"}, {"content", "Answer: Yes"}}}}}}}
                .dump(),
            "application/json");
    });
    server.Post("/v1/refuse", [&](const httplib::Request&, httplib::Response& res) {
        res.status = 400;
        res.set_content("{\"error\": {\"code\": \"content_filter\"}}", "application/json");
    });
    server.Post("/v1/flaky", [&](const httplib::Request&, httplib::Response& res) {
        if (++hits < 3) {
            res.status = 503;
            res.set_content("overloaded", "text/plain");
        } else {
            res.set_content(
                nlohmann::json{
                    {"choices",
                     {{{"message", {{"role", "assistant"}, {"content", "Answer: No"}}}}}}}
                    .dump(),
                "application/json");
        }
    });
    server.Post("/v1/down", [&](const httplib::Request&, httplib::Response& res) {
        res.status = 500;
        res.set_content("boom", "text/plain");
    });

    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    setenv("HIREBIAS_TEST_KEY", "sekrit", 1);
    ProviderConfig config;
    config.kind = ProviderKind::HttpChat;
    config.model_id = "test-model";
    config.api_key_env = "HIREBIAS_TEST_KEY";
    config.max_retries_transport = 3;
    config.backoff_base = std::chrono::milliseconds(1);

    const std::string base = "http://127.0.0.1:" + std::to_string(port);

    SECTION("posts the chat schema and returns the first choice") {
        config.endpoint_url = base + "/v1/chat";
        HttpChatProvider provider(config);
        CHECK(provider.chat({"q1", std::string("system text"), "user text", 1}) == "Answer: Yes");
        CHECK_FALSE(provider.deterministic());
    }

    SECTION("refusal marker in a 4xx body raises RefusalError") {
        config.endpoint_url = base + "/v1/refuse";
        HttpChatProvider provider(config);
        CHECK_THROWS_AS(provider.chat({"q1", std::nullopt, "user", 1}), RefusalError);
    }

    SECTION("transient 5xx is retried until success") {
        hits = 0;
        config.endpoint_url = base + "/v1/flaky";
        HttpChatProvider provider(config);
        CHECK(provider.chat({"q1", std::nullopt, "user", 1}) == "Answer: No");
        CHECK(hits == 3);
    }

    SECTION("persistent failure exhausts the transport budget") {
        config.endpoint_url = base + "/v1/down";
        config.max_retries_transport = 2;
        HttpChatProvider provider(config);
        CHECK_THROWS_AS(provider.chat({"q1", std::nullopt, "user", 1}), TransportError);
    }

    SECTION("missing API key env fails before any network call") {
        unsetenv("HIREBIAS_MISSING_KEY");
        config.endpoint_url = base + "/v1/chat";
        config.api_key_env = "HIREBIAS_MISSING_KEY";
        CHECK_THROWS_AS(HttpChatProvider(config), ConfigError);
    }

    server.stop();
    server_thread.join();
}
