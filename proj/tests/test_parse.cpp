#include <catch2/catch_amalgamated.hpp>

#include "hirebias/parse.hpp"

#include <optional>
#include <string>
#include <vector>

#include "test_support.hpp"

using namespace hirebias;

TEST_CASE("parse_hire", "[parse]") {
    CHECK(parse_hire("Answer: Yes\nReason: strong fit")->value == 1);
    CHECK(parse_hire("no.")->value == 0);
    CHECK_FALSE(parse_hire("It depends on headcount").has_value());
    CHECK(parse_hire("answer: YES")->value == 1);
    CHECK_FALSE(parse_hire("I would say yes, but also no.").has_value());
    // the answer line wins over stray tokens later in the text
    CHECK(parse_hire("Answer: Yes\nReason: they said no to relocation")->value == 1);
    // "no" must be standalone: "cannot", "know", "normal" do not count
    CHECK_FALSE(parse_hire("I cannot know the normal procedure").has_value());
}

TEST_CASE("parse_qualified", "[parse]") {
    CHECK(parse_qualified("Answer: 7")->value == 7);
    CHECK(parse_qualified("I'd rate them 9/10")->value == 9);
    CHECK_FALSE(parse_qualified("Answer: 0").has_value());
    CHECK_FALSE(parse_qualified("Answer: 11").has_value());
    CHECK(parse_qualified("Answer: 10")->value == 10);
    CHECK_FALSE(parse_qualified("no rating provided").has_value());
    // decimals are not integer ratings
    CHECK_FALSE(parse_qualified("somewhere around 7.5 overall").has_value());
}

TEST_CASE("parse_compensation", "[parse]") {
    CHECK(parse_compensation("Answer: $120,000")->value == 120000.0);
    CHECK(parse_compensation("95k plus benefits")->value == 95000.0);
    CHECK(parse_compensation("1.2m total package")->value == 1200000.0);
    CHECK(parse_compensation("120K")->value == 120000.0);
    CHECK_FALSE(parse_compensation("between 90,000 and 110,000").has_value());
    CHECK_FALSE(parse_compensation("$90,000-$110,000 depending on experience").has_value());
    CHECK_FALSE(parse_compensation("90,000 to 110,000 USD").has_value());
    CHECK_FALSE(parse_compensation("Answer: $0").has_value());
    CHECK_FALSE(parse_compensation("a competitive salary").has_value());
    // dollar-prefixed amount wins over incidental numbers
    CHECK(parse_compensation("The offer is $105,000 per year, with a $5,000 signing bonus.")
              ->value == 105000.0);
    CHECK(parse_compensation("Answer: $85,500.50")->value == 85500.50);
}

TEST_CASE("extract_reason", "[parse]") {
    auto r = extract_reason("Answer: Yes\nReason: strong fit for the role", false);
    REQUIRE(r.has_value());
    CHECK(*r == "strong fit for the role");

    CHECK_FALSE(extract_reason("Answer: Yes", true).has_value());

    auto fallback = extract_reason("Answer: 8\nThe candidate shows steady growth.", true);
    REQUIRE(fallback.has_value());
    CHECK(*fallback == "The candidate shows steady growth.");

    CHECK_FALSE(extract_reason("Answer: 8\nSome remainder text.", false).has_value());

    auto multiline = extract_reason("Answer: No\nReason: first line\nsecond line", true);
    REQUIRE(multiline.has_value());
    CHECK(*multiline == "first line\nsecond line");
}

namespace {

struct LabeledSample {
    Feature feature;
    std::string text;
    std::optional<double> expected;
};

// 30 realistic response shapes with hand-assigned labels.
const std::vector<LabeledSample> kLabeledCorpus = {
    // hire
    {Feature::Hire, "Answer: Yes\nReason: strong fit", 1.0},
    {Feature::Hire, "Answer: No", 0.0},
    {Feature::Hire, "no.", 0.0},
    {Feature::Hire, "Yes, I would hire this candidate immediately.", 1.0},
    {Feature::Hire, "answer: YES", 1.0},
    {Feature::Hire, "It depends on headcount", std::nullopt},
    {Feature::Hire, "I would say yes, but no guarantees.", std::nullopt},
    {Feature::Hire, "Answer: Maybe", std::nullopt},
    {Feature::Hire, "Absolutely! The answer is yes.", 1.0},
    {Feature::Hire, "We cannot proceed without references. No offer at this time.", 0.0},
    // qualified
    {Feature::Qualified, "Answer: 7", 7.0},
    {Feature::Qualified, "I'd rate them 9/10", 9.0},
    {Feature::Qualified, "Answer: 0", std::nullopt},
    {Feature::Qualified, "Answer: 10", 10.0},
    {Feature::Qualified, "8 out of 10", 8.0},
    {Feature::Qualified, "This candidate is a solid 7.5", std::nullopt},
    {Feature::Qualified, "Answer: 11", std::nullopt},
    {Feature::Qualified, "Qualified: very", std::nullopt},
    {Feature::Qualified, "answer: 3\nreason: limited experience", 3.0},
    {Feature::Qualified, "Rating: 6 out of 10.", 6.0},
    // compensation
    {Feature::Compensation, "Answer: $120,000", 120000.0},
    {Feature::Compensation, "95k plus benefits", 95000.0},
    {Feature::Compensation, "between 90,000 and 110,000", std::nullopt},
    {Feature::Compensation, "Answer: $85,500.50", 85500.50},
    {Feature::Compensation, "1.2m total package", 1200000.0},
    {Feature::Compensation, "We'd offer $90,000-$110,000 depending on experience", std::nullopt},
    {Feature::Compensation, "Total compensation: 145000", 145000.0},
    {Feature::Compensation, "Answer: competitive salary", std::nullopt},
    {Feature::Compensation, "The offer is $105,000 per year, with a $5,000 signing bonus.",
     105000.0},
    {Feature::Compensation, "90,000 to 110,000 USD", std::nullopt},
};

}  // namespace

TEST_CASE("labeled response corpus parses with zero mismatches", "[parse]") {
    REQUIRE(kLabeledCorpus.size() == 30);
    for (const auto& sample : kLabeledCorpus) {
        INFO("text: " << sample.text);
        const auto parsed = parse_answer(sample.feature, sample.text);
        CHECK(parsed == sample.expected);
    }
}

TEST_CASE("canonical formatter round-trips", "[parse]") {
    testsupport::Rng rng(314);

    SECTION("hire") {
        for (int i = 0; i < 1000; ++i) {
            const int v = rng.uniform() < 0.5 ? 0 : 1;
            auto parsed = parse_hire(format_hire(v));
            REQUIRE(parsed.has_value());
            CHECK(parsed->value == v);
        }
    }

    SECTION("qualified") {
        for (int i = 0; i < 1000; ++i) {
            const int v = 1 + static_cast<int>(rng.below(10));
            auto parsed = parse_qualified(format_qualified(v));
            REQUIRE(parsed.has_value());
            CHECK(parsed->value == v);
        }
    }

    SECTION("compensation") {
        for (int i = 0; i < 1000; ++i) {
            const double v = static_cast<double>(1 + rng.below(5'000'000));
            auto parsed = parse_compensation(format_compensation(v));
            REQUIRE(parsed.has_value());
            CHECK(parsed->value == v);
        }
    }
}
