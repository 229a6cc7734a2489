#pragma once

// Answer extraction from raw model text. Parsers are pure, locale-independent
// (only '.', ',' and '$' carry meaning) and return nullopt on failure, which
// the runner treats as a retry signal.

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hirebias/types.hpp"

namespace hirebias {

struct HireAnswer {
    int value = 0;  // yes = 1, no = 0
};

struct QualifiedAnswer {
    int value = 0;  // 1..10
};

struct CompensationAnswer {
    double value = 0.0;  // positive annual USD
};

namespace detail {

inline char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

inline bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
inline bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

inline bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (lower(a[i]) != lower(b[i])) return false;
    return true;
}

inline std::size_t ifind(std::string_view haystack, std::string_view needle,
                         std::size_t from = 0) {
    if (needle.empty() || haystack.size() < needle.size()) return std::string_view::npos;
    for (std::size_t i = from; i + needle.size() <= haystack.size(); ++i) {
        if (iequals(haystack.substr(i, needle.size()), needle)) return i;
    }
    return std::string_view::npos;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// The answer-format line: first line containing "answer:" (case-insensitive);
// returns the text after the marker.
inline std::optional<std::string_view> answer_line(std::string_view text) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        const std::string_view line = text.substr(pos, eol - pos);
        const std::size_t marker = ifind(line, "answer:");
        if (marker != std::string_view::npos) return trim(line.substr(marker + 7));
        pos = eol + 1;
    }
    return std::nullopt;
}

// Standalone word tokens (letter runs bounded by non-letters).
inline std::vector<std::string_view> word_tokens(std::string_view text) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        if (is_alpha(text[i])) {
            std::size_t j = i;
            while (j < text.size() && is_alpha(text[j])) ++j;
            tokens.push_back(text.substr(i, j - i));
            i = j;
        } else {
            ++i;
        }
    }
    return tokens;
}

struct MoneyToken {
    std::size_t begin = 0;
    std::size_t end = 0;  // one past the last consumed character
    double value = 0.0;
};

// A money token: optional '$', digits with optional comma separators and an
// optional decimal part, then an optional k/K (x1000) or m/M (x1000000)
// multiplier suffix. The suffix must end the word.
inline std::optional<MoneyToken> scan_money(std::string_view text, std::size_t from) {
    for (std::size_t i = from; i < text.size(); ++i) {
        if (!is_digit(text[i])) continue;
        // reject digits glued to a preceding letter ("v2", "B2B")
        std::size_t start = i;
        if (start > 0 && text[start - 1] == '$') --start;
        if (start > 0 && (is_alpha(text[start - 1]) || is_digit(text[start - 1]))) {
            while (i < text.size() && (is_digit(text[i]) || is_alpha(text[i]))) ++i;
            continue;
        }

        std::string digits;
        std::size_t j = i;
        while (j < text.size() && (is_digit(text[j]) || text[j] == ',')) {
            if (text[j] != ',') digits += text[j];
            ++j;
        }
        if (j > i && text[j - 1] == ',') --j;  // trailing comma is punctuation
        if (j < text.size() && text[j] == '.' && j + 1 < text.size() && is_digit(text[j + 1])) {
            digits += '.';
            ++j;
            while (j < text.size() && is_digit(text[j])) {
                digits += text[j];
                ++j;
            }
        }
        double multiplier = 1.0;
        if (j < text.size() && (lower(text[j]) == 'k' || lower(text[j]) == 'm') &&
            (j + 1 >= text.size() || !is_alpha(text[j + 1]))) {
            multiplier = lower(text[j]) == 'k' ? 1e3 : 1e6;
            ++j;
        }

        MoneyToken token;
        token.begin = start;
        token.end = j;
        token.value = std::strtod(digits.c_str(), nullptr) * multiplier;
        return token;
    }
    return std::nullopt;
}

inline std::vector<MoneyToken> money_tokens(std::string_view text) {
    std::vector<MoneyToken> tokens;
    std::size_t pos = 0;
    while (auto token = scan_money(text, pos)) {
        tokens.push_back(*token);
        pos = token->end;
    }
    return tokens;
}

// Two amounts joined by a dash or by "to"/"and" form a range.
inline bool is_range_separator(std::string_view gap, bool saw_between) {
    gap = trim(gap);
    if (gap == "-" || gap == "–" || gap == "—") return true;
    if (iequals(gap, "to")) return true;
    if (saw_between && iequals(gap, "and")) return true;
    return false;
}

}  // namespace detail

// Yes/no extraction: prefer the answer-format line, fall back to standalone
// yes/no word tokens anywhere in the text. Seeing both (or neither) is a
// parse failure.
inline std::optional<HireAnswer> parse_hire(std::string_view text) {
    const auto line = detail::answer_line(text);
    const std::string_view region = line ? *line : text;
    bool saw_yes = false, saw_no = false;
    for (const auto& token : detail::word_tokens(region)) {
        if (detail::iequals(token, "yes")) saw_yes = true;
        if (detail::iequals(token, "no")) saw_no = true;
    }
    if (saw_yes == saw_no) return std::nullopt;
    return HireAnswer{saw_yes ? 1 : 0};
}

// Rating extraction: the first integer in the answer line (or, without one,
// in the whole text); "8/10" reads as 8. Values outside 1..10 fail.
inline std::optional<QualifiedAnswer> parse_qualified(std::string_view text) {
    const auto line = detail::answer_line(text);
    const std::string_view region = line ? *line : text;

    for (std::size_t i = 0; i < region.size(); ++i) {
        if (!detail::is_digit(region[i])) continue;
        if (i > 0 && (detail::is_alpha(region[i - 1]) || region[i - 1] == '.')) {
            while (i < region.size() && (detail::is_digit(region[i]) || detail::is_alpha(region[i])))
                ++i;
            continue;
        }
        std::size_t j = i;
        while (j < region.size() && detail::is_digit(region[j])) ++j;
        // a decimal like "7.5" is not an integer rating; skip it whole
        if (j < region.size() && region[j] == '.' && j + 1 < region.size() &&
            detail::is_digit(region[j + 1])) {
            i = j + 1;
            while (i < region.size() && detail::is_digit(region[i])) ++i;
            continue;
        }
        long value = std::strtol(std::string(region.substr(i, j - i)).c_str(), nullptr, 10);
        // "9/10" style: numerator is the rating
        if (j < region.size() && region[j] == '/' && region.substr(j + 1, 2) == "10" &&
            (j + 3 >= region.size() || !detail::is_digit(region[j + 3]))) {
            // value already holds the numerator
        }
        if (value < 1 || value > 10) return std::nullopt;
        return QualifiedAnswer{static_cast<int>(value)};
    }
    return std::nullopt;
}

// Compensation extraction: "$120,000", "120000", "120k", "1.2m". Ranges
// ("between X and Y", "X-Y", "X to Y") fail so a midpoint never silently
// replaces a single offer. Prefers '$'-prefixed amounts when present.
inline std::optional<CompensationAnswer> parse_compensation(std::string_view text) {
    const auto line = detail::answer_line(text);
    const std::string_view region = line ? *line : text;

    const auto tokens = detail::money_tokens(region);
    if (tokens.empty()) return std::nullopt;

    const bool saw_between = detail::ifind(region, "between") != std::string_view::npos;
    if (saw_between && tokens.size() >= 2) return std::nullopt;
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        const std::string_view gap =
            region.substr(tokens[i].end, tokens[i + 1].begin - tokens[i].end);
        if (detail::is_range_separator(gap, saw_between)) return std::nullopt;
    }

    const detail::MoneyToken* chosen = &tokens.front();
    for (const auto& token : tokens) {
        if (region[token.begin] == '$') {
            chosen = &token;
            break;
        }
    }
    if (!(chosen->value > 0.0) || !std::isfinite(chosen->value)) return std::nullopt;
    return CompensationAnswer{chosen->value};
}

// Uniform numeric view used by the runner and the result store: hire answers
// become 0/1.
inline std::optional<double> parse_answer(Feature feature, std::string_view text) {
    switch (feature) {
        case Feature::Hire: {
            const auto a = parse_hire(text);
            return a ? std::optional<double>(a->value) : std::nullopt;
        }
        case Feature::Qualified: {
            const auto a = parse_qualified(text);
            return a ? std::optional<double>(a->value) : std::nullopt;
        }
        case Feature::Compensation: {
            const auto a = parse_compensation(text);
            return a ? std::optional<double>(a->value) : std::nullopt;
        }
    }
    return std::nullopt;
}

// Reason text: everything after the first "Reason:" marker; when a reason
// perturbation is active and no marker exists, the remainder after the
// answer line.
inline std::optional<std::string> extract_reason(std::string_view text, bool reason_requested) {
    const std::size_t marker = detail::ifind(text, "reason:");
    if (marker != std::string_view::npos) {
        const auto reason = detail::trim(text.substr(marker + 7));
        if (!reason.empty()) return std::string(reason);
        return std::nullopt;
    }
    if (!reason_requested) return std::nullopt;

    // remainder after the line holding the answer marker, else after line one
    std::size_t line_start = 0;
    const std::size_t answer_pos = detail::ifind(text, "answer:");
    if (answer_pos != std::string_view::npos) line_start = answer_pos;
    const std::size_t eol = text.find('\n', line_start);
    if (eol == std::string_view::npos) return std::nullopt;
    const auto rest = detail::trim(text.substr(eol + 1));
    if (rest.empty()) return std::nullopt;
    return std::string(rest);
}

// Canonical formatters: the exact answer shapes the prompts request. Used by
// the mock provider; parse(format(v)) round-trips exactly.
inline std::string format_hire(int value) {
    return value ? "Answer: Yes" : "Answer: No";
}

inline std::string format_qualified(int value) {
    return "Answer: " + std::to_string(value);
}

inline std::string format_compensation(double dollars) {
    long long whole = static_cast<long long>(dollars);
    const double frac = dollars - static_cast<double>(whole);
    std::string digits = std::to_string(whole);
    std::string grouped;
    int count = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (count != 0 && count % 3 == 0) grouped += ',';
        grouped += *it;
        ++count;
    }
    std::string out = "Answer: $" + std::string(grouped.rbegin(), grouped.rend());
    if (frac > 0.0) {
        const int cents = static_cast<int>(std::lround(frac * 100.0));
        out += '.';
        if (cents < 10) out += '0';
        out += std::to_string(cents);
    }
    return out;
}

}  // namespace hirebias
