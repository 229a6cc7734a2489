#pragma once

// Plan execution. Queries run independently on a bounded worker pool; a
// refusal or unparseable response re-sends the identical prompt until the
// per-query attempt budget runs out, at which point the record is persisted
// as Exhausted. One writer commits records to the store in plan order, so a
// deterministic provider yields a byte-identical store at any concurrency,
// and a crash always leaves a durable plan prefix behind.

#include <condition_variable>
#include <cstddef>
#include <ctime>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "hirebias/parse.hpp"
#include "hirebias/prompt.hpp"
#include "hirebias/provider.hpp"
#include "hirebias/store.hpp"

namespace hirebias {

struct RunLimits {
    std::size_t max_attempts = 20;  // shared budget for refusals and parse failures
    std::size_t concurrency = 8;
    std::function<std::string()> clock;  // optional override, mostly for tests

    RunLimits() = default;
    RunLimits(std::size_t attempts, std::size_t workers)
        : max_attempts(attempts), concurrency(workers) {}
};

namespace detail {

inline std::string utc_timestamp_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[24];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline constexpr const char* kFixedTimestamp = "1970-01-01T00:00:00Z";

inline ResponseRecord execute_query(const QuerySpec& spec, Provider& provider,
                                    const RunLimits& limits, const std::string& timestamp) {
    const Prompt prompt = build_prompt(spec);
    const bool wants_reason = asks_for_reason(spec.perturbation);

    ResponseRecord record;
    record.query_id = spec.id;
    record.model = spec.model;
    record.dataset = spec.name.dataset;
    record.perturbation = spec.perturbation;
    record.feature = spec.question.feature;
    record.sector = spec.resume.sector;
    record.resume_id = spec.resume.id;
    record.name = spec.name.display_name;
    record.gender = spec.name.gender;
    record.timestamp = timestamp;

    std::size_t refusals = 0;
    std::string last_raw;
    for (std::size_t attempt = 1; attempt <= limits.max_attempts; ++attempt) {
        std::string raw;
        try {
            raw = provider.chat({spec.id, prompt.system_text, prompt.user_text, attempt});
        } catch (const RefusalError&) {
            ++refusals;
            continue;  // identical prompt, next attempt
        } catch (const TransportError& e) {
            last_raw = std::string("[transport error] ") + e.what();
            continue;
        }
        last_raw = raw;
        if (const auto value = parse_answer(spec.question.feature, raw)) {
            record.raw_text = raw;
            record.parsed_value = value;
            record.reason_text = extract_reason(raw, wants_reason);
            record.attempts = attempt;
            record.refusals = refusals;
            record.status = ResponseRecord::Status::Ok;
            return record;
        }
    }

    record.raw_text = last_raw;
    record.attempts = limits.max_attempts;
    record.refusals = refusals;
    record.status = ResponseRecord::Status::Exhausted;
    return record;
}

}  // namespace detail

// Executes a plan and appends every completed record to the store. Returns
// all records sorted by query id. Throws StoreError (with the last durable
// offset) if the store stops accepting writes.
inline std::vector<ResponseRecord> run(const std::vector<QuerySpec>& plan, Provider& provider,
                                       ResultStore& store, const RunLimits& limits = {}) {
    if (plan.empty()) throw DomainError("run: empty plan");
    if (limits.max_attempts == 0) throw DomainError("run: max_attempts must be >= 1");
    if (limits.concurrency == 0) throw DomainError("run: concurrency must be >= 1");

    std::function<std::string()> clock = limits.clock;
    if (!clock) {
        if (provider.deterministic())
            clock = [] { return std::string(detail::kFixedTimestamp); };
        else
            clock = detail::utc_timestamp_now;
    }

    std::vector<ResponseRecord> results(plan.size());
    std::mutex mutex;
    std::map<std::size_t, ResponseRecord> pending;  // completed but not yet durable
    std::size_t next_fetch = 0;
    std::size_t next_commit = 0;
    std::exception_ptr failure;

    auto worker = [&] {
        while (true) {
            std::size_t index;
            {
                std::lock_guard<std::mutex> lock(mutex);
                if (failure || next_fetch >= plan.size()) return;
                index = next_fetch++;
            }
            ResponseRecord record = detail::execute_query(plan[index], provider, limits, clock());
            {
                std::lock_guard<std::mutex> lock(mutex);
                if (failure) return;
                pending.emplace(index, std::move(record));
                // commit in plan order so the on-disk store is deterministic
                while (!pending.empty() && pending.begin()->first == next_commit) {
                    try {
                        store.append(pending.begin()->second);
                    } catch (...) {
                        failure = std::current_exception();
                        return;
                    }
                    results[next_commit] = std::move(pending.begin()->second);
                    pending.erase(pending.begin());
                    ++next_commit;
                }
            }
        }
    };

    const std::size_t workers = std::min(limits.concurrency, plan.size());
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    if (failure) std::rethrow_exception(failure);

    std::sort(results.begin(), results.end(),
              [](const ResponseRecord& a, const ResponseRecord& b) {
                  return a.query_id < b.query_id;
              });
    return results;
}

// Crash-safe continuation: the specs with no Ok record yet, in plan order.
inline std::vector<QuerySpec> resume(const std::vector<QuerySpec>& plan,
                                     const std::filesystem::path& store_path) {
    std::unordered_set<std::string> done;
    if (std::filesystem::exists(store_path)) {
        for (const auto& record : read_store(store_path))
            if (record.status == ResponseRecord::Status::Ok) done.insert(record.query_id);
    }
    std::vector<QuerySpec> remaining;
    for (const auto& spec : plan)
        if (!done.count(spec.id)) remaining.push_back(spec);
    return remaining;
}

}  // namespace hirebias
