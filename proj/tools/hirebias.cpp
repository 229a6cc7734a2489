// Command-line pipeline: corpus -> plan -> run -> report.
//
// Exit codes: 0 success, 1 runtime failure, 2 validation/config error.

#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hirebias/config.hpp"
#include "hirebias/corpus.hpp"
#include "hirebias/prompt.hpp"
#include "hirebias/report.hpp"
#include "hirebias/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

void print_usage() {
    std::cout <<
        "usage: hirebias <command> [options]\n"
        "\n"
        "commands:\n"
        "  names     select gender-neutral names from an aggregated census CSV\n"
        "  plan      enumerate the full prompt matrix and write it as JSONL\n"
        "  run       execute a plan against the configured provider\n"
        "  report    turn result stores into Markdown and CSV reports\n"
        "\n"
        "names options:\n"
        "  --census PATH        aggregated census CSV (name,female_count,male_count)\n"
        "  --k N                how many names to keep (default 25)\n"
        "\n"
        "plan options:\n"
        "  --config PATH        run configuration (JSON)\n"
        "  --dataset D          gendered | pronouns | both (overrides config)\n"
        "  --out PATH           plan output path (default plan.jsonl)\n"
        "\n"
        "run options:\n"
        "  --config PATH        run configuration (JSON)\n"
        "  --plan PATH          plan JSONL produced by 'plan'\n"
        "  --store PATH         result store path (overrides config)\n"
        "  --resume             skip queries that already have an Ok record\n"
        "  --concurrency N      worker count (overrides config)\n"
        "  --max-attempts N     per-query retry budget (overrides config)\n"
        "  --seed N             mock provider seed (overrides config)\n"
        "\n"
        "report options:\n"
        "  --store PATH         result store; repeat to merge several stores\n"
        "  --out DIR            output directory (default report)\n"
        "  --threshold X        significance boldface threshold (default 0.1)\n";
}

struct Args {
    std::map<std::string, std::string> values;
    std::map<std::string, std::vector<std::string>> lists;
    std::set<std::string> flags;
};

// Flags in `value_keys` take one argument; `list_keys` may repeat;
// `flag_keys` are bare. Anything else is an error.
Args parse_args(const std::vector<std::string>& argv, std::set<std::string> value_keys,
                std::set<std::string> list_keys, std::set<std::string> flag_keys) {
    Args args;
    for (std::size_t i = 0; i < argv.size(); ++i) {
        const std::string& arg = argv[i];
        if (flag_keys.count(arg)) {
            args.flags.insert(arg);
        } else if (value_keys.count(arg) || list_keys.count(arg)) {
            if (i + 1 >= argv.size())
                throw hirebias::ConfigError("flag " + arg + " needs a value");
            if (list_keys.count(arg)) {
                args.lists[arg].push_back(argv[++i]);
            } else {
                if (args.values.count(arg))
                    throw hirebias::ConfigError("flag " + arg + " given twice");
                args.values[arg] = argv[++i];
            }
        } else {
            throw hirebias::ConfigError("unknown flag " + arg);
        }
    }
    return args;
}

std::size_t parse_size(const std::string& s, const std::string& flag) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw hirebias::ConfigError("flag " + flag + " needs an unsigned integer, got " + s);
    }
}

const std::string& require(const Args& args, const std::string& flag) {
    const auto it = args.values.find(flag);
    if (it == args.values.end()) throw hirebias::ConfigError("missing required flag " + flag);
    return it->second;
}

std::vector<hirebias::NameRecord> names_for_dataset(const hirebias::RunConfig& config,
                                                    const std::string& dataset) {
    using namespace hirebias;
    if (dataset == "gendered") return builtin_gendered_names();
    if (dataset == "pronouns") {
        if (config.census_csv.empty())
            throw ConfigError("the pronouns dataset needs census_csv in the config");
        const auto stats = load_census_csv(config.census_csv);
        return pronoun_variants(select_gender_neutral(stats, config.census_k));
    }
    throw ConfigError("unknown dataset " + dataset);
}

int cmd_names(const std::vector<std::string>& argv) {
    using namespace hirebias;
    const auto args = parse_args(argv, {"--census", "--k"}, {}, {});
    const auto stats = load_census_csv(require(args, "--census"));
    std::size_t k = 25;
    if (args.values.count("--k")) k = parse_size(args.values.at("--k"), "--k");
    const auto names = select_gender_neutral(stats, k);
    for (std::size_t i = 0; i < names.size(); ++i)
        std::cout << (i ? ", " : "") << names[i];
    std::cout << "\n";
    return kExitOk;
}

int cmd_plan(const std::vector<std::string>& argv) {
    using namespace hirebias;
    const auto args = parse_args(argv, {"--config", "--dataset", "--out"}, {}, {});
    auto config = load_config(require(args, "--config"));
    if (args.values.count("--dataset")) {
        config.dataset = args.values.at("--dataset");
        if (config.dataset != "gendered" && config.dataset != "pronouns" &&
            config.dataset != "both")
            throw ConfigError("--dataset must be gendered, pronouns or both");
    }
    if (config.corpus_root.empty()) throw ConfigError("config needs corpus_root");

    const auto ingest = ingest_resumes(config.corpus_root);
    for (const auto& warning : ingest.warnings) std::cerr << "warning: " << warning << "\n";

    const std::vector<Question> questions(standard_questions().begin(),
                                          standard_questions().end());
    std::vector<QuerySpec> specs;
    const std::vector<std::string> datasets =
        config.dataset == "both" ? std::vector<std::string>{"gendered", "pronouns"}
                                 : std::vector<std::string>{config.dataset};
    for (const auto& dataset : datasets) {
        auto part = plan(names_for_dataset(config, dataset), ingest.records, questions,
                         config.perturbations, config.provider.model_id,
                         config.provider.system_supported);
        specs.insert(specs.end(), std::make_move_iterator(part.begin()),
                     std::make_move_iterator(part.end()));
    }

    const std::string out = args.values.count("--out") ? args.values.at("--out") : "plan.jsonl";
    write_plan_jsonl(specs, out);
    std::cout << specs.size() << "\n";
    return kExitOk;
}

int cmd_run(const std::vector<std::string>& argv) {
    using namespace hirebias;
    const auto args = parse_args(
        argv, {"--config", "--plan", "--store", "--concurrency", "--max-attempts", "--seed"}, {},
        {"--resume"});
    auto config = load_config(require(args, "--config"));
    if (args.values.count("--store")) config.store_path = args.values.at("--store");
    if (args.values.count("--concurrency"))
        config.concurrency = parse_size(args.values.at("--concurrency"), "--concurrency");
    if (args.values.count("--max-attempts"))
        config.max_attempts = parse_size(args.values.at("--max-attempts"), "--max-attempts");
    if (args.values.count("--seed"))
        config.mock_profile.seed = parse_size(args.values.at("--seed"), "--seed");
    if (config.concurrency == 0 || config.max_attempts == 0)
        throw ConfigError("concurrency and max-attempts must be >= 1");

    auto specs = read_plan_jsonl(require(args, "--plan"));
    if (specs.empty()) throw ConfigError("plan file holds no queries");

    const auto provider = make_provider(config);  // validates keys before any network call
    if (args.flags.count("--resume")) {
        const auto before = specs.size();
        specs = resume(specs, config.store_path);
        std::cerr << "resume: " << (before - specs.size()) << " queries already done, "
                  << specs.size() << " remaining\n";
        if (specs.empty()) {
            std::cout << "ok=0 exhausted=0 store=" << config.store_path.string() << "\n";
            return kExitOk;
        }
    }

    RunLimits limits(config.max_attempts, config.concurrency);
    ResultStore store(config.store_path, true);
    const auto records = run(specs, *provider, store, limits);

    std::size_t ok = 0, exhausted = 0;
    for (const auto& r : records)
        (r.status == ResponseRecord::Status::Ok ? ok : exhausted) += 1;
    std::cout << "ok=" << ok << " exhausted=" << exhausted
              << " store=" << config.store_path.string() << "\n";
    return kExitOk;
}

int cmd_report(const std::vector<std::string>& argv) {
    using namespace hirebias;
    const auto args = parse_args(argv, {"--out", "--threshold"}, {"--store"}, {});
    const auto it = args.lists.find("--store");
    if (it == args.lists.end()) throw ConfigError("missing required flag --store");

    std::vector<ResponseRecord> records;
    for (const auto& path : it->second) {
        auto part = read_store(path);
        records.insert(records.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
    }

    ReportOptions options;
    if (args.values.count("--threshold")) {
        try {
            options.significance_threshold = std::stod(args.values.at("--threshold"));
        } catch (const std::exception&) {
            throw ConfigError("--threshold needs a number");
        }
    }

    const std::string out = args.values.count("--out") ? args.values.at("--out") : "report";
    write_report(records, out, options);
    std::cout << "report written to " << out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        print_usage();
        return kExitValidation;
    }
    const std::string command = argv[1];
    if (command == "--help" || command == "-h" || command == "help") {
        print_usage();
        return kExitOk;
    }
    const std::vector<std::string> rest(argv + 2, argv + argc);

    try {
        if (command == "names") return cmd_names(rest);
        if (command == "plan") return cmd_plan(rest);
        if (command == "run") return cmd_run(rest);
        if (command == "report") return cmd_report(rest);
        std::cerr << "error: unknown command '" << command << "'\n\n";
        print_usage();
        return kExitValidation;
    } catch (const hirebias::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const hirebias::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const hirebias::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const hirebias::InsufficientNamesError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const hirebias::IngestError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const hirebias::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
