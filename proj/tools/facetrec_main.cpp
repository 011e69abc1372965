// facetrec command-line interface.
//
// Subcommands: ingest, stats, evaluate, bench, recommend, serve.
// Every error exits nonzero with a diagnostic on stderr.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "facetrec/bench.hpp"
#include "facetrec/evaluator.hpp"
#include "facetrec/ingest.hpp"
#include "facetrec/profile.hpp"
#include "facetrec/recommender.hpp"
#include "facetrec/report.hpp"
#include "facetrec/server.hpp"
#include "facetrec/split.hpp"
#include "facetrec/stats.hpp"
#include "facetrec/synthetic.hpp"
#include "facetrec/version.hpp"

namespace {

using facetrec::Dataset;
using json = nlohmann::json;

struct InputFlags {
    std::string data_dir;
    std::string input_file;
    std::string format = "tsv";
    std::string mode = "implicit";
    bool header = false;
    bool strict = false;
};

void add_input_flags(CLI::App* cmd, InputFlags& flags) {
    auto* data = cmd->add_option("--data", flags.data_dir,
                                 "Saved dataset directory (from `ingest --output`)");
    auto* input =
        cmd->add_option("--input", flags.input_file, "Raw interaction file to ingest on the fly");
    data->excludes(input);
    cmd->add_option("--format", flags.format, "Input file format")
        ->check(CLI::IsMember({"csv", "tsv"}))
        ->needs(input);
    cmd->add_option("--mode", flags.mode, "implicit ignores weights; explicit keeps them")
        ->check(CLI::IsMember({"implicit", "explicit"}));
    cmd->add_flag("--header", flags.header, "Skip the first line of the input file")->needs(input);
    cmd->add_flag("--strict", flags.strict, "Fail on the first malformed row")->needs(input);
}

facetrec::IngestOptions ingest_options(const InputFlags& flags) {
    facetrec::IngestOptions opts;
    opts.format = flags.format == "csv" ? facetrec::FileFormat::Csv : facetrec::FileFormat::Tsv;
    opts.implicit_mode = flags.mode == "implicit";
    opts.has_header = flags.header;
    opts.strict = flags.strict;
    return opts;
}

Dataset load_input(const InputFlags& flags) {
    if (!flags.data_dir.empty()) return facetrec::load_dataset(flags.data_dir);
    if (!flags.input_file.empty()) return facetrec::ingest_file(flags.input_file, ingest_options(flags));
    throw std::runtime_error("one of --data or --input is required");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc);
    if (!out || !(out << content).flush()) {
        throw std::runtime_error("cannot write " + path);
    }
}

json moments_json(const facetrec::Moments& m) {
    return json{{"count", m.count},
                {"mean", m.mean},
                {"std", m.std_dev},
                {"skewness", m.skewness},
                {"kurtosis", m.kurtosis}};
}

int run_ingest(const InputFlags& flags, const std::string& output_dir) {
    const Dataset dataset = facetrec::ingest_file(flags.input_file, ingest_options(flags));
    facetrec::save_dataset(dataset, output_dir);
    json j{{"output", output_dir},
           {"num_users", dataset.store.num_users()},
           {"num_items", dataset.store.num_items()},
           {"num_interactions", dataset.store.num_interactions()},
           {"ingested_rows", dataset.ingested_rows},
           {"malformed_rows", dataset.malformed_rows}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_stats(const InputFlags& flags, const std::string& estimator) {
    const Dataset dataset = load_input(flags);
    const auto which = estimator == "bias-corrected" ? facetrec::MomentEstimator::BiasCorrected
                                                     : facetrec::MomentEstimator::Population;
    const facetrec::DatasetStats stats = facetrec::dataset_stats(dataset.store, which);
    json j = moments_json(stats.user_history);
    j.erase("count");
    j["num_users"] = stats.num_users;
    j["num_items"] = stats.num_items;
    j["num_interactions"] = stats.num_interactions;
    j["density"] = stats.density;
    j["estimator"] = estimator;
    std::cout << j.dump(2) << "\n";
    return 0;
}

struct EvaluateFlags {
    InputFlags input;
    std::string profiles_path;
    std::size_t holdout = 10;
    std::size_t min_interactions = 11;
    std::size_t k = 10;
    std::uint64_t seed = 42;
    std::size_t parallelism = 1;
    std::string report_path;
    std::string csv_path;
    std::string curve_path;
};

int run_evaluate(const EvaluateFlags& flags) {
    const Dataset dataset = load_input(flags.input);
    const auto profiles = facetrec::load_profiles_file(flags.profiles_path);
    const facetrec::SplitResult split =
        facetrec::split(dataset.store, flags.min_interactions, flags.holdout, flags.seed);

    facetrec::EvaluateOptions options;
    options.k = flags.k;
    options.parallelism = flags.parallelism;
    const auto reports = facetrec::evaluate_profiles(split.train, split.test, profiles, options);

    facetrec::RunInfo info;
    info.seed = flags.seed;
    info.dataset_fingerprint = facetrec::store_fingerprint(dataset.store);
    info.parallelism = flags.parallelism;

    const std::string report_json = facetrec::report_to_json(reports, info);
    if (flags.report_path.empty()) {
        std::cout << report_json;
    } else {
        write_file(flags.report_path, report_json);
    }
    if (!flags.csv_path.empty()) write_file(flags.csv_path, facetrec::report_to_csv(reports));
    if (!flags.curve_path.empty()) write_file(flags.curve_path, facetrec::curve_to_csv(reports));
    return 0;
}

struct BenchFlags {
    facetrec::SyntheticSpec spec;
    facetrec::BenchConfig config;
    std::string save_dataset_dir;
};

Dataset wrap_synthetic(facetrec::InteractionStore store, std::size_t num_users,
                       std::size_t num_items) {
    Dataset dataset;
    dataset.store = std::move(store);
    for (std::size_t u = 0; u < num_users; ++u) dataset.users.id_for("u" + std::to_string(u));
    for (std::size_t i = 0; i < num_items; ++i) dataset.items.id_for("i" + std::to_string(i));
    dataset.ingested_rows = dataset.store.num_interactions();
    return dataset;
}

int run_bench(const BenchFlags& flags) {
    facetrec::InteractionStore store = facetrec::generate_synthetic(flags.spec);
    if (!flags.save_dataset_dir.empty()) {
        const Dataset dataset =
            wrap_synthetic(std::move(store), flags.spec.num_users, flags.spec.num_items);
        facetrec::save_dataset(dataset, flags.save_dataset_dir);
        const auto report = facetrec::run_latency_comparison(dataset.store, flags.config);
        std::cout << facetrec::bench_report_to_json(report);
    } else {
        const auto report = facetrec::run_latency_comparison(store, flags.config);
        std::cout << facetrec::bench_report_to_json(report);
    }
    return 0;
}

struct RecommendFlags {
    InputFlags input;
    std::string profiles_path;
    std::string profile_name;
    std::string user_key;
    std::size_t k = 10;
};

int run_recommend(const RecommendFlags& flags) {
    const Dataset dataset = load_input(flags.input);
    const auto profiles = facetrec::load_profiles_file(flags.profiles_path);
    const facetrec::RecommenderProfile& profile =
        facetrec::find_profile(profiles, flags.profile_name);

    json items = json::array();
    if (const auto user = dataset.users.find(flags.user_key)) {
        facetrec::Recommender rec(dataset.store);
        for (const facetrec::ScoredItem& s : rec.recommend(*user, profile, flags.k)) {
            items.push_back(json{{"item_key", dataset.items.key_at(s.item)}, {"score", s.score}});
        }
    }
    std::cout << items.dump(2) << "\n";
    return 0;
}

struct ServeFlags {
    InputFlags input;
    std::string profiles_path;
    std::string host = "127.0.0.1";
    int port = 8080;
};

int run_serve(const ServeFlags& flags) {
    Dataset dataset = load_input(flags.input);
    auto profiles = facetrec::load_profiles_file(flags.profiles_path);

    std::string host = flags.host;
    int port = flags.port;
    if (const char* bind = std::getenv("FACETREC_BIND")) {
        const std::string value(bind);
        const std::size_t colon = value.rfind(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 >= value.size()) {
            throw std::runtime_error("FACETREC_BIND must be host:port, got: " + value);
        }
        host = value.substr(0, colon);
        port = std::stoi(value.substr(colon + 1));
    }

    const bool implicit = flags.input.mode == "implicit";
    facetrec::Service service(std::move(dataset), std::move(profiles), implicit);
    const int bound = service.start(host, port);
    std::cout << "facetrec " << facetrec::kVersion << " listening on " << host << ":" << bound
              << std::endl;
    service.wait();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"In-memory user-based collaborative filtering with facet-style overlap pre-filtering"};
    app.set_version_flag("--version", facetrec::kVersion);
    app.require_subcommand(1);

    auto* ingest_cmd = app.add_subcommand("ingest", "Ingest an interaction file and save a dataset");
    InputFlags ingest_flags;
    std::string output_dir;
    ingest_cmd->add_option("--input", ingest_flags.input_file, "Interaction file")->required();
    ingest_cmd->add_option("--format", ingest_flags.format, "Input file format")
        ->check(CLI::IsMember({"csv", "tsv"}));
    ingest_cmd->add_option("--mode", ingest_flags.mode, "implicit ignores weights; explicit keeps them")
        ->check(CLI::IsMember({"implicit", "explicit"}));
    ingest_cmd->add_flag("--header", ingest_flags.header, "Skip the first line");
    ingest_cmd->add_flag("--strict", ingest_flags.strict, "Fail on the first malformed row");
    ingest_cmd->add_option("--output", output_dir, "Dataset directory to write")->required();

    auto* stats_cmd = app.add_subcommand("stats", "Dataset shape statistics as JSON");
    InputFlags stats_flags;
    std::string estimator = "population";
    add_input_flags(stats_cmd, stats_flags);
    stats_cmd->add_option("--estimator", estimator, "Moment estimator")
        ->check(CLI::IsMember({"population", "bias-corrected"}));

    auto* evaluate_cmd =
        app.add_subcommand("evaluate", "Run a profile set through the offline protocol");
    EvaluateFlags evaluate_flags;
    add_input_flags(evaluate_cmd, evaluate_flags.input);
    evaluate_cmd->add_option("--profiles", evaluate_flags.profiles_path, "Profile file")->required();
    evaluate_cmd->add_option("--holdout", evaluate_flags.holdout, "Held-out items per test user");
    evaluate_cmd->add_option("--min-interactions", evaluate_flags.min_interactions,
                             "Minimum history size to qualify for the test set");
    evaluate_cmd->add_option("--k", evaluate_flags.k, "Recommendation list length");
    evaluate_cmd->add_option("--seed", evaluate_flags.seed, "Split seed");
    evaluate_cmd->add_option("--parallelism", evaluate_flags.parallelism,
                             "Evaluation worker threads (1 for clean timings)");
    evaluate_cmd->add_option("--report", evaluate_flags.report_path,
                             "Write the JSON report here instead of stdout");
    evaluate_cmd->add_option("--csv", evaluate_flags.csv_path, "Also write per-metric CSV");
    evaluate_cmd->add_option("--curve", evaluate_flags.curve_path,
                             "Also write the nDCG-versus-k curve CSV");

    auto* bench_cmd =
        app.add_subcommand("bench", "Synthetic-data latency comparison: full vs pre-filtered");
    BenchFlags bench_flags;
    bench_cmd->add_option("--users", bench_flags.spec.num_users, "Synthetic user count");
    bench_cmd->add_option("--items", bench_flags.spec.num_items, "Synthetic item count");
    bench_cmd->add_option("--min-ipu", bench_flags.spec.min_interactions_per_user,
                          "Minimum interactions per user");
    bench_cmd->add_option("--max-ipu", bench_flags.spec.max_interactions_per_user,
                          "Maximum interactions per user");
    bench_cmd->add_option("--count-shape", bench_flags.spec.count_shape,
                          "Pareto tail index of per-user counts (0.8-1.5 gives strong right skew)");
    bench_cmd->add_option("--popularity-exponent", bench_flags.spec.popularity_exponent,
                          "Zipf exponent over items (0 = uniform)");
    bench_cmd->add_option("--seed", bench_flags.spec.seed, "Generator seed");
    bench_cmd->add_option("--targets", bench_flags.config.num_targets, "Sampled target users");
    bench_cmd->add_option("--budgets", bench_flags.config.budgets, "Pre-filter budgets N")
        ->delimiter(',');
    bench_cmd->add_option("--k", bench_flags.config.k_items, "Recommendation list length");
    bench_cmd->add_option("--save-dataset", bench_flags.save_dataset_dir,
                          "Also save the generated store as a dataset directory");

    auto* recommend_cmd = app.add_subcommand("recommend", "One-off recommendation for a user key");
    RecommendFlags recommend_flags;
    add_input_flags(recommend_cmd, recommend_flags.input);
    recommend_cmd->add_option("--profiles", recommend_flags.profiles_path, "Profile file")
        ->required();
    recommend_cmd->add_option("--profile", recommend_flags.profile_name, "Profile name")->required();
    recommend_cmd->add_option("--user", recommend_flags.user_key, "User key")->required();
    recommend_cmd->add_option("--k", recommend_flags.k, "Recommendation list length");

    auto* serve_cmd = app.add_subcommand("serve", "Start the HTTP service");
    ServeFlags serve_flags;
    add_input_flags(serve_cmd, serve_flags.input);
    serve_cmd->add_option("--profiles", serve_flags.profiles_path, "Profile file")->required();
    serve_cmd->add_option("--host", serve_flags.host, "Bind host");
    serve_cmd->add_option("--port", serve_flags.port, "Bind port (0 for ephemeral)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ingest_cmd->parsed()) return run_ingest(ingest_flags, output_dir);
        if (stats_cmd->parsed()) return run_stats(stats_flags, estimator);
        if (evaluate_cmd->parsed()) return run_evaluate(evaluate_flags);
        if (bench_cmd->parsed()) return run_bench(bench_flags);
        if (recommend_cmd->parsed()) return run_recommend(recommend_flags);
        if (serve_cmd->parsed()) return run_serve(serve_flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand given\n";
    return 1;
}
