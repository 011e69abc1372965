#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "facetrec/evaluator.hpp"
#include "facetrec/report.hpp"
#include "facetrec/split.hpp"
#include "facetrec/synthetic.hpp"
#include "test_util.hpp"

using namespace facetrec;
using nlohmann::json;

namespace {

InteractionStore sample_store() {
    SyntheticSpec spec;
    spec.num_users = 200;
    spec.num_items = 80;
    spec.min_interactions_per_user = 4;
    spec.max_interactions_per_user = 40;
    spec.seed = 99;
    return generate_synthetic(spec);
}

std::vector<RecommenderProfile> sample_profiles() {
    RecommenderProfile mp;
    mp.name = "mp";
    mp.algorithm = Algorithm::MostPopular;
    RecommenderProfile ov;
    ov.name = "cf_ov20";
    ov.algorithm = Algorithm::CfPrefiltered;
    ov.candidate_budget_n = 20;
    return {mp, ov};
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("store fingerprint is 16 hex digits and content-determined") {
    const InteractionStore store = sample_store();
    const std::string fp = store_fingerprint(store);
    REQUIRE(fp.size() == 16);
    for (char c : fp) CHECK(std::isxdigit(static_cast<unsigned char>(c)));

    // Rebuilding the same logical content reproduces the fingerprint.
    CHECK(store_fingerprint(sample_store()) == fp);
    CHECK(store_fingerprint(*store.snapshot()) == fp);

    SUBCASE("any content change moves the fingerprint") {
        InteractionStore extra = *store.snapshot();
        extra.add_interaction(999999, 1);
        CHECK(store_fingerprint(extra) != fp);

        InteractionStore reweighted = *store.snapshot();
        const UserId u = reweighted.user_ids().front();
        const ItemId i = reweighted.items_of(u).front().item;
        reweighted.add_interaction(u, i, 7.5);
        CHECK(store_fingerprint(reweighted) != fp);
    }

    SUBCASE("insertion order does not matter, ids and weights do") {
        InteractionStore a;
        a.add_interaction(1, 10);
        a.add_interaction(2, 20);
        InteractionStore b;
        b.add_interaction(2, 20);
        b.add_interaction(1, 10);
        CHECK(store_fingerprint(a) == store_fingerprint(b));

        InteractionStore c;
        c.add_interaction(1, 20);
        c.add_interaction(2, 10);
        CHECK(store_fingerprint(a) != store_fingerprint(c));
    }
}

TEST_CASE("json report carries run metadata and one entry per profile") {
    const InteractionStore store = sample_store();
    const SplitResult sp = split(store, 11, 10, 13);
    const auto reports = evaluate_profiles(sp.train, sp.test, sample_profiles());

    RunInfo info;
    info.seed = 13;
    info.dataset_fingerprint = store_fingerprint(store);
    info.parallelism = 2;
    const std::string text = report_to_json(reports, info);
    REQUIRE(!text.empty());
    CHECK(text.back() == '\n');

    const json j = json::parse(text);
    CHECK(j.at("run").at("seed") == 13);
    CHECK(j.at("run").at("dataset_fingerprint") == info.dataset_fingerprint);
    CHECK(j.at("run").at("parallelism") == 2);
    REQUIRE(j.at("profiles").size() == 2);
    CHECK(j["profiles"][0].at("profile") == "mp");
    CHECK(j["profiles"][1].at("profile") == "cf_ov20");
    for (const json& p : j["profiles"]) {
        CHECK(p.contains("user_coverage"));
        CHECK(p.contains("precision_at_k"));
        CHECK(p.contains("recall_at_k"));
        CHECK(p.contains("ndcg_at_k"));
        CHECK(p.contains("latency_mean_ms"));
        CHECK(p.contains("latency_std_ms"));
        REQUIRE(p.at("ndcg_curve").is_array());
        CHECK(p.at("ndcg_curve").size() == 10);
    }
    // MostPopular always covers, so its normalized block must be present.
    CHECK(j["profiles"][0].contains("precision_at_k_normalized"));
}

TEST_CASE("normalized fields are omitted when coverage is zero") {
    ProfileReport r;
    r.profile = "empty";
    r.k = 10;
    r.test_user_count = 5;
    r.ndcg_curve.assign(10, 0.0);
    const std::string text = report_to_json({r}, RunInfo{});
    const json j = json::parse(text);
    CHECK_FALSE(j["profiles"][0].contains("precision_at_k_normalized"));
    CHECK_FALSE(j["profiles"][0].contains("recall_at_k_normalized"));
    CHECK_FALSE(j["profiles"][0].contains("ndcg_at_k_normalized"));

    const std::string csv = report_to_csv({r});
    CHECK(csv.find("precision_at_k_normalized") == std::string::npos);
}

TEST_CASE("two runs differ only in latency fields") {
    const InteractionStore store = sample_store();
    const SplitResult sp = split(store, 11, 10, 21);
    RunInfo info;
    info.seed = 21;
    info.dataset_fingerprint = store_fingerprint(store);

    const auto first = evaluate_profiles(sp.train, sp.test, sample_profiles());
    const auto second = evaluate_profiles(sp.train, sp.test, sample_profiles());
    const std::string a = report_to_json(first, info);
    const std::string b = report_to_json(second, info);
    CHECK(strip_latency_fields(a) == strip_latency_fields(b));

    const json stripped = json::parse(strip_latency_fields(a));
    for (const json& p : stripped.at("profiles")) {
        CHECK(p.at("latency_mean_ms") == 0.0);
        CHECK(p.at("latency_std_ms") == 0.0);
    }
}

TEST_CASE("metric csv has the documented header and row shape") {
    const InteractionStore store = sample_store();
    const SplitResult sp = split(store, 11, 10, 8);
    const auto reports = evaluate_profiles(sp.train, sp.test, sample_profiles());
    const auto lines = lines_of(report_to_csv(reports));

    REQUIRE(!lines.empty());
    CHECK(lines[0] == "profile,metric,value");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = line.find(',', c1 + 1);
        REQUIRE(c1 != std::string::npos);
        REQUIRE(c2 != std::string::npos);
        const std::string profile = line.substr(0, c1);
        CHECK((profile == "mp" || profile == "cf_ov20"));
        // The value column must parse as a double.
        CHECK_NOTHROW((void)std::stod(line.substr(c2 + 1)));
    }
    // Every profile contributes at least coverage + 3 plain + 2 latency rows.
    CHECK(lines.size() >= 1 + 2 * 6);
}

TEST_CASE("curve csv lists cutoffs 1..k per profile") {
    const InteractionStore store = sample_store();
    const SplitResult sp = split(store, 11, 10, 8);
    const auto reports = evaluate_profiles(sp.train, sp.test, sample_profiles());
    const auto lines = lines_of(curve_to_csv(reports));

    REQUIRE(lines.size() == 1 + 2 * 10);
    CHECK(lines[0] == "profile,k,ndcg");
    for (std::size_t p = 0; p < 2; ++p) {
        for (std::size_t c = 1; c <= 10; ++c) {
            const std::string& line = lines[1 + p * 10 + (c - 1)];
            const std::string expected_prefix =
                reports[p].profile + "," + std::to_string(c) + ",";
            CHECK(line.rfind(expected_prefix, 0) == 0);
            const double value = std::stod(line.substr(expected_prefix.size()));
            CHECK(value == reports[p].ndcg_curve[c - 1]);
        }
    }
}
