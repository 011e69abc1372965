#include "facetrec/report.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace facetrec {
namespace {

using json = nlohmann::json;  // object keys are kept sorted

void fnv1a_append(std::uint64_t& hash, const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        hash ^= bytes[i];
        hash *= 0x100000001b3ULL;
    }
}

std::string format_value(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

json profile_to_json(const ProfileReport& r) {
    json j;
    j["profile"] = r.profile;
    j["k"] = r.k;
    j["test_user_count"] = r.test_user_count;
    j["covered_user_count"] = r.covered_user_count;
    j["user_coverage"] = r.user_coverage;
    j["precision_at_k"] = r.precision_at_k;
    j["recall_at_k"] = r.recall_at_k;
    j["ndcg_at_k"] = r.ndcg_at_k;
    if (r.precision_at_k_normalized) {
        j["precision_at_k_normalized"] = *r.precision_at_k_normalized;
        j["recall_at_k_normalized"] = *r.recall_at_k_normalized;
        j["ndcg_at_k_normalized"] = *r.ndcg_at_k_normalized;
    }
    j["ndcg_curve"] = r.ndcg_curve;
    j["latency_mean_ms"] = r.latency_mean_ms;
    j["latency_std_ms"] = r.latency_std_ms;
    return j;
}

}  // namespace

std::string store_fingerprint(const InteractionStore& store) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (UserId user : store.user_ids()) {
        fnv1a_append(hash, &user, sizeof(user));
        for (const ItemEntry& e : store.items_of(user)) {
            fnv1a_append(hash, &e.item, sizeof(e.item));
            const std::string w = format_value(e.weight);
            fnv1a_append(hash, w.data(), w.size());
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string report_to_json(const std::vector<ProfileReport>& reports, const RunInfo& info) {
    json j;
    j["run"] = {
        {"seed", info.seed},
        {"dataset_fingerprint", info.dataset_fingerprint},
        {"parallelism", info.parallelism},
    };
    json arr = json::array();
    for (const ProfileReport& r : reports) arr.push_back(profile_to_json(r));
    j["profiles"] = arr;
    return j.dump(2) + "\n";
}

std::string report_to_csv(const std::vector<ProfileReport>& reports) {
    std::string out = "profile,metric,value\n";
    for (const ProfileReport& r : reports) {
        auto row = [&](const char* metric, double value) {
            out += r.profile;
            out += ',';
            out += metric;
            out += ',';
            out += format_value(value);
            out += '\n';
        };
        row("user_coverage", r.user_coverage);
        row("precision_at_k", r.precision_at_k);
        row("recall_at_k", r.recall_at_k);
        row("ndcg_at_k", r.ndcg_at_k);
        if (r.precision_at_k_normalized) {
            row("precision_at_k_normalized", *r.precision_at_k_normalized);
            row("recall_at_k_normalized", *r.recall_at_k_normalized);
            row("ndcg_at_k_normalized", *r.ndcg_at_k_normalized);
        }
        row("latency_mean_ms", r.latency_mean_ms);
        row("latency_std_ms", r.latency_std_ms);
    }
    return out;
}

std::string curve_to_csv(const std::vector<ProfileReport>& reports) {
    std::string out = "profile,k,ndcg\n";
    for (const ProfileReport& r : reports) {
        for (std::size_t c = 0; c < r.ndcg_curve.size(); ++c) {
            out += r.profile;
            out += ',';
            out += std::to_string(c + 1);
            out += ',';
            out += format_value(r.ndcg_curve[c]);
            out += '\n';
        }
    }
    return out;
}

std::string strip_latency_fields(const std::string& json_text) {
    json j = json::parse(json_text);
    if (j.contains("profiles")) {
        for (json& p : j["profiles"]) {
            p["latency_mean_ms"] = 0.0;
            p["latency_std_ms"] = 0.0;
        }
    }
    return j.dump(2) + "\n";
}

}  // namespace facetrec
