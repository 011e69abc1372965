#include "facetrec/profile.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace facetrec {
namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::uint32_t parse_positive_int(const std::string& value, const std::string& key,
                                 const std::string& who) {
    std::uint32_t out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end || out < 1) {
        throw ProfileError(who + ": " + key + " must be a positive integer, got '" + value + "'");
    }
    return out;
}

struct Block {
    std::vector<std::pair<std::string, std::string>> fields;
    std::size_t ordinal = 0;
};

RecommenderProfile build_profile(const Block& block) {
    RecommenderProfile p;
    bool have_name = false, have_algorithm = false;
    for (const auto& [key, value] : block.fields) {
        if (key == "name") {
            p.name = value;
            have_name = true;
        }
    }
    // Error messages name the profile when it has a name, the block ordinal otherwise.
    auto who = [&]() {
        return have_name && !p.name.empty() ? "profile '" + p.name + "'"
                                            : "profile #" + std::to_string(block.ordinal + 1);
    };
    // Re-throws enum parse errors with the profile named.
    const auto in_context = [&](auto&& parse) {
        try {
            return parse();
        } catch (const ProfileError& e) {
            throw ProfileError(who() + ": " + e.what());
        }
    };
    for (const auto& [key, value] : block.fields) {
        if (key == "name") {
            continue;
        } else if (key == "algorithm") {
            p.algorithm = in_context([&] { return parse_algorithm(value); });
            have_algorithm = true;
        } else if (key == "similarity") {
            p.similarity = in_context([&] { return parse_similarity(value); });
        } else if (key == "candidate_budget_n") {
            p.candidate_budget_n = parse_positive_int(value, key, who());
        } else if (key == "neighborhood_k") {
            p.neighborhood_k = parse_positive_int(value, key, who());
        } else if (key == "data_mode") {
            p.data_mode = in_context([&] { return parse_data_mode(value); });
        } else {
            throw ProfileError(who() + ": unknown key '" + key + "'");
        }
    }
    if (!have_name || p.name.empty()) {
        throw ProfileError(who() + ": missing required field 'name'");
    }
    if (!have_algorithm) {
        throw ProfileError(who() + ": missing required field 'algorithm'");
    }
    if (p.algorithm == Algorithm::CfPrefiltered && !p.candidate_budget_n) {
        throw ProfileError(who() + ": cf_prefiltered requires candidate_budget_n");
    }
    if (p.algorithm != Algorithm::CfPrefiltered && p.candidate_budget_n) {
        throw ProfileError(who() + ": candidate_budget_n only applies to cf_prefiltered");
    }
    if (p.candidate_budget_n && p.neighborhood_k && *p.candidate_budget_n < *p.neighborhood_k) {
        throw ProfileError(who() + ": candidate_budget_n (" +
                           std::to_string(*p.candidate_budget_n) +
                           ") must be >= neighborhood_k (" + std::to_string(*p.neighborhood_k) +
                           ")");
    }
    return p;
}

}  // namespace

std::vector<RecommenderProfile> load_profiles(const std::string& content) {
    std::vector<Block> blocks;
    Block current;
    std::istringstream in(content);
    std::string raw;
    auto flush = [&]() {
        if (!current.fields.empty()) {
            current.ordinal = blocks.size();
            blocks.push_back(std::move(current));
            current = Block{};
        }
    };
    while (std::getline(in, raw)) {
        const std::string line = trim(raw);
        if (line.empty()) {
            flush();
            continue;
        }
        if (line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ProfileError("profile #" + std::to_string(blocks.size() + 1) +
                               ": expected key=value, got '" + line + "'");
        }
        current.fields.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    flush();

    std::vector<RecommenderProfile> profiles;
    profiles.reserve(blocks.size());
    std::unordered_set<std::string> names;
    for (const Block& block : blocks) {
        RecommenderProfile p = build_profile(block);
        if (!names.insert(p.name).second) {
            throw ProfileError("profile '" + p.name + "': duplicate profile name");
        }
        profiles.push_back(std::move(p));
    }
    return profiles;
}

std::vector<RecommenderProfile> load_profiles_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ProfileError("cannot open profile file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_profiles(buf.str());
}

const RecommenderProfile& find_profile(const std::vector<RecommenderProfile>& profiles,
                                       const std::string& name) {
    auto it = std::find_if(profiles.begin(), profiles.end(),
                           [&](const RecommenderProfile& p) { return p.name == name; });
    if (it == profiles.end()) throw ProfileError("unknown profile '" + name + "'");
    return *it;
}

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::MostPopular: return "most_popular";
        case Algorithm::CfFull: return "cf_full";
        case Algorithm::CfPrefiltered: return "cf_prefiltered";
    }
    return "?";
}

std::string to_string(SimilarityMetric m) {
    switch (m) {
        case SimilarityMetric::CosineBinary: return "cosine_binary";
        case SimilarityMetric::Jaccard: return "jaccard";
        case SimilarityMetric::OverlapRaw: return "overlap_raw";
    }
    return "?";
}

std::string to_string(DataMode m) {
    return m == DataMode::Implicit ? "implicit" : "explicit";
}

Algorithm parse_algorithm(const std::string& s) {
    if (s == "most_popular") return Algorithm::MostPopular;
    if (s == "cf_full") return Algorithm::CfFull;
    if (s == "cf_prefiltered") return Algorithm::CfPrefiltered;
    throw ProfileError("unknown algorithm '" + s +
                       "' (expected most_popular, cf_full or cf_prefiltered)");
}

SimilarityMetric parse_similarity(const std::string& s) {
    if (s == "cosine_binary") return SimilarityMetric::CosineBinary;
    if (s == "jaccard") return SimilarityMetric::Jaccard;
    if (s == "overlap_raw") return SimilarityMetric::OverlapRaw;
    throw ProfileError("unknown similarity '" + s +
                       "' (expected cosine_binary, jaccard or overlap_raw)");
}

DataMode parse_data_mode(const std::string& s) {
    if (s == "implicit") return DataMode::Implicit;
    if (s == "explicit") return DataMode::Explicit;
    throw ProfileError("unknown data_mode '" + s + "' (expected implicit or explicit)");
}

}  // namespace facetrec
