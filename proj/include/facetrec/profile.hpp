#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace facetrec {

enum class Algorithm { MostPopular, CfFull, CfPrefiltered };
enum class SimilarityMetric { CosineBinary, Jaccard, OverlapRaw };
enum class DataMode { Implicit, Explicit };

struct ProfileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Configuration of one recommendation approach. `candidate_budget_n` is the
/// size of the greedy overlap pre-filter (required for cf_prefiltered);
/// `neighborhood_k` optionally caps how many of the selected neighbors are
/// scored — absent means all of them.
struct RecommenderProfile {
    std::string name;
    Algorithm algorithm = Algorithm::CfFull;
    SimilarityMetric similarity = SimilarityMetric::CosineBinary;
    std::optional<std::uint32_t> candidate_budget_n;
    std::optional<std::uint32_t> neighborhood_k;
    DataMode data_mode = DataMode::Implicit;
};

/// Parses the profile file format: key=value blocks separated by blank
/// lines, `#` starting a comment line. Recognized keys: name, algorithm,
/// similarity, candidate_budget_n, neighborhood_k, data_mode. Throws
/// ProfileError naming the offending profile on unknown names, missing
/// required fields, or candidate_budget_n < neighborhood_k.
std::vector<RecommenderProfile> load_profiles(const std::string& content);
std::vector<RecommenderProfile> load_profiles_file(const std::string& path);

/// Lookup by profile name; throws ProfileError when absent.
const RecommenderProfile& find_profile(const std::vector<RecommenderProfile>& profiles,
                                       const std::string& name);

std::string to_string(Algorithm a);
std::string to_string(SimilarityMetric m);
std::string to_string(DataMode m);

Algorithm parse_algorithm(const std::string& s);          // throws ProfileError
SimilarityMetric parse_similarity(const std::string& s);  // throws ProfileError
DataMode parse_data_mode(const std::string& s);           // throws ProfileError

}  // namespace facetrec
