#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "facetrec/evaluator.hpp"
#include "facetrec/interaction_store.hpp"

namespace facetrec {

/// Environment metadata stamped into every report.
struct RunInfo {
    std::uint64_t seed = 0;
    std::string dataset_fingerprint;
    std::size_t parallelism = 1;
};

/// FNV-1a 64-bit over the store's (user, item, weight) triples in ascending
/// (user, item) order, rendered as 16 hex digits.  Stable across runs and
/// platforms for the same logical content.
std::string store_fingerprint(const InteractionStore& store);

/// Full report as a JSON document.  Keys are emitted in sorted order and
/// numbers round-trip exactly, so the same inputs always yield the same
/// bytes.  Per-user records are summarized away; only aggregates appear.
std::string report_to_json(const std::vector<ProfileReport>& reports, const RunInfo& info);

/// One CSV row per (profile, metric): header `profile,metric,value`.
std::string report_to_csv(const std::vector<ProfileReport>& reports);

/// One CSV row per (profile, cutoff): header `profile,k,ndcg`.  This is the
/// accuracy-versus-list-length curve data.
std::string curve_to_csv(const std::vector<ProfileReport>& reports);

/// Returns `json_text` with every latency field zeroed out, for comparing
/// reports across runs where only timings may differ.
std::string strip_latency_fields(const std::string& json_text);

}  // namespace facetrec
