#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "facetrec/interaction_store.hpp"

namespace facetrec {

class IngestError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bidirectional mapping between external text keys and dense 32-bit ids.
/// Ids are assigned in first-seen order and never reused.
class Dictionary {
public:
    /// Returns the id for `key`, interning it if unseen.
    std::uint32_t id_for(const std::string& key);

    /// Id for a known key, or nullopt.
    std::optional<std::uint32_t> find(const std::string& key) const;

    const std::string& key_at(std::uint32_t id) const;
    std::size_t size() const { return keys_.size(); }

private:
    std::vector<std::string> keys_;
    std::unordered_map<std::string, std::uint32_t> ids_;
};

enum class FileFormat { Csv, Tsv };

struct IngestOptions {
    FileFormat format = FileFormat::Tsv;
    bool implicit_mode = true;  ///< force every weight to 1.0
    bool has_header = false;
    /// With strict set, any malformed row aborts the ingest with IngestError
    /// instead of being tallied.
    bool strict = false;
};

/// A store plus the dictionaries needed to translate its dense ids back to
/// the external keys they came from.
struct Dataset {
    InteractionStore store;
    Dictionary users;
    Dictionary items;
    std::size_t ingested_rows = 0;   ///< well-formed rows applied
    std::size_t malformed_rows = 0;  ///< rows skipped (or fatal under strict)
};

/// Parses `user_key<delim>item_key[<delim>weight[<delim>timestamp]]` rows.
/// Blank lines are skipped; a row is malformed when it has fewer than 2 or
/// more than 4 columns, an empty key, a non-finite or negative weight, or a
/// non-integer timestamp.  Timestamps are validated then ignored.  Duplicate
/// (user, item) rows overwrite the weight; the interaction count stays 1.
Dataset ingest_stream(std::istream& in, const IngestOptions& options);

/// ingest_stream over a file.  Throws IngestError when unreadable.
Dataset ingest_file(const std::string& path, const IngestOptions& options);

/// Canonical on-disk form: `interactions.tsv` (user_key, item_key, weight in
/// ascending user-then-item order) plus `users.txt` / `items.txt` (one key
/// per line, id order).  Throws IngestError when a key contains a tab or
/// newline (it could not round-trip) or the directory cannot be written.
void save_dataset(const Dataset& dataset, const std::string& dir);

/// Rebuilds a Dataset from save_dataset output.  The reloaded store is
/// byte-identical in iteration order to the saved one.
Dataset load_dataset(const std::string& dir);

}  // namespace facetrec
