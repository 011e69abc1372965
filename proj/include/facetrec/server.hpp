#pragma once

#include <memory>
#include <string>
#include <vector>

#include "facetrec/ingest.hpp"
#include "facetrec/profile.hpp"

namespace facetrec {

/// HTTP endpoint over one dataset and a fixed profile set.
///
/// Endpoints:
///   GET  /health                                  -> 200, build metadata
///   GET  /recommend?user=<key>&profile=<name>&k=N -> 200, JSON list of
///        {item_key, score}; an unknown user key yields an empty list (same
///        contract as the core recommend call); an unknown profile 404; a
///        missing/invalid parameter 400
///   POST /interactions  {user_key, item_key, weight?, timestamp?}
///        -> 201 once the interaction is applied; malformed body 400
///
/// Reads run concurrently on an immutable snapshot; a write takes the
/// exclusive side, applies the interaction, and bumps the dataset version so
/// the next read rebuilds its snapshot.  An acknowledged write is therefore
/// visible to every later recommendation.
class Service {
public:
    /// `implicit_mode` forces posted weights to 1.0, mirroring the ingest
    /// flag the dataset was built with.
    Service(Dataset dataset, std::vector<RecommenderProfile> profiles, bool implicit_mode);
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    /// Binds and serves on a background thread; pass port 0 for an ephemeral
    /// port.  Returns the bound port.  Throws std::runtime_error when the
    /// address cannot be bound.
    int start(const std::string& host, int port);

    /// Blocks the calling thread until the service stops.
    void wait();

    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace facetrec
