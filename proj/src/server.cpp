#include "facetrec/server.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "facetrec/recommender.hpp"
#include "facetrec/version.hpp"

namespace facetrec {
namespace {

using json = nlohmann::json;

bool parse_k(const std::string& text, std::size_t& out) {
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc{} && ptr == end && out >= 1;
}

void reply_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(2) + "\n", "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& message) {
    reply_json(res, status, json{{"error", message}});
}

}  // namespace

struct Service::Impl {
    Impl(Dataset ds, std::vector<RecommenderProfile> prof, bool implicit)
        : dataset(std::move(ds)), profiles(std::move(prof)), implicit_mode(implicit) {
        routes();
    }

    // Immutable view handed to one /recommend request.
    struct Snapshot {
        Dataset data;
        std::uint64_t version = 0;
    };

    std::shared_ptr<const Snapshot> current_snapshot() {
        std::lock_guard cache_guard(cache_mutex);
        std::shared_lock data_guard(data_mutex);
        if (!cached || cached->version != version) {
            auto fresh = std::make_shared<Snapshot>();
            fresh->data = dataset;
            fresh->version = version;
            cached = std::move(fresh);
        }
        return cached;
    }

    void handle_recommend(const httplib::Request& req, httplib::Response& res) {
        if (!req.has_param("user") || !req.has_param("profile")) {
            reply_error(res, 400, "parameters 'user' and 'profile' are required");
            return;
        }
        const std::string user_key = req.get_param_value("user");
        const std::string profile_name = req.get_param_value("profile");
        std::size_t k = 10;
        if (req.has_param("k") && !parse_k(req.get_param_value("k"), k)) {
            reply_error(res, 400, "parameter 'k' must be a positive integer");
            return;
        }
        const RecommenderProfile* profile = nullptr;
        for (const RecommenderProfile& p : profiles) {
            if (p.name == profile_name) {
                profile = &p;
                break;
            }
        }
        if (profile == nullptr) {
            reply_error(res, 404, "unknown profile: " + profile_name);
            return;
        }

        const auto snapshot = current_snapshot();
        json items = json::array();
        const auto user = snapshot->data.users.find(user_key);
        if (user) {
            Recommender rec(snapshot->data.store);
            for (const ScoredItem& s : rec.recommend(*user, *profile, k)) {
                items.push_back(json{{"item_key", snapshot->data.items.key_at(s.item)},
                                     {"score", s.score}});
            }
        }
        reply_json(res, 200, json{{"user_key", user_key},
                                  {"profile", profile_name},
                                  {"k", k},
                                  {"items", items}});
    }

    void handle_post_interaction(const httplib::Request& req, httplib::Response& res) {
        json body = json::parse(req.body, nullptr, false);
        if (body.is_discarded() || !body.is_object()) {
            reply_error(res, 400, "body must be a JSON object");
            return;
        }
        if (!body.contains("user_key") || !body["user_key"].is_string() ||
            !body.contains("item_key") || !body["item_key"].is_string()) {
            reply_error(res, 400, "user_key and item_key are required strings");
            return;
        }
        const std::string user_key = body["user_key"].get<std::string>();
        const std::string item_key = body["item_key"].get<std::string>();
        if (user_key.empty() || item_key.empty()) {
            reply_error(res, 400, "user_key and item_key must be non-empty");
            return;
        }
        double weight = 1.0;
        if (body.contains("weight")) {
            if (!body["weight"].is_number()) {
                reply_error(res, 400, "weight must be a number");
                return;
            }
            weight = body["weight"].get<double>();
            if (!std::isfinite(weight) || weight < 0.0) {
                reply_error(res, 400, "weight must be finite and non-negative");
                return;
            }
        }
        if (body.contains("timestamp") && !body["timestamp"].is_number_integer()) {
            reply_error(res, 400, "timestamp must be an integer");
            return;
        }
        if (implicit_mode) weight = 1.0;

        {
            std::unique_lock data_guard(data_mutex);
            const UserId user = dataset.users.id_for(user_key);
            const ItemId item = dataset.items.id_for(item_key);
            dataset.store.add_interaction(user, item, weight);
            ++version;
        }
        reply_json(res, 201, json{{"status", "created"},
                                  {"user_key", user_key},
                                  {"item_key", item_key}});
    }

    void routes() {
        server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
            reply_json(res, 200, json{{"status", "ok"},
                                      {"service", "facetrec"},
                                      {"version", kVersion}});
        });
        server.Get("/recommend", [this](const httplib::Request& req, httplib::Response& res) {
            handle_recommend(req, res);
        });
        server.Post("/interactions", [this](const httplib::Request& req, httplib::Response& res) {
            handle_post_interaction(req, res);
        });
        server.set_exception_handler([](const httplib::Request&, httplib::Response& res,
                                        std::exception_ptr ep) {
            std::string message = "internal error";
            try {
                if (ep) std::rethrow_exception(ep);
            } catch (const std::exception& e) {
                message = e.what();
            } catch (...) {
            }
            reply_error(res, 500, message);
        });
    }

    Dataset dataset;
    std::vector<RecommenderProfile> profiles;
    bool implicit_mode = true;

    std::shared_mutex data_mutex;
    std::uint64_t version = 0;

    std::mutex cache_mutex;
    std::shared_ptr<const Snapshot> cached;

    httplib::Server server;
    std::thread acceptor;
};

Service::Service(Dataset dataset, std::vector<RecommenderProfile> profiles, bool implicit_mode)
    : impl_(std::make_unique<Impl>(std::move(dataset), std::move(profiles), implicit_mode)) {}

Service::~Service() { stop(); }

int Service::start(const std::string& host, int port) {
    int bound = port;
    if (port == 0) {
        bound = impl_->server.bind_to_any_port(host);
        if (bound < 0) throw std::runtime_error("cannot bind " + host);
    } else if (!impl_->server.bind_to_port(host, port)) {
        throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    }
    impl_->acceptor = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return bound;
}

void Service::wait() {
    if (impl_->acceptor.joinable()) impl_->acceptor.join();
}

void Service::stop() {
    if (impl_->server.is_running()) impl_->server.stop();
    if (impl_->acceptor.joinable()) impl_->acceptor.join();
}

}  // namespace facetrec
