#include "facetrec/ingest.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string_view>

namespace facetrec {
namespace {

namespace fs = std::filesystem;

std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

bool parse_weight(std::string_view text, double& out) {
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out) && out >= 0.0;
}

bool parse_timestamp(std::string_view text) {
    std::int64_t ignored = 0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, ignored);
    return ec == std::errc{} && ptr == end;
}

std::string format_weight(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

}  // namespace

std::uint32_t Dictionary::id_for(const std::string& key) {
    const auto [it, inserted] = ids_.try_emplace(key, static_cast<std::uint32_t>(keys_.size()));
    if (inserted) keys_.push_back(key);
    return it->second;
}

std::optional<std::uint32_t> Dictionary::find(const std::string& key) const {
    const auto it = ids_.find(key);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

const std::string& Dictionary::key_at(std::uint32_t id) const {
    if (id >= keys_.size()) throw std::out_of_range("dictionary id out of range");
    return keys_[id];
}

Dataset ingest_stream(std::istream& in, const IngestOptions& options) {
    Dataset dataset;
    const char delim = options.format == FileFormat::Csv ? ',' : '\t';
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = options.has_header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        const auto fields = split(line, delim);
        const auto reject = [&](const char* why) {
            if (options.strict) {
                throw IngestError("line " + std::to_string(line_no) + ": " + why);
            }
            ++dataset.malformed_rows;
        };
        if (fields.size() < 2 || fields.size() > 4) {
            reject("expected 2 to 4 columns");
            continue;
        }
        if (fields[0].empty() || fields[1].empty()) {
            reject("empty user or item key");
            continue;
        }
        double weight = 1.0;
        if (fields.size() >= 3 && !parse_weight(fields[2], weight)) {
            reject("weight is not a finite non-negative number");
            continue;
        }
        if (fields.size() == 4 && !parse_timestamp(fields[3])) {
            reject("timestamp is not an integer");
            continue;
        }
        if (options.implicit_mode) weight = 1.0;
        const UserId user = dataset.users.id_for(std::string(fields[0]));
        const ItemId item = dataset.items.id_for(std::string(fields[1]));
        dataset.store.add_interaction(user, item, weight);
        ++dataset.ingested_rows;
    }
    return dataset;
}

Dataset ingest_file(const std::string& path, const IngestOptions& options) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open interaction file: " + path);
    return ingest_stream(in, options);
}

void save_dataset(const Dataset& dataset, const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IngestError("cannot create dataset directory: " + dir);

    const auto check_key = [](const std::string& key) {
        if (key.find('\t') != std::string::npos || key.find('\n') != std::string::npos ||
            key.find('\r') != std::string::npos) {
            throw IngestError("key cannot round-trip through the dataset format: " + key);
        }
    };
    const auto open_out = [&](const char* name) {
        std::ofstream out(fs::path(dir) / name, std::ios::trunc);
        if (!out) throw IngestError(std::string("cannot write ") + name + " in " + dir);
        return out;
    };

    auto users_out = open_out("users.txt");
    for (std::uint32_t id = 0; id < dataset.users.size(); ++id) {
        check_key(dataset.users.key_at(id));
        users_out << dataset.users.key_at(id) << '\n';
    }
    auto items_out = open_out("items.txt");
    for (std::uint32_t id = 0; id < dataset.items.size(); ++id) {
        check_key(dataset.items.key_at(id));
        items_out << dataset.items.key_at(id) << '\n';
    }
    auto inter_out = open_out("interactions.tsv");
    for (UserId user : dataset.store.user_ids()) {
        const std::string& user_key = dataset.users.key_at(user);
        for (const ItemEntry& e : dataset.store.items_of(user)) {
            inter_out << user_key << '\t' << dataset.items.key_at(e.item) << '\t'
                      << format_weight(e.weight) << '\n';
        }
    }
    if (!users_out.flush() || !items_out.flush() || !inter_out.flush()) {
        throw IngestError("failed writing dataset files in " + dir);
    }
}

Dataset load_dataset(const std::string& dir) {
    const auto read_keys = [&](const char* name, Dictionary& dict) {
        std::ifstream in(fs::path(dir) / name);
        if (!in) throw IngestError(std::string("cannot open ") + name + " in " + dir);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            dict.id_for(line);
        }
    };

    Dataset dataset;
    read_keys("users.txt", dataset.users);
    read_keys("items.txt", dataset.items);

    std::ifstream in(fs::path(dir) / "interactions.tsv");
    if (!in) throw IngestError("cannot open interactions.tsv in " + dir);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split(line, '\t');
        double weight = 1.0;
        if (fields.size() != 3 || !parse_weight(fields[2], weight)) {
            throw IngestError("interactions.tsv line " + std::to_string(line_no) +
                              ": malformed saved row");
        }
        const auto user = dataset.users.find(std::string(fields[0]));
        const auto item = dataset.items.find(std::string(fields[1]));
        if (!user || !item) {
            throw IngestError("interactions.tsv line " + std::to_string(line_no) +
                              ": key missing from dictionary");
        }
        dataset.store.add_interaction(*user, *item, weight);
        ++dataset.ingested_rows;
    }
    return dataset;
}

}  // namespace facetrec
