// Python bindings for the facetrec core: store construction, facet-style
// overlap counting, profile-driven recommendation, splitting, evaluation,
// statistics, and the synthetic generator.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>

#include "facetrec/evaluator.hpp"
#include "facetrec/ingest.hpp"
#include "facetrec/interaction_store.hpp"
#include "facetrec/metrics.hpp"
#include "facetrec/prefilter.hpp"
#include "facetrec/profile.hpp"
#include "facetrec/recommender.hpp"
#include "facetrec/split.hpp"
#include "facetrec/stats.hpp"
#include "facetrec/synthetic.hpp"
#include "facetrec/version.hpp"

namespace py = pybind11;
using namespace facetrec;

PYBIND11_MODULE(_core, m) {
    m.doc() = "User-based collaborative filtering with facet-style overlap pre-filtering";
    m.attr("__version__") = kVersion;

    py::class_<InteractionStore, std::shared_ptr<InteractionStore>>(m, "InteractionStore")
        .def(py::init<>())
        .def(
            "add_interaction",
            [](InteractionStore& s, UserId u, ItemId i, std::optional<double> w) {
                s.add_interaction(u, i, w);
            },
            py::arg("user"), py::arg("item"), py::arg("weight") = std::nullopt)
        .def(
            "items_of",
            [](const InteractionStore& s, UserId u) {
                std::vector<std::pair<ItemId, double>> out;
                for (const ItemEntry& e : s.items_of(u)) out.emplace_back(e.item, e.weight);
                return out;
            },
            py::arg("user"), "History of one user as (item, weight) pairs, ascending item id")
        .def(
            "users_of",
            [](const InteractionStore& s, ItemId i) {
                std::vector<std::pair<UserId, double>> out;
                for (const UserEntry& e : s.users_of(i)) out.emplace_back(e.user, e.weight);
                return out;
            },
            py::arg("item"), "Posting list of one item as (user, weight) pairs, ascending user id")
        .def_property_readonly("num_users", &InteractionStore::num_users)
        .def_property_readonly("num_items", &InteractionStore::num_items)
        .def_property_readonly("num_interactions", &InteractionStore::num_interactions)
        .def("user_ids", &InteractionStore::user_ids)
        .def("item_ids", &InteractionStore::item_ids);

    py::enum_<Algorithm>(m, "Algorithm")
        .value("MOST_POPULAR", Algorithm::MostPopular)
        .value("CF_FULL", Algorithm::CfFull)
        .value("CF_PREFILTERED", Algorithm::CfPrefiltered);

    py::enum_<SimilarityMetric>(m, "SimilarityMetric")
        .value("COSINE_BINARY", SimilarityMetric::CosineBinary)
        .value("JACCARD", SimilarityMetric::Jaccard)
        .value("OVERLAP_RAW", SimilarityMetric::OverlapRaw);

    py::class_<RecommenderProfile>(m, "RecommenderProfile")
        .def(py::init<>())
        .def_readwrite("name", &RecommenderProfile::name)
        .def_readwrite("algorithm", &RecommenderProfile::algorithm)
        .def_readwrite("similarity", &RecommenderProfile::similarity)
        .def_readwrite("candidate_budget_n", &RecommenderProfile::candidate_budget_n)
        .def_readwrite("neighborhood_k", &RecommenderProfile::neighborhood_k);

    m.def("load_profiles", &load_profiles, py::arg("content"),
          "Parse a profile file's content into a list of profiles");
    m.def("load_profiles_file", &load_profiles_file, py::arg("path"));

    m.def(
        "facet_top_n",
        [](const InteractionStore& store, UserId target, std::size_t n) {
            std::vector<std::pair<UserId, std::uint32_t>> out;
            for (const CandidateEntry& e : facet_top_n(store, target, n).entries) {
                out.emplace_back(e.user, e.overlap);
            }
            return out;
        },
        py::arg("store"), py::arg("target"), py::arg("n"),
        "Top-n users by item overlap with the target, as (user, overlap) pairs");
    m.def(
        "neighborhood_size",
        [](const InteractionStore& store, UserId target) {
            return neighborhood_size(store, target);
        },
        py::arg("store"), py::arg("target"));
    m.def("similarity", &similarity, py::arg("store"), py::arg("u"), py::arg("v"),
          py::arg("metric"));

    m.def(
        "recommend",
        [](const InteractionStore& store, UserId target, const RecommenderProfile& profile,
           std::size_t k) {
            Recommender rec(store);
            std::vector<std::pair<ItemId, double>> out;
            for (const ScoredItem& s : rec.recommend(target, profile, k)) {
                out.emplace_back(s.item, s.score);
            }
            return out;
        },
        py::arg("store"), py::arg("target"), py::arg("profile"), py::arg("k"),
        "Top-k recommendations as (item, score) pairs");
    m.def(
        "select_neighbors",
        [](const InteractionStore& store, UserId target, const RecommenderProfile& profile) {
            Recommender rec(store);
            std::vector<std::pair<UserId, double>> out;
            for (const ScoredUser& s : rec.select_neighbors(target, profile)) {
                out.emplace_back(s.user, s.score);
            }
            return out;
        },
        py::arg("store"), py::arg("target"), py::arg("profile"));

    // The vector arguments are fresh copies, so sorting `relevant` in place
    // (the C++ API requires it ascending) is free of side effects.
    m.def(
        "precision_at",
        [](std::vector<ItemId> recommended, std::vector<ItemId> relevant, std::size_t k) {
            std::sort(relevant.begin(), relevant.end());
            return precision_at(recommended, relevant, k);
        },
        py::arg("recommended"), py::arg("relevant"), py::arg("k"));
    m.def(
        "recall_at",
        [](std::vector<ItemId> recommended, std::vector<ItemId> relevant, std::size_t k) {
            std::sort(relevant.begin(), relevant.end());
            return recall_at(recommended, relevant, k);
        },
        py::arg("recommended"), py::arg("relevant"), py::arg("k"));
    m.def(
        "ndcg_at",
        [](std::vector<ItemId> recommended, std::vector<ItemId> relevant, std::size_t k) {
            std::sort(relevant.begin(), relevant.end());
            return ndcg_at(recommended, relevant, k);
        },
        py::arg("recommended"), py::arg("relevant"), py::arg("k"));

    py::class_<SplitResult>(m, "SplitResult")
        .def_readonly("train", &SplitResult::train)
        .def_readonly("test", &SplitResult::test)
        .def_readonly("seed", &SplitResult::seed);
    m.def("split", &split, py::arg("store"), py::arg("min_interactions"), py::arg("holdout"),
          py::arg("seed"), "Leave-holdout-out split of qualifying users");

    py::class_<SyntheticSpec>(m, "SyntheticSpec")
        .def(py::init<>())
        .def_readwrite("num_users", &SyntheticSpec::num_users)
        .def_readwrite("num_items", &SyntheticSpec::num_items)
        .def_readwrite("min_interactions_per_user", &SyntheticSpec::min_interactions_per_user)
        .def_readwrite("max_interactions_per_user", &SyntheticSpec::max_interactions_per_user)
        .def_readwrite("count_shape", &SyntheticSpec::count_shape)
        .def_readwrite("popularity_exponent", &SyntheticSpec::popularity_exponent)
        .def_readwrite("seed", &SyntheticSpec::seed);
    m.def("generate_synthetic", &generate_synthetic, py::arg("spec"));

    py::class_<Moments>(m, "Moments")
        .def_readonly("count", &Moments::count)
        .def_readonly("mean", &Moments::mean)
        .def_readonly("std", &Moments::std_dev)
        .def_readonly("skewness", &Moments::skewness)
        .def_readonly("kurtosis", &Moments::kurtosis);
    m.def(
        "moments", [](const std::vector<double>& values) { return moments(values); },
        py::arg("values"), "Population central moments: mean, std, skewness, kurtosis");
    m.def("density", &density, py::arg("store"));

    py::class_<UserRecord>(m, "UserRecord")
        .def_readonly("user", &UserRecord::user)
        .def_readonly("covered", &UserRecord::covered)
        .def_readonly("precision", &UserRecord::precision)
        .def_readonly("recall", &UserRecord::recall)
        .def_readonly("ndcg", &UserRecord::ndcg)
        .def_readonly("latency_ns", &UserRecord::latency_ns);

    py::class_<ProfileReport>(m, "ProfileReport")
        .def_readonly("profile", &ProfileReport::profile)
        .def_readonly("k", &ProfileReport::k)
        .def_readonly("test_user_count", &ProfileReport::test_user_count)
        .def_readonly("covered_user_count", &ProfileReport::covered_user_count)
        .def_readonly("user_coverage", &ProfileReport::user_coverage)
        .def_readonly("precision_at_k", &ProfileReport::precision_at_k)
        .def_readonly("recall_at_k", &ProfileReport::recall_at_k)
        .def_readonly("ndcg_at_k", &ProfileReport::ndcg_at_k)
        .def_readonly("precision_at_k_normalized", &ProfileReport::precision_at_k_normalized)
        .def_readonly("recall_at_k_normalized", &ProfileReport::recall_at_k_normalized)
        .def_readonly("ndcg_at_k_normalized", &ProfileReport::ndcg_at_k_normalized)
        .def_readonly("ndcg_curve", &ProfileReport::ndcg_curve)
        .def_readonly("latency_mean_ms", &ProfileReport::latency_mean_ms)
        .def_readonly("latency_std_ms", &ProfileReport::latency_std_ms)
        .def_readonly("records", &ProfileReport::records);

    m.def(
        "evaluate_profile",
        [](const InteractionStore& train, const TestSet& test, const RecommenderProfile& profile,
           std::size_t k, std::size_t parallelism) {
            EvaluateOptions options;
            options.k = k;
            options.parallelism = parallelism;
            return evaluate_profile(train, test, profile, options);
        },
        py::arg("train"), py::arg("test"), py::arg("profile"), py::arg("k") = 10,
        py::arg("parallelism") = 1);

    m.def(
        "ingest_file",
        [](const std::string& path, const std::string& format, bool implicit_mode,
           bool has_header, bool strict) {
            IngestOptions options;
            options.format = format == "csv" ? FileFormat::Csv : FileFormat::Tsv;
            options.implicit_mode = implicit_mode;
            options.has_header = has_header;
            options.strict = strict;
            Dataset d = ingest_file(path, options);
            return d.store;
        },
        py::arg("path"), py::arg("format") = "tsv", py::arg("implicit_mode") = true,
        py::arg("has_header") = false, py::arg("strict") = false,
        "Ingest an interaction file; returns the store (dense ids in first-seen order)");

    py::register_exception<ProfileError>(m, "ProfileError", PyExc_ValueError);
    py::register_exception<IngestError>(m, "IngestError", PyExc_ValueError);
}
