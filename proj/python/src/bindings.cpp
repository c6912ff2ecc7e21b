#include <algorithm>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "morphfit/attract_repel.hpp"
#include "morphfit/constraints.hpp"
#include "morphfit/evaluator.hpp"
#include "morphfit/morph_fix.hpp"
#include "morphfit/morph_rules.hpp"
#include "morphfit/vector_store.hpp"

namespace py = pybind11;
using namespace morphfit;

namespace {

using PyEntries = std::vector<std::tuple<std::string, std::string, double>>;

SimilarityDataset to_dataset(const PyEntries& entries) {
    SimilarityDataset ds;
    for (const auto& [a, b, gold] : entries) ds.entries.push_back({a, b, gold});
    return ds;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Morphological specialisation of word vector spaces";

    // Registered base first: translators run newest first, so InputError is matched before Error.
    auto& base = py::register_exception<Error>(m, "MorphfitError", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", base.ptr());

    py::class_<VectorStore>(m, "VectorStore")
        .def(py::init([](std::vector<std::string> words, Matrix rows) { return VectorStore(std::move(words), std::move(rows)); }),
             py::arg("words"), py::arg("vectors"))
        .def_static(
            "load",
            [](const std::filesystem::path& path, bool normalize, bool lowercase) {
                return VectorStore::load(path, LoadOptions{normalize, lowercase});
            },
            py::arg("path"), py::arg("normalize") = true, py::arg("lowercase") = false)
        .def_static(
            "parse",
            [](const std::string& text, bool normalize, bool lowercase) {
                return VectorStore::parse(text, LoadOptions{normalize, lowercase});
            },
            py::arg("text"), py::arg("normalize") = true, py::arg("lowercase") = false)
        .def("save", &VectorStore::save, py::arg("path"))
        .def("to_text", &VectorStore::to_text)
        .def_property_readonly("words", &VectorStore::words)
        .def_property_readonly("vectors", [](const VectorStore& s) { return Matrix(s.matrix()); })
        .def_property_readonly("initial_vectors", [](const VectorStore& s) { return Matrix(s.initial_matrix()); })
        .def_property_readonly("dim", &VectorStore::dim)
        .def("__len__", &VectorStore::size)
        .def("__contains__", [](const VectorStore& s, const std::string& w) { return s.contains(w); })
        .def("vector", [](const VectorStore& s, const std::string& w) {
            return Vector(s.matrix().row(static_cast<Eigen::Index>(s.index(w))).transpose());
        })
        .def("cosine", py::overload_cast<std::string_view, std::string_view>(&VectorStore::cosine, py::const_));

    py::class_<TrainingConfig>(m, "TrainingConfig")
        .def(py::init<>())
        .def_readwrite("delta_att", &TrainingConfig::delta_att)
        .def_readwrite("delta_rpl", &TrainingConfig::delta_rpl)
        .def_readwrite("lambda_reg", &TrainingConfig::lambda_reg)
        .def_readwrite("epochs", &TrainingConfig::epochs)
        .def_readwrite("attract_batch_size", &TrainingConfig::attract_batch_size)
        .def_readwrite("repel_batch_size", &TrainingConfig::repel_batch_size)
        .def_readwrite("learning_rate", &TrainingConfig::learning_rate)
        .def_readwrite("seed", &TrainingConfig::rng_seed)
        .def_readwrite("normalize_after", &TrainingConfig::normalize_after);

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("store", &FitResult::store)
        .def_readonly("dropped_pairs", &FitResult::dropped_pairs)
        .def_property_readonly("costs", [](const FitResult& r) {
            std::vector<std::tuple<int, double, double, double>> out;
            for (const auto& e : r.log) out.emplace_back(e.epoch, e.cost.attract, e.cost.repel, e.cost.reg);
            return out;
        });

    m.def(
        "inflections",
        [](const std::string& language, const std::string& word) {
            std::vector<std::string> out;
            for (const auto& rule : builtin_rules(parse_language(language)).attract_rules)
                for (auto& w : apply_rule(rule, word))
                    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
            return out;
        },
        py::arg("language"), py::arg("word"), "Candidate inflectional relatives of a word");
    m.def(
        "antonym_candidates",
        [](const std::string& language, const std::string& word) {
            return antonym_candidates(builtin_rules(parse_language(language)), word);
        },
        py::arg("language"), py::arg("word"));
    m.def(
        "build_constraints",
        [](std::vector<std::string> vocab, const std::string& language, unsigned threads) {
            auto c = build_constraints(std::move(vocab), parse_language(language), {threads});
            return std::make_pair(c.attract, c.repel);
        },
        py::arg("vocab"), py::arg("language") = "en", py::arg("threads") = 1,
        "Returns (attract, repel) lists of word pairs");
    m.def(
        "fit",
        [](const VectorStore& store, PairList attract, PairList repel, const TrainingConfig& config) {
            py::gil_scoped_release release;
            return fit(store, {std::move(attract), std::move(repel)}, config);
        },
        py::arg("store"), py::arg("attract"), py::arg("repel") = PairList{}, py::arg("config") = TrainingConfig{});
    m.def(
        "morph_fix",
        [](const VectorStore& store, const PairList& attract, std::unordered_map<std::string, long long> counts) {
            return morph_fix(store, attract, FrequencyTable{std::move(counts)});
        },
        py::arg("store"), py::arg("attract"), py::arg("frequencies"));
    m.def(
        "spearman", [](const std::vector<double>& a, const std::vector<double>& b) { return spearman(a, b); },
        py::arg("a"), py::arg("b"));
    m.def(
        "evaluate",
        [](const VectorStore& store, const PyEntries& entries) {
            auto r = evaluate(store, to_dataset(entries));
            return std::make_tuple(r.rho, r.covered, r.total);
        },
        py::arg("store"), py::arg("pairs"), "Returns (rho, covered, total)");
    m.def("neighbors", &neighbors, py::arg("store"), py::arg("word"), py::arg("k") = 10);
}
