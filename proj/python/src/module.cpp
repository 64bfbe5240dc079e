// Python bindings for the docmap core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "docmap/adapters.hpp"
#include "docmap/clustering.hpp"
#include "docmap/error.hpp"
#include "docmap/eval.hpp"
#include "docmap/layers.hpp"
#include "docmap/protocol.hpp"
#include "docmap/service.hpp"

namespace py = pybind11;
using namespace docmap;

namespace {

AnalysisConfig analysis_config(bool stopwords, bool stemming) {
  AnalysisConfig c = stopwords ? AnalysisConfig::defaults() : AnalysisConfig{};
  c.stemming = stemming;
  return c;
}

std::vector<Document> to_documents(const std::vector<py::dict>& docs) {
  std::vector<Document> out;
  for (const auto& d : docs) {
    out.push_back({d["id"].cast<std::string>(), d["title"].cast<std::string>(),
                   d.contains("body") ? d["body"].cast<std::string>() : ""});
  }
  return out;
}

TermVector to_vector(const std::map<std::string, double>& m) {
  TermVector v;
  for (const auto& [t, w] : m) v.set(t, w);
  return v;
}

std::map<std::string, double> from_vector(const TermVector& v) {
  return {v.entries().begin(), v.entries().end()};
}

py::dict base_to_dict(const BaseCluster& b) {
  py::dict d;
  d["phrase"] = b.phrase;
  d["members"] = b.members;
  d["score"] = b.score;
  return d;
}

// A service over a local corpus and optional replay files, driven through
// the same JSON request lines the TCP server accepts.
class PyService {
 public:
  PyService(const std::string& corpus_path,
            const std::map<std::string, std::string>& replays,
            const std::string& grid, std::size_t session_cap) {
    ServiceConfig config;
    config.pipeline.grid = GridSpec::parse(grid);
    config.session_cap = session_cap;
    auto reg = std::make_shared<AdapterRegistry>();
    if (!corpus_path.empty()) {
      reg->add(std::make_unique<LocalAdapter>(
          "local", "Local corpus",
          std::make_shared<const InvertedIndex>(load_corpus(corpus_path),
                                                config.pipeline.analysis)));
    }
    for (const auto& [id, path] : replays) {
      reg->add(std::make_unique<ReplayAdapter>(id, path));
    }
    service_ = std::make_unique<PresentationService>(config, reg);
    handler_ = std::make_unique<ProtocolHandler>(*service_);
  }

  std::string request(const std::string& line) {
    py::gil_scoped_release release;
    return handler_->handle_line(line);
  }

 private:
  std::unique_ptr<PresentationService> service_;
  std::unique_ptr<ProtocolHandler> handler_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "docmap core bindings";

  auto error = py::register_exception<Error>(m, "DocmapError", PyExc_ValueError);
  (void)error;

  m.def("default_stopwords", [] {
    const auto& w = default_stopwords();
    return std::vector<std::string>(w.begin(), w.end());
  });
  m.def(
      "tokenize",
      [](const std::string& text, bool stopwords, bool stemming) {
        return tokenize(text, analysis_config(stopwords, stemming));
      },
      py::arg("text"), py::arg("stopwords") = true, py::arg("stemming") = false);
  m.def("term_weight", &term_weight, py::arg("tf"), py::arg("df"),
        py::arg("doc_count"));
  m.def(
      "cosine_sim",
      [](const std::map<std::string, double>& u,
         const std::map<std::string, double>& v) {
        return cosine_sim(to_vector(u), to_vector(v));
      },
      py::arg("u"), py::arg("v"));

  py::class_<InvertedIndex>(m, "Index")
      .def(py::init([](const std::vector<py::dict>& docs, bool stopwords,
                       bool stemming) {
             return InvertedIndex(to_documents(docs),
                                  analysis_config(stopwords, stemming));
           }),
           py::arg("docs"), py::arg("stopwords") = true,
           py::arg("stemming") = false)
      .def_static(
          "load",
          [](const std::string& path, bool stopwords, bool stemming) {
            return InvertedIndex(load_corpus(path),
                                 analysis_config(stopwords, stemming));
          },
          py::arg("path"), py::arg("stopwords") = true,
          py::arg("stemming") = false)
      .def("__len__", &InvertedIndex::doc_count)
      .def("df", [](const InvertedIndex& i, const std::string& t) { return i.df(t); })
      .def("doc_vector",
           [](const InvertedIndex& i, const std::string& id) {
             return from_vector(i.doc_vector(id));
           })
      .def(
          "search",
          [](const InvertedIndex& index, const std::string& query, std::size_t k) {
            auto terms = tokenize(query, index.analysis());
            std::vector<std::pair<std::string, double>> out;
            for (const auto& e : local_search(index, terms, k).entries) {
              out.emplace_back(e.doc.id, e.score);
            }
            return out;
          },
          py::arg("query"), py::arg("k") = 100);

  m.def(
      "generate_layers",
      [](const std::vector<std::string>& terms) {
        std::vector<py::dict> out;
        for (const auto& l : generate_layers(terms)) {
          py::dict d;
          d["id"] = l.layer_id;
          d["kind"] = std::string(layer_kind_name(l.kind));
          d["label"] = l.label;
          d["terms"] = l.terms;
          out.push_back(d);
        }
        return out;
      },
      py::arg("terms"));
  m.def(
      "normalize_brightness",
      [](const std::map<std::string, double>& raw) {
        auto b = normalize_brightness(ScoreMap(raw.begin(), raw.end()));
        return std::map<std::string, double>(b.begin(), b.end());
      },
      py::arg("raw"));

  m.def("score_base_cluster", &score_base_cluster, py::arg("members"),
        py::arg("phrase_len"));
  m.def(
      "base_clusters",
      [](const std::vector<py::dict>& docs, bool stopwords) {
        auto d = to_documents(docs);
        std::vector<py::dict> out;
        for (const auto& b : build_base_clusters(
                 d, analysis_config(stopwords, false), ClusterConfig{})) {
          out.push_back(base_to_dict(b));
        }
        return out;
      },
      py::arg("docs"), py::arg("stopwords") = true);
  m.def(
      "cluster_documents",
      [](const InvertedIndex& index, std::size_t tabs) {
        ClusterConfig config;
        config.tabs = tabs;
        std::vector<py::dict> out;
        for (const auto& c : cluster_documents(index, config)) {
          py::dict d;
          d["id"] = c.cluster_id;
          d["label"] = c.label.text();
          d["members"] = c.members;
          d["score"] = c.score;
          auto s = membership_scores(c, index);
          d["membership"] =
              std::map<std::string, double>(s.raw.begin(), s.raw.end());
          out.push_back(d);
        }
        return out;
      },
      py::arg("index"), py::arg("tabs") = 5);

  m.def(
      "precision_at_cutoff",
      [](const std::vector<std::string>& ranking,
         const std::set<std::string>& relevant,
         std::size_t k) { return eval::precision_at_cutoff(ranking, relevant, k); },
      py::arg("ranking"), py::arg("relevant"), py::arg("k"));
  m.def(
      "interpolated_precision_11pt",
      [](const std::vector<std::string>& ranking,
         const std::set<std::string>& relevant) {
        auto p = eval::interpolated_precision_11pt(ranking, relevant);
        return std::vector<double>(p.begin(), p.end());
      },
      py::arg("ranking"), py::arg("relevant"));
  m.def(
      "normalized_recall",
      [](const std::vector<std::string>& ranking,
         const std::set<std::string>& relevant) {
        return eval::normalized_recall(ranking, relevant);
      },
      py::arg("ranking"), py::arg("relevant"));
  m.def("percent_increase", &eval::percent_increase, py::arg("a"), py::arg("b"));
  m.def(
      "eval_report",
      [](const std::string& qrels, const std::string& run_a,
         const std::string& run_b, std::vector<std::size_t> cutoffs) {
        auto report = eval::comparison_report(
            eval::parse_run(run_a), eval::parse_run(run_b),
            eval::parse_qrels(qrels), cutoffs);
        return report.to_json().dump();
      },
      py::arg("qrels"), py::arg("run_a"), py::arg("run_b"),
      py::arg("cutoffs") = std::vector<std::size_t>{5, 10, 20, 30},
      "Comparison report as a JSON string; inputs are file contents.");

  py::class_<PyService>(m, "Service")
      .def(py::init<const std::string&, const std::map<std::string, std::string>&,
                    const std::string&, std::size_t>(),
           py::arg("corpus") = "",
           py::arg("replays") = std::map<std::string, std::string>{},
           py::arg("grid") = "10x10", py::arg("session_cap") = 64)
      .def("request", &PyService::request, py::arg("line"),
           "Handle one JSON request line; returns the response line.");
}
