// docmap-server: the presentation server. Loads a corpus for the local
// engine plus any replay engines and speaks the newline-delimited JSON
// protocol over TCP (or stdin/stdout with --stdio).

#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "json.hpp"

#include "docmap/adapters.hpp"
#include "docmap/error.hpp"
#include "docmap/net.hpp"
#include "docmap/protocol.hpp"
#include "docmap/service.hpp"

namespace {

// Applies `cluster.*` keys from a flat JSON object.
void apply_config_file(const std::string& path, docmap::ClusterConfig& cluster) {
  std::ifstream in(path);
  if (!in) throw docmap::Error(docmap::ErrorCode::kIo, "cannot read " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  for (const auto& [key, value] : j.items()) {
    if (key == "cluster.max_phrase_len") {
      cluster.max_phrase_len = value.get<std::size_t>();
    } else if (key == "cluster.top_bases") {
      cluster.top_bases = value.get<std::size_t>();
    } else if (key == "cluster.merge_threshold") {
      cluster.merge_threshold = value.get<double>();
    } else if (key == "cluster.tabs") {
      cluster.tabs = value.get<std::size_t>();
    } else {
      throw docmap::Error(docmap::ErrorCode::kInvalidArgument,
                          "unknown config key " + key);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Document map presentation server"};
  std::uint16_t port = 7070;
  std::string host = "127.0.0.1";
  std::string corpus_path;
  std::string stopwords_path;
  std::string grid_text = "10x10";
  std::size_t clusters = 5;
  std::string stemming = "off";
  std::size_t session_cap = 64;
  std::vector<std::string> replays;
  std::string config_path;
  bool stdio = false;

  app.add_option("--port", port, "TCP port (0 picks a free one)");
  app.add_option("--host", host, "IPv4 address to bind");
  app.add_option("--corpus", corpus_path,
                 "JSON-lines corpus served by the `local` engine");
  app.add_option("--stopwords", stopwords_path,
                 "stopword file, one word per line")
      ->check(CLI::ExistingFile);
  app.add_option("--grid", grid_text, "map geometry RxC");
  app.add_option("--clusters", clusters, "number of cluster tabs");
  app.add_option("--stemming", stemming, "light suffix stemming")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--session-cap", session_cap, "maximum open sessions")
      ->check(CLI::PositiveNumber);
  app.add_option("--replay", replays, "replay engine as <engine_id>=<path>");
  app.add_option("--config", config_path, "JSON file with cluster.* keys")
      ->check(CLI::ExistingFile);
  app.add_flag("--stdio", stdio, "serve one stream on stdin/stdout");
  CLI11_PARSE(app, argc, argv);

  try {
    docmap::ServiceConfig config;
    config.session_cap = session_cap;
    config.pipeline.grid = docmap::GridSpec::parse(grid_text);
    if (!stopwords_path.empty()) {
      config.pipeline.analysis.stopwords =
          docmap::load_stopwords(stopwords_path);
    }
    config.pipeline.analysis.stemming = stemming == "on";
    if (!config_path.empty()) {
      apply_config_file(config_path, config.pipeline.cluster);
    }
    if (app.count("--clusters")) config.pipeline.cluster.tabs = clusters;
    config.pipeline.cluster.validate();

    auto registry = std::make_shared<docmap::AdapterRegistry>();
    if (!corpus_path.empty()) {
      auto index = std::make_shared<const docmap::InvertedIndex>(
          docmap::load_corpus(corpus_path), config.pipeline.analysis);
      std::cerr << "indexed " << index->doc_count() << " documents from "
                << corpus_path << "\n";
      registry->add(std::make_unique<docmap::LocalAdapter>(
          "local", "Local corpus", std::move(index)));
    }
    for (const auto& spec : replays) {
      auto eq = spec.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
        throw docmap::Error(docmap::ErrorCode::kInvalidArgument,
                            "--replay expects <engine_id>=<path>, got " + spec);
      }
      registry->add(std::make_unique<docmap::ReplayAdapter>(
          spec.substr(0, eq), spec.substr(eq + 1)));
    }

    docmap::PresentationService service(config, registry);
    docmap::ProtocolHandler handler(service);
    if (stdio) {
      docmap::serve_stream(handler, std::cin, std::cout);
      return 0;
    }

    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    docmap::TcpServer server(handler, port, host);
    server.start();
    std::cout << "listening on " << host << ":" << server.port() << std::endl;
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
    return 0;
  } catch (const docmap::Error& e) {
    std::cerr << "docmap-server: " << e.code_name() << ": " << e.what()
              << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "docmap-server: " << e.what() << "\n";
    return 1;
  }
}
