// docmap-eval: compares two runs against relevance judgments.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "docmap/error.hpp"
#include "docmap/eval.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Compare two ranked runs: 11-point precision, P@k, "
               "normalized recall"};
  std::string qrels_path, run_a_path, run_b_path;
  std::string cutoffs_text = "5,10,20,30";
  std::string json_path;
  app.add_option("--qrels", qrels_path, "`query_id doc_id rel` lines")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--run-a", run_a_path, "baseline run")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--run-b", run_b_path, "compared run")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--cutoffs", cutoffs_text, "comma-separated P@k cutoffs");
  app.add_option("--json", json_path,
                 "write the JSON report here instead of stdout ('-' = stdout)");
  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<std::size_t> cutoffs;
    std::stringstream ss(cutoffs_text);
    for (std::string item; std::getline(ss, item, ',');) {
      std::size_t pos = 0;
      unsigned long k = std::stoul(item, &pos);
      if (pos != item.size() || k == 0) {
        throw docmap::Error(docmap::ErrorCode::kInvalidArgument,
                            "bad cutoff '" + item + "'");
      }
      cutoffs.push_back(k);
    }

    auto qrels = docmap::eval::load_qrels(qrels_path);
    auto run_a = docmap::eval::load_run(run_a_path);
    auto run_b = docmap::eval::load_run(run_b_path);
    auto report = docmap::eval::comparison_report(run_a, run_b, qrels, cutoffs);
    for (const auto& w : report.warnings) {
      std::cerr << "warning: " << w << "\n";
    }
    std::cout << report.to_text();
    auto j = report.to_json().dump(2);
    if (json_path.empty() || json_path == "-") {
      std::cout << "\n" << j << "\n";
    } else {
      std::ofstream out(json_path);
      if (!out) {
        throw docmap::Error(docmap::ErrorCode::kIo, "cannot write " + json_path);
      }
      out << j << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "docmap-eval: " << e.what() << "\n";
    return 1;
  }
}
