// biframe_lab: certify K-biframe bounds and run the theorem verifiers on a problem document.
//
//   biframe_lab bounds <spec.json>
//   biframe_lab verify <spec.json> [--theorems all|id,id,...]
//   biframe_lab corpus list
//   biframe_lab corpus run <name> [--theorems ...]
//
// Exit status: 0 all verdicts confirmed or hypotheses_unmet, 2 any violation, 1 bad input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11/CLI11.hpp>
#include <nlohmann/json.hpp>

#include "biframe/cli.hpp"
#include "biframe/error.hpp"

namespace {

using namespace biframe;

std::string read_document(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const cli::RunReport& r, const std::string& format) {
  std::cout << (format == "machine" ? cli::to_machine(r) : cli::to_human(r));
}

int list_corpus(const std::string& format) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& name : corpus_names()) {
    const CorpusEntry e = corpus_entry(name);
    entries.push_back({{"name", name}, {"dim", e.pair.dim()}, {"nodes", e.pair.measure.size()},
                       {"description", e.description}});
  }
  if (format == "machine") {
    std::cout << entries.dump(2) << '\n';
  } else {
    for (const auto& e : entries) {
      std::printf("%-28s d=%-4zu nodes=%-5zu %s\n", e["name"].get<std::string>().c_str(), e["dim"].get<std::size_t>(),
                  e["nodes"].get<std::size_t>(), e["description"].get<std::string>().c_str());
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous K-biframe bounds and theorem checks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "human";
  cli::Overrides ov;
  double tol = 0.0;
  std::uint64_t seed = 0;
  int panels = 0;
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"human", "machine"}));
  auto* tol_opt = app.add_option("--tol", tol, "Hypothesis tolerance")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "Sampling seed (falls back to $BIFRAME_LAB_SEED, then 1)");
  auto* panels_opt = app.add_option("--panels", panels, "Quadrature panels for interval measures")
                         ->check(CLI::Range(1, 1000000));

  std::string spec_path;
  std::vector<std::string> theorems{"all"};

  auto* bounds = app.add_subcommand("bounds", "Certify (A, B) for a problem document");
  bounds->add_option("spec", spec_path, "Problem document (JSON, '-' for stdin)")->required();

  auto* verify = app.add_subcommand("verify", "Certify and run theorem verifiers");
  verify->add_option("spec", spec_path, "Problem document (JSON, '-' for stdin)")->required();
  verify->add_option("--theorems", theorems, "Theorem ids, comma separated, or 'all'")->delimiter(',');

  auto* corpus = app.add_subcommand("corpus", "Built-in examples");
  corpus->require_subcommand(1);
  auto* list = corpus->add_subcommand("list", "List corpus entries");
  auto* run = corpus->add_subcommand("run", "Certify and verify a corpus entry");
  std::string entry_name;
  run->add_option("name", entry_name, "Corpus entry")->required();
  run->add_option("--theorems", theorems, "Theorem ids, comma separated, or 'all'")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (*tol_opt) ov.tol = tol;
  if (*seed_opt) ov.seed = seed;
  if (*panels_opt) ov.panels = panels;

  try {
    if (*list) return list_corpus(format);

    cli::ProblemSpec spec;
    if (*run) {
      spec.corpus = cli::CorpusRef{entry_name, {}};
      const auto names = corpus_names();
      if (std::find(names.begin(), names.end(), entry_name) == names.end()) {
        throw Error(ErrorCode::UnknownCorpusEntry, "'" + entry_name + "'");
      }
    } else {
      spec = cli::parse_spec(read_document(spec_path));
    }

    cli::RunReport report;
    if (*bounds) {
      report = cli::run_certificate(spec, ov);
    } else {
      report = cli::run_verifiers(spec, cli::parse_selection(theorems), ov);
      if (*run) report.command = "corpus run";
    }
    emit(report, format);
    return cli::exit_status(report);
  } catch (const Error& e) {
    std::cerr << "biframe_lab: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "biframe_lab: " << e.what() << '\n';
    return 1;
  }
}
