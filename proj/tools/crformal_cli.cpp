// Command-line front end. Talks to the library only through crformal.h.
#include <crformal/crformal.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

std::optional<std::string> read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes the report where asked and maps it to an exit code.
int emit(crformal_report* report, const std::string& json_path) {
  const bool json_to_stdout = json_path == "-";
  (json_to_stdout ? std::cerr : std::cout) << crformal_report_summary(report);
  if (json_to_stdout) {
    std::cout << crformal_report_json(report);
  } else if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out || !(out << crformal_report_json(report))) {
      std::cerr << "crformal: cannot write " << json_path << "\n";
      crformal_report_free(report);
      return kExitUsage;
    }
  }
  const int code = crformal_report_ok(report) ? kExitOk : kExitFailed;
  crformal_report_free(report);
  return code;
}

int api_failure(int rc) {
  std::cerr << "crformal: " << crformal_error_name(rc) << ": " << crformal_last_error() << "\n";
  return kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact formal power series toolkit for CR hypersurfaces and maps"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(crformal_version()));

  int degree = -1;
  std::string convention;
  std::optional<std::uint64_t> seed;
  std::string json_path;
  app.add_option("--degree", degree, "Truncation degree D (default 10 or the document's)")->check(CLI::Range(0, 60));
  app.add_option("--complexify", convention, "Complexification factor convention")
      ->check(CLI::IsMember({"2i", "i"}));
  app.add_option("--seed", seed, "Seed for randomized rank evaluation points");
  app.add_option("--json", json_path, "Write the JSON report to this path ('-' for stdout)");

  std::string input;
  std::vector<std::string> suites;
  auto* classify = app.add_subcommand("classify", "Classify hypersurfaces of a document");
  auto* check_map = app.add_subcommand("check-map", "Analyze maps between hypersurfaces of a document");
  auto* prolong = app.add_subcommand("prolong", "Run the prolongation solver on document tasks");
  for (auto* sub : {classify, check_map, prolong}) {
    sub->add_option("input", input, "Document file ('-' or absent: stdin)");
  }
  auto* verify = app.add_subcommand("verify", "Run theorem suites (default: all)");
  verify->add_option("suites", suites, "finite_type, infinite_type, easystuff")
      ->check(CLI::IsMember({"finite_type", "infinite_type", "easystuff"}));
  auto* examples = app.add_subcommand("examples", "Recompute the example families and compare with predictions");
  auto* grammar = app.add_subcommand("print-grammar", "Print the document grammar");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (grammar->parsed()) {
    std::cout << crformal_grammar();
    return kExitOk;
  }

  crformal_options options;
  crformal_options_init(&options);
  options.degree = degree;
  if (convention == "2i") options.convention = CRFORMAL_CONVENTION_2I;
  if (convention == "i") options.convention = CRFORMAL_CONVENTION_I;
  if (seed) {
    options.has_seed = 1;
    options.seed = *seed;
  }

  crformal_report* report = nullptr;
  int rc = CRFORMAL_OK;
  if (verify->parsed()) {
    std::vector<const char*> names;
    for (const auto& s : suites) names.push_back(s.c_str());
    rc = crformal_run_suites(names.data(), names.size(), &options, &report);
  } else if (examples->parsed()) {
    rc = crformal_run_examples(&options, &report);
  } else {
    const auto text = read_input(input);
    if (!text) {
      std::cerr << "crformal: cannot read " << input << "\n";
      return kExitUsage;
    }
    const int tasks = classify->parsed()    ? CRFORMAL_TASKS_CLASSIFY
                      : check_map->parsed() ? CRFORMAL_TASKS_CHECK_MAP
                                            : CRFORMAL_TASKS_PROLONG;
    rc = crformal_run_text(text->data(), text->size(), tasks, &options, &report);
  }
  if (rc != CRFORMAL_OK) return api_failure(rc);
  return emit(report, json_path);
}
