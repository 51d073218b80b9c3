// gerbelab: batch verification runner and JSON front end for the library.
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 usage or I/O error.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gerbelab/gerbe.hpp"
#include "gerbelab/homology.hpp"
#include "gerbelab/io.hpp"
#include "gerbelab/suites.hpp"

namespace {

using gerbelab::suites::RunConfig;

void print_catalog() {
  std::printf("suites:\n");
  for (const auto& info : gerbelab::suites::list_suites())
    std::printf("  %-20s %s\n", info.name.c_str(), info.description.c_str());
}

int run_suite(const RunConfig& config) {
  gerbelab::suites::Report report = gerbelab::suites::run(config);
  std::fputs(report.table().c_str(), stdout);
  return report.verdict ? 0 : 1;
}

int run_cohomology(const std::string& path, int degree, const std::string& json_path) {
  gerbelab::Nerve nerve = gerbelab::io::nerve_from_json(gerbelab::io::read_file(path));
  gerbelab::CohomologyGroup group = gerbelab::cohomology(nerve, degree);
  nlohmann::json j;
  j["degree"] = degree;
  j["free_rank"] = group.free_rank;
  j["torsion_factors"] = group.torsion_factors;
  std::string text = j.dump(2);
  if (!json_path.empty()) gerbelab::io::write_file(json_path, text);
  std::printf("%s\n", text.c_str());
  return 0;
}

int run_dd(const std::string& path, const std::string& json_path) {
  gerbelab::CechGerbe gerbe =
      gerbelab::io::gerbe_from_json(gerbelab::io::read_file(path));
  gerbelab::DDClass cls = gerbelab::dd(gerbe);
  nlohmann::json j;
  if (cls.info.finite())
    j["order"] = *cls.info.order;
  else
    j["order"] = "infinite";
  j["free_pairings"] = cls.free_pairings;
  j["torsion_factors"] = cls.ambient.torsion_factors;
  j["torsion_coords"] = cls.torsion_coords;
  std::string text = j.dump(2);
  if (!json_path.empty()) gerbelab::io::write_file(json_path, text);
  std::printf("%s\n", text.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gerbelab: finite bundle gerbes, their Dixmier-Douady classes, "
               "and the verification suites"};
  app.require_subcommand(0, 1);

  RunConfig config;
  std::vector<std::string> tol_args;

  std::string complex_path, gerbe_path, out_path;
  int degree = -1;
  CLI::App* cohomology_cmd = nullptr;

  auto add_suite = [&](const std::string& name, const std::string& desc) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    cmd->add_option("--seed", config.seed, "master RNG seed");
    cmd->add_option("--samples", config.samples, "samples per randomized check");
    cmd->add_option("--resolution", config.resolution, "arcs per circle (torus suite)");
    cmd->add_option("--n", config.n, "matrix size (spectral suite)");
    cmd->add_option("--tol", tol_args, "override a tolerance, name=value")
        ->expected(-1);
    cmd->add_option("--json", config.json_path, "write the JSON report here");
    cmd->callback([&, name] { config.suite = name; });
    return cmd;
  };
  for (const auto& info : gerbelab::suites::list_suites()) {
    CLI::App* cmd = add_suite(info.name, info.description);
    // `cohomology` doubles as the file front end when --complex is given
    if (info.name == "cohomology") {
      cohomology_cmd = cmd;
      cmd->add_option("--complex", complex_path, "nerve JSON file");
      cmd->add_option("--degree", degree, "cohomological degree of --complex");
      cmd->add_option("--out", out_path, "write the group here");
    }
  }

  CLI::App* dd_cmd = app.add_subcommand("dd", "Dixmier-Douady class of a gerbe file");
  dd_cmd->add_option("--gerbe", gerbe_path, "gerbe JSON file")->required();
  dd_cmd->add_option("--json", out_path, "write the result here");

  CLI::App* list_cmd = app.add_subcommand("list", "list the verification suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list_cmd->parsed() || app.get_subcommands().empty()) {
      print_catalog();
      return 0;
    }
    if (cohomology_cmd->parsed() && !complex_path.empty()) {
      if (degree < 0)
        throw std::invalid_argument("cohomology --complex needs --degree");
      return run_cohomology(complex_path, degree, out_path);
    }
    if (dd_cmd->parsed()) return run_dd(gerbe_path, out_path);

    for (const std::string& kv : tol_args) {
      auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("--tol expects name=value, got " + kv);
      config.tolerances[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    return run_suite(config);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
