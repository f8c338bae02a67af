// affina: deconstruct finite-algebra extensions into affine datum and
// 2-cocycles, compute second cohomology, and machine-check the exactness and
// decomposition properties of the Wells machinery.

#include <iostream>

#include <CLI11.hpp>

#include "affina/analyses.hpp"
#include "affina/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"affina: extensions, affine datum and the Wells derivation"};
  app.set_version_flag("--version", affina::version_string);
  app.require_subcommand(1);

  auto* run  = app.add_subcommand("run", "run analyses over an instance file");
  std::string path;
  affina::RunOptions options;
  run->add_option("file", path, "instance file (JSON)")->required();
  run->add_option("--analysis", options.analyses,
                  "analysis to run (datum, cohomology, wells, decompose, central, "
                  "modexp); repeatable, defaults to the instance's own list");
  run->add_option("--format", options.format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->default_val("json");
  run->add_flag("--force", options.force, "override the size guardrails");

  auto* examples = app.add_subcommand("examples", "write the bundled instance files");
  std::string dir;
  bool        overwrite = false;
  examples->add_option("dir", dir, "target directory")->required();
  examples->add_flag("--overwrite", overwrite, "allow an existing directory");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    affina::RunResult result = affina::run_file(path, options);
    std::cout << result.rendered;
    return result.exit_code;
  }
  try {
    for (auto const& name : affina::emit_examples(dir, overwrite)) {
      std::cout << name << "\n";
    }
  } catch (affina::InputError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
