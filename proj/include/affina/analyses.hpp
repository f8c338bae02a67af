#ifndef AFFINA_ANALYSES_HPP_
#define AFFINA_ANALYSES_HPP_

#include "affina/json_io.hpp"

namespace affina {

struct RunOptions {
  std::vector<std::string> analyses;  // overrides the instance's selection
  bool                     force  = false;
  std::string              format = "json";  // "json" or "text"
};

struct RunResult {
  int          exit_code = 0;  // 0 all-pass, 1 theorem-check failure, 2 input error
  ordered_json report;
  std::string  rendered;  // report in the requested format
};

// Runs the selected analyses over a parsed instance document.
RunResult run_instance(nlohmann::json const& doc, RunOptions const& options);
RunResult run_file(std::string const& path, RunOptions const& options);

// The bundled instance files, as (filename, document) pairs.
std::vector<std::pair<std::string, ordered_json>> bundled_instances();

// Writes the bundled instances into dir; refuses an existing directory
// unless overwrite is set. Returns the file names written.
std::vector<std::string> emit_examples(std::string const& dir, bool overwrite);

}  // namespace affina

#endif  // AFFINA_ANALYSES_HPP_
