#ifndef AFFINA_JSON_IO_HPP_
#define AFFINA_JSON_IO_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "affina/modexp.hpp"

namespace affina {

using ordered_json = nlohmann::ordered_json;

// A problem with the input document; maps to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A parsed instance file. Module-form instances also carry the derived
// algebra-form data so every datum-track analysis applies to them.
struct Instance {
  std::string                   id;
  std::optional<Extension>      ext;
  std::optional<ModuleExtension> mod;
  Mapping                       lifting;
  std::vector<int>              m_table;
  bool                          m_searched = false;
  std::vector<Identity>         identities;
  std::vector<std::string>      analyses;
};

// Parses and validates an instance document. Guardrails: universe size <= 16
// and arity <= 4 unless force is set.
Instance load_instance(nlohmann::json const& doc, bool force);

// Serialisations used in reports.
ordered_json algebra_to_json(FiniteAlgebra const& A);
ordered_json cocycle_to_json(AffineDatum const& D, TwoCocycle const& T);
ordered_json datum_to_json(AffineDatum const& D);

// FNV-1a 64-bit, rendered as 16 hex digits.
std::string fnv1a_hex(std::string const& data);

}  // namespace affina

#endif  // AFFINA_JSON_IO_HPP_
