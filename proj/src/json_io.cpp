#include "affina/json_io.hpp"

#include <algorithm>

namespace affina {

namespace {

using nlohmann::json;

[[noreturn]] void fail(std::string const& msg) {
  throw InputError(msg);
}

json const& field(json const& doc, char const* key) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    fail(std::string("missing field \"") + key + "\"");
  }
  return *it;
}

int int_field(json const& doc, char const* key) {
  json const& v = field(doc, key);
  if (!v.is_number_integer()) {
    fail(std::string("field \"") + key + "\" must be an integer");
  }
  return v.get<int>();
}

// Nested row-major table -> flat vector, validating shape and entry range.
void flatten_table(json const& node, int arity, int n, std::string where,
                   std::vector<int>& out) {
  if (arity == 0) {
    json const& cell = node.is_array() && node.size() == 1 ? node[0] : node;
    if (!cell.is_number_integer()) {
      fail("expected an integer at " + where);
    }
    int v = cell.get<int>();
    if (v < 0 || v >= n) {
      fail("table entry out of range at " + where);
    }
    out.push_back(v);
    return;
  }
  if (!node.is_array() || static_cast<int>(node.size()) != n) {
    fail("expected an array of length " + std::to_string(n) + " at " + where);
  }
  for (int i = 0; i < n; ++i) {
    flatten_table(node[i], arity - 1, n, where + "[" + std::to_string(i) + "]", out);
  }
}

std::vector<int> square_table(json const& node, int rows, int cols,
                              std::string const& where) {
  if (!node.is_array() || static_cast<int>(node.size()) != rows) {
    fail("expected " + std::to_string(rows) + " rows at " + where);
  }
  std::vector<int> out;
  for (int i = 0; i < rows; ++i) {
    json const& row = node[i];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      fail("expected " + std::to_string(cols) + " columns at " + where + "["
           + std::to_string(i) + "]");
    }
    for (int j = 0; j < cols; ++j) {
      if (!row[j].is_number_integer()) {
        fail("expected an integer at " + where + "[" + std::to_string(i) + "]["
             + std::to_string(j) + "]");
      }
      out.push_back(row[j].get<int>());
    }
  }
  return out;
}

std::vector<int> int_list(json const& node, std::string const& where) {
  if (!node.is_array()) {
    fail("expected an array at " + where);
  }
  std::vector<int> out;
  for (auto const& v : node) {
    if (!v.is_number_integer()) {
      fail("expected integers at " + where);
    }
    out.push_back(v.get<int>());
  }
  return out;
}

FiniteAlgebra load_algebra(json const& doc) {
  json const&           sig_node = field(doc, "signature");
  std::vector<OpSymbol> syms;
  if (!sig_node.is_array() || sig_node.empty()) {
    fail("signature must be a non-empty array");
  }
  for (auto const& s : sig_node) {
    syms.push_back(OpSymbol{field(s, "name").get<std::string>(), int_field(s, "arity")});
  }
  int         n      = int_field(doc, "size");
  json const& tables = field(doc, "tables");
  std::vector<std::vector<int>> flat;
  for (auto const& sym : syms) {
    auto it = tables.find(sym.name);
    if (it == tables.end()) {
      fail("missing table for \"" + sym.name + "\"");
    }
    std::vector<int> t;
    flatten_table(*it, sym.arity, n, sym.name, t);
    flat.push_back(std::move(t));
  }
  try {
    return FiniteAlgebra(Signature(std::move(syms)), n, std::move(flat));
  } catch (std::invalid_argument const& e) {
    fail(e.what());
  }
}

std::vector<Identity> load_identities(json const& doc, Signature const& sig) {
  std::vector<Identity> ids;
  auto it = doc.find("identities");
  if (it == doc.end()) {
    return ids;
  }
  for (auto const& pair : *it) {
    if (!pair.is_array() || pair.size() != 2) {
      fail("identities must be [lhs, rhs] term pairs");
    }
    try {
      ids.push_back(Identity{Term::parse(pair[0].get<std::string>(), sig),
                             Term::parse(pair[1].get<std::string>(), sig)});
    } catch (std::invalid_argument const& e) {
      fail(e.what());
    }
  }
  return ids;
}

}  // namespace

Instance load_instance(json const& doc, bool force) {
  Instance inst;
  inst.id = doc.contains("id") ? field(doc, "id").get<std::string>() : "unnamed";
  if (doc.contains("analyses")) {
    for (auto const& a : field(doc, "analyses")) {
      inst.analyses.push_back(a.get<std::string>());
    }
  }

  if (doc.contains("module")) {
    json const& rj = field(doc, "ring");
    FiniteRing  R;
    R.size = int_field(rj, "size");
    R.add  = square_table(field(rj, "add"), R.size, R.size, "ring.add");
    R.mul  = square_table(field(rj, "mul"), R.size, R.size, "ring.mul");
    R.zero = int_field(rj, "zero");
    R.one  = int_field(rj, "one");
    try {
      R.validate();
    } catch (std::invalid_argument const& e) {
      fail(e.what());
    }
    json const& mj   = field(doc, "module");
    int         size = int_field(mj, "size");
    if (!force && size > 16) {
      fail("universe size " + std::to_string(size)
           + " exceeds the guardrail of 16 (use --force to override)");
    }
    std::vector<int> add = square_table(field(mj, "add"), size, size, "module.add");
    std::vector<int> act =
        square_table(field(mj, "action"), R.size, size, "module.action");
    std::vector<ExtraOp> extras;
    if (doc.contains("extras")) {
      for (auto const& [name, entry] : doc["extras"].items()) {
        int arity = int_field(entry, "arity");
        if (!force && arity > 4) {
          fail("arity of \"" + name + "\" exceeds the guardrail of 4");
        }
        std::vector<int> t;
        flatten_table(field(entry, "table"), arity, size, name, t);
        extras.push_back(ExtraOp{name, arity, std::move(t)});
      }
    }
    ExpandedModule M;
    try {
      M = ExpandedModule::make(std::move(R), size, std::move(add), std::move(act),
                               std::move(extras));
      inst.mod = module_extension(std::move(M), int_list(field(doc, "ideal"), "ideal"));
    } catch (std::invalid_argument const& e) {
      fail(e.what());
    }
    // the derived algebra-form extension for the datum-track analyses
    inst.ext = Extension::make(inst.mod->M.algebra, inst.mod->alpha);
    // x - y + z from the module structure
    auto const& Mm = inst.mod->M;
    inst.m_table.resize(pow_size(Mm.size, 3));
    for (int x = 0; x < Mm.size; ++x) {
      for (int y = 0; y < Mm.size; ++y) {
        for (int z = 0; z < Mm.size; ++z) {
          inst.m_table[(static_cast<size_t>(x) * Mm.size + y) * Mm.size + z] =
              Mm.plus(Mm.minus(x, y), z);
        }
      }
    }
  } else if (doc.contains("algebra")) {
    FiniteAlgebra A = load_algebra(field(doc, "algebra"));
    if (!force && A.size() > 16) {
      fail("universe size " + std::to_string(A.size())
           + " exceeds the guardrail of 16 (use --force to override)");
    }
    if (!force && A.signature().max_arity() > 4) {
      fail("arity " + std::to_string(A.signature().max_arity())
           + " exceeds the guardrail of 4");
    }
    json const& cj = field(doc, "congruence");
    Congruence  alpha;
    try {
      if (cj.contains("pairs")) {
        std::vector<std::pair<int, int>> pairs;
        for (auto const& p : cj["pairs"]) {
          auto v = int_list(p, "congruence.pairs");
          if (v.size() != 2) {
            fail("congruence pairs must have two entries");
          }
          pairs.emplace_back(v[0], v[1]);
        }
        alpha = generate_congruence(A, pairs);
      } else if (cj.contains("blocks")) {
        std::vector<std::vector<int>> blocks;
        for (auto const& b : cj["blocks"]) {
          blocks.push_back(int_list(b, "congruence.blocks"));
        }
        alpha = Congruence::from_blocks(A.size(), blocks);
        if (!is_compatible(A, alpha)) {
          fail("the given blocks are not a congruence of the algebra");
        }
      } else {
        fail("congruence needs \"pairs\" or \"blocks\"");
      }
      inst.ext = Extension::make(std::move(A), std::move(alpha));
    } catch (std::invalid_argument const& e) {
      fail(e.what());
    }
  } else {
    fail("instance needs an \"algebra\" or a \"module\" section");
  }

  Signature const& sig = inst.ext->A.signature();
  inst.identities      = load_identities(doc, sig);

  if (doc.contains("lifting")) {
    inst.lifting = int_list(doc["lifting"], "lifting");
    if (!is_lifting(*inst.ext, inst.lifting)) {
      fail("lifting is not a section of the canonical surjection");
    }
  } else {
    inst.lifting = canonical_lifting(*inst.ext);
    if (inst.mod) {
      inst.lifting[inst.mod->pi[inst.mod->M.zero]] = inst.mod->M.zero;
    }
  }
  if (inst.mod && inst.lifting[inst.mod->pi[inst.mod->M.zero]] != inst.mod->M.zero) {
    fail("module instances need a lifting with l(0) = 0");
  }

  if (doc.contains("m_table")) {
    std::vector<int> t;
    flatten_table(doc["m_table"], 3, inst.ext->A.size(), "m_table", t);
    inst.m_table = std::move(t);
  } else if (doc.contains("m_term")) {
    try {
      Term             mt = Term::parse(doc["m_term"].get<std::string>(), sig);
      int              n  = inst.ext->A.size();
      std::vector<int> t(pow_size(n, 3));
      std::vector<int> env(3, 0);
      size_t           rank = 0;
      do {
        t[rank++] = eval_term(inst.ext->A, mt, env);
      } while (next_tuple(env, n));
      inst.m_table = std::move(t);
    } catch (std::invalid_argument const& e) {
      fail(e.what());
    }
  } else if (inst.m_table.empty()) {
    auto found = find_difference_term(*inst.ext);
    if (!found) {
      fail("no difference operation given and none found up to the term depth bound");
    }
    inst.m_table   = std::move(*found);
    inst.m_searched = true;
  }
  return inst;
}

ordered_json algebra_to_json(FiniteAlgebra const& A) {
  ordered_json sig = ordered_json::array();
  for (auto const& s : A.signature().symbols()) {
    sig.push_back({{"name", s.name}, {"arity", s.arity}});
  }
  ordered_json tables;
  for (size_t s = 0; s < A.signature().size(); ++s) {
    int  k = A.signature()[s].arity;
    auto emit = [&](auto&& self, int depth, size_t base, size_t stride) -> ordered_json {
      if (depth == 0) {
        return A.table(s)[base];
      }
      ordered_json arr = ordered_json::array();
      size_t       sub = stride / A.size();
      for (int i = 0; i < A.size(); ++i) {
        arr.push_back(self(self, depth - 1, base + i * sub, sub));
      }
      return arr;
    };
    tables[A.signature()[s].name] = emit(emit, k, 0, pow_size(A.size(), k));
  }
  return ordered_json{{"signature", sig}, {"size", A.size()}, {"tables", tables}};
}

ordered_json cocycle_to_json(AffineDatum const& D, TwoCocycle const& T) {
  ordered_json out;
  for (size_t sym = 0; sym < T.comp.size(); ++sym) {
    int          k     = D.Q.signature()[sym].arity;
    ordered_json entry = ordered_json::array();
    std::vector<int> qtup(k, 0);
    size_t           rank = 0;
    do {
      auto [a, b] = D.rep[T.comp[sym][rank++]];
      entry.push_back(ordered_json::array({qtup, ordered_json::array({a, b})}));
    } while (next_tuple(qtup, D.Q.size()));
    out[D.Q.signature()[sym].name] = entry;
  }
  return out;
}

ordered_json datum_to_json(AffineDatum const& D) {
  ordered_json reps = ordered_json::array();
  for (auto const& [a, b] : D.rep) {
    reps.push_back(ordered_json::array({a, b}));
  }
  return ordered_json{{"quotient", algebra_to_json(D.Q)},
                      {"fiber_algebra", algebra_to_json(D.S)},
                      {"rho", D.rho},
                      {"delta", D.delta},
                      {"class_representatives", reps},
                      {"lifting", D.lifting},
                      {"fiber_zeros", D.fiber_zero}};
}

std::string fnv1a_hex(std::string const& data) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace affina
