#include <filesystem>
#include <fstream>

#include "affina/analyses.hpp"

namespace affina {

namespace {

ordered_json square(int n, auto&& f) {
  ordered_json rows = ordered_json::array();
  for (int a = 0; a < n; ++a) {
    ordered_json row = ordered_json::array();
    for (int b = 0; b < n; ++b) {
      row.push_back(f(a, b));
    }
    rows.push_back(row);
  }
  return rows;
}

ordered_json unary(int n, auto&& f) {
  ordered_json row = ordered_json::array();
  for (int a = 0; a < n; ++a) {
    row.push_back(f(a));
  }
  return row;
}

ordered_json group_signature() {
  return ordered_json::array({{{"name", "+"}, {"arity", 2}},
                              {{"name", "-"}, {"arity", 1}},
                              {{"name", "0"}, {"arity", 0}}});
}

ordered_json group_identities() {
  return ordered_json::array({{"+(+(x0,x1),x2)", "+(x0,+(x1,x2))"},
                              {"+(x0,0)", "x0"},
                              {"+(0,x0)", "x0"},
                              {"+(x0,-(x0))", "0"},
                              {"+(-(x0),x0)", "0"}});
}

ordered_json abelian_identities() {
  ordered_json ids = group_identities();
  ids.push_back({"+(x0,x1)", "+(x1,x0)"});
  return ids;
}

// module identities over {+, 0, s0..s(p-1)} for a prime field F_p
ordered_json module_identities(int p) {
  auto s = [](int r) { return "s" + std::to_string(r); };
  ordered_json ids = ordered_json::array();
  ids.push_back({"+(+(x0,x1),x2)", "+(x0,+(x1,x2))"});
  ids.push_back({"+(x0,x1)", "+(x1,x0)"});
  ids.push_back({"+(x0,0)", "x0"});
  ids.push_back({"+(x0," + s(p - 1) + "(x0))", "0"});
  ids.push_back({s(1) + "(x0)", "x0"});
  ids.push_back({s(0) + "(x0)", "0"});
  for (int r = 0; r < p; ++r) {
    ids.push_back({s(r) + "(+(x0,x1))", "+(" + s(r) + "(x0)," + s(r) + "(x1))"});
    for (int u = 0; u < p; ++u) {
      ids.push_back({s(r) + "(" + s(u) + "(x0))", s((r * u) % p) + "(x0)"});
      ids.push_back({"+(" + s(r) + "(x0)," + s(u) + "(x0))", s((r + u) % p) + "(x0)"});
    }
  }
  return ids;
}

ordered_json prime_ring(int p) {
  return ordered_json{{"size", p},
                      {"add", square(p, [&](int a, int b) { return (a + b) % p; })},
                      {"mul", square(p, [&](int a, int b) { return (a * b) % p; })},
                      {"zero", 0},
                      {"one", 1}};
}

// F_p^2 with coordinates (i, q) indexed i*p + q; the ideal is the first
// coordinate line {(i, 0)}.
ordered_json vector_module(int p) {
  int  n   = p * p;
  auto add = square(n, [&](int v, int w) {
    return ((v / p + w / p) % p) * p + (v % p + w % p) % p;
  });
  ordered_json act = ordered_json::array();
  for (int r = 0; r < p; ++r) {
    ordered_json row = ordered_json::array();
    for (int v = 0; v < n; ++v) {
      row.push_back(((r * (v / p)) % p) * p + (r * (v % p)) % p);
    }
    act.push_back(row);
  }
  ordered_json ideal = ordered_json::array();
  for (int i = 0; i < p; ++i) {
    ideal.push_back(i * p);
  }
  ordered_json lifting = ordered_json::array();
  for (int q = 0; q < p; ++q) {
    lifting.push_back(q);
  }
  return ordered_json{{"ring", prime_ring(p)},
                      {"module", {{"size", n}, {"add", add}, {"action", act}}},
                      {"ideal", ideal},
                      {"lifting", lifting},
                      {"identities", module_identities(p)}};
}

ordered_json z4_instance() {
  int  n = 4;
  auto A = ordered_json{
      {"signature", group_signature()},
      {"size", n},
      {"tables",
       {{"+", square(n, [&](int a, int b) { return (a + b) % n; })},
        {"-", unary(n, [&](int a) { return (n - a) % n; })},
        {"0", 0}}}};
  return ordered_json{{"id", "z4-to-z2"},
                      {"algebra", A},
                      {"congruence", {{"pairs", ordered_json::array({{0, 2}})}}},
                      {"lifting", {0, 1}},
                      {"m_term", "+(x0,+(-(x1),x2))"},
                      {"identities", abelian_identities()},
                      {"analyses", {"datum", "cohomology", "wells", "decompose", "central"}}};
}

ordered_json v4_instance() {
  int  n = 4;
  auto A = ordered_json{
      {"signature", group_signature()},
      {"size", n},
      {"tables",
       {{"+", square(n, [&](int a, int b) { return a ^ b; })},
        {"-", unary(n, [&](int a) { return a; })},
        {"0", 0}}}};
  return ordered_json{{"id", "v4-to-z2"},
                      {"algebra", A},
                      {"congruence", {{"pairs", ordered_json::array({{0, 1}})}}},
                      {"lifting", {0, 2}},
                      {"m_term", "+(x0,+(-(x1),x2))"},
                      {"identities", abelian_identities()},
                      {"analyses", {"datum", "cohomology", "wells", "central"}}};
}

ordered_json f2sq_instance() {
  ordered_json doc = vector_module(2);
  doc["id"]        = "f2sq-first-factor";
  doc["analyses"]  = {"datum", "cohomology", "wells", "modexp"};
  return doc;
}

ordered_json f3sq_instance() {
  ordered_json doc = vector_module(3);
  doc["id"]        = "f3sq-first-factor";
  doc["analyses"]  = {"datum", "wells", "decompose", "central", "modexp"};
  return doc;
}

ordered_json dual_numbers_instance() {
  int  n   = 4;
  auto mul = square(n, [&](int i, int j) {
    int a = i & 1, b = i >> 1, c = j & 1, d = j >> 1;
    return (a & c) | (((a & d) ^ (b & c)) << 1);
  });
  ordered_json ids = module_identities(2);
  ids.push_back({"mul(mul(x0,x1),x2)", "mul(x0,mul(x1,x2))"});
  ids.push_back({"mul(x0,x1)", "mul(x1,x0)"});
  return ordered_json{
      {"id", "f2x-dual-numbers"},
      {"ring", prime_ring(2)},
      {"module",
       {{"size", n},
        {"add", square(n, [&](int a, int b) { return a ^ b; })},
        {"action", ordered_json::array({unary(n, [](int) { return 0; }),
                                        unary(n, [](int a) { return a; })})}}},
      {"extras", {{"mul", {{"arity", 2}, {"table", mul}}}}},
      {"ideal", {0, 2}},
      {"lifting", {0, 1}},
      {"identities", ids},
      {"analyses", {"datum", "cohomology", "wells", "modexp", "central"}}};
}

ordered_json s3_instance() {
  // permutations of {0,1,2} in lexicographic order; "+" is composition
  int                           perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                               {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  auto index_of = [&](int const p[3]) {
    for (int i = 0; i < 6; ++i) {
      if (perms[i][0] == p[0] && perms[i][1] == p[1] && perms[i][2] == p[2]) {
        return i;
      }
    }
    return -1;
  };
  auto mul = square(6, [&](int a, int b) {
    int ab[3];
    for (int x = 0; x < 3; ++x) {
      ab[x] = perms[a][perms[b][x]];
    }
    return index_of(ab);
  });
  auto inv = unary(6, [&](int a) {
    int ia[3];
    for (int x = 0; x < 3; ++x) {
      ia[perms[a][x]] = x;
    }
    return index_of(ia);
  });
  auto A = ordered_json{{"signature", group_signature()},
                        {"size", 6},
                        {"tables", {{"+", mul}, {"-", inv}, {"0", 0}}}};
  return ordered_json{{"id", "s3-noncentral"},
                      {"algebra", A},
                      {"congruence", {{"pairs", ordered_json::array({{0, 3}})}}},
                      {"m_term", "+(x0,+(-(x1),x2))"},
                      {"identities", group_identities()},
                      {"analyses", {"datum", "wells", "central"}}};
}

}  // namespace

std::vector<std::pair<std::string, ordered_json>> bundled_instances() {
  return {{"z4.json", z4_instance()},
          {"v4.json", v4_instance()},
          {"f2sq.json", f2sq_instance()},
          {"f3sq.json", f3sq_instance()},
          {"f2x-dual-numbers.json", dual_numbers_instance()},
          {"s3-noncentral.json", s3_instance()}};
}

std::vector<std::string> emit_examples(std::string const& dir, bool overwrite) {
  namespace fs = std::filesystem;
  fs::path target(dir);
  if (fs::exists(target) && !overwrite) {
    throw InputError("directory \"" + dir + "\" already exists (use --overwrite)");
  }
  fs::create_directories(target);
  std::vector<std::string> written;
  for (auto const& [name, doc] : bundled_instances()) {
    std::ofstream out(target / name);
    if (!out) {
      throw InputError("cannot write " + (target / name).string());
    }
    out << doc.dump(2) << "\n";
    written.push_back(name);
  }
  return written;
}

}  // namespace affina
