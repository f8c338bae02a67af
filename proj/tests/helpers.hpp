#ifndef AFFINA_TESTS_HELPERS_HPP_
#define AFFINA_TESTS_HELPERS_HPP_

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "affina/algebra.hpp"
#include "affina/congruence.hpp"
#include "affina/morphism.hpp"

namespace affina::testing {

// ---- instance builders ----------------------------------------------------

// Z_n in the group signature {+, -, 0}.
inline FiniteAlgebra cyclic_group(int n) {
  Signature sig({{"+", 2}, {"-", 1}, {"0", 0}});
  std::vector<int> plus(static_cast<size_t>(n) * n), minus(n), zero{0};
  for (int a = 0; a < n; ++a) {
    minus[a] = (n - a) % n;
    for (int b = 0; b < n; ++b) {
      plus[static_cast<size_t>(a) * n + b] = (a + b) % n;
    }
  }
  return FiniteAlgebra(sig, n, {plus, minus, zero});
}

inline FiniteAlgebra klein_four() {
  return direct_product(cyclic_group(2), cyclic_group(2));
}

// S_3 in the group signature {+, -, 0} ("+" is composition). Elements are
// the permutations of {0,1,2} in lexicographic order.
inline FiniteAlgebra symmetric_group_3() {
  std::vector<std::vector<int>> perms;
  std::vector<int>              p{0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&](std::vector<int> const& q) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  int n = 6;
  std::vector<int> mul(static_cast<size_t>(n) * n), inv(n), e{0};
  for (int a = 0; a < n; ++a) {
    std::vector<int> ia(3);
    for (int x = 0; x < 3; ++x) {
      ia[perms[a][x]] = x;
    }
    inv[a] = index_of(ia);
    for (int b = 0; b < n; ++b) {
      std::vector<int> ab(3);
      for (int x = 0; x < 3; ++x) {
        ab[x] = perms[a][perms[b][x]];
      }
      mul[static_cast<size_t>(a) * n + b] = index_of(ab);
    }
  }
  return FiniteAlgebra(Signature({{"+", 2}, {"-", 1}, {"0", 0}}), n, {mul, inv, e});
}

// D_4 in the group signature, elements r^i s^j indexed i + 4j.
inline FiniteAlgebra dihedral_8() {
  auto idx = [](int i, int j) { return ((i % 4) + 4) % 4 + 4 * (j & 1); };
  std::vector<int> mul(64), inv(8);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 2; ++j) {
      int a  = idx(i, j);
      inv[a] = j == 0 ? idx(-i, 0) : idx(i, 1);
      for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 2; ++l) {
          mul[a * 8 + idx(k, l)] = idx(i + (j ? -k : k), j ^ l);
        }
      }
    }
  }
  return FiniteAlgebra(Signature({{"+", 2}, {"-", 1}, {"0", 0}}), 8, {mul, inv, {0}});
}

// F_p^k as a module algebra in the signature {+, 0, s0, ..., s(p-1)}.
// Elements are tuples over F_p ranked row-major.
inline FiniteAlgebra vector_space(int p, int k) {
  std::vector<OpSymbol> syms{{"+", 2}, {"0", 0}};
  for (int r = 0; r < p; ++r) {
    syms.push_back({"s" + std::to_string(r), 1});
  }
  int n = static_cast<int>(pow_size(p, k));
  std::vector<std::vector<int>> tables;
  std::vector<int> plus(static_cast<size_t>(n) * n);
  std::vector<int> xa(k), xb(k), xc(k);
  for (int a = 0; a < n; ++a) {
    tuple_unrank(a, p, xa);
    for (int b = 0; b < n; ++b) {
      tuple_unrank(b, p, xb);
      for (int i = 0; i < k; ++i) {
        xc[i] = (xa[i] + xb[i]) % p;
      }
      plus[static_cast<size_t>(a) * n + b] = static_cast<int>(tuple_rank(xc, p));
    }
  }
  tables.push_back(std::move(plus));
  tables.push_back({0});
  for (int r = 0; r < p; ++r) {
    std::vector<int> sr(n);
    for (int a = 0; a < n; ++a) {
      tuple_unrank(a, p, xa);
      for (int i = 0; i < k; ++i) {
        xc[i] = (r * xa[i]) % p;
      }
      sr[a] = static_cast<int>(tuple_rank(xc, p));
    }
    tables.push_back(std::move(sr));
  }
  return FiniteAlgebra(Signature(syms), n, tables);
}

// x - y + z as a flat ternary table, for any algebra whose "+"/"-" symbols
// form a group.
inline std::vector<int> difference_table(FiniteAlgebra const& A) {
  int  plus  = A.signature().index_of("+");
  int  minus = A.signature().index_of("-");
  int  n     = A.size();
  auto neg   = [&](int y) {
    if (minus >= 0) {
      return A.apply(minus, {y});
    }
    // fall back to the additive inverse in the "+" group
    for (int z = 0; z < n; ++z) {
      bool ok = true;
      for (int w = 0; w < n; ++w) {
        if (A.apply(plus, {A.apply(plus, {w, y}), z}) != w) {
          ok = false;
          break;
        }
      }
      if (ok) {
        return z;
      }
    }
    return -1;
  };
  std::vector<int> table(pow_size(n, 3));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        table[(static_cast<size_t>(x) * n + y) * n + z]
            = A.apply(plus, {x, A.apply(plus, {neg(y), z})});
      }
    }
  }
  return table;
}

// Group identity list over {+, -, 0}; abelian adds commutativity.
inline std::vector<Identity> group_identities(Signature const& sig) {
  std::vector<Identity> ids;
  auto t = [&](char const* s) { return Term::parse(s, sig); };
  ids.push_back({t("+(+(x0,x1),x2)"), t("+(x0,+(x1,x2))")});
  ids.push_back({t("+(x0,0)"), t("x0")});
  ids.push_back({t("+(0,x0)"), t("x0")});
  ids.push_back({t("+(x0,-(x0))"), t("0")});
  ids.push_back({t("+(-(x0),x0)"), t("0")});
  return ids;
}

inline std::vector<Identity> abelian_group_identities(Signature const& sig) {
  auto ids = group_identities(sig);
  ids.push_back({Term::parse("+(x0,x1)", sig), Term::parse("+(x1,x0)", sig)});
  return ids;
}

// Module identity list over {+, 0, s0..s(p-1)} for the prime field F_p.
inline std::vector<Identity> module_identities(Signature const& sig, int p) {
  std::vector<Identity> ids;
  auto t = [&](std::string const& s) { return Term::parse(s, sig); };
  auto s = [&](int r) { return "s" + std::to_string(r); };
  ids.push_back({t("+(+(x0,x1),x2)"), t("+(x0,+(x1,x2))")});
  ids.push_back({t("+(x0,x1)"), t("+(x1,x0)")});
  ids.push_back({t("+(x0,0)"), t("x0")});
  ids.push_back({t("+(x0," + s(p - 1) + "(x0))"), t("0")});
  ids.push_back({t(s(1) + "(x0)"), t("x0")});
  ids.push_back({t(s(0) + "(x0)"), t("0")});
  for (int r = 0; r < p; ++r) {
    ids.push_back({t(s(r) + "(+(x0,x1))"), t("+(" + s(r) + "(x0)," + s(r) + "(x1))")});
    for (int u = 0; u < p; ++u) {
      ids.push_back({t(s(r) + "(" + s(u) + "(x0))"), t(s((r * u) % p) + "(x0)")});
      ids.push_back(
          {t("+(" + s(r) + "(x0)," + s(u) + "(x0))"), t(s((r + u) % p) + "(x0)")});
    }
  }
  return ids;
}

// ---- independent oracles ---------------------------------------------------

// All bijections {0..n-1} -> {0..n-1}, lexicographic.
inline std::vector<Mapping> all_permutations(int n) {
  Mapping               p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Mapping> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Brute-force automorphism oracle: filter every bijection.
inline std::vector<Mapping> oracle_automorphisms(FiniteAlgebra const& A) {
  std::vector<Mapping> out;
  for (auto const& p : all_permutations(A.size())) {
    if (is_homomorphism(A, A, p)) {
      out.push_back(p);
    }
  }
  return out;
}

inline bool oracle_isomorphic(FiniteAlgebra const& A, FiniteAlgebra const& B) {
  if (A.size() != B.size()) {
    return false;
  }
  for (auto const& p : all_permutations(A.size())) {
    if (is_homomorphism(A, B, p)) {
      return true;
    }
  }
  return false;
}

// All partitions of {0..n-1} via restricted growth strings.
inline std::vector<Congruence> all_partitions(int n) {
  std::vector<Congruence> out;
  std::vector<int>        rgs(n, 0);
  auto rec = [&](auto&& self, int i, int maxv) -> void {
    if (i == n) {
      out.push_back(Congruence::from_key(rgs));
      return;
    }
    for (int v = 0; v <= maxv + 1; ++v) {
      rgs[i] = v;
      self(self, i + 1, std::max(maxv, v));
    }
  };
  rec(rec, 1, 0);
  return out;
}

// Least congruence containing the pairs, as the meet of all compatible
// partitions containing them (exhaustive over all partitions).
inline Congruence oracle_generated_congruence(FiniteAlgebra const&                    A,
                                              std::vector<std::pair<int, int>> const& pairs) {
  int              n = A.size();
  std::vector<int> meet_key(n);
  std::iota(meet_key.begin(), meet_key.end(), 0);
  bool first = true;
  for (auto const& part : all_partitions(n)) {
    bool contains = std::all_of(pairs.begin(), pairs.end(), [&](auto const& pr) {
      return part.related(pr.first, pr.second);
    });
    if (!contains || !is_compatible(A, part)) {
      continue;
    }
    if (first) {
      for (int a = 0; a < n; ++a) {
        meet_key[a] = part.block_id(a);
      }
      first = false;
    } else {
      for (int a = 0; a < n; ++a) {
        meet_key[a] = meet_key[a] * n + part.block_id(a);
      }
      // re-normalise to keep keys small
      std::map<int, int> remap;
      for (int a = 0; a < n; ++a) {
        remap.emplace(meet_key[a], static_cast<int>(remap.size()));
      }
      for (int a = 0; a < n; ++a) {
        meet_key[a] = remap[meet_key[a]];
      }
    }
  }
  return Congruence::from_key(meet_key);
}

}  // namespace affina::testing

#endif  // AFFINA_TESTS_HELPERS_HPP_
