#include "affina/extension.hpp"

#include <stdexcept>

namespace affina {

Extension Extension::make(FiniteAlgebra A, Congruence alpha) {
  if (alpha.size() != A.size()) {
    throw std::invalid_argument("extension: congruence size mismatch");
  }
  if (!is_compatible(A, alpha)) {
    throw std::invalid_argument("extension: alpha is not a congruence of A");
  }
  auto [Q, pi] = quotient(A, alpha);
  return Extension{std::move(A), std::move(alpha), std::move(Q), std::move(pi)};
}

bool is_lifting(Extension const& E, Mapping const& l) {
  if (static_cast<int>(l.size()) != E.Q.size()) {
    return false;
  }
  for (int q = 0; q < E.Q.size(); ++q) {
    if (l[q] < 0 || l[q] >= E.A.size() || E.pi[l[q]] != q) {
      return false;
    }
  }
  return true;
}

Mapping canonical_lifting(Extension const& E) {
  Mapping l(E.Q.size(), -1);
  for (int a = 0; a < E.A.size(); ++a) {
    int q = E.pi[a];
    if (l[q] == -1) {
      l[q] = a;
    }
  }
  return l;
}

std::vector<Mapping> all_liftings(Extension const& E) {
  auto                 blocks = E.alpha.blocks();
  std::vector<Mapping> out;
  Mapping              cur(blocks.size());
  auto rec = [&](auto&& self, size_t q) -> void {
    if (q == blocks.size()) {
      out.push_back(cur);
      return;
    }
    for (int a : blocks[q]) {
      cur[q] = a;
      self(self, q + 1);
    }
  };
  rec(rec, 0);
  return out;
}

PairAlgebra build_pair_algebra(Extension const& E) {
  int n = E.A.size();
  std::vector<std::pair<int, int>> universe;
  std::vector<int>                 pair_index(static_cast<size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (E.alpha.related(a, b)) {
        pair_index[static_cast<size_t>(a) * n + b] = static_cast<int>(universe.size());
        universe.emplace_back(a, b);
      }
    }
  }
  int p = static_cast<int>(universe.size());
  std::vector<std::vector<int>> tables;
  for (size_t s = 0; s < E.A.signature().size(); ++s) {
    int              k = E.A.signature()[s].arity;
    std::vector<int> table(pow_size(p, k));
    std::vector<int> tup(k, 0), first(k), second(k);
    size_t           rank = 0;
    do {
      for (int i = 0; i < k; ++i) {
        first[i]  = universe[tup[i]].first;
        second[i] = universe[tup[i]].second;
      }
      int fa = E.A.apply(s, first);
      int fb = E.A.apply(s, second);
      // alpha is a congruence, so the value pair is again in alpha.
      table[rank++] = pair_index[static_cast<size_t>(fa) * n + fb];
    } while (next_tuple(tup, p));
    tables.push_back(std::move(table));
  }
  FiniteAlgebra P(E.A.signature(), p, std::move(tables));

  std::vector<std::pair<int, int>> diag_alpha, diag_all;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int ia = pair_index[static_cast<size_t>(a) * n + a];
      int ib = pair_index[static_cast<size_t>(b) * n + b];
      if (E.alpha.related(a, b)) {
        diag_alpha.emplace_back(ia, ib);
      }
      diag_all.emplace_back(ia, ib);
    }
  }
  Congruence delta_aa = generate_congruence(P, diag_alpha);
  Congruence delta_a1 = generate_congruence(P, diag_all);

  std::vector<int> key(p);
  for (int i = 0; i < p; ++i) {
    key[i] = E.alpha.block_id(universe[i].first);
  }
  Congruence alpha_hat = Congruence::from_key(key);

  return PairAlgebra{std::move(P),       std::move(universe), std::move(pair_index),
                     std::move(delta_aa), std::move(delta_a1), std::move(alpha_hat)};
}

}  // namespace affina
