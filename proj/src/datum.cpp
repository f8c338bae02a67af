#include "affina/datum.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace affina {

namespace {

void require(bool cond, char const* what) {
  if (!cond) {
    throw std::logic_error(std::string("datum: ") + what);
  }
}

}  // namespace

int AffineDatum::act(int sym, int pos, std::span<int const> qtuple, int x) const {
  size_t qrank = tuple_rank(qtuple, Q.size());
  return action[sym][pos][qrank * rho.size() + x];
}

bool AffineDatum::same_shape(AffineDatum const& other) const {
  return Q == other.Q && S == other.S && rho == other.rho && lifting == other.lifting
         && m_S == other.m_S;
}

bool check_affine(Extension const& E, std::vector<int> const& m_table) {
  int n = E.A.size();
  if (m_table.size() != pow_size(n, 3)) {
    throw std::invalid_argument("check_affine: m table must be total on A^3");
  }
  for (int v : m_table) {
    if (v < 0 || v >= n) {
      throw std::invalid_argument("check_affine: m table entry out of range");
    }
  }
  auto m = [&](int x, int y, int z) {
    return m_table[(static_cast<size_t>(x) * n + y) * n + z];
  };
  // (i) Mal'cev on alpha-classes.
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (!E.alpha.related(x, y)) {
        continue;
      }
      if (m(x, x, y) != y || m(x, y, y) != x) {
        return false;
      }
    }
  }
  PairAlgebra P = build_pair_algebra(E);
  // (ii) Delta_aa-related pairs satisfy the difference identity.
  for (int i = 0; i < P.P.size(); ++i) {
    for (int j = 0; j < P.P.size(); ++j) {
      if (!P.delta_aa.related(i, j)) {
        continue;
      }
      auto [a, b] = P.universe[i];
      auto [c, d] = P.universe[j];
      if (d != m(b, a, c)) {
        return false;
      }
    }
  }
  // (iii) unique representation [r(a); a] for every alpha-trace r.
  auto block_index = P.delta_aa.block_index_map();
  int  classes     = P.delta_aa.num_blocks();
  if (classes != n) {
    return false;
  }
  for (auto const& l : all_liftings(E)) {
    std::vector<bool> hit(classes, false);
    for (int a = 0; a < n; ++a) {
      int idx = P.index_of(l[E.pi[a]], a, n);
      int cls = block_index[idx];
      if (hit[cls]) {
        return false;
      }
      hit[cls] = true;
    }
  }
  return true;
}

namespace {

struct DatumBuilder {
  Extension const&        E;
  Mapping const&          l;
  std::vector<int> const& m_table;

  AffineDatum build() const {
    int n = E.A.size();
    if (!is_lifting(E, l)) {
      throw std::invalid_argument("deconstruct: not a lifting of pi");
    }
    if (!check_affine(E, m_table)) {
      throw std::invalid_argument("deconstruct: affine check failed");
    }
    if (!m_alpha_compatible()) {
      throw std::invalid_argument("deconstruct: m is not compatible with alpha");
    }

    AffineDatum D;
    D.Q     = E.Q;
    D.asize = n;
    D.m_A   = m_table;

    PairAlgebra P          = build_pair_algebra(E);
    auto        quo        = quotient(P.P, P.delta_aa);
    auto const& class_of   = quo.projection;
    D.S                    = quo.algebra;
    int s_size             = D.S.size();

    D.rep.assign(s_size, {-1, -1});
    D.pair_class.assign(static_cast<size_t>(n) * n, -1);
    for (int i = 0; i < P.P.size(); ++i) {
      if (D.rep[class_of[i]].first == -1) {
        D.rep[class_of[i]] = P.universe[i];
      }
      auto [a, b] = P.universe[i];
      D.pair_class[static_cast<size_t>(a) * n + b] = class_of[i];
    }
    D.rho.assign(s_size, -1);
    for (int i = 0; i < P.P.size(); ++i) {
      int q = E.pi[P.universe[i].first];
      require(D.rho[class_of[i]] == -1 || D.rho[class_of[i]] == q,
              "rho is not constant on Delta_aa classes");
      D.rho[class_of[i]] = q;
    }
    D.delta.assign(n, -1);
    D.gamma.assign(n, -1);
    for (int a = 0; a < n; ++a) {
      D.delta[a] = class_of[P.index_of(a, a, n)];
      D.gamma[a] = class_of[P.index_of(l[E.pi[a]], a, n)];
    }
    D.lifting = l;

    D.fibers.assign(E.Q.size(), {});
    for (int x = 0; x < s_size; ++x) {
      D.fibers[D.rho[x]].push_back(x);
    }
    D.fiber_zero.assign(E.Q.size(), -1);
    for (int q = 0; q < E.Q.size(); ++q) {
      D.fiber_zero[q] = D.delta[l[q]];
    }
    // Each fiber contains exactly one diagonal class.
    for (int a = 0; a < n; ++a) {
      require(D.delta[a] == D.fiber_zero[E.pi[a]], "several diagonal classes in one fiber");
    }

    build_m_s(D, P, class_of);
    build_actions(D, P, class_of);
    build_fiber_groups(D);
    return D;
  }

  bool m_alpha_compatible() const {
    int  n = E.A.size();
    auto m = [&](int x, int y, int z) {
      return m_table[(static_cast<size_t>(x) * n + y) * n + z];
    };
    std::vector<int> tup(3, 0);
    do {
      int base = m(tup[0], tup[1], tup[2]);
      for (int i = 0; i < 3; ++i) {
        int orig = tup[i];
        for (int b = 0; b < n; ++b) {
          if (!E.alpha.related(orig, b)) {
            continue;
          }
          int t[3] = {tup[0], tup[1], tup[2]};
          t[i]     = b;
          if (!E.alpha.related(base, m(t[0], t[1], t[2]))) {
            return false;
          }
        }
      }
    } while (next_tuple(tup, n));
    return true;
  }

  // m acts coordinatewise on pairs; push to Delta_aa classes via least
  // representatives, then verify the push-down is representative independent.
  void build_m_s(AffineDatum& D, PairAlgebra const& P, std::vector<int> const& class_of) const {
    int    n = E.A.size();
    size_t s = D.rho.size();
    auto   m = [&](int x, int y, int z) {
      return m_table[(static_cast<size_t>(x) * n + y) * n + z];
    };
    auto m_pair_class = [&](std::pair<int, int> a, std::pair<int, int> b,
                            std::pair<int, int> c) {
      int first  = m(a.first, b.first, c.first);
      int second = m(a.second, b.second, c.second);
      int idx    = P.index_of(first, second, n);
      require(idx >= 0, "m applied to pairs left the pair algebra");
      return class_of[idx];
    };
    D.m_S.assign(s * s * s, -1);
    for (size_t x = 0; x < s; ++x) {
      for (size_t y = 0; y < s; ++y) {
        for (size_t z = 0; z < s; ++z) {
          D.m_S[(x * s + y) * s + z] = m_pair_class(D.rep[x], D.rep[y], D.rep[z]);
        }
      }
    }
    for (int i = 0; i < P.P.size(); ++i) {
      for (int j = 0; j < P.P.size(); ++j) {
        for (int k = 0; k < P.P.size(); ++k) {
          int via_reps = D.m_S[(static_cast<size_t>(class_of[i]) * s + class_of[j]) * s
                               + class_of[k]];
          require(m_pair_class(P.universe[i], P.universe[j], P.universe[k]) == via_reps,
                  "m does not push down to Delta_aa classes");
        }
      }
    }
  }

  void build_actions(AffineDatum& D, PairAlgebra const& P,
                     std::vector<int> const& class_of) const {
    int n = E.A.size();
    D.action.resize(E.A.signature().size());
    for (size_t sym = 0; sym < E.A.signature().size(); ++sym) {
      int k = E.A.signature()[sym].arity;
      D.action[sym].resize(k);
      for (int pos = 0; pos < k; ++pos) {
        size_t           qcount = pow_size(E.Q.size(), k - 1);
        std::vector<int> table(qcount * D.rho.size(), -1);
        std::vector<int> qtup(k - 1, 0);
        std::vector<int> first(k), second(k);
        size_t           qrank = 0;
        do {
          for (int ppos = 0; ppos < P.P.size(); ++ppos) {
            for (int i = 0, qi = 0; i < k; ++i) {
              if (i == pos) {
                first[i]  = P.universe[ppos].first;
                second[i] = P.universe[ppos].second;
              } else {
                first[i] = second[i] = l[qtup[qi++]];
              }
            }
            int fa  = E.A.apply(sym, first);
            int fb  = E.A.apply(sym, second);
            int idx = P.index_of(fa, fb, n);
            require(idx >= 0, "action evaluation left the pair algebra");
            int  value = class_of[idx];
            int& slot  = table[qrank * D.rho.size() + class_of[ppos]];
            if (slot == -1) {
              slot = value;
            } else {
              require(slot == value, "action map is not well-defined on classes");
            }
          }
          ++qrank;
        } while (next_tuple(qtup, E.Q.size()));
        D.action[sym][pos] = std::move(table);
      }
    }
  }

  void build_fiber_groups(AffineDatum& D) const {
    D.fiber_neg.assign(D.rho.size(), -1);
    for (int q = 0; q < E.Q.size(); ++q) {
      auto const& fib  = D.fibers[q];
      int         zero = D.fiber_zero[q];
      for (int x : fib) {
        require(D.rho[D.add_u(x, q, zero)] == q && D.add_u(x, q, zero) == x,
                "fiber zero is not a right identity");
        require(D.add_u(zero, q, x) == x, "fiber zero is not a left identity");
        for (int y : fib) {
          int xy = D.add_u(x, q, y);
          require(D.rho[xy] == q, "fiber sum left its fiber");
          require(xy == D.add_u(y, q, x), "fiber sum is not commutative");
          if (xy == zero && D.fiber_neg[x] == -1) {
            D.fiber_neg[x] = y;
          }
          for (int z : fib) {
            require(D.add_u(xy, q, z) == D.add_u(x, q, D.add_u(y, q, z)),
                    "fiber sum is not associative");
          }
        }
        require(D.fiber_neg[x] != -1, "fiber element has no inverse");
      }
    }
  }
};

}  // namespace

std::pair<AffineDatum, TwoCocycle> deconstruct(Extension const&        E,
                                               Mapping const&          lifting,
                                               std::vector<int> const& m_table) {
  AffineDatum D = DatumBuilder{E, lifting, m_table}.build();
  TwoCocycle  T = cocycle_of_lifting(D, E, lifting);
  return {std::move(D), std::move(T)};
}

TwoCocycle cocycle_of_lifting(AffineDatum const& D, Extension const& E, Mapping const& l2) {
  if (!is_lifting(E, l2)) {
    throw std::invalid_argument("cocycle_of_lifting: not a lifting of pi");
  }
  int n = E.A.size();
  if (D.asize != n || !(D.Q == E.Q)) {
    throw std::invalid_argument("cocycle_of_lifting: datum does not belong to the extension");
  }
  // Reuse the pair algebra to locate classes of (l2(f^Q(q)), f^A(l2(q))).
  PairAlgebra P        = build_pair_algebra(E);
  auto        quo      = quotient(P.P, P.delta_aa);
  auto const& class_of = quo.projection;
  for (int a = 0; a < n; ++a) {
    if (D.delta[a] != class_of[P.index_of(a, a, n)]) {
      throw std::invalid_argument("cocycle_of_lifting: datum class indexing mismatch");
    }
  }
  TwoCocycle  T;
  T.comp.resize(E.A.signature().size());
  for (size_t sym = 0; sym < E.A.signature().size(); ++sym) {
    int              k = E.A.signature()[sym].arity;
    std::vector<int> qtup(k, 0), lifted(k);
    std::vector<int> table(pow_size(E.Q.size(), k));
    size_t           rank = 0;
    do {
      for (int i = 0; i < k; ++i) {
        lifted[i] = l2[qtup[i]];
      }
      int fq  = E.Q.apply(sym, qtup);
      int fa  = E.A.apply(sym, lifted);
      int idx = P.index_of(l2[fq], fa, n);
      if (idx < 0) {
        throw std::logic_error("cocycle_of_lifting: value pair not alpha-related");
      }
      table[rank++] = class_of[idx];
    } while (next_tuple(qtup, E.Q.size()));
    T.comp[sym] = std::move(table);
  }
  return T;
}

bool fiber_respecting(AffineDatum const& D, TwoCocycle const& T) {
  if (T.comp.size() != D.Q.signature().size()) {
    return false;
  }
  for (size_t sym = 0; sym < T.comp.size(); ++sym) {
    int k = D.Q.signature()[sym].arity;
    if (T.comp[sym].size() != pow_size(D.Q.size(), k)) {
      return false;
    }
    std::vector<int> qtup(k, 0);
    size_t           rank = 0;
    do {
      int v = T.comp[sym][rank++];
      if (v < 0 || v >= static_cast<int>(D.rho.size())
          || D.rho[v] != D.Q.apply(sym, qtup)) {
        return false;
      }
    } while (next_tuple(qtup, D.Q.size()));
  }
  return true;
}

TwoCocycle zero_cocycle(AffineDatum const& D) {
  TwoCocycle T;
  T.comp.resize(D.Q.signature().size());
  for (size_t sym = 0; sym < T.comp.size(); ++sym) {
    int              k = D.Q.signature()[sym].arity;
    std::vector<int> qtup(k, 0);
    std::vector<int> table(pow_size(D.Q.size(), k));
    size_t           rank = 0;
    do {
      table[rank++] = D.fiber_zero[D.Q.apply(sym, qtup)];
    } while (next_tuple(qtup, D.Q.size()));
    T.comp[sym] = std::move(table);
  }
  return T;
}

namespace {

// Shared core of semidirect and reconstruct: the T-free part of F_f, i.e.
// f^Delta on the first slot followed by the left-folded +_u sum of the
// action terms for the remaining slots.
int semidirect_value(AffineDatum const& D, int sym, std::span<int const> args) {
  int              k = static_cast<int>(args.size());
  std::vector<int> qargs(k);
  for (int i = 0; i < k; ++i) {
    qargs[i] = D.rho[args[i]];
  }
  if (k == 0) {
    return D.S.apply(sym, {});
  }
  int              u_q = D.Q.apply(sym, qargs);
  std::vector<int> rest(k - 1);
  auto fill_rest = [&](int pos) {
    for (int i = 0, r = 0; i < k; ++i) {
      if (i != pos) {
        rest[r++] = qargs[i];
      }
    }
  };
  fill_rest(0);
  int acc = D.act(sym, 0, rest, args[0]);
  for (int pos = 1; pos < k; ++pos) {
    fill_rest(pos);
    acc = D.add_u(acc, u_q, D.act(sym, pos, rest, args[pos]));
  }
  return acc;
}

FiniteAlgebra build_on_fibers(AffineDatum const& D, TwoCocycle const* T) {
  int s_size = static_cast<int>(D.rho.size());
  std::vector<std::vector<int>> tables;
  for (size_t sym = 0; sym < D.Q.signature().size(); ++sym) {
    int              k = D.Q.signature()[sym].arity;
    std::vector<int> table(pow_size(s_size, k));
    std::vector<int> tup(k, 0), qargs(k);
    size_t           rank = 0;
    do {
      int value = semidirect_value(D, static_cast<int>(sym), tup);
      if (T != nullptr) {
        for (int i = 0; i < k; ++i) {
          qargs[i] = D.rho[tup[i]];
        }
        int u_q = D.Q.apply(sym, qargs);
        value   = D.add_u(value, u_q, T->comp[sym][tuple_rank(qargs, D.Q.size())]);
      }
      table[rank++] = value;
    } while (next_tuple(tup, s_size));
    tables.push_back(std::move(table));
  }
  return FiniteAlgebra(D.Q.signature(), s_size, std::move(tables));
}

}  // namespace

FiniteAlgebra semidirect(AffineDatum const& D) {
  return build_on_fibers(D, nullptr);
}

FiniteAlgebra reconstruct(AffineDatum const& D, TwoCocycle const& T) {
  if (!fiber_respecting(D, T)) {
    throw std::invalid_argument("reconstruct: cocycle violates the fiber condition");
  }
  return build_on_fibers(D, &T);
}

TwoCocycle cocycle_add(AffineDatum const& D, TwoCocycle const& S, TwoCocycle const& T) {
  TwoCocycle out;
  out.comp.resize(S.comp.size());
  for (size_t sym = 0; sym < S.comp.size(); ++sym) {
    int              k = D.Q.signature()[sym].arity;
    std::vector<int> qtup(k, 0);
    out.comp[sym].resize(S.comp[sym].size());
    size_t rank = 0;
    do {
      int q                 = D.Q.apply(sym, qtup);
      out.comp[sym][rank]   = D.add_u(S.comp[sym][rank], q, T.comp[sym][rank]);
      ++rank;
    } while (next_tuple(qtup, D.Q.size()));
  }
  return out;
}

TwoCocycle cocycle_sub(AffineDatum const& D, TwoCocycle const& S, TwoCocycle const& T) {
  TwoCocycle out;
  out.comp.resize(S.comp.size());
  for (size_t sym = 0; sym < S.comp.size(); ++sym) {
    int              k = D.Q.signature()[sym].arity;
    std::vector<int> qtup(k, 0);
    out.comp[sym].resize(S.comp[sym].size());
    size_t rank = 0;
    do {
      int q                 = D.Q.apply(sym, qtup);
      out.comp[sym][rank]   = D.sub_u(S.comp[sym][rank], q, T.comp[sym][rank]);
      ++rank;
    } while (next_tuple(qtup, D.Q.size()));
  }
  return out;
}

Congruence fiber_congruence(AffineDatum const& D) {
  return Congruence::from_key(D.rho);
}

std::optional<std::vector<int>> find_difference_term(Extension const& E, int max_depth) {
  int    n     = E.A.size();
  size_t tsize = pow_size(n, 3);

  auto passes = [&](std::vector<int> const& cand) {
    // Cheap Mal'cev prefilter before the full affine check.
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (!E.alpha.related(x, y)) {
          continue;
        }
        if (cand[(static_cast<size_t>(x) * n + x) * n + y] != y
            || cand[(static_cast<size_t>(x) * n + y) * n + y] != x) {
          return false;
        }
      }
    }
    if (!check_affine(E, cand)) {
      return false;
    }
    try {
      (void) deconstruct(E, canonical_lifting(E), cand);
    } catch (std::exception const&) {
      return false;
    }
    return true;
  };

  std::vector<std::vector<int>> tables;  // generation order
  std::set<std::vector<int>>    seen;
  auto push = [&](std::vector<int> t) -> std::vector<int> const* {
    if (seen.insert(t).second) {
      tables.push_back(std::move(t));
      return &tables.back();
    }
    return nullptr;
  };
  // Height 0: the three projections.
  for (int v = 0; v < 3; ++v) {
    std::vector<int> proj(tsize);
    std::vector<int> tup(3, 0);
    size_t           rank = 0;
    do {
      proj[rank++] = tup[v];
    } while (next_tuple(tup, n));
    if (passes(proj)) {
      return proj;
    }
    push(std::move(proj));
  }
  size_t const table_cap = 20000;
  size_t       level_lo  = 0;
  for (int depth = 1; depth <= max_depth; ++depth) {
    size_t level_hi = tables.size();
    for (size_t sym = 0; sym < E.A.signature().size(); ++sym) {
      int                 k = E.A.signature()[sym].arity;
      std::vector<size_t> choice(k, 0);
      auto advance = [&]() {
        for (size_t i = choice.size(); i-- > 0;) {
          if (++choice[i] < level_hi) {
            return true;
          }
          choice[i] = 0;
        }
        return false;
      };
      do {
        // At least one argument from the newest level keeps heights exact.
        bool fresh = (k == 0 && depth == 1);
        for (int i = 0; i < k; ++i) {
          if (choice[i] >= level_lo) {
            fresh = true;
          }
        }
        if (!fresh) {
          continue;
        }
        std::vector<int> cand(tsize);
        std::vector<int> args(k);
        for (size_t r = 0; r < tsize; ++r) {
          for (int i = 0; i < k; ++i) {
            args[i] = tables[choice[i]][r];
          }
          cand[r] = E.A.apply(sym, args);
        }
        if (passes(cand)) {
          return cand;
        }
        push(std::move(cand));
        if (tables.size() > table_cap) {
          throw std::runtime_error("find_difference_term: search budget exceeded");
        }
      } while (k > 0 && advance());
    }
    level_lo = level_hi;
  }
  return std::nullopt;
}

}  // namespace affina
