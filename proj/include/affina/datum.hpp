#ifndef AFFINA_DATUM_HPP_
#define AFFINA_DATUM_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "affina/extension.hpp"

namespace affina {

// A 2-cocycle for affine datum: one map Q^{ar f} -> A(alpha)/Delta_aa per
// signature symbol, stored flat in row-major Q-tuple order.
struct TwoCocycle {
  std::vector<std::vector<int>> comp;

  bool operator==(TwoCocycle const& other) const = default;
  bool operator<(TwoCocycle const& other) const {
    return comp < other.comp;
  }
};

// Affine datum presented concretely: the quotient Q, the fiber algebra
// S = A(alpha)/Delta_aa with its projection rho and diagonal embedding delta,
// the difference operation m (on A and pushed to S), the action tables
// a(f,i), and the distinguished lifting. Fibers of rho carry abelian group
// structure x +_u y = m(x, u, y) with u the lifted base point.
struct AffineDatum {
  FiniteAlgebra Q;
  FiniteAlgebra S;  // quotient pair algebra
  int           asize = 0;

  std::vector<int>                 rho;    // S -> Q
  std::vector<int>                 delta;  // A -> S: class of (a, a)
  std::vector<std::pair<int, int>> rep;    // S -> least member pair
  std::vector<int>                 pair_class;  // a*|A|+b -> S index, or -1
  Mapping                          lifting;  // Q -> A
  Mapping                          gamma;    // A -> S: class of (l(pi(a)), a)
  std::vector<int>                 m_A;      // flat |A|^3
  std::vector<int>                 m_S;      // flat |S|^3

  // action[sym][i]: flat over (Q^{arity-1} tuple, S slot value) -> S.
  // Position i holds the fiber element; the remaining arguments are lifted
  // Q-entries. action[sym][0] with the diagonalised tail is f^Delta.
  std::vector<std::vector<std::vector<int>>> action;

  std::vector<std::vector<int>> fibers;      // per q, ascending S indices
  std::vector<int>              fiber_zero;  // per q: delta(l(q))
  std::vector<int>              fiber_neg;   // S -> inverse within its fiber

  int m_a(int x, int y, int z) const {
    return m_A[(static_cast<size_t>(x) * asize + y) * asize + z];
  }
  int class_of_pair(int a, int b) const {
    return pair_class[static_cast<size_t>(a) * asize + b];
  }
  int m_s(int x, int y, int z) const {
    size_t n = rho.size();
    return m_S[(static_cast<size_t>(x) * n + y) * n + z];
  }
  // x +_u y with u = lifting[q]; both arguments must lie in the fiber over q.
  int add_u(int x, int q, int y) const {
    return m_s(x, fiber_zero[q], y);
  }
  int sub_u(int x, int q, int y) const {
    return add_u(x, q, fiber_neg[y]);
  }
  int act(int sym, int pos, std::span<int const> qtuple, int x) const;

  bool same_shape(AffineDatum const& other) const;
};

// (i) m is Mal'cev on alpha-classes, (ii) Delta_aa-related pairs satisfy the
// difference identity d = m(b, a, c), (iii) every class of A(alpha)/Delta_aa
// is uniquely of the form [r(a); a] for every alpha-trace r.
bool check_affine(Extension const& E, std::vector<int> const& m_table);

// Splits the extension into its affine datum and the 2-cocycle of the
// lifting: T_f(q) = [l(f^Q(q)); f^A(l(q))] / Delta_aa.
std::pair<AffineDatum, TwoCocycle> deconstruct(Extension const&        E,
                                               Mapping const&          lifting,
                                               std::vector<int> const& m_table);

// The T-free reconstruction on the fiber algebra's universe.
FiniteAlgebra semidirect(AffineDatum const& D);

// Reconstruction with parameter T added fiberwise to each operation.
FiniteAlgebra reconstruct(AffineDatum const& D, TwoCocycle const& T);

bool       fiber_respecting(AffineDatum const& D, TwoCocycle const& T);
TwoCocycle zero_cocycle(AffineDatum const& D);
// The 2-cocycle defined by another lifting of the same extension, expressed
// in this datum.
TwoCocycle cocycle_of_lifting(AffineDatum const& D, Extension const& E, Mapping const& l2);

TwoCocycle cocycle_add(AffineDatum const& D, TwoCocycle const& S, TwoCocycle const& T);
TwoCocycle cocycle_sub(AffineDatum const& D, TwoCocycle const& S, TwoCocycle const& T);

// Deterministic search for a ternary term table making check_affine pass,
// over term operations of height <= max_depth.
std::optional<std::vector<int>> find_difference_term(Extension const& E, int max_depth = 3);

// The congruence on the reconstructed algebra whose blocks are the rho-fibers.
Congruence fiber_congruence(AffineDatum const& D);

}  // namespace affina

#endif  // AFFINA_DATUM_HPP_
