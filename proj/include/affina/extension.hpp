#ifndef AFFINA_EXTENSION_HPP_
#define AFFINA_EXTENSION_HPP_

#include <utility>
#include <vector>

#include "affina/algebra.hpp"
#include "affina/congruence.hpp"
#include "affina/morphism.hpp"

namespace affina {

// A surjection pi: A -> Q with ker pi = alpha, presented by the algebra and
// the congruence; Q and pi are the canonical quotient data.
struct Extension {
  FiniteAlgebra A;
  Congruence    alpha;
  FiniteAlgebra Q;
  Mapping       pi;  // A -> Q block indices

  static Extension make(FiniteAlgebra A, Congruence alpha);
};

// Sections l of pi: pi(l(q)) = q for all q.
bool    is_lifting(Extension const& E, Mapping const& l);
Mapping canonical_lifting(Extension const& E);  // least member per block
std::vector<Mapping> all_liftings(Extension const& E);

// The pair algebra A(alpha): universe {(a, b) : (a, b) in alpha} with
// coordinatewise operations, together with the three distinguished
// congruences. Pairs are ordered lexicographically.
struct PairAlgebra {
  FiniteAlgebra                    P;
  std::vector<std::pair<int, int>> universe;
  std::vector<int>                 pair_index;  // a * |A| + b -> P index or -1
  Congruence                       delta_aa;    // generated by diagonal pairs over alpha
  Congruence                       delta_a1;    // generated by all diagonal pairs
  Congruence                       alpha_hat;   // both coordinates in one alpha-class

  int index_of(int a, int b, int asize) const {
    return pair_index[static_cast<size_t>(a) * asize + b];
  }
};

PairAlgebra build_pair_algebra(Extension const& E);

}  // namespace affina

#endif  // AFFINA_EXTENSION_HPP_
