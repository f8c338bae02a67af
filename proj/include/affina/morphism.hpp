#ifndef AFFINA_MORPHISM_HPP_
#define AFFINA_MORPHISM_HPP_

#include <optional>
#include <span>
#include <vector>

#include "affina/algebra.hpp"
#include "affina/congruence.hpp"

namespace affina {

using Mapping = std::vector<int>;

// Whether map (a vector indexed by A's universe) commutes with every
// operation table.
bool is_homomorphism(FiniteAlgebra const& A, FiniteAlgebra const& B, Mapping const& map);

// All isomorphisms A -> B in lexicographic order of their map arrays, found
// by backtracking over partial maps pruned by table consistency.
std::vector<Mapping> find_isomorphisms(FiniteAlgebra const& A, FiniteAlgebra const& B);
std::optional<Mapping> find_isomorphism(FiniteAlgebra const& A, FiniteAlgebra const& B);

// The full automorphism group, in lexicographic order of map arrays.
std::vector<Mapping> find_automorphisms(FiniteAlgebra const& A);

// Permutation helpers.
Mapping identity_map(int n);
Mapping compose_maps(Mapping const& f, Mapping const& g);  // (f o g)(x) = f(g(x))
Mapping invert_perm(Mapping const& f);
bool    is_perm_group(std::vector<Mapping> const& perms);
int     find_map_index(std::vector<Mapping> const& list, Mapping const& m);

// Image of a congruence under a bijection: {(f(a), f(b)) : (a, b) in theta}.
Congruence map_congruence(Mapping const& f, Congruence const& theta);

}  // namespace affina

#endif  // AFFINA_MORPHISM_HPP_
