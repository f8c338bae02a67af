#ifndef AFFINA_COHOMOLOGY_HPP_
#define AFFINA_COHOMOLOGY_HPP_

#include <optional>
#include <span>
#include <vector>

#include "affina/datum.hpp"

namespace affina {

// Coboundary witness h: Q -> fibers with rho o h = id, satisfying
//   S_f(q) -_u T_f(q) = f^S(h(q)) -_u h(f^Q(q)),   u = l(f^Q(q)).
// Returns the lexicographically least witness, if any.
std::optional<Mapping> equivalent(AffineDatum const& D, TwoCocycle const& S,
                                  TwoCocycle const& T);
// Up to max_count witnesses in lexicographic order.
std::vector<Mapping> equivalent_witnesses(AffineDatum const& D, TwoCocycle const& S,
                                          TwoCocycle const& T, size_t max_count);

// Whether a fiber-respecting h witnesses the coboundary relation for (S, T).
bool is_coboundary_witness(AffineDatum const& D, TwoCocycle const& S, TwoCocycle const& T,
                           Mapping const& h);

// All fiber-respecting cocycles T whose reconstruction satisfies every
// identity of U and realizes the datum, in lexicographic order. The search
// assigns one cocycle entry at a time and checks each ground identity
// instance as soon as the entries it touches are fixed.
std::vector<TwoCocycle> enumerate_cocycles(AffineDatum const&        D,
                                           std::span<Identity const> U,
                                           size_t                    node_budget = 1u << 24);

// The 2nd-cohomology group of the datum: coboundary classes of the
// enumerated cocycles with pointwise fiber addition on class representatives.
struct CohomologyGroup {
  std::vector<TwoCocycle>       cocycles;  // enumeration order (lexicographic)
  std::vector<std::vector<int>> classes;   // per class: member indices, ascending
  std::vector<int>              reps;      // per class: lex-least member index
  int                           zero_class = -1;
  std::vector<std::vector<int>> add_table;

  int order() const {
    return static_cast<int>(classes.size());
  }
  TwoCocycle const& rep_cocycle(int cls) const {
    return cocycles[reps[cls]];
  }
  int add(int c1, int c2) const {
    return add_table[c1][c2];
  }
  int neg(int cls) const;
};

CohomologyGroup cohomology_group(AffineDatum const& D, std::span<Identity const> U,
                                 size_t node_budget = 1u << 24);

// Index of T's coboundary class among the group's representatives, or -1.
int class_of_cocycle(AffineDatum const& D, CohomologyGroup const& H, TwoCocycle const& T);

}  // namespace affina

#endif  // AFFINA_COHOMOLOGY_HPP_
