#ifndef AFFINA_WELLS_HPP_
#define AFFINA_WELLS_HPP_

#include <string>
#include <vector>

#include "affina/cohomology.hpp"

namespace affina {

using AutList = std::vector<Mapping>;

// Aut_alpha A: the automorphisms of A mapping alpha into itself.
AutList aut_alpha(Extension const& E);

// A compatible pair: an automorphism of the semidirect algebra on the fibers
// together with an automorphism of Q, compatible with the datum's structure
// maps (see pair_compatible).
struct CompatiblePair {
  Mapping sigma;
  Mapping kappa;

  bool operator==(CompatiblePair const& other) const = default;
  bool operator<(CompatiblePair const& other) const {
    return std::pair(sigma, kappa) < std::pair(other.sigma, other.kappa);
  }
};

CompatiblePair pair_identity(AffineDatum const& D);
CompatiblePair pair_compose(CompatiblePair const& p, CompatiblePair const& q);
CompatiblePair pair_inverse(CompatiblePair const& p);

// sigma intertwines every action slot with kappa on the Q entries, covers
// kappa through rho, and permutes the diagonal classes.
bool pair_compatible(AffineDatum const& D, Mapping const& sigma, Mapping const& kappa);

// All compatible pairs, ordered lexicographically.
std::vector<CompatiblePair> compatible_pairs(AffineDatum const& D);

// psi(phi) = (phi-hat, phi_l): the pair induced on the datum by an
// alpha-preserving automorphism. Throws if the result is not compatible.
CompatiblePair psi(Extension const& E, AffineDatum const& D, Mapping const& phi);

// T^(sigma,kappa): f-component q |-> sigma(T_f(kappa^{-1}(q))).
TwoCocycle act(AffineDatum const& D, TwoCocycle const& T, CompatiblePair const& p);

// W_T(p) = [T - T^p] as a class index of H. Throws if the difference falls
// outside the enumerated classes.
int wells_value(AffineDatum const& D, CohomologyGroup const& H, TwoCocycle const& T,
                CompatiblePair const& p);

// ker W_T as indices into C, and ker W as class indices of H.
std::vector<int> ker_wells_t(AffineDatum const& D, CohomologyGroup const& H,
                             TwoCocycle const& T, std::vector<CompatiblePair> const& C);
std::vector<int> ker_w(AffineDatum const& D, CohomologyGroup const& H,
                       std::vector<CompatiblePair> const& C);

// Stab(pi: A -> Q): automorphisms with pi o phi = pi and
// phi(a) = m(phi(r(a)), r(a), a) for every alpha-trace r.
AutList stabilizers(Extension const& E, std::vector<int> const& m_table);

// The derivation map of a stabilizer: d(q) = gamma(phi(l(q))), valued in the
// fiber over q. Stabilizers correspond bijectively to their derivation maps.
Mapping derivation_map(Extension const& E, AffineDatum const& D, Mapping const& phi);

struct Clause {
  std::string name;
  bool        pass;
  std::string detail;
};

struct Report {
  std::string                              analysis;
  bool                                     ok         = true;
  bool                                     applicable = true;
  std::vector<std::pair<std::string, int>> sizes;
  std::vector<Clause>                      clauses;

  void add(std::string name, bool pass, std::string detail = "");
};

// Exactness of 1 -> Der -> Aut_alpha A -> C -> H^2 at both junctions,
// with every piece brute-forced: Stab = ker psi and im psi = ker W_T.
Report check_wells_exactness(Extension const& E, Mapping const& l,
                            std::vector<int> const& m_table, std::span<Identity const> U);

// The decomposition Aut_alpha-hat A_T = Der x| ker W_T via the explicit
// section built from coboundary witnesses, with the factor set Pi checked
// well-defined at class level and additive on ker W.
Report decompose_automorphisms(Extension const& E, Mapping const& l, std::vector<int> const& m_table,
                      std::span<Identity const> U);

// The central-extension simplification: C = Aut0(A(alpha)/Delta_a1) x Aut Q
// and the product decomposition of the fiber algebra.
Report central_simplification(Extension const& E, Mapping const& l,
                              std::vector<int> const& m_table);

}  // namespace affina

#endif  // AFFINA_WELLS_HPP_
