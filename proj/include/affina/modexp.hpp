#ifndef AFFINA_MODEXP_HPP_
#define AFFINA_MODEXP_HPP_

#include <optional>
#include <string>
#include <vector>

#include "affina/wells.hpp"

namespace affina {

// A finite unital ring given by tables.
struct FiniteRing {
  int              size = 0;
  std::vector<int> add;  // size x size
  std::vector<int> mul;  // size x size
  int              zero = 0;
  int              one  = 1;
  std::vector<int> neg;  // filled by validate()

  int plus(int a, int b) const {
    return add[static_cast<size_t>(a) * size + b];
  }
  int times(int a, int b) const {
    return mul[static_cast<size_t>(a) * size + b];
  }
  void validate();

  bool operator==(FiniteRing const& other) const = default;
};

struct ExtraOp {
  std::string      name;
  int              arity;
  std::vector<int> table;

  bool operator==(ExtraOp const& other) const = default;
};

// An R-module expanded by multilinear operations, with its view as a
// FiniteAlgebra over the signature {+, 0, s0..s(|R|-1)} + extras.
struct ExpandedModule {
  FiniteRing           R;
  int                  size = 0;
  std::vector<int>     add;     // size x size
  std::vector<int>     action;  // |R| x size
  std::vector<ExtraOp> extras;

  int              zero = -1;
  std::vector<int> neg;
  FiniteAlgebra    algebra;

  static ExpandedModule make(FiniteRing R, int size, std::vector<int> add,
                             std::vector<int> action, std::vector<ExtraOp> extras,
                             bool validate = true);

  int plus(int a, int b) const {
    return add[static_cast<size_t>(a) * size + b];
  }
  int minus(int a, int b) const {
    return plus(a, neg[b]);
  }
  int scalar(int r, int m) const {
    return action[static_cast<size_t>(r) * size + m];
  }
  int extra(int f, std::span<int const> args) const {
    return extras[f].table[tuple_rank(args, size)];
  }
  // Module axioms plus multilinearity of every extra in every slot.
  void validate_module() const;
};

// An ideal: a submodule absorbing every extra operation.
struct Ideal {
  std::vector<int> elems;   // ascending module indices
  std::vector<int> to_idx;  // module index -> ideal index or -1
};

Ideal make_ideal(ExpandedModule const& M, std::vector<int> elems);

// The extension pi: M -> M/I with the kernel congruence of I, the quotient
// module and the ideal as a module in its own right.
struct ModuleExtension {
  ExpandedModule M;
  Ideal          I;
  Congruence     alpha;
  Mapping        pi;  // M -> Q indices
  ExpandedModule Qm;
  ExpandedModule Im;
};

ModuleExtension module_extension(ExpandedModule M, std::vector<int> ideal_elems);

bool is_module_lifting(ModuleExtension const& E, Mapping const& l);

// Nonabelian 2-cocycle bundle: T_+, T_r per ring element, T_f per extra, and
// mixed action components a(f,s) for every nonempty proper subset s of the
// argument positions (ordered by bitmask). All values are ideal indices.
struct NaCocycle {
  std::vector<int>                           t_plus;    // |Q|^2
  std::vector<std::vector<int>>              t_scalar;  // per r: |Q|
  std::vector<std::vector<int>>              t_extra;   // per extra: |Q|^ar
  std::vector<std::vector<std::vector<int>>> action;    // [f][s]: |Q|^ar * |I|^{|s|}

  bool operator==(NaCocycle const& other) const = default;
  bool operator<(NaCocycle const& other) const;
};

// Nonempty proper subsets of {0..n-1}, ordered by bitmask; each subset lists
// its positions ascending.
std::vector<std::vector<int>> proper_subsets(int n);

// The cocycle bundle of a lifting with l(0) = 0: the failure of l to be a
// homomorphism plus the pure mixed evaluations.
NaCocycle na_deconstruct(ModuleExtension const& E, Mapping const& l);

// The algebra I x|_T Q on pairs <a, x> indexed a*|Q| + x. No identity
// checking happens here; validate against V separately.
ExpandedModule na_semidirect(ModuleExtension const& E, NaCocycle const& T);

// The isomorphism M -> I x|_T Q, x |-> <x - l(pi(x)), pi(x)>, when T is the
// bundle deconstructed from l.
Mapping na_embedding(ModuleExtension const& E, Mapping const& l);

// Coboundary equivalence: a map h: Q -> I with h(0) = 0 satisfying the
// coboundary condition families, one per bundle component; equivalently
// <a,x> |-> <a - h(x), x> is an isomorphism I x|_S Q -> I x|_T Q.
// Returns the lexicographically least h.
std::optional<Mapping> na_equivalent(ModuleExtension const& E, NaCocycle const& S,
                                     NaCocycle const& T);
// The componentwise coboundary conditions for one candidate h.
bool na_conditions_hold(ModuleExtension const& E, NaCocycle const& S, NaCocycle const& T,
                        Mapping const& h);

// The twisted bundle T^(sigma,kappa) for sigma in Aut I, kappa in Aut Q.
NaCocycle na_act(ModuleExtension const& E, NaCocycle const& T, Mapping const& sigma,
                 Mapping const& kappa);

// An element of the free abelian group on cohomology class ids.
struct FAElement {
  std::vector<std::pair<int, int>> terms;  // (class id, coefficient), id ascending

  bool is_zero() const {
    return terms.empty();
  }
  bool operator==(FAElement const& other) const = default;
};

FAElement fa_generator(int cls);
FAElement fa_add(FAElement const& a, FAElement const& b);
FAElement fa_negate(FAElement const& a);

// Classes of the given bundles under na_equivalent, in input order of first
// representatives.
struct NaClassList {
  std::vector<NaCocycle> reps;
  int class_of(ModuleExtension const& E, NaCocycle const& T) const;
  int insert(ModuleExtension const& E, NaCocycle const& T);
};

// W_T(sigma, kappa) = gen([T]) - gen([T^(sigma,kappa)]) in FA(H^2).
FAElement na_wells(ModuleExtension const& E, NaCocycle const& T, Mapping const& sigma,
                   Mapping const& kappa, NaClassList& H);

// Exactness for expanded modules: Der(Q,I) = ker psi embeds in Aut_I A, and the image
// of psi is exactly the vanishing locus of the Wells map, with preimages
// realized by the section <a,x> |-> <sigma(a) - h(kappa x), kappa x>.
Report check_module_exactness(ModuleExtension const& E, Mapping const& l,
                            std::span<Identity const> V);

// Identity list for the module laws of E plus multilinearity of the extras,
// over the algebra signature of E.M.
std::vector<Identity> module_law_identities(ExpandedModule const& M);

}  // namespace affina

#endif  // AFFINA_MODEXP_HPP_
