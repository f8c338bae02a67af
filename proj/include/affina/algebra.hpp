#ifndef AFFINA_ALGEBRA_HPP_
#define AFFINA_ALGEBRA_HPP_

#include <span>
#include <vector>

#include "affina/signature.hpp"

namespace affina {

// A finite algebra: universe {0, ..., size-1} and one total operation table
// per signature symbol. A table for an arity-k symbol is a flat vector of
// length size^k indexed row-major (first argument most significant).
class FiniteAlgebra {
 public:
  FiniteAlgebra() = default;
  FiniteAlgebra(Signature sig, int size, std::vector<std::vector<int>> tables);

  int size() const {
    return size_;
  }
  Signature const& signature() const {
    return sig_;
  }
  std::vector<int> const& table(int sym) const {
    return tables_[sym];
  }
  std::vector<std::vector<int>> const& tables() const {
    return tables_;
  }

  int apply(int sym, std::span<int const> args) const;
  int apply(int sym, std::initializer_list<int> args) const {
    return apply(sym, std::span<int const>(args.begin(), args.size()));
  }

  bool operator==(FiniteAlgebra const& other) const = default;

 private:
  Signature                     sig_;
  int                           size_ = 0;
  std::vector<std::vector<int>> tables_;
};

// Row-major rank of a tuple with all entries in {0, ..., base-1}.
size_t tuple_rank(std::span<int const> tuple, int base);
// Inverse of tuple_rank.
void tuple_unrank(size_t rank, int base, std::span<int> out);
// Odometer step through tuples in lexicographic order; false after the last.
bool next_tuple(std::vector<int>& tuple, int base);

size_t pow_size(int base, int exp);

// Value of a term under an environment assigning algebra elements to
// variables. The environment must cover every variable of the term.
int eval_term(FiniteAlgebra const& A, Term const& t, std::span<int const> env);

// Whether the identity holds under every assignment of variables (exhaustive
// over size^{num_vars} environments).
bool satisfies(FiniteAlgebra const& A, Identity const& e);
bool satisfies_all(FiniteAlgebra const& A, std::span<Identity const> ids);

// Direct product on pairs encoded as a*|B| + b, with componentwise tables.
FiniteAlgebra direct_product(FiniteAlgebra const& A, FiniteAlgebra const& B);

}  // namespace affina

#endif  // AFFINA_ALGEBRA_HPP_
