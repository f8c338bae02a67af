#ifndef AFFINA_CONGRUENCE_HPP_
#define AFFINA_CONGRUENCE_HPP_

#include <utility>
#include <vector>

#include "affina/algebra.hpp"

namespace affina {

class UnionFind {
 public:
  explicit UnionFind(int n);
  int  find(int x) const;
  // Returns true if x and y were in distinct classes.
  bool unite(int x, int y);
  int  num_classes() const {
    return classes_;
  }
  // Partition in canonical form: every element labelled by the least member
  // of its class.
  std::vector<int> canonical() const;

 private:
  mutable std::vector<int> parent_;
  int                      classes_;
};

// A partition of {0, ..., n-1} in canonical form (block id = least member).
// Compatibility with an algebra's operations is checked separately.
class Congruence {
 public:
  Congruence() = default;
  explicit Congruence(std::vector<int> canonical_block_of);

  static Congruence identity(int n);
  static Congruence full(int n);
  static Congruence from_blocks(int n, std::vector<std::vector<int>> const& blocks);
  // The partition whose blocks are the classes of `key`: x ~ y iff key[x] == key[y].
  static Congruence from_key(std::vector<int> const& key);

  int size() const {
    return static_cast<int>(block_of_.size());
  }
  bool related(int a, int b) const {
    return block_of_[a] == block_of_[b];
  }
  // Least member of a's block.
  int block_id(int a) const {
    return block_of_[a];
  }
  std::vector<int> const& block_array() const {
    return block_of_;
  }
  int num_blocks() const;
  // Blocks ordered by least member; members ascending.
  std::vector<std::vector<int>> blocks() const;
  // Index of a's block in the blocks() ordering.
  std::vector<int> block_index_map() const;

  bool operator==(Congruence const& other) const = default;
  bool operator<(Congruence const& other) const {
    return block_of_ < other.block_of_;
  }

 private:
  std::vector<int> block_of_;
};

// Whether the partition is compatible with every operation table of A:
// componentwise related tuples have related values.
bool is_compatible(FiniteAlgebra const& A, Congruence const& theta);

// Least congruence of A containing the given pairs: union-find merging closed
// under all unary polynomial translations of the fundamental operations.
Congruence generate_congruence(FiniteAlgebra const&                    A,
                               std::vector<std::pair<int, int>> const& pairs);

struct QuotientResult {
  FiniteAlgebra    algebra;
  std::vector<int> projection;  // element -> block index
};

// Quotient algebra on block representatives plus the canonical surjection.
// Blocks are indexed by least member, ascending.
QuotientResult quotient(FiniteAlgebra const& A, Congruence const& theta);

// The term condition C(alpha, 1; 0): every matrix in the subalgebra of A^4
// generated by {(a,a,b,b) : (a,b) in alpha} and {(c,d,c,d) : c,d in A}
// satisfies m11 == m12  =>  m21 == m22.
bool is_central(FiniteAlgebra const& A, Congruence const& alpha);

}  // namespace affina

#endif  // AFFINA_CONGRUENCE_HPP_
