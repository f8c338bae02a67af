#include "affina/congruence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace affina {

UnionFind::UnionFind(int n) : parent_(n), classes_(n) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

int UnionFind::find(int x) const {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x          = parent_[x];
  }
  return x;
}

bool UnionFind::unite(int x, int y) {
  int rx = find(x), ry = find(y);
  if (rx == ry) {
    return false;
  }
  // Keep the least member as root so canonical() is a relabelling no-op.
  if (ry < rx) {
    std::swap(rx, ry);
  }
  parent_[ry] = rx;
  --classes_;
  return true;
}

std::vector<int> UnionFind::canonical() const {
  std::vector<int> out(parent_.size());
  for (size_t i = 0; i < parent_.size(); ++i) {
    out[i] = find(static_cast<int>(i));
  }
  return out;
}

Congruence::Congruence(std::vector<int> canonical_block_of)
    : block_of_(std::move(canonical_block_of)) {
  int n = static_cast<int>(block_of_.size());
  std::vector<int> least(n, -1);
  for (int a = 0; a < n; ++a) {
    int b = block_of_[a];
    if (b < 0 || b >= n) {
      throw std::invalid_argument("congruence: block id out of range");
    }
    if (least[b] == -1) {
      least[b] = a;
    }
  }
  for (int a = 0; a < n; ++a) {
    if (least[block_of_[a]] != block_of_[a]) {
      throw std::invalid_argument("congruence: block id is not the least member");
    }
  }
}

Congruence Congruence::identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return Congruence(std::move(v));
}

Congruence Congruence::full(int n) {
  return Congruence(std::vector<int>(n, 0));
}

Congruence Congruence::from_blocks(int n, std::vector<std::vector<int>> const& blocks) {
  std::vector<int> v(n, -1);
  for (auto const& blk : blocks) {
    if (blk.empty()) {
      throw std::invalid_argument("congruence: empty block");
    }
    int least = *std::min_element(blk.begin(), blk.end());
    for (int a : blk) {
      if (a < 0 || a >= n || v[a] != -1) {
        throw std::invalid_argument("congruence: blocks do not partition the universe");
      }
      v[a] = least;
    }
  }
  for (int a = 0; a < n; ++a) {
    if (v[a] == -1) {
      throw std::invalid_argument("congruence: element " + std::to_string(a) + " uncovered");
    }
  }
  return Congruence(std::move(v));
}

Congruence Congruence::from_key(std::vector<int> const& key) {
  int              n = static_cast<int>(key.size());
  std::map<int, int> least;
  for (int a = 0; a < n; ++a) {
    auto it = least.find(key[a]);
    if (it == least.end()) {
      least[key[a]] = a;
    }
  }
  std::vector<int> v(n);
  for (int a = 0; a < n; ++a) {
    v[a] = least[key[a]];
  }
  return Congruence(std::move(v));
}

int Congruence::num_blocks() const {
  int n = 0;
  for (size_t a = 0; a < block_of_.size(); ++a) {
    if (block_of_[a] == static_cast<int>(a)) {
      ++n;
    }
  }
  return n;
}

std::vector<std::vector<int>> Congruence::blocks() const {
  std::map<int, std::vector<int>> by_id;
  for (size_t a = 0; a < block_of_.size(); ++a) {
    by_id[block_of_[a]].push_back(static_cast<int>(a));
  }
  std::vector<std::vector<int>> out;
  for (auto& [id, members] : by_id) {
    out.push_back(std::move(members));
  }
  return out;
}

std::vector<int> Congruence::block_index_map() const {
  std::vector<int> ids;
  for (size_t a = 0; a < block_of_.size(); ++a) {
    if (block_of_[a] == static_cast<int>(a)) {
      ids.push_back(static_cast<int>(a));
    }
  }
  std::vector<int> out(block_of_.size());
  for (size_t a = 0; a < block_of_.size(); ++a) {
    out[a] = static_cast<int>(std::lower_bound(ids.begin(), ids.end(), block_of_[a])
                              - ids.begin());
  }
  return out;
}

bool is_compatible(FiniteAlgebra const& A, Congruence const& theta) {
  int n = A.size();
  if (theta.size() != n) {
    throw std::invalid_argument("is_compatible: size mismatch");
  }
  for (size_t s = 0; s < A.signature().size(); ++s) {
    int k = A.signature()[s].arity;
    if (k == 0) {
      continue;
    }
    // It suffices to vary one coordinate at a time.
    std::vector<int> tup(k, 0);
    do {
      int base = A.apply(s, tup);
      for (int i = 0; i < k; ++i) {
        int orig = tup[i];
        for (int b = 0; b < n; ++b) {
          if (b == orig || !theta.related(orig, b)) {
            continue;
          }
          tup[i] = b;
          if (!theta.related(base, A.apply(s, tup))) {
            tup[i] = orig;
            return false;
          }
        }
        tup[i] = orig;
      }
    } while (next_tuple(tup, n));
  }
  return true;
}

Congruence generate_congruence(FiniteAlgebra const&                    A,
                               std::vector<std::pair<int, int>> const& pairs) {
  int n = A.size();
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw std::invalid_argument("generate_congruence: pair index out of range");
    }
  }
  UnionFind                              uf(n);
  std::deque<std::pair<int, int>>        todo;
  auto merge = [&](int a, int b) {
    if (uf.unite(a, b)) {
      todo.emplace_back(a, b);
    }
  };
  for (auto [a, b] : pairs) {
    merge(a, b);
  }
  // Close under all unary polynomial translations of the fundamental
  // operations: whenever a ~ b is new, f(..., a, ...) ~ f(..., b, ...) for
  // every symbol, position and choice of the remaining arguments.
  while (!todo.empty()) {
    auto [a, b] = todo.front();
    todo.pop_front();
    for (size_t s = 0; s < A.signature().size(); ++s) {
      int k = A.signature()[s].arity;
      if (k == 0) {
        continue;
      }
      std::vector<int> rest(k - 1, 0);
      std::vector<int> tup(k);
      do {
        for (int i = 0; i < k; ++i) {
          for (int j = 0, r = 0; j < k; ++j) {
            tup[j] = (j == i) ? a : rest[r++];
          }
          int fa = A.apply(s, tup);
          tup[i] = b;
          int fb = A.apply(s, tup);
          merge(fa, fb);
        }
      } while (next_tuple(rest, n));
    }
  }
  return Congruence(uf.canonical());
}

QuotientResult quotient(FiniteAlgebra const& A, Congruence const& theta) {
  if (theta.size() != A.size()) {
    throw std::invalid_argument("quotient: size mismatch");
  }
  if (!is_compatible(A, theta)) {
    throw std::invalid_argument("quotient: partition is not a congruence of the algebra");
  }
  auto             blocks = theta.blocks();
  auto             proj   = theta.block_index_map();
  int              q      = static_cast<int>(blocks.size());
  std::vector<std::vector<int>> tables;
  for (size_t s = 0; s < A.signature().size(); ++s) {
    int              k = A.signature()[s].arity;
    std::vector<int> table(pow_size(q, k));
    std::vector<int> tup(k, 0), reps(k);
    size_t           rank = 0;
    do {
      for (int i = 0; i < k; ++i) {
        reps[i] = blocks[tup[i]][0];
      }
      table[rank++] = proj[A.apply(s, reps)];
    } while (next_tuple(tup, q));
    tables.push_back(std::move(table));
  }
  return QuotientResult{FiniteAlgebra(A.signature(), q, std::move(tables)), std::move(proj)};
}

bool is_central(FiniteAlgebra const& A, Congruence const& alpha) {
  if (alpha.size() != A.size()) {
    throw std::invalid_argument("is_central: size mismatch");
  }
  size_t const n  = static_cast<size_t>(A.size());
  size_t const n2 = n * n, n3 = n2 * n;
  size_t const total = n3 * n;
  // Elements of A^4 encoded as ((m11*n + m12)*n + m21)*n + m22.
  std::vector<char>   seen(total, 0);
  std::vector<size_t> elems;
  auto add = [&](size_t e) {
    if (!seen[e]) {
      seen[e] = 1;
      elems.push_back(e);
    }
  };
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = 0; b < n; ++b) {
      if (alpha.related(static_cast<int>(a), static_cast<int>(b))) {
        add(a * n3 + a * n2 + b * n + b);
      }
      add(a * n3 + b * n2 + a * n + b);
    }
  }
  size_t const budget = 100'000'000;  // evaluation cap; unreachable at desk scale
  size_t       spent  = 0;
  size_t       frontier = 0;
  while (frontier < elems.size()) {
    size_t old_size = elems.size();
    // Apply every operation to tuples containing at least one element not yet
    // combined (standard incremental subuniverse closure).
    for (size_t s = 0; s < A.signature().size(); ++s) {
      int k = A.signature()[s].arity;
      if (k == 0) {
        int c = A.apply(s, {});
        add(static_cast<size_t>(c) * n3 + c * n2 + c * n + c);
        continue;
      }
      std::vector<size_t> idx(k, 0);
      std::vector<int>    args(k);
      auto advance = [&]() {
        for (size_t i = idx.size(); i-- > 0;) {
          if (++idx[i] < old_size) {
            return true;
          }
          idx[i] = 0;
        }
        return false;
      };
      do {
        bool fresh = false;
        for (int i = 0; i < k; ++i) {
          if (idx[i] >= frontier) {
            fresh = true;
            break;
          }
        }
        if (!fresh) {
          continue;
        }
        size_t coords[4] = {0, 0, 0, 0};
        for (int c = 0; c < 4; ++c) {
          for (int i = 0; i < k; ++i) {
            size_t e = elems[idx[i]];
            args[i]  = static_cast<int>((e / pow_size(static_cast<int>(n), 3 - c)) % n);
          }
          coords[c] = static_cast<size_t>(A.apply(s, args));
          if (++spent > budget) {
            throw std::runtime_error("is_central: closure budget exceeded");
          }
        }
        add(coords[0] * n3 + coords[1] * n2 + coords[2] * n + coords[3]);
      } while (advance());
    }
    frontier = old_size;
  }
  for (size_t e : elems) {
    int m11 = static_cast<int>(e / n3);
    int m12 = static_cast<int>((e / n2) % n);
    int m21 = static_cast<int>((e / n) % n);
    int m22 = static_cast<int>(e % n);
    if (m11 == m12 && m21 != m22) {
      return false;
    }
  }
  return true;
}

}  // namespace affina
