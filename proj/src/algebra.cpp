#include "affina/algebra.hpp"

#include <stdexcept>
#include <string>

namespace affina {

size_t pow_size(int base, int exp) {
  size_t r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= static_cast<size_t>(base);
  }
  return r;
}

size_t tuple_rank(std::span<int const> tuple, int base) {
  size_t r = 0;
  for (int v : tuple) {
    r = r * static_cast<size_t>(base) + static_cast<size_t>(v);
  }
  return r;
}

void tuple_unrank(size_t rank, int base, std::span<int> out) {
  for (size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<int>(rank % static_cast<size_t>(base));
    rank /= static_cast<size_t>(base);
  }
}

bool next_tuple(std::vector<int>& tuple, int base) {
  for (size_t i = tuple.size(); i-- > 0;) {
    if (++tuple[i] < base) {
      return true;
    }
    tuple[i] = 0;
  }
  return false;
}

FiniteAlgebra::FiniteAlgebra(Signature sig, int size, std::vector<std::vector<int>> tables)
    : sig_(std::move(sig)), size_(size), tables_(std::move(tables)) {
  if (size_ <= 0) {
    throw std::invalid_argument("algebra: size must be positive");
  }
  if (tables_.size() != sig_.size()) {
    throw std::invalid_argument("algebra: expected " + std::to_string(sig_.size())
                                + " tables, got " + std::to_string(tables_.size()));
  }
  for (size_t s = 0; s < sig_.size(); ++s) {
    size_t want = pow_size(size_, sig_[s].arity);
    if (tables_[s].size() != want) {
      throw std::invalid_argument("algebra: table for \"" + sig_[s].name + "\" has "
                                  + std::to_string(tables_[s].size()) + " entries, expected "
                                  + std::to_string(want));
    }
    for (size_t i = 0; i < tables_[s].size(); ++i) {
      if (tables_[s][i] < 0 || tables_[s][i] >= size_) {
        std::vector<int> idx(sig_[s].arity);
        tuple_unrank(i, size_, idx);
        std::string where = sig_[s].name;
        for (int v : idx) {
          where += "[" + std::to_string(v) + "]";
        }
        throw std::invalid_argument("table entry out of range at " + where);
      }
    }
  }
}

int FiniteAlgebra::apply(int sym, std::span<int const> args) const {
  if (static_cast<int>(args.size()) != sig_[sym].arity) {
    throw std::invalid_argument("apply: arity mismatch for \"" + sig_[sym].name + "\"");
  }
  return tables_[sym][tuple_rank(args, size_)];
}

int eval_term(FiniteAlgebra const& A, Term const& t, std::span<int const> env) {
  if (t.is_var()) {
    if (t.var_index() >= static_cast<int>(env.size())) {
      throw std::invalid_argument("eval_term: variable x" + std::to_string(t.var_index())
                                  + " not covered by environment");
    }
    int v = env[t.var_index()];
    if (v < 0 || v >= A.size()) {
      throw std::invalid_argument("eval_term: environment value out of range");
    }
    return v;
  }
  if (t.symbol() >= static_cast<int>(A.signature().size())) {
    throw std::invalid_argument("eval_term: symbol index out of range");
  }
  std::vector<int> args(t.args().size());
  for (size_t i = 0; i < t.args().size(); ++i) {
    args[i] = eval_term(A, t.args()[i], env);
  }
  return A.apply(t.symbol(), args);
}

bool satisfies(FiniteAlgebra const& A, Identity const& e) {
  int nvars = e.num_vars();
  auto in_range = [&](Term const& t, auto&& self) -> bool {
    if (t.is_var()) {
      return true;
    }
    if (t.symbol() < 0 || t.symbol() >= static_cast<int>(A.signature().size())
        || static_cast<int>(t.args().size()) != A.signature()[t.symbol()].arity) {
      return false;
    }
    for (auto const& a : t.args()) {
      if (!self(a, self)) {
        return false;
      }
    }
    return true;
  };
  if (!in_range(e.lhs, in_range) || !in_range(e.rhs, in_range)) {
    throw std::invalid_argument("satisfies: identity does not fit the algebra's signature");
  }
  std::vector<int> env(nvars, 0);
  if (nvars == 0) {
    return eval_term(A, e.lhs, env) == eval_term(A, e.rhs, env);
  }
  do {
    if (eval_term(A, e.lhs, env) != eval_term(A, e.rhs, env)) {
      return false;
    }
  } while (next_tuple(env, A.size()));
  return true;
}

bool satisfies_all(FiniteAlgebra const& A, std::span<Identity const> ids) {
  for (auto const& e : ids) {
    if (!satisfies(A, e)) {
      return false;
    }
  }
  return true;
}

FiniteAlgebra direct_product(FiniteAlgebra const& A, FiniteAlgebra const& B) {
  if (!(A.signature() == B.signature())) {
    throw std::invalid_argument("direct_product: signature mismatch");
  }
  int na = A.size(), nb = B.size();
  int n  = na * nb;
  std::vector<std::vector<int>> tables;
  for (size_t s = 0; s < A.signature().size(); ++s) {
    int              k = A.signature()[s].arity;
    std::vector<int> table(pow_size(n, k));
    std::vector<int> tup(k, 0), ta(k), tb(k);
    size_t           rank = 0;
    do {
      for (int i = 0; i < k; ++i) {
        ta[i] = tup[i] / nb;
        tb[i] = tup[i] % nb;
      }
      table[rank++] = A.apply(s, ta) * nb + B.apply(s, tb);
    } while (next_tuple(tup, n));
    tables.push_back(std::move(table));
  }
  return FiniteAlgebra(A.signature(), n, std::move(tables));
}

}  // namespace affina
