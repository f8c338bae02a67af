#include "affina/modexp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace affina {

void FiniteRing::validate() {
  if (size <= 0 || add.size() != static_cast<size_t>(size) * size
      || mul.size() != static_cast<size_t>(size) * size) {
    throw std::invalid_argument("ring: table sizes do not match");
  }
  auto in_range = [&](int v) { return v >= 0 && v < size; };
  for (int v : add) {
    if (!in_range(v)) {
      throw std::invalid_argument("ring: addition entry out of range");
    }
  }
  for (int v : mul) {
    if (!in_range(v)) {
      throw std::invalid_argument("ring: multiplication entry out of range");
    }
  }
  if (!in_range(zero) || !in_range(one)) {
    throw std::invalid_argument("ring: zero/one out of range");
  }
  neg.assign(size, -1);
  for (int a = 0; a < size; ++a) {
    if (plus(a, zero) != a || plus(zero, a) != a) {
      throw std::invalid_argument("ring: zero is not neutral");
    }
    if (times(a, one) != a || times(one, a) != a) {
      throw std::invalid_argument("ring: one is not a unit");
    }
    for (int b = 0; b < size; ++b) {
      if (plus(a, b) != plus(b, a)) {
        throw std::invalid_argument("ring: addition is not commutative");
      }
      if (plus(a, b) == zero) {
        neg[a] = b;
      }
      for (int c = 0; c < size; ++c) {
        if (plus(plus(a, b), c) != plus(a, plus(b, c))
            || times(times(a, b), c) != times(a, times(b, c))
            || times(a, plus(b, c)) != plus(times(a, b), times(a, c))
            || times(plus(a, b), c) != plus(times(a, c), times(b, c))) {
          throw std::invalid_argument("ring: axioms fail");
        }
      }
    }
    if (neg[a] < 0) {
      throw std::invalid_argument("ring: element without additive inverse");
    }
  }
}

ExpandedModule ExpandedModule::make(FiniteRing R, int size, std::vector<int> add,
                                    std::vector<int> action, std::vector<ExtraOp> extras,
                                    bool validate) {
  ExpandedModule M;
  M.R      = std::move(R);
  M.size   = size;
  M.add    = std::move(add);
  M.action = std::move(action);
  M.extras = std::move(extras);
  if (M.add.size() != static_cast<size_t>(size) * size
      || M.action.size() != static_cast<size_t>(M.R.size) * size) {
    throw std::invalid_argument("module: table sizes do not match");
  }
  // locate the additive zero
  for (int z = 0; z < size && M.zero < 0; ++z) {
    bool neutral = true;
    for (int a = 0; a < size; ++a) {
      if (M.plus(z, a) != a || M.plus(a, z) != a) {
        neutral = false;
        break;
      }
    }
    if (neutral) {
      M.zero = z;
    }
  }
  if (M.zero < 0) {
    if (validate) {
      throw std::invalid_argument("module: no additive zero");
    }
    M.zero = 0;
  }
  M.neg.assign(size, -1);
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) {
      if (M.plus(a, b) == M.zero) {
        M.neg[a] = b;
        break;
      }
    }
    if (M.neg[a] < 0) {
      if (validate) {
        throw std::invalid_argument("module: element without additive inverse");
      }
      M.neg[a] = a;
    }
  }
  // the algebra view: {+, 0, s0..s(|R|-1)} followed by the extras
  std::vector<OpSymbol> syms{{"+", 2}, {"0", 0}};
  for (int r = 0; r < M.R.size; ++r) {
    syms.push_back({"s" + std::to_string(r), 1});
  }
  std::vector<std::vector<int>> tables{M.add, {M.zero}};
  for (int r = 0; r < M.R.size; ++r) {
    tables.emplace_back(M.action.begin() + static_cast<size_t>(r) * size,
                        M.action.begin() + static_cast<size_t>(r + 1) * size);
  }
  for (auto const& ex : M.extras) {
    syms.push_back({ex.name, ex.arity});
    tables.push_back(ex.table);
  }
  M.algebra = FiniteAlgebra(Signature(std::move(syms)), size, std::move(tables));
  if (validate) {
    M.validate_module();
  }
  return M;
}

void ExpandedModule::validate_module() const {
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) {
      if (plus(a, b) != plus(b, a)) {
        throw std::invalid_argument("module: addition is not commutative");
      }
      for (int c = 0; c < size; ++c) {
        if (plus(plus(a, b), c) != plus(a, plus(b, c))) {
          throw std::invalid_argument("module: addition is not associative");
        }
      }
    }
    if (scalar(R.one, a) != a) {
      throw std::invalid_argument("module: identity scalar does not fix elements");
    }
    if (scalar(R.zero, a) != zero) {
      throw std::invalid_argument("module: zero scalar is not constant zero");
    }
    for (int r = 0; r < R.size; ++r) {
      for (int u = 0; u < R.size; ++u) {
        if (scalar(r, scalar(u, a)) != scalar(R.times(r, u), a)
            || plus(scalar(r, a), scalar(u, a)) != scalar(R.plus(r, u), a)) {
          throw std::invalid_argument("module: scalar axioms fail");
        }
      }
      for (int b = 0; b < size; ++b) {
        if (scalar(r, plus(a, b)) != plus(scalar(r, a), scalar(r, b))) {
          throw std::invalid_argument("module: scalars are not additive");
        }
      }
    }
  }
  // multilinearity of the extras, slot by slot
  for (size_t f = 0; f < extras.size(); ++f) {
    int k = extras[f].arity;
    std::vector<int> tup(k, 0), t2(k);
    do {
      for (int i = 0; i < k; ++i) {
        for (int b = 0; b < size; ++b) {
          t2     = tup;
          t2[i]  = b;
          int fb = extra(f, t2);
          t2[i]  = plus(tup[i], b);
          if (extra(f, t2) != plus(extra(f, tup), fb)) {
            throw std::invalid_argument("module: extra \"" + extras[f].name
                                        + "\" is not additive in slot "
                                        + std::to_string(i));
          }
        }
        for (int r = 0; r < R.size; ++r) {
          t2    = tup;
          t2[i] = scalar(r, tup[i]);
          if (extra(f, t2) != scalar(r, extra(f, tup))) {
            throw std::invalid_argument("module: extra \"" + extras[f].name
                                        + "\" is not homogeneous in slot "
                                        + std::to_string(i));
          }
        }
      }
    } while (next_tuple(tup, size));
  }
}

Ideal make_ideal(ExpandedModule const& M, std::vector<int> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Ideal I;
  I.to_idx.assign(M.size, -1);
  for (size_t i = 0; i < elems.size(); ++i) {
    if (elems[i] < 0 || elems[i] >= M.size) {
      throw std::invalid_argument("ideal: element out of range");
    }
    I.to_idx[elems[i]] = static_cast<int>(i);
  }
  I.elems = std::move(elems);
  auto inside = [&](int a) { return I.to_idx[a] >= 0; };
  if (!inside(M.zero)) {
    throw std::invalid_argument("ideal: does not contain zero");
  }
  for (int a : I.elems) {
    if (!inside(M.neg[a])) {
      throw std::invalid_argument("ideal: not closed under negation");
    }
    for (int b : I.elems) {
      if (!inside(M.plus(a, b))) {
        throw std::invalid_argument("ideal: not closed under addition");
      }
    }
    for (int r = 0; r < M.R.size; ++r) {
      if (!inside(M.scalar(r, a))) {
        throw std::invalid_argument("ideal: not closed under scalars");
      }
    }
  }
  // absorption: any argument in the ideal forces the value into the ideal
  for (size_t f = 0; f < M.extras.size(); ++f) {
    int              k = M.extras[f].arity;
    std::vector<int> tup(k, 0);
    do {
      bool touches = false;
      for (int v : tup) {
        if (inside(v)) {
          touches = true;
          break;
        }
      }
      if (touches && !inside(M.extra(f, tup))) {
        throw std::invalid_argument("ideal: not absorbing for \"" + M.extras[f].name
                                    + "\"");
      }
    } while (next_tuple(tup, M.size));
  }
  return I;
}

namespace {

ExpandedModule extract_module(FiniteRing const& R, FiniteAlgebra const& A,
                              std::vector<ExtraOp> const& shape) {
  int                  n = A.size();
  std::vector<int>     add = A.table(A.signature().index_of("+"));
  std::vector<int>     action(static_cast<size_t>(R.size) * n);
  for (int r = 0; r < R.size; ++r) {
    auto const& t = A.table(A.signature().index_of("s" + std::to_string(r)));
    std::copy(t.begin(), t.end(), action.begin() + static_cast<size_t>(r) * n);
  }
  std::vector<ExtraOp> extras;
  for (auto const& ex : shape) {
    extras.push_back(ExtraOp{ex.name, ex.arity, A.table(A.signature().index_of(ex.name))});
  }
  return ExpandedModule::make(R, n, std::move(add), std::move(action), std::move(extras));
}

}  // namespace

ModuleExtension module_extension(ExpandedModule M, std::vector<int> ideal_elems) {
  ModuleExtension E;
  E.I = make_ideal(M, std::move(ideal_elems));
  // kernel congruence: a ~ b iff a - b lies in the ideal
  std::vector<int> key(M.size);
  for (int a = 0; a < M.size; ++a) {
    int least = a;
    for (int b = 0; b < M.size; ++b) {
      if (E.I.to_idx[M.minus(a, b)] >= 0) {
        least = std::min(least, b);
      }
    }
    key[a] = least;
  }
  E.alpha = Congruence::from_key(key);
  if (!is_compatible(M.algebra, E.alpha)) {
    throw std::invalid_argument("ideal: induced partition is not a congruence");
  }
  auto quo = quotient(M.algebra, E.alpha);
  E.pi     = quo.projection;
  E.Qm     = extract_module(M.R, quo.algebra, M.extras);

  // the ideal as a module in its own right
  int              isz = static_cast<int>(E.I.elems.size());
  std::vector<int> iadd(static_cast<size_t>(isz) * isz);
  std::vector<int> iact(static_cast<size_t>(M.R.size) * isz);
  for (int i = 0; i < isz; ++i) {
    for (int j = 0; j < isz; ++j) {
      iadd[static_cast<size_t>(i) * isz + j] =
          E.I.to_idx[M.plus(E.I.elems[i], E.I.elems[j])];
    }
    for (int r = 0; r < M.R.size; ++r) {
      iact[static_cast<size_t>(r) * isz + i] = E.I.to_idx[M.scalar(r, E.I.elems[i])];
    }
  }
  std::vector<ExtraOp> iextras;
  for (auto const& ex : M.extras) {
    std::vector<int> table(pow_size(isz, ex.arity));
    std::vector<int> tup(ex.arity, 0), args(ex.arity);
    size_t           rank = 0;
    do {
      for (int i = 0; i < ex.arity; ++i) {
        args[i] = E.I.elems[tup[i]];
      }
      table[rank++] = E.I.to_idx[M.extra(static_cast<int>(&ex - M.extras.data()), args)];
    } while (next_tuple(tup, isz));
    iextras.push_back(ExtraOp{ex.name, ex.arity, std::move(table)});
  }
  E.Im = ExpandedModule::make(M.R, isz, std::move(iadd), std::move(iact),
                              std::move(iextras));
  E.M  = std::move(M);
  return E;
}

bool is_module_lifting(ModuleExtension const& E, Mapping const& l) {
  if (static_cast<int>(l.size()) != E.Qm.size) {
    return false;
  }
  for (int q = 0; q < E.Qm.size; ++q) {
    if (l[q] < 0 || l[q] >= E.M.size || E.pi[l[q]] != q) {
      return false;
    }
  }
  return true;
}

bool NaCocycle::operator<(NaCocycle const& other) const {
  return std::tie(t_plus, t_scalar, t_extra, action)
         < std::tie(other.t_plus, other.t_scalar, other.t_extra, other.action);
}

std::vector<std::vector<int>> proper_subsets(int n) {
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask + 1 < (1 << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i) {
      if (mask & (1 << i)) {
        s.push_back(i);
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

NaCocycle na_deconstruct(ModuleExtension const& E, Mapping const& l) {
  if (!is_module_lifting(E, l)) {
    throw std::invalid_argument("na_deconstruct: not a lifting of pi");
  }
  if (l[E.pi[E.M.zero]] != E.M.zero) {
    throw std::invalid_argument("na_deconstruct: lifting must send 0 to 0");
  }
  auto const& M  = E.M;
  int         nq = E.Qm.size;
  auto to_ideal = [&](int m) {
    int i = E.I.to_idx[m];
    if (i < 0) {
      throw std::logic_error("na_deconstruct: value escaped the ideal");
    }
    return i;
  };
  NaCocycle T;
  T.t_plus.resize(static_cast<size_t>(nq) * nq);
  for (int x = 0; x < nq; ++x) {
    for (int y = 0; y < nq; ++y) {
      T.t_plus[static_cast<size_t>(x) * nq + y] =
          to_ideal(M.minus(M.plus(l[x], l[y]), l[E.Qm.plus(x, y)]));
    }
  }
  T.t_scalar.resize(M.R.size);
  for (int r = 0; r < M.R.size; ++r) {
    T.t_scalar[r].resize(nq);
    for (int x = 0; x < nq; ++x) {
      T.t_scalar[r][x] = to_ideal(M.minus(M.scalar(r, l[x]), l[E.Qm.scalar(r, x)]));
    }
  }
  T.t_extra.resize(M.extras.size());
  T.action.resize(M.extras.size());
  int isz = static_cast<int>(E.I.elems.size());
  for (size_t f = 0; f < M.extras.size(); ++f) {
    int              k = M.extras[f].arity;
    std::vector<int> qtup(k, 0), lifted(k);
    T.t_extra[f].resize(pow_size(nq, k));
    size_t rank = 0;
    do {
      for (int i = 0; i < k; ++i) {
        lifted[i] = l[qtup[i]];
      }
      T.t_extra[f][rank++] = to_ideal(
          M.minus(M.extra(f, lifted), l[E.Qm.extra(f, qtup)]));
    } while (next_tuple(qtup, nq));

    auto subsets = proper_subsets(k);
    T.action[f].resize(subsets.size());
    for (size_t si = 0; si < subsets.size(); ++si) {
      auto const&      s      = subsets[si];
      size_t           icount = pow_size(isz, static_cast<int>(s.size()));
      std::vector<int> table(pow_size(nq, k) * icount);
      std::vector<int> itup(s.size(), 0), args(k);
      qtup.assign(k, 0);
      size_t qrank = 0;
      do {
        itup.assign(s.size(), 0);
        size_t irank = 0;
        do {
          for (int i = 0; i < k; ++i) {
            args[i] = l[qtup[i]];
          }
          for (size_t j = 0; j < s.size(); ++j) {
            args[s[j]] = E.I.elems[itup[j]];
          }
          table[qrank * icount + irank] = to_ideal(M.extra(f, args));
          ++irank;
        } while (next_tuple(itup, isz));
        ++qrank;
      } while (next_tuple(qtup, nq));
      T.action[f][si] = std::move(table);
    }
  }
  return T;
}

ExpandedModule na_semidirect(ModuleExtension const& E, NaCocycle const& T) {
  int nq = E.Qm.size, ni = static_cast<int>(E.I.elems.size());
  int n  = ni * nq;
  auto pair_of = [&](int v) { return std::pair(v / nq, v % nq); };
  auto idx     = [&](int a, int x) { return a * nq + x; };

  std::vector<int> add(static_cast<size_t>(n) * n);
  for (int v = 0; v < n; ++v) {
    auto [a, x] = pair_of(v);
    for (int w = 0; w < n; ++w) {
      auto [b, y] = pair_of(w);
      int first   = E.Im.plus(E.Im.plus(a, b), T.t_plus[static_cast<size_t>(x) * nq + y]);
      add[static_cast<size_t>(v) * n + w] = idx(first, E.Qm.plus(x, y));
    }
  }
  std::vector<int> action(static_cast<size_t>(E.M.R.size) * n);
  for (int r = 0; r < E.M.R.size; ++r) {
    for (int v = 0; v < n; ++v) {
      auto [a, x] = pair_of(v);
      action[static_cast<size_t>(r) * n + v] =
          idx(E.Im.plus(E.Im.scalar(r, a), T.t_scalar[r][x]), E.Qm.scalar(r, x));
    }
  }
  std::vector<ExtraOp> extras;
  for (size_t f = 0; f < E.M.extras.size(); ++f) {
    int              k = E.M.extras[f].arity;
    auto             subsets = proper_subsets(k);
    std::vector<int> table(pow_size(n, k));
    std::vector<int> tup(k, 0), atup(k), xtup(k);
    size_t           rank = 0;
    do {
      for (int i = 0; i < k; ++i) {
        atup[i] = tup[i] / nq;
        xtup[i] = tup[i] % nq;
      }
      size_t qrank = tuple_rank(xtup, nq);
      int    first = E.Im.extra(f, atup);
      for (size_t si = 0; si < subsets.size(); ++si) {
        auto const&      s = subsets[si];
        std::vector<int> sel(s.size());
        for (size_t j = 0; j < s.size(); ++j) {
          sel[j] = atup[s[j]];
        }
        size_t icount = pow_size(ni, static_cast<int>(s.size()));
        first = E.Im.plus(first,
                          T.action[f][si][qrank * icount + tuple_rank(sel, ni)]);
      }
      first         = E.Im.plus(first, T.t_extra[f][qrank]);
      table[rank++] = idx(first, E.Qm.extra(f, xtup));
    } while (next_tuple(tup, n));
    extras.push_back(ExtraOp{E.M.extras[f].name, k, std::move(table)});
  }
  ExpandedModule semi = ExpandedModule::make(E.M.R, n, std::move(add), std::move(action),
                                             std::move(extras), /* validate = */ false);
  // the distinguished zero is <0, 0> even when the bundle is not V-compatible
  semi.zero = idx(E.I.to_idx[E.M.zero], E.pi[E.M.zero]);
  return semi;
}

Mapping na_embedding(ModuleExtension const& E, Mapping const& l) {
  int     nq = E.Qm.size;
  Mapping iso(E.M.size);
  for (int m = 0; m < E.M.size; ++m) {
    int a  = E.I.to_idx[E.M.minus(m, l[E.pi[m]])];
    iso[m] = a * nq + E.pi[m];
  }
  return iso;
}

namespace {

struct SignedSum {
  ExpandedModule const& I;
  int                   acc;

  void add(int term, int exponent) {
    acc = (exponent % 2 == 0) ? I.plus(acc, term) : I.plus(acc, I.neg[term]);
  }
};

}  // namespace

bool na_conditions_hold(ModuleExtension const& E, NaCocycle const& S, NaCocycle const& T,
                        Mapping const& h) {
  auto const& I  = E.Im;
  auto const& Q  = E.Qm;
  int         nq = Q.size;
  // addition component
  for (int x = 0; x < nq; ++x) {
    for (int y = 0; y < nq; ++y) {
      size_t r   = static_cast<size_t>(x) * nq + y;
      int    lhs = I.minus(T.t_plus[r], S.t_plus[r]);
      int    rhs = I.minus(I.plus(h[x], h[y]), h[Q.plus(x, y)]);
      if (lhs != rhs) {
        return false;
      }
    }
  }
  // scalar components
  for (int r = 0; r < E.M.R.size; ++r) {
    for (int x = 0; x < nq; ++x) {
      int lhs = I.minus(T.t_scalar[r][x], S.t_scalar[r][x]);
      int rhs = I.minus(I.scalar(r, h[x]), h[Q.scalar(r, x)]);
      if (lhs != rhs) {
        return false;
      }
    }
  }
  int isz = I.size;
  for (size_t f = 0; f < E.M.extras.size(); ++f) {
    int  k       = E.M.extras[f].arity;
    auto subsets = proper_subsets(k);
    std::vector<int> qtup(k, 0), hvals(k), args(k);
    size_t           qrank = 0;
    do {
      for (int i = 0; i < k; ++i) {
        hvals[i] = h[qtup[i]];
      }
      // multilinear operation components
      {
        int       lhs = I.minus(T.t_extra[f][qrank], S.t_extra[f][qrank]);
        SignedSum sum{I, I.zero};
        for (size_t si = 0; si < subsets.size(); ++si) {
          auto const&      s = subsets[si];
          std::vector<int> sel(s.size());
          for (size_t j = 0; j < s.size(); ++j) {
            sel[j] = hvals[s[j]];
          }
          size_t icount = pow_size(isz, static_cast<int>(s.size()));
          sum.add(T.action[f][si][qrank * icount + tuple_rank(sel, isz)],
                  1 + static_cast<int>(s.size()));
        }
        sum.add(I.extra(f, hvals), 1 + k);
        sum.add(h[Q.extra(f, qtup)], 1);
        if (lhs != sum.acc) {
          return false;
        }
      }
      // mixed action components, one family per nonempty proper subset s
      for (size_t si = 0; si < subsets.size(); ++si) {
        auto const&      s      = subsets[si];
        size_t           icount = pow_size(isz, static_cast<int>(s.size()));
        std::vector<int> itup(s.size(), 0);
        size_t           irank = 0;
        do {
          int lhs = I.minus(T.action[f][si][qrank * icount + irank],
                            S.action[f][si][qrank * icount + irank]);
          SignedSum sum{I, I.zero};
          for (size_t ri = 0; ri < subsets.size(); ++ri) {
            auto const& rset = subsets[ri];
            if (rset.size() <= s.size()
                || !std::includes(rset.begin(), rset.end(), s.begin(), s.end())) {
              continue;
            }
            // fill r-slots: positions in s take the given ideal arguments,
            // the rest take h-values
            std::vector<int> sel(rset.size());
            for (size_t j = 0; j < rset.size(); ++j) {
              auto it = std::find(s.begin(), s.end(), rset[j]);
              sel[j]  = (it != s.end()) ? itup[it - s.begin()] : hvals[rset[j]];
            }
            size_t rcount = pow_size(isz, static_cast<int>(rset.size()));
            sum.add(T.action[f][ri][qrank * rcount + tuple_rank(sel, isz)],
                    1 + static_cast<int>(rset.size() - s.size()));
          }
          // the full-set term evaluated in the ideal
          for (int i = 0; i < k; ++i) {
            args[i] = hvals[i];
          }
          for (size_t j = 0; j < s.size(); ++j) {
            args[s[j]] = itup[j];
          }
          sum.add(I.extra(f, args), 1 + k - static_cast<int>(s.size()));
          if (lhs != sum.acc) {
            return false;
          }
          ++irank;
        } while (next_tuple(itup, isz));
      }
      ++qrank;
    } while (next_tuple(qtup, nq));
  }
  return true;
}

std::optional<Mapping> na_equivalent(ModuleExtension const& E, NaCocycle const& S,
                                     NaCocycle const& T) {
  int nq = E.Qm.size, ni = E.Im.size;
  int q0 = E.pi[E.M.zero];
  Mapping          h(nq, E.Im.zero);
  std::vector<int> pos(nq, 0);
  while (true) {
    for (int q = 0; q < nq; ++q) {
      h[q] = (q == q0) ? E.Im.zero : pos[q];
    }
    if (na_conditions_hold(E, S, T, h)) {
      return h;
    }
    int q = nq - 1;
    while (q >= 0) {
      if (q == q0) {
        --q;
        continue;
      }
      if (++pos[q] < ni) {
        break;
      }
      pos[q] = 0;
      --q;
    }
    if (q < 0) {
      return std::nullopt;
    }
  }
}

NaCocycle na_act(ModuleExtension const& E, NaCocycle const& T, Mapping const& sigma,
                 Mapping const& kappa) {
  int     nq = E.Qm.size, ni = E.Im.size;
  Mapping kinv = invert_perm(kappa);
  Mapping sinv = invert_perm(sigma);
  NaCocycle out;
  out.t_plus.resize(T.t_plus.size());
  for (int x = 0; x < nq; ++x) {
    for (int y = 0; y < nq; ++y) {
      out.t_plus[static_cast<size_t>(x) * nq + y] =
          sigma[T.t_plus[static_cast<size_t>(kinv[x]) * nq + kinv[y]]];
    }
  }
  out.t_scalar.resize(T.t_scalar.size());
  for (size_t r = 0; r < T.t_scalar.size(); ++r) {
    out.t_scalar[r].resize(nq);
    for (int x = 0; x < nq; ++x) {
      out.t_scalar[r][x] = sigma[T.t_scalar[r][kinv[x]]];
    }
  }
  out.t_extra.resize(T.t_extra.size());
  out.action.resize(T.action.size());
  for (size_t f = 0; f < T.t_extra.size(); ++f) {
    int              k = E.M.extras[f].arity;
    std::vector<int> qtup(k, 0), pre(k);
    out.t_extra[f].resize(T.t_extra[f].size());
    size_t rank = 0;
    do {
      for (int i = 0; i < k; ++i) {
        pre[i] = kinv[qtup[i]];
      }
      out.t_extra[f][rank++] = sigma[T.t_extra[f][tuple_rank(pre, nq)]];
    } while (next_tuple(qtup, nq));

    auto subsets = proper_subsets(k);
    out.action[f].resize(T.action[f].size());
    for (size_t si = 0; si < subsets.size(); ++si) {
      size_t icount = pow_size(ni, static_cast<int>(subsets[si].size()));
      out.action[f][si].resize(T.action[f][si].size());
      std::vector<int> itup(subsets[si].size(), 0), ipre(subsets[si].size());
      qtup.assign(k, 0);
      size_t qrank = 0;
      do {
        for (int i = 0; i < k; ++i) {
          pre[i] = kinv[qtup[i]];
        }
        size_t prank = tuple_rank(pre, nq);
        itup.assign(subsets[si].size(), 0);
        size_t irank = 0;
        do {
          for (size_t j = 0; j < itup.size(); ++j) {
            ipre[j] = sinv[itup[j]];
          }
          out.action[f][si][qrank * icount + irank] =
              sigma[T.action[f][si][prank * icount + tuple_rank(ipre, ni)]];
          ++irank;
        } while (next_tuple(itup, ni));
        ++qrank;
      } while (next_tuple(qtup, nq));
    }
  }
  return out;
}

FAElement fa_generator(int cls) {
  return FAElement{{{cls, 1}}};
}

FAElement fa_add(FAElement const& a, FAElement const& b) {
  FAElement out;
  size_t    i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j == b.terms.size()
        || (i < a.terms.size() && a.terms[i].first < b.terms[j].first)) {
      out.terms.push_back(a.terms[i++]);
    } else if (i == a.terms.size() || b.terms[j].first < a.terms[i].first) {
      out.terms.push_back(b.terms[j++]);
    } else {
      int c = a.terms[i].second + b.terms[j].second;
      if (c != 0) {
        out.terms.push_back({a.terms[i].first, c});
      }
      ++i;
      ++j;
    }
  }
  return out;
}

FAElement fa_negate(FAElement const& a) {
  FAElement out = a;
  for (auto& [cls, c] : out.terms) {
    c = -c;
  }
  return out;
}

int NaClassList::class_of(ModuleExtension const& E, NaCocycle const& T) const {
  for (size_t c = 0; c < reps.size(); ++c) {
    if (na_equivalent(E, T, reps[c]).has_value()) {
      return static_cast<int>(c);
    }
  }
  return -1;
}

int NaClassList::insert(ModuleExtension const& E, NaCocycle const& T) {
  int c = class_of(E, T);
  if (c >= 0) {
    return c;
  }
  reps.push_back(T);
  return static_cast<int>(reps.size()) - 1;
}

FAElement na_wells(ModuleExtension const& E, NaCocycle const& T, Mapping const& sigma,
                   Mapping const& kappa, NaClassList& H) {
  int ct = H.insert(E, T);
  int cp = H.insert(E, na_act(E, T, sigma, kappa));
  return fa_add(fa_generator(ct), fa_negate(fa_generator(cp)));
}

std::vector<Identity> module_law_identities(ExpandedModule const& M) {
  Signature const& sig = M.algebra.signature();
  std::vector<Identity> ids;
  auto t = [&](std::string const& s) { return Term::parse(s, sig); };
  auto s = [&](int r) { return "s" + std::to_string(r); };
  ids.push_back({t("+(+(x0,x1),x2)"), t("+(x0,+(x1,x2))")});
  ids.push_back({t("+(x0,x1)"), t("+(x1,x0)")});
  ids.push_back({t("+(x0,0)"), t("x0")});
  ids.push_back({t("+(x0," + s(M.R.neg[M.R.one]) + "(x0))"), t("0")});
  ids.push_back({t(s(M.R.one) + "(x0)"), t("x0")});
  ids.push_back({t(s(M.R.zero) + "(x0)"), t("0")});
  for (int r = 0; r < M.R.size; ++r) {
    ids.push_back({t(s(r) + "(+(x0,x1))"), t("+(" + s(r) + "(x0)," + s(r) + "(x1))")});
    for (int u = 0; u < M.R.size; ++u) {
      ids.push_back({t(s(r) + "(" + s(u) + "(x0))"), t(s(M.R.times(r, u)) + "(x0)")});
      ids.push_back(
          {t("+(" + s(r) + "(x0)," + s(u) + "(x0))"), t(s(M.R.plus(r, u)) + "(x0)")});
    }
  }
  // multilinearity of every extra in every slot
  int plus_sym = sig.index_of("+");
  for (auto const& ex : M.extras) {
    int f = sig.index_of(ex.name);
    for (int i = 0; i < ex.arity; ++i) {
      std::vector<Term> plain, split, second;
      for (int j = 0; j < ex.arity; ++j) {
        plain.push_back(Term::var(j));
        second.push_back(j == i ? Term::var(ex.arity) : Term::var(j));
        split.push_back(j == i
                            ? Term::app(plus_sym, {Term::var(i), Term::var(ex.arity)})
                            : Term::var(j));
      }
      ids.push_back({Term::app(f, split),
                     Term::app(plus_sym, {Term::app(f, plain), Term::app(f, second)})});
      for (int r = 0; r < M.R.size; ++r) {
        std::vector<Term> scaled = plain;
        scaled[i]                = Term::app(sig.index_of(s(r)), {Term::var(i)});
        ids.push_back({Term::app(f, scaled),
                       Term::app(sig.index_of(s(r)), {Term::app(f, plain)})});
      }
    }
  }
  return ids;
}

Report check_module_exactness(ModuleExtension const& E, Mapping const& l,
                            std::span<Identity const> V) {
  Report R;
  R.analysis = "modexp";

  NaCocycle      T    = na_deconstruct(E, l);
  ExpandedModule semi = na_semidirect(E, T);
  Mapping        iota = na_embedding(E, l);

  {
    std::set<int> hit(iota.begin(), iota.end());
    R.add("embedding_isomorphism",
          static_cast<int>(hit.size()) == E.M.size && semi.size == E.M.size
              && is_homomorphism(E.M.algebra, semi.algebra, iota));
  }
  R.add("witness_satisfies_v", satisfies_all(E.M.algebra, V));
  R.add("semidirect_satisfies_v", satisfies_all(semi.algebra, V));

  // multilinearity of the deconstructed action components in the ideal slots
  {
    bool multi = true;
    for (size_t f = 0; f < E.M.extras.size() && multi; ++f) {
      auto subsets = proper_subsets(E.M.extras[f].arity);
      int  k       = E.M.extras[f].arity;
      int  ni      = E.Im.size;
      std::vector<int> qtup(k, 0);
      size_t           qrank = 0;
      do {
        for (size_t si = 0; si < subsets.size() && multi; ++si) {
          size_t           icount = pow_size(ni, static_cast<int>(subsets[si].size()));
          std::vector<int> itup(subsets[si].size(), 0), t2(subsets[si].size());
          do {
            int base = T.action[f][si][qrank * icount + tuple_rank(itup, ni)];
            for (size_t j = 0; j < itup.size(); ++j) {
              for (int b = 0; b < ni; ++b) {
                t2    = itup;
                t2[j] = b;
                int vb = T.action[f][si][qrank * icount + tuple_rank(t2, ni)];
                t2[j]  = E.Im.plus(itup[j], b);
                if (T.action[f][si][qrank * icount + tuple_rank(t2, ni)]
                    != E.Im.plus(base, vb)) {
                  multi = false;
                }
              }
            }
          } while (next_tuple(itup, ni));
        }
        ++qrank;
      } while (next_tuple(qtup, E.Qm.size) && multi);
    }
    R.add("action_components_multilinear", multi);
  }

  AutList autI = find_automorphisms(E.Im.algebra);
  AutList autQ = find_automorphisms(E.Qm.algebra);
  AutList autIA;
  for (auto const& phi : find_automorphisms(E.M.algebra)) {
    bool setwise = true;
    for (int a : E.I.elems) {
      if (E.I.to_idx[phi[a]] < 0) {
        setwise = false;
        break;
      }
    }
    if (setwise) {
      autIA.push_back(phi);
    }
  }

  auto psi4 = [&](Mapping const& phi) {
    Mapping restr(E.Im.size), kappa(E.Qm.size);
    for (int i = 0; i < E.Im.size; ++i) {
      restr[i] = E.I.to_idx[phi[E.I.elems[i]]];
    }
    for (int q = 0; q < E.Qm.size; ++q) {
      kappa[q] = E.pi[phi[l[q]]];
    }
    return std::pair(restr, kappa);
  };

  // psi lands in Aut I x Aut Q, is a homomorphism, and ignores the lifting
  bool into = true, hom = true, lift_free = true;
  std::vector<std::pair<Mapping, Mapping>> images;
  for (auto const& phi : autIA) {
    auto p = psi4(phi);
    if (find_map_index(autI, p.first) < 0 || find_map_index(autQ, p.second) < 0) {
      into = false;
    }
    images.push_back(p);
  }
  for (size_t i = 0; i < autIA.size(); ++i) {
    for (size_t j = 0; j < autIA.size(); ++j) {
      auto pij = psi4(compose_maps(autIA[i], autIA[j]));
      if (pij.first != compose_maps(images[i].first, images[j].first)
          || pij.second != compose_maps(images[i].second, images[j].second)) {
        hom = false;
      }
    }
    // any other lifting gives the same kappa
    for (int q = 0; q < E.Qm.size; ++q) {
      for (int a = 0; a < E.M.size; ++a) {
        if (E.pi[a] == q && E.pi[autIA[i][a]] != images[i].second[q]) {
          lift_free = false;
        }
      }
    }
  }
  R.add("psi_into_product", into);
  R.add("psi_homomorphism", hom);
  R.add("psi_lifting_independent", lift_free);

  // ker psi = {phi : phi fixes I pointwise and pi o phi = pi} = Der(Q, I)
  AutList ker_filter, ker_formula;
  for (size_t i = 0; i < autIA.size(); ++i) {
    if (images[i].first == identity_map(E.Im.size)
        && images[i].second == identity_map(E.Qm.size)) {
      ker_filter.push_back(autIA[i]);
    }
    bool fixes = true, commutes = true;
    for (int a : E.I.elems) {
      if (autIA[i][a] != a) {
        fixes = false;
      }
    }
    for (int a = 0; a < E.M.size; ++a) {
      if (E.pi[autIA[i][a]] != E.pi[a]) {
        commutes = false;
      }
    }
    if (fixes && commutes) {
      ker_formula.push_back(autIA[i]);
    }
  }
  R.add("ker_psi_formula", ker_filter == ker_formula,
        std::to_string(ker_filter.size()) + " derivations");

  // exactness: the Wells element vanishes exactly on the image of psi
  NaClassList H;
  H.insert(E, T);
  std::set<std::pair<Mapping, Mapping>> image_set(images.begin(), images.end());
  bool v_preserved = true, exact = true, sections_ok = true;
  for (auto const& sigma : autI) {
    for (auto const& kappa : autQ) {
      NaCocycle Tp = na_act(E, T, sigma, kappa);
      if (!satisfies_all(na_semidirect(E, Tp).algebra, V)) {
        v_preserved = false;
      }
      FAElement w      = na_wells(E, T, sigma, kappa, H);
      bool      in_img = image_set.contains({sigma, kappa});
      if (w.is_zero() != in_img) {
        exact = false;
      }
      if (w.is_zero()) {
        // realize the preimage through the section
        auto h = na_equivalent(E, Tp, T);
        if (!h) {
          sections_ok = false;
          continue;
        }
        int     nq = E.Qm.size;
        Mapping sec(semi.size);
        for (int v = 0; v < semi.size; ++v) {
          int a = v / nq, x = v % nq;
          sec[v] = E.Im.minus(sigma[a], (*h)[kappa[x]]) * nq + kappa[x];
        }
        std::set<int> hit(sec.begin(), sec.end());
        if (static_cast<int>(hit.size()) != semi.size
            || !is_homomorphism(semi.algebra, semi.algebra, sec)) {
          sections_ok = false;
        }
        // the section preserves I x 0 and psi maps it back to (sigma, kappa)
        for (int a = 0; a < E.Im.size; ++a) {
          int q0 = E.pi[E.M.zero];
          if (sec[a * nq + q0] % nq != q0) {
            sections_ok = false;
          }
        }
        Mapping phi = compose_maps(invert_perm(iota), compose_maps(sec, iota));
        if (find_map_index(autIA, phi) < 0) {
          sections_ok = false;
        } else {
          auto back = psi4(phi);
          if (back.first != sigma || back.second != kappa) {
            sections_ok = false;
          }
        }
      }
    }
  }
  R.add("action_preserves_v", v_preserved);
  R.add("wells_vanishes_on_image", exact);
  R.add("sections_realize_kernel", sections_ok);

  R.sizes = {{"der", static_cast<int>(ker_filter.size())},
             {"aut_i_a", static_cast<int>(autIA.size())},
             {"aut_i_times_aut_q", static_cast<int>(autI.size() * autQ.size())},
             {"ker_wells", static_cast<int>(image_set.size())},
             {"classes_seen", static_cast<int>(H.reps.size())}};
  std::string sizes_detail;
  for (auto const& [k, v] : R.sizes) {
    sizes_detail += (sizes_detail.empty() ? "" : ", ") + k + "=" + std::to_string(v);
  }
  R.add("sizes", true, sizes_detail);
  return R;
}

}  // namespace affina
