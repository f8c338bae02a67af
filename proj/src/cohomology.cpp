#include "affina/cohomology.hpp"

#include <algorithm>
#include <stdexcept>

namespace affina {

bool is_coboundary_witness(AffineDatum const& D, TwoCocycle const& S, TwoCocycle const& T,
                           Mapping const& h) {
  for (size_t sym = 0; sym < S.comp.size(); ++sym) {
    int              k = D.Q.signature()[sym].arity;
    std::vector<int> qtup(k, 0), img(k);
    size_t           rank = 0;
    do {
      int fq  = D.Q.apply(sym, qtup);
      int lhs = D.sub_u(S.comp[sym][rank], fq, T.comp[sym][rank]);
      for (int i = 0; i < k; ++i) {
        img[i] = h[qtup[i]];
      }
      int rhs = D.sub_u(D.S.apply(sym, img), fq, h[fq]);
      if (lhs != rhs) {
        return false;
      }
      ++rank;
    } while (next_tuple(qtup, D.Q.size()));
  }
  return true;
}

std::vector<Mapping> equivalent_witnesses(AffineDatum const& D, TwoCocycle const& S,
                                          TwoCocycle const& T, size_t max_count) {
  if (S.comp.size() != D.Q.signature().size() || T.comp.size() != D.Q.signature().size()) {
    throw std::invalid_argument("equivalent: cocycle does not match the datum");
  }
  if (!fiber_respecting(D, S) || !fiber_respecting(D, T)) {
    throw std::invalid_argument("equivalent: cocycle violates the fiber condition");
  }
  std::vector<Mapping> found;
  int                  nq = D.Q.size();
  std::vector<int>     pos(nq, 0);
  Mapping              h(nq);
  while (true) {
    for (int q = 0; q < nq; ++q) {
      h[q] = D.fibers[q][pos[q]];
    }
    if (is_coboundary_witness(D, S, T, h)) {
      found.push_back(h);
      if (found.size() >= max_count) {
        return found;
      }
    }
    int q = nq - 1;
    while (q >= 0 && ++pos[q] == static_cast<int>(D.fibers[q].size())) {
      pos[q] = 0;
      --q;
    }
    if (q < 0) {
      return found;
    }
  }
}

std::optional<Mapping> equivalent(AffineDatum const& D, TwoCocycle const& S,
                                  TwoCocycle const& T) {
  auto found = equivalent_witnesses(D, S, T, 1);
  if (found.empty()) {
    return std::nullopt;
  }
  return found.front();
}

namespace {

// One cocycle entry: component `sym` at Q-tuple rank `qrank`.
struct Slot {
  int    sym;
  size_t qrank;
  int    fiber;  // Q element the value must project to
};

// A ground instance of an identity, with the index of the last slot (in
// assignment order) its evaluation touches.
struct Instance {
  Identity const*  ident;
  std::vector<int> env;  // variable -> S element
  size_t           last_slot;
};

class CocycleSearch {
 public:
  CocycleSearch(AffineDatum const& D, std::span<Identity const> U, size_t budget)
      : D_(D), U_(U), budget_(budget), SD_(semidirect(D)) {
    build_slots();
    build_instances();
  }

  std::vector<TwoCocycle> run() {
    assign_.assign(slots_.size(), -1);
    search(0);
    return std::move(found_);
  }

 private:
  void build_slots() {
    auto const& sig = D_.Q.signature();
    slot_index_.resize(sig.size());
    for (size_t sym = 0; sym < sig.size(); ++sym) {
      int              k = sig[sym].arity;
      std::vector<int> qtup(k, 0);
      size_t           rank = 0;
      slot_index_[sym].resize(pow_size(D_.Q.size(), k));
      do {
        slot_index_[sym][rank] = slots_.size();
        slots_.push_back(Slot{static_cast<int>(sym), rank, D_.Q.apply(sym, qtup)});
        ++rank;
      } while (next_tuple(qtup, D_.Q.size()));
    }
  }

  // The rho-trace of an evaluation does not depend on the cocycle, so the
  // slots an instance touches can be computed up front.
  int trace_slots(Term const& t, std::vector<int> const& env, std::vector<size_t>& touched) {
    if (t.is_var()) {
      return D_.rho[env[t.var_index()]];
    }
    std::vector<int> qargs(t.args().size());
    for (size_t i = 0; i < t.args().size(); ++i) {
      qargs[i] = trace_slots(t.args()[i], env, touched);
    }
    size_t rank = tuple_rank(qargs, D_.Q.size());
    touched.push_back(slot_index_[t.symbol()][rank]);
    return D_.Q.apply(t.symbol(), qargs);
  }

  void build_instances() {
    instances_by_slot_.resize(slots_.size());
    for (auto const& ident : U_) {
      int              nvars = ident.num_vars();
      std::vector<int> env(nvars, 0);
      do {
        std::vector<size_t> touched;
        trace_slots(ident.lhs, env, touched);
        trace_slots(ident.rhs, env, touched);
        size_t last = 0;
        for (size_t s : touched) {
          last = std::max(last, s);
        }
        instances_by_slot_[last].push_back(Instance{&ident, env, last});
      } while (nvars > 0 && next_tuple(env, D_.S.size()));
    }
  }

  int eval(Term const& t, std::vector<int> const& env) const {
    if (t.is_var()) {
      return env[t.var_index()];
    }
    std::vector<int> args(t.args().size());
    std::vector<int> qargs(t.args().size());
    for (size_t i = 0; i < t.args().size(); ++i) {
      args[i]  = eval(t.args()[i], env);
      qargs[i] = D_.rho[args[i]];
    }
    int base  = SD_.apply(t.symbol(), args);
    size_t qr = tuple_rank(qargs, D_.Q.size());
    int   tv  = assign_[slot_index_[t.symbol()][qr]];
    return D_.add_u(base, D_.Q.apply(t.symbol(), qargs), tv);
  }

  bool instances_hold(size_t slot) const {
    for (auto const& inst : instances_by_slot_[slot]) {
      if (eval(inst.ident->lhs, inst.env) != eval(inst.ident->rhs, inst.env)) {
        return false;
      }
    }
    return true;
  }

  bool realizes(TwoCocycle const& T) const {
    FiniteAlgebra AT = reconstruct(D_, T);
    Congruence    ker = fiber_congruence(D_);
    if (!is_compatible(AT, ker)) {
      return false;
    }
    return check_affine(Extension::make(AT, ker), D_.m_S);
  }

  void search(size_t depth) {
    if (++nodes_ > budget_) {
      throw std::runtime_error("enumerate_cocycles: search budget exceeded; "
                               "raise the guardrail to proceed");
    }
    if (depth == slots_.size()) {
      TwoCocycle T;
      T.comp.resize(slot_index_.size());
      for (size_t sym = 0; sym < slot_index_.size(); ++sym) {
        T.comp[sym].resize(slot_index_[sym].size());
        for (size_t r = 0; r < slot_index_[sym].size(); ++r) {
          T.comp[sym][r] = assign_[slot_index_[sym][r]];
        }
      }
      if (realizes(T)) {
        found_.push_back(std::move(T));
      }
      return;
    }
    for (int value : D_.fibers[slots_[depth].fiber]) {
      assign_[depth] = value;
      if (instances_hold(depth)) {
        search(depth + 1);
      }
    }
    assign_[depth] = -1;
  }

  AffineDatum const&                 D_;
  std::span<Identity const>          U_;
  size_t                             budget_;
  size_t                             nodes_ = 0;
  FiniteAlgebra                      SD_;
  std::vector<Slot>                  slots_;
  std::vector<std::vector<size_t>>   slot_index_;  // [sym][qrank] -> slot
  std::vector<std::vector<Instance>> instances_by_slot_;
  std::vector<int>                   assign_;
  std::vector<TwoCocycle>            found_;
};

}  // namespace

std::vector<TwoCocycle> enumerate_cocycles(AffineDatum const&        D,
                                           std::span<Identity const> U,
                                           size_t                    node_budget) {
  return CocycleSearch(D, U, node_budget).run();
}

int CohomologyGroup::neg(int cls) const {
  for (int c = 0; c < order(); ++c) {
    if (add_table[cls][c] == zero_class) {
      return c;
    }
  }
  return -1;
}

CohomologyGroup cohomology_group(AffineDatum const& D, std::span<Identity const> U,
                                 size_t node_budget) {
  CohomologyGroup H;
  H.cocycles = enumerate_cocycles(D, U, node_budget);
  for (size_t i = 0; i < H.cocycles.size(); ++i) {
    bool placed = false;
    for (size_t c = 0; c < H.reps.size(); ++c) {
      if (equivalent(D, H.cocycles[i], H.cocycles[H.reps[c]])) {
        H.classes[c].push_back(static_cast<int>(i));
        placed = true;
        break;
      }
    }
    if (!placed) {
      H.reps.push_back(static_cast<int>(i));
      H.classes.push_back({static_cast<int>(i)});
    }
  }
  TwoCocycle zero = zero_cocycle(D);
  H.zero_class    = class_of_cocycle(D, H, zero);
  if (H.zero_class < 0) {
    throw std::logic_error("cohomology_group: the zero cocycle is not U-compatible");
  }
  int n = H.order();
  H.add_table.assign(n, std::vector<int>(n, -1));
  for (int c1 = 0; c1 < n; ++c1) {
    for (int c2 = 0; c2 < n; ++c2) {
      TwoCocycle sum = cocycle_add(D, H.rep_cocycle(c1), H.rep_cocycle(c2));
      int        cls = class_of_cocycle(D, H, sum);
      if (cls < 0) {
        throw std::logic_error("cohomology_group: class sum left the enumerated set");
      }
      H.add_table[c1][c2] = cls;
    }
  }
  // Abelian group axioms on the finite class set.
  for (int a = 0; a < n; ++a) {
    if (H.add_table[a][H.zero_class] != a || H.add_table[H.zero_class][a] != a) {
      throw std::logic_error("cohomology_group: zero class is not neutral");
    }
    if (H.neg(a) < 0) {
      throw std::logic_error("cohomology_group: class without inverse");
    }
    for (int b = 0; b < n; ++b) {
      if (H.add_table[a][b] != H.add_table[b][a]) {
        throw std::logic_error("cohomology_group: addition is not commutative");
      }
      for (int c = 0; c < n; ++c) {
        if (H.add_table[H.add_table[a][b]][c] != H.add_table[a][H.add_table[b][c]]) {
          throw std::logic_error("cohomology_group: addition is not associative");
        }
      }
    }
  }
  return H;
}

int class_of_cocycle(AffineDatum const& D, CohomologyGroup const& H, TwoCocycle const& T) {
  for (size_t c = 0; c < H.reps.size(); ++c) {
    if (equivalent(D, T, H.cocycles[H.reps[c]])) {
      return static_cast<int>(c);
    }
  }
  return -1;
}

}  // namespace affina
