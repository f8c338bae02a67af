#include "affina/morphism.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace affina {

bool is_homomorphism(FiniteAlgebra const& A, FiniteAlgebra const& B, Mapping const& map) {
  if (!(A.signature() == B.signature()) || static_cast<int>(map.size()) != A.size()) {
    return false;
  }
  for (int v : map) {
    if (v < 0 || v >= B.size()) {
      return false;
    }
  }
  for (size_t s = 0; s < A.signature().size(); ++s) {
    int              k = A.signature()[s].arity;
    std::vector<int> tup(k, 0), img(k);
    do {
      for (int i = 0; i < k; ++i) {
        img[i] = map[tup[i]];
      }
      if (map[A.apply(s, tup)] != B.apply(s, img)) {
        return false;
      }
    } while (next_tuple(tup, A.size()));
  }
  return true;
}

namespace {

// Backtracking search for bijective homomorphisms A -> B. Whenever a tuple
// becomes fully mapped, the image of its value is forced; conflicts prune the
// branch. Assignments are trailed so they can be undone on backtrack.
class IsoSearch {
 public:
  IsoSearch(FiniteAlgebra const& A, FiniteAlgebra const& B, bool all)
      : A_(A), B_(B), all_(all), n_(A.size()), map_(A.size(), -1), used_(B.size(), false) {}

  std::vector<Mapping> run() {
    if (A_.size() != B_.size() || !(A_.signature() == B_.signature())) {
      return {};
    }
    search(0);
    return std::move(found_);
  }

 private:
  bool assign(int a, int b, std::vector<int>& trail) {
    if (map_[a] != -1) {
      return map_[a] == b;
    }
    if (used_[b]) {
      return false;
    }
    map_[a]  = b;
    used_[b] = true;
    trail.push_back(a);
    return true;
  }

  // Propagate forced images; returns false on conflict.
  bool propagate(std::vector<int>& trail) {
    bool changed = true;
    std::vector<int> tup, img;
    while (changed) {
      changed = false;
      for (size_t s = 0; s < A_.signature().size(); ++s) {
        int k = A_.signature()[s].arity;
        tup.assign(k, 0);
        img.assign(k, 0);
        do {
          bool ready = true;
          for (int i = 0; i < k; ++i) {
            if (map_[tup[i]] == -1) {
              ready = false;
              break;
            }
            img[i] = map_[tup[i]];
          }
          if (!ready) {
            continue;
          }
          int va = A_.apply(s, tup);
          int vb = B_.apply(s, img);
          if (map_[va] == -1) {
            if (!assign(va, vb, trail)) {
              return false;
            }
            changed = true;
          } else if (map_[va] != vb) {
            return false;
          }
        } while (next_tuple(tup, n_));
      }
    }
    return true;
  }

  void undo(std::vector<int> const& trail) {
    for (int a : trail) {
      used_[map_[a]] = false;
      map_[a]        = -1;
    }
  }

  bool search(int depth) {
    while (depth < n_ && map_[depth] != -1) {
      ++depth;
    }
    if (depth == n_) {
      found_.push_back(map_);
      return !all_;
    }
    for (int b = 0; b < n_; ++b) {
      if (used_[b]) {
        continue;
      }
      std::vector<int> trail;
      if (assign(depth, b, trail) && propagate(trail)) {
        if (search(depth + 1)) {
          return true;
        }
      }
      undo(trail);
    }
    return false;
  }

  FiniteAlgebra const& A_;
  FiniteAlgebra const& B_;
  bool                 all_;
  int                  n_;
  Mapping              map_;
  std::vector<bool>    used_;
  std::vector<Mapping> found_;
};

}  // namespace

std::vector<Mapping> find_isomorphisms(FiniteAlgebra const& A, FiniteAlgebra const& B) {
  return IsoSearch(A, B, true).run();
}

std::optional<Mapping> find_isomorphism(FiniteAlgebra const& A, FiniteAlgebra const& B) {
  auto found = IsoSearch(A, B, false).run();
  if (found.empty()) {
    return std::nullopt;
  }
  return found.front();
}

std::vector<Mapping> find_automorphisms(FiniteAlgebra const& A) {
  return find_isomorphisms(A, A);
}

Mapping identity_map(int n) {
  Mapping m(n);
  std::iota(m.begin(), m.end(), 0);
  return m;
}

Mapping compose_maps(Mapping const& f, Mapping const& g) {
  Mapping out(g.size());
  for (size_t i = 0; i < g.size(); ++i) {
    out[i] = f[g[i]];
  }
  return out;
}

Mapping invert_perm(Mapping const& f) {
  Mapping out(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    out[f[i]] = static_cast<int>(i);
  }
  return out;
}

bool is_perm_group(std::vector<Mapping> const& perms) {
  if (perms.empty()) {
    return false;
  }
  auto has = [&](Mapping const& m) {
    return std::find(perms.begin(), perms.end(), m) != perms.end();
  };
  if (!has(identity_map(static_cast<int>(perms[0].size())))) {
    return false;
  }
  for (auto const& f : perms) {
    if (!has(invert_perm(f))) {
      return false;
    }
    for (auto const& g : perms) {
      if (!has(compose_maps(f, g))) {
        return false;
      }
    }
  }
  return true;
}

int find_map_index(std::vector<Mapping> const& list, Mapping const& m) {
  auto it = std::find(list.begin(), list.end(), m);
  return it == list.end() ? -1 : static_cast<int>(it - list.begin());
}

Congruence map_congruence(Mapping const& f, Congruence const& theta) {
  std::vector<int> key(f.size());
  for (size_t a = 0; a < f.size(); ++a) {
    key[f[a]] = theta.block_id(static_cast<int>(a));
  }
  return Congruence::from_key(key);
}

}  // namespace affina
