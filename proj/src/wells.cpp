#include "affina/wells.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace affina {

void Report::add(std::string name, bool pass, std::string detail) {
  ok = ok && pass;
  clauses.push_back(Clause{std::move(name), pass, std::move(detail)});
}

AutList aut_alpha(Extension const& E) {
  AutList out;
  for (auto const& phi : find_automorphisms(E.A)) {
    bool keeps = true;
    for (int a = 0; a < E.A.size() && keeps; ++a) {
      for (int b = 0; b < E.A.size(); ++b) {
        if (E.alpha.related(a, b) && !E.alpha.related(phi[a], phi[b])) {
          keeps = false;
          break;
        }
      }
    }
    if (keeps) {
      out.push_back(phi);
    }
  }
  return out;
}

CompatiblePair pair_identity(AffineDatum const& D) {
  return CompatiblePair{identity_map(static_cast<int>(D.rho.size())),
                        identity_map(D.Q.size())};
}

CompatiblePair pair_compose(CompatiblePair const& p, CompatiblePair const& q) {
  return CompatiblePair{compose_maps(p.sigma, q.sigma), compose_maps(p.kappa, q.kappa)};
}

CompatiblePair pair_inverse(CompatiblePair const& p) {
  return CompatiblePair{invert_perm(p.sigma), invert_perm(p.kappa)};
}

bool pair_compatible(AffineDatum const& D, Mapping const& sigma, Mapping const& kappa) {
  int s_size = static_cast<int>(D.rho.size());
  // sigma must cover kappa through rho
  for (int x = 0; x < s_size; ++x) {
    if (D.rho[sigma[x]] != kappa[D.rho[x]]) {
      return false;
    }
  }
  // sigma must permute the diagonal classes
  std::set<int> diag(D.fiber_zero.begin(), D.fiber_zero.end());
  for (int z : diag) {
    if (!diag.contains(sigma[z])) {
      return false;
    }
  }
  // sigma must intertwine every action slot with kappa
  for (size_t sym = 0; sym < D.Q.signature().size(); ++sym) {
    int k = D.Q.signature()[sym].arity;
    for (int pos = 0; pos < k; ++pos) {
      std::vector<int> qtup(k - 1, 0), ktup(k - 1);
      do {
        for (int i = 0; i < k - 1; ++i) {
          ktup[i] = kappa[qtup[i]];
        }
        for (int x = 0; x < s_size; ++x) {
          if (sigma[D.act(sym, pos, qtup, x)] != D.act(sym, pos, ktup, sigma[x])) {
            return false;
          }
        }
      } while (next_tuple(qtup, D.Q.size()));
    }
  }
  return true;
}

std::vector<CompatiblePair> compatible_pairs(AffineDatum const& D) {
  FiniteAlgebra               SD = semidirect(D);
  std::vector<CompatiblePair> out;
  for (auto const& sigma : find_automorphisms(SD)) {
    for (auto const& kappa : find_automorphisms(D.Q)) {
      if (pair_compatible(D, sigma, kappa)) {
        out.push_back(CompatiblePair{sigma, kappa});
      }
    }
  }
  return out;
}

CompatiblePair psi(Extension const& E, AffineDatum const& D, Mapping const& phi) {
  int n = E.A.size();
  if (!is_homomorphism(E.A, E.A, phi)) {
    throw std::invalid_argument("psi: phi is not an automorphism");
  }
  Mapping sigma(D.rho.size(), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (!E.alpha.related(a, b)) {
        continue;
      }
      int src = D.class_of_pair(a, b);
      int dst = D.class_of_pair(phi[a], phi[b]);
      if (dst < 0) {
        throw std::logic_error("psi: phi does not preserve alpha");
      }
      if (sigma[src] == -1) {
        sigma[src] = dst;
      } else if (sigma[src] != dst) {
        throw std::logic_error("psi: phi-hat is not well-defined on classes");
      }
    }
  }
  Mapping kappa(E.Q.size());
  for (int q = 0; q < E.Q.size(); ++q) {
    kappa[q] = E.pi[phi[D.lifting[q]]];
  }
  FiniteAlgebra SD = semidirect(D);
  if (!is_homomorphism(SD, SD, sigma) || !is_homomorphism(E.Q, E.Q, kappa)) {
    throw std::logic_error("psi: induced maps are not automorphisms");
  }
  if (!pair_compatible(D, sigma, kappa)) {
    throw std::logic_error("psi: image fails the compatibility conditions");
  }
  return CompatiblePair{std::move(sigma), std::move(kappa)};
}

TwoCocycle act(AffineDatum const& D, TwoCocycle const& T, CompatiblePair const& p) {
  Mapping    kinv = invert_perm(p.kappa);
  TwoCocycle out;
  out.comp.resize(T.comp.size());
  for (size_t sym = 0; sym < T.comp.size(); ++sym) {
    int              k = D.Q.signature()[sym].arity;
    std::vector<int> qtup(k, 0), pre(k);
    out.comp[sym].resize(T.comp[sym].size());
    size_t rank = 0;
    do {
      for (int i = 0; i < k; ++i) {
        pre[i] = kinv[qtup[i]];
      }
      out.comp[sym][rank++] = p.sigma[T.comp[sym][tuple_rank(pre, D.Q.size())]];
    } while (next_tuple(qtup, D.Q.size()));
  }
  return out;
}

int wells_value(AffineDatum const& D, CohomologyGroup const& H, TwoCocycle const& T,
                CompatiblePair const& p) {
  TwoCocycle diff = cocycle_sub(D, T, act(D, T, p));
  int        cls  = class_of_cocycle(D, H, diff);
  if (cls < 0) {
    throw std::logic_error("wells_value: difference left the enumerated class set");
  }
  return cls;
}

std::vector<int> ker_wells_t(AffineDatum const& D, CohomologyGroup const& H,
                             TwoCocycle const& T, std::vector<CompatiblePair> const& C) {
  std::vector<int> out;
  for (size_t i = 0; i < C.size(); ++i) {
    if (wells_value(D, H, T, C[i]) == H.zero_class) {
      out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

std::vector<int> ker_w(AffineDatum const& D, CohomologyGroup const& H,
                       std::vector<CompatiblePair> const& C) {
  std::vector<int> out;
  for (int cls = 0; cls < H.order(); ++cls) {
    if (ker_wells_t(D, H, H.rep_cocycle(cls), C).size() == C.size()) {
      out.push_back(cls);
    }
  }
  return out;
}

AutList stabilizers(Extension const& E, std::vector<int> const& m_table) {
  int  n = E.A.size();
  auto m = [&](int x, int y, int z) {
    return m_table[(static_cast<size_t>(x) * n + y) * n + z];
  };
  AutList out;
  auto    liftings = all_liftings(E);
  for (auto const& phi : find_automorphisms(E.A)) {
    bool stab = true;
    for (int a = 0; a < n && stab; ++a) {
      if (E.pi[phi[a]] != E.pi[a]) {
        stab = false;
      }
    }
    for (auto const& l : liftings) {
      if (!stab) {
        break;
      }
      for (int a = 0; a < n; ++a) {
        int r = l[E.pi[a]];
        if (phi[a] != m(phi[r], r, a)) {
          stab = false;
          break;
        }
      }
    }
    if (stab) {
      out.push_back(phi);
    }
  }
  return out;
}

Mapping derivation_map(Extension const& E, AffineDatum const& D, Mapping const& phi) {
  Mapping d(E.Q.size());
  for (int q = 0; q < E.Q.size(); ++q) {
    d[q] = D.gamma[phi[D.lifting[q]]];
  }
  return d;
}

namespace {

std::string join_sizes(std::vector<std::pair<std::string, int>> const& sizes) {
  std::string out;
  for (auto const& [k, v] : sizes) {
    out += (out.empty() ? "" : ", ") + k + "=" + std::to_string(v);
  }
  return out;
}

bool pairs_form_group(AffineDatum const& D, std::vector<CompatiblePair> const& pairs) {
  auto has = [&](CompatiblePair const& p) {
    return std::find(pairs.begin(), pairs.end(), p) != pairs.end();
  };
  if (!has(pair_identity(D))) {
    return false;
  }
  for (auto const& p : pairs) {
    if (!has(pair_inverse(p))) {
      return false;
    }
    for (auto const& q : pairs) {
      if (!has(pair_compose(p, q))) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

Report check_wells_exactness(Extension const& E, Mapping const& l,
                            std::vector<int> const& m_table, std::span<Identity const> U) {
  Report R;
  R.analysis = "wells";
  R.add("witness_satisfies_u", satisfies_all(E.A, U));
  auto [D, T] = deconstruct(E, l, m_table);
  CohomologyGroup H    = cohomology_group(D, U);
  auto            C    = compatible_pairs(D);
  AutList         auts = aut_alpha(E);
  AutList         stab = stabilizers(E, m_table);

  R.sizes = {{"der", static_cast<int>(stab.size())},
             {"aut_alpha", static_cast<int>(auts.size())},
             {"compatible_pairs", static_cast<int>(C.size())},
             {"h2", H.order()}};

  // ker psi computed independently of the stabilizer filter
  std::vector<CompatiblePair> images;
  AutList                     ker_psi;
  bool                        psi_ok = true;
  for (auto const& phi : auts) {
    try {
      CompatiblePair p = psi(E, D, phi);
      images.push_back(p);
      if (p == pair_identity(D)) {
        ker_psi.push_back(phi);
      }
    } catch (std::logic_error const&) {
      psi_ok = false;
      images.push_back(pair_identity(D));
    }
  }
  R.add("psi_into_compatible_pairs", psi_ok);
  {
    std::string detail = std::to_string(stab.size()) + " stabilizers";
    if (stab != ker_psi) {
      detail += ", ker psi has " + std::to_string(ker_psi.size()) + " elements";
    }
    R.add("stab_equals_ker_psi", stab == ker_psi, detail);
  }

  // psi is a homomorphism
  bool hom = true;
  for (size_t i = 0; i < auts.size() && hom; ++i) {
    for (size_t j = 0; j < auts.size(); ++j) {
      CompatiblePair lhs = psi(E, D, compose_maps(auts[i], auts[j]));
      if (!(lhs == pair_compose(images[i], images[j]))) {
        hom = false;
        break;
      }
    }
  }
  R.add("psi_homomorphism", hom);

  // phi_l does not depend on the lifting
  bool lift_free = true;
  for (auto const& phi : auts) {
    Mapping kappa(E.Q.size());
    for (int q = 0; q < E.Q.size(); ++q) {
      kappa[q] = E.pi[phi[l[q]]];
    }
    for (auto const& l2 : all_liftings(E)) {
      for (int q = 0; q < E.Q.size(); ++q) {
        if (E.pi[phi[l2[q]]] != kappa[q]) {
          lift_free = false;
        }
      }
    }
  }
  R.add("phi_l_lifting_independent", lift_free);

  // derivations embed: distinct maps, and composition matches fiber addition
  std::set<Mapping> dmaps;
  bool              additive = true;
  for (auto const& phi : stab) {
    dmaps.insert(derivation_map(E, D, phi));
  }
  for (auto const& f : stab) {
    for (auto const& g : stab) {
      Mapping dfg = derivation_map(E, D, compose_maps(f, g));
      Mapping df  = derivation_map(E, D, f);
      Mapping dg  = derivation_map(E, D, g);
      for (int q = 0; q < E.Q.size(); ++q) {
        if (dfg[q] != D.add_u(df[q], q, dg[q])) {
          additive = false;
        }
      }
    }
  }
  R.add("der_embedding", dmaps.size() == stab.size() && additive,
        "derivation maps distinct and additive");

  R.add("compatible_pairs_subgroup", pairs_form_group(D, C));

  // exactness at C: im psi = ker W_T
  std::set<CompatiblePair> image_set(images.begin(), images.end());
  std::set<CompatiblePair> kernel_set;
  for (int i : ker_wells_t(D, H, T, C)) {
    kernel_set.insert(C[i]);
  }
  {
    bool        same   = psi_ok && image_set == kernel_set;
    std::string detail = "im psi has " + std::to_string(image_set.size())
                         + " pairs, ker W_T has " + std::to_string(kernel_set.size());
    auto render = [](CompatiblePair const& p) {
      std::string out = "(sigma=[";
      for (size_t i = 0; i < p.sigma.size(); ++i) {
        out += (i ? " " : "") + std::to_string(p.sigma[i]);
      }
      out += "], kappa=[";
      for (size_t i = 0; i < p.kappa.size(); ++i) {
        out += (i ? " " : "") + std::to_string(p.kappa[i]);
      }
      return out + "])";
    };
    if (!same) {
      for (auto const& p : image_set) {
        if (!kernel_set.contains(p)) {
          detail += "; witness in im psi only: " + render(p);
          break;
        }
      }
      for (auto const& p : kernel_set) {
        if (!image_set.contains(p)) {
          detail += "; witness in ker W_T only: " + render(p);
          break;
        }
      }
    }
    R.add("image_psi_equals_ker_wells", same, detail);
  }

  // the acted cocycle is exactly the cocycle of the transported lifting
  bool exact_cocycle = true;
  for (size_t i = 0; i < auts.size(); ++i) {
    Mapping kinv = invert_perm(images[i].kappa);
    Mapping l2(E.Q.size());
    for (int q = 0; q < E.Q.size(); ++q) {
      l2[q] = auts[i][l[kinv[q]]];
    }
    if (!is_lifting(E, l2) || !(act(D, T, images[i]) == cocycle_of_lifting(D, E, l2))) {
      exact_cocycle = false;
    }
  }
  R.add("acted_cocycle_is_lifting_cocycle", exact_cocycle);

  // W_T is principal: W_T(p) = [T] - [T^p]
  int  t_cls     = class_of_cocycle(D, H, T);
  bool principal = t_cls >= 0;
  for (auto const& p : C) {
    int tp_cls = class_of_cocycle(D, H, act(D, T, p));
    if (tp_cls < 0 || wells_value(D, H, T, p) != H.add(t_cls, H.neg(tp_cls))) {
      principal = false;
    }
  }
  R.add("wells_principal_form", principal);

  // derivation identity, both orientations
  auto cls_act = [&](int cls, CompatiblePair const& p) {
    return class_of_cocycle(D, H, act(D, H.rep_cocycle(cls), p));
  };
  bool side_a = true, side_b = true;
  for (auto const& p : C) {
    for (auto const& q : C) {
      int wpq = wells_value(D, H, T, pair_compose(p, q));
      int wp  = wells_value(D, H, T, p);
      int wq  = wells_value(D, H, T, q);
      if (wpq != H.add(cls_act(wp, q), wq)) {
        side_a = false;
      }
      if (wpq != H.add(wp, cls_act(wq, p))) {
        side_b = false;
      }
    }
  }
  R.add("wells_derivation_identity", side_a || side_b,
        side_b ? "W(pq) = W(p) + W(q)^p" : (side_a ? "W(pq) = W(p)^q + W(q)" : "neither"));

  // ker W_T is a subgroup of C; ker W is a subgroup of H^2
  std::vector<CompatiblePair> kernel_list(kernel_set.begin(), kernel_set.end());
  R.add("ker_wells_t_subgroup", pairs_form_group(D, kernel_list));
  auto kw       = ker_w(D, H, C);
  bool kw_group = std::find(kw.begin(), kw.end(), H.zero_class) != kw.end();
  for (int a : kw) {
    for (int b : kw) {
      if (std::find(kw.begin(), kw.end(), H.add(a, b)) == kw.end()) {
        kw_group = false;
      }
    }
    if (std::find(kw.begin(), kw.end(), H.neg(a)) == kw.end()) {
      kw_group = false;
    }
  }
  R.add("ker_w_subgroup", kw_group, "ker W has " + std::to_string(kw.size()) + " classes");

  // ker W_S intersect ker W_T <= ker W_{S+T} over all class pairs
  bool meet = true;
  for (int c1 = 0; c1 < H.order(); ++c1) {
    for (int c2 = 0; c2 < H.order(); ++c2) {
      auto k1 = ker_wells_t(D, H, H.rep_cocycle(c1), C);
      auto k2 = ker_wells_t(D, H, H.rep_cocycle(c2), C);
      auto k12 = ker_wells_t(
          D, H, cocycle_add(D, H.rep_cocycle(c1), H.rep_cocycle(c2)), C);
      for (int i : k1) {
        if (std::find(k2.begin(), k2.end(), i) != k2.end()
            && std::find(k12.begin(), k12.end(), i) == k12.end()) {
          meet = false;
        }
      }
    }
  }
  R.add("ker_intersection", meet);

  R.add("sizes", true, join_sizes(R.sizes));
  return R;
}

namespace {

// Everything decompose_automorphisms needs about one reconstruction A_X.
struct TwistedSetup {
  FiniteAlgebra               AX;
  AutList                     aut_hat;   // automorphisms preserving the fibers
  AutList                     stab;      // ker of the transported psi
  std::vector<Mapping>        dmaps;     // stabilizer -> derivation map
  std::vector<CompatiblePair> kernel;    // ker W_X inside C
  std::vector<Mapping>        sections;  // per kernel pair: the lifted automorphism
  std::vector<Mapping>        witnesses; // per kernel pair: the h used
  bool                        sections_ok = true;
};

Mapping section_map(AffineDatum const& D, CompatiblePair const& p, Mapping const& h) {
  int     s_size = static_cast<int>(D.rho.size());
  Mapping out(s_size);
  for (int w = 0; w < s_size; ++w) {
    int q2 = p.kappa[D.rho[w]];
    out[w] = D.add_u(p.sigma[w], q2, h[q2]);
  }
  return out;
}

Mapping dmap_of(AffineDatum const& D, Mapping const& phi) {
  Mapping d(D.Q.size());
  for (int q = 0; q < D.Q.size(); ++q) {
    d[q] = phi[D.fiber_zero[q]];
  }
  return d;
}

Mapping twist_dmap(AffineDatum const& D, CompatiblePair const& p, Mapping const& d) {
  Mapping kinv = invert_perm(p.kappa);
  Mapping out(D.Q.size());
  for (int q = 0; q < D.Q.size(); ++q) {
    out[q] = p.sigma[d[kinv[q]]];
  }
  return out;
}

TwistedSetup twisted_setup(AffineDatum const& D, CohomologyGroup const& H,
                           TwoCocycle const& X, std::vector<CompatiblePair> const& C,
                           size_t witness_index) {
  TwistedSetup S;
  S.AX = reconstruct(D, X);
  Congruence fibers = fiber_congruence(D);
  for (auto const& phi : find_automorphisms(S.AX)) {
    bool keeps = true;
    for (int x = 0; x < S.AX.size() && keeps; ++x) {
      for (int y = 0; y < S.AX.size(); ++y) {
        if (fibers.related(x, y) && !fibers.related(phi[x], phi[y])) {
          keeps = false;
          break;
        }
      }
    }
    if (keeps) {
      S.aut_hat.push_back(phi);
    }
  }
  for (int i : ker_wells_t(D, H, X, C)) {
    S.kernel.push_back(C[i]);
  }
  for (auto const& p : S.kernel) {
    auto hs = equivalent_witnesses(D, act(D, X, p), X, witness_index + 1);
    if (hs.empty()) {
      throw std::logic_error("decompose: kernel pair without coboundary witness");
    }
    Mapping h = hs[std::min(witness_index, hs.size() - 1)];
    S.witnesses.push_back(h);
    Mapping sec = section_map(D, p, h);
    S.sections.push_back(sec);
    if (!is_homomorphism(S.AX, S.AX, sec)
        || std::find(S.aut_hat.begin(), S.aut_hat.end(), sec) == S.aut_hat.end()) {
      S.sections_ok = false;
    }
  }
  // stabilizers of A_X: fiber-preserving automorphisms inducing the identity
  // pair; equivalently phi(w) = d(rho w) +_u w for a fiber-valued d
  for (auto const& phi : S.aut_hat) {
    bool ident_on_q = true;
    for (int x = 0; x < S.AX.size(); ++x) {
      if (D.rho[phi[x]] != D.rho[x]) {
        ident_on_q = false;
        break;
      }
    }
    if (!ident_on_q) {
      continue;
    }
    Mapping d    = dmap_of(D, phi);
    bool    stab = true;
    for (int x = 0; x < S.AX.size(); ++x) {
      if (phi[x] != D.add_u(d[D.rho[x]], D.rho[x], x)) {
        stab = false;
        break;
      }
    }
    if (stab) {
      S.stab.push_back(phi);
      S.dmaps.push_back(d);
    }
  }
  return S;
}

}  // namespace

Report decompose_automorphisms(Extension const& E, Mapping const& l, std::vector<int> const& m_table,
                      std::span<Identity const> U) {
  Report R;
  R.analysis = "decompose";
  R.add("witness_satisfies_u", satisfies_all(E.A, U));
  auto [D, T] = deconstruct(E, l, m_table);
  CohomologyGroup H = cohomology_group(D, U);
  auto            C = compatible_pairs(D);

  TwistedSetup S = twisted_setup(D, H, T, C, 0);
  R.sizes        = {{"aut_alpha_hat", static_cast<int>(S.aut_hat.size())},
                    {"der", static_cast<int>(S.stab.size())},
                    {"ker_wells_t", static_cast<int>(S.kernel.size())},
                    {"h2", H.order()}};

  // gamma conjugation identifies Aut_alpha A with the fiber-preserving
  // automorphisms of A_T
  {
    AutList expected;
    Mapping ginv = invert_perm(D.gamma);
    for (auto const& phi : aut_alpha(E)) {
      expected.push_back(compose_maps(D.gamma, compose_maps(phi, ginv)));
    }
    std::sort(expected.begin(), expected.end());
    R.add("gamma_conjugation", expected == S.aut_hat);
  }

  R.add("sections_are_automorphisms", S.sections_ok);

  // the fiber-translation stabilizers of A_T are the gamma transports of the
  // stabilizers of the witness extension
  {
    AutList transported;
    Mapping ginv = invert_perm(D.gamma);
    for (auto const& phi : stabilizers(E, m_table)) {
      transported.push_back(compose_maps(D.gamma, compose_maps(phi, ginv)));
    }
    std::sort(transported.begin(), transported.end());
    R.add("stab_transport", transported == S.stab);
  }

  // psi maps each section back to its kernel pair
  bool lifts = true;
  for (size_t i = 0; i < S.kernel.size(); ++i) {
    // kappa part: induced map on Q through the fibers
    Mapping kappa(D.Q.size());
    for (int q = 0; q < D.Q.size(); ++q) {
      kappa[q] = D.rho[S.sections[i][D.fiber_zero[q]]];
    }
    if (kappa != S.kernel[i].kappa) {
      lifts = false;
    }
    // sigma part: transport through gamma and the witness extension
    Mapping phiA = compose_maps(invert_perm(D.gamma), compose_maps(S.sections[i], D.gamma));
    try {
      CompatiblePair back = psi(E, D, phiA);
      if (!(back == S.kernel[i])) {
        lifts = false;
      }
    } catch (std::logic_error const&) {
      lifts = false;
    }
  }
  R.add("sections_lift_psi", lifts);

  // sigma of every compatible pair respects m_S (needed for the twist action)
  {
    bool resp   = true;
    int  s_size = static_cast<int>(D.rho.size());
    for (auto const& p : C) {
      for (int x = 0; x < s_size && resp; ++x) {
        for (int y = 0; y < s_size && resp; ++y) {
          for (int z = 0; z < s_size; ++z) {
            if (p.sigma[D.m_s(x, y, z)]
                != D.m_s(p.sigma[x], p.sigma[y], p.sigma[z])) {
              resp = false;
              break;
            }
          }
        }
      }
    }
    R.add("sigma_respects_m", resp);
  }

  // Theta: Stab x ker W_T -> Aut_hat bijectively
  std::vector<Mapping> theta;
  for (auto const& s : S.stab) {
    for (auto const& sec : S.sections) {
      theta.push_back(compose_maps(s, sec));
    }
  }
  {
    auto sorted = theta;
    std::sort(sorted.begin(), sorted.end());
    bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    R.add("theta_bijective", distinct && sorted == S.aut_hat,
          std::to_string(S.stab.size()) + " x " + std::to_string(S.kernel.size()) + " = "
              + std::to_string(S.aut_hat.size()));
  }

  // conjugation by sections acts on Stab and matches the twist on d-maps
  bool conj_in_stab = true, action_matches = true;
  for (size_t i = 0; i < S.kernel.size(); ++i) {
    for (size_t j = 0; j < S.stab.size(); ++j) {
      Mapping conj = compose_maps(
          S.sections[i], compose_maps(S.stab[j], invert_perm(S.sections[i])));
      int idx = find_map_index(S.stab, conj);
      if (idx < 0) {
        conj_in_stab = false;
        continue;
      }
      if (S.dmaps[idx] != twist_dmap(D, S.kernel[i], S.dmaps[j])) {
        action_matches = false;
      }
    }
  }
  R.add("conjugation_preserves_der", conj_in_stab);
  R.add("action_matches_twist", action_matches);

  // the factor set Pi lands in Stab and reproduces the group product
  auto kernel_index = [&](CompatiblePair const& p) {
    for (size_t i = 0; i < S.kernel.size(); ++i) {
      if (S.kernel[i] == p) {
        return static_cast<int>(i);
      }
    }
    return -1;
  };
  bool pi_in_stab = true, product_law = true;
  std::map<std::pair<int, int>, int> pi_values;  // (i,j) -> stab index
  for (size_t i = 0; i < S.kernel.size(); ++i) {
    for (size_t j = 0; j < S.kernel.size(); ++j) {
      int ij = kernel_index(pair_compose(S.kernel[i], S.kernel[j]));
      if (ij < 0) {
        pi_in_stab = false;
        continue;
      }
      Mapping pi_map = compose_maps(
          S.sections[i], compose_maps(S.sections[j], invert_perm(S.sections[ij])));
      int idx = find_map_index(S.stab, pi_map);
      if (idx < 0) {
        pi_in_stab = false;
        continue;
      }
      pi_values[{static_cast<int>(i), static_cast<int>(j)}] = idx;
      for (size_t a = 0; a < S.stab.size(); ++a) {
        for (size_t b = 0; b < S.stab.size(); ++b) {
          Mapping lhs = compose_maps(compose_maps(S.stab[a], S.sections[i]),
                                     compose_maps(S.stab[b], S.sections[j]));
          Mapping conj_b = compose_maps(
              S.sections[i], compose_maps(S.stab[b], invert_perm(S.sections[i])));
          Mapping rhs = compose_maps(
              compose_maps(S.stab[a], compose_maps(conj_b, S.stab[idx])),
              S.sections[ij]);
          if (lhs != rhs) {
            product_law = false;
          }
        }
      }
    }
  }
  R.add("pi_valued_in_der", pi_in_stab);
  R.add("semidirect_product_law", product_law);

  // a second choice of witnesses changes Pi by a coboundary only
  {
    TwistedSetup S2      = twisted_setup(D, H, T, C, 1);
    bool         changed = S2.witnesses != S.witnesses;
    bool         cohomologous = false;
    // search beta: ker W_T -> Stab with
    // Pi'(p,q) = beta(p) + p.beta(q) + Pi(p,q) - beta(pq)
    size_t           nk = S.kernel.size();
    std::vector<int> beta(nk, 0);
    while (true) {
      bool match = true;
      for (size_t i = 0; i < nk && match; ++i) {
        for (size_t j = 0; j < nk; ++j) {
          int ij = kernel_index(pair_compose(S.kernel[i], S.kernel[j]));
          Mapping pi2 = compose_maps(
              S2.sections[i], compose_maps(S2.sections[j], invert_perm(S2.sections[ij])));
          Mapping conj_bj = compose_maps(
              S.sections[i], compose_maps(S.stab[beta[j]], invert_perm(S.sections[i])));
          Mapping rhs = compose_maps(
              S.stab[beta[i]],
              compose_maps(conj_bj,
                           compose_maps(S.stab[pi_values[{static_cast<int>(i),
                                                          static_cast<int>(j)}]],
                                        invert_perm(S.stab[beta[ij]]))));
          if (pi2 != rhs) {
            match = false;
            break;
          }
        }
      }
      if (match) {
        cohomologous = true;
        break;
      }
      size_t pos = 0;
      while (pos < nk && ++beta[pos] == static_cast<int>(S.stab.size())) {
        beta[pos++] = 0;
      }
      if (pos == nk) {
        break;
      }
    }
    R.add("pi_class_witness_independent", cohomologous,
          changed ? "second witness differs" : "single witness");
  }

  // additivity of Pi on ker W, via additivity of the coboundary witnesses
  {
    auto kw = ker_w(D, H, C);
    bool h_additive = true, pi_additive = true;
    for (int c1 : kw) {
      for (int c2 : kw) {
        TwoCocycle X  = H.rep_cocycle(c1);
        TwoCocycle Y  = H.rep_cocycle(c2);
        TwoCocycle XY = cocycle_add(D, X, Y);
        TwistedSetup SX = twisted_setup(D, H, X, C, 0);
        TwistedSetup SY = twisted_setup(D, H, Y, C, 0);
        TwistedSetup SXY = twisted_setup(D, H, XY, C, 0);
        if (SX.kernel != SY.kernel || SX.kernel != SXY.kernel) {
          h_additive = false;
          continue;
        }
        // witness sums witness the sum cocycle
        for (size_t i = 0; i < SX.kernel.size(); ++i) {
          Mapping hsum(D.Q.size());
          for (int q = 0; q < D.Q.size(); ++q) {
            hsum[q] = D.add_u(SX.witnesses[i][q], q, SY.witnesses[i][q]);
          }
          if (!is_coboundary_witness(D, act(D, XY, SX.kernel[i]), XY, hsum)) {
            h_additive = false;
          }
        }
        // d-map valued factor sets: [Pi_XY] = [Pi_X + Pi_Y]
        auto dpi = [&](TwistedSetup const& W, size_t i, size_t j) {
          int ij = -1;
          for (size_t t = 0; t < W.kernel.size(); ++t) {
            if (W.kernel[t] == pair_compose(W.kernel[i], W.kernel[j])) {
              ij = static_cast<int>(t);
            }
          }
          Mapping pi_map = compose_maps(
              W.sections[i], compose_maps(W.sections[j], invert_perm(W.sections[ij])));
          return dmap_of(D, pi_map);
        };
        size_t           nk = SX.kernel.size();
        std::set<Mapping> dset(SX.dmaps.begin(), SX.dmaps.end());
        std::vector<Mapping> ders(dset.begin(), dset.end());
        std::vector<int>     beta(nk, 0);
        bool                 found = false;
        while (!found) {
          bool match = true;
          for (size_t i = 0; i < nk && match; ++i) {
            for (size_t j = 0; j < nk; ++j) {
              int ij = -1;
              for (size_t t = 0; t < nk; ++t) {
                if (SX.kernel[t] == pair_compose(SX.kernel[i], SX.kernel[j])) {
                  ij = static_cast<int>(t);
                }
              }
              Mapping lhs = dpi(SXY, i, j);
              Mapping sum = dpi(SX, i, j);
              Mapping dy  = dpi(SY, i, j);
              Mapping tw  = twist_dmap(D, SX.kernel[i], ders[beta[j]]);
              for (int q = 0; q < D.Q.size(); ++q) {
                int rhs = D.add_u(sum[q], q, dy[q]);
                rhs     = D.add_u(rhs, q, ders[beta[i]][q]);
                rhs     = D.add_u(rhs, q, tw[q]);
                rhs     = D.sub_u(rhs, q, ders[beta[ij]][q]);
                if (lhs[q] != rhs) {
                  match = false;
                  break;
                }
              }
              if (!match) {
                break;
              }
            }
          }
          if (match) {
            found = true;
            break;
          }
          size_t pos = 0;
          while (pos < nk && ++beta[pos] == static_cast<int>(ders.size())) {
            beta[pos++] = 0;
          }
          if (pos == nk) {
            break;
          }
        }
        if (!found) {
          pi_additive = false;
        }
      }
    }
    R.add("pi_additive_on_ker_w", h_additive && pi_additive,
          "ker W has " + std::to_string(kw.size()) + " classes");
  }

  // split case: the plain sigma-sections reproduce the coset product law
  if (T == zero_cocycle(D)) {
    bool law = true;
    auto residual = [&](Mapping const& phi, CompatiblePair const& p) {
      return compose_maps(phi, invert_perm(p.sigma));
    };
    for (auto const& phi1 : S.aut_hat) {
      Mapping phiA1 = compose_maps(invert_perm(D.gamma), compose_maps(phi1, D.gamma));
      CompatiblePair p1 = psi(E, D, phiA1);
      Mapping        d1 = dmap_of(D, residual(phi1, p1));
      for (auto const& phi2 : S.aut_hat) {
        Mapping phiA2 = compose_maps(invert_perm(D.gamma), compose_maps(phi2, D.gamma));
        CompatiblePair p2  = psi(E, D, phiA2);
        Mapping        d2  = dmap_of(D, residual(phi2, p2));
        Mapping        d12 = dmap_of(D, residual(compose_maps(phi1, phi2),
                                                 pair_compose(p1, p2)));
        Mapping tw = twist_dmap(D, p1, d2);
        for (int q = 0; q < D.Q.size(); ++q) {
          if (d12[q] != D.add_u(d1[q], q, tw[q])) {
            law = false;
          }
        }
      }
    }
    R.add("split_coset_product_law", law,
          std::to_string(S.aut_hat.size()) + "^2 composition pairs");
  }

  R.add("sizes", true, join_sizes(R.sizes));
  return R;
}

Report central_simplification(Extension const& E, Mapping const& l,
                              std::vector<int> const& m_table) {
  Report R;
  R.analysis = "central";
  int  n     = E.A.size();
  auto m     = [&](int x, int y, int z) {
    return m_table[(static_cast<size_t>(x) * n + y) * n + z];
  };

  bool central = is_central(E.A, E.alpha);
  bool idem    = false;
  for (int v = 0; v < E.Q.size() && !idem; ++v) {
    bool all = true;
    for (size_t s = 0; s < E.Q.signature().size(); ++s) {
      std::vector<int> tup(E.Q.signature()[s].arity, v);
      if (E.Q.apply(s, tup) != v) {
        all = false;
        break;
      }
    }
    idem = all;
  }
  bool diff_term = true;
  for (int x = 0; x < n && diff_term; ++x) {
    for (int y = 0; y < n; ++y) {
      if (m(x, x, y) != y) {
        diff_term = false;
        break;
      }
      if (E.alpha.related(x, y) && m(x, y, y) != x) {
        diff_term = false;
        break;
      }
    }
  }
  bool affine = diff_term && check_affine(E, m_table);
  if (!central || !idem || !affine) {
    R.applicable = false;
    R.add("preconditions", true,
          std::string("not applicable: ") + (central ? "" : "alpha not central; ")
              + (idem ? "" : "Q has no idempotent element; ")
              + (affine ? "" : "m is not an affine difference operation"));
    return R;
  }

  auto [D, T] = deconstruct(E, l, m_table);
  PairAlgebra P  = build_pair_algebra(E);
  auto        Q1 = quotient(P.P, P.delta_a1);

  // the diagonal elements form a single Delta_a1 class
  int  dhat = Q1.projection[P.index_of(0, 0, n)];
  bool single = true;
  for (int a = 0; a < n; ++a) {
    if (Q1.projection[P.index_of(a, a, n)] != dhat) {
      single = false;
    }
  }
  R.add("diagonal_class_singleton", single);

  // canonical epimorphism S -> A(alpha)/Delta_a1
  auto    quo_aa = quotient(P.P, P.delta_aa);
  Mapping phi_can(D.rho.size(), -1);
  bool    can_ok = true;
  for (int i = 0; i < P.P.size(); ++i) {
    int src = quo_aa.projection[i];
    int dst = Q1.projection[i];
    if (phi_can[src] == -1) {
      phi_can[src] = dst;
    } else if (phi_can[src] != dst) {
      can_ok = false;
    }
  }
  R.add("delta_aa_below_delta_a1", can_ok);

  AutList aut0;
  for (auto const& s : find_automorphisms(Q1.algebra)) {
    if (s[dhat] == dhat) {
      aut0.push_back(s);
    }
  }
  auto    autq = find_automorphisms(E.Q);
  auto    C    = compatible_pairs(D);
  R.sizes      = {{"compatible_pairs", static_cast<int>(C.size())},
                  {"aut0", static_cast<int>(aut0.size())},
                  {"aut_q", static_cast<int>(autq.size())}};

  // sigma-hat: the map induced on A(alpha)/Delta_a1
  bool well_defined = true, hom = true, bijective = true;
  std::set<std::pair<Mapping, Mapping>> image;
  std::vector<Mapping>                  sigma_hats;
  for (auto const& p : C) {
    Mapping sh(Q1.algebra.size(), -1);
    for (size_t x = 0; x < D.rho.size(); ++x) {
      int src = phi_can[x];
      int dst = phi_can[p.sigma[x]];
      if (sh[src] == -1) {
        sh[src] = dst;
      } else if (sh[src] != dst) {
        well_defined = false;
      }
    }
    sigma_hats.push_back(sh);
    if (find_map_index(aut0, sh) < 0) {
      hom = false;
    }
    image.insert({sh, p.kappa});
  }
  R.add("sigma_hat_well_defined", well_defined);
  R.add("sigma_hat_in_aut0", hom);

  // the proposition's psi is a group isomorphism onto Aut0 x Aut Q
  bool psi_hom = true;
  for (size_t i = 0; i < C.size(); ++i) {
    for (size_t j = 0; j < C.size(); ++j) {
      int ij = -1;
      for (size_t t = 0; t < C.size(); ++t) {
        if (C[t] == pair_compose(C[i], C[j])) {
          ij = static_cast<int>(t);
        }
      }
      if (ij < 0 || sigma_hats[ij] != compose_maps(sigma_hats[i], sigma_hats[j])) {
        psi_hom = false;
      }
    }
  }
  R.add("prop_psi_homomorphism", psi_hom);
  bijective = image.size() == C.size()
              && image.size() == aut0.size() * autq.size();
  R.add("prop_psi_bijective", bijective,
        std::to_string(C.size()) + " = " + std::to_string(aut0.size()) + " x "
            + std::to_string(autq.size()));

  // eta: S = A(alpha)/Delta_a1 x Q
  {
    FiniteAlgebra prod = direct_product(Q1.algebra, E.Q);
    Mapping       eta(D.rho.size());
    for (size_t x = 0; x < D.rho.size(); ++x) {
      eta[x] = phi_can[x] * E.Q.size() + D.rho[x];
    }
    std::set<int> hit(eta.begin(), eta.end());
    R.add("eta_isomorphism",
          static_cast<int>(hit.size()) == prod.size()
              && prod.size() == static_cast<int>(D.rho.size())
              && is_homomorphism(D.S, prod, eta));
  }

  R.add("sizes", true, join_sizes(R.sizes));
  return R;
}

}  // namespace affina
