#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "affina/datum.hpp"
#include "helpers.hpp"

using namespace affina;
using namespace affina::testing;

namespace {

Extension z4_ext() {
  return Extension::make(cyclic_group(4), Congruence::from_blocks(4, {{0, 2}, {1, 3}}));
}

Extension v4_ext() {
  // first-factor kernel: blocks {0,1}, {2,3} in the a*2+b indexing
  return Extension::make(klein_four(), Congruence::from_blocks(4, {{0, 1}, {2, 3}}));
}

}  // namespace

TEST_CASE("build_pair_algebra sizes and distinguished congruences") {
  Extension   E = z4_ext();
  PairAlgebra P = build_pair_algebra(E);
  CHECK(P.P.size() == 8);
  CHECK(P.delta_aa.num_blocks() == 4);
  CHECK(P.delta_a1.num_blocks() == 2);
  CHECK(P.alpha_hat.num_blocks() == 2);
  CHECK(is_compatible(P.P, P.delta_aa));
  CHECK(is_compatible(P.P, P.delta_a1));
  CHECK(is_compatible(P.P, P.alpha_hat));

  // oracle: the generated congruences agree with the exhaustive meet over
  // all compatible partitions containing the generating pairs
  std::vector<std::pair<int, int>> diag_alpha, diag_all;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      int ia = P.index_of(a, a, 4);
      int ib = P.index_of(b, b, 4);
      if (E.alpha.related(a, b)) {
        diag_alpha.emplace_back(ia, ib);
      }
      diag_all.emplace_back(ia, ib);
    }
  }
  CHECK(P.delta_aa == oracle_generated_congruence(P.P, diag_alpha));
  CHECK(P.delta_a1 == oracle_generated_congruence(P.P, diag_all));

  Extension   Ev = v4_ext();
  PairAlgebra Pv = build_pair_algebra(Ev);
  CHECK(Pv.P.size() == 8);
  CHECK(Pv.delta_a1.num_blocks() == 2);

  // identity congruence: the pair algebra is the diagonal copy of A
  Extension   Eid = Extension::make(cyclic_group(4), Congruence::identity(4));
  PairAlgebra Pid = build_pair_algebra(Eid);
  CHECK(Pid.P.size() == 4);
  CHECK(Pid.delta_aa == Congruence::identity(4));
  CHECK(find_isomorphism(Pid.P, Eid.A).has_value());
}

TEST_CASE("check_affine") {
  Extension        E = z4_ext();
  std::vector<int> m = difference_table(E.A);
  CHECK(check_affine(E, m));

  // first projection fails m(x,x,y) = y
  std::vector<int> proj(64);
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) {
      for (int z = 0; z < 4; ++z) {
        proj[(x * 4 + y) * 4 + z] = x;
      }
    }
  }
  CHECK_FALSE(check_affine(E, proj));

  // alpha = identity: any idempotent Mal'cev-on-singletons table passes;
  // m(x,y,z) = x is Mal'cev on singleton classes
  Extension Eid = Extension::make(symmetric_group_3(), Congruence::identity(6));
  std::vector<int> proj6(216);
  for (int x = 0; x < 6; ++x) {
    for (int y = 0; y < 6; ++y) {
      for (int z = 0; z < 6; ++z) {
        proj6[(x * 6 + y) * 6 + z] = x;
      }
    }
  }
  CHECK(check_affine(Eid, proj6));

  // S3 over A3: abelian kernel, xy^{-1}z works
  Extension Es3 = Extension::make(symmetric_group_3(),
                                  generate_congruence(symmetric_group_3(), {{0, 3}}));
  CHECK(check_affine(Es3, difference_table(Es3.A)));
}

TEST_CASE("deconstruct on Z4 -> Z2") {
  Extension E = z4_ext();
  Mapping   l{0, 1};
  auto [D, T] = deconstruct(E, l, difference_table(E.A));

  CHECK(D.S.size() == 4);
  CHECK(D.rho == std::vector<int>{0, 0, 1, 1});
  CHECK(D.fiber_zero == std::vector<int>{0, 2});
  CHECK(D.delta == std::vector<int>{0, 2, 0, 2});
  CHECK(D.gamma == Mapping{0, 2, 1, 3});

  // frozen from the explicit class computation: classes in least-pair order
  // are [0;0], [0;2], [1;1], [1;3]
  CHECK(D.rep == std::vector<std::pair<int, int>>{{0, 0}, {0, 2}, {1, 1}, {1, 3}});

  int plus = E.A.signature().index_of("+");
  int minus = E.A.signature().index_of("-");
  int zero = E.A.signature().index_of("0");
  CHECK(T.comp[plus] == std::vector<int>{0, 2, 2, 1});
  CHECK(T.comp[minus] == std::vector<int>{0, 3});
  CHECK(T.comp[zero] == std::vector<int>{0});
  CHECK(fiber_respecting(D, T));
  CHECK(T.comp[plus][3] != D.fiber_zero[0]);  // T_+(1,1) != delta(l(0))

  // fibers with +_u are abelian groups with the delta(l(q)) zeros: the
  // builder verifies this; spot-check the Z2 structure of fiber 0
  CHECK(D.add_u(1, 0, 1) == 0);
  CHECK(D.add_u(0, 0, 1) == 1);
  CHECK(D.fiber_neg[1] == 1);
}

TEST_CASE("deconstruct of a split extension gives the zero cocycle") {
  Extension E = v4_ext();
  Mapping   l{0, 2};  // q -> (q, 0): indices 0 and 2
  auto [D, T] = deconstruct(E, l, difference_table(E.A));
  CHECK(T == zero_cocycle(D));
}

TEST_CASE("semidirect and reconstruct") {
  Extension E = z4_ext();
  Mapping   l{0, 1};
  auto [D, T] = deconstruct(E, l, difference_table(E.A));

  FiniteAlgebra SD = semidirect(D);
  // the semidirect tables coincide with the quotient pair algebra
  CHECK(SD == D.S);
  // and the split extension it encodes is Z2 x Z2, not Z4
  CHECK(find_isomorphism(SD, klein_four()).has_value());
  CHECK_FALSE(find_isomorphism(SD, E.A).has_value());

  FiniteAlgebra AT = reconstruct(D, T);
  CHECK(is_homomorphism(E.A, AT, D.gamma));
  CHECK(find_isomorphism(AT, E.A).has_value());

  // zero cocycle reconstructs the semidirect product
  CHECK(reconstruct(D, zero_cocycle(D)) == SD);

  // T + T is a coboundary: the reconstruction drops back to Z2 x Z2
  FiniteAlgebra A2T = reconstruct(D, cocycle_add(D, T, T));
  CHECK(find_isomorphism(A2T, klein_four()).has_value());

  // rho is a homomorphism onto Q for both reconstructions
  for (FiniteAlgebra const& B : {SD, AT}) {
    CHECK(is_compatible(B, fiber_congruence(D)));
    for (size_t s = 0; s < B.signature().size(); ++s) {
      int              k = B.signature()[s].arity;
      std::vector<int> tup(k, 0), img(k);
      do {
        for (int i = 0; i < k; ++i) {
          img[i] = D.rho[tup[i]];
        }
        CHECK(D.rho[B.apply(s, tup)] == D.Q.apply(s, img));
      } while (next_tuple(tup, B.size()));
    }
  }
}

TEST_CASE("round trip over several extensions and liftings") {
  std::vector<Extension> exts;
  exts.push_back(z4_ext());
  exts.push_back(v4_ext());
  exts.push_back(Extension::make(cyclic_group(4), Congruence::identity(4)));
  exts.push_back(Extension::make(cyclic_group(4), Congruence::full(4)));
  exts.push_back(Extension::make(symmetric_group_3(),
                                 generate_congruence(symmetric_group_3(), {{0, 3}})));
  exts.push_back(Extension::make(cyclic_group(8),
                                 generate_congruence(cyclic_group(8), {{0, 4}})));
  for (auto const& E : exts) {
    std::vector<int> m = difference_table(E.A);
    REQUIRE(check_affine(E, m));
    for (auto const& l : all_liftings(E)) {
      auto [D, T] = deconstruct(E, l, m);
      FiniteAlgebra AT = reconstruct(D, T);
      CHECK(is_homomorphism(E.A, AT, D.gamma));
      std::vector<bool> hit(AT.size(), false);
      for (int a = 0; a < E.A.size(); ++a) {
        hit[D.gamma[a]] = true;
      }
      CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
    }
  }
}

TEST_CASE("one element quotient: semidirect is the fiber group") {
  Extension E = Extension::make(cyclic_group(4), Congruence::full(4));
  auto [D, T] = deconstruct(E, Mapping{0}, difference_table(E.A));
  CHECK(D.Q.size() == 1);
  CHECK(D.S.size() == 4);
  CHECK(find_isomorphism(semidirect(D), cyclic_group(4)).has_value());
}

TEST_CASE("find_difference_term") {
  Extension E = z4_ext();
  auto      m = find_difference_term(E);
  REQUIRE(m.has_value());
  CHECK(check_affine(E, *m));
  // x - y + z is among the height-3 terms, so the search must succeed and
  // the result must be alpha-Mal'cev
  auto mv = *m;
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) {
      if (!E.alpha.related(x, y)) {
        continue;
      }
      CHECK(mv[(x * 4 + x) * 4 + y] == y);
      CHECK(mv[(x * 4 + y) * 4 + y] == x);
    }
  }

  Extension Emod = Extension::make(vector_space(3, 2),
                                   generate_congruence(vector_space(3, 2), {{0, 3}}));
  auto      mm   = find_difference_term(Emod);
  REQUIRE(mm.has_value());
  CHECK(check_affine(Emod, *mm));
}

TEST_CASE("find_difference_term reports failure where no term works") {
  // meet-semilattice terms are projections and meets; none is Mal'cev on the
  // full congruence
  FiniteAlgebra meet(Signature({{"^", 2}}), 2, {{0, 0, 0, 1}});
  Extension     E = Extension::make(meet, Congruence::full(2));
  CHECK_FALSE(find_difference_term(E).has_value());
}

TEST_CASE("reconstruct rejects a cocycle violating the fiber condition") {
  Extension E = z4_ext();
  auto [D, T] = deconstruct(E, Mapping{0, 1}, difference_table(E.A));
  TwoCocycle bad = T;
  bad.comp[0][0] = D.fibers[1][0];  // wrong fiber for T_+(0,0)
  CHECK_THROWS_AS(reconstruct(D, bad), std::invalid_argument);
}

TEST_CASE("cocycles of different liftings are exact lifting cocycles") {
  Extension E = z4_ext();
  Mapping   l{0, 1};
  auto [D, T] = deconstruct(E, l, difference_table(E.A));
  Mapping l2{2, 3};
  TwoCocycle T2 = cocycle_of_lifting(D, E, l2);
  CHECK(fiber_respecting(D, T2));
  CHECK_FALSE(T2 == T);
  // the shifted-lifting cocycle still reconstructs an algebra isomorphic to A
  CHECK(find_isomorphism(reconstruct(D, T2), E.A).has_value());
}
