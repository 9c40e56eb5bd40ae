#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ict/intersection.hpp"

using namespace ict;

TEST_CASE("perversity constructors") {
  auto m4 = perversity::lower_middle(4);
  CHECK(m4.v == std::vector<int>{0, 0, 1});
  CHECK(perversity::zero(3).v == std::vector<int>{0, 0});
  CHECK(m4.complement().v == std::vector<int>{0, 1, 1});
  CHECK(perversity::top(4).v == std::vector<int>{0, 1, 2});
  CHECK_THROWS_AS(perversity::custom(3, {0, 2}), invalid_perversity);
  CHECK_THROWS_AS(perversity::custom(3, {1, 1}), invalid_perversity);
}

TEST_CASE("allowability on the circle cone") {
  auto [CK, inc] = cone(circle_simplicial().to_cw());
  auto p = perversity::zero(2);  // a = 2
  CHECK(allowable(CK, "0.1", p));      // base cell, closure misses the apex
  CHECK(allowable(CK, "@0.1", p));     // dim 2 >= a
  CHECK_FALSE(allowable(CK, "@0", p)); // dim 1 < a
  CHECK_FALSE(allowable(CK, "@", p));  // the apex vertex itself
}

static std::vector<homology_group> ih(const chain_complex& W, const perversity& p, bool rel) {
  return intersection_homology(intersection_cone_complex(W, p, rel));
}

TEST_CASE("circle cone closed forms") {
  chain_complex W = make_chain_complex(circle_simplicial().to_cw());
  auto p = perversity::zero(2);
  auto ha = ih(W, p, false);
  CHECK(ha[0] == homology_group{1, {}});
  CHECK(ha[1] == homology_group{0, {}});
  CHECK(ha[2] == homology_group{0, {}});
  auto hr = ih(W, p, true);
  CHECK(hr[0] == homology_group{0, {}});
  CHECK(hr[1] == homology_group{0, {}});
  CHECK(hr[2] == homology_group{1, {}});
}

TEST_CASE("torus cone, both middle perversities") {
  chain_complex W = make_chain_complex(torus2_simplicial().to_cw());
  auto m = perversity::lower_middle(3);   // (0,0), a = 3
  auto mc = m.complement();               // (0,1), a = 2
  auto hm = ih(W, m, false);
  CHECK(hm[0] == homology_group{1, {}});
  CHECK(hm[1] == homology_group{2, {}});
  CHECK(hm[2] == homology_group{0, {}});
  CHECK(hm[3] == homology_group{0, {}});
  auto hc = ih(W, mc, false);
  CHECK(hc[0] == homology_group{1, {}});
  CHECK(hc[1] == homology_group{0, {}});
  CHECK(hc[2] == homology_group{0, {}});
  CHECK(hc[3] == homology_group{0, {}});
}

TEST_CASE("projective plane cone keeps the torsion class below the cutoff") {
  chain_complex W = make_chain_complex(rp2_simplicial().to_cw());
  auto m = perversity::lower_middle(3);  // a = 3: keeps q <= 1
  auto hm = ih(W, m, false);
  CHECK(hm[0] == homology_group{1, {}});
  CHECK(hm[1] == homology_group{0, {2}});
  CHECK(hm[2] == homology_group{0, {}});
  auto mc = m.complement();  // a = 2: keeps q <= 0
  auto hc = ih(W, mc, false);
  CHECK(hc[0] == homology_group{1, {}});
  CHECK(hc[1] == homology_group{0, {}});
}

TEST_CASE("structural block equalities") {
  chain_complex W = make_chain_complex(torus2_simplicial().to_cw());
  auto X = intersection_cone_complex(W, perversity::lower_middle(3), false);
  // below the cutoff the boundary is literally the section boundary
  for (int q = 1; q <= X.a - 1; ++q) CHECK(X.C.bd(q) == W.bd(q));
  // above a+1 the cone blocks appear verbatim
  for (int q = X.a + 2; q <= X.n; ++q) {
    for (size_t i = 0; i < W.dim(q - 2); ++i)
      for (size_t j = 0; j < W.dim(q - 1); ++j) CHECK(X.C.bd(q)(i, j) == W.bd(q - 1)(i, j));
    for (size_t i = 0; i < W.dim(q - 1); ++i)
      for (size_t j = 0; j < W.dim(q); ++j)
        CHECK(X.C.bd(q)(W.dim(q - 2) + i, W.dim(q - 1) + j) == -W.bd(q)(i, j));
  }
}

TEST_CASE("duality of ranks") {
  chain_complex S1 = make_chain_complex(circle_simplicial().to_cw());
  duality_ranks_check(S1, perversity::zero(2));
  chain_complex T2 = make_chain_complex(torus2_simplicial().to_cw());
  auto rep = duality_ranks_check(T2, perversity::lower_middle(3));
  CHECK(rep.abs_rank[1] == 2);
  CHECK(rep.rel_rank[2] == 2);
  duality_ranks_check(T2, perversity::lower_middle(3).complement());
  chain_complex S2 = make_chain_complex(sphere2_simplicial().to_cw());
  duality_ranks_check(S2, perversity::lower_middle(3));
}

TEST_CASE("mapping cone: identity inclusion reduces to the cone") {
  auto S1 = circle_simplicial().to_cw();
  std::set<std::string> all;
  for (auto& c : S1.cells) all.insert(c.id);
  chain_inclusion id = subcomplex_inclusion(S1, all);
  auto p = perversity::zero(2);
  auto Xm = intersection_mapping_cone(id, p);
  auto Xc = intersection_cone_complex(id.source, p, false);
  auto hm = intersection_homology(Xm);
  auto hcn = intersection_homology(Xc);
  for (int q = 0; q <= 2; ++q) CHECK(hm[q] == hcn[q]);
}

TEST_CASE("annulus with one boundary coned: disk homology") {
  auto A = annulus_simplicial().to_cw();
  auto inner = annulus_inner_circle();
  chain_inclusion inc = subcomplex_inclusion(A, std::set<std::string>(inner.begin(), inner.end()));
  auto X = intersection_mapping_cone(inc, perversity::zero(2));
  auto h = intersection_homology(X);
  CHECK(h[0] == homology_group{1, {}});
  CHECK(h[1] == homology_group{0, {}});
  CHECK(h[2] == homology_group{0, {}});
}

TEST_CASE("subdivision invariance of intersection homology") {
  auto S = circle_simplicial();
  chain_complex W = make_chain_complex(S.to_cw());
  chain_complex Ws = make_chain_complex(barycentric(S).sd);
  auto p = perversity::zero(2);
  for (bool rel : {false, true}) {
    auto h1 = ih(W, p, rel);
    auto h2 = ih(Ws, p, rel);
    for (int q = 0; q <= 2; ++q) CHECK(h1[q] == h2[q]);
  }
  auto T = torus2_simplicial();
  chain_complex W2 = make_chain_complex(T.to_cw());
  chain_complex W2s = make_chain_complex(barycentric(T).sd);
  for (auto pp : {perversity::lower_middle(3), perversity::lower_middle(3).complement()}) {
    auto h1 = ih(W2, pp, false);
    auto h2 = ih(W2s, pp, false);
    for (int q = 0; q <= 3; ++q) CHECK(h1[q] == h2[q]);
  }
}

TEST_CASE("degreewise exactness for a split union of sections") {
  auto one = circle_simplicial();
  auto two = simplicial_complex::from_facets({{0, 1}, {1, 2}, {0, 2}, {10, 11}, {11, 12}, {10, 12}});
  chain_complex Wa = make_chain_complex(one.to_cw());
  chain_complex Wab = make_chain_complex(two.to_cw());
  auto p = perversity::zero(2);
  auto Xa = intersection_cone_complex(Wa, p, false);
  auto Xab = intersection_cone_complex(Wab, p, false);
  for (int q = 0; q <= 2; ++q) CHECK(Xab.C.dim(q) == 2 * Xa.C.dim(q));
}
