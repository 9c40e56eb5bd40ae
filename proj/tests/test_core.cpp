#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ict/cw.hpp"

using namespace ict;

TEST_CASE("matrix basics") {
  zmat a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(1, 0) = 3;
  a(1, 1) = 4;
  CHECK(det_bareiss(a) == -2);
  zmat u = random_unimodular(5, 7);
  CHECK(det_bareiss(u) * det_bareiss(u) == 1);
  zmat ui = inv_unimodular(u);
  CHECK(u * ui == zmat::identity(5));
  qmat k = kernel_q(to_q(a));
  CHECK(k.cols == 0);
  qmat b(2, 2);
  b(0, 0) = 1;
  b(0, 1) = 2;
  b(1, 0) = 2;
  b(1, 1) = 4;
  CHECK(rank_q(b) == 1);
  CHECK(kernel_q(b).cols == 1);
  CHECK(det_q(b) == 0);
}

TEST_CASE("circle chain complex") {
  chain_complex C = make_chain_complex(circle_simplicial().to_cw());
  CHECK(C.top == 1);
  CHECK(C.dim(0) == 3);
  CHECK(C.dim(1) == 3);
  CHECK(rank_q(to_q(C.bd(1))) == 2);
  CHECK(C.euler() == 0);
}

TEST_CASE("tetrahedron boundary") {
  chain_complex C = make_chain_complex(sphere2_simplicial().to_cw());
  CHECK(C.dim(0) == 4);
  CHECK(C.dim(1) == 6);
  CHECK(C.dim(2) == 4);
  CHECK(rank_q(to_q(C.bd(2))) == 3);
  CHECK((C.bd(1) * C.bd(2)).is_zero());
  CHECK(C.euler() == 2);
}

TEST_CASE("geometric cone is contractible and boundary squares to zero") {
  auto [CK, inc] = cone(circle_simplicial().to_cw());
  chain_complex C = make_chain_complex(CK);
  C.check();
  inc.check();
  CHECK(C.euler() == 1);
  // rank of H_0 = 1, H_1 = H_2 = 0
  size_t r1 = rank_q(to_q(C.bd(1))), r2 = rank_q(to_q(C.bd(2)));
  CHECK(C.dim(0) - r1 == 1);
  CHECK(C.dim(1) - r1 - r2 == 0);
  CHECK(C.dim(2) - r2 == 0);
  CHECK(CK.singular.count("@") == 1);
  CHECK(CK.subcomplexes.at("base").size() == 6);
}

TEST_CASE("mapping cone matches relative chain ranks") {
  auto A = annulus_simplicial().to_cw();
  auto inner = annulus_inner_circle();
  std::set<std::string> L(inner.begin(), inner.end());
  chain_inclusion inc = subcomplex_inclusion(A, L);
  chain_complex M = mapping_cone(inc);
  chain_complex R = relative_chain(A, L);
  // Both compute H(annulus, inner circle) = H(disk, boundary)-like ranks:
  // H_0 = 0, H_1 = 0, H_2 = 0 for annulus rel one boundary circle.
  auto betti = [](const chain_complex& C) {
    std::vector<long> b;
    std::vector<size_t> r(C.top + 2, 0);
    for (int q = 1; q <= C.top; ++q) r[q] = rank_q(to_q(C.bd(q)));
    for (int q = 0; q <= C.top; ++q) b.push_back(long(C.dim(q)) - long(r[q]) - long(r[q + 1]));
    return b;
  };
  auto bm = betti(M), br = betti(R);
  for (int q = 0; q <= R.top; ++q) CHECK(bm[q] == br[q]);
  for (long v : br) CHECK(v == 0);
}

TEST_CASE("parser round trip and errors") {
  std::string good =
      "dim 1\n"
      "cell v 0\n"
      "cell w 0\n"
      "cell e 1 [v:-1,w:1]\n"
      "subcomplex ends v w\n";
  cw_complex K = parse_complex(good);
  CHECK(K.cells.size() == 3);
  cw_complex K2 = parse_complex(serialize_complex(K));
  CHECK(serialize_complex(K) == serialize_complex(K2));

  CHECK_THROWS_AS(parse_complex("dim 1\ncell e 1 [v:1]\n"), validation_error);
  CHECK_THROWS_AS(parse_complex("cell v 0\n"), parse_error);
  CHECK_THROWS_AS(parse_complex("dim 1\ncell v 0\ncell v 0\n"), validation_error);
  // boundary squared nonzero
  std::string bad2 =
      "dim 2\n"
      "cell v 0\ncell w 0\n"
      "cell e 1 [v:-1,w:1]\ncell f 1 [v:-1,w:1]\n"
      "cell s 2 [e:1,f:1]\n";
  CHECK_THROWS_AS(parse_complex(bad2), validation_error);
}

TEST_CASE("barycentric subdivision of the torus") {
  auto T = torus2_simplicial();
  chain_complex C = make_chain_complex(T.to_cw());
  CHECK(C.dim(0) == 9);
  CHECK(C.dim(1) == 27);
  CHECK(C.dim(2) == 18);
  subdivision S = barycentric(T);
  chain_complex CS = make_chain_complex(S.sd);
  CHECK(CS.euler() == 0);
  CHECK(CS.dim(0) == 9 + 27 + 18);
  CHECK(CS.dim(2) == 6 * 18);
  // chain map property is asserted inside barycentric(); spot-check injectivity
  CHECK(rank_q(to_q(S.sd_map[2])) == 18);
}

TEST_CASE("projective plane counts") {
  chain_complex C = make_chain_complex(rp2_simplicial().to_cw());
  CHECK(C.dim(0) == 6);
  CHECK(C.dim(1) == 15);
  CHECK(C.dim(2) == 10);
  CHECK(C.euler() == 1);
}
