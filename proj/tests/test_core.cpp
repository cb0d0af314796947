#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "rumple/iso.hpp"
#include "rumple/magma.hpp"
#include "rumple/permgroup.hpp"

using namespace rumple;
using fixtures::thrown_code;

TEST_CASE("from_table validates shape and range") {
  REQUIRE(fixtures::x41().n == 4);
  Magma one = from_table(1, {{0}});
  REQUIRE(one.at(0, 0) == 0);
  REQUIRE(thrown_code([] { from_table(2, {{0, 1}, {0, 2}}); }) == errc::entry_out_of_range);
  REQUIRE(thrown_code([] { from_table(2, {{0, 1}}); }) == errc::dimension_mismatch);
  REQUIRE(thrown_code([] { from_table(2, {{0, 1}, {0}}); }) == errc::dimension_mismatch);
}

TEST_CASE("left and full quasigroup predicates") {
  REQUIRE(is_left_quasigroup(fixtures::projection(5)));
  REQUIRE(is_left_quasigroup(fixtures::x41()));
  REQUIRE_FALSE(is_left_quasigroup(from_table(2, {{0, 0}, {1, 1}})));

  REQUIRE(is_quasigroup(fixtures::x42()));
  REQUIRE_FALSE(is_quasigroup(fixtures::projection(3)));
  REQUIRE(is_quasigroup(fixtures::cyclic_group(3)));
  REQUIRE_FALSE(is_quasigroup(fixtures::tworeps()));
}

TEST_CASE("divisions solve their defining equations") {
  Magma X = fixtures::x41();
  REQUIRE(left_divide(X, 1, 0) == 3);
  REQUIRE(X.at(1, 3) == 0);
  REQUIRE(right_divide(X, 0, 1) == 2);
  REQUIRE(X.at(2, 1) == 0);
  Magma P = fixtures::projection(4);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) REQUIRE(left_divide(P, x, y) == y);
  REQUIRE(thrown_code([&] { left_divide(from_table(2, {{0, 0}, {1, 1}}), 0, 1); }) ==
          errc::not_left_quasigroup);
  REQUIRE(thrown_code([&] { right_divide(fixtures::tworeps(), 0, 1); }) == errc::not_quasigroup);

  Magma D = left_division_table(X);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) REQUIRE(D.at(x, y) == left_divide(X, x, y));
}

TEST_CASE("left and right Rump identities") {
  REQUIRE(satisfies_left_rump(fixtures::x41()));
  REQUIRE(satisfies_left_rump(fixtures::projection(4)));
  REQUIRE_FALSE(satisfies_left_rump(fixtures::cyclic_group(3)));

  REQUIRE(satisfies_right_rump(fixtures::x41()));
  REQUIRE(satisfies_right_rump(fixtures::x42()));
  REQUIRE_FALSE(satisfies_right_rump(fixtures::projection(2)));
  REQUIRE_FALSE(satisfies_right_rump(fixtures::projection(5)));
}

TEST_CASE("squaring map and unique 2-divisibility") {
  Magma X = fixtures::x41();
  REQUIRE(squaring_map(X) == std::vector<int>{0, 3, 2, 1});
  REQUIRE(is_uniquely_2_divisible(X));
  REQUIRE(squaring_map(fixtures::projection(3)) == std::vector<int>{0, 1, 2});
  Magma flip = from_table(2, {{0, 1}, {1, 0}});
  REQUIRE(squaring_map(flip) == std::vector<int>{0, 0});
  REQUIRE_FALSE(is_uniquely_2_divisible(flip));
}

TEST_CASE("iterative square roots") {
  Magma X1 = fixtures::x41();
  REQUIRE(square_root_iterative(X1, 1) == 3);
  REQUIRE(X1.at(3, 3) == 1);
  Magma X2 = fixtures::x42();
  REQUIRE(square_root_iterative(X2, 0) == 3);
  REQUIRE(X2.at(3, 3) == 0);
  Magma P = fixtures::projection(6);
  for (int c = 0; c < 6; ++c) REQUIRE(square_root_iterative(P, c) == c);
  for (int c = 0; c < 4; ++c) {
    int s = square_root_iterative(X1, c);
    REQUIRE(X1.at(s, s) == c);
  }
  // The cyclic group violates the left Rump identity; the iteration stalls
  // even though 1 has a square root globally.
  REQUIRE(thrown_code([] { square_root_iterative(fixtures::cyclic_group(3), 1); }) ==
          errc::no_square_root);
}

TEST_CASE("rumple classification predicates") {
  Magma X1 = fixtures::x41();
  REQUIRE(is_rumple(X1));
  REQUIRE(is_latin_rumple(X1));
  REQUIRE(is_both_sided_rumple(X1));
  Magma X2 = fixtures::x42();
  REQUIRE(is_rumple(X2));
  REQUIRE(is_latin_rumple(X2));
  REQUIRE(is_both_sided_rumple(X2));
  Magma T = fixtures::tworeps();
  REQUIRE(is_rumple(T));
  REQUIRE_FALSE(is_latin_rumple(T));
  Magma Z3 = fixtures::cyclic_group(3);
  REQUIRE_FALSE(is_rumple(Z3));
  REQUIRE_FALSE(is_latin_rumple(Z3));
  REQUIRE_FALSE(is_both_sided_rumple(Z3));
  Magma one = from_table(1, {{0}});
  REQUIRE(is_rumple(one));
  REQUIRE(is_latin_rumple(one));
  REQUIRE(is_both_sided_rumple(one));
}

TEST_CASE("rack family predicates") {
  Magma P = fixtures::projection(4);
  REQUIRE(is_rack(P));
  REQUIRE(is_quandle(P));
  REQUIRE(is_2_reductive(P));
  REQUIRE(is_left_distributive(P));
  REQUIRE_FALSE(is_rack(fixtures::x41()));
  Magma Q = conjugation_quandle(fixtures::dihedral8());
  REQUIRE(is_rack(Q));
  REQUIRE(is_quandle(Q));
}

TEST_CASE("conjugation quandles") {
  Magma Z4 = fixtures::cyclic_group(4);
  Magma Q = conjugation_quandle(Z4);
  REQUIRE(Q == fixtures::projection(4));
  // Dihedral of order 8 is nilpotent of class 2; its conjugation quandle
  // satisfies the left Rump identity.  S3 is not nilpotent and fails it.
  REQUIRE(satisfies_left_rump(conjugation_quandle(fixtures::dihedral8())));
  REQUIRE_FALSE(satisfies_left_rump(conjugation_quandle(fixtures::symmetric3())));
  REQUIRE(thrown_code([] { conjugation_quandle(fixtures::x41()); }) == errc::not_a_group);
  REQUIRE(thrown_code([] { conjugation_quandle(fixtures::projection(3)); }) == errc::not_a_group);
}

TEST_CASE("delta map, bijectivity, inverse") {
  Magma P2 = fixtures::projection(2);
  auto d = delta_map(P2);
  REQUIRE(d[0 * 2 + 1] == std::make_pair(1, 0));
  REQUIRE(is_delta_bijective(P2));

  Magma X = fixtures::x41();
  REQUIRE(is_delta_bijective(X));
  auto dm = delta_map(X);
  auto di = delta_inverse(X);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      auto [a, b] = dm[static_cast<std::size_t>(x) * 4 + y];
      REQUIRE(di[static_cast<std::size_t>(a) * 4 + b] == std::make_pair(x, y));
      auto [c, e] = di[static_cast<std::size_t>(x) * 4 + y];
      REQUIRE(dm[static_cast<std::size_t>(c) * 4 + e] == std::make_pair(x, y));
    }
  REQUIRE(thrown_code([] { delta_inverse(fixtures::cyclic_group(3)); }) == errc::not_rumple);
}

TEST_CASE("delta bijectivity matches 2-divisibility on small Rump left quasigroups") {
  // Exhaustive over all left quasigroups of order <= 3 plus a sampled batch
  // of order 4, restricted to tables with the left Rump identity.
  std::vector<Perm> perms3;
  Perm p = perm_identity(3);
  do {
    perms3.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  for (const auto& r0 : perms3)
    for (const auto& r1 : perms3)
      for (const auto& r2 : perms3) {
        Magma X;
        X.n = 3;
        for (auto v : r0) X.t.push_back(v);
        for (auto v : r1) X.t.push_back(v);
        for (auto v : r2) X.t.push_back(v);
        if (!satisfies_left_rump(X)) continue;
        REQUIRE(is_delta_bijective(X) == is_uniquely_2_divisible(X));
      }
  std::mt19937 rng(20260814);
  int rump_hits = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    Magma X = fixtures::random_left_quasigroup(4, rng);
    if (!satisfies_left_rump(X)) continue;
    ++rump_hits;
    REQUIRE(is_delta_bijective(X) == is_uniquely_2_divisible(X));
  }
  REQUIRE(rump_hits > 0);
}

TEST_CASE("dual rumples") {
  Magma X1 = fixtures::x41();
  Magma D1 = dual_rumple(X1);
  REQUIRE(is_rumple(D1));
  REQUIRE(find_isomorphism(D1, X1).has_value());
  REQUIRE(dual_rumple(D1) == X1);

  Magma X2 = fixtures::x42();
  Magma D2 = dual_rumple(X2);
  REQUIRE(find_isomorphism(D2, X2).has_value());

  Magma one = from_table(1, {{0}});
  REQUIRE(dual_rumple(one) == one);
  REQUIRE(thrown_code([] { dual_rumple(fixtures::cyclic_group(3)); }) == errc::not_rumple);

  // Dual of a latin rumple is latin, with right division y^2/x^2.
  Magma D = D1;
  REQUIRE(is_latin_rumple(D));
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      int q = right_divide(D, x, y);  // x /* y in the dual
      REQUIRE(q == right_divide(X1, X1.at(y, y), X1.at(x, x)));
    }
}

TEST_CASE("opposite tables") {
  Magma X = fixtures::x41();
  Magma O = opposite(X);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) REQUIRE(O.at(x, y) == X.at(y, x));
  REQUIRE(is_both_sided_rumple(O));
  REQUIRE(opposite(fixtures::cyclic_group(3)) == fixtures::cyclic_group(3));
}

TEST_CASE("principal loop isotopes") {
  Magma X1 = fixtures::x41();
  Magma L = principal_loop_isotope(X1, 0, 0);
  int id = X1.at(0, 0);
  for (int x = 0; x < 4; ++x) {
    REQUIRE(L.at(id, x) == x);
    REQUIRE(L.at(x, id) == x);
    REQUIRE(L.at(x, x) == id);  // exponent 2
  }
  Magma Z4 = fixtures::cyclic_group(4);
  REQUIRE(principal_loop_isotope(Z4, 0, 0) == Z4);
  Magma X2 = fixtures::x42();
  Magma L2 = principal_loop_isotope(X2, 1, 1);
  int sq = X2.at(1, 1);
  for (int x = 0; x < 4; ++x) REQUIRE(L2.at(x, x) == sq);
  REQUIRE(thrown_code([] { principal_loop_isotope(fixtures::tworeps(), 0, 0); }) ==
          errc::not_quasigroup);
}

TEST_CASE("isomorphism search and canonical forms") {
  Magma X1 = fixtures::x41();
  Magma X2 = fixtures::x42();
  REQUIRE_FALSE(find_isomorphism(X1, X2).has_value());
  REQUIRE(canonical_form(X1) != canonical_form(X2));

  std::mt19937 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    Perm p = fixtures::random_perm(4, rng);
    Magma Y = relabel(X1, p);
    auto f = find_isomorphism(X1, Y);
    REQUIRE(f.has_value());
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y)
        REQUIRE((*f)[X1.at(x, y)] == Y.at((*f)[x], (*f)[y]));
    REQUIRE(canonical_form(Y) == canonical_form(X1));
  }

  Magma T = fixtures::tworeps();
  std::mt19937 rng2(11);
  for (int trial = 0; trial < 10; ++trial) {
    Magma Y = relabel(T, fixtures::random_perm(4, rng2));
    REQUIRE(canonical_form(Y) == canonical_form(T));
  }

  // The canonical form is itself a relabeling of the input.
  Magma C = canonical_form(X1);
  REQUIRE(find_isomorphism(C, X1).has_value());
  REQUIRE(C.t <= X1.t);
}

TEST_CASE("squaring equals R_ee L_e R_e^{-1} on latin Rump tables") {
  for (const Magma& X : {fixtures::x41(), fixtures::x42()}) {
    auto sigma = squaring_map(X);
    for (int e = 0; e < X.n; ++e) {
      int ee = X.at(e, e);
      for (int x = 0; x < X.n; ++x) {
        int u = right_divide(X, x, e);       // R_e^{-1}(x)
        int v = X.at(e, u);                  // L_e
        REQUIRE(X.at(v, ee) == sigma[x]);    // R_ee
      }
    }
  }
}

TEST_CASE("two of left-distributivity, left Rump, 2-reductivity imply the third") {
  std::vector<Perm> perms3;
  Perm p = perm_identity(3);
  do {
    perms3.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  for (const auto& r0 : perms3)
    for (const auto& r1 : perms3)
      for (const auto& r2 : perms3) {
        Magma X;
        X.n = 3;
        for (auto v : r0) X.t.push_back(v);
        for (auto v : r1) X.t.push_back(v);
        for (auto v : r2) X.t.push_back(v);
        int held = (is_left_distributive(X) ? 1 : 0) + (satisfies_left_rump(X) ? 1 : 0) +
                   (is_2_reductive(X) ? 1 : 0);
        REQUIRE(held != 2);
      }
  std::mt19937 rng(99);
  for (int trial = 0; trial < 5000; ++trial) {
    Magma X = fixtures::random_left_quasigroup(5, rng);
    int held = (is_left_distributive(X) ? 1 : 0) + (satisfies_left_rump(X) ? 1 : 0) +
               (is_2_reductive(X) ? 1 : 0);
    REQUIRE(held != 2);
  }
}

TEST_CASE("both-sided identities on the order-4 latin rumples") {
  for (const Magma& X : {fixtures::x41(), fixtures::x42()}) {
    int n = X.n;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        int ld = left_divide(X, x, y), rd = right_divide(X, y, x);
        REQUIRE(rd == left_divide(X, ld, y));           // y/x = (x\y)\y
        REQUIRE(X.at(ld, rd) == y);                      // x\y * y/x = y
        REQUIRE(X.at(right_divide(X, x, y), left_divide(X, y, x)) == X.at(y, y));
      }
    auto sigma = squaring_map(X);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        REQUIRE(sigma[X.at(x, y)] == X.at(sigma[y], sigma[x]));  // antiautomorphism
        int s2x = sigma[sigma[x]], s2y = sigma[sigma[y]];
        REQUIRE(sigma[sigma[X.at(x, y)]] == X.at(s2x, s2y));     // sigma^2 automorphism
        REQUIRE(s2x == X.at(X.at(y, y), X.at(y, x)));
        REQUIRE(s2x == X.at(X.at(x, y), X.at(y, y)));
        REQUIRE(s2x == X.at(X.at(y, x), X.at(x, y)));
      }
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) {
        REQUIRE(sigma[sigma[x]] == X.at(X.at(y, y), X.at(y, x)));
        REQUIRE(sigma[sigma[x]] == X.at(X.at(x, y), X.at(y, y)));
      }
    // L_{xy}^{-1} L_{yy} = L_{yx}^{-1} L_{xx} and L_{xx} L_{yx}^{-1} L_{yy} = L_{xy}
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          int lhs = left_divide(X, X.at(x, y), X.at(X.at(y, y), z));
          int rhs = left_divide(X, X.at(y, x), X.at(X.at(x, x), z));
          REQUIRE(lhs == rhs);
          REQUIRE(X.at(X.at(x, x), left_divide(X, X.at(y, x), X.at(X.at(y, y), z))) ==
                  X.at(X.at(x, y), z));
        }
    for (int e = 0; e < n; ++e) {
      Magma L = principal_loop_isotope(X, e, e);
      int id = X.at(e, e);
      for (int x = 0; x < n; ++x) REQUIRE(L.at(x, x) == id);
    }
  }
}
