#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "rumple/magma.hpp"
#include "rumple/yangbaxter.hpp"

using namespace rumple;
using fixtures::thrown_code;

namespace {

SetSolution flip(int n) {
  SetSolution s;
  s.n = n;
  s.r1.resize(static_cast<std::size_t>(n) * n);
  s.r2.resize(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      s.r1[static_cast<std::size_t>(x) * n + y] = y;
      s.r2[static_cast<std::size_t>(x) * n + y] = x;
    }
  return s;
}

}  // namespace

TEST_CASE("solutions built from rumples") {
  SetSolution s = rumple_to_solution(fixtures::projection(3));
  REQUIRE(s == flip(3));

  SetSolution one = rumple_to_solution(from_table(1, {{0}}));
  REQUIRE(one.first(0, 0) == 0);
  REQUIRE(one.second(0, 0) == 0);

  for (const Magma& X : {fixtures::x41(), fixtures::x42(), fixtures::tworeps()}) {
    SetSolution t = rumple_to_solution(X);
    REQUIRE(satisfies_yb(t));
    REQUIRE(is_involutive(t));
    REQUIRE(is_left_nondegenerate(t));
    REQUIRE(is_right_nondegenerate(t));
    REQUIRE(is_bijective(t));
  }
  REQUIRE(thrown_code([] { rumple_to_solution(fixtures::cyclic_group(3)); }) == errc::not_rumple);
}

TEST_CASE("round trips between rumples and solutions") {
  for (const Magma& X : {fixtures::x41(), fixtures::x42(), fixtures::tworeps()})
    REQUIRE(solution_to_rumple(rumple_to_solution(X)) == X);
  REQUIRE(solution_to_rumple(flip(4)) == fixtures::projection(4));

  // Solution-side round trip.
  SetSolution s = rumple_to_solution(fixtures::x42());
  REQUIRE(rumple_to_solution(solution_to_rumple(s)) == s);

  SetSolution bad = flip(2);
  bad.r1 = {0, 0, 1, 1};
  REQUIRE(thrown_code([&] { solution_to_rumple(bad); }) == errc::not_left_nondegenerate);
}

TEST_CASE("solution predicates on degenerate examples") {
  SetSolution f = flip(3);
  REQUIRE(satisfies_yb(f));
  REQUIRE(is_involutive(f));
  REQUIRE(is_left_nondegenerate(f));
  REQUIRE(is_right_nondegenerate(f));

  // r(x,y) = (x,x): braid relation holds but left nondegeneracy fails.
  SetSolution p;
  p.n = 3;
  p.r1.resize(9);
  p.r2.resize(9);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      p.r1[static_cast<std::size_t>(x) * 3 + y] = x;
      p.r2[static_cast<std::size_t>(x) * 3 + y] = x;
    }
  REQUIRE(satisfies_yb(p));
  REQUIRE_FALSE(is_left_nondegenerate(p));
  REQUIRE_FALSE(is_involutive(p));
}

TEST_CASE("involutivity pins down the second component") {
  std::mt19937 rng(4242);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Magma X = fixtures::random_left_quasigroup(4, rng);
    Magma D = left_division_table(X);
    SetSolution s;
    s.n = 4;
    s.r1 = D.t;
    s.r2.resize(16);
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) {
        int u = D.at(x, y);
        s.r2[static_cast<std::size_t>(x) * 4 + y] = X.at(u, x);
      }
    REQUIRE(is_involutive(s));
    // Perturb one r2 entry; involutivity must break.
    SetSolution t = s;
    int x = trial % 4, y = (trial / 4) % 4;
    t.r2[static_cast<std::size_t>(x) * 4 + y] = (t.second(x, y) + 1) % 4;
    if (!is_involutive(t)) ++checked;
    REQUIRE_FALSE(is_involutive(t));
  }
  REQUIRE(checked == 300);
}

TEST_CASE("biquandle witnesses") {
  SetSolution s1 = rumple_to_solution(fixtures::x41());
  auto t1 = is_biquandle(s1);
  REQUIRE(t1.has_value());
  // sigma of the first order-4 rumple is the involution (1 3); its inverse
  // is itself.
  REQUIRE(*t1 == Perm{0, 3, 2, 1});

  SetSolution s2 = rumple_to_solution(fixtures::x42());
  auto t2 = is_biquandle(s2);
  REQUIRE(t2.has_value());
  REQUIRE(*t2 == perm_inverse(Perm{1, 2, 3, 0}));

  auto tf = is_biquandle(flip(4));
  REQUIRE(tf.has_value());
  REQUIRE(perm_is_identity(*tf));

  // The fixed-pair partner is unique for rumple solutions.
  for (const Magma& X : {fixtures::x41(), fixtures::x42(), fixtures::tworeps()}) {
    SetSolution s = rumple_to_solution(X);
    auto sigma = squaring_map(X);
    for (int x = 0; x < X.n; ++x) {
      int hits = 0;
      for (int u = 0; u < X.n; ++u)
        if (s.first(u, x) == u && s.second(u, x) == x) ++hits;
      REQUIRE(hits == 1);
    }
    auto t = is_biquandle(s);
    REQUIRE(t.has_value());
    for (int x = 0; x < X.n; ++x) REQUIRE(sigma[(*t)[x]] == x);
  }

  SetSolution bad = flip(2);
  bad.r2 = {0, 1, 0, 1};  // r(x,y) = (y,y): neither bijective nor right nondegenerate
  REQUIRE(thrown_code([&] { is_biquandle(bad); }) == errc::not_birack);
}

TEST_CASE("rack solutions") {
  REQUIRE(rack_solution_check(fixtures::projection(4)));
  Magma Q = conjugation_quandle(fixtures::dihedral8());
  REQUIRE(rack_solution_check(Q));
  REQUIRE(thrown_code([] { rack_solution_check(fixtures::x41()); }) == errc::not_rack);
}

TEST_CASE("latin rumples give doubly latin solutions") {
  for (const Magma& X : {fixtures::x41(), fixtures::x42()}) {
    SetSolution s = rumple_to_solution(X);
    Magma R1{X.n, s.r1}, R2{X.n, s.r2};
    REQUIRE(is_quasigroup(R1));
    REQUIRE(is_quasigroup(R2));
  }
  SetSolution s = rumple_to_solution(fixtures::tworeps());
  Magma R1{4, s.r1}, R2{4, s.r2};
  REQUIRE_FALSE((is_quasigroup(R1) && is_quasigroup(R2)));
}
