#pragma once

#include <array>
#include <optional>
#include <vector>

#include "rumple/errors.hpp"
#include "rumple/magma.hpp"
#include "rumple/perm.hpp"

namespace rumple {

// A set-theoretic map r: X×X -> X×X, r(x,y) = (r1(x,y), r2(x,y)), stored as
// two row-major n×n tables.
struct SetSolution {
  int n = 0;
  std::vector<int> r1, r2;

  int first(int x, int y) const { return r1[static_cast<std::size_t>(x) * n + y]; }
  int second(int x, int y) const { return r2[static_cast<std::size_t>(x) * n + y]; }

  bool operator==(const SetSolution& o) const { return n == o.n && r1 == o.r1 && r2 == o.r2; }
};

inline bool is_left_nondegenerate(const SetSolution& s) {
  std::vector<bool> seen(s.n);
  for (int x = 0; x < s.n; ++x) {
    std::fill(seen.begin(), seen.end(), false);
    for (int y = 0; y < s.n; ++y) {
      int v = s.first(x, y);
      if (seen[v]) return false;
      seen[v] = true;
    }
  }
  return true;
}

inline bool is_right_nondegenerate(const SetSolution& s) {
  std::vector<bool> seen(s.n);
  for (int y = 0; y < s.n; ++y) {
    std::fill(seen.begin(), seen.end(), false);
    for (int x = 0; x < s.n; ++x) {
      int v = s.second(x, y);
      if (seen[v]) return false;
      seen[v] = true;
    }
  }
  return true;
}

inline bool is_involutive(const SetSolution& s) {
  for (int x = 0; x < s.n; ++x)
    for (int y = 0; y < s.n; ++y) {
      int a = s.first(x, y), b = s.second(x, y);
      if (s.first(a, b) != x || s.second(a, b) != y) return false;
    }
  return true;
}

inline bool is_bijective(const SetSolution& s) {
  std::vector<bool> seen(static_cast<std::size_t>(s.n) * s.n, false);
  for (int x = 0; x < s.n; ++x)
    for (int y = 0; y < s.n; ++y) {
      std::size_t idx = static_cast<std::size_t>(s.first(x, y)) * s.n + s.second(x, y);
      if (seen[idx]) return false;
      seen[idx] = true;
    }
  return true;
}

// Braid relation (r×1)(1×r)(r×1) = (1×r)(r×1)(1×r), verified pointwise on
// all n³ triples.
inline bool satisfies_yb(const SetSolution& s) {
  auto A = [&](std::array<int, 3> t) {  // r×1
    return std::array<int, 3>{s.first(t[0], t[1]), s.second(t[0], t[1]), t[2]};
  };
  auto B = [&](std::array<int, 3> t) {  // 1×r
    return std::array<int, 3>{t[0], s.first(t[1], t[2]), s.second(t[1], t[2])};
  };
  for (int x = 0; x < s.n; ++x)
    for (int y = 0; y < s.n; ++y)
      for (int z = 0; z < s.n; ++z) {
        std::array<int, 3> t{x, y, z};
        if (A(B(A(t))) != B(A(B(t)))) return false;
      }
  return true;
}

// r(x,y) = (x\y, (x\y)·x).
inline SetSolution rumple_to_solution(const Magma& X) {
  if (!is_rumple(X)) fail(errc::not_rumple, "solutions are built from rumples");
  Magma D = left_division_table(X);
  SetSolution s;
  s.n = X.n;
  s.r1.resize(X.t.size());
  s.r2.resize(X.t.size());
  for (int x = 0; x < X.n; ++x)
    for (int y = 0; y < X.n; ++y) {
      int u = D.at(x, y);
      s.r1[static_cast<std::size_t>(x) * X.n + y] = u;
      s.r2[static_cast<std::size_t>(x) * X.n + y] = X.at(u, x);
    }
  if (!satisfies_yb(s) || !is_involutive(s) || !is_left_nondegenerate(s) ||
      !is_right_nondegenerate(s))
    fail(errc::not_rumple, "constructed solution failed its verification");
  return s;
}

// x·y = z iff r1(x,z) = y, so row x of the magma is the inverse of row x
// of r1.
inline Magma solution_to_rumple(const SetSolution& s) {
  if (!is_left_nondegenerate(s)) fail(errc::not_left_nondegenerate, "r1 rows must be permutations");
  Magma X;
  X.n = s.n;
  X.t.assign(static_cast<std::size_t>(s.n) * s.n, 0);
  for (int x = 0; x < s.n; ++x)
    for (int z = 0; z < s.n; ++z)
      X.t[static_cast<std::size_t>(x) * s.n + s.first(x, z)] = z;
  return X;
}

namespace detail {

inline bool biquandle_augment(const std::vector<std::vector<int>>& adj, int x,
                              std::vector<int>& match_u, std::vector<bool>& visited) {
  for (int u : adj[x]) {
    if (visited[u]) continue;
    visited[u] = true;
    if (match_u[u] < 0 || biquandle_augment(adj, match_u[u], match_u, visited)) {
      match_u[u] = x;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Searches for a permutation t with r(t(x), x) = (t(x), x) for all x, via
// bipartite matching between points and their fixed-pair partners.
inline std::optional<Perm> is_biquandle(const SetSolution& s) {
  if (!is_bijective(s) || !is_left_nondegenerate(s) || !is_right_nondegenerate(s))
    fail(errc::not_birack, "biquandle witness needs a bijective nondegenerate solution");
  std::vector<std::vector<int>> adj(s.n);
  for (int x = 0; x < s.n; ++x)
    for (int u = 0; u < s.n; ++u)
      if (s.first(u, x) == u && s.second(u, x) == x) adj[x].push_back(u);
  std::vector<int> match_u(s.n, -1);
  for (int x = 0; x < s.n; ++x) {
    std::vector<bool> visited(s.n, false);
    if (!detail::biquandle_augment(adj, x, match_u, visited)) return std::nullopt;
  }
  Perm t(s.n);
  for (int u = 0; u < s.n; ++u)
    if (match_u[u] >= 0) t[match_u[u]] = static_cast<std::uint16_t>(u);
  return t;
}

// Racks give solutions r(x,y) = (x\y, x); confirms the second component
// convention and the braid relation on the constructed solution.
inline bool rack_solution_check(const Magma& X) {
  if (!is_rack(X)) fail(errc::not_rack, "rack solutions need a rack");
  Magma D = left_division_table(X);
  SetSolution s;
  s.n = X.n;
  s.r1 = D.t;
  s.r2.resize(X.t.size());
  for (int x = 0; x < X.n; ++x)
    for (int y = 0; y < X.n; ++y) s.r2[static_cast<std::size_t>(x) * X.n + y] = x;
  for (int x = 0; x < X.n; ++x)
    for (int y = 0; y < X.n; ++y)
      if (s.second(x, y) != x) return false;
  return satisfies_yb(s);
}

}  // namespace rumple
