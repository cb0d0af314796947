#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rumple/errors.hpp"
#include "rumple/perm.hpp"

namespace rumple {

// Finite magma on {0,...,n-1} with a row-major multiplication table.
// Row index is the left factor, so row x is the left translation L_x.
// Values are immutable after construction; every operation here is pure.
struct Magma {
  int n = 0;
  std::vector<int> t;  // n*n entries, t[x*n+y] = x*y

  int at(int x, int y) const { return t[static_cast<std::size_t>(x) * n + y]; }

  bool operator==(const Magma& o) const { return n == o.n && t == o.t; }
  bool operator!=(const Magma& o) const { return !(*this == o); }
  bool operator<(const Magma& o) const { return n != o.n ? n < o.n : t < o.t; }
};

inline Magma from_table(int order, const std::vector<std::vector<int>>& rows) {
  if (order <= 0) fail(errc::dimension_mismatch, "order must be positive");
  if (static_cast<int>(rows.size()) != order)
    fail(errc::dimension_mismatch, "expected " + std::to_string(order) + " rows, got " +
                                       std::to_string(rows.size()));
  Magma X;
  X.n = order;
  X.t.reserve(static_cast<std::size_t>(order) * order);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != order)
      fail(errc::dimension_mismatch, "row has " + std::to_string(row.size()) +
                                         " entries, expected " + std::to_string(order));
    for (int v : row) {
      if (v < 0 || v >= order)
        fail(errc::entry_out_of_range, "entry " + std::to_string(v) + " not in 0.." +
                                           std::to_string(order - 1));
      X.t.push_back(v);
    }
  }
  return X;
}

inline std::vector<std::vector<int>> to_rows(const Magma& X) {
  std::vector<std::vector<int>> rows(X.n, std::vector<int>(X.n));
  for (int x = 0; x < X.n; ++x)
    for (int y = 0; y < X.n; ++y) rows[x][y] = X.at(x, y);
  return rows;
}

inline bool is_left_quasigroup(const Magma& X) {
  std::vector<bool> seen(X.n);
  for (int x = 0; x < X.n; ++x) {
    std::fill(seen.begin(), seen.end(), false);
    for (int y = 0; y < X.n; ++y) {
      int v = X.at(x, y);
      if (seen[v]) return false;
      seen[v] = true;
    }
  }
  return true;
}

inline bool is_quasigroup(const Magma& X) {
  if (!is_left_quasigroup(X)) return false;
  std::vector<bool> seen(X.n);
  for (int y = 0; y < X.n; ++y) {
    std::fill(seen.begin(), seen.end(), false);
    for (int x = 0; x < X.n; ++x) {
      int v = X.at(x, y);
      if (seen[v]) return false;
      seen[v] = true;
    }
  }
  return true;
}

// Unique u with x*u = y.
inline int left_divide(const Magma& X, int x, int y) {
  if (!is_left_quasigroup(X)) fail(errc::not_left_quasigroup, "left_divide needs bijective rows");
  for (int u = 0; u < X.n; ++u)
    if (X.at(x, u) == y) return u;
  fail(errc::not_left_quasigroup, "unreachable");
}

// Unique v with v*x = y.
inline int right_divide(const Magma& X, int y, int x) {
  if (!is_quasigroup(X)) fail(errc::not_quasigroup, "right_divide needs a quasigroup");
  for (int v = 0; v < X.n; ++v)
    if (X.at(v, x) == y) return v;
  fail(errc::not_quasigroup, "unreachable");
}

// Left-division table D with D[x][y] = x\y, computed in one pass.
// Requires bijective rows; callers validate.
inline Magma left_division_table(const Magma& X) {
  Magma D;
  D.n = X.n;
  D.t.assign(X.t.size(), 0);
  for (int x = 0; x < X.n; ++x)
    for (int y = 0; y < X.n; ++y) D.t[static_cast<std::size_t>(x) * X.n + X.at(x, y)] = y;
  return D;
}

// (x*y)*(x*z) = (y*x)*(y*z)
inline bool satisfies_left_rump(const Magma& X) {
  for (int x = 0; x < X.n; ++x)
    for (int y = 0; y < X.n; ++y) {
      int xy = X.at(x, y), yx = X.at(y, x);
      for (int z = 0; z < X.n; ++z)
        if (X.at(xy, X.at(x, z)) != X.at(yx, X.at(y, z))) return false;
    }
  return true;
}

// (z*x)*(y*x) = (z*y)*(x*y)
inline bool satisfies_right_rump(const Magma& X) {
  for (int x = 0; x < X.n; ++x)
    for (int y = 0; y < X.n; ++y) {
      int xy = X.at(x, y), yx = X.at(y, x);
      for (int z = 0; z < X.n; ++z)
        if (X.at(X.at(z, x), yx) != X.at(X.at(z, y), xy)) return false;
    }
  return true;
}

inline std::vector<int> squaring_map(const Magma& X) {
  std::vector<int> s(X.n);
  for (int x = 0; x < X.n; ++x) s[x] = X.at(x, x);
  return s;
}

inline bool is_uniquely_2_divisible(const Magma& X) {
  std::vector<bool> seen(X.n, false);
  for (int x = 0; x < X.n; ++x) {
    int v = X.at(x, x);
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

// Square root by the iteration c_k = (c_{k-1}\c)*c_{k-1}, which satisfies
// c_k*c_k = L_c^{k+1}(c).  Stops at k+1 = the length of the L_c-cycle of c,
// where the result squares to c.  Never inverts the squaring map globally;
// success is guaranteed only under the left Rump identity, so the iteration
// is capped at the order of L_c and failure is reported beyond it.
inline int square_root_iterative(const Magma& X, int c) {
  if (!is_left_quasigroup(X)) fail(errc::not_left_quasigroup, "square root needs bijective rows");
  Perm Lc(X.n);
  for (int y = 0; y < X.n; ++y) Lc[y] = static_cast<std::uint16_t>(X.at(c, y));
  std::uint64_t cap = perm_order(Lc);
  std::uint64_t len = perm_cycle_length(Lc, c);
  int cur = c;
  for (std::uint64_t k = 1; k < len && k <= cap; ++k) {
    int u = left_divide(X, cur, c);  // cur*u = c
    cur = X.at(u, cur);
  }
  if (X.at(cur, cur) != c)
    fail(errc::no_square_root, "iteration did not reach a square root of " + std::to_string(c));
  return cur;
}

inline bool is_rumple(const Magma& X) {
  return is_left_quasigroup(X) && satisfies_left_rump(X) && is_uniquely_2_divisible(X);
}

inline bool is_latin_rumple(const Magma& X) {
  if (!(is_quasigroup(X) && satisfies_left_rump(X))) return false;
  // 2-divisibility is a theorem for quasigroups with the left Rump identity;
  // kept as a cheap sanity invariant.
  if (!is_uniquely_2_divisible(X)) fail(errc::not_rumple, "latin Rump table with non-bijective squaring");
  return true;
}

inline bool is_both_sided_rumple(const Magma& X) {
  if (!(is_left_quasigroup(X) && satisfies_left_rump(X) && satisfies_right_rump(X))) return false;
  // Quasigroup-ness follows for rumples with both identities; sanity invariant.
  if (is_uniquely_2_divisible(X) && !is_quasigroup(X))
    fail(errc::not_rumple, "both-sided rumple with non-bijective columns");
  return is_uniquely_2_divisible(X);
}

// x*(y*z) = (x*y)*(x*z)
inline bool is_left_distributive(const Magma& X) {
  for (int x = 0; x < X.n; ++x)
    for (int y = 0; y < X.n; ++y)
      for (int z = 0; z < X.n; ++z)
        if (X.at(x, X.at(y, z)) != X.at(X.at(x, y), X.at(x, z))) return false;
  return true;
}

// (x*y)*z = y*z
inline bool is_2_reductive(const Magma& X) {
  for (int x = 0; x < X.n; ++x)
    for (int y = 0; y < X.n; ++y) {
      int xy = X.at(x, y);
      for (int z = 0; z < X.n; ++z)
        if (X.at(xy, z) != X.at(y, z)) return false;
    }
  return true;
}

inline bool is_rack(const Magma& X) { return is_left_quasigroup(X) && is_left_distributive(X); }

inline bool is_quandle(const Magma& X) {
  if (!is_rack(X)) return false;
  for (int x = 0; x < X.n; ++x)
    if (X.at(x, x) != x) return false;
  return true;
}

namespace detail {

// Identity element of an associative quasigroup table, or -1.
inline int group_identity(const Magma& X) {
  for (int e = 0; e < X.n; ++e) {
    bool ok = true;
    for (int x = 0; x < X.n && ok; ++x) ok = X.at(e, x) == x && X.at(x, e) == x;
    if (ok) return e;
  }
  return -1;
}

inline bool is_associative(const Magma& X) {
  for (int x = 0; x < X.n; ++x)
    for (int y = 0; y < X.n; ++y) {
      int xy = X.at(x, y);
      for (int z = 0; z < X.n; ++z)
        if (X.at(xy, z) != X.at(x, X.at(y, z))) return false;
    }
  return true;
}

}  // namespace detail

// x*y = x y x^{-1} in the group G.
inline Magma conjugation_quandle(const Magma& G) {
  if (!is_quasigroup(G) || !detail::is_associative(G))
    fail(errc::not_a_group, "table is not an associative quasigroup");
  int e = detail::group_identity(G);
  if (e < 0) fail(errc::not_a_group, "no identity element");
  std::vector<int> inv(G.n);
  for (int x = 0; x < G.n; ++x)
    for (int y = 0; y < G.n; ++y)
      if (G.at(x, y) == e) inv[x] = y;
  Magma Q;
  Q.n = G.n;
  Q.t.resize(G.t.size());
  for (int x = 0; x < G.n; ++x)
    for (int y = 0; y < G.n; ++y)
      Q.t[static_cast<std::size_t>(x) * G.n + y] = G.at(G.at(x, y), inv[x]);
  return Q;
}

// Delta(x,y) = (x*y, y*x) as a permutation candidate of pairs, encoded x*n+y.
inline std::vector<std::pair<int, int>> delta_map(const Magma& X) {
  std::vector<std::pair<int, int>> d(static_cast<std::size_t>(X.n) * X.n);
  for (int x = 0; x < X.n; ++x)
    for (int y = 0; y < X.n; ++y)
      d[static_cast<std::size_t>(x) * X.n + y] = {X.at(x, y), X.at(y, x)};
  return d;
}

inline bool is_delta_bijective(const Magma& X) {
  std::vector<bool> seen(static_cast<std::size_t>(X.n) * X.n, false);
  for (const auto& [a, b] : delta_map(X)) {
    std::size_t idx = static_cast<std::size_t>(a) * X.n + b;
    if (seen[idx]) return false;
    seen[idx] = true;
  }
  return true;
}

// Delta^{-1}(x,y) = ((x\y^2)^{1/2}, (y\x^2)^{1/2}); verified against Delta.
inline std::vector<std::pair<int, int>> delta_inverse(const Magma& X) {
  if (!is_rumple(X)) fail(errc::not_rumple, "delta inverse is defined on rumples");
  std::vector<std::pair<int, int>> inv(static_cast<std::size_t>(X.n) * X.n);
  for (int x = 0; x < X.n; ++x)
    for (int y = 0; y < X.n; ++y) {
      int a = square_root_iterative(X, left_divide(X, x, X.at(y, y)));
      int b = square_root_iterative(X, left_divide(X, y, X.at(x, x)));
      inv[static_cast<std::size_t>(x) * X.n + y] = {a, b};
    }
  auto d = delta_map(X);
  for (int x = 0; x < X.n; ++x)
    for (int y = 0; y < X.n; ++y) {
      auto [a, b] = inv[static_cast<std::size_t>(x) * X.n + y];
      if (d[static_cast<std::size_t>(a) * X.n + b] != std::make_pair(x, y))
        fail(errc::not_rumple, "delta inverse failed verification");
    }
  return inv;
}

// Dual operation x ∗ y = (x\y^2)^{1/2}; an involution on rumples.
inline Magma dual_rumple(const Magma& X) {
  if (!is_rumple(X)) fail(errc::not_rumple, "dual is defined on rumples");
  Magma D;
  D.n = X.n;
  D.t.resize(X.t.size());
  for (int x = 0; x < X.n; ++x)
    for (int y = 0; y < X.n; ++y)
      D.t[static_cast<std::size_t>(x) * X.n + y] =
          square_root_iterative(X, left_divide(X, x, X.at(y, y)));
  if (!is_rumple(D)) fail(errc::not_rumple, "dual failed rumple verification");
  Magma DD;
  DD.n = D.n;
  DD.t.resize(D.t.size());
  for (int x = 0; x < D.n; ++x)
    for (int y = 0; y < D.n; ++y)
      DD.t[static_cast<std::size_t>(x) * D.n + y] =
          square_root_iterative(D, left_divide(D, x, D.at(y, y)));
  if (DD != X) fail(errc::not_rumple, "dual is not an involution on this table");
  return D;
}

inline Magma opposite(const Magma& X) {
  Magma O;
  O.n = X.n;
  O.t.resize(X.t.size());
  for (int x = 0; x < X.n; ++x)
    for (int y = 0; y < X.n; ++y) O.t[static_cast<std::size_t>(x) * X.n + y] = X.at(y, x);
  return O;
}

// x ∘ y = (x/e)*(f\y); a loop with identity f*e.
inline Magma principal_loop_isotope(const Magma& X, int e, int f) {
  if (!is_quasigroup(X)) fail(errc::not_quasigroup, "loop isotopes need a quasigroup");
  std::vector<int> rdiv_e(X.n), ldiv_f(X.n);
  for (int x = 0; x < X.n; ++x) {
    rdiv_e[X.at(x, e)] = x;  // (y)/e
    ldiv_f[X.at(f, x)] = x;  // f\(y)
  }
  Magma L;
  L.n = X.n;
  L.t.resize(X.t.size());
  for (int x = 0; x < X.n; ++x)
    for (int y = 0; y < X.n; ++y)
      L.t[static_cast<std::size_t>(x) * X.n + y] = X.at(rdiv_e[x], ldiv_f[y]);
  int id = X.at(f, e);
  for (int x = 0; x < X.n; ++x)
    if (L.at(id, x) != x || L.at(x, id) != x)
      fail(errc::not_quasigroup, "isotope lost its two-sided identity");
  return L;
}

inline Magma relabel(const Magma& X, const Perm& p) {
  Magma Y;
  Y.n = X.n;
  Y.t.resize(X.t.size());
  Perm q = perm_inverse(p);
  for (int x = 0; x < X.n; ++x)
    for (int y = 0; y < X.n; ++y)
      Y.t[static_cast<std::size_t>(x) * X.n + y] = p[X.at(q[x], q[y])];
  return Y;
}

}  // namespace rumple
