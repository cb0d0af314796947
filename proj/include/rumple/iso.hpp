#pragma once

#include <optional>
#include <vector>

#include "rumple/magma.hpp"
#include "rumple/perm.hpp"

namespace rumple {

namespace detail {

constexpr int kUnset = -1;

// Backtracking isomorphism search with multiplicative closure: whenever
// f(a) and f(b) are decided, f(a*b) is forced to f(a)*'f(b).
struct IsoSearch {
  const Magma& X;
  const Magma& Y;
  int n;
  std::vector<int> f;     // source -> target or kUnset
  std::vector<int> used;  // target -> source or kUnset

  IsoSearch(const Magma& x, const Magma& y)
      : X(x), Y(y), n(x.n), f(x.n, kUnset), used(x.n, kUnset) {}

  // Assigns f(a)=b plus everything that forces; records assignments in trail.
  bool assign(int a, int b, std::vector<int>& trail) {
    if (f[a] != kUnset) return f[a] == b;
    if (used[b] != kUnset) return false;
    f[a] = b;
    used[b] = a;
    trail.push_back(a);
    std::size_t head = trail.size() - 1;
    while (head < trail.size()) {
      int p = trail[head++];
      for (int q = 0; q < n; ++q) {
        if (f[q] == kUnset) continue;
        int pq = X.at(p, q), qp = X.at(q, p);
        int fpq = Y.at(f[p], f[q]), fqp = Y.at(f[q], f[p]);
        if (f[pq] != kUnset) {
          if (f[pq] != fpq) return false;
        } else {
          if (used[fpq] != kUnset) return false;
          f[pq] = fpq;
          used[fpq] = pq;
          trail.push_back(pq);
        }
        if (f[qp] != kUnset) {
          if (f[qp] != fqp) return false;
        } else {
          if (used[fqp] != kUnset) return false;
          f[qp] = fqp;
          used[fqp] = qp;
          trail.push_back(qp);
        }
      }
    }
    return true;
  }

  void undo(std::vector<int>& trail, std::size_t mark) {
    while (trail.size() > mark) {
      int a = trail.back();
      trail.pop_back();
      used[f[a]] = kUnset;
      f[a] = kUnset;
    }
  }

  bool dfs() {
    int a = kUnset;
    for (int i = 0; i < n; ++i)
      if (f[i] == kUnset) {
        a = i;
        break;
      }
    if (a == kUnset) return true;
    std::vector<int> trail;
    for (int b = 0; b < n; ++b) {
      if (used[b] != kUnset) continue;
      std::size_t mark = trail.size();
      if (assign(a, b, trail) && dfs()) return true;
      undo(trail, mark);
    }
    return false;
  }
};

}  // namespace detail

inline std::optional<Perm> find_isomorphism(const Magma& X, const Magma& Y) {
  if (X.n != Y.n) return std::nullopt;
  detail::IsoSearch s(X, Y);
  if (!s.dfs()) return std::nullopt;
  Perm p(X.n);
  for (int i = 0; i < X.n; ++i) p[i] = static_cast<std::uint16_t>(s.f[i]);
  return p;
}

namespace detail {

// Shared engine behind canonical_form and the enumerator's symmetry cut.
//
// Explores relabelings rho: new index -> old index.  A candidate entry
// C[x][y] = pi[T[rho x][rho y]] is known once rho is decided on x, y and pi
// on the value; the flattened candidate is compared against a reference
// table position by position, stopping at the first unknown entry.  Lex
// order means a strict difference at the first known disagreement decides
// the comparison for every completion of rho.
struct RelabelSearch {
  const int* T;  // row-major n*n, rows 0..rows_compared-1 fully defined
  int n;
  int rows_compared;   // compare flattened rows 0..rows_compared-1 only
  int prefix;          // rho must map {0..prefix-1} onto itself
  std::vector<int> rho, pi;

  RelabelSearch(const int* t, int n_, int rows, int pre)
      : T(t), n(n_), rows_compared(rows), prefix(pre), rho(n_, kUnset), pi(n_, kUnset) {}

  // -1: candidate < reference on the decided prefix (any completion wins)
  //  0: equal so far (undecided)
  // +1: candidate > reference (prune)
  int compare(const int* ref, int assigned) const {
    for (int x = 0; x < rows_compared; ++x) {
      if (x >= assigned) return 0;
      const int* refrow = ref + static_cast<std::size_t>(x) * n;
      const int* trow = T + static_cast<std::size_t>(rho[x]) * n;
      for (int y = 0; y < n; ++y) {
        if (y >= assigned) return 0;
        int v = pi[trow[rho[y]]];
        if (v == kUnset) return 0;
        if (v != refrow[y]) return v < refrow[y] ? -1 : 1;
      }
    }
    return 0;
  }

  // True iff some admissible rho makes the candidate strictly smaller than
  // ref.  Used with ref = T itself to test minimality of partial tables.
  bool exists_smaller(const int* ref, int m) {
    int cmp = compare(ref, m);
    if (cmp < 0) return true;
    if (cmp > 0) return false;
    if (m == n) return false;
    int lo = m < prefix ? 0 : prefix;
    int hi = m < prefix ? prefix : n;
    for (int v = lo; v < hi; ++v) {
      if (pi[v] != kUnset) continue;
      rho[m] = v;
      pi[v] = m;
      bool found = exists_smaller(ref, m + 1);
      pi[v] = kUnset;
      rho[m] = kUnset;
      if (found) return true;
    }
    return false;
  }

  // Lex-least full relabeling, written into best (which starts as a valid
  // candidate, e.g. the table itself).
  void minimize(std::vector<int>& best, int m) {
    int cmp = compare(best.data(), m);
    if (cmp > 0) return;
    if (m == n) {
      if (cmp < 0) {
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y)
            best[static_cast<std::size_t>(x) * n + y] =
                pi[T[static_cast<std::size_t>(rho[x]) * n + rho[y]]];
      }
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (pi[v] != kUnset) continue;
      rho[m] = v;
      pi[v] = m;
      minimize(best, m + 1);
      pi[v] = kUnset;
      rho[m] = kUnset;
    }
  }
};

}  // namespace detail

// Lexicographically least flattened table over all relabelings.  Two magmas
// are isomorphic iff their canonical forms coincide.
inline Magma canonical_form(const Magma& X) {
  Magma C;
  C.n = X.n;
  C.t = X.t;
  detail::RelabelSearch s(X.t.data(), X.n, X.n, X.n);
  s.minimize(C.t, 0);
  return C;
}

// True iff some relabeling that permutes {0..k-1} among themselves makes the
// flattened first k rows strictly smaller.  Rows 0..k-1 of flat must be
// defined; with k = n this rejects exactly the non-canonical full tables.
inline bool prefix_has_smaller_relabel(const int* flat, int n, int k) {
  detail::RelabelSearch s(flat, n, k, k);
  return s.exists_smaller(flat, 0);
}

}  // namespace rumple
