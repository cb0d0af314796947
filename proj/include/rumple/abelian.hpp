#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "rumple/errors.hpp"
#include "rumple/perm.hpp"

namespace rumple {

// Finite abelian group presented as Z_{n1} x ... x Z_{nk}; elements are
// tuples, indexed lexicographically (first coordinate most significant).
// The factor list is arbitrary, not necessarily in invariant-factor form.
struct AbelianGroup {
  std::vector<int> factors;  // each >= 2; empty list = trivial group

  std::size_t order() const {
    std::size_t n = 1;
    for (int f : factors) n *= static_cast<std::size_t>(f);
    return n;
  }
  int rank() const { return static_cast<int>(factors.size()); }

  bool operator==(const AbelianGroup& o) const { return factors == o.factors; }
};

using Tuple = std::vector<int>;

inline std::size_t index_of(const AbelianGroup& G, const Tuple& x) {
  std::size_t idx = 0;
  for (int i = 0; i < G.rank(); ++i) idx = idx * G.factors[i] + x[i];
  return idx;
}

inline Tuple tuple_of(const AbelianGroup& G, std::size_t idx) {
  Tuple x(G.rank());
  for (int i = G.rank() - 1; i >= 0; --i) {
    x[i] = static_cast<int>(idx % G.factors[i]);
    idx /= G.factors[i];
  }
  return x;
}

inline Tuple tuple_add(const AbelianGroup& G, const Tuple& a, const Tuple& b) {
  Tuple r(G.rank());
  for (int i = 0; i < G.rank(); ++i) r[i] = (a[i] + b[i]) % G.factors[i];
  return r;
}

inline Tuple tuple_sub(const AbelianGroup& G, const Tuple& a, const Tuple& b) {
  Tuple r(G.rank());
  for (int i = 0; i < G.rank(); ++i) r[i] = ((a[i] - b[i]) % G.factors[i] + G.factors[i]) % G.factors[i];
  return r;
}

inline Tuple tuple_zero(const AbelianGroup& G) { return Tuple(G.rank(), 0); }

// Endomorphisms as k x k integer matrices; column j is the image of the
// generator e_j, and row i is read modulo n_i.  For the map on generators to
// extend to a homomorphism, entry (i,j) must be divisible by n_i/gcd(n_i,n_j).
using Matrix = std::vector<std::vector<int>>;

inline int norm_mod(long long v, int n) { return static_cast<int>(((v % n) + n) % n); }

inline Matrix mat_normalized(const AbelianGroup& G, const Matrix& M) {
  int k = G.rank();
  if (static_cast<int>(M.size()) != k) fail(errc::incompatible_matrix, "matrix rank mismatch");
  Matrix R(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i) {
    if (static_cast<int>(M[i].size()) != k) fail(errc::incompatible_matrix, "matrix rank mismatch");
    for (int j = 0; j < k; ++j) R[i][j] = norm_mod(M[i][j], G.factors[i]);
  }
  return R;
}

inline void check_compatible(const AbelianGroup& G, const Matrix& M) {
  Matrix R = mat_normalized(G, M);
  for (int i = 0; i < G.rank(); ++i)
    for (int j = 0; j < G.rank(); ++j) {
      int need = G.factors[i] / std::gcd(G.factors[i], G.factors[j]);
      if (R[i][j] % need != 0)
        fail(errc::incompatible_matrix,
             "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                 std::to_string(R[i][j]) + " is not a multiple of " + std::to_string(need));
    }
}

inline Tuple endo_apply(const AbelianGroup& G, const Matrix& M, const Tuple& x) {
  check_compatible(G, M);
  int k = G.rank();
  Tuple r(k, 0);
  for (int i = 0; i < k; ++i) {
    long long s = 0;
    for (int j = 0; j < k; ++j) s += static_cast<long long>(M[i][j]) * x[j];
    r[i] = norm_mod(s, G.factors[i]);
  }
  return r;
}

inline Matrix endo_compose(const AbelianGroup& G, const Matrix& M, const Matrix& N) {
  check_compatible(G, M);
  check_compatible(G, N);
  int k = G.rank();
  Matrix R(k, std::vector<int>(k, 0));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      long long s = 0;
      for (int l = 0; l < k; ++l) s += static_cast<long long>(M[i][l]) * N[l][j];
      R[i][j] = norm_mod(s, G.factors[i]);
    }
  return R;
}

inline Matrix endo_add(const AbelianGroup& G, const Matrix& M, const Matrix& N) {
  int k = G.rank();
  Matrix R(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) R[i][j] = norm_mod(static_cast<long long>(M[i][j]) + N[i][j], G.factors[i]);
  return R;
}

inline Matrix endo_sub(const AbelianGroup& G, const Matrix& M, const Matrix& N) {
  int k = G.rank();
  Matrix R(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) R[i][j] = norm_mod(static_cast<long long>(M[i][j]) - N[i][j], G.factors[i]);
  return R;
}

inline Matrix mat_identity(const AbelianGroup& G) {
  Matrix I(G.rank(), std::vector<int>(G.rank(), 0));
  for (int i = 0; i < G.rank(); ++i) I[i][i] = norm_mod(1, G.factors[i]);
  return I;
}

inline Matrix mat_zero(const AbelianGroup& G) {
  return Matrix(G.rank(), std::vector<int>(G.rank(), 0));
}

inline bool endo_equal(const AbelianGroup& G, const Matrix& M, const Matrix& N) {
  return mat_normalized(G, M) == mat_normalized(G, N);
}

// Direct evaluation over all |G| elements.
inline bool is_automorphism(const AbelianGroup& G, const Matrix& M) {
  check_compatible(G, M);
  std::size_t n = G.order();
  std::vector<bool> seen(n, false);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t img = index_of(G, endo_apply(G, M, tuple_of(G, idx)));
    if (seen[img]) return false;
    seen[img] = true;
  }
  return true;
}

// Inverse of an automorphism, reconstructed from generator preimages.
inline Matrix endo_inverse(const AbelianGroup& G, const Matrix& M) {
  int k = G.rank();
  std::size_t n = G.order();
  std::vector<std::size_t> inv(n);
  std::vector<bool> seen(n, false);
  check_compatible(G, M);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t img = index_of(G, endo_apply(G, M, tuple_of(G, idx)));
    if (seen[img]) fail(errc::not_invertible, "matrix is not an automorphism");
    seen[img] = true;
    inv[img] = idx;
  }
  Matrix R(k, std::vector<int>(k));
  for (int j = 0; j < k; ++j) {
    Tuple ej = tuple_zero(G);
    ej[j] = norm_mod(1, G.factors[j]);
    Tuple pre = tuple_of(G, inv[index_of(G, ej)]);
    for (int i = 0; i < k; ++i) R[i][j] = pre[i];
  }
  return R;
}

// All automorphisms, materialized by filtering the compatible matrices for
// bijectivity.  The compatible-entry count is prod_{i,j} gcd(n_i, n_j).
inline std::vector<Matrix> automorphisms(const AbelianGroup& G) {
  int k = G.rank();
  if (k == 0) return {Matrix{}};
  // Allowed values per entry: multiples of n_i/gcd(n_i,n_j) below n_i.
  std::vector<std::vector<int>> choices(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      int step = G.factors[i] / std::gcd(G.factors[i], G.factors[j]);
      for (int v = 0; v < G.factors[i]; v += step)
        choices[static_cast<std::size_t>(i) * k + j].push_back(v);
    }
  std::vector<Matrix> result;
  Matrix M(k, std::vector<int>(k, 0));
  std::vector<std::size_t> pos(static_cast<std::size_t>(k) * k, 0);
  std::size_t cells = static_cast<std::size_t>(k) * k;
  while (true) {
    for (std::size_t c = 0; c < cells; ++c) M[c / k][c % k] = choices[c][pos[c]];
    if (is_automorphism(G, M)) result.push_back(M);
    std::size_t c = 0;
    while (c < cells && ++pos[c] == choices[c].size()) pos[c++] = 0;
    if (c == cells) break;
  }
  return result;
}

// Invariant-factor form d_1 | d_2 | ... | d_m of a factor list, ordered with
// the largest factor first.  Two factor lists present isomorphic groups iff
// their invariant factors coincide.
inline std::vector<int> invariant_factors(const std::vector<int>& factors) {
  std::map<int, std::vector<int>> exps;  // prime -> exponents, descending
  for (int f : factors) {
    int m = f;
    for (int p = 2; static_cast<long long>(p) * p <= m; ++p)
      if (m % p == 0) {
        int e = 0;
        while (m % p == 0) {
          m /= p;
          ++e;
        }
        exps[p].push_back(e);
      }
    if (m > 1) exps[m].push_back(1);
  }
  std::size_t width = 0;
  for (auto& [p, es] : exps) {
    std::sort(es.rbegin(), es.rend());
    width = std::max(width, es.size());
  }
  std::vector<int> inv(width, 1);
  for (auto& [p, es] : exps)
    for (std::size_t i = 0; i < es.size(); ++i) {
      int pw = 1;
      for (int e = 0; e < es[i]; ++e) pw *= p;
      inv[i] *= pw;
    }
  return inv;
}

// ---- basis extraction for materialized abelian permutation groups ----
//
// Turns an abelian group given by explicit permutations into a factor list
// together with a discrete-logarithm table, by the classical peel-off: pick
// an element of maximal order in each p-component, split it off, recurse on
// the quotient, and lift quotient basis elements preserving their orders.

struct AbelianBasis {
  std::vector<int> factors;          // prime-power orders of the basis, fixed order
  std::vector<Perm> basis;           // basis[i] has order factors[i]
  std::map<Perm, Tuple> dlog;        // element -> coordinates
};

namespace detail {

// Elements of p-power order within an abelian group's element list.
inline std::vector<Perm> primary_component(const std::vector<Perm>& elems, int p) {
  std::vector<Perm> comp;
  for (const auto& g : elems) {
    std::uint64_t o = perm_order(g);
    while (o % p == 0) o /= p;
    if (o == 1) comp.push_back(g);
  }
  return comp;
}

// Basis of an abelian p-group given as an element list (contains identity).
inline std::vector<Perm> p_group_basis(std::vector<Perm> elems, int p) {
  std::vector<Perm> basis;
  if (elems.size() <= 1) return basis;
  // Pick g of maximal order; quotient by <g> via canonical coset reps.
  auto maxit = std::max_element(elems.begin(), elems.end(),
                                [](const Perm& a, const Perm& b) {
                                  return perm_order(a) < perm_order(b);
                                });
  Perm g = *maxit;
  std::uint64_t ga = perm_order(g);
  std::vector<Perm> gpows;
  Perm acc = perm_identity(g.size());
  for (std::uint64_t i = 0; i < ga; ++i) {
    gpows.push_back(acc);
    acc = perm_compose(g, acc);
  }
  std::map<Perm, Perm> coset_rep;  // element -> lex-min of its <g>-coset
  for (const auto& h : elems) {
    if (coset_rep.count(h)) continue;
    std::vector<Perm> coset;
    for (const auto& gp : gpows) coset.push_back(perm_compose(h, gp));
    Perm rep = *std::min_element(coset.begin(), coset.end());
    for (const auto& c : coset) coset_rep[c] = rep;
  }
  std::vector<Perm> quotient;
  for (const auto& [elem, rep] : coset_rep)
    if (elem == rep) quotient.push_back(rep);

  // Quotient multiplication: compose reps, then canonicalize; order of a
  // coset is computed directly.
  struct QOps {
    const std::map<Perm, Perm>& rep;
    Perm mul(const Perm& a, const Perm& b) const { return rep.at(perm_compose(a, b)); }
    std::uint64_t order(const Perm& a, const Perm& id) const {
      std::uint64_t o = 1;
      Perm cur = a;
      while (cur != id) {
        cur = mul(cur, a);
        ++o;
      }
      return o;
    }
  } q{coset_rep};
  Perm qid = coset_rep.at(perm_identity(g.size()));

  // Recursive basis of the quotient: model it as a permutation group on its
  // own cosets so the same routine applies.
  std::map<Perm, std::uint16_t> qindex;
  std::sort(quotient.begin(), quotient.end());
  for (std::size_t i = 0; i < quotient.size(); ++i) qindex[quotient[i]] = static_cast<std::uint16_t>(i);
  std::vector<Perm> qelems;  // quotient elements as permutations of cosets (regular action)
  std::map<Perm, Perm> back;  // regular-action perm -> coset rep
  for (const auto& r : quotient) {
    Perm action(quotient.size());
    for (std::size_t i = 0; i < quotient.size(); ++i) action[i] = qindex[q.mul(r, quotient[i])];
    qelems.push_back(action);
    back[action] = r;
  }
  std::vector<Perm> qbasis_action = p_group_basis(qelems, p);

  basis.push_back(g);
  for (const auto& ba : qbasis_action) {
    Perm h = back.at(ba);  // a coset rep whose coset has order p^b in the quotient
    std::uint64_t pb = q.order(h, qid);
    // h^{p^b} lies in <g>; shift h by a g-power to kill it without changing
    // the coset or the order.
    Perm hp = perm_power(h, pb);
    std::uint64_t t = 0;
    while (gpows[t] != hp) ++t;
    if (t != 0) {
      std::uint64_t shift = (ga - t / pb % ga) % ga;  // g^{-t/p^b}
      h = perm_compose(h, perm_power(g, shift));
    }
    basis.push_back(h);
  }
  return basis;
}

}  // namespace detail

// Basis for the abelian group generated by the given element list (which
// must be closed, i.e. a full group).  Returns prime-power factors; the
// trivial group gets an empty list.
inline AbelianBasis abelian_basis(const std::vector<Perm>& elements, std::size_t degree) {
  AbelianBasis out;
  std::size_t n = elements.size();
  std::vector<int> primes;
  for (std::size_t m = n, p = 2; m > 1; ++p)
    if (m % p == 0) {
      primes.push_back(static_cast<int>(p));
      while (m % p == 0) m /= p;
    }
  for (int p : primes) {
    std::vector<Perm> comp = detail::primary_component(elements, p);
    for (const auto& b : detail::p_group_basis(comp, p)) {
      out.basis.push_back(b);
      out.factors.push_back(static_cast<int>(perm_order(b)));
    }
  }
  // Tabulate discrete logarithms by walking all basis-power products.
  AbelianGroup G{out.factors};
  Tuple coords(out.factors.size(), 0);
  Perm cur = perm_identity(degree);
  std::size_t total = G.order();
  for (std::size_t count = 0;; ++count) {
    out.dlog[cur] = coords;
    if (count + 1 == total) break;
    int i = static_cast<int>(coords.size()) - 1;
    while (true) {
      coords[i] = (coords[i] + 1) % out.factors[i];
      cur = perm_compose(out.basis[i], cur);
      if (coords[i] != 0) break;
      // wrapped: basis[i]^{factors[i]} = id already multiplied in; move on
      --i;
    }
  }
  if (out.dlog.size() != n)
    fail(errc::not_invertible, "basis extraction failed to span the group");
  return out;
}

}  // namespace rumple
