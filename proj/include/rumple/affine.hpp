#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "rumple/abelian.hpp"
#include "rumple/errors.hpp"
#include "rumple/magma.hpp"
#include "rumple/permgroup.hpp"

namespace rumple {

// x*y = phi(x) + psi(y) + c over an abelian group, with elements laid out in
// lexicographic tuple order.
struct AffineDatum {
  AbelianGroup group;
  Matrix phi, psi;
  Tuple c;

  bool operator==(const AffineDatum& o) const {
    return group == o.group && phi == o.phi && psi == o.psi && c == o.c;
  }
  bool operator<(const AffineDatum& o) const {
    if (group.factors != o.group.factors) return group.factors < o.group.factors;
    if (phi != o.phi) return phi < o.phi;
    if (psi != o.psi) return psi < o.psi;
    return c < o.c;
  }
};

struct AffineFlags {
  bool phi_automorphism = false;
  bool psi_automorphism = false;  // needed for the table to be a left quasigroup
};

inline AffineFlags aff_flags(const AffineDatum& D) {
  return {is_automorphism(D.group, D.phi), is_automorphism(D.group, D.psi)};
}

inline Magma aff_to_magma(const AffineDatum& D) {
  const AbelianGroup& G = D.group;
  check_compatible(G, D.phi);
  check_compatible(G, D.psi);
  std::size_t n = G.order();
  std::vector<Tuple> phis(n), psis(n);
  for (std::size_t i = 0; i < n; ++i) {
    Tuple x = tuple_of(G, i);
    phis[i] = endo_apply(G, D.phi, x);
    psis[i] = endo_apply(G, D.psi, x);
  }
  Magma X;
  X.n = static_cast<int>(n);
  X.t.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    Tuple xc = tuple_add(G, phis[i], D.c);
    for (std::size_t j = 0; j < n; ++j)
      X.t[i * n + j] = static_cast<int>(index_of(G, tuple_add(G, xc, psis[j])));
  }
  return X;
}

// [phi,psi] = phi psi - psi phi = phi^2 as endomorphisms; when both are
// invertible the two equivalent normal forms are cross-checked.
inline bool rump_condition(const AbelianGroup& G, const Matrix& phi, const Matrix& psi) {
  check_compatible(G, phi);
  check_compatible(G, psi);
  Matrix lhs = endo_sub(G, endo_compose(G, phi, psi), endo_compose(G, psi, phi));
  bool main = lhs == endo_compose(G, phi, phi);
  if (is_automorphism(G, phi) && is_automorphism(G, psi)) {
    Matrix ai = endo_inverse(G, phi), bi = endo_inverse(G, psi);
    bool ba = endo_sub(G, endo_compose(G, psi, ai), endo_compose(G, ai, psi)) == mat_identity(G);
    bool ab = endo_sub(G, endo_compose(G, ai, bi), endo_compose(G, bi, ai)) ==
              endo_compose(G, bi, bi);
    if (main != ba || main != ab)
      throw std::logic_error("equivalent forms of the Rump condition disagree");
  }
  return main;
}

namespace detail {

// ---- small dense linear algebra over F_p ----

inline int pow_mod(long long b, long long e, int p) {
  long long r = 1 % p;
  b %= p;
  if (b < 0) b += p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<int>(r);
}

inline int fp_det(int p, Matrix M) {
  int n = static_cast<int>(M.size());
  for (auto& row : M)
    for (auto& v : row) v = ((v % p) + p) % p;
  long long det = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (M[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      std::swap(M[piv], M[col]);
      det = (p - det % p) % p;
    }
    det = det * M[col][col] % p;
    int inv = pow_mod(M[col][col], p - 2, p);
    for (int r = col + 1; r < n; ++r) {
      if (M[r][col] == 0) continue;
      long long f = static_cast<long long>(M[r][col]) * inv % p;
      for (int c = col; c < n; ++c)
        M[r][c] = static_cast<int>(((M[r][c] - f * M[col][c]) % p + p) % p);
    }
  }
  return static_cast<int>(det % p);
}

inline Matrix fp_inverse(int p, Matrix M) {
  int n = static_cast<int>(M.size());
  Matrix I(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) I[i][i] = 1 % p;
  for (auto& row : M)
    for (auto& v : row) v = ((v % p) + p) % p;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (M[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) fail(errc::not_invertible, "matrix is singular modulo " + std::to_string(p));
    std::swap(M[piv], M[col]);
    std::swap(I[piv], I[col]);
    long long inv = pow_mod(M[col][col], p - 2, p);
    for (int c = 0; c < n; ++c) {
      M[col][c] = static_cast<int>(M[col][c] * inv % p);
      I[col][c] = static_cast<int>(I[col][c] * inv % p);
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || M[r][col] == 0) continue;
      long long f = M[r][col];
      for (int c = 0; c < n; ++c) {
        M[r][c] = static_cast<int>(((M[r][c] - f * M[col][c]) % p + p) % p);
        I[r][c] = static_cast<int>(((I[r][c] - f * I[col][c]) % p + p) % p);
      }
    }
  }
  return I;
}

inline Matrix fp_mul(int p, const Matrix& A, const Matrix& B) {
  int n = static_cast<int>(A.size());
  Matrix R(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      if (A[i][l] == 0) continue;
      long long a = A[i][l];
      for (int j = 0; j < n; ++j) R[i][j] = static_cast<int>((R[i][j] + a * B[l][j]) % p);
    }
  return R;
}

inline int fp_trace(int p, const Matrix& M) {
  long long t = 0;
  for (std::size_t i = 0; i < M.size(); ++i) t += M[i][i];
  return static_cast<int>(((t % p) + p) % p);
}

// Induced matrix on G/pG: the square submatrix on coordinates with p | n_i,
// reduced mod p.  Automorphisms of G reduce to invertible matrices.
inline Matrix reduction_mod_p(const AbelianGroup& G, const Matrix& M, int p) {
  std::vector<int> coords;
  for (int i = 0; i < G.rank(); ++i)
    if (G.factors[i] % p == 0) coords.push_back(i);
  Matrix R(coords.size(), std::vector<int>(coords.size()));
  for (std::size_t a = 0; a < coords.size(); ++a)
    for (std::size_t b = 0; b < coords.size(); ++b)
      R[a][b] = ((M[coords[a]][coords[b]] % p) + p) % p;
  return R;
}

inline std::vector<int> prime_divisors(std::size_t n) {
  std::vector<int> ps;
  for (std::size_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(static_cast<int>(p));
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(static_cast<int>(n));
  return ps;
}

// Fast automorphism test: an endomorphism of a finite abelian group is
// bijective iff its reduction mod every prime divisor is invertible.
inline bool is_automorphism_fast(const AbelianGroup& G, const Matrix& M,
                                 const std::vector<int>& primes) {
  for (int p : primes)
    if (fp_det(p, reduction_mod_p(G, M, p)) == 0) return false;
  return true;
}

// Greedy generating set of a materialized matrix group.
inline std::vector<Matrix> matrix_group_generators(const AbelianGroup& G,
                                                   const std::vector<Matrix>& elements) {
  std::vector<Matrix> gens;
  std::set<Matrix> closure{mat_identity(G)};
  for (const auto& M : elements) {
    if (closure.count(M)) continue;
    gens.push_back(M);
    // re-close
    std::vector<Matrix> frontier(closure.begin(), closure.end());
    while (!frontier.empty()) {
      std::vector<Matrix> next;
      for (const auto& e : frontier)
        for (const auto& g : gens) {
          Matrix h = endo_compose(G, g, e);
          if (closure.insert(h).second) next.push_back(std::move(h));
        }
      frontier = std::move(next);
    }
    if (closure.size() == elements.size()) break;
  }
  return gens;
}

}  // namespace detail

// Necessary conditions for membership in a latin Rump pair over F_p: A, A^2,
// B^{-1} and B^{-2} all have trace zero.
inline bool trace_conditions(int p, int n, const Matrix& A, const Matrix& B) {
  if (static_cast<int>(A.size()) != n || static_cast<int>(B.size()) != n)
    fail(errc::incompatible_matrix, "matrix size mismatch");
  if (detail::fp_det(p, A) == 0) fail(errc::not_invertible, "A is singular");
  Matrix Bi = detail::fp_inverse(p, B);  // throws NotInvertible when singular
  if (detail::fp_trace(p, A) != 0) return false;
  if (detail::fp_trace(p, detail::fp_mul(p, A, A)) != 0) return false;
  if (detail::fp_trace(p, Bi) != 0) return false;
  if (detail::fp_trace(p, detail::fp_mul(p, Bi, Bi)) != 0) return false;
  return true;
}

inline std::vector<Matrix> automorphisms_fast(const AbelianGroup& G) {
  int k = G.rank();
  if (k == 0) return {Matrix{}};
  std::vector<int> primes = detail::prime_divisors(G.order());
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
    if (detail::is_automorphism_fast(G, M, primes)) result.push_back(M);
    std::size_t c = 0;
    while (c < cells && ++pos[c] == choices[c].size()) pos[c++] = 0;
    if (c == cells) break;
  }
  return result;
}

namespace detail {

// Re-express a datum over the primary decomposition of its group, sorted by
// descending prime-power modulus.  The element-level isomorphism splits each
// coordinate by coprime residues (inverse by CRT), so data over presentations
// of the same abstract group become directly comparable.
inline AffineDatum to_primary_presentation(const AffineDatum& D) {
  const AbelianGroup& G = D.group;
  struct Comp {
    int modulus;
    int orig;
  };
  std::vector<Comp> comps;
  for (int i = 0; i < G.rank(); ++i) {
    int m = G.factors[i];
    for (int p : prime_divisors(m)) {
      int pe = 1;
      int t = m;
      while (t % p == 0) {
        pe *= p;
        t /= p;
      }
      comps.push_back({pe, i});
    }
  }
  std::stable_sort(comps.begin(), comps.end(),
                   [](const Comp& a, const Comp& b) { return a.modulus > b.modulus; });
  AbelianGroup H;
  for (const auto& c : comps) H.factors.push_back(c.modulus);

  auto fwd = [&](const Tuple& x) {
    Tuple h(H.rank());
    for (int a = 0; a < H.rank(); ++a) h[a] = x[comps[a].orig] % comps[a].modulus;
    return h;
  };
  auto bwd = [&](const Tuple& h) {
    Tuple x(G.rank(), 0);
    for (int i = 0; i < G.rank(); ++i) {
      // CRT over this coordinate's components
      long long r = 0, m = 1;
      for (int a = 0; a < H.rank(); ++a) {
        if (comps[a].orig != i) continue;
        long long mi = comps[a].modulus, ri = h[a];
        // solve r' = r mod m, r' = ri mod mi
        long long minv = 1;
        for (long long t = 1; t < mi; ++t)
          if (m % mi * t % mi == 1) {
            minv = t;
            break;
          }
        long long diff = ((ri - r) % mi + mi) % mi;
        r = r + m * (diff * minv % mi);
        m *= mi;
      }
      x[i] = static_cast<int>(r % G.factors[i]);
    }
    return x;
  };

  auto convert = [&](const Matrix& M) {
    Matrix R(H.rank(), std::vector<int>(H.rank()));
    for (int j = 0; j < H.rank(); ++j) {
      Tuple ej(H.rank(), 0);
      ej[j] = 1 % H.factors[j];
      Tuple img = fwd(endo_apply(G, M, bwd(ej)));
      for (int i = 0; i < H.rank(); ++i) R[i][j] = img[i];
    }
    return R;
  };

  AffineDatum out;
  out.group = H;
  out.phi = convert(D.phi);
  out.psi = convert(D.psi);
  out.c = fwd(D.c);
  return out;
}

}  // namespace detail

// Isomorphism of affine data: alpha in Aut(G) and u in Im(1-phi-psi) with
// phi2 = alpha phi1 alpha^{-1}, psi2 = alpha psi1 alpha^{-1} and
// c2 = alpha(c1 + u).  Data over non-isomorphic groups are never isomorphic.
inline std::optional<std::pair<Matrix, Tuple>> drapal_isomorphic(
    const AffineDatum& D1in, const AffineDatum& D2in,
    const std::vector<Matrix>* cached_auts = nullptr) {
  AffineDatum D1 = D1in, D2 = D2in;
  if (D1.group.factors != D2.group.factors) {
    if (invariant_factors(D1.group.factors) != invariant_factors(D2.group.factors))
      return std::nullopt;
    D1 = detail::to_primary_presentation(D1);
    D2 = detail::to_primary_presentation(D2);
    cached_auts = nullptr;
    if (D1.group.factors != D2.group.factors) return std::nullopt;
  }
  const AbelianGroup& G = D1.group;
  std::vector<Matrix> local;
  if (!cached_auts) {
    local = automorphisms_fast(G);
    cached_auts = &local;
  }
  Matrix one_m = endo_sub(G, endo_sub(G, mat_identity(G), D1.phi), D1.psi);
  std::set<Tuple> image;
  for (std::size_t i = 0; i < G.order(); ++i)
    image.insert(endo_apply(G, one_m, tuple_of(G, i)));
  Matrix p1 = mat_normalized(G, D1.phi), q1 = mat_normalized(G, D1.psi);
  Matrix p2 = mat_normalized(G, D2.phi), q2 = mat_normalized(G, D2.psi);
  for (const Matrix& a : *cached_auts) {
    if (endo_compose(G, a, p1) != endo_compose(G, p2, a)) continue;
    if (endo_compose(G, a, q1) != endo_compose(G, q2, a)) continue;
    Matrix ai = endo_inverse(G, a);
    Tuple u = tuple_sub(G, endo_apply(G, ai, D2.c), D1.c);
    if (image.count(u)) return std::make_pair(a, u);
  }
  return std::nullopt;
}

// One datum per isomorphism class of affine latin rumples over G, via the
// stratified orbit decomposition: conjugacy classes of phi, then psi-orbits
// under the centralizer of phi, then constants modulo the joint stabilizer
// acting together with translations by Im(1-phi-psi).
inline std::vector<AffineDatum> enumerate_affine_latin(const AbelianGroup& G,
                                                       std::size_t bound = 10000) {
  if (G.order() > bound) fail(errc::bound_exceeded, "group order exceeds enumeration bound");
  if (G.rank() == 0) return {AffineDatum{G, {}, {}, {}}};
  for (int f : G.factors)
    if (f < 2) fail(errc::entry_out_of_range, "group factors must be at least 2");
  std::vector<int> primes = detail::prime_divisors(G.order());
  std::vector<Matrix> auts = automorphisms_fast(G);
  std::vector<Matrix> agens = detail::matrix_group_generators(G, auts);
  std::vector<Matrix> agens_inv;
  for (const auto& g : agens) agens_inv.push_back(endo_inverse(G, g));

  // Necessary trace filter on the reductions mod every prime.
  std::vector<Matrix> acands;
  for (const auto& A : auts) {
    bool ok = true;
    for (int p : primes) {
      Matrix R = detail::reduction_mod_p(G, A, p);
      if (detail::fp_trace(p, R) != 0 ||
          detail::fp_trace(p, detail::fp_mul(p, R, R)) != 0) {
        ok = false;
        break;
      }
    }
    if (ok) acands.push_back(A);
  }

  std::vector<AffineDatum> out;
  std::set<Matrix> seen_a;
  for (const auto& Arep : acands) {
    if (seen_a.count(Arep)) continue;
    // Orbit of Arep under conjugation marks the whole class as visited.
    {
      std::vector<Matrix> frontier{Arep};
      seen_a.insert(Arep);
      while (!frontier.empty()) {
        std::vector<Matrix> next;
        for (const auto& M : frontier)
          for (std::size_t gi = 0; gi < agens.size(); ++gi) {
            Matrix c = endo_compose(G, endo_compose(G, agens[gi], M), agens_inv[gi]);
            if (seen_a.insert(c).second) next.push_back(std::move(c));
          }
        frontier = std::move(next);
      }
    }
    const Matrix& A = Arep;
    Matrix A2 = endo_compose(G, A, A);
    std::vector<Matrix> bs;
    for (const auto& B : auts)
      if (endo_sub(G, endo_compose(G, A, B), endo_compose(G, B, A)) == A2) bs.push_back(B);
    if (bs.empty()) continue;

    std::vector<Matrix> cent;
    for (const auto& al : auts)
      if (endo_compose(G, al, A) == endo_compose(G, A, al)) cent.push_back(al);
    std::vector<Matrix> cgens = detail::matrix_group_generators(G, cent);
    std::vector<Matrix> cgens_inv;
    for (const auto& g : cgens) cgens_inv.push_back(endo_inverse(G, g));

    std::set<Matrix> seen_b;
    for (const auto& Brep : bs) {
      if (seen_b.count(Brep)) continue;
      {
        std::vector<Matrix> frontier{Brep};
        seen_b.insert(Brep);
        while (!frontier.empty()) {
          std::vector<Matrix> next;
          for (const auto& M : frontier)
            for (std::size_t gi = 0; gi < cgens.size(); ++gi) {
              Matrix c = endo_compose(G, endo_compose(G, cgens[gi], M), cgens_inv[gi]);
              if (seen_b.insert(c).second) next.push_back(std::move(c));
            }
          frontier = std::move(next);
        }
      }
      const Matrix& B = Brep;
      std::vector<Matrix> stab;
      for (const auto& al : cent)
        if (endo_compose(G, al, B) == endo_compose(G, B, al)) stab.push_back(al);
      std::vector<Matrix> stgens = detail::matrix_group_generators(G, stab);

      Matrix one_m = endo_sub(G, endo_sub(G, mat_identity(G), A), B);
      std::vector<Tuple> ugens;
      for (int j = 0; j < G.rank(); ++j) {
        Tuple ej = tuple_zero(G);
        ej[j] = 1 % G.factors[j];
        ugens.push_back(endo_apply(G, one_m, ej));
      }

      std::size_t n = G.order();
      std::vector<bool> visited(n, false);
      for (std::size_t ci = 0; ci < n; ++ci) {
        if (visited[ci]) continue;
        out.push_back(AffineDatum{G, A, B, tuple_of(G, ci)});
        std::vector<std::size_t> frontier{ci};
        visited[ci] = true;
        while (!frontier.empty()) {
          std::vector<std::size_t> next;
          for (std::size_t e : frontier) {
            Tuple t = tuple_of(G, e);
            for (const auto& u : ugens) {
              std::size_t f = index_of(G, tuple_add(G, t, u));
              if (!visited[f]) {
                visited[f] = true;
                next.push_back(f);
              }
            }
            for (const auto& g : stgens) {
              std::size_t f = index_of(G, endo_apply(G, g, t));
              if (!visited[f]) {
                visited[f] = true;
                next.push_back(f);
              }
            }
          }
          frontier = std::move(next);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  // The stratification is a transversal by construction; double-check with
  // the pairwise isomorphism test when the automorphism group is small.
  if (auts.size() <= 25000) {
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t j = i + 1; j < out.size(); ++j)
        if (drapal_isomorphic(out[i], out[j], &auts))
          throw std::logic_error("enumeration produced isomorphic duplicates");
  }
  return out;
}

// m = prod p_i^{k_i} supports a latin rumple of that order iff p_i | k_i
// throughout; m = 1 vacuously.
inline bool spectrum_admits(std::uint64_t m) {
  if (m == 0) fail(errc::entry_out_of_range, "order must be positive");
  for (std::uint64_t p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      std::uint64_t k = 0;
      while (m % p == 0) {
        m /= p;
        ++k;
      }
      if (k % p != 0) return false;
    }
  if (m > 1) return false;  // leftover prime to the first power
  return true;
}

// The canonical pair over F_p in dimension n (p | n): A is the cyclic
// permutation matrix sending e_i to e_{i+1}, B = I - D with D having i on
// the subdiagonal entry (i+1, i).
inline std::pair<Matrix, Matrix> canonical_char_pair(int n, int p) {
  if (n % p != 0) fail(errc::char_mismatch, "p must divide n");
  Matrix A(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) A[(i + 1) % n][i] = 1;
  Matrix B(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) B[i][i] = 1 % p;
  for (int r = 1; r < n; ++r) B[r][r - 1] = ((-r) % p + p) % p;
  if (detail::fp_det(p, A) == 0 || detail::fp_det(p, B) == 0)
    throw std::logic_error("canonical pair must be invertible");
  Matrix Ai = detail::fp_inverse(p, A);
  Matrix BAi = detail::fp_mul(p, B, Ai), AiB = detail::fp_mul(p, Ai, B);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int diff = ((BAi[i][j] - AiB[i][j]) % p + p) % p;
      if (diff != (i == j ? 1 % p : 0))
        throw std::logic_error("canonical pair fails the Rump condition");
    }
  return {A, B};
}

// Circ(c_1,...,c_p) - D, where Circ places c_1 on the diagonal and c_{k+1}
// on the k-th superdiagonal (cyclically), matching Circ(0,...,0,1) = the
// canonical cyclic permutation matrix.
inline Matrix circulant_B(int p, const std::vector<int>& c) {
  if (static_cast<int>(c.size()) != p) fail(errc::dimension_mismatch, "need p circulant entries");
  Matrix B(p, std::vector<int>(p));
  for (int r = 0; r < p; ++r)
    for (int col = 0; col < p; ++col) B[r][col] = ((c[((col - r) % p + p) % p] % p) + p) % p;
  for (int r = 1; r < p; ++r) B[r][r - 1] = ((B[r][r - 1] - r) % p + p) % p;
  return B;
}

// c_1 + ... + c_{p-1} mod p; checked against the brute-force determinant.
inline int circulant_det_formula(int p, const std::vector<int>& c) {
  if (static_cast<int>(c.size()) != p) fail(errc::dimension_mismatch, "need p circulant entries");
  long long s = 0;
  for (int i = 0; i + 1 < p; ++i) s += c[i];
  int formula = static_cast<int>(((s % p) + p) % p);
  int det = detail::fp_det(p, circulant_B(p, c));
  if (det != formula) throw std::logic_error("circulant determinant formula disagrees");
  return formula;
}

inline Magma build_cc_rumple(int p, const std::vector<int>& cvec, const Tuple& c) {
  int formula = circulant_det_formula(p, cvec);
  if (formula == 0) fail(errc::singular_b, "circulant sum vanishes mod p");
  AbelianGroup G{std::vector<int>(p, p)};
  Matrix A(p, std::vector<int>(p, 0));
  for (int i = 0; i < p; ++i) A[(i + 1) % p][i] = 1;
  AffineDatum D{G, A, circulant_B(p, cvec), c};
  if (!is_automorphism(G, D.psi) || !rump_condition(G, D.phi, D.psi))
    throw std::logic_error("circulant datum must satisfy the latin criteria");
  Magma X = aff_to_magma(D);
  if (X.n <= 256 && !is_latin_rumple(X))
    throw std::logic_error("circulant datum must yield a latin rumple");
  return X;
}

// ---- displacement-group characterizations ----

inline bool is_group_isotopic(const Magma& X);
inline bool is_abelian_group_isotopic(const Magma& X);

inline bool is_affine(const Magma& X) {
  if (!is_latin_rumple(X)) fail(errc::not_latin_rumple, "affine test needs a latin rumple");
  if (X.n == 1) return true;
  PermGroup D = dis(X);
  bool affine = is_abelian(D) && is_normal_in(D, mlt(X));
  if (affine && !is_abelian_group_isotopic(X))
    throw std::logic_error("affine rumple must be isotopic to an abelian group");
  return affine;
}

inline bool is_group_isotopic(const Magma& X) {
  if (!is_latin_rumple(X)) fail(errc::not_latin_rumple, "isotopy test needs a latin rumple");
  if (X.n == 1) return true;
  return is_regular(dis(X));
}

inline bool is_abelian_group_isotopic(const Magma& X) {
  if (!is_latin_rumple(X)) fail(errc::not_latin_rumple, "isotopy test needs a latin rumple");
  if (X.n == 1) return true;
  bool abelian = is_abelian(dis(X));
  if (abelian && !is_group_isotopic(X))
    throw std::logic_error("abelian-group-isotopic rumple must be group-isotopic");
  return abelian;
}

// Explicit affine representation of an affine latin rumple: carrier Dis(X)
// with base point e = 0, phi = conjugation by R_{ee}, psi = conjugation by
// the squaring map, c = L_{ee} L_e^{-1}.  The map x -> L_x L_e^{-1} is then
// an isomorphism onto the resulting affine magma; absent when X is not
// affine.
inline std::optional<AffineDatum> affinize(const Magma& X) {
  if (!is_latin_rumple(X)) fail(errc::not_latin_rumple, "affinize needs a latin rumple");
  if (!is_affine(X)) return std::nullopt;
  PermGroup D = dis(X);
  AbelianBasis basis = abelian_basis(D.elements, X.n);
  AbelianGroup G{basis.factors};

  int e = 0;
  int ee = X.at(e, e);
  Perm Le = left_translation(X, e);
  Perm Lei = perm_inverse(Le);
  Perm Ree = right_translation(X, ee);
  Perm Reei = perm_inverse(Ree);
  Perm sigma(X.n);
  for (int x = 0; x < X.n; ++x) sigma[x] = static_cast<std::uint16_t>(X.at(x, x));
  Perm sigmai = perm_inverse(sigma);

  auto matrix_of = [&](auto&& act) {
    Matrix M(G.rank(), std::vector<int>(G.rank()));
    for (int j = 0; j < G.rank(); ++j) {
      Perm img = act(basis.basis[j]);
      auto it = basis.dlog.find(img);
      if (it == basis.dlog.end())
        throw std::logic_error("conjugation left the displacement group");
      for (int i = 0; i < G.rank(); ++i) M[i][j] = it->second[i];
    }
    return M;
  };
  AffineDatum out;
  out.group = G;
  out.phi = matrix_of([&](const Perm& f) { return perm_compose(Ree, perm_compose(f, Reei)); });
  out.psi = matrix_of([&](const Perm& f) { return perm_compose(sigma, perm_compose(f, sigmai)); });
  Perm cperm = perm_compose(left_translation(X, ee), Lei);
  auto cit = basis.dlog.find(cperm);
  if (cit == basis.dlog.end()) throw std::logic_error("constant is not a displacement");
  out.c = cit->second;

  if (!is_automorphism(G, out.psi) || !is_automorphism(G, out.phi))
    throw std::logic_error("affine representation of a latin rumple needs automorphisms");

  // xi(x) = L_x L_e^{-1} must be an isomorphism onto the affine table.
  Magma T = aff_to_magma(out);
  std::vector<int> xi(X.n);
  std::vector<bool> hit(X.n, false);
  for (int x = 0; x < X.n; ++x) {
    auto it = basis.dlog.find(perm_compose(left_translation(X, x), Lei));
    if (it == basis.dlog.end()) throw std::logic_error("xi image is not a displacement");
    xi[x] = static_cast<int>(index_of(G, it->second));
    if (hit[xi[x]]) throw std::logic_error("xi must be injective");
    hit[xi[x]] = true;
  }
  for (int x = 0; x < X.n; ++x)
    for (int y = 0; y < X.n; ++y)
      if (T.at(xi[x], xi[y]) != xi[X.at(x, y)])
        throw std::logic_error("xi failed to transport the multiplication");
  return out;
}

}  // namespace rumple
