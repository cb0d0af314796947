#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rumple/abelian.hpp"
#include "rumple/affine.hpp"
#include "rumple/errors.hpp"
#include "rumple/magma.hpp"
#include "rumple/permgroup.hpp"

namespace rumple {

// theta: F x F -> G, stored as a |F| x |F| table of group tuples.
struct Cocycle {
  std::size_t base_order = 0;
  std::vector<std::vector<Tuple>> values;

  const Tuple& at(int x, int y) const {
    return values[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
  }

  bool operator==(const Cocycle& o) const {
    return base_order == o.base_order && values == o.values;
  }
  bool operator!=(const Cocycle& o) const { return !(*this == o); }
  bool operator<(const Cocycle& o) const {
    return base_order != o.base_order ? base_order < o.base_order : values < o.values;
  }
};

inline Cocycle zero_cocycle(const AbelianGroup& G, std::size_t base_order) {
  Cocycle th;
  th.base_order = base_order;
  th.values.assign(base_order, std::vector<Tuple>(base_order, tuple_zero(G)));
  return th;
}

// Central extension of the group by the base:
//   (a,x) * (b,y) = (phi(a) + psi(b) + theta(x,y), x y)
// on G x F with the group coordinate major in the element order. A trivial
// base recovers the affine construction with c = theta(0,0).
struct ExtensionDatum {
  AbelianGroup group;
  Magma base;
  Matrix phi, psi;
  Cocycle theta;

  bool operator==(const ExtensionDatum& o) const {
    return group == o.group && base == o.base && phi == o.phi && psi == o.psi &&
           theta == o.theta;
  }
};

struct ExtensionFlags {
  bool phi_automorphism = false;  // with a latin base, needed for the table to be latin
  bool base_latin = false;
};

namespace detail {

// Shared validation for the datum minus the cocycle; everything malformed
// maps to invalid_extension so callers see one failure mode.
inline void check_extension_core(const AbelianGroup& G, const Magma& base, const Matrix& phi,
                                 const Matrix& psi) {
  try {
    check_compatible(G, phi);
    check_compatible(G, psi);
  } catch (const error& e) {
    fail(errc::invalid_extension, e.what());
  }
  if (!is_automorphism(G, psi)) fail(errc::invalid_extension, "psi must be an automorphism");
  if (base.n < 1) fail(errc::invalid_extension, "base must be nonempty");
  if (!is_left_quasigroup(base) || !satisfies_left_rump(base))
    fail(errc::invalid_extension, "base must be a Rump left quasigroup");
}

inline void check_extension(const ExtensionDatum& E) {
  check_extension_core(E.group, E.base, E.phi, E.psi);
  std::size_t nf = static_cast<std::size_t>(E.base.n);
  std::size_t k = E.group.rank();
  if (E.theta.base_order != nf || E.theta.values.size() != nf)
    fail(errc::invalid_extension, "cocycle shape does not match the base");
  for (const auto& row : E.theta.values) {
    if (row.size() != nf) fail(errc::invalid_extension, "cocycle shape does not match the base");
    for (const auto& v : row) {
      if (v.size() != k) fail(errc::invalid_extension, "cocycle entry has wrong rank");
      for (std::size_t i = 0; i < k; ++i)
        if (v[i] < 0 || v[i] >= E.group.factors[i])
          fail(errc::invalid_extension, "cocycle entry out of range");
    }
  }
}

}  // namespace detail

inline ExtensionFlags ext_flags(const ExtensionDatum& E) {
  detail::check_extension(E);
  return {is_automorphism(E.group, E.phi), is_latin_rumple(E.base)};
}

inline Magma ext_to_magma(const ExtensionDatum& E) {
  detail::check_extension(E);
  const AbelianGroup& G = E.group;
  std::size_t ng = G.order();
  std::size_t nf = static_cast<std::size_t>(E.base.n);
  std::vector<Tuple> phis(ng), psis(ng);
  for (std::size_t i = 0; i < ng; ++i) {
    Tuple a = tuple_of(G, i);
    phis[i] = endo_apply(G, E.phi, a);
    psis[i] = endo_apply(G, E.psi, a);
  }
  std::size_t n = ng * nf;
  Magma X;
  X.n = static_cast<int>(n);
  X.t.resize(n * n);
  for (std::size_t a = 0; a < ng; ++a)
    for (std::size_t b = 0; b < ng; ++b) {
      Tuple ab = tuple_add(G, phis[a], psis[b]);
      for (std::size_t x = 0; x < nf; ++x) {
        std::size_t row = (a * nf + x) * n + b * nf;
        for (std::size_t y = 0; y < nf; ++y) {
          std::size_t g = index_of(G, tuple_add(G, ab, E.theta.values[x][y]));
          X.t[row + y] = static_cast<int>(
              g * nf + static_cast<std::size_t>(E.base.at(static_cast<int>(x), static_cast<int>(y))));
        }
      }
    }
  return X;
}

// phi(theta(x,y) - theta(y,x)) + psi(theta(x,z) - theta(y,z))
//   + theta(xy,xz) - theta(yx,yz) = 0 for all x, y, z. Given the Rump
// condition on (phi, psi) this holds exactly when the extension table
// satisfies the left Rump identity; the table is cross-checked at desk scale.
inline bool cocycle_condition(const ExtensionDatum& E) {
  detail::check_extension(E);
  if (!rump_condition(E.group, E.phi, E.psi))
    fail(errc::rump_condition_fails, "cocycle condition needs [phi,psi] = phi^2");
  const AbelianGroup& G = E.group;
  int nf = E.base.n;
  Tuple zero = tuple_zero(G);
  bool holds = true;
  for (int x = 0; x < nf && holds; ++x)
    for (int y = 0; y < nf && holds; ++y)
      for (int z = 0; z < nf && holds; ++z) {
        Tuple lhs = endo_apply(G, E.phi, tuple_sub(G, E.theta.at(x, y), E.theta.at(y, x)));
        lhs = tuple_add(G, lhs,
                        endo_apply(G, E.psi, tuple_sub(G, E.theta.at(x, z), E.theta.at(y, z))));
        lhs = tuple_add(G, lhs, E.theta.at(E.base.at(x, y), E.base.at(x, z)));
        lhs = tuple_sub(G, lhs, E.theta.at(E.base.at(y, x), E.base.at(y, z)));
        if (lhs != zero) holds = false;
      }
  if (G.order() * static_cast<std::size_t>(nf) <= 256 &&
      holds != satisfies_left_rump(ext_to_magma(E)))
    throw std::logic_error("cocycle scan disagrees with the extension table");
  return holds;
}

namespace detail {

// Reduced row echelon form over F_p, maintained one row at a time; only the
// pivot rows are kept. Pivots take the first nonzero column of the reduced
// row, so the result is reproducible for a fixed row order.
struct FpEliminator {
  int p = 2;
  std::size_t cols = 0;
  std::vector<std::vector<std::uint8_t>> rows;  // leading 1 at pivots[i], sorted by pivot
  std::vector<std::size_t> pivots;

  void reduce(std::vector<std::uint8_t>& r) const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      int coeff = r[pivots[i]];
      if (coeff == 0) continue;
      for (std::size_t c = 0; c < cols; ++c)
        r[c] = static_cast<std::uint8_t>((r[c] + (p - coeff) * rows[i][c]) % p);
    }
  }

  bool add(std::vector<std::uint8_t> r) {
    reduce(r);
    std::size_t lead = cols;
    for (std::size_t c = 0; c < cols; ++c)
      if (r[c] != 0) {
        lead = c;
        break;
      }
    if (lead == cols) return false;
    int inv = pow_mod(r[lead], p - 2, p);
    for (std::size_t c = 0; c < cols; ++c)
      r[c] = static_cast<std::uint8_t>(r[c] * inv % p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      int coeff = rows[i][lead];
      if (coeff == 0) continue;
      for (std::size_t c = 0; c < cols; ++c)
        rows[i][c] = static_cast<std::uint8_t>((rows[i][c] + (p - coeff) * r[c]) % p);
    }
    std::size_t pos = static_cast<std::size_t>(
        std::lower_bound(pivots.begin(), pivots.end(), lead) - pivots.begin());
    pivots.insert(pivots.begin() + static_cast<std::ptrdiff_t>(pos), lead);
    rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(pos), std::move(r));
    return true;
  }

  // Standard kernel basis: one vector per free column, 1 there, zero at the
  // other free columns; listed by ascending free column.
  std::vector<std::vector<std::uint8_t>> kernel_basis() const {
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<std::uint8_t>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
      if (is_pivot[f]) continue;
      std::vector<std::uint8_t> v(cols, 0);
      v[f] = 1;
      for (std::size_t i = 0; i < rows.size(); ++i)
        v[pivots[i]] = static_cast<std::uint8_t>((p - rows[i][f]) % p);
      basis.push_back(std::move(v));
    }
    return basis;
  }
};

inline int elementary_abelian_prime(const AbelianGroup& G) {
  if (G.rank() == 0) return 2;  // trivial group, any prime works
  int p = G.factors[0];
  for (int f : G.factors)
    if (f != p) fail(errc::not_elementary_abelian, "cocycle solver needs G = Z_p^k");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) fail(errc::not_elementary_abelian, "cocycle solver needs G = Z_p^k");
  if (p >= 256) fail(errc::entry_out_of_range, "prime too large for the cocycle solver");
  return p;
}

}  // namespace detail

// Basis of the space of cocycles F x F -> G = Z_p^k for a fixed (phi, psi)
// with the Rump condition: the cocycle identity is linear in theta, so the
// solutions are the kernel of a matrix over F_p with one unknown per
// (coordinate, x, y), coordinate major. Swapping x and y negates a row and
// x = y gives zero, so only triples with x < y contribute.
inline std::vector<Cocycle> solve_cocycles(const AbelianGroup& G, const Magma& F,
                                           const Matrix& phi, const Matrix& psi) {
  detail::check_extension_core(G, F, phi, psi);
  int p = detail::elementary_abelian_prime(G);
  if (!rump_condition(G, phi, psi))
    fail(errc::rump_condition_fails, "cocycle solver needs [phi,psi] = phi^2");
  std::size_t k = G.rank();
  std::size_t nf = static_cast<std::size_t>(F.n);
  detail::FpEliminator elim;
  elim.p = p;
  elim.cols = k * nf * nf;
  auto unknown = [&](std::size_t i, std::size_t x, std::size_t y) {
    return (i * nf + x) * nf + y;
  };
  std::vector<std::uint8_t> row(elim.cols);
  for (std::size_t x = 0; x < nf; ++x)
    for (std::size_t y = x + 1; y < nf; ++y) {
      std::size_t xy = static_cast<std::size_t>(F.at(static_cast<int>(x), static_cast<int>(y)));
      std::size_t yx = static_cast<std::size_t>(F.at(static_cast<int>(y), static_cast<int>(x)));
      for (std::size_t z = 0; z < nf; ++z) {
        std::size_t xz = static_cast<std::size_t>(F.at(static_cast<int>(x), static_cast<int>(z)));
        std::size_t yz = static_cast<std::size_t>(F.at(static_cast<int>(y), static_cast<int>(z)));
        for (std::size_t i = 0; i < k; ++i) {
          std::fill(row.begin(), row.end(), 0);
          auto bump = [&](std::size_t u, int coeff) {
            row[u] = static_cast<std::uint8_t>(((row[u] + coeff) % p + p) % p);
          };
          for (std::size_t j = 0; j < k; ++j) {
            int a = phi[i][j] % p, b = psi[i][j] % p;
            bump(unknown(j, x, y), a);
            bump(unknown(j, y, x), -a);
            bump(unknown(j, x, z), b);
            bump(unknown(j, y, z), -b);
          }
          bump(unknown(i, xy, xz), 1);
          bump(unknown(i, yx, yz), -1);
          elim.add(row);
        }
      }
    }
  std::vector<Cocycle> basis;
  for (const auto& v : elim.kernel_basis()) {
    Cocycle th = zero_cocycle(G, nf);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t x = 0; x < nf; ++x)
        for (std::size_t y = 0; y < nf; ++y) th.values[x][y][i] = v[unknown(i, x, y)];
    if (!cocycle_condition({G, F, phi, psi, th}))
      throw std::logic_error("cocycle solver produced a vector outside the solution space");
    basis.push_back(std::move(th));
  }
  return basis;
}

// Membership in the span of a solve_cocycles basis: every basis vector is 1
// at its own free column and 0 at the others', so coefficients can be read
// off and the combination compared entrywise.
inline bool cocycle_in_span(const AbelianGroup& G, const std::vector<Cocycle>& basis,
                            const Cocycle& th) {
  int p = detail::elementary_abelian_prime(G);
  if (basis.empty()) {
    for (const auto& row : th.values)
      for (const auto& v : row)
        if (v != tuple_zero(G)) return false;
    return true;
  }
  std::size_t nf = basis[0].base_order;
  std::size_t k = G.rank();
  if (th.base_order != nf) fail(errc::dimension_mismatch, "cocycle base order mismatch");
  auto entry = [&](const Cocycle& c, std::size_t i, std::size_t x, std::size_t y) {
    return c.values[x][y][i];
  };
  std::vector<int> coeff(basis.size(), 0);
  for (std::size_t b = 0; b < basis.size(); ++b) {
    for (std::size_t i = 0; i < k && coeff[b] == 0; ++i)
      for (std::size_t x = 0; x < nf && coeff[b] == 0; ++x)
        for (std::size_t y = 0; y < nf && coeff[b] == 0; ++y) {
          if (entry(basis[b], i, x, y) != 1) continue;
          bool signature = true;
          for (std::size_t o = 0; o < basis.size() && signature; ++o)
            if (o != b && entry(basis[o], i, x, y) != 0) signature = false;
          if (signature) coeff[b] = entry(th, i, x, y);
        }
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t x = 0; x < nf; ++x)
      for (std::size_t y = 0; y < nf; ++y) {
        int sum = 0;
        for (std::size_t b = 0; b < basis.size(); ++b)
          sum += coeff[b] * entry(basis[b], i, x, y);
        if (sum % p != entry(th, i, x, y)) return false;
      }
  return true;
}

// The Klein-group datum: G = Z_2 x Z_2, phi and psi the canonical
// characteristic-2 pair, theta(x,y) = (0, [x = y]). Over any nontrivial
// affine latin base this yields a latin rumple whose displacement group is
// nonabelian, hence a nonaffine latin rumple.
inline ExtensionDatum klein_extension(const Magma& F) {
  if (F.n < 2) fail(errc::base_not_affine_latin, "Klein extension needs a nontrivial base");
  if (!is_latin_rumple(F))
    fail(errc::base_not_affine_latin, "Klein extension needs a latin rumple base");
  if (!is_affine(F)) fail(errc::base_not_affine_latin, "Klein extension needs an affine base");
  ExtensionDatum E;
  E.group = AbelianGroup{{2, 2}};
  E.phi = {{0, 1}, {1, 0}};
  E.psi = {{1, 0}, {1, 1}};
  E.base = F;
  E.theta = zero_cocycle(E.group, static_cast<std::size_t>(F.n));
  for (int x = 0; x < F.n; ++x) E.theta.values[static_cast<std::size_t>(x)][static_cast<std::size_t>(x)] = {0, 1};
  Magma X = ext_to_magma(E);
  if (!is_latin_rumple(X))
    throw std::logic_error("Klein extension failed to produce a latin rumple");
  // Generator commutation settles abelianness without the closure, which can
  // be enormous here; a nonabelian displacement group already rules out
  // affineness, and the full predicate is re-run at desk scale.
  if (dis_generators_commute(X))
    throw std::logic_error("Klein extension produced an abelian displacement group");
  if (X.n <= 64 && is_affine(X))
    throw std::logic_error("Klein extension produced an affine rumple");
  return E;
}

// One layer of a nilpotent tower: an abelian group with matrices and a
// cocycle over whatever magma the previous layers produced.
struct ExtensionLayer {
  AbelianGroup group;
  Matrix phi, psi;
  Cocycle theta;
};

// Folds ext_to_magma over the layers starting from the trivial quasigroup;
// each layer is validated against the magma built so far. The layer count
// bounds the nilpotence class of the result.
inline Magma iterate_extensions(const std::vector<ExtensionLayer>& layers) {
  Magma X = from_table(1, {{0}});
  for (const auto& L : layers) X = ext_to_magma({L.group, X, L.phi, L.psi, L.theta});
  return X;
}

// One surveyed point of the cocycle solution space. The displacement-group
// fields use the same characterizations as is_affine and is_group_isotopic;
// a Hamiltonian displacement group of order 16 is Z_2 x Q_8.
struct ExtensionSurvey {
  Cocycle theta;
  std::size_t order = 0;
  std::size_t dis_order = 0;
  bool dis_abelian = false;
  bool dis_nilpotent = false;
  bool dis_hamiltonian = false;
  bool affine = false;
  bool group_isotopic = false;
  bool right_rump = false;
};

// Walks the solved cocycle space in a fixed order (coefficient counter over
// the basis, first vector least significant, starting at zero) and records
// structural properties of each extension, up to max_vectors points.
inline std::vector<ExtensionSurvey> survey_extensions(const AbelianGroup& G, const Magma& F,
                                                      const Matrix& phi, const Matrix& psi,
                                                      std::size_t max_vectors = 512) {
  detail::check_extension_core(G, F, phi, psi);
  if (!is_latin_rumple(F) || !is_automorphism(G, phi))
    fail(errc::invalid_extension, "survey needs latin extensions: latin base, phi bijective");
  int p = detail::elementary_abelian_prime(G);
  std::vector<Cocycle> basis = solve_cocycles(G, F, phi, psi);
  std::size_t nf = static_cast<std::size_t>(F.n);
  std::size_t k = G.rank();
  std::vector<int> coeff(basis.size(), 0);
  std::vector<ExtensionSurvey> out;
  while (out.size() < max_vectors) {
    Cocycle th = zero_cocycle(G, nf);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (coeff[b] == 0) continue;
      for (std::size_t x = 0; x < nf; ++x)
        for (std::size_t y = 0; y < nf; ++y)
          for (std::size_t i = 0; i < k; ++i)
            th.values[x][y][i] = (th.values[x][y][i] + coeff[b] * basis[b].values[x][y][i]) % p;
    }
    Magma X = ext_to_magma({G, F, phi, psi, th});
    ExtensionSurvey s;
    s.theta = std::move(th);
    s.order = static_cast<std::size_t>(X.n);
    PermGroup D = dis(X);
    s.dis_order = D.order();
    s.dis_abelian = is_abelian(D);
    s.dis_nilpotent = is_nilpotent(D);
    s.dis_hamiltonian = is_hamiltonian(D);
    s.affine = s.dis_abelian && is_normal_in(D, mlt(X));
    s.group_isotopic = is_regular(D);
    s.right_rump = satisfies_right_rump(X);
    out.push_back(std::move(s));
    std::size_t b = 0;
    while (b < basis.size() && ++coeff[b] == p) coeff[b++] = 0;
    if (b == basis.size()) break;
  }
  return out;
}

}  // namespace rumple
