#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <unordered_set>
#include <vector>

#include "rumple/errors.hpp"
#include "rumple/magma.hpp"
#include "rumple/perm.hpp"

namespace rumple {

constexpr std::size_t kDefaultGroupCap = 10'000'000;

namespace detail {

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : p) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace detail

// A finitely generated permutation group with its element set materialized.
// Degrees and orders at desk scale are small enough that explicit closure
// keeps every structural predicate exact and auditable.
struct PermGroup {
  std::size_t degree = 0;
  std::vector<Perm> generators;
  std::vector<Perm> elements;  // sorted by image array; closure of generators

  std::size_t order() const { return elements.size(); }

  bool contains(const Perm& p) const {
    return std::binary_search(elements.begin(), elements.end(), p);
  }
};

// Breadth-first closure under composition; generators' inverses are included
// so the result is inversion-closed even midway through a capped run.
inline PermGroup close(const std::vector<Perm>& generators, std::size_t degree,
                       std::size_t cap = kDefaultGroupCap) {
  PermGroup G;
  G.degree = degree;
  G.generators = generators;
  for (const auto& g : generators) {
    if (g.size() != degree) fail(errc::dimension_mismatch, "generator degree mismatch");
    if (!is_permutation(g)) fail(errc::dimension_mismatch, "generator is not a permutation");
  }
  std::vector<Perm> step = generators;
  for (const auto& g : generators) step.push_back(perm_inverse(g));
  std::unordered_set<Perm, detail::PermHash> seen;
  std::vector<Perm> frontier;
  Perm id = perm_identity(degree);
  seen.insert(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& e : frontier)
      for (const auto& g : step) {
        Perm h = perm_compose(g, e);
        if (seen.insert(h).second) {
          if (seen.size() > cap) fail(errc::cap_exceeded, "group closure exceeded element cap");
          next.push_back(std::move(h));
        }
      }
    frontier = std::move(next);
  }
  G.elements.assign(seen.begin(), seen.end());
  std::sort(G.elements.begin(), G.elements.end());
  return G;
}

inline Perm left_translation(const Magma& X, int x) {
  Perm p(X.n);
  for (int y = 0; y < X.n; ++y) p[y] = static_cast<std::uint16_t>(X.at(x, y));
  return p;
}

inline Perm right_translation(const Magma& X, int x) {
  Perm p(X.n);
  for (int y = 0; y < X.n; ++y) p[y] = static_cast<std::uint16_t>(X.at(y, x));
  return p;
}

inline PermGroup lmlt(const Magma& X, std::size_t cap = kDefaultGroupCap) {
  if (!is_left_quasigroup(X)) fail(errc::not_left_quasigroup, "LMlt needs bijective rows");
  std::vector<Perm> gens;
  for (int x = 0; x < X.n; ++x) gens.push_back(left_translation(X, x));
  return close(gens, X.n, cap);
}

inline PermGroup mlt(const Magma& X, std::size_t cap = kDefaultGroupCap) {
  if (!is_quasigroup(X)) fail(errc::not_quasigroup, "Mlt needs a quasigroup");
  std::vector<Perm> gens;
  for (int x = 0; x < X.n; ++x) gens.push_back(left_translation(X, x));
  for (int x = 0; x < X.n; ++x) gens.push_back(right_translation(X, x));
  return close(gens, X.n, cap);
}

// Displacement groups with the fixed base point e = 0; the one-point
// generating sets already generate the full displacement groups.
inline PermGroup dis_plus(const Magma& X, std::size_t cap = kDefaultGroupCap) {
  if (!is_left_quasigroup(X)) fail(errc::not_left_quasigroup, "Dis+ needs bijective rows");
  Perm inv0 = perm_inverse(left_translation(X, 0));
  std::vector<Perm> gens;
  for (int x = 0; x < X.n; ++x) gens.push_back(perm_compose(left_translation(X, x), inv0));
  return close(gens, X.n, cap);
}

inline PermGroup dis_minus(const Magma& X, std::size_t cap = kDefaultGroupCap) {
  if (!is_left_quasigroup(X)) fail(errc::not_left_quasigroup, "Dis- needs bijective rows");
  Perm inv0 = perm_inverse(left_translation(X, 0));
  std::vector<Perm> gens;
  for (int x = 0; x < X.n; ++x) gens.push_back(perm_compose(inv0, left_translation(X, x)));
  return close(gens, X.n, cap);
}

inline std::vector<Perm> dis_generators(const Magma& X) {
  if (!is_left_quasigroup(X)) fail(errc::not_left_quasigroup, "Dis needs bijective rows");
  Perm inv0 = perm_inverse(left_translation(X, 0));
  std::vector<Perm> gens;
  for (int x = 0; x < X.n; ++x) {
    gens.push_back(perm_compose(left_translation(X, x), inv0));
    gens.push_back(perm_compose(inv0, left_translation(X, x)));
  }
  return gens;
}

inline PermGroup dis(const Magma& X, std::size_t cap = kDefaultGroupCap) {
  return close(dis_generators(X), static_cast<std::size_t>(X.n), cap);
}

// Abelianness of Dis without materializing the closure: a group is abelian
// iff its generators commute pairwise.
inline bool dis_generators_commute(const Magma& X) {
  std::vector<Perm> gens = dis_generators(X);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (perm_compose(gens[i], gens[j]) != perm_compose(gens[j], gens[i])) return false;
  return true;
}

inline bool is_abelian(const PermGroup& G) {
  for (std::size_t i = 0; i < G.generators.size(); ++i)
    for (std::size_t j = i + 1; j < G.generators.size(); ++j)
      if (perm_compose(G.generators[i], G.generators[j]) !=
          perm_compose(G.generators[j], G.generators[i]))
        return false;
  // Generators pairwise commuting suffices, but groups may also be built
  // from a plain element list; fall back to the elements when generator
  // data is absent.
  if (G.generators.empty())
    for (std::size_t i = 0; i < G.elements.size(); ++i)
      for (std::size_t j = i + 1; j < G.elements.size(); ++j)
        if (perm_compose(G.elements[i], G.elements[j]) !=
            perm_compose(G.elements[j], G.elements[i]))
          return false;
  return true;
}

inline bool is_transitive(const PermGroup& G) {
  if (G.degree == 0) return true;
  std::vector<bool> hit(G.degree, false);
  std::size_t count = 0;
  for (const auto& e : G.elements)
    if (!hit[e[0]]) {
      hit[e[0]] = true;
      ++count;
    }
  return count == G.degree;
}

inline bool is_regular(const PermGroup& G) {
  return is_transitive(G) && G.order() == G.degree;
}

inline bool is_subgroup_of(const PermGroup& H, const PermGroup& G) {
  if (H.degree != G.degree) return false;
  for (const auto& h : H.elements)
    if (!G.contains(h)) return false;
  return true;
}

// Normality checked on generators: g h g^{-1} for every generator pair; with
// both closures materialized this is sufficient.
inline bool is_normal_in(const PermGroup& H, const PermGroup& G) {
  if (!is_subgroup_of(H, G)) fail(errc::not_subgroup, "normality needs H <= G");
  auto hgens = H.generators.empty() ? H.elements : H.generators;
  auto ggens = G.generators.empty() ? G.elements : G.generators;
  for (const auto& g : ggens) {
    Perm ginv = perm_inverse(g);
    for (const auto& h : hgens)
      if (!H.contains(perm_compose(g, perm_compose(h, ginv)))) return false;
  }
  return true;
}

namespace detail {

// Generating set for the derived subgroup of <gens>: commutators of
// generator pairs, closed under conjugation by the generators (the normal
// closure of the commutators is exactly the derived subgroup).
inline std::vector<Perm> derived_generators(const std::vector<Perm>& gens, std::size_t cap) {
  std::vector<Perm> comms;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Perm c = perm_compose(perm_inverse(perm_compose(gens[j], gens[i])),
                            perm_compose(gens[i], gens[j]));
      if (!perm_is_identity(c)) comms.push_back(std::move(c));
    }
  if (comms.empty()) return {};
  std::unordered_set<Perm, PermHash> seen(comms.begin(), comms.end());
  std::vector<Perm> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& h : frontier)
      for (const auto& g : gens) {
        Perm c = perm_compose(g, perm_compose(h, perm_inverse(g)));
        if (seen.insert(c).second) {
          if (seen.size() > cap) fail(errc::cap_exceeded, "derived series exceeded cap");
          next.push_back(std::move(c));
        }
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace detail

// Derived series on generators; solvable iff it hits the trivial group.
// Orders strictly decrease along the series, so this terminates.
inline bool is_solvable(const PermGroup& G, std::size_t cap = kDefaultGroupCap) {
  if (G.order() <= 1) return true;
  std::vector<Perm> gens = G.generators.empty() ? G.elements : G.generators;
  std::size_t prev = G.order();
  while (true) {
    std::vector<Perm> dgens = detail::derived_generators(gens, cap);
    if (dgens.empty()) return true;
    PermGroup D = close(dgens, G.degree, cap);
    if (D.order() == prev) return false;
    if (D.order() == 1) return true;
    prev = D.order();
    gens = std::move(dgens);
  }
}

inline std::uint64_t element_order(const PermGroup& G, const Perm& g) {
  (void)G;
  return perm_order(g);
}

inline bool is_cyclic(const PermGroup& G) {
  for (const auto& e : G.elements)
    if (perm_order(e) == G.order()) return true;
  return false;
}

// Nilpotent iff the elements of p-power order number exactly p^{v_p(|G|)} for
// every prime p dividing |G|; they then form the unique (normal) Sylow
// p-subgroup, and conversely a direct product of Sylows has no other
// p-elements.
inline bool is_nilpotent(const PermGroup& G) {
  std::uint64_t n = G.order();
  for (std::uint64_t p = 2, rest = n; rest > 1; ++p) {
    if (p * p > rest) p = rest;
    if (rest % p != 0) continue;
    std::uint64_t pe = 1;
    while (rest % p == 0) {
      rest /= p;
      pe *= p;
    }
    std::uint64_t count = 0;
    for (const auto& e : G.elements) {
      std::uint64_t o = perm_order(e);
      while (o % p == 0) o /= p;
      if (o == 1) ++count;
    }
    if (count != pe) return false;
  }
  return true;
}

// Nonabelian with every subgroup normal. Subgroups are generated by their
// cyclic subgroups, so it suffices that the generators normalize each <g>.
inline bool is_hamiltonian(const PermGroup& G) {
  if (is_abelian(G)) return false;
  std::vector<Perm> gens = G.generators.empty() ? G.elements : G.generators;
  for (const auto& g : G.elements) {
    std::set<Perm> cyc;
    Perm cur = g;
    while (cyc.insert(cur).second) cur = perm_compose(cur, g);
    for (const auto& h : gens)
      if (!cyc.count(perm_compose(h, perm_compose(g, perm_inverse(h))))) return false;
  }
  return true;
}

// Maxima over x,y of the orders of L_xL_y^{-1} and R_xR_y^{-1}; both divide
// 4 on both-sided rumples.
inline std::pair<std::uint64_t, std::uint64_t> bothsided_generator_exponents(const Magma& X) {
  if (!is_both_sided_rumple(X)) fail(errc::not_both_sided, "exponents need a both-sided rumple");
  std::uint64_t lmax = 1, rmax = 1;
  for (int x = 0; x < X.n; ++x) {
    for (int y = 0; y < X.n; ++y) {
      Perm l = perm_compose(left_translation(X, x), perm_inverse(left_translation(X, y)));
      Perm r = perm_compose(right_translation(X, x), perm_inverse(right_translation(X, y)));
      lmax = std::max(lmax, perm_order(l));
      rmax = std::max(rmax, perm_order(r));
    }
  }
  return {lmax, rmax};
}

}  // namespace rumple
