#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "rumple/errors.hpp"
#include "rumple/magma.hpp"
#include "rumple/perm.hpp"
#include "rumple/permgroup.hpp"

namespace fixtures {

// The two nontrivial latin rumples of order 4.
inline rumple::Magma x41() {
  return rumple::from_table(4, {{0, 1, 3, 2}, {2, 3, 1, 0}, {1, 0, 2, 3}, {3, 2, 0, 1}});
}

inline rumple::Magma x42() {
  return rumple::from_table(4, {{1, 3, 0, 2}, {0, 2, 1, 3}, {2, 0, 3, 1}, {3, 1, 2, 0}});
}

// Order-4 rumple with two equal rows (not latin); carries two distinct
// affine representations.
inline rumple::Magma tworeps() {
  return rumple::from_table(4, {{1, 0, 3, 2}, {3, 2, 1, 0}, {1, 0, 3, 2}, {3, 2, 1, 0}});
}

// x*y = y.
inline rumple::Magma projection(int n) {
  rumple::Magma X;
  X.n = n;
  X.t.resize(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) X.t[static_cast<std::size_t>(x) * n + y] = y;
  return X;
}

inline rumple::Magma cyclic_group(int n) {
  rumple::Magma X;
  X.n = n;
  X.t.resize(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) X.t[static_cast<std::size_t>(x) * n + y] = (x + y) % n;
  return X;
}

// Cayley table of the group generated by the given permutations, elements
// indexed in the sorted order produced by closure.
inline rumple::Magma cayley_table(const std::vector<rumple::Perm>& gens, std::size_t degree) {
  rumple::PermGroup G = rumple::close(gens, degree);
  std::map<rumple::Perm, int> index;
  for (std::size_t i = 0; i < G.elements.size(); ++i) index[G.elements[i]] = static_cast<int>(i);
  int n = static_cast<int>(G.order());
  rumple::Magma X;
  X.n = n;
  X.t.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      X.t[static_cast<std::size_t>(i) * n + j] =
          index[rumple::perm_compose(G.elements[i], G.elements[j])];
  return X;
}

inline rumple::Magma dihedral8() {
  return cayley_table({{1, 2, 3, 0}, {1, 0, 3, 2}}, 4);
}

inline rumple::Magma symmetric3() {
  return cayley_table({{1, 0, 2}, {1, 2, 0}}, 3);
}

inline rumple::Perm random_perm(int n, std::mt19937& rng) {
  rumple::Perm p = rumple::perm_identity(n);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline rumple::Magma random_left_quasigroup(int n, std::mt19937& rng) {
  rumple::Magma X;
  X.n = n;
  X.t.reserve(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    rumple::Perm row = random_perm(n, rng);
    for (int y = 0; y < n; ++y) X.t.push_back(row[y]);
  }
  return X;
}

// Runs f and reports the library error code it throws, if any.
template <typename F>
std::optional<rumple::errc> thrown_code(F&& f) {
  try {
    f();
  } catch (const rumple::error& e) {
    return e.code;
  }
  return std::nullopt;
}

}  // namespace fixtures
