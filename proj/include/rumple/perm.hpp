#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "rumple/errors.hpp"

namespace rumple {

// A permutation of {0,...,n-1} stored as its image vector: p[i] is the image
// of i.  Degree is bounded by 65535, which comfortably covers every magma
// this library can enumerate or verify.
using Perm = std::vector<std::uint16_t>;

inline Perm perm_identity(std::size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool is_permutation(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (auto v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

// (p * q)(i) = p(q(i)); composition applies q first.
inline Perm perm_compose(const Perm& p, const Perm& q) {
  Perm r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

inline Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint16_t>(i);
  return r;
}

inline bool perm_is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

// Order of p as a group element (lcm of cycle lengths).
inline std::uint64_t perm_order(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

// Length of the cycle of p containing x.
inline std::uint64_t perm_cycle_length(const Perm& p, std::size_t x) {
  std::uint64_t len = 1;
  for (std::size_t j = p[x]; j != x; j = p[j]) ++len;
  return len;
}

inline Perm perm_power(const Perm& p, std::uint64_t k) {
  Perm r = perm_identity(p.size());
  Perm base = p;
  while (k > 0) {
    if (k & 1) r = perm_compose(base, r);
    base = perm_compose(base, base);
    k >>= 1;
  }
  return r;
}

}  // namespace rumple
