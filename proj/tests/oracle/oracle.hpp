#pragma once

// Brute-force reference implementations for prime fields, written without
// the library: points are integer vectors, subspaces are sets of points
// closed under the span, polynomials are coefficient maps.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<int>;
using PointIds = std::vector<long>;  // sorted point indices

inline long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// Coordinate 0 is the most significant base-p digit.
inline Vec point_of(int p, int n, long idx) {
  Vec v(n);
  for (int i = n - 1; i >= 0; --i) {
    v[i] = static_cast<int>(idx % p);
    idx /= p;
  }
  return v;
}

inline long index_of(int p, const Vec& v) {
  long idx = 0;
  for (int x : v) idx = idx * p + x;
  return idx;
}

inline Vec add(int p, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % p;
  return r;
}

/// Every rank-k subspace of F_p^n as the sorted set of its points: spans of
/// all k-tuples, keeping those of size p^k.
inline std::vector<PointIds> subspaces(int p, int n, int k) {
  const long total = ipow(p, n);
  const long span_size = ipow(p, k);
  std::set<PointIds> found;
  std::vector<long> tuple(k, 0);
  while (true) {
    std::set<long> span;
    for (long coeffs = 0; coeffs < span_size; ++coeffs) {
      const Vec c = point_of(p, k, coeffs);
      Vec v(n, 0);
      for (int j = 0; j < k; ++j) {
        const Vec g = point_of(p, n, tuple[j]);
        for (int i = 0; i < n; ++i) v[i] = (v[i] + c[j] * g[i]) % p;
      }
      span.insert(index_of(p, v));
    }
    if (static_cast<long>(span.size()) == span_size) found.insert(PointIds(span.begin(), span.end()));
    int pos = k - 1;
    while (pos >= 0 && ++tuple[pos] == total) tuple[pos--] = 0;
    if (pos < 0) break;
  }
  return {found.begin(), found.end()};
}

/// Every translate of every rank-k subspace, deduplicated.
inline std::vector<PointIds> flats(int p, int n, int k) {
  std::set<PointIds> found;
  const long total = ipow(p, n);
  for (const auto& w : subspaces(p, n, k)) {
    for (long v = 0; v < total; ++v) {
      PointIds f;
      for (long x : w) f.push_back(index_of(p, add(p, point_of(p, n, x), point_of(p, n, v))));
      std::sort(f.begin(), f.end());
      found.insert(f);
    }
  }
  return {found.begin(), found.end()};
}

inline long overlap(const PointIds& a, const std::set<long>& s) {
  long c = 0;
  for (long x : a) c += s.count(x);
  return c;
}

inline bool is_furstenberg(int p, int n, int k, long m, const std::set<long>& s) {
  const long total = ipow(p, n);
  for (const auto& w : subspaces(p, n, k)) {
    long best = 0;
    for (long v = 0; v < total; ++v) {
      std::set<long> translate;
      for (long x : w) translate.insert(index_of(p, add(p, point_of(p, n, x), point_of(p, n, v))));
      best = std::max(best, overlap(PointIds(translate.begin(), translate.end()), s));
    }
    if (best < m) return false;
  }
  return true;
}

/// Minimum Furstenberg set size by scanning every subset (p^n <= 16).
inline long extremal(int p, int n, int k, long m) {
  const long total = ipow(p, n);
  long best = total;
  for (long mask = 0; mask < (1L << total); ++mask) {
    const long size = __builtin_popcountl(static_cast<unsigned long>(mask));
    if (size >= best) continue;
    std::set<long> s;
    for (long i = 0; i < total; ++i) {
      if (mask & (1L << i)) s.insert(i);
    }
    if (is_furstenberg(p, n, k, m, s)) best = size;
  }
  return best;
}

inline long incidences(const std::set<long>& s, const std::vector<PointIds>& family) {
  long total = 0;
  for (const auto& f : family) total += overlap(f, s);
  return total;
}

/// min over rank-k kernels K of the heaviest coset of K.
inline std::uint64_t best_projection_weight(int p, int n, int k, const std::map<long, std::uint64_t>& weights) {
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  const long total = ipow(p, n);
  for (const auto& kernel : subspaces(p, n, k)) {
    std::uint64_t heaviest = 0;
    std::set<long> seen;
    for (long v = 0; v < total; ++v) {
      if (seen.count(v)) continue;
      std::uint64_t w = 0;
      for (long x : kernel) {
        const long y = index_of(p, add(p, point_of(p, n, x), point_of(p, n, v)));
        seen.insert(y);
        const auto it = weights.find(y);
        if (it != weights.end()) w += it->second;
      }
      heaviest = std::max(heaviest, w);
    }
    best = std::min(best, heaviest);
  }
  return best;
}

using Poly = std::map<Vec, int>;  // exponents -> coefficient in [1, p)

inline long binom(long a, long b) {
  if (b < 0 || b > a) return 0;
  long r = 1;
  for (long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

/// Expands P(a + z) and returns the least total degree in z of a nonzero
/// coefficient; -1 for the zero polynomial.
inline int multiplicity(int p, const Poly& poly, const Vec& a) {
  std::map<Vec, long> expanded;
  for (const auto& [e, c] : poly) {
    // prod_j (a_j + z_j)^{e_j} = sum over i <= e of prod binom(e_j, i_j) a_j^{e_j - i_j} z^i
    Vec i(e.size(), 0);
    while (true) {
      long coeff = c;
      for (std::size_t j = 0; j < e.size(); ++j) {
        coeff = coeff * (binom(e[j], i[j]) % p) % p;
        for (int t = 0; t < e[j] - i[j]; ++t) coeff = coeff * a[j] % p;
      }
      expanded[i] = (expanded[i] + coeff) % p;
      std::size_t pos = 0;
      while (pos < e.size() && ++i[pos] > e[pos]) i[pos++] = 0;
      if (pos == e.size()) break;
    }
  }
  int best = -1;
  for (const auto& [i, c] : expanded) {
    if (c % p == 0) continue;
    int w = 0;
    for (int x : i) w += x;
    if (best < 0 || w < best) best = w;
  }
  return best;
}

inline int evaluate(int p, const Poly& poly, const Vec& x) {
  long total = 0;
  for (const auto& [e, c] : poly) {
    long term = c;
    for (std::size_t j = 0; j < e.size(); ++j) {
      for (int t = 0; t < e[j]; ++t) term = term * x[j] % p;
    }
    total = (total + term) % p;
  }
  return static_cast<int>(total);
}

/// Random polynomial over F_p with up to `terms` terms of total degree <= max_deg.
inline Poly random_poly(std::mt19937_64& rng, int p, int n, int max_deg, int terms) {
  Poly poly;
  std::uniform_int_distribution<int> coeff(1, p - 1);
  std::uniform_int_distribution<int> deg(0, max_deg);
  for (int t = 0; t < terms; ++t) {
    Vec e(n, 0);
    int budget = deg(rng);
    for (int j = 0; j < n && budget > 0; ++j) {
      std::uniform_int_distribution<int> take(0, budget);
      e[j] = j + 1 == n ? budget : take(rng);
      budget -= e[j];
    }
    poly[e] = (poly[e] + coeff(rng)) % p;
    if (poly[e] == 0) poly.erase(e);
  }
  return poly;
}

}  // namespace oracle
