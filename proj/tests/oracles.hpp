#pragma once

// Test-only oracles, kept independent of the library's computation paths:
// closed-form counting formulas and brute-force searches used to freeze
// expected values.

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "umfw/ramsey.hpp"
#include "umfw/structures.hpp"

namespace oracle {

inline long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

inline long stirling2(int n, int k) {
  if (n == 0 && k == 0) return 1;
  if (n == 0 || k == 0) return 0;
  // S(n,k) = k S(n-1,k) + S(n-1,k-1)
  std::vector<std::vector<long>> s(n + 1, std::vector<long>(k + 1, 0));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= std::min(i, k); ++j) s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
  return s[n][k];
}

inline long gaussian_binomial(int n, int k, int q) {
  if (k < 0 || k > n) return 0;
  // prod_{i=0}^{k-1} (q^{n-i} - 1) / (q^{k-i} - 1)
  long num = 1, den = 1;
  auto qpow = [&](int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= q;
    return r;
  };
  for (int i = 0; i < k; ++i) {
    num *= qpow(n - i) - 1;
    den *= qpow(k - i) - 1;
  }
  return num / den;
}

inline long factorial(int n) {
  long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Preservation checker written directly from the definitions; used to
// cross-validate every embedding the library returns.
inline bool embedding_ok(const umfw::FinStructure& a, const umfw::FinStructure& c,
                         const std::vector<int>& m) {
  using namespace umfw;
  if (int(m.size()) != a.n) return false;
  std::vector<char> hit(c.n, 0);
  for (int x : m) {
    if (x < 0 || x >= c.n || hit[x]) return false;
    hit[x] = 1;
  }
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y) {
      if (kind_is_graph(a.kind) && x < y && a.has_edge(x, y) != c.has_edge(m[x], m[y]))
        return false;
      if (kind_is_ordered(a.kind) && x != y && a.less(x, y) != c.less(m[x], m[y])) return false;
      if (kind_is_boolalg(a.kind)) {
        if (m[x & y] != (m[x] & m[y])) return false;
        if (m[x | y] != (m[x] | m[y])) return false;
      }
      if (kind_is_vecspace(a.kind) && m[vs_add(a, x, y)] != vs_add(c, m[x], m[y])) return false;
    }
  if (kind_is_boolalg(a.kind) && (m[0] != 0 || m[a.n - 1] != c.n - 1)) return false;
  if (kind_is_vecspace(a.kind)) {
    if (m[0] != 0) return false;
    for (int x = 0; x < a.n; ++x)
      for (int t = 0; t < a.p; ++t)
        if (m[vs_scale(a, t, x)] != vs_scale(c, t, m[x])) return false;
  }
  return true;
}

// Brute-force isomorphism over every bijection (structures of <= 8 elements).
inline std::optional<std::vector<int>> iso_by_bijections(const umfw::FinStructure& s,
                                                         const umfw::FinStructure& t) {
  if (s.n != t.n) return std::nullopt;
  std::vector<int> perm(s.n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (embedding_ok(s, t, perm)) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

// Exhaustive arrow oracle: enumerate every coloring (k^copies <= 2^20) and
// test monochromaticity by direct subset containment, independent of the
// library's search and validator paths.
inline bool arrow_by_enumeration(const umfw::FinStructure& c, const umfw::FinStructure& b,
                                 const umfw::FinStructure& a, int k) {
  using namespace umfw;
  CopySet ca = enumerate_copies(a, c);
  CopySet cb = enumerate_copies(b, c);
  const int m = int(ca.copies.size());
  long total = 1;
  for (int i = 0; i < m; ++i) {
    total *= k;
    if (total > (1 << 20)) throw std::runtime_error("oracle instance too large");
  }
  // containment table
  std::vector<std::vector<int>> inside(cb.copies.size());
  for (size_t j = 0; j < cb.copies.size(); ++j)
    for (int i = 0; i < m; ++i)
      if (std::includes(cb.copies[j].begin(), cb.copies[j].end(), ca.copies[i].begin(),
                        ca.copies[i].end()))
        inside[j].push_back(i);
  std::vector<int> colors(m);
  for (long code = 0; code < total; ++code) {
    long v = code;
    for (int i = 0; i < m; ++i) {
      colors[i] = int(v % k);
      v /= k;
    }
    bool mono_somewhere = false;
    for (const auto& subs : inside) {
      if (subs.empty()) {
        mono_somewhere = true;  // vacuous
        break;
      }
      bool mono = true;
      for (int i : subs)
        if (colors[i] != colors[subs.front()]) {
          mono = false;
          break;
        }
      if (mono) {
        mono_somewhere = true;
        break;
      }
    }
    if (!mono_somewhere) return false;
  }
  return true;
}

}  // namespace oracle
