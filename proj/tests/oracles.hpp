#pragma once

// Independent reference computations on machine integers. Nothing here calls
// into the library, so agreement with it is evidence rather than tautology.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using i64 = std::int64_t;
using IntMatrix = std::vector<std::vector<i64>>;

inline i64 mod(i64 a, i64 n) {
  a %= n;
  return a < 0 ? a + n : a;
}

inline i64 pow_mod(i64 a, i64 e, i64 n) {
  i64 r = 1 % n;
  a = mod(a, n);
  while (e > 0) {
    if (e & 1) r = static_cast<i64>(static_cast<__int128>(r) * a % n);
    a = static_cast<i64>(static_cast<__int128>(a) * a % n);
    e >>= 1;
  }
  return r;
}

inline i64 inv_mod(i64 a, i64 p) { return pow_mod(a, p - 2, p); }

inline std::vector<i64> prime_factors(i64 n) {
  std::vector<i64> out;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, i64 n) {
  IntMatrix c(a.size(), std::vector<i64>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] = mod(c[i][j] + a[i][k] * b[k][j], n);
  return c;
}

inline IntMatrix identity(std::size_t m) {
  IntMatrix e(m, std::vector<i64>(m, 0));
  for (std::size_t i = 0; i < m; ++i) e[i][i] = 1;
  return e;
}

// Leibniz expansion by recursion on the first row.
inline i64 det_mod(const IntMatrix& a, i64 n) {
  const std::size_t m = a.size();
  if (m == 0) return 1 % n;
  if (m == 1) return mod(a[0][0], n);
  i64 total = 0;
  for (std::size_t j = 0; j < m; ++j) {
    IntMatrix minor;
    for (std::size_t i = 1; i < m; ++i) {
      std::vector<i64> row;
      for (std::size_t k = 0; k < m; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    const i64 term = mod(a[0][j] * det_mod(minor, n), n);
    total = mod(total + ((j % 2) ? -term : term), n);
  }
  return total;
}

// Rank over F_p by plain elimination.
inline std::size_t rank_mod_p(IntMatrix a, i64 p) {
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && mod(a[piv][c], p) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const i64 inv = inv_mod(mod(a[rank][c], p), p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank) continue;
      const i64 f = mod(a[i][c] * inv, p);
      for (std::size_t k = 0; k < cols; ++k) a[i][k] = mod(a[i][k] - f * a[rank][k], p);
    }
    ++rank;
  }
  return rank;
}

// Additive closure of a set of vectors in (Z/N)^t; returns the visited
// indicator over all N^t vectors (index = base-N digits, first coordinate
// least significant).
inline std::vector<char> span_indicator(const std::vector<std::vector<i64>>& gens, i64 n, std::size_t t) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < t; ++i) total *= static_cast<std::size_t>(n);
  auto encode = [&](const std::vector<i64>& v) {
    std::size_t idx = 0;
    for (std::size_t i = t; i-- > 0;) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(mod(v[i], n));
    return idx;
  };
  std::vector<std::size_t> gen_idx;
  for (const auto& g : gens) gen_idx.push_back(encode(g));
  std::vector<char> seen(total, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  auto add = [&](std::size_t x, std::size_t g) {
    std::size_t out = 0, mul = 1;
    for (std::size_t i = 0; i < t; ++i) {
      const std::size_t d = (x % static_cast<std::size_t>(n) + g % static_cast<std::size_t>(n)) % static_cast<std::size_t>(n);
      out += d * mul;
      mul *= static_cast<std::size_t>(n);
      x /= static_cast<std::size_t>(n);
      g /= static_cast<std::size_t>(n);
    }
    return out;
  };
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    for (std::size_t g : gen_idx) {
      const std::size_t y = add(x, g);
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return seen;
}

inline bool spans_everything(const std::vector<std::vector<i64>>& gens, i64 n, std::size_t t) {
  const auto seen = span_indicator(gens, n, t);
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

// Smallest k such that some k vectors together with the relators span
// (Z/N)^t, searched upward from 0 and stopping at `limit`.
inline std::size_t min_generators_brute(const std::vector<std::vector<i64>>& relators, i64 n, std::size_t t,
                                        std::size_t limit) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < t; ++i) total *= static_cast<std::size_t>(n);
  auto decode = [&](std::size_t idx) {
    std::vector<i64> v(t);
    for (std::size_t i = 0; i < t; ++i) {
      v[i] = static_cast<i64>(idx % static_cast<std::size_t>(n));
      idx /= static_cast<std::size_t>(n);
    }
    return v;
  };
  for (std::size_t k = 0; k < limit; ++k) {
    std::vector<std::size_t> choice(k, 0);
    for (;;) {
      auto gens = relators;
      for (std::size_t c : choice) gens.push_back(decode(c));
      if (spans_everything(gens, n, t)) return k;
      std::size_t pos = 0;
      while (pos < k && ++choice[pos] == total) choice[pos++] = 0;
      if (pos == k) break;
    }
  }
  return limit;
}

// Nontrivial primitive solvability of z^2 = a x^2 + b y^2 modulo q by a full
// scan of (x, y) with a square table for z.
inline bool conic_solvable_mod(i64 a, i64 b, i64 p, i64 q) {
  std::vector<char> square(static_cast<std::size_t>(q), 0);
  std::vector<char> unit_square(static_cast<std::size_t>(q), 0);
  for (i64 z = 0; z < q; ++z) {
    square[static_cast<std::size_t>(z * z % q)] = 1;
    if (z % p) unit_square[static_cast<std::size_t>(z * z % q)] = 1;
  }
  for (i64 x = 0; x < q; ++x)
    for (i64 y = 0; y < q; ++y) {
      const i64 v = mod(a * (x * x % q) + b * (y * y % q), q);
      if ((x % p || y % p) ? square[static_cast<std::size_t>(v)] : unit_square[static_cast<std::size_t>(v)]) return true;
    }
  return false;
}

inline int legendre(i64 a, i64 p) {
  const i64 r = pow_mod(mod(a, p), (p - 1) / 2, p);
  return r == 0 ? 0 : (r == 1 ? 1 : -1);
}

}  // namespace oracle
