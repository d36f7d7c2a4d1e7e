#pragma once

// Brute-force reference implementations. Deliberately naive and written
// without the library's periodicity, Smith-form or search machinery.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "grpdef/presentations.hpp"
#include "grpdef/quotients.hpp"
#include "grpdef/smith.hpp"
#include "grpdef/words.hpp"

namespace oracle {

using grpdef::Letter;
using grpdef::Word;

inline Word concat(const Word& x, const Word& y) {
  std::vector<Letter> letters(x.begin(), x.end());
  letters.insert(letters.end(), y.begin(), y.end());
  return grpdef::free_reduce(letters, x.rank());
}

inline Word naive_power(const Word& v, std::int64_t d) {
  Word out(v.rank());
  for (std::int64_t i = 0; i < d; ++i) out = concat(out, v);
  return out;
}

struct Root {
  Word root;
  std::int64_t exponent;
};

/// Every (v, d) with v^d = w and d >= 1. A root v = x y x^-1 with y
/// cyclically reduced satisfies w = x y^d x^-1 letter for letter, so v is a
/// prefix of w followed by a suffix of w.
inline std::vector<Root> all_roots(const Word& w) {
  std::vector<Root> out;
  std::set<std::pair<Word, std::int64_t>> seen;
  const auto letters = w.letters();
  const std::size_t n = letters.size();
  for (std::size_t pre = 1; pre <= n; ++pre)
    for (std::size_t suf = 0; suf + pre <= n; ++suf) {
      const Word v = concat(Word(letters.subspan(0, pre), w.rank()), Word(letters.subspan(n - suf), w.rank()));
      if (v.empty()) continue;
      Word acc(w.rank());
      for (std::int64_t d = 1; d <= static_cast<std::int64_t>(n); ++d) {
        acc = concat(acc, v);
        if (acc == w && seen.insert({v, d}).second) out.push_back({v, d});
        if (acc.size() > n + v.size()) break;
      }
    }
  return out;
}

inline std::int64_t max_exponent(const Word& w) {
  std::int64_t best = 0;
  for (const auto& r : all_roots(w)) best = std::max(best, r.exponent);
  return best;
}

inline int nu_p(const Word& w, std::int64_t p) {
  int best = 0;
  for (const auto& r : all_roots(w)) {
    std::int64_t d = r.exponent;
    int k = 0;
    while (d % p == 0) {
      d /= p;
      ++k;
    }
    if (d == 1) best = std::max(best, k);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Linear algebra

/// Rank over F_p by Gaussian elimination.
inline std::size_t rank_mod_p(const grpdef::IntegerMatrix& a, std::int64_t p) {
  std::vector<std::vector<std::int64_t>> m(a.rows(), std::vector<std::int64_t>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const grpdef::BigInt r = a(i, j) % p;
      m[i][j] = (static_cast<std::int64_t>(r) + p) % p;
    }
  auto inv = [p](std::int64_t x) {
    std::int64_t result = 1, e = p - 2;
    while (e > 0) {
      if (e & 1) result = result * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return result;
  };
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < a.rows() && m[pivot][col] == 0) ++pivot;
    if (pivot == a.rows()) continue;
    std::swap(m[pivot], m[rank]);
    const std::int64_t s = inv(m[rank][col]);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == rank || m[i][col] == 0) continue;
      const std::int64_t f = m[i][col] * s % p;
      for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = ((m[i][j] - f * m[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

/// Cofactor-expansion determinant; fine for the tiny minors used here.
inline grpdef::BigInt cofactor_det(const std::vector<std::vector<grpdef::BigInt>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  grpdef::BigInt total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<grpdef::BigInt>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<grpdef::BigInt> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    total += ((j % 2) ? -1 : 1) * m[0][j] * cofactor_det(minor);
  }
  return total;
}

inline void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                   std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// Invariant factors from determinantal divisors: D_k = gcd of all k x k
/// minors, d_k = D_k / D_(k-1).
inline std::vector<grpdef::BigInt> invariant_factors(const grpdef::IntegerMatrix& a) {
  const std::size_t r = std::min(a.rows(), a.cols());
  std::vector<grpdef::BigInt> out;
  grpdef::BigInt prev = 1;
  bool zero = false;
  for (std::size_t k = 1; k <= r; ++k) {
    if (zero) {
      out.push_back(0);
      continue;
    }
    std::vector<std::vector<std::size_t>> rows, cols;
    std::vector<std::size_t> cur;
    choose(a.rows(), k, 0, cur, rows);
    choose(a.cols(), k, 0, cur, cols);
    grpdef::BigInt g = 0;
    for (const auto& rs : rows)
      for (const auto& cs : cols) {
        std::vector<std::vector<grpdef::BigInt>> m;
        for (auto i : rs) {
          std::vector<grpdef::BigInt> row;
          for (auto j : cs) row.push_back(a(i, j));
          m.push_back(row);
        }
        grpdef::BigInt d = cofactor_det(m);
        if (d < 0) d = -d;
        g = boost::multiprecision::gcd(g, d);
      }
    if (g == 0) {
      zero = true;
      out.push_back(0);
      continue;
    }
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Permutations

using Perm = std::vector<std::uint32_t>;

inline Perm compose(const Perm& a, const Perm& b) {  // a then b
  Perm out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[a[i]];
  return out;
}

inline Perm invert(const Perm& a) {
  Perm out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[a[i]] = static_cast<std::uint32_t>(i);
  return out;
}

inline bool is_id(const Perm& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != i) return false;
  return true;
}

inline std::int64_t order_by_iteration(const Perm& a) {
  Perm cur = a;
  std::int64_t k = 1;
  while (!is_id(cur)) {
    cur = compose(cur, a);
    ++k;
  }
  return k;
}

inline Perm evaluate(const std::vector<Perm>& images, const Word& w, std::size_t degree) {
  Perm cur(degree);
  std::iota(cur.begin(), cur.end(), 0u);
  for (Letter l : w) cur = compose(cur, l.inverted() ? invert(images[l.generator()]) : images[l.generator()]);
  return cur;
}

inline std::vector<Perm> all_permutations(std::size_t degree) {
  std::vector<Perm> out;
  Perm p(degree);
  std::iota(p.begin(), p.end(), 0u);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Orders the root of every relator reaches, or nullopt when some full
/// relator is not the identity.
inline std::optional<std::vector<std::int64_t>> root_orders(const grpdef::Presentation& p,
                                                            const std::vector<Perm>& images,
                                                            std::size_t degree) {
  std::vector<std::int64_t> orders;
  for (const auto& r : p.relators()) {
    const Perm root = evaluate(images, r.root(), degree);
    const std::int64_t ord = order_by_iteration(root);
    if (r.exponent() % ord != 0) return std::nullopt;
    orders.push_back(ord);
  }
  return orders;
}

/// Lexicographically least 2-generator witness by degree then flattened
/// images, scanning every pair of permutations.
inline std::optional<std::vector<Perm>> least_pair(const grpdef::Presentation& p, std::size_t lo, std::size_t hi,
                                                   const std::optional<std::vector<std::int64_t>>& targets) {
  for (std::size_t d = lo; d <= hi; ++d) {
    const auto perms = all_permutations(d);
    for (const auto& a : perms)
      for (const auto& b : perms) {
        const std::vector<Perm> images{a, b};
        const auto orders = root_orders(p, images, d);
        if (!orders) continue;
        std::vector<std::int64_t> want;
        if (targets)
          want = *targets;
        else
          for (const auto& r : p.relators()) want.push_back(r.exponent());
        if (*orders == want) return images;
      }
  }
  return std::nullopt;
}

inline std::vector<std::size_t> cycle_type(const Perm& a) {
  std::vector<bool> seen(a.size(), false);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = a[j]) {
      seen[j] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Perm least_of_cycle_type(std::size_t degree, std::vector<std::size_t> lengths) {
  std::sort(lengths.begin(), lengths.end());
  for (const auto& p : all_permutations(degree))
    if (cycle_type(p) == lengths) return p;
  return {};
}

inline std::size_t closure_size(const std::vector<Perm>& gens, std::size_t degree) {
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0u);
  std::set<Perm> seen{id};
  std::vector<Perm> frontier{id};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& e : frontier)
      for (const auto& g : gens) {
        Perm x = compose(e, g);
        if (seen.insert(x).second) next.push_back(x);
      }
    frontier = std::move(next);
  }
  return seen.size();
}

/// nu(g; F, ker) from every root the brute-force enumerator finds.
inline std::int64_t relative_nu(const Word& g, const std::vector<Perm>& images, std::size_t degree) {
  const bool in_kernel = is_id(evaluate(images, g, degree));
  std::int64_t best = 0;
  for (const auto& r : all_roots(g)) {
    const std::int64_t v = in_kernel ? order_by_iteration(evaluate(images, r.root, degree)) : r.exponent;
    best = std::max(best, v);
  }
  return best;
}

}  // namespace oracle
