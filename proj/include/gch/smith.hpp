#pragma once

// Smith normal form over Z and integral homology of Świątkowski complexes.
//
// Unit pivots are eliminated first on a sparse row representation; whatever
// survives is small and goes through a dense Euclidean reduction.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "gch/field.hpp"
#include "gch/homology.hpp"
#include "gch/sparse.hpp"
#include "gch/swiatkowski.hpp"

namespace gch {

namespace detail {

inline void make_divisibility_chain(std::vector<BigInt>& d) {
  for (auto& x : d) x = boost::multiprecision::abs(x);
  std::sort(d.begin(), d.end());
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const BigInt g = boost::multiprecision::gcd(d[i], d[j]);
      if (g == d[i]) continue;
      const BigInt l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  }
}

inline std::vector<BigInt> dense_smith(std::vector<std::vector<BigInt>> a) {
  std::vector<BigInt> diag;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Smallest nonzero entry of the trailing block, first by position on ties.
    std::size_t pr = rows, pc = cols;
    for (std::size_t r = t; r < rows; ++r) {
      for (std::size_t c = t; c < cols; ++c) {
        if (a[r][c] == 0) continue;
        if (pr == rows || boost::multiprecision::abs(a[r][c]) < boost::multiprecision::abs(a[pr][pc])) {
          pr = r;
          pc = c;
        }
      }
    }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (a[r][t] == 0) continue;
        const BigInt q = a[r][t] / a[t][t];
        for (std::size_t c = t; c < cols; ++c) a[r][c] -= q * a[t][c];
        if (a[r][t] != 0) {
          std::swap(a[t], a[r]);
          clean = false;
        }
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (a[t][c] == 0) continue;
        const BigInt q = a[t][c] / a[t][t];
        for (std::size_t r = t; r < rows; ++r) a[r][c] -= q * a[r][t];
        if (a[t][c] != 0) {
          for (auto& row : a) std::swap(row[t], row[c]);
          clean = false;
        }
      }
    }
    diag.push_back(boost::multiprecision::abs(a[t][t]));
    ++t;
  }
  return diag;
}

}  // namespace detail

struct SmithForm {
  std::size_t rank = 0;
  std::vector<BigInt> divisors;  // nonzero invariant factors, each dividing the next
};

inline SmithForm smith_form(const IntMatrix& m) {
  std::vector<std::map<Index, BigInt>> rows(m.rows);
  std::vector<std::set<Index>> col_rows(m.cols());
  for (Index c = 0; c < m.cols(); ++c) {
    for (const auto& [r, v] : m.columns[c]) {
      rows[r][c] = v;
      col_rows[c].insert(r);
    }
  }
  std::vector<bool> row_alive(m.rows, true), col_alive(m.cols(), true);
  std::size_t units = 0;

  bool progress = true;
  while (progress) {
    progress = false;
    for (Index c = 0; c < m.cols(); ++c) {
      if (!col_alive[c] || col_rows[c].empty()) continue;
      Index best = 0;
      std::size_t best_len = SIZE_MAX;
      for (Index r : col_rows[c]) {
        const BigInt& v = rows[r].at(c);
        if ((v == 1 || v == -1) && rows[r].size() < best_len) {
          best = r;
          best_len = rows[r].size();
        }
      }
      if (best_len == SIZE_MAX) continue;
      const BigInt u = rows[best].at(c);
      const std::vector<Index> others(col_rows[c].begin(), col_rows[c].end());
      for (Index r : others) {
        if (r == best) continue;
        const BigInt f = rows[r].at(c) * u;
        for (const auto& [cc, v] : rows[best]) {
          BigInt& slot = rows[r][cc];
          slot -= f * v;
          if (slot == 0) {
            rows[r].erase(cc);
            col_rows[cc].erase(r);
          } else {
            col_rows[cc].insert(r);
          }
        }
      }
      for (const auto& [cc, v] : rows[best]) col_rows[cc].erase(best);
      rows[best].clear();
      row_alive[best] = false;
      col_alive[c] = false;
      ++units;
      progress = true;
    }
  }

  std::vector<Index> live_rows, live_cols;
  for (Index r = 0; r < m.rows; ++r) {
    if (!rows[r].empty()) live_rows.push_back(r);
  }
  for (Index c = 0; c < m.cols(); ++c) {
    if (!col_rows[c].empty()) live_cols.push_back(c);
  }
  std::vector<std::vector<BigInt>> dense(live_rows.size(), std::vector<BigInt>(live_cols.size()));
  for (std::size_t i = 0; i < live_rows.size(); ++i) {
    for (const auto& [c, v] : rows[live_rows[i]]) {
      const auto j = std::lower_bound(live_cols.begin(), live_cols.end(), c) - live_cols.begin();
      dense[i][j] = v;
    }
  }
  SmithForm out;
  out.divisors.assign(units, BigInt(1));
  for (auto& d : detail::dense_smith(std::move(dense))) out.divisors.push_back(d);
  detail::make_divisibility_chain(out.divisors);
  out.rank = out.divisors.size();
  return out;
}

struct IntegralHomology {
  int degree = 0;
  int weight = 0;
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;  // elementary divisors > 1
};

inline IntegralHomology integral_homology(const SwComplex& c, int i, int k) {
  IntegralHomology out{i, k, 0, {}};
  const std::size_t n = c.dim(i, k);
  if (n == 0) return out;
  std::size_t rank_here = 0;
  if (i >= 1) rank_here = rank(c.boundary(i, k), Coeff::rational());
  SmithForm up;
  if (i + 1 <= std::min(c.max_degree(), k)) up = smith_form(c.boundary(i + 1, k));
  out.free_rank = n - rank_here - up.rank;
  for (const auto& d : up.divisors) {
    if (d > 1) out.torsion.push_back(d);
  }
  return out;
}

inline IntegralHomology integral_homology(const Graph& g, int i, int k, bool reduced = true) {
  return integral_homology(SwComplex(g, reduced), i, k);
}

}  // namespace gch
