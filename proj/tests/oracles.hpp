#pragma once

// Independent reference computations used by the tests.

#include <random>
#include <string>
#include <vector>

#include "gch/gch.hpp"

namespace oracle {

using gch::BigInt;
using gch::Graph;
using gch::Index;

inline BigInt choose(long n, long r) {
  if (r < 0 || n < r || n < 0) return 0;
  BigInt acc = 1;
  for (long j = 1; j <= r; ++j) acc = acc * (n - r + j) / j;
  return acc;
}

/// Multisets of size m from n kinds.
inline BigInt multichoose(long n, long m) {
  if (m < 0) return 0;
  if (n == 0) return m == 0 ? 1 : 0;
  return choose(n + m - 1, m);
}

/// dim of the bidegree (i, k) chain group, from the per-vertex state count:
/// a polynomial in (degree, weight) per vertex, multiplied out.
inline BigInt chain_dim(const Graph& g, int i, int k, bool reduced) {
  // poly[a][b]: number of vertex-state tuples with degree a and weight b
  std::vector<std::vector<BigInt>> poly(1, std::vector<BigInt>(k + 1, 0));
  poly[0][0] = 1;
  for (Index v = 0; v < g.num_vertices(); ++v) {
    const long d = static_cast<long>(g.valence(v));
    long occupied = 1, halves = d;
    if (reduced) {
      occupied = d == 0 ? 1 : 0;
      halves = d >= 2 ? d - 1 : 0;
    }
    std::vector<std::vector<BigInt>> next(poly.size() + 1, std::vector<BigInt>(k + 1, 0));
    for (std::size_t a = 0; a < poly.size(); ++a) {
      for (int b = 0; b <= k; ++b) {
        if (poly[a][b] == 0) continue;
        next[a][b] += poly[a][b];
        if (b + 1 <= k) {
          next[a][b + 1] += poly[a][b] * occupied;
          next[a + 1][b + 1] += poly[a][b] * halves;
        }
      }
    }
    poly = std::move(next);
  }
  BigInt total = 0;
  if (i < 0 || static_cast<std::size_t>(i) >= poly.size()) return 0;
  for (int b = 0; b <= k; ++b) total += poly[i][b] * multichoose(static_cast<long>(g.num_edges()), k - b);
  return total;
}

/// Euler characteristic of the unordered configuration space of k points,
/// from the generating function prod_v (1 + (1 - d(v)) t) / (1 - t)^E.
inline BigInt euler_characteristic(const Graph& g, int k) {
  std::vector<BigInt> num(k + 1, 0);
  num[0] = 1;
  for (Index v = 0; v < g.num_vertices(); ++v) {
    const long c = 1 - static_cast<long>(g.valence(v));
    for (int j = k; j >= 1; --j) num[j] += num[j - 1] * c;
  }
  BigInt chi = 0;
  for (int j = 0; j <= k; ++j) chi += num[j] * multichoose(static_cast<long>(g.num_edges()), k - j);
  return chi;
}

inline std::vector<std::pair<std::string, Graph>> suite() {
  return {{"interval", gch::builtin("interval", 1)}, {"cycle", gch::builtin("cycle", 1)},
          {"star3", gch::builtin("star", 3)},        {"star4", gch::builtin("star", 4)},
          {"theta3", gch::builtin("theta", 3)},      {"lollipop", gch::builtin("lollipop", 1)},
          {"figure8", gch::builtin("figure8", 1)},   {"handcuff", gch::builtin("handcuff", 1)},
          {"K4", gch::builtin("complete", 4)}};
}

/// Random multigraph with loops, multi-edges and possibly isolated vertices.
inline Graph random_graph(std::mt19937_64& rng, int max_vertices, int max_edges, bool allow_isolated = false) {
  gch::GraphBuilder b;
  const int n = 1 + static_cast<int>(rng() % max_vertices);
  const int m = 1 + static_cast<int>(rng() % max_edges);
  for (int v = 0; v < n; ++v) b.add_vertex("v" + std::to_string(v));
  std::vector<bool> used(n, false);
  for (int e = 0; e < m; ++e) {
    const Index a = static_cast<Index>(rng() % n), c = static_cast<Index>(rng() % n);
    used[a] = used[c] = true;
    b.add_edge_at("e" + std::to_string(e), a, c);
  }
  if (!allow_isolated) {
    int e = m;
    for (int v = 0; v < n; ++v) {
      if (!used[v]) b.add_edge_at("e" + std::to_string(e++), static_cast<Index>(v), 0);
    }
  }
  return std::move(b).build();
}

}  // namespace oracle
