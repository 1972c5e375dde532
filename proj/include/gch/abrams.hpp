#pragma once

// Abrams' discrete configuration complex: cubes are sets of k cells of a
// subdivided graph with pairwise disjoint closures.  Used as an independent
// check on the Świątkowski computations.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gch/error.hpp"
#include "gch/field.hpp"
#include "gch/graph.hpp"
#include "gch/sparse.hpp"

namespace gch {

inline constexpr std::size_t kDefaultCellCap = 5'000'000;

/// Cap from GCH_CELL_CAP if set, otherwise the default.
inline std::size_t cell_cap_from_env() {
  if (const char* s = std::getenv("GCH_CELL_CAP")) {
    try {
      return static_cast<std::size_t>(std::stoull(s));
    } catch (const std::exception&) {
      throw InvalidArgument(std::string("GCH_CELL_CAP is not a number: ") + s);
    }
  }
  return kDefaultCellCap;
}

/// Every edge split into max(k+1, 1) segments.
inline Graph sufficient_subdivision(const Graph& g, int k) {
  if (k < 0) throw InvalidArgument("k must be non-negative");
  return subdivide(g, std::max(k + 1, 1));
}

struct CellVectorHash {
  std::size_t operator()(const std::vector<Index>& v) const noexcept {
    std::size_t h = 14695981039346656037ULL;
    for (Index x : v) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

/// Cells of the subdivided graph are numbered vertices first, then edges
/// (cell V + e is edge e).  A cube is the sorted list of its cells.
class AbramsComplex {
 public:
  AbramsComplex(const Graph& g, int k, std::size_t cap = cell_cap_from_env())
      : sub_(sufficient_subdivision(g, k)), k_(k) {
    const std::size_t nv = sub_.num_vertices();
    const std::size_t ncells = nv + sub_.num_edges();
    by_degree_.resize(static_cast<std::size_t>(k) + 1);
    index_.resize(by_degree_.size());
    std::vector<int> used(nv, 0);
    std::vector<Index> chosen;
    std::size_t count = 0;

    auto closure_free = [&](Index cell) {
      if (cell < nv) return used[cell] == 0;
      const auto& ends = sub_.ends(cell - static_cast<Index>(nv));
      return used[ends[0]] == 0 && used[ends[1]] == 0;
    };
    auto mark = [&](Index cell, int delta) {
      if (cell < nv) {
        used[cell] += delta;
        return;
      }
      const auto& ends = sub_.ends(cell - static_cast<Index>(nv));
      used[ends[0]] += delta;
      if (ends[1] != ends[0]) used[ends[1]] += delta;
    };
    std::function<void(Index, int)> grow = [&](Index from, int edges) {
      if (chosen.size() == static_cast<std::size_t>(k)) {
        if (++count > cap) throw CapExceeded("Abrams cell", cap, count);
        auto& list = by_degree_[edges];
        index_[edges].emplace(chosen, static_cast<Index>(list.size()));
        list.push_back(chosen);
        return;
      }
      const std::size_t need = static_cast<std::size_t>(k) - chosen.size();
      for (Index c = from; c + need <= ncells; ++c) {
        if (!closure_free(c)) continue;
        chosen.push_back(c);
        mark(c, 1);
        grow(c + 1, edges + (c >= nv ? 1 : 0));
        mark(c, -1);
        chosen.pop_back();
      }
    };
    grow(0, 0);
    total_ = count;
  }

  const Graph& subdivided() const { return sub_; }
  int weight() const { return k_; }
  std::size_t total_cells() const { return total_; }
  std::size_t dim(int i) const {
    return i < 0 || static_cast<std::size_t>(i) >= by_degree_.size() ? 0 : by_degree_[i].size();
  }
  const std::vector<std::vector<Index>>& cubes(int i) const { return by_degree_.at(i); }

  /// Cellular boundary from degree i to degree i-1.
  IntMatrix boundary(int i) const {
    IntMatrix m(dim(i - 1), dim(i));
    if (i <= 0 || m.cols() == 0) return m;
    const Index nv = static_cast<Index>(sub_.num_vertices());
    for (Index j = 0; j < m.cols(); ++j) {
      const auto& cube = by_degree_[i][j];
      int sign = 1;
      for (std::size_t pos = 0; pos < cube.size(); ++pos) {
        if (cube[pos] < nv) continue;
        const auto& ends = sub_.ends(cube[pos] - nv);
        for (int end = 0; end < 2; ++end) {
          std::vector<Index> face = cube;
          face.erase(face.begin() + static_cast<std::ptrdiff_t>(pos));
          face.insert(std::lower_bound(face.begin(), face.end(), ends[end]), ends[end]);
          m.columns[j].push_back({index_[i - 1].at(face), end == 1 ? sign : -sign});
        }
        sign = -sign;
      }
      canonicalize(m.columns[j]);
    }
    return m;
  }

 private:
  Graph sub_;
  int k_;
  std::size_t total_ = 0;
  std::vector<std::vector<std::vector<Index>>> by_degree_;
  std::vector<std::unordered_map<std::vector<Index>, Index, CellVectorHash>> index_;
};

inline std::size_t abrams_betti(const AbramsComplex& a, int i, const Coeff& coeff) {
  if (i < 0) return 0;
  const std::size_t n = a.dim(i);
  if (n == 0) return 0;
  const std::size_t here = i >= 1 ? rank(a.boundary(i), coeff) : 0;
  const std::size_t up = rank(a.boundary(i + 1), coeff);
  return n - here - up;
}

inline std::size_t abrams_betti(const Graph& g, int i, int k, const Coeff& coeff = Coeff::rational(),
                                std::size_t cap = cell_cap_from_env()) {
  return abrams_betti(AbramsComplex(g, k, cap), i, coeff);
}

}  // namespace gch
