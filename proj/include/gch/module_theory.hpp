#pragma once

// The edge action on homology: stabilization matrices, generator counts,
// decomposability, paradoxically decomposable cycles, and W-tori.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gch/error.hpp"
#include "gch/field.hpp"
#include "gch/graph.hpp"
#include "gch/homology.hpp"
#include "gch/invariants.hpp"
#include "gch/sparse.hpp"
#include "gch/swiatkowski.hpp"

namespace gch {

using RationalMatrix = std::vector<std::vector<BigRational>>;  // row-major

namespace detail {

/// e * v, moving coordinates from slice (i, k) to slice (i, k + 1).
template <class Vec>
Vec stabilize_vector(const SwComplex& c, int i, int k, Index e, const Vec& v) {
  auto src = c.slice(i, k);
  auto dst = c.slice(i, k + 1);
  Vec out;
  out.reserve(v.size());
  for (const auto& [j, x] : v) {
    SwBasisElement y = src->basis[j];
    ++y.mult[e];
    out.push_back({dst->index.at(y), x});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

/// Echelon of the boundaries B_{i,k}.
template <class F>
Echelon<F> boundary_echelon(const F& f, const SwComplex& c, int i, int k) {
  Echelon<F> e(f, c.dim(i, k));
  if (e.dim() == 0 || i + 1 > std::min(c.max_degree(), k)) return e;
  ColumnReduction<F> red(f, c.boundary(i + 1, k));
  for (const auto& v : red.echelon().vectors()) e.store(v, -1);
  return e;
}

/// Echelon of B_{i,k} + Σ_e e·Z_{i,k-1}, given representatives of H_{i,k-1}.
template <class F>
Echelon<F> decomposable_echelon(const F& f, const SwComplex& c, int i, int k,
                                const std::vector<SparseVec<F>>& lower_reps,
                                std::size_t* image_rank = nullptr) {
  Echelon<F> e = boundary_echelon(f, c, i, k);
  std::size_t added = 0;
  if (k >= 1) {
    for (const auto& z : lower_reps) {
      for (Index edge = 0; edge < c.graph().num_edges(); ++edge) {
        added += e.insert(stabilize_vector(c, i, k - 1, edge, z), 0);
      }
    }
  }
  if (image_rank) *image_rank = added;
  return e;
}

}  // namespace detail

/// Matrix of σ_e on homology, H_{i,k} -> H_{i,k+1}, in the representative bases.
inline RationalMatrix stabilization_on_homology(const SwComplex& c, Index e, int i, int k,
                                                const Coeff& coeff) {
  if (e >= c.graph().num_edges()) throw InvalidArgument("unknown edge");
  return with_field(coeff, [&](const auto& f) {
    auto lo = homology_data(f, c, i, k);
    auto hi = homology_data(f, c, i, k + 1);
    RationalMatrix m(hi->representatives.size(), std::vector<BigRational>(lo->representatives.size()));
    for (std::size_t col = 0; col < lo->representatives.size(); ++col) {
      const auto coords = hi->coordinates(detail::stabilize_vector(c, i, k, e, lo->representatives[col]));
      for (std::size_t row = 0; row < coords.size(); ++row) m[row][col] = f.to_rational(coords[row]);
    }
    return m;
  });
}

struct GeneratorTable {
  Coeff coeff;
  int k_lo = 0;
  int k_hi = 0;
  std::map<std::pair<int, int>, std::size_t> generators;  // (i, k) -> g(i, k)
  std::map<std::pair<int, int>, std::size_t> betti;

  std::size_t at(int i, int k) const { return generators.at({i, k}); }
};

/// g(i,k) = dim H_{i,k} - rank(⊕_e H_{i,k-1} -> H_{i,k}) for i in [0, i_max], k in [0, k_max].
inline GeneratorTable generator_counts(const SwComplex& c, int i_max, int k_max, const Coeff& coeff) {
  if (i_max < 0 || k_max < 0) throw InvalidArgument("empty range");
  GeneratorTable t;
  t.coeff = coeff;
  t.k_hi = k_max;
  with_field(coeff, [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    t.generators.clear();
    t.betti.clear();
    for (int i = 0; i <= i_max; ++i) {
      std::vector<SparseVec<F>> previous;
      for (int k = 0; k <= k_max; ++k) {
        auto data = homology_data(f, c, i, k);
        std::size_t image = 0;
        if (k >= 1 && !previous.empty()) detail::decomposable_echelon(f, c, i, k, previous, &image);
        t.betti[{i, k}] = data->representatives.size();
        t.generators[{i, k}] = data->representatives.size() - image;
        previous = data->representatives;
      }
    }
    return 0;
  });
  return t;
}

/// True iff [z] lies in the joint image of all stabilizations from weight k-1.
inline bool is_class_decomposable(const SwComplex& c, const Chain& z, const Coeff& coeff) {
  if (!is_cycle(c.graph(), z)) throw InvalidArgument("chain is not a cycle");
  const int i = z.degree(), k = z.weight();
  if (z.is_zero()) return true;
  return with_field(coeff, [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    std::vector<SparseVec<F>> lower;
    if (k >= 1) lower = homology_data(f, c, i, k - 1)->representatives;
    auto e = detail::decomposable_echelon(f, c, i, k, lower);
    auto v = chain_to_field(f, *c.slice(i, k), z);
    e.reduce(v);
    return v.empty();
  });
}

struct ParadoxWitness {
  int degree = 0;
  int weight = 0;
  Chain cycle;
  bool chain_decomposable = false;    // every term has an edge factor
  bool class_indecomposable = false;  // [z] outside the stabilization image
  bool reverified = false;            // both halves rechecked independently
};

namespace detail {

/// Independent check of a witness: chain-level cycle and decomposability
/// tests, then the indecomposability of the class redone with reversed
/// elimination orders throughout.
template <class F>
bool reverify_witness(const F& f, const SwComplex& c, const Chain& z) {
  if (!is_cycle(c.graph(), z) || !is_chain_decomposable(z) || z.is_zero()) return false;
  const int i = z.degree(), k = z.weight();
  const std::size_t n = c.dim(i, k);
  auto flip = [&](const SparseVec<F>& v) {
    SparseVec<F> out;
    for (auto it = v.rbegin(); it != v.rend(); ++it) out.push_back({static_cast<Index>(n - 1 - it->first), it->second});
    return out;
  };
  Echelon<F> e(f, n);
  if (i + 1 <= std::min(c.max_degree(), k)) {
    const IntMatrix up = reversed(c.boundary(i + 1, k));
    for (const auto& col : up.columns) e.insert(to_field(f, col), -1);
  }
  if (k >= 1) {
    auto lower = homology_data(f, c, i, k - 1, /*reverse_order=*/true);
    for (const auto& rep : lower->representatives) {
      for (Index edge = 0; edge < c.graph().num_edges(); ++edge) {
        e.insert(flip(stabilize_vector(c, i, k - 1, edge, rep)), 0);
      }
    }
  }
  auto v = flip(chain_to_field(f, *c.slice(i, k), z));
  e.reduce(v);
  return !v.empty();
}

template <class F>
std::optional<ParadoxWitness> witness_at(const F& f, const SwComplex& c, int i, int k, const Coeff& coeff,
                                         const std::vector<SparseVec<F>>& lower_reps) {
  const std::size_t n = c.dim(i, k);
  if (n == 0) return std::nullopt;
  auto slice = c.slice(i, k);
  // Cycles inside the edge-positive span: kernel of ∂ restricted to those columns.
  std::vector<Index> positive;
  for (Index j = 0; j < n; ++j) {
    if (slice->basis[j].edge_degree() >= 1) positive.push_back(j);
  }
  if (positive.empty()) return std::nullopt;
  const IntMatrix full = i >= 1 ? c.boundary(i, k) : IntMatrix(0, n);
  IntMatrix restricted(full.rows, positive.size());
  for (std::size_t t = 0; t < positive.size(); ++t) restricted.columns[t] = full.columns[positive[t]];
  ColumnReduction<F> red(f, restricted, true);
  if (red.kernel().empty()) return std::nullopt;

  const Echelon<F> decomposable = decomposable_echelon(f, c, i, k, lower_reps);
  for (const auto& kv : red.kernel()) {
    SparseVec<F> z;
    for (const auto& [t, x] : kv) z.push_back({positive[t], x});
    SparseVec<F> residue = z;
    decomposable.reduce(residue);
    if (residue.empty()) continue;
    ParadoxWitness w;
    w.degree = i;
    w.weight = k;
    w.cycle = field_to_chain(f, *slice, coeff, c.reduced(), z);
    w.chain_decomposable = is_chain_decomposable(w.cycle);
    w.class_indecomposable = true;
    w.reverified = reverify_witness(f, c, w.cycle);
    return w;
  }
  return std::nullopt;
}

}  // namespace detail

/// First paradoxically decomposable cycle in order of increasing weight, then
/// degree, within i in [i_min, i_max] and k in [k_min, k_max].
inline std::optional<ParadoxWitness> find_paradoxical_witness(const SwComplex& c, int i_max, int k_max,
                                                               const Coeff& coeff, int i_min = 0,
                                                               int k_min = 0) {
  return with_field(coeff, [&](const auto& f) -> std::optional<ParadoxWitness> {
    using F = std::decay_t<decltype(f)>;
    std::map<int, std::vector<SparseVec<F>>> lower;  // degree -> reps at weight k-1
    for (int k = std::max(k_min - 1, 0); k <= k_max; ++k) {
      std::map<int, std::vector<SparseVec<F>>> current;
      for (int i = i_min; i <= i_max; ++i) {
        if (k >= k_min) {
          auto w = detail::witness_at(f, c, i, k, coeff, lower[i]);
          if (w) return w;
        }
        current[i] = homology_data(f, c, i, k)->representatives;
      }
      lower = std::move(current);
    }
    return std::nullopt;
  });
}

// ---------------------------------------------------------------------------
// W-tori

namespace detail {

/// Component label (in the full explosion Γ_W) of every edge.
inline std::vector<Index> edge_labels_after_explosion(const Graph& g, const std::vector<Index>& w) {
  const Graph ex = explode_all(g, w);
  const auto labels = ex.vertex_components();
  std::vector<Index> out(g.num_edges());
  for (Index e = 0; e < g.num_edges(); ++e) out[e] = labels[ex.ends(e)[0]];
  return out;
}

inline std::vector<Index> spec_vertices(const std::vector<StarSpec>& spec) {
  std::vector<Index> w;
  for (const auto& s : spec) w.push_back(s.vertex);
  return w;
}

}  // namespace detail

/// Each v in W has edges in at least two components of the explosion Γ_W.
inline bool well_separating(const Graph& g, const std::vector<Index>& w) {
  for (Index v : w) {
    if (v >= g.num_vertices()) throw InvalidArgument("unknown vertex");
    if (!g.is_essential(v)) {
      throw InvalidArgument("vertex " + g.vertex_id(v) + " is not essential");
    }
  }
  if (w.empty()) return true;
  const auto label = detail::edge_labels_after_explosion(g, w);
  for (Index v : w) {
    std::set<Index> seen;
    for (Index e : g.edges_at(v)) seen.insert(label[e]);
    if (seen.size() < 2) return false;
  }
  return true;
}

/// Rigidity via the combinatorial criterion: each chosen triple of edges
/// meets at least two components of Γ_W.  W must be well separating.
inline bool torus_rigidity_check(const Graph& g, const std::vector<StarSpec>& spec) {
  if (spec.empty()) return true;
  torus_representative(g, spec);  // validates the spec
  const auto w = detail::spec_vertices(spec);
  if (!well_separating(g, w)) throw InvalidArgument("the torus vertices are not well separating");
  const auto label = detail::edge_labels_after_explosion(g, w);
  for (const auto& s : spec) {
    std::set<Index> seen;
    for (Index h : s.halves) seen.insert(label[Graph::edge_of(h)]);
    if (seen.size() < 2) return false;
  }
  return true;
}

struct TorusGrowth {
  int degree = 0;
  int k0 = 0;
  int delta_w = 0;
  bool rigid = false;
  std::vector<int> weights;
  std::vector<std::size_t> observed;  // dim of F[E]·[α] in weight k
  std::vector<std::size_t> expected;  // C(Δ_W + k - k0 - 1, Δ_W - 1)
  bool pass = false;
};

inline std::size_t binomial(std::size_t n, std::size_t r) {
  if (r > n) return 0;
  BigInt acc = 1;
  for (std::size_t j = 1; j <= r; ++j) acc = acc * (n - r + j) / j;
  return static_cast<std::size_t>(acc);
}

/// Dimension of the span of all monomial stabilizations of the torus class,
/// weight by weight, against the free-module prediction.
inline TorusGrowth torus_submodule_growth(const SwComplex& c, const std::vector<StarSpec>& spec, int k_max,
                                          const Coeff& coeff, bool require_rigid = true) {
  const Graph& g = c.graph();
  if (spec.empty()) throw InvalidArgument("torus spec is empty");
  TorusGrowth out;
  out.rigid = torus_rigidity_check(g, spec);
  if (require_rigid && !out.rigid) throw InvalidArgument("torus is not rigid");
  out.degree = static_cast<int>(spec.size());
  out.k0 = 2 * out.degree;
  out.delta_w = static_cast<int>(edge_components(g, detail::spec_vertices(spec)).size());
  const Chain alpha = torus_representative(g, spec, coeff, c.reduced());

  with_field(coeff, [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    out.weights.clear();
    out.observed.clear();
    out.expected.clear();
    std::vector<SparseVec<F>> current{chain_to_field(f, *c.slice(out.degree, out.k0), alpha)};
    for (int k = out.k0; k <= k_max; ++k) {
      Echelon<F> e = detail::boundary_echelon(f, c, out.degree, k);
      std::vector<SparseVec<F>> kept;
      for (const auto& v : current) {
        if (e.insert(v, 0)) kept.push_back(v);
      }
      out.weights.push_back(k);
      out.observed.push_back(kept.size());
      out.expected.push_back(binomial(static_cast<std::size_t>(out.delta_w + k - out.k0 - 1),
                                      static_cast<std::size_t>(out.delta_w - 1)));
      if (k == k_max) break;
      current.clear();
      for (const auto& v : kept) {
        for (Index edge = 0; edge < g.num_edges(); ++edge) {
          current.push_back(detail::stabilize_vector(c, out.degree, k, edge, v));
        }
      }
    }
    return 0;
  });
  out.pass = out.observed == out.expected;
  return out;
}

}  // namespace gch
