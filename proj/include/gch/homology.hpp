#pragma once

// Betti numbers and explicit homology bases of Świątkowski complexes.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

#include "gch/error.hpp"
#include "gch/field.hpp"
#include "gch/sparse.hpp"
#include "gch/swiatkowski.hpp"

namespace gch {

/// Ranks of ∂_{i,k} for all i at one weight, eliminated from the top degree
/// down so that pivot rows of ∂_{i+1} clear columns of ∂_i.
template <class F>
std::vector<std::size_t> boundary_ranks(const F& f, const SwComplex& c, int k, int i_min = 1) {
  const int top = std::min(c.max_degree(), k);
  std::vector<std::size_t> ranks(static_cast<std::size_t>(std::max(top, 0) + 2), 0);
  std::vector<bool> clear;
  for (int i = top; i >= std::max(i_min, 1); --i) {
    const IntMatrix d = c.boundary(i, k);
    ColumnReduction<F> red(f, d, false, clear.empty() ? nullptr : &clear);
    ranks[i] = red.rank();
    clear = red.pivot_rows();
  }
  return ranks;
}

template <class F>
std::size_t betti_over(const F& f, const SwComplex& c, int i, int k) {
  if (i < 0 || k < 0 || i > c.max_degree()) return 0;
  std::vector<bool> clear;
  std::size_t rank_above = 0;
  if (i + 1 <= std::min(c.max_degree(), k)) {
    ColumnReduction<F> up(f, c.boundary(i + 1, k));
    rank_above = up.rank();
    clear = up.pivot_rows();
  }
  std::size_t rank_here = 0;
  if (i >= 1) rank_here = ColumnReduction<F>(f, c.boundary(i, k), false, clear.empty() ? nullptr : &clear).rank();
  return c.dim(i, k) - rank_here - rank_above;
}

inline std::size_t betti(const SwComplex& c, int i, int k, const Coeff& coeff) {
  return with_field(coeff, [&](const auto& f) { return betti_over(f, c, i, k); });
}

inline std::size_t betti(const Graph& g, int i, int k, const Coeff& coeff = Coeff::rational(),
                         bool reduced = true) {
  return betti(SwComplex(g, reduced), i, k, coeff);
}

struct BettiTable {
  Coeff coeff;
  bool reduced = true;
  std::map<std::pair<int, int>, std::size_t> entries;  // (i, k) -> dim

  std::size_t at(int i, int k) const { return entries.at({i, k}); }
};

/// Runs fn(k) for each k, spread over `threads` workers.
inline void parallel_for_weights(int k_lo, int k_hi, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || k_hi <= k_lo) {
    for (int k = k_lo; k <= k_hi; ++k) fn(k);
    return;
  }
  std::mutex m;
  int next = k_hi;  // heaviest weights first
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      int k;
      {
        std::lock_guard<std::mutex> lock(m);
        if (next < k_lo || failure) return;
        k = next--;
      }
      try {
        fn(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(m);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

inline BettiTable betti_table(const SwComplex& c, int i_lo, int i_hi, int k_lo, int k_hi,
                              const Coeff& coeff, int threads = 1) {
  if (i_lo < 0 || k_lo < 0 || i_hi < i_lo || k_hi < k_lo) throw InvalidArgument("empty range");
  BettiTable t{coeff, c.reduced(), {}};
  std::mutex m;
  parallel_for_weights(k_lo, k_hi, threads, [&](int k) {
    auto ranks = with_field(coeff, [&](const auto& f) { return boundary_ranks(f, c, k); });
    auto rank_of = [&](int i) { return i >= 0 && static_cast<std::size_t>(i) < ranks.size() ? ranks[i] : 0; };
    std::lock_guard<std::mutex> lock(m);
    for (int i = i_lo; i <= i_hi; ++i) {
      t.entries[{i, k}] = c.dim(i, k) - rank_of(i) - rank_of(i + 1);
    }
  });
  return t;
}

inline BettiTable betti_table(const Graph& g, int i_lo, int i_hi, int k_lo, int k_hi,
                              const Coeff& coeff = Coeff::rational(), bool reduced = true,
                              int threads = 1) {
  return betti_table(SwComplex(g, reduced), i_lo, i_hi, k_lo, k_hi, coeff, threads);
}

// ---------------------------------------------------------------------------
// Homology bases

/// Cycle space Z_{i,k} split as boundaries plus representatives.  The
/// echelon holds boundary vectors (tag -1) and representative t (tag t).
template <class F>
struct HomologyData {
  using Vec = SparseVec<F>;
  int degree = 0;
  int weight = 0;
  std::size_t boundary_rank = 0;
  std::vector<Vec> representatives;
  Echelon<F> echelon;

  HomologyData(const F& f, std::size_t dim) : echelon(f, dim) {}

  /// Homology coordinates of a cycle; throws if v is not a cycle.
  std::vector<typename F::Element> coordinates(const Vec& v) const {
    const F& f = echelon.field();
    std::vector<typename F::Element> out(representatives.size(), f.zero());
    try {
      for (const auto& [tag, c] : echelon.decompose(v)) {
        if (tag >= 0) out[tag] = f.add(out[tag], c);
      }
    } catch (const InvalidArgument&) {
      throw InvalidArgument("chain is not a cycle");
    }
    return out;
  }

  /// Reduces v modulo boundaries; empty iff v is a boundary.
  Vec modulo_boundaries(Vec v) const {
    const F& f = echelon.field();
    while (!v.empty()) {
      const Index low = v.back().first;
      if (!echelon.has_low(low)) return v;
      const auto c = v.back().second;
      if (echelon.tag_with_low(low) >= 0) return v;
      v = axpy(f, v, c, echelon.vector_with_low(low));
    }
    return v;
  }
};

/// Builds the homology data at (i, k).  With reverse_order the elimination
/// runs over reversed basis orders (an independent computation whose vectors
/// are mapped back to the standard basis order).
template <class F>
std::shared_ptr<HomologyData<F>> homology_data(const F& f, const SwComplex& c, int i, int k,
                                               bool reverse_order = false) {
  const std::size_t n = c.dim(i, k);
  auto data = std::make_shared<HomologyData<F>>(f, n);
  data->degree = i;
  data->weight = k;
  if (n == 0) return data;

  auto flip = [&](const SparseVec<F>& v) {
    SparseVec<F> out;
    for (auto it = v.rbegin(); it != v.rend(); ++it) out.push_back({static_cast<Index>(n - 1 - it->first), it->second});
    return out;
  };

  IntMatrix up = i + 1 <= std::min(c.max_degree(), k) ? c.boundary(i + 1, k) : IntMatrix(n, 0);
  IntMatrix here = i >= 1 ? c.boundary(i, k) : IntMatrix(0, n);
  if (reverse_order) {
    up = reversed(up);
    here = reversed(here);
  }
  ColumnReduction<F> r_up(f, up);
  data->boundary_rank = r_up.rank();
  const auto pivots = r_up.pivot_rows();
  ColumnReduction<F> r_here(f, here, true, &pivots);

  if (!reverse_order) {
    for (const auto& v : r_up.echelon().vectors()) data->echelon.store(v, -1);
    for (const auto& z : r_here.kernel()) {
      data->echelon.store(z, static_cast<int>(data->representatives.size()));
      data->representatives.push_back(z);
    }
  } else {
    for (const auto& v : r_up.echelon().vectors()) data->echelon.insert(flip(v), -1);
    for (const auto& z : r_here.kernel()) {
      if (!data->echelon.insert(flip(z), static_cast<int>(data->representatives.size()))) {
        throw InvalidArgument("internal: dependent homology representative");
      }
      data->representatives.push_back(data->echelon.vectors().back());
    }
  }
  return data;
}

template <class F>
SparseVec<F> chain_to_field(const F& f, const SwSlice& s, const Chain& c) {
  SparseVec<F> out;
  for (const auto& [i, v] : to_coordinates(s, c)) {
    auto x = f.from_rational(v);
    if (!f.is_zero(x)) out.push_back({i, x});
  }
  return out;
}

template <class F>
Chain field_to_chain(const F& f, const SwSlice& s, const Coeff& coeff, bool reduced, const SparseVec<F>& v) {
  Chain out(coeff, reduced, s.degree, s.weight);
  for (const auto& [i, x] : v) out.add(s.basis.at(i), f.to_rational(x));
  return out;
}

/// Explicit basis of H_{i,k} with class arithmetic, over a field.
class HomologyBasis {
 public:
  int degree() const { return degree_; }
  int weight() const { return weight_; }
  const Coeff& coeff() const { return coeff_; }
  std::size_t dim() const { return representatives_.size(); }
  std::size_t boundary_rank() const { return boundary_rank_; }
  const std::vector<Chain>& representatives() const { return representatives_; }

  /// Coordinates of [z] in the representative basis; throws if z is not a cycle.
  std::vector<BigRational> class_of(const Chain& z) const {
    if (z.degree() != degree_ || z.weight() != weight_ || z.reduced() != reduced_) {
      throw InvalidArgument("class_of: chain has the wrong bidegree or complex variant");
    }
    return coordinates_(z);
  }

  bool is_zero_class(const Chain& z) const {
    for (const auto& c : class_of(z)) {
      if (c != 0) return false;
    }
    return true;
  }

 private:
  friend HomologyBasis homology_basis(const SwComplex&, int, int, const Coeff&);

  int degree_ = 0;
  int weight_ = 0;
  Coeff coeff_;
  bool reduced_ = true;
  std::size_t boundary_rank_ = 0;
  std::vector<Chain> representatives_;
  std::function<std::vector<BigRational>(const Chain&)> coordinates_;
};

inline HomologyBasis homology_basis(const SwComplex& c, int i, int k, const Coeff& coeff) {
  HomologyBasis out;
  out.degree_ = i;
  out.weight_ = k;
  out.coeff_ = coeff;
  out.reduced_ = c.reduced();
  auto slice = c.slice(i, k);
  auto fill = [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    auto data = homology_data(f, c, i, k);
    out.boundary_rank_ = data->boundary_rank;
    out.representatives_.clear();
    for (const auto& z : data->representatives) {
      out.representatives_.push_back(field_to_chain(f, *slice, coeff, c.reduced(), z));
    }
    // Rational data may overflow on a later query; rebuild it with big numbers then.
    auto graph = std::make_shared<const Graph>(c.graph());
    const bool reduced = c.reduced();
    auto big = std::make_shared<std::shared_ptr<HomologyData<BigRationalField>>>();
    auto big_mutex = std::make_shared<std::mutex>();
    out.coordinates_ = [f, data, slice, graph, reduced, big, big_mutex, i, k](const Chain& z) {
      auto run = [&](const auto& field, const auto& d) {
        std::vector<BigRational> coords;
        for (const auto& x : d->coordinates(chain_to_field(field, *slice, z))) {
          coords.push_back(field.to_rational(x));
        }
        return coords;
      };
      if constexpr (std::is_same_v<F, RationalField>) {
        try {
          return run(f, data);
        } catch (const ArithmeticOverflow&) {
          std::lock_guard<std::mutex> lock(*big_mutex);
          if (!*big) *big = homology_data(BigRationalField{}, SwComplex(*graph, reduced), i, k);
          return run(BigRationalField{}, *big);
        }
      } else {
        return run(f, data);
      }
    };
    return 0;
  };
  with_field(coeff, fill);
  return out;
}

inline HomologyBasis homology_basis(const Graph& g, int i, int k, const Coeff& coeff = Coeff::rational(),
                                    bool reduced = true) {
  return homology_basis(SwComplex(g, reduced), i, k, coeff);
}

}  // namespace gch
