#pragma once

// Sparse integer matrices and exact column elimination over a field.
//
// Columns are sorted (row, value) lists.  Elimination always clears the
// lowest (largest-index) entry, so a set of reduced vectors with distinct
// lows is an echelon basis of their span.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gch/error.hpp"
#include "gch/field.hpp"
#include "gch/graph.hpp"

namespace gch {

using IntColumn = std::vector<std::pair<Index, std::int64_t>>;

struct IntMatrix {
  std::size_t rows = 0;
  std::vector<IntColumn> columns;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), columns(c) {}

  std::size_t cols() const { return columns.size(); }
  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns) n += c.size();
    return n;
  }
  bool is_zero() const {
    for (const auto& c : columns) {
      if (!c.empty()) return false;
    }
    return true;
  }
  std::int64_t at(Index r, Index c) const {
    for (const auto& [row, v] : columns.at(c)) {
      if (row == r) return v;
    }
    return 0;
  }
};

/// Sorts a column, merges duplicate rows, and drops zeros.
inline void canonicalize(IntColumn& col) {
  std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  IntColumn out;
  for (const auto& [r, v] : col) {
    if (!out.empty() && out.back().first == r) {
      out.back().second += v;
    } else {
      out.push_back({r, v});
    }
  }
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  col = std::move(out);
}

/// a * b.
inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows) throw InvalidArgument("multiply: dimension mismatch");
  IntMatrix out(a.rows, b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    std::map<Index, std::int64_t> acc;
    for (const auto& [mid, v] : b.columns[j]) {
      for (const auto& [r, w] : a.columns[mid]) acc[r] += v * w;
    }
    for (const auto& [r, v] : acc) {
      if (v != 0) out.columns[j].push_back({r, v});
    }
  }
  return out;
}

/// Concatenates columns of matrices with equal row counts.
inline IntMatrix hconcat(const std::vector<const IntMatrix*>& parts) {
  IntMatrix out;
  if (parts.empty()) return out;
  out.rows = parts.front()->rows;
  for (const auto* p : parts) {
    if (p->rows != out.rows) throw InvalidArgument("hconcat: row counts differ");
    out.columns.insert(out.columns.end(), p->columns.begin(), p->columns.end());
  }
  return out;
}

/// Reverses both row and column order.
inline IntMatrix reversed(const IntMatrix& m) {
  IntMatrix out(m.rows, m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    auto& col = out.columns[m.cols() - 1 - j];
    for (const auto& [r, v] : m.columns[j]) col.push_back({static_cast<Index>(m.rows - 1 - r), v});
    std::reverse(col.begin(), col.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Field vectors

template <class F>
using SparseVec = std::vector<std::pair<Index, typename F::Element>>;

template <class F>
SparseVec<F> to_field(const F& f, const IntColumn& col) {
  SparseVec<F> out;
  out.reserve(col.size());
  for (const auto& [r, v] : col) {
    auto x = f.from_int(v);
    if (!f.is_zero(x)) out.push_back({r, x});
  }
  return out;
}

/// a - c*b.
template <class F>
SparseVec<F> axpy(const F& f, const SparseVec<F>& a, const typename F::Element& c,
                  const SparseVec<F>& b) {
  SparseVec<F> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back({b[j].first, f.neg(f.mul(c, b[j].second))});
      ++j;
    } else {
      auto v = f.sub(a[i].second, f.mul(c, b[j].second));
      if (!f.is_zero(v)) out.push_back({a[i].first, v});
      ++i;
      ++j;
    }
  }
  return out;
}

template <class F>
void scale_in_place(const F& f, SparseVec<F>& v, const typename F::Element& c) {
  for (auto& e : v) e.second = f.mul(e.second, c);
}

/// Vectors with pairwise distinct lows, each normalized to low coefficient 1.
/// Each stored vector carries an integer tag chosen by the caller.
template <class F>
class Echelon {
 public:
  using Element = typename F::Element;
  using Vec = SparseVec<F>;

  Echelon(F f, std::size_t dim) : f_(std::move(f)), slot_(dim, -1) {}

  const F& field() const { return f_; }
  std::size_t dim() const { return slot_.size(); }
  std::size_t size() const { return vecs_.size(); }
  bool has_low(Index r) const { return slot_.at(r) >= 0; }
  const Vec& vector_with_low(Index r) const { return vecs_.at(slot_.at(r)); }
  int tag_with_low(Index r) const { return tags_.at(slot_.at(r)); }
  const std::vector<Vec>& vectors() const { return vecs_; }
  const std::vector<int>& tags() const { return tags_; }

  /// Eliminates lows of v until its low is free (or v vanishes).  If
  /// companion is given it receives the same operations, applied to the
  /// companions stored alongside the vectors.
  void reduce(Vec& v, Vec* companion = nullptr) const {
    while (!v.empty()) {
      const int s = slot_[v.back().first];
      if (s < 0) return;
      const Element c = v.back().second;
      v = axpy(f_, v, c, vecs_[s]);
      if (companion) *companion = axpy(f_, *companion, c, companions_[s]);
    }
  }

  /// Reduces v and stores it if it is independent; returns whether it was.
  bool insert(Vec v, int tag = -1, Vec companion = {}) {
    reduce(v, companion.empty() && companions_.empty() ? nullptr : &companion);
    if (v.empty()) return false;
    store(std::move(v), tag, std::move(companion));
    return true;
  }

  /// Stores an already reduced nonzero vector.
  void store(Vec v, int tag, Vec companion = {}) {
    const Element inv = f_.inv(v.back().second);
    scale_in_place(f_, v, inv);
    if (!companion.empty() || !companions_.empty()) {
      scale_in_place(f_, companion, inv);
      companions_.resize(vecs_.size());
      companions_.push_back(std::move(companion));
    }
    slot_[v.back().first] = static_cast<int>(vecs_.size());
    vecs_.push_back(std::move(v));
    tags_.push_back(tag);
  }

  /// Full reduction returning the coefficient picked up by each tagged
  /// vector; throws if v leaves a residue not spanned by the echelon.
  std::vector<std::pair<int, Element>> decompose(Vec v) const {
    std::vector<std::pair<int, Element>> coords;
    while (!v.empty()) {
      const int s = slot_[v.back().first];
      if (s < 0) throw InvalidArgument("vector is not in the span");
      const Element c = v.back().second;
      coords.push_back({tags_[s], c});
      v = axpy(f_, v, c, vecs_[s]);
    }
    return coords;
  }

 private:
  F f_;
  std::vector<int> slot_;
  std::vector<Vec> vecs_;
  std::vector<Vec> companions_;
  std::vector<int> tags_;
};

/// Column reduction of an integer matrix.  Columns listed in `skip` are
/// treated as zero without being touched (clearing).  With track_kernel the
/// kernel is recorded: for each column that reduces to zero, the combination
/// of original columns producing it.
template <class F>
class ColumnReduction {
 public:
  using Vec = SparseVec<F>;

  ColumnReduction(const F& f, const IntMatrix& m, bool track_kernel = false,
                  const std::vector<bool>* skip = nullptr)
      : echelon_(f, m.rows), low_of_col_(m.cols(), kZero) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (skip && (*skip)[j]) {
        low_of_col_[j] = kSkipped;
        continue;
      }
      Vec col = to_field(f, m.columns[j]);
      if (track_kernel) {
        Vec v{{j, f.one()}};
        echelon_.reduce(col, &v);
        if (col.empty()) {
          kernel_cols_.push_back(j);
          kernel_.push_back(std::move(v));
        } else {
          low_of_col_[j] = col.back().first;
          echelon_.store(std::move(col), static_cast<int>(j), std::move(v));
        }
      } else {
        echelon_.reduce(col);
        if (col.empty()) {
          kernel_cols_.push_back(j);
        } else {
          low_of_col_[j] = col.back().first;
          echelon_.store(std::move(col), static_cast<int>(j));
        }
      }
    }
  }

  std::size_t rank() const { return echelon_.size(); }
  const Echelon<F>& echelon() const { return echelon_; }
  /// Columns that reduced to zero (excluding skipped ones), ascending.
  const std::vector<Index>& zero_columns() const { return kernel_cols_; }
  /// Kernel vectors matching zero_columns(); only with track_kernel.
  const std::vector<Vec>& kernel() const { return kernel_; }
  /// Pivot rows (lows of nonzero reduced columns).
  std::vector<bool> pivot_rows() const {
    std::vector<bool> out(echelon_.dim(), false);
    for (auto l : low_of_col_) {
      if (l < kSkipped) out[l] = true;
    }
    return out;
  }

 private:
  static constexpr Index kZero = ~Index{0};
  static constexpr Index kSkipped = ~Index{0} - 1;

  Echelon<F> echelon_;
  std::vector<Index> low_of_col_;
  std::vector<Index> kernel_cols_;
  std::vector<Vec> kernel_;
};

template <class F>
std::size_t rank_over(const F& f, const IntMatrix& m) {
  return ColumnReduction<F>(f, m).rank();
}

/// Rank over the field named by coeff (Q with automatic big-number fallback).
inline std::size_t rank(const IntMatrix& m, const Coeff& coeff) {
  return with_field(coeff, [&](const auto& f) { return rank_over(f, m); });
}

}  // namespace gch
