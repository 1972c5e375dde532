#pragma once

// Δ invariants and eventual-polynomial growth checks for Betti sequences.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gch/error.hpp"
#include "gch/field.hpp"
#include "gch/graph.hpp"
#include "gch/homology.hpp"

namespace gch {

struct DeltaResult {
  int i = 0;
  std::optional<int> value;  // nullopt is -∞
  std::vector<std::string> witness;  // vertex ids of the smoothed graph
  std::vector<std::vector<std::string>> classes;  // edge classes for the witness

  std::string str() const { return value ? std::to_string(*value) : "-inf"; }
};

/// Δ^i: the largest number of edge classes left by removing i vertices of
/// valence >= 2 from the maximal smoothing; the first maximizing subset in
/// lexicographic order is the witness.
inline DeltaResult delta(const Graph& g, int i) {
  if (i < 0) throw InvalidArgument("delta: negative degree");
  const Graph s = smooth(g).graph;
  std::vector<Index> candidates;
  for (Index v = 0; v < s.num_vertices(); ++v) {
    if (s.valence(v) >= 2) candidates.push_back(v);
  }
  DeltaResult out;
  out.i = i;
  if (static_cast<std::size_t>(i) > candidates.size()) return out;

  std::vector<std::size_t> pick(i);
  for (int j = 0; j < i; ++j) pick[j] = j;
  std::vector<Index> best_w;
  int best = -1;
  for (;;) {
    std::vector<Index> w;
    for (auto p : pick) w.push_back(candidates[p]);
    const int n = static_cast<int>(edge_components(s, w).size());
    if (n > best) {
      best = n;
      best_w = w;
    }
    int j = i - 1;
    while (j >= 0 && pick[j] == candidates.size() - static_cast<std::size_t>(i - j)) --j;
    if (j < 0) break;
    ++pick[j];
    for (int t = j + 1; t < i; ++t) pick[t] = pick[t - 1] + 1;
  }
  out.value = best;
  for (Index v : best_w) out.witness.push_back(s.vertex_id(v));
  for (const auto& cls : edge_components(s, best_w)) {
    std::vector<std::string> ids;
    for (Index e : cls) ids.push_back(s.edge_id(e));
    out.classes.push_back(ids);
  }
  return out;
}

struct GrowthVerdict {
  int i = 0;
  std::optional<int> delta;            // -∞ when unset
  std::optional<int> expected_degree;  // -∞ when unset
  int k_start = 0;
  std::vector<BigInt> values;          // b(k_start), b(k_start + 1), ...
  std::optional<int> k0;               // onset of agreement with the fit
  std::vector<BigRational> coeffs;     // fit, coefficient of k^j at index j
  bool pass = false;
  std::string report;

  int k_max() const { return k_start + static_cast<int>(values.size()) - 1; }

  BigRational evaluate(int k) const {
    BigRational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * k + *it;
    return acc;
  }
};

/// Renders a polynomial in k, e.g. "6k - 15" or "1/6k^3 - 2k + 1".
inline std::string polynomial_string(const std::vector<BigRational>& coeffs) {
  std::string out;
  for (int j = static_cast<int>(coeffs.size()) - 1; j >= 0; --j) {
    BigRational c = coeffs[j];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const bool show = c != 1 || j == 0;
    if (show) out += rational_string(c);
    if (j >= 1) out += "k";
    if (j >= 2) out += "^" + std::to_string(j);
  }
  return out.empty() ? "0" : out;
}

namespace detail {

/// Monomial coefficients of the polynomial with values ys at base, base+1, ...
inline std::vector<BigRational> interpolate(int base, const std::vector<BigRational>& ys) {
  const std::size_t n = ys.size();
  std::vector<BigRational> diff = ys;  // becomes the forward differences Δ^j y(base)
  std::vector<BigRational> newton(n);
  for (std::size_t j = 0; j < n; ++j) {
    newton[j] = diff[0];
    for (std::size_t t = 0; t + 1 < diff.size(); ++t) diff[t] = diff[t + 1] - diff[t];
    diff.pop_back();
  }
  std::vector<BigRational> poly(n, 0);
  std::vector<BigRational> basis{1};  // C(k - base, j) in monomials
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t t = 0; t < basis.size(); ++t) poly[t] += newton[j] * basis[t];
    // basis *= (k - base - j) / (j + 1)
    std::vector<BigRational> next(basis.size() + 1, 0);
    const BigRational shift = -BigRational(base + static_cast<int>(j));
    for (std::size_t t = 0; t < basis.size(); ++t) {
      next[t + 1] += basis[t];
      next[t] += basis[t] * shift;
    }
    for (auto& x : next) x /= static_cast<int>(j + 1);
    basis = std::move(next);
  }
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  return poly;
}

inline std::vector<BigInt> differences(const std::vector<BigInt>& v, int order) {
  std::vector<BigInt> d = v;
  for (int o = 0; o < order && !d.empty(); ++o) {
    for (std::size_t t = 0; t + 1 < d.size(); ++t) d[t] = d[t + 1] - d[t];
    d.pop_back();
  }
  return d;
}

}  // namespace detail

/// Checks that b(k) is eventually a polynomial of exactly the expected degree
/// (nullopt: eventually zero) on a stable tail of `guard` finite differences.
inline GrowthVerdict growth_verdict(const std::vector<BigInt>& b, int k_start,
                                    std::optional<int> expected_degree, int guard = 3) {
  if (guard < 1) throw InvalidArgument("guard must be at least 1");
  if (expected_degree && *expected_degree < 0) expected_degree.reset();
  GrowthVerdict v;
  v.k_start = k_start;
  v.values = b;
  v.expected_degree = expected_degree;
  const int n = static_cast<int>(b.size());
  const int need = expected_degree ? *expected_degree + guard + 2 : guard + 1;
  if (n < need) {
    throw InvalidArgument("sequence too short for a stable verdict: need " + std::to_string(need) +
                          " values, got " + std::to_string(n));
  }
  std::ostringstream report;

  if (!expected_degree) {
    bool tail_zero = true;
    for (int t = n - guard; t < n; ++t) tail_zero = tail_zero && b[t] == 0;
    int first = n;
    while (first > 0 && b[first - 1] == 0) --first;
    if (first < n) v.k0 = k_start + first;
    v.pass = tail_zero;
    report << (tail_zero ? "eventually zero" : "tail is not identically zero");
    if (v.k0) report << " from k=" << *v.k0;
    v.report = report.str();
    return v;
  }

  const int d = *expected_degree;
  const auto dd1 = detail::differences(b, d + 1);
  const auto dd = detail::differences(b, d);
  bool vanishing = true;
  for (int t = static_cast<int>(dd1.size()) - guard; t < static_cast<int>(dd1.size()); ++t) {
    vanishing = vanishing && dd1[t] == 0;
  }
  const bool leading_nonzero = dd.back() != 0;

  std::vector<BigRational> tail;
  for (int t = n - d - 1; t < n; ++t) tail.push_back(BigRational(b[t]));
  v.coeffs = detail::interpolate(k_start + n - d - 1, tail);
  int first = n - d - 1;
  while (first > 0 && v.evaluate(k_start + first - 1) == BigRational(b[first - 1])) --first;
  v.k0 = k_start + first;
  v.pass = vanishing && leading_nonzero;

  report << "fit " << polynomial_string(v.coeffs) << " on k=" << *v.k0 << ".." << v.k_max();
  if (!vanishing) report << "; order-" << d + 1 << " differences do not vanish on the last " << guard << " points";
  if (!leading_nonzero) report << "; order-" << d << " difference is zero (degree below " << d << ")";
  v.report = report.str();
  return v;
}

inline void reject_isolated_vertices(const Graph& g) {
  for (Index v = 0; v < g.num_vertices(); ++v) {
    if (g.valence(v) == 0) {
      throw InvalidArgument("growth check needs every component to contain an edge; vertex \"" +
                            g.vertex_id(v) + "\" is isolated");
    }
  }
}

/// Growth verdicts for each i in [i_lo, i_hi] from Betti numbers at k = 0..k_max.
inline std::vector<GrowthVerdict> verify_growth(const Graph& g, int i_lo, int i_hi, int k_max,
                                                const Coeff& coeff = Coeff::rational(), int guard = 3,
                                                int threads = 1) {
  reject_isolated_vertices(g);
  const BettiTable table = betti_table(g, i_lo, i_hi, 0, k_max, coeff, true, threads);
  std::vector<GrowthVerdict> out;
  for (int i = i_lo; i <= i_hi; ++i) {
    const DeltaResult dr = delta(g, i);
    std::optional<int> expected;
    if (dr.value) expected = *dr.value - 1;
    std::vector<BigInt> seq;
    for (int k = 0; k <= k_max; ++k) seq.push_back(BigInt(table.at(i, k)));
    GrowthVerdict v;
    try {
      v = growth_verdict(seq, 0, expected, guard);
    } catch (const InvalidArgument& err) {
      throw InvalidArgument("i=" + std::to_string(i) + ": k_max=" + std::to_string(k_max) +
                            " is too small (" + err.what() + ")");
    }
    v.i = i;
    v.delta = dr.value;
    out.push_back(std::move(v));
  }
  return out;
}

inline GrowthVerdict verify_growth(const Graph& g, int i, int k_max, const Coeff& coeff = Coeff::rational(),
                                   int guard = 3) {
  return verify_growth(g, i, i, k_max, coeff, guard).front();
}

}  // namespace gch
