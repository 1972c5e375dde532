#pragma once

// The Świątkowski complex S(Γ) and its reduced variant, one (degree, weight)
// slice at a time.
//
// A basis element stores one multiplicity per edge and one local state code
// per vertex: 0 = empty, 1 = occupied, 2 + j = the j-th half-edge at the
// vertex (in the graph's sorted half-edge order).  In the reduced complex a
// code 2 + j (j >= 1) stands for the difference h_j - h_0.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gch/error.hpp"
#include "gch/field.hpp"
#include "gch/graph.hpp"
#include "gch/sparse.hpp"

namespace gch {

using StateCode = std::uint16_t;
inline constexpr StateCode kEmpty = 0;
inline constexpr StateCode kOccupied = 1;
inline constexpr StateCode kFirstHalf = 2;

struct SwBasisElement {
  std::vector<StateCode> state;  // per vertex
  std::vector<std::uint16_t> mult;  // per edge

  int degree() const {
    int d = 0;
    for (auto s : state) d += s >= kFirstHalf;
    return d;
  }
  int weight() const {
    int w = 0;
    for (auto s : state) w += s != kEmpty;
    for (auto m : mult) w += m;
    return w;
  }
  int edge_degree() const { return std::accumulate(mult.begin(), mult.end(), 0); }

  friend bool operator==(const SwBasisElement&, const SwBasisElement&) = default;
  friend bool operator<(const SwBasisElement& a, const SwBasisElement& b) {
    return std::tie(a.state, a.mult) < std::tie(b.state, b.mult);
  }
};

struct SwBasisElementHash {
  std::size_t operator()(const SwBasisElement& x) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint64_t v) { h = (h ^ v) * 1099511628211ULL; };
    for (auto s : x.state) mix(s);
    mix(0xffff);
    for (auto m : x.mult) mix(m);
    return h;
  }
};

/// Human-readable form, e.g. "e1^2 e3 [c:e2.0-e1.0]".
inline std::string describe(const Graph& g, bool reduced, const SwBasisElement& x) {
  std::string out;
  for (Index e = 0; e < x.mult.size(); ++e) {
    if (x.mult[e] == 0) continue;
    if (!out.empty()) out += ' ';
    out += g.edge_id(e);
    if (x.mult[e] > 1) out += "^" + std::to_string(x.mult[e]);
  }
  for (Index v = 0; v < x.state.size(); ++v) {
    if (x.state[v] == kEmpty) continue;
    if (!out.empty()) out += ' ';
    out += "[" + g.vertex_id(v) + ":";
    if (x.state[v] == kOccupied) {
      out += "occ";
    } else {
      const auto& hs = g.half_edges_at(v);
      out += g.half_edge_id(hs[x.state[v] - kFirstHalf]);
      if (reduced) out += "-" + g.half_edge_id(hs[0]);
    }
    out += "]";
  }
  return out.empty() ? "1" : out;
}

struct SwSlice {
  int degree = 0;
  int weight = 0;
  std::vector<SwBasisElement> basis;
  std::unordered_map<SwBasisElement, Index, SwBasisElementHash> index;

  std::size_t size() const { return basis.size(); }
  std::optional<Index> find(const SwBasisElement& x) const {
    auto it = index.find(x);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

/// Calls emit(term, sign) for each term of ∂x.
template <class Emit>
void for_each_boundary_term(const Graph& g, bool reduced, const SwBasisElement& x, Emit&& emit) {
  int sign = 1;
  SwBasisElement y = x;
  for (Index v = 0; v < x.state.size(); ++v) {
    const StateCode c = x.state[v];
    if (c < kFirstHalf) continue;
    const auto& hs = g.half_edges_at(v);
    const Index h = hs[c - kFirstHalf];
    y.state[v] = kEmpty;
    if (!reduced) {
      ++y.mult[Graph::edge_of(h)];
      emit(y, sign);
      --y.mult[Graph::edge_of(h)];
      y.state[v] = kOccupied;
      emit(y, -sign);
    } else if (Graph::edge_of(h) != Graph::edge_of(hs[0])) {
      ++y.mult[Graph::edge_of(h)];
      emit(y, sign);
      --y.mult[Graph::edge_of(h)];
      ++y.mult[Graph::edge_of(hs[0])];
      emit(y, -sign);
      --y.mult[Graph::edge_of(hs[0])];
    }
    y.state[v] = c;
    sign = -sign;
  }
}

class SwComplex {
 public:
  SwComplex(Graph g, bool reduced) : g_(std::move(g)), reduced_(reduced) {
    codes_.resize(g_.num_vertices());
    for (Index v = 0; v < g_.num_vertices(); ++v) {
      const std::size_t d = g_.valence(v);
      auto& c = codes_[v];
      c.push_back(kEmpty);
      if (!reduced_ || d == 0) c.push_back(kOccupied);
      if (!reduced_) {
        for (std::size_t j = 0; j < d; ++j) c.push_back(static_cast<StateCode>(kFirstHalf + j));
      } else if (d >= 2) {
        for (std::size_t j = 1; j < d; ++j) c.push_back(static_cast<StateCode>(kFirstHalf + j));
      }
      if (c.back() >= kFirstHalf) ++max_degree_;
    }
  }

  const Graph& graph() const { return g_; }
  bool reduced() const { return reduced_; }
  /// No basis element has degree above this.
  int max_degree() const { return max_degree_; }
  const std::vector<StateCode>& local_codes(Index v) const { return codes_.at(v); }

  /// Basis of bidegree (i, k), built on first use and cached.
  std::shared_ptr<const SwSlice> slice(int i, int k) const {
    if (i < 0 || k < 0) throw InvalidArgument("negative degree or weight");
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache_.find({i, k});
      if (it != cache_.end()) return it->second;
    }
    auto s = std::make_shared<SwSlice>(enumerate(i, k));
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.try_emplace({i, k}, std::move(s)).first->second;
  }

  std::size_t dim(int i, int k) const {
    if (i < 0 || k < 0 || i > max_degree_) return 0;
    return slice(i, k)->size();
  }

  /// ∂ : S_{i,k} -> S_{i-1,k}.
  IntMatrix boundary(int i, int k) const {
    if (i <= 0 || i > max_degree_ || k < 0) {
      return IntMatrix(i - 1 >= 0 ? dim(i - 1, k) : 0, dim(i, k));
    }
    auto src = slice(i, k);
    auto dst = slice(i - 1, k);
    IntMatrix m(dst->size(), src->size());
    for (Index j = 0; j < src->size(); ++j) {
      auto& col = m.columns[j];
      for_each_boundary_term(g_, reduced_, src->basis[j], [&](const SwBasisElement& y, int s) {
        col.push_back({dst->index.at(y), s});
      });
      canonicalize(col);
    }
    return m;
  }

  /// Multiplication by edge e : S_{i,k} -> S_{i,k+1}.
  IntMatrix stabilization(Index e, int i, int k) const {
    if (e >= g_.num_edges()) throw InvalidArgument("stabilization: unknown edge");
    IntMatrix m(dim(i, k + 1), dim(i, k));
    if (m.cols() == 0) return m;
    auto src = slice(i, k);
    auto dst = slice(i, k + 1);
    for (Index j = 0; j < src->size(); ++j) {
      SwBasisElement y = src->basis[j];
      ++y.mult[e];
      m.columns[j].push_back({dst->index.at(y), 1});
    }
    return m;
  }

 private:
  SwSlice enumerate(int i, int k) const {
    SwSlice s;
    s.degree = i;
    s.weight = k;
    if (i > max_degree_) return s;
    const std::size_t nv = g_.num_vertices(), ne = g_.num_edges();
    SwBasisElement x;
    x.state.assign(nv, kEmpty);
    x.mult.assign(ne, 0);

    std::function<void(Index, int)> fill_edges = [&](Index e, int left) {
      if (e + 1 >= ne) {
        if (ne == 0) {
          if (left != 0) return;
        } else {
          x.mult[e] = static_cast<std::uint16_t>(left);
        }
        s.index.emplace(x, static_cast<Index>(s.basis.size()));
        s.basis.push_back(x);
        if (ne) x.mult[e] = 0;
        return;
      }
      for (int m = 0; m <= left; ++m) {
        x.mult[e] = static_cast<std::uint16_t>(m);
        fill_edges(e + 1, left - m);
      }
      x.mult[e] = 0;
    };

    std::function<void(Index, int, int)> fill_states = [&](Index v, int deg, int used) {
      if (v == nv) {
        if (deg == i) fill_edges(0, k - used);
        return;
      }
      for (StateCode c : codes_[v]) {
        const int dd = c >= kFirstHalf ? 1 : 0;
        const int du = c == kEmpty ? 0 : 1;
        if (deg + dd > i || used + du > k) continue;
        x.state[v] = c;
        fill_states(v + 1, deg + dd, used + du);
      }
      x.state[v] = kEmpty;
    };
    fill_states(0, 0, 0);
    return s;
  }

  Graph g_;
  bool reduced_;
  int max_degree_ = 0;
  std::vector<std::vector<StateCode>> codes_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, int>, std::shared_ptr<const SwSlice>> cache_;
};

// ---------------------------------------------------------------------------
// Chains

/// Homogeneous linear combination of basis elements.  Coefficients are kept
/// as rationals; over F_p they are canonical residues, over Z integers.
class Chain {
 public:
  Chain() = default;
  Chain(Coeff coeff, bool reduced, int degree, int weight)
      : coeff_(coeff), reduced_(reduced), degree_(degree), weight_(weight) {}

  const Coeff& coeff() const { return coeff_; }
  bool reduced() const { return reduced_; }
  int degree() const { return degree_; }
  int weight() const { return weight_; }
  const std::map<SwBasisElement, BigRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  BigRational coefficient(const SwBasisElement& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? BigRational(0) : it->second;
  }

  void add(const SwBasisElement& x, const BigRational& c) {
    if (x.degree() != degree_ || x.weight() != weight_) {
      throw InvalidArgument("chain term has the wrong bidegree");
    }
    BigRational& slot = terms_[x];
    slot = normalize(slot + c);
    if (slot == 0) terms_.erase(x);
  }

  Chain& operator+=(const Chain& o) {
    check_compatible(o);
    for (const auto& [x, c] : o.terms_) add(x, c);
    return *this;
  }
  Chain& operator-=(const Chain& o) {
    check_compatible(o);
    for (const auto& [x, c] : o.terms_) add(x, -c);
    return *this;
  }
  Chain scaled(const BigRational& c) const {
    Chain out(coeff_, reduced_, degree_, weight_);
    for (const auto& [x, v] : terms_) out.add(x, v * c);
    return out;
  }
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
  friend bool operator==(const Chain& a, const Chain& b) {
    return a.coeff_ == b.coeff_ && a.reduced_ == b.reduced_ && a.degree_ == b.degree_ &&
           a.weight_ == b.weight_ && a.terms_ == b.terms_;
  }

 private:
  BigRational normalize(const BigRational& c) const {
    if (coeff_.kind == Coeff::Kind::Prime) {
      PrimeField f(coeff_.prime);
      return BigRational(f.from_rational(c));
    }
    if (coeff_.kind == Coeff::Kind::Integer && boost::multiprecision::denominator(c) != 1) {
      throw InvalidArgument("non-integral coefficient in a Z chain");
    }
    return c;
  }
  void check_compatible(const Chain& o) const {
    if (o.coeff_ != coeff_ || o.reduced_ != reduced_ || o.degree_ != degree_ ||
        o.weight_ != weight_) {
      throw InvalidArgument("chains live in different groups");
    }
  }

  Coeff coeff_;
  bool reduced_ = true;
  int degree_ = 0;
  int weight_ = 0;
  std::map<SwBasisElement, BigRational> terms_;
};

inline void check_shape(const Graph& g, const Chain& c) {
  for (const auto& [x, v] : c.terms()) {
    if (x.state.size() != g.num_vertices() || x.mult.size() != g.num_edges()) {
      throw InvalidArgument("chain does not belong to this graph");
    }
  }
}

inline Chain boundary(const Graph& g, const Chain& c) {
  check_shape(g, c);
  if (c.degree() == 0) return Chain(c.coeff(), c.reduced(), 0, c.weight());
  Chain out(c.coeff(), c.reduced(), c.degree() - 1, c.weight());
  for (const auto& [x, v] : c.terms()) {
    for_each_boundary_term(g, c.reduced(), x,
                           [&](const SwBasisElement& y, int s) { out.add(y, v * s); });
  }
  return out;
}

inline bool is_cycle(const Graph& g, const Chain& c) { return boundary(g, c).is_zero(); }

inline Chain stabilize(const Graph& g, const Chain& c, Index e) {
  if (e >= g.num_edges()) throw InvalidArgument("stabilize: unknown edge");
  check_shape(g, c);
  Chain out(c.coeff(), c.reduced(), c.degree(), c.weight() + 1);
  for (const auto& [x, v] : c.terms()) {
    SwBasisElement y = x;
    ++y.mult[e];
    out.add(y, v);
  }
  return out;
}

/// True iff every term carries at least one edge factor.
inline bool is_chain_decomposable(const Chain& c) {
  for (const auto& [x, v] : c.terms()) {
    if (x.edge_degree() == 0) return false;
  }
  return true;
}

/// Coordinates of c in the slice basis.
inline std::vector<std::pair<Index, BigRational>> to_coordinates(const SwSlice& s, const Chain& c) {
  std::vector<std::pair<Index, BigRational>> out;
  for (const auto& [x, v] : c.terms()) {
    auto idx = s.find(x);
    if (!idx) throw InvalidArgument("chain term outside the slice basis");
    out.push_back({*idx, v});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

inline Chain from_coordinates(const SwSlice& s, const Coeff& coeff, bool reduced,
                              const std::vector<std::pair<Index, BigRational>>& coords) {
  Chain out(coeff, reduced, s.degree, s.weight);
  for (const auto& [i, v] : coords) out.add(s.basis.at(i), v);
  return out;
}

inline Chain basis_chain(const SwBasisElement& x, const Coeff& coeff, bool reduced) {
  Chain out(coeff, reduced, x.degree(), x.weight());
  out.add(x, 1);
  return out;
}

/// The empty configuration 1 in weight 0.
inline Chain unit_chain(const Graph& g, const Coeff& coeff, bool reduced) {
  SwBasisElement x;
  x.state.assign(g.num_vertices(), kEmpty);
  x.mult.assign(g.num_edges(), 0);
  return basis_chain(x, coeff, reduced);
}

// Chain file format -----------------------------------------------------------

inline nlohmann::json chain_to_json(const Graph& g, const Chain& c) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [x, v] : c.terms()) {
    nlohmann::json edges = nlohmann::json::object();
    for (Index e = 0; e < x.mult.size(); ++e) {
      if (x.mult[e]) edges[g.edge_id(e)] = x.mult[e];
    }
    nlohmann::json states = nlohmann::json::object();
    for (Index u = 0; u < x.state.size(); ++u) {
      const StateCode s = x.state[u];
      if (s == kEmpty) continue;
      if (s == kOccupied) {
        states[g.vertex_id(u)] = "occ";
        continue;
      }
      const auto& hs = g.half_edges_at(u);
      if (c.reduced()) {
        states[g.vertex_id(u)] = {{"diff", {g.half_edge_id(hs[s - kFirstHalf]), g.half_edge_id(hs[0])}}};
      } else {
        states[g.vertex_id(u)] = {{"half", g.half_edge_id(hs[s - kFirstHalf])}};
      }
    }
    terms.push_back({{"edges", edges}, {"states", states}, {"c", rational_string(v)}});
  }
  return {{"degree", c.degree()},
          {"weight", c.weight()},
          {"coeff", c.coeff().str()},
          {"reduced", c.reduced()},
          {"terms", terms}};
}

/// Reads the chain file format.  "reduced" defaults to true; a "diff" state
/// whose second half-edge is not the preferred one is rewritten in the
/// preferred basis, and a {"half": h} state in a reduced chain is rejected.
inline Chain chain_from_json(const Graph& g, const nlohmann::json& j) {
  try {
    const int degree = j.at("degree").get<int>();
    const int weight = j.at("weight").get<int>();
    const Coeff coeff = Coeff::parse(j.at("coeff").get<std::string>());
    const bool reduced = j.value("reduced", true);
    Chain out(coeff, reduced, degree, weight);
    for (const auto& t : j.at("terms")) {
      SwBasisElement base;
      base.state.assign(g.num_vertices(), kEmpty);
      base.mult.assign(g.num_edges(), 0);
      const nlohmann::json edges = t.value("edges", nlohmann::json::object());
      const nlohmann::json states = t.value("states", nlohmann::json::object());
      for (const auto& [eid, m] : edges.items()) {
        base.mult[g.edge(eid)] = m.get<std::uint16_t>();
      }
      // Each vertex contributes one or two (code, sign) options.
      std::vector<std::pair<Index, std::vector<std::pair<StateCode, int>>>> factors;
      for (const auto& [vid, st] : states.items()) {
        const Index v = g.vertex(vid);
        const auto& hs = g.half_edges_at(v);
        auto code_of = [&](const std::string& hid) {
          const Index h = g.half_edge(hid);
          auto it = std::find(hs.begin(), hs.end(), h);
          if (it == hs.end()) throw InvalidArgument("half-edge " + hid + " is not at vertex " + vid);
          return static_cast<StateCode>(kFirstHalf + (it - hs.begin()));
        };
        if (st.is_string() && st.get<std::string>() == "occ") {
          factors.push_back({v, {{kOccupied, 1}}});
        } else if (st.is_object() && st.contains("half")) {
          if (reduced) throw InvalidArgument("\"half\" state in a reduced chain");
          factors.push_back({v, {{code_of(st["half"].get<std::string>()), 1}}});
        } else if (st.is_object() && st.contains("diff")) {
          if (!reduced) throw InvalidArgument("\"diff\" state in an unreduced chain");
          const StateCode a = code_of(st["diff"].at(0).get<std::string>());
          const StateCode b = code_of(st["diff"].at(1).get<std::string>());
          std::vector<std::pair<StateCode, int>> opts;
          if (a != kFirstHalf) opts.push_back({a, 1});
          if (b != kFirstHalf) opts.push_back({b, -1});
          factors.push_back({v, opts});
        } else {
          throw InvalidArgument("malformed state for vertex " + vid);
        }
      }
      const BigRational c = parse_rational(t.at("c").get<std::string>());
      std::function<void(std::size_t, SwBasisElement&, int)> expand =
          [&](std::size_t f, SwBasisElement& x, int sign) {
            if (f == factors.size()) {
              out.add(x, c * sign);
              return;
            }
            for (const auto& [code, s] : factors[f].second) {
              x.state[factors[f].first] = code;
              expand(f + 1, x, sign * s);
            }
            x.state[factors[f].first] = kEmpty;
          };
      expand(0, base, 1);
    }
    return out;
  } catch (const nlohmann::json::exception& err) {
    throw InvalidArgument(std::string("malformed chain JSON: ") + err.what());
  }
}

// ---------------------------------------------------------------------------
// Induced maps

namespace detail {

inline StateCode code_of_half(const Graph& g, Index w, Index h) {
  const auto& hs = g.half_edges_at(w);
  auto it = std::find(hs.begin(), hs.end(), h);
  if (it == hs.end()) throw InvalidArgument("half-edge image not at the image vertex");
  return static_cast<StateCode>(kFirstHalf + (it - hs.begin()));
}

inline int permutation_sign(const std::vector<Index>& order) {
  int inversions = 0;
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) inversions += order[a] > order[b];
  }
  return inversions % 2 ? -1 : 1;
}

}  // namespace detail

/// Image of one basis element under f, as (element, coefficient) terms.
inline std::vector<std::pair<SwBasisElement, int>> map_element(const GraphMorphism& f, bool reduced,
                                                                const SwBasisElement& x) {
  const Graph& s = f.source();
  const Graph& t = f.target();
  SwBasisElement base;
  base.state.assign(t.num_vertices(), kEmpty);
  base.mult.assign(t.num_edges(), 0);
  for (Index e = 0; e < s.num_edges(); ++e) base.mult[f.edge_image(e)] += x.mult[e];

  std::vector<Index> targets;
  std::vector<std::vector<std::pair<StateCode, int>>> options;
  for (Index v = 0; v < s.num_vertices(); ++v) {
    const StateCode c = x.state[v];
    if (c == kEmpty) continue;
    const VertexImage& img = f.vertex_image(v);
    if (c == kOccupied) {
      if (!img.is_vertex()) {
        ++base.mult[img.index];
      } else if (!reduced || t.valence(img.index) == 0) {
        base.state[img.index] = kOccupied;
      } else {
        ++base.mult[Graph::edge_of(t.half_edges_at(img.index)[0])];
      }
      continue;
    }
    if (!img.is_vertex()) return {};
    const Index w = img.index;
    const auto& hs = s.half_edges_at(v);
    const StateCode a = detail::code_of_half(t, w, f.half_image(hs[c - kFirstHalf]));
    std::vector<std::pair<StateCode, int>> opts;
    if (!reduced) {
      opts.push_back({a, 1});
    } else {
      const StateCode b = detail::code_of_half(t, w, f.half_image(hs[0]));
      if (a != kFirstHalf) opts.push_back({a, 1});
      if (b != kFirstHalf) opts.push_back({b, -1});
    }
    targets.push_back(w);
    options.push_back(std::move(opts));
  }
  const int sign = detail::permutation_sign(targets);

  std::vector<std::pair<SwBasisElement, int>> out;
  std::function<void(std::size_t, int)> expand = [&](std::size_t j, int coeff) {
    if (j == options.size()) {
      out.push_back({base, coeff});
      return;
    }
    for (const auto& [code, sg] : options[j]) {
      base.state[targets[j]] = code;
      expand(j + 1, coeff * sg);
    }
    base.state[targets[j]] = kEmpty;
  };
  expand(0, sign);
  return out;
}

/// Matrix of f_* : S(Γ₁)_{i,k} -> S(Γ₂)_{i,k}.
inline IntMatrix induced_chain_map(const GraphMorphism& f, int i, int k, bool reduced,
                                   const SwComplex* source = nullptr,
                                   const SwComplex* target = nullptr) {
  std::unique_ptr<SwComplex> own_s, own_t;
  if (!source) source = (own_s = std::make_unique<SwComplex>(f.source(), reduced)).get();
  if (!target) target = (own_t = std::make_unique<SwComplex>(f.target(), reduced)).get();
  IntMatrix m(target->dim(i, k), source->dim(i, k));
  if (m.cols() == 0) return m;
  auto src = source->slice(i, k);
  auto dst = target->slice(i, k);
  for (Index j = 0; j < src->size(); ++j) {
    for (const auto& [y, c] : map_element(f, reduced, src->basis[j])) {
      m.columns[j].push_back({dst->index.at(y), c});
    }
    canonicalize(m.columns[j]);
  }
  return m;
}

inline Chain push_forward(const GraphMorphism& f, const Chain& c) {
  check_shape(f.source(), c);
  Chain out(c.coeff(), c.reduced(), c.degree(), c.weight());
  for (const auto& [x, v] : c.terms()) {
    for (const auto& [y, s] : map_element(f, c.reduced(), x)) out.add(y, v * s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Star and torus classes

struct StarSpec {
  Index vertex = 0;
  std::array<Index, 3> halves{};  // h1, h2, h3
};

namespace detail {

inline void check_star(const Graph& g, const StarSpec& s) {
  if (s.vertex >= g.num_vertices()) throw InvalidArgument("star: unknown vertex");
  if (g.valence(s.vertex) < 3) {
    throw InvalidArgument("star: vertex " + g.vertex_id(s.vertex) + " has valence below 3");
  }
  for (int a = 0; a < 3; ++a) {
    if (s.halves[a] >= g.num_half_edges() || g.vertex_of(s.halves[a]) != s.vertex) {
      throw InvalidArgument("star: half-edge not incident to " + g.vertex_id(s.vertex));
    }
    for (int b = 0; b < a; ++b) {
      if (s.halves[a] == s.halves[b]) throw InvalidArgument("star: half-edges must be distinct");
    }
  }
}

/// The star factor e1(h2-h3)+e2(h3-h1)+e3(h1-h2) as (edge, state code, sign) terms.
inline std::vector<std::tuple<Index, StateCode, int>> star_terms(const Graph& g, const StarSpec& s,
                                                                 bool reduced) {
  const auto& hs = g.half_edges_at(s.vertex);
  auto code = [&](Index h) {
    return static_cast<StateCode>(kFirstHalf + (std::find(hs.begin(), hs.end(), h) - hs.begin()));
  };
  std::vector<std::tuple<Index, StateCode, int>> out;
  for (int a = 0; a < 3; ++a) {
    const Index e = Graph::edge_of(s.halves[a]);
    const Index plus = s.halves[(a + 1) % 3], minus = s.halves[(a + 2) % 3];
    if (!reduced) {
      out.push_back({e, code(plus), 1});
      out.push_back({e, code(minus), -1});
    } else {
      // h - h' = (h - h0) - (h' - h0); the h0 - h0 term is zero.
      if (code(plus) != kFirstHalf) out.push_back({e, code(plus), 1});
      if (code(minus) != kFirstHalf) out.push_back({e, code(minus), -1});
    }
  }
  return out;
}

}  // namespace detail

/// Product of star representatives at vertices with pairwise disjoint closed stars.
inline Chain torus_representative(const Graph& g, const std::vector<StarSpec>& spec,
                                  const Coeff& coeff = Coeff::rational(), bool reduced = true) {
  for (const auto& s : spec) detail::check_star(g, s);
  for (std::size_t a = 0; a < spec.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      auto closed = [&](Index v) {
        std::vector<Index> vs{v};
        for (Index h : g.half_edges_at(v)) vs.push_back(g.vertex_of(Graph::opposite(h)));
        std::sort(vs.begin(), vs.end());
        return vs;
      };
      auto va = closed(spec[a].vertex), vb = closed(spec[b].vertex);
      std::vector<Index> common;
      std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));
      if (!common.empty()) {
        throw InvalidArgument("closed stars of " + g.vertex_id(spec[a].vertex) + " and " +
                              g.vertex_id(spec[b].vertex) + " overlap");
      }
    }
  }
  const int n = static_cast<int>(spec.size());
  Chain out(coeff, reduced, n, 2 * n);
  std::vector<Index> order;
  for (const auto& s : spec) order.push_back(s.vertex);
  const int sign = detail::permutation_sign(order);

  SwBasisElement x;
  x.state.assign(g.num_vertices(), kEmpty);
  x.mult.assign(g.num_edges(), 0);
  std::vector<std::vector<std::tuple<Index, StateCode, int>>> factors;
  for (const auto& s : spec) factors.push_back(detail::star_terms(g, s, reduced));
  std::function<void(std::size_t, int)> expand = [&](std::size_t j, int c) {
    if (j == factors.size()) {
      out.add(x, c);
      return;
    }
    for (const auto& [e, code, sg] : factors[j]) {
      ++x.mult[e];
      x.state[spec[j].vertex] = code;
      expand(j + 1, c * sg);
      --x.mult[e];
    }
    x.state[spec[j].vertex] = kEmpty;
  };
  expand(0, sign);
  return out;
}

inline Chain star_representative(const Graph& g, const StarSpec& s,
                                  const Coeff& coeff = Coeff::rational(), bool reduced = true) {
  return torus_representative(g, {s}, coeff, reduced);
}

/// Star at v using its first three half-edges.
inline StarSpec default_star(const Graph& g, Index v) {
  if (g.valence(v) < 3) throw InvalidArgument("vertex " + g.vertex_id(v) + " has valence below 3");
  const auto& hs = g.half_edges_at(v);
  return {v, {hs[0], hs[1], hs[2]}};
}

// ---------------------------------------------------------------------------
// Explosion sequence and loop splitting (reduced complexes)

struct ExplosionMaps {
  IntMatrix inclusion;   // S̃(Γ_v)_{i,k} -> S̃(Γ)_{i,k}
  IntMatrix projection;  // S̃(Γ)_{i,k} -> ⊕_{h≠h0} S̃(Γ_v)_{i-1,k-1}
  std::vector<Index> blocks;  // the half-edges h ≠ h0 indexing the summands
  std::size_t block_dim = 0;  // dim S̃(Γ_v)_{i-1,k-1}
};

namespace detail {

/// Γ_v element for a Γ element (the state at v dropped); layout as explode().
inline SwBasisElement restrict_to_explosion(const Graph& g, Index v, const Graph& ex,
                                            const SwBasisElement& x) {
  SwBasisElement y;
  y.mult = x.mult;
  y.state.assign(ex.num_vertices(), kEmpty);
  Index pos = 0;
  for (Index u = 0; u < g.num_vertices(); ++u) {
    if (u == v) {
      pos += static_cast<Index>(g.valence(v));
      continue;
    }
    y.state[pos++] = x.state[u];
  }
  return y;
}

/// Inverse of restrict_to_explosion, with state `code` placed at v.
inline SwBasisElement extend_from_explosion(const Graph& g, Index v, const SwBasisElement& y,
                                            StateCode code) {
  SwBasisElement x;
  x.mult = y.mult;
  x.state.assign(g.num_vertices(), kEmpty);
  Index pos = 0;
  for (Index u = 0; u < g.num_vertices(); ++u) {
    if (u == v) {
      pos += static_cast<Index>(g.valence(v));
      x.state[u] = code;
      continue;
    }
    x.state[u] = y.state[pos++];
  }
  return x;
}

inline int halves_before(const SwBasisElement& x, Index v) {
  int n = 0;
  for (Index u = 0; u < v; ++u) n += x.state[u] >= kFirstHalf;
  return n;
}

}  // namespace detail

inline ExplosionMaps explosion_maps(const Graph& g, Index v, Index h0, int i, int k) {
  if (v >= g.num_vertices()) throw InvalidArgument("explosion: unknown vertex");
  const auto& hs = g.half_edges_at(v);
  if (std::find(hs.begin(), hs.end(), h0) == hs.end()) {
    throw InvalidArgument("explosion: half-edge not at " + g.vertex_id(v));
  }
  const GraphMorphism incl = explosion_morphism(g, v);
  const Graph& ex = incl.source();
  SwComplex big(g, true), small(ex, true);

  ExplosionMaps out;
  out.inclusion = induced_chain_map(incl, i, k, true, &small, &big);
  for (Index h : hs) {
    if (h != h0) out.blocks.push_back(h);
  }
  out.block_dim = i >= 1 && k >= 1 ? small.dim(i - 1, k - 1) : 0;
  out.projection = IntMatrix(out.blocks.size() * out.block_dim, big.dim(i, k));
  if (out.projection.cols() == 0 || out.block_dim == 0) return out;

  auto src = big.slice(i, k);
  auto dst = small.slice(i - 1, k - 1);
  auto block_of = [&](Index h) {
    return static_cast<Index>(std::find(out.blocks.begin(), out.blocks.end(), h) - out.blocks.begin());
  };
  for (Index j = 0; j < src->size(); ++j) {
    const SwBasisElement& x = src->basis[j];
    const StateCode c = x.state[v];
    if (c < kFirstHalf) continue;
    const Index row = dst->index.at(detail::restrict_to_explosion(g, v, ex, x));
    const int sign = detail::halves_before(x, v) % 2 ? -1 : 1;
    // x_v = (h - hp) = (h - h0) - (hp - h0), hp the preferred half-edge.
    const Index h = hs[c - kFirstHalf], hp = hs[0];
    auto& col = out.projection.columns[j];
    if (h != h0) col.push_back({block_of(h) * static_cast<Index>(out.block_dim) + row, sign});
    if (hp != h0) col.push_back({block_of(hp) * static_cast<Index>(out.block_dim) + row, -sign});
    canonicalize(col);
  }
  return out;
}

struct LoopSplitting {
  IntMatrix from_exploded;  // S̃(Γ_v)_{i-1,k-1} -> S̃(Γ)_{i,k}, α ↦ h12·α
  IntMatrix from_tail;      // S̃(Γ_-)_{i,k} -> S̃(Γ)_{i,k}, β ↦ ι_*β
  std::size_t dim = 0;      // dim S̃(Γ)_{i,k}
};

inline LoopSplitting loop_splitting(const Graph& g, Index e, int i, int k) {
  if (e >= g.num_edges()) throw InvalidArgument("loop splitting: unknown edge");
  if (!g.is_self_loop(e)) throw InvalidArgument("edge \"" + g.edge_id(e) + "\" is not a self-loop");
  const Index v = g.ends(e)[0];
  const Graph ex = explode(g, v);
  const GraphMorphism iota = tail_morphism(g, e);
  SwComplex full(g, true), exploded(ex, true), minus(iota.source(), true);

  LoopSplitting out;
  out.dim = full.dim(i, k);
  out.from_tail = induced_chain_map(iota, i, k, true, &minus, &full);
  const std::size_t na = i >= 1 && k >= 1 ? exploded.dim(i - 1, k - 1) : 0;
  out.from_exploded = IntMatrix(out.dim, na);
  if (na == 0) return out;

  auto src = exploded.slice(i - 1, k - 1);
  auto dst = full.slice(i, k);
  const StateCode c1 = detail::code_of_half(g, v, 2 * e), c2 = detail::code_of_half(g, v, 2 * e + 1);
  for (Index j = 0; j < na; ++j) {
    const SwBasisElement& y = src->basis[j];
    const int sign =
        detail::halves_before(detail::extend_from_explosion(g, v, y, kEmpty), v) % 2 ? -1 : 1;
    auto& col = out.from_exploded.columns[j];
    // h12 = h1 - h2 = (h1 - hp) - (h2 - hp).
    if (c1 != kFirstHalf) col.push_back({dst->index.at(detail::extend_from_explosion(g, v, y, c1)), sign});
    if (c2 != kFirstHalf) col.push_back({dst->index.at(detail::extend_from_explosion(g, v, y, c2)), -sign});
    canonicalize(col);
  }
  return out;
}

}  // namespace gch
