#pragma once

// Finite multigraphs with explicit half-edge incidence.
//
// Vertices and edges are indexed in construction order; that order fixes the
// Koszul sign convention of every chain complex built on the graph.  Edge e
// owns the half-edges 2e (end 0) and 2e+1 (end 1); a self-loop attaches both
// to the same vertex.  Half-edges at a vertex are listed in lexicographic
// order of their ids "<edge id>.<end>".

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gch/error.hpp"

namespace gch {

using Index = std::uint32_t;

class Graph {
 public:
  Graph() = default;

  std::size_t num_vertices() const { return vertex_ids_.size(); }
  std::size_t num_edges() const { return edge_ids_.size(); }
  std::size_t num_half_edges() const { return 2 * edge_ids_.size(); }

  const std::string& vertex_id(Index v) const { return vertex_ids_.at(v); }
  const std::string& edge_id(Index e) const { return edge_ids_.at(e); }
  std::string half_edge_id(Index h) const {
    return edge_id(h / 2) + "." + std::to_string(h % 2);
  }
  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
  const std::vector<std::string>& edge_ids() const { return edge_ids_; }

  std::optional<Index> find_vertex(std::string_view id) const {
    auto it = vertex_index_.find(std::string(id));
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<Index> find_edge(std::string_view id) const {
    auto it = edge_index_.find(std::string(id));
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }
  Index vertex(std::string_view id) const {
    if (auto v = find_vertex(id)) return *v;
    throw InvalidArgument("unknown vertex \"" + std::string(id) + "\"");
  }
  Index edge(std::string_view id) const {
    if (auto e = find_edge(id)) return *e;
    throw InvalidArgument("unknown edge \"" + std::string(id) + "\"");
  }
  /// Half-edge from "<edge>.<end>".
  Index half_edge(std::string_view id) const {
    const auto dot = id.rfind('.');
    if (dot == std::string_view::npos || dot + 2 != id.size() ||
        (id.back() != '0' && id.back() != '1')) {
      throw InvalidArgument("malformed half-edge id \"" + std::string(id) + "\"");
    }
    return 2 * edge(id.substr(0, dot)) + static_cast<Index>(id.back() - '0');
  }

  const std::array<Index, 2>& ends(Index e) const { return ends_.at(e); }
  static Index edge_of(Index h) { return h / 2; }
  Index vertex_of(Index h) const { return ends_.at(h / 2)[h % 2]; }
  /// The half-edge at the other end of h's edge.
  static Index opposite(Index h) { return h ^ 1U; }

  const std::vector<Index>& half_edges_at(Index v) const { return half_at_.at(v); }
  std::size_t valence(Index v) const { return half_at_.at(v).size(); }
  bool is_self_loop(Index e) const { return ends_.at(e)[0] == ends_.at(e)[1]; }
  bool is_essential(Index v) const { return valence(v) >= 3; }

  /// Distinct edges incident to v, in edge order.
  std::vector<Index> edges_at(Index v) const {
    std::vector<Index> out;
    for (Index h : half_at_.at(v)) out.push_back(edge_of(h));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<Index> essential_vertices() const {
    std::vector<Index> out;
    for (Index v = 0; v < num_vertices(); ++v) {
      if (is_essential(v)) out.push_back(v);
    }
    return out;
  }

  /// Connected component label per vertex (labels in order of first vertex).
  std::vector<Index> vertex_components() const {
    std::vector<Index> parent(num_vertices());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Index x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& [a, b] : ends_) parent[find(a)] = find(b);
    std::vector<Index> label(num_vertices());
    std::unordered_map<Index, Index> relabel;
    for (Index v = 0; v < num_vertices(); ++v) {
      auto [it, inserted] = relabel.try_emplace(find(v), static_cast<Index>(relabel.size()));
      label[v] = it->second;
    }
    return label;
  }

  std::size_t num_components() const {
    auto labels = vertex_components();
    return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_ids_ == b.vertex_ids_ && a.edge_ids_ == b.edge_ids_ && a.ends_ == b.ends_;
  }

 private:
  friend class GraphBuilder;

  std::vector<std::string> vertex_ids_;
  std::vector<std::string> edge_ids_;
  std::vector<std::array<Index, 2>> ends_;
  std::vector<std::vector<Index>> half_at_;
  std::unordered_map<std::string, Index> vertex_index_;
  std::unordered_map<std::string, Index> edge_index_;
};

class GraphBuilder {
 public:
  Index add_vertex(const std::string& id) {
    if (id.empty()) throw InvalidArgument("empty vertex id");
    auto [it, inserted] = g_.vertex_index_.try_emplace(id, static_cast<Index>(g_.vertex_ids_.size()));
    if (!inserted) throw InvalidArgument("duplicate vertex id \"" + id + "\"");
    g_.vertex_ids_.push_back(id);
    return it->second;
  }

  Index add_edge(const std::string& id, const std::string& a, const std::string& b) {
    return add_edge_at(id, g_.vertex(a), g_.vertex(b));
  }

  Index add_edge_at(const std::string& id, Index a, Index b) {
    if (id.empty()) throw InvalidArgument("empty edge id");
    if (a >= g_.vertex_ids_.size() || b >= g_.vertex_ids_.size()) {
      throw InvalidArgument("edge \"" + id + "\" references an unknown vertex");
    }
    auto [it, inserted] = g_.edge_index_.try_emplace(id, static_cast<Index>(g_.edge_ids_.size()));
    if (!inserted) throw InvalidArgument("duplicate edge id \"" + id + "\"");
    g_.edge_ids_.push_back(id);
    g_.ends_.push_back({a, b});
    return it->second;
  }

  Graph build() && {
    g_.half_at_.assign(g_.vertex_ids_.size(), {});
    for (Index e = 0; e < g_.ends_.size(); ++e) {
      g_.half_at_[g_.ends_[e][0]].push_back(2 * e);
      g_.half_at_[g_.ends_[e][1]].push_back(2 * e + 1);
    }
    for (auto& hs : g_.half_at_) {
      std::sort(hs.begin(), hs.end(), [&](Index x, Index y) {
        const auto& ex = g_.edge_ids_[x / 2];
        const auto& ey = g_.edge_ids_[y / 2];
        return ex != ey ? ex < ey : x % 2 < y % 2;
      });
    }
    return std::move(g_);
  }

 private:
  Graph g_;
};

// ---------------------------------------------------------------------------
// Text formats

inline Graph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges") ||
      !j["vertices"].is_array() || !j["edges"].is_array()) {
    throw InvalidArgument("graph JSON must be an object with \"vertices\" and \"edges\" arrays");
  }
  GraphBuilder b;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) throw InvalidArgument("vertex ids must be strings");
    b.add_vertex(v.get<std::string>());
  }
  // Resolve ends against the declared vertex list before adding edges.
  std::unordered_map<std::string, Index> vid;
  for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
    vid[j["vertices"][i].get<std::string>()] = static_cast<Index>(i);
  }
  for (const auto& e : j["edges"]) {
    if (!e.is_object() || !e.contains("id") || !e.contains("ends") || !e["id"].is_string() ||
        !e["ends"].is_array() || e["ends"].size() != 2 || !e["ends"][0].is_string() ||
        !e["ends"][1].is_string()) {
      throw InvalidArgument("each edge needs a string \"id\" and two string \"ends\"");
    }
    std::array<Index, 2> ends{};
    for (int k = 0; k < 2; ++k) {
      const auto name = e["ends"][k].get<std::string>();
      auto it = vid.find(name);
      if (it == vid.end()) {
        throw InvalidArgument("edge \"" + e["id"].get<std::string>() +
                              "\" references unknown vertex \"" + name + "\"");
      }
      ends[k] = it->second;
    }
    b.add_edge_at(e["id"].get<std::string>(), ends[0], ends[1]);
  }
  return std::move(b).build();
}

inline Graph parse_graph(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw InvalidArgument(std::string("malformed graph JSON: ") + err.what());
  }
  return graph_from_json(j);
}

inline nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (Index e = 0; e < g.num_edges(); ++e) {
    edges.push_back({{"id", g.edge_id(e)},
                     {"ends", {g.vertex_id(g.ends(e)[0]), g.vertex_id(g.ends(e)[1])}}});
  }
  return {{"vertices", g.vertex_ids()}, {"edges", edges}};
}

// ---------------------------------------------------------------------------
// Builtin families

inline Graph builtin(const std::string& name, int n) {
  GraphBuilder b;
  auto need = [&](bool ok, const std::string& why) {
    if (!ok) throw InvalidArgument("builtin " + name + ": " + why + " (n=" + std::to_string(n) + ")");
  };
  if (name == "star") {
    need(n >= 1, "needs n >= 1");
    b.add_vertex("c");
    for (int i = 1; i <= n; ++i) {
      b.add_vertex("l" + std::to_string(i));
      b.add_edge("e" + std::to_string(i), "c", "l" + std::to_string(i));
    }
  } else if (name == "cycle") {
    b.add_vertex("v");
    b.add_edge("e", "v", "v");
  } else if (name == "theta") {
    need(n >= 3, "needs n >= 3");
    b.add_vertex("v");
    b.add_vertex("w");
    for (int i = 1; i <= n; ++i) b.add_edge("e" + std::to_string(i), "v", "w");
  } else if (name == "complete") {
    need(n >= 1, "needs n >= 1");
    for (int i = 1; i <= n; ++i) b.add_vertex("v" + std::to_string(i));
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        b.add_edge("e" + std::to_string(i) + "_" + std::to_string(j), "v" + std::to_string(i),
                   "v" + std::to_string(j));
      }
    }
  } else if (name == "interval") {
    // interval:n is a path with n edges; interval:1 is the interval I.
    need(n >= 1, "needs n >= 1");
    for (int i = 0; i <= n; ++i) b.add_vertex("p" + std::to_string(i));
    if (n == 1) {
      b.add_edge("e", "p0", "p1");
    } else {
      for (int i = 1; i <= n; ++i) {
        b.add_edge("e" + std::to_string(i), "p" + std::to_string(i - 1), "p" + std::to_string(i));
      }
    }
  } else if (name == "lollipop") {
    b.add_vertex("v");
    b.add_vertex("w");
    b.add_edge("l", "v", "v");
    b.add_edge("t", "v", "w");
  } else if (name == "figure8") {
    b.add_vertex("v");
    b.add_edge("a", "v", "v");
    b.add_edge("b", "v", "v");
  } else if (name == "handcuff") {
    b.add_vertex("v");
    b.add_vertex("w");
    b.add_edge("a", "v", "v");
    b.add_edge("m", "v", "w");
    b.add_edge("b", "w", "w");
  } else if (name == "agraph") {
    b.add_vertex("a");
    b.add_vertex("b");
    b.add_vertex("c");
    b.add_vertex("d");
    b.add_edge("m1", "a", "b");
    b.add_edge("m2", "a", "b");
    b.add_edge("t1", "a", "c");
    b.add_edge("t2", "b", "d");
  } else {
    throw InvalidArgument("unknown builtin family \"" + name + "\"");
  }
  return std::move(b).build();
}

/// "builtin:<family>[:<n>]" or a path to a graph JSON file.
inline Graph load_graph(const std::string& source) {
  if (source.rfind("builtin:", 0) == 0) {
    const std::string rest = source.substr(8);
    const auto colon = rest.find(':');
    const std::string name = rest.substr(0, colon);
    int n = 1;
    if (colon != std::string::npos) {
      const std::string digits = rest.substr(colon + 1);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw InvalidArgument("malformed builtin parameter in \"" + source + "\"");
      }
      n = std::stoi(digits);
    } else if (name == "star" || name == "theta" || name == "complete") {
      throw InvalidArgument("builtin " + name + " needs a size, e.g. builtin:" + name + ":3");
    }
    return builtin(name, n);
  }
  std::ifstream in(source);
  if (!in) throw InvalidArgument("cannot open graph file \"" + source + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

// ---------------------------------------------------------------------------
// Predicates and partitions

/// True iff no 2-valent vertex has its two half-edges on distinct edges.
inline bool is_smooth(const Graph& g) {
  for (Index v = 0; v < g.num_vertices(); ++v) {
    const auto& hs = g.half_edges_at(v);
    if (hs.size() == 2 && Graph::edge_of(hs[0]) != Graph::edge_of(hs[1])) return false;
  }
  return true;
}

/// Classes of edges under e ~ e' iff connected in the graph with W removed.
/// Classes are sorted by their least edge index.
inline std::vector<std::vector<Index>> edge_components(const Graph& g,
                                                       const std::vector<Index>& removed) {
  std::vector<bool> in_w(g.num_vertices(), false);
  for (Index v : removed) in_w.at(v) = true;
  std::vector<Index> parent(g.num_edges());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Index v = 0; v < g.num_vertices(); ++v) {
    if (in_w[v]) continue;
    const auto& hs = g.half_edges_at(v);
    for (std::size_t i = 1; i < hs.size(); ++i) {
      Index a = find(Graph::edge_of(hs[0])), b = find(Graph::edge_of(hs[i]));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::vector<Index>> classes;
  std::unordered_map<Index, std::size_t> slot;
  for (Index e = 0; e < g.num_edges(); ++e) {
    auto [it, inserted] = slot.try_emplace(find(e), classes.size());
    if (inserted) classes.emplace_back();
    classes[it->second].push_back(e);
  }
  return classes;
}

// ---------------------------------------------------------------------------
// Morphisms

/// Where a source vertex goes: a target vertex, or the interior of a target edge.
struct VertexImage {
  enum class Kind { Vertex, EdgeInterior };
  Kind kind = Kind::Vertex;
  Index index = 0;

  static VertexImage to_vertex(Index v) { return {Kind::Vertex, v}; }
  static VertexImage into_edge(Index e) { return {Kind::EdgeInterior, e}; }
  bool is_vertex() const { return kind == Kind::Vertex; }
};

/// Injective cellular map between graphs.  Edge-interior images are symbolic
/// (only the target edge is recorded).  half_image[h] is the target half-edge
/// for source half-edges whose vertex lands on a target vertex, otherwise unset.
class GraphMorphism {
 public:
  static constexpr Index kNone = ~Index{0};

  GraphMorphism(Graph source, Graph target, std::vector<VertexImage> vertex_image,
                std::vector<Index> edge_image,
                const std::unordered_map<Index, Index>& half_overrides = {})
      : source_(std::move(source)),
        target_(std::move(target)),
        vertex_image_(std::move(vertex_image)),
        edge_image_(std::move(edge_image)) {
    validate_and_fill(half_overrides);
  }

  static GraphMorphism identity(const Graph& g) {
    std::vector<VertexImage> vi;
    for (Index v = 0; v < g.num_vertices(); ++v) vi.push_back(VertexImage::to_vertex(v));
    std::vector<Index> ei(g.num_edges());
    std::iota(ei.begin(), ei.end(), 0);
    std::unordered_map<Index, Index> halves;
    for (Index h = 0; h < g.num_half_edges(); ++h) halves[h] = h;
    return GraphMorphism(g, g, std::move(vi), std::move(ei), halves);
  }

  const Graph& source() const { return source_; }
  const Graph& target() const { return target_; }
  const VertexImage& vertex_image(Index v) const { return vertex_image_.at(v); }
  Index edge_image(Index e) const { return edge_image_.at(e); }
  Index half_image(Index h) const { return half_image_.at(h); }

  /// g∘f, where this is f.
  GraphMorphism then(const GraphMorphism& g) const {
    if (!(g.source_ == target_)) throw InvalidArgument("morphisms are not composable");
    std::vector<VertexImage> vi;
    for (const auto& img : vertex_image_) {
      vi.push_back(img.is_vertex() ? g.vertex_image(img.index)
                                   : VertexImage::into_edge(g.edge_image(img.index)));
    }
    std::vector<Index> ei;
    for (Index e : edge_image_) ei.push_back(g.edge_image(e));
    std::unordered_map<Index, Index> halves;
    for (Index h = 0; h < half_image_.size(); ++h) {
      if (half_image_[h] != kNone && g.half_image(half_image_[h]) != kNone) {
        halves[h] = g.half_image(half_image_[h]);
      }
    }
    return GraphMorphism(source_, g.target_, std::move(vi), std::move(ei), halves);
  }

 private:
  void validate_and_fill(const std::unordered_map<Index, Index>& overrides) {
    const Graph& s = source_;
    const Graph& t = target_;
    if (vertex_image_.size() != s.num_vertices() || edge_image_.size() != s.num_edges()) {
      throw InvalidArgument("morphism: image tables do not match the source graph");
    }
    std::vector<bool> vertex_hit(t.num_vertices(), false);
    for (const auto& img : vertex_image_) {
      if (img.is_vertex()) {
        if (img.index >= t.num_vertices()) throw InvalidArgument("morphism: vertex image out of range");
        if (vertex_hit[img.index]) throw InvalidArgument("morphism: two vertices share an image");
        vertex_hit[img.index] = true;
      } else if (img.index >= t.num_edges()) {
        throw InvalidArgument("morphism: edge-interior image out of range");
      }
    }
    half_image_.assign(s.num_half_edges(), kNone);
    std::vector<bool> half_hit(t.num_half_edges(), false);
    std::vector<int> full_cover(t.num_edges(), 0), partial(t.num_edges(), 0);
    for (Index e = 0; e < s.num_edges(); ++e) {
      const Index f = edge_image_[e];
      if (f >= t.num_edges()) throw InvalidArgument("morphism: edge image out of range");
      int vertex_ends = 0;
      for (Index end = 0; end < 2; ++end) {
        const Index h = 2 * e + end;
        const auto& img = vertex_image_[s.vertex_of(h)];
        if (!img.is_vertex()) {
          if (img.index != f) {
            throw InvalidArgument("morphism: edge \"" + s.edge_id(e) +
                                  "\" has an endpoint inside a different edge");
          }
          if (overrides.count(h)) throw InvalidArgument("morphism: override for a collapsed half-edge");
          continue;
        }
        ++vertex_ends;
        const Index w = img.index;
        Index target_half = kNone;
        if (auto it = overrides.find(h); it != overrides.end()) {
          target_half = it->second;
          if (target_half >= t.num_half_edges() || Graph::edge_of(target_half) != f ||
              t.vertex_of(target_half) != w) {
            throw InvalidArgument("morphism: inconsistent half-edge override");
          }
        } else if (t.ends(f)[0] == w && t.ends(f)[1] == w) {
          target_half = 2 * f + end;
        } else if (t.ends(f)[0] == w) {
          target_half = 2 * f;
        } else if (t.ends(f)[1] == w) {
          target_half = 2 * f + 1;
        } else {
          throw InvalidArgument("morphism: edge \"" + s.edge_id(e) +
                                "\" is not attached to its image's endpoints");
        }
        if (half_hit[target_half]) throw InvalidArgument("morphism: half-edge image not injective");
        half_hit[target_half] = true;
        half_image_[h] = target_half;
      }
      if (vertex_ends == 2) {
        ++full_cover[f];
      } else {
        ++partial[f];
      }
    }
    for (const auto& img : vertex_image_) {
      if (!img.is_vertex()) ++partial[img.index];
    }
    for (Index f = 0; f < t.num_edges(); ++f) {
      if (full_cover[f] > 1 || (full_cover[f] == 1 && partial[f] > 0)) {
        throw InvalidArgument("morphism: images overlap inside edge \"" + t.edge_id(f) + "\"");
      }
    }
  }

  Graph source_;
  Graph target_;
  std::vector<VertexImage> vertex_image_;
  std::vector<Index> edge_image_;
  std::vector<Index> half_image_;
};

// ---------------------------------------------------------------------------
// Rewriting operations

struct MergeStep {
  std::string vertex;    // the removed 2-valent vertex
  std::string kept;      // surviving edge id
  std::string absorbed;  // edge merged into it
};

struct Smoothing {
  Graph graph;
  std::vector<MergeStep> history;
  GraphMorphism morphism;  // source graph -> smoothed graph
};

/// Maximal smoothing: merges the two edges at 2-valent vertices until smooth.
/// The merged edge keeps the lexicographically smaller id.
inline Smoothing smooth(const Graph& g) {
  struct WorkEdge {
    std::array<Index, 2> ends;
    std::array<Index, 2> origin;  // original half-edge at each end
    std::vector<Index> originals;
    std::vector<Index> interior;
    bool alive = true;
  };
  std::vector<WorkEdge> edges;
  for (Index e = 0; e < g.num_edges(); ++e) {
    edges.push_back({g.ends(e), {2 * e, 2 * e + 1}, {e}, {}, true});
  }
  std::vector<bool> vertex_alive(g.num_vertices(), true);
  std::vector<MergeStep> history;

  bool changed = true;
  while (changed) {
    changed = false;
    for (Index v = 0; v < g.num_vertices() && !changed; ++v) {
      if (!vertex_alive[v]) continue;
      std::vector<std::pair<Index, Index>> at;  // (edge, end)
      for (Index e = 0; e < edges.size(); ++e) {
        if (!edges[e].alive) continue;
        for (Index end = 0; end < 2; ++end) {
          if (edges[e].ends[end] == v) at.push_back({e, end});
        }
      }
      if (at.size() != 2 || at[0].first == at[1].first) continue;
      auto [e1, end1] = at[0];
      auto [e2, end2] = at[1];
      if (g.edge_id(e2) < g.edge_id(e1)) {
        std::swap(e1, e2);
        std::swap(end1, end2);
      }
      WorkEdge& keep = edges[e1];
      WorkEdge& gone = edges[e2];
      const Index a = keep.ends[1 - end1], b = gone.ends[1 - end2];
      const Index oa = keep.origin[1 - end1], ob = gone.origin[1 - end2];
      keep.ends = {a, b};
      keep.origin = {oa, ob};
      keep.originals.insert(keep.originals.end(), gone.originals.begin(), gone.originals.end());
      keep.interior.insert(keep.interior.end(), gone.interior.begin(), gone.interior.end());
      keep.interior.push_back(v);
      gone.alive = false;
      vertex_alive[v] = false;
      history.push_back({g.vertex_id(v), g.edge_id(e1), g.edge_id(e2)});
      changed = true;
    }
  }

  GraphBuilder b;
  std::vector<Index> new_vertex(g.num_vertices(), GraphMorphism::kNone);
  for (Index v = 0; v < g.num_vertices(); ++v) {
    if (vertex_alive[v]) new_vertex[v] = b.add_vertex(g.vertex_id(v));
  }
  std::vector<VertexImage> vi(g.num_vertices());
  std::vector<Index> ei(g.num_edges());
  std::unordered_map<Index, Index> halves;
  for (Index e = 0; e < edges.size(); ++e) {
    if (!edges[e].alive) continue;
    const Index f = b.add_edge_at(g.edge_id(e), new_vertex[edges[e].ends[0]],
                                  new_vertex[edges[e].ends[1]]);
    for (Index o : edges[e].originals) ei[o] = f;
    for (Index w : edges[e].interior) vi[w] = VertexImage::into_edge(f);
    halves[edges[e].origin[0]] = 2 * f;
    halves[edges[e].origin[1]] = 2 * f + 1;
  }
  for (Index v = 0; v < g.num_vertices(); ++v) {
    if (vertex_alive[v]) vi[v] = VertexImage::to_vertex(new_vertex[v]);
  }
  Graph out = std::move(b).build();
  GraphMorphism m(g, out, std::move(vi), std::move(ei), halves);
  return {std::move(out), std::move(history), std::move(m)};
}

/// True iff the maximal smoothing has no vertex with three distinct edges.
inline bool is_small(const Graph& g) {
  const Graph s = smooth(g).graph;
  for (Index v = 0; v < s.num_vertices(); ++v) {
    if (s.edges_at(v).size() >= 3) return false;
  }
  return true;
}

/// Id of the vertex created for half-edge h when its vertex is exploded.
inline std::string exploded_vertex_id(const Graph& g, Index h) {
  return g.vertex_id(g.vertex_of(h)) + "|" + g.half_edge_id(h);
}

/// Replaces v by one 1-valent vertex per half-edge at v, in place in the vertex order.
inline Graph explode(const Graph& g, Index v) {
  if (v >= g.num_vertices()) throw InvalidArgument("explode: unknown vertex");
  GraphBuilder b;
  std::vector<Index> remap(g.num_vertices());
  std::unordered_map<Index, Index> half_vertex;
  for (Index u = 0; u < g.num_vertices(); ++u) {
    if (u != v) {
      remap[u] = b.add_vertex(g.vertex_id(u));
      continue;
    }
    for (Index h : g.half_edges_at(v)) half_vertex[h] = b.add_vertex(exploded_vertex_id(g, h));
  }
  for (Index e = 0; e < g.num_edges(); ++e) {
    std::array<Index, 2> ends{};
    for (Index end = 0; end < 2; ++end) {
      const Index h = 2 * e + end;
      ends[end] = g.vertex_of(h) == v ? half_vertex.at(h) : remap[g.vertex_of(h)];
    }
    b.add_edge_at(g.edge_id(e), ends[0], ends[1]);
  }
  return std::move(b).build();
}

/// Explodes every vertex of W (ids are stable, so the order does not matter).
inline Graph explode_all(const Graph& g, const std::vector<Index>& w) {
  std::vector<std::string> ids;
  for (Index v : w) ids.push_back(g.vertex_id(v));
  Graph out = g;
  for (const auto& id : ids) out = explode(out, out.vertex(id));
  return out;
}

/// The morphism Γ_v -> Γ: each exploded vertex lands inside its edge.
inline GraphMorphism explosion_morphism(const Graph& g, Index v) {
  Graph ex = explode(g, v);
  std::vector<VertexImage> vi(ex.num_vertices());
  for (Index u = 0; u < ex.num_vertices(); ++u) {
    if (auto orig = g.find_vertex(ex.vertex_id(u)); orig && *orig != v) {
      vi[u] = VertexImage::to_vertex(*orig);
    }
  }
  for (Index h : g.half_edges_at(v)) {
    vi[ex.vertex(exploded_vertex_id(g, h))] = VertexImage::into_edge(Graph::edge_of(h));
  }
  std::vector<Index> ei(g.num_edges());
  std::iota(ei.begin(), ei.end(), 0);
  std::unordered_map<Index, Index> halves;
  for (Index h = 0; h < g.num_half_edges(); ++h) {
    if (g.vertex_of(h) != v) halves[h] = h;
  }
  return GraphMorphism(std::move(ex), g, std::move(vi), std::move(ei), halves);
}

inline std::string tail_vertex_id(const Graph& g, Index e) { return g.edge_id(e) + "|tail"; }

/// Γ_-: the self-loop e keeps end 0 at its vertex; end 1 moves to a new 1-valent vertex.
inline Graph loop_to_tail(const Graph& g, Index e) {
  if (e >= g.num_edges()) throw InvalidArgument("loop_to_tail: unknown edge");
  if (!g.is_self_loop(e)) {
    throw InvalidArgument("loop_to_tail: edge \"" + g.edge_id(e) + "\" is not a self-loop");
  }
  GraphBuilder b;
  for (Index u = 0; u < g.num_vertices(); ++u) b.add_vertex(g.vertex_id(u));
  const Index w = b.add_vertex(tail_vertex_id(g, e));
  for (Index f = 0; f < g.num_edges(); ++f) {
    b.add_edge_at(g.edge_id(f), g.ends(f)[0], f == e ? w : g.ends(f)[1]);
  }
  return std::move(b).build();
}

/// The morphism Γ_- -> Γ folding the tail back into the loop.
inline GraphMorphism tail_morphism(const Graph& g, Index e) {
  Graph minus = loop_to_tail(g, e);
  std::vector<VertexImage> vi;
  for (Index u = 0; u < g.num_vertices(); ++u) vi.push_back(VertexImage::to_vertex(u));
  vi.push_back(VertexImage::into_edge(e));
  std::vector<Index> ei(g.num_edges());
  std::iota(ei.begin(), ei.end(), 0);
  std::unordered_map<Index, Index> halves;
  for (Index h = 0; h < g.num_half_edges(); ++h) {
    if (h != 2 * e + 1) halves[h] = h;
  }
  return GraphMorphism(std::move(minus), g, std::move(vi), std::move(ei), halves);
}

/// Disjoint union; ids are prefixed to keep them distinct.
inline Graph disjoint_union(const Graph& a, const Graph& b, const std::string& prefix_a = "L.",
                            const std::string& prefix_b = "R.") {
  GraphBuilder out;
  for (const auto* part : {&a, &b}) {
    const std::string& p = part == &a ? prefix_a : prefix_b;
    const Index offset = static_cast<Index>(part == &a ? 0 : a.num_vertices());
    for (Index v = 0; v < part->num_vertices(); ++v) out.add_vertex(p + part->vertex_id(v));
    for (Index e = 0; e < part->num_edges(); ++e) {
      out.add_edge_at(p + part->edge_id(e), offset + part->ends(e)[0], offset + part->ends(e)[1]);
    }
  }
  return std::move(out).build();
}

/// Splits every edge into `segments` pieces.  Original vertices come first, in
/// order; interior vertices of edge e are "<e>^1".."<e>^(s-1)" and its pieces
/// "<e>_1".."<e>_s" running from end 0 to end 1.
inline Graph subdivide(const Graph& g, int segments) {
  if (segments < 1) throw InvalidArgument("subdivide: segments must be >= 1");
  if (segments == 1) return g;
  GraphBuilder b;
  for (Index v = 0; v < g.num_vertices(); ++v) b.add_vertex(g.vertex_id(v));
  for (Index e = 0; e < g.num_edges(); ++e) {
    Index prev = g.ends(e)[0];
    for (int j = 1; j <= segments; ++j) {
      const Index next = j == segments
                             ? g.ends(e)[1]
                             : b.add_vertex(g.edge_id(e) + "^" + std::to_string(j));
      b.add_edge_at(g.edge_id(e) + "_" + std::to_string(j), prev, next);
      prev = next;
    }
  }
  return std::move(b).build();
}

}  // namespace gch
