#include <catch2/catch_amalgamated.hpp>

#include "gch/gch.hpp"
#include "oracles.hpp"

using namespace gch;

TEST_CASE("chain group dimensions match the state count", "[swiatkowski]") {
  for (const auto& [name, g] : oracle::suite()) {
    for (bool reduced : {true, false}) {
      const SwComplex c(g, reduced);
      for (int k = 0; k <= 5; ++k) {
        for (int i = 0; i <= 4; ++i) {
          INFO(name << " reduced=" << reduced << " i=" << i << " k=" << k);
          CHECK(BigInt(c.dim(i, k)) == oracle::chain_dim(g, i, k, reduced));
        }
      }
    }
  }
}

TEST_CASE("basis elements are ordered and indexed", "[swiatkowski]") {
  const SwComplex c(builtin("theta", 3), true);
  const auto s = c.slice(1, 3);
  REQUIRE(s->size() > 1);
  for (Index j = 0; j + 1 < s->size(); ++j) CHECK(s->basis[j] < s->basis[j + 1]);
  for (Index j = 0; j < s->size(); ++j) {
    CHECK(s->find(s->basis[j]) == j);
    CHECK(s->basis[j].degree() == 1);
    CHECK(s->basis[j].weight() == 3);
  }
  CHECK(c.max_degree() == 2);
  CHECK(SwComplex(builtin("complete", 4), false).max_degree() == 4);
}

TEST_CASE("boundary squares to zero", "[swiatkowski]") {
  for (const auto& [name, g] : oracle::suite()) {
    for (bool reduced : {true, false}) {
      const SwComplex c(g, reduced);
      for (int k = 0; k <= 5; ++k) {
        for (int i = 2; i <= 4; ++i) {
          INFO(name << " i=" << i << " k=" << k);
          CHECK(multiply(c.boundary(i - 1, k), c.boundary(i, k)).is_zero());
        }
      }
    }
  }
}

TEST_CASE("boundary of single half-edge states", "[swiatkowski]") {
  const Graph g = builtin("star", 3);
  const Index c = g.vertex("c");
  // Unreduced: ∂(h) = e(h) - v.
  {
    SwBasisElement x{std::vector<StateCode>(g.num_vertices(), kEmpty), std::vector<std::uint16_t>(g.num_edges(), 0)};
    x.state[c] = kFirstHalf + 1;
    const Chain d = boundary(g, basis_chain(x, Coeff::rational(), false));
    SwBasisElement on_edge = x, at_vertex = x;
    on_edge.state[c] = kEmpty;
    on_edge.mult[g.edge_of(g.half_edges_at(c)[1])] = 1;
    at_vertex.state[c] = kOccupied;
    CHECK(d.size() == 2);
    CHECK(d.coefficient(on_edge) == 1);
    CHECK(d.coefficient(at_vertex) == -1);
  }
  // Reduced: ∂(h_j - h_0) = e(h_j) - e(h_0).
  {
    SwBasisElement x{std::vector<StateCode>(g.num_vertices(), kEmpty), std::vector<std::uint16_t>(g.num_edges(), 0)};
    x.state[c] = kFirstHalf + 2;
    const Chain d = boundary(g, basis_chain(x, Coeff::rational(), true));
    SwBasisElement ej = x, e0 = x;
    ej.state[c] = e0.state[c] = kEmpty;
    ej.mult[g.edge("e3")] = 1;
    e0.mult[g.edge("e1")] = 1;
    CHECK(d.size() == 2);
    CHECK(d.coefficient(ej) == 1);
    CHECK(d.coefficient(e0) == -1);
  }
  // A self-loop difference has zero boundary.
  {
    const Graph cyc = builtin("cycle", 1);
    SwBasisElement x{{kFirstHalf + 1}, {0}};
    CHECK(is_cycle(cyc, basis_chain(x, Coeff::rational(), true)));
  }
}

TEST_CASE("stabilization is a commuting family of chain maps", "[swiatkowski]") {
  for (const auto& [name, g] : oracle::suite()) {
    const SwComplex c(g, true);
    for (int k = 0; k <= 4; ++k) {
      for (int i = 0; i <= 3; ++i) {
        for (Index e = 0; e < g.num_edges(); ++e) {
          INFO(name << " e=" << e << " i=" << i << " k=" << k);
          const IntMatrix lhs = multiply(c.boundary(i + 1, k + 1), c.stabilization(e, i + 1, k));
          const IntMatrix rhs = multiply(c.stabilization(e, i, k), c.boundary(i + 1, k));
          CHECK(lhs.columns == rhs.columns);
          for (Index f = 0; f < e; ++f) {
            CHECK(multiply(c.stabilization(e, i, k + 1), c.stabilization(f, i, k)).columns ==
                  multiply(c.stabilization(f, i, k + 1), c.stabilization(e, i, k)).columns);
          }
        }
      }
    }
  }
}

TEST_CASE("chain arithmetic and coefficient handling", "[swiatkowski]") {
  const Graph g = builtin("theta", 3);
  const SwComplex c(g, true);
  const auto s = c.slice(1, 2);
  Chain a(Coeff::rational(), true, 1, 2);
  a.add(s->basis[0], BigRational(1, 2));
  a.add(s->basis[1], 3);
  const Chain b = a.scaled(2);
  CHECK(b.coefficient(s->basis[0]) == 1);
  CHECK((b - a - a).is_zero());
  CHECK_THROWS_AS(a.add(c.slice(1, 3)->basis[0], 1), InvalidArgument);
  CHECK_THROWS_AS(a + Chain(Coeff::rational(), true, 1, 3), InvalidArgument);

  Chain m(Coeff::mod(3), true, 1, 2);
  m.add(s->basis[0], 2);
  m.add(s->basis[0], 1);
  CHECK(m.is_zero());
  m.add(s->basis[0], -1);
  CHECK(m.coefficient(s->basis[0]) == 2);

  Chain z(Coeff::integer(), true, 1, 2);
  CHECK_THROWS_AS(z.add(s->basis[0], BigRational(1, 2)), InvalidArgument);
}

TEST_CASE("coordinates round-trip", "[swiatkowski]") {
  const Graph g = builtin("complete", 4);
  const SwComplex c(g, true);
  const auto s = c.slice(2, 4);
  std::vector<std::pair<Index, BigRational>> coords{{0, 1}, {5, BigRational(-2, 3)}, {Index(s->size() - 1), 7}};
  const Chain x = from_coordinates(*s, Coeff::rational(), true, coords);
  CHECK(to_coordinates(*s, x) == coords);
}

TEST_CASE("chain JSON round-trip and diff rewriting", "[swiatkowski]") {
  const Graph g = builtin("theta", 3);
  const Chain z = star_representative(g, default_star(g, g.vertex("v")));
  CHECK(chain_from_json(g, chain_to_json(g, z)) == z);

  // diff(h1, h2) = diff(h1, h0) - diff(h2, h0)
  const nlohmann::json j = {{"degree", 1},
                            {"weight", 1},
                            {"coeff", "q"},
                            {"terms", {{{"states", {{"v", {{"diff", {"e3.0", "e2.0"}}}}}}, {"c", "1"}}}}};
  const Chain x = chain_from_json(g, j);
  CHECK(x.size() == 2);
  CHECK(boundary(g, x).size() == 2);

  CHECK_THROWS_AS(chain_from_json(g, {{"degree", 1}}), InvalidArgument);
  nlohmann::json bad = j;
  bad["terms"][0]["states"]["v"] = {{"half", "e1.0"}};
  CHECK_THROWS_AS(chain_from_json(g, bad), InvalidArgument);
  bad["terms"][0]["states"]["v"] = {{"diff", {"e1.1", "e2.0"}}};
  CHECK_THROWS_AS(chain_from_json(g, bad), InvalidArgument);
}

TEST_CASE("star and torus representatives are cycles", "[swiatkowski]") {
  for (const auto& [name, g] : oracle::suite()) {
    for (Index v = 0; v < g.num_vertices(); ++v) {
      if (g.valence(v) < 3) continue;
      for (bool reduced : {true, false}) {
        const Chain z = star_representative(g, default_star(g, v), Coeff::rational(), reduced);
        INFO(name << " at " << g.vertex_id(v));
        CHECK(z.degree() == 1);
        CHECK(z.weight() == 2);
        CHECK(is_cycle(g, z));
        CHECK(is_chain_decomposable(z));
      }
    }
  }
  const Graph d = load_graph(GCH_TEST_DATA "/dumbbell.json");
  const Chain t = torus_representative(
      d, {default_star(d, d.vertex("a")), default_star(d, d.vertex("b"))}, Coeff::rational(), true);
  CHECK(t.degree() == 2);
  CHECK(t.weight() == 4);
  CHECK(is_cycle(d, t));

  const Graph th = builtin("theta", 3);
  CHECK_THROWS_AS(torus_representative(th, {default_star(th, 0), default_star(th, 1)}), InvalidArgument);
  CHECK_THROWS_AS(default_star(builtin("cycle", 1), 0), InvalidArgument);
}

TEST_CASE("induced maps are chain maps", "[swiatkowski]") {
  std::vector<GraphMorphism> maps;
  for (const auto& [name, g] : oracle::suite()) {
    maps.push_back(smooth(subdivide(g, 2)).morphism);
    for (Index v = 0; v < g.num_vertices(); ++v) maps.push_back(explosion_morphism(g, v));
    for (Index e = 0; e < g.num_edges(); ++e) {
      if (g.is_self_loop(e)) maps.push_back(tail_morphism(g, e));
    }
  }
  for (const auto& f : maps) {
    for (bool reduced : {true, false}) {
      const SwComplex s(f.source(), reduced), t(f.target(), reduced);
      for (int k = 0; k <= 3; ++k) {
        for (int i = 1; i <= 3; ++i) {
          const IntMatrix lhs = multiply(t.boundary(i, k), induced_chain_map(f, i, k, reduced, &s, &t));
          const IntMatrix rhs = multiply(induced_chain_map(f, i - 1, k, reduced, &s, &t), s.boundary(i, k));
          CHECK(lhs.columns == rhs.columns);
        }
      }
    }
  }
}

TEST_CASE("identity induces the identity", "[swiatkowski]") {
  const Graph g = builtin("handcuff", 1);
  const GraphMorphism id = GraphMorphism::identity(g);
  const IntMatrix m = induced_chain_map(id, 1, 3, true);
  for (Index j = 0; j < m.cols(); ++j) CHECK(m.columns[j] == IntColumn{{j, 1}});
}

TEST_CASE("subdivision then smoothing induces an isomorphism on homology", "[swiatkowski]") {
  const Graph g = builtin("theta", 3);
  const GraphMorphism f = smooth(subdivide(g, 2)).morphism;
  const SwComplex s(f.source(), true), t(f.target(), true);
  for (int k = 1; k <= 3; ++k) {
    for (int i = 0; i <= 2; ++i) {
      const HomologyBasis src = homology_basis(s, i, k, Coeff::rational());
      const HomologyBasis dst = homology_basis(t, i, k, Coeff::rational());
      REQUIRE(src.dim() == dst.dim());
      // images of the representatives are linearly independent classes
      std::vector<std::vector<BigRational>> rows;
      for (const auto& z : src.representatives()) rows.push_back(dst.class_of(push_forward(f, z)));
      std::size_t r = 0;
      // Gaussian elimination on the class matrix
      for (std::size_t col = 0; col < dst.dim() && r < rows.size(); ++col) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][col] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t q = 0; q < rows.size(); ++q) {
          if (q == r || rows[q][col] == 0) continue;
          const BigRational m = rows[q][col] / rows[r][col];
          for (std::size_t c = 0; c < dst.dim(); ++c) rows[q][c] -= m * rows[r][c];
        }
        ++r;
      }
      INFO("i=" << i << " k=" << k);
      CHECK(r == dst.dim());
    }
  }
}
