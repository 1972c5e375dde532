#include <catch2/catch_amalgamated.hpp>

#include "gch/gch.hpp"
#include "oracles.hpp"

using namespace gch;

namespace {

RationalMatrix product(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  RationalMatrix out(a.size(), std::vector<BigRational>(cols));
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      for (std::size_t m = 0; m < b.size(); ++m) out[r][c] += a[r][m] * b[m][c];
    }
  }
  return out;
}

StarSpec star(const Graph& g, const std::string& v, const std::array<std::string, 3>& h) {
  return {g.vertex(v), {g.half_edge(h[0]), g.half_edge(h[1]), g.half_edge(h[2])}};
}

}  // namespace

TEST_CASE("generator counts of a star", "[module]") {
  const GeneratorTable t = generator_counts(SwComplex(builtin("star", 3), true), 2, 8, Coeff::rational());
  for (int k = 0; k <= 8; ++k) {
    CHECK(t.at(0, k) == (k == 0 ? 1u : 0u));
    CHECK(t.at(1, k) == (k == 2 ? 1u : 0u));
    CHECK(t.at(2, k) == 0);
    CHECK(BigInt(t.betti.at({1, k})) == oracle::choose(k, 2));
  }
}

TEST_CASE("generator counts never exceed Betti numbers", "[module]") {
  for (const auto& [name, g] : oracle::suite()) {
    const GeneratorTable t = generator_counts(SwComplex(g, true), 3, 6, Coeff::mod(3));
    for (const auto& [ik, n] : t.generators) {
      INFO(name << " i=" << ik.first << " k=" << ik.second);
      CHECK(n <= t.betti.at(ik));
      CHECK(t.betti.at(ik) == betti(g, ik.first, ik.second, Coeff::mod(3)));
    }
  }
}

TEST_CASE("stabilization on homology", "[module]") {
  const SwComplex cyc(builtin("cycle", 1), true);
  for (int k = 1; k <= 5; ++k) {
    const RationalMatrix m = stabilization_on_homology(cyc, 0, 1, k, Coeff::rational());
    REQUIRE(m.size() == 1);
    CHECK(m[0][0] != 0);
  }
  const SwComplex th(builtin("theta", 3), true);
  for (int k = 1; k <= 4; ++k) {
    for (Index e = 0; e < 3; ++e) {
      for (Index f = 0; f < e; ++f) {
        const auto ef = product(stabilization_on_homology(th, e, 1, k + 1, Coeff::rational()),
                                stabilization_on_homology(th, f, 1, k, Coeff::rational()));
        const auto fe = product(stabilization_on_homology(th, f, 1, k + 1, Coeff::rational()),
                                stabilization_on_homology(th, e, 1, k, Coeff::rational()));
        CHECK(ef == fe);
      }
    }
  }
  CHECK_THROWS_AS(stabilization_on_homology(th, 9, 1, 1, Coeff::rational()), InvalidArgument);
}

TEST_CASE("class decomposability", "[module]") {
  const Graph g = builtin("star", 3);
  const SwComplex c(g, true);
  const Chain z = star_representative(g, default_star(g, 0));
  CHECK(is_chain_decomposable(z));
  CHECK_FALSE(is_class_decomposable(c, z, Coeff::rational()));
  CHECK(is_class_decomposable(c, stabilize(g, z, 1), Coeff::rational()));
  CHECK(is_class_decomposable(c, Chain(Coeff::rational(), true, 1, 2), Coeff::rational()));

  const auto s = c.slice(1, 2);
  Chain not_cycle(Coeff::rational(), true, 1, 2);
  not_cycle.add(s->basis[0], 1);
  CHECK_THROWS_AS(is_class_decomposable(c, not_cycle, Coeff::rational()), InvalidArgument);
}

TEST_CASE("paradoxical witnesses", "[module]") {
  const auto star3 = find_paradoxical_witness(SwComplex(builtin("star", 3), true), 2, 4, Coeff::rational());
  REQUIRE(star3);
  CHECK(star3->degree == 1);
  CHECK(star3->weight == 2);
  CHECK(star3->reverified);

  const Graph th = builtin("theta", 3);
  const auto w = find_paradoxical_witness(SwComplex(th, true), 2, 4, Coeff::rational(), 2, 0);
  REQUIRE(w);
  CHECK(w->degree == 2);
  CHECK(w->weight == 4);
  CHECK(is_cycle(th, w->cycle));
  CHECK(is_chain_decomposable(w->cycle));
  CHECK_FALSE(is_class_decomposable(SwComplex(th, true), w->cycle, Coeff::rational()));

  CHECK_FALSE(find_paradoxical_witness(SwComplex(th, true), 2, 3, Coeff::rational(), 2, 0));
  for (const char* name : {"interval", "cycle", "lollipop", "figure8", "handcuff"}) {
    INFO(name);
    CHECK_FALSE(find_paradoxical_witness(SwComplex(builtin(name, 1), true), 2, 6, Coeff::mod(2)));
  }
}

TEST_CASE("well separating sets", "[module]") {
  const Graph k4 = builtin("complete", 4);
  CHECK_FALSE(well_separating(k4, {0}));
  CHECK(well_separating(k4, {0, 1, 2, 3}));
  const Graph th = builtin("theta", 3);
  CHECK_FALSE(well_separating(th, {th.vertex("v")}));
  CHECK(well_separating(th, {0, 1}));
  const Graph plus = load_graph(GCH_TEST_DATA "/theta3plus.json");
  CHECK(well_separating(plus, {plus.vertex("v")}));
  CHECK_THROWS_AS(well_separating(plus, {plus.vertex("x")}), InvalidArgument);
  CHECK(well_separating(plus, {}));
}

TEST_CASE("rigidity and torus growth", "[module]") {
  const Graph plus = load_graph(GCH_TEST_DATA "/theta3plus.json");
  const SwComplex cp(plus, true);
  const StarSpec loose = star(plus, "v", {"e1.0", "e2.0", "e3.0"});
  const StarSpec tight = star(plus, "v", {"e1.0", "e2.0", "t.0"});
  CHECK_FALSE(torus_rigidity_check(plus, {loose}));
  CHECK(torus_rigidity_check(plus, {tight}));
  CHECK_THROWS_AS(torus_submodule_growth(cp, {loose}, 5, Coeff::rational()), InvalidArgument);

  const TorusGrowth bad = torus_submodule_growth(cp, {loose}, 6, Coeff::rational(), false);
  CHECK_FALSE(bad.pass);
  CHECK(bad.delta_w == 2);
  CHECK(bad.observed.back() < bad.expected.back());

  const TorusGrowth good = torus_submodule_growth(cp, {tight}, 6, Coeff::rational());
  CHECK(good.pass);
  CHECK(good.k0 == 2);
  CHECK(good.expected == std::vector<std::size_t>{1, 2, 3, 4, 5});

  const Graph d = load_graph(GCH_TEST_DATA "/dumbbell.json");
  const TorusGrowth t = torus_submodule_growth(
      SwComplex(d, true), {star(d, "a", {"x1.0", "x2.0", "x3.0"}), star(d, "b", {"y1.0", "y2.0", "y3.0"})}, 7,
      Coeff::mod(3));
  CHECK(t.rigid);
  CHECK(t.degree == 2);
  CHECK(t.delta_w == 5);
  CHECK(t.pass);
  CHECK(t.observed == std::vector<std::size_t>{1, 5, 15, 35});

  const Graph th = builtin("theta", 3);
  CHECK_THROWS_AS(torus_rigidity_check(th, {default_star(th, 0)}), InvalidArgument);
  CHECK_THROWS_AS(torus_submodule_growth(SwComplex(th, true), {}, 4, Coeff::rational()), InvalidArgument);
}
