#include <catch2/catch_amalgamated.hpp>

#include "gch/gch.hpp"
#include "oracles.hpp"

using namespace gch;

TEST_CASE("Euler characteristic agrees with the vertex-valence generating function", "[homology]") {
  for (const auto& [name, g] : oracle::suite()) {
    const BettiTable t = betti_table(g, 0, 6, 0, 7);
    for (int k = 0; k <= 7; ++k) {
      BigInt chi = 0;
      for (int i = 0; i <= 6; ++i) chi += (i % 2 ? -1 : 1) * BigInt(t.at(i, k));
      INFO(name << " k=" << k);
      CHECK(chi == oracle::euler_characteristic(g, k));
    }
  }
}

TEST_CASE("elementary configuration spaces", "[homology]") {
  // Points on an interval: contractible; on a circle: a circle.
  for (int k = 0; k <= 6; ++k) {
    CHECK(betti(builtin("interval", 1), 0, k) == 1);
    CHECK(betti(builtin("interval", 3), 1, k) == 0);
    CHECK(betti(builtin("cycle", 1), 0, k) == 1);
    CHECK(betti(builtin("cycle", 1), 1, k) == (k >= 1 ? 1u : 0u));
    CHECK(betti(builtin("cycle", 1), 2, k) == 0);
  }
  // Two components: b0 counts the ways to split k points.
  const Graph two = disjoint_union(builtin("interval", 1), builtin("interval", 1));
  for (int k = 0; k <= 5; ++k) CHECK(betti(two, 0, k) == static_cast<std::size_t>(k + 1));
  // Isolated vertex: holds at most one point.
  GraphBuilder b;
  b.add_vertex("p");
  const Graph point = std::move(b).build();
  CHECK(betti(point, 0, 0) == 1);
  CHECK(betti(point, 0, 1) == 1);
  CHECK(betti(point, 0, 2) == 0);
  // One point: the graph itself.
  for (const auto& [name, g] : oracle::suite()) {
    INFO(name);
    CHECK(betti(g, 1, 1) == g.num_edges() - g.num_vertices() + g.num_components());
  }
}

TEST_CASE("K4 Betti numbers", "[homology]") {
  const BettiTable t = betti_table(builtin("complete", 4), 0, 5, 0, 10, Coeff::rational(), true, 2);
  for (int k = 0; k <= 10; ++k) {
    INFO("k=" << k);
    CHECK(t.at(0, k) == 1);
    if (k > 1) CHECK(t.at(1, k) == 4);
    if (k > 2) CHECK(BigInt(t.at(2, k)) == 6 * k - 15);
    CHECK(BigInt(t.at(3, k)) == 4 * oracle::choose(k - 3, 3));
    CHECK(BigInt(t.at(4, k)) == oracle::choose(k - 3, 5));
    CHECK(t.at(5, k) == 0);
  }
}

TEST_CASE("theta graphs", "[homology]") {
  const BettiTable t = betti_table(builtin("theta", 3), 0, 2, 0, 8);
  const std::vector<std::size_t> b2{0, 0, 0, 0, 1, 3, 6, 10, 15};
  for (int k = 0; k <= 8; ++k) {
    if (k >= 2) CHECK(t.at(1, k) == 3);
    CHECK(t.at(2, k) == b2[k]);
  }
}

TEST_CASE("reduced and unreduced complexes agree", "[homology]") {
  for (const auto& [name, g] : oracle::suite()) {
    for (const Coeff& c : {Coeff::rational(), Coeff::mod(2), Coeff::mod(3)}) {
      const BettiTable r = betti_table(g, 0, 4, 0, 4, c, true);
      const BettiTable u = betti_table(g, 0, 4, 0, 4, c, false);
      INFO(name << " " << c.str());
      CHECK(r.entries == u.entries);
    }
  }
}

TEST_CASE("threaded tables match serial ones", "[homology]") {
  const Graph g = builtin("complete", 4);
  CHECK(betti_table(g, 0, 4, 0, 8, Coeff::rational(), true, 1).entries ==
        betti_table(g, 0, 4, 0, 8, Coeff::rational(), true, 3).entries);
}

TEST_CASE("integer coefficients are rejected by the field engine", "[homology]") {
  CHECK_THROWS_AS(betti(builtin("star", 3), 1, 2, Coeff::integer()), InvalidArgument);
  CHECK_THROWS_AS(betti_table(builtin("star", 3), 2, 1, 0, 2), InvalidArgument);
  CHECK_THROWS_AS(Coeff::parse("fp:4"), InvalidArgument);
  CHECK_THROWS_AS(Coeff::parse("r"), InvalidArgument);
  CHECK(Coeff::parse("fp:7").str() == "fp:7");
}

TEST_CASE("homology bases: classes of representatives and boundaries", "[homology]") {
  const SwComplex c(builtin("complete", 4), true);
  for (int k = 2; k <= 5; ++k) {
    for (int i = 1; i <= 2; ++i) {
      const HomologyBasis h = homology_basis(c, i, k, Coeff::rational());
      REQUIRE(h.dim() == betti(c, i, k, Coeff::rational()));
      for (std::size_t j = 0; j < h.dim(); ++j) {
        const auto cls = h.class_of(h.representatives()[j]);
        for (std::size_t t = 0; t < cls.size(); ++t) CHECK(cls[t] == (t == j ? 1 : 0));
      }
      // A boundary has zero class; adding one does not change a class.
      const auto up = c.slice(i + 1, k);
      if (up->size() == 0 || h.dim() == 0) continue;
      const Chain b = boundary(c.graph(), basis_chain(up->basis[up->size() / 2], Coeff::rational(), true));
      CHECK(h.is_zero_class(b));
      CHECK(h.class_of(h.representatives()[0] + b.scaled(BigRational(5, 3))) == h.class_of(h.representatives()[0]));
    }
  }
  const HomologyBasis h = homology_basis(c, 1, 3, Coeff::rational());
  const auto s = c.slice(1, 3);
  Chain not_cycle(Coeff::rational(), true, 1, 3);
  for (Index j = 0; j < s->size(); ++j) {
    if (!is_cycle(c.graph(), basis_chain(s->basis[j], Coeff::rational(), true))) {
      not_cycle.add(s->basis[j], 1);
      break;
    }
  }
  CHECK_THROWS_AS(h.class_of(not_cycle), InvalidArgument);
}

TEST_CASE("reversed elimination order yields the same homology", "[homology]") {
  const PrimeField f(5);
  const SwComplex c(builtin("theta", 3), true);
  for (int k = 0; k <= 6; ++k) {
    for (int i = 0; i <= 2; ++i) {
      const auto fwd = homology_data(f, c, i, k, false);
      const auto rev = homology_data(f, c, i, k, true);
      CHECK(fwd->representatives.size() == rev->representatives.size());
      CHECK(fwd->boundary_rank == rev->boundary_rank);
      // forward representatives are independent modulo boundaries in the reversed data
      std::size_t nonzero = 0;
      for (const auto& z : fwd->representatives) nonzero += !rev->modulo_boundaries(z).empty();
      CHECK(nonzero == fwd->representatives.size());
    }
  }
}

TEST_CASE("star classes are nonzero in H1 at weight 2", "[homology]") {
  const Graph g = builtin("star", 3);
  const HomologyBasis h = homology_basis(g, 1, 2);
  REQUIRE(h.dim() == 1);
  CHECK_FALSE(h.is_zero_class(star_representative(g, default_star(g, 0))));
}

TEST_CASE("checked rational arithmetic overflows loudly", "[homology]") {
  const RationalField f;
  const auto big = f.from_int(std::int64_t{1} << 40);
  CHECK_THROWS_AS(f.mul(big, big), ArithmeticOverflow);
  CHECK(f.to_rational(f.div(f.from_int(3), f.from_int(6))) == BigRational(1, 2));
  CHECK_THROWS_AS(f.inv(f.zero()), InvalidArgument);
  const PrimeField p(7);
  CHECK(p.mul(p.inv(3), 3) == 1);
  CHECK(p.from_rational(BigRational(1, 2)) == 4);
}
