#include <catch2/catch_amalgamated.hpp>

#include "gch/gch.hpp"

using namespace gch;

TEST_CASE("Betti CSV and JSON", "[io]") {
  const BettiTable t = betti_table(builtin("star", 3), 1, 1, 2, 3);
  CHECK(betti_csv(t) == "i,k,coeff,dim\n1,2,q,1\n1,3,q,3\n");
  const nlohmann::json j = betti_json(t);
  REQUIRE(j.size() == 2);
  CHECK(j[1] == nlohmann::json{{"i", 1}, {"k", 3}, {"coeff", "q"}, {"dim", 3}});
}

TEST_CASE("integral homology CSV", "[io]") {
  const std::vector<IntegralHomology> rows{integral_homology(builtin("complete", 5), 1, 2)};
  CHECK(integral_csv(rows) == "i,k,coeff,rank,divisors\n1,2,z,6,2\n");
  CHECK(integral_json(rows)[0]["divisors"] == nlohmann::json{"2"});
}

TEST_CASE("delta CSV and JSON spell minus infinity", "[io]") {
  const std::vector<DeltaResult> rows{delta(builtin("star", 3), 1), delta(builtin("star", 3), 2)};
  CHECK(delta_csv(rows) == "i,delta,witness\n1,3,c\n2,-inf,\n");
  const nlohmann::json j = delta_json(rows);
  CHECK(j[0]["delta"] == 3);
  CHECK(j[1]["delta"] == "-inf");
  CHECK_FALSE(j[1].contains("witness"));
  CHECK(optional_int_json(std::nullopt) == "-inf");
}

TEST_CASE("growth verdict JSON", "[io]") {
  const GrowthVerdict v = verify_growth(builtin("star", 3), 1, 8);
  const nlohmann::json j = verdict_json(v);
  CHECK(j["pass"] == true);
  CHECK(j["expected_degree"] == 2);
  CHECK(j["polynomial"] == "1/2k^2 - 1/2k");
  CHECK(j["coeffs"] == nlohmann::json{"0", "-1/2", "1/2"});
  CHECK(j["values"][8] == "28");
  CHECK(verdict_csv({v}) == "i,delta,expected_degree,k0,polynomial,pass\n1,3,2,0,1/2k^2 - 1/2k,pass\n");
}

TEST_CASE("generator and torus tables", "[io]") {
  const GeneratorTable t = generator_counts(SwComplex(builtin("cycle", 1), true), 1, 2, Coeff::mod(2));
  CHECK(generators_csv(t) ==
        "i,k,coeff,betti,generators\n0,0,fp:2,1,1\n0,1,fp:2,1,0\n0,2,fp:2,1,0\n1,0,fp:2,0,0\n1,1,fp:2,1,1\n1,2,fp:2,1,0\n");
  CHECK(generators_json(t).size() == 6);

  TorusGrowth g;
  g.weights = {2, 3};
  g.observed = {1, 2};
  g.expected = {1, 2};
  CHECK(torus_csv(g) == "k,observed,expected\n2,1,1\n3,2,2\n");
  CHECK(torus_json(g)["k"] == nlohmann::json{2, 3});
}

TEST_CASE("witness JSON carries a parseable cycle", "[io]") {
  const Graph g = builtin("star", 3);
  const auto w = find_paradoxical_witness(SwComplex(g, true), 1, 2, Coeff::rational());
  REQUIRE(w);
  const nlohmann::json j = witness_json(g, *w);
  CHECK(j["i"] == 1);
  CHECK(j["k"] == 2);
  CHECK(chain_from_json(g, j["cycle"]) == w->cycle);
}

TEST_CASE("rational parsing", "[io]") {
  CHECK(parse_rational("-3/6") == BigRational(-1, 2));
  CHECK(parse_rational("42") == 42);
  CHECK(rational_string(parse_rational("4/-6")) == "-2/3");
  CHECK_THROWS_AS(parse_rational("+-"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("x"), InvalidArgument);
  CHECK(join({"a", "b", "c"}, ";") == "a;b;c");
}
