#include <catch2/catch_amalgamated.hpp>

#include "gch/gch.hpp"
#include "oracles.hpp"

using namespace gch;

namespace {

std::vector<BigInt> sequence(int n, const std::function<BigInt(int)>& f) {
  std::vector<BigInt> out;
  for (int k = 0; k < n; ++k) out.push_back(f(k));
  return out;
}

}  // namespace

TEST_CASE("delta of standard graphs", "[invariants]") {
  auto values = [](const Graph& g, int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(delta(g, i).str());
    return out;
  };
  using V = std::vector<std::string>;
  CHECK(values(builtin("star", 3), 3) == V{"1", "3", "-inf"});
  CHECK(values(builtin("star", 5), 3) == V{"1", "5", "-inf"});
  CHECK(values(builtin("theta", 4), 4) == V{"1", "1", "4", "-inf"});
  CHECK(values(builtin("cycle", 1), 3) == V{"1", "1", "-inf"});
  CHECK(values(builtin("interval", 3), 2) == V{"1", "-inf"});
  CHECK(values(builtin("complete", 4), 6) == V{"1", "1", "2", "4", "6", "-inf"});
  // subdivision does not change Δ
  CHECK(values(subdivide(builtin("complete", 4), 3), 6) == V{"1", "1", "2", "4", "6", "-inf"});
}

TEST_CASE("delta witnesses and classes", "[invariants]") {
  const DeltaResult d = delta(builtin("theta", 3), 2);
  CHECK(d.witness == std::vector<std::string>{"v", "w"});
  CHECK(d.classes.size() == 3);
  const DeltaResult h = delta(builtin("handcuff", 1), 1);
  CHECK(h.value == 2);
  CHECK(h.witness == std::vector<std::string>{"v"});
  CHECK(delta(builtin("handcuff", 1), 2).value == 3);
  CHECK(delta(builtin("star", 3), 5).classes.empty());
}

TEST_CASE("growth verdict on exact polynomials", "[invariants]") {
  const auto quad = sequence(10, [](int k) { return BigInt(k * k - 3 * k + 7); });
  const GrowthVerdict v = growth_verdict(quad, 0, 2);
  CHECK(v.pass);
  REQUIRE(v.coeffs.size() == 3);
  CHECK(v.coeffs[0] == 7);
  CHECK(v.coeffs[1] == -3);
  CHECK(v.coeffs[2] == 1);
  CHECK(v.k0 == 0);
  CHECK(polynomial_string(v.coeffs) == "k^2 - 3k + 7");

  // wrong degree in either direction
  CHECK_FALSE(growth_verdict(quad, 0, 1).pass);
  CHECK_FALSE(growth_verdict(quad, 0, 3).pass);
  CHECK_FALSE(growth_verdict(quad, 0, std::nullopt).pass);
}

TEST_CASE("growth verdict onset and tail behaviour", "[invariants]") {
  // agrees with 2k - 1 only from k = 4 on
  const std::vector<BigInt> b{0, 5, 0, 9, 7, 9, 11, 13, 15, 17};
  const GrowthVerdict v = growth_verdict(b, 0, 1);
  CHECK(v.pass);
  CHECK(v.k0 == 4);
  CHECK(v.evaluate(20) == 39);

  // shifted start
  const GrowthVerdict s = growth_verdict(b, 3, 1);
  CHECK(s.k0 == 7);
  CHECK(s.k_max() == 12);

  // eventually zero
  const std::vector<BigInt> z{1, 4, 2, 0, 0, 0};
  const GrowthVerdict e = growth_verdict(z, 0, std::nullopt);
  CHECK(e.pass);
  CHECK(e.coeffs.empty());

  // a late bump is caught by the guard
  std::vector<BigInt> late = sequence(10, [](int k) { return BigInt(3 * k); });
  late[9] += 1;
  CHECK_FALSE(growth_verdict(late, 0, 1).pass);
  CHECK(growth_verdict(late, 0, 1, 1).pass == false);

  CHECK_THROWS_AS(growth_verdict(sequence(5, [](int) { return BigInt(1); }), 0, 1), InvalidArgument);
  CHECK_THROWS_AS(growth_verdict(z, 0, 1, 0), InvalidArgument);
}

TEST_CASE("polynomial formatting", "[invariants]") {
  CHECK(polynomial_string({}) == "0");
  CHECK(polynomial_string({BigRational(4)}) == "4");
  CHECK(polynomial_string({BigRational(-15), BigRational(6)}) == "6k - 15");
  CHECK(polynomial_string({BigRational(0), BigRational(-1, 2), BigRational(1, 2)}) == "1/2k^2 - 1/2k");
}

TEST_CASE("growth of Betti numbers for the suite", "[invariants]") {
  const auto k4 = verify_growth(builtin("complete", 4), 0, 5, 12);
  for (const auto& v : k4) {
    INFO("i=" << v.i << " " << v.report);
    CHECK(v.pass);
  }
  CHECK(k4[2].coeffs == std::vector<BigRational>{-15, 6});

  const GrowthVerdict s = verify_growth(builtin("star", 3), 1, 10);
  CHECK(s.pass);
  for (int k = 0; k <= 10; ++k) CHECK(s.evaluate(k) == BigRational(oracle::choose(k, 2)));

  const GrowthVerdict th = verify_growth(builtin("theta", 3), 2, 10, Coeff::mod(2));
  CHECK(th.pass);
  CHECK(th.expected_degree == 2);
}

TEST_CASE("growth rejects unusable input", "[invariants]") {
  CHECK_THROWS_AS(verify_growth(builtin("complete", 4), 4, 6), InvalidArgument);
  GraphBuilder b;
  b.add_vertex("a");
  b.add_vertex("b");
  b.add_vertex("lonely");
  b.add_edge("e", "a", "b");
  CHECK_THROWS_AS(verify_growth(std::move(b).build(), 0, 8), InvalidArgument);
}
