#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gch/gch.hpp"
#include "oracles.hpp"

using namespace gch;

namespace {

IntMatrix dense(const std::vector<std::vector<std::int64_t>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (Index c = 0; c < m.cols(); ++c) {
    for (Index r = 0; r < m.rows; ++r) {
      if (rows[r][c]) m.columns[c].push_back({r, rows[r][c]});
    }
  }
  return m;
}

// Fraction-free determinant.
BigInt bareiss_det(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace

TEST_CASE("Smith form of small matrices", "[smith]") {
  SmithForm s = smith_form(dense({{2, 0}, {0, 3}}));
  CHECK(s.rank == 2);
  CHECK(s.divisors == std::vector<BigInt>{1, 6});

  s = smith_form(dense({{2, 4}, {6, 8}}));
  CHECK(s.divisors == std::vector<BigInt>{2, 4});

  s = smith_form(dense({{0, 0}, {0, 0}}));
  CHECK(s.rank == 0);

  s = smith_form(dense({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}));
  CHECK(s.divisors == std::vector<BigInt>{1, 3});

  s = smith_form(IntMatrix(0, 4));
  CHECK(s.rank == 0);
}

TEST_CASE("Smith divisors multiply to the determinant and form a chain", "[smith]") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n));
    std::vector<std::vector<BigInt>> big(n, std::vector<BigInt>(n));
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        rows[r][c] = static_cast<std::int64_t>(rng() % 13) - 6;
        if (rng() % 3 == 0) rows[r][c] = 0;
        big[r][c] = rows[r][c];
      }
    }
    const IntMatrix m = dense(rows);
    const SmithForm s = smith_form(m);
    INFO("trial " << trial);
    CHECK(s.rank == rank(m, Coeff::rational()));
    for (std::size_t j = 1; j < s.divisors.size(); ++j) CHECK(s.divisors[j] % s.divisors[j - 1] == 0);
    const BigInt det = bareiss_det(big);
    if (det != 0) {
      BigInt prod = 1;
      for (const auto& d : s.divisors) prod *= d;
      CHECK(prod == boost::multiprecision::abs(det));
    } else {
      CHECK(s.rank < static_cast<std::size_t>(n));
    }
  }
}

TEST_CASE("two points on K5 form a nonorientable surface", "[smith]") {
  // χ = 10 - 30 + 15 = -5, so the surface has nonorientable genus 7.
  const Graph k5 = builtin("complete", 5);
  CHECK(oracle::euler_characteristic(k5, 2) == -5);
  for (bool reduced : {true, false}) {
    const SwComplex c(k5, reduced);
    const IntegralHomology h1 = integral_homology(c, 1, 2);
    CHECK(h1.free_rank == 6);
    CHECK(h1.torsion == std::vector<BigInt>{2});
    CHECK(integral_homology(c, 2, 2).free_rank == 0);
    CHECK(betti(c, 1, 2, Coeff::mod(2)) == 7);
    CHECK(betti(c, 2, 2, Coeff::mod(2)) == 1);
    CHECK(betti(c, 1, 2, Coeff::mod(3)) == 6);
  }
}

TEST_CASE("planar examples have torsion-free low homology", "[smith]") {
  const IntegralHomology th = integral_homology(builtin("theta", 3), 2, 4);
  CHECK(th.free_rank == 1);
  CHECK(th.torsion.empty());
  for (const auto& [name, g] : oracle::suite()) {
    for (int k = 0; k <= 4; ++k) {
      for (int i = 0; i <= 2; ++i) {
        INFO(name << " i=" << i << " k=" << k);
        const IntegralHomology h = integral_homology(g, i, k);
        CHECK(h.free_rank == betti(g, i, k));
        CHECK(h.torsion.empty());
      }
    }
  }
}
