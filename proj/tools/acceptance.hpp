#pragma once

// Reproduction checks shared by the `repro` subcommand and the acceptance
// test binary.  Every comparison is exact.

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gch/gch.hpp"

namespace gch::acceptance {

struct Criterion {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
};

inline BigInt choose(long n, long r) {
  if (r < 0 || n < r || n < 0) return 0;
  BigInt acc = 1;
  for (long j = 1; j <= r; ++j) acc = acc * (n - r + j) / j;
  return acc;
}

/// C(x, r) as the polynomial x(x-1)...(x-r+1)/r!, valid for any integer x.
inline BigRational choose_poly(long x, long r) {
  BigRational acc = 1;
  for (long j = 0; j < r; ++j) acc = acc * (x - j) / (j + 1);
  return acc;
}

struct SuiteGraph {
  std::string name;
  Graph graph;
};

inline std::vector<SuiteGraph> suite() {
  return {{"interval", builtin("interval", 1)}, {"cycle", builtin("cycle", 1)},
          {"star3", builtin("star", 3)},        {"star4", builtin("star", 4)},
          {"theta3", builtin("theta", 3)},      {"lollipop", builtin("lollipop", 1)},
          {"figure8", builtin("figure8", 1)},   {"handcuff", builtin("handcuff", 1)},
          {"K4", builtin("complete", 4)}};
}

// 1 -------------------------------------------------------------------------
inline Criterion k4_betti_table() {
  Criterion c{1, "K4 Betti table over Q, k = 0..9", true, ""};
  const BettiTable t = betti_table(builtin("complete", 4), 0, 6, 0, 9);
  std::ostringstream bad;
  auto expect = [&](int i, int k, const BigInt& want) {
    if (BigInt(t.at(i, k)) != want) {
      c.pass = false;
      bad << " b" << i << "(" << k << ")=" << t.at(i, k) << "!=" << want;
    }
  };
  for (int k = 0; k <= 9; ++k) {
    expect(0, k, 1);
    if (k > 1) expect(1, k, 4);
    if (k > 2) expect(2, k, 6 * k - 15);
    expect(3, k, 4 * choose(k - 3, 3));
    expect(4, k, choose(k - 3, 5));
    expect(5, k, 0);
    expect(6, k, 0);
  }
  c.detail = c.pass ? "b0..b6 match the closed forms in their stated ranges" : "mismatch:" + bad.str();
  return c;
}

// 2 -------------------------------------------------------------------------
inline Criterion k4_delta() {
  Criterion c{2, "K4 delta invariants 1,1,2,4,6,-inf", true, ""};
  const Graph k4 = builtin("complete", 4);
  const std::vector<std::optional<int>> want{1, 1, 2, 4, 6, std::nullopt, std::nullopt};
  std::ostringstream os;
  for (int i = 0; i < static_cast<int>(want.size()); ++i) {
    const DeltaResult d = delta(k4, i);
    os << (i ? "," : "") << d.str();
    if (d.value != want[i]) c.pass = false;
    if (d.value) {
      std::vector<Index> w;
      for (const auto& id : d.witness) w.push_back(k4.vertex(id));
      const bool ok = static_cast<int>(w.size()) == i &&
                      static_cast<int>(edge_components(k4, w).size()) == *d.value &&
                      static_cast<int>(d.classes.size()) == *d.value;
      if (!ok) c.pass = false;
      os << "[W=" << join(d.witness, ";") << "]";
    }
  }
  c.detail = "delta^0..6 = " + os.str();
  return c;
}

// 3 -------------------------------------------------------------------------
inline BigInt theta_b2_formula(int n, int k) {
  // C(n,2) - 1 + sum_{j=0}^{2} (1-n)^j C(2,j) C(k-j+n-1, n-1)
  BigRational acc = choose_poly(n, 2) - 1;
  BigInt power = 1;
  for (int j = 0; j <= 2; ++j) {
    acc += BigRational(power) * choose_poly(2, j) * BigRational(choose(k - j + n - 1, n - 1));
    power *= (1 - n);
  }
  return boost::multiprecision::numerator(acc);
}

inline Criterion theta3() {
  Criterion c{3, "Theta3 Betti numbers and i=2 growth", true, ""};
  const Graph th = builtin("theta", 3);
  const BettiTable t = betti_table(th, 0, 2, 0, 10);
  std::ostringstream os;
  for (int k = 2; k <= 8; ++k) {
    if (t.at(1, k) != 3) {
      c.pass = false;
      os << " b1(" << k << ")=" << t.at(1, k);
    }
  }
  for (int k = 4; k <= 8; ++k) {
    if (BigInt(t.at(2, k)) != theta_b2_formula(3, k)) {
      c.pass = false;
      os << " b2(" << k << ")=" << t.at(2, k) << "!=" << theta_b2_formula(3, k);
    }
  }
  int onset = 8;
  while (onset > 0 && BigInt(t.at(2, onset - 1)) == theta_b2_formula(3, onset - 1)) --onset;
  const DeltaResult d2 = delta(th, 2);
  std::vector<BigInt> seq;
  for (int k = 0; k <= 10; ++k) seq.push_back(t.at(2, k));
  const GrowthVerdict v = growth_verdict(seq, 0, d2.value ? std::optional<int>(*d2.value - 1) : std::nullopt);
  if (!v.pass) c.pass = false;
  c.detail = "b1=3 on k=2..8; b2 formula holds from k=" + std::to_string(onset) + " (checked to 8); delta^2=" +
             d2.str() + ", i=2 growth " + (v.pass ? "passes" : "fails") + " with " + v.report + os.str();
  return c;
}

// 4 -------------------------------------------------------------------------
inline Criterion oracle_equivalence() {
  Criterion c{4, "Swiatkowski vs Abrams oracle, i<=4, k<=4, Q and F2", true, ""};
  std::size_t checks = 0;
  std::ostringstream bad;
  for (const auto& [name, g] : suite()) {
    const SwComplex red(g, true), unred(g, false);
    for (int k = 0; k <= 4; ++k) {
      const AbramsComplex a(g, k);
      for (const Coeff& coeff : {Coeff::rational(), Coeff::mod(2)}) {
        for (int i = 0; i <= 4; ++i) {
          const std::size_t want = abrams_betti(a, i, coeff);
          const std::size_t r = betti(red, i, k, coeff), u = betti(unred, i, k, coeff);
          ++checks;
          if (r != want || u != want) {
            c.pass = false;
            bad << " " << name << "(" << i << "," << k << "," << coeff.str() << ")";
          }
        }
      }
    }
  }
  c.detail = std::to_string(checks) + " bidegree/field checks" + (c.pass ? ", all agree" : ", mismatches:" + bad.str());
  return c;
}

// 5 -------------------------------------------------------------------------
inline bool same_polynomial(const GrowthVerdict& v, const std::function<BigRational(long)>& closed, int degree) {
  for (long k = 0; k <= degree + 2; ++k) {
    if (v.evaluate(static_cast<int>(k)) != closed(k)) return false;
  }
  return true;
}

inline Criterion growth_theorem() {
  Criterion c{5, "Growth verdicts (K4 k<=12, Theta3 k<=10, star3/star4 k<=10, cycle k<=8)", true, ""};
  struct Job {
    std::string name;
    Graph g;
    int k_max;
  };
  const std::vector<Job> jobs{{"K4", builtin("complete", 4), 12},
                              {"theta3", builtin("theta", 3), 10},
                              {"star3", builtin("star", 3), 10},
                              {"star4", builtin("star", 4), 10},
                              {"cycle", builtin("cycle", 1), 8}};
  std::ostringstream os;
  for (const auto& job : jobs) {
    const int top = static_cast<int>(smooth(job.g).graph.essential_vertices().size());
    int n2 = 0;
    for (Index v = 0; v < job.g.num_vertices(); ++v) n2 += job.g.valence(v) >= 2;
    const auto verdicts = verify_growth(job.g, 0, std::max(top, n2) + 1, job.k_max);
    os << job.name << ":";
    for (const auto& v : verdicts) {
      if (!v.pass) c.pass = false;
      os << " i" << v.i << (v.pass ? "=" : "!=") << polynomial_string(v.coeffs);
    }
    os << "; ";
    if (job.name == "K4") {
      const bool fits = same_polynomial(verdicts[0], [](long) { return BigRational(1); }, 0) &&
                        same_polynomial(verdicts[1], [](long) { return BigRational(4); }, 0) &&
                        same_polynomial(verdicts[2], [](long k) { return BigRational(6 * k - 15); }, 1) &&
                        same_polynomial(verdicts[3], [](long k) { return 4 * choose_poly(k - 3, 3); }, 3) &&
                        same_polynomial(verdicts[4], [](long k) { return choose_poly(k - 3, 5); }, 5) &&
                        verdicts[5].coeffs.empty();
      if (!fits) c.pass = false;
      os << (fits ? "K4 fits equal the closed forms; " : "K4 fits differ from the closed forms; ");
    }
  }
  c.detail = os.str();
  return c;
}

// 6 -------------------------------------------------------------------------
inline Criterion finite_generation() {
  Criterion c{6, "Generator counts vanish on the top third of the range", true, ""};
  std::ostringstream os;
  for (const auto& [name, g] : suite()) {
    const int k_max = name == "K4" ? 12 : 10;
    const GeneratorTable t = generator_counts(SwComplex(g, true), 4, k_max, Coeff::rational());
    const int n = k_max + 1;
    const int first_top = k_max - n / 3 + 1;
    int max_gen_weight = 0;
    for (int i = 0; i <= 4; ++i) {
      for (int k = 0; k <= k_max; ++k) {
        if (t.at(i, k) > 0) max_gen_weight = std::max(max_gen_weight, k);
        if (k >= first_top && t.at(i, k) != 0) {
          c.pass = false;
          os << " " << name << " g(" << i << "," << k << ")=" << t.at(i, k);
        }
      }
    }
    os << " " << name << "[top " << first_top << ".." << k_max << ", last generator weight " << max_gen_weight << "]";
    if (name == "star3") {
      for (int k = 0; k <= k_max; ++k) {
        if (t.at(1, k) != (k == 2 ? 1u : 0u)) {
          c.pass = false;
          os << " star3 g(1," << k << ")=" << t.at(1, k);
        }
      }
    }
  }
  c.detail = os.str();
  return c;
}

// 7 -------------------------------------------------------------------------
inline Criterion formality_dichotomy() {
  Criterion c{7, "Paradoxical witnesses: Theta3 (2,4), star3 (1,2), none for small graphs", true, ""};
  std::ostringstream os;
  auto expect_witness = [&](const std::string& name, const Graph& g, int i_max, int k_max, int wi, int wk) {
    const auto w = find_paradoxical_witness(SwComplex(g, true), i_max, k_max, Coeff::rational());
    const bool ok = w && w->degree == wi && w->weight == wk && w->chain_decomposable && w->class_indecomposable &&
                    w->reverified;
    if (!ok) c.pass = false;
    os << name << ": " << (w ? "(" + std::to_string(w->degree) + "," + std::to_string(w->weight) + ")" : "none")
       << (w && w->reverified ? " reverified" : "") << "; ";
  };
  expect_witness("theta3", builtin("theta", 3), 2, 4, 2, 4);
  expect_witness("star3", builtin("star", 3), 2, 6, 1, 2);
  for (const char* name : {"interval", "cycle", "lollipop", "figure8", "handcuff"}) {
    const auto w = find_paradoxical_witness(SwComplex(builtin(name, 1), true), 2, 6, Coeff::rational());
    if (w) c.pass = false;
    os << name << ": " << (w ? "unexpected witness" : "none") << "; ";
  }
  c.detail = os.str();
  return c;
}

// 8 -------------------------------------------------------------------------
inline Criterion k4_top_degree() {
  Criterion c{8, "K4 top degree: H4 = 0 for k < 8, dim 1 at k = 8", true, ""};
  const BettiTable t = betti_table(builtin("complete", 4), 4, 4, 0, 8);
  std::ostringstream os;
  for (int k = 0; k <= 8; ++k) {
    const std::size_t want = k == 8 ? 1 : 0;
    if (t.at(4, k) != want) c.pass = false;
    os << t.at(4, k) << (k < 8 ? "," : "");
  }
  c.detail = "b4(k=0..8) = " + os.str();
  return c;
}

// 9 -------------------------------------------------------------------------
inline Criterion structural_properties() {
  Criterion c{9, "Structural properties on the suite, i<=4, k<=5", true, ""};
  std::size_t checks = 0;
  std::ostringstream bad;
  auto fail = [&](const std::string& what) {
    c.pass = false;
    bad << " " << what;
  };
  std::mt19937_64 rng(20240607);
  for (const auto& [name, g] : suite()) {
    const SwComplex red(g, true), unred(g, false);
    for (int k = 0; k <= 5; ++k) {
      for (int i = 0; i <= 4; ++i) {
        const std::string at = name + "(" + std::to_string(i) + "," + std::to_string(k) + ")";
        for (const SwComplex* cx : {&red, &unred}) {
          ++checks;
          if (i >= 1 && !multiply(cx->boundary(i, k), cx->boundary(i + 1, k)).is_zero()) fail("d^2 " + at);
          for (Index e = 0; e < g.num_edges(); ++e) {
            ++checks;
            const IntMatrix lhs = multiply(cx->boundary(i + 1, k + 1), cx->stabilization(e, i + 1, k));
            const IntMatrix rhs = multiply(cx->stabilization(e, i, k), cx->boundary(i + 1, k));
            if (lhs.columns != rhs.columns) fail("sigma chain map " + at);
            for (Index f = e + 1; f < g.num_edges(); ++f) {
              ++checks;
              const IntMatrix ef = multiply(cx->stabilization(e, i, k + 1), cx->stabilization(f, i, k));
              const IntMatrix fe = multiply(cx->stabilization(f, i, k + 1), cx->stabilization(e, i, k));
              if (ef.columns != fe.columns) fail("sigma commute " + at);
            }
          }
        }
        ++checks;
        const std::size_t bq = betti(red, i, k, Coeff::rational());
        if (bq != betti(unred, i, k, Coeff::rational())) fail("reduced/unreduced " + at);
        ++checks;
        if (integral_homology(red, i, k).free_rank != bq) fail("Z free rank " + at);
        for (Index v = 0; v < g.num_vertices(); ++v) {
          if (g.valence(v) == 0) continue;
          ++checks;
          const ExplosionMaps m = explosion_maps(g, v, g.half_edges_at(v)[0], i, k);
          const std::size_t n = red.dim(i, k);
          const bool ok = multiply(m.projection, m.inclusion).is_zero() &&
                          rank(m.inclusion, Coeff::rational()) == m.inclusion.cols() &&
                          rank(m.projection, Coeff::rational()) == m.projection.rows &&
                          m.inclusion.cols() + m.projection.rows == n;
          if (!ok) fail("explosion " + at + "@" + g.vertex_id(v));
        }
        for (Index e = 0; e < g.num_edges(); ++e) {
          if (!g.is_self_loop(e)) continue;
          ++checks;
          const LoopSplitting s = loop_splitting(g, e, i, k);
          const IntMatrix both = hconcat({&s.from_exploded, &s.from_tail});
          const bool ok = rank(s.from_exploded, Coeff::rational()) == s.from_exploded.cols() &&
                          rank(s.from_tail, Coeff::rational()) == s.from_tail.cols() &&
                          both.cols() == s.dim && rank(both, Coeff::rational()) == s.dim;
          if (!ok) fail("loop splitting " + at + "@" + g.edge_id(e));
        }
      }
    }
    // Randomized linearity of ∂ and σ_e on chains.
    for (int trial = 0; trial < 20; ++trial) {
      const int i = static_cast<int>(rng() % 3), k = 1 + static_cast<int>(rng() % 4);
      auto s = red.slice(i, k);
      if (s->size() == 0) continue;
      auto random_chain = [&] {
        Chain x(Coeff::rational(), true, i, k);
        for (int t = 0; t < 4; ++t) {
          x.add(s->basis[rng() % s->size()], BigRational(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 3)));
        }
        return x;
      };
      const Chain x = random_chain(), y = random_chain();
      const BigRational a(static_cast<long>(rng() % 7) - 3, 2);
      ++checks;
      if (boundary(g, x.scaled(a) + y) != boundary(g, x).scaled(a) + boundary(g, y)) fail("linearity of d on " + name);
      if (g.num_edges() > 0) {
        const Index e = static_cast<Index>(rng() % g.num_edges());
        ++checks;
        if (boundary(g, stabilize(g, x, e)) != stabilize(g, boundary(g, x), e)) fail("sigma/d on chains " + name);
      }
    }
  }
  c.detail = std::to_string(checks) + " checks" + (c.pass ? ", all hold" : ", failures:" + bad.str());
  return c;
}

inline std::vector<std::function<Criterion()>> all_criteria() {
  return {k4_betti_table, k4_delta,        theta3,         oracle_equivalence,   growth_theorem,
          finite_generation, formality_dichotomy, k4_top_degree, structural_properties};
}

}  // namespace gch::acceptance
