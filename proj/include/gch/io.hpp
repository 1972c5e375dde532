#pragma once

// CSV and JSON renderings of computed tables and verdicts.

#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gch/homology.hpp"
#include "gch/invariants.hpp"
#include "gch/module_theory.hpp"
#include "gch/smith.hpp"

namespace gch {

inline nlohmann::json optional_int_json(const std::optional<int>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json("-inf");
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

inline std::string betti_csv(const BettiTable& t) {
  std::ostringstream os;
  os << "i,k,coeff,dim\n";
  for (const auto& [ik, d] : t.entries) os << ik.first << ',' << ik.second << ',' << t.coeff.str() << ',' << d << '\n';
  return os.str();
}

inline nlohmann::json betti_json(const BettiTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [ik, d] : t.entries) {
    rows.push_back({{"i", ik.first}, {"k", ik.second}, {"coeff", t.coeff.str()}, {"dim", d}});
  }
  return rows;
}

inline std::string divisors_string(const std::vector<BigInt>& d) {
  std::vector<std::string> parts;
  for (const auto& x : d) parts.push_back(x.str());
  return join(parts, ";");
}

inline std::string integral_csv(const std::vector<IntegralHomology>& rows) {
  std::ostringstream os;
  os << "i,k,coeff,rank,divisors\n";
  for (const auto& h : rows) {
    os << h.degree << ',' << h.weight << ",z," << h.free_rank << ',' << divisors_string(h.torsion) << '\n';
  }
  return os.str();
}

inline nlohmann::json integral_json(const std::vector<IntegralHomology>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& h : rows) {
    std::vector<std::string> divs;
    for (const auto& x : h.torsion) divs.push_back(x.str());
    out.push_back({{"i", h.degree}, {"k", h.weight}, {"coeff", "z"}, {"rank", h.free_rank}, {"divisors", divs}});
  }
  return out;
}

inline std::string delta_csv(const std::vector<DeltaResult>& rows) {
  std::ostringstream os;
  os << "i,delta,witness\n";
  for (const auto& d : rows) os << d.i << ',' << d.str() << ',' << join(d.witness, ";") << '\n';
  return os.str();
}

inline nlohmann::json delta_json(const std::vector<DeltaResult>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& d : rows) {
    nlohmann::json entry = {{"i", d.i}, {"delta", optional_int_json(d.value)}};
    if (d.value) {
      entry["witness"] = d.witness;
      entry["classes"] = d.classes;
    }
    out.push_back(entry);
  }
  return out;
}

inline nlohmann::json verdict_json(const GrowthVerdict& v) {
  std::vector<std::string> coeffs, values;
  for (const auto& c : v.coeffs) coeffs.push_back(rational_string(c));
  for (const auto& b : v.values) values.push_back(b.str());
  return {{"i", v.i},
          {"delta", optional_int_json(v.delta)},
          {"expected_degree", optional_int_json(v.expected_degree)},
          {"k0", v.k0 ? nlohmann::json(*v.k0) : nlohmann::json(nullptr)},
          {"coeffs", coeffs},
          {"polynomial", polynomial_string(v.coeffs)},
          {"values", values},
          {"pass", v.pass},
          {"report", v.report}};
}

inline std::string verdict_csv(const std::vector<GrowthVerdict>& rows) {
  std::ostringstream os;
  os << "i,delta,expected_degree,k0,polynomial,pass\n";
  for (const auto& v : rows) {
    os << v.i << ',' << (v.delta ? std::to_string(*v.delta) : "-inf") << ','
       << (v.expected_degree ? std::to_string(*v.expected_degree) : "-inf") << ','
       << (v.k0 ? std::to_string(*v.k0) : "") << ',' << polynomial_string(v.coeffs) << ','
       << (v.pass ? "pass" : "fail") << '\n';
  }
  return os.str();
}

inline std::string generators_csv(const GeneratorTable& t) {
  std::ostringstream os;
  os << "i,k,coeff,betti,generators\n";
  for (const auto& [ik, n] : t.generators) {
    os << ik.first << ',' << ik.second << ',' << t.coeff.str() << ',' << t.betti.at(ik) << ',' << n << '\n';
  }
  return os.str();
}

inline nlohmann::json generators_json(const GeneratorTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [ik, n] : t.generators) {
    rows.push_back({{"i", ik.first}, {"k", ik.second}, {"coeff", t.coeff.str()}, {"betti", t.betti.at(ik)},
                    {"generators", n}});
  }
  return rows;
}

inline nlohmann::json witness_json(const Graph& g, const ParadoxWitness& w) {
  return {{"i", w.degree},
          {"k", w.weight},
          {"chain_decomposable", w.chain_decomposable},
          {"class_indecomposable", w.class_indecomposable},
          {"reverified", w.reverified},
          {"cycle", chain_to_json(g, w.cycle)}};
}

inline nlohmann::json torus_json(const TorusGrowth& t) {
  return {{"degree", t.degree}, {"k0", t.k0},         {"delta_w", t.delta_w},   {"rigid", t.rigid},
          {"k", t.weights},     {"observed", t.observed}, {"expected", t.expected}, {"pass", t.pass}};
}

inline std::string torus_csv(const TorusGrowth& t) {
  std::ostringstream os;
  os << "k,observed,expected\n";
  for (std::size_t j = 0; j < t.weights.size(); ++j) {
    os << t.weights[j] << ',' << t.observed[j] << ',' << t.expected[j] << '\n';
  }
  return os.str();
}

}  // namespace gch
