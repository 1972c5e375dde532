#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "gch/gch.hpp"

using namespace gch;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Range {
  int lo = 0;
  int hi = 0;
};

Range parse_range(const std::string& text, const std::string& what) {
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw InvalidArgument("bad " + what + " range \"" + text + "\" (expected a..b or a)");
    }
    return std::stoi(s);
  };
  const auto dots = text.find("..");
  Range r;
  if (dots == std::string::npos) {
    r.lo = r.hi = number(text);
  } else {
    r.lo = number(text.substr(0, dots));
    r.hi = number(text.substr(dots + 2));
  }
  if (r.hi < r.lo) throw InvalidArgument("empty " + what + " range \"" + text + "\"");
  return r;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

Coeff field_coeff(const std::string& text) {
  const Coeff c = Coeff::parse(text);
  if (!c.is_field()) throw InvalidArgument("this command needs a field (q or fp:<p>); use ihomology for z");
  return c;
}

struct Options {
  std::string graph;
  std::string i = "0..2";
  std::string k = "0..6";
  std::string coeff = "q";
  bool json = false;
  std::string out;
  int threads = 1;
  bool unreduced = false;
  int guard = 3;
  std::size_t cap = 0;
  int k_max = -1;
  std::string chain;
  std::string vertex;
  std::string halves;
  std::vector<std::string> stars;
  bool allow_nonrigid = false;
  std::string op;
  std::string coeffs = "q,fp:2";
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InvalidArgument("cannot write \"" + path + "\"");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void json(const nlohmann::json& j) { stream() << j.dump(2) << '\n'; }

 private:
  std::ofstream file_;
};

/// Number of vertices of valence >= 2 in the smoothing; Δ^i is -∞ beyond it.
int valence2_count(const Graph& g) {
  const Graph s = smooth(g).graph;
  int n = 0;
  for (Index v = 0; v < s.num_vertices(); ++v) n += s.valence(v) >= 2;
  return n;
}

StarSpec parse_star(const Graph& g, const std::string& text) {
  const auto colon = text.find(':');
  const Index v = g.vertex(text.substr(0, colon));
  if (colon == std::string::npos) return default_star(g, v);
  const auto hs = split(text.substr(colon + 1), ',');
  if (hs.size() != 3) throw InvalidArgument("a star needs three half-edges: \"" + text + "\"");
  return {v, {g.half_edge(hs[0]), g.half_edge(hs[1]), g.half_edge(hs[2])}};
}

std::string graph_csv(const Graph& g) {
  std::ostringstream os;
  os << "edge,end0,end1\n";
  for (Index e = 0; e < g.num_edges(); ++e) {
    os << g.edge_id(e) << ',' << g.vertex_id(g.ends(e)[0]) << ',' << g.vertex_id(g.ends(e)[1]) << '\n';
  }
  for (Index v = 0; v < g.num_vertices(); ++v) {
    if (g.valence(v) == 0) os << ',' << g.vertex_id(v) << ",\n";
  }
  return os.str();
}

Graph apply_op(const Graph& g, const std::string& op) {
  const auto colon = op.find(':');
  const std::string name = op.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : op.substr(colon + 1);
  if (name == "smooth") return smooth(g).graph;
  if (name == "explode") return explode(g, g.vertex(arg));
  if (name == "explode-all") {
    std::vector<Index> w;
    for (const auto& id : split(arg, ',')) w.push_back(g.vertex(id));
    return explode_all(g, w);
  }
  if (name == "loop-to-tail") return loop_to_tail(g, g.edge(arg));
  if (name == "subdivide") return subdivide(g, parse_range(arg, "segment").lo);
  if (name == "union") return disjoint_union(g, load_graph(arg));
  throw InvalidArgument("unknown transform \"" + op +
                        "\" (smooth, explode:v, explode-all:v,w, loop-to-tail:e, subdivide:n, union:source)");
}

int run_betti(const Options& o) {
  const Graph g = load_graph(o.graph);
  const Range i = parse_range(o.i, "i"), k = parse_range(o.k, "k");
  const BettiTable t = betti_table(g, i.lo, i.hi, k.lo, k.hi, field_coeff(o.coeff), !o.unreduced, o.threads);
  Output out(o.out);
  if (o.json) out.json(betti_json(t));
  else out.stream() << betti_csv(t);
  return 0;
}

int run_ihomology(const Options& o) {
  const Graph g = load_graph(o.graph);
  const Range i = parse_range(o.i, "i"), k = parse_range(o.k, "k");
  const SwComplex c(g, !o.unreduced);
  std::vector<IntegralHomology> rows;
  for (int kk = k.lo; kk <= k.hi; ++kk) {
    for (int ii = i.lo; ii <= i.hi; ++ii) rows.push_back(integral_homology(c, ii, kk));
  }
  Output out(o.out);
  if (o.json) out.json(integral_json(rows));
  else out.stream() << integral_csv(rows);
  return 0;
}

int run_delta(const Options& o, bool i_given) {
  const Graph g = load_graph(o.graph);
  const Range i = i_given ? parse_range(o.i, "i") : Range{0, valence2_count(g) + 1};
  std::vector<DeltaResult> rows;
  for (int ii = i.lo; ii <= i.hi; ++ii) rows.push_back(delta(g, ii));
  Output out(o.out);
  if (o.json) out.json(delta_json(rows));
  else out.stream() << delta_csv(rows);
  return 0;
}

int run_growth(const Options& o, bool i_given) {
  const Graph g = load_graph(o.graph);
  const Range i = i_given ? parse_range(o.i, "i") : Range{0, valence2_count(g) + 1};
  const int k_max = o.k_max >= 0 ? o.k_max : 10;
  const auto verdicts = verify_growth(g, i.lo, i.hi, k_max, field_coeff(o.coeff), o.guard, o.threads);
  Output out(o.out);
  if (o.json) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& v : verdicts) rows.push_back(verdict_json(v));
    out.json(rows);
  } else {
    out.stream() << verdict_csv(verdicts);
  }
  bool ok = true;
  for (const auto& v : verdicts) {
    if (!v.pass) {
      ok = false;
      std::cerr << "growth check failed at i=" << v.i << ": " << v.report << '\n';
    }
  }
  return ok ? 0 : kExitFailure;
}

int run_generators(const Options& o) {
  const Graph g = load_graph(o.graph);
  const Range i = parse_range(o.i, "i"), k = parse_range(o.k, "k");
  GeneratorTable t = generator_counts(SwComplex(g, !o.unreduced), i.hi, k.hi, field_coeff(o.coeff));
  std::erase_if(t.generators, [&](const auto& kv) {
    return kv.first.first < i.lo || kv.first.second < k.lo;
  });
  Output out(o.out);
  if (o.json) out.json(generators_json(t));
  else out.stream() << generators_csv(t);
  return 0;
}

int run_decomposable(const Options& o) {
  const Graph g = load_graph(o.graph);
  std::ifstream in(o.chain);
  if (!in) throw InvalidArgument("cannot open chain file \"" + o.chain + "\"");
  const Chain z = chain_from_json(g, nlohmann::json::parse(in));
  const bool cycle = is_cycle(g, z);
  nlohmann::json j = {{"i", z.degree()},
                      {"k", z.weight()},
                      {"coeff", z.coeff().str()},
                      {"cycle", cycle},
                      {"chain_decomposable", is_chain_decomposable(z)}};
  if (cycle && z.coeff().is_field()) {
    j["class_decomposable"] = is_class_decomposable(SwComplex(g, z.reduced()), z, z.coeff());
  } else {
    j["class_decomposable"] = nullptr;
  }
  Output out(o.out);
  if (o.json) {
    out.json(j);
  } else {
    auto cell = [](const nlohmann::json& v) { return v.is_null() ? std::string() : v.dump(); };
    out.stream() << "i,k,coeff,cycle,chain_decomposable,class_decomposable\n"
                 << z.degree() << ',' << z.weight() << ',' << z.coeff().str() << ',' << cycle << ','
                 << cell(j["chain_decomposable"]) << ',' << cell(j["class_decomposable"]) << '\n';
  }
  return 0;
}

int run_star_class(const Options& o) {
  const Graph g = load_graph(o.graph);
  const StarSpec s = parse_star(g, o.halves.empty() ? o.vertex : o.vertex + ":" + o.halves);
  const Coeff coeff = field_coeff(o.coeff);
  const Chain z = star_representative(g, s, coeff, !o.unreduced);
  const HomologyBasis basis = homology_basis(SwComplex(g, !o.unreduced), 1, 2, coeff);
  std::vector<std::string> coords;
  for (const auto& q : basis.class_of(z)) coords.push_back(rational_string(q));
  Output out(o.out);
  if (o.json) {
    out.json({{"cycle", is_cycle(g, z)},
              {"zero_class", basis.is_zero_class(z)},
              {"class", coords},
              {"homology_dim", basis.dim()},
              {"chain", chain_to_json(g, z)}});
  } else {
    out.stream() << "term,coefficient\n";
    for (const auto& [x, c] : z.terms()) out.stream() << describe(g, z.reduced(), x) << ',' << rational_string(c) << '\n';
  }
  return 0;
}

int run_torus(const Options& o) {
  const Graph g = load_graph(o.graph);
  if (o.stars.empty()) throw InvalidArgument("torus needs at least one --star");
  std::vector<StarSpec> spec;
  for (const auto& s : o.stars) spec.push_back(parse_star(g, s));
  const int k_max = o.k_max >= 0 ? o.k_max : 2 * static_cast<int>(spec.size()) + 4;
  const TorusGrowth t =
      torus_submodule_growth(SwComplex(g, !o.unreduced), spec, k_max, field_coeff(o.coeff), !o.allow_nonrigid);
  Output out(o.out);
  if (o.json) out.json(torus_json(t));
  else out.stream() << torus_csv(t);
  if (!t.pass) std::cerr << "torus growth differs from the free-module prediction\n";
  return t.pass ? 0 : kExitFailure;
}

int run_formality_scan(const Options& o) {
  const Graph g = load_graph(o.graph);
  const Range i = parse_range(o.i, "i"), k = parse_range(o.k, "k");
  const auto w = find_paradoxical_witness(SwComplex(g, !o.unreduced), i.hi, k.hi, field_coeff(o.coeff), i.lo, k.lo);
  Output out(o.out);
  if (o.json) {
    out.json(w ? nlohmann::json{{"found", true}, {"witness", witness_json(g, *w)}} : nlohmann::json{{"found", false}});
  } else {
    out.stream() << "found,i,k,reverified\n";
    if (w) out.stream() << "true," << w->degree << ',' << w->weight << ',' << w->reverified << '\n';
    else out.stream() << "false,,,\n";
  }
  return 0;
}

int run_oracle_compare(const Options& o) {
  const Graph g = load_graph(o.graph);
  const Range i = parse_range(o.i, "i"), k = parse_range(o.k, "k");
  std::vector<Coeff> coeffs;
  for (const auto& c : split(o.coeffs, ',')) coeffs.push_back(field_coeff(c));
  const std::size_t cap = o.cap ? o.cap : cell_cap_from_env();
  const SwComplex red(g, true), unred(g, false);
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream csv;
  csv << "i,k,coeff,reduced,unreduced,abrams,agree\n";
  std::size_t disagreements = 0;
  for (int kk = k.lo; kk <= k.hi; ++kk) {
    const AbramsComplex a(g, kk, cap);
    for (const auto& c : coeffs) {
      for (int ii = i.lo; ii <= i.hi; ++ii) {
        const std::size_t r = betti(red, ii, kk, c), u = betti(unred, ii, kk, c), x = abrams_betti(a, ii, c);
        const bool agree = r == x && u == x;
        disagreements += !agree;
        csv << ii << ',' << kk << ',' << c.str() << ',' << r << ',' << u << ',' << x << ',' << agree << '\n';
        rows.push_back({{"i", ii}, {"k", kk}, {"coeff", c.str()}, {"reduced", r}, {"unreduced", u},
                        {"abrams", x}, {"agree", agree}});
      }
    }
  }
  Output out(o.out);
  if (o.json) out.json({{"rows", rows}, {"all_agree", disagreements == 0}});
  else out.stream() << csv.str();
  std::cerr << (disagreements == 0 ? "all agree" : std::to_string(disagreements) + " disagreements") << '\n';
  return disagreements == 0 ? 0 : kExitFailure;
}

int run_transform(const Options& o) {
  Graph g = load_graph(o.graph);
  for (const auto& step : split(o.op, '/')) g = apply_op(g, step);
  Output out(o.out);
  if (o.json) out.json(graph_to_json(g));
  else out.stream() << graph_csv(g);
  return 0;
}

int run_repro(const Options& o) {
  Output out(o.out);
  nlohmann::json rows = nlohmann::json::array();
  int failed = 0;
  for (const auto& check : acceptance::all_criteria()) {
    const acceptance::Criterion c = check();
    failed += !c.pass;
    if (o.json) {
      rows.push_back({{"criterion", c.id}, {"title", c.title}, {"pass", c.pass}, {"detail", c.detail}});
    } else {
      out.stream() << "criterion " << c.id << ": " << (c.pass ? "PASS" : "FAIL") << "  " << c.title << "  ("
                   << c.detail << ")\n";
      out.stream().flush();
    }
  }
  if (o.json) out.json({{"criteria", rows}, {"pass", failed == 0}});
  else out.stream() << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << '\n';
  return failed == 0 ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homology of graph configuration spaces via the Swiatkowski complex"};
  app.require_subcommand(1);
  Options o;

  auto graph_arg = [&](CLI::App* s) {
    s->add_option("graph", o.graph, "graph JSON file or builtin:<family>[:n]")->required();
  };
  auto output_flags = [&](CLI::App* s) {
    s->add_flag("--json", o.json, "emit JSON instead of CSV");
    s->add_option("--out", o.out, "write to a file instead of stdout");
  };
  auto coeff_flag = [&](CLI::App* s) { s->add_option("--coeff", o.coeff, "q, fp:<p> (or z where supported)"); };
  auto ranges = [&](CLI::App* s) {
    s->add_option("--i", o.i, "degree range a..b");
    s->add_option("--k", o.k, "weight range a..b");
  };

  auto* betti_cmd = app.add_subcommand("betti", "Betti numbers over a field");
  graph_arg(betti_cmd);
  ranges(betti_cmd);
  coeff_flag(betti_cmd);
  output_flags(betti_cmd);
  betti_cmd->add_option("--threads", o.threads, "worker threads across weights")->check(CLI::PositiveNumber);
  betti_cmd->add_flag("--unreduced", o.unreduced, "use the unreduced complex");

  auto* ih_cmd = app.add_subcommand("ihomology", "integral homology: free rank and torsion");
  graph_arg(ih_cmd);
  ranges(ih_cmd);
  output_flags(ih_cmd);
  ih_cmd->add_flag("--unreduced", o.unreduced, "use the unreduced complex");

  auto* delta_cmd = app.add_subcommand("delta", "Delta invariants with witnesses");
  graph_arg(delta_cmd);
  auto* delta_i = delta_cmd->add_option("--i", o.i, "degree range a..b");
  output_flags(delta_cmd);

  auto* growth_cmd = app.add_subcommand("growth", "check the growth degree of Betti numbers");
  graph_arg(growth_cmd);
  auto* growth_i = growth_cmd->add_option("--i", o.i, "degree range a..b");
  growth_cmd->add_option("--k-max", o.k_max, "largest weight (default 10)");
  growth_cmd->add_option("--guard", o.guard, "number of vanishing differences required")->check(CLI::PositiveNumber);
  growth_cmd->add_option("--threads", o.threads, "worker threads across weights")->check(CLI::PositiveNumber);
  coeff_flag(growth_cmd);
  output_flags(growth_cmd);

  auto* gen_cmd = app.add_subcommand("generators", "minimal generator counts of the homology modules");
  graph_arg(gen_cmd);
  ranges(gen_cmd);
  coeff_flag(gen_cmd);
  output_flags(gen_cmd);
  gen_cmd->add_flag("--unreduced", o.unreduced, "use the unreduced complex");

  auto* dec_cmd = app.add_subcommand("decomposable", "chain- and class-level decomposability of a chain");
  graph_arg(dec_cmd);
  dec_cmd->add_option("--chain", o.chain, "chain JSON file")->required();
  output_flags(dec_cmd);

  auto* star_cmd = app.add_subcommand("star-class", "star class at a vertex");
  graph_arg(star_cmd);
  star_cmd->add_option("--vertex", o.vertex, "vertex id")->required();
  star_cmd->add_option("--halves", o.halves, "three half-edges h1,h2,h3 (default: first three)");
  coeff_flag(star_cmd);
  output_flags(star_cmd);
  star_cmd->add_flag("--unreduced", o.unreduced, "use the unreduced complex");

  auto* torus_cmd = app.add_subcommand("torus", "rigidity and growth of a W-torus submodule");
  graph_arg(torus_cmd);
  torus_cmd->add_option("--star", o.stars, "vertex[:h1,h2,h3], repeatable")->required();
  torus_cmd->add_option("--k-max", o.k_max, "largest weight (default 2|W|+4)");
  torus_cmd->add_flag("--allow-nonrigid", o.allow_nonrigid, "report instead of rejecting non-rigid tori");
  coeff_flag(torus_cmd);
  output_flags(torus_cmd);
  torus_cmd->add_flag("--unreduced", o.unreduced, "use the unreduced complex");

  auto* scan_cmd = app.add_subcommand("formality-scan", "search for a paradoxically decomposable cycle");
  graph_arg(scan_cmd);
  ranges(scan_cmd);
  coeff_flag(scan_cmd);
  output_flags(scan_cmd);
  scan_cmd->add_flag("--unreduced", o.unreduced, "use the unreduced complex");

  auto* oracle_cmd = app.add_subcommand("oracle-compare", "compare against the cubical complex");
  graph_arg(oracle_cmd);
  ranges(oracle_cmd);
  oracle_cmd->add_option("--coeff", o.coeffs, "comma-separated fields (default q,fp:2)");
  oracle_cmd->add_option("--cap", o.cap, "cell cap (default GCH_CELL_CAP or 5000000)");
  output_flags(oracle_cmd);

  auto* tr_cmd = app.add_subcommand("transform", "apply graph operations, '/'-separated");
  graph_arg(tr_cmd);
  tr_cmd->add_option("--op", o.op, "smooth | explode:v | explode-all:v,w | loop-to-tail:e | subdivide:n | union:src")
      ->required();
  output_flags(tr_cmd);

  auto* repro_cmd = app.add_subcommand("repro", "run every acceptance check and summarize");
  output_flags(repro_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (betti_cmd->parsed()) return run_betti(o);
    if (ih_cmd->parsed()) return run_ihomology(o);
    if (delta_cmd->parsed()) return run_delta(o, delta_i->count() > 0);
    if (growth_cmd->parsed()) return run_growth(o, growth_i->count() > 0);
    if (gen_cmd->parsed()) return run_generators(o);
    if (dec_cmd->parsed()) return run_decomposable(o);
    if (star_cmd->parsed()) return run_star_class(o);
    if (torus_cmd->parsed()) return run_torus(o);
    if (scan_cmd->parsed()) return run_formality_scan(o);
    if (oracle_cmd->parsed()) return run_oracle_compare(o);
    if (tr_cmd->parsed()) return run_transform(o);
    if (repro_cmd->parsed()) return run_repro(o);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
