// Command-line front end. Tables are TSV, pivot traces are JSON lines.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>

#include "surf/distances.hpp"
#include "surf/embedding.hpp"
#include "surf/errors.hpp"
#include "surf/homology.hpp"
#include "surf/mssp_linear.hpp"
#include "surf/mssp_ref.hpp"
#include "surf/oracles.hpp"
#include "surf/sssp.hpp"

using namespace surf;

namespace {

struct Inputs {
  std::string graph, costs;
  std::optional<int64_t> default_cost;
};

void add_graph(CLI::App* cmd, Inputs& in) { cmd->add_option("--graph", in.graph, "embedding (.emg)")->required(); }

void add_costs(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--costs", in.costs, "dart costs (.cst)")->required();
  cmd->add_option("--default-cost", in.default_cost, "cost for darts absent from the cost file");
}

std::vector<int64_t> load_costs(const Inputs& in, const EmbeddedGraph& g) {
  return read_cst_file(in.costs, g.num_darts(), in.default_cost ? &*in.default_cost : nullptr);
}

std::ifstream open(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return f;
}

Variant parse_variant(const std::string& s) { return s == "standard" ? Variant::Standard : Variant::Modified; }

void print_trace(const std::vector<PivotEvent>& events) {
  for (const auto& e : events) std::cout << to_json_line(e) << '\n';
}

struct GenSpec {
  std::string kind = "torus", cost_model = "unit";
  int w = 3, h = 3, genus = 1, n = 10, extra = 0;
  int64_t max_cost = 5;
  uint64_t seed = 1;
};

EmbeddedGraph generate(const GenSpec& s) {
  if (s.kind == "torus") return torus_grid(s.w, s.h);
  if (s.kind == "planar") return planar_grid(s.w, s.h);
  if (s.kind == "bouquet") return bouquet(s.genus);
  EmbeddedGraph base = random_surface(s.n, s.genus, s.extra, s.seed);
  if (s.kind == "random") return base;
  // "rotation": keep the skeleton of a random surface and reshuffle every rotation.
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (EdgeId e = 0; e < base.num_edges(); ++e) edges.emplace_back(base.tail(2 * e), base.head(2 * e));
  return random_rotation(s.n, edges, s.seed + 1);
}

struct FuzzSpec {
  int count = 100, max_n = 50, max_genus = 3;
  int64_t max_cost = 5;
  uint64_t seed = 1;
};

// Costs without zero-cost cycles: a zero is only kept if it closes no cycle.
std::vector<int64_t> fuzz_costs(const EmbeddedGraph& g, int64_t max_cost, std::mt19937_64& rng) {
  std::uniform_int_distribution<int64_t> pick(0, max_cost);
  for (;;) {
    std::vector<int64_t> c(g.num_darts());
    for (auto& x : c) x = pick(rng);
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      if (c[2 * e] == 0 && c[2 * e + 1] == 0) c[2 * e] = 1;
    if (!has_zero_cost_cycle(g, c)) return c;
  }
}

int run_fuzz(const FuzzSpec& s) {
  std::mt19937_64 rng(s.seed);
  int mismatches = 0;
  for (int k = 0; k < s.count; ++k) {
    int n = 2 + static_cast<int>(rng() % static_cast<uint64_t>(std::max(1, s.max_n - 1)));
    int genus = static_cast<int>(rng() % static_cast<uint64_t>(s.max_genus + 1));
    int extra = static_cast<int>(rng() % static_cast<uint64_t>(n + 1));
    EmbeddedGraph g = random_surface(n, genus, extra, rng(), 0.05);
    auto c = fuzz_costs(g, s.max_cost, rng);
    FaceId r = static_cast<FaceId>(rng() % static_cast<uint64_t>(g.num_faces()));
    auto ref = mssp_reference(g, c, r, Variant::Modified);
    auto lin = mssp_linear(g, c, r);
    if (ref != lin) {
      ++mismatches;
      std::cout << "mismatch instance=" << k << " n=" << n << " genus=" << genus << " r=" << r << '\n';
    }
  }
  std::cout << "instances\t" << s.count << "\nmismatches\t" << mismatches << '\n';
  return mismatches == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shortest paths on surface-embedded graphs"};
  app.require_subcommand(1);
  Inputs in;

  auto* validate = app.add_subcommand("validate", "check an embedding and optional cost file");
  add_graph(validate, in);
  validate->add_option("--costs", in.costs);
  validate->add_option("--default-cost", in.default_cost);

  auto* genus_cmd = app.add_subcommand("genus", "print the genus");
  add_graph(genus_cmd, in);

  VertexId root_vertex = 0;
  FaceId root_face = 0;
  auto* sig_cmd = app.add_subcommand("signatures", "per-edge homology signatures");
  add_graph(sig_cmd, in);
  sig_cmd->add_option("--root-vertex", root_vertex);
  sig_cmd->add_option("--root-face", root_face);

  FaceId sink = 0;
  auto* drain_cmd = app.add_subcommand("drainage", "cotree drainage into the sink face");
  add_graph(drain_cmd, in);
  drain_cmd->add_option("--sink-face", sink);

  VertexId source = 0;
  std::string variant = "standard";
  auto* sssp_cmd = app.add_subcommand("sssp", "holiest shortest-path tree");
  add_graph(sssp_cmd, in);
  add_costs(sssp_cmd, in);
  sssp_cmd->add_option("--source", source)->required();
  sssp_cmd->add_option("--variant", variant)->check(CLI::IsMember({"standard", "modified"}));
  sssp_cmd->add_option("--sink-face", sink);

  auto* ref_cmd = app.add_subcommand("mssp-ref", "reference MSSP pivot trace");
  add_graph(ref_cmd, in);
  add_costs(ref_cmd, in);
  ref_cmd->add_option("--sink-face", sink);
  std::string ref_variant = "modified";
  ref_cmd->add_option("--variant", ref_variant)->check(CLI::IsMember({"standard", "modified"}));

  auto* lin_cmd = app.add_subcommand("mssp-linear", "linear-time MSSP pivot trace");
  add_graph(lin_cmd, in);
  add_costs(lin_cmd, in);
  lin_cmd->add_option("--sink-face", sink);

  std::string pairs_path, walk_path, engine = "linear";
  auto* dist_cmd = app.add_subcommand("distances", "distances along a monotone correspondence");
  add_graph(dist_cmd, in);
  add_costs(dist_cmd, in);
  dist_cmd->add_option("--sink-face", sink);
  dist_cmd->add_option("--pairs", pairs_path, "rows `i j`, 1-based")->required();
  dist_cmd->add_option("--walk", walk_path, "target walk as vertex ids")->required();
  dist_cmd->add_option("--engine", engine)->check(CLI::IsMember({"reference", "linear"}));

  GenSpec gen;
  std::string out_prefix;
  auto* gen_cmd = app.add_subcommand("gen", "write an instance as .emg and .cst");
  gen_cmd->add_option("--kind", gen.kind)->check(CLI::IsMember({"torus", "planar", "bouquet", "random", "rotation"}));
  gen_cmd->add_option("-W,--width", gen.w);
  gen_cmd->add_option("-H,--height", gen.h);
  gen_cmd->add_option("--genus", gen.genus);
  gen_cmd->add_option("--vertices", gen.n);
  gen_cmd->add_option("--extra-edges", gen.extra);
  gen_cmd->add_option("--cost-model", gen.cost_model)->check(CLI::IsMember({"unit", "uniform"}));
  gen_cmd->add_option("--max-cost", gen.max_cost);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--out", out_prefix, "writes <out>.emg and <out>.cst")->required();

  FuzzSpec fz;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "compare both MSSP engines on random instances");
  fuzz_cmd->add_option("--count", fz.count);
  fuzz_cmd->add_option("--max-n", fz.max_n);
  fuzz_cmd->add_option("--max-genus", fz.max_genus);
  fuzz_cmd->add_option("--max-cost", fz.max_cost);
  fuzz_cmd->add_option("--seed", fz.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*gen_cmd) {
      EmbeddedGraph g = generate(gen);
      std::vector<int64_t> c = gen.cost_model == "unit" ? unit_costs(g) : uniform_costs(g, 1, gen.max_cost, gen.seed);
      std::ofstream emg(out_prefix + ".emg"), cst(out_prefix + ".cst");
      write_emg(emg, g);
      write_cst(cst, c);
      std::cout << out_prefix << ".emg\tgenus " << g.genus() << '\n';
      return 0;
    }
    if (*fuzz_cmd) return run_fuzz(fz);

    EmbeddedGraph g = read_emg_file(in.graph);
    if (*validate) {
      if (!in.costs.empty()) load_costs(in, g);
      std::cout << "ok\t" << g.num_vertices() << '\t' << g.num_edges() << '\t' << g.num_faces() << '\t'
                << g.genus() << '\n';
    } else if (*genus_cmd) {
      std::cout << g.genus() << '\n';
    } else if (*sig_cmd) {
      HomologySignature s = homology_signatures(g, tree_cotree(g, root_vertex, root_face));
      for (EdgeId e = 0; e < g.num_edges(); ++e) {
        std::cout << e;
        for (int32_t x : s.edge(e)) std::cout << '\t' << x;
        std::cout << '\n';
      }
    } else if (*drain_cmd) {
      Drainage dr = cotree_drainage(g, tree_cotree(g, 0, sink).cotree_succ);
      for (EdgeId e = 0; e < g.num_edges(); ++e) std::cout << e << '\t' << dr.z_edge[e] << '\n';
    } else if (*sssp_cmd) {
      auto c = load_costs(in, g);
      Variant v = parse_variant(variant);
      TreeCotree tc = tree_cotree(g, source, sink);
      HomologySignature sigs = homology_signatures(g, tc);
      CostTable costs = perturb_costs(g, c, sigs, cotree_drainage(g, tc.cotree_succ), v);
      HolyTree t = v == Variant::Standard ? holiest_sssp(g, costs, source) : holiest_tree_small_int(g, costs, source);
      for (VertexId x = 0; x < g.num_vertices(); ++x)
        std::cout << x << '\t' << (t.pred[x] == kNone ? -1 : t.pred[x]) << '\t' << t.dist0(x) << '\n';
    } else if (*ref_cmd) {
      print_trace(mssp_reference(g, load_costs(in, g), sink, parse_variant(ref_variant)));
    } else if (*lin_cmd) {
      print_trace(mssp_linear(g, load_costs(in, g), sink));
    } else if (*dist_cmd) {
      auto c = load_costs(in, g);
      std::vector<VertexId> walk;
      std::vector<std::pair<int, int>> corr;
      {
        auto f = open(walk_path);
        for (VertexId x; f >> x;) walk.push_back(x);
      }
      {
        auto f = open(pairs_path);
        for (int i, j; f >> i >> j;) corr.emplace_back(i, j);
      }
      auto rows = mssp_distances(g, c, sink, walk, corr, engine == "linear" ? Engine::Linear : Engine::Reference);
      for (const auto& row : rows) std::cout << row.i << '\t' << row.j << '\t' << row.dist << '\n';
    }
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return is_internal(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
