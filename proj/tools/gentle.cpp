#include <CLI11.hpp>

#include <gentle/gentle.hpp>
#include <gentle/json_io.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace gentle;

namespace {

enum Exit { kVerified = 0, kRefuted = 1, kInputError = 2, kContractViolation = 3 };

Json read_json(const std::string& path) {
  if (path.empty() || path == "-") return parse_json(std::cin);
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  return parse_json(in);
}

void emit(const Json& j) { std::cout << j.dump() << '\n'; }
void stats(const Json& j) { std::cerr << j.dump() << '\n'; }

Rational eps_arg(const std::string& text) {
  const auto eps = parse_rational(text);
  if (!is_open_unit(eps)) throw PreconditionError("epsilon must lie in (0, 1), got '" + text + "'");
  return eps;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

VertexSet vertex_list_arg(const std::string& s) {
  std::vector<Vertex> vs;
  for (const auto& item : split(s, ',')) {
    const auto r = parse_rational(item);
    if (r.denominator() != 1 || r < 0) throw PreconditionError("bad vertex '" + item + "'");
    vs.push_back(static_cast<Vertex>(r.numerator()));
  }
  return VertexSet(vs);
}

/// "deg<d>", "sc<d>" or "cover<p>(<universe>)".
DefinableGraph universe_arg(const std::string& name) {
  auto number = [&](const std::string& digits) -> std::size_t {
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw PreconditionError("unknown universe '" + name + "'");
    return std::stoul(digits);
  };
  if (name.rfind("deg", 0) == 0) return degenerate_universe(number(name.substr(3)));
  if (name.rfind("sc", 0) == 0) return sc_universe(number(name.substr(2)));
  if (name.rfind("cover", 0) == 0 && name.back() == ')') {
    const auto open = name.find('(');
    if (open == std::string::npos) throw PreconditionError("unknown universe '" + name + "'");
    return cover_universe(universe_arg(name.substr(open + 1, name.size() - open - 2)),
                          number(name.substr(5, open - 5)));
  }
  throw PreconditionError("unknown universe '" + name + "'");
}

Json stats_record(std::size_t n, std::size_t m, const Rational& eps, std::size_t parts, double bound,
                  const Rational& defect) {
  return Json{{"n", n}, {"m", m}, {"eps", to_string(eps)}, {"parts", parts}, {"bound", bound},
              {"defect", to_string(defect)}};
}

PairPartitioner cograph_partitioner(const TwoCoveredInstance& x, const Rational& pair_eps) {
  return [&x, pair_eps](const Graph&, std::size_t i, std::size_t j) {
    const auto it = x.pair_cotrees.find({i, j});
    if (it == x.pair_cotrees.end())
      throw PreconditionError("no cotree for pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
    return cograph_regular_partition(it->second, pair_eps);
  };
}

std::size_t cover_colours(const TwoCoveredInstance& x) {
  std::size_t m = 1;
  for (const auto& [key, c] : x.pair_cotrees) m = std::max(m, c.colors());
  return m;
}

// ---- generate

struct GenerateArgs {
  std::string family;
  std::size_t n = 0, m = 2, k = 2, d = 2, p = 2, depth = 2, max_child = 3, max_weight = 0;
  std::string prob = "1/2", shape = "recursive";
  std::uint64_t seed = 0;
};

int run_generate(const GenerateArgs& a) {
  const auto& f = a.family;
  if (f == "half") return emit(to_json(half_graph(a.n))), kVerified;
  if (f == "shift") return emit(to_json(shift_graph(a.n, a.k))), kVerified;
  if (f == "es") return emit(to_json(es_graph(a.n))), kVerified;
  if (f == "random") {
    const auto q = parse_rational(a.prob);
    if (q < 0 || q > 1) throw PreconditionError("probability must lie in [0, 1]");
    return emit(to_json(random_graph(a.n, static_cast<std::uint64_t>(q.numerator()),
                                     static_cast<std::uint64_t>(q.denominator()), a.seed))),
           kVerified;
  }
  if (f == "degenerate") return emit(to_json(random_degenerate(a.n, a.d, a.seed))), kVerified;
  if (f == "regular") return emit(to_json(random_regular(a.n, a.d, a.seed))), kVerified;
  if (f == "cotree") return emit(to_json(random_cotree(a.n, a.m, a.max_child, a.seed))), kVerified;
  if (f == "sc") return emit(to_json(random_sc(a.n, a.depth, a.seed))), kVerified;
  if (f == "two-covered") return emit(to_json(random_two_covered(a.n, a.m, a.p, a.seed))), kVerified;
  if (f == "tree") {
    const auto t = random_plane_tree(a.n, parse_tree_shape(a.shape), a.seed);
    const auto mu = a.max_weight ? random_measure(t, a.max_weight, a.seed) : TreeMeasure::uniform_leaves(t);
    return emit(to_json(t, mu)), kVerified;
  }
  if (f == "decomposition") return emit(to_json(random_rank_decomposition(a.n, a.seed))), kVerified;
  throw PreconditionError("unknown family '" + f + "'");
}

// ---- partition

void write_graph(const std::string& path, const Graph& g) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw PreconditionError("cannot write '" + path + "'");
  f << to_json(g).dump() << '\n';
}

int run_partition(const std::string& mode, const std::string& eps_text, const std::string& graph_out,
                  const std::vector<std::string>& files) {
  const auto eps = eps_arg(eps_text);
  auto input = [&](std::size_t i) { return read_json(i < files.size() ? files[i] : "-"); };
  if (mode == "tree") {
    const auto mt = measured_tree_from_json(input(0));
    TreePartitionStats st;
    const auto p = build_eps_partition(mt.tree, mt.measure, eps, &st);
    const auto verdict = verify_eps_partition(mt.tree, mt.measure, eps, p);
    if (!verdict.ok) throw ContractError("tree partition failed clause '" + verdict.violations.front().clause + "'");
    emit(to_json(p));
    stats(Json{{"nodes", mt.tree.node_count()}, {"eps", to_string(eps)}, {"parts", p.parts.size()},
               {"bound", 8.0 / to_double(eps)}, {"atoms", st.atoms}, {"groups", st.groups},
               {"thick_groups", st.thick_groups}});
    return kVerified;
  }
  if (mode == "cograph") {
    const auto c = cotree_from_json(input(0));
    const auto r = cograph_regular_partition_detailed(c, eps);
    write_graph(graph_out, materialize(c));
    emit(to_json(r.partition));
    stats(stats_record(c.vertex_count(), c.colors(), eps, r.partition.size(), cograph_block_bound(c.colors(), eps), r.defect));
    return kVerified;
  }
  if (mode == "cover") {
    const auto x = two_covered_from_json(input(0));
    const std::size_t p = x.cover.magnitude();
    if (p < 2) throw PreconditionError("cover needs at least two parts");
    const auto r = cover_regular_partition(x.graph, x.cover, eps,
                                           cograph_partitioner(x, eps / static_cast<std::int64_t>(p - 1)));
    write_graph(graph_out, x.graph);
    emit(to_json(r.partition));
    auto rec = stats_record(x.graph.order(), cover_colours(x), eps, r.partition.size(),
                            cover_block_bounds(cover_colours(x), p, eps).nice_bound,
                            nice_defect(x.graph, r.partition).defect);
    rec["p"] = p;
    stats(rec);
    return kVerified;
  }
  if (mode == "equi") {
    const auto g = graph_from_json(input(0));
    const auto start = partition_from_json(input(1));
    const auto q = equipartition_refine(g, start, eps);
    emit(to_json(q));
    auto rec = stats_record(g.order(), 0, eps, q.size(), std::ceil(static_cast<double>(start.size()) / to_double(eps)),
                            bad_pair_fraction(g, q));
    rec.erase("m");
    stats(rec);
    return kVerified;
  }
  throw PreconditionError("unknown partition mode '" + mode + "'");
}

// ---- verify

struct VerifyArgs {
  std::string mode, eps, universe, a, b, removed;
  std::size_t d = 0, samples = 0;
  std::uint64_t seed = 0;
  bool weak = false;
  std::vector<std::string> files;
};

int run_verify(const VerifyArgs& a) {
  auto input = [&](std::size_t i) {
    if (i >= a.files.size()) throw PreconditionError("verify --mode " + a.mode + " needs " + std::to_string(i + 1) + " input files");
    return read_json(a.files[i]);
  };
  if (a.mode == "nice") {
    const auto eps = eps_arg(a.eps);
    const auto g = graph_from_json(input(0));
    const auto rep = nice_defect(g, partition_from_json(input(1)));
    const bool ok = rep.defect < eps;
    auto out = to_json(rep);
    out["eps"] = to_string(eps);
    out["ok"] = ok;
    emit(out);
    return ok ? kVerified : kRefuted;
  }
  if (a.mode == "eps-partition") {
    const auto eps = eps_arg(a.eps);
    const auto mt = measured_tree_from_json(input(0));
    const auto verdict = verify_eps_partition(mt.tree, mt.measure, eps, tree_partition_from_json(input(1)));
    emit(to_json(verdict));
    return verdict.ok ? kVerified : kRefuted;
  }
  if (a.mode == "embedding") {
    const auto g = graph_from_json(input(0));
    const auto ej = input(1);
    std::string name = a.universe;
    if (name.empty() && ej.contains("universe") && ej["universe"].is_string()) name = ej["universe"].get<std::string>();
    if (name.empty()) throw PreconditionError("no universe given (use --universe)");
    const auto u = universe_arg(name);
    const auto check = check_embedding(g, embedding_from_json(ej, g.order()), u);
    Json out{{"ok", check.ok}, {"universe", u.name()}};
    if (!check.ok) out["violation"] = check.reason;
    emit(out);
    return check.ok ? kVerified : kRefuted;
  }
  if (a.mode == "nd") {
    const auto eps = eps_arg(a.eps);
    const auto g = graph_from_json(input(0));
    const auto p = partition_from_json(input(1));
    const VertexSet s = a.removed.empty() ? VertexSet{} : vertex_list_arg(a.removed);
    const bool ok = verify_nd_partition(g, s, p, a.d, eps, a.weak ? NdMode::Weak : NdMode::Strong);
    emit(Json{{"ok", ok}, {"d", a.d}, {"eps", to_string(eps)}, {"mode", a.weak ? "weak" : "strong"}});
    return ok ? kVerified : kRefuted;
  }
  if (a.mode == "regular") {
    const auto eps = eps_arg(a.eps);
    const auto g = graph_from_json(input(0));
    const auto sa = vertex_list_arg(a.a), sb = vertex_list_arg(a.b);
    Json out{{"eps", to_string(eps)}};
    bool ok;
    if (a.samples == 0) {
      ok = eps_regular_exact(g, sa, sb, eps);
      out["method"] = "exact";
    } else {
      const auto w = eps_regular_sampled(g, sa, sb, eps, a.samples, a.seed);
      ok = !w;
      out["method"] = "sampled";
      out["samples"] = a.samples;
      if (w) out["witness"] = Json{{"a", w->a.members()}, {"b", w->b.members()}};
    }
    out["ok"] = ok;
    emit(out);
    return ok ? kVerified : kRefuted;
  }
  throw PreconditionError("unknown verify mode '" + a.mode + "'");
}

// ---- embed

int run_embed(const std::string& mode, std::optional<std::size_t> arity_degree, const std::string& graph_out,
              const std::vector<std::string>& files) {
  const auto in = read_json(files.empty() ? "-" : files[0]);
  Json out;
  Graph g;
  if (mode == "degenerate") {
    g = graph_from_json(in);
    const auto r = embed_degenerate(g, arity_degree);
    const std::size_t d = r.embedding.arity - 1;
    out = to_json(r.embedding);
    out["universe"] = "deg" + std::to_string(d);
    stats(Json{{"n", g.order()}, {"degeneracy", r.degeneracy}, {"arity", r.embedding.arity}});
  } else if (mode == "sc") {
    const auto dec = sc_from_json(in);
    g = sc_graph(dec);
    out = to_json(embed_sc(dec));
    out["universe"] = "sc" + std::to_string(dec.depth);
  } else if (mode == "two-cover") {
    const auto x = two_covered_from_json(in);
    g = x.graph;
    std::size_t d = 0;
    std::map<PairKey, Graph> pair_graphs;
    for (auto [i, j] : cover_pairs(x.cover.magnitude())) {
      auto h = g.induced_subgraph(pair_vertices(x.cover, i, j));
      d = std::max(d, degeneracy_order(h).degeneracy);
      pair_graphs.emplace(PairKey{i, j}, std::move(h));
    }
    if (arity_degree) d = std::max(d, *arity_degree);
    PairEmbeddings pairs;
    for (const auto& [key, h] : pair_graphs) pairs.emplace(key, embed_degenerate(h, d).embedding);
    const auto u = cover_universe(degenerate_universe(d), x.cover.magnitude());
    out = to_json(embed_two_cover(g, x.cover, pairs, degenerate_universe(d)));
    out["universe"] = u.name();
  } else {
    throw PreconditionError("unknown embed mode '" + mode + "'");
  }
  write_graph(graph_out, g);
  emit(out);
  return kVerified;
}

// ---- rankdec

int run_rankdec(const std::vector<std::string>& files, const std::string& cotree_file) {
  Graph g;
  RankDecomposition d;
  if (!cotree_file.empty()) {
    const auto c = cotree_from_json(read_json(cotree_file));
    g = materialize(c);
    d = rank_decomposition_from_tree(c.tree());
  } else {
    if (files.size() < 2) throw PreconditionError("rankdec needs graph.json and decomposition.json (or --cotree)");
    g = graph_from_json(read_json(files[0]));
    d = rank_decomposition_from_json(read_json(files[1]), g.order());
  }
  const std::size_t r = decomposition_width(g, d);
  const auto layers = xor_rw1_decompose(g, d);
  const auto rep = check_layers(g, d, layers);
  Json lj = Json::array();
  for (const auto& l : layers) lj.push_back(to_json(l));
  bool ok = rep.xor_matches && layers.size() == r;
  for (auto w : rep.layer_width) ok = ok && w <= 1;
  emit(Json{{"width", r},
            {"layers", lj},
            {"certificates", {{"xor_matches", rep.xor_matches}, {"layer_width", rep.layer_width}, {"ok", ok}}}});
  return ok ? kVerified : kRefuted;
}

// ---- spectral

int run_spectral(const std::string& file, double tol, std::size_t samples, std::uint64_t seed,
                 std::optional<double> delta, bool with_spectrum) {
  const auto g = graph_from_json(read_json(file));
  const auto sum = symmetric_eigenvalues(g, tol);
  const std::size_t d = regular_degree(g);
  Json out{{"n", g.order()}, {"lambda", sum.lambda}, {"residual", sum.residual}, {"off_diagonal", sum.off_diagonal}};
  std::size_t violations = 0;
  if (d == kUnreachable) {
    out["d"] = nullptr;
    if (samples) throw PreconditionError("mixing samples need a regular graph");
  } else {
    out["d"] = d;
    SplitMix64 rng(seed);
    const std::size_t n = g.order();
    for (std::size_t i = 0; i < samples; ++i) {
      auto draw = [&] {
        std::vector<Vertex> vs;
        while (vs.empty() && n)
          for (Vertex v = 0; v < n; ++v)
            if (rng.chance(1, 2)) vs.push_back(v);
        return VertexSet(vs);
      };
      const auto s = draw(), t = draw();
      if (!mixing_check(g, s, t, sum.lambda).holds) ++violations;
    }
    if (delta) out["homogeneous_pair_possible"] = homogeneous_pair_spectral_bound(g, *delta, sum.lambda);
  }
  out["samples"] = samples;
  out["violations"] = violations;
  if (with_spectrum) out["eigenvalues"] = sum.eigenvalues;
  emit(out);
  return violations == 0 ? kVerified : kRefuted;
}

// ---- bench

struct BenchRow {
  std::size_t n, m;
  Rational eps;
  std::size_t parts;
  double bound;
  std::string defect;
  long long millis;
};

int run_bench(const std::string& family, const std::string& eps_list, const std::string& sizes, std::size_t m,
              std::size_t p, std::uint64_t seed) {
  std::vector<Rational> epss;
  for (const auto& e : split(eps_list, ',')) epss.push_back(eps_arg(e));
  std::vector<std::size_t> ns;
  for (const auto& s : split(sizes, ',')) {
    const auto r = parse_rational(s);
    if (r.denominator() != 1 || r <= 0) throw PreconditionError("bad size '" + s + "'");
    ns.push_back(static_cast<std::size_t>(r.numerator()));
  }
  if (family != "cograph" && family != "tree" && family != "cover")
    throw PreconditionError("unknown bench family '" + family + "'");
  std::cout << "family,n,m,eps,parts,bound,defect,millis\n";
  bool within = true;
  for (std::size_t n : ns)
    for (const auto& eps : epss) {
      const auto t0 = std::chrono::steady_clock::now();
      BenchRow row{n, m, eps, 0, 0, "", 0};
      if (family == "cograph") {
        const auto c = random_cotree(n, m, 3, seed + n);
        const auto r = cograph_regular_partition_detailed(c, eps);
        row.parts = r.partition.size();
        row.bound = cograph_block_bound(m, eps);
        row.defect = to_string(r.defect);
      } else if (family == "tree") {
        const auto t = random_plane_tree(n, TreeShape::Recursive, seed + n);
        const auto part = build_eps_partition(t, TreeMeasure::uniform_leaves(t), eps);
        row.m = 0;
        row.parts = part.parts.size();
        row.bound = 8.0 / to_double(eps);
        row.defect = "0";
      } else {
        const auto x = random_two_covered(n, m, p, seed + n);
        const auto r = cover_regular_partition(x.graph, x.cover, eps,
                                               cograph_partitioner(x, eps / static_cast<std::int64_t>(p - 1)));
        row.m = cover_colours(x);
        row.parts = r.partition.size();
        row.bound = cover_block_bounds(row.m, p, eps).nice_bound;
        row.defect = to_string(nice_defect(x.graph, r.partition).defect);
      }
      row.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
      within = within && static_cast<double>(row.parts) <= row.bound;
      std::ostringstream bound;
      bound.precision(17);
      bound << row.bound;
      std::cout << family << ',' << row.n << ',' << row.m << ',' << to_string(row.eps) << ',' << row.parts << ','
                << bound.str() << ',' << row.defect << ',' << row.millis << '\n';
    }
  return within ? kVerified : kRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gentle: regularity partitions, embeddings and certificates for gentle graph classes"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Emit a seeded instance as JSON");
  g->add_option("--family", gen.family,
                "half | shift | es | random | degenerate | regular | cotree | sc | two-covered | tree | decomposition")
      ->required();
  g->add_option("--n", gen.n, "Vertices (tree: nodes)")->required();
  g->add_option("--m", gen.m, "Colours");
  g->add_option("--k", gen.k, "Tuple length for shift graphs");
  g->add_option("--d", gen.d, "Degeneracy or degree");
  g->add_option("--p", gen.p, "Cover magnitude");
  g->add_option("--depth", gen.depth, "SC depth");
  g->add_option("--max-child", gen.max_child, "Cotree fan-out");
  g->add_option("--prob", gen.prob, "Edge probability p/q");
  g->add_option("--shape", gen.shape, "recursive | deep | broad");
  g->add_option("--max-weight", gen.max_weight, "Random integer node weights in [0, w] (0: uniform on leaves)");
  g->add_option("--seed", gen.seed, "Seed");

  std::string part_mode, part_eps, part_graph_out;
  std::vector<std::string> part_files;
  auto* pc = app.add_subcommand("partition", "Build a partition; stats go to stderr");
  pc->add_option("--mode", part_mode, "tree | cograph | cover | equi")->required();
  pc->add_option("--eps", part_eps, "Epsilon as p/q")->required();
  pc->add_option("--graph-out", part_graph_out, "Also write the instance graph here (cograph, cover)");
  pc->add_option("files", part_files, "Inputs (default stdin); equi takes graph.json partition.json");

  VerifyArgs ver;
  auto* vc = app.add_subcommand("verify", "Check a claim; exit 0 verified, 1 refuted");
  vc->add_option("--mode", ver.mode, "nice | eps-partition | embedding | nd | regular")->required();
  vc->add_option("--eps", ver.eps, "Epsilon as p/q");
  vc->add_option("--universe", ver.universe, "deg<d> | sc<d> | cover<p>(<universe>)");
  vc->add_option("--a", ver.a, "Comma-separated vertices of A");
  vc->add_option("--b", ver.b, "Comma-separated vertices of B");
  vc->add_option("--removed", ver.removed, "Comma-separated removed set S");
  vc->add_option("--d", ver.d, "Distance bound");
  vc->add_flag("--weak", ver.weak, "Weak distance condition");
  vc->add_option("--samples", ver.samples, "Sample subset pairs instead of exhaustive search");
  vc->add_option("--seed", ver.seed, "Sampling seed");
  vc->add_option("files", ver.files, "Input files");

  std::string embed_mode, graph_out;
  std::optional<std::size_t> arity_degree;
  std::vector<std::string> embed_files;
  auto* ec = app.add_subcommand("embed", "Build a set-defined embedding");
  ec->add_option("--mode", embed_mode, "degenerate | sc | two-cover")->required();
  ec->add_option("--d", arity_degree, "Raise the universe degree");
  ec->add_option("--graph-out", graph_out, "Also write the embedded graph here");
  ec->add_option("files", embed_files, "Input (default stdin)");

  std::vector<std::string> rank_files;
  std::string rank_cotree;
  auto* rc = app.add_subcommand("rankdec", "Split a graph into cut-rank-1 layers along a decomposition");
  rc->add_option("files", rank_files, "graph.json decomposition.json");
  rc->add_option("--cotree", rank_cotree, "Use a cotree and its own tree instead");

  std::string spec_file = "-";
  double tol = kDefaultSpectralTol;
  std::size_t spec_samples = 0;
  std::uint64_t spec_seed = 0;
  std::optional<double> delta;
  bool with_spectrum = false;
  auto* sc = app.add_subcommand("spectral", "Spectrum, mixing samples and homogeneous-pair exclusion");
  sc->add_option("file", spec_file, "graph.json (default stdin)");
  sc->add_option("--tol", tol, "Off-diagonal tolerance");
  sc->add_option("--samples", spec_samples, "Random (S, T) mixing checks");
  sc->add_option("--seed", spec_seed, "Sampling seed");
  sc->add_option("--delta", delta, "Test for homogeneous pairs of size ceil(delta n)");
  sc->add_flag("--eigenvalues", with_spectrum, "Include the spectrum");

  std::string bench_family = "cograph", bench_eps = "1/2,1/5,1/10", bench_sizes = "500,1000,2000";
  std::size_t bench_m = 2, bench_p = 2;
  std::uint64_t bench_seed = 1;
  auto* bc = app.add_subcommand("bench", "CSV timings and bound checks");
  bc->add_option("--family", bench_family, "cograph | tree | cover");
  bc->add_option("--eps", bench_eps, "Comma-separated p/q values");
  bc->add_option("--sizes", bench_sizes, "Comma-separated sizes");
  bc->add_option("--m", bench_m, "Colours");
  bc->add_option("--p", bench_p, "Cover magnitude");
  bc->add_option("--seed", bench_seed, "Base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*g) return run_generate(gen);
    if (*pc) return run_partition(part_mode, part_eps, part_graph_out, part_files);
    if (*vc) return run_verify(ver);
    if (*ec) return run_embed(embed_mode, arity_degree, graph_out, embed_files);
    if (*rc) return run_rankdec(rank_files, rank_cotree);
    if (*sc) return run_spectral(spec_file, tol, spec_samples, spec_seed, delta, with_spectrum);
    if (*bc) return run_bench(bench_family, bench_eps, bench_sizes, bench_m, bench_p, bench_seed);
  } catch (const ContractError& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return kContractViolation;
  } catch (const InvariantError& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return kContractViolation;
  } catch (const ConvergenceError& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return kContractViolation;
  } catch (const JsonInputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::length_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
