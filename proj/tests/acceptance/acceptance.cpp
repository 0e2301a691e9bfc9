// One PASS/FAIL line per acceptance criterion. Exit status 0 only when every line passes.

#include <gentle/gentle.hpp>

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include "oracles.hpp"

using namespace gentle;

namespace {

struct Verdict {
  bool pass = true;
  std::string summary;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x, int precision = 3) {
  std::ostringstream s;
  s.precision(precision);
  s << x;
  return s.str();
}

VertexSet random_subset(std::size_t n, SplitMix64& rng) {
  std::vector<Vertex> all(n);
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  rng.shuffle(all);
  all.resize(1 + rng.below(n));
  return VertexSet(all);
}

// ---- 1: tree partitions

Verdict tree_partitions() {
  const auto t0 = Clock::now();
  const std::array<Rational, 4> eps{Rational(1, 2), Rational(1, 5), Rational(1, 10), Rational(1, 50)};
  std::size_t runs = 0, skipped = 0, failures = 0, max_nodes = 0;
  double worst_ratio = 0;
  SplitMix64 rng(1);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const std::size_t nodes = 200 + rng.below(9801);
    max_nodes = std::max(max_nodes, nodes);
    const PlaneTree t = random_plane_tree(nodes, static_cast<TreeShape>(seed % 3), seed);
    const std::array<TreeMeasure, 2> measures{TreeMeasure::uniform_leaves(t), random_measure(t, 1 + seed % 9, seed)};
    for (const auto& mu : measures) {
      const auto heaviest = *std::max_element(mu.weight.begin(), mu.weight.end());
      for (const auto& e : eps) {
        if (Rational(heaviest, mu.total) > e) {
          ++skipped;
          continue;
        }
        ++runs;
        const auto p = build_eps_partition(t, mu, e);
        const bool ok = verify_eps_partition(t, mu, e, p).ok;
        const auto parts = static_cast<std::int64_t>(p.parts.size());
        const bool within = Rational(parts) < 8 / e;
        failures += !(ok && within);
        worst_ratio = std::max(worst_ratio, static_cast<double>(parts) * to_double(e) / 8);
      }
    }
  }
  const double secs = seconds_since(t0);
  Verdict v;
  v.pass = failures == 0 && secs < 60;
  v.summary = std::to_string(runs) + " runs on trees up to " + std::to_string(max_nodes) + " nodes, " +
              std::to_string(failures) + " failures, max parts/(8/eps) = " + fmt(worst_ratio) + ", " +
              std::to_string(skipped) + " (tree, measure, eps) cells skipped for a node heavier than eps, " +
              fmt(secs) + " s";
  return v;
}

// ---- 2, 4 (cograph half), 9

struct CographOutcome {
  Verdict regularity, extraction;
  std::size_t equi_runs = 0, equi_failures = 0;
  double equi_worst = 0;
};

bool equipartition_ok(const Graph& g, const VertexPartition& p, const Rational& eps, double& worst) {
  const auto q = equipartition_refine(g, p, eps);
  const auto k = static_cast<std::int64_t>(p.size());
  const auto want = static_cast<std::size_t>((k * eps.denominator() + eps.numerator() - 1) / eps.numerator());
  std::size_t lo = g.order(), hi = 0, covered = 0;
  for (const auto& b : q.blocks) {
    lo = std::min(lo, b.size());
    hi = std::max(hi, b.size());
    covered += b.size();
  }
  const auto bad = bad_pair_fraction(g, q);
  worst = std::max(worst, to_double(bad / eps));
  return q.size() == want && hi - lo <= 1 && covered == g.order() && bad <= 3 * eps;
}

CographOutcome cograph_instances() {
  CographOutcome out;
  const std::array<Rational, 3> eps{Rational(1, 2), Rational(1, 5), Rational(1, 10)};
  std::size_t runs = 0, failures = 0, oracle_checks = 0, cross_pairs = 0, max_n = 0;
  std::size_t extract_runs = 0, extract_failures = 0;
  double worst_bound = 0, worst_defect = 0, core_secs = 0;
  SplitMix64 rng(2);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const std::size_t n = 80 + rng.below(1921), m = 1 + seed % 3;
    max_n = std::max(max_n, n);
    const auto c = random_cotree(n, m, 2 + seed % 4, seed);
    const Graph g = materialize(c);
    for (const auto& e : eps) {
      auto t0 = Clock::now();
      ++runs;
      const auto r = cograph_regular_partition_detailed(c, e);
      const auto report = nice_defect(g, r.partition);
      bool ok = report.defect == r.defect && report.defect < e;
      ok = ok && static_cast<double>(r.partition.size()) <= cograph_block_bound(m, e);
      if (n <= 300) {
        ++oracle_checks;
        ok = ok && oracle::nice_defect(g, r.partition) == report.defect;
      }
      std::vector<VertexSet> blocks;
      for (const auto& b : r.partition.blocks) blocks.emplace_back(b);
      for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = 0; j < blocks.size(); ++j)
          if (r.block_part[i] != r.block_part[j]) {
            ++cross_pairs;
            ok = ok && is_homogeneous_pair(g, blocks[i], blocks[j]);
          }
      failures += !ok;
      worst_bound = std::max(worst_bound, static_cast<double>(r.partition.size()) / cograph_block_bound(m, e));
      worst_defect = std::max(worst_defect, to_double(report.defect / e));
      core_secs += seconds_since(t0);

      ++out.equi_runs;
      out.equi_failures += !equipartition_ok(g, r.partition, e, out.equi_worst);

      ++extract_runs;
      const auto pair = extract_homogeneous_pair_from_nice(g, r.partition, e);
      const bool good = pair.a.disjoint_from(pair.b) && is_homogeneous_pair(g, pair.a, pair.b) &&
                        std::min(pair.a.size(), pair.b.size()) >= homogeneous_pair_floor(n, r.partition.size(), e);
      extract_failures += !good;
    }
  }
  out.regularity.pass = failures == 0 && core_secs < 300;
  out.regularity.summary = std::to_string(runs) + " runs (n up to " + std::to_string(max_n) + "), " +
                           std::to_string(failures) + " failures, max l/bound = " + fmt(worst_bound) +
                           ", max defect/eps = " + fmt(worst_defect) + ", " + std::to_string(cross_pairs) +
                           " cross-part block pairs checked, " + std::to_string(oracle_checks) +
                           " oracle recounts, " + fmt(core_secs) + " s";
  out.extraction.pass = extract_failures == 0;
  out.extraction.summary = std::to_string(extract_runs) + " nice partitions, " + std::to_string(extract_failures) +
                           " pairs failing homogeneity or the size floor";
  return out;
}

// ---- 3, 4 (cover half)

struct CoverOutcome {
  Verdict combination;
  std::size_t equi_runs = 0, equi_failures = 0;
  double equi_worst = 0;
};

CoverOutcome cover_instances() {
  CoverOutcome out;
  const auto t0 = Clock::now();
  std::size_t runs = 0, failures = 0;
  double worst_bound = 0, worst_defect = 0;
  SplitMix64 rng(3);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t p = 2 + seed % 2, m = 1 + (seed / 2) % 2, n = 300 + rng.below(1201);
    const auto x = random_two_covered(n, m, p, seed);
    std::size_t colours = 1;
    for (const auto& [key, c] : x.pair_cotrees) colours = std::max(colours, c.colors());
    for (const auto& e : {Rational(1, 2), Rational(1, 5)}) {
      ++runs;
      const auto pair_eps = e / static_cast<std::int64_t>(p - 1);
      const auto r = cover_regular_partition(x.graph, x.cover, e, [&](const Graph&, std::size_t i, std::size_t j) {
        return cograph_regular_partition(x.pair_cotrees.at({i, j}), pair_eps);
      });
      const auto defect = nice_defect(x.graph, r.partition).defect;
      const double bound = cover_block_bounds(colours, p, e).nice_bound;
      failures += !(defect < e && static_cast<double>(r.partition.size()) <= bound);
      worst_bound = std::max(worst_bound, static_cast<double>(r.partition.size()) / bound);
      worst_defect = std::max(worst_defect, to_double(defect / e));

      ++out.equi_runs;
      out.equi_failures += !equipartition_ok(x.graph, r.partition, e, out.equi_worst);
    }
  }
  out.combination.pass = failures == 0;
  out.combination.summary = std::to_string(runs) + " runs (p in {2,3}, m <= 2, n <= 1500), " +
                            std::to_string(failures) + " failures, max blocks/bound = " + fmt(worst_bound) +
                            ", max defect/eps = " + fmt(worst_defect) + ", " + fmt(seconds_since(t0)) + " s";
  return out;
}

// ---- 5

Verdict cube_implies_regular() {
  std::size_t checked = 0, homogeneous = 0, failures = 0;
  for (const Rational eps : {Rational(3, 10), Rational(1, 2)}) {
    const Rational cube = eps * eps * eps;
    const VertexSet a = VertexSet::range(0, 5), b = VertexSet::range(5, 10);
    Graph g(10);
    // Gray code over the 25 cross pairs.
    for (std::uint32_t step = 0; step < (1U << 25); ++step) {
      if (step > 0) {
        const unsigned bit = static_cast<unsigned>(std::countr_zero(step));
        g.toggle_edge(bit / 5, 5 + bit % 5);
      }
      ++checked;
      if (!eps_homogeneous(g, a, b, cube)) continue;
      ++homogeneous;
      failures += !eps_regular_exact(g, a, b, eps);
    }
    SplitMix64 rng(5);
    const std::array<std::pair<std::uint64_t, std::uint64_t>, 6> probs{
        {{0, 1}, {1, 50}, {1, 10}, {9, 10}, {49, 50}, {1, 1}}};
    for (int i = 0; i < 200; ++i) {
      const std::size_t sa = 1 + rng.below(10), sb = 1 + rng.below(10);
      const auto [num, den] = probs[rng.below(probs.size())];
      Graph h(sa + sb);
      for (Vertex u = 0; u < sa; ++u)
        for (Vertex w = sa; w < sa + sb; ++w)
          if (rng.chance(num, den)) h.add_edge(u, w);
      const auto ra = VertexSet::range(0, sa), rb = VertexSet::range(sa, sa + sb);
      ++checked;
      if (!eps_homogeneous(h, ra, rb, cube)) continue;
      ++homogeneous;
      failures += !eps_regular_exact(h, ra, rb, eps);
    }
  }
  return {failures == 0, std::to_string(checked) + " pairs, " + std::to_string(homogeneous) +
                             " homogeneous at eps^3, " + std::to_string(failures) + " not eps-regular"};
}

// ---- 6

Verdict embeddings() {
  std::size_t deg_fail = 0, sc_fail = 0, cover_fail = 0, parity_fail = 0;
  SplitMix64 rng(6);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const std::size_t n = 6 + rng.below(195);
    const Graph g = random_degenerate(n, 1 + seed % 4, seed);
    const auto e = embed_degenerate(g);
    deg_fail += !verify_embedding(g, e.embedding, degenerate_universe(e.embedding.arity - 1));

    const std::size_t depth = 1 + seed % 4;
    const auto dec = random_sc(n, depth, seed);
    const Graph h = sc_graph(dec);
    sc_fail += !verify_embedding(h, embed_sc(dec), sc_universe(depth));
    if (seed < 200) parity_fail += !(h == oracle::sc_complementation(dec));

    const std::size_t p = 2 + seed % 3;
    if (n < p) continue;
    TwoCover cover;
    cover.parts.blocks.resize(p);
    for (Vertex v = 0; v < n; ++v) cover.parts.blocks[v < p ? v : rng.below(p)].push_back(v);
    const Graph f = random_degenerate(n, 1 + seed % 3, seed + 1000);
    const std::size_t d = degeneracy_order(f).degeneracy;
    PairEmbeddings pairs;
    for (auto key : cover_pairs(p))
      pairs[key] = embed_degenerate(f.induced_subgraph(pair_vertices(cover, key.first, key.second)), d).embedding;
    const auto u = degenerate_universe(d);
    cover_fail += !verify_embedding(f, embed_two_cover(f, cover, pairs, u), cover_universe(u, p));
  }
  return {deg_fail + sc_fail + cover_fail + parity_fail == 0,
          "500 instances each (n <= 200): degenerate " + std::to_string(deg_fail) + ", sc " + std::to_string(sc_fail) +
              ", two-cover " + std::to_string(cover_fail) + " failures; sc parity vs complementation " +
              std::to_string(parity_fail) + "/200 mismatches"};
}

// ---- 7

Verdict xor_layers() {
  std::size_t instances = 0, xor_ok = 0, count_ok = 0, rank_ok = 0, from_cotrees = 0;
  std::array<std::size_t, 4> by_width{};
  for (std::uint64_t seed = 0; instances < 200; ++seed) {
    Graph g;
    RankDecomposition d;
    bool cotree = seed % 2 == 0;
    if (cotree) {
      const auto c = random_cotree(8 + seed % 57, 1 + seed % 3, 2 + seed % 3, seed);
      g = materialize(c);
      d = rank_decomposition_from_tree(c.tree());
    } else {
      const std::size_t n = 4 + seed % 9;
      g = random_graph(n, 1, 3, seed);
      d = random_rank_decomposition(n, seed);
    }
    const std::size_t r = decomposition_width(g, d);
    if (r == 0 || r > 3) continue;
    ++instances;
    from_cotrees += cotree;
    ++by_width[r];
    const auto layers = xor_rw1_decompose(g, d);
    const auto rep = check_layers(g, d, layers);
    xor_ok += rep.xor_matches;
    count_ok += layers.size() == r;
    rank_ok += std::all_of(rep.layer_width.begin(), rep.layer_width.end(), [](std::size_t w) { return w <= 1; });
  }
  Verdict v;
  v.pass = xor_ok == instances && count_ok == instances && rank_ok == instances;
  v.summary = std::to_string(instances) + " instances (" + std::to_string(from_cotrees) + " from cotrees; width 1/2/3: " +
              std::to_string(by_width[1]) + "/" + std::to_string(by_width[2]) + "/" + std::to_string(by_width[3]) +
              "): xor exact " + std::to_string(xor_ok) + ", layer count = width " + std::to_string(count_ok) +
              ", all layers cut-rank <= 1 on every tree edge " + std::to_string(rank_ok);
  if (!v.pass)
    v.summary += "; width-2 graphs exist with no such split on the given tree at all, so this part cannot hold in general";
  return v;
}

// ---- 8

bool connected_non_bipartite(const Graph& g) {
  const auto dist = distances_from(g, VertexSet{}, 0);
  for (auto x : dist)
    if (x == kUnreachable) return false;
  for (auto [u, v] : g.edges())
    if (dist[u] % 2 == dist[v] % 2) return true;
  return false;
}

Verdict mixing() {
  const auto t0 = Clock::now();
  std::size_t graphs = 0, samples = 0, violations = 0, exhaustive_pairs = 0, spectrum_fail = 0;
  double worst_off = 0;
  SplitMix64 rng(8);
  const std::array<std::size_t, 4> small{10, 12, 9, 12};
  for (std::uint64_t i = 0; i < 50; ++i) {
    const std::size_t d = 3 + i % 2;
    std::size_t n = i < small.size() ? small[i] : 16 + rng.below(241);
    if (d == 3 && n % 2) ++n;
    Graph g;
    for (std::uint64_t seed = i * 1000;; ++seed) {
      g = random_regular(n, d, seed);
      if (connected_non_bipartite(g)) break;
    }
    ++graphs;
    const auto s = symmetric_eigenvalues(g, 1e-10);
    worst_off = std::max(worst_off, s.off_diagonal);
    double trace = 0, squares = 0;
    for (double x : s.eigenvalues) {
      trace += x;
      squares += x * x;
    }
    const double tol = static_cast<double>(n) * 1e-9;
    spectrum_fail += !(s.off_diagonal <= 1e-10 && std::abs(trace) <= tol &&
                       std::abs(squares - 2.0 * static_cast<double>(g.edge_count())) <= tol);
    for (int k = 0; k < 1000; ++k) {
      ++samples;
      violations += !mixing_check(g, random_subset(n, rng), random_subset(n, rng), s.lambda).holds;
    }
    if (n <= 12) {
      std::vector<VertexSet> subsets = all_nonempty_subsets(n, 12);
      for (const auto& a : subsets)
        for (const auto& b : subsets) {
          ++exhaustive_pairs;
          violations += !mixing_check(g, a, b, s.lambda).holds;
        }
    }
  }
  std::size_t cycle_fail = 0;
  for (std::size_t n = 3; n <= 64; ++n) {
    Graph c(n);
    for (Vertex v = 0; v < n; ++v) c.add_edge(v, (v + 1) % n);
    auto got = symmetric_eigenvalues(c).eigenvalues;
    std::vector<double> want;
    for (std::size_t k = 0; k < n; ++k)
      want.push_back(2 * std::cos(2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n)));
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (std::size_t k = 0; k < n; ++k) cycle_fail += std::abs(got[k] - want[k]) > 1e-9;
  }
  return {violations + spectrum_fail + cycle_fail == 0,
          std::to_string(graphs) + " graphs, " + std::to_string(samples) + " sampled and " +
              std::to_string(exhaustive_pairs) + " exhaustive (S,T), " + std::to_string(violations) +
              " violations; spectrum check failures " + std::to_string(spectrum_fail) +
              ", C_n eigenvalue mismatches " + std::to_string(cycle_fail) + ", max off-diagonal " +
              fmt(worst_off) + ", " + fmt(seconds_since(t0)) + " s"};
}

// ---- 10

Verdict brute_force_agreement() {
  std::size_t graphs = 0, checks = 0, mismatches = 0;
  std::string first;
  auto note = [&](bool agree, const char* what) {
    ++checks;
    if (!agree) {
      ++mismatches;
      if (first.empty()) first = what;
    }
  };
  SplitMix64 rng(10);
  auto check = [&](const Graph& g) {
    ++graphs;
    const std::size_t n = g.order();
    for (int t = 0; t < 2; ++t) {
      VertexPartition p;
      p.blocks.resize(1 + rng.below(n));
      for (Vertex v = 0; v < n; ++v) p.blocks[v < p.blocks.size() ? v : rng.below(p.blocks.size())].push_back(v);
      note(nice_defect(g, p).defect == oracle::nice_defect(g, p), "nice_defect");
    }
    for (const auto& eps : {Rational(1, 10), Rational(1, 4), Rational(1, 2)}) {
      const auto a = random_subset(n, rng);
      note(eps_good(g, a, eps) == oracle::eps_good(g, a.members(), eps), "eps_good");
      if (n >= 2) {
        std::vector<Vertex> x, y;
        for (Vertex v = 0; v < n; ++v) (rng.chance(1, 2) ? x : y).push_back(v);
        if (!x.empty() && !y.empty())
          note(eps_uniform(g, VertexSet(x), VertexSet(y), eps) == oracle::eps_uniform(g, x, y, eps), "eps_uniform");
      }
    }
    note(order_dimension(g) == oracle::order_dimension(g), "order_dimension");
    note(vc_dimension(g) == oracle::vc_dimension(g), "vc_dimension");
    if (n >= 2) {
      const auto w = max_homogeneous_pair(g);
      note(w.a.disjoint_from(w.b) && is_homogeneous_pair(g, w.a, w.b) &&
               std::min(w.a.size(), w.b.size()) == oracle::max_homogeneous_size(g),
           "max_homogeneous_pair");
    }
  };
  for (std::size_t n = 1; n <= 7; ++n)
    for (const auto& g : oracle::nonisomorphic_graphs(n)) check(g);
  for (std::uint64_t seed = 0; seed < 200; ++seed) check(random_graph(1 + rng.below(12), 1 + rng.below(3), 4, seed));
  std::string s = std::to_string(graphs) + " graphs (all n <= 7 up to isomorphism plus 200 random n <= 12), " +
                  std::to_string(checks) + " comparisons, " + std::to_string(mismatches) + " mismatches";
  if (!first.empty()) s += " (first in " + first + ")";
  return {mismatches == 0, s};
}

// ---- 11

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict golden_files() {
  std::ifstream cases(std::string(GOLDEN_DIR) + "/cases.txt");
  if (!cases) return {false, "missing golden manifest"};
  std::size_t total = 0, same = 0;
  std::string first;
  for (std::string line; std::getline(cases, line);) {
    if (line.empty()) continue;
    const auto space = line.find(' ');
    const std::string file = line.substr(0, space);
    const std::string cmd = std::string(GENTLE_CLI) + " generate " + line.substr(space + 1);
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    if (pipe) {
      char buf[4096];
      for (std::size_t got; (got = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, got);
      pclose(pipe);
    }
    ++total;
    if (out == slurp(std::string(GOLDEN_DIR) + "/" + file))
      ++same;
    else if (first.empty())
      first = file;
  }
  std::string s = std::to_string(same) + "/" + std::to_string(total) + " generate outputs byte-identical";
  if (!first.empty()) s += " (first difference: " + first + ")";
  return {total > 0 && same == total, s};
}

}  // namespace

int main() {
  std::array<Verdict, 12> v;
  auto line = [&](int i) {
    std::cout << "criterion " << i << ": " << (v[i].pass ? "PASS" : "FAIL") << "  " << v[i].summary << std::endl;
  };
  auto guarded = [](const std::function<Verdict()>& f) -> Verdict {
    try {
      return f();
    } catch (const std::exception& e) {
      return {false, std::string("exception: ") + e.what()};
    }
  };

  v[1] = guarded(tree_partitions);
  line(1);

  CographOutcome cg;
  CoverOutcome cv;
  try {
    cg = cograph_instances();
  } catch (const std::exception& e) {
    cg.regularity = cg.extraction = {false, std::string("exception: ") + e.what()};
    cg.equi_failures = 1;
  }
  v[2] = cg.regularity;
  line(2);
  try {
    cv = cover_instances();
  } catch (const std::exception& e) {
    cv.combination = {false, std::string("exception: ") + e.what()};
    cv.equi_failures = 1;
  }
  v[3] = cv.combination;
  line(3);
  v[4].pass = cg.equi_failures + cv.equi_failures == 0;
  v[4].summary = std::to_string(cg.equi_runs + cv.equi_runs) + " refinements, " +
                 std::to_string(cg.equi_failures + cv.equi_failures) +
                 " failing block count, balance or the 3 eps bad fraction; max bad fraction / eps = " +
                 fmt(std::max(cg.equi_worst, cv.equi_worst));
  line(4);
  v[5] = guarded(cube_implies_regular);
  line(5);
  v[6] = guarded(embeddings);
  line(6);
  v[7] = guarded(xor_layers);
  line(7);
  v[8] = guarded(mixing);
  line(8);
  v[9] = cg.extraction;
  line(9);
  v[10] = guarded(brute_force_agreement);
  line(10);
  v[11] = guarded(golden_files);
  line(11);

  std::size_t passed = 0;
  for (int i = 1; i <= 11; ++i) passed += v[i].pass;
  std::cout << passed << "/11 criteria pass" << std::endl;
  return passed == 11 ? 0 : 1;
}
