#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gentle/cotree.hpp"
#include "gentle/cover_regularity.hpp"
#include "gentle/encodings.hpp"
#include "gentle/error.hpp"
#include "gentle/generators.hpp"
#include "gentle/gf2_rank.hpp"
#include "gentle/graph.hpp"
#include "gentle/rational.hpp"
#include "gentle/regularity.hpp"
#include "gentle/tree_partition.hpp"

namespace gentle {

using Json = nlohmann::json;

/// Malformed input document; `pointer` locates the offending value.
class JsonInputError : public PreconditionError {
 public:
  JsonInputError(std::string pointer, const std::string& what)
      : PreconditionError((pointer.empty() ? std::string("/") : pointer) + ": " + what), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

namespace json_detail {

inline std::string at(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
inline std::string at(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

inline const Json& field(const Json& j, const std::string& ptr, const std::string& key) {
  if (!j.is_object()) throw JsonInputError(ptr, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw JsonInputError(at(ptr, key), "missing field");
  return *it;
}

inline const Json& array(const Json& j, const std::string& ptr) {
  if (!j.is_array()) throw JsonInputError(ptr, "expected an array");
  return j;
}

inline std::size_t uint(const Json& j, const std::string& ptr) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw JsonInputError(ptr, "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline Rational rational(const Json& j, const std::string& ptr) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) throw JsonInputError(ptr, "expected a rational \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const PreconditionError& e) {
    throw JsonInputError(ptr, e.what());
  }
}

inline std::vector<Vertex> vertex_list(const Json& j, const std::string& ptr) {
  std::vector<Vertex> out;
  const auto& a = array(j, ptr);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(uint(a[i], at(ptr, i)));
  return out;
}

/// Wraps library precondition failures raised while building a value from `ptr`.
template <class F>
auto guarded(const std::string& ptr, F&& f) {
  try {
    return f();
  } catch (const JsonInputError&) {
    throw;
  } catch (const PreconditionError& e) {
    throw JsonInputError(ptr, e.what());
  }
}

}  // namespace json_detail

inline Json parse_json(std::istream& in) {
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw JsonInputError("", std::string("not valid JSON: ") + e.what());
  }
}

// ---- Graph: {"n": int, "edges": [[u, v], ...]} with u < v, sorted.

inline Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return Json{{"n", g.order()}, {"edges", edges}};
}

inline Graph graph_from_json(const Json& j, const std::string& ptr = "") {
  using namespace json_detail;
  const std::size_t n = uint(field(j, ptr, "n"), at(ptr, "n"));
  const auto& edges = array(field(j, ptr, "edges"), at(ptr, "edges"));
  Graph g(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string p = at(at(ptr, "edges"), i);
    if (!edges[i].is_array() || edges[i].size() != 2) throw JsonInputError(p, "edge must be a pair");
    const std::size_t u = uint(edges[i][0], at(p, 0)), v = uint(edges[i][1], at(p, 1));
    if (u >= n || v >= n) throw JsonInputError(p, "edge endpoint outside [0, n)");
    if (u == v) throw JsonInputError(p, "loop");
    if (g.adjacent(u, v)) throw JsonInputError(p, "duplicate edge");
    g.add_edge(u, v);
  }
  return g;
}

// ---- VertexSet: [v, ...]; VertexPartition / cover: {"blocks"|"parts": [[v, ...], ...]}.

inline Json to_json(const VertexPartition& p) { return Json{{"blocks", p.blocks}}; }

inline VertexPartition partition_from_json(const Json& j, const std::string& ptr = "", const char* key = "blocks") {
  using namespace json_detail;
  const auto& blocks = array(field(j, ptr, key), at(ptr, key));
  VertexPartition p;
  for (std::size_t i = 0; i < blocks.size(); ++i) p.blocks.push_back(vertex_list(blocks[i], at(at(ptr, key), i)));
  return p;
}

inline Json to_json(const TwoCover& c) { return Json{{"parts", c.parts.blocks}}; }

inline TwoCover cover_from_json(const Json& j, const std::string& ptr = "") {
  return TwoCover{partition_from_json(j, ptr, "parts")};
}

inline Json to_json(const NiceDefectReport& r) {
  Json bad = Json::array();
  for (auto [i, k] : r.bad_pairs) bad.push_back({i, k});
  return Json{{"defect", to_string(r.defect)}, {"bad_pairs", bad}};
}

// ---- Cotree: {"m": int, "root": id, "nodes": [{"children": [...], "fn": [[0/1]]} | {"leaf_color": c}]}.

inline Json to_json(const EmbeddedCotree& c) {
  const auto& t = c.tree();
  const std::size_t m = c.colors();
  Json nodes = Json::array();
  for (Node x = 0; x < t.node_count(); ++x) {
    if (t.is_leaf(x)) {
      nodes.push_back(Json{{"leaf_color", c.color(t.leaf_index(x))}});
      continue;
    }
    Json fn = Json::array();
    for (std::size_t s = 0; s < m; ++s) {
      Json row = Json::array();
      for (std::size_t q = 0; q < m; ++q) row.push_back(fn_bit(c.fn(x), m, s, q) ? 1 : 0);
      fn.push_back(row);
    }
    std::vector<Node> kids(t.children(x).begin(), t.children(x).end());
    nodes.push_back(Json{{"children", kids}, {"fn", fn}});
  }
  return Json{{"m", m}, {"root", t.root()}, {"nodes", nodes}};
}

inline EmbeddedCotree cotree_from_json(const Json& j, const std::string& ptr = "") {
  using namespace json_detail;
  const std::size_t m = uint(field(j, ptr, "m"), at(ptr, "m"));
  if (m == 0 || m > kMaxColors) throw JsonInputError(at(ptr, "m"), "m must lie in [1, 8]");
  const std::size_t root = uint(field(j, ptr, "root"), at(ptr, "root"));
  const auto& nodes = array(field(j, ptr, "nodes"), at(ptr, "nodes"));
  std::vector<std::vector<Node>> children(nodes.size());
  std::vector<NodeFn> fns(nodes.size(), 0);
  std::vector<std::size_t> node_color(nodes.size(), kUnreachable);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string p = at(at(ptr, "nodes"), i);
    const auto& node = nodes[i];
    if (!node.is_object()) throw JsonInputError(p, "expected an object");
    if (node.contains("leaf_color")) {
      node_color[i] = uint(node["leaf_color"], at(p, "leaf_color"));
      if (node_color[i] >= m) throw JsonInputError(at(p, "leaf_color"), "colour outside [0, m)");
      continue;
    }
    children[i] = vertex_list(field(node, p, "children"), at(p, "children"));
    if (children[i].empty()) throw JsonInputError(at(p, "children"), "internal node without children");
    for (std::size_t c = 0; c < children[i].size(); ++c)
      if (children[i][c] >= nodes.size()) throw JsonInputError(at(at(p, "children"), c), "child outside the node list");
    const auto& fn = array(field(node, p, "fn"), at(p, "fn"));
    if (fn.size() != m) throw JsonInputError(at(p, "fn"), "fn must have m rows");
    for (std::size_t s = 0; s < m; ++s) {
      const auto& row = array(fn[s], at(at(p, "fn"), s));
      if (row.size() != m) throw JsonInputError(at(at(p, "fn"), s), "fn row must have m entries");
      for (std::size_t q = 0; q < m; ++q) {
        const auto bit = uint(row[q], at(at(at(p, "fn"), s), q));
        if (bit > 1) throw JsonInputError(at(at(at(p, "fn"), s), q), "fn entries are 0 or 1");
        fns[i] = fn_set(fns[i], m, s, q, bit == 1);
      }
    }
  }
  PlaneTree t = guarded(ptr, [&] { return PlaneTree(children, root); });
  std::vector<std::size_t> colors(t.leaf_count());
  for (Vertex l = 0; l < t.leaf_count(); ++l) colors[l] = node_color[t.leaf_node(l)];
  return guarded(ptr, [&] { return EmbeddedCotree(std::move(t), m, std::move(colors), std::move(fns)); });
}

// ---- Measured tree: {"root": id, "nodes": [{"children": [...]}], "measure": ["p/q", ...]?}.
// Without "measure" the leaves are weighted uniformly.

struct MeasuredTree {
  PlaneTree tree;
  TreeMeasure measure;
};

inline Json to_json(const PlaneTree& t, const TreeMeasure& mu) {
  Json nodes = Json::array();
  for (Node x = 0; x < t.node_count(); ++x) {
    std::vector<Node> kids(t.children(x).begin(), t.children(x).end());
    nodes.push_back(Json{{"children", kids}});
  }
  Json measure = Json::array();
  for (const auto& r : mu.to_rationals()) measure.push_back(to_string(r));
  return Json{{"root", t.root()}, {"nodes", nodes}, {"measure", measure}};
}

inline MeasuredTree measured_tree_from_json(const Json& j, const std::string& ptr = "") {
  using namespace json_detail;
  const std::size_t root = uint(field(j, ptr, "root"), at(ptr, "root"));
  const auto& nodes = array(field(j, ptr, "nodes"), at(ptr, "nodes"));
  std::vector<std::vector<Node>> children(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string p = at(at(ptr, "nodes"), i);
    children[i] = vertex_list(field(nodes[i], p, "children"), at(p, "children"));
    for (std::size_t c = 0; c < children[i].size(); ++c)
      if (children[i][c] >= nodes.size()) throw JsonInputError(at(at(p, "children"), c), "child outside the node list");
  }
  MeasuredTree out{guarded(ptr, [&] { return PlaneTree(children, root); }), {}};
  if (!j.contains("measure")) {
    out.measure = TreeMeasure::uniform_leaves(out.tree);
    return out;
  }
  const auto& m = array(j["measure"], at(ptr, "measure"));
  if (m.size() != nodes.size()) throw JsonInputError(at(ptr, "measure"), "one value per node required");
  std::vector<Rational> values;
  for (std::size_t i = 0; i < m.size(); ++i) values.push_back(rational(m[i], at(at(ptr, "measure"), i)));
  out.measure = guarded(at(ptr, "measure"), [&] { return TreeMeasure::from_rationals(values); });
  return out;
}

// ---- Tree partition: {"parts": [{"kind", "attachment", "first", "last", "cut", "members"}]}.

inline Json to_json(const MeasuredTreePartition& p) {
  Json parts = Json::array();
  for (const auto& part : p.parts) {
    Json o{{"kind", static_cast<int>(part.kind)}, {"attachment", part.attachment}, {"members", part.members}};
    if (part.kind == PartKind::Type3) {
      o["cut"] = part.cut;
    } else {
      o["first"] = part.first;
      o["last"] = part.last;
    }
    parts.push_back(o);
  }
  return Json{{"parts", parts}};
}

inline MeasuredTreePartition tree_partition_from_json(const Json& j, const std::string& ptr = "") {
  using namespace json_detail;
  const auto& parts = array(field(j, ptr, "parts"), at(ptr, "parts"));
  MeasuredTreePartition out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string p = at(at(ptr, "parts"), i);
    TreePart part;
    const auto kind = uint(field(parts[i], p, "kind"), at(p, "kind"));
    if (kind < 1 || kind > 3) throw JsonInputError(at(p, "kind"), "kind must be 1, 2 or 3");
    part.kind = static_cast<PartKind>(kind);
    part.attachment = uint(field(parts[i], p, "attachment"), at(p, "attachment"));
    if (part.kind == PartKind::Type3) {
      part.cut = uint(field(parts[i], p, "cut"), at(p, "cut"));
    } else {
      part.first = uint(field(parts[i], p, "first"), at(p, "first"));
      part.last = uint(field(parts[i], p, "last"), at(p, "last"));
    }
    part.members = vertex_list(field(parts[i], p, "members"), at(p, "members"));
    out.parts.push_back(std::move(part));
  }
  return out;
}

inline Json to_json(const PartitionVerdict& v) {
  Json list = Json::array();
  for (const auto& x : v.violations) {
    Json o{{"clause", x.clause}, {"detail", x.detail}};
    o["part"] = x.part == kNoNode ? Json(nullptr) : Json(x.part);
    list.push_back(o);
  }
  return Json{{"ok", v.ok}, {"violations", list}};
}

// ---- Embedding: {"arity": k, "map": {"v": [labels]}}.

inline Json to_json(const Embedding& e) {
  Json map = Json::object();
  for (Vertex v = 0; v < e.map.size(); ++v) map[std::to_string(v)] = e.map[v];
  return Json{{"arity", e.arity}, {"map", map}};
}

inline Embedding embedding_from_json(const Json& j, std::size_t n, const std::string& ptr = "") {
  using namespace json_detail;
  Embedding e;
  e.arity = uint(field(j, ptr, "arity"), at(ptr, "arity"));
  const auto& map = field(j, ptr, "map");
  if (!map.is_object()) throw JsonInputError(at(ptr, "map"), "expected an object");
  e.map.assign(n, {});
  std::vector<bool> seen(n, false);
  for (auto it = map.begin(); it != map.end(); ++it) {
    const std::string p = at(at(ptr, "map"), it.key());
    std::size_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoul(it.key(), &used);
      if (used != it.key().size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw JsonInputError(p, "key is not a vertex number");
    }
    if (v >= n) throw JsonInputError(p, "vertex outside the graph");
    const auto& a = array(it.value(), p);
    if (a.size() != e.arity) throw JsonInputError(p, "tuple length differs from arity");
    for (std::size_t i = 0; i < a.size(); ++i) e.map[v].push_back(uint(a[i], at(p, i)));
    seen[v] = true;
  }
  for (Vertex v = 0; v < n; ++v)
    if (!seen[v]) throw JsonInputError(at(ptr, "map"), "vertex " + std::to_string(v) + " has no tuple");
  return e;
}

// ---- SC decomposition: {"depth": d, "root": id, "nodes": [{"children": [...]}], "flips": [[v...], ...]}.

inline Json to_json(const SCDecomposition& d) {
  Json nodes = Json::array();
  for (Node x = 0; x < d.tree.node_count(); ++x) {
    std::vector<Node> kids(d.tree.children(x).begin(), d.tree.children(x).end());
    nodes.push_back(Json{{"children", kids}});
  }
  Json flips = Json::array();
  for (const auto& a : d.flips) flips.push_back(a.members());
  return Json{{"depth", d.depth}, {"root", d.tree.root()}, {"nodes", nodes}, {"flips", flips}};
}

inline SCDecomposition sc_from_json(const Json& j, const std::string& ptr = "") {
  using namespace json_detail;
  const auto tree = measured_tree_from_json(Json{{"root", field(j, ptr, "root")}, {"nodes", field(j, ptr, "nodes")}}, ptr);
  SCDecomposition d{tree.tree, uint(field(j, ptr, "depth"), at(ptr, "depth")), {}};
  const auto& flips = array(field(j, ptr, "flips"), at(ptr, "flips"));
  for (std::size_t i = 0; i < flips.size(); ++i) d.flips.emplace_back(vertex_list(flips[i], at(at(ptr, "flips"), i)));
  guarded(ptr, [&] {
    validate_sc(d);
    return 0;
  });
  return d;
}

// ---- Rank decomposition: {"edges": [[a, b], ...], "leaf_map": {"v": node}}.

inline Json to_json(const RankDecomposition& d) {
  Json edges = Json::array();
  for (auto [a, b] : d.edges) edges.push_back({a, b});
  Json map = Json::object();
  for (Vertex v = 0; v < d.leaf_of.size(); ++v) map[std::to_string(v)] = d.leaf_of[v];
  return Json{{"edges", edges}, {"leaf_map", map}};
}

inline RankDecomposition rank_decomposition_from_json(const Json& j, std::size_t n, const std::string& ptr = "") {
  using namespace json_detail;
  RankDecomposition d;
  const auto& edges = array(field(j, ptr, "edges"), at(ptr, "edges"));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string p = at(at(ptr, "edges"), i);
    if (!edges[i].is_array() || edges[i].size() != 2) throw JsonInputError(p, "edge must be a pair");
    d.edges.emplace_back(uint(edges[i][0], at(p, 0)), uint(edges[i][1], at(p, 1)));
  }
  d.nodes = d.edges.size() + 1;
  const auto& map = field(j, ptr, "leaf_map");
  if (!map.is_object()) throw JsonInputError(at(ptr, "leaf_map"), "expected an object");
  d.leaf_of.assign(n, kNoNode);
  for (auto it = map.begin(); it != map.end(); ++it) {
    const std::string p = at(at(ptr, "leaf_map"), it.key());
    std::size_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoul(it.key(), &used);
      if (used != it.key().size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw JsonInputError(p, "key is not a vertex number");
    }
    if (v >= n) throw JsonInputError(p, "vertex outside the graph");
    d.leaf_of[v] = uint(it.value(), p);
  }
  return d;
}

// ---- Two-covered instance: {"graph": G, "cover": {"parts"}, "pair_cotrees": [{"pair": [i, j], "cotree": C}]}.

inline Json to_json(const TwoCoveredInstance& x) {
  Json pairs = Json::array();
  for (const auto& [key, c] : x.pair_cotrees) pairs.push_back(Json{{"pair", {key.first, key.second}}, {"cotree", to_json(c)}});
  return Json{{"graph", to_json(x.graph)}, {"cover", to_json(x.cover)}, {"pair_cotrees", pairs}};
}

inline TwoCoveredInstance two_covered_from_json(const Json& j, const std::string& ptr = "") {
  using namespace json_detail;
  TwoCoveredInstance x;
  x.graph = graph_from_json(field(j, ptr, "graph"), at(ptr, "graph"));
  x.cover = cover_from_json(field(j, ptr, "cover"), at(ptr, "cover"));
  if (j.contains("pair_cotrees")) {
    const auto& pairs = array(j["pair_cotrees"], at(ptr, "pair_cotrees"));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string p = at(at(ptr, "pair_cotrees"), i);
      const auto key = vertex_list(field(pairs[i], p, "pair"), at(p, "pair"));
      if (key.size() != 2 || key[0] >= key[1]) throw JsonInputError(at(p, "pair"), "pair must be [i, j] with i < j");
      x.pair_cotrees.emplace(PairKey{key[0], key[1]}, cotree_from_json(field(pairs[i], p, "cotree"), at(p, "cotree")));
    }
  }
  return x;
}

}  // namespace gentle
