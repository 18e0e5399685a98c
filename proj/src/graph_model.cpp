#include "stratifold/graph_model.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "stratifold/errors.hpp"

namespace stratifold {

namespace {

template <typename T>
std::optional<int> find_by_name(const std::vector<T>& items, std::string_view name) {
  auto it = std::lower_bound(items.begin(), items.end(), name,
                             [](const T& a, std::string_view n) { return a.name < n; });
  if (it == items.end() || it->name != name) return std::nullopt;
  return static_cast<int>(it - items.begin());
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::int64_t parse_int(const std::string& s, int line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Syntax, "expected integer, got '" + s + "'", line);
  }
  if (used != s.size()) {
    throw Error(ErrorKind::Syntax, "expected integer, got '" + s + "'", line);
  }
  return v;
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

}  // namespace

StratifoldGraph::StratifoldGraph(std::vector<WhiteVertex> whites,
                                 std::vector<BlackVertex> blacks, std::vector<Edge> edges)
    : whites_(std::move(whites)), blacks_(std::move(blacks)), edges_(std::move(edges)) {
  // Edge endpoints are indices into the caller's order; remap after sorting.
  std::vector<std::string> wnames, bnames;
  for (const auto& w : whites_) wnames.push_back(w.name);
  for (const auto& b : blacks_) bnames.push_back(b.name);
  std::sort(whites_.begin(), whites_.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  std::sort(blacks_.begin(), blacks_.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  for (auto& e : edges_) {
    if (e.white < 0 || e.white >= static_cast<int>(wnames.size()) || e.black < 0 ||
        e.black >= static_cast<int>(bnames.size())) {
      throw Error(ErrorKind::DanglingEdge, "edge '" + e.name + "' has a missing endpoint");
    }
    e.white = *find_by_name(whites_, wnames[e.white]);
    e.black = *find_by_name(blacks_, bnames[e.black]);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  validate();
  build_index();
}

void StratifoldGraph::validate() const {
  auto check_unique = [](const auto& items, const char* sort) {
    for (std::size_t i = 1; i < items.size(); ++i) {
      if (items[i].name == items[i - 1].name) {
        throw Error(ErrorKind::DuplicateName,
                    std::string("duplicate ") + sort + " name '" + items[i].name + "'");
      }
    }
  };
  check_unique(whites_, "white");
  check_unique(blacks_, "black");
  check_unique(edges_, "edge");

  if (whites_.empty()) {
    throw Error(ErrorKind::Disconnected, "graph has no white vertex (no basepoint)");
  }
  std::vector<std::int64_t> degree(blacks_.size(), 0);
  for (const auto& e : edges_) {
    if (e.label == 0) throw Error(ErrorKind::ZeroLabel, "edge '" + e.name + "' has label 0");
    degree[e.black] += std::llabs(e.label);
  }
  for (std::size_t b = 0; b < blacks_.size(); ++b) {
    if (degree[b] < 3) {
      throw Error(ErrorKind::BlackDegreeViolation,
                  "black '" + blacks_[b].name + "' has label sum " +
                      std::to_string(degree[b]) + " < 3");
    }
  }

  // Union-find over whites [0, W) and blacks [W, W+B).
  const std::size_t nw = whites_.size();
  std::vector<std::size_t> parent(nw + blacks_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges_) {
    parent[find(static_cast<std::size_t>(e.white))] = find(nw + e.black);
  }
  for (std::size_t v = 1; v < parent.size(); ++v) {
    if (find(v) != find(0)) {
      const std::string name =
          v < nw ? whites_[v].name : blacks_[v - nw].name;
      throw Error(ErrorKind::Disconnected, "vertex '" + name + "' is not connected to '" +
                                               whites_[0].name + "'");
    }
  }
}

void StratifoldGraph::build_index() {
  white_edges_.assign(whites_.size(), {});
  black_edges_.assign(blacks_.size(), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    white_edges_[edges_[i].white].push_back(static_cast<int>(i));
    black_edges_[edges_[i].black].push_back(static_cast<int>(i));
  }
}

std::optional<int> StratifoldGraph::find_white(std::string_view name) const {
  return find_by_name(whites_, name);
}
std::optional<int> StratifoldGraph::find_black(std::string_view name) const {
  return find_by_name(blacks_, name);
}
std::optional<int> StratifoldGraph::find_edge(std::string_view name) const {
  return find_by_name(edges_, name);
}

std::string StratifoldGraph::vertex_name(VertexRef v) const {
  return v.kind == VertexKind::White ? whites_[v.index].name : blacks_[v.index].name;
}

StratifoldGraph StratifoldGraph::with_label(int edge, std::int64_t label) const {
  StratifoldGraph copy = *this;
  copy.edges_.at(static_cast<std::size_t>(edge)).label = label;
  copy.validate();
  return copy;
}

StratifoldGraph parse_graph(std::string_view text) {
  struct PendingEdge {
    Edge edge;
    std::string white, black;
    int line;
  };
  std::vector<WhiteVertex> whites;
  std::vector<BlackVertex> blacks;
  std::vector<PendingEdge> pending;
  std::map<std::string, int> white_line, black_line, edge_line;

  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    const auto tok = split_ws(raw);
    if (tok.empty()) continue;

    auto need_ident = [&](const std::string& s) {
      if (!valid_identifier(s)) {
        throw Error(ErrorKind::Syntax, "invalid identifier '" + s + "'", lineno);
      }
    };
    auto claim = [&](std::map<std::string, int>& seen, const std::string& name,
                     const char* sort) {
      if (auto [it, fresh] = seen.emplace(name, lineno); !fresh) {
        throw Error(ErrorKind::DuplicateName,
                    std::string("duplicate ") + sort + " name '" + name +
                        "' (first on line " + std::to_string(it->second) + ")",
                    lineno);
      }
    };

    if (tok[0] == "white") {
      if (tok.size() != 4 || tok[2] != "genus") {
        throw Error(ErrorKind::Syntax, "expected 'white <name> genus <int>'", lineno);
      }
      need_ident(tok[1]);
      claim(white_line, tok[1], "white");
      const std::int64_t genus = parse_int(tok[3], lineno);
      if (genus < -1'000'000 || genus > 1'000'000) {
        throw Error(ErrorKind::Syntax, "genus out of range", lineno);
      }
      whites.push_back({tok[1], static_cast<int>(genus)});
    } else if (tok[0] == "black") {
      if (tok.size() != 2) throw Error(ErrorKind::Syntax, "expected 'black <name>'", lineno);
      need_ident(tok[1]);
      claim(black_line, tok[1], "black");
      blacks.push_back({tok[1]});
    } else if (tok[0] == "edge") {
      if (tok.size() != 5) {
        throw Error(ErrorKind::Syntax,
                    "expected 'edge <name> <white-name> <black-name> <int>'", lineno);
      }
      need_ident(tok[1]);
      claim(edge_line, tok[1], "edge");
      const std::int64_t label = parse_int(tok[4], lineno);
      if (label == 0) {
        throw Error(ErrorKind::ZeroLabel, "edge '" + tok[1] + "' has label 0", lineno);
      }
      pending.push_back({Edge{tok[1], -1, -1, label}, tok[2], tok[3], lineno});
    } else {
      throw Error(ErrorKind::Syntax, "unknown directive '" + tok[0] + "'", lineno);
    }
  }

  std::map<std::string, int> widx, bidx;
  for (std::size_t i = 0; i < whites.size(); ++i) widx[whites[i].name] = static_cast<int>(i);
  for (std::size_t i = 0; i < blacks.size(); ++i) bidx[blacks[i].name] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (auto& p : pending) {
    auto w = widx.find(p.white);
    auto b = bidx.find(p.black);
    if (w == widx.end()) {
      throw Error(ErrorKind::DanglingEdge, "edge '" + p.edge.name + "' references unknown white '" + p.white + "'", p.line);
    }
    if (b == bidx.end()) {
      throw Error(ErrorKind::DanglingEdge, "edge '" + p.edge.name + "' references unknown black '" + p.black + "'", p.line);
    }
    p.edge.white = w->second;
    p.edge.black = b->second;
    edges.push_back(p.edge);
  }

  try {
    return StratifoldGraph(std::move(whites), std::move(blacks), std::move(edges));
  } catch (const Error& e) {
    // Attach the declaring line where one is known.
    if (e.kind() == ErrorKind::BlackDegreeViolation || e.kind() == ErrorKind::Disconnected) {
      const std::string msg = e.what();
      for (const auto& [name, line] : black_line) {
        if (msg.find("'" + name + "'") != std::string::npos) throw Error(e.kind(), msg, line);
      }
      for (const auto& [name, line] : white_line) {
        if (msg.find("'" + name + "'") != std::string::npos) throw Error(e.kind(), msg, line);
      }
    }
    throw;
  }
}

StratifoldGraph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Syntax, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string serialize_graph(const StratifoldGraph& g) {
  std::ostringstream out;
  for (const auto& w : g.whites()) out << "white " << w.name << " genus " << w.genus << '\n';
  for (const auto& b : g.blacks()) out << "black " << b.name << '\n';
  for (const auto& e : g.edges()) {
    out << "edge " << e.name << ' ' << g.whites()[e.white].name << ' '
        << g.blacks()[e.black].name << ' ' << e.label << '\n';
  }
  return out.str();
}

std::string to_dot(const StratifoldGraph& g) {
  std::ostringstream out;
  out << "graph G {\n";
  for (const auto& w : g.whites()) {
    out << "  \"w:" << w.name << "\" [shape=circle,label=\"" << w.name << "\\ng=" << w.genus
        << "\"];\n";
  }
  for (const auto& b : g.blacks()) {
    out << "  \"b:" << b.name << "\" [shape=circle,style=filled,fillcolor=black,fontcolor=white,label=\""
        << b.name << "\"];\n";
  }
  for (const auto& e : g.edges()) {
    out << "  \"w:" << g.whites()[e.white].name << "\" -- \"b:" << g.blacks()[e.black].name
        << "\" [label=\"" << e.name << ":" << e.label << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::vector<int> MaximalTree::tree_edges() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < in_tree.size(); ++i) {
    if (in_tree[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> MaximalTree::non_tree_edges() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < in_tree.size(); ++i) {
    if (!in_tree[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

int MaximalTree::parent_edge(VertexRef v) const {
  return v.kind == VertexKind::White ? white_parent_edge[v.index] : black_parent_edge[v.index];
}

int MaximalTree::depth(VertexRef v) const {
  return v.kind == VertexKind::White ? white_depth[v.index] : black_depth[v.index];
}

MaximalTree canonical_tree(const StratifoldGraph& g) {
  MaximalTree t;
  t.basepoint = {VertexKind::White, 0};
  t.in_tree.assign(g.edges().size(), false);
  t.white_parent_edge.assign(g.whites().size(), -1);
  t.black_parent_edge.assign(g.blacks().size(), -1);
  t.white_depth.assign(g.whites().size(), -1);
  t.black_depth.assign(g.blacks().size(), -1);
  t.white_depth[0] = 0;

  std::deque<VertexRef> queue{t.basepoint};
  while (!queue.empty()) {
    const VertexRef v = queue.front();
    queue.pop_front();
    // (neighbour name, edge name) order; both lists are name-sorted.
    std::vector<std::pair<std::string, int>> nbrs;
    if (v.kind == VertexKind::White) {
      for (int e : g.white_edges(v.index)) {
        nbrs.emplace_back(g.blacks()[g.edges()[e].black].name, e);
      }
    } else {
      for (int e : g.black_edges(v.index)) {
        nbrs.emplace_back(g.whites()[g.edges()[e].white].name, e);
      }
    }
    std::stable_sort(nbrs.begin(), nbrs.end(), [&](const auto& a, const auto& b) {
      return std::tie(a.first, g.edges()[a.second].name) <
             std::tie(b.first, g.edges()[b.second].name);
    });
    const int d = t.depth(v);
    for (const auto& [name, e] : nbrs) {
      const Edge& edge = g.edges()[e];
      if (v.kind == VertexKind::White) {
        if (t.black_depth[edge.black] >= 0) continue;
        t.black_depth[edge.black] = d + 1;
        t.black_parent_edge[edge.black] = e;
        queue.push_back({VertexKind::Black, edge.black});
      } else {
        if (t.white_depth[edge.white] >= 0) continue;
        t.white_depth[edge.white] = d + 1;
        t.white_parent_edge[edge.white] = e;
        queue.push_back({VertexKind::White, edge.white});
      }
      t.in_tree[e] = true;
    }
  }
  return t;
}

NormalizedGraph normalize_orientations(const StratifoldGraph& g, const MaximalTree& t) {
  NormalizedGraph out{g, {}};
  for (int e : t.tree_edges()) {
    const std::int64_t m = g.edges()[e].label;
    if (m < 0) {
      out.graph = out.graph.with_label(e, -m);
      out.flipped_edges.push_back(e);
    }
  }
  return out;
}

std::vector<std::int64_t> black_partition(const StratifoldGraph& g, std::string_view black) {
  const auto b = g.find_black(black);
  if (!b) throw Error(ErrorKind::UnknownVertex, "unknown black '" + std::string(black) + "'");
  std::vector<std::int64_t> parts;
  for (int e : g.black_edges(*b)) parts.push_back(std::llabs(g.edges()[e].label));
  std::sort(parts.rbegin(), parts.rend());
  return parts;
}

int surface_rank(int genus) { return genus > 0 ? 2 * genus : -genus; }

}  // namespace stratifold
