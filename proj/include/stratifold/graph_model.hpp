#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stratifold {

struct WhiteVertex {
  std::string name;
  // Neumann convention: negative genus is nonorientable (-1 = RP^2).
  int genus = 0;
};

struct BlackVertex {
  std::string name;
};

struct Edge {
  std::string name;
  int white = -1;  // index into StratifoldGraph::whites
  int black = -1;  // index into StratifoldGraph::blacks
  std::int64_t label = 0;
};

enum class VertexKind { White, Black };

struct VertexRef {
  VertexKind kind = VertexKind::White;
  int index = 0;

  friend bool operator==(const VertexRef&, const VertexRef&) = default;
};

// Labelled bipartite graph of a 2-stratifold. Vertices and edges are kept
// sorted by name so that every derived object is reproducible.
class StratifoldGraph {
 public:
  StratifoldGraph() = default;
  // Validates and sorts; throws Error on any invariant violation.
  StratifoldGraph(std::vector<WhiteVertex> whites, std::vector<BlackVertex> blacks,
                  std::vector<Edge> edges);

  const std::vector<WhiteVertex>& whites() const { return whites_; }
  const std::vector<BlackVertex>& blacks() const { return blacks_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::optional<int> find_white(std::string_view name) const;
  std::optional<int> find_black(std::string_view name) const;
  std::optional<int> find_edge(std::string_view name) const;

  // Edge indices incident to a vertex, in edge-name order.
  const std::vector<int>& white_edges(int w) const { return white_edges_[w]; }
  const std::vector<int>& black_edges(int b) const { return black_edges_[b]; }

  std::size_t vertex_count() const { return whites_.size() + blacks_.size(); }
  bool is_tree() const { return edges_.size() + 1 == vertex_count(); }
  std::string vertex_name(VertexRef v) const;

  // Returns a copy with one edge label replaced; validation is re-run.
  StratifoldGraph with_label(int edge, std::int64_t label) const;

 private:
  void build_index();
  void validate() const;

  std::vector<WhiteVertex> whites_;
  std::vector<BlackVertex> blacks_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> white_edges_;
  std::vector<std::vector<int>> black_edges_;
};

// Line-based format:
//   white <name> genus <int>
//   black <name>
//   edge <name> <white-name> <black-name> <nonzero-int>
StratifoldGraph parse_graph(std::string_view text);
StratifoldGraph load_graph(const std::string& path);
std::string serialize_graph(const StratifoldGraph& g);
std::string to_dot(const StratifoldGraph& g);

struct MaximalTree {
  VertexRef basepoint;
  std::vector<bool> in_tree;  // indexed by edge
  // Parent edge for each vertex; -1 at the basepoint.
  std::vector<int> white_parent_edge;
  std::vector<int> black_parent_edge;
  std::vector<int> white_depth;
  std::vector<int> black_depth;

  std::vector<int> tree_edges() const;
  std::vector<int> non_tree_edges() const;
  int parent_edge(VertexRef v) const;
  int depth(VertexRef v) const;
};

// Breadth-first from the smallest white, neighbours in (name, edge-name) order.
MaximalTree canonical_tree(const StratifoldGraph& g);

struct NormalizedGraph {
  StratifoldGraph graph;
  std::vector<int> flipped_edges;
};

// Tree edges get label |m| (the boundary curve is re-oriented); non-tree
// labels are kept as given.
NormalizedGraph normalize_orientations(const StratifoldGraph& g, const MaximalTree& t);

// Multiset {|label(e)|} over edges at b, sorted descending.
std::vector<std::int64_t> black_partition(const StratifoldGraph& g, std::string_view black);

// Surface generator count: 2g for g > 0, -g for g < 0.
int surface_rank(int genus);

}  // namespace stratifold
