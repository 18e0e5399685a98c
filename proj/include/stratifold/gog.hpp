#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stratifold/group_handle.hpp"

namespace stratifold {

// Edge group is cyclic <a> of the given order (0 = infinite), with
//   delta_o(a) = origin_word in G_origin,  delta_t(a) = target_word in G_target,
// and in the fundamental group  e delta_t(a) e^-1 = delta_o(a).
struct GogEdge {
  std::string name;
  int origin = 0;
  int target = 0;
  Word origin_word;
  Word target_word;
  std::int64_t order = 0;
};

struct GogVertex {
  std::string name;
  HandlePtr handle;
};

class GraphOfGroups {
 public:
  int add_vertex(std::string name, HandlePtr handle);
  int add_edge(GogEdge edge);

  const std::vector<GogVertex>& vertices() const { return vertices_; }
  const std::vector<GogEdge>& edges() const { return edges_; }
  const GroupHandle& handle(int v) const { return *vertices_[v].handle; }
  const GogEdge& edge(int e) const { return edges_[e]; }

  int base = 0;

 private:
  std::vector<GogVertex> vertices_;
  std::vector<GogEdge> edges_;
};

struct Step {
  int edge = 0;
  bool forward = true;  // origin -> target

  friend bool operator==(const Step&, const Step&) = default;
};

// r_0 e_1 r_1 ... e_n r_n starting at `base`; r_i lives in the handle of the
// vertex reached after e_i. A loop when it ends where it starts; also used
// for open paths (conjugators).
struct LoopWord {
  int base = 0;
  std::vector<Word> elements{Word{}};
  std::vector<Step> steps;

  std::size_t length() const { return steps.size(); }
};

int step_from(const GraphOfGroups& g, Step s);
int step_to(const GraphOfGroups& g, Step s);
int end_vertex(const GraphOfGroups& g, const LoopWord& w);
// Vertex carrying element i.
int element_vertex(const GraphOfGroups& g, const LoopWord& w, std::size_t i);

LoopWord vertex_loop(int v, Word element);
LoopWord path_concat(const GraphOfGroups& g, const LoopWord& a, const LoopWord& b);
LoopWord path_inverse(const GraphOfGroups& g, const LoopWord& w);
LoopWord loop_power(const GraphOfGroups& g, const LoopWord& w, std::int64_t k);
// Throws InvariantViolation when steps are not consecutive.
void check_path(const GraphOfGroups& g, const LoopWord& w);
std::string format_loop(const GraphOfGroups& g, const LoopWord& w);

}  // namespace stratifold
