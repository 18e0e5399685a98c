#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stratifold/gog.hpp"

namespace stratifold {

enum class EdgeEnd { Origin, Target };

// s with r = delta_end(a^s), or nullopt. Finite edge groups give s in [0, k).
std::optional<std::int64_t> edge_membership(const GraphOfGroups& g, int edge, EdgeEnd end,
                                            const Word& r);

struct SpliceStep {
  std::size_t position = 0;  // index of the first of the two cancelling steps
  int edge = 0;
  bool forward = true;       // direction of the first step
  std::int64_t witness = 0;
  std::size_t length_before = 0;
};

// Splices the leftmost backtrack e r e~ whose middle element lies in the
// edge image. Returns nullopt when the loop is already reduced.
std::optional<SpliceStep> reduce_once(const GraphOfGroups& g, LoopWord& w);
void reduce_fully(const GraphOfGroups& g, LoopWord& w, std::vector<SpliceStep>* trace = nullptr);

enum class VerdictKind { Trivial, Nontrivial };

struct Verdict {
  VerdictKind kind = VerdictKind::Nontrivial;
  bool certified = false;
  std::size_t reduced_length = 0;
  std::vector<SpliceStep> trace;
  LoopWord initial;
  LoopWord final_loop;

  bool trivial() const { return kind == VerdictKind::Trivial; }
};

Verdict solve(const GraphOfGroups& g, const LoopWord& w);

// Re-applies every recorded splice to the initial loop, checking the
// backtrack shape, the witness (via handle wp), the length drop of exactly
// two, and the final answer. Independent of reduce_once's search.
bool replay_trace(const GraphOfGroups& g, const Verdict& v, std::string* why = nullptr);

struct CyclicLoop {
  LoopWord conjugator;  // path from the original base to core.base
  LoopWord core;        // cyclically reduced loop
};

// w = conjugator * core * conjugator^-1.
CyclicLoop cyclic_reduce_loop(const GraphOfGroups& g, const LoopWord& w);

// Element order and cyclic membership for loops, via l(r^k) = |k| l(r) on
// cyclically reduced cores.
ElementOrder loop_order(const GraphOfGroups& g, const LoopWord& w);
std::optional<std::int64_t> loop_cyclic_membership(const GraphOfGroups& g, const LoopWord& x,
                                                   const LoopWord& t);

}  // namespace stratifold
