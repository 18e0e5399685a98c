#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stratifold/pipeline.hpp"

namespace stratifold {

// Every pair of natural generators commutes. Throws Undetermined when some
// commutator cannot be decided.
bool is_abelian(const Solver& s);

// Edges at b whose white end is a terminal genus-0 white.
std::vector<int> zero_terminal_edges(const StratifoldGraph& g, int black);

// Smallest divisor d of the gcd of the 0-terminal labels at b with b^d = 1.
// Throws NotZeroTerminal when b has no such edge.
std::int64_t zero_terminal_order(const Solver& s, int black);

// Necessary conditions for simple connectivity: a tree, all whites genus 0,
// every terminal vertex white. Returns the first failed condition.
std::optional<std::string> prune_screen(const StratifoldGraph& g);

struct PruneStep {
  std::string black;
  std::string white;
  std::int64_t order = 0;
  std::string action;  // "deleted" or "stop"
};

struct PruneReport {
  bool applicable = true;
  std::string failed_condition;
  bool success = false;
  std::vector<PruneStep> steps;
  std::vector<StratifoldGraph> components;  // what is left when pruning ends
};

PruneReport prune(const StratifoldGraph& g, const Budget& budget = {});

// Connected pieces of a graph given as kept vertices and edges.
std::vector<StratifoldGraph> components(const StratifoldGraph& g, const std::vector<bool>& keep_white,
                                        const std::vector<bool>& keep_black);

bool is_simply_connected(const Solver& s);

// n_w - n_b when simply connected.
std::optional<std::int64_t> wedge_check(const Solver& s);

}  // namespace stratifold
