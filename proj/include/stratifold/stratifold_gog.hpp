#pragma once

#include <cstdint>
#include <vector>

#include "stratifold/certificates.hpp"
#include "stratifold/fgroup_handles.hpp"
#include "stratifold/gog.hpp"
#include "stratifold/presentation.hpp"

namespace stratifold {

// k = sigma / gcd(sigma, |m|); 0 (infinite) when sigma == 0.
std::int64_t edge_degree(std::int64_t sigma, std::int64_t label);

// Boundary orders of white w under sigma, boundaries in edge-name order.
WhiteGroupSpec white_spec(const Stratifold& s, int w, const std::vector<std::int64_t>& sigma);

// Graph of groups of the hat space: vertices are the whites (in order) then
// the blacks; graph edge e becomes GoG edge e with origin at its white.
struct StratifoldGog {
  GraphOfGroups gog;
  std::vector<std::int64_t> sigma;
  std::vector<std::int64_t> edge_order;
  std::vector<WhiteGroupSpec> specs;
  std::vector<WhiteHandle> whites;

  int white_vertex(int w) const { return w; }
  int black_vertex(int b) const { return static_cast<int>(whites.size()) + b; }
};

struct InjectivityIssue {
  int edge = 0;
  std::int64_t required = 0;
  std::int64_t actual = 0;
  OrderTag tag = OrderTag::Computed;
};

StratifoldGog build_gog_unchecked(const Stratifold& s, const std::vector<std::int64_t>& sigma);
// Throws UncertifiedOrders unless the assignment is Exact, and
// InjectivityViolation when some boundary image has the wrong order.
StratifoldGog build_gog(const Stratifold& s, const OrderAssignment& orders);

std::vector<InjectivityIssue> injectivity_issues(const Stratifold& s, const StratifoldGog& g);

// Translates a word over the natural presentation into a loop at the tree
// basepoint, with tree paths as scaffolding.
LoopWord to_loop_word(const Stratifold& s, const StratifoldGog& g, const Word& w);

}  // namespace stratifold
