#include "stratifold/decisions.hpp"

#include <algorithm>
#include <numeric>

#include "stratifold/errors.hpp"

namespace stratifold {

namespace {

bool decide_trivial(const Solver& s, const Word& w) {
  const WordResult r = s.solve(w);
  if (r.answer == Answer::Undetermined) {
    throw Error(ErrorKind::Undetermined, r.reason);
  }
  return r.answer == Answer::Trivial;
}

}  // namespace

bool is_abelian(const Solver& s) {
  const int n = s.presentation().ngens();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!decide_trivial(s, commutator(Word{{i, 1}}, Word{{j, 1}}))) return false;
    }
  }
  return true;
}

std::vector<int> zero_terminal_edges(const StratifoldGraph& g, int black) {
  std::vector<int> out;
  for (int e : g.black_edges(black)) {
    const int w = g.edges()[e].white;
    if (g.whites()[w].genus == 0 && g.white_edges(w).size() == 1) out.push_back(e);
  }
  return out;
}

std::int64_t zero_terminal_order(const Solver& s, int black) {
  const auto& g = s.stratifold().graph;
  const auto edges = zero_terminal_edges(g, black);
  if (edges.empty()) {
    throw Error(ErrorKind::NotZeroTerminal, "black " + g.blacks()[black].name + " has no 0-terminal edge");
  }
  std::int64_t m = 0;
  for (int e : edges) m = gcd64(m, g.edges()[e].label);
  const int gen = s.presentation().black_gen(black);
  for (std::int64_t d = 1; d <= m; ++d) {
    if (m % d == 0 && decide_trivial(s, Word{{gen, d}})) return d;
  }
  throw Error(ErrorKind::InvariantViolation, "disk relation b^" + std::to_string(m) + " did not solve trivial");
}

std::optional<std::string> prune_screen(const StratifoldGraph& g) {
  if (!g.is_tree()) return "graph is not a tree";
  for (const auto& w : g.whites()) {
    if (w.genus != 0) return "white " + w.name + " has genus " + std::to_string(w.genus);
  }
  for (std::size_t b = 0; b < g.blacks().size(); ++b) {
    if (g.black_edges(static_cast<int>(b)).size() == 1) return "black " + g.blacks()[b].name + " is terminal";
  }
  return std::nullopt;
}

std::vector<StratifoldGraph> components(const StratifoldGraph& g, const std::vector<bool>& keep_white,
                                        const std::vector<bool>& keep_black) {
  const std::size_t nw = g.whites().size();
  std::vector<int> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto kept = [&](const Edge& e) { return keep_white[e.white] && keep_black[e.black]; };
  for (const auto& e : g.edges()) {
    if (kept(e)) parent[find(e.white)] = find(static_cast<int>(nw) + e.black);
  }
  std::vector<StratifoldGraph> out;
  std::vector<bool> done(g.vertex_count(), false);
  for (std::size_t w = 0; w < nw; ++w) {
    if (!keep_white[w] || done[find(static_cast<int>(w))]) continue;
    const int root = find(static_cast<int>(w));
    done[root] = true;
    std::vector<WhiteVertex> whites;
    std::vector<BlackVertex> blacks;
    std::vector<Edge> edges;
    std::vector<int> wmap(nw, -1), bmap(g.blacks().size(), -1);
    for (std::size_t v = 0; v < nw; ++v) {
      if (keep_white[v] && find(static_cast<int>(v)) == root) {
        wmap[v] = static_cast<int>(whites.size());
        whites.push_back(g.whites()[v]);
      }
    }
    for (std::size_t b = 0; b < g.blacks().size(); ++b) {
      if (keep_black[b] && find(static_cast<int>(nw + b)) == root) {
        bmap[b] = static_cast<int>(blacks.size());
        blacks.push_back(g.blacks()[b]);
      }
    }
    for (const auto& e : g.edges()) {
      if (kept(e) && wmap[e.white] >= 0) edges.push_back({e.name, wmap[e.white], bmap[e.black], e.label});
    }
    out.emplace_back(std::move(whites), std::move(blacks), std::move(edges));
  }
  return out;
}

PruneReport prune(const StratifoldGraph& g, const Budget& budget) {
  PruneReport report;
  if (auto why = prune_screen(g)) {
    report.applicable = false;
    report.failed_condition = *why;
    return report;
  }
  std::vector<StratifoldGraph> work{g};
  while (!work.empty()) {
    StratifoldGraph cur = std::move(work.back());
    work.pop_back();
    if (cur.edges().empty()) {
      report.components.push_back(std::move(cur));
      continue;
    }
    int black = -1;
    std::vector<int> edges;
    for (std::size_t b = 0; b < cur.blacks().size() && black < 0; ++b) {
      edges = zero_terminal_edges(cur, static_cast<int>(b));
      if (!edges.empty()) black = static_cast<int>(b);
    }
    if (black < 0) {
      throw Error(ErrorKind::InvariantViolation, "screened tree without a 0-terminal edge");
    }
    const Solver s(cur, budget);
    const std::int64_t o = zero_terminal_order(s, black);
    const int w = cur.edges()[edges.front()].white;
    PruneStep step{cur.blacks()[black].name, cur.whites()[w].name, o, o == 1 ? "deleted" : "stop"};
    report.steps.push_back(step);
    if (o != 1) {
      report.success = false;
      report.components.push_back(std::move(cur));
      for (auto& rest : work) report.components.push_back(std::move(rest));
      return report;
    }
    std::vector<bool> keep_white(cur.whites().size(), true);
    std::vector<bool> keep_black(cur.blacks().size(), true);
    keep_white[w] = false;
    keep_black[black] = false;
    auto parts = components(cur, keep_white, keep_black);
    // Reverse so the work stack visits components in name order.
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) work.push_back(std::move(*it));
  }
  report.success = true;
  return report;
}

bool is_simply_connected(const Solver& s) {
  const auto& g = s.stratifold().graph;
  if (prune_screen(g)) return false;
  bool sc = s.snf().diagonal.empty() || std::all_of(s.snf().diagonal.begin(), s.snf().diagonal.end(),
                                                   [](std::int64_t d) { return d == 1; });
  sc = sc && s.snf().free_rank == 0;
  for (int i = 0; sc && i < s.presentation().ngens(); ++i) {
    sc = decide_trivial(s, Word{{i, 1}});
  }
  const PruneReport pr = prune(s.stratifold().input, s.budget());
  if (pr.success != sc) {
    throw Error(ErrorKind::InvariantViolation, "pruning disagrees with the generator check");
  }
  return sc;
}

std::optional<std::int64_t> wedge_check(const Solver& s) {
  if (!is_simply_connected(s)) return std::nullopt;
  const auto& g = s.stratifold().graph;
  return static_cast<std::int64_t>(g.whites().size()) - static_cast<std::int64_t>(g.blacks().size());
}

}  // namespace stratifold
