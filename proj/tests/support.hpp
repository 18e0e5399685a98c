#pragma once

#include <random>
#include <string>

#include "stratifold/graph_model.hpp"
#include "stratifold/word.hpp"

namespace test_support {

using namespace stratifold;

inline std::string fixture_path(const std::string& name) {
  return std::string(STRATIFOLD_FIXTURES) + "/" + name;
}

inline StratifoldGraph fixture(const std::string& name) { return load_graph(fixture_path(name)); }

inline std::int64_t uniform(std::mt19937& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Connected bipartite graph with at most max_vertices vertices, labels in
// [-max_label, max_label] \ {0}, every black with degree sum >= 3.
inline StratifoldGraph random_graph(std::mt19937& rng, int max_vertices = 6, int max_label = 4,
                                    int max_extra_edges = 1) {
  const int nv = static_cast<int>(uniform(rng, 1, max_vertices));
  const int nb = nv == 1 ? 0 : static_cast<int>(uniform(rng, 0, nv / 2));
  // Without blacks the graph is a single closed surface.
  const int nw = nb == 0 ? 1 : nv - nb;
  std::vector<WhiteVertex> whites;
  std::vector<BlackVertex> blacks;
  std::vector<Edge> edges;
  for (int w = 0; w < nw; ++w) whites.push_back({"w" + std::to_string(w + 1), static_cast<int>(uniform(rng, -2, 2))});
  for (int b = 0; b < nb; ++b) blacks.push_back({"b" + std::to_string(b + 1)});
  auto label = [&] {
    std::int64_t m = uniform(rng, 1, max_label);
    return uniform(rng, 0, 1) ? m : -m;
  };
  auto add = [&](int w, int b) {
    edges.push_back({"e" + std::to_string(edges.size() + 10), w, b, label()});
  };
  if (nb > 0) {
    // Spanning tree: every vertex after the first attaches to an earlier
    // vertex of the other colour.
    std::vector<int> ws{0}, bs;
    int next_w = 1, next_b = 0;
    while (next_w < nw || next_b < nb) {
      const bool black = next_b < nb && (next_w >= nw || bs.empty() || uniform(rng, 0, 1));
      if (black) {
        add(ws[uniform(rng, 0, ws.size() - 1)], next_b);
        bs.push_back(next_b++);
      } else {
        add(next_w, bs[uniform(rng, 0, bs.size() - 1)]);
        ws.push_back(next_w++);
      }
    }
    const int extra = static_cast<int>(uniform(rng, 0, max_extra_edges));
    for (int i = 0; i < extra; ++i) add(static_cast<int>(uniform(rng, 0, nw - 1)), static_cast<int>(uniform(rng, 0, nb - 1)));
    for (int b = 0; b < nb; ++b) {
      for (;;) {
        std::int64_t sum = 0;
        std::vector<std::size_t> at;
        for (std::size_t e = 0; e < edges.size(); ++e) {
          if (edges[e].black == b) {
            sum += edges[e].label < 0 ? -edges[e].label : edges[e].label;
            at.push_back(e);
          }
        }
        if (sum >= 3) break;
        Edge& e = edges[at[uniform(rng, 0, at.size() - 1)]];
        if ((e.label < 0 ? -e.label : e.label) < max_label) {
          e.label += e.label < 0 ? -1 : 1;
        } else {
          add(static_cast<int>(uniform(rng, 0, nw - 1)), b);
        }
      }
    }
  }
  return StratifoldGraph(std::move(whites), std::move(blacks), std::move(edges));
}

inline Word random_word(std::mt19937& rng, int ngens, int max_len) {
  Word w;
  if (ngens == 0) return w;
  const auto n = uniform(rng, 0, max_len);
  for (std::int64_t i = 0; i < n; ++i) {
    w.push_back({static_cast<int>(uniform(rng, 0, ngens - 1)), uniform(rng, 0, 1) ? 1 : -1});
  }
  return w;
}

}  // namespace test_support
