#include "stratifold/stratifold_gog.hpp"

#include <algorithm>

#include "stratifold/errors.hpp"

namespace stratifold {

std::int64_t edge_degree(std::int64_t sigma, std::int64_t label) {
  if (sigma == 0) return 0;
  return sigma / gcd64(sigma, label);
}

WhiteGroupSpec white_spec(const Stratifold& s, int w, const std::vector<std::int64_t>& sigma) {
  const auto& g = s.graph;
  const auto& p = s.presentation;
  WhiteGroupSpec spec;
  spec.genus = g.whites()[w].genus;
  for (int e : g.white_edges(w)) {
    const Edge& edge = g.edges()[e];
    spec.k.push_back(edge_degree(sigma[edge.black], edge.label));
    spec.boundary_names.push_back(p.generators()[p.boundary_gen(e)].name);
  }
  for (int i = 1; i <= p.surface_count(w); ++i) {
    spec.surface_names.push_back(p.generators()[p.surface_gen(w, i)].name);
  }
  return spec;
}

StratifoldGog build_gog_unchecked(const Stratifold& s, const std::vector<std::int64_t>& sigma) {
  const auto& g = s.graph;
  if (sigma.size() != g.blacks().size()) {
    throw Error(ErrorKind::InvariantViolation, "order assignment size does not match the graph");
  }
  StratifoldGog out;
  out.sigma = sigma;
  for (std::size_t w = 0; w < g.whites().size(); ++w) {
    out.specs.push_back(white_spec(s, static_cast<int>(w), sigma));
    out.whites.push_back(white_handle(out.specs.back()));
    out.gog.add_vertex("w." + g.whites()[w].name, out.whites.back().handle);
  }
  for (std::size_t b = 0; b < g.blacks().size(); ++b) {
    out.gog.add_vertex("b." + g.blacks()[b].name,
                       FreeProductOfCyclics::cyclic("b." + g.blacks()[b].name, sigma[b]));
  }
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const Edge& edge = g.edges()[e];
    const auto& we = g.white_edges(edge.white);
    const auto local = std::find(we.begin(), we.end(), static_cast<int>(e)) - we.begin();
    const std::int64_t k = edge_degree(sigma[edge.black], edge.label);
    out.edge_order.push_back(k);
    out.gog.add_edge({edge.name, out.white_vertex(edge.white), out.black_vertex(edge.black),
                      out.whites[edge.white].boundary_images[local], Word{{0, edge.label}}, k});
  }
  out.gog.base = out.white_vertex(s.tree.basepoint.index);
  return out;
}

std::vector<InjectivityIssue> injectivity_issues(const Stratifold& s, const StratifoldGog& g) {
  std::vector<InjectivityIssue> out;
  for (std::size_t e = 0; e < s.graph.edges().size(); ++e) {
    const auto& ge = g.gog.edge(static_cast<int>(e));
    const auto& wh = g.whites[s.graph.edges()[e].white];
    const ElementOrder o = g.gog.handle(ge.origin).elem_order(ge.origin_word);
    if (o.value != ge.order) {
      out.push_back({static_cast<int>(e), ge.order, o.value, wh.boundary_order_tag});
    }
  }
  return out;
}

StratifoldGog build_gog(const Stratifold& s, const OrderAssignment& orders) {
  if (!orders.exact()) {
    throw Error(ErrorKind::UncertifiedOrders, "black vertex orders are not certified");
  }
  StratifoldGog g = build_gog_unchecked(s, orders.sigma);
  const auto issues = injectivity_issues(s, g);
  if (!issues.empty()) {
    const auto& i = issues.front();
    throw Error(ErrorKind::InjectivityViolation,
                "edge " + s.graph.edges()[i.edge].name + ": boundary image has order " +
                    std::to_string(i.actual) + ", edge group order " + std::to_string(i.required));
  }
  return g;
}

namespace {

// Steps from the basepoint down the tree to v.
LoopWord tree_path(const Stratifold& s, const StratifoldGog& g, VertexRef v) {
  std::vector<Step> rev;
  VertexRef cur = v;
  while (!(cur == s.tree.basepoint)) {
    const int e = s.tree.parent_edge(cur);
    const Edge& edge = s.graph.edges()[e];
    // Edges run white -> black; stepping down to a black is forward.
    rev.push_back({e, cur.kind == VertexKind::Black});
    cur = cur.kind == VertexKind::Black ? VertexRef{VertexKind::White, edge.white}
                                        : VertexRef{VertexKind::Black, edge.black};
  }
  LoopWord out = vertex_loop(g.white_vertex(s.tree.basepoint.index), {});
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
    out.steps.push_back(*it);
    out.elements.push_back({});
  }
  return out;
}

LoopWord at_vertex(const Stratifold& s, const StratifoldGog& g, VertexRef v, int gog_v, Word x) {
  const LoopWord p = tree_path(s, g, v);
  return path_concat(g.gog, path_concat(g.gog, p, vertex_loop(gog_v, std::move(x))),
                     path_inverse(g.gog, p));
}

}  // namespace

LoopWord to_loop_word(const Stratifold& s, const StratifoldGog& g, const Word& w) {
  const auto& p = s.presentation;
  LoopWord out = vertex_loop(g.gog.base, {});
  for (const Letter& l : w) {
    if (l.gen < 0 || l.gen >= p.ngens()) {
      throw Error(ErrorKind::UnknownGenerator, "letter outside the natural presentation");
    }
    const Generator& gen = p.generators()[l.gen];
    LoopWord piece;
    switch (gen.role) {
      case GeneratorRole::Black:
        piece = at_vertex(s, g, {VertexKind::Black, gen.owner}, g.black_vertex(gen.owner),
                          Word{{0, l.exp}});
        break;
      case GeneratorRole::Boundary: {
        const Edge& edge = s.graph.edges()[gen.owner];
        piece = at_vertex(s, g, {VertexKind::White, edge.white}, g.white_vertex(edge.white),
                          power(g.gog.edge(gen.owner).origin_word, l.exp));
        break;
      }
      case GeneratorRole::Surface:
        piece = at_vertex(s, g, {VertexKind::White, gen.owner}, g.white_vertex(gen.owner),
                          power(g.whites[gen.owner].surface_images[gen.index - 1], l.exp));
        break;
      case GeneratorRole::Stable: {
        const Edge& edge = s.graph.edges()[gen.owner];
        LoopWord t = tree_path(s, g, {VertexKind::White, edge.white});
        t.steps.push_back({gen.owner, true});
        t.elements.push_back({});
        t = path_concat(g.gog, t, path_inverse(g.gog, tree_path(s, g, {VertexKind::Black, edge.black})));
        piece = loop_power(g.gog, t, l.exp);
        break;
      }
    }
    out = path_concat(g.gog, out, piece);
  }
  return out;
}

}  // namespace stratifold
