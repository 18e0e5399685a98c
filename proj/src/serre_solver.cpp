#include "stratifold/serre_solver.hpp"

#include "stratifold/errors.hpp"

namespace stratifold {

std::optional<std::int64_t> edge_membership(const GraphOfGroups& g, int edge, EdgeEnd end,
                                            const Word& r) {
  const auto& e = g.edge(edge);
  const bool at_target = end == EdgeEnd::Target;
  const GroupHandle& h = g.handle(at_target ? e.target : e.origin);
  const Word& gen = at_target ? e.target_word : e.origin_word;
  auto s = h.cyclic_membership(r, gen);
  if (s && e.order > 0) *s = mod_floor(*s, e.order);
  return s;
}

namespace {

bool is_backtrack(Step a, Step b) { return a.edge == b.edge && a.forward != b.forward; }

// e r e~ -> delta_other(a^s) when r = delta_here(a^s).
std::optional<std::pair<std::int64_t, Word>> transport(const GraphOfGroups& g, Step first,
                                                       const Word& r) {
  const auto& e = g.edge(first.edge);
  const EdgeEnd here = first.forward ? EdgeEnd::Target : EdgeEnd::Origin;
  const auto s = edge_membership(g, first.edge, here, r);
  if (!s) return std::nullopt;
  const Word& other = first.forward ? e.origin_word : e.target_word;
  return std::make_pair(*s, power(other, *s));
}

void splice_at(LoopWord& w, std::size_t i, const Word& replacement) {
  w.elements[i] = concat({w.elements[i], replacement, w.elements[i + 2]});
  w.elements.erase(w.elements.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                   w.elements.begin() + static_cast<std::ptrdiff_t>(i) + 3);
  w.steps.erase(w.steps.begin() + static_cast<std::ptrdiff_t>(i),
                w.steps.begin() + static_cast<std::ptrdiff_t>(i) + 2);
}

}  // namespace

std::optional<SpliceStep> reduce_once(const GraphOfGroups& g, LoopWord& w) {
  for (std::size_t i = 0; i + 1 < w.steps.size(); ++i) {
    if (!is_backtrack(w.steps[i], w.steps[i + 1])) continue;
    auto t = transport(g, w.steps[i], w.elements[i + 1]);
    if (!t) continue;
    SpliceStep step{i, w.steps[i].edge, w.steps[i].forward, t->first, w.steps.size()};
    splice_at(w, i, t->second);
    return step;
  }
  return std::nullopt;
}

void reduce_fully(const GraphOfGroups& g, LoopWord& w, std::vector<SpliceStep>* trace) {
  while (auto s = reduce_once(g, w)) {
    if (trace) trace->push_back(*s);
  }
}

Verdict solve(const GraphOfGroups& g, const LoopWord& w) {
  check_path(g, w);
  if (end_vertex(g, w) != w.base) throw Error(ErrorKind::InvariantViolation, "word is not a loop");
  Verdict v;
  v.initial = w;
  v.final_loop = w;
  reduce_fully(g, v.final_loop, &v.trace);
  v.reduced_length = v.final_loop.length();
  const bool trivial =
      v.reduced_length == 0 && g.handle(v.final_loop.base).wp(v.final_loop.elements[0]);
  v.kind = trivial ? VerdictKind::Trivial : VerdictKind::Nontrivial;
  return v;
}

bool replay_trace(const GraphOfGroups& g, const Verdict& v, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  LoopWord w = v.initial;
  for (const auto& s : v.trace) {
    if (s.length_before != w.length()) return fail("length mismatch before splice");
    if (s.position + 1 >= w.steps.size()) return fail("splice position out of range");
    const Step a = w.steps[s.position];
    if (!is_backtrack(a, w.steps[s.position + 1]) || a.edge != s.edge || a.forward != s.forward) {
      return fail("recorded splice is not a backtrack");
    }
    const auto& e = g.edge(s.edge);
    const int here_v = a.forward ? e.target : e.origin;
    const Word& here = a.forward ? e.target_word : e.origin_word;
    const Word& other = a.forward ? e.origin_word : e.target_word;
    if (!g.handle(here_v).wp(concat(w.elements[s.position + 1], power(here, -s.witness)))) {
      return fail("witness does not reproduce the middle element");
    }
    splice_at(w, s.position, power(other, s.witness));
    if (w.length() + 2 != s.length_before) return fail("splice did not shorten by two");
  }
  if (w.length() != v.reduced_length) return fail("final length mismatch");
  if (v.trivial()) {
    if (w.length() != 0) return fail("trivial verdict with nonempty loop");
    if (!g.handle(w.base).wp(w.elements[0])) return fail("final vertex element is not trivial");
  } else if (w.length() == 0 && g.handle(w.base).wp(w.elements[0])) {
    return fail("nontrivial verdict with trivial final element");
  }
  return true;
}

CyclicLoop cyclic_reduce_loop(const GraphOfGroups& g, const LoopWord& w) {
  CyclicLoop out;
  out.conjugator = vertex_loop(w.base, {});
  out.core = w;
  while (true) {
    reduce_fully(g, out.core);
    LoopWord& c = out.core;
    const std::size_t n = c.steps.size();
    if (n < 2 || !is_backtrack(c.steps[n - 1], c.steps[0])) break;
    // e_n (r_n r_0) e_1 with e_1 = e_n~ folds into one element.
    const Word wrap = concat(c.elements[n], c.elements[0]);
    auto t = transport(g, c.steps[n - 1], wrap);
    if (!t) break;
    LoopWord u;
    u.base = c.base;
    u.elements = {c.elements[0], Word{}};
    u.steps = {c.steps[0]};
    out.conjugator = path_concat(g, out.conjugator, u);

    LoopWord next;
    next.base = step_to(g, c.steps[0]);
    next.elements.assign(c.elements.begin() + 1, c.elements.end() - 1);
    next.steps.assign(c.steps.begin() + 1, c.steps.end() - 1);
    next.elements.back() = concat(next.elements.back(), t->second);
    out.core = std::move(next);
  }
  return out;
}

ElementOrder loop_order(const GraphOfGroups& g, const LoopWord& w) {
  const CyclicLoop c = cyclic_reduce_loop(g, w);
  if (c.core.length() > 0) return {0, OrderTag::Computed};
  return g.handle(c.core.base).elem_order(c.core.elements[0]);
}

std::optional<std::int64_t> loop_cyclic_membership(const GraphOfGroups& g, const LoopWord& x,
                                                   const LoopWord& t) {
  const CyclicLoop c = cyclic_reduce_loop(g, t);
  LoopWord xc = path_concat(g, path_concat(g, path_inverse(g, c.conjugator), x), c.conjugator);
  reduce_fully(g, xc);
  const std::size_t lr = c.core.length();
  if (lr == 0) {
    if (xc.length() != 0) return std::nullopt;
    return g.handle(xc.base).cyclic_membership(xc.elements[0], c.core.elements[0]);
  }
  if (xc.length() % lr != 0) return std::nullopt;
  const auto k = static_cast<std::int64_t>(xc.length() / lr);
  if (k == 0) {
    return solve(g, xc).trivial() ? std::optional<std::int64_t>(0) : std::nullopt;
  }
  for (std::int64_t cand : {k, -k}) {
    if (solve(g, path_concat(g, xc, loop_power(g, c.core, -cand))).trivial()) return cand;
  }
  return std::nullopt;
}

}  // namespace stratifold
