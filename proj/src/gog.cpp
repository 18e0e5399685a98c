#include "stratifold/gog.hpp"

#include <sstream>

#include "stratifold/errors.hpp"

namespace stratifold {

int GraphOfGroups::add_vertex(std::string name, HandlePtr handle) {
  vertices_.push_back({std::move(name), std::move(handle)});
  return static_cast<int>(vertices_.size()) - 1;
}

int GraphOfGroups::add_edge(GogEdge edge) {
  const int nv = static_cast<int>(vertices_.size());
  if (edge.origin < 0 || edge.origin >= nv || edge.target < 0 || edge.target >= nv) {
    throw Error(ErrorKind::InvariantViolation, "graph-of-groups edge endpoint out of range");
  }
  vertices_[edge.origin].handle->check_word(edge.origin_word);
  vertices_[edge.target].handle->check_word(edge.target_word);
  edges_.push_back(std::move(edge));
  return static_cast<int>(edges_.size()) - 1;
}

int step_from(const GraphOfGroups& g, Step s) {
  const auto& e = g.edge(s.edge);
  return s.forward ? e.origin : e.target;
}

int step_to(const GraphOfGroups& g, Step s) {
  const auto& e = g.edge(s.edge);
  return s.forward ? e.target : e.origin;
}

int end_vertex(const GraphOfGroups& g, const LoopWord& w) {
  return w.steps.empty() ? w.base : step_to(g, w.steps.back());
}

int element_vertex(const GraphOfGroups& g, const LoopWord& w, std::size_t i) {
  return i == 0 ? w.base : step_to(g, w.steps[i - 1]);
}

LoopWord vertex_loop(int v, Word element) {
  LoopWord w;
  w.base = v;
  w.elements = {std::move(element)};
  return w;
}

LoopWord path_concat(const GraphOfGroups& g, const LoopWord& a, const LoopWord& b) {
  if (end_vertex(g, a) != b.base) {
    throw Error(ErrorKind::InvariantViolation, "concatenating paths with mismatched endpoints");
  }
  LoopWord out = a;
  out.elements.back() = concat(out.elements.back(), b.elements.front());
  out.elements.insert(out.elements.end(), b.elements.begin() + 1, b.elements.end());
  out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
  return out;
}

LoopWord path_inverse(const GraphOfGroups& g, const LoopWord& w) {
  LoopWord out;
  out.base = end_vertex(g, w);
  out.elements.clear();
  for (auto it = w.elements.rbegin(); it != w.elements.rend(); ++it) out.elements.push_back(inverse(*it));
  for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it) out.steps.push_back({it->edge, !it->forward});
  return out;
}

LoopWord loop_power(const GraphOfGroups& g, const LoopWord& w, std::int64_t k) {
  const LoopWord unit = k < 0 ? path_inverse(g, w) : w;
  LoopWord out = vertex_loop(w.base, {});
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) out = path_concat(g, out, unit);
  return out;
}

void check_path(const GraphOfGroups& g, const LoopWord& w) {
  if (w.elements.size() != w.steps.size() + 1) {
    throw Error(ErrorKind::InvariantViolation, "loop word element/step count mismatch");
  }
  int at = w.base;
  for (std::size_t i = 0; i < w.elements.size(); ++i) {
    g.handle(at).check_word(w.elements[i]);
    if (i < w.steps.size()) {
      if (step_from(g, w.steps[i]) != at) {
        throw Error(ErrorKind::InvariantViolation, "loop word steps are not consecutive");
      }
      at = step_to(g, w.steps[i]);
    }
  }
}

std::string format_loop(const GraphOfGroups& g, const LoopWord& w) {
  std::ostringstream out;
  auto elem = [&](std::size_t i) {
    const auto& h = g.handle(element_vertex(g, w, i));
    const Word& x = w.elements[i];
    if (x.empty()) {
      out << '1';
      return;
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j) out << '.';
      out << h.generator_names()[x[j].gen];
      if (x[j].exp != 1) out << '^' << x[j].exp;
    }
  };
  out << '[' << g.vertices()[w.base].name << "] ";
  elem(0);
  for (std::size_t i = 0; i < w.steps.size(); ++i) {
    out << ' ' << g.edge(w.steps[i].edge).name << (w.steps[i].forward ? "" : "~") << ' ';
    elem(i + 1);
  }
  return out.str();
}

}  // namespace stratifold
