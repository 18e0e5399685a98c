#include "stratifold/pipeline.hpp"

#include "stratifold/errors.hpp"
#include "stratifold/order_engine.hpp"

namespace stratifold {

const char* to_string(Answer a) {
  switch (a) {
    case Answer::Trivial:
      return "trivial";
    case Answer::Nontrivial:
      return "nontrivial";
    case Answer::Undetermined:
      return "undetermined";
  }
  return "?";
}

Solver::Solver(const StratifoldGraph& g, const Budget& budget)
    : s_(prepare(g)), budget_(budget), orders_(resolve_orders(s_, budget)),
      snf_(abelianization(s_.presentation)),
      gog_(orders_.exact() ? build_gog(s_, orders_) : build_gog_unchecked(s_, orders_.sigma)) {}

WordResult Solver::solve(const Word& w) const {
  WordResult r;
  r.word = free_reduce(w);
  r.certified = orders_.exact();
  const bool ab_zero = ab_image(r.word, s_.presentation, snf_).is_zero();
  if (!orders_.exact() && !ab_zero) {
    r.answer = Answer::Nontrivial;
    r.reason = "nonzero image in H1";
    return r;
  }
  r.verdict = stratifold::solve(gog_.gog, to_loop_word(s_, gog_, r.word));
  if (r.verdict->trivial()) {
    if (!ab_zero) throw Error(ErrorKind::InvariantViolation, "trivial verdict with nonzero H1 image");
    r.answer = Answer::Trivial;
    r.reason = orders_.exact() ? "reduced to the identity" : "reduced to the identity under certified relations";
    return r;
  }
  if (orders_.exact()) {
    r.answer = Answer::Nontrivial;
    r.reason = "reduced loop of length " + std::to_string(r.verdict->reduced_length);
    return r;
  }
  r.answer = Answer::Undetermined;
  std::string names;
  for (int b : orders_.undetermined) {
    if (!names.empty()) names += ",";
    names += s_.graph.blacks()[b].name;
  }
  r.reason = "orders not certified for " + names;
  return r;
}

WordResult Solver::solve_text(std::string_view text) const {
  return solve(parse_word(text, s_.presentation));
}

WordResult word_problem(const StratifoldGraph& g, std::string_view text, const Budget& budget) {
  return Solver(g, budget).solve_text(text);
}

}  // namespace stratifold
