#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "stratifold/certificates.hpp"
#include "stratifold/presentation.hpp"
#include "stratifold/serre_solver.hpp"
#include "stratifold/stratifold_gog.hpp"

namespace stratifold {

enum class Answer { Trivial, Nontrivial, Undetermined };

const char* to_string(Answer a);

struct WordResult {
  Answer answer = Answer::Undetermined;
  // True iff the orders were Exact, so the verdict comes from a checked
  // graph of groups.
  bool certified = false;
  Word word;
  std::optional<Verdict> verdict;
  std::string reason;
};

// One stratifold with its orders and graph of groups resolved up front.
// Without Exact orders, Trivial answers remain sound (every vertex relation
// used holds in the fundamental group); Nontrivial then needs an
// abelianization witness, and anything else is Undetermined.
class Solver {
 public:
  explicit Solver(const StratifoldGraph& g, const Budget& budget = {});

  const Stratifold& stratifold() const { return s_; }
  const Presentation& presentation() const { return s_.presentation; }
  const OrderAssignment& orders() const { return orders_; }
  const StratifoldGog& gog() const { return gog_; }
  const SmithForm& snf() const { return snf_; }
  const Budget& budget() const { return budget_; }

  WordResult solve(const Word& w) const;
  WordResult solve_text(std::string_view text) const;

 private:
  Stratifold s_;
  Budget budget_;
  OrderAssignment orders_;
  SmithForm snf_;
  StratifoldGog gog_;
};

WordResult word_problem(const StratifoldGraph& g, std::string_view text, const Budget& budget = {});

}  // namespace stratifold
