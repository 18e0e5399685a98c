#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stratifold/group_handle.hpp"

namespace stratifold {

struct CyclicFactor {
  std::string name;
  std::int64_t order = 0;  // 0 = infinite
};

// Reduced alternating syllables; exponents in [1, n) for finite letters.
using SyllableForm = Word;

// Free product of cyclic groups Z/n_1 * ... * Z/n_r. Free groups are the
// all-infinite case, the trivial group the empty case.
class FreeProductOfCyclics final : public GroupHandle {
 public:
  explicit FreeProductOfCyclics(std::vector<CyclicFactor> letters);

  static HandlePtr cyclic(std::string name, std::int64_t order);
  static HandlePtr free_group(const std::vector<std::string>& names);

  std::string_view kind() const override { return "free-product"; }
  const std::vector<std::string>& generator_names() const override { return names_; }
  std::int64_t letter_order(int i) const { return letters_[i].order; }
  const std::vector<CyclicFactor>& letters() const { return letters_; }

  SyllableForm normal_form(const Word& w) const;
  std::size_t length(const Word& w) const { return normal_form(w).size(); }

  struct CyclicDecomposition {
    SyllableForm conjugator;  // u
    SyllableForm core;        // r, cyclically reduced
  };
  // w = u r u^-1.
  CyclicDecomposition cyclic_reduce(const Word& w) const;

  bool wp(const Word& w) const override { return normal_form(w).empty(); }
  ElementOrder elem_order(const Word& w) const override;
  std::optional<std::int64_t> cyclic_membership(const Word& g, const Word& t) const override;

 private:
  std::vector<CyclicFactor> letters_;
  std::vector<std::string> names_;
};

// Smallest k >= 0 (mod n/gcd) with a*k = b mod n; n == 0 means over Z.
std::optional<std::int64_t> solve_linear_congruence(std::int64_t a, std::int64_t b,
                                                    std::int64_t n);

}  // namespace stratifold
