#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stratifold/word.hpp"

namespace stratifold {

enum class OrderTag { Computed, Assumed };

// 0 means infinite order.
struct ElementOrder {
  std::int64_t value = 0;
  OrderTag tag = OrderTag::Computed;

  friend bool operator==(const ElementOrder&, const ElementOrder&) = default;
};

struct DesignatedGenerator {
  std::string name;
  Word word;
  std::int64_t required_order = 0;
};

// Uniform contract over every vertex group: word problem, element orders,
// and membership in cyclic subgroups with a witness exponent. Words are over
// the handle's own generators (indices into generator_names()).
class GroupHandle {
 public:
  virtual ~GroupHandle() = default;

  virtual std::string_view kind() const = 0;
  virtual const std::vector<std::string>& generator_names() const = 0;
  virtual bool wp(const Word& w) const = 0;
  virtual ElementOrder elem_order(const Word& w) const = 0;
  // Some k with g = t^k, or nullopt. When t has finite order d the witness
  // is normalised into [0, d).
  virtual std::optional<std::int64_t> cyclic_membership(const Word& g, const Word& t) const = 0;

  int ngens() const { return static_cast<int>(generator_names().size()); }
  void check_word(const Word& w) const;
};

using HandlePtr = std::shared_ptr<const GroupHandle>;

// Membership for finite-order targets by direct enumeration of <t>.
std::optional<std::int64_t> membership_by_enumeration(const GroupHandle& h, const Word& g,
                                                      const Word& t, std::int64_t order);

}  // namespace stratifold
