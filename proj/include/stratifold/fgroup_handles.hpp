#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stratifold/cyclotomic.hpp"
#include "stratifold/free_product.hpp"
#include "stratifold/gog.hpp"

namespace stratifold {

// A *_C B with C infinite cyclic, z_A = z_B. Generators are A's followed by
// B's.
class AmalgamHandle final : public GroupHandle {
 public:
  AmalgamHandle(HandlePtr a, HandlePtr b, Word z_a, Word z_b);

  std::string_view kind() const override { return "amalgam"; }
  const std::vector<std::string>& generator_names() const override { return names_; }

  struct Syllable {
    int side = 0;  // 0 = A, 1 = B
    Word word;     // over that factor's generators
  };
  // Reduced form: either alternating syllables outside C, or a single C
  // element z^c_power (empty syllables when c_power == 0).
  struct Reduced {
    std::vector<Syllable> syllables;
    std::int64_t c_power = 0;
    bool in_c = false;

    std::size_t length() const { return in_c ? 0 : syllables.size(); }
  };

  Reduced reduce(const Word& w) const;
  std::size_t length(const Word& w) const { return reduce(w).length(); }
  Word to_word(const Reduced& r) const;

  struct CyclicDecomposition {
    Word conjugator;
    Reduced core;
  };
  CyclicDecomposition cyclic_reduce(const Word& w) const;

  bool wp(const Word& w) const override;
  ElementOrder elem_order(const Word& w) const override;
  std::optional<std::int64_t> cyclic_membership(const Word& g, const Word& t) const override;

  const GroupHandle& factor(int side) const { return side == 0 ? *a_ : *b_; }
  const Word& z(int side) const { return side == 0 ? z_a_ : z_b_; }

 private:
  Word lift(int side, const Word& w) const;
  void push(Reduced& st, int side, Word w) const;
  void push_c(Reduced& st, std::int64_t j) const;

  HandlePtr a_, b_;
  Word z_a_, z_b_;
  int na_ = 0;
  std::vector<std::string> names_;
};

// Free abelian group of rank 2 (closed torus).
class TorusHandle final : public GroupHandle {
 public:
  explicit TorusHandle(std::vector<std::string> names);

  std::string_view kind() const override { return "torus"; }
  const std::vector<std::string>& generator_names() const override { return names_; }
  bool wp(const Word& w) const override;
  ElementOrder elem_order(const Word& w) const override;
  std::optional<std::int64_t> cyclic_membership(const Word& g, const Word& t) const override;

 private:
  std::vector<std::string> names_;
};

// Von Dyck group D(k1,k2,k3) = <c1,c2,c3 : c_i^k_i, c1 c2 c3>, realised as the
// even subgroup of the Tits representation of the triangle Coxeter group.
class TriangleHandle final : public GroupHandle {
 public:
  TriangleHandle(std::vector<std::string> names, std::int64_t k1, std::int64_t k2, std::int64_t k3);

  std::string_view kind() const override { return "triangle"; }
  const std::vector<std::string>& generator_names() const override { return names_; }

  const CosineField& field() const { return field_; }
  const Matrix3& reflection(int i) const { return s_[i]; }
  Matrix3 matrix(const Word& w) const;

  bool wp(const Word& w) const override;
  ElementOrder elem_order(const Word& w) const override;
  std::optional<std::int64_t> cyclic_membership(const Word& g, const Word& t) const override;

  // Throws InvariantViolation if any defining identity fails exactly.
  void verify_identities() const;

 private:
  std::vector<std::string> names_;
  std::array<std::int64_t, 3> k_{};
  CosineField field_;
  std::array<Matrix3, 3> s_;
  // powers_[i][e] = c_i^e for 0 <= e < k_i
  std::array<std::vector<Matrix3>, 3> powers_;
};

// Handle whose elements are loops in a graph of groups based at g.base.
// Each generator is either a vertex letter at the base or a loop edge.
class GogHandle final : public GroupHandle {
 public:
  struct GeneratorImage {
    bool is_edge = false;
    int local = 0;  // letter of the base handle, or edge index
  };

  GogHandle(GraphOfGroups g, std::vector<std::string> names, std::vector<GeneratorImage> images);

  std::string_view kind() const override { return "hnn"; }
  const std::vector<std::string>& generator_names() const override { return names_; }
  const GraphOfGroups& graph() const { return g_; }

  LoopWord to_loop(const Word& w) const;
  bool wp(const Word& w) const override;
  ElementOrder elem_order(const Word& w) const override;
  std::optional<std::int64_t> cyclic_membership(const Word& g, const Word& t) const override;

 private:
  GraphOfGroups g_;
  std::vector<std::string> names_;
  std::vector<GeneratorImage> images_;
};

enum class WhiteKind {
  Trivial,
  FreeProduct,
  Amalgam,
  Hnn,
  Torus,
  Triangle,
};

const char* to_string(WhiteKind k);

struct WhiteGroupSpec {
  // Required order per boundary curve, in edge-name order; 0 = infinite.
  std::vector<std::int64_t> k;
  int genus = 0;
  std::vector<std::string> boundary_names;  // optional, defaults to c1..cp
  std::vector<std::string> surface_names;   // optional, defaults to y1..yn
};

struct WhiteHandle {
  WhiteKind kind = WhiteKind::Trivial;
  HandlePtr handle;
  std::vector<Word> boundary_images;  // per boundary curve
  std::vector<Word> surface_images;   // per surface generator
  // Orders of boundary images are classical facts (not recomputed) for the
  // amalgam, HNN and triangle cases.
  OrderTag boundary_order_tag = OrderTag::Computed;
  std::vector<DesignatedGenerator> designated;
};

// Total over (k, genus). Every output satisfies the relator-kill check.
WhiteHandle white_handle(const WhiteGroupSpec& spec);

// Maps c_1 ... c_p q through the handle; must be trivial.
Word white_relator_image(const WhiteGroupSpec& spec, const WhiteHandle& h);

}  // namespace stratifold
