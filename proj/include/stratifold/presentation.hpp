#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stratifold/graph_model.hpp"
#include "stratifold/word.hpp"

namespace stratifold {

enum class GeneratorRole { Black, Boundary, Surface, Stable };

struct Generator {
  GeneratorRole role = GeneratorRole::Black;
  int owner = 0;  // black index, edge index, or white index (Surface)
  int index = 0;  // Surface only: 1-based y index
  std::string name;
};

enum class RelatorKind { White, TreeEdge, NonTreeEdge };

struct Relator {
  RelatorKind kind = RelatorKind::White;
  int source = 0;  // white index or edge index
  Word word;
};

// Natural presentation of pi_1(X_G):
//   white:    c_1 ... c_p q          (q = commutators or squares)
//   tree:     b^m c^-1
//   non-tree: t^-1 c t b^-m
class Presentation {
 public:
  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<Relator>& relators() const { return relators_; }
  int ngens() const { return static_cast<int>(generators_.size()); }

  int black_count() const { return static_cast<int>(black_gen_.size()); }
  int black_gen(int b) const { return black_gen_[b]; }
  int boundary_gen(int e) const { return boundary_gen_[e]; }
  int surface_gen(int w, int i) const { return surface_gen_[w][i - 1]; }
  // -1 for tree edges.
  int stable_gen(int e) const { return stable_gen_[e]; }
  int surface_count(int w) const { return static_cast<int>(surface_gen_[w].size()); }

  // q for a white, as a word over surface generators.
  Word surface_word(int w) const;

  std::string format_word(const Word& w) const;
  std::string to_string() const;

 private:
  friend Presentation natural_presentation(const StratifoldGraph&, const MaximalTree&);

  std::vector<Generator> generators_;
  std::vector<Relator> relators_;
  std::vector<int> black_gen_;
  std::vector<int> boundary_gen_;
  std::vector<int> stable_gen_;
  std::vector<std::vector<int>> surface_gen_;
  std::vector<int> white_genus_;
};

// Requires g to be orientation-normalized for t.
Presentation natural_presentation(const StratifoldGraph& g, const MaximalTree& t);

// Graph, canonical tree, normalization and presentation in one bundle.
struct Stratifold {
  StratifoldGraph input;
  StratifoldGraph graph;  // normalized
  MaximalTree tree;
  std::vector<int> flipped_edges;
  Presentation presentation;
};

Stratifold prepare(const StratifoldGraph& g);

// word   := "1" | factor { "*" factor }
// factor := atom [ "^" int ]
// atom   := "b."name | "c."edge | "y."white"."index | "t."edge
//         | "(" word ")" | "[" word "," word "]"
Word parse_word(std::string_view text, const Presentation& p);

struct SmithForm {
  std::vector<std::int64_t> diagonal;  // nonzero invariant factors d1 | d2 | ...
  int free_rank = 0;
  // Column change of basis: coordinates of x are x * column_basis.
  std::vector<std::vector<std::int64_t>> column_basis;

  std::vector<std::int64_t> torsion() const;  // diagonal entries > 1
};

SmithForm smith_normal_form(std::vector<std::vector<std::int64_t>> rows, int ncols);
SmithForm abelianization(const Presentation& p);

struct AbelianizedImage {
  std::vector<std::int64_t> torsion_coords;  // reduced mod the diagonal
  std::vector<std::int64_t> free_coords;

  bool is_zero() const;
};

AbelianizedImage ab_image(const Word& w, const Presentation& p, const SmithForm& snf);

}  // namespace stratifold
