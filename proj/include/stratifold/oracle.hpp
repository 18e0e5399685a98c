#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stratifold/certificates.hpp"
#include "stratifold/presentation.hpp"

namespace stratifold {

// Plain finite presentation, detached from stratifold roles.
struct FpGroup {
  std::vector<std::string> names;
  std::vector<Word> relators;

  int ngens() const { return static_cast<int>(names.size()); }
};

FpGroup to_fp(const Presentation& p);

// ----------------------------------------------------------- derivations

// Lemma insertions are accepted when this returns true for (black, exponent).
using LemmaCheck = std::function<bool(int, std::int64_t)>;

std::vector<int> insertion_letters(const Presentation& p, const Insertion& ins);

struct ReplayResult {
  bool ok = false;
  std::size_t max_length = 0;
  std::string why;
};

ReplayResult replay_derivation(const Presentation& p, const Derivation& d, const LemmaCheck& lemma);

struct Lemma {
  int black = 0;
  std::int64_t exponent = 0;
};

// Breadth-first search over cancelling relator insertions with free
// reduction and deduplication of visited words.
std::optional<Derivation> derive_trivial(const Presentation& p, const Word& w, const Budget& budget,
                                         const std::vector<Lemma>& lemmas = {});

// Builds derivations one rewrite at a time. substitute() replaces the
// subword U = cur[pos, pos+len) by V, where V U^-1 is a cyclic rotation of
// the relator or its inverse.
class DerivationBuilder {
 public:
  DerivationBuilder(const Presentation& p, Word start);

  const std::vector<int>& current() const { return cur_; }
  const Derivation& derivation() const { return d_; }
  std::size_t max_length() const { return max_len_; }
  bool done() const { return cur_.empty(); }

  bool substitute(std::size_t pos, std::size_t len, int relator);
  // Removes the maximal b-run at pos by inserting b^-e; the caller vouches
  // that b^e = 1 is certified.
  void kill_power(std::size_t pos, int black);
  // First position holding generator `gen`, or npos.
  std::size_t find(int gen) const;
  // Length of the run of identical letters starting at pos.
  std::size_t run(std::size_t pos) const;

 private:
  void insert(const Insertion& ins);

  const Presentation& p_;
  Derivation d_;
  std::vector<int> cur_;
  std::size_t max_len_ = 0;
};

// ------------------------------------------------------ coset enumeration

struct CosetTable {
  bool complete = false;
  std::size_t order = 0;          // number of cosets when complete
  std::size_t cosets_defined = 0;
  // table[c][2g] = c.g, table[c][2g+1] = c.g^-1
  std::vector<std::vector<int>> table;
  int ngens = 0;
};

CosetTable todd_coxeter(const FpGroup& g, std::size_t coset_cap = 100000);
CosetTable todd_coxeter(const Presentation& p, std::size_t coset_cap = 100000);
bool cayley_wp(const CosetTable& t, const Word& w);

// ---------------------------------------------------- finite quotients

using Permutation = std::vector<int>;

struct Quotient {
  int degree = 0;
  std::vector<Permutation> images;      // per original generator
  std::vector<std::int64_t> image_orders;

  Permutation image(const Word& w) const;
  std::int64_t order_of(const Word& w) const;
  // Order of the image group; 0 when the enumeration cap is hit.
  std::int64_t group_order(std::size_t cap = 200000) const;
};

struct QuotientSearch {
  int max_degree = 6;
  std::size_t max_results = 64;
  std::size_t node_cap = 2000000;
  // Stop at the first quotient satisfying this, if set.
  std::function<bool(const Quotient&)> accept;
};

// Transitive permutation representations of degree <= max_degree, found by
// backtracking over partial coset tables (after eliminating generators that
// occur once in some relator).
std::vector<Quotient> finite_quotient_search(const FpGroup& g, const QuotientSearch& opts);
std::vector<Quotient> finite_quotient_search(const Presentation& p, const QuotientSearch& opts);

std::int64_t permutation_order(const Permutation& p);

}  // namespace stratifold
