#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace stratifold {

// A syllable x_gen^exp. Generator indices are local to whatever group or
// presentation the word lives in.
struct Letter {
  int gen = 0;
  std::int64_t exp = 0;

  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

// Overflow-checked integer helpers; throw Error(Overflow).
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
// Euclidean remainder in [0, n).
std::int64_t mod_floor(std::int64_t a, std::int64_t n);

// Merges equal neighbours and drops zero exponents until no change.
Word free_reduce(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
Word concat(std::initializer_list<Word> parts);
// w^k for any integer k (negative powers invert).
Word power(const Word& w, std::int64_t k);
Word commutator(const Word& a, const Word& b);

// Number of letters counted with multiplicity, sum |exp|.
std::int64_t letter_length(const Word& w);
// Exponent sum of each generator; `ngens` sizes the result.
std::vector<std::int64_t> exponent_sums(const Word& w, int ngens);

// Unit-letter form: one entry per letter, +(gen+1) or -(gen+1).
std::vector<int> expand(const Word& w);
Word compress(std::span<const int> letters);
// Free reduction on unit-letter form.
std::vector<int> free_reduce_letters(std::span<const int> letters);

}  // namespace stratifold
