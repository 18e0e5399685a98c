#include "stratifold/word.hpp"

#include <cstdlib>
#include <numeric>

#include "stratifold/errors.hpp"

namespace stratifold {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorKind::Overflow, "integer overflow in exponent arithmetic");
  }
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorKind::Overflow, "integer overflow in exponent arithmetic");
  }
  return out;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  const std::int64_t g = gcd64(a, b);
  return checked_mul(std::llabs(a) / g, std::llabs(b));
}

std::int64_t mod_floor(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().gen == l.gen) {
      out.back().exp = checked_add(out.back().exp, l.exp);
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    out.push_back({it->gen, -it->exp});
  }
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(out);
}

Word concat(std::initializer_list<Word> parts) {
  Word out;
  for (const Word& p : parts) out.insert(out.end(), p.begin(), p.end());
  return free_reduce(out);
}

Word power(const Word& w, std::int64_t k) {
  const Word base = k < 0 ? inverse(w) : w;
  const std::int64_t n = k < 0 ? -k : k;
  if (base.size() == 1) {
    return free_reduce({{base[0].gen, checked_mul(base[0].exp, n)}});
  }
  Word out;
  for (std::int64_t i = 0; i < n; ++i) {
    out.insert(out.end(), base.begin(), base.end());
  }
  return free_reduce(out);
}

Word commutator(const Word& a, const Word& b) {
  return concat({a, b, inverse(a), inverse(b)});
}

std::int64_t letter_length(const Word& w) {
  std::int64_t n = 0;
  for (const Letter& l : w) n = checked_add(n, std::llabs(l.exp));
  return n;
}

std::vector<std::int64_t> exponent_sums(const Word& w, int ngens) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(ngens), 0);
  for (const Letter& l : w) {
    auto& slot = v.at(static_cast<std::size_t>(l.gen));
    slot = checked_add(slot, l.exp);
  }
  return v;
}

std::vector<int> expand(const Word& w) {
  std::vector<int> out;
  for (const Letter& l : w) {
    const int sym = l.exp > 0 ? l.gen + 1 : -(l.gen + 1);
    for (std::int64_t i = 0; i < std::llabs(l.exp); ++i) out.push_back(sym);
  }
  return out;
}

Word compress(std::span<const int> letters) {
  Word out;
  for (int sym : letters) {
    const int gen = std::abs(sym) - 1;
    const std::int64_t e = sym > 0 ? 1 : -1;
    if (!out.empty() && out.back().gen == gen) {
      out.back().exp += e;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back({gen, e});
    }
  }
  return out;
}

std::vector<int> free_reduce_letters(std::span<const int> letters) {
  std::vector<int> out;
  out.reserve(letters.size());
  for (int sym : letters) {
    if (!out.empty() && out.back() == -sym) {
      out.pop_back();
    } else {
      out.push_back(sym);
    }
  }
  return out;
}

}  // namespace stratifold
