#include "stratifold/free_product.hpp"

#include <cstdlib>

#include "stratifold/errors.hpp"

namespace stratifold {

void GroupHandle::check_word(const Word& w) const {
  for (const Letter& l : w) {
    if (l.gen < 0 || l.gen >= ngens()) {
      throw Error(ErrorKind::UnknownLetter, "letter index " + std::to_string(l.gen) +
                                                " outside " + std::string(kind()) + " handle");
    }
  }
}

std::optional<std::int64_t> membership_by_enumeration(const GroupHandle& h, const Word& g,
                                                      const Word& t, std::int64_t order) {
  Word probe = g;  // g * t^-j
  const Word tinv = inverse(t);
  for (std::int64_t j = 0; j < order; ++j) {
    if (h.wp(probe)) return j;
    probe = concat(probe, tinv);
  }
  return std::nullopt;
}

namespace {

// Returns (g, x, y) with a*x + b*y = g.
void ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& g, std::int64_t& x, std::int64_t& y) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  g = old_r;
  x = old_s;
  y = old_t;
}

}  // namespace

std::optional<std::int64_t> solve_linear_congruence(std::int64_t a, std::int64_t b,
                                                    std::int64_t n) {
  if (n == 0) {
    if (a == 0) return b == 0 ? std::optional<std::int64_t>(0) : std::nullopt;
    if (b % a != 0) return std::nullopt;
    return b / a;
  }
  a = mod_floor(a, n);
  b = mod_floor(b, n);
  std::int64_t g, x, y;
  ext_gcd(a, n, g, x, y);
  if (b % g != 0) return std::nullopt;
  const std::int64_t modulus = n / g;
  const __int128 k = static_cast<__int128>(mod_floor(x, modulus)) * (b / g);
  return static_cast<std::int64_t>(k % modulus);
}

FreeProductOfCyclics::FreeProductOfCyclics(std::vector<CyclicFactor> letters)
    : letters_(std::move(letters)) {
  for (const auto& l : letters_) {
    if (l.order < 0) throw Error(ErrorKind::InvariantViolation, "negative cyclic order");
    names_.push_back(l.name);
  }
}

HandlePtr FreeProductOfCyclics::cyclic(std::string name, std::int64_t order) {
  return std::make_shared<FreeProductOfCyclics>(
      std::vector<CyclicFactor>{{std::move(name), order}});
}

HandlePtr FreeProductOfCyclics::free_group(const std::vector<std::string>& names) {
  std::vector<CyclicFactor> ls;
  for (const auto& n : names) ls.push_back({n, 0});
  return std::make_shared<FreeProductOfCyclics>(std::move(ls));
}

SyllableForm FreeProductOfCyclics::normal_form(const Word& w) const {
  check_word(w);
  SyllableForm out;
  auto push = [&](Letter l) {
    const std::int64_t n = letters_[l.gen].order;
    if (!out.empty() && out.back().gen == l.gen) {
      l.exp = checked_add(l.exp, out.back().exp);
      out.pop_back();
    }
    if (n > 0) l.exp = mod_floor(l.exp, n);
    if (l.exp != 0) out.push_back(l);
  };
  for (const Letter& l : w) push(l);
  return out;
}

FreeProductOfCyclics::CyclicDecomposition FreeProductOfCyclics::cyclic_reduce(const Word& w) const {
  SyllableForm r = normal_form(w);
  SyllableForm u;
  while (r.size() >= 2 && r.front().gen == r.back().gen) {
    const Letter first = r.front();
    u.push_back(first);
    // r = first * mid * last  ~  mid * (last * first)
    SyllableForm rest(r.begin() + 1, r.end());
    rest.push_back(first);
    r = normal_form(rest);
  }
  return {normal_form(u), r};
}

ElementOrder FreeProductOfCyclics::elem_order(const Word& w) const {
  const auto [u, r] = cyclic_reduce(w);
  if (r.empty()) return {1, OrderTag::Computed};
  if (r.size() >= 2) return {0, OrderTag::Computed};
  const std::int64_t n = letters_[r[0].gen].order;
  if (n == 0) return {0, OrderTag::Computed};
  return {n / gcd64(n, r[0].exp), OrderTag::Computed};
}

std::optional<std::int64_t> FreeProductOfCyclics::cyclic_membership(const Word& g,
                                                                    const Word& t) const {
  check_word(g);
  const auto [u, r] = cyclic_reduce(t);
  const SyllableForm gc = normal_form(concat({inverse(u), g, u}));
  if (r.empty()) {
    return gc.empty() ? std::optional<std::int64_t>(0) : std::nullopt;
  }
  if (r.size() == 1) {
    // <r> lives in one cyclic factor.
    if (gc.empty()) return 0;
    if (gc.size() != 1 || gc[0].gen != r[0].gen) return std::nullopt;
    return solve_linear_congruence(r[0].exp, gc[0].exp, letters_[r[0].gen].order);
  }
  // Cyclically reduced of length >= 2: l(r^k) = |k| l(r).
  if (gc.size() % r.size() != 0) return std::nullopt;
  const auto k = static_cast<std::int64_t>(gc.size() / r.size());
  if (k == 0) return 0;
  if (wp(concat(gc, power(r, -k)))) return k;
  if (wp(concat(gc, power(r, k)))) return -k;
  return std::nullopt;
}

}  // namespace stratifold
