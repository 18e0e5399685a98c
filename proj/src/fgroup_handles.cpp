#include "stratifold/fgroup_handles.hpp"

#include <algorithm>
#include <cmath>

#include "stratifold/errors.hpp"
#include "stratifold/graph_model.hpp"
#include "stratifold/serre_solver.hpp"

namespace stratifold {

// ---------------------------------------------------------------- amalgam

AmalgamHandle::AmalgamHandle(HandlePtr a, HandlePtr b, Word z_a, Word z_b)
    : a_(std::move(a)), b_(std::move(b)), z_a_(std::move(z_a)), z_b_(std::move(z_b)) {
  na_ = a_->ngens();
  names_ = a_->generator_names();
  names_.insert(names_.end(), b_->generator_names().begin(), b_->generator_names().end());
  if (a_->elem_order(z_a_).value != 0 || b_->elem_order(z_b_).value != 0) {
    throw Error(ErrorKind::InvariantViolation, "amalgamated subgroup must be infinite cyclic");
  }
}

Word AmalgamHandle::lift(int side, const Word& w) const {
  if (side == 0) return w;
  Word out = w;
  for (auto& l : out) l.gen += na_;
  return out;
}

void AmalgamHandle::push_c(Reduced& st, std::int64_t j) const {
  if (st.in_c) {
    st.c_power = checked_add(st.c_power, j);
    if (st.c_power == 0) st.in_c = false;
    return;
  }
  if (st.syllables.empty()) {
    if (j != 0) {
      st.in_c = true;
      st.c_power = j;
    }
    return;
  }
  Syllable top = std::move(st.syllables.back());
  st.syllables.pop_back();
  push(st, top.side, concat(top.word, power(z(top.side), j)));
}

void AmalgamHandle::push(Reduced& st, int side, Word w) const {
  if (const auto j = factor(side).cyclic_membership(w, z(side))) {
    push_c(st, *j);
    return;
  }
  if (st.in_c) {
    w = concat(power(z(side), st.c_power), w);
    st.in_c = false;
    st.c_power = 0;
    st.syllables.push_back({side, std::move(w)});
    return;
  }
  if (!st.syllables.empty() && st.syllables.back().side == side) {
    Word merged = concat(st.syllables.back().word, w);
    st.syllables.pop_back();
    push(st, side, std::move(merged));
    return;
  }
  st.syllables.push_back({side, std::move(w)});
}

AmalgamHandle::Reduced AmalgamHandle::reduce(const Word& w) const {
  check_word(w);
  Reduced st;
  std::size_t i = 0;
  while (i < w.size()) {
    const int side = w[i].gen < na_ ? 0 : 1;
    Word piece;
    while (i < w.size() && (w[i].gen < na_ ? 0 : 1) == side) {
      piece.push_back({side == 0 ? w[i].gen : w[i].gen - na_, w[i].exp});
      ++i;
    }
    push(st, side, std::move(piece));
  }
  return st;
}

Word AmalgamHandle::to_word(const Reduced& r) const {
  if (r.in_c) return power(z_a_, r.c_power);
  Word out;
  for (const auto& s : r.syllables) out = concat(out, lift(s.side, s.word));
  return out;
}

AmalgamHandle::CyclicDecomposition AmalgamHandle::cyclic_reduce(const Word& w) const {
  CyclicDecomposition out;
  out.core = reduce(w);
  while (out.core.syllables.size() >= 2 &&
         out.core.syllables.front().side == out.core.syllables.back().side) {
    const Word first = lift(out.core.syllables.front().side, out.core.syllables.front().word);
    out.conjugator = concat(out.conjugator, first);
    Word rest;
    for (std::size_t i = 1; i < out.core.syllables.size(); ++i) {
      rest = concat(rest, lift(out.core.syllables[i].side, out.core.syllables[i].word));
    }
    out.core = reduce(concat(rest, first));
  }
  return out;
}

bool AmalgamHandle::wp(const Word& w) const {
  const Reduced r = reduce(w);
  return r.syllables.empty() && !r.in_c;
}

ElementOrder AmalgamHandle::elem_order(const Word& w) const {
  const auto c = cyclic_reduce(w).core;
  if (c.in_c) return {0, OrderTag::Computed};
  if (c.syllables.empty()) return {1, OrderTag::Computed};
  if (c.syllables.size() >= 2) return {0, OrderTag::Computed};
  return factor(c.syllables[0].side).elem_order(c.syllables[0].word);
}

std::optional<std::int64_t> AmalgamHandle::cyclic_membership(const Word& g, const Word& t) const {
  check_word(g);
  const auto [u, r] = cyclic_reduce(t);
  const Word gw = concat({inverse(u), g, u});
  const Reduced gc = reduce(gw);
  const bool g_trivial = gc.syllables.empty() && !gc.in_c;
  if (r.length() == 0) {
    if (!r.in_c) return g_trivial ? std::optional<std::int64_t>(0) : std::nullopt;
    if (g_trivial) return 0;
    if (!gc.in_c || gc.c_power % r.c_power != 0) return std::nullopt;
    return gc.c_power / r.c_power;
  }
  if (r.length() == 1) {
    const Syllable& rs = r.syllables[0];
    if (g_trivial) return 0;
    if (gc.in_c) {
      return factor(rs.side).cyclic_membership(power(z(rs.side), gc.c_power), rs.word);
    }
    if (gc.syllables.size() != 1 || gc.syllables[0].side != rs.side) return std::nullopt;
    return factor(rs.side).cyclic_membership(gc.syllables[0].word, rs.word);
  }
  if (gc.length() % r.length() != 0) return std::nullopt;
  const auto k = static_cast<std::int64_t>(gc.length() / r.length());
  if (k == 0) return g_trivial ? std::optional<std::int64_t>(0) : std::nullopt;
  const Word rw = to_word(r);
  for (std::int64_t cand : {k, -k}) {
    if (wp(concat(gw, power(rw, -cand)))) return cand;
  }
  return std::nullopt;
}

// ------------------------------------------------------------------ torus

TorusHandle::TorusHandle(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() != 2) throw Error(ErrorKind::InvariantViolation, "torus handle needs two letters");
}

bool TorusHandle::wp(const Word& w) const {
  check_word(w);
  const auto v = exponent_sums(w, 2);
  return v[0] == 0 && v[1] == 0;
}

ElementOrder TorusHandle::elem_order(const Word& w) const {
  return {wp(w) ? 1 : 0, OrderTag::Computed};
}

std::optional<std::int64_t> TorusHandle::cyclic_membership(const Word& g, const Word& t) const {
  check_word(g);
  check_word(t);
  const auto a = exponent_sums(g, 2);
  const auto b = exponent_sums(t, 2);
  if (b[0] == 0 && b[1] == 0) {
    return a[0] == 0 && a[1] == 0 ? std::optional<std::int64_t>(0) : std::nullopt;
  }
  const int i = b[0] != 0 ? 0 : 1;
  if (a[i] % b[i] != 0) return std::nullopt;
  const std::int64_t k = a[i] / b[i];
  if (checked_mul(k, b[1 - i]) != a[1 - i]) return std::nullopt;
  return k;
}

// --------------------------------------------------------------- triangle

TriangleHandle::TriangleHandle(std::vector<std::string> names, std::int64_t k1, std::int64_t k2,
                               std::int64_t k3)
    : names_(std::move(names)),
      k_{k1, k2, k3},
      field_(static_cast<int>(lcm64(lcm64(k1, k2), k3))) {
  if (names_.size() != 3) throw Error(ErrorKind::InvariantViolation, "triangle handle needs three letters");
  for (auto k : k_) {
    if (k < 2) throw Error(ErrorKind::InvariantViolation, "triangle orders must be >= 2");
  }
  // Coxeter matrix: m(s2,s3) = k1, m(s3,s1) = k2, m(s1,s2) = k3.
  std::int64_t m[3][3] = {{1, k3, k2}, {k3, 1, k1}, {k2, k1, 1}};
  for (int i = 0; i < 3; ++i) {
    s_[i] = Matrix3::identity(field_);
    for (int j = 0; j < 3; ++j) {
      s_[i].at(i, j) = i == j ? field_.from_int(-1) : field_.two_cos_pi_over(static_cast<int>(m[i][j]));
    }
  }
  const Matrix3 c[3] = {s_[1].mul(s_[2], field_), s_[2].mul(s_[0], field_), s_[0].mul(s_[1], field_)};
  for (int i = 0; i < 3; ++i) {
    powers_[i].push_back(Matrix3::identity(field_));
    for (std::int64_t e = 1; e < k_[i]; ++e) powers_[i].push_back(powers_[i].back().mul(c[i], field_));
  }
  verify_identities();
}

Matrix3 TriangleHandle::matrix(const Word& w) const {
  check_word(w);
  Matrix3 acc = Matrix3::identity(field_);
  for (const Letter& l : w) {
    const auto e = mod_floor(l.exp, k_[l.gen]);
    if (e != 0) acc = acc.mul(powers_[l.gen][e], field_);
  }
  return acc;
}

void TriangleHandle::verify_identities() const {
  for (int i = 0; i < 3; ++i) {
    if (!s_[i].mul(s_[i], field_).is_identity(field_)) {
      throw Error(ErrorKind::InvariantViolation, "reflection does not square to the identity");
    }
    const Matrix3 top = powers_[i].back().mul(powers_[i][1], field_);
    if (!top.is_identity(field_)) {
      throw Error(ErrorKind::InvariantViolation, "cone generator power is not the identity");
    }
  }
  const Matrix3 prod = powers_[0][1].mul(powers_[1][1], field_).mul(powers_[2][1], field_);
  if (!prod.is_identity(field_)) {
    throw Error(ErrorKind::InvariantViolation, "c1 c2 c3 is not the identity");
  }
}

bool TriangleHandle::wp(const Word& w) const { return matrix(w).is_identity(field_); }

ElementOrder TriangleHandle::elem_order(const Word& w) const {
  // Torsion in a triangle group is conjugate into some <c_i>.
  std::vector<std::int64_t> divisors;
  for (auto k : k_) {
    for (std::int64_t d = 1; d <= k; ++d) {
      if (k % d == 0) divisors.push_back(d);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  divisors.erase(std::unique(divisors.begin(), divisors.end()), divisors.end());
  const Matrix3 m = matrix(w);
  Matrix3 p = m;
  std::int64_t have = 1;
  for (auto d : divisors) {
    while (have < d) {
      p = p.mul(m, field_);
      ++have;
    }
    if (p.is_identity(field_)) return {d, OrderTag::Computed};
  }
  return {0, OrderTag::Computed};
}

namespace {

using D3 = std::array<std::array<double, 3>, 3>;

D3 dmul(const D3& a, const D3& b) {
  D3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

double dnorm(const D3& a) {
  double n = 0;
  for (const auto& row : a) {
    for (double x : row) n = std::max(n, std::abs(x));
  }
  return n;
}

double ddist(const D3& a, const D3& b) {
  double n = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) n = std::max(n, std::abs(a[i][j] - b[i][j]));
  }
  return n;
}

}  // namespace

std::optional<std::int64_t> TriangleHandle::cyclic_membership(const Word& g, const Word& t) const {
  check_word(g);
  const ElementOrder ot = elem_order(t);
  if (ot.value > 0) return membership_by_enumeration(*this, g, t, ot.value);
  if (wp(g)) return 0;
  // Infinite order: powers of t leave every compact set (the image is
  // discrete), so floating point proposes candidates and exact arithmetic
  // decides.
  const D3 mg = matrix(g).to_double(field_);
  const D3 mt = matrix(t).to_double(field_);
  const D3 mti = matrix(inverse(t)).to_double(field_);
  const double bound = 4.0 * (dnorm(mg) + 1.0);
  D3 pos = mt, neg = mti;
  int beyond = 0;
  constexpr std::int64_t kCap = 100000;
  for (std::int64_t k = 1; k <= kCap; ++k) {
    for (int sign : {1, -1}) {
      const D3& cand = sign > 0 ? pos : neg;
      if (ddist(cand, mg) <= 1e-6 * (1.0 + dnorm(mg))) {
        const std::int64_t e = sign * k;
        if (wp(concat(g, power(t, -e)))) return e;
      }
    }
    if (dnorm(pos) > bound && dnorm(neg) > bound) {
      if (++beyond >= 16) return std::nullopt;
    } else {
      beyond = 0;
    }
    pos = dmul(pos, mt);
    neg = dmul(neg, mti);
  }
  throw Error(ErrorKind::Undetermined, "triangle membership search exceeded its cap");
}

// -------------------------------------------------------------- gog handle

GogHandle::GogHandle(GraphOfGroups g, std::vector<std::string> names,
                     std::vector<GeneratorImage> images)
    : g_(std::move(g)), names_(std::move(names)), images_(std::move(images)) {
  if (names_.size() != images_.size()) {
    throw Error(ErrorKind::InvariantViolation, "generator image count mismatch");
  }
  for (const auto& e : g_.edges()) {
    if (e.origin != g_.base || e.target != g_.base) {
      throw Error(ErrorKind::Unsupported, "graph-of-groups handle supports loop edges at the base only");
    }
  }
}

LoopWord GogHandle::to_loop(const Word& w) const {
  check_word(w);
  LoopWord out = vertex_loop(g_.base, {});
  for (const Letter& l : w) {
    const auto& img = images_[l.gen];
    if (!img.is_edge) {
      out.elements.back() = concat(out.elements.back(), Word{{img.local, l.exp}});
      continue;
    }
    for (std::int64_t i = 0; i < (l.exp < 0 ? -l.exp : l.exp); ++i) {
      out.steps.push_back({img.local, l.exp > 0});
      out.elements.push_back({});
    }
  }
  return out;
}

bool GogHandle::wp(const Word& w) const { return solve(g_, to_loop(w)).trivial(); }

ElementOrder GogHandle::elem_order(const Word& w) const { return loop_order(g_, to_loop(w)); }

std::optional<std::int64_t> GogHandle::cyclic_membership(const Word& g, const Word& t) const {
  return loop_cyclic_membership(g_, to_loop(g), to_loop(t));
}

// ------------------------------------------------------- classification

const char* to_string(WhiteKind k) {
  switch (k) {
    case WhiteKind::Trivial: return "trivial";
    case WhiteKind::FreeProduct: return "free-product";
    case WhiteKind::Amalgam: return "amalgam";
    case WhiteKind::Hnn: return "hnn";
    case WhiteKind::Torus: return "torus";
    case WhiteKind::Triangle: return "triangle";
  }
  return "?";
}

namespace {

Word letter(int g, std::int64_t e = 1) { return Word{{g, e}}; }

// [y1,y2]...[y_{2h-1},y_{2h}] over the given letter indices.
Word commutator_chain(const std::vector<int>& ys, int pairs) {
  Word q;
  for (int i = 0; i < pairs; ++i) q = concat(q, commutator(letter(ys[2 * i]), letter(ys[2 * i + 1])));
  return q;
}

Word square_chain(const std::vector<int>& ys, int count) {
  Word q;
  for (int i = 0; i < count; ++i) q.push_back({ys[i], 2});
  return free_reduce(q);
}

std::vector<int> iota_vec(int from, int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = from + i;
  return v;
}

}  // namespace

Word white_relator_image(const WhiteGroupSpec& spec, const WhiteHandle& h) {
  Word r;
  for (const auto& c : h.boundary_images) r = concat(r, c);
  const int n = surface_rank(spec.genus);
  Word q;
  if (spec.genus > 0) {
    for (int i = 0; i < spec.genus; ++i) {
      q = concat(q, commutator(h.surface_images[2 * i], h.surface_images[2 * i + 1]));
    }
  } else {
    for (int i = 0; i < n; ++i) q = concat(q, power(h.surface_images[i], 2));
  }
  return concat(r, q);
}

WhiteHandle white_handle(const WhiteGroupSpec& spec) {
  const int p = static_cast<int>(spec.k.size());
  const int n = surface_rank(spec.genus);
  std::vector<std::string> cname = spec.boundary_names, yname = spec.surface_names;
  if (cname.empty()) {
    for (int i = 1; i <= p; ++i) cname.push_back("c" + std::to_string(i));
  }
  if (yname.empty()) {
    for (int i = 1; i <= n; ++i) yname.push_back("y" + std::to_string(i));
  }
  if (static_cast<int>(cname.size()) != p || static_cast<int>(yname.size()) != n) {
    throw Error(ErrorKind::InvariantViolation, "white spec name count mismatch");
  }
  for (auto k : spec.k) {
    if (k < 0) throw Error(ErrorKind::InvariantViolation, "negative boundary order");
  }

  WhiteHandle h;
  h.boundary_images.assign(static_cast<std::size_t>(p), Word{});
  h.surface_images.assign(static_cast<std::size_t>(n), Word{});
  std::vector<int> kept;
  for (int i = 0; i < p; ++i) {
    if (spec.k[i] != 1) kept.push_back(i);
  }
  const int pk = static_cast<int>(kept.size());
  auto first_zero = std::find_if(kept.begin(), kept.end(), [&](int i) { return spec.k[i] == 0; });

  auto trivial = [&] {
    h.kind = WhiteKind::Trivial;
    h.handle = std::make_shared<FreeProductOfCyclics>(std::vector<CyclicFactor>{});
  };

  if (pk == 0 && n == 0) {
    trivial();
  } else if (first_zero != kept.end()) {
    // Solve the long relation for c_j and drop it.
    const int j = *first_zero;
    std::vector<CyclicFactor> letters;
    std::vector<int> cidx(static_cast<std::size_t>(p), -1);
    for (int i : kept) {
      if (i == j) continue;
      cidx[i] = static_cast<int>(letters.size());
      letters.push_back({cname[i], spec.k[i]});
    }
    std::vector<int> ys;
    for (int i = 0; i < n; ++i) {
      ys.push_back(static_cast<int>(letters.size()));
      h.surface_images[i] = letter(ys.back());
      letters.push_back({yname[i], 0});
    }
    Word before, after;
    for (int i : kept) {
      if (i == j) continue;
      h.boundary_images[i] = letter(cidx[i]);
      (i < j ? before : after).push_back({cidx[i], 1});
    }
    const Word q = spec.genus > 0 ? commutator_chain(ys, spec.genus) : square_chain(ys, n);
    h.boundary_images[j] = free_reduce(concat({inverse(before), inverse(q), inverse(after)}));
    h.kind = WhiteKind::FreeProduct;
    h.handle = std::make_shared<FreeProductOfCyclics>(std::move(letters));
  } else if (n == 0) {
    if (pk == 1) {
      trivial();
    } else if (pk == 2) {
      const std::int64_t g = gcd64(spec.k[kept[0]], spec.k[kept[1]]);
      if (g == 1) {
        trivial();
      } else {
        h.kind = WhiteKind::FreeProduct;
        h.handle = FreeProductOfCyclics::cyclic(cname[kept[0]], g);
        h.boundary_images[kept[0]] = letter(0);
        h.boundary_images[kept[1]] = letter(0, -1);
      }
    } else if (pk == 3) {
      h.kind = WhiteKind::Triangle;
      h.handle = std::make_shared<TriangleHandle>(
          std::vector<std::string>{cname[kept[0]], cname[kept[1]], cname[kept[2]]},
          spec.k[kept[0]], spec.k[kept[1]], spec.k[kept[2]]);
      for (int i = 0; i < 3; ++i) h.boundary_images[kept[i]] = letter(i);
      h.boundary_order_tag = OrderTag::Assumed;
    } else {
      // Polygon split: <c1,c2> *_{c1 c2 = (c3...cp)^-1} <c3,...,cp>.
      auto a = std::make_shared<FreeProductOfCyclics>(std::vector<CyclicFactor>{
          {cname[kept[0]], spec.k[kept[0]]}, {cname[kept[1]], spec.k[kept[1]]}});
      std::vector<CyclicFactor> bl;
      Word rest;
      for (int i = 2; i < pk; ++i) {
        rest.push_back({i - 2, 1});
        bl.push_back({cname[kept[i]], spec.k[kept[i]]});
      }
      auto b = std::make_shared<FreeProductOfCyclics>(std::move(bl));
      h.kind = WhiteKind::Amalgam;
      h.handle = std::make_shared<AmalgamHandle>(a, b, Word{{0, 1}, {1, 1}}, inverse(rest));
      for (int i = 0; i < pk; ++i) h.boundary_images[kept[i]] = letter(i);
      h.boundary_order_tag = OrderTag::Assumed;
    }
  } else if (pk >= 2) {
    // <c's> *_{c1...cp = q^-1} <y's>.
    std::vector<CyclicFactor> al;
    Word prod;
    for (int i = 0; i < pk; ++i) {
      al.push_back({cname[kept[i]], spec.k[kept[i]]});
      prod.push_back({i, 1});
      h.boundary_images[kept[i]] = letter(i);
    }
    const std::vector<int> ys = iota_vec(0, n);
    const Word q = spec.genus > 0 ? commutator_chain(ys, spec.genus) : square_chain(ys, n);
    for (int i = 0; i < n; ++i) h.surface_images[i] = letter(pk + i);
    h.kind = WhiteKind::Amalgam;
    h.handle = std::make_shared<AmalgamHandle>(std::make_shared<FreeProductOfCyclics>(std::move(al)),
                                               FreeProductOfCyclics::free_group(yname), prod,
                                               inverse(q));
    h.boundary_order_tag = OrderTag::Assumed;
  } else {
    // pk <= 1 with surface generators.
    const bool has_c = pk == 1;
    const int c = has_c ? kept[0] : -1;
    const std::int64_t kc = has_c ? spec.k[c] : 0;
    const int off = has_c ? 1 : 0;
    if (spec.genus > 0 && !has_c && spec.genus == 1) {
      h.kind = WhiteKind::Torus;
      h.handle = std::make_shared<TorusHandle>(yname);
      h.surface_images = {letter(0), letter(1)};
    } else if (spec.genus > 0) {
      // HNN: A = <c, y_1..y_{2g-1} : c^k>, stable y_{2g},
      //   y_{2g} y_{2g-1} y_{2g}^-1 = P y_{2g-1},  P = c [y1,y2]...[y_{2g-3},y_{2g-2}].
      std::vector<CyclicFactor> al;
      if (has_c) al.push_back({cname[c], kc});
      for (int i = 0; i + 1 < n; ++i) al.push_back({yname[i], 0});
      const std::vector<int> ys = iota_vec(off, n - 1);
      Word pword = has_c ? letter(0) : Word{};
      pword = concat(pword, commutator_chain(ys, spec.genus - 1));
      const Word last = letter(off + n - 2);
      GraphOfGroups gg;
      gg.add_vertex("A", std::make_shared<FreeProductOfCyclics>(std::move(al)));
      gg.add_edge({yname[n - 1], 0, 0, concat(pword, last), last, 0});
      std::vector<std::string> names;
      std::vector<GogHandle::GeneratorImage> imgs;
      if (has_c) {
        names.push_back(cname[c]);
        imgs.push_back({false, 0});
      }
      for (int i = 0; i + 1 < n; ++i) {
        names.push_back(yname[i]);
        imgs.push_back({false, off + i});
      }
      names.push_back(yname[n - 1]);
      imgs.push_back({true, 0});
      h.kind = WhiteKind::Hnn;
      h.handle = std::make_shared<GogHandle>(std::move(gg), std::move(names), std::move(imgs));
      if (has_c) h.boundary_images[c] = letter(0);
      for (int i = 0; i < n; ++i) h.surface_images[i] = letter(off + i);
      h.boundary_order_tag = has_c ? OrderTag::Assumed : OrderTag::Computed;
    } else if (n == 1) {
      // c y^2 = 1: cyclic of order 2k on y (Z/2 when there is no c).
      const std::int64_t order = has_c ? checked_mul(2, kc) : 2;
      h.kind = WhiteKind::FreeProduct;
      h.handle = FreeProductOfCyclics::cyclic(yname[0], order);
      h.surface_images[0] = letter(0);
      if (has_c) h.boundary_images[c] = letter(0, -2);
    } else {
      // <c, y_1..y_{m-1}> *_{c y_1^2...y_{m-1}^2 = y_m^-2} <y_m>.
      std::vector<CyclicFactor> al;
      if (has_c) al.push_back({cname[c], kc});
      for (int i = 0; i + 1 < n; ++i) al.push_back({yname[i], 0});
      Word za = has_c ? letter(0) : Word{};
      za = concat(za, square_chain(iota_vec(off, n - 1), n - 1));
      h.kind = WhiteKind::Amalgam;
      h.handle = std::make_shared<AmalgamHandle>(
          std::make_shared<FreeProductOfCyclics>(std::move(al)),
          FreeProductOfCyclics::free_group({yname[n - 1]}), za, letter(0, -2));
      if (has_c) h.boundary_images[c] = letter(0);
      for (int i = 0; i < n; ++i) h.surface_images[i] = letter(off + i);
      h.boundary_order_tag = has_c ? OrderTag::Assumed : OrderTag::Computed;
    }
  }

  for (int i = 0; i < p; ++i) h.designated.push_back({cname[i], h.boundary_images[i], spec.k[i]});
  if (!h.handle->wp(white_relator_image(spec, h))) {
    throw Error(ErrorKind::InvariantViolation, "white relator does not die in its handle");
  }
  return h;
}

}  // namespace stratifold
