#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numeric>
#include <numbers>
#include <set>

#include "stratifold/cyclotomic.hpp"
#include "stratifold/errors.hpp"
#include "stratifold/fgroup_handles.hpp"
#include "stratifold/free_product.hpp"
#include "stratifold/oracle.hpp"
#include "support.hpp"

using namespace stratifold;

namespace {

using Mat2 = std::array<std::int64_t, 4>;

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

// Z/2 * Z/3 is PSL(2,Z) with a -> S, b -> U (U^3 = -I).
bool psl_trivial(const Word& w) {
  const Mat2 s{0, -1, 1, 0}, s_inv{0, 1, -1, 0};
  const Mat2 u{0, -1, 1, 1}, u_inv{1, 1, -1, 0};
  Mat2 m{1, 0, 0, 1};
  for (const Letter& l : w) {
    const Mat2& step = l.gen == 0 ? (l.exp > 0 ? s : s_inv) : (l.exp > 0 ? u : u_inv);
    for (std::int64_t i = 0; i < std::abs(l.exp); ++i) m = mul(m, step);
  }
  const bool plus = m == Mat2{1, 0, 0, 1};
  const bool minus = m == Mat2{-1, 0, 0, -1};
  return plus || minus;
}

FpGroup surface_group(int genus) {
  FpGroup g;
  Word rel;
  if (genus > 0) {
    for (int i = 0; i < 2 * genus; ++i) g.names.push_back("y" + std::to_string(i + 1));
    for (int i = 0; i < genus; ++i) rel = concat(rel, commutator(Word{{2 * i, 1}}, Word{{2 * i + 1, 1}}));
  } else {
    for (int i = 0; i < -genus; ++i) {
      g.names.push_back("y" + std::to_string(i + 1));
      rel.push_back({i, 2});
    }
  }
  g.relators.push_back(rel);
  return g;
}

bool is_identity(const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != static_cast<int>(i)) return false;
  }
  return true;
}

// Some permutation quotient of degree <= max_degree where w is not the
// identity.
bool separated(const FpGroup& g, const Word& w, int max_degree) {
  QuotientSearch opts;
  opts.max_degree = max_degree;
  opts.max_results = 1;
  opts.accept = [&](const Quotient& q) { return !is_identity(q.image(w)); };
  return !finite_quotient_search(g, opts).empty();
}

bool killed_by_all(const FpGroup& g, const Word& w, int max_degree) {
  QuotientSearch opts;
  opts.max_degree = max_degree;
  opts.max_results = 100000;
  for (const auto& q : finite_quotient_search(g, opts)) {
    if (!is_identity(q.image(w))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("free product Z/2 * Z/3 agrees with PSL(2,Z)") {
  const FreeProductOfCyclics g({{"a", 2}, {"b", 3}});
  std::mt19937 rng(5);
  int trivial = 0;
  for (int i = 0; i < 400; ++i) {
    Word w = test_support::random_word(rng, 2, 12);
    if (i % 3 == 0) w = concat(w, inverse(test_support::random_word(rng, 2, 4)));
    const bool t = psl_trivial(w);
    trivial += t;
    CHECK(g.wp(w) == t);
  }
  CHECK(trivial > 0);
  const Word xy{{0, 1}, {1, 1}};
  CHECK(g.elem_order(xy).value == 0);
  CHECK(g.elem_order(Word{{0, 1}}).value == 2);
  CHECK(g.elem_order(Word{{1, -1}}).value == 3);
  CHECK(g.elem_order(concat({xy, Word{{0, 1}}, inverse(xy)})).value == 2);
  CHECK(g.cyclic_membership(power(xy, 4), xy) == std::optional<std::int64_t>(4));
  CHECK(g.cyclic_membership(power(xy, -3), xy) == std::optional<std::int64_t>(-3));
  CHECK_FALSE(g.cyclic_membership(Word{{0, 1}}, xy).has_value());
  CHECK(g.cyclic_membership(Word{{1, 2}}, Word{{1, 1}}) == std::optional<std::int64_t>(2));
  CHECK(g.normal_form(Word{{0, 3}, {1, 4}}) == Word{{0, 1}, {1, 1}});
}

TEST_CASE("free product cyclic reduction") {
  const FreeProductOfCyclics g({{"a", 2}, {"b", 3}, {"c", 0}});
  std::mt19937 rng(9);
  for (int i = 0; i < 200; ++i) {
    const Word w = test_support::random_word(rng, 3, 10);
    const auto d = g.cyclic_reduce(w);
    CHECK(g.wp(concat({d.conjugator, d.core, inverse(d.conjugator), inverse(w)})));
    const auto core = g.normal_form(concat(d.core, d.core));
    // Cyclically reduced cores do not cancel against themselves.
    if (d.core.size() > 1) CHECK(core.size() == 2 * d.core.size());
  }
}

TEST_CASE("solve_linear_congruence") {
  CHECK(solve_linear_congruence(2, 4, 6) == std::optional<std::int64_t>(2));
  CHECK_FALSE(solve_linear_congruence(2, 3, 6).has_value());
  CHECK(solve_linear_congruence(3, 6, 0) == std::optional<std::int64_t>(2));
  CHECK_FALSE(solve_linear_congruence(3, 5, 0).has_value());
  CHECK(solve_linear_congruence(5, 3, 7) == std::optional<std::int64_t>(2));
}

TEST_CASE("minimal polynomials vanish at 2cos(pi/L)") {
  auto phi = [](int n) {
    int c = 0;
    for (int i = 1; i <= n; ++i) c += std::gcd(i, n) == 1;
    return c;
  };
  for (int L : {1, 2, 3, 4, 5, 6, 7, 10, 12, 30, 42}) {
    const IntPoly p = minimal_polynomial(L);
    const double x = 2 * std::cos(std::numbers::pi / L);
    double v = 0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i].convert_to<double>();
    CHECK(std::abs(v) < 1e-7);
    CHECK(p.back() == 1);
    // degree = phi(2L) / 2 for L >= 2
    if (L >= 2) CHECK(static_cast<int>(p.size()) - 1 == phi(2 * L) / 2);
  }
  CHECK(format_poly(minimal_polynomial(5)) == "y^2 - y - 1");
  CHECK(format_poly(minimal_polynomial(1)) == "y + 2");
}

TEST_CASE("triangle (2,3,5) closes on 60 elements") {
  const TriangleHandle h({"c1", "c2", "c3"}, 2, 3, 5);
  h.verify_identities();
  CHECK(h.wp(Word{{0, 1}, {1, 1}, {2, 1}}));
  CHECK(h.elem_order(Word{{2, 1}}).value == 5);
  // Breadth-first closure over the matrix images.
  std::vector<Matrix3> seen{Matrix3::identity(h.field())};
  for (std::size_t i = 0; i < seen.size() && seen.size() <= 200; ++i) {
    for (int g = 0; g < 3; ++g) {
      const Matrix3 m = seen[i].mul(h.matrix(Word{{g, 1}}), h.field());
      bool found = false;
      for (const auto& s : seen) found = found || s.equals(m);
      if (!found) seen.push_back(m);
    }
  }
  CHECK(seen.size() == 60);
}

TEST_CASE("triangle (2,3,7) is infinite") {
  const TriangleHandle h({"c1", "c2", "c3"}, 2, 3, 7);
  h.verify_identities();
  const Word c1c2{{0, 1}, {1, 1}};
  CHECK_FALSE(h.wp(power(c1c2, 6)));
  CHECK(h.wp(power(c1c2, 7)));
  CHECK(h.elem_order(c1c2).value == 7);
  const Word comm = commutator(Word{{0, 1}}, Word{{1, 1}});
  CHECK(h.elem_order(comm).value == 0);
  for (int k = 1; k <= 10; ++k) CHECK_FALSE(h.wp(power(comm, k)));
  CHECK(h.cyclic_membership(power(comm, 3), comm) == std::optional<std::int64_t>(3));
  CHECK(h.cyclic_membership(power(comm, -2), comm) == std::optional<std::int64_t>(-2));
  CHECK_FALSE(h.cyclic_membership(Word{{0, 1}}, comm).has_value());
  CHECK(h.cyclic_membership(Word{{2, 4}}, Word{{2, 1}}) == std::optional<std::int64_t>(4));
}

TEST_CASE("Klein bottle amalgam normal form") {
  const WhiteHandle kb = white_handle({{}, -2, {}, {}});
  CHECK(kb.kind == WhiteKind::Amalgam);
  const auto& h = dynamic_cast<const AmalgamHandle&>(*kb.handle);
  const Word a = kb.surface_images[0], b = kb.surface_images[1];
  CHECK(h.wp(concat(power(a, 2), power(b, 2))));
  const Word comm = commutator(a, b);
  // a b a^-1 b^-1: four syllables, none in <a^2> = <b^-2>.
  CHECK(h.reduce(comm).length() == 4);
  CHECK_FALSE(h.wp(comm));
  CHECK(h.elem_order(comm).value == 0);
  CHECK(h.cyclic_membership(power(a, 4), power(a, 2)) == std::optional<std::int64_t>(2));
  const Word ab = concat(a, b);
  CHECK(h.cyclic_membership(power(ab, 3), ab) == std::optional<std::int64_t>(3));
  CHECK_FALSE(h.cyclic_membership(a, ab).has_value());
  CHECK(separated(surface_group(-2), comm, 4));
}

TEST_CASE("torus and higher genus surfaces") {
  const WhiteHandle t = white_handle({{}, 1, {}, {}});
  CHECK(t.kind == WhiteKind::Torus);
  const Word y1 = t.surface_images[0], y2 = t.surface_images[1];
  CHECK(t.handle->wp(commutator(y1, y2)));
  CHECK_FALSE(t.handle->wp(concat(y1, y2)));
  CHECK(t.handle->cyclic_membership(power(concat(y1, y2), -2), concat(y1, y2)) == std::optional<std::int64_t>(-2));

  const WhiteHandle g2 = white_handle({{}, 2, {}, {}});
  CHECK(g2.kind == WhiteKind::Hnn);
  const auto& y = g2.surface_images;
  CHECK(g2.handle->wp(concat(commutator(y[0], y[1]), commutator(y[2], y[3]))));
  const Word c13 = commutator(y[0], y[2]);
  CHECK_FALSE(g2.handle->wp(c13));
  CHECK(separated(surface_group(2), c13, 4));
  CHECK(g2.handle->elem_order(y[3]).value == 0);
}

TEST_CASE("surface words against finite quotients") {
  for (int genus : {2, -3}) {
    const WhiteHandle h = white_handle({{}, genus, {}, {}});
    const FpGroup fp = surface_group(genus);
    std::mt19937 rng(31 + genus);
    int trivial = 0;
    for (int i = 0; i < 60; ++i) {
      Word w = test_support::random_word(rng, fp.ngens(), 6);
      if (i % 2 == 0) {
        const Word u = test_support::random_word(rng, fp.ngens(), 3);
        w = concat({w, u, fp.relators[0], inverse(u), inverse(w)});
      }
      Word local;
      for (const Letter& l : w) local = concat(local, power(h.surface_images[l.gen], l.exp));
      if (h.handle->wp(local)) {
        ++trivial;
        CHECK(killed_by_all(fp, w, 3));
      }
    }
    CHECK(trivial >= 30);
  }
}

TEST_CASE("white handles kill their relator and respect boundary orders") {
  int checked = 0;
  for (int genus = -3; genus <= 3; ++genus) {
    for (int p = 0; p <= 4; ++p) {
      std::vector<std::int64_t> ks{0, 1, 2, 3, 5};
      std::vector<int> idx(p, 0);
      for (;;) {
        WhiteGroupSpec spec;
        spec.genus = genus;
        for (int i : idx) spec.k.push_back(ks[i]);
        const WhiteHandle h = white_handle(spec);
        CHECK(h.handle->wp(white_relator_image(spec, h)));
        std::vector<int> kept;
        for (int i = 0; i < p; ++i) {
          if (spec.k[i] == 1) {
            CHECK(h.handle->wp(h.boundary_images[i]));
          } else {
            kept.push_back(i);
            // c_i^{k_i} dies in every case.
            if (spec.k[i] > 0) CHECK(h.handle->wp(power(h.boundary_images[i], spec.k[i])));
          }
        }
        if (genus != 0 || kept.size() >= 3) {
          for (int i : kept) CHECK(h.handle->elem_order(h.boundary_images[i]).value == spec.k[i]);
        }
        ++checked;
        int pos = 0;
        while (pos < p && ++idx[pos] == static_cast<int>(ks.size())) idx[pos++] = 0;
        if (pos == p) break;
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("genus 0 with two kept boundaries is cyclic of gcd order") {
  const WhiteHandle h = white_handle({{4, 6}, 0, {}, {}});
  CHECK(h.handle->elem_order(h.boundary_images[0]).value == 2);
  CHECK(h.handle->wp(concat(h.boundary_images[0], h.boundary_images[1])));
  const WhiteHandle d = white_handle({{3}, 0, {}, {}});
  CHECK(d.kind == WhiteKind::Trivial);
  CHECK(d.handle->wp(d.boundary_images[0]));
}

TEST_CASE("amalgam rejects finite-order edge words") {
  CHECK_THROWS_AS(AmalgamHandle(FreeProductOfCyclics::cyclic("x", 2), FreeProductOfCyclics::cyclic("y", 0),
                                Word{{0, 1}}, Word{{0, 1}}),
                  Error);
}
