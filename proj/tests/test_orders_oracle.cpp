#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "stratifold/errors.hpp"
#include "stratifold/oracle.hpp"
#include "stratifold/order_engine.hpp"
#include "stratifold/pipeline.hpp"
#include "support.hpp"

using namespace stratifold;
using test_support::fixture;

namespace {

const char* kFixtures[] = {"FX-Z3", "FX-S2W", "FX-BS", "FX-ORB", "FX-TOR", "FX-RP2",
                           "FX-KLB", "FX-SPHERE", "FX-TRI-2-3-5", "FX-TRI-2-3-7"};

std::vector<std::int64_t> primes_of(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Exact orders are the true orders: b^sigma dies, no proper divisor does,
// and sigma = 0 leaves small powers alive.
void check_sound(const Solver& s) {
  const auto& a = s.orders();
  REQUIRE(a.exact());
  std::string why;
  CHECK_MESSAGE(verify_certificates(s.stratifold(), a, &why), why);
  for (std::size_t b = 0; b < a.sigma.size(); ++b) {
    const int gen = s.presentation().black_gen(static_cast<int>(b));
    const std::int64_t sg = a.sigma[b];
    if (sg > 0) {
      CHECK(s.solve(Word{{gen, sg}}).answer == Answer::Trivial);
      for (auto p : primes_of(sg)) CHECK(s.solve(Word{{gen, sg / p}}).answer == Answer::Nontrivial);
      CHECK(sg % a.abelian_order[b] == 0);
    } else {
      for (std::int64_t j = 1; j <= 6; ++j) CHECK(s.solve(Word{{gen, j}}).answer == Answer::Nontrivial);
    }
  }
}

std::int64_t cayley_order(const CosetTable& t, int gen) {
  for (std::int64_t j = 1; j <= static_cast<std::int64_t>(t.order); ++j) {
    if (cayley_wp(t, Word{{gen, j}})) return j;
  }
  return 0;
}

}  // namespace

TEST_CASE("seeding by disks and search") {
  SUBCASE("FX-Z3") {
    const Stratifold s = prepare(fixture("FX-Z3"));
    const CertificateStore st = seed_exponents(s, {});
    CHECK(st.sigma() == std::vector<std::int64_t>{3});
    REQUIRE(st.certificates().size() == 1);
    CHECK(st.certificates()[0].rule == "disk");
  }
  SUBCASE("FX-S2W closes under gcd") {
    const Stratifold s = prepare(fixture("FX-S2W"));
    const CertificateStore st = seed_exponents(s, {});
    CHECK(st.sigma() == std::vector<std::int64_t>{1});
    const auto& top = st.certificates()[st.sigma_certificate()[0]];
    CHECK(top.kind == CertificateKind::Gcd);
    CHECK(top.exponent == 1);
  }
  SUBCASE("FX-BS has nothing to certify") {
    const Stratifold s = prepare(fixture("FX-BS"));
    const CertificateStore st = seed_exponents(s, {});
    CHECK(st.sigma() == std::vector<std::int64_t>{0});
    CHECK(st.certificates().empty());
  }
}

TEST_CASE("validity check") {
  const Stratifold z3 = prepare(fixture("FX-Z3"));
  const auto v = validity_check(z3, {0});
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::BoundaryTrivial);
  CHECK(v[0].target == 3);
  CHECK(validity_check(prepare(fixture("FX-BS")), {0}).empty());
  CHECK(validity_check(prepare(fixture("FX-ORB")), {2}).empty());
  CHECK(validity_check(z3, {3}).empty());

  // Annulus with boundary degrees 2 and 3 to different circles, one capped:
  // c_a = c_b^-1 forces b_a^(3*3) = 1 once b_b^3 = 1.
  const Stratifold pair = prepare(parse_graph(
      "white w1 genus 0\nwhite w2 genus 0\nblack b1\nblack b2\n"
      "edge e1 w1 b1 3\nedge e2 w1 b2 1\nedge e3 w2 b2 3\n"));
  const auto pv = validity_check(pair, {0, 3});
  REQUIRE(pv.size() == 1);
  CHECK(pv[0].kind == ViolationKind::BoundaryPair);
  CHECK(pv[0].target == 9);
}

TEST_CASE("resolved orders on fixtures are sound") {
  const std::map<std::string, std::vector<std::int64_t>> expected{
      {"FX-Z3", {3}}, {"FX-S2W", {1}}, {"FX-BS", {0}}, {"FX-ORB", {2}},
      {"FX-TRI-2-3-5", {2, 3, 5}}, {"FX-TRI-2-3-7", {2, 3, 7}}};
  for (const char* name : kFixtures) {
    CAPTURE(name);
    const Solver s(fixture(name));
    if (expected.count(name)) CHECK(s.orders().sigma == expected.at(name));
    check_sound(s);
  }
}

TEST_CASE("budget controls the FX-ORB certificate") {
  Budget tiny;
  tiny.insertions = 1;
  tiny.max_length = 8;
  const Stratifold s = prepare(fixture("FX-ORB"));
  const OrderAssignment a = resolve_orders(s, tiny);
  CHECK_FALSE(a.exact());
  CHECK(a.undetermined == std::vector<int>{0});
  CHECK_THROWS_AS(build_gog(s, a), Error);
  const OrderAssignment b = resolve_orders(s, {});
  CHECK(b.exact());
  CHECK(b.sigma == std::vector<std::int64_t>{2});
}

TEST_CASE("tampered certificates fail verification") {
  const Stratifold s = prepare(fixture("FX-S2W"));
  OrderAssignment a = resolve_orders(s);
  REQUIRE(verify_certificates(s, a));
  OrderAssignment bad = a;
  bad.certificates[0].derivation.steps.pop_back();
  CHECK_FALSE(verify_certificates(s, bad));
  bad = a;
  bad.sigma[0] = 2;
  CHECK_FALSE(verify_certificates(s, bad));
}

TEST_CASE("random graphs: orders agree with coset enumeration") {
  std::mt19937 rng(21);
  Budget wide;
  wide.insertions = 16;
  wide.max_length = 128;
  int finite = 0;
  for (int i = 0; i < 30; ++i) {
    const StratifoldGraph g = test_support::random_graph(rng);
    CAPTURE(serialize_graph(g));
    const Solver s(g, wide);
    check_sound(s);
    const CosetTable t = todd_coxeter(s.presentation(), 20000);
    if (!t.complete) continue;
    ++finite;
    for (std::size_t b = 0; b < g.blacks().size(); ++b) {
      CHECK(cayley_order(t, s.presentation().black_gen(static_cast<int>(b))) == s.orders().sigma[b]);
    }
  }
  CHECK(finite >= 5);
}

TEST_CASE("derive_trivial") {
  const Stratifold orb = prepare(fixture("FX-ORB"));
  const auto d = derive_trivial(orb.presentation, parse_word("b.b1^2", orb.presentation), {});
  REQUIRE(d.has_value());
  CHECK(d->steps.size() == 2);
  const auto none = [](int, std::int64_t) { return false; };
  CHECK(replay_derivation(orb.presentation, *d, none).ok);
  Derivation broken = *d;
  broken.steps[0].sign = -broken.steps[0].sign;
  CHECK_FALSE(replay_derivation(orb.presentation, broken, none).ok);

  const Stratifold tor = prepare(fixture("FX-TOR"));
  const auto c = derive_trivial(tor.presentation, parse_word("[y.w1.1,y.w1.2]", tor.presentation), {});
  REQUIRE(c.has_value());
  CHECK(c->steps.size() == 1);

  const Stratifold bs = prepare(fixture("FX-BS"));
  CHECK_FALSE(derive_trivial(bs.presentation, Word{{0, 1}}, {}).has_value());
}

TEST_CASE("coset enumeration and Cayley evaluation") {
  const Stratifold z3 = prepare(fixture("FX-Z3"));
  const CosetTable t = todd_coxeter(z3.presentation);
  CHECK(t.complete);
  CHECK(t.order == 3);
  CHECK(cayley_wp(t, Word{{0, 3}}));
  CHECK_FALSE(cayley_wp(t, Word{{0, 1}}));

  const Stratifold s2 = prepare(fixture("FX-S2W"));
  const CosetTable u = todd_coxeter(s2.presentation);
  CHECK(u.order == 1);
  for (int g = 0; g < s2.presentation.ngens(); ++g) CHECK(cayley_wp(u, Word{{g, 1}}));

  CHECK(todd_coxeter(prepare(fixture("FX-TRI-2-3-5")).presentation).order == 60);

  const Stratifold bs = prepare(fixture("FX-BS"));
  const CosetTable partial = todd_coxeter(bs.presentation, 500);
  CHECK_FALSE(partial.complete);
  CHECK_THROWS_AS(cayley_wp(partial, Word{{0, 1}}), Error);
}

TEST_CASE("finite quotient search") {
  SUBCASE("FX-BS maps onto a group of order 27 with b of order 9") {
    const Stratifold bs = prepare(fixture("FX-BS"));
    QuotientSearch opts;
    opts.max_degree = 9;
    opts.max_results = 1000;
    const auto qs = finite_quotient_search(bs.presentation, opts);
    bool found = false;
    for (const auto& q : qs) {
      for (const auto& r : bs.presentation.relators()) CHECK(q.order_of(r.word) == 1);
      found = found || (q.group_order() == 27 && q.order_of(Word{{0, 1}}) == 9);
    }
    CHECK(found);
  }
  SUBCASE("FX-ORB: commutator of order 2") {
    const Stratifold orb = prepare(fixture("FX-ORB"));
    const Word comm = parse_word("[y.w1.1,y.w1.2]", orb.presentation);
    for (int degree : {4, 8}) {
      QuotientSearch opts;
      opts.max_degree = degree;
      // Degree 4: D4. Degree 8: the regular representation of Q8, where
      // y1 and y2 act as i and j.
      opts.accept = [&](const Quotient& q) {
        if (q.degree != degree || q.order_of(comm) != 2) return false;
        return degree == 4 || (q.image_orders[3] == 4 && q.image_orders[4] == 4 && q.group_order() == 8);
      };
      const auto qs = finite_quotient_search(orb.presentation, opts);
      REQUIRE(qs.size() == 1);
      CHECK(qs[0].order_of(Word{{0, 1}}) == 2);
    }
  }
  SUBCASE("FX-TOR has a Klein four quotient") {
    const Stratifold tor = prepare(fixture("FX-TOR"));
    QuotientSearch opts;
    opts.max_degree = 4;
    opts.accept = [](const Quotient& q) {
      return q.group_order() == 4 && q.image_orders[0] == 2 && q.image_orders[1] == 2;
    };
    CHECK(finite_quotient_search(tor.presentation, opts).size() == 1);
  }
}

TEST_CASE("abelian lower bounds") {
  for (const char* name : {"FX-Z3", "FX-BS"}) {
    const Stratifold s = prepare(fixture(name));
    CHECK(abelian_order(s, abelianization(s.presentation), 0) == 3);
  }
  const Stratifold orb = prepare(fixture("FX-ORB"));
  CHECK(abelian_order(orb, abelianization(orb.presentation), 0) == 1);
}
