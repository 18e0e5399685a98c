// Acceptance run: one PASS/FAIL line per criterion.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "stratifold/decisions.hpp"
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

// Collects failed checks; the criterion passes iff none failed.
struct Checker {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

Answer answer(const Solver& s, const std::string& text) { return s.solve_text(text).answer; }

bool exact_sigma(const Solver& s, std::vector<std::int64_t> sigma) {
  return s.orders().exact() && s.orders().sigma == sigma;
}

Budget wide_budget() {
  Budget b;
  b.insertions = 16;
  b.max_length = 128;
  return b;
}

// Every splice drops the loop length by two and the trace replays.
void check_verdict(Checker& c, const GraphOfGroups& g, const Verdict& v, const std::string& where) {
  std::size_t len = v.initial.length();
  for (const auto& step : v.trace) {
    c.expect(step.length_before == len, where + ": splice length bookkeeping");
    len -= 2;
  }
  c.expect(len == v.reduced_length, where + ": final length");
  std::string why;
  c.expect(replay_trace(g, v, &why), where + ": trace replay: " + why);
}

void all_words(int ngens, std::size_t max_len, const std::function<void(const Word&)>& f) {
  std::vector<int> letters;
  std::function<void()> rec = [&]() {
    Word w;
    for (int l : letters) w.push_back(Letter{l > 0 ? l - 1 : -l - 1, l > 0 ? 1 : -1});
    f(free_reduce(w));
    if (letters.size() == max_len) return;
    for (int g = 1; g <= ngens; ++g) {
      for (int s : {g, -g}) {
        letters.push_back(s);
        rec();
        letters.pop_back();
      }
    }
  };
  rec();
}

void criterion1(Checker& c) {
  const Solver s(fixture("FX-Z3"));
  c.expect(exact_sigma(s, {3}), "sigma(b1) = 3 Exact");
  c.expect(answer(s, "b.b1^3") == Answer::Trivial, "b^3 Trivial");
  c.expect(answer(s, "b.b1") == Answer::Nontrivial, "b Nontrivial");
  c.expect(answer(s, "b.b1^2") == Answer::Nontrivial, "b^2 Nontrivial");
  const CosetTable t = todd_coxeter(s.presentation());
  c.expect(t.complete && t.order == 3, "coset enumeration order 3");
  if (!t.complete) return;
  std::size_t n = 0, mismatches = 0;
  all_words(s.presentation().ngens(), 8, [&](const Word& w) {
    ++n;
    const WordResult r = s.solve(w);
    if ((r.answer == Answer::Trivial) != cayley_wp(t, w) || !r.certified) ++mismatches;
  });
  c.expect(mismatches == 0, std::to_string(mismatches) + " disagreements with the Cayley table");
  c.note(std::to_string(n) + " words");
}

void criterion2(Checker& c) {
  const Solver s(fixture("FX-S2W"));
  c.expect(exact_sigma(s, {1}), "sigma(b1) = 1");
  c.expect(is_simply_connected(s), "simply connected");
  c.expect(prune(s.stratifold().input).success, "prune succeeds");
  const auto n = wedge_check(s);
  const auto& g = s.stratifold().graph;
  c.expect(n == std::optional<std::int64_t>(1), "wedge count 1");
  c.expect(n && *n == static_cast<std::int64_t>(g.whites().size()) - static_cast<std::int64_t>(g.blacks().size()),
           "wedge count = n_w - n_b");
  const CosetTable t = todd_coxeter(s.presentation());
  c.expect(t.complete && t.order == 1, "coset enumeration order 1");
}

void criterion3(Checker& c) {
  const Solver tor(fixture("FX-TOR"));
  for (const auto& r : tor.presentation().relators()) c.expect(tor.solve(r.word).answer == Answer::Trivial, "FX-TOR relator");
  c.expect(answer(tor, "y.w1.1*y.w1.2") == Answer::Nontrivial, "FX-TOR y1 y2");

  const Solver rp2(fixture("FX-RP2"));
  c.expect(answer(rp2, "y.w1.1^2") == Answer::Trivial, "FX-RP2 y1^2");
  c.expect(answer(rp2, "y.w1.1") == Answer::Nontrivial, "FX-RP2 y1");

  const Solver klb(fixture("FX-KLB"));
  c.expect(answer(klb, "y.w1.1^2*y.w1.2^2") == Answer::Trivial, "FX-KLB a^2 b^2");
  c.expect(answer(klb, "[y.w1.1,y.w1.2]") == Answer::Nontrivial, "FX-KLB [a,b]");
  // In <a> *_{a^2 = b^-2} <b>, a b a^-1 b^-1 has four syllables of odd
  // exponent, none in the amalgamated subgroup.
  const WhiteHandle& w = klb.gog().whites[0];
  const auto* h = dynamic_cast<const AmalgamHandle*>(w.handle.get());
  c.expect(h != nullptr, "FX-KLB white is an amalgam");
  if (!h) return;
  const AmalgamHandle::Reduced red = h->reduce(commutator(w.surface_images[0], w.surface_images[1]));
  c.expect(!red.in_c && red.syllables.size() == 4, "[a,b] has normal form length 4");
  for (std::size_t i = 0; i < red.syllables.size(); ++i) {
    const auto& syl = red.syllables[i];
    c.expect(syl.side == static_cast<int>(i % 2), "syllables alternate a, b, a, b");
    c.expect(syl.word.size() == 1 && (syl.word[0].exp == 1 || syl.word[0].exp == -1), "syllables are a^+-1, b^+-1");
  }
}

void criterion4(Checker& c) {
  const Solver s(fixture("FX-BS"));
  const auto& p = s.presentation();
  c.expect(exact_sigma(s, {0}), "sigma(b1) = 0 Exact");
  const Word t = parse_word("t.e2", p);
  c.expect(s.solve(t).answer == Answer::Nontrivial, "t Nontrivial");
  c.expect(!ab_image(t, p, s.snf()).is_zero(), "t nonzero in H1");
  for (const auto& r : p.relators()) c.expect(s.solve(r.word).answer == Answer::Trivial, "relator Trivial");
  const Word b3 = parse_word("b.b1^3", p);
  c.expect(s.solve(b3).answer == Answer::Nontrivial, "b^3 Nontrivial");
  QuotientSearch opts;
  opts.max_degree = 9;
  const int b = p.black_gen(0);
  opts.accept = [b](const Quotient& q) { return q.image_orders[b] == 9 && q.group_order() == 27; };
  const auto qs = finite_quotient_search(p, opts);
  c.expect(qs.size() == 1, "quotient of order 27 with b of order 9");
  if (!qs.empty()) c.expect(qs[0].order_of(b3) == 3, "b^3 survives in the quotient");
}

void criterion5(Checker& c) {
  const Solver s(fixture("FX-ORB"));
  const auto& p = s.presentation();
  c.expect(exact_sigma(s, {2}), "sigma(b1) = 2 Exact");
  c.expect(answer(s, "b.b1^2") == Answer::Trivial, "b^2 Trivial");
  c.expect(answer(s, "b.b1") == Answer::Nontrivial, "b Nontrivial");
  const Word comm = parse_word("[y.w1.1,y.w1.2]", p);
  const Word b = parse_word("b.b1", p);
  QuotientSearch opts;
  opts.max_degree = 4;
  opts.accept = [&](const Quotient& q) { return q.order_of(comm) == 2; };
  const auto qs = finite_quotient_search(p, opts);
  c.expect(qs.size() == 1, "quotient with commutator of order 2");
  if (!qs.empty()) c.expect(qs[0].order_of(b) == 2, "b has order 2 in the quotient");
}

// The (c1c2)^k family cannot all be nontrivial: c1 c2 = c3^-1 has order 7.
void criterion6(Checker& c) {
  const Solver s(fixture("FX-TRI-2-3-5"));
  const CosetTable t = todd_coxeter(s.presentation());
  c.expect(t.complete && t.order == 60, "FX-TRI-2-3-5 coset enumeration order 60");
  if (t.complete) {
    std::mt19937 rng(6);
    int disagreements = 0, trivial = 0;
    for (int i = 0; i < 200; ++i) {
      const Word w = test_support::random_word(rng, s.presentation().ngens(), 8);
      const bool expect = cayley_wp(t, w);
      trivial += expect;
      disagreements += (s.solve(w).answer == Answer::Trivial) != expect;
    }
    c.expect(disagreements == 0, std::to_string(disagreements) + " disagreements on 200 words");
    c.note(std::to_string(trivial) + "/200 trivial");
  }

  const Solver u(fixture("FX-TRI-2-3-7"));
  const WhiteHandle& centre = u.gog().whites[0];
  const auto* tri = dynamic_cast<const TriangleHandle*>(centre.handle.get());
  c.expect(tri != nullptr, "FX-TRI-2-3-7 centre is a triangle handle");
  c.expect(answer(u, "c.e1*c.e2*c.e3") == Answer::Trivial, "c1 c2 c3 Trivial");
  std::vector<int> trivial_k;
  for (int k = 1; k <= 10; ++k) {
    const Answer a = answer(u, "(c.e1*c.e2)^" + std::to_string(k));
    bool matrix_identity = false;
    if (tri) {
      const Word c1c2 = concat(centre.boundary_images[0], centre.boundary_images[1]);
      matrix_identity = tri->matrix(power(c1c2, k)).equals(Matrix3::identity(tri->field()));
      c.expect(matrix_identity == (a == Answer::Trivial), "solver and Tits matrix agree at k=" + std::to_string(k));
    }
    if (a != Answer::Nontrivial) trivial_k.push_back(k);
  }
  for (int k : trivial_k) {
    c.expect(false, "(c1c2)^" + std::to_string(k) + " is Trivial: c1 c2 = c3^-1 and c3^7 = 1");
  }
}

void criterion7(Checker& c) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(7);
  const Budget wide = wide_budget();
  int graphs = 0, products = 0, with_blacks = 0;
  for (; graphs < 25 || with_blacks < 20; ++graphs) {
    const StratifoldGraph g = test_support::random_graph(rng, 6, 4);
    const std::string where = serialize_graph(g);
    with_blacks += !g.blacks().empty();
    const Solver s(g, wide);
    c.expect(s.orders().exact(), "orders Exact for\n" + where);
    const auto& rels = s.presentation().relators();
    for (const auto& r : rels) c.expect(s.solve(r.word).answer == Answer::Trivial, "relator Trivial in\n" + where);
    for (int i = 0; i < 200 && !rels.empty(); ++i) {
      Word w;
      const auto n = test_support::uniform(rng, 1, 4);
      for (std::int64_t j = 0; j < n; ++j) {
        const Word u = test_support::random_word(rng, s.presentation().ngens(), 4);
        Word r = rels[test_support::uniform(rng, 0, static_cast<std::int64_t>(rels.size()) - 1)].word;
        if (test_support::uniform(rng, 0, 1)) r = inverse(r);
        w = concat({w, u, r, inverse(u)});
      }
      ++products;
      c.expect(s.solve(w).answer == Answer::Trivial, "relator product Trivial in\n" + where);
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(secs < 60, "runtime under 60 s");
  std::ostringstream os;
  os << graphs << " graphs (" << with_blacks << " with blacks), " << products << " products, " << secs << " s";
  c.note(os.str());
}

void criterion8(Checker& c) {
  std::mt19937 rng(8);
  int words = 0, violations = 0, nontrivial = 0;
  for (const char* name : kFixtures) {
    const Solver s(fixture(name));
    const auto& p = s.presentation();
    for (int i = 0; i < 150; ++i) {
      Word w = test_support::random_word(rng, p.ngens(), 8);
      if (i % 3 == 0) w = concat(w, inverse(w));
      if (i % 3 == 1 && !p.relators().empty()) w = concat({w, p.relators()[i % p.relators().size()].word, inverse(w)});
      const Answer a = s.solve(w).answer;
      const bool zero = ab_image(w, p, s.snf()).is_zero();
      ++words;
      nontrivial += !zero;
      if ((a == Answer::Trivial && !zero) || (!zero && a != Answer::Nontrivial)) ++violations;
    }
  }
  c.expect(violations == 0, std::to_string(violations) + " violations");
  c.note(std::to_string(words) + " words, " + std::to_string(nontrivial) + " with nonzero H1 image");
}

void check_handles(Checker& c, const Solver& s, const std::string& name) {
  const auto& gog = s.gog();
  for (std::size_t w = 0; w < gog.whites.size(); ++w) {
    const WhiteHandle& h = gog.whites[w];
    const std::string where = name + " white " + std::to_string(w);
    c.expect(h.handle->wp(white_relator_image(gog.specs[w], h)), where + ": relator killed");
    if (const auto* a = dynamic_cast<const AmalgamHandle*>(h.handle.get())) {
      c.expect(a->factor(0).elem_order(a->z(0)).value == 0 && a->factor(1).elem_order(a->z(1)).value == 0,
               where + ": amalgamated element of infinite order");
    }
    if (const auto* t = dynamic_cast<const TriangleHandle*>(h.handle.get())) {
      try {
        t->verify_identities();
      } catch (const Error& e) {
        c.expect(false, where + ": Tits identities: " + e.what());
      }
    }
  }
  c.expect(injectivity_issues(s.stratifold(), gog).empty(), name + ": edge maps injective");
}

void criterion9(Checker& c) {
  std::mt19937 rng(9);
  int traces = 0, certificates = 0;
  auto run = [&](const Solver& s, const std::string& name) {
    std::string why;
    c.expect(verify_certificates(s.stratifold(), s.orders(), &why), name + ": certificates: " + why);
    certificates += static_cast<int>(s.orders().certificates.size());
    check_handles(c, s, name);
    const auto& p = s.presentation();
    for (int i = 0; i < 40; ++i) {
      Word w = test_support::random_word(rng, p.ngens(), 6);
      if (i % 2 == 0 && !p.relators().empty()) {
        w = concat({w, p.relators()[i % p.relators().size()].word, inverse(w)});
      }
      const WordResult r = s.solve(w);
      if (!r.verdict) continue;
      ++traces;
      check_verdict(c, s.gog().gog, *r.verdict, name);
    }
  };
  for (const char* name : kFixtures) run(Solver(fixture(name)), name);
  for (int i = 0; i < 15; ++i) {
    const StratifoldGraph g = test_support::random_graph(rng, 6, 4);
    run(Solver(g, wide_budget()), serialize_graph(g));
  }
  c.note(std::to_string(traces) + " traces, " + std::to_string(certificates) + " certificates");
}

struct Run {
  int status = -1;
  std::string out, err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run_cli(const std::string& args) {
  const std::string out = "acceptance_cli.out", err = "acceptance_cli.err";
  const std::string cmd = std::string("\"") + STRATIFOLD_CLI + "\" " + args + " >" + out + " 2>" + err;
  const int raw = std::system(cmd.c_str());
  Run r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  std::remove(out.c_str());
  std::remove(err.c_str());
  return r;
}

void criterion10(Checker& c) {
  const std::string orb = "\"" + test_support::fixture_path("FX-ORB") + "\"";
  const Run tiny = run_cli("--json --budget 1,8 order " + orb);
  c.expect(tiny.status == 4, "tiny budget exits 4 (got " + std::to_string(tiny.status) + ")");
  c.expect(tiny.err.find("b1") != std::string::npos, "stderr names b1");
  c.expect(tiny.out.find("\"undetermined\":[\"b1\"]") != std::string::npos, "JSON lists b1 as undetermined");
  const Run solve = run_cli("--budget 1,8 solve " + orb + " b.b1");
  c.expect(solve.status == 4, "solve under tiny budget exits 4");
  const Run wide = run_cli("--json --budget 6,64 order " + orb);
  c.expect(wide.status == 0, "default budget exits 0");
  c.expect(wide.out.find("\"status\":\"exact\"") != std::string::npos &&
               wide.out.find("\"b1\":2") != std::string::npos,
           "default budget gives Exact sigma(b1) = 2");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Checker&)>>> criteria{
      {"FX-Z3 orders and exhaustive words", criterion1},
      {"FX-S2W simple connectivity", criterion2},
      {"surface fixtures", criterion3},
      {"FX-BS", criterion4},
      {"FX-ORB", criterion5},
      {"triangle fixtures", criterion6},
      {"random relator suite", criterion7},
      {"abelianization consistency", criterion8},
      {"mechanical invariants", criterion9},
      {"undetermined path", criterion10},
  };
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Checker c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const int n = static_cast<int>(i) + 1;
    std::cout << (c.failures.empty() ? "PASS " : "FAIL ") << n << ": " << criteria[i].first;
    for (const auto& s : c.notes) std::cout << " [" << s << "]";
    std::cout << "\n";
    for (const auto& f : c.failures) std::cout << "    " << f << "\n";
    std::cout.flush();
    // The (c1c2)^7 failure is the only known one; anything else fails the run.
    bool known = n == 6 && !c.failures.empty();
    for (const auto& f : c.failures) known = known && f.rfind("(c1c2)^7 is Trivial", 0) == 0;
    if (!c.failures.empty() && !known) ++unexpected;
  }
  std::cout.flush();
  return unexpected == 0 ? 0 : 1;
}
