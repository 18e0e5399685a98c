#include "stratifold/order_engine.hpp"

#include <algorithm>
#include <set>

#include "stratifold/errors.hpp"
#include "stratifold/fgroup_handles.hpp"
#include "stratifold/stratifold_gog.hpp"

namespace stratifold {

CertificateStore::CertificateStore(const Stratifold& s, const Budget& budget)
    : s_(s), budget_(budget), sigma_(s.graph.blacks().size(), 0), sigma_cert_(s.graph.blacks().size(), -1) {}

bool CertificateStore::implied(int black, std::int64_t e) const {
  return sigma_[black] > 0 && e % sigma_[black] == 0;
}

std::vector<Lemma> CertificateStore::lemmas() const {
  std::vector<Lemma> out;
  for (std::size_t b = 0; b < sigma_.size(); ++b) {
    if (sigma_[b] > 0) out.push_back({static_cast<int>(b), sigma_[b]});
  }
  return out;
}

bool CertificateStore::add(int black, std::int64_t e, Derivation d, std::string rule) {
  e = e < 0 ? -e : e;
  if (e == 0) return false;
  const auto lemma = [this](int b, std::int64_t x) { return implied(b, x); };
  const ReplayResult r = replay_derivation(s_.presentation, d, lemma);
  if (!r.ok) return false;
  if (static_cast<int>(d.steps.size()) > budget_.insertions ||
      static_cast<int>(r.max_length) > budget_.max_length) {
    return false;
  }
  ExponentCertificate c;
  c.black = black;
  c.exponent = e;
  c.rule = std::move(rule);
  c.derivation = std::move(d);
  certs_.push_back(std::move(c));
  const int idx = static_cast<int>(certs_.size()) - 1;
  const std::int64_t old = sigma_[black];
  if (old == 0) {
    sigma_[black] = e;
    sigma_cert_[black] = idx;
    return true;
  }
  const std::int64_t g = gcd64(old, e);
  if (g != old) {
    ExponentCertificate gc;
    gc.black = black;
    gc.exponent = g;
    gc.kind = CertificateKind::Gcd;
    gc.rule = "gcd";
    gc.left = sigma_cert_[black];
    gc.right = idx;
    certs_.push_back(std::move(gc));
    sigma_[black] = g;
    sigma_cert_[black] = static_cast<int>(certs_.size()) - 1;
  }
  return true;
}

bool verify_certificates(const Stratifold& s, const OrderAssignment& a, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  std::vector<std::int64_t> run(s.graph.blacks().size(), 0);
  const auto lemma = [&run](int b, std::int64_t x) { return run[b] > 0 && x % run[b] == 0; };
  for (std::size_t i = 0; i < a.certificates.size(); ++i) {
    const auto& c = a.certificates[i];
    if (c.kind == CertificateKind::Derived) {
      const ReplayResult r = replay_derivation(s.presentation, c.derivation, lemma);
      if (!r.ok) return fail("certificate " + std::to_string(i) + ": " + r.why);
      const Word expect{{s.presentation.black_gen(c.black), c.exponent}};
      if (free_reduce(c.derivation.start) != expect && free_reduce(c.derivation.start) != inverse(expect)) {
        return fail("certificate " + std::to_string(i) + " does not start at its power");
      }
    } else {
      if (c.left < 0 || c.right < 0 || c.left >= static_cast<int>(i) || c.right >= static_cast<int>(i)) {
        return fail("gcd certificate references a later node");
      }
      const auto& l = a.certificates[c.left];
      const auto& r = a.certificates[c.right];
      if (l.black != c.black || r.black != c.black || gcd64(l.exponent, r.exponent) != c.exponent) {
        return fail("gcd certificate " + std::to_string(i) + " is inconsistent");
      }
    }
    run[c.black] = run[c.black] == 0 ? c.exponent : gcd64(run[c.black], c.exponent);
  }
  for (std::size_t b = 0; b < run.size(); ++b) {
    if (run[b] != a.sigma[b]) return fail("sigma is not the gcd of its certificates");
  }
  return true;
}

namespace {

enum class Action { None, ViaWhite, ViaEdge };

struct RelatorIndex {
  std::vector<int> white;  // per white, -1 when the relator is empty
  std::vector<int> edge;   // per edge
};

RelatorIndex index_relators(const Stratifold& s) {
  RelatorIndex ix;
  ix.white.assign(s.graph.whites().size(), -1);
  ix.edge.assign(s.graph.edges().size(), -1);
  const auto& rels = s.presentation.relators();
  for (std::size_t i = 0; i < rels.size(); ++i) {
    if (rels[i].kind == RelatorKind::White) {
      ix.white[rels[i].source] = static_cast<int>(i);
    } else {
      ix.edge[rels[i].source] = static_cast<int>(i);
    }
  }
  return ix;
}

std::int64_t abs64(std::int64_t x) { return x < 0 ? -x : x; }

// Proves b_a^N = 1 for N a multiple of |m_a|: turn b_a^|m_a| blocks into
// boundary letters, then rewrite boundary letters by the given actions and
// remove certified black powers.
std::optional<Derivation> run_script(const Stratifold& s, const CertificateStore& store, int edge_a,
                                     std::int64_t n, const std::vector<Action>& actions,
                                     const Budget& budget) {
  const auto& g = s.graph;
  const auto& p = s.presentation;
  const RelatorIndex ix = index_relators(s);
  const Edge& ea = g.edges()[edge_a];
  const std::int64_t m = abs64(ea.label);
  if (n <= 0 || n % m != 0 || n > budget.max_length) return std::nullopt;
  const int bgen = p.black_gen(ea.black);
  DerivationBuilder db(p, Word{{bgen, n}});
  auto over = [&] { return static_cast<int>(db.derivation().steps.size()) > budget.insertions; };

  for (std::size_t pos = db.find(bgen); pos != std::string::npos; pos = db.find(bgen)) {
    if (over()) return std::nullopt;
    if (db.run(pos) < static_cast<std::size_t>(m)) return std::nullopt;
    if (!db.substitute(pos, static_cast<std::size_t>(m), ix.edge[edge_a])) return std::nullopt;
  }

  while (!db.done()) {
    if (over()) return std::nullopt;
    const auto& cur = db.current();
    bool acted = false;
    for (std::size_t i = 0; i < cur.size() && !acted; ++i) {
      const int gen = std::abs(cur[i]) - 1;
      const Generator& gd = p.generators()[gen];
      if (gd.role == GeneratorRole::Boundary) {
        const Action act = actions[gd.owner];
        if (act == Action::ViaWhite) {
          const int r = ix.white[g.edges()[gd.owner].white];
          acted = r >= 0 && db.substitute(i, 1, r);
        } else if (act == Action::ViaEdge) {
          acted = db.substitute(i, 1, ix.edge[gd.owner]);
        }
      } else if (gd.role == GeneratorRole::Black && (i == 0 || cur[i - 1] != cur[i])) {
        const auto len = static_cast<std::int64_t>(db.run(i));
        if (store.implied(gd.owner, len)) {
          db.kill_power(i, gd.owner);
          acted = true;
        }
      }
    }
    if (!acted) return std::nullopt;
  }
  if (over() || static_cast<int>(db.max_length()) > budget.max_length) return std::nullopt;
  return db.derivation();
}

}  // namespace

CertificateStore seed_exponents(const Stratifold& s, const Budget& budget) {
  CertificateStore store(s, budget);
  const auto& g = s.graph;
  // Rule D: a genus-0 white with a single edge is a disk on that boundary.
  for (std::size_t w = 0; w < g.whites().size(); ++w) {
    if (g.whites()[w].genus != 0 || g.white_edges(static_cast<int>(w)).size() != 1) continue;
    const int e = g.white_edges(static_cast<int>(w)).front();
    const Edge& edge = g.edges()[e];
    const std::int64_t n = abs64(edge.label);
    if (store.implied(edge.black, n)) continue;
    std::vector<Action> act(g.edges().size(), Action::None);
    act[e] = Action::ViaWhite;
    if (auto d = run_script(s, store, e, n, act, budget)) store.add(edge.black, n, std::move(*d), "disk");
  }
  // Rule C: bounded search for b^|m| over the labels at b.
  for (std::size_t b = 0; b < g.blacks().size(); ++b) {
    std::set<std::int64_t> labels;
    for (int e : g.black_edges(static_cast<int>(b))) labels.insert(abs64(g.edges()[e].label));
    for (std::int64_t n : labels) {
      if (store.implied(static_cast<int>(b), n)) continue;
      const Word target{{s.presentation.black_gen(static_cast<int>(b)), n}};
      if (auto d = derive_trivial(s.presentation, target, budget, store.lemmas())) {
        store.add(static_cast<int>(b), n, std::move(*d), "search");
      }
    }
  }
  return store;
}

std::vector<Violation> validity_check(const Stratifold& s, const std::vector<std::int64_t>& sigma) {
  const auto& g = s.graph;
  std::vector<Violation> out;
  for (std::size_t w = 0; w < g.whites().size(); ++w) {
    const WhiteGroupSpec spec = white_spec(s, static_cast<int>(w), sigma);
    const WhiteHandle h = white_handle(spec);
    const auto& edges = g.white_edges(static_cast<int>(w));
    std::vector<int> kept;
    for (std::size_t i = 0; i < spec.k.size(); ++i) {
      if (spec.k[i] != 1) kept.push_back(static_cast<int>(i));
    }
    for (std::size_t i = 0; i < spec.k.size(); ++i) {
      const std::int64_t actual = h.handle->elem_order(h.boundary_images[i]).value;
      if (actual == spec.k[i]) continue;
      if (h.boundary_order_tag == OrderTag::Assumed || spec.genus != 0 || kept.size() > 2) {
        throw Error(ErrorKind::InvariantViolation,
                    "boundary order mismatch in a " + std::string(to_string(h.kind)) + " handle");
      }
      Violation v;
      v.white = static_cast<int>(w);
      v.edge = edges[i];
      v.required = spec.k[i];
      v.actual = actual;
      const Edge& edge = g.edges()[v.edge];
      v.black = edge.black;
      if (kept.size() == 1) {
        v.kind = ViolationKind::BoundaryTrivial;
        v.target = abs64(edge.label);
      } else {
        const int other = kept[0] == static_cast<int>(i) ? kept[1] : kept[0];
        v.kind = ViolationKind::BoundaryPair;
        v.partner = edges[other];
        v.target = checked_mul(abs64(edge.label), spec.k[other]);
      }
      out.push_back(v);
    }
  }
  return out;
}

std::optional<Derivation> certify_violation(const Stratifold& s, const CertificateStore& store,
                                            const Violation& v, const Budget& budget) {
  const auto& g = s.graph;
  std::vector<Action> act(g.edges().size(), Action::None);
  act[v.edge] = Action::ViaWhite;
  for (int e : g.white_edges(v.white)) {
    if (e == v.edge) continue;
    const std::int64_t k = edge_degree(store.sigma()[g.edges()[e].black], g.edges()[e].label);
    if (k == 1 || e == v.partner) act[e] = Action::ViaEdge;
  }
  if (auto d = run_script(s, store, v.edge, v.target, act, budget)) return d;
  const Word target{{s.presentation.black_gen(v.black), v.target}};
  return derive_trivial(s.presentation, target, budget, store.lemmas());
}

std::int64_t abelian_order(const Stratifold& s, const SmithForm& snf, int black) {
  const AbelianizedImage img = ab_image(Word{{s.presentation.black_gen(black), 1}}, s.presentation, snf);
  for (auto f : img.free_coords) {
    if (f != 0) return 0;
  }
  std::int64_t order = 1;
  std::size_t t = 0;
  for (auto d : snf.diagonal) {
    if (d <= 1) continue;
    order = lcm64(order, d / gcd64(d, img.torsion_coords[t++]));
  }
  return order;
}

OrderAssignment resolve_orders(const Stratifold& s, const Budget& budget) {
  CertificateStore store = seed_exponents(s, budget);
  OrderAssignment out;
  constexpr int kMaxIterations = 256;
  std::vector<Violation> pending;
  for (out.iterations = 0; out.iterations < kMaxIterations; ++out.iterations) {
    pending = validity_check(s, store.sigma());
    if (pending.empty()) break;
    bool progress = false;
    for (const auto& v : pending) {
      if (store.implied(v.black, v.target)) continue;
      auto d = certify_violation(s, store, v, budget);
      if (d && store.add(v.black, v.target, std::move(*d), "violation:" + s.graph.edges()[v.edge].name)) {
        progress = true;
        break;
      }
    }
    if (!progress) break;
  }
  out.sigma = store.sigma();
  out.certificates = store.certificates();
  out.sigma_certificate = store.sigma_certificate();
  if (pending.empty()) {
    out.status = OrderStatus::Exact;
  } else {
    out.status = OrderStatus::Undetermined;
    std::set<int> blacks;
    for (const auto& v : pending) {
      blacks.insert(v.black);
      out.notes.push_back("edge " + s.graph.edges()[v.edge].name + " needs b." +
                          s.graph.blacks()[v.black].name + "^" + std::to_string(v.target) +
                          " = 1 beyond the budget");
    }
    out.undetermined.assign(blacks.begin(), blacks.end());
  }
  const SmithForm snf = abelianization(s.presentation);
  for (std::size_t b = 0; b < s.graph.blacks().size(); ++b) {
    const std::int64_t ab = abelian_order(s, snf, static_cast<int>(b));
    out.abelian_order.push_back(ab);
    const std::int64_t sg = out.sigma[b];
    if (sg > 0 && (ab == 0 || sg % ab != 0)) {
      throw Error(ErrorKind::InvariantViolation, "certified order contradicts the abelianization");
    }
  }
  return out;
}

}  // namespace stratifold
