#include "stratifold/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "stratifold/errors.hpp"

namespace stratifold {

FpGroup to_fp(const Presentation& p) {
  FpGroup g;
  for (const auto& gen : p.generators()) g.names.push_back(gen.name);
  for (const auto& r : p.relators()) g.relators.push_back(r.word);
  return g;
}

// ----------------------------------------------------------- derivations

namespace {

std::vector<int> invert_letters(const std::vector<int>& w) {
  std::vector<int> out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

std::vector<int> rotate_letters(std::vector<int> w, int r) {
  if (!w.empty()) {
    std::rotate(w.begin(), w.begin() + (r % static_cast<int>(w.size())), w.end());
  }
  return w;
}

std::vector<int> power_letters(int gen, std::int64_t e) {
  const int sym = e > 0 ? gen + 1 : -(gen + 1);
  return std::vector<int>(static_cast<std::size_t>(e < 0 ? -e : e), sym);
}

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = v.size();
    for (int x : v) h = h * 1000003u ^ static_cast<std::size_t>(x + 0x9e37);
    return h;
  }
};

}  // namespace

std::vector<int> insertion_letters(const Presentation& p, const Insertion& ins) {
  if (ins.source == InsertionSource::Lemma) {
    if (ins.black < 0 || ins.black >= p.black_count()) {
      throw Error(ErrorKind::InvariantViolation, "lemma insertion names an unknown black");
    }
    return power_letters(p.black_gen(ins.black), ins.exponent);
  }
  if (ins.relator < 0 || ins.relator >= static_cast<int>(p.relators().size())) {
    throw Error(ErrorKind::InvariantViolation, "insertion names an unknown relator");
  }
  std::vector<int> r = expand(p.relators()[ins.relator].word);
  if (ins.sign < 0) r = invert_letters(r);
  return rotate_letters(std::move(r), ins.rotation);
}

ReplayResult replay_derivation(const Presentation& p, const Derivation& d, const LemmaCheck& lemma) {
  ReplayResult res;
  std::vector<int> cur = free_reduce_letters(expand(d.start));
  res.max_length = cur.size();
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const Insertion& ins = d.steps[i];
    if (ins.pos > cur.size()) {
      res.why = "step " + std::to_string(i) + ": position out of range";
      return res;
    }
    if (ins.source == InsertionSource::Lemma && (!lemma || !lemma(ins.black, ins.exponent))) {
      res.why = "step " + std::to_string(i) + ": lemma power is not certified";
      return res;
    }
    const std::vector<int> x = insertion_letters(p, ins);
    cur.insert(cur.begin() + static_cast<std::ptrdiff_t>(ins.pos), x.begin(), x.end());
    res.max_length = std::max(res.max_length, cur.size());
    cur = free_reduce_letters(cur);
  }
  if (!cur.empty()) {
    res.why = "derivation ends in a nonempty word";
    return res;
  }
  res.ok = true;
  return res;
}

std::optional<Derivation> derive_trivial(const Presentation& p, const Word& w, const Budget& budget,
                                         const std::vector<Lemma>& lemmas) {
  struct Candidate {
    std::vector<int> letters;
    Insertion ins;
  };
  std::vector<Candidate> cands;
  {
    std::set<std::vector<int>> seen;
    for (std::size_t r = 0; r < p.relators().size(); ++r) {
      const auto base = expand(p.relators()[r].word);
      for (int sign : {1, -1}) {
        for (int rot = 0; rot < static_cast<int>(base.size()); ++rot) {
          Insertion ins{0, InsertionSource::Relator, static_cast<int>(r), rot, sign, 0, 0};
          auto x = insertion_letters(p, ins);
          if (seen.insert(x).second) cands.push_back({std::move(x), ins});
        }
      }
    }
    for (const auto& l : lemmas) {
      for (std::int64_t e : {l.exponent, -l.exponent}) {
        Insertion ins{0, InsertionSource::Lemma, 0, 0, 1, l.black, e};
        auto x = insertion_letters(p, ins);
        if (!x.empty() && seen.insert(x).second) cands.push_back({std::move(x), ins});
      }
    }
  }
  std::map<int, std::vector<int>> by_first, by_last;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    by_first[cands[i].letters.front()].push_back(static_cast<int>(i));
    by_last[cands[i].letters.back()].push_back(static_cast<int>(i));
  }

  struct Node {
    std::vector<int> word;
    int parent;
    Insertion ins;
    int depth;
  };
  std::vector<Node> nodes;
  std::unordered_set<std::vector<int>, VecHash> visited;
  auto start = free_reduce_letters(expand(w));
  if (start.empty()) return Derivation{w, {}};
  if (static_cast<int>(start.size()) > budget.max_length) return std::nullopt;
  nodes.push_back({start, -1, {}, 0});
  visited.insert(start);

  auto rebuild = [&](int idx, const Insertion& last) {
    Derivation d{w, {}};
    d.steps.push_back(last);
    for (int i = idx; nodes[i].parent >= 0; i = nodes[i].parent) d.steps.push_back(nodes[i].ins);
    std::reverse(d.steps.begin(), d.steps.end());
    return d;
  };

  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (nodes[head].depth >= budget.insertions) continue;
    const std::vector<int> cur = nodes[head].word;
    const int depth = nodes[head].depth;
    for (std::size_t pos = 0; pos <= cur.size(); ++pos) {
      std::vector<int> pick;
      if (pos > 0) {
        if (auto it = by_first.find(-cur[pos - 1]); it != by_first.end()) pick = it->second;
      }
      if (pos < cur.size()) {
        if (auto it = by_last.find(-cur[pos]); it != by_last.end()) {
          pick.insert(pick.end(), it->second.begin(), it->second.end());
        }
      }
      std::sort(pick.begin(), pick.end());
      pick.erase(std::unique(pick.begin(), pick.end()), pick.end());
      for (int ci : pick) {
        const auto& x = cands[ci].letters;
        if (static_cast<int>(cur.size() + x.size()) > budget.max_length) continue;
        std::vector<int> next(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(pos));
        next.insert(next.end(), x.begin(), x.end());
        next.insert(next.end(), cur.begin() + static_cast<std::ptrdiff_t>(pos), cur.end());
        next = free_reduce_letters(next);
        Insertion ins = cands[ci].ins;
        ins.pos = pos;
        if (next.empty()) return rebuild(static_cast<int>(head), ins);
        if (!visited.insert(next).second) continue;
        if (nodes.size() >= budget.node_cap) return std::nullopt;
        nodes.push_back({std::move(next), static_cast<int>(head), ins, depth + 1});
      }
    }
  }
  return std::nullopt;
}

DerivationBuilder::DerivationBuilder(const Presentation& p, Word start) : p_(p) {
  d_.start = std::move(start);
  cur_ = free_reduce_letters(expand(d_.start));
  max_len_ = cur_.size();
}

void DerivationBuilder::insert(const Insertion& ins) {
  const auto x = insertion_letters(p_, ins);
  cur_.insert(cur_.begin() + static_cast<std::ptrdiff_t>(ins.pos), x.begin(), x.end());
  max_len_ = std::max(max_len_, cur_.size());
  cur_ = free_reduce_letters(cur_);
  d_.steps.push_back(ins);
}

bool DerivationBuilder::substitute(std::size_t pos, std::size_t len, int relator) {
  if (pos + len > cur_.size() || len == 0) return false;
  std::vector<int> u_inv(cur_.begin() + static_cast<std::ptrdiff_t>(pos),
                         cur_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  u_inv = invert_letters(u_inv);
  const auto base = expand(p_.relators().at(static_cast<std::size_t>(relator)).word);
  if (base.size() < len) return false;
  for (int sign : {1, -1}) {
    for (int rot = 0; rot < static_cast<int>(base.size()); ++rot) {
      Insertion ins{pos, InsertionSource::Relator, relator, rot, sign, 0, 0};
      const auto x = insertion_letters(p_, ins);
      if (std::equal(u_inv.begin(), u_inv.end(), x.end() - static_cast<std::ptrdiff_t>(len))) {
        insert(ins);
        return true;
      }
    }
  }
  return false;
}

void DerivationBuilder::kill_power(std::size_t pos, int black) {
  const std::size_t n = run(pos);
  const int sym = cur_.at(pos);
  if (std::abs(sym) - 1 != p_.black_gen(black)) {
    throw Error(ErrorKind::InvariantViolation, "kill_power on a non-black letter");
  }
  const auto e = static_cast<std::int64_t>(n) * (sym > 0 ? 1 : -1);
  insert({pos, InsertionSource::Lemma, 0, 0, 1, black, -e});
}

std::size_t DerivationBuilder::find(int gen) const {
  for (std::size_t i = 0; i < cur_.size(); ++i) {
    if (std::abs(cur_[i]) - 1 == gen) return i;
  }
  return std::string::npos;
}

std::size_t DerivationBuilder::run(std::size_t pos) const {
  std::size_t n = 0;
  while (pos + n < cur_.size() && cur_[pos + n] == cur_[pos]) ++n;
  return n;
}

// ------------------------------------------------------ coset enumeration

namespace {

int col_of(int sym) { return sym > 0 ? 2 * (sym - 1) : 2 * (-sym - 1) + 1; }
int inv_col(int col) { return col ^ 1; }

class Enumerator {
 public:
  Enumerator(int ngens, std::size_t cap) : ncols_(2 * ngens), cap_(cap) { new_coset(); }

  bool overflow() const { return overflow_; }

  int new_coset() {
    if (table_.size() >= cap_) {
      overflow_ = true;
      return -1;
    }
    table_.emplace_back(static_cast<std::size_t>(ncols_), -1);
    parent_.push_back(static_cast<int>(parent_.size()));
    return static_cast<int>(table_.size()) - 1;
  }

  bool alive(int c) const { return parent_[c] == c; }

  bool define(int c, int col) {
    const int d = new_coset();
    if (d < 0) return false;
    table_[c][col] = d;
    table_[d][inv_col(col)] = c;
    return true;
  }

  // Holt's scan-and-fill; false on overflow.
  bool scan_and_fill(int alpha, const std::vector<int>& r) {
    int f = alpha, b = alpha;
    int i = 0, j = static_cast<int>(r.size()) - 1;
    while (true) {
      while (i <= j && table_[f][col_of(r[i])] >= 0) f = table_[f][col_of(r[i++])];
      if (i > j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      while (j >= i && table_[b][inv_col(col_of(r[j]))] >= 0) b = table_[b][inv_col(col_of(r[j--]))];
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        table_[f][col_of(r[i])] = b;
        table_[b][inv_col(col_of(r[i]))] = f;
        return true;
      }
      if (!define(f, col_of(r[i]))) return false;
    }
  }

  void run(const std::vector<std::vector<int>>& relators) {
    for (int a = 0; a < static_cast<int>(table_.size()); ++a) {
      for (const auto& r : relators) {
        if (!alive(a)) break;
        if (!scan_and_fill(a, r)) return;
      }
      if (!alive(a)) continue;
      for (int x = 0; x < ncols_; ++x) {
        if (table_[a][x] < 0 && !define(a, x)) return;
      }
    }
  }

  CosetTable result(int ngens) const {
    CosetTable t;
    t.ngens = ngens;
    t.cosets_defined = table_.size();
    if (overflow_) return t;
    std::vector<int> renum(table_.size(), -1);
    int n = 0;
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (alive(static_cast<int>(c))) renum[c] = n++;
    }
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (!alive(static_cast<int>(c))) continue;
      std::vector<int> row(static_cast<std::size_t>(ncols_));
      for (int x = 0; x < ncols_; ++x) row[x] = renum[rep(table_[c][x])];
      t.table.push_back(std::move(row));
    }
    t.complete = true;
    t.order = static_cast<std::size_t>(n);
    return t;
  }

 private:
  int rep(int k) const {
    while (parent_[k] != k) k = parent_[k];
    return k;
  }

  int rep_compress(int k) {
    int r = k;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[k] != r) {
      const int next = parent_[k];
      parent_[k] = r;
      k = next;
    }
    return r;
  }

  void merge(int k, int l, std::deque<int>& q) {
    k = rep_compress(k);
    l = rep_compress(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    parent_[l] = k;
    q.push_back(l);
  }

  void coincidence(int a, int b) {
    std::deque<int> q;
    merge(a, b, q);
    while (!q.empty()) {
      const int g = q.front();
      q.pop_front();
      for (int x = 0; x < ncols_; ++x) {
        const int d = table_[g][x];
        if (d < 0) continue;
        table_[d][inv_col(x)] = -1;
        const int mu = rep_compress(g);
        const int nu = rep_compress(d);
        if (table_[mu][x] >= 0) {
          merge(nu, table_[mu][x], q);
        } else if (table_[nu][inv_col(x)] >= 0) {
          merge(mu, table_[nu][inv_col(x)], q);
        } else {
          table_[mu][x] = nu;
          table_[nu][inv_col(x)] = mu;
        }
      }
    }
  }

  int ncols_;
  std::size_t cap_;
  bool overflow_ = false;
  std::vector<std::vector<int>> table_;
  std::vector<int> parent_;
};

}  // namespace

CosetTable todd_coxeter(const FpGroup& g, std::size_t coset_cap) {
  std::vector<std::vector<int>> rels;
  for (const auto& r : g.relators) {
    auto x = free_reduce_letters(expand(r));
    if (!x.empty()) rels.push_back(std::move(x));
  }
  Enumerator e(g.ngens(), coset_cap);
  e.run(rels);
  return e.result(g.ngens());
}

CosetTable todd_coxeter(const Presentation& p, std::size_t coset_cap) {
  return todd_coxeter(to_fp(p), coset_cap);
}

bool cayley_wp(const CosetTable& t, const Word& w) {
  if (!t.complete) throw Error(ErrorKind::IncompleteTable, "coset table is not complete");
  int c = 0;
  for (int sym : expand(w)) {
    if (std::abs(sym) > t.ngens) throw Error(ErrorKind::UnknownGenerator, "letter outside the table");
    c = t.table[c][col_of(sym)];
  }
  return c == 0;
}

// ---------------------------------------------------- finite quotients

std::int64_t permutation_order(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  std::int64_t order = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::int64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      ++len;
    }
    order = lcm64(order, len);
  }
  return order;
}

Permutation Quotient::image(const Word& w) const {
  Permutation out(static_cast<std::size_t>(degree));
  std::iota(out.begin(), out.end(), 0);
  for (int sym : expand(w)) {
    const Permutation& g = images.at(static_cast<std::size_t>(std::abs(sym) - 1));
    if (sym > 0) {
      for (int& x : out) x = g[x];
    } else {
      Permutation inv(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) inv[g[i]] = static_cast<int>(i);
      for (int& x : out) x = inv[x];
    }
  }
  return out;
}

std::int64_t Quotient::order_of(const Word& w) const { return permutation_order(image(w)); }

std::int64_t Quotient::group_order(std::size_t cap) const {
  Permutation id(static_cast<std::size_t>(degree));
  std::iota(id.begin(), id.end(), 0);
  std::set<Permutation> seen{id};
  std::deque<Permutation> q{id};
  while (!q.empty()) {
    const Permutation cur = q.front();
    q.pop_front();
    for (const auto& g : images) {
      Permutation next(cur.size());
      for (std::size_t i = 0; i < cur.size(); ++i) next[i] = g[cur[i]];
      if (seen.insert(next).second) {
        if (seen.size() > cap) return 0;
        q.push_back(std::move(next));
      }
    }
  }
  return static_cast<std::int64_t>(seen.size());
}

namespace {

// Eliminates generators occurring exactly once in some relator.
struct Reduced {
  FpGroup group;
  std::vector<Word> images;  // original generator -> word over group
};

Reduced tietze_lite(const FpGroup& g) {
  const int n = g.ngens();
  std::vector<Word> images(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) images[i] = {{i, 1}};
  std::vector<Word> rels;
  for (const auto& r : g.relators) {
    auto x = free_reduce(r);
    if (!x.empty()) rels.push_back(x);
  }
  std::vector<bool> alive(static_cast<std::size_t>(n), true);

  auto substitute = [](const Word& w, int x, const Word& value) {
    Word out;
    for (const Letter& l : w) out = concat(out, l.gen == x ? power(value, l.exp) : Word{l});
    return out;
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t ri = 0; ri < rels.size() && !progress; ++ri) {
      const Word& r = rels[ri];
      std::map<int, std::int64_t> count;
      for (const Letter& l : r) count[l.gen] += l.exp < 0 ? -l.exp : l.exp;
      for (std::size_t k = 0; k < r.size(); ++k) {
        if (count[r[k].gen] != 1) continue;
        const int x = r[k].gen;
        // r = A x^e B  =>  x = (A^-1 B^-1)^e
        const Word a(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k));
        const Word b(r.begin() + static_cast<std::ptrdiff_t>(k) + 1, r.end());
        const Word value = power(concat(inverse(a), inverse(b)), r[k].exp);
        rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(ri));
        for (auto& other : rels) other = substitute(other, x, value);
        for (auto& img : images) img = substitute(img, x, value);
        rels.erase(std::remove_if(rels.begin(), rels.end(), [](const Word& w) { return w.empty(); }),
                   rels.end());
        alive[x] = false;
        progress = true;
        break;
      }
    }
  }

  std::vector<int> renum(static_cast<std::size_t>(n), -1);
  Reduced out;
  for (int i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    renum[i] = out.group.ngens();
    out.group.names.push_back(g.names[i]);
  }
  auto rename = [&](const Word& w) {
    Word o;
    for (const Letter& l : w) o.push_back({renum[l.gen], l.exp});
    return o;
  };
  for (const auto& r : rels) out.group.relators.push_back(rename(r));
  for (const auto& img : images) out.images.push_back(rename(img));
  return out;
}

class LowIndex {
 public:
  LowIndex(const Reduced& red, const QuotientSearch& opts, std::vector<Quotient>& out)
      : red_(red), opts_(opts), out_(out), ngens_(red.group.ngens()), ncols_(2 * red.group.ngens()) {
    for (const auto& r : red.group.relators) {
      auto x = free_reduce_letters(expand(r));
      if (!x.empty()) rels_.push_back(std::move(x));
    }
  }

  bool stopped() const { return stopped_; }

  void search_degree(int degree) {
    degree_ = degree;
    std::vector<std::vector<int>> table(static_cast<std::size_t>(degree),
                                        std::vector<int>(static_cast<std::size_t>(ncols_), -1));
    if (ncols_ == 0) {
      if (degree == 1) emit(table);
      return;
    }
    if (propagate(table, 1)) recurse(table, 1);
  }

 private:
  bool propagate(std::vector<std::vector<int>>& t, int count) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int c = 0; c < count; ++c) {
        for (const auto& r : rels_) {
          int f = c, i = 0, j = static_cast<int>(r.size()) - 1, b = c;
          while (i <= j && t[f][col_of(r[i])] >= 0) f = t[f][col_of(r[i++])];
          if (i > j) {
            if (f != c) return false;
            continue;
          }
          while (j >= i && t[b][inv_col(col_of(r[j]))] >= 0) b = t[b][inv_col(col_of(r[j--]))];
          if (j < i) {
            if (f != b) return false;
            continue;
          }
          if (i == j) {
            const int col = col_of(r[i]);
            if (t[b][inv_col(col)] >= 0 && t[b][inv_col(col)] != f) return false;
            t[f][col] = b;
            t[b][inv_col(col)] = f;
            changed = true;
          }
        }
      }
    }
    return true;
  }

  void recurse(const std::vector<std::vector<int>>& t, int count) {
    if (stopped_) return;
    if (++nodes_ > opts_.node_cap) {
      stopped_ = true;
      return;
    }
    int uc = -1, ux = -1;
    for (int c = 0; c < count && uc < 0; ++c) {
      for (int x = 0; x < ncols_; ++x) {
        if (t[c][x] < 0) {
          uc = c;
          ux = x;
          break;
        }
      }
    }
    if (uc < 0) {
      if (count == degree_) emit(t);
      return;
    }
    const int limit = std::min(count + 1, degree_);
    for (int d = 0; d < limit && !stopped_; ++d) {
      if (t[d][inv_col(ux)] >= 0) continue;
      auto next = t;
      next[uc][ux] = d;
      next[d][inv_col(ux)] = uc;
      const int nc = d == count ? count + 1 : count;
      if (propagate(next, nc)) recurse(next, nc);
    }
  }

  void emit(const std::vector<std::vector<int>>& t) {
    std::vector<Permutation> gens;
    for (int g = 0; g < ngens_; ++g) {
      Permutation p(static_cast<std::size_t>(degree_));
      for (int c = 0; c < degree_; ++c) p[c] = t[c][2 * g];
      gens.push_back(std::move(p));
    }
    Quotient reduced_q{degree_, gens, {}};
    Quotient q;
    q.degree = degree_;
    for (const auto& img : red_.images) {
      q.images.push_back(reduced_q.image(img));
      q.image_orders.push_back(permutation_order(q.images.back()));
    }
    if (opts_.accept) {
      if (!opts_.accept(q)) return;
      out_.push_back(std::move(q));
      stopped_ = true;
      return;
    }
    out_.push_back(std::move(q));
    if (out_.size() >= opts_.max_results) stopped_ = true;
  }

  const Reduced& red_;
  const QuotientSearch& opts_;
  std::vector<Quotient>& out_;
  int ngens_;
  int ncols_;
  int degree_ = 1;
  std::vector<std::vector<int>> rels_;
  std::size_t nodes_ = 0;
  bool stopped_ = false;
};

}  // namespace

std::vector<Quotient> finite_quotient_search(const FpGroup& g, const QuotientSearch& opts) {
  const Reduced red = tietze_lite(g);
  std::vector<Quotient> out;
  LowIndex li(red, opts, out);
  for (int d = 1; d <= opts.max_degree && !li.stopped(); ++d) li.search_degree(d);
  // Soundness: every relator must map to the identity.
  for (const auto& q : out) {
    for (const auto& r : g.relators) {
      if (q.order_of(r) != 1) throw Error(ErrorKind::InvariantViolation, "quotient violates a relator");
    }
  }
  return out;
}

std::vector<Quotient> finite_quotient_search(const Presentation& p, const QuotientSearch& opts) {
  return finite_quotient_search(to_fp(p), opts);
}

}  // namespace stratifold
