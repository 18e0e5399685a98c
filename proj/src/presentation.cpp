#include "stratifold/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

#include "stratifold/errors.hpp"

namespace stratifold {

Word Presentation::surface_word(int w) const {
  const int genus = white_genus_[w];
  const auto& ys = surface_gen_[w];
  Word q;
  if (genus > 0) {
    for (int i = 0; i < genus; ++i) {
      const Word a{{ys[2 * i], 1}}, b{{ys[2 * i + 1], 1}};
      q = concat(q, commutator(a, b));
    }
  } else {
    for (int y : ys) q.push_back({y, 2});
  }
  return free_reduce(q);
}

std::string Presentation::format_word(const Word& w) const {
  if (w.empty()) return "1";
  std::ostringstream out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out << " * ";
    out << generators_.at(static_cast<std::size_t>(w[i].gen)).name;
    if (w[i].exp != 1) out << '^' << w[i].exp;
  }
  return out.str();
}

std::string Presentation::to_string() const {
  std::ostringstream out;
  out << "generators:";
  for (const auto& g : generators_) out << ' ' << g.name;
  out << "\nrelators:\n";
  for (const auto& r : relators_) out << "  " << format_word(r.word) << '\n';
  return out.str();
}

Presentation natural_presentation(const StratifoldGraph& g, const MaximalTree& t) {
  Presentation p;
  const auto nw = g.whites().size();
  const auto nb = g.blacks().size();
  const auto ne = g.edges().size();
  p.black_gen_.assign(nb, -1);
  p.boundary_gen_.assign(ne, -1);
  p.stable_gen_.assign(ne, -1);
  p.surface_gen_.assign(nw, {});
  p.white_genus_.resize(nw);

  auto add = [&](GeneratorRole role, int owner, int index, std::string name) {
    p.generators_.push_back({role, owner, index, std::move(name)});
    return static_cast<int>(p.generators_.size()) - 1;
  };
  for (std::size_t b = 0; b < nb; ++b) {
    p.black_gen_[b] = add(GeneratorRole::Black, static_cast<int>(b), 0, "b." + g.blacks()[b].name);
  }
  for (std::size_t e = 0; e < ne; ++e) {
    p.boundary_gen_[e] = add(GeneratorRole::Boundary, static_cast<int>(e), 0, "c." + g.edges()[e].name);
  }
  for (std::size_t w = 0; w < nw; ++w) {
    const auto& wv = g.whites()[w];
    p.white_genus_[w] = wv.genus;
    for (int i = 1; i <= surface_rank(wv.genus); ++i) {
      p.surface_gen_[w].push_back(add(GeneratorRole::Surface, static_cast<int>(w), i,
                                      "y." + wv.name + "." + std::to_string(i)));
    }
  }
  for (int e : t.non_tree_edges()) {
    p.stable_gen_[e] = add(GeneratorRole::Stable, e, 0, "t." + g.edges()[e].name);
  }

  for (std::size_t w = 0; w < nw; ++w) {
    Word r;
    for (int e : g.white_edges(static_cast<int>(w))) r.push_back({p.boundary_gen_[e], 1});
    r = concat(r, p.surface_word(static_cast<int>(w)));
    if (!r.empty()) p.relators_.push_back({RelatorKind::White, static_cast<int>(w), r});
  }
  for (int e : t.tree_edges()) {
    const Edge& edge = g.edges()[e];
    p.relators_.push_back({RelatorKind::TreeEdge, e,
                           {{p.black_gen_[edge.black], edge.label}, {p.boundary_gen_[e], -1}}});
  }
  for (int e : t.non_tree_edges()) {
    const Edge& edge = g.edges()[e];
    const int tg = p.stable_gen_[e];
    p.relators_.push_back({RelatorKind::NonTreeEdge, e,
                           {{tg, -1},
                            {p.boundary_gen_[e], 1},
                            {tg, 1},
                            {p.black_gen_[edge.black], -edge.label}}});
  }
  return p;
}

Stratifold prepare(const StratifoldGraph& g) {
  MaximalTree t = canonical_tree(g);
  NormalizedGraph n = normalize_orientations(g, t);
  Presentation p = natural_presentation(n.graph, t);
  return Stratifold{g, std::move(n.graph), std::move(t), std::move(n.flipped_edges),
                    std::move(p)};
}

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, const Presentation& p) : text_(text), p_(p) {}

  Word parse() {
    skip_ws();
    Word w = parse_product();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Syntax, "word: " + msg + " at column " + std::to_string(pos_ + 1));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Word parse_product() {
    Word w = parse_factor();
    while (eat('*')) w = concat(w, parse_factor());
    return w;
  }

  Word parse_factor() {
    Word base = parse_atom();
    if (eat('^')) {
      skip_ws();
      const std::size_t start = pos_;
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string digits(text_.substr(start, pos_ - start));
      if (digits.empty() || digits == "-" || digits == "+") fail("expected exponent");
      std::int64_t k = 0;
      try {
        k = std::stoll(digits);
      } catch (const std::exception&) {
        fail("exponent out of range");
      }
      base = power(base, k);
    }
    return base;
  }

  Word parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of word");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Word w = parse_product();
      if (!eat(')')) fail("expected ')'");
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word a = parse_product();
      if (!eat(',')) fail("expected ','");
      Word b = parse_product();
      if (!eat(']')) fail("expected ']'");
      return commutator(a, b);
    }
    if (c == '1') {
      ++pos_;
      return {};
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char d = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '-' || d == '.') {
        ++pos_;
      } else {
        break;
      }
    }
    const std::string token(text_.substr(start, pos_ - start));
    if (token.empty()) fail("expected generator");
    return Word{{lookup(token), 1}};
  }

  int lookup(const std::string& token) const {
    for (std::size_t i = 0; i < p_.generators().size(); ++i) {
      if (p_.generators()[i].name == token) return static_cast<int>(i);
    }
    if (token.rfind("t.", 0) == 0) {
      // Stable letters exist only for non-tree edges.
      for (const auto& g : p_.generators()) {
        if (g.role == GeneratorRole::Boundary && g.name == "c." + token.substr(2)) {
          throw Error(ErrorKind::TreeEdgeStable,
                      "'" + token + "' names a tree edge; tree edges have no stable letter");
        }
      }
    }
    throw Error(ErrorKind::UnknownGenerator, "unknown generator '" + token + "'");
  }

  std::string_view text_;
  const Presentation& p_;
  std::size_t pos_ = 0;
};

using Matrix = std::vector<std::vector<std::int64_t>>;

}  // namespace

Word parse_word(std::string_view text, const Presentation& p) {
  return WordParser(text, p).parse();
}

std::vector<std::int64_t> SmithForm::torsion() const {
  std::vector<std::int64_t> out;
  for (auto d : diagonal) {
    if (d > 1) out.push_back(d);
  }
  return out;
}

SmithForm smith_normal_form(Matrix a, int ncols) {
  const std::size_t n = static_cast<std::size_t>(ncols);
  const std::size_t m = a.size();
  Matrix v(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1;

  auto col_op = [&](std::size_t dst, std::size_t src, std::int64_t q) {
    // column dst -= q * column src
    for (std::size_t i = 0; i < m; ++i) a[i][dst] = checked_add(a[i][dst], -checked_mul(q, a[i][src]));
    for (std::size_t i = 0; i < n; ++i) v[i][dst] = checked_add(v[i][dst], -checked_mul(q, v[i][src]));
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < m; ++i) std::swap(a[i][x], a[i][y]);
    for (std::size_t i = 0; i < n; ++i) std::swap(v[i][x], v[i][y]);
  };

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    while (true) {
      // Smallest nonzero pivot in the trailing block.
      std::size_t pr = m, pc = n;
      std::int64_t best = 0;
      for (std::size_t i = t; i < m; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          if (a[i][j] != 0 && (best == 0 || std::llabs(a[i][j]) < best)) {
            best = std::llabs(a[i][j]);
            pr = i;
            pc = j;
          }
        }
      }
      if (best == 0) goto done;
      std::swap(a[t], a[pr]);
      col_swap(t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        const std::int64_t q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < n; ++j) a[i][j] = checked_add(a[i][j], -checked_mul(q, a[t][j]));
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        col_op(j, t, a[t][j] / a[t][t]);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility d_t | remaining block.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < n; ++k) a[t][k] = checked_add(a[t][k], a[i][k]);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (a[t][t] < 0) {
      for (std::size_t j = t; j < n; ++j) a[t][j] = -a[t][j];
    }
  }
done:
  SmithForm s;
  for (std::size_t i = 0; i < t; ++i) s.diagonal.push_back(a[i][i]);
  s.free_rank = ncols - static_cast<int>(s.diagonal.size());
  s.column_basis = std::move(v);
  return s;
}

SmithForm abelianization(const Presentation& p) {
  Matrix rows;
  for (const auto& r : p.relators()) rows.push_back(exponent_sums(r.word, p.ngens()));
  return smith_normal_form(std::move(rows), p.ngens());
}

bool AbelianizedImage::is_zero() const {
  return std::all_of(torsion_coords.begin(), torsion_coords.end(), [](auto x) { return x == 0; }) &&
         std::all_of(free_coords.begin(), free_coords.end(), [](auto x) { return x == 0; });
}

AbelianizedImage ab_image(const Word& w, const Presentation& p, const SmithForm& snf) {
  for (const Letter& l : w) {
    if (l.gen < 0 || l.gen >= p.ngens()) {
      throw Error(ErrorKind::UnknownGenerator, "letter outside the presentation");
    }
  }
  const auto x = exponent_sums(w, p.ngens());
  const std::size_t n = x.size();
  AbelianizedImage img;
  for (std::size_t j = 0; j < n; ++j) {
    std::int64_t y = 0;
    for (std::size_t i = 0; i < n; ++i) y = checked_add(y, checked_mul(x[i], snf.column_basis[i][j]));
    if (j < snf.diagonal.size()) {
      const std::int64_t d = snf.diagonal[j];
      if (d > 1) img.torsion_coords.push_back(mod_floor(y, d));
    } else {
      img.free_coords.push_back(y);
    }
  }
  return img;
}

}  // namespace stratifold
