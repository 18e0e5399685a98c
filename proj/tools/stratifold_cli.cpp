// Command-line front end: one graph file per invocation.

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "stratifold/decisions.hpp"
#include "stratifold/errors.hpp"
#include "stratifold/oracle.hpp"
#include "stratifold/order_engine.hpp"
#include "stratifold/pipeline.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace stratifold;

constexpr int kUsage = 1;
constexpr int kParse = 2;
constexpr int kInvariant = 3;
constexpr int kUndetermined = 4;

struct Options {
  std::string path;
  std::string word;
  std::string black;
  std::string budget_text;
  std::string subop;
  bool json = false;
  bool trace = false;
  std::size_t cap = 100000;
  int degree = 4;
};

Budget parse_budget(const std::string& text) {
  Budget b;
  if (text.empty()) return b;
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument("missing comma");
    b.insertions = std::stoi(text.substr(0, comma));
    b.max_length = std::stoi(text.substr(comma + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--budget", "expected <insertions>,<maxlen>");
  }
  if (b.insertions < 0 || b.max_length < 1) throw CLI::ValidationError("--budget", "values out of range");
  return b;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax:
    case ErrorKind::DuplicateName:
    case ErrorKind::DanglingEdge:
    case ErrorKind::ZeroLabel:
    case ErrorKind::BlackDegreeViolation:
    case ErrorKind::Disconnected:
    case ErrorKind::UnknownVertex:
    case ErrorKind::UnknownGenerator:
    case ErrorKind::UnknownLetter:
    case ErrorKind::TreeEdgeStable:
      return kParse;
    case ErrorKind::Undetermined:
      return kUndetermined;
    default:
      return kInvariant;
  }
}

Json black_names(const Solver& s, const std::vector<int>& blacks) {
  Json out = Json::array();
  for (int b : blacks) out.push_back(s.stratifold().graph.blacks()[b].name);
  return out;
}

void add_order_status(Json& j, const Solver& s) {
  if (!s.orders().exact()) j["undetermined"] = black_names(s, s.orders().undetermined);
}

std::string format_derivation(const Presentation& p, const Derivation& d) {
  std::ostringstream os;
  os << p.format_word(d.start);
  for (const auto& ins : d.steps) {
    os << " | @" << ins.pos << " ";
    if (ins.source == InsertionSource::Relator) {
      os << "r" << ins.relator << (ins.sign < 0 ? "^-1" : "") << " rot " << ins.rotation;
    } else {
      os << p.format_word(Word{{p.black_gen(ins.black), ins.exponent}});
    }
  }
  return os.str();
}

Json certificate_trace(const Solver& s) {
  const auto& p = s.presentation();
  Json out = Json::array();
  for (const auto& c : s.orders().certificates) {
    Json j;
    j["black"] = s.stratifold().graph.blacks()[c.black].name;
    j["exponent"] = c.exponent;
    j["rule"] = c.rule;
    if (c.kind == CertificateKind::Gcd) {
      j["gcd_of"] = Json::array({c.left, c.right});
    } else {
      j["derivation"] = format_derivation(p, c.derivation);
    }
    out.push_back(j);
  }
  return out;
}

void print(const Json& j, bool as_json) {
  if (as_json) {
    std::cout << j.dump() << "\n";
    return;
  }
  for (const auto& [k, v] : j.items()) {
    if (v.is_string()) {
      std::cout << k << ": " << v.get<std::string>() << "\n";
    } else if (v.is_array() && !v.empty() && v.front().is_string() && k != "undetermined") {
      std::cout << k << ":\n";
      for (const auto& line : v) std::cout << "  " << line.get<std::string>() << "\n";
    } else {
      std::cout << k << ": " << v.dump() << "\n";
    }
  }
}

int finish(const Json& j, const Options& o, const Solver* s) {
  print(j, o.json);
  if (s && !s->orders().exact()) {
    std::string names;
    for (int b : s->orders().undetermined) names += " " + s->stratifold().graph.blacks()[b].name;
    std::cerr << "orders undetermined within budget for:" << names << "\n";
    return kUndetermined;
  }
  return 0;
}

int cmd_validate(const Options& o) {
  const StratifoldGraph g = load_graph(o.path);
  Json j;
  j["valid"] = true;
  j["whites"] = g.whites().size();
  j["blacks"] = g.blacks().size();
  j["edges"] = g.edges().size();
  return finish(j, o, nullptr);
}

int cmd_present(const Options& o) {
  const Stratifold s = prepare(load_graph(o.path));
  const auto& g = s.graph;
  Json j;
  j["basepoint"] = g.vertex_name(s.tree.basepoint);
  Json tree = Json::array(), rest = Json::array(), flipped = Json::array();
  for (int e : s.tree.tree_edges()) tree.push_back(g.edges()[e].name);
  for (int e : s.tree.non_tree_edges()) rest.push_back(g.edges()[e].name);
  for (int e : s.flipped_edges) flipped.push_back(g.edges()[e].name);
  j["tree"] = tree;
  j["non_tree"] = rest;
  j["flipped"] = flipped;
  Json gens = Json::array(), rels = Json::array();
  for (const auto& gen : s.presentation.generators()) gens.push_back(gen.name);
  for (const auto& r : s.presentation.relators()) rels.push_back(s.presentation.format_word(r.word));
  j["generators"] = gens;
  j["relators"] = rels;
  return finish(j, o, nullptr);
}

int cmd_solve(const Options& o, const Budget& budget) {
  const Solver s(load_graph(o.path), budget);
  const WordResult r = s.solve_text(o.word);
  Json j;
  j["verdict"] = to_string(r.answer);
  j["certified"] = r.certified;
  add_order_status(j, s);
  if (o.trace) {
    j["reason"] = r.reason;
    if (r.verdict) {
      Json splices = Json::array();
      for (const auto& st : r.verdict->trace) {
        std::ostringstream os;
        os << "@" << st.position << " edge " << s.gog().gog.edge(st.edge).name << (st.forward ? "" : "~")
           << " witness " << st.witness << " length " << st.length_before << "->" << st.length_before - 2;
        splices.push_back(os.str());
      }
      j["splices"] = splices;
      j["final"] = format_loop(s.gog().gog, r.verdict->final_loop);
    }
    j["certificates"] = certificate_trace(s);
  }
  return finish(j, o, &s);
}

int cmd_order(const Options& o, const Budget& budget) {
  const Solver s(load_graph(o.path), budget);
  const auto& g = s.stratifold().graph;
  const auto& a = s.orders();
  Json j;
  j["status"] = a.exact() ? "exact" : "undetermined";
  Json orders = Json::object(), lower = Json::object();
  for (std::size_t b = 0; b < g.blacks().size(); ++b) {
    if (!o.black.empty() && g.blacks()[b].name != o.black) continue;
    orders[g.blacks()[b].name] = a.sigma[b];
    lower[g.blacks()[b].name] = a.abelian_order[b];
  }
  if (!o.black.empty() && orders.empty()) {
    throw Error(ErrorKind::UnknownVertex, "no black vertex named " + o.black);
  }
  j["orders"] = orders;
  j["abelian_orders"] = lower;
  add_order_status(j, s);
  if (o.trace) {
    j["notes"] = a.notes;
    j["certificates"] = certificate_trace(s);
  }
  return finish(j, o, &s);
}

int cmd_abelian(const Options& o, const Budget& budget) {
  const Solver s(load_graph(o.path), budget);
  Json j;
  j["abelian"] = is_abelian(s);
  add_order_status(j, s);
  return finish(j, o, &s);
}

int cmd_sc(const Options& o, const Budget& budget) {
  const Solver s(load_graph(o.path), budget);
  Json j;
  j["simply_connected"] = is_simply_connected(s);
  add_order_status(j, s);
  if (o.trace) {
    const PruneReport pr = prune(s.stratifold().input, budget);
    Json steps = Json::array();
    if (!pr.applicable) steps.push_back("not applicable: " + pr.failed_condition);
    for (const auto& st : pr.steps) {
      steps.push_back(st.black + "/" + st.white + " order " + std::to_string(st.order) + " " + st.action);
    }
    j["prune"] = steps;
  }
  return finish(j, o, &s);
}

int cmd_wedge(const Options& o, const Budget& budget) {
  const Solver s(load_graph(o.path), budget);
  const auto n = wedge_check(s);
  Json j;
  j["simply_connected"] = n.has_value();
  if (n) j["spheres"] = *n;
  add_order_status(j, s);
  return finish(j, o, &s);
}

int cmd_oracle(const Options& o, const Budget& budget) {
  const Stratifold s = prepare(load_graph(o.path));
  const auto& p = s.presentation;
  Json j;
  j["op"] = o.subop;
  if (o.subop == "derive") {
    const auto d = derive_trivial(p, parse_word(o.word, p), budget);
    j["found"] = d.has_value();
    if (d) {
      j["insertions"] = d->steps.size();
      if (o.trace) j["derivation"] = format_derivation(p, *d);
    }
  } else if (o.subop == "tc") {
    const CosetTable t = todd_coxeter(p, o.cap);
    j["complete"] = t.complete;
    if (t.complete) j["order"] = t.order;
    j["cosets_defined"] = t.cosets_defined;
  } else if (o.subop == "cayley") {
    const CosetTable t = todd_coxeter(p, o.cap);
    j["trivial"] = cayley_wp(t, parse_word(o.word, p));
  } else if (o.subop == "quotients") {
    QuotientSearch opts;
    opts.max_degree = o.degree;
    const auto qs = finite_quotient_search(p, opts);
    Json list = Json::array();
    for (const auto& q : qs) {
      Json e;
      e["degree"] = q.degree;
      e["order"] = q.group_order();
      Json orders;
      for (int i = 0; i < p.ngens(); ++i) orders[p.generators()[i].name] = q.image_orders[i];
      e["image_orders"] = orders;
      list.push_back(e);
    }
    j["count"] = qs.size();
    j["quotients"] = list;
  } else {
    throw CLI::ValidationError("oracle", "unknown operation " + o.subop);
  }
  return finish(j, o, nullptr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word problem solver for fundamental groups of 2-stratifolds"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "machine-readable output");
  app.add_flag("--trace", o.trace, "dump splice and derivation certificates");
  app.add_option("--budget", o.budget_text, "consequence search budget <insertions>,<maxlen>");

  auto graph_cmd = [&](const std::string& name, const std::string& help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("graph", o.path, "graph file")->required()->check(CLI::ExistingFile);
    return c;
  };
  auto* validate = graph_cmd("validate", "parse and validate a graph");
  auto* present = graph_cmd("present", "print the canonical tree and natural presentation");
  auto* solve = graph_cmd("solve", "decide whether a word is trivial");
  solve->add_option("word", o.word, "word over the natural generators")->required();
  auto* order = graph_cmd("order", "orders of the black vertex circles");
  order->add_option("black", o.black, "restrict to one black vertex");
  auto* abelian = graph_cmd("abelian", "decide whether the group is abelian");
  auto* sc = graph_cmd("sc", "decide simple connectivity");
  auto* wedge = graph_cmd("wedge", "wedge-of-spheres count when simply connected");
  auto* oracle = graph_cmd("oracle", "brute-force tools: derive, tc, cayley, quotients");
  oracle->add_option("op", o.subop, "derive | tc | cayley | quotients")
      ->required()
      ->check(CLI::IsMember({"derive", "tc", "cayley", "quotients"}));
  oracle->add_option("word", o.word, "word for derive and cayley");
  oracle->add_option("--cap", o.cap, "coset cap");
  oracle->add_option("--degree", o.degree, "maximum permutation degree");
  for (auto* c : app.get_subcommands({})) {
    c->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    const Budget budget = parse_budget(o.budget_text);
    if (oracle->parsed() && (o.subop == "derive" || o.subop == "cayley") && o.word.empty()) {
      throw CLI::ValidationError("oracle", o.subop + " needs a word");
    }
    if (validate->parsed()) return cmd_validate(o);
    if (present->parsed()) return cmd_present(o);
    if (solve->parsed()) return cmd_solve(o, budget);
    if (order->parsed()) return cmd_order(o, budget);
    if (abelian->parsed()) return cmd_abelian(o, budget);
    if (sc->parsed()) return cmd_sc(o, budget);
    if (wedge->parsed()) return cmd_wedge(o, budget);
    if (oracle->parsed()) return cmd_oracle(o, budget);
  } catch (const CLI::Error& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return kUsage;
}
