#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "tailmoves/errors.hpp"
#include "tailmoves/newick.hpp"
#include "tailmoves/oracle.hpp"
#include "tailmoves/rewrite.hpp"
#include "tailmoves/sequence.hpp"
#include "tailmoves/unrooted.hpp"
#include "tailmoves/verify.hpp"

using namespace tailmoves;
using json = nlohmann::json;

namespace {

struct Options {
  bool machine = false;
  int max_nodes = kDefaultMaxNodes;
};

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::stringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Network read_network(const std::string& path) { return parse_enewick(read_text(path)); }
UnrootedNetwork read_unrooted(const std::string& path) { return parse_edge_list(read_text(path)); }

Move parse_move(const std::string& text) {
  static const std::regex re(
      R"(^\s*(tail|head)\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*->\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re))
    throw CLI::ValidationError("--move", "expected 'tail (u,v)->(s,t)' or 'head (u,v)->(s,t)'");
  auto id = [&](int i) { return std::stoi(m[i].str()); };
  return {m[1] == "tail" ? MoveKind::Tail : MoveKind::Head, {id(2), id(3)}, {id(4), id(5)}};
}

MoveClass parse_class(const std::string& name) {
  auto c = parse_move_class(name);
  if (!c) throw CLI::ValidationError("--class", "unknown move class '" + name + "'");
  return *c;
}

std::vector<std::string> split_taxa(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string t; std::getline(in, t, ',');)
    if (!t.empty()) out.push_back(t);
  std::sort(out.begin(), out.end());
  return out;
}

json move_json(const Move& m) {
  return {{"kind", m.kind == MoveKind::Tail ? "tail" : "head"},
          {"moving", {m.moving.tail, m.moving.head}},
          {"target", {m.target.tail, m.target.head}}};
}

std::string role_name(const Network& net, NodeId v) { return to_string(net.role(v)); }

// Node names in step lines are canonical indices of the network the move is
// applied to.
Move canonical_names(const Network& net, const Move& m) {
  const auto f = canonical_form(net);
  auto n = [&](NodeId v) { return static_cast<NodeId>(f.index[v]); };
  return {m.kind, {n(m.moving.tail), n(m.moving.head)}, {n(m.target.tail), n(m.target.head)}};
}

Move from_canonical_names(const Network& net, const Move& m) {
  const auto f = canonical_form(net);
  const int n = net.node_count();
  auto id = [&](NodeId v) {
    if (v < 0 || v >= n) throw InvalidMove("node name " + std::to_string(v) + " out of range");
    return f.order[v];
  };
  return {m.kind, {id(m.moving.tail), id(m.moving.head)}, {id(m.target.tail), id(m.target.head)}};
}

int cmd_validate(const Options& o, const std::string& path, bool unrooted) {
  if (unrooted) {
    const auto u = read_unrooted(path);
    if (o.machine)
      std::cout << json{{"valid", true}, {"leaves", u.leaf_count()}, {"k", u.reticulation_number()}}
                << "\n";
    else
      std::cout << "valid, |X|=" << u.leaf_count() << ", k=" << u.reticulation_number() << "\n";
    return 0;
  }
  const auto net = read_network(path);
  if (o.machine)
    std::cout << json{{"valid", true}, {"taxa", net.taxa()}, {"k", net.reticulation_count()}}
              << "\n";
  else
    std::cout << "valid, |X|=" << net.leaf_count() << ", k=" << net.reticulation_count() << "\n";
  return 0;
}

int cmd_parse(const Options& o, const std::string& path) {
  const auto net = read_network(path);
  if (o.machine) {
    for (NodeId v = 0; v < net.node_count(); ++v) {
      json j{{"node", v}, {"role", role_name(net, v)}};
      if (net.is_leaf(v)) j["label"] = net.label(v);
      std::cout << j << "\n";
    }
    for (const Edge& e : net.edges()) std::cout << json{{"edge", {e.tail, e.head}}} << "\n";
    return 0;
  }
  std::cout << "nodes " << net.node_count() << " edges " << net.edge_count() << " taxa "
            << net.leaf_count() << " k " << net.reticulation_count() << "\n";
  for (NodeId v = 0; v < net.node_count(); ++v) {
    std::cout << "node " << v << " " << role_name(net, v);
    if (net.is_leaf(v)) std::cout << " " << net.label(v);
    std::cout << "\n";
  }
  for (const Edge& e : net.edges()) std::cout << "edge " << e.tail << " " << e.head << "\n";
  return 0;
}

int cmd_write(const std::string& path, bool edge_list) {
  const auto net = read_network(path);
  std::cout << (edge_list ? write_edge_list(underlying(net)) : write_enewick(net) + "\n");
  return 0;
}

int cmd_apply(const Options& o, const std::string& path, const std::string& move) {
  const auto net = read_network(path);
  const Move m = parse_move(move);
  const auto result = apply(net, m);
  if (o.machine)
    std::cout << json{{"move", move_json(m)}, {"distance", move_distance(net, m)},
                      {"result", write_enewick(result)}}
              << "\n";
  else
    std::cout << write_enewick(result) << "\n";
  return 0;
}

int cmd_enumerate_moves(const Options& o, const std::string& path, const std::string& cls,
                        bool skip_trivial) {
  const auto net = read_network(path);
  const auto moves = enumerate_moves(net, parse_class(cls), skip_trivial);
  for (const Move& m : moves) {
    if (o.machine)
      std::cout << json{{"move", move_json(m)}, {"distance", move_distance(net, m)}} << "\n";
    else
      std::cout << to_string(m) << " d=" << move_distance(net, m) << "\n";
  }
  if (!o.machine) std::cout << moves.size() << " moves\n";
  return 0;
}

void print_moves(const Options& o, const std::string& tag, const std::vector<Move>& moves) {
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (o.machine)
      std::cout << json{{"step", i + 1}, {"tag", tag}, {"move", move_json(moves[i])}} << "\n";
    else
      std::cout << "step " << i + 1 << " [" << tag << "] " << to_string(moves[i]) << "\n";
  }
}

int cmd_rewrite(const Options& o, const std::string& path, const std::string& move) {
  const auto net = read_network(path);
  const auto plan = rewrite_head_move(net, parse_move(move));
  if (!o.machine) std::cout << "case " << plan.tag << "\n";
  print_moves(o, plan.tag, plan.replacement);
  return 0;
}

int cmd_decompose(const Options& o, const std::string& path, const std::string& move) {
  const auto net = read_network(path);
  const Move m = parse_move(move);
  const auto parts = decompose_tail_move(net, m);
  if (!o.machine) std::cout << "distance " << move_distance(net, m) << "\n";
  print_moves(o, "d1", parts);
  return 0;
}

int cmd_find_sequence(const Options& o, const std::string& cls, const std::string& a,
                      const std::string& b, bool do_audit) {
  const auto from = read_network(a), to = read_network(b);
  const MoveClass c = parse_class(cls);
  MoveSequence seq = [&] {
    switch (c) {
      case MoveClass::Tail: return green_line_tail(from, to);
      case MoveClass::RSPR: return green_line_rspr(from, to);
      case MoveClass::Tail1: return tail1_sequence(from, to);
      default: throw CLI::ValidationError("--class", "find-sequence supports tail, rspr and tail1");
    }
  }();
  const int x = from.leaf_count(), k = from.reticulation_count();
  const long bound = c == MoveClass::Tail ? tail_bound(x, k)
                     : c == MoveClass::RSPR ? rspr_bound(x, k)
                                            : tail1_bound(x, k);
  const bool audited = do_audit && audit(seq);
  if (o.machine) {
    std::cout << json{{"source", write_enewick(from)}, {"target", write_enewick(to)}} << "\n";
  } else {
    std::cout << "source " << write_enewick(from) << "\n";
    std::cout << "target " << write_enewick(to) << "\n";
  }
  Network cur = from;
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    const Move named = canonical_names(cur, seq.steps[i].move);
    if (o.machine)
      std::cout << json{{"step", i + 1}, {"tag", seq.steps[i].tag}, {"move", move_json(named)}}
                << "\n";
    else
      std::cout << "step " << i + 1 << " [" << seq.steps[i].tag << "] " << to_string(named) << "\n";
    cur = seq.intermediates[i];
  }
  if (o.machine) {
    json j{{"length", seq.size()}, {"bound", bound}};
    if (do_audit) j["audit"] = audited;
    std::cout << j << "\n";
  } else {
    std::cout << "length " << seq.size() << " bound " << bound << "\n";
    if (do_audit) std::cout << "audit " << (audited ? "ok" : "FAILED") << "\n";
  }
  return do_audit && !audited ? 1 : 0;
}

int cmd_replay(const Options& o, const std::string& path) {
  std::stringstream in(read_text(path));
  std::optional<Network> cur, target;
  static const std::regex step(R"(^step\s+(\d+)\s+\[([^\]]*)\]\s+(.*)$)");
  int count = 0;
  for (std::string line; std::getline(in, line);) {
    std::smatch m;
    if (line.rfind("source ", 0) == 0) {
      cur = parse_enewick(line.substr(7));
    } else if (line.rfind("target ", 0) == 0) {
      target = parse_enewick(line.substr(7));
    } else if (std::regex_match(line, m, step)) {
      if (!cur) throw SyntaxError("step before source line");
      cur = apply(*cur, from_canonical_names(*cur, parse_move(m[3].str())));
      ++count;
    }
  }
  if (!cur || !target) throw SyntaxError("replay needs source and target lines");
  const bool ok = canonical_code(*cur) == canonical_code(*target);
  if (o.machine)
    std::cout << json{{"steps", count}, {"endpoint_matches", ok}} << "\n";
  else
    std::cout << count << " steps replayed, endpoint " << (ok ? "matches" : "DIFFERS") << "\n";
  return ok ? 0 : 1;
}

int cmd_exact_distance(const Options& o, const std::string& cls, const std::string& a,
                       const std::string& b) {
  const auto d = exact_distance(read_network(a), read_network(b), parse_class(cls), o.max_nodes);
  if (o.machine)
    std::cout << json{{"distance", d ? json(*d) : json(nullptr)}} << "\n";
  else
    std::cout << (d ? std::to_string(*d) : "unreachable") << "\n";
  return 0;
}

int cmd_enumerate_tier(const Options& o, const std::string& taxa, int k) {
  const auto cat = enumerate_tier({split_taxa(taxa), k}, o.max_nodes);
  for (const Network& net : cat.members) {
    if (o.machine)
      std::cout << json{{"network", write_enewick(net)},
                        {"tail_moves", enumerate_moves(net, MoveClass::Tail).size()}}
                << "\n";
    else
      std::cout << write_enewick(net) << "\n";
  }
  if (!o.machine) std::cout << cat.size() << " networks\n";
  return 0;
}

int cmd_move_graph(const Options& o, const std::string& taxa, int k, const std::string& cls,
                   bool dot) {
  const auto cat = enumerate_tier({split_taxa(taxa), k}, o.max_nodes);
  const auto g = build_move_graph(cat, parse_class(cls));
  if (dot) {
    std::cout << move_graph_dot(g);
    return 0;
  }
  const auto s = move_graph_stats(g);
  for (int c = 0; c < s.component_count(); ++c) {
    if (o.machine)
      std::cout << json{{"component", c}, {"size", s.component_sizes[c]},
                        {"diameter", s.diameters[c]}}
                << "\n";
    else
      std::cout << "component " << c << " size " << s.component_sizes[c] << " diameter "
                << s.diameters[c] << "\n";
  }
  if (!o.machine) std::cout << cat.size() << " networks, " << s.component_count() << " components\n";
  return 0;
}

std::string uedge(UEdge e) { return "{" + std::to_string(e.a) + "," + std::to_string(e.b) + "}"; }

int cmd_rootability(const Options& o, const std::string& path) {
  const auto u = read_unrooted(path);
  const auto d = decompose(u);
  if (o.machine) {
    json j{{"rootable", d.redundant_bridges.empty()},
           {"bridges", d.bridges.size()},
           {"blobs", d.blobs},
           {"terminal_components", d.terminal_components.size()}};
    json red = json::array();
    for (const UEdge& e : d.redundant_bridges) red.push_back({e.a, e.b});
    j["redundant"] = red;
    std::cout << j << "\n";
  } else {
    std::cout << (d.redundant_bridges.empty() ? "rootable" : "unrootable") << "\n";
    std::cout << "bridges " << d.bridges.size() << " blobs " << d.blobs.size()
              << " terminal components " << d.terminal_components.size() << "\n";
    for (const UEdge& e : d.redundant_bridges) std::cout << "redundant " << uedge(e) << "\n";
  }
  return 0;
}

int cmd_root_at(const std::string& path, const std::string& leaf) {
  const auto u = read_unrooted(path);
  const auto r = u.leaf_by_label(leaf);
  if (!r) throw PreconditionViolated("no leaf labelled '" + leaf + "'");
  std::cout << write_enewick(root_at(u, *r)) << "\n";
  return 0;
}

int cmd_spr_sequence(const Options& o, const std::string& a, const std::string& b) {
  const auto from = read_unrooted(a), to = read_unrooted(b);
  const auto seq = spr_sequence(from, to);
  for (std::size_t i = 0; i < seq.moves.size(); ++i) {
    const SprMove& m = seq.moves[i];
    if (o.machine)
      std::cout << json{{"step", i + 1}, {"end", m.end}, {"other", m.other},
                        {"target", {m.target.a, m.target.b}}}
                << "\n";
    else
      std::cout << "step " << i + 1 << " spr " << m.end << " of " << uedge(UEdge(m.end, m.other))
                << "->" << uedge(m.target) << "\n";
  }
  const long bound = spr_sequence_bound(from.leaf_count(), from.reticulation_number());
  if (o.machine)
    std::cout << json{{"length", seq.moves.size()}, {"bound", bound},
                      {"eliminated", {seq.elimination_source, seq.elimination_target}}}
              << "\n";
  else
    std::cout << "length " << seq.moves.size() << " bound " << bound << "\n";
  return 0;
}

int cmd_maf(const Options& o, const std::string& a, const std::string& b) {
  const int d = maf_distance(read_network(a), read_network(b));
  if (o.machine)
    std::cout << json{{"maf_distance", d}} << "\n";
  else
    std::cout << d << "\n";
  return 0;
}

int print_checks(const Options& o, const std::vector<CheckResult>& results) {
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    if (o.machine)
      std::cout << json{{"criterion", r.id}, {"title", r.title}, {"pass", r.pass},
                        {"detail", r.detail}}
                << "\n";
    else
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << " " << r.title << ": " << r.detail
                << "\n";
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rearrangement moves on phylogenetic networks"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--machine", o.machine, "Line-delimited JSON output");
  app.add_option("--max-nodes", o.max_nodes, "Node limit for exhaustive routines")
      ->check(CLI::Range(1, kMaxNodesCap));

  std::string a, b, move, cls = "tail", taxa, leaf;
  bool flag = false, dot = false, do_audit = false;
  int k = 0;
  std::function<int()> run;

  auto* validate = app.add_subcommand("validate", "Check that a file holds a valid network");
  validate->add_option("file", a)->required();
  validate->add_flag("--unrooted", flag, "Input is an unrooted edge list");
  validate->callback([&] { run = [&] { return cmd_validate(o, a, flag); }; });

  auto* parse = app.add_subcommand("parse", "List nodes and edges of a network");
  parse->add_option("file", a)->required();
  parse->callback([&] { run = [&] { return cmd_parse(o, a); }; });

  auto* write = app.add_subcommand("write", "Write a network in normal form");
  write->add_option("file", a)->required();
  write->add_flag("--edge-list", flag, "Write the underlying unrooted edge list");
  write->callback([&] { run = [&] { return cmd_write(a, flag); }; });

  auto* apply_cmd = app.add_subcommand("apply-move", "Apply one move");
  apply_cmd->add_option("file", a)->required();
  apply_cmd->add_option("--move", move)->required();
  apply_cmd->callback([&] { run = [&] { return cmd_apply(o, a, move); }; });

  auto* moves = app.add_subcommand("enumerate-moves", "List the valid moves of a class");
  moves->add_option("file", a)->required();
  moves->add_option("--class", cls);
  moves->add_flag("--skip-trivial", flag, "Drop moves with an isomorphic result");
  moves->callback([&] { run = [&] { return cmd_enumerate_moves(o, a, cls, flag); }; });

  auto* rewrite = app.add_subcommand("rewrite-head", "Replace a distance-1 head move by tail moves");
  rewrite->add_option("file", a)->required();
  rewrite->add_option("--move", move)->required();
  rewrite->callback([&] { run = [&] { return cmd_rewrite(o, a, move); }; });

  auto* decompose_cmd = app.add_subcommand("decompose-tail", "Split a tail move into distance-1 moves");
  decompose_cmd->add_option("file", a)->required();
  decompose_cmd->add_option("--move", move)->required();
  decompose_cmd->callback([&] { run = [&] { return cmd_decompose(o, a, move); }; });

  auto* find = app.add_subcommand("find-sequence", "Construct a move sequence between two networks");
  find->add_option("source", a)->required();
  find->add_option("target", b)->required();
  find->add_option("--class", cls);
  find->add_flag("--audit", do_audit, "Re-apply the sequence and check the endpoint");
  find->callback([&] { run = [&] { return cmd_find_sequence(o, cls, a, b, do_audit); }; });

  auto* exact = app.add_subcommand("exact-distance", "Breadth-first move distance");
  exact->add_option("source", a)->required();
  exact->add_option("target", b)->required();
  exact->add_option("--class", cls);
  exact->callback([&] { run = [&] { return cmd_exact_distance(o, cls, a, b); }; });

  auto* tier_cmd = app.add_subcommand("enumerate-tier", "List every network of a tier");
  tier_cmd->add_option("--taxa", taxa, "Comma-separated taxa")->required();
  tier_cmd->add_option("--k", k, "Reticulation number")->required();
  tier_cmd->callback([&] { run = [&] { return cmd_enumerate_tier(o, taxa, k); }; });

  auto* graph = app.add_subcommand("move-graph", "Components and diameters of a move graph");
  graph->add_option("--taxa", taxa)->required();
  graph->add_option("--k", k)->required();
  graph->add_option("--class", cls);
  graph->add_flag("--emit-dot", dot, "Print the graph in DOT format");
  graph->callback([&] { run = [&] { return cmd_move_graph(o, taxa, k, cls, dot); }; });

  auto* rootable = app.add_subcommand("rootability", "Bridges, blobs and rootability of an edge list");
  rootable->add_option("file", a)->required();
  rootable->callback([&] { run = [&] { return cmd_rootability(o, a); }; });

  auto* root_cmd = app.add_subcommand("root-at", "Orient an unrooted network from a leaf");
  root_cmd->add_option("file", a)->required();
  root_cmd->add_option("--leaf", leaf)->required();
  root_cmd->callback([&] { run = [&] { return cmd_root_at(a, leaf); }; });

  auto* spr = app.add_subcommand("spr-sequence", "SPR sequence between two unrooted networks");
  spr->add_option("source", a)->required();
  spr->add_option("target", b)->required();
  spr->callback([&] { run = [&] { return cmd_spr_sequence(o, a, b); }; });

  auto* maf = app.add_subcommand("maf-distance", "rSPR distance of two trees by agreement forests");
  maf->add_option("source", a)->required();
  maf->add_option("target", b)->required();
  maf->callback([&] { run = [&] { return cmd_maf(o, a, b); }; });

  auto* bounds = app.add_subcommand("verify-bounds", "Run the bound checks on one tier, or all");
  bounds->add_option("--tier", k, "Reticulation number");
  bounds->add_option("--taxa", taxa, "Comma-separated taxa");
  bounds->callback([&] {
    run = [&] {
      if (taxa.empty())
        return print_checks(o, run_acceptance(default_acceptance_config(), o.max_nodes));
      return print_checks(o, verify_bounds({split_taxa(taxa), k}, o.max_nodes));
    };
  });

  auto* replay = app.add_subcommand("replay", "Re-apply a printed sequence");
  replay->add_option("file", a)->required();
  replay->callback([&] { run = [&] { return cmd_replay(o, a); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return run();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
