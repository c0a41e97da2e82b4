#include "tailmoves/newick.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "tailmoves/canonical.hpp"
#include "tailmoves/errors.hpp"

namespace tailmoves {

namespace {

constexpr std::string_view kSpecial = "(),:;[]#'";

struct Clause {
  std::vector<int> children;  // indices into Parser::clauses
  std::string label;
  std::string hybrid;  // tag after '#', empty if none
  std::size_t pos = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Network run() {
    skip();
    const int top = clause();
    skip();
    expect(';');
    skip();
    if (i_ != s_.size()) fail("end of input");
    return build(top);
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    std::string near = i_ < s_.size() ? "'" + std::string(1, s_[i_]) + "'" : "end";
    throw SyntaxError("at position " + std::to_string(i_) + ": expected " +
                      expected + ", found " + near);
  }

  void skip() {
    for (;;) {
      while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (i_ < s_.size() && s_[i_] == '[') {
        const auto close = s_.find(']', i_);
        if (close == std::string_view::npos) fail("']' closing comment");
        i_ = close + 1;
        continue;
      }
      return;
    }
  }

  void expect(char c) {
    if (i_ >= s_.size() || s_[i_] != c) fail(std::string("'") + c + "'");
    ++i_;
  }

  std::string name() {
    skip();
    std::string out;
    if (i_ < s_.size() && s_[i_] == '\'') {
      ++i_;
      for (;;) {
        if (i_ >= s_.size()) fail("closing quote");
        if (s_[i_] == '\'') {
          if (i_ + 1 < s_.size() && s_[i_ + 1] == '\'') {
            out += '\'';
            i_ += 2;
            continue;
          }
          ++i_;
          break;
        }
        out += s_[i_++];
      }
      return out;
    }
    while (i_ < s_.size() && kSpecial.find(s_[i_]) == std::string_view::npos &&
           !std::isspace(static_cast<unsigned char>(s_[i_])))
      out += s_[i_++];
    return out;
  }

  int clause() {
    Clause c;
    c.pos = i_;
    skip();
    if (i_ < s_.size() && s_[i_] == '(') {
      ++i_;
      for (;;) {
        skip();
        c.children.push_back(clause());
        skip();
        if (i_ < s_.size() && s_[i_] == ',') {
          ++i_;
          continue;
        }
        expect(')');
        break;
      }
    }
    c.label = name();
    skip();
    if (i_ < s_.size() && s_[i_] == '#') {
      ++i_;
      c.hybrid = name();
      if (c.hybrid.empty()) fail("hybrid tag after '#'");
    }
    skip();
    while (i_ < s_.size() && s_[i_] == ':') {
      ++i_;
      skip();
      const std::size_t start = i_;
      while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) ||
                                std::string_view("+-.eE").find(s_[i_]) !=
                                    std::string_view::npos))
        ++i_;
      if (start == i_) fail("number after ':'");
      skip();
    }
    if (c.children.empty() && c.label.empty() && c.hybrid.empty()) fail("label or '('");
    clauses_.push_back(std::move(c));
    return static_cast<int>(clauses_.size()) - 1;
  }

  Network build(int top) {
    CandidateGraph g;
    std::map<std::string, NodeId> hybrid_node;
    std::map<std::string, int> uses, defining;
    std::vector<NodeId> node_of(clauses_.size(), -1);
    // Hybrid occurrences share one node; the others get their own.
    for (std::size_t c = 0; c < clauses_.size(); ++c) {
      const auto& cl = clauses_[c];
      if (cl.hybrid.empty()) {
        node_of[c] = g.node_count++;
        continue;
      }
      auto [it, fresh] = hybrid_node.emplace(cl.hybrid, g.node_count);
      if (fresh) ++g.node_count;
      node_of[c] = it->second;
      ++uses[cl.hybrid];
      if (!cl.children.empty()) ++defining[cl.hybrid];
    }
    for (const auto& [tag, n] : uses) {
      if (n != 2)
        throw StructureError("hybrid #" + tag + " occurs " + std::to_string(n) +
                             " times, expected 2");
      if (defining[tag] > 1)
        throw StructureError("hybrid #" + tag + " has children at both occurrences");
    }
    for (std::size_t c = 0; c < clauses_.size(); ++c) {
      const auto& cl = clauses_[c];
      for (int ch : cl.children) g.edges.push_back({node_of[c], node_of[ch]});
      if (cl.children.empty() && cl.hybrid.empty()) g.leaf_labels[node_of[c]] = cl.label;
    }
    const auto& t = clauses_[top];
    if (!(t.hybrid.empty() && t.children.size() == 1)) {
      const NodeId root = g.node_count++;
      g.edges.push_back({root, node_of[top]});
    }
    return Network::from_candidate(g);
  }

  std::string_view s_;
  std::size_t i_ = 0;
  std::vector<Clause> clauses_;
};

std::string quote(const std::string& label) {
  bool plain = !label.empty();
  for (char c : label)
    if (kSpecial.find(c) != std::string_view::npos ||
        std::isspace(static_cast<unsigned char>(c)))
      plain = false;
  if (plain) return label;
  std::string out = "'";
  for (char c : label) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

}  // namespace

Network parse_enewick(std::string_view text) { return Parser(text).run(); }

std::string write_enewick(const Network& net) {
  const auto form = canonical_form(net);
  std::map<NodeId, int> hybrid_id;
  std::string out;
  std::function<void(NodeId)> emit = [&](NodeId v) {
    if (net.is_leaf(v)) {
      out += quote(net.label(v));
      return;
    }
    if (net.is_reticulation(v)) {
      auto it = hybrid_id.find(v);
      if (it != hybrid_id.end()) {
        out += "#H" + std::to_string(it->second);
        return;
      }
      const int id = static_cast<int>(hybrid_id.size()) + 1;
      hybrid_id[v] = id;
      out += '(';
      emit(net.child(v));
      out += ")#H" + std::to_string(id);
      return;
    }
    std::vector<NodeId> ch(net.children(v).begin(), net.children(v).end());
    std::sort(ch.begin(), ch.end(),
              [&](NodeId a, NodeId b) { return form.index[a] < form.index[b]; });
    out += '(';
    for (std::size_t i = 0; i < ch.size(); ++i) {
      if (i) out += ',';
      emit(ch[i]);
    }
    out += ')';
  };
  emit(net.child(net.root()));
  return out + ";";
}

UnrootedNetwork parse_edge_list(std::string_view text) {
  std::map<std::string, NodeId> ids;
  auto id = [&](const std::string& name) {
    auto [it, fresh] = ids.emplace(name, static_cast<NodeId>(ids.size()));
    return it->second;
  };
  std::vector<UEdge> edges;
  std::map<NodeId, std::string> labels;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() == 3 && tok[0] == "leaf") {
      labels[id(tok[1])] = tok[2];
    } else if (tok.size() == 3 && tok[1] == "--") {
      edges.emplace_back(id(tok[0]), id(tok[2]));
    } else {
      throw SyntaxError("line " + std::to_string(lineno) +
                        ": expected 'u -- v' or 'leaf <node> <label>'");
    }
  }
  return UnrootedNetwork::from_edges(static_cast<int>(ids.size()), edges, labels);
}

std::string write_edge_list(const UnrootedNetwork& net) {
  std::ostringstream out;
  auto name = [&](NodeId v) { return "n" + std::to_string(v); };
  for (const auto& e : net.edges()) out << name(e.a) << " -- " << name(e.b) << "\n";
  for (NodeId v : net.leaves()) out << "leaf " << name(v) << " " << net.label(v) << "\n";
  return out.str();
}

}  // namespace tailmoves
