#include "tailmoves/verify.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "tailmoves/errors.hpp"
#include "tailmoves/newick.hpp"
#include "tailmoves/rewrite.hpp"
#include "tailmoves/sequence.hpp"
#include "tailmoves/unrooted.hpp"

namespace tailmoves {

TierData::TierData(const Tier& tier, int max_nodes) : catalog_(enumerate_tier(tier, max_nodes)) {}

const MoveGraph& TierData::graph(MoveClass c) {
  auto it = graphs_.find(c);
  if (it == graphs_.end()) it = graphs_.emplace(c, build_move_graph(catalog_, c)).first;
  return it->second;
}

const std::vector<std::vector<int>>& TierData::distances(MoveClass c) {
  auto it = distances_.find(c);
  if (it == distances_.end()) {
    const MoveGraph& g = graph(c);
    std::vector<std::vector<int>> all;
    for (std::size_t i = 0; i < catalog_.size(); ++i)
      all.push_back(distances_from(g, static_cast<int>(i)));
    it = distances_.emplace(c, std::move(all)).first;
  }
  return it->second;
}

std::vector<std::string> first_taxa(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

TierData& Verifier::tier(const std::vector<std::string>& taxa, int k) {
  auto key = std::make_pair(taxa, k);
  auto it = tiers_.find(key);
  if (it == tiers_.end())
    it = tiers_.emplace(key, std::make_unique<TierData>(Tier{taxa, k}, max_nodes_)).first;
  return *it->second;
}

namespace {

// Counts checks and keeps the first few failures.
struct Tally {
  long checked = 0;
  long failed = 0;
  std::vector<std::string> notes;
  std::string first;

  void check(bool ok, const std::function<std::string()>& why) {
    ++checked;
    if (ok) return;
    if (failed++ == 0) first = why();
  }

  CheckResult result(int id, std::string title) const {
    std::ostringstream d;
    d << checked << " checks";
    for (const auto& n : notes) d << "; " << n;
    if (failed) d << "; " << failed << " failed, first: " << first;
    return {id, std::move(title), failed == 0 && checked > 0, d.str()};
  }
};

std::string tier_name(const Tier& t) {
  std::string s = "{";
  for (std::size_t i = 0; i < t.taxa.size(); ++i) s += (i ? "," : "") + t.taxa[i];
  return s + "} k=" + std::to_string(t.k);
}

std::string pair_name(const Network& a, const Network& b) {
  return write_enewick(a) + " -> " + write_enewick(b);
}

// Rooted binary trees by recursive bipartition, as Newick text.
std::vector<std::string> trees_by_splits(const std::vector<std::string>& taxa) {
  if (taxa.size() == 1) return {taxa[0]};
  std::vector<std::string> out;
  const std::size_t n = taxa.size();
  for (unsigned mask = 1; mask < (1u << n) - 1; ++mask) {
    if (!(mask & 1u)) continue;  // the side holding the first taxon
    std::vector<std::string> left, right;
    for (std::size_t i = 0; i < n; ++i) (mask >> i & 1u ? left : right).push_back(taxa[i]);
    for (const auto& l : trees_by_splits(left))
      for (const auto& r : trees_by_splits(right)) out.push_back("(" + l + "," + r + ")");
  }
  return out;
}

bool same_code(const Network& a, const Network& b) { return canonical_code(a) == canonical_code(b); }

}  // namespace

CheckResult Verifier::tier_enumeration() {
  Tally t;
  for (int n : {3, 4}) {
    const auto taxa = first_taxa(n);
    const auto& cat = tier(taxa, 0).catalog();
    const std::size_t expected = n == 3 ? 3 : 15;
    t.check(cat.size() == expected, [&] {
      return std::to_string(cat.size()) + " trees on " + std::to_string(n) + " taxa";
    });
    std::set<CanonicalCode> direct;
    for (const auto& s : trees_by_splits(taxa)) direct.insert(canonical_code(parse_enewick(s + ";")));
    std::set<CanonicalCode> listed;
    for (const auto& [code, i] : cat.index) listed.insert(code);
    t.check(direct == listed, [&] {
      return "split-based trees on " + std::to_string(n) + " taxa disagree with the catalog";
    });
  }
  // Members whose tail moves all give isomorphic networks, counted up to a
  // permutation of the taxa.
  const auto& cat = tier(first_taxa(2), 1).catalog();
  std::vector<const Network*> stuck;
  for (const Network& net : cat.members)
    if (enumerate_moves(net, MoveClass::Tail, true).empty()) stuck.push_back(&net);
  std::set<CanonicalCode> shapes;
  for (const Network* net : stuck) {
    auto taxa = net->taxa();
    CanonicalCode least = canonical_code(*net);
    do {
      auto g = net->to_candidate();
      const auto sorted = net->taxa();
      for (auto& [v, l] : g.leaf_labels)
        l = taxa[std::lower_bound(sorted.begin(), sorted.end(), l) - sorted.begin()];
      least = std::min(least, canonical_code(Network::from_candidate(g)));
    } while (std::next_permutation(taxa.begin(), taxa.end()));
    shapes.insert(least);
  }
  t.check(!stuck.empty() && shapes.size() == 1, [&] {
    return std::to_string(stuck.size()) + " members of tier {a,b} k=1 without non-trivial " +
           "tail moves, " + std::to_string(shapes.size()) + " up to relabelling";
  });
  t.notes.push_back(std::to_string(stuck.size()) + " labelled copies of the exceptional network");
  return t.result(1, "tier enumeration");
}

CheckResult Verifier::connectivity() {
  Tally t;
  auto components = [&](int n, int k, MoveClass c) {
    return move_graph_stats(tier(first_taxa(n), k).graph(c)).component_count();
  };
  const int split = components(2, 1, MoveClass::Tail);
  t.check(split >= 2, [&] { return "tail graph of {a,b} k=1 has " + std::to_string(split) + " component(s)"; });
  for (auto [n, k] : {std::pair{3, 0}, {4, 0}, {3, 1}, {2, 2}}) {
    const int c = components(n, k, MoveClass::Tail);
    t.check(c == 1, [&] {
      return "tail graph of " + std::to_string(n) + " taxa k=" + std::to_string(k) + " has " +
             std::to_string(c) + " components";
    });
  }
  for (auto [n, k] : {std::pair{2, 1}, {3, 0}, {4, 0}, {3, 1}, {2, 2}}) {
    const int c = components(n, k, MoveClass::RSPR);
    t.check(c == 1, [&] {
      return "rspr graph of " + std::to_string(n) + " taxa k=" + std::to_string(k) + " has " +
             std::to_string(c) + " components";
    });
  }
  return t.result(2, "move-graph connectivity");
}

CheckResult Verifier::head_rewrites(const std::vector<Tier>& tiers) {
  Tally t;
  long searched = 0;
  for (const Tier& tr : tiers) {
    const auto& cat = tier(tr.taxa, tr.k).catalog();
    for (const Network& net : cat.members) {
      if (is_exceptional(net)) continue;
      for (const Move& m : enumerate_moves(net, MoveClass::Head1)) {
        const Network goal = apply(net, m);
        try {
          const RewritePlan plan = rewrite_head_move(net, m);
          if (plan.tag.find(".search") != std::string::npos) ++searched;
          const auto end = replay_tail(net, plan.replacement);
          t.check(end && same_code(*end, goal), [&] {
            return "plan " + plan.tag + " for " + to_string(m) + " on " + write_enewick(net) +
                   " misses the head-move result";
          });
          if (tr.taxa.size() >= 2)
            t.check(plan.replacement.size() <= 4, [&] {
              return "plan " + plan.tag + " has " + std::to_string(plan.replacement.size()) +
                     " moves on " + write_enewick(net);
            });
        } catch (const Error& e) {
          t.check(false, [&] {
            return to_string(m) + " on " + write_enewick(net) + ": " + e.what();
          });
        }
      }
    }
  }
  t.notes.push_back(std::to_string(searched) + " plans from search");
  return t.result(3, "head-move rewriting");
}

namespace {

CheckResult sequence_bound(Verifier& v, const std::vector<Tier>& tiers, bool rspr) {
  Tally t;
  long exceptional = 0;
  for (const Tier& tr : tiers) {
    TierData& data = v.tier(tr.taxa, tr.k);
    const auto& cat = data.catalog();
    const auto& dist = data.distances(rspr ? MoveClass::RSPR : MoveClass::Tail);
    const int x = static_cast<int>(tr.taxa.size());
    const long bound = rspr ? rspr_bound(x, tr.k) : tail_bound(x, tr.k);
    for (std::size_t i = 0; i < cat.size(); ++i)
      for (std::size_t j = 0; j < cat.size(); ++j) {
        const Network& a = cat.members[i];
        const Network& b = cat.members[j];
        if (!rspr && i != j && (is_exceptional(a) || is_exceptional(b))) {
          bool thrown = false;
          try {
            green_line_tail(a, b);
          } catch (const ExceptionalNetwork&) {
            thrown = true;
          }
          ++exceptional;
          t.check(thrown, [&] { return "no ExceptionalNetwork for " + pair_name(a, b); });
          continue;
        }
        try {
          const MoveSequence seq = rspr ? green_line_rspr(a, b) : green_line_tail(a, b);
          const long len = static_cast<long>(seq.size());
          const bool kinds_ok =
              rspr || std::all_of(seq.steps.begin(), seq.steps.end(),
                                  [](const SequenceStep& s) { return s.move.kind == MoveKind::Tail; });
          t.check(kinds_ok && audit(seq) && same_code(seq.endpoint(), b),
                  [&] { return "invalid sequence for " + pair_name(a, b); });
          t.check(len <= bound, [&] {
            return std::to_string(len) + " moves > " + std::to_string(bound) + " for " +
                   pair_name(a, b);
          });
          t.check(dist[i][j] >= 0 && len >= dist[i][j], [&] {
            return std::to_string(len) + " moves < distance " + std::to_string(dist[i][j]) +
                   " for " + pair_name(a, b);
          });
        } catch (const Error& e) {
          t.check(false, [&] { return pair_name(a, b) + ": " + e.what(); });
        } catch (const std::logic_error& e) {
          t.check(false, [&] { return pair_name(a, b) + ": " + e.what(); });
        }
      }
  }
  if (!rspr) t.notes.push_back(std::to_string(exceptional) + " pairs with the exceptional network");
  return rspr ? t.result(5, "rspr sequence bound") : t.result(4, "tail sequence bound");
}

}  // namespace

CheckResult Verifier::green_line_tail_bound(const std::vector<Tier>& tiers) {
  return sequence_bound(*this, tiers, false);
}

CheckResult Verifier::green_line_rspr_bound(const std::vector<Tier>& tiers) {
  return sequence_bound(*this, tiers, true);
}

CheckResult Verifier::decomposition(const std::vector<Tier>& tiers) {
  Tally t;
  for (const Tier& tr : tiers) {
    const auto& cat = tier(tr.taxa, tr.k).catalog();
    const long bound = decomposition_bound(static_cast<int>(tr.taxa.size()), tr.k);
    for (const Network& net : cat.members)
      for (const Move& m : enumerate_moves(net, MoveClass::Tail)) {
        try {
          const auto parts = decompose_tail_move(net, m);
          Network cur = net;
          bool ok = true;
          for (const Move& p : parts) {
            if (!can_apply(cur, p) || move_distance(cur, p) != 1) {
              ok = false;
              break;
            }
            cur = apply(cur, p);
          }
          t.check(ok && same_code(cur, apply(net, m)), [&] {
            return to_string(m) + " on " + write_enewick(net) + " decomposes wrongly";
          });
          t.check(static_cast<long>(parts.size()) <= bound, [&] {
            return to_string(m) + " on " + write_enewick(net) + " needs " +
                   std::to_string(parts.size()) + " moves";
          });
        } catch (const Error& e) {
          t.check(false, [&] { return to_string(m) + " on " + write_enewick(net) + ": " + e.what(); });
        }
      }
  }
  return t.result(6, "distance-1 decomposition");
}

CheckResult Verifier::distance_order(const std::vector<Tier>& tiers) {
  Tally t;
  for (const Tier& tr : tiers) {
    TierData& data = tier(tr.taxa, tr.k);
    const auto& tail = data.distances(MoveClass::Tail);
    const auto& rspr = data.distances(MoveClass::RSPR);
    const auto& tail1 = data.distances(MoveClass::Tail1);
    const auto& rnni = data.distances(MoveClass::RNNI);
    const std::size_t n = data.catalog().size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const int d1 = tail1[i][j], dn = rnni[i][j], ds = rspr[i][j], dt = tail[i][j];
        auto where = [&] {
          return tier_name(tr) + " pair " + std::to_string(i) + "," + std::to_string(j) +
                 ": tail1=" + std::to_string(d1) + " rnni=" + std::to_string(dn) +
                 " rspr=" + std::to_string(ds) + " tail=" + std::to_string(dt);
        };
        if (d1 >= 0 && dn >= 0 && ds >= 0) t.check(d1 >= dn && dn >= ds, where);
        if (d1 >= 0 && dt >= 0 && ds >= 0) t.check(d1 >= dt && dt >= ds, where);
        if (tr.taxa.size() >= 2 && dt >= 0 && ds >= 0) t.check(dt <= 4 * ds, where);
        t.check(dt == tail[j][i] && ds == rspr[j][i] && d1 == tail1[j][i] && dn == rnni[j][i],
                where);
      }
  }
  return t.result(7, "distance order");
}

CheckResult Verifier::mycorrhizal() {
  Tally t;
  const Network root = parse_enewick("((x1,(x2)#H1),#H1);");
  const auto trees = enumerate_trees(first_taxa(4));
  const auto single = enumerate_trees({"e"});
  for (std::size_t j = 0; j < 12; ++j) {
    const Network a = build_mycorrhizal({trees[0], single[0]}, root);
    const Network b = build_mycorrhizal({trees[j], single[0]}, root);
    const int maf = maf_distance(trees[0], trees[j]) + maf_distance(single[0], single[0]);
    const auto dt = exact_distance(a, b, MoveClass::Tail, max_nodes_);
    const auto ds = exact_distance(a, b, MoveClass::RSPR, max_nodes_);
    t.check(dt && ds && *dt == maf && *ds == maf, [&] {
      return pair_name(a, b) + ": tail=" + (dt ? std::to_string(*dt) : "inf") +
             " rspr=" + (ds ? std::to_string(*ds) : "inf") + " maf=" + std::to_string(maf);
    });
  }
  return t.result(8, "mycorrhizal distance equality");
}

CheckResult Verifier::maf_oracle() {
  Tally t;
  for (int n = 1; n <= 4; ++n) {
    TierData& data = tier(first_taxa(n), 0);
    const auto& dist = data.distances(MoveClass::RSPR);
    const auto& cat = data.catalog();
    for (std::size_t i = 0; i < cat.size(); ++i)
      for (std::size_t j = 0; j < cat.size(); ++j) {
        const int maf = maf_distance(cat.members[i], cat.members[j]);
        t.check(maf == dist[i][j], [&] {
          return pair_name(cat.members[i], cat.members[j]) + ": maf=" + std::to_string(maf) +
                 " bfs=" + std::to_string(dist[i][j]);
        });
      }
  }
  return t.result(9, "agreement forest oracle");
}

namespace {

// Two leaves on a path with a leafless blob hanging from it by one bridge.
UnrootedNetwork unrootable_instance() {
  // a=0 b=1 p=2 q=3 r=4 s=5 t=6 u=7
  return UnrootedNetwork::from_edges(
      8, {{0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7}},
      {{0, "a"}, {1, "b"}});
}

std::vector<UnrootedNetwork> distinct(std::vector<UnrootedNetwork> nets) {
  std::vector<UnrootedNetwork> out;
  std::set<CanonicalCode> seen;
  for (auto& n : nets)
    if (seen.insert(unrooted_code(n)).second) out.push_back(std::move(n));
  return out;
}

std::vector<UnrootedNetwork> spr_neighbours(const UnrootedNetwork& u) {
  std::vector<UnrootedNetwork> out;
  for (const UEdge& e : u.edges())
    for (auto [end, other] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}})
      for (const UEdge& f : u.edges())
        if (auto r = try_apply_spr(u, {end, other, f})) out.push_back(*std::move(r));
  return out;
}

}  // namespace

CheckResult Verifier::rootability(const std::vector<Tier>& tiers) {
  Tally t;
  std::vector<UnrootedNetwork> pool{unrootable_instance()};
  for (const Tier& tr : tiers)
    for (const Network& net : tier(tr.taxa, tr.k).catalog().members) {
      if (net.leaf_count() < 2) continue;
      const auto u = underlying(net);
      pool.push_back(u);
      for (auto& n : spr_neighbours(u)) pool.push_back(std::move(n));
    }
  pool = distinct(std::move(pool));
  long unrootable = 0, terminal = 0;
  for (const UnrootedNetwork& u : pool) {
    const auto d = decompose(u);
    const int k = u.reticulation_number();
    const auto name = [&] { return write_edge_list(u); };
    t.check(3 * static_cast<int>(d.terminal_components.size()) <= k, name);
    for (int b : d.terminal_components) {
      ++terminal;
      const auto& blob = d.blobs[b];
      int inner = 0;
      for (NodeId x : blob)
        for (NodeId y : u.neighbors(x))
          if (x < y && d.component[y] == b) ++inner;
      t.check(blob.size() >= 5 && inner - static_cast<int>(blob.size()) + 1 >= 3, name);
    }
    if (is_rootable(u)) {
      for (NodeId r : u.leaves()) {
        try {
          const Network rooted = root_at(u, r);
          t.check(validate(rooted.to_candidate()).ok() &&
                      unrooted_isomorphic(underlying(rooted, u.label(r)), u),
                  name);
        } catch (const Error& e) {
          t.check(false, [&] { return name() + e.what(); });
        }
      }
    } else {
      ++unrootable;
      for (NodeId r : u.leaves()) {
        bool witnessed = false;
        try {
          root_at(u, r);
        } catch (const Unrootable& e) {
          witnessed = std::string(e.what()).find("cut-edge {") != std::string::npos;
        }
        t.check(witnessed, name);
      }
    }
    const Elimination e = eliminate_terminal_components(u);
    t.check(static_cast<int>(e.moves.size()) == e.components &&
                e.components == static_cast<int>(d.terminal_components.size()) &&
                is_rootable(e.result) && e.result.reticulation_number() == k &&
                e.result.taxa() == u.taxa(),
            name);
  }
  t.notes.push_back(std::to_string(pool.size()) + " networks, " + std::to_string(unrootable) +
                    " unrootable, " + std::to_string(terminal) + " terminal components");
  return t.result(10, "rootability");
}

CheckResult Verifier::unrooted_pipeline(const std::vector<Tier>& tiers) {
  Tally t;
  std::vector<std::pair<UnrootedNetwork, UnrootedNetwork>> pairs;
  for (const Tier& tr : tiers) {
    std::vector<UnrootedNetwork> nets;
    for (const Network& net : tier(tr.taxa, tr.k).catalog().members)
      if (net.leaf_count() >= 2) nets.push_back(underlying(net));
    nets = distinct(std::move(nets));
    for (const auto& a : nets)
      for (const auto& b : nets) pairs.emplace_back(a, b);
  }
  // Pairs whose source or target must first lose a terminal component.
  const UnrootedNetwork bad = unrootable_instance();
  std::vector<UnrootedNetwork> partners;
  for (const Network& net : tier({"a"}, 3).catalog().members)
    partners.push_back(underlying(net, "b"));
  partners = distinct(std::move(partners));
  for (const auto& p : partners) {
    pairs.emplace_back(bad, p);
    pairs.emplace_back(p, bad);
  }
  for (const auto& [a, b] : pairs) {
    const auto name = [&] { return write_edge_list(a) + " => " + write_edge_list(b); };
    try {
      const SprSequence seq = spr_sequence(a, b);
      UnrootedNetwork cur = a;
      bool ok = seq.intermediates.size() == seq.moves.size();
      for (std::size_t i = 0; ok && i < seq.moves.size(); ++i) {
        auto next = try_apply_spr(cur, seq.moves[i]);
        ok = next && next->edges() == seq.intermediates[i].edges();
        if (ok) cur = *std::move(next);
      }
      t.check(ok && unrooted_isomorphic(cur, b), name);
      const long bound = spr_sequence_bound(a.leaf_count(), a.reticulation_number());
      t.check(static_cast<long>(seq.moves.size()) <= bound, [&] {
        return std::to_string(seq.moves.size()) + " moves > " + std::to_string(bound) + ": " +
               name();
      });
    } catch (const std::exception& e) {
      t.check(false, [&] { return name() + e.what(); });
    }
  }
  t.notes.push_back(std::to_string(pairs.size()) + " pairs");
  return t.result(11, "unrooted spr pipeline");
}

CheckResult Verifier::parser(const std::vector<Tier>& tiers) {
  Tally t;
  std::vector<std::string> corpus;
  for (const Tier& tr : tiers)
    for (const Network& net : tier(tr.taxa, tr.k).catalog().members) {
      const std::string text = write_enewick(net);
      corpus.push_back(text);
      try {
        t.check(same_code(parse_enewick(text), net), [&] { return text + " does not round-trip"; });
      } catch (const Error& e) {
        t.check(false, [&] { return text + ": " + e.what(); });
      }
      if (net.leaf_count() >= 2) {
        const auto u = underlying(net);
        try {
          t.check(unrooted_isomorphic(parse_edge_list(write_edge_list(u)), u),
                  [&] { return text + " edge list does not round-trip"; });
        } catch (const Error& e) {
          t.check(false, [&] { return text + " edge list: " + e.what(); });
        }
      }
    }
  std::mt19937 rng(20240611);
  const std::string alphabet = "(),;#H1:ab c'[]x0";
  long accepted = 0;
  for (std::size_t i = 0; i < corpus.size() * 20 && !corpus.empty(); ++i) {
    std::string s = corpus[rng() % corpus.size()];
    const int edits = 1 + static_cast<int>(rng() % 3);
    for (int e = 0; e < edits && !s.empty(); ++e) {
      const std::size_t pos = rng() % s.size();
      switch (rng() % 3) {
        case 0: s.erase(pos, 1); break;
        case 1: s.insert(pos, 1, alphabet[rng() % alphabet.size()]); break;
        default: s[pos] = alphabet[rng() % alphabet.size()];
      }
    }
    try {
      const Network net = parse_enewick(s);
      ++accepted;
      t.check(validate(net.to_candidate()).ok(), [&] { return "accepted invalid network " + s; });
    } catch (const SyntaxError&) {
      ++t.checked;
    } catch (const StructureError&) {
      ++t.checked;
    } catch (const std::exception& e) {
      t.check(false, [&] { return "unexpected failure on " + s + ": " + e.what(); });
    }
  }
  t.notes.push_back(std::to_string(accepted) + " mutants accepted");
  return t.result(12, "parser round trip and fuzzing");
}

AcceptanceConfig default_acceptance_config() {
  AcceptanceConfig c;
  for (auto [n, k] : {std::pair{1, 2}, {2, 0}, {2, 1}, {2, 2}, {3, 0}, {3, 1}, {3, 2}, {4, 0},
                      {4, 1}})
    c.pair_tiers.push_back({first_taxa(n), k});
  for (auto [n, k] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 1}, {3, 2}})
    c.rewrite_tiers.push_back({first_taxa(n), k});
  for (auto [n, k] : {std::pair{2, 0}, {2, 1}, {2, 2}, {3, 0}, {3, 1}})
    c.unrooted_tiers.push_back({first_taxa(n), k});
  return c;
}

std::vector<CheckResult> run_acceptance(const AcceptanceConfig& config, int max_nodes) {
  Verifier v(max_nodes);
  return {v.tier_enumeration(),
          v.connectivity(),
          v.head_rewrites(config.rewrite_tiers),
          v.green_line_tail_bound(config.pair_tiers),
          v.green_line_rspr_bound(config.pair_tiers),
          v.decomposition(config.pair_tiers),
          v.distance_order(config.pair_tiers),
          v.mycorrhizal(),
          v.maf_oracle(),
          v.rootability(config.unrooted_tiers),
          v.unrooted_pipeline(config.unrooted_tiers),
          v.parser(config.pair_tiers)};
}

std::vector<CheckResult> verify_bounds(const Tier& tier, int max_nodes) {
  Verifier v(max_nodes);
  const std::vector<Tier> one{tier};
  std::vector<CheckResult> out;
  if (tier.k >= 1) out.push_back(v.head_rewrites(one));
  out.push_back(v.green_line_tail_bound(one));
  out.push_back(v.green_line_rspr_bound(one));
  out.push_back(v.decomposition(one));
  out.push_back(v.distance_order(one));
  out.push_back(v.parser(one));
  return out;
}

}  // namespace tailmoves
