#include "tailmoves/canonical.hpp"

#include <algorithm>
#include <numeric>

namespace tailmoves {

namespace {

int rank_by(std::vector<int>& col, const std::vector<std::vector<int>>& sig) {
  const int n = static_cast<int>(sig.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return sig[a] < sig[b]; });
  int rank = -1;
  for (int i = 0; i < n; ++i) {
    if (i == 0 || sig[idx[i]] != sig[idx[i - 1]]) ++rank;
    col[idx[i]] = rank;
  }
  return rank + 1;
}

// Refines until stable. Colours keep the relative order of the input colours.
int refine(const ColoredGraph& g, std::vector<int>& col) {
  const int n = static_cast<int>(col.size());
  std::vector<std::vector<int>> sig(n);
  int count = -1;
  for (;;) {
    for (int v = 0; v < n; ++v) {
      auto& s = sig[v];
      s.clear();
      s.push_back(col[v]);
      const std::size_t mark = s.size();
      for (int w : g.out[v]) s.push_back(col[w]);
      std::sort(s.begin() + mark, s.end());
      s.push_back(-1);
      if (g.directed) {
        const std::size_t mark2 = s.size();
        for (int w : g.in[v]) s.push_back(col[w]);
        std::sort(s.begin() + mark2, s.end());
      }
    }
    const int next = rank_by(col, sig);
    if (next == count) return count;
    count = next;
  }
}

std::string encode(const ColoredGraph& g, const std::vector<int>& order,
                   const std::vector<int>& index) {
  const int n = static_cast<int>(order.size());
  std::string code = std::to_string(n) + "|";
  for (int v : order) {
    code += g.keys[v];
    code += '\x1f';
  }
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v)
    for (int w : g.out[v]) {
      int a = index[v], b = index[w];
      if (!g.directed) {
        if (a > b) continue;
      }
      edges.emplace_back(a, b);
    }
  std::sort(edges.begin(), edges.end());
  code += '|';
  for (auto [a, b] : edges) {
    code += std::to_string(a);
    code += g.directed ? '>' : '-';
    code += std::to_string(b);
    code += ',';
  }
  return code;
}

void search(const ColoredGraph& g, std::vector<int> col, int count,
            CanonicalLabeling& best, bool& have) {
  const int n = static_cast<int>(col.size());
  if (count == n) {
    std::vector<int> order(n), index(n);
    for (int v = 0; v < n; ++v) {
      order[col[v]] = v;
      index[v] = col[v];
    }
    std::string code = encode(g, order, index);
    if (!have || code < best.code) {
      best = {std::move(code), std::move(order), std::move(index)};
      have = true;
    }
    return;
  }
  std::vector<int> size(count, 0);
  for (int c : col) ++size[c];
  int cell = 0;
  while (size[cell] == 1) ++cell;
  for (int v = 0; v < n; ++v) {
    if (col[v] != cell) continue;
    std::vector<int> next(n);
    for (int w = 0; w < n; ++w)
      next[w] = 2 * col[w] + (col[w] == cell && w != v ? 1 : 0);
    const int c = refine(g, next);
    search(g, std::move(next), c, best, have);
  }
}

ColoredGraph colored(const Network& net) {
  const int n = net.node_count();
  ColoredGraph g;
  g.keys.resize(n);
  g.out.resize(n);
  g.in.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    switch (net.role(v)) {
      case NodeRole::Root: g.keys[v] = "R"; break;
      case NodeRole::Tree: g.keys[v] = "T"; break;
      case NodeRole::Reticulation: g.keys[v] = "H"; break;
      case NodeRole::Leaf: g.keys[v] = "L:" + net.label(v); break;
    }
    g.out[v].assign(net.children(v).begin(), net.children(v).end());
    g.in[v].assign(net.parents(v).begin(), net.parents(v).end());
  }
  return g;
}

}  // namespace

CanonicalLabeling canonical_labeling(const ColoredGraph& g) {
  const int n = static_cast<int>(g.keys.size());
  std::vector<int> col(n);
  {
    std::vector<std::string> distinct(g.keys.begin(), g.keys.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int v = 0; v < n; ++v)
      col[v] = static_cast<int>(
          std::lower_bound(distinct.begin(), distinct.end(), g.keys[v]) -
          distinct.begin());
  }
  const int count = refine(g, col);
  CanonicalLabeling best;
  bool have = false;
  search(g, std::move(col), count, best, have);
  return best;
}

CanonicalForm canonical_form(const Network& net) {
  auto lab = canonical_labeling(colored(net));
  return {{std::move(lab.code), net.leaf_count(), net.reticulation_count()},
          std::move(lab.order),
          std::move(lab.index)};
}

CanonicalCode canonical_code(const Network& net) {
  return canonical_form(net).code;
}

std::optional<std::vector<NodeId>> find_isomorphism(const Network& a,
                                                    const Network& b) {
  if (a.node_count() != b.node_count()) return std::nullopt;
  auto fa = canonical_form(a);
  auto fb = canonical_form(b);
  if (fa.code != fb.code) return std::nullopt;
  std::vector<NodeId> map(a.node_count());
  for (std::size_t i = 0; i < fa.order.size(); ++i) map[fa.order[i]] = fb.order[i];
  return map;
}

bool isomorphic(const Network& a, const Network& b) {
  return a.node_count() == b.node_count() && canonical_code(a) == canonical_code(b);
}

}  // namespace tailmoves
