#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tailmoves/oracle.hpp"

namespace tailmoves {

struct CheckResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
};

// A tier catalog with its move graphs and all-pairs distances, built on demand.
class TierData {
 public:
  TierData(const Tier& tier, int max_nodes);

  const TierCatalog& catalog() const { return catalog_; }
  const MoveGraph& graph(MoveClass c);
  // distances(c)[i][j], -1 when unreachable.
  const std::vector<std::vector<int>>& distances(MoveClass c);

 private:
  TierCatalog catalog_;
  std::map<MoveClass, MoveGraph> graphs_;
  std::map<MoveClass, std::vector<std::vector<int>>> distances_;
};

class Verifier {
 public:
  explicit Verifier(int max_nodes = kDefaultMaxNodes) : max_nodes_(max_nodes) {}

  TierData& tier(const std::vector<std::string>& taxa, int k);

  CheckResult tier_enumeration();
  CheckResult connectivity();
  CheckResult head_rewrites(const std::vector<Tier>& tiers);
  CheckResult green_line_tail_bound(const std::vector<Tier>& tiers);
  CheckResult green_line_rspr_bound(const std::vector<Tier>& tiers);
  CheckResult decomposition(const std::vector<Tier>& tiers);
  CheckResult distance_order(const std::vector<Tier>& tiers);
  CheckResult mycorrhizal();
  CheckResult maf_oracle();
  CheckResult rootability(const std::vector<Tier>& tiers);
  CheckResult unrooted_pipeline(const std::vector<Tier>& tiers);
  CheckResult parser(const std::vector<Tier>& tiers);

 private:
  int max_nodes_;
  std::map<std::pair<std::vector<std::string>, int>, std::unique_ptr<TierData>> tiers_;
};

// Taxa a, b, ... of the given size.
std::vector<std::string> first_taxa(int n);

struct AcceptanceConfig {
  std::vector<Tier> pair_tiers;     // all ordered pairs are run through the sequences
  std::vector<Tier> rewrite_tiers;  // every move of every member is rewritten
  std::vector<Tier> unrooted_tiers;
};

AcceptanceConfig default_acceptance_config();

std::vector<CheckResult> run_acceptance(const AcceptanceConfig& config,
                                        int max_nodes = kDefaultMaxNodes);
// The per-tier bound checks (head rewrites, both sequence bounds,
// decomposition, distance order, parser) on one tier.
std::vector<CheckResult> verify_bounds(const Tier& tier, int max_nodes = kDefaultMaxNodes);

}  // namespace tailmoves
