#include "coref/adjudicator.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "coref/parallel.hpp"

namespace coref::adjudicator {

PairTally tally_links(const std::vector<Mention>& mentions,
                      const std::vector<AnnotationSet>& annotations) {
  if (annotations.empty()) throw DataError("adjudication needs at least one annotation");
  std::unordered_map<int, int> index_of;
  for (size_t i = 0; i < mentions.size(); ++i)
    if (!index_of.emplace(mentions[i].id, static_cast<int>(i)).second)
      throw DataError("duplicate mention id " + std::to_string(mentions[i].id));

  PairTally tally;
  tally.mention_count = static_cast<int>(mentions.size());
  tally.annotator_count = static_cast<int>(annotations.size());
  for (const AnnotationSet& annotation : annotations) {
    for (const Chain& chain : annotation.chains) {
      std::vector<int> members;
      members.reserve(chain.mention_ids.size());
      for (int id : chain.mention_ids) {
        auto it = index_of.find(id);
        if (it == index_of.end())
          throw DataError("annotation references undeclared mention id " + std::to_string(id));
        members.push_back(it->second);
      }
      for (size_t a = 0; a < members.size(); ++a)
        for (size_t b = a + 1; b < members.size(); ++b)
          ++tally.coref_counts[PairTally::pair_key(members[a], members[b])];
    }
  }
  return tally;
}

long long objective_cost(const AnnotationSet& candidate,
                         const std::vector<Mention>& mentions, const PairTally& tally,
                         Weights weights) {
  std::unordered_map<int, int> index_of;
  for (size_t i = 0; i < mentions.size(); ++i)
    index_of.emplace(mentions[i].id, static_cast<int>(i));

  // Start from the all-separated cost and adjust for every same-chain pair.
  long long cost = 0;
  for (const auto& [_, w] : tally.coref_counts) cost += static_cast<long long>(weights.omit) * w;
  int k = tally.annotator_count;
  for (const Chain& chain : candidate.chains) {
    for (size_t a = 0; a < chain.mention_ids.size(); ++a) {
      for (size_t b = a + 1; b < chain.mention_ids.size(); ++b) {
        auto ia = index_of.find(chain.mention_ids[a]);
        auto ib = index_of.find(chain.mention_ids[b]);
        if (ia == index_of.end() || ib == index_of.end())
          throw DataError("candidate references undeclared mention id");
        int w = tally.coref(ia->second, ib->second);
        cost += static_cast<long long>(weights.commit) * (k - w) -
                static_cast<long long>(weights.omit) * w;
      }
    }
  }
  return cost;
}

namespace {

// One connected component of the linked-pair graph, with local matrices.
struct Component {
  std::vector<int> members;  // global mention indices, ascending
  int k = 0;
  Weights weights;
  bool has_must = false;
  std::vector<std::vector<int>> w;
  std::vector<std::vector<uint8_t>> blocked;  // overlap or cannot-link
  std::vector<std::vector<uint8_t>> must;

  int size() const { return static_cast<int>(members.size()); }

  // Cheapest possible contribution of a pair, for the lower bound.
  long long pair_lower(int a, int b) const {
    long long join = static_cast<long long>(weights.commit) * (k - w[a][b]);
    long long split = static_cast<long long>(weights.omit) * w[a][b];
    if (must[a][b]) return join;
    if (blocked[a][b]) return split;
    return std::min(join, split);
  }

  bool may_join(int a, int b) const {
    if (blocked[a][b]) return false;
    return must[a][b] || w[a][b] >= 1;
  }
};

struct ComponentSolution {
  std::vector<std::vector<int>> clusters;  // local indices
  long long cost = 0;
  long long nodes = 0;
};

// Depth-first search over restricted-growth cluster assignments: mention i
// joins an existing cluster (in creation order) or opens a new one, which
// enumerates partitions in lexicographic encoding order. Solutions only
// replace the incumbent when strictly cheaper, and the bound prunes only
// subtrees that cannot hold anything cheaper than the incumbent, so the
// returned optimum is the lexicographically smallest one. The oracle variant
// disables pruning and walks the full constrained space.
class BranchAndBound {
 public:
  BranchAndBound(const Component& comp, bool exhaustive)
      : comp_(comp), n_(comp.size()), exhaustive_(exhaustive) {
    assign_.assign(n_, -1);
    suffix_bound_.assign(n_ + 1, 0);
    if (!exhaustive_) {
      for (int b = n_ - 1; b >= 0; --b) {
        long long row = 0;
        for (int a = 0; a < b; ++a) row += comp_.pair_lower(a, b);
        suffix_bound_[b] = suffix_bound_[b + 1] + row;
      }
    }
    // All-singletons is feasible whenever nothing is must-linked, which
    // makes its cost + 1 a valid strict upper bound to seed pruning with.
    if (!comp_.has_must) {
      long long all_split = 0;
      for (int b = 0; b < n_; ++b)
        for (int a = 0; a < b; ++a)
          all_split += static_cast<long long>(comp_.weights.omit) * comp_.w[a][b];
      best_cost_ = all_split + 1;
    }
  }

  ComponentSolution run() {
    dfs(0, 0);
    if (!have_best_) throw DataError("forced constraints are unsatisfiable");
    ComponentSolution solution;
    solution.cost = best_cost_;
    solution.nodes = nodes_;
    int num_clusters = *std::max_element(best_assign_.begin(), best_assign_.end()) + 1;
    solution.clusters.resize(num_clusters);
    for (int i = 0; i < n_; ++i) solution.clusters[best_assign_[i]].push_back(i);
    return solution;
  }

 private:
  void dfs(int i, long long acc) {
    ++nodes_;
    if (i == n_) {
      if (acc < best_cost_) {
        best_cost_ = acc;
        best_assign_ = assign_;
        have_best_ = true;
      }
      return;
    }
    if (!exhaustive_ && acc + suffix_bound_[i] >= best_cost_) return;

    // A must-link to an earlier mention pins the cluster choice.
    int required = -1;
    for (int j = 0; j < i; ++j) {
      if (!comp_.must[j][i]) continue;
      if (required == -1) required = assign_[j];
      else if (required != assign_[j]) return;  // conflicting must-links
    }

    long long base_split = 0;
    for (int j = 0; j < i; ++j)
      base_split += static_cast<long long>(comp_.weights.omit) * comp_.w[j][i];

    int num_clusters = static_cast<int>(clusters_.size());
    for (int c = 0; c <= num_clusters; ++c) {
      if (required != -1 && c != required) continue;
      long long delta = base_split;
      if (c < num_clusters) {
        bool feasible = true;
        for (int j : clusters_[c]) {
          if (!comp_.may_join(j, i)) {
            feasible = false;
            break;
          }
          delta += static_cast<long long>(comp_.weights.commit) * (comp_.k - comp_.w[j][i]) -
                   static_cast<long long>(comp_.weights.omit) * comp_.w[j][i];
        }
        if (!feasible) continue;
        clusters_[c].push_back(i);
      } else {
        clusters_.emplace_back(1, i);
      }
      assign_[i] = c;
      dfs(i + 1, acc + delta);
      assign_[i] = -1;
      if (c < num_clusters) clusters_[c].pop_back();
      else clusters_.pop_back();
    }
  }

  const Component& comp_;
  int n_;
  bool exhaustive_;
  std::vector<int> assign_;
  std::vector<std::vector<int>> clusters_;
  std::vector<long long> suffix_bound_;
  std::vector<int> best_assign_;
  long long best_cost_ = std::numeric_limits<long long>::max();
  bool have_best_ = false;
  long long nodes_ = 0;
};

std::vector<Component> split_components(const std::vector<Mention>& mentions,
                                        const PairTally& tally, Weights weights,
                                        const ForcedPairs* forced) {
  int n = static_cast<int>(mentions.size());
  std::unordered_map<int, int> index_of;
  for (int i = 0; i < n; ++i) index_of.emplace(mentions[i].id, i);

  std::vector<std::pair<int, int>> must, cannot;
  if (forced) {
    auto map_pair = [&](std::pair<int, int> p) {
      auto a = index_of.find(p.first), b = index_of.find(p.second);
      if (a == index_of.end() || b == index_of.end())
        throw DataError("forced pair references undeclared mention id");
      if (a->second == b->second) throw DataError("forced pair links a mention to itself");
      return std::make_pair(std::min(a->second, b->second), std::max(a->second, b->second));
    };
    for (auto p : forced->must_link) must.push_back(map_pair(p));
    for (auto p : forced->cannot_link) cannot.push_back(map_pair(p));
    for (auto m : must) {
      if (std::find(cannot.begin(), cannot.end(), m) != cannot.end())
        throw DataError("pair is both must-link and cannot-link");
      if (overlaps(mentions[m.first], mentions[m.second]))
        throw DataError("must-link over overlapping mentions");
    }
  }

  // Union-find over annotated pairs plus must-links (which may bridge
  // otherwise unlinked mentions).
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [key, _] : tally.coref_counts) {
    int a = static_cast<int>(key >> 32), b = static_cast<int>(key & 0xffffffffu);
    parent[find(a)] = find(b);
  }
  for (auto [a, b] : must) parent[find(a)] = find(b);

  std::unordered_map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);

  std::vector<Component> components;
  for (auto& [root, members] : groups) {
    if (members.size() < 2) continue;  // isolated mentions stay unassigned
    std::sort(members.begin(), members.end());
    Component comp;
    comp.members = members;
    comp.k = tally.annotator_count;
    comp.weights = weights;
    int size = comp.size();
    comp.w.assign(size, std::vector<int>(size, 0));
    comp.blocked.assign(size, std::vector<uint8_t>(size, 0));
    comp.must.assign(size, std::vector<uint8_t>(size, 0));
    std::unordered_map<int, int> local;
    for (int l = 0; l < size; ++l) local.emplace(members[l], l);
    for (int a = 0; a < size; ++a) {
      for (int b = a + 1; b < size; ++b) {
        comp.w[a][b] = comp.w[b][a] = tally.coref(members[a], members[b]);
        if (overlaps(mentions[members[a]], mentions[members[b]]))
          comp.blocked[a][b] = comp.blocked[b][a] = 1;
      }
    }
    for (auto [a, b] : must) {
      auto la = local.find(a), lb = local.find(b);
      if (la == local.end() || lb == local.end()) continue;
      comp.must[la->second][lb->second] = comp.must[lb->second][la->second] = 1;
      comp.has_must = true;
    }
    for (auto [a, b] : cannot) {
      auto la = local.find(a), lb = local.find(b);
      if (la == local.end() || lb == local.end()) continue;
      comp.blocked[la->second][lb->second] = comp.blocked[lb->second][la->second] = 1;
    }
    components.push_back(std::move(comp));
  }
  std::sort(components.begin(), components.end(), [](const Component& a, const Component& b) {
    return a.members.front() < b.members.front();
  });
  return components;
}

AdjudicationResult solve(const std::vector<Mention>& mentions,
                         const std::vector<AnnotationSet>& annotations, Weights weights,
                         const ForcedPairs* forced, bool exhaustive) {
  PairTally tally = tally_links(mentions, annotations);
  std::vector<Component> components = split_components(mentions, tally, weights, forced);

  if (exhaustive) {
    for (const Component& comp : components)
      if (comp.size() > 10)
        throw DataError("oracle limit exceeded: component of size " +
                        std::to_string(comp.size()));
  }

  std::vector<ComponentSolution> solutions(components.size());
  parallel_for(components.size(), [&](size_t c) {
    solutions[c] = BranchAndBound(components[c], exhaustive).run();
  });

  AdjudicationResult result;
  result.gold.annotator_id = "gold";
  for (size_t c = 0; c < components.size(); ++c) {
    const Component& comp = components[c];
    const ComponentSolution& solution = solutions[c];
    result.cost += solution.cost;
    result.per_component.push_back({comp.size(), solution.nodes, solution.cost});
    for (const auto& cluster : solution.clusters) {
      if (cluster.size() < 2) continue;
      std::vector<int> ids;
      ids.reserve(cluster.size());
      for (int local : cluster) ids.push_back(mentions[comp.members[local]].id);
      result.gold.chains.push_back(make_chain(std::move(ids)));
    }
  }
  return result;
}

}  // namespace

AdjudicationResult adjudicate(const std::vector<Mention>& mentions,
                              const std::vector<AnnotationSet>& annotations, Weights weights,
                              const ForcedPairs* forced) {
  return solve(mentions, annotations, weights, forced, false);
}

AdjudicationResult enumerate_oracle(const std::vector<Mention>& mentions,
                                    const std::vector<AnnotationSet>& annotations,
                                    Weights weights) {
  return solve(mentions, annotations, weights, nullptr, true);
}

}  // namespace coref::adjudicator
