#include "coref/metrics.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "coref/assignment.hpp"

namespace coref::metrics {

double f1_of(double recall, double precision) {
  double sum = recall + precision;
  return sum == 0.0 ? 0.0 : 2.0 * recall * precision / sum;
}

MetricScore make_score(RatioPair recall, RatioPair precision) {
  return {recall, precision, f1_of(recall.value(), precision.value()), {}};
}

ScoringInput make_input(const std::vector<Chain>& key, const std::vector<Chain>& response) {
  ScoringInput input;
  input.key.reserve(key.size());
  for (const Chain& c : key) input.key.push_back(c.mention_ids);
  input.response.reserve(response.size());
  for (const Chain& c : response) input.response.push_back(c.mention_ids);
  return input;
}

namespace {

std::unordered_map<int, int> chain_of(const std::vector<std::vector<int>>& chains) {
  std::unordered_map<int, int> map;
  for (size_t i = 0; i < chains.size(); ++i)
    for (int m : chains[i]) map.emplace(m, static_cast<int>(i));
  return map;
}

// One side of the MUC fraction: sum of (|C| - |p(C)|) over (|C| - 1), where
// p(C) partitions C by the other side's chains, uncovered mentions becoming
// singleton parts.
RatioPair muc_side(const std::vector<std::vector<int>>& chains,
                   const std::unordered_map<int, int>& other_chain_of) {
  RatioPair ratio;
  for (const auto& chain : chains) {
    std::unordered_set<int> parts;
    int uncovered = 0;
    for (int m : chain) {
      auto it = other_chain_of.find(m);
      if (it == other_chain_of.end()) ++uncovered;
      else parts.insert(it->second);
    }
    ratio.num += static_cast<double>(chain.size()) -
                 static_cast<double>(parts.size() + uncovered);
    ratio.den += static_cast<double>(chain.size()) - 1.0;
  }
  return ratio;
}

RatioPair bcub_side(const std::vector<std::vector<int>>& chains,
                    const std::unordered_map<int, int>& other_chain_of) {
  RatioPair ratio;
  for (const auto& chain : chains) {
    std::unordered_map<int, int> inter;  // other chain -> |intersection|
    for (int m : chain) {
      auto it = other_chain_of.find(m);
      if (it != other_chain_of.end()) ++inter[it->second];
    }
    for (const auto& [_, count] : inter)
      ratio.num += static_cast<double>(count) * count / static_cast<double>(chain.size());
    ratio.den += static_cast<double>(chain.size());
  }
  return ratio;
}

long long pairs_of(long long n) { return n * (n - 1) / 2; }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

MetricScore score_muc(const ScoringInput& input) {
  auto key_of = chain_of(input.key);
  auto resp_of = chain_of(input.response);
  MetricScore score = make_score(muc_side(input.key, resp_of), muc_side(input.response, key_of));
  score.metric = "muc";
  return score;
}

MetricScore score_bcub(const ScoringInput& input) {
  auto key_of = chain_of(input.key);
  auto resp_of = chain_of(input.response);
  MetricScore score =
      make_score(bcub_side(input.key, resp_of), bcub_side(input.response, key_of));
  score.metric = "bcub";
  return score;
}

MetricScore score_ceaf(const ScoringInput& input, CeafVariant variant) {
  int nk = static_cast<int>(input.key.size());
  int nr = static_cast<int>(input.response.size());
  auto resp_of = chain_of(input.response);

  // Sparse intersection counts; only chains that share a mention can be
  // profitably mapped, so the assignment decomposes over the connected
  // components of the intersection graph.
  std::vector<std::unordered_map<int, int>> inter(nk);
  UnionFind uf(nk + nr);
  for (int i = 0; i < nk; ++i) {
    for (int m : input.key[i]) {
      auto it = resp_of.find(m);
      if (it == resp_of.end()) continue;
      ++inter[i][it->second];
      uf.unite(i, nk + it->second);
    }
  }

  auto phi = [&](int i, int j, int count) {
    if (variant == CeafVariant::mention) return static_cast<double>(count);
    return 2.0 * count /
           (static_cast<double>(input.key[i].size()) + static_cast<double>(input.response[j].size()));
  };

  std::unordered_map<int, std::vector<int>> comp_keys, comp_resps;
  for (int i = 0; i < nk; ++i)
    if (!inter[i].empty()) comp_keys[uf.find(i)].push_back(i);
  for (int j = 0; j < nr; ++j) comp_resps[uf.find(nk + j)].push_back(j);

  std::vector<int> mapped(nk, -1);
  for (auto& [root, keys] : comp_keys) {
    auto rit = comp_resps.find(root);
    if (rit == comp_resps.end()) continue;
    const std::vector<int>& resps = rit->second;
    std::vector<std::vector<double>> weight(keys.size(), std::vector<double>(resps.size(), 0.0));
    for (size_t a = 0; a < keys.size(); ++a) {
      for (const auto& [j, count] : inter[keys[a]]) {
        auto pos = std::find(resps.begin(), resps.end(), j);
        weight[a][pos - resps.begin()] = phi(keys[a], j, count);
      }
    }
    std::vector<int> match = max_weight_assignment(weight);
    for (size_t a = 0; a < keys.size(); ++a)
      if (match[a] >= 0) mapped[keys[a]] = resps[match[a]];
  }

  double total = 0.0;
  for (int i = 0; i < nk; ++i) {
    if (mapped[i] < 0) continue;
    auto it = inter[i].find(mapped[i]);
    int count = it == inter[i].end() ? 0 : it->second;
    total += phi(i, mapped[i], count);
  }

  RatioPair recall{total, 0.0}, precision{total, 0.0};
  if (variant == CeafVariant::mention) {
    for (const auto& c : input.key) recall.den += static_cast<double>(c.size());
    for (const auto& c : input.response) precision.den += static_cast<double>(c.size());
  } else {
    recall.den = static_cast<double>(nk);
    precision.den = static_cast<double>(nr);
  }
  MetricScore score = make_score(recall, precision);
  score.metric = variant == CeafVariant::mention ? "ceafm" : "ceafe";
  return score;
}

BlancScore score_blanc(const ScoringInput& input) {
  auto key_of = chain_of(input.key);
  auto resp_of = chain_of(input.response);

  long long key_mentions = static_cast<long long>(key_of.size());
  long long resp_mentions = static_cast<long long>(resp_of.size());
  long long common_mentions = 0;
  for (const auto& [m, _] : key_of)
    if (resp_of.count(m)) ++common_mentions;

  long long ck = 0, cr = 0;
  for (const auto& c : input.key) ck += pairs_of(static_cast<long long>(c.size()));
  for (const auto& c : input.response) cr += pairs_of(static_cast<long long>(c.size()));

  // Link-set sizes follow from intersection cardinalities; no pair
  // enumeration is needed.
  long long ck_and_cr = 0, ck_and_tr = 0, tk_and_cr = 0;
  for (const auto& chain : input.key) {
    std::unordered_map<int, int> inter;
    long long in_resp = 0;
    for (int m : chain) {
      auto it = resp_of.find(m);
      if (it == resp_of.end()) continue;
      ++in_resp;
      ++inter[it->second];
    }
    ck_and_tr += pairs_of(in_resp);
    for (const auto& [_, count] : inter) ck_and_cr += pairs_of(count);
  }
  for (const auto& chain : input.response) {
    long long in_key = 0;
    for (int m : chain)
      if (key_of.count(m)) ++in_key;
    tk_and_cr += pairs_of(in_key);
  }

  long long tk = pairs_of(key_mentions);
  long long tr = pairs_of(resp_mentions);
  long long tk_and_tr = pairs_of(common_mentions);
  long long nk = tk - ck;
  long long nr = tr - cr;
  long long nk_and_nr = tk_and_tr - ck_and_tr - tk_and_cr + ck_and_cr;

  BlancScore score;
  score.coref = make_score({static_cast<double>(ck_and_cr), static_cast<double>(ck)},
                           {static_cast<double>(ck_and_cr), static_cast<double>(cr)});
  score.noncoref = make_score({static_cast<double>(nk_and_nr), static_cast<double>(nk)},
                              {static_cast<double>(nk_and_nr), static_cast<double>(nr)});
  score.coref.metric = "blanc.coref";
  score.noncoref.metric = "blanc.noncoref";
  return score;
}

double BlancScore::blanc() const {
  bool no_coref_links = coref.recall.den == 0.0 && coref.precision.den == 0.0;
  bool no_noncoref_links = noncoref.recall.den == 0.0 && noncoref.precision.den == 0.0;
  if (no_coref_links && no_noncoref_links) return 0.0;
  if (no_coref_links) return noncoref.f1;
  if (no_noncoref_links) return coref.f1;
  return (coref.f1 + noncoref.f1) / 2.0;
}

MetricScore BlancScore::combined() const {
  bool no_coref_links = coref.recall.den == 0.0 && coref.precision.den == 0.0;
  bool no_noncoref_links = noncoref.recall.den == 0.0 && noncoref.precision.den == 0.0;
  if (no_coref_links && no_noncoref_links) return MetricScore{};
  if (no_coref_links) return noncoref;
  if (no_noncoref_links) return coref;
  MetricScore out;
  out.recall = {(coref.recall.value() + noncoref.recall.value()) / 2.0, 1.0};
  out.precision = {(coref.precision.value() + noncoref.precision.value()) / 2.0, 1.0};
  out.f1 = blanc();
  return out;
}

namespace {

// link(C) = C(|C|, 2); a singleton entity counts as one self-link.
double lea_links(size_t size) {
  return size <= 1 ? 1.0 : static_cast<double>(pairs_of(static_cast<long long>(size)));
}

RatioPair lea_side(const std::vector<std::vector<int>>& chains,
                   const std::unordered_map<int, int>& other_chain_of) {
  RatioPair ratio;
  for (const auto& chain : chains) {
    double resolved = 0.0;
    if (chain.size() == 1) {
      // The self-link is reproduced iff the mention appears on the other side.
      resolved = other_chain_of.count(chain[0]) ? 1.0 : 0.0;
    } else {
      std::unordered_map<int, int> inter;
      for (int m : chain) {
        auto it = other_chain_of.find(m);
        if (it != other_chain_of.end()) ++inter[it->second];
      }
      for (const auto& [_, count] : inter)
        resolved += static_cast<double>(pairs_of(count));
    }
    ratio.num += static_cast<double>(chain.size()) * resolved / lea_links(chain.size());
    ratio.den += static_cast<double>(chain.size());
  }
  return ratio;
}

}  // namespace

MetricScore score_lea(const ScoringInput& input) {
  auto key_of = chain_of(input.key);
  auto resp_of = chain_of(input.response);
  MetricScore score =
      make_score(lea_side(input.key, resp_of), lea_side(input.response, key_of));
  score.metric = "lea";
  return score;
}

MetricScore accumulate(std::span<const MetricScore> scores) {
  RatioPair recall, precision;
  std::string metric;
  for (const MetricScore& s : scores) {
    if (!s.metric.empty()) {
      if (metric.empty()) metric = s.metric;
      else if (metric != s.metric)
        throw DataError("cannot accumulate scores from different metrics: " + metric +
                        " and " + s.metric);
    }
    recall.num += s.recall.num;
    recall.den += s.recall.den;
    precision.num += s.precision.num;
    precision.den += s.precision.den;
  }
  MetricScore total = make_score(recall, precision);
  total.metric = metric;
  return total;
}

BlancScore accumulate_blanc(std::span<const BlancScore> scores) {
  RatioPair cr, cp, nr, np;
  for (const BlancScore& s : scores) {
    cr.num += s.coref.recall.num;
    cr.den += s.coref.recall.den;
    cp.num += s.coref.precision.num;
    cp.den += s.coref.precision.den;
    nr.num += s.noncoref.recall.num;
    nr.den += s.noncoref.recall.den;
    np.num += s.noncoref.precision.num;
    np.den += s.noncoref.precision.den;
  }
  BlancScore out;
  out.coref = make_score(cr, cp);
  out.noncoref = make_score(nr, np);
  return out;
}

}  // namespace coref::metrics
