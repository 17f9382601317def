#include "coref/baseline.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "coref/parallel.hpp"
#include "coref/rng.hpp"
#include "coref/text.hpp"

namespace coref::baseline {

PronounLexicon PronounLexicon::default_turkish() {
  // Personal, demonstrative, reflexive and reciprocal pronoun lemmas.
  static const char* kLemmas[] = {"ben",    "sen",    "o",      "biz",      "siz",
                                  "onlar",  "bu",     "şu",     "bunlar",   "şunlar",
                                  "kendi",  "kendisi", "birbiri", "birbirleri"};
  PronounLexicon lexicon;
  for (const char* lemma : kLemmas) lexicon.lemmas.insert(lemma);
  return lexicon;
}

PronounLexicon PronounLexicon::from_stream(std::istream& in) {
  PronounLexicon lexicon;
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    size_t start = 0;
    while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start]))) ++start;
    if (start < line.size()) lexicon.lemmas.insert(line.substr(start));
  }
  return lexicon;
}

DocumentView::DocumentView(const Document& doc, const PronounLexicon& lexicon)
    : doc_(&doc), lexicon_(&lexicon), sent_index_(sentence_index(doc)) {
  // Upper-case tokens away from the sentence start, case markers stripped,
  // form the document's proper-noun key set.
  for (const Sentence& s : doc.sentences)
    for (const Token& t : s.tokens)
      if (t.word_ix > 1 && text::starts_uppercase(t.surface))
        proper_keys_.insert(stripped_form(t));
}

std::string DocumentView::stripped_form(const Token& token) {
  std::string_view before = text::strip_apostrophe(token.surface);
  if (before.size() != token.surface.size()) return std::string(before);
  return token.lemma;
}

const Token& DocumentView::head_token(const Mention& m) const {
  auto it = sent_index_.find(m.sentence_no);
  if (it == sent_index_.end()) throw DataError("unknown sentenceNo: " + m.sentence_no);
  const Sentence& s = doc_->sentences[it->second];
  if (m.from_word_ix < 1 || m.to_word_ix > static_cast<int>(s.tokens.size()))
    throw DataError("mention out of bounds in sentence " + m.sentence_no);
  for (int ix = m.to_word_ix; ix >= m.from_word_ix; --ix) {
    int head = s.tokens[ix - 1].dep_head;
    if (head == 0 || head < m.from_word_ix || head > m.to_word_ix) return s.tokens[ix - 1];
  }
  return s.tokens[m.to_word_ix - 1];
}

MentionType DocumentView::type_of(const Mention& m) const {
  const Token& head = head_token(m);
  if (lexicon_->lemmas.count(head.lemma)) return MentionType::pronoun;
  if (proper_keys_.count(stripped_form(head))) return MentionType::proper_noun;
  return MentionType::noun_phrase;
}

MentionType classify_mention_type(const Mention& m, const DocumentView& view) {
  return view.type_of(m);
}

std::vector<Mention> detect_mentions(const Document& doc, const PronounLexicon& lexicon) {
  // (sentence position, fromWordIX, toWordIX), ordered = document order.
  std::set<std::tuple<int, int, int>> spans;

  // Rule (iv) counts: apostrophe-stripped capitalized noun surfaces.
  std::map<std::string, int> capitalized_counts;
  for (const Sentence& s : doc.sentences)
    for (const Token& t : s.tokens)
      if (t.pos == "Noun" && text::starts_uppercase(t.surface))
        ++capitalized_counts[std::string(text::strip_apostrophe(t.surface))];

  for (size_t sp = 0; sp < doc.sentences.size(); ++sp) {
    const Sentence& s = doc.sentences[sp];
    int n = static_cast<int>(s.tokens.size());

    // Walking the dependency chain from `j` at most n steps guards against
    // cyclic annotations.
    auto in_subtree = [&](int j, int h) {
      int cur = j;
      for (int step = 0; step <= n; ++step) {
        if (cur == h) return true;
        int head = s.tokens[cur].dep_head;
        if (head == 0) return false;
        cur = head - 1;
      }
      return false;
    };

    for (int idx = 0; idx < n; ++idx) {
      const Token& t = s.tokens[idx];
      if (lexicon.lemmas.count(t.lemma)) spans.insert({static_cast<int>(sp), idx + 1, idx + 1});
      if (t.pos != "Noun") continue;
      if (text::starts_uppercase(t.lemma)) spans.insert({static_cast<int>(sp), idx + 1, idx + 1});
      if (text::starts_uppercase(t.surface) &&
          capitalized_counts[std::string(text::strip_apostrophe(t.surface))] >= 2)
        spans.insert({static_cast<int>(sp), idx + 1, idx + 1});
      // Rule (i): the noun plus its contiguous preceding dependent subtree,
      // the biggest possible span for a head-final noun phrase.
      int start = idx;
      while (start > 0 && in_subtree(start - 1, idx)) --start;
      spans.insert({static_cast<int>(sp), start + 1, idx + 1});
    }
  }

  std::vector<Mention> mentions;
  mentions.reserve(spans.size());
  for (const auto& [sp, from, to] : spans) {
    Mention m;
    m.id = static_cast<int>(mentions.size());
    m.sentence_no = doc.sentences[sp].sentence_no;
    m.from_word_ix = from;
    m.to_word_ix = to;
    mentions.push_back(std::move(m));
  }
  return mentions;
}

// ----------------------------------------------------------------- features

namespace {

constexpr int kNumTypeFeatures = 9;   // m1 one-hot (3), m2 one-hot (3), both-flags (3)
constexpr int kNumMatchFeatures = 12;
constexpr int kMatchBase = kNumTypeFeatures;
constexpr int kConjBase = kNumTypeFeatures + kNumMatchFeatures;

const char* kTypeNames[] = {"pronoun", "properNoun", "nounPhrase"};

std::vector<std::string> build_feature_names() {
  std::vector<std::string> names;
  for (const char* t : kTypeNames) names.push_back(std::string("m1Type=") + t);
  for (const char* t : kTypeNames) names.push_back(std::string("m2Type=") + t);
  names.push_back("bothPronoun");
  names.push_back("bothProperNoun");
  names.push_back("bothNounPhrase");
  const char* match_names[] = {"headMatch",        "headLemmaMatch",   "properLastPartMatch",
                               "acronym",          "acronymRev",       "acronymEither",
                               "headSubstr",       "headSubstrRev",    "headSubstrEither",
                               "lemmaSubstr",      "lemmaSubstrRev",   "lemmaSubstrEither"};
  for (const char* m : match_names) names.push_back(m);
  for (int t = 0; t < kNumTypeFeatures; ++t)
    for (int f = 0; f < kNumMatchFeatures; ++f)
      names.push_back("conj(" + names[t] + "," + names[kMatchBase + f] + ")");
  return names;
}

const std::vector<std::string>& feature_names() {
  static const std::vector<std::string> names = build_feature_names();
  return names;
}

int type_slot(MentionType t) {
  switch (t) {
    case MentionType::pronoun: return 0;
    case MentionType::proper_noun: return 1;
    default: return 2;
  }
}

std::string last_underscore_part(std::string_view s) {
  size_t pos = s.rfind('_');
  return std::string(pos == std::string_view::npos ? s : s.substr(pos + 1));
}

// True if `a` is a single token whose apostrophe-stripped surface equals the
// concatenated initial letters of `b`'s tokens (underscore-joined multiword
// tokens count per part), case-folded. At least two initials are required.
bool is_acronym_of(const Mention& a, const Mention& b, const DocumentView& view) {
  if (a.from_word_ix != a.to_word_ix) return false;
  const Sentence& sa = view.doc().sentences[view.sentences().at(a.sentence_no)];
  std::string word =
      text::fold_lower(text::strip_apostrophe(sa.tokens[a.from_word_ix - 1].surface));

  const Sentence& sb = view.doc().sentences[view.sentences().at(b.sentence_no)];
  std::string initials;
  int units = 0;
  for (int ix = b.from_word_ix; ix <= b.to_word_ix; ++ix) {
    std::string_view surface = text::strip_apostrophe(sb.tokens[ix - 1].surface);
    size_t start = 0;
    while (start < surface.size()) {
      size_t end = surface.find('_', start);
      std::string_view part =
          surface.substr(start, end == std::string_view::npos ? end : end - start);
      if (!part.empty()) {
        size_t first_cp_len = 0;
        text::decode_utf8(part, first_cp_len);
        initials += text::fold_lower(part.substr(0, first_cp_len));
        ++units;
      }
      if (end == std::string_view::npos) break;
      start = end + 1;
    }
  }
  return units >= 2 && !word.empty() && word == initials;
}

}  // namespace

int FeatureSpace::dimension() { return static_cast<int>(feature_names().size()); }

const std::string& FeatureSpace::name(int index) { return feature_names()[index]; }

int FeatureSpace::index_of(std::string_view name) {
  const auto& names = feature_names();
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

FeatureVector extract_features(const Mention& m1, const Mention& m2, const DocumentView& view) {
  MentionType t1 = view.type_of(m1);
  MentionType t2 = view.type_of(m2);
  const Token& h1 = view.head_token(m1);
  const Token& h2 = view.head_token(m2);

  bool type_active[kNumTypeFeatures] = {};
  type_active[type_slot(t1)] = true;
  type_active[3 + type_slot(t2)] = true;
  if (t1 == t2) type_active[6 + type_slot(t1)] = true;

  bool match_active[kNumMatchFeatures] = {};
  match_active[0] = h1.surface == h2.surface;
  match_active[1] = h1.lemma == h2.lemma;
  if (t1 == MentionType::proper_noun && t2 == MentionType::proper_noun)
    match_active[2] = last_underscore_part(DocumentView::stripped_form(h1)) ==
                      last_underscore_part(DocumentView::stripped_form(h2));
  bool acro = is_acronym_of(m1, m2, view);
  bool acro_rev = is_acronym_of(m2, m1, view);
  match_active[3] = acro;
  match_active[4] = acro_rev;
  match_active[5] = acro || acro_rev;
  bool head_sub = h2.surface.find(h1.surface) != std::string::npos;
  bool head_sub_rev = h1.surface.find(h2.surface) != std::string::npos;
  match_active[6] = head_sub;
  match_active[7] = head_sub_rev;
  match_active[8] = head_sub || head_sub_rev;
  bool lemma_sub = h2.lemma.find(h1.lemma) != std::string::npos;
  bool lemma_sub_rev = h1.lemma.find(h2.lemma) != std::string::npos;
  match_active[9] = lemma_sub;
  match_active[10] = lemma_sub_rev;
  match_active[11] = lemma_sub || lemma_sub_rev;

  FeatureVector features;
  for (int t = 0; t < kNumTypeFeatures; ++t)
    if (type_active[t]) features.entries.emplace_back(t, 1.0);
  for (int f = 0; f < kNumMatchFeatures; ++f)
    if (match_active[f]) features.entries.emplace_back(kMatchBase + f, 1.0);
  for (int t = 0; t < kNumTypeFeatures; ++t) {
    if (!type_active[t]) continue;
    for (int f = 0; f < kNumMatchFeatures; ++f)
      if (match_active[f])
        features.entries.emplace_back(kConjBase + t * kNumMatchFeatures + f, 1.0);
  }
  return features;
}

// ----------------------------------------------------------------- training

namespace {

struct OrderedMentions {
  std::vector<Mention> mentions;      // document order
  std::vector<int> chain_of;          // -1 for unchained / spurious
};

OrderedMentions order_mentions(const TrainingDoc& tdoc, MentionSource source,
                               uint64_t doc_seed, const PronounLexicon& lexicon) {
  OrderedMentions out;
  auto sent_idx = sentence_index(*tdoc.doc);

  std::unordered_map<int, int> chain_of_id;
  for (size_t c = 0; c < tdoc.gold_chains.size(); ++c)
    for (int id : tdoc.gold_chains[c].mention_ids) chain_of_id[id] = static_cast<int>(c);

  struct Entry {
    Mention mention;
    int chain = -1;
  };
  std::vector<Entry> entries;
  for (const Mention& m : tdoc.gold_mentions) {
    auto it = chain_of_id.find(m.id);
    entries.push_back({m, it == chain_of_id.end() ? -1 : it->second});
  }

  if (source == MentionSource::predicted) {
    // Sample as many spurious detections as there are gold mentions.
    std::unordered_set<SpanKey, SpanKeyHash> gold_spans;
    for (const Mention& m : tdoc.gold_mentions) gold_spans.insert(span_of(m));
    std::vector<Mention> spurious;
    for (const Mention& m : detect_mentions(*tdoc.doc, lexicon))
      if (!gold_spans.count(span_of(m))) spurious.push_back(m);
    Rng rng(doc_seed);
    rng.shuffle(spurious);
    size_t take = std::min(spurious.size(), tdoc.gold_mentions.size());
    for (size_t i = 0; i < take; ++i) entries.push_back({spurious[i], -1});
  }

  std::sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
    int cmp = compare_document_order(a.mention, b.mention, sent_idx);
    if (cmp != 0) return cmp < 0;
    return a.chain > b.chain;  // gold copy of an identical span first
  });
  for (const Entry& e : entries) {
    out.mentions.push_back(e.mention);
    out.chain_of.push_back(e.chain);
  }
  return out;
}

}  // namespace

std::vector<Example> generate_training_examples(const std::vector<TrainingDoc>& docs,
                                                MentionSource source, const TrainConfig& cfg,
                                                const PronounLexicon& lexicon) {
  std::vector<Example> examples;
  for (size_t d = 0; d < docs.size(); ++d) {
    OrderedMentions ordered =
        order_mentions(docs[d], source, Rng::derive(cfg.seed, d), lexicon);
    DocumentView view(*docs[d].doc, lexicon);
    int n = static_cast<int>(ordered.mentions.size());

    // Positive: each mention with its closest same-chain predecessor.
    std::unordered_map<int, int> last_in_chain;  // chain -> previous index
    std::vector<std::pair<int, int>> positives;
    for (int j = 0; j < n; ++j) {
      int chain = ordered.chain_of[j];
      if (chain < 0) continue;
      auto it = last_in_chain.find(chain);
      if (it != last_in_chain.end()) positives.emplace_back(it->second, j);
      last_in_chain[chain] = j;
    }
    for (auto [i, j] : positives)
      examples.push_back(
          {extract_features(ordered.mentions[i], ordered.mentions[j], view), true, 1.0});

    // Negative: non-coreference links within the mention-distance window.
    for (int j = 0; j < n; ++j) {
      for (int i = std::max(0, j - cfg.neg_window + 1); i < j; ++i) {
        bool coreferent = ordered.chain_of[i] >= 0 && ordered.chain_of[i] == ordered.chain_of[j];
        if (coreferent) continue;
        examples.push_back(
            {extract_features(ordered.mentions[i], ordered.mentions[j], view), false, 1.0});
      }
    }
  }

  if (cfg.class_balancing) {
    double positives = 0, negatives = 0;
    for (const Example& e : examples) (e.positive ? positives : negatives) += 1.0;
    double total = positives + negatives;
    for (Example& e : examples)
      e.weight = e.positive ? (positives > 0 ? total / (2.0 * positives) : 1.0)
                            : (negatives > 0 ? total / (2.0 * negatives) : 1.0);
  }
  return examples;
}

double LinearModel::score(const FeatureVector& features) const {
  double total = bias;
  for (const auto& [index, value] : features.entries) total += weights[index] * value;
  return total;
}

LinearModel train_linear(const std::vector<Example>& examples, LinearModel::Mode mode,
                         const TrainConfig& cfg) {
  if (examples.empty()) throw DataError("no training examples");
  if (mode == LinearModel::Mode::classification) {
    bool has_pos = false, has_neg = false;
    for (const Example& e : examples) (e.positive ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg)
      throw DataError("degenerate training set: only one class present");
  }

  LinearModel model;
  model.mode = mode;
  model.weights.assign(FeatureSpace::dimension(), 0.0);

  constexpr double kEpsilon = 0.1;  // insensitive band for regression
  Rng rng(cfg.seed);
  std::vector<int> order(examples.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);

  long long t = 1;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(order);
    for (int index : order) {
      const Example& ex = examples[index];
      // 1/sqrt(t) decay: the subgradient steps have constant magnitude, so
      // the rate itself has to shrink for the iterates to settle.
      double eta = cfg.learning_rate / std::sqrt(static_cast<double>(t));
      ++t;
      double shrink = 1.0 - eta * cfg.l2_lambda;
      if (shrink < 0.0) shrink = 0.0;
      for (double& w : model.weights) w *= shrink;

      double predicted = model.score(ex.features);
      if (mode == LinearModel::Mode::classification) {
        double y = ex.positive ? 1.0 : -1.0;
        if (y * predicted < 1.0) {
          double step = eta * ex.weight * y;
          for (const auto& [i, v] : ex.features.entries) model.weights[i] += step * v;
          model.bias += step;
        }
      } else {
        double target = ex.positive ? 1.0 : 0.0;
        double err = predicted - target;
        if (err > kEpsilon || err < -kEpsilon) {
          double step = eta * ex.weight * (err > 0 ? -1.0 : 1.0);
          for (const auto& [i, v] : ex.features.entries) model.weights[i] += step * v;
          model.bias += step;
        }
      }
    }
  }
  return model;
}

namespace {

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

double parse_double(std::string_view s, int line) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("malformed number '" + std::string(s) + "'", line);
  return value;
}

}  // namespace

std::string save_model(const LinearModel& model) {
  std::string out = "corefkit-model v1\n";
  out += std::string("mode ") +
         (model.mode == LinearModel::Mode::classification ? "classification" : "regression") +
         "\n";
  out += "bias " + format_double(model.bias) + "\n";
  for (int i = 0; i < FeatureSpace::dimension(); ++i)
    out += FeatureSpace::name(i) + " " + format_double(model.weights[i]) + "\n";
  return out;
}

LinearModel load_model(std::string_view bytes) {
  std::istringstream in{std::string(bytes)};
  std::string line;
  int line_no = 0;
  auto next_line = [&]() {
    if (!std::getline(in, line)) throw ParseError("unexpected end of model file", line_no);
    ++line_no;
  };
  next_line();
  if (line != "corefkit-model v1") throw ParseError("unsupported model file header", 1);
  next_line();
  LinearModel model;
  if (line == "mode classification") model.mode = LinearModel::Mode::classification;
  else if (line == "mode regression") model.mode = LinearModel::Mode::regression;
  else throw ParseError("malformed mode line", line_no);
  next_line();
  if (line.rfind("bias ", 0) != 0) throw ParseError("malformed bias line", line_no);
  model.bias = parse_double(std::string_view(line).substr(5), line_no);

  model.weights.assign(FeatureSpace::dimension(), 0.0);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    size_t space = line.rfind(' ');
    if (space == std::string::npos) throw ParseError("malformed weight line", line_no);
    int index = FeatureSpace::index_of(std::string_view(line).substr(0, space));
    if (index < 0)
      throw ParseError("unknown feature '" + line.substr(0, space) + "'", line_no);
    model.weights[index] = parse_double(std::string_view(line).substr(space + 1), line_no);
  }
  return model;
}

// ------------------------------------------------------------------ chains

namespace {

struct MergeState {
  std::vector<int> parent;
  std::vector<std::vector<int>> members;  // per root

  explicit MergeState(int n) : parent(n), members(n) {
    for (int i = 0; i < n; ++i) {
      parent[i] = i;
      members[i] = {i};
    }
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool merge_would_overlap(int ra, int rb, const std::vector<Mention>& mentions) {
    for (int a : members[ra])
      for (int b : members[rb])
        if (overlaps(mentions[a], mentions[b])) return true;
    return false;
  }
  void merge(int ra, int rb) {
    if (members[ra].size() < members[rb].size()) std::swap(ra, rb);
    members[ra].insert(members[ra].end(), members[rb].begin(), members[rb].end());
    members[rb].clear();
    parent[rb] = ra;
  }
};

std::vector<Mention> sorted_by_document(const std::vector<Mention>& mentions,
                                        const DocumentView& view) {
  std::vector<Mention> sorted = mentions;
  std::sort(sorted.begin(), sorted.end(), [&](const Mention& a, const Mention& b) {
    int cmp = compare_document_order(a, b, view.sentences());
    if (cmp != 0) return cmp < 0;
    return a.id < b.id;
  });
  return sorted;
}

// Chains of size >= 2, ordered by their earliest mention in document order.
std::vector<Chain> collect_chains(MergeState& state, const std::vector<Mention>& mentions) {
  std::vector<std::pair<int, Chain>> keyed;
  for (int r = 0; r < static_cast<int>(state.members.size()); ++r) {
    if (state.parent[r] != r || state.members[r].size() < 2) continue;
    int earliest = *std::min_element(state.members[r].begin(), state.members[r].end());
    std::vector<int> ids;
    ids.reserve(state.members[r].size());
    for (int local : state.members[r]) ids.push_back(mentions[local].id);
    keyed.emplace_back(earliest, make_chain(std::move(ids)));
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Chain> chains;
  chains.reserve(keyed.size());
  for (auto& [_, chain] : keyed) chains.push_back(std::move(chain));
  return chains;
}

}  // namespace

std::vector<Chain> build_chains_merge(const std::vector<Mention>& mentions,
                                      const LinearModel& model, const DocumentView& view) {
  if (model.mode != LinearModel::Mode::classification)
    throw DataError("transitive-merge chain building needs a classification model");
  std::vector<Mention> sorted = sorted_by_document(mentions, view);
  int n = static_cast<int>(sorted.size());
  std::vector<MentionType> types(n);
  for (int i = 0; i < n; ++i) types[i] = view.type_of(sorted[i]);

  MergeState state(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (types[i] == MentionType::pronoun && types[j] != MentionType::pronoun) continue;
      if (model.score(extract_features(sorted[i], sorted[j], view)) <= 0.0) continue;
      int ra = state.find(i), rb = state.find(j);
      if (ra == rb) continue;
      if (state.merge_would_overlap(ra, rb, sorted)) continue;  // skipped in scan order
      state.merge(ra, rb);
    }
  }
  return collect_chains(state, sorted);
}

std::vector<Chain> build_chains_best_link(const std::vector<Mention>& mentions,
                                          const LinearModel& model, const DocumentView& view,
                                          const TrainConfig& cfg) {
  if (model.mode != LinearModel::Mode::regression)
    throw DataError("Best-Link chain building needs a regression model");
  std::vector<Mention> sorted = sorted_by_document(mentions, view);
  int n = static_cast<int>(sorted.size());
  std::vector<MentionType> types(n);
  for (int i = 0; i < n; ++i) types[i] = view.type_of(sorted[i]);

  MergeState state(n);
  for (int j = 0; j < n; ++j) {
    int best = -1;
    double best_score = 0.0;
    for (int i = 0; i < j; ++i) {
      if (types[i] == MentionType::pronoun && types[j] != MentionType::pronoun) continue;
      double s = model.score(extract_features(sorted[i], sorted[j], view));
      // >= keeps the closest predecessor on ties.
      if (best < 0 || s >= best_score) {
        best = i;
        best_score = s;
      }
    }
    if (best < 0 || best_score <= cfg.best_link_threshold) continue;
    int ra = state.find(best), rb = state.find(j);
    if (ra == rb) continue;
    if (state.merge_would_overlap(ra, rb, sorted)) continue;
    state.merge(ra, rb);
  }
  return collect_chains(state, sorted);
}

// -------------------------------------------------------------- evaluation

namespace {

struct FoldScores {
  metrics::RatioPair mention_recall, mention_precision;
  metrics::MetricScore muc, bcub, ceafm, ceafe, lea;
  metrics::BlancScore blanc;
};

void add_to_row(EvalRow& row, const FoldScores& fold) {
  auto add_pair = [](metrics::RatioPair& into, const metrics::RatioPair& from) {
    into.num += from.num;
    into.den += from.den;
  };
  auto add_score = [&](metrics::MetricScore& into, const metrics::MetricScore& from) {
    add_pair(into.recall, from.recall);
    add_pair(into.precision, from.precision);
  };
  row.documents += 1;
  add_pair(row.mention_recall, fold.mention_recall);
  add_pair(row.mention_precision, fold.mention_precision);
  add_score(row.muc, fold.muc);
  add_score(row.bcub, fold.bcub);
  add_score(row.ceafm, fold.ceafm);
  add_score(row.ceafe, fold.ceafe);
  add_score(row.lea, fold.lea);
  add_score(row.blanc.coref, fold.blanc.coref);
  add_score(row.blanc.noncoref, fold.blanc.noncoref);
}

void finish_row(EvalRow& row) {
  auto redo = [](metrics::MetricScore& s) { s = metrics::make_score(s.recall, s.precision); };
  redo(row.muc);
  redo(row.bcub);
  redo(row.ceafm);
  redo(row.ceafe);
  redo(row.lea);
  redo(row.blanc.coref);
  redo(row.blanc.noncoref);
}

}  // namespace

CrossValReport cross_validate(const Corpus& corpus, const TrainConfig& cfg, Method method,
                              MentionSource source, const PronounLexicon& lexicon) {
  size_t folds = corpus.documents.size();
  if (folds < 2) throw DataError("leave-one-out needs at least 2 documents");

  std::vector<FoldScores> scores(folds);
  parallel_for(folds, [&](size_t fold) {
    std::vector<TrainingDoc> train;
    for (size_t d = 0; d < folds; ++d) {
      if (d == fold) continue;
      train.push_back({&corpus.documents[d], corpus.gold_mentions[d], corpus.gold_chains[d]});
    }
    std::vector<Example> examples = generate_training_examples(train, source, cfg, lexicon);
    LinearModel::Mode mode = method == Method::svc ? LinearModel::Mode::classification
                                                   : LinearModel::Mode::regression;
    LinearModel model = train_linear(examples, mode, cfg);

    const Document& doc = corpus.documents[fold];
    DocumentView view(doc, lexicon);
    std::vector<Mention> test_mentions = source == MentionSource::gold
                                             ? corpus.gold_mentions[fold]
                                             : detect_mentions(doc, lexicon);
    std::vector<Chain> response = method == Method::svc
                                      ? build_chains_merge(test_mentions, model, view)
                                      : build_chains_best_link(test_mentions, model, view, cfg);

    // Mention detection P/R against the gold mention spans.
    FoldScores& out = scores[fold];
    std::unordered_set<SpanKey, SpanKeyHash> gold_spans;
    for (const Mention& m : corpus.gold_mentions[fold]) gold_spans.insert(span_of(m));
    double tp = 0;
    for (const Mention& m : test_mentions)
      if (gold_spans.count(span_of(m))) tp += 1.0;
    out.mention_recall = {tp, static_cast<double>(gold_spans.size())};
    out.mention_precision = {tp, static_cast<double>(test_mentions.size())};

    // Score against the singleton-normalized gold chains over shared spans.
    SpanInterner interner;
    auto intern_chains = [&](const std::vector<Chain>& chains,
                             const std::vector<Mention>& over) {
      std::unordered_map<int, const Mention*> by_id;
      for (const Mention& m : over) by_id.emplace(m.id, &m);
      std::vector<Chain> interned;
      for (const Chain& c : chains) {
        std::vector<int> ids;
        for (int id : c.mention_ids) ids.push_back(interner.intern(span_of(*by_id.at(id))));
        interned.push_back(make_chain(std::move(ids)));
      }
      return interned;
    };
    std::vector<Chain> key = intern_chains(drop_singletons(corpus.gold_chains[fold]),
                                           corpus.gold_mentions[fold]);
    std::vector<Chain> resp = intern_chains(response, test_mentions);
    metrics::ScoringInput input = metrics::make_input(key, resp);
    out.muc = metrics::score_muc(input);
    out.bcub = metrics::score_bcub(input);
    out.ceafm = metrics::score_ceaf(input, metrics::CeafVariant::mention);
    out.ceafe = metrics::score_ceaf(input, metrics::CeafVariant::entity);
    out.lea = metrics::score_lea(input);
    out.blanc = metrics::score_blanc(input);
  });

  CrossValReport report;
  report.overall.genre = "overall";
  std::map<std::string, EvalRow> by_genre;
  for (size_t fold = 0; fold < folds; ++fold) {
    std::string genre = corpus.documents[fold].genre.empty() ? "(none)"
                                                             : corpus.documents[fold].genre;
    EvalRow& row = by_genre[genre];
    row.genre = genre;
    add_to_row(row, scores[fold]);
    add_to_row(report.overall, scores[fold]);
  }
  for (auto& [genre, row] : by_genre) {
    finish_row(row);
    report.genres.push_back(std::move(row));
  }
  finish_row(report.overall);
  return report;
}

}  // namespace coref::baseline
