// Rule-based mention detection and a linear-model coreference baseline:
// pairwise features over mention heads, hinge/epsilon-insensitive SGD
// training as the SVC/SVR stand-in, transitive-merge and Best-Link chain
// builders, and a leave-one-out evaluation harness.
#ifndef COREF_BASELINE_HPP
#define COREF_BASELINE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "coref/metrics.hpp"
#include "coref/model.hpp"

namespace coref::baseline {

enum class MentionType { pronoun, proper_noun, noun_phrase };

struct PronounLexicon {
  std::unordered_set<std::string> lemmas;

  // Personal, demonstrative, reflexive and reciprocal pronoun lemmas; the
  // same list ships as resources/pronouns_tr.txt.
  static PronounLexicon default_turkish();
  // One lemma per line, '#' comments and blank lines ignored.
  static PronounLexicon from_stream(std::istream& in);
};

// Per-document precomputation shared by typing, feature extraction and the
// chain builders: sentence index, proper-noun key set, head-token lookup.
class DocumentView {
 public:
  DocumentView(const Document& doc, const PronounLexicon& lexicon);

  const Document& doc() const { return *doc_; }
  const std::unordered_map<std::string, int>& sentences() const { return sent_index_; }

  // The head token of a span: the last token whose dependency head lies
  // outside the span (falling back to the final token).
  const Token& head_token(const Mention& m) const;

  MentionType type_of(const Mention& m) const;

  // Case-marker stripping: text before an apostrophe if present, otherwise
  // the token's lemma.
  static std::string stripped_form(const Token& token);

  bool is_proper_key(const std::string& stripped) const { return proper_keys_.count(stripped) > 0; }
  const PronounLexicon& lexicon() const { return *lexicon_; }

 private:
  const Document* doc_;
  const PronounLexicon* lexicon_;
  std::unordered_map<std::string, int> sent_index_;
  std::unordered_set<std::string> proper_keys_;
};

// Rules: (i) maximal noun-phrase spans (nominal head plus its contiguous
// preceding dependent subtree), (ii) single-token pronoun mentions, (iii)
// nouns with capitalized lemmas, (iv) nouns whose apostrophe-stripped
// capitalized surface occurs two or more times in the document. Output is
// deduplicated by span and id'd 0..n-1 in document order.
std::vector<Mention> detect_mentions(const Document& doc, const PronounLexicon& lexicon);

MentionType classify_mention_type(const Mention& m, const DocumentView& view);

// ----------------------------------------------------------------- features

// Fixed feature space: type one-hots and pair flags, head/lemma matches,
// last-proper-part equality, acronym and substring tests with reverse and
// disjunction variants, plus every (type x match) conjunction.
class FeatureSpace {
 public:
  static int dimension();
  static const std::string& name(int index);
  static int index_of(std::string_view name);  // -1 if unknown
};

struct FeatureVector {
  std::vector<std::pair<int, double>> entries;  // sorted by index; values are 0/1
};

// m1 must precede m2 in document order.
FeatureVector extract_features(const Mention& m1, const Mention& m2, const DocumentView& view);

// ----------------------------------------------------------------- training

struct TrainConfig {
  int epochs = 50;
  double learning_rate = 0.5;
  double l2_lambda = 1e-4;
  uint64_t seed = 1;
  int neg_window = 100;             // max mention distance for negative pairs
  double best_link_threshold = 0.1;
  bool class_balancing = true;
};

struct Example {
  FeatureVector features;
  bool positive = false;
  double weight = 1.0;
};

enum class MentionSource { gold, predicted };

struct TrainingDoc {
  const Document* doc = nullptr;
  std::vector<Mention> gold_mentions;
  std::vector<Chain> gold_chains;  // over gold_mentions ids
};

// Positives pair each chain mention with its closest same-chain predecessor;
// negatives are the non-coreferent ordered pairs within the window. With
// predicted mentions, as many sampled spurious detections as there are gold
// mentions are added as negative-pair sources (seeded by cfg.seed).
std::vector<Example> generate_training_examples(const std::vector<TrainingDoc>& docs,
                                                MentionSource source, const TrainConfig& cfg,
                                                const PronounLexicon& lexicon);

struct LinearModel {
  enum class Mode { classification, regression };
  Mode mode = Mode::classification;
  std::vector<double> weights;  // FeatureSpace::dimension() entries
  double bias = 0.0;

  double score(const FeatureVector& features) const;
};

// Stochastic subgradient descent, hinge loss for classification and
// epsilon-insensitive loss (epsilon = 0.1, targets 0/1) for regression,
// both L2-regularized. Deterministic given cfg.seed.
LinearModel train_linear(const std::vector<Example>& examples, LinearModel::Mode mode,
                         const TrainConfig& cfg);

// Versioned flat text persistence (feature-name -> weight).
std::string save_model(const LinearModel& model);
LinearModel load_model(std::string_view bytes);

// ------------------------------------------------------------------ chains

// SVC-style: scan candidate links in document order and merge the two
// mentions' chains for every predicted-coreferent link, skipping merges that
// would put overlapping mentions in one chain. Candidates where the first
// mention is a pronoun and the second is not are never generated. Singleton
// chains are dropped from the output.
std::vector<Chain> build_chains_merge(const std::vector<Mention>& mentions,
                                      const LinearModel& model, const DocumentView& view);

// SVR-style Best-Link: each mention joins at most the chain of its single
// highest-scored predecessor, if the score exceeds the threshold and no
// overlap results; ties go to the closest predecessor.
std::vector<Chain> build_chains_best_link(const std::vector<Mention>& mentions,
                                          const LinearModel& model, const DocumentView& view,
                                          const TrainConfig& cfg);

// -------------------------------------------------------------- evaluation

enum class Method { svc, svr };

struct EvalRow {
  std::string genre;
  int documents = 0;
  metrics::RatioPair mention_recall, mention_precision;
  metrics::MetricScore muc, bcub, ceafm, ceafe, lea;
  metrics::BlancScore blanc;
};

struct CrossValReport {
  std::vector<EvalRow> genres;  // sorted by genre name
  EvalRow overall;
};

struct Corpus {
  std::vector<Document> documents;
  std::vector<std::vector<Mention>> gold_mentions;  // parallel to documents
  std::vector<std::vector<Chain>> gold_chains;
};

// One leave-one-out fold per document; per-fold scores are micro-accumulated
// per genre and overall. Folds run in parallel; output depends only on the
// corpus and cfg.seed.
CrossValReport cross_validate(const Corpus& corpus, const TrainConfig& cfg, Method method,
                              MentionSource source, const PronounLexicon& lexicon);

}  // namespace coref::baseline

#endif  // COREF_BASELINE_HPP
