// corefkit: scoring, inter-annotator agreement, adjudication, format
// conversion, mention detection and the linear coreference baseline behind
// one command line.
//
// Exit codes: 0 success, 1 usage error, 2 data or parse error.
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "coref/adjudicator.hpp"
#include "coref/agreement.hpp"
#include "coref/baseline.hpp"
#include "coref/formats.hpp"
#include "coref/metrics.hpp"
#include "coref/model.hpp"
#include "coref/report.hpp"

namespace {

using namespace coref;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << content;
}

baseline::PronounLexicon load_lexicon(const std::string& path) {
  if (path.empty()) return baseline::PronounLexicon::default_turkish();
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return baseline::PronounLexicon::from_stream(in);
}

// Maps a chain set expressed over one file's local mention ids onto master
// mention ids, matching by span.
std::vector<Chain> map_chains_to_master(const formats::CorefXmlFile& file,
                                        const std::unordered_map<SpanKey, int, SpanKeyHash>&
                                            master_of,
                                        const std::string& origin) {
  std::unordered_map<int, int> local_to_master;
  for (const Mention& m : file.mentions) {
    auto it = master_of.find(span_of(m));
    if (it == master_of.end())
      throw DataError(origin + ": mention " + m.sentence_no + ":" +
                      std::to_string(m.from_word_ix) + ".." + std::to_string(m.to_word_ix) +
                      " is not in the declared mention set");
    local_to_master.emplace(m.id, it->second);
  }
  std::vector<Chain> chains;
  for (const Chain& c : file.chains) {
    std::vector<int> ids;
    ids.reserve(c.mention_ids.size());
    for (int id : c.mention_ids) ids.push_back(local_to_master.at(id));
    chains.push_back(make_chain(std::move(ids)));
  }
  return chains;
}

// ------------------------------------------------------------------- score

struct ScoreArgs {
  std::string key_path, response_path, metrics = "all", out;
  bool json = false;
  bool keep_singletons = false;
};

int run_score(const ScoreArgs& args) {
  formats::ConllFile key_file = formats::parse_conll(read_file(args.key_path));
  formats::ConllFile resp_file = formats::parse_conll(read_file(args.response_path));

  std::unordered_map<std::string, const formats::ConllDocument*> responses;
  for (const formats::ConllDocument& d : resp_file.documents) responses.emplace(d.doc_id, &d);
  if (responses.size() != resp_file.documents.size())
    throw DataError("duplicate document id in response file");
  if (key_file.documents.size() != resp_file.documents.size())
    throw DataError("key and response contain different document sets");

  std::vector<metrics::MetricScore> muc, bcub, ceafm, ceafe, lea;
  std::vector<metrics::BlancScore> blanc;
  for (const formats::ConllDocument& key_doc : key_file.documents) {
    auto it = responses.find(key_doc.doc_id);
    if (it == responses.end())
      throw DataError("document " + key_doc.doc_id + " missing from response");
    const formats::ConllDocument& resp_doc = *it->second;

    // Spans in CoNLL row coordinates identify mentions across the two files.
    std::map<std::tuple<int, int, int>, int> ids;
    auto intern = [&](const std::vector<std::vector<formats::ConllMention>>& chains) {
      std::vector<Chain> out;
      for (const auto& chain : chains) {
        std::vector<int> members;
        for (const formats::ConllMention& m : chain) {
          auto key = std::make_tuple(m.sentence, m.from_tok, m.to_tok);
          auto [pos, _] = ids.emplace(key, static_cast<int>(ids.size()));
          members.push_back(pos->second);
        }
        out.push_back(make_chain(std::move(members)));
      }
      return out;
    };
    std::vector<Chain> key_chains = intern(key_doc.chains);
    std::vector<Chain> resp_chains = intern(resp_doc.chains);
    if (!args.keep_singletons) {
      key_chains = drop_singletons(key_chains);
      resp_chains = drop_singletons(resp_chains);
    }
    metrics::ScoringInput input = metrics::make_input(key_chains, resp_chains);
    muc.push_back(metrics::score_muc(input));
    bcub.push_back(metrics::score_bcub(input));
    ceafm.push_back(metrics::score_ceaf(input, metrics::CeafVariant::mention));
    ceafe.push_back(metrics::score_ceaf(input, metrics::CeafVariant::entity));
    blanc.push_back(metrics::score_blanc(input));
    lea.push_back(metrics::score_lea(input));
  }

  bool all = args.metrics == "all" || args.metrics.empty();
  std::vector<std::string> names;
  if (!all) {
    std::string list = args.metrics + ",";
    size_t pos = 0;
    while (pos < list.size()) {
      size_t comma = list.find(',', pos);
      std::string name = list.substr(pos, comma - pos);
      static const std::set<std::string> known = {"muc", "bcub", "ceafm", "ceafe", "blanc", "lea"};
      if (!known.count(name)) throw DataError("unknown metric '" + name + "'");
      names.push_back(name);
      pos = comma + 1;
    }
  }
  auto selected = [&](const std::string& name) {
    return all || std::find(names.begin(), names.end(), name) != names.end();
  };

  report::ScoreReport rep;
  if (selected("muc")) rep.rows.push_back({"muc", metrics::accumulate(muc)});
  if (selected("bcub")) rep.rows.push_back({"bcub", metrics::accumulate(bcub)});
  if (selected("ceafm")) rep.rows.push_back({"ceafm", metrics::accumulate(ceafm)});
  if (selected("ceafe")) rep.rows.push_back({"ceafe", metrics::accumulate(ceafe)});
  if (selected("blanc"))
    rep.rows.push_back({"blanc", metrics::accumulate_blanc(blanc).combined()});
  if (selected("lea")) rep.rows.push_back({"lea", metrics::accumulate(lea)});
  if (rep.rows.empty()) throw DataError("no known metric selected: " + args.metrics);
  write_output(args.out, args.json ? rep.to_json() : rep.to_text());
  return 0;
}

// --------------------------------------------------------------------- iaa

struct IaaArgs {
  std::vector<std::vector<std::string>> groups;  // mentions file + annotations
  std::string out;
  bool json = false;
};

int run_iaa(const IaaArgs& args) {
  report::IaaReport rep;
  for (const auto& group : args.groups) {
    if (group.size() < 3)
      throw DataError("each --group needs a mentions file and at least 2 annotation files");
    formats::CorefXmlFile mentions_file = formats::parse_coref_xml(read_file(group[0]));
    std::unordered_map<SpanKey, int, SpanKeyHash> master_of;
    for (const Mention& m : mentions_file.mentions) master_of.emplace(span_of(m), m.id);

    std::vector<AnnotationSet> annotations;
    for (size_t i = 1; i < group.size(); ++i) {
      formats::CorefXmlFile file = formats::parse_coref_xml(read_file(group[i]));
      annotations.push_back({group[i], map_chains_to_master(file, master_of, group[i])});
    }
    agreement::AgreementTable table =
        agreement::build_agreement_table(mentions_file.mentions, annotations);
    report::IaaDocument row;
    row.doc_id = mentions_file.doc_id;
    row.mentions = table.objects;
    row.annotators = table.annotators;
    row.iaa1 = agreement::krippendorff_alpha(table, agreement::passonneau_delta);
    row.iaa2 = agreement::krippendorff_alpha(table, agreement::masi_delta);
    rep.documents.push_back(std::move(row));
  }
  write_output(args.out, args.json ? rep.to_json() : rep.to_text());
  return 0;
}

// -------------------------------------------------------------- adjudicate

struct AdjudicateArgs {
  std::string mentions_path;
  std::vector<std::string> annotation_paths;
  std::string weights = "2,1";
  std::string force_path;
  std::string out;
};

adjudicator::ForcedPairs parse_force_file(const std::string& text) {
  adjudicator::ForcedPairs forced;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::string kind;
    if (!(row >> kind)) continue;
    int a, b;
    if (!(row >> a >> b)) throw ParseError("expected two mention ids", line_no);
    if (kind == "must") forced.must_link.emplace_back(a, b);
    else if (kind == "cannot") forced.cannot_link.emplace_back(a, b);
    else throw ParseError("expected 'must' or 'cannot', got '" + kind + "'", line_no);
  }
  return forced;
}

int run_adjudicate(const AdjudicateArgs& args) {
  formats::CorefXmlFile mentions_file = formats::parse_coref_xml(read_file(args.mentions_path));
  std::unordered_map<SpanKey, int, SpanKeyHash> master_of;
  for (const Mention& m : mentions_file.mentions) master_of.emplace(span_of(m), m.id);

  std::vector<AnnotationSet> annotations;
  for (const std::string& path : args.annotation_paths) {
    formats::CorefXmlFile file = formats::parse_coref_xml(read_file(path));
    annotations.push_back({path, map_chains_to_master(file, master_of, path)});
  }

  adjudicator::Weights weights;
  if (std::sscanf(args.weights.c_str(), "%d,%d", &weights.omit, &weights.commit) != 2 ||
      weights.omit < 0 || weights.commit < 0)
    throw DataError("malformed --weights, expected e.g. 2,1");

  adjudicator::ForcedPairs forced;
  bool have_forced = !args.force_path.empty();
  if (have_forced) forced = parse_force_file(read_file(args.force_path));

  adjudicator::AdjudicationResult result = adjudicator::adjudicate(
      mentions_file.mentions, annotations, weights, have_forced ? &forced : nullptr);

  for (size_t c = 0; c < result.per_component.size(); ++c) {
    const adjudicator::ComponentStats& stats = result.per_component[c];
    std::cerr << "component " << c << ": size=" << stats.size << " nodes=" << stats.nodes
              << " cost=" << stats.cost << "\n";
  }
  std::cerr << "total cost=" << result.cost << "\n";

  formats::CorefXmlFile gold;
  gold.doc_id = mentions_file.doc_id;
  gold.mentions = mentions_file.mentions;
  gold.texts = mentions_file.texts;
  gold.chains = result.gold.chains;
  write_output(args.out, formats::write_coref_xml(gold));
  return 0;
}

// ----------------------------------------------------------------- convert

struct ConvertArgs {
  std::string from, to, in, out;
  std::vector<std::string> docs;
};

int run_convert(const ConvertArgs& args) {
  std::unordered_map<std::string, Document> docs;
  for (const std::string& path : args.docs) {
    Document doc = formats::parse_document_xml(read_file(path));
    std::string id = doc.doc_id;
    if (!docs.emplace(id, std::move(doc)).second)
      throw DataError("duplicate document id " + id);
  }
  auto doc_for = [&](const std::string& id) -> const Document& {
    auto it = docs.find(id);
    if (it == docs.end()) throw DataError("no --doc file provides document " + id);
    return it->second;
  };

  if (args.from == "xml" && args.to == "conll") {
    formats::CorefXmlFile coref = formats::parse_coref_xml(read_file(args.in));
    write_output(args.out, formats::convert_xml_to_conll(doc_for(coref.doc_id), coref));
    return 0;
  }
  if (args.from == "conll" && args.to == "xml") {
    formats::ConllFile conll = formats::parse_conll(read_file(args.in));
    if (conll.documents.size() == 1) {
      const formats::ConllDocument& d = conll.documents.front();
      const Document& doc = doc_for(d.doc_id);
      write_output(args.out, formats::write_coref_xml(formats::convert_conll_to_xml(d, doc), doc));
      return 0;
    }
    // Several documents: --out names a directory, one XML file per document.
    if (args.out.empty() || args.out == "-")
      throw DataError("converting a multi-document CoNLL file needs --out DIRECTORY");
    std::filesystem::create_directories(args.out);
    for (const formats::ConllDocument& d : conll.documents) {
      const Document& doc = doc_for(d.doc_id);
      std::string path = (std::filesystem::path(args.out) / (d.doc_id + ".xml")).string();
      write_output(path, formats::write_coref_xml(formats::convert_conll_to_xml(d, doc), doc));
      std::cerr << "wrote " << path << "\n";
    }
    return 0;
  }
  throw DataError("unsupported conversion " + args.from + " -> " + args.to);
}

// --------------------------------------------------------- detect-mentions

struct DetectArgs {
  std::string doc_path, pronouns, out;
};

int run_detect(const DetectArgs& args) {
  Document doc = formats::parse_document_xml(read_file(args.doc_path));
  baseline::PronounLexicon lexicon = load_lexicon(args.pronouns);
  formats::CorefXmlFile file;
  file.doc_id = doc.doc_id;
  file.mentions = baseline::detect_mentions(doc, lexicon);
  file.texts.resize(file.mentions.size());
  write_output(args.out, formats::write_coref_xml(file, doc));
  return 0;
}

// ---------------------------------------------------------------- baseline

struct BaselineArgs {
  std::vector<std::string> doc_paths, gold_paths;
  std::string method = "svc";
  std::string source = "gm";
  std::string pronouns, out;
  std::string model_path;       // predict
  std::string mentions_path;    // predict
  std::string doc_path;         // predict
  bool json = false;
  baseline::TrainConfig cfg;
};

baseline::Corpus load_corpus(const BaselineArgs& args) {
  baseline::Corpus corpus;
  std::unordered_map<std::string, size_t> by_id;
  for (const std::string& path : args.doc_paths) {
    Document doc = formats::parse_document_xml(read_file(path));
    if (by_id.count(doc.doc_id)) throw DataError("duplicate document id " + doc.doc_id);
    by_id.emplace(doc.doc_id, corpus.documents.size());
    corpus.documents.push_back(std::move(doc));
  }
  corpus.gold_mentions.resize(corpus.documents.size());
  corpus.gold_chains.resize(corpus.documents.size());
  std::vector<bool> have_gold(corpus.documents.size(), false);
  for (const std::string& path : args.gold_paths) {
    formats::CorefXmlFile gold = formats::parse_coref_xml(read_file(path));
    auto it = by_id.find(gold.doc_id);
    if (it == by_id.end())
      throw DataError(path + ": no --docs file provides document " + gold.doc_id);
    if (have_gold[it->second]) throw DataError("two gold files for document " + gold.doc_id);
    have_gold[it->second] = true;
    corpus.gold_mentions[it->second] = gold.mentions;
    corpus.gold_chains[it->second] = gold.chains;
  }
  for (size_t d = 0; d < have_gold.size(); ++d)
    if (!have_gold[d])
      throw DataError("no gold file for document " + corpus.documents[d].doc_id);
  return corpus;
}

baseline::Method parse_method(const std::string& name) {
  if (name == "svc") return baseline::Method::svc;
  if (name == "svr") return baseline::Method::svr;
  throw DataError("unknown method " + name + " (expected svc or svr)");
}

baseline::MentionSource parse_source(const std::string& name) {
  if (name == "gm") return baseline::MentionSource::gold;
  if (name == "pm") return baseline::MentionSource::predicted;
  throw DataError("unknown mention source " + name + " (expected gm or pm)");
}

int run_baseline_train(const BaselineArgs& args) {
  baseline::Corpus corpus = load_corpus(args);
  baseline::PronounLexicon lexicon = load_lexicon(args.pronouns);
  std::vector<baseline::TrainingDoc> train;
  for (size_t d = 0; d < corpus.documents.size(); ++d)
    train.push_back({&corpus.documents[d], corpus.gold_mentions[d], corpus.gold_chains[d]});
  std::vector<baseline::Example> examples = baseline::generate_training_examples(
      train, parse_source(args.source), args.cfg, lexicon);
  baseline::LinearModel model = baseline::train_linear(
      examples,
      parse_method(args.method) == baseline::Method::svc
          ? baseline::LinearModel::Mode::classification
          : baseline::LinearModel::Mode::regression,
      args.cfg);
  std::cerr << "trained on " << examples.size() << " examples\n";
  write_output(args.out, baseline::save_model(model));
  return 0;
}

int run_baseline_predict(const BaselineArgs& args) {
  baseline::LinearModel model = baseline::load_model(read_file(args.model_path));
  Document doc = formats::parse_document_xml(read_file(args.doc_path));
  baseline::PronounLexicon lexicon = load_lexicon(args.pronouns);
  baseline::DocumentView view(doc, lexicon);

  std::vector<Mention> mentions;
  if (args.mentions_path.empty()) {
    mentions = baseline::detect_mentions(doc, lexicon);
  } else {
    mentions = formats::parse_coref_xml(read_file(args.mentions_path)).mentions;
  }
  std::vector<Chain> chains =
      model.mode == baseline::LinearModel::Mode::classification
          ? baseline::build_chains_merge(mentions, model, view)
          : baseline::build_chains_best_link(mentions, model, view, args.cfg);

  formats::CorefXmlFile out;
  out.doc_id = doc.doc_id;
  out.mentions = mentions;
  out.texts.resize(mentions.size());
  out.chains = chains;
  write_output(args.out, formats::write_coref_xml(out, doc));
  return 0;
}

int run_baseline_crossval(const BaselineArgs& args) {
  baseline::Corpus corpus = load_corpus(args);
  baseline::PronounLexicon lexicon = load_lexicon(args.pronouns);
  baseline::CrossValReport report = baseline::cross_validate(
      corpus, args.cfg, parse_method(args.method), parse_source(args.source), lexicon);
  write_output(args.out,
               args.json ? report::crossval_to_json(report) : report::crossval_to_text(report));
  return 0;
}

void add_train_flags(CLI::App* cmd, BaselineArgs& args) {
  cmd->add_option("--seed", args.cfg.seed, "random seed");
  cmd->add_option("--epochs", args.cfg.epochs, "SGD epochs")->check(CLI::PositiveNumber);
  cmd->add_option("--learning-rate", args.cfg.learning_rate, "SGD learning rate")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--l2", args.cfg.l2_lambda, "L2 regularization strength")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--neg-window", args.cfg.neg_window,
                  "max mention distance for negative training pairs")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threshold", args.cfg.best_link_threshold, "Best-Link score threshold");
  cmd->add_flag("--no-balance", [&args](int64_t) { args.cfg.class_balancing = false; },
                "disable class-balanced example weights");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coreference scoring, agreement, adjudication and baseline toolkit"};
  app.require_subcommand(1);

  ScoreArgs score_args;
  CLI::App* score = app.add_subcommand("score", "score a response against a key (CoNLL files)");
  score->add_option("--key", score_args.key_path, "key CoNLL file")->required();
  score->add_option("--response", score_args.response_path, "response CoNLL file")->required();
  score->add_option("--metrics", score_args.metrics,
                    "comma list of muc,bcub,ceafm,ceafe,blanc,lea or all");
  score->add_flag("--json", score_args.json, "emit JSON instead of a table");
  score->add_flag("--keep-singletons", score_args.keep_singletons,
                  "score singleton chains instead of dropping them");
  score->add_option("--out", score_args.out, "output file (default stdout)");

  IaaArgs iaa_args;
  CLI::App* iaa = app.add_subcommand("iaa", "inter-annotator agreement (Krippendorff's alpha)");
  iaa->add_option("--group", iaa_args.groups,
                  "mentions XML followed by the annotation XML files of one document")
      ->required()
      ->expected(-3);
  iaa->add_flag("--json", iaa_args.json, "emit JSON instead of a table");
  iaa->add_option("--out", iaa_args.out, "output file (default stdout)");

  AdjudicateArgs adj_args;
  CLI::App* adjudicate =
      app.add_subcommand("adjudicate", "merge annotations into a gold standard");
  adjudicate->add_option("--mentions", adj_args.mentions_path, "declared mentions XML")
      ->required();
  adjudicate->add_option("--annotations", adj_args.annotation_paths, "annotation XML files")
      ->required()
      ->expected(-1);
  adjudicate->add_option("--weights", adj_args.weights,
                         "omit,commit link weights (default 2,1)");
  adjudicate->add_option("--force", adj_args.force_path,
                         "file of 'must A B' / 'cannot A B' lines (mention ids)");
  adjudicate->add_option("--out", adj_args.out, "gold XML output (default stdout)");

  ConvertArgs conv_args;
  CLI::App* convert = app.add_subcommand("convert", "convert between coref XML and CoNLL");
  convert->add_option("--from", conv_args.from, "xml or conll")->required();
  convert->add_option("--to", conv_args.to, "conll or xml")->required();
  convert->add_option("--in", conv_args.in, "input file")->required();
  convert->add_option("--doc", conv_args.docs, "document XML file(s)")->required();
  convert->add_option("--out", conv_args.out,
                      "output file, or directory for multi-document CoNLL input");

  DetectArgs detect_args;
  CLI::App* detect = app.add_subcommand("detect-mentions", "rule-based mention detection");
  detect->add_option("--doc", detect_args.doc_path, "document XML")->required();
  detect->add_option("--pronouns", detect_args.pronouns, "pronoun lemma list file");
  detect->add_option("--out", detect_args.out, "mentions XML output (default stdout)");

  BaselineArgs base_args;
  CLI::App* base = app.add_subcommand("baseline", "linear coreference baseline");
  base->require_subcommand(1);

  CLI::App* train = base->add_subcommand("train", "train a link model");
  train->add_option("--docs", base_args.doc_paths, "document XML files")->required()->expected(-1);
  train->add_option("--gold", base_args.gold_paths, "gold coref XML files")
      ->required()
      ->expected(-1);
  train->add_option("--method", base_args.method, "svc or svr");
  train->add_option("--mention-source", base_args.source, "gm (gold) or pm (predicted)");
  train->add_option("--pronouns", base_args.pronouns, "pronoun lemma list file");
  train->add_option("--out", base_args.out, "model file (default stdout)");
  add_train_flags(train, base_args);

  CLI::App* predict = base->add_subcommand("predict", "predict chains for one document");
  predict->add_option("--model", base_args.model_path, "model file")->required();
  predict->add_option("--doc", base_args.doc_path, "document XML")->required();
  predict->add_option("--mentions", base_args.mentions_path,
                      "mentions XML (omit to run mention detection)");
  predict->add_option("--pronouns", base_args.pronouns, "pronoun lemma list file");
  predict->add_option("--threshold", base_args.cfg.best_link_threshold,
                      "Best-Link score threshold");
  predict->add_option("--out", base_args.out, "coref XML output (default stdout)");

  CLI::App* crossval = base->add_subcommand("crossval", "leave-one-out evaluation");
  crossval->add_option("--docs", base_args.doc_paths, "document XML files")
      ->required()
      ->expected(-1);
  crossval->add_option("--gold", base_args.gold_paths, "gold coref XML files")
      ->required()
      ->expected(-1);
  crossval->add_option("--method", base_args.method, "svc or svr");
  crossval->add_option("--mention-source", base_args.source, "gm (gold) or pm (predicted)");
  crossval->add_option("--pronouns", base_args.pronouns, "pronoun lemma list file");
  crossval->add_flag("--json", base_args.json, "emit JSON instead of a table");
  crossval->add_option("--out", base_args.out, "output file (default stdout)");
  add_train_flags(crossval, base_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*score) return run_score(score_args);
    if (*iaa) return run_iaa(iaa_args);
    if (*adjudicate) return run_adjudicate(adj_args);
    if (*convert) return run_convert(conv_args);
    if (*detect) return run_detect(detect_args);
    if (*base) {
      if (*train) return run_baseline_train(base_args);
      if (*predict) return run_baseline_predict(base_args);
      if (*crossval) return run_baseline_crossval(base_args);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
