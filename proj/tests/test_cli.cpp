// End-to-end tests of the corefkit binary: every subcommand runs on fixed
// fixture files and the outputs are compared byte-exactly.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "coref/baseline.hpp"
#include "coref/formats.hpp"
#include "coref/report.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("corefkit-test-" + std::to_string(getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void spit(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

RunResult run(const std::string& args) {
  fs::path out_path = work_dir() / "stdout.txt";
  fs::path err_path = work_dir() / "stderr.txt";
  std::string cmd = std::string(CORETOOL_PATH) + " " + args + " > " + out_path.string() +
                    " 2> " + err_path.string();
  int rc = std::system(cmd.c_str());
  RunResult result;
  result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

const char* kDocXml = R"(<?xml version="1.0" encoding="UTF-8"?>
<document id="d1" genre="News">
  <S No="d1.1">
    <W IX="1" LEM="Ali" POS="Noun" REL="SUBJECT" HEAD="3">Ali</W>
    <W IX="2" LEM="Veli" POS="Noun" REL="OBJECT" HEAD="3">Veli</W>
    <W IX="3" LEM="gör" POS="Verb" REL="ROOT" HEAD="0">gördü</W>
  </S>
  <S No="d1.2">
    <W IX="1" LEM="Ali" POS="Noun" REL="SUBJECT" HEAD="2">Ali</W>
    <W IX="2" LEM="git" POS="Verb" REL="ROOT" HEAD="0">gitti</W>
  </S>
</document>
)";

const char* kCorefXml = R"(<?xml version="1.0" encoding="UTF-8"?>
<coreference docId="d1">
  <mentions>
    <mention id="0" sentenceNo="d1.1" fromWordIX="1" toWordIX="1">Ali</mention>
    <mention id="1" sentenceNo="d1.1" fromWordIX="2" toWordIX="2">Veli</mention>
    <mention id="2" sentenceNo="d1.2" fromWordIX="1" toWordIX="1">Ali</mention>
  </mentions>
  <chains>
    <chain>
      <mentionRef id="0"/>
      <mentionRef id="2"/>
    </chain>
  </chains>
</coreference>
)";

const char* kConllGold =
    "#begin document (d1); part 000\n"
    "d1\t0\tAli\t(0\n"
    "d1\t1\tVeli\t(1)\n"
    "d1\t2\tgördü\t0)\n"
    "\n"
    "d1\t0\tAli\t(2)\n"
    "d1\t1\tgitti\t-\n"
    "#end document\n";

}  // namespace

TEST_CASE("convert xml to conll and back, byte exact") {
  fs::path dir = work_dir();
  spit(dir / "d1.xml", kDocXml);
  spit(dir / "coref.xml", kCorefXml);

  // The two-token chain {0,2} plus the mentions outside any chain become the
  // entities; mention 1 turns into a singleton entity.
  std::string expected_conll =
      "#begin document (d1); part 000\n"
      "d1\t0\tAli\t(0)\n"
      "d1\t1\tVeli\t(1)\n"
      "d1\t2\tgördü\t-\n"
      "\n"
      "d1\t0\tAli\t(0)\n"
      "d1\t1\tgitti\t-\n"
      "#end document\n";

  RunResult to_conll = run("convert --from xml --to conll --in " + (dir / "coref.xml").string() +
                           " --doc " + (dir / "d1.xml").string());
  CHECK(to_conll.status == 0);
  CHECK(to_conll.out == expected_conll);

  spit(dir / "roundtrip.conll", to_conll.out);
  RunResult back = run("convert --from conll --to xml --in " +
                       (dir / "roundtrip.conll").string() + " --doc " +
                       (dir / "d1.xml").string());
  CHECK(back.status == 0);
  // Mention 1 comes back as a singleton chain: CoNLL represents membership
  // only through entities.
  std::string expected_xml = R"(<?xml version="1.0" encoding="UTF-8"?>
<coreference docId="d1">
  <mentions>
    <mention id="0" sentenceNo="d1.1" fromWordIX="1" toWordIX="1">Ali</mention>
    <mention id="1" sentenceNo="d1.1" fromWordIX="2" toWordIX="2">Veli</mention>
    <mention id="2" sentenceNo="d1.2" fromWordIX="1" toWordIX="1">Ali</mention>
  </mentions>
  <chains>
    <chain>
      <mentionRef id="0"/>
      <mentionRef id="2"/>
    </chain>
    <chain>
      <mentionRef id="1"/>
    </chain>
  </chains>
</coreference>
)";
  CHECK(back.out == expected_xml);
}

TEST_CASE("score: values and byte-exact report") {
  fs::path dir = work_dir();
  // Key: one chain over three mentions; response finds two of them.
  std::string key =
      "#begin document (d1); part 000\n"
      "d1\t0\tAli\t(0)\n"
      "d1\t1\tVeli\t(0)\n"
      "d1\t2\tgördü\t-\n"
      "\n"
      "d1\t0\tAli\t(0)\n"
      "d1\t1\tgitti\t-\n"
      "#end document\n";
  std::string response =
      "#begin document (d1); part 000\n"
      "d1\t0\tAli\t(7)\n"
      "d1\t1\tVeli\t(7)\n"
      "d1\t2\tgördü\t-\n"
      "\n"
      "d1\t0\tAli\t-\n"
      "d1\t1\tgitti\t-\n"
      "#end document\n";
  spit(dir / "key.conll", key);
  spit(dir / "resp.conll", response);

  RunResult json = run("score --key " + (dir / "key.conll").string() + " --response " +
                       (dir / "resp.conll").string() + " --json");
  REQUIRE(json.status == 0);
  auto parsed = nlohmann::json::parse(json.out);
  CHECK(parsed["muc"]["recall"]["value"].get<double>() == doctest::Approx(0.5));
  CHECK(parsed["muc"]["precision"]["value"].get<double>() == doctest::Approx(1.0));
  CHECK(parsed["bcub"]["recall"]["value"].get<double>() == doctest::Approx(4.0 / 9.0));
  CHECK(parsed["ceafm"]["recall"]["value"].get<double>() == doctest::Approx(2.0 / 3.0));
  CHECK(parsed["ceafe"]["recall"]["value"].get<double>() == doctest::Approx(0.8));
  CHECK(parsed["blanc"]["f1"].get<double>() == doctest::Approx(0.5));
  CHECK(parsed["lea"]["recall"]["value"].get<double>() == doctest::Approx(1.0 / 3.0));
  CHECK(parsed["lea"]["precision"]["value"].get<double>() == doctest::Approx(1.0));
  CHECK(parsed.contains("conll"));

  RunResult selected = run("score --key " + (dir / "key.conll").string() + " --response " +
                           (dir / "resp.conll").string() + " --metrics muc,lea");
  REQUIRE(selected.status == 0);
  std::string expected_table =
      "metric  recall        precision     f1\n"
      "muc     0.5000 (1/2)  1.0000 (1/1)  0.6667\n"
      "lea     0.3333 (1/3)  1.0000 (2/2)  0.5000\n";
  CHECK(selected.out == expected_table);
}

TEST_CASE("adjudicate: worked example through files") {
  fs::path dir = work_dir();
  // Mentions A..E as five single-token spans.
  std::string mentions = R"(<?xml version="1.0" encoding="UTF-8"?>
<coreference docId="ex">
  <mentions>
    <mention id="0" sentenceNo="s1" fromWordIX="1" toWordIX="1">A</mention>
    <mention id="1" sentenceNo="s1" fromWordIX="2" toWordIX="2">B</mention>
    <mention id="2" sentenceNo="s1" fromWordIX="3" toWordIX="3">C</mention>
    <mention id="3" sentenceNo="s1" fromWordIX="4" toWordIX="4">D</mention>
    <mention id="4" sentenceNo="s1" fromWordIX="5" toWordIX="5">E</mention>
  </mentions>
  <chains>
  </chains>
</coreference>
)";
  spit(dir / "mentions.xml", mentions);

  auto annotation = [&](const std::string& chains_xml) {
    std::string header = R"(<?xml version="1.0" encoding="UTF-8"?>
<coreference docId="ex">
  <mentions>
    <mention id="0" sentenceNo="s1" fromWordIX="1" toWordIX="1"/>
    <mention id="1" sentenceNo="s1" fromWordIX="2" toWordIX="2"/>
    <mention id="2" sentenceNo="s1" fromWordIX="3" toWordIX="3"/>
    <mention id="3" sentenceNo="s1" fromWordIX="4" toWordIX="4"/>
    <mention id="4" sentenceNo="s1" fromWordIX="5" toWordIX="5"/>
  </mentions>
  <chains>
)";
    return header + chains_xml + "  </chains>\n</coreference>\n";
  };
  std::string both =
      "    <chain>\n      <mentionRef id=\"0\"/>\n      <mentionRef id=\"1\"/>\n    </chain>\n"
      "    <chain>\n      <mentionRef id=\"2\"/>\n      <mentionRef id=\"3\"/>\n    </chain>\n";
  std::string ab_only =
      "    <chain>\n      <mentionRef id=\"0\"/>\n      <mentionRef id=\"1\"/>\n    </chain>\n";
  std::string cde =
      "    <chain>\n      <mentionRef id=\"2\"/>\n      <mentionRef id=\"3\"/>\n      "
      "<mentionRef id=\"4\"/>\n    </chain>\n";

  std::string annotation_args;
  int file_index = 0;
  auto add_files = [&](const std::string& content, int copies) {
    for (int i = 0; i < copies; ++i) {
      fs::path path = dir / ("a" + std::to_string(file_index++) + ".xml");
      spit(path, annotation(content));
      annotation_args += " " + path.string();
    }
  };
  add_files(both, 4);
  add_files(ab_only, 3);
  add_files(cde, 2);

  RunResult result = run("adjudicate --mentions " + (dir / "mentions.xml").string() +
                         " --annotations" + annotation_args + " --out " +
                         (dir / "gold.xml").string());
  REQUIRE(result.status == 0);
  // Two components: {A,B} at cost 2 and {C,D,E} at cost 11.
  CHECK(result.err.find("total cost=13") != std::string::npos);
  CHECK(result.err.find("size=2") != std::string::npos);
  CHECK(result.err.find("size=3") != std::string::npos);

  std::string expected_gold = R"(<?xml version="1.0" encoding="UTF-8"?>
<coreference docId="ex">
  <mentions>
    <mention id="0" sentenceNo="s1" fromWordIX="1" toWordIX="1">A</mention>
    <mention id="1" sentenceNo="s1" fromWordIX="2" toWordIX="2">B</mention>
    <mention id="2" sentenceNo="s1" fromWordIX="3" toWordIX="3">C</mention>
    <mention id="3" sentenceNo="s1" fromWordIX="4" toWordIX="4">D</mention>
    <mention id="4" sentenceNo="s1" fromWordIX="5" toWordIX="5">E</mention>
  </mentions>
  <chains>
    <chain>
      <mentionRef id="0"/>
      <mentionRef id="1"/>
    </chain>
    <chain>
      <mentionRef id="2"/>
      <mentionRef id="3"/>
    </chain>
  </chains>
</coreference>
)";
  CHECK(slurp(dir / "gold.xml") == expected_gold);

  SUBCASE("forced cannot-link changes the solution") {
    spit(dir / "force.txt", "cannot 0 1\n");
    RunResult forced = run("adjudicate --mentions " + (dir / "mentions.xml").string() +
                           " --annotations" + annotation_args + " --force " +
                           (dir / "force.txt").string());
    REQUIRE(forced.status == 0);
    CHECK(forced.out.find("<mentionRef id=\"0\"/>") == std::string::npos);
  }
}

TEST_CASE("iaa report, byte exact") {
  fs::path dir = work_dir();
  std::string mentions = R"(<?xml version="1.0" encoding="UTF-8"?>
<coreference docId="ex">
  <mentions>
    <mention id="0" sentenceNo="s1" fromWordIX="1" toWordIX="1"/>
    <mention id="1" sentenceNo="s1" fromWordIX="2" toWordIX="2"/>
  </mentions>
  <chains>
  </chains>
</coreference>
)";
  std::string annotation = R"(<?xml version="1.0" encoding="UTF-8"?>
<coreference docId="ex">
  <mentions>
    <mention id="0" sentenceNo="s1" fromWordIX="1" toWordIX="1"/>
    <mention id="1" sentenceNo="s1" fromWordIX="2" toWordIX="2"/>
  </mentions>
  <chains>
    <chain>
      <mentionRef id="0"/>
      <mentionRef id="1"/>
    </chain>
  </chains>
</coreference>
)";
  spit(dir / "im.xml", mentions);
  spit(dir / "ia.xml", annotation);
  spit(dir / "ib.xml", annotation);

  RunResult result = run("iaa --group " + (dir / "im.xml").string() + " " +
                         (dir / "ia.xml").string() + " " + (dir / "ib.xml").string());
  REQUIRE(result.status == 0);
  std::string expected =
      "document  iaa1    iaa2    mentions  annotators\n"
      "ex        1.0000  1.0000  2         2\n"
      "weighted  1.0000  1.0000  mention-weighted aggregate\n"
      "mean      1.0000  1.0000  unweighted document average\n";
  CHECK(result.out == expected);
}

TEST_CASE("detect-mentions, byte exact") {
  fs::path dir = work_dir();
  spit(dir / "d1.xml", kDocXml);
  RunResult result = run("detect-mentions --doc " + (dir / "d1.xml").string());
  REQUIRE(result.status == 0);
  // "Ali" and "Veli" have capitalized lemmas, "Ali" also repeats; every
  // occurrence is a single-token mention (the NP spans coincide).
  std::string expected = R"(<?xml version="1.0" encoding="UTF-8"?>
<coreference docId="d1">
  <mentions>
    <mention id="0" sentenceNo="d1.1" fromWordIX="1" toWordIX="1">Ali</mention>
    <mention id="1" sentenceNo="d1.1" fromWordIX="2" toWordIX="2">Veli</mention>
    <mention id="2" sentenceNo="d1.2" fromWordIX="1" toWordIX="1">Ali</mention>
  </mentions>
  <chains>
  </chains>
</coreference>
)";
  CHECK(result.out == expected);
}

TEST_CASE("baseline train, predict and crossval match the library byte for byte") {
  fs::path dir = work_dir();
  // Two-document learnable corpus.
  auto doc_xml = [](const std::string& id) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<document id=\"" + id +
                      "\" genre=\"synthetic\">\n";
    for (int s = 1; s <= 2; ++s) {
      out += "  <S No=\"" + id + "." + std::to_string(s) + "\">\n";
      out += "    <W IX=\"1\" LEM=\"Ali\" POS=\"Noun\" REL=\"SUBJECT\" HEAD=\"3\">Ali</W>\n";
      out += "    <W IX=\"2\" LEM=\"Veli\" POS=\"Noun\" REL=\"OBJECT\" HEAD=\"3\">Veli</W>\n";
      out += "    <W IX=\"3\" LEM=\"gör\" POS=\"Verb\" REL=\"ROOT\" HEAD=\"0\">gördü</W>\n";
      out += "  </S>\n";
    }
    return out + "</document>\n";
  };
  auto gold_xml = [](const std::string& id) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<coreference docId=\"" + id +
                      "\">\n  <mentions>\n";
    int mid = 0;
    for (int s = 1; s <= 2; ++s)
      for (int w = 1; w <= 2; ++w)
        out += "    <mention id=\"" + std::to_string(mid++) + "\" sentenceNo=\"" + id + "." +
               std::to_string(s) + "\" fromWordIX=\"" + std::to_string(w) + "\" toWordIX=\"" +
               std::to_string(w) + "\"/>\n";
    out += "  </mentions>\n  <chains>\n";
    out += "    <chain>\n      <mentionRef id=\"0\"/>\n      <mentionRef id=\"2\"/>\n    </chain>\n";
    out += "    <chain>\n      <mentionRef id=\"1\"/>\n      <mentionRef id=\"3\"/>\n    </chain>\n";
    return out + "  </chains>\n</coreference>\n";
  };
  spit(dir / "b1.xml", doc_xml("b1"));
  spit(dir / "b2.xml", doc_xml("b2"));
  spit(dir / "g1.xml", gold_xml("b1"));
  spit(dir / "g2.xml", gold_xml("b2"));

  std::string docs = (dir / "b1.xml").string() + " " + (dir / "b2.xml").string();
  std::string golds = (dir / "g1.xml").string() + " " + (dir / "g2.xml").string();

  RunResult train = run("baseline train --docs " + docs + " --gold " + golds +
                        " --method svc --mention-source gm --seed 7 --epochs 40 --out " +
                        (dir / "model.txt").string());
  REQUIRE(train.status == 0);

  // Library-side reference: the same training run.
  coref::baseline::Corpus corpus;
  corpus.documents.push_back(coref::formats::parse_document_xml(doc_xml("b1")));
  corpus.documents.push_back(coref::formats::parse_document_xml(doc_xml("b2")));
  for (const std::string& id : {"b1", "b2"}) {
    auto gold = coref::formats::parse_coref_xml(gold_xml(id));
    corpus.gold_mentions.push_back(gold.mentions);
    corpus.gold_chains.push_back(gold.chains);
  }
  coref::baseline::TrainConfig cfg;
  cfg.seed = 7;
  cfg.epochs = 40;
  auto lexicon = coref::baseline::PronounLexicon::default_turkish();
  std::vector<coref::baseline::TrainingDoc> tdocs;
  for (size_t d = 0; d < corpus.documents.size(); ++d)
    tdocs.push_back({&corpus.documents[d], corpus.gold_mentions[d], corpus.gold_chains[d]});
  auto examples = coref::baseline::generate_training_examples(
      tdocs, coref::baseline::MentionSource::gold, cfg, lexicon);
  auto model = coref::baseline::train_linear(
      examples, coref::baseline::LinearModel::Mode::classification, cfg);
  CHECK(slurp(dir / "model.txt") == coref::baseline::save_model(model));

  RunResult predict = run("baseline predict --model " + (dir / "model.txt").string() +
                          " --doc " + (dir / "b1.xml").string() + " --mentions " +
                          (dir / "g1.xml").string());
  REQUIRE(predict.status == 0);
  // The model separates by head string, so prediction recovers the gold.
  auto predicted = coref::formats::parse_coref_xml(predict.out);
  REQUIRE(predicted.chains.size() == 2);

  RunResult crossval = run("baseline crossval --docs " + docs + " --gold " + golds +
                           " --method svc --mention-source gm --seed 7 --epochs 40");
  REQUIRE(crossval.status == 0);
  auto report = coref::baseline::cross_validate(corpus, cfg, coref::baseline::Method::svc,
                                                coref::baseline::MentionSource::gold, lexicon);
  CHECK(crossval.out == coref::report::crossval_to_text(report));

  RunResult crossval_again = run("baseline crossval --docs " + docs + " --gold " + golds +
                                 " --method svc --mention-source gm --seed 7 --epochs 40");
  CHECK(crossval_again.out == crossval.out);  // deterministic
}

TEST_CASE("score accumulates over multiple documents") {
  fs::path dir = work_dir();
  // Document A scores 1.0 (1/1 MUC links), document B scores 0 (0/1): the
  // micro average is 1/2, not the mean of the ratios.
  std::string key =
      "#begin document (a); part 000\n"
      "a\t0\tx\t(0)\n"
      "a\t1\ty\t(0)\n"
      "#end document\n"
      "#begin document (b); part 000\n"
      "b\t0\tx\t(0)\n"
      "b\t1\ty\t(0)\n"
      "#end document\n";
  std::string response =
      "#begin document (a); part 000\n"
      "a\t0\tx\t(0)\n"
      "a\t1\ty\t(0)\n"
      "#end document\n"
      "#begin document (b); part 000\n"
      "b\t0\tx\t-\n"
      "b\t1\ty\t-\n"
      "#end document\n";
  spit(dir / "mkey.conll", key);
  spit(dir / "mresp.conll", response);
  RunResult result = run("score --key " + (dir / "mkey.conll").string() + " --response " +
                         (dir / "mresp.conll").string() + " --metrics muc --json");
  REQUIRE(result.status == 0);
  auto parsed = nlohmann::json::parse(result.out);
  CHECK(parsed["muc"]["recall"]["num"].get<double>() == doctest::Approx(1.0));
  CHECK(parsed["muc"]["recall"]["den"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("keep-singletons changes the scored input") {
  fs::path dir = work_dir();
  std::string key =
      "#begin document (a); part 000\n"
      "a\t0\tx\t(0)|(1)\n"
      "a\t1\ty\t(0)\n"
      "#end document\n";
  spit(dir / "skey.conll", key);
  RunResult dropped = run("score --key " + (dir / "skey.conll").string() + " --response " +
                          (dir / "skey.conll").string() + " --metrics bcub --json");
  RunResult kept = run("score --key " + (dir / "skey.conll").string() + " --response " +
                       (dir / "skey.conll").string() + " --metrics bcub --keep-singletons --json");
  REQUIRE(dropped.status == 0);
  REQUIRE(kept.status == 0);
  auto d = nlohmann::json::parse(dropped.out);
  auto k = nlohmann::json::parse(kept.out);
  CHECK(d["bcub"]["recall"]["den"].get<double>() == doctest::Approx(2.0));
  CHECK(k["bcub"]["recall"]["den"].get<double>() == doctest::Approx(3.0));
}

TEST_CASE("convert writes one XML per document into a directory") {
  fs::path dir = work_dir();
  spit(dir / "m1.xml", R"(<?xml version="1.0" encoding="UTF-8"?>
<document id="m1">
  <S No="m1.1">
    <W IX="1" LEM="a" POS="Noun" REL="ROOT" HEAD="0">a</W>
  </S>
</document>
)");
  spit(dir / "m2.xml", R"(<?xml version="1.0" encoding="UTF-8"?>
<document id="m2">
  <S No="m2.1">
    <W IX="1" LEM="b" POS="Noun" REL="ROOT" HEAD="0">b</W>
  </S>
</document>
)");
  std::string conll =
      "#begin document (m1); part 000\n"
      "m1\t0\ta\t(0)\n"
      "#end document\n"
      "#begin document (m2); part 000\n"
      "m2\t0\tb\t(0)\n"
      "#end document\n";
  spit(dir / "multi.conll", conll);
  fs::path out_dir = dir / "xml_out";
  RunResult result = run("convert --from conll --to xml --in " + (dir / "multi.conll").string() +
                         " --doc " + (dir / "m1.xml").string() + " --doc " +
                         (dir / "m2.xml").string() + " --out " + out_dir.string());
  REQUIRE(result.status == 0);
  CHECK(fs::exists(out_dir / "m1.xml"));
  CHECK(fs::exists(out_dir / "m2.xml"));
  auto first = coref::formats::parse_coref_xml(slurp(out_dir / "m1.xml"));
  CHECK(first.doc_id == "m1");
  CHECK(first.chains.size() == 1);
}

TEST_CASE("iaa emits json") {
  fs::path dir = work_dir();
  RunResult result = run("iaa --json --group " + (dir / "im.xml").string() + " " +
                         (dir / "ia.xml").string() + " " + (dir / "ib.xml").string());
  REQUIRE(result.status == 0);
  auto parsed = nlohmann::json::parse(result.out);
  CHECK(parsed["documents"][0]["iaa1"].get<double>() == doctest::Approx(1.0));
  CHECK(parsed["weighted"]["iaa2"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("exit codes") {
  CHECK(run("score").status == 1);           // usage error
  CHECK(run("nosuchcommand").status == 1);   // usage error
  fs::path dir = work_dir();
  CHECK(run("score --key /nonexistent.conll --response /nonexistent.conll").status == 2);
  spit(dir / "broken.xml", "<coreference docId='x'>");
  CHECK(run("detect-mentions --doc " + (dir / "broken.xml").string()).status == 2);
  spit(dir / "k.conll",
       "#begin document (a); part 000\na\t0\tx\t-\n#end document\n");
  CHECK(run("score --key " + (dir / "k.conll").string() + " --response " +
            (dir / "k.conll").string() + " --metrics bogus")
            .status == 2);
}
