#include "coref/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace coref::report {

namespace {

std::string fixed(double value, int digits = 4) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

std::string ratio_text(const metrics::RatioPair& pair) {
  auto trim = [](double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%g", v);
    return std::string(buffer);
  };
  return fixed(pair.value()) + " (" + trim(pair.num) + "/" + trim(pair.den) + ")";
}

nlohmann::ordered_json score_json(const metrics::MetricScore& s) {
  return {{"recall", {{"num", s.recall.num}, {"den", s.recall.den}, {"value", s.recall.value()}}},
          {"precision",
           {{"num", s.precision.num}, {"den", s.precision.den}, {"value", s.precision.value()}}},
          {"f1", s.f1}};
}

}  // namespace

std::optional<double> ScoreReport::conll_f1() const {
  double sum = 0.0;
  int found = 0;
  for (const MetricRow& row : rows) {
    if (row.name == "muc" || row.name == "bcub" || row.name == "ceafe") {
      sum += row.score.f1;
      ++found;
    }
  }
  if (found != 3) return std::nullopt;
  return sum / 3.0;
}

std::string ScoreReport::to_text() const {
  size_t name_width = 6;
  std::vector<std::array<std::string, 4>> cells;
  for (const MetricRow& row : rows) {
    cells.push_back({row.name, ratio_text(row.score.recall), ratio_text(row.score.precision),
                     fixed(row.score.f1)});
    name_width = std::max(name_width, row.name.size());
  }
  size_t r_width = 6, p_width = 9;
  for (const auto& c : cells) {
    r_width = std::max(r_width, c[1].size());
    p_width = std::max(p_width, c[2].size());
  }
  auto pad = [](const std::string& s, size_t width) {
    return s + std::string(width - s.size(), ' ');
  };
  std::string out = pad("metric", name_width) + "  " + pad("recall", r_width) + "  " +
                    pad("precision", p_width) + "  f1\n";
  for (const auto& c : cells)
    out += pad(c[0], name_width) + "  " + pad(c[1], r_width) + "  " + pad(c[2], p_width) +
           "  " + c[3] + "\n";
  if (auto conll = conll_f1())
    out += pad("conll", name_width) + "  " + pad("", r_width) + "  " + pad("", p_width) + "  " +
           fixed(*conll) + "\n";
  return out;
}

std::string ScoreReport::to_json() const {
  nlohmann::ordered_json j;
  for (const MetricRow& row : rows) j[row.name] = score_json(row.score);
  if (auto conll = conll_f1()) j["conll"] = {{"f1", *conll}};
  return j.dump(2) + "\n";
}

double IaaReport::weighted_iaa1() const {
  double sum = 0.0, weight = 0.0;
  for (const IaaDocument& d : documents) {
    sum += d.iaa1 * d.mentions;
    weight += d.mentions;
  }
  return weight == 0.0 ? 0.0 : sum / weight;
}

double IaaReport::weighted_iaa2() const {
  double sum = 0.0, weight = 0.0;
  for (const IaaDocument& d : documents) {
    sum += d.iaa2 * d.mentions;
    weight += d.mentions;
  }
  return weight == 0.0 ? 0.0 : sum / weight;
}

double IaaReport::mean_iaa1() const {
  if (documents.empty()) return 0.0;
  double sum = 0.0;
  for (const IaaDocument& d : documents) sum += d.iaa1;
  return sum / static_cast<double>(documents.size());
}

double IaaReport::mean_iaa2() const {
  if (documents.empty()) return 0.0;
  double sum = 0.0;
  for (const IaaDocument& d : documents) sum += d.iaa2;
  return sum / static_cast<double>(documents.size());
}

std::string IaaReport::to_text() const {
  size_t id_width = 8;
  for (const IaaDocument& d : documents) id_width = std::max(id_width, d.doc_id.size());
  auto pad = [](const std::string& s, size_t width) {
    return s + std::string(width - s.size(), ' ');
  };
  std::string out =
      pad("document", id_width) + "  iaa1    iaa2    mentions  annotators\n";
  for (const IaaDocument& d : documents)
    out += pad(d.doc_id, id_width) + "  " + fixed(d.iaa1) + "  " + fixed(d.iaa2) + "  " +
           pad(std::to_string(d.mentions), 8) + "  " + std::to_string(d.annotators) + "\n";
  out += pad("weighted", id_width) + "  " + fixed(weighted_iaa1()) + "  " +
         fixed(weighted_iaa2()) + "  mention-weighted aggregate\n";
  out += pad("mean", id_width) + "  " + fixed(mean_iaa1()) + "  " + fixed(mean_iaa2()) +
         "  unweighted document average\n";
  return out;
}

std::string IaaReport::to_json() const {
  nlohmann::ordered_json docs = nlohmann::ordered_json::array();
  for (const IaaDocument& d : documents)
    docs.push_back({{"docId", d.doc_id},
                    {"mentions", d.mentions},
                    {"annotators", d.annotators},
                    {"iaa1", d.iaa1},
                    {"iaa2", d.iaa2}});
  nlohmann::ordered_json j{{"documents", docs},
                           {"weighted", {{"iaa1", weighted_iaa1()}, {"iaa2", weighted_iaa2()}}},
                           {"mean", {{"iaa1", mean_iaa1()}, {"iaa2", mean_iaa2()}}}};
  return j.dump(2) + "\n";
}

namespace {

std::string eval_row_text(const baseline::EvalRow& row, size_t genre_width) {
  auto pad = [](const std::string& s, size_t width) {
    return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
  };
  std::string out = pad(row.genre, genre_width) + "  " + pad(std::to_string(row.documents), 4);
  out += "  " + fixed(row.mention_recall.value()) + "  " + fixed(row.mention_precision.value());
  out += "  " + fixed(row.muc.f1) + "  " + fixed(row.bcub.f1) + "  " + fixed(row.ceafm.f1) +
         "  " + fixed(row.ceafe.f1) + "  " + fixed(row.blanc.blanc()) + "  " +
         fixed(row.lea.f1);
  double conll = (row.muc.f1 + row.bcub.f1 + row.ceafe.f1) / 3.0;
  out += "  " + fixed(conll) + "\n";
  return out;
}

nlohmann::ordered_json eval_row_json(const baseline::EvalRow& row) {
  return {{"genre", row.genre},
          {"documents", row.documents},
          {"mentionDetection",
           {{"recall", row.mention_recall.value()}, {"precision", row.mention_precision.value()}}},
          {"muc", score_json(row.muc)},
          {"bcub", score_json(row.bcub)},
          {"ceafm", score_json(row.ceafm)},
          {"ceafe", score_json(row.ceafe)},
          {"blanc", score_json(row.blanc.combined())},
          {"lea", score_json(row.lea)},
          {"conll", (row.muc.f1 + row.bcub.f1 + row.ceafe.f1) / 3.0}};
}

}  // namespace

std::string crossval_to_text(const baseline::CrossValReport& report) {
  size_t genre_width = 7;
  for (const baseline::EvalRow& row : report.genres)
    genre_width = std::max(genre_width, row.genre.size());
  auto pad = [](const std::string& s, size_t width) {
    return s + std::string(width - s.size(), ' ');
  };
  std::string out = pad("genre", genre_width) +
                    "  docs  men-R   men-P   muc     bcub    ceafm   ceafe   blanc   lea     conll\n";
  for (const baseline::EvalRow& row : report.genres) out += eval_row_text(row, genre_width);
  out += eval_row_text(report.overall, genre_width);
  return out;
}

std::string crossval_to_json(const baseline::CrossValReport& report) {
  nlohmann::ordered_json genres = nlohmann::ordered_json::array();
  for (const baseline::EvalRow& row : report.genres) genres.push_back(eval_row_json(row));
  nlohmann::ordered_json j{{"genres", genres}, {"overall", eval_row_json(report.overall)}};
  return j.dump(2) + "\n";
}

}  // namespace coref::report
