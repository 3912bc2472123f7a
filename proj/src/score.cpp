#include "phraser/score.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "phraser/error.hpp"

namespace phraser {

ScoreReport score(const std::vector<std::vector<Span>>& predicted,
                  const std::vector<std::vector<Span>>& gold, double beta) {
  if (predicted.size() != gold.size()) {
    std::ostringstream msg;
    msg << "sentence count mismatch: " << predicted.size() << " predicted vs "
        << gold.size() << " gold";
    throw DataError(msg.str());
  }
  if (!(beta > 0.0)) throw DataError("beta must be positive");

  ScoreReport report;
  report.beta = beta;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    std::vector<Span> p = predicted[i];
    std::vector<Span> g = gold[i];
    std::sort(p.begin(), p.end());
    std::sort(g.begin(), g.end());
    report.predicted += static_cast<std::int64_t>(p.size());
    report.gold += static_cast<std::int64_t>(g.size());
    std::vector<Span> matched;
    std::set_intersection(p.begin(), p.end(), g.begin(), g.end(),
                          std::back_inserter(matched));
    report.true_positives += static_cast<std::int64_t>(matched.size());
  }

  report.precision = report.predicted == 0
                         ? 1.0
                         : static_cast<double>(report.true_positives) /
                               static_cast<double>(report.predicted);
  report.recall = report.gold == 0 ? 1.0
                                   : static_cast<double>(report.true_positives) /
                                         static_cast<double>(report.gold);
  double b2 = beta * beta;
  if (report.precision == 0.0 && report.recall == 0.0) {
    report.f_beta = 0.0;
  } else {
    report.f_beta = (b2 + 1.0) * report.recall * report.precision /
                    (b2 * report.precision + report.recall);
  }
  return report;
}

ScoreReport score_corpora(const Corpus& predicted, const Corpus& gold, double beta) {
  if (predicted.sentences.size() != gold.sentences.size()) {
    std::ostringstream msg;
    msg << "sentence count mismatch: " << predicted.sentences.size()
        << " predicted vs " << gold.sentences.size() << " gold";
    throw DataError(msg.str());
  }
  std::vector<std::vector<Span>> p;
  std::vector<std::vector<Span>> g;
  for (std::size_t i = 0; i < gold.sentences.size(); ++i) {
    if (predicted.sentences[i].size() != gold.sentences[i].size()) {
      std::ostringstream msg;
      msg << "sentence " << i << ": token count mismatch ("
          << predicted.sentences[i].size() << " vs " << gold.sentences[i].size()
          << ")";
      throw DataError(msg.str());
    }
    p.push_back(predicted.sentences[i].gold_spans);
    g.push_back(gold.sentences[i].gold_spans);
  }
  return score(p, g, beta);
}

void write_score_report(std::ostream& out, const ScoreReport& report) {
  char line[128];
  std::snprintf(line, sizeof(line), "Precision: %7.2f%%  (%lld/%lld)",
                report.precision * 100.0,
                static_cast<long long>(report.true_positives),
                static_cast<long long>(report.predicted));
  out << line << '\n';
  std::snprintf(line, sizeof(line), "Recall:    %7.2f%%  (%lld/%lld)",
                report.recall * 100.0,
                static_cast<long long>(report.true_positives),
                static_cast<long long>(report.gold));
  out << line << '\n';
  std::snprintf(line, sizeof(line), "F(beta=%g): %6.2f%%", report.beta,
                report.f_beta * 100.0);
  out << line << '\n';
  out << '\n';
  std::snprintf(line, sizeof(line), "precision = %.6f", report.precision);
  out << line << '\n';
  std::snprintf(line, sizeof(line), "recall = %.6f", report.recall);
  out << line << '\n';
  std::snprintf(line, sizeof(line), "f_beta = %.6f", report.f_beta);
  out << line << '\n';
  std::snprintf(line, sizeof(line), "beta = %.6f", report.beta);
  out << line << '\n';
  out << "true_positives = " << report.true_positives << '\n';
  out << "predicted = " << report.predicted << '\n';
  out << "gold = " << report.gold << '\n';
}

}  // namespace phraser
