// Exact-match phrase scoring: a predicted span counts only if both
// endpoints equal a gold span's endpoints.

#ifndef PHRASER_SCORE_HPP
#define PHRASER_SCORE_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "phraser/corpus.hpp"

namespace phraser {

struct ScoreReport {
  std::int64_t true_positives = 0;
  std::int64_t predicted = 0;
  std::int64_t gold = 0;
  double precision = 1.0;  // 1.0 when nothing was predicted
  double recall = 1.0;     // 1.0 when there is no gold phrase
  double f_beta = 1.0;
  double beta = 1.0;
};

// Span sets are compared sentence by sentence; the two lists must have the
// same number of sentences. F_beta = (beta^2+1)PR / (beta^2 P + R), defined
// as 0 when both precision and recall are 0.
ScoreReport score(const std::vector<std::vector<Span>>& predicted,
                  const std::vector<std::vector<Span>>& gold, double beta);

ScoreReport score_corpora(const Corpus& predicted, const Corpus& gold, double beta);

// Human-readable block followed by machine-readable "key = value" lines.
void write_score_report(std::ostream& out, const ScoreReport& report);

}  // namespace phraser

#endif  // PHRASER_SCORE_HPP
