// Constraint satisfaction with classifiers. Candidate phrases are Boolean
// variables costed from the open/close probabilities at their endpoints;
// the pairwise non-overlap constraints form a 2-CNF whose minimum-cost
// satisfying assignment is found as a shortest path in a DAG over the n+1
// token boundaries: one zero-weight skip edge per token plus one weighted
// edge per candidate phrase.

#ifndef PHRASER_CSCL_HPP
#define PHRASER_CSCL_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "phraser/classifiers.hpp"
#include "phraser/corpus.hpp"
#include "phraser/kvconfig.hpp"

namespace phraser {

enum class CostVariant { NEG_PRODUCT, ONE_MINUS_PRODUCT };

const std::string& to_string(CostVariant variant);
CostVariant cost_variant_from_string(const std::string& name);

struct SolverConfig {
  CostVariant cost_variant = CostVariant::NEG_PRODUCT;
  std::size_t max_phrase_length = 0;  // 0 means unbounded
  double min_product = 0.0;

  // Keys: cost_variant (neg_product | one_minus_product), max_phrase_length,
  // min_product. Unlisted keys are left for the caller to consume.
  static SolverConfig from_kv(const KeyValueFile& kv);
};

// -p*q or 1-p*q; probabilities outside [0,1] are a DataError.
double candidate_cost(double open_prob, double close_prob, CostVariant variant);

struct Candidate {
  Span span;
  double open_prob = 0.0;
  double close_prob = 0.0;
  double cost = 0.0;
};

// All spans (i,j) with length <= max_length whose open(i)*close(j) product
// reaches min_product. The probability arrays must have equal length.
std::vector<Candidate> enumerate_candidates(const std::vector<double>& open_probs,
                                            const std::vector<double>& close_probs,
                                            std::size_t max_length,
                                            double min_product,
                                            CostVariant variant);

struct PathSolution {
  std::vector<Span> phrases;  // sorted by start; pairwise non-overlapping
  double total_cost = 0.0;
};

struct GraphStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
};

// Single pass over the DAG in position order; linear in the edge count.
// Ties: lower cost, then fewer phrases, then lexicographically earliest
// spans. The same order is used by the exhaustive oracle, so the two are
// comparable exactly.
PathSolution solve(const std::vector<Candidate>& candidates, std::size_t n,
                   GraphStats* stats = nullptr);

// Exhaustive minimum over non-overlapping candidate subsets; refuses more
// than 20 candidates.
PathSolution brute_force_optimal(const std::vector<Candidate>& candidates,
                                 std::size_t n);

// End-to-end: per-position open/close marginals from the classifier
// (P(open) = P(OPEN) + P(OPENCLOSE), P(close) = P(CLOSE) + P(OPENCLOSE)),
// candidate enumeration, then the shortest-path solve.
std::vector<Span> cscl_decode(const Classifier& classifier, const Sentence& sentence,
                              const SolverConfig& config);

}  // namespace phraser

#endif  // PHRASER_CSCL_HPP
