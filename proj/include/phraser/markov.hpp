// Markovian combinators. Both decoders reduce to one lattice shape: a
// log-domain node score per (position, state) and a log-domain edge score
// per (position, previous state, state), with start/end legality from the
// phrase automaton. The HMM combinator fills the lattice with
// P(s|s') * P(s|o_t) / P_t(s) (the per-position observation constant is
// dropped; it is shared by all compared sequences) where P_t is the forward
// marginal recursion. The PMM combinator fills edges with the projected
// classifier outputs P_{s'}(s|o_t) directly, masked and renormalized over
// the allowed successors.
//
// Tie-breaking is total and shared with the exhaustive oracle: among
// maximum-score legal sequences, the winner is lexicographically smallest
// under the state order OUTSIDE < OPEN < INSIDE < CLOSE < OPENCLOSE,
// comparing positions left to right.

#ifndef PHRASER_MARKOV_HPP
#define PHRASER_MARKOV_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "phraser/classifiers.hpp"
#include "phraser/corpus.hpp"
#include "phraser/states.hpp"

namespace phraser {

struct TransitionCounts {
  std::array<std::int64_t, kNumStates> initial{};
  // bigram[from][to]
  std::array<std::array<std::int64_t, kNumStates>, kNumStates> bigram{};
};

TransitionCounts count_transitions(const Corpus& corpus);

// P_1(s) and P(s|s'), masked by the automaton: disallowed entries are
// exactly 0, allowed entries are add-alpha smoothed counts renormalized per
// row. A row with no counts and alpha 0 falls back to uniform over its
// allowed successors so rows always sum to 1.
class TransitionTable {
 public:
  TransitionTable() = default;
  static TransitionTable from_counts(const TransitionCounts& counts, double alpha);

  double initial(CombinedState s) const { return initial_[index_of(s)]; }
  double prob(CombinedState from, CombinedState to) const {
    return prob_[index_of(from)][index_of(to)];
  }
  double log_initial(CombinedState s) const { return log_initial_[index_of(s)]; }
  double log_prob(CombinedState from, CombinedState to) const {
    return log_prob_[index_of(from)][index_of(to)];
  }

 private:
  std::array<double, kNumStates> initial_{};
  std::array<std::array<double, kNumStates>, kNumStates> prob_{};
  std::array<double, kNumStates> log_initial_{};
  std::array<std::array<double, kNumStates>, kNumStates> log_prob_{};
};

TransitionTable estimate_transitions(const Corpus& corpus, double alpha = 0.1);

// Lattice of log scores. node[t][s] scores state s at position t; edge
// edge[t][s'][s] scores the transition into position t+1. Masked entries
// are -infinity.
struct SequenceScores {
  std::vector<std::array<double, kNumStates>> node;
  std::vector<std::array<std::array<double, kNumStates>, kNumStates>> edge;

  std::size_t length() const { return node.size(); }
};

struct DecodeResult {
  std::vector<CombinedState> states;
  double log_score = 0.0;
};

// Score of one sequence under the lattice; -infinity if it uses a masked
// entry or an illegal start/end state. Accumulates right to left, matching
// the decoder's evaluation order bit for bit.
double sequence_log_score(const SequenceScores& scores,
                          const std::vector<CombinedState>& states);

// Exact maximizer over legal sequences via dynamic programming.
DecodeResult viterbi_decode(const SequenceScores& scores);

// Exhaustive maximizer with identical scoring and tie-breaking; refuses
// n > 10. The equivalence oracle for viterbi_decode.
DecodeResult brute_force_decode(const SequenceScores& scores);

// Lattice builders. Observation distributions are used as relative scores
// and deliberately not renormalized, so scaling one position's scores by a
// positive constant cannot change the decoded sequence.
SequenceScores build_hmm_scores(const std::vector<StateDist>& observation_dists,
                                const TransitionTable& transitions);

// Projected tables for positions 1..n-1: given_prev[t-1][s'] is the
// distribution over successors of s' at position t.
struct PmmTables {
  StateDist initial;
  std::vector<std::array<StateDist, kNumStates>> given_prev;
};

SequenceScores build_pmm_scores(const PmmTables& tables);

DecodeResult hmm_decode_dists(const std::vector<StateDist>& observation_dists,
                              const TransitionTable& transitions);
DecodeResult pmm_decode_tables(const PmmTables& tables);

// End-to-end decoders used by the CLI; outputs always pass is_legal.
std::vector<CombinedState> hmm_decode(const Classifier& classifier,
                                      const TransitionTable& transitions,
                                      const Sentence& sentence);
std::vector<CombinedState> pmm_decode(const ProjectedClassifier& projected,
                                      const Sentence& sentence);

}  // namespace phraser

#endif  // PHRASER_MARKOV_HPP
