#include "phraser/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phraser/error.hpp"

namespace phraser {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Floor for the marginal P_t(s) denominator; masking can drive it tiny.
constexpr double kMarginalFloor = 1e-12;

double log0(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

}  // namespace

TransitionCounts count_transitions(const Corpus& corpus) {
  TransitionCounts counts;
  for (const Sentence& sentence : corpus.sentences) {
    std::vector<CombinedState> states =
        spans_to_states(sentence.gold_spans, sentence.size());
    if (states.empty()) continue;
    counts.initial[index_of(states.front())] += 1;
    for (std::size_t t = 1; t < states.size(); ++t) {
      counts.bigram[index_of(states[t - 1])][index_of(states[t])] += 1;
    }
  }
  return counts;
}

TransitionTable TransitionTable::from_counts(const TransitionCounts& counts,
                                             double alpha) {
  if (!(alpha >= 0.0)) throw DataError("transition alpha must be non-negative");
  TransitionTable table;

  double initial_total = 0.0;
  std::size_t initial_support = 0;
  for (CombinedState s : kAllStates) {
    if (!legal_start(s)) continue;
    initial_total += static_cast<double>(counts.initial[index_of(s)]) + alpha;
    ++initial_support;
  }
  for (CombinedState s : kAllStates) {
    std::size_t i = index_of(s);
    if (!legal_start(s)) {
      table.initial_[i] = 0.0;
    } else if (initial_total > 0.0) {
      table.initial_[i] =
          (static_cast<double>(counts.initial[i]) + alpha) / initial_total;
    } else {
      table.initial_[i] = 1.0 / static_cast<double>(initial_support);
    }
    table.log_initial_[i] = log0(table.initial_[i]);
  }

  for (CombinedState from : kAllStates) {
    std::size_t f = index_of(from);
    double row_total = 0.0;
    std::size_t row_support = 0;
    for (CombinedState to : kAllStates) {
      if (!transition_allowed(from, to)) continue;
      row_total += static_cast<double>(counts.bigram[f][index_of(to)]) + alpha;
      ++row_support;
    }
    for (CombinedState to : kAllStates) {
      std::size_t t = index_of(to);
      if (!transition_allowed(from, to)) {
        table.prob_[f][t] = 0.0;
      } else if (row_total > 0.0) {
        table.prob_[f][t] =
            (static_cast<double>(counts.bigram[f][t]) + alpha) / row_total;
      } else {
        table.prob_[f][t] = 1.0 / static_cast<double>(row_support);
      }
      table.log_prob_[f][t] = log0(table.prob_[f][t]);
    }
  }
  return table;
}

TransitionTable estimate_transitions(const Corpus& corpus, double alpha) {
  if (corpus.sentences.empty()) {
    throw DataError("cannot estimate transitions from an empty corpus");
  }
  return TransitionTable::from_counts(count_transitions(corpus), alpha);
}

double sequence_log_score(const SequenceScores& scores,
                          const std::vector<CombinedState>& states) {
  const std::size_t n = scores.length();
  if (states.size() != n || n == 0) {
    throw DataError("state sequence length does not match the lattice");
  }
  if (!legal_start(states.front()) || !legal_end(states.back())) return kNegInf;
  double acc = 0.0;
  for (std::size_t t = n - 1; t >= 1; --t) {
    if (!transition_allowed(states[t - 1], states[t])) return kNegInf;
    acc = scores.edge[t - 1][index_of(states[t - 1])][index_of(states[t])] +
          scores.node[t][index_of(states[t])] + acc;
  }
  acc = scores.node[0][index_of(states.front())] + acc;
  return acc;
}

DecodeResult viterbi_decode(const SequenceScores& scores) {
  const std::size_t n = scores.length();
  if (n == 0) throw DataError("cannot decode an empty lattice");
  if (scores.edge.size() + 1 != n) {
    throw InternalError("lattice edge/node size mismatch");
  }

  // Backward best-suffix scores with forward pointers; visiting successor
  // states in ascending order and keeping strict improvements makes the
  // reconstruction the lexicographically smallest optimum.
  std::vector<std::array<double, kNumStates>> best(n);
  std::vector<std::array<int, kNumStates>> next(n);
  for (CombinedState s : kAllStates) {
    std::size_t i = index_of(s);
    best[n - 1][i] = legal_end(s) ? 0.0 : kNegInf;
    next[n - 1][i] = -1;
  }
  for (std::size_t t = n - 1; t >= 1; --t) {
    for (CombinedState s : kAllStates) {
      std::size_t i = index_of(s);
      double best_here = kNegInf;
      int pointer = -1;
      for (CombinedState s2 : kAllStates) {
        std::size_t j = index_of(s2);
        if (!transition_allowed(s, s2)) continue;
        double suffix = best[t][j];
        if (suffix == kNegInf) continue;
        double candidate = scores.edge[t - 1][i][j] + scores.node[t][j] + suffix;
        if (candidate > best_here) {
          best_here = candidate;
          pointer = static_cast<int>(j);
        }
      }
      best[t - 1][i] = best_here;
      next[t - 1][i] = pointer;
    }
  }

  double best_total = kNegInf;
  int first = -1;
  for (CombinedState s : kAllStates) {
    std::size_t i = index_of(s);
    if (!legal_start(s)) continue;
    if (best[0][i] == kNegInf) continue;
    double total = scores.node[0][i] + best[0][i];
    if (total > best_total) {
      best_total = total;
      first = static_cast<int>(i);
    }
  }
  if (first < 0) {
    throw InternalError("all decode paths have zero probability");
  }

  DecodeResult result;
  result.log_score = best_total;
  result.states.reserve(n);
  int state = first;
  for (std::size_t t = 0; t < n; ++t) {
    result.states.push_back(static_cast<CombinedState>(state));
    state = next[t][static_cast<std::size_t>(state)];
  }
  return result;
}

DecodeResult brute_force_decode(const SequenceScores& scores) {
  const std::size_t n = scores.length();
  if (n == 0) throw DataError("cannot decode an empty lattice");
  if (n > 10) {
    throw DataError("brute force decode refuses sequences longer than 10");
  }

  std::vector<CombinedState> current(n, CombinedState::OUTSIDE);
  DecodeResult best;
  best.log_score = kNegInf;

  // Odometer over all 5^n sequences, most significant digit first, so the
  // first maximum seen is the lexicographically smallest.
  while (true) {
    if (is_legal(current)) {
      double score = sequence_log_score(scores, current);
      if (score > best.log_score) {
        best.log_score = score;
        best.states = current;
      }
    }
    std::size_t t = n;
    while (t > 0) {
      --t;
      std::size_t digit = index_of(current[t]) + 1;
      if (digit < kNumStates) {
        current[t] = static_cast<CombinedState>(digit);
        break;
      }
      current[t] = CombinedState::OUTSIDE;
      if (t == 0) {
        if (best.log_score == kNegInf) {
          throw InternalError("all decode paths have zero probability");
        }
        return best;
      }
    }
  }
}

SequenceScores build_hmm_scores(const std::vector<StateDist>& observation_dists,
                                const TransitionTable& transitions) {
  const std::size_t n = observation_dists.size();
  if (n == 0) throw DataError("cannot decode an empty sentence");

  // Forward marginal recursion P_t(s), seeded with the initial distribution.
  std::vector<std::array<double, kNumStates>> marginal(n);
  for (CombinedState s : kAllStates) {
    marginal[0][index_of(s)] = transitions.initial(s);
  }
  for (std::size_t t = 1; t < n; ++t) {
    for (CombinedState s : kAllStates) {
      double total = 0.0;
      for (CombinedState prev : kAllStates) {
        total += transitions.prob(prev, s) * marginal[t - 1][index_of(prev)];
      }
      marginal[t][index_of(s)] = total;
    }
  }

  SequenceScores scores;
  scores.node.resize(n);
  scores.edge.resize(n - 1);
  for (CombinedState s : kAllStates) {
    scores.node[0][index_of(s)] = log0(observation_dists[0][s]);
  }
  for (std::size_t t = 1; t < n; ++t) {
    for (CombinedState s : kAllStates) {
      std::size_t i = index_of(s);
      double denom = std::max(marginal[t][i], kMarginalFloor);
      scores.node[t][i] = log0(observation_dists[t][s]) - std::log(denom);
    }
    for (CombinedState prev : kAllStates) {
      for (CombinedState s : kAllStates) {
        scores.edge[t - 1][index_of(prev)][index_of(s)] =
            transitions.log_prob(prev, s);
      }
    }
  }
  return scores;
}

SequenceScores build_pmm_scores(const PmmTables& tables) {
  const std::size_t n = tables.given_prev.size() + 1;

  SequenceScores scores;
  scores.node.resize(n);
  scores.edge.resize(n - 1);

  // Initial model masked to legal starts and renormalized.
  {
    double mass = 0.0;
    for (CombinedState s : kAllStates) {
      if (legal_start(s)) mass += tables.initial[s];
    }
    for (CombinedState s : kAllStates) {
      std::size_t i = index_of(s);
      if (!legal_start(s) || mass <= 0.0) {
        scores.node[0][i] = kNegInf;
      } else {
        scores.node[0][i] = log0(tables.initial[s] / mass);
      }
    }
  }

  for (std::size_t t = 1; t < n; ++t) {
    scores.node[t].fill(0.0);
    for (CombinedState prev : kAllStates) {
      const StateDist& dist = tables.given_prev[t - 1][index_of(prev)];
      double mass = 0.0;
      for (CombinedState s : kAllStates) {
        if (transition_allowed(prev, s)) mass += dist[s];
      }
      for (CombinedState s : kAllStates) {
        double value = kNegInf;
        if (transition_allowed(prev, s) && mass > 0.0) {
          value = log0(dist[s] / mass);
        }
        scores.edge[t - 1][index_of(prev)][index_of(s)] = value;
      }
    }
  }
  return scores;
}

DecodeResult hmm_decode_dists(const std::vector<StateDist>& observation_dists,
                              const TransitionTable& transitions) {
  return viterbi_decode(build_hmm_scores(observation_dists, transitions));
}

DecodeResult pmm_decode_tables(const PmmTables& tables) {
  return viterbi_decode(build_pmm_scores(tables));
}

std::vector<CombinedState> hmm_decode(const Classifier& classifier,
                                      const TransitionTable& transitions,
                                      const Sentence& sentence) {
  if (sentence.size() == 0) throw DataError("cannot decode an empty sentence");
  std::vector<StateDist> dists;
  dists.reserve(sentence.size());
  for (std::size_t t = 0; t < sentence.size(); ++t) {
    dists.push_back(classifier.predict(sentence, t));
  }
  DecodeResult result = hmm_decode_dists(dists, transitions);
  if (!is_legal(result.states)) {
    throw InternalError("decoder produced an illegal state sequence");
  }
  return result.states;
}

std::vector<CombinedState> pmm_decode(const ProjectedClassifier& projected,
                                      const Sentence& sentence) {
  if (sentence.size() == 0) throw DataError("cannot decode an empty sentence");
  PmmTables tables;
  tables.initial = projected.predict_initial(sentence);
  tables.given_prev.resize(sentence.size() - 1);
  for (std::size_t t = 1; t < sentence.size(); ++t) {
    tables.given_prev[t - 1] = projected.predict_all_prev(sentence, t);
  }
  DecodeResult result = pmm_decode_tables(tables);
  if (!is_legal(result.states)) {
    throw InternalError("decoder produced an illegal state sequence");
  }
  return result.states;
}

}  // namespace phraser
