#include "phraser/cscl.hpp"

#include <algorithm>
#include <sstream>

#include "phraser/error.hpp"

namespace phraser {

namespace {

const std::array<std::string, 2> kVariantNames = {"neg_product", "one_minus_product"};

// Order: cost, then phrase count, then lexicographic spans. Cost equality is
// exact; both the solver and the oracle accumulate costs in span-start order,
// so equal selections compare equal bit for bit.
struct SolutionOrder {
  bool operator()(const PathSolution& a, const PathSolution& b) const {
    if (a.total_cost != b.total_cost) return a.total_cost < b.total_cost;
    if (a.phrases.size() != b.phrases.size()) {
      return a.phrases.size() < b.phrases.size();
    }
    return std::lexicographical_compare(a.phrases.begin(), a.phrases.end(),
                                        b.phrases.begin(), b.phrases.end());
  }
};

}  // namespace

const std::string& to_string(CostVariant variant) {
  return kVariantNames[static_cast<std::size_t>(variant)];
}

CostVariant cost_variant_from_string(const std::string& name) {
  if (name == "neg_product") return CostVariant::NEG_PRODUCT;
  if (name == "one_minus_product") return CostVariant::ONE_MINUS_PRODUCT;
  throw DataError("unknown cost variant: " + name);
}

SolverConfig SolverConfig::from_kv(const KeyValueFile& kv) {
  SolverConfig config;
  config.cost_variant =
      cost_variant_from_string(kv.get_string("cost_variant", to_string(config.cost_variant)));
  config.max_phrase_length = kv.get_uint("max_phrase_length", config.max_phrase_length);
  config.min_product = kv.get_double("min_product", config.min_product);
  if (config.min_product < 0.0) {
    throw DataError("min_product must be non-negative");
  }
  return config;
}

double candidate_cost(double open_prob, double close_prob, CostVariant variant) {
  if (!(open_prob >= 0.0 && open_prob <= 1.0) ||
      !(close_prob >= 0.0 && close_prob <= 1.0)) {
    std::ostringstream msg;
    msg << "probabilities out of range: open=" << open_prob
        << " close=" << close_prob;
    throw DataError(msg.str());
  }
  double product = open_prob * close_prob;
  return variant == CostVariant::NEG_PRODUCT ? -product : 1.0 - product;
}

std::vector<Candidate> enumerate_candidates(const std::vector<double>& open_probs,
                                            const std::vector<double>& close_probs,
                                            std::size_t max_length,
                                            double min_product,
                                            CostVariant variant) {
  if (open_probs.size() != close_probs.size()) {
    throw DataError("open/close probability arrays differ in length");
  }
  if (max_length < 1) throw DataError("max_length must be at least 1");
  const std::size_t n = open_probs.size();

  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t last = std::min(n - 1, i + max_length - 1);
    for (std::size_t j = i; j <= last; ++j) {
      double product = open_probs[i] * close_probs[j];
      if (product < min_product) continue;
      Candidate candidate;
      candidate.span = Span{i, j};
      candidate.open_prob = open_probs[i];
      candidate.close_prob = close_probs[j];
      candidate.cost = candidate_cost(open_probs[i], close_probs[j], variant);
      candidates.push_back(candidate);
    }
  }
  return candidates;
}

PathSolution solve(const std::vector<Candidate>& candidates, std::size_t n,
                   GraphStats* stats) {
  for (const Candidate& candidate : candidates) {
    if (candidate.span.start > candidate.span.end || candidate.span.end >= n) {
      throw DataError("candidate span out of bounds");
    }
  }

  // Phrase edges grouped by target node (span.end + 1).
  std::vector<std::vector<const Candidate*>> incoming(n + 1);
  for (const Candidate& candidate : candidates) {
    incoming[candidate.span.end + 1].push_back(&candidate);
  }

  SolutionOrder better;
  std::vector<PathSolution> best(n + 1);
  for (std::size_t v = 1; v <= n; ++v) {
    // Skip edge from v-1, weight 0.
    best[v] = best[v - 1];
    for (const Candidate* candidate : incoming[v]) {
      PathSolution via = best[candidate->span.start];
      via.total_cost += candidate->cost;
      via.phrases.push_back(candidate->span);
      if (better(via, best[v])) best[v] = std::move(via);
    }
  }

  if (stats != nullptr) {
    stats->nodes = n + 1;
    stats->edges = n + candidates.size();
  }
  validate_spans(best[n].phrases, n);
  return best[n];
}

PathSolution brute_force_optimal(const std::vector<Candidate>& candidates,
                                 std::size_t n) {
  if (candidates.size() > 20) {
    throw DataError("brute force refuses more than 20 candidates");
  }
  for (const Candidate& candidate : candidates) {
    if (candidate.span.start > candidate.span.end || candidate.span.end >= n) {
      throw DataError("candidate span out of bounds");
    }
  }

  std::vector<const Candidate*> sorted;
  sorted.reserve(candidates.size());
  for (const Candidate& candidate : candidates) sorted.push_back(&candidate);
  std::sort(sorted.begin(), sorted.end(),
            [](const Candidate* a, const Candidate* b) { return a->span < b->span; });

  SolutionOrder better;
  PathSolution best;  // empty selection, cost 0
  std::vector<const Candidate*> chosen;

  auto overlaps_chosen = [&](const Span& span) {
    for (const Candidate* candidate : chosen) {
      if (candidate->span.overlaps(span)) return true;
    }
    return false;
  };

  auto recurse = [&](auto&& self, std::size_t index) -> void {
    if (index == sorted.size()) {
      PathSolution solution;
      for (const Candidate* candidate : chosen) {
        solution.total_cost += candidate->cost;
        solution.phrases.push_back(candidate->span);
      }
      if (better(solution, best)) best = std::move(solution);
      return;
    }
    if (!overlaps_chosen(sorted[index]->span)) {
      chosen.push_back(sorted[index]);
      self(self, index + 1);
      chosen.pop_back();
    }
    self(self, index + 1);
  };
  recurse(recurse, 0);
  return best;
}

std::vector<Span> cscl_decode(const Classifier& classifier, const Sentence& sentence,
                              const SolverConfig& config) {
  const std::size_t n = sentence.size();
  if (n == 0) throw DataError("cannot decode an empty sentence");

  std::vector<double> open_probs(n);
  std::vector<double> close_probs(n);
  for (std::size_t t = 0; t < n; ++t) {
    StateDist dist = classifier.predict(sentence, t);
    open_probs[t] = dist[CombinedState::OPEN] + dist[CombinedState::OPENCLOSE];
    close_probs[t] = dist[CombinedState::CLOSE] + dist[CombinedState::OPENCLOSE];
  }

  std::size_t max_length =
      config.max_phrase_length == 0 ? n : config.max_phrase_length;
  std::vector<Candidate> candidates = enumerate_candidates(
      open_probs, close_probs, max_length, config.min_product, config.cost_variant);
  PathSolution solution = solve(candidates, n);
  return solution.phrases;
}

}  // namespace phraser
