// The three classifier families that supply per-position state
// distributions: an empirical symbol table (the standard-HMM emission
// estimate), naive Bayes over window features, and a Winnow-style sparse
// multiplicative learner with sigmoid activations normalized to a
// distribution. Also the projected variant: one classifier per previous
// state, plus a sentence-initial model and an unconditioned fallback.

#ifndef PHRASER_CLASSIFIERS_HPP
#define PHRASER_CLASSIFIERS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "phraser/corpus.hpp"
#include "phraser/features.hpp"
#include "phraser/states.hpp"

namespace phraser {

enum class ClassifierFamily { EMPIRICAL, NAIVE_BAYES, SPARSE_LINEAR };

const std::string& to_string(ClassifierFamily family);
ClassifierFamily classifier_family_from_string(const std::string& name);

struct SparseLinearHyperparams {
  double promotion = 1.5;
  double demotion = 0.5;
  double sigmoid_scale = 1.0;
  double initial_weight = 1.0;
  int epochs = 5;

  // Requires promotion > 1 > demotion > 0, positive scale and initial
  // weight, epochs >= 0.
  void validate() const;
};

struct TrainOptions {
  double emission_alpha = 0.1;
  SparseLinearHyperparams sparse;
};

// One labeled position. The sentence outlives the example.
struct TrainingExample {
  const Sentence* sentence = nullptr;
  std::size_t position = 0;
  CombinedState label = CombinedState::OUTSIDE;
};

// Gold labels for every position of every sentence, in corpus order.
std::vector<TrainingExample> corpus_examples(const Corpus& corpus);

// ---------------------------------------------------------------------------
// Empirical ("simple") classifier: P(o|s) from counts over the current POS
// symbol, add-alpha smoothed over the observed vocabulary plus one unknown
// slot. Prediction inverts to P(s|o) against the state priors. Word features
// are not supported for this family.
class EmissionTable {
 public:
  EmissionTable() = default;
  EmissionTable(const std::vector<TrainingExample>& examples, double alpha);

  // Smoothed P(symbol | state); unseen symbols land in the unknown slot.
  double emission_prob(const std::string& symbol, CombinedState state) const;

  // Add-1 smoothed relative state frequency.
  double prior(CombinedState state) const;

  // P(s|o) ~ P(o|s) * prior(s), normalized. A symbol never seen in training
  // returns the prior distribution.
  StateDist predict_symbol(const std::string& symbol) const;

  double alpha() const { return alpha_; }
  std::size_t vocabulary_size() const { return counts_.size(); }
  const std::array<std::int64_t, kNumStates>& state_counts() const {
    return state_counts_;
  }
  const std::map<std::string, std::array<std::int64_t, kNumStates>>& counts() const {
    return counts_;
  }

  // Deserialization hooks used by the model codec.
  void set_alpha(double alpha) { alpha_ = alpha; }
  void add_count(const std::string& symbol, CombinedState state, std::int64_t n);

 private:
  double alpha_ = 0.1;
  std::map<std::string, std::array<std::int64_t, kNumStates>> counts_;
  std::array<std::int64_t, kNumStates> state_counts_{};  // tokens per state
};

// ---------------------------------------------------------------------------
// Multinomial naive Bayes with Laplace smoothing. Features unseen in
// training (under every state) are dropped at prediction time.
class NaiveBayesModel {
 public:
  NaiveBayesModel() = default;
  NaiveBayesModel(const std::vector<TrainingExample>& examples,
                  const FeatureConfig& config);

  // log prior(s) + sum over known features of log P(f|s); the exact
  // quantity predict() normalizes.
  std::array<double, kNumStates> log_scores(const FeatureVector& features) const;

  StateDist predict(const FeatureVector& features) const;

  const FeatureConfig& feature_config() const { return config_; }
  const std::array<std::int64_t, kNumStates>& example_counts() const {
    return example_counts_;
  }
  const std::map<std::string, std::array<std::int64_t, kNumStates>>&
  feature_counts() const {
    return feature_counts_;
  }

  void set_feature_config(const FeatureConfig& config) { config_ = config; }
  void add_example_count(CombinedState state, std::int64_t n);
  void add_feature_count(const std::string& feature, CombinedState state,
                         std::int64_t n);

 private:
  FeatureConfig config_;
  std::array<std::int64_t, kNumStates> example_counts_{};
  std::array<std::int64_t, kNumStates> token_counts_{};  // total feature tokens
  std::map<std::string, std::array<std::int64_t, kNumStates>> feature_counts_;
};

// ---------------------------------------------------------------------------
// Winner-take-all multiplicative learner. Mistake-driven training over a
// fixed example order; weights stay strictly positive. Prediction passes
// each state's activation, centered at the all-initial-weights level,
// through a sigmoid and normalizes the results to a distribution.
class SparseLinearModel {
 public:
  SparseLinearModel() = default;
  SparseLinearModel(const std::vector<TrainingExample>& examples,
                    const FeatureConfig& config,
                    const SparseLinearHyperparams& hyperparams);

  double activation(CombinedState state, const FeatureVector& features) const;

  // Argmax of activations; ties go to the lower state index.
  CombinedState predict_label(const FeatureVector& features) const;

  StateDist predict(const FeatureVector& features) const;

  const FeatureConfig& feature_config() const { return config_; }
  const SparseLinearHyperparams& hyperparams() const { return hyperparams_; }
  const std::map<std::string, std::array<double, kNumStates>>& weights() const {
    return weights_;
  }

  void set_feature_config(const FeatureConfig& config) { config_ = config; }
  void set_hyperparams(const SparseLinearHyperparams& h) { hyperparams_ = h; }
  void set_weight(const std::string& feature, CombinedState state, double weight);

 private:
  double weight(const std::string& feature, CombinedState state) const;
  void scale_weight(const std::string& feature, CombinedState state, double factor);

  FeatureConfig config_;
  SparseLinearHyperparams hyperparams_;
  // Only features touched by an update are stored; absent entries have the
  // initial weight.
  std::map<std::string, std::array<double, kNumStates>> weights_;
};

// ---------------------------------------------------------------------------
// Family-erased classifier handle used by the decoders.
class Classifier {
 public:
  Classifier() : model_(EmissionTable{}) {}
  explicit Classifier(EmissionTable model) : model_(std::move(model)) {}
  explicit Classifier(NaiveBayesModel model) : model_(std::move(model)) {}
  explicit Classifier(SparseLinearModel model) : model_(std::move(model)) {}

  ClassifierFamily family() const;

  // P(s | local context of position). Always a valid distribution.
  StateDist predict(const Sentence& sentence, std::size_t position) const;

  // As predict, but reuses an already-extracted feature vector; it must have
  // been produced with this model's feature config.
  StateDist predict_cached(const Sentence& sentence, std::size_t position,
                           const FeatureVector& features) const;

  // Feature config of the underlying model; the default config for the
  // feature-free empirical family.
  const FeatureConfig& feature_config() const;

  const EmissionTable& empirical() const;
  const NaiveBayesModel& naive_bayes() const;
  const SparseLinearModel& sparse_linear() const;

 private:
  std::variant<EmissionTable, NaiveBayesModel, SparseLinearModel> model_;
};

// Trains one classifier of the given family on gold state labels.
// EMPIRICAL rejects use_words (the symbol table has no word mode).
Classifier train_classifier(const Corpus& corpus, ClassifierFamily family,
                            const FeatureConfig& config,
                            const TrainOptions& options);

// ---------------------------------------------------------------------------
// Projected classifiers P_{s'}(s|o): examples at position t train the model
// keyed by the gold state at t-1; position-0 examples train the dedicated
// initial model. States never seen as a predecessor fall back to the
// unconditioned model at prediction time.
class ProjectedClassifier {
 public:
  ProjectedClassifier() = default;

  const Classifier& initial() const { return initial_; }
  const Classifier& fallback() const { return fallback_; }
  bool has_bucket(CombinedState prev) const;

  StateDist predict_initial(const Sentence& sentence) const;
  StateDist predict_given_prev(CombinedState prev, const Sentence& sentence,
                               std::size_t position) const;

  // One distribution per possible previous state, sharing one feature
  // extraction across the buckets.
  std::array<StateDist, kNumStates> predict_all_prev(const Sentence& sentence,
                                                     std::size_t position) const;

  // Examples routed to each previous-state bucket during training.
  const std::map<CombinedState, std::size_t>& bucket_example_counts() const {
    return bucket_sizes_;
  }

  friend ProjectedClassifier train_projected(const Corpus&, ClassifierFamily,
                                             const FeatureConfig&,
                                             const TrainOptions&);
  friend class ModelReader;

 private:
  Classifier initial_;
  Classifier fallback_;
  std::map<CombinedState, Classifier> by_prev_;
  std::map<CombinedState, std::size_t> bucket_sizes_;
};

ProjectedClassifier train_projected(const Corpus& corpus, ClassifierFamily family,
                                    const FeatureConfig& config,
                                    const TrainOptions& options);

}  // namespace phraser

#endif  // PHRASER_CLASSIFIERS_HPP
