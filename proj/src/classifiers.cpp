#include "phraser/classifiers.hpp"

#include <algorithm>
#include <cmath>

#include "phraser/error.hpp"

namespace phraser {

namespace {

const std::array<std::string, 3> kFamilyNames = {"simple", "nb", "sparse"};

StateDist normalized_from_array(const std::array<double, kNumStates>& values) {
  StateDist dist;
  dist.p = values;
  dist.normalize();
  return dist;
}

StateDist normalized_from_log(const std::array<double, kNumStates>& log_values) {
  double max_log = *std::max_element(log_values.begin(), log_values.end());
  StateDist dist;
  for (std::size_t i = 0; i < kNumStates; ++i) {
    dist.p[i] = std::exp(log_values[i] - max_log);
  }
  dist.normalize();
  return dist;
}

void require_nonempty(const std::vector<TrainingExample>& examples) {
  if (examples.empty()) {
    throw DataError("cannot train a classifier on an empty corpus");
  }
}

}  // namespace

const std::string& to_string(ClassifierFamily family) {
  return kFamilyNames[static_cast<std::size_t>(family)];
}

ClassifierFamily classifier_family_from_string(const std::string& name) {
  if (name == "simple") return ClassifierFamily::EMPIRICAL;
  if (name == "nb") return ClassifierFamily::NAIVE_BAYES;
  if (name == "sparse") return ClassifierFamily::SPARSE_LINEAR;
  throw DataError("unknown classifier family: " + name +
                  " (expected simple, nb, or sparse)");
}

void SparseLinearHyperparams::validate() const {
  if (!(promotion > 1.0) || !(demotion > 0.0) || !(demotion < 1.0)) {
    throw DataError("sparse hyperparameters need promotion > 1 > demotion > 0");
  }
  if (!(sigmoid_scale > 0.0) || !(initial_weight > 0.0)) {
    throw DataError("sparse sigmoid scale and initial weight must be positive");
  }
  if (epochs < 0) {
    throw DataError("sparse epoch count must be non-negative");
  }
}

std::vector<TrainingExample> corpus_examples(const Corpus& corpus) {
  std::vector<TrainingExample> examples;
  for (const Sentence& sentence : corpus.sentences) {
    std::vector<CombinedState> states =
        spans_to_states(sentence.gold_spans, sentence.size());
    for (std::size_t t = 0; t < sentence.size(); ++t) {
      examples.push_back(TrainingExample{&sentence, t, states[t]});
    }
  }
  return examples;
}

// ---------------------------------------------------------------------------
// EmissionTable

EmissionTable::EmissionTable(const std::vector<TrainingExample>& examples,
                             double alpha)
    : alpha_(alpha) {
  require_nonempty(examples);
  if (!(alpha >= 0.0)) throw DataError("smoothing alpha must be non-negative");
  for (const TrainingExample& example : examples) {
    add_count(example.sentence->tokens[example.position].pos, example.label, 1);
  }
}

void EmissionTable::add_count(const std::string& symbol, CombinedState state,
                              std::int64_t n) {
  counts_[symbol][index_of(state)] += n;
  state_counts_[index_of(state)] += n;
}

double EmissionTable::emission_prob(const std::string& symbol,
                                    CombinedState state) const {
  auto it = counts_.find(symbol);
  double count = it == counts_.end()
                     ? 0.0
                     : static_cast<double>(it->second[index_of(state)]);
  // +1 in the denominator reserves mass for the unknown symbol.
  double denom = static_cast<double>(state_counts_[index_of(state)]) +
                 alpha_ * static_cast<double>(counts_.size() + 1);
  if (denom <= 0.0) return 0.0;
  return (count + alpha_) / denom;
}

double EmissionTable::prior(CombinedState state) const {
  std::int64_t total = 0;
  for (std::int64_t c : state_counts_) total += c;
  return (static_cast<double>(state_counts_[index_of(state)]) + 1.0) /
         (static_cast<double>(total) + static_cast<double>(kNumStates));
}

StateDist EmissionTable::predict_symbol(const std::string& symbol) const {
  std::array<double, kNumStates> priors{};
  for (CombinedState s : kAllStates) priors[index_of(s)] = prior(s);
  if (counts_.find(symbol) == counts_.end()) {
    return normalized_from_array(priors);
  }
  std::array<double, kNumStates> scores{};
  for (CombinedState s : kAllStates) {
    scores[index_of(s)] = priors[index_of(s)] * emission_prob(symbol, s);
  }
  double total = 0.0;
  for (double v : scores) total += v;
  if (!(total > 0.0)) {
    // Possible with alpha = 0 when the symbol's states all have zero counts.
    return normalized_from_array(priors);
  }
  return normalized_from_array(scores);
}

// ---------------------------------------------------------------------------
// NaiveBayesModel

NaiveBayesModel::NaiveBayesModel(const std::vector<TrainingExample>& examples,
                                 const FeatureConfig& config)
    : config_(config) {
  config.validate();
  require_nonempty(examples);
  for (const TrainingExample& example : examples) {
    add_example_count(example.label, 1);
    FeatureVector features =
        extract_features(*example.sentence, example.position, config);
    for (const std::string& feature : features) {
      add_feature_count(feature, example.label, 1);
    }
  }
}

void NaiveBayesModel::add_example_count(CombinedState state, std::int64_t n) {
  example_counts_[index_of(state)] += n;
}

void NaiveBayesModel::add_feature_count(const std::string& feature,
                                        CombinedState state, std::int64_t n) {
  feature_counts_[feature][index_of(state)] += n;
  token_counts_[index_of(state)] += n;
}

std::array<double, kNumStates> NaiveBayesModel::log_scores(
    const FeatureVector& features) const {
  std::int64_t total_examples = 0;
  for (std::int64_t c : example_counts_) total_examples += c;
  const double vocabulary = static_cast<double>(feature_counts_.size());

  std::array<double, kNumStates> scores{};
  for (std::size_t s = 0; s < kNumStates; ++s) {
    scores[s] = std::log(
        (static_cast<double>(example_counts_[s]) + 1.0) /
        (static_cast<double>(total_examples) + static_cast<double>(kNumStates)));
  }
  for (const std::string& feature : features) {
    auto it = feature_counts_.find(feature);
    if (it == feature_counts_.end()) continue;  // unseen anywhere: dropped
    for (std::size_t s = 0; s < kNumStates; ++s) {
      scores[s] += std::log((static_cast<double>(it->second[s]) + 1.0) /
                            (static_cast<double>(token_counts_[s]) + vocabulary));
    }
  }
  return scores;
}

StateDist NaiveBayesModel::predict(const FeatureVector& features) const {
  return normalized_from_log(log_scores(features));
}

// ---------------------------------------------------------------------------
// SparseLinearModel

SparseLinearModel::SparseLinearModel(const std::vector<TrainingExample>& examples,
                                     const FeatureConfig& config,
                                     const SparseLinearHyperparams& hyperparams)
    : config_(config), hyperparams_(hyperparams) {
  config.validate();
  hyperparams.validate();
  require_nonempty(examples);

  std::vector<FeatureVector> feature_cache;
  feature_cache.reserve(examples.size());
  for (const TrainingExample& example : examples) {
    feature_cache.push_back(
        extract_features(*example.sentence, example.position, config));
  }

  for (int epoch = 0; epoch < hyperparams_.epochs; ++epoch) {
    for (std::size_t i = 0; i < examples.size(); ++i) {
      const FeatureVector& features = feature_cache[i];
      CombinedState predicted = predict_label(features);
      CombinedState gold = examples[i].label;
      if (predicted == gold) continue;
      for (const std::string& feature : features) {
        scale_weight(feature, gold, hyperparams_.promotion);
        scale_weight(feature, predicted, hyperparams_.demotion);
      }
    }
  }
}

double SparseLinearModel::weight(const std::string& feature,
                                 CombinedState state) const {
  auto it = weights_.find(feature);
  if (it == weights_.end()) return hyperparams_.initial_weight;
  return it->second[index_of(state)];
}

void SparseLinearModel::scale_weight(const std::string& feature,
                                     CombinedState state, double factor) {
  auto it = weights_.find(feature);
  if (it == weights_.end()) {
    auto inserted = weights_.emplace(feature, std::array<double, kNumStates>{});
    inserted.first->second.fill(hyperparams_.initial_weight);
    it = inserted.first;
  }
  it->second[index_of(state)] *= factor;
}

void SparseLinearModel::set_weight(const std::string& feature, CombinedState state,
                                   double value) {
  auto it = weights_.find(feature);
  if (it == weights_.end()) {
    auto inserted = weights_.emplace(feature, std::array<double, kNumStates>{});
    inserted.first->second.fill(hyperparams_.initial_weight);
    it = inserted.first;
  }
  it->second[index_of(state)] = value;
}

double SparseLinearModel::activation(CombinedState state,
                                     const FeatureVector& features) const {
  double total = 0.0;
  for (const std::string& feature : features) total += weight(feature, state);
  return total;
}

CombinedState SparseLinearModel::predict_label(const FeatureVector& features) const {
  CombinedState best = CombinedState::OUTSIDE;
  double best_activation = -1.0;
  for (CombinedState s : kAllStates) {
    double a = activation(s, features);
    if (a > best_activation) {
      best_activation = a;
      best = s;
    }
  }
  return best;
}

StateDist SparseLinearModel::predict(const FeatureVector& features) const {
  // Centering at the all-initial-weights activation makes an untrained model
  // (and fully unknown input) come out uniform.
  const double center =
      static_cast<double>(features.size()) * hyperparams_.initial_weight;
  std::array<double, kNumStates> scores{};
  for (CombinedState s : kAllStates) {
    double z = hyperparams_.sigmoid_scale * (activation(s, features) - center);
    scores[index_of(s)] = 1.0 / (1.0 + std::exp(-z));
  }
  return normalized_from_array(scores);
}

// ---------------------------------------------------------------------------
// Classifier

ClassifierFamily Classifier::family() const {
  if (std::holds_alternative<EmissionTable>(model_)) return ClassifierFamily::EMPIRICAL;
  if (std::holds_alternative<NaiveBayesModel>(model_)) {
    return ClassifierFamily::NAIVE_BAYES;
  }
  return ClassifierFamily::SPARSE_LINEAR;
}

StateDist Classifier::predict(const Sentence& sentence, std::size_t position) const {
  if (position >= sentence.size()) {
    throw DataError("prediction position out of range");
  }
  if (std::holds_alternative<EmissionTable>(model_)) {
    return std::get<EmissionTable>(model_).predict_symbol(
        sentence.tokens[position].pos);
  }
  return predict_cached(sentence, position,
                        extract_features(sentence, position, feature_config()));
}

StateDist Classifier::predict_cached(const Sentence& sentence, std::size_t position,
                                     const FeatureVector& features) const {
  if (position >= sentence.size()) {
    throw DataError("prediction position out of range");
  }
  if (const auto* empirical = std::get_if<EmissionTable>(&model_)) {
    return empirical->predict_symbol(sentence.tokens[position].pos);
  }
  if (const auto* nb = std::get_if<NaiveBayesModel>(&model_)) {
    return nb->predict(features);
  }
  return std::get<SparseLinearModel>(model_).predict(features);
}

const FeatureConfig& Classifier::feature_config() const {
  static const FeatureConfig empirical_config;
  if (const auto* nb = std::get_if<NaiveBayesModel>(&model_)) {
    return nb->feature_config();
  }
  if (const auto* sparse = std::get_if<SparseLinearModel>(&model_)) {
    return sparse->feature_config();
  }
  return empirical_config;
}

const EmissionTable& Classifier::empirical() const {
  if (!std::holds_alternative<EmissionTable>(model_)) {
    throw InternalError("classifier is not the empirical family");
  }
  return std::get<EmissionTable>(model_);
}

const NaiveBayesModel& Classifier::naive_bayes() const {
  if (!std::holds_alternative<NaiveBayesModel>(model_)) {
    throw InternalError("classifier is not the naive Bayes family");
  }
  return std::get<NaiveBayesModel>(model_);
}

const SparseLinearModel& Classifier::sparse_linear() const {
  if (!std::holds_alternative<SparseLinearModel>(model_)) {
    throw InternalError("classifier is not the sparse linear family");
  }
  return std::get<SparseLinearModel>(model_);
}

namespace {

Classifier train_on_examples(const std::vector<TrainingExample>& examples,
                             ClassifierFamily family, const FeatureConfig& config,
                             const TrainOptions& options) {
  switch (family) {
    case ClassifierFamily::EMPIRICAL:
      if (config.use_words) {
        throw DataError("the simple classifier has no word mode");
      }
      return Classifier(EmissionTable(examples, options.emission_alpha));
    case ClassifierFamily::NAIVE_BAYES:
      return Classifier(NaiveBayesModel(examples, config));
    case ClassifierFamily::SPARSE_LINEAR:
      return Classifier(SparseLinearModel(examples, config, options.sparse));
  }
  throw InternalError("unreachable classifier family");
}

}  // namespace

Classifier train_classifier(const Corpus& corpus, ClassifierFamily family,
                            const FeatureConfig& config,
                            const TrainOptions& options) {
  if (corpus.sentences.empty()) {
    throw DataError("cannot train a classifier on an empty corpus");
  }
  return train_on_examples(corpus_examples(corpus), family, config, options);
}

// ---------------------------------------------------------------------------
// ProjectedClassifier

bool ProjectedClassifier::has_bucket(CombinedState prev) const {
  return by_prev_.count(prev) != 0;
}

StateDist ProjectedClassifier::predict_initial(const Sentence& sentence) const {
  return initial_.predict(sentence, 0);
}

StateDist ProjectedClassifier::predict_given_prev(CombinedState prev,
                                                  const Sentence& sentence,
                                                  std::size_t position) const {
  auto it = by_prev_.find(prev);
  if (it == by_prev_.end()) return fallback_.predict(sentence, position);
  return it->second.predict(sentence, position);
}

std::array<StateDist, kNumStates> ProjectedClassifier::predict_all_prev(
    const Sentence& sentence, std::size_t position) const {
  FeatureVector features =
      extract_features(sentence, position, fallback_.feature_config());
  std::array<StateDist, kNumStates> result;
  for (CombinedState prev : kAllStates) {
    auto it = by_prev_.find(prev);
    const Classifier& model = it == by_prev_.end() ? fallback_ : it->second;
    result[index_of(prev)] = model.predict_cached(sentence, position, features);
  }
  return result;
}

ProjectedClassifier train_projected(const Corpus& corpus, ClassifierFamily family,
                                    const FeatureConfig& config,
                                    const TrainOptions& options) {
  if (corpus.sentences.empty()) {
    throw DataError("cannot train a classifier on an empty corpus");
  }
  std::vector<TrainingExample> all = corpus_examples(corpus);

  std::vector<TrainingExample> initial;
  std::map<CombinedState, std::vector<TrainingExample>> buckets;
  for (const Sentence& sentence : corpus.sentences) {
    std::vector<CombinedState> states =
        spans_to_states(sentence.gold_spans, sentence.size());
    for (std::size_t t = 0; t < sentence.size(); ++t) {
      TrainingExample example{&sentence, t, states[t]};
      if (t == 0) {
        initial.push_back(example);
      } else {
        buckets[states[t - 1]].push_back(example);
      }
    }
  }

  ProjectedClassifier projected;
  projected.initial_ = train_on_examples(initial, family, config, options);
  projected.fallback_ = train_on_examples(all, family, config, options);
  for (const auto& [prev, examples] : buckets) {
    projected.by_prev_.emplace(prev,
                               train_on_examples(examples, family, config, options));
    projected.bucket_sizes_[prev] = examples.size();
  }
  return projected;
}

}  // namespace phraser
