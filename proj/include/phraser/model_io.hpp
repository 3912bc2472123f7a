// Versioned text serialization for trained models. The format is line
// oriented and TAB separated: a header of key/value pairs, a transitions
// section of raw counts, then one or more model sections of sorted
// state/feature/value records. Counts are integers and weights are printed
// with 17 significant digits, so files are diffable and byte-stable across
// save/load cycles.

#ifndef PHRASER_MODEL_IO_HPP
#define PHRASER_MODEL_IO_HPP

#include <iosfwd>
#include <string>

#include "phraser/classifiers.hpp"
#include "phraser/markov.hpp"

namespace phraser {

struct ModelBundle {
  std::string phrase_label = "NP";
  ClassifierFamily family = ClassifierFamily::NAIVE_BAYES;
  FeatureConfig feature_config;
  TrainOptions options;
  double transition_alpha = 0.1;
  TransitionCounts transition_counts;

  bool projected = false;
  Classifier classifier;                     // when !projected
  ProjectedClassifier projected_classifier;  // when projected

  TransitionTable transitions() const {
    return TransitionTable::from_counts(transition_counts, transition_alpha);
  }
};

// Trains the classifier (projected or not) and the transition counts.
ModelBundle train_model(const Corpus& corpus, ClassifierFamily family,
                        const FeatureConfig& config, const TrainOptions& options,
                        double transition_alpha, bool projected);

void save_model(std::ostream& out, const ModelBundle& bundle);
void save_model_file(const std::string& path, const ModelBundle& bundle);

ModelBundle load_model(std::istream& in, const std::string& origin);
ModelBundle load_model_file(const std::string& path);

}  // namespace phraser

#endif  // PHRASER_MODEL_IO_HPP
