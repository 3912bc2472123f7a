// Window/conjunction feature extraction. Every contiguous run of offsets of
// length 1..max_conjunction inside the window becomes one feature; keys
// encode the channel, the run's starting offset, and the symbols, so the
// same symbol at different offsets yields different features. Offsets that
// fall outside the sentence contribute a boundary symbol.

#ifndef PHRASER_FEATURES_HPP
#define PHRASER_FEATURES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "phraser/corpus.hpp"

namespace phraser {

// Sorted, duplicate-free feature keys; all weights are implicitly 1.
using FeatureVector = std::vector<std::string>;

inline constexpr const char* kBoundarySymbol = "<B>";

struct FeatureConfig {
  int window_lo = -3;  // inclusive offset range relative to the position
  int window_hi = 2;
  int max_conjunction = 3;
  bool use_words = false;

  int window_size() const { return window_hi - window_lo + 1; }

  // Throws DataError on an empty window or a conjunction limit outside
  // [1, window length].
  void validate() const;

  friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;
};

// Pure function of (sentence, position, config). Position out of range is a
// DataError.
FeatureVector extract_features(const Sentence& sentence, std::size_t position,
                               const FeatureConfig& config);

}  // namespace phraser

#endif  // PHRASER_FEATURES_HPP
