#include "phraser/features.hpp"

#include <algorithm>
#include <sstream>

#include "phraser/error.hpp"

namespace phraser {

void FeatureConfig::validate() const {
  if (window_lo > window_hi) {
    throw DataError("feature window is empty");
  }
  if (max_conjunction < 1 || max_conjunction > window_size()) {
    std::ostringstream msg;
    msg << "max_conjunction " << max_conjunction << " outside [1, "
        << window_size() << "]";
    throw DataError(msg.str());
  }
}

namespace {

// channel is "p" (POS) or "w" (word).
void emit_channel(const Sentence& sentence, std::size_t position,
                  const FeatureConfig& config, const char* channel,
                  bool words, FeatureVector* out) {
  const int length = static_cast<int>(sentence.size());
  const int center = static_cast<int>(position);

  std::vector<const std::string*> window;
  static const std::string boundary = kBoundarySymbol;
  for (int offset = config.window_lo; offset <= config.window_hi; ++offset) {
    int index = center + offset;
    if (index < 0 || index >= length) {
      window.push_back(&boundary);
    } else {
      const Token& token = sentence.tokens[static_cast<std::size_t>(index)];
      window.push_back(words ? &token.word : &token.pos);
    }
  }

  const int window_size = config.window_size();
  for (int run = 1; run <= config.max_conjunction; ++run) {
    for (int start = 0; start + run <= window_size; ++start) {
      std::string key = channel;
      key += ':';
      key += std::to_string(config.window_lo + start);
      key += ':';
      for (int k = 0; k < run; ++k) {
        if (k > 0) key += '|';
        key += *window[static_cast<std::size_t>(start + k)];
      }
      out->push_back(std::move(key));
    }
  }
}

}  // namespace

FeatureVector extract_features(const Sentence& sentence, std::size_t position,
                               const FeatureConfig& config) {
  config.validate();
  if (position >= sentence.size()) {
    std::ostringstream msg;
    msg << "position " << position << " out of range for sentence of length "
        << sentence.size();
    throw DataError(msg.str());
  }
  FeatureVector features;
  emit_channel(sentence, position, config, "p", false, &features);
  if (config.use_words) {
    emit_channel(sentence, position, config, "w", true, &features);
  }
  std::sort(features.begin(), features.end());
  features.erase(std::unique(features.begin(), features.end()), features.end());
  return features;
}

}  // namespace phraser
