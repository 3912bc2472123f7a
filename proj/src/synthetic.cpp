#include "phraser/synthetic.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "phraser/error.hpp"

namespace phraser {

void SyntheticConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw DataError("synthetic config: " + what);
  };
  require(mean_sentence_length >= 1.0, "mean_sentence_length must be >= 1");
  require(mean_phrase_length >= 1.0, "mean_phrase_length must be >= 1");
  require(phrase_density >= 0.0 && phrase_density <= 1.0,
          "phrase_density must be in [0,1]");
  require(noise_rate >= 0.0 && noise_rate <= 1.0, "noise_rate must be in [0,1]");
  require(outside_pos_vocab >= 1 && phrase_pos_vocab >= 1 &&
              outside_word_vocab >= 1 && phrase_word_vocab >= 1,
          "vocabulary sizes must be >= 1");
  require(!phrase_label.empty(), "phrase_label must be non-empty");
}

SyntheticConfig SyntheticConfig::from_kv(const KeyValueFile& kv) {
  SyntheticConfig config;
  config.num_sentences = kv.get_uint("sentences", config.num_sentences);
  config.mean_sentence_length =
      kv.get_double("mean_sentence_length", config.mean_sentence_length);
  config.mean_phrase_length =
      kv.get_double("mean_phrase_length", config.mean_phrase_length);
  config.phrase_density = kv.get_double("phrase_density", config.phrase_density);
  config.outside_pos_vocab = kv.get_uint("outside_pos_vocab", config.outside_pos_vocab);
  config.phrase_pos_vocab = kv.get_uint("phrase_pos_vocab", config.phrase_pos_vocab);
  config.outside_word_vocab =
      kv.get_uint("outside_word_vocab", config.outside_word_vocab);
  config.phrase_word_vocab = kv.get_uint("phrase_word_vocab", config.phrase_word_vocab);
  config.noise_rate = kv.get_double("noise_rate", config.noise_rate);
  config.seed = kv.get_uint("seed", config.seed);
  config.phrase_label = kv.get_string("phrase_label", config.phrase_label);
  kv.reject_unused();
  config.validate();
  return config;
}

SyntheticConfig SyntheticConfig::from_file(const std::string& path) {
  return from_kv(KeyValueFile::parse_file(path));
}

namespace {

// Draws are hand-rolled on top of the raw engine so corpora are byte-stable
// across standard library implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
  }

  // Geometric on {1,2,...} with the given mean, via inversion.
  std::size_t geometric(double mean) {
    if (mean <= 1.0) return 1;
    double p = 1.0 / mean;
    double u = uniform01();
    double value = std::floor(std::log1p(-u) / std::log1p(-p)) + 1.0;
    if (value < 1.0) value = 1.0;
    return static_cast<std::size_t>(value);
  }

 private:
  std::mt19937_64 engine_;
};

std::string symbol(const char* prefix, std::size_t index) {
  return std::string(prefix) + std::to_string(index);
}

}  // namespace

Corpus generate_synthetic(const SyntheticConfig& config) {
  config.validate();
  Sampler rng(config.seed);
  Corpus corpus;
  corpus.phrase_label = config.phrase_label;
  corpus.sentences.reserve(config.num_sentences);

  auto draw_token = [&](bool in_phrase) {
    bool pos_flip = rng.bernoulli(config.noise_rate);
    bool word_flip = rng.bernoulli(config.noise_rate);
    bool pos_from_phrase = in_phrase != pos_flip;
    bool word_from_phrase = in_phrase != word_flip;
    Token token;
    token.pos = pos_from_phrase
                    ? symbol("P", rng.uniform_index(config.phrase_pos_vocab))
                    : symbol("Q", rng.uniform_index(config.outside_pos_vocab));
    token.word = word_from_phrase
                     ? symbol("pw", rng.uniform_index(config.phrase_word_vocab))
                     : symbol("qw", rng.uniform_index(config.outside_word_vocab));
    return token;
  };

  for (std::size_t s = 0; s < config.num_sentences; ++s) {
    Sentence sentence;
    const std::size_t length = rng.geometric(config.mean_sentence_length);
    sentence.tokens.reserve(length);
    bool may_open = true;
    while (sentence.tokens.size() < length) {
      std::size_t position = sentence.tokens.size();
      std::size_t remaining = length - position;
      if (may_open && rng.bernoulli(config.phrase_density)) {
        std::size_t span_length =
            std::min(rng.geometric(config.mean_phrase_length), remaining);
        sentence.gold_spans.push_back(Span{position, position + span_length - 1});
        for (std::size_t k = 0; k < span_length; ++k) {
          sentence.tokens.push_back(draw_token(true));
        }
        may_open = false;  // force a gap before the next phrase
      } else {
        sentence.tokens.push_back(draw_token(false));
        may_open = true;
      }
    }
    validate_spans(sentence.gold_spans, sentence.tokens.size());
    corpus.sentences.push_back(std::move(sentence));
  }
  return corpus;
}

}  // namespace phraser
