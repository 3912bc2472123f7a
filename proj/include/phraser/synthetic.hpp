// Seeded synthetic corpus generation. Sentences alternate outside runs and
// phrases; phrase and outside tokens draw POS/word symbols from disjoint
// vocabularies, with each channel independently flipped to the other
// vocabulary at the noise rate. At noise 0 the phrase structure is therefore
// recoverable from local context alone. Phrases never abut: at least one
// outside token follows every phrase, so open/close positions stay locally
// identifiable.

#ifndef PHRASER_SYNTHETIC_HPP
#define PHRASER_SYNTHETIC_HPP

#include <cstdint>
#include <string>

#include "phraser/corpus.hpp"
#include "phraser/kvconfig.hpp"

namespace phraser {

struct SyntheticConfig {
  std::size_t num_sentences = 100;
  double mean_sentence_length = 15.0;  // geometric on {1,2,...}
  double mean_phrase_length = 2.0;     // geometric, truncated at sentence end
  double phrase_density = 0.3;         // chance an eligible position opens a phrase
  std::size_t outside_pos_vocab = 12;
  std::size_t phrase_pos_vocab = 12;
  std::size_t outside_word_vocab = 36;
  std::size_t phrase_word_vocab = 36;
  double noise_rate = 0.0;
  std::uint64_t seed = 1;
  std::string phrase_label = "NP";

  void validate() const;  // DataError on out-of-range parameters

  // Keys: sentences, mean_sentence_length, mean_phrase_length,
  // phrase_density, outside_pos_vocab, phrase_pos_vocab, outside_word_vocab,
  // phrase_word_vocab, noise_rate, seed, phrase_label.
  static SyntheticConfig from_kv(const KeyValueFile& kv);
  static SyntheticConfig from_file(const std::string& path);
};

// Deterministic for a given config (the seed included); bit-identical
// corpora on repeated calls.
Corpus generate_synthetic(const SyntheticConfig& config);

}  // namespace phraser

#endif  // PHRASER_SYNTHETIC_HPP
