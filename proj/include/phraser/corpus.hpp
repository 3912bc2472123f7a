// Corpus types and the column-file codec. One token per line as
// "WORD POS TAG" with TAG in {B, I, O}; a blank line ends a sentence.

#ifndef PHRASER_CORPUS_HPP
#define PHRASER_CORPUS_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace phraser {

struct Token {
  std::string word;
  std::string pos;
};

// Inclusive token index range [start, end] within one sentence.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start + 1; }
  bool overlaps(const Span& other) const {
    return start <= other.end && other.start <= end;
  }
  friend bool operator==(const Span&, const Span&) = default;
  friend auto operator<=>(const Span&, const Span&) = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::vector<Span> gold_spans;  // sorted, pairwise non-overlapping

  std::size_t size() const { return tokens.size(); }
};

struct Corpus {
  std::vector<Sentence> sentences;
  std::string phrase_label = "NP";
};

// Throws DataError unless the spans are sorted, in bounds for a sentence of
// `length` tokens, and pairwise non-overlapping.
void validate_spans(const std::vector<Span>& spans, std::size_t length);

// Sorts, then validates. Every construction path for gold or predicted
// spans goes through here.
std::vector<Span> normalize_spans(std::vector<Span> spans, std::size_t length);

// Reads the column format. Errors carry 1-based line numbers. An I tag with
// no open B/I run, a bad column count, or an unknown tag is a DataError.
Corpus parse_corpus(std::istream& input, const std::string& phrase_label);
Corpus parse_corpus_file(const std::string& path, const std::string& phrase_label);

// Inverse of parse_corpus; normalized input round-trips byte for byte.
void write_corpus(std::ostream& output, const Corpus& corpus);
void write_corpus_file(const std::string& path, const Corpus& corpus);

}  // namespace phraser

#endif  // PHRASER_CORPUS_HPP
