#include "phraser/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "phraser/error.hpp"

namespace phraser {

void validate_spans(const std::vector<Span>& spans, std::size_t length) {
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const Span& span = spans[i];
    if (span.start > span.end || span.end >= length) {
      std::ostringstream msg;
      msg << "span (" << span.start << "," << span.end
          << ") out of bounds for sentence of length " << length;
      throw DataError(msg.str());
    }
    if (i > 0) {
      const Span& prev = spans[i - 1];
      if (prev.end >= span.start) {
        std::ostringstream msg;
        msg << "spans (" << prev.start << "," << prev.end << ") and ("
            << span.start << "," << span.end << ") overlap";
        throw DataError(msg.str());
      }
    }
  }
}

std::vector<Span> normalize_spans(std::vector<Span> spans, std::size_t length) {
  std::sort(spans.begin(), spans.end());
  validate_spans(spans, length);
  return spans;
}

namespace {

// Fields split on spaces/tabs; carriage returns are stripped up front.
std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream stream(line);
  std::string field;
  while (stream >> field) fields.push_back(field);
  return fields;
}

class SentenceBuilder {
 public:
  void add(const std::string& word, const std::string& pos, const std::string& tag,
           std::size_t line_number) {
    if (word.empty() || pos.empty()) {
      throw DataError(location(line_number) + "empty word or POS field");
    }
    std::size_t position = sentence_.tokens.size();
    if (tag == "B") {
      close_open_span(position);
      open_start_ = position;
      in_span_ = true;
    } else if (tag == "I") {
      if (!in_span_) {
        throw DataError(location(line_number) + "I tag with no preceding B or I");
      }
    } else if (tag == "O") {
      close_open_span(position);
    } else {
      throw DataError(location(line_number) + "unknown tag '" + tag +
                      "' (expected B, I, or O)");
    }
    sentence_.tokens.push_back(Token{word, pos});
  }

  bool empty() const { return sentence_.tokens.empty(); }

  Sentence take() {
    close_open_span(sentence_.tokens.size());
    sentence_.gold_spans =
        normalize_spans(std::move(sentence_.gold_spans), sentence_.tokens.size());
    Sentence done = std::move(sentence_);
    sentence_ = Sentence{};
    return done;
  }

 private:
  static std::string location(std::size_t line_number) {
    return "line " + std::to_string(line_number) + ": ";
  }

  void close_open_span(std::size_t position) {
    if (in_span_) {
      sentence_.gold_spans.push_back(Span{open_start_, position - 1});
      in_span_ = false;
    }
  }

  Sentence sentence_;
  bool in_span_ = false;
  std::size_t open_start_ = 0;
};

}  // namespace

Corpus parse_corpus(std::istream& input, const std::string& phrase_label) {
  Corpus corpus;
  corpus.phrase_label = phrase_label;
  SentenceBuilder builder;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields = split_fields(line);
    if (fields.empty()) {
      if (!builder.empty()) corpus.sentences.push_back(builder.take());
      continue;
    }
    if (fields.size() != 3) {
      std::ostringstream msg;
      msg << "line " << line_number << ": expected 3 columns (WORD POS TAG), got "
          << fields.size();
      throw DataError(msg.str());
    }
    builder.add(fields[0], fields[1], fields[2], line_number);
  }
  if (!builder.empty()) corpus.sentences.push_back(builder.take());
  return corpus;
}

Corpus parse_corpus_file(const std::string& path, const std::string& phrase_label) {
  std::ifstream file(path);
  if (!file) throw DataError("cannot open corpus file: " + path);
  return parse_corpus(file, phrase_label);
}

void write_corpus(std::ostream& output, const Corpus& corpus) {
  for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
    const Sentence& sentence = corpus.sentences[i];
    validate_spans(sentence.gold_spans, sentence.tokens.size());
    std::vector<char> tags(sentence.tokens.size(), 'O');
    for (const Span& span : sentence.gold_spans) {
      tags[span.start] = 'B';
      for (std::size_t t = span.start + 1; t <= span.end; ++t) tags[t] = 'I';
    }
    for (std::size_t t = 0; t < sentence.tokens.size(); ++t) {
      output << sentence.tokens[t].word << ' ' << sentence.tokens[t].pos << ' '
             << tags[t] << '\n';
    }
    if (i + 1 < corpus.sentences.size()) output << '\n';
  }
}

void write_corpus_file(const std::string& path, const Corpus& corpus) {
  std::ofstream file(path);
  if (!file) throw DataError("cannot open output file: " + path);
  write_corpus(file, corpus);
  if (!file) throw DataError("failed writing corpus file: " + path);
}

}  // namespace phraser
