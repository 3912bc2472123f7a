#include "phraser/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "phraser/error.hpp"

namespace phraser {

namespace {

constexpr const char* kMagic = "phraser-model";
constexpr int kVersion = 1;

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

double parse_double(const std::string& text, const std::string& context) {
  try {
    std::size_t consumed = 0;
    double value = std::stod(text, &consumed);
    if (consumed != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw DataError(context + ": bad number '" + text + "'");
  }
}

std::int64_t parse_int(const std::string& text, const std::string& context) {
  try {
    std::size_t consumed = 0;
    std::int64_t value = std::stoll(text, &consumed);
    if (consumed != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw DataError(context + ": bad integer '" + text + "'");
  }
}

void write_header_line(std::ostream& out, const std::string& key,
                       const std::string& value) {
  out << key << '\t' << value << '\n';
}

void save_classifier_records(std::ostream& out, const Classifier& classifier) {
  switch (classifier.family()) {
    case ClassifierFamily::EMPIRICAL: {
      const EmissionTable& table = classifier.empirical();
      for (CombinedState s : kAllStates) {
        for (const auto& [symbol, counts] : table.counts()) {
          std::int64_t count = counts[index_of(s)];
          if (count == 0) continue;
          out << "emit\t" << to_string(s) << '\t' << symbol << '\t' << count << '\n';
        }
      }
      break;
    }
    case ClassifierFamily::NAIVE_BAYES: {
      const NaiveBayesModel& model = classifier.naive_bayes();
      for (CombinedState s : kAllStates) {
        std::int64_t count = model.example_counts()[index_of(s)];
        if (count == 0) continue;
        out << "examples\t" << to_string(s) << '\t' << count << '\n';
      }
      for (CombinedState s : kAllStates) {
        for (const auto& [feature, counts] : model.feature_counts()) {
          std::int64_t count = counts[index_of(s)];
          if (count == 0) continue;
          out << "feat\t" << to_string(s) << '\t' << feature << '\t' << count << '\n';
        }
      }
      break;
    }
    case ClassifierFamily::SPARSE_LINEAR: {
      const SparseLinearModel& model = classifier.sparse_linear();
      const double initial = model.hyperparams().initial_weight;
      for (CombinedState s : kAllStates) {
        for (const auto& [feature, weights] : model.weights()) {
          double weight = weights[index_of(s)];
          if (weight == initial) continue;
          out << "weight\t" << to_string(s) << '\t' << feature << '\t'
              << format_double(weight) << '\n';
        }
      }
      break;
    }
  }
}

void save_model_section(std::ostream& out, const std::string& name,
                        const Classifier& classifier) {
  out << "begin\tmodel\t" << name << '\n';
  save_classifier_records(out, classifier);
  out << "end\tmodel\n";
}

}  // namespace

ModelBundle train_model(const Corpus& corpus, ClassifierFamily family,
                        const FeatureConfig& config, const TrainOptions& options,
                        double transition_alpha, bool projected) {
  if (corpus.sentences.empty()) {
    throw DataError("cannot train a model on an empty corpus");
  }
  ModelBundle bundle;
  bundle.phrase_label = corpus.phrase_label;
  bundle.family = family;
  bundle.feature_config = config;
  bundle.options = options;
  bundle.transition_alpha = transition_alpha;
  bundle.transition_counts = count_transitions(corpus);
  bundle.projected = projected;
  if (projected) {
    bundle.projected_classifier = train_projected(corpus, family, config, options);
  } else {
    bundle.classifier = train_classifier(corpus, family, config, options);
  }
  return bundle;
}

void save_model(std::ostream& out, const ModelBundle& bundle) {
  out << kMagic << '\t' << kVersion << '\n';
  write_header_line(out, "label", bundle.phrase_label);
  write_header_line(out, "family", to_string(bundle.family));
  write_header_line(out, "projected", bundle.projected ? "1" : "0");
  write_header_line(out, "window_lo", std::to_string(bundle.feature_config.window_lo));
  write_header_line(out, "window_hi", std::to_string(bundle.feature_config.window_hi));
  write_header_line(out, "max_conjunction",
                    std::to_string(bundle.feature_config.max_conjunction));
  write_header_line(out, "use_words", bundle.feature_config.use_words ? "1" : "0");
  write_header_line(out, "emission_alpha",
                    format_double(bundle.options.emission_alpha));
  write_header_line(out, "transition_alpha", format_double(bundle.transition_alpha));
  const SparseLinearHyperparams& sparse = bundle.options.sparse;
  write_header_line(out, "sparse_promotion", format_double(sparse.promotion));
  write_header_line(out, "sparse_demotion", format_double(sparse.demotion));
  write_header_line(out, "sparse_scale", format_double(sparse.sigmoid_scale));
  write_header_line(out, "sparse_initial", format_double(sparse.initial_weight));
  write_header_line(out, "sparse_epochs", std::to_string(sparse.epochs));

  out << "begin\ttransitions\n";
  for (CombinedState s : kAllStates) {
    std::int64_t count = bundle.transition_counts.initial[index_of(s)];
    if (count == 0) continue;
    out << "init\t" << to_string(s) << '\t' << count << '\n';
  }
  for (CombinedState from : kAllStates) {
    for (CombinedState to : kAllStates) {
      std::int64_t count = bundle.transition_counts.bigram[index_of(from)][index_of(to)];
      if (count == 0) continue;
      out << "bigram\t" << to_string(from) << '\t' << to_string(to) << '\t' << count
          << '\n';
    }
  }
  out << "end\ttransitions\n";

  if (!bundle.projected) {
    save_model_section(out, "main", bundle.classifier);
  } else {
    const ProjectedClassifier& projected = bundle.projected_classifier;
    save_model_section(out, "initial", projected.initial());
    save_model_section(out, "fallback", projected.fallback());
    for (const auto& [prev, count] : projected.bucket_example_counts()) {
      write_header_line(out, "bucket_size",
                        to_string(prev) + "\t" + std::to_string(count));
    }
    for (CombinedState prev : kAllStates) {
      if (!projected.has_bucket(prev)) continue;
      // predict_given_prev falls back for missing buckets; only trained ones
      // are stored.
      save_model_section(out, "prev:" + to_string(prev),
                         projected.predict_bucket_for_io(prev));
    }
  }
}

void save_model_file(const std::string& path, const ModelBundle& bundle) {
  std::ofstream file(path);
  if (!file) throw DataError("cannot open model file for writing: " + path);
  save_model(file, bundle);
  if (!file) throw DataError("failed writing model file: " + path);
}

// ---------------------------------------------------------------------------
// Loading

class ModelReader {
 public:
  ModelReader(std::istream& in, std::string origin)
      : in_(in), origin_(std::move(origin)) {}

  ModelBundle read() {
    expect_magic();
    read_header();
    read_transitions();
    read_model_sections();
    finish();
    return std::move(bundle_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream msg;
    msg << origin_ << " line " << line_number_ << ": " << what;
    throw DataError(msg.str());
  }

  bool next_line(std::vector<std::string>* fields) {
    std::string line;
    if (!std::getline(in_, line)) return false;
    ++line_number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    fields->clear();
    std::size_t begin = 0;
    while (begin <= line.size()) {
      std::size_t tab = line.find('\t', begin);
      if (tab == std::string::npos) {
        fields->push_back(line.substr(begin));
        break;
      }
      fields->push_back(line.substr(begin, tab - begin));
      begin = tab + 1;
    }
    return true;
  }

  void expect_magic() {
    std::vector<std::string> fields;
    if (!next_line(&fields) || fields.size() != 2 || fields[0] != kMagic) {
      fail("not a phraser model file");
    }
    if (parse_int(fields[1], origin_) != kVersion) {
      fail("unsupported model version " + fields[1]);
    }
  }

  void read_header() {
    std::vector<std::string> fields;
    while (next_line(&fields)) {
      if (fields.size() >= 2 && fields[0] == "begin" && fields[1] == "transitions") {
        return;
      }
      if (fields.size() == 1 && fields[0].empty()) continue;
      if (fields.size() != 2) fail("expected 'key<TAB>value' in the header");
      apply_header(fields[0], fields[1]);
    }
    fail("missing transitions section");
  }

  void apply_header(const std::string& key, const std::string& value) {
    if (key == "label") {
      bundle_.phrase_label = value;
    } else if (key == "family") {
      bundle_.family = classifier_family_from_string(value);
    } else if (key == "projected") {
      bundle_.projected = value == "1";
    } else if (key == "window_lo") {
      bundle_.feature_config.window_lo = static_cast<int>(parse_int(value, origin_));
    } else if (key == "window_hi") {
      bundle_.feature_config.window_hi = static_cast<int>(parse_int(value, origin_));
    } else if (key == "max_conjunction") {
      bundle_.feature_config.max_conjunction =
          static_cast<int>(parse_int(value, origin_));
    } else if (key == "use_words") {
      bundle_.feature_config.use_words = value == "1";
    } else if (key == "emission_alpha") {
      bundle_.options.emission_alpha = parse_double(value, origin_);
    } else if (key == "transition_alpha") {
      bundle_.transition_alpha = parse_double(value, origin_);
    } else if (key == "sparse_promotion") {
      bundle_.options.sparse.promotion = parse_double(value, origin_);
    } else if (key == "sparse_demotion") {
      bundle_.options.sparse.demotion = parse_double(value, origin_);
    } else if (key == "sparse_scale") {
      bundle_.options.sparse.sigmoid_scale = parse_double(value, origin_);
    } else if (key == "sparse_initial") {
      bundle_.options.sparse.initial_weight = parse_double(value, origin_);
    } else if (key == "sparse_epochs") {
      bundle_.options.sparse.epochs = static_cast<int>(parse_int(value, origin_));
    } else {
      fail("unknown header key '" + key + "'");
    }
  }

  void read_transitions() {
    std::vector<std::string> fields;
    while (next_line(&fields)) {
      if (fields.size() == 2 && fields[0] == "end" && fields[1] == "transitions") {
        return;
      }
      if (fields.size() == 3 && fields[0] == "init") {
        bundle_.transition_counts.initial[index_of(
            combined_state_from_string(fields[1]))] = parse_int(fields[2], origin_);
      } else if (fields.size() == 4 && fields[0] == "bigram") {
        bundle_.transition_counts
            .bigram[index_of(combined_state_from_string(fields[1]))]
                   [index_of(combined_state_from_string(fields[2]))] =
            parse_int(fields[3], origin_);
      } else {
        fail("bad transitions record");
      }
    }
    fail("unterminated transitions section");
  }

  void read_model_sections() {
    std::vector<std::string> fields;
    while (next_line(&fields)) {
      if (fields.size() == 1 && fields[0].empty()) continue;
      if (fields.size() == 3 && fields[0] == "bucket_size") {
        bundle_.projected_classifier.bucket_sizes_[combined_state_from_string(
            fields[1])] = static_cast<std::size_t>(parse_int(fields[2], origin_));
        continue;
      }
      if (fields.size() != 3 || fields[0] != "begin" || fields[1] != "model") {
        fail("expected a model section");
      }
      std::string name = fields[2];
      Classifier classifier = read_one_model();
      if (name == "main") {
        if (bundle_.projected) fail("'main' section in a projected model");
        bundle_.classifier = std::move(classifier);
        saw_main_ = true;
      } else if (name == "initial") {
        bundle_.projected_classifier.initial_ = std::move(classifier);
        saw_initial_ = true;
      } else if (name == "fallback") {
        bundle_.projected_classifier.fallback_ = std::move(classifier);
        saw_fallback_ = true;
      } else if (name.rfind("prev:", 0) == 0) {
        CombinedState prev = combined_state_from_string(name.substr(5));
        bundle_.projected_classifier.by_prev_[prev] = std::move(classifier);
      } else {
        fail("unknown model section '" + name + "'");
      }
    }
  }

  Classifier read_one_model() {
    EmissionTable empirical;
    empirical.set_alpha(bundle_.options.emission_alpha);
    NaiveBayesModel nb;
    nb.set_feature_config(bundle_.feature_config);
    SparseLinearModel sparse;
    sparse.set_feature_config(bundle_.feature_config);
    sparse.set_hyperparams(bundle_.options.sparse);

    std::vector<std::string> fields;
    while (next_line(&fields)) {
      if (fields.size() == 2 && fields[0] == "end" && fields[1] == "model") {
        switch (bundle_.family) {
          case ClassifierFamily::EMPIRICAL:
            return Classifier(std::move(empirical));
          case ClassifierFamily::NAIVE_BAYES:
            return Classifier(std::move(nb));
          case ClassifierFamily::SPARSE_LINEAR:
            return Classifier(std::move(sparse));
        }
      }
      if (fields.size() == 4 && fields[0] == "emit") {
        require_family(ClassifierFamily::EMPIRICAL);
        empirical.add_count(fields[2], combined_state_from_string(fields[1]),
                            parse_int(fields[3], origin_));
      } else if (fields.size() == 3 && fields[0] == "examples") {
        require_family(ClassifierFamily::NAIVE_BAYES);
        nb.add_example_count(combined_state_from_string(fields[1]),
                             parse_int(fields[2], origin_));
      } else if (fields.size() == 4 && fields[0] == "feat") {
        require_family(ClassifierFamily::NAIVE_BAYES);
        nb.add_feature_count(fields[2], combined_state_from_string(fields[1]),
                             parse_int(fields[3], origin_));
      } else if (fields.size() == 4 && fields[0] == "weight") {
        require_family(ClassifierFamily::SPARSE_LINEAR);
        sparse.set_weight(fields[2], combined_state_from_string(fields[1]),
                          parse_double(fields[3], origin_));
      } else {
        fail("bad model record");
      }
    }
    fail("unterminated model section");
  }

  void require_family(ClassifierFamily expected) {
    if (bundle_.family != expected) {
      fail("record does not match family '" + to_string(bundle_.family) + "'");
    }
  }

  void finish() {
    if (bundle_.projected) {
      if (!saw_initial_ || !saw_fallback_) {
        fail("projected model missing initial or fallback section");
      }
    } else if (!saw_main_) {
      fail("model file has no main model section");
    }
  }

  std::istream& in_;
  std::string origin_;
  std::size_t line_number_ = 0;
  ModelBundle bundle_;
  bool saw_main_ = false;
  bool saw_initial_ = false;
  bool saw_fallback_ = false;
};

ModelBundle load_model(std::istream& in, const std::string& origin) {
  return ModelReader(in, origin).read();
}

ModelBundle load_model_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw DataError("cannot open model file: " + path);
  return load_model(file, path);
}

}  // namespace phraser
