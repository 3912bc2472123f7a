#include "phraser/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "phraser/error.hpp"

namespace phraser {

namespace {

constexpr std::size_t O = index_of(CombinedState::OUTSIDE);
constexpr std::size_t B = index_of(CombinedState::OPEN);
constexpr std::size_t I = index_of(CombinedState::INSIDE);
constexpr std::size_t E = index_of(CombinedState::CLOSE);
constexpr std::size_t U = index_of(CombinedState::OPENCLOSE);

// allowed[from][to]
constexpr std::array<std::array<bool, kNumStates>, kNumStates> kAllowed = [] {
  std::array<std::array<bool, kNumStates>, kNumStates> a{};
  a[O][O] = a[O][B] = a[O][U] = true;
  a[B][I] = a[B][E] = true;
  a[I][I] = a[I][E] = true;
  a[E][O] = a[E][B] = a[E][U] = true;
  a[U][O] = a[U][B] = a[U][U] = true;
  return a;
}();

constexpr std::array<bool, kNumStates> kLegalStart = [] {
  std::array<bool, kNumStates> a{};
  a[O] = a[B] = a[U] = true;
  return a;
}();

constexpr std::array<bool, kNumStates> kLegalEnd = [] {
  std::array<bool, kNumStates> a{};
  a[O] = a[E] = a[U] = true;
  return a;
}();

const std::array<std::string, kNumStates> kStateNames = {
    "OUTSIDE", "OPEN", "INSIDE", "CLOSE", "OPENCLOSE"};

}  // namespace

const std::string& to_string(CombinedState s) { return kStateNames[index_of(s)]; }

CombinedState combined_state_from_string(const std::string& name) {
  for (CombinedState s : kAllStates) {
    if (kStateNames[index_of(s)] == name) return s;
  }
  throw DataError("unknown state name: " + name);
}

double StateDist::sum() const {
  double total = 0.0;
  for (double v : p) total += v;
  return total;
}

void StateDist::check_distribution(double eps) const {
  for (std::size_t i = 0; i < kNumStates; ++i) {
    if (!(p[i] >= 0.0) || !std::isfinite(p[i])) {
      throw DataError("state distribution has a negative or non-finite entry");
    }
  }
  if (std::fabs(sum() - 1.0) > eps) {
    std::ostringstream msg;
    msg << "state distribution sums to " << sum() << ", not 1";
    throw DataError(msg.str());
  }
}

void StateDist::normalize() {
  double total = sum();
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw DataError("cannot normalize state distribution with zero mass");
  }
  for (double& v : p) v /= total;
}

bool transition_allowed(CombinedState from, CombinedState to) {
  return kAllowed[index_of(from)][index_of(to)];
}

bool legal_start(CombinedState s) { return kLegalStart[index_of(s)]; }

bool legal_end(CombinedState s) { return kLegalEnd[index_of(s)]; }

bool is_legal(const std::vector<CombinedState>& states) {
  if (states.empty()) return false;
  if (!legal_start(states.front()) || !legal_end(states.back())) return false;
  for (std::size_t t = 1; t < states.size(); ++t) {
    if (!transition_allowed(states[t - 1], states[t])) return false;
  }
  return true;
}

StateDist combine_outcome_dists(const OpenDist& open_dist,
                                const CloseDist& close_dist) {
  auto check3 = [](const std::array<double, 3>& d, const char* which) {
    double total = 0.0;
    for (double v : d) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw DataError(std::string(which) + " outcome distribution has a bad entry");
      }
      total += v;
    }
    if (std::fabs(total - 1.0) > 1e-9) {
      throw DataError(std::string(which) + " outcome distribution does not sum to 1");
    }
  };
  check3(open_dist, "open");
  check3(close_dist, "close");

  const double open_o = open_dist[static_cast<std::size_t>(OpenOutcome::OPEN)];
  const double open_ni = open_dist[static_cast<std::size_t>(OpenOutcome::NOT_OPEN_INSIDE)];
  const double open_no = open_dist[static_cast<std::size_t>(OpenOutcome::NOT_OPEN_OUTSIDE)];
  const double close_c = close_dist[static_cast<std::size_t>(CloseOutcome::CLOSE)];
  const double close_ni = close_dist[static_cast<std::size_t>(CloseOutcome::NOT_CLOSE_INSIDE)];
  const double close_no = close_dist[static_cast<std::size_t>(CloseOutcome::NOT_CLOSE_OUTSIDE)];

  StateDist dist;
  dist[CombinedState::OUTSIDE] = open_no * close_no;
  dist[CombinedState::OPEN] = open_o * close_ni;
  dist[CombinedState::INSIDE] = open_ni * close_ni;
  dist[CombinedState::CLOSE] = open_ni * close_c;
  dist[CombinedState::OPENCLOSE] = open_o * close_c;
  if (!(dist.sum() > 0.0)) {
    throw DataError("open/close outcomes put zero mass on every consistent state");
  }
  dist.normalize();
  return dist;
}

std::vector<Span> states_to_spans(const std::vector<CombinedState>& states) {
  if (states.empty()) throw DataError("empty state sequence");
  auto fail = [](std::size_t index, const std::string& what) {
    std::ostringstream msg;
    msg << "illegal state sequence at index " << index << ": " << what;
    throw DataError(msg.str());
  };
  if (!legal_start(states.front())) fail(0, to_string(states.front()) + " cannot start a sequence");
  for (std::size_t t = 1; t < states.size(); ++t) {
    if (!transition_allowed(states[t - 1], states[t])) {
      fail(t, to_string(states[t - 1]) + " -> " + to_string(states[t]) + " is not allowed");
    }
  }
  if (!legal_end(states.back())) {
    fail(states.size() - 1, to_string(states.back()) + " cannot end a sequence");
  }

  std::vector<Span> spans;
  std::size_t open_at = 0;
  for (std::size_t t = 0; t < states.size(); ++t) {
    switch (states[t]) {
      case CombinedState::OPEN:
        open_at = t;
        break;
      case CombinedState::CLOSE:
        spans.push_back(Span{open_at, t});
        break;
      case CombinedState::OPENCLOSE:
        spans.push_back(Span{t, t});
        break;
      case CombinedState::INSIDE:
      case CombinedState::OUTSIDE:
        break;
    }
  }
  return spans;
}

std::vector<CombinedState> spans_to_states(const std::vector<Span>& spans,
                                           std::size_t length) {
  std::vector<Span> sorted = normalize_spans(spans, length);
  std::vector<CombinedState> states(length, CombinedState::OUTSIDE);
  for (const Span& span : sorted) {
    if (span.length() == 1) {
      states[span.start] = CombinedState::OPENCLOSE;
    } else {
      states[span.start] = CombinedState::OPEN;
      for (std::size_t t = span.start + 1; t < span.end; ++t) {
        states[t] = CombinedState::INSIDE;
      }
      states[span.end] = CombinedState::CLOSE;
    }
  }
  return states;
}

}  // namespace phraser
