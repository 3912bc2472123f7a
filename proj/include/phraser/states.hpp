// The open/close outcome alphabets, the five-state phrase automaton, and
// the codec between state sequences and span sets.
//
// A position either opens a phrase (O) or does not, split by whether it sits
// inside or outside a phrase (nOi / nOo); same for closing (C, nCi, nCo).
// Exactly five outcome pairs are consistent, and they form the combined
// state alphabet. Transitions are constrained so that decoded sequences
// always describe one layer of non-overlapping phrases.

#ifndef PHRASER_STATES_HPP
#define PHRASER_STATES_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "phraser/corpus.hpp"

namespace phraser {

enum class OpenOutcome : std::uint8_t {
  OPEN = 0,            // O
  NOT_OPEN_INSIDE = 1,  // nOi
  NOT_OPEN_OUTSIDE = 2  // nOo
};

enum class CloseOutcome : std::uint8_t {
  CLOSE = 0,            // C
  NOT_CLOSE_INSIDE = 1,  // nCi
  NOT_CLOSE_OUTSIDE = 2  // nCo
};

// Order doubles as the tie-break order used by every decoder.
enum class CombinedState : std::uint8_t {
  OUTSIDE = 0,    // (nOo, nCo)
  OPEN = 1,       // (O,   nCi)
  INSIDE = 2,     // (nOi, nCi)
  CLOSE = 3,      // (nOi, C)
  OPENCLOSE = 4   // (O,   C)
};

inline constexpr std::size_t kNumStates = 5;

inline constexpr std::array<CombinedState, kNumStates> kAllStates = {
    CombinedState::OUTSIDE, CombinedState::OPEN, CombinedState::INSIDE,
    CombinedState::CLOSE, CombinedState::OPENCLOSE};

inline constexpr std::size_t index_of(CombinedState s) {
  return static_cast<std::size_t>(s);
}

const std::string& to_string(CombinedState s);
CombinedState combined_state_from_string(const std::string& name);

// Probability mass over the five combined states. Plain storage; whether
// the values form a distribution is checked where the contract demands it.
struct StateDist {
  std::array<double, kNumStates> p{};

  double& operator[](CombinedState s) { return p[index_of(s)]; }
  double operator[](CombinedState s) const { return p[index_of(s)]; }
  double sum() const;

  // Throws DataError unless non-negative and summing to 1 within eps.
  void check_distribution(double eps = 1e-9) const;

  // Scales to sum 1; throws DataError on zero total mass.
  void normalize();
};

using OpenDist = std::array<double, 3>;   // indexed by OpenOutcome
using CloseDist = std::array<double, 3>;  // indexed by CloseOutcome

// Legal-order automaton. OPEN starts a phrase at its own position, CLOSE
// ends one at its own position, OPENCLOSE is a length-1 phrase. Phrases may
// abut (CLOSE -> OPEN) but never overlap or nest.
bool transition_allowed(CombinedState from, CombinedState to);
bool legal_start(CombinedState s);
bool legal_end(CombinedState s);

// True iff every consecutive pair is allowed and the first/last states are
// legal starts/ends. Empty sequences are not legal.
bool is_legal(const std::vector<CombinedState>& states);

// Product of the constituent outcome probabilities, renormalized over the
// five consistent pairs. Zero consistent mass is a DataError.
StateDist combine_outcome_dists(const OpenDist& open_dist,
                                const CloseDist& close_dist);

// Decodes a transition-legal sequence into its span set. An illegal
// transition or start/end state is a DataError naming the first bad index.
std::vector<Span> states_to_spans(const std::vector<CombinedState>& states);

// Exact inverse of states_to_spans for non-overlapping in-bounds spans.
std::vector<CombinedState> spans_to_states(const std::vector<Span>& spans,
                                           std::size_t length);

}  // namespace phraser

#endif  // PHRASER_STATES_HPP
