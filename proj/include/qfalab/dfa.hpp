#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qfalab/types.hpp"

namespace qfalab {

/// Deterministic finite automaton with a total transition function.
struct Dfa {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  int start = 0;
  std::vector<char> accepting;          // one flag per state
  std::vector<std::vector<int>> delta;  // delta[state][letter] -> state

  int n_states() const { return static_cast<int>(states.size()); }
  int n_letters() const { return static_cast<int>(alphabet.size()); }
  int state_index(std::string_view name) const;
  int letter_index(std::string_view name) const;
};

/// Structural checks: sizes, totality, index ranges, duplicate names.
/// Empty result means well-formed.
std::vector<std::string> validate_dfa(const Dfa& dfa);

/// State reached from `from` (default: start) after reading `word`.
int dfa_run(const Dfa& dfa, const Word& word, int from = -1);

bool dfa_accepts(const Dfa& dfa, const Word& word);

/// Language-equivalent DFA with the minimum number of states; unreachable
/// states are dropped first. Singleton blocks keep their original names,
/// merged blocks get the member names joined with '+'.
Dfa dfa_minimize(const Dfa& dfa);

enum class BoolOp { Union, Intersection, Difference, SymmetricDifference };

/// Product construction over the reachable pair graph.
Dfa dfa_combine(const Dfa& a, const Dfa& b, BoolOp op);

struct EquivalenceResult {
  bool equivalent = false;
  /// Shortest (then lexicographically first) distinguishing word.
  std::optional<Word> counterexample;
};

EquivalenceResult dfa_equivalent(const Dfa& a, const Dfa& b);

/// Result of the forbidden-pattern check on the minimal automaton.
/// Witnesses refer to states of `minimized`.
struct T12Report {
  bool conditions_1_to_4 = false;
  bool condition_5 = false;
  std::string q1;
  std::string q2;
  Word x;                 // word with q1 --x--> q2 and q2 --x--> q2
  std::optional<Word> y;  // word with q2 --y--> q1, when condition 5 holds
  Dfa minimized;

  std::array<bool, 5> verdicts() const {
    return {conditions_1_to_4, conditions_1_to_4, conditions_1_to_4,
            conditions_1_to_4, condition_5};
  }
};

/// Minimizes the automaton, then scans ordered state pairs (q1, q2) for the
/// pattern: q1 != q2, some word x moves q1 to q2 and loops on q2, and q2 is
/// neither all-accepting nor all-rejecting ("all-accepting" = every state
/// reachable from q2, including q2, accepts; dually for rejecting).
/// Condition 5 asks for a word y moving q2 back to q1. A pair satisfying
/// conditions 1-5 is preferred over one satisfying only 1-4; within each
/// class the first pair in state order wins and witnesses are shortest, then
/// lexicographically first. All reported witnesses are replay-checked.
T12Report check_t12(const Dfa& dfa);

// Fixture automata.
Dfa build_g1();
Dfa build_g2();
Dfa build_g3();

/// Minimal-style DFA of a1*a2*...an* over {a1..an}: n accepting chain states
/// plus a rejecting sink (unreachable for n = 1).
Dfa build_ln(int n);

/// Two-state DFA of "even number of a's" over {a, b}.
Dfa build_even_a_dfa();

}  // namespace qfalab
