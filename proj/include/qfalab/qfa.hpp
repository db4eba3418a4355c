#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfalab/dfa.hpp"
#include "qfalab/types.hpp"

namespace qfalab {

/// Probability comparisons and unitarity checks share this default.
inline constexpr double kDefaultTolerance = 1e-9;

/// Measure-many 1-way quantum finite automaton.
///
/// Operators use column convention: applying an operator to the j-th basis
/// vector yields its j-th column. The working alphabet is the input alphabet
/// plus the endmarkers (codes kKappa / kDollar).
struct Qfa {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  int start = 0;
  std::vector<int> accept;  // sorted state indices
  std::vector<int> reject;  // sorted state indices
  Matrix kappa_op;
  Matrix dollar_op;
  std::vector<Matrix> letter_ops;  // one per alphabet letter

  int n_states() const { return static_cast<int>(states.size()); }
  int n_letters() const { return static_cast<int>(alphabet.size()); }
  int state_index(std::string_view name) const;
  int letter_index(std::string_view name) const;

  /// Per-state halting classification masks (size n_states).
  std::vector<char> accept_mask() const;
  std::vector<char> reject_mask() const;
  std::vector<char> halting_mask() const;
  std::vector<int> nonhalting_states() const;

  /// Operator for a working-alphabet code. Throws on unknown codes.
  const Matrix& op(int working_letter) const;

  /// Resolves "kappa", "dollar" or an input letter name to a working code.
  int working_code(std::string_view letter_name) const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
  bool ok() const { return violations.empty(); }
};

/// Thrown when a file fails structural or unitarity validation on load.
struct ValidationError : std::runtime_error {
  ValidationError(const std::string& what, std::vector<std::string> violations_)
      : std::runtime_error(what), violations(std::move(violations_)) {}
  std::vector<std::string> violations;
};

/// Report-style check of the definition: operator shapes and unitarity
/// (max-norm tolerance 1e-9), disjoint halting sets, index ranges, reserved
/// letter names. Degenerate automata (empty Q_non) and sampled words leaving
/// residual non-halting mass after $ are flagged as warnings.
ValidationReport validate_qfa(const Qfa& qfa);

struct StepResult {
  StateVector next;  // projection onto the non-halting span, unrenormalized
  double d_acc = 0;  // probability mass measured as accepting in this step
  double d_rej = 0;
};

/// One two-phase letter step: apply the operator, measure accept/reject/non.
StepResult step_letter(const Qfa& qfa, const StateVector& psi, int working_letter);
StepResult step_letter(const Qfa& qfa, const StateVector& psi, std::string_view letter_name);

/// Composition of projected letter maps V'_an ... V'_a1 applied to psi.
StateVector apply_projected_word(const Qfa& qfa, StateVector psi, const WorkingWord& word);

/// Convenience: parses a working word where '^' means kappa and '$' dollar,
/// remaining characters are single-letter alphabet symbols.
WorkingWord parse_working_word(const Qfa& qfa, std::string_view text);

/// Probability that a state supported on Q_non is accepted when the right
/// endmarker arrives. Throws if psi has halting support.
double endmarker_acceptance(const Qfa& qfa, const StateVector& psi);

enum class Outcome { Accept, Reject, Tie };

struct StepEvent {
  int letter = 0;  // working code
  double d_acc = 0;
  double d_rej = 0;
  double live_norm2 = 0;  // surviving non-halting mass after the step
};

struct RunTrace {
  double p_acc = 0;
  double p_rej = 0;
  double p_undecided = 0;  // non-halting mass left after $
  StateVector survivor;
  std::vector<StepEvent> events;
  Outcome outcome = Outcome::Tie;
};

/// Processes kappa, the word, then dollar. Probability conservation
/// (p_acc + p_rej + live mass = 1 within 1e-9) is asserted at every step.
RunTrace run_word(const Qfa& qfa, const Word& word);

struct MarginResult {
  double p = 1.0;
  Word worst_word;
};

/// min over words |w| <= max_len of the correct-decision probability
/// (p_acc for oracle members, p_rej otherwise). The worst word is the
/// shortest, then lexicographically first, attaining the minimum.
MarginResult recognition_margin(const Qfa& qfa, const Dfa& oracle, int max_len);

const char* outcome_name(Outcome o);

}  // namespace qfalab
