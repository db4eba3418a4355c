#include "qfalab/qfa.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qfalab/linalg.hpp"

namespace qfalab {

namespace {

int find_name(const std::vector<std::string>& names, std::string_view name) {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

double mass_on(const StateVector& psi, const std::vector<int>& states) {
  double m = 0;
  for (int q : states) m += std::norm(psi(q));
  return m;
}

}  // namespace

int Qfa::state_index(std::string_view name) const { return find_name(states, name); }
int Qfa::letter_index(std::string_view name) const { return find_name(alphabet, name); }

std::vector<char> Qfa::accept_mask() const {
  std::vector<char> mask(states.size(), 0);
  for (int q : accept)
    if (q >= 0 && q < n_states()) mask[q] = 1;
  return mask;
}

std::vector<char> Qfa::reject_mask() const {
  std::vector<char> mask(states.size(), 0);
  for (int q : reject)
    if (q >= 0 && q < n_states()) mask[q] = 1;
  return mask;
}

std::vector<char> Qfa::halting_mask() const {
  std::vector<char> mask = accept_mask();
  for (int q : reject)
    if (q >= 0 && q < n_states()) mask[q] = 1;
  return mask;
}

std::vector<int> Qfa::nonhalting_states() const {
  std::vector<char> halting = halting_mask();
  std::vector<int> non;
  for (int q = 0; q < n_states(); ++q)
    if (!halting[q]) non.push_back(q);
  return non;
}

const Matrix& Qfa::op(int working_letter) const {
  if (working_letter == kKappa) return kappa_op;
  if (working_letter == kDollar) return dollar_op;
  if (working_letter >= 0 && working_letter < static_cast<int>(letter_ops.size()))
    return letter_ops[working_letter];
  throw std::invalid_argument("unknown working-alphabet letter code " +
                              std::to_string(working_letter));
}

int Qfa::working_code(std::string_view letter_name) const {
  if (letter_name == "kappa") return kKappa;
  if (letter_name == "dollar") return kDollar;
  int idx = letter_index(letter_name);
  if (idx < 0)
    throw std::invalid_argument("unknown letter '" + std::string(letter_name) + "'");
  return idx;
}

ValidationReport validate_qfa(const Qfa& qfa) {
  ValidationReport report;
  auto bad = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  const int n = qfa.n_states();
  if (n == 0) {
    bad("automaton has no states");
    return report;
  }
  {
    std::set<std::string> seen;
    for (const auto& s : qfa.states)
      if (!seen.insert(s).second) bad("duplicate state name '" + s + "'");
    seen.clear();
    for (const auto& a : qfa.alphabet) {
      if (!seen.insert(a).second) bad("duplicate letter '" + a + "'");
      if (a == "kappa" || a == "dollar")
        bad("letter name '" + a + "' is reserved for an endmarker");
    }
  }
  if (qfa.start < 0 || qfa.start >= n) bad("start state index out of range");
  for (int q : qfa.accept)
    if (q < 0 || q >= n) bad("accepting state index " + std::to_string(q) + " out of range");
  for (int q : qfa.reject)
    if (q < 0 || q >= n) bad("rejecting state index " + std::to_string(q) + " out of range");
  {
    std::set<int> acc(qfa.accept.begin(), qfa.accept.end());
    for (int q : qfa.reject)
      if (acc.count(q))
        bad("state '" + qfa.states[q] + "' is both accepting and rejecting");
  }
  if (static_cast<int>(qfa.letter_ops.size()) != qfa.n_letters())
    bad("expected one operator per input letter");

  auto check_op = [&](const Matrix& m, const std::string& name) {
    if (m.rows() != n || m.cols() != n) {
      bad("operator " + name + " has shape " + std::to_string(m.rows()) + "x" +
          std::to_string(m.cols()) + ", expected " + std::to_string(n) + "x" +
          std::to_string(n));
      return;
    }
    double err = linalg::unitarity_error(m);
    if (err > kDefaultTolerance)
      bad("operator " + name + " is not unitary, max|U'U - I| = " + std::to_string(err));
  };
  check_op(qfa.kappa_op, "kappa");
  check_op(qfa.dollar_op, "dollar");
  for (size_t i = 0; i < qfa.letter_ops.size(); ++i)
    check_op(qfa.letter_ops[i],
             i < qfa.alphabet.size() ? qfa.alphabet[i] : "#" + std::to_string(i));

  if (qfa.nonhalting_states().empty())
    report.warnings.push_back("degenerate automaton: every state is halting");

  // The definition does not force the $ operator to empty the non-halting
  // span; sample short words and flag any residual mass.
  if (report.violations.empty() && qfa.start >= 0 && qfa.start < n) {
    int scan_len = qfa.n_letters() <= 3 ? 3 : 1;
    double worst = 0;
    Word worst_word;
    for_each_word(qfa.n_letters(), scan_len, [&](const Word& w) {
      RunTrace trace = run_word(qfa, w);
      if (trace.p_undecided > worst) {
        worst = trace.p_undecided;
        worst_word = w;
      }
    });
    if (worst > kDefaultTolerance)
      report.warnings.push_back(
          "word '" + format_word(qfa.alphabet, worst_word) +
          "' leaves non-halting mass " + std::to_string(worst) + " after $");
  }
  return report;
}

StepResult step_letter(const Qfa& qfa, const StateVector& psi, int working_letter) {
  const Matrix& u = qfa.op(working_letter);
  if (psi.size() != qfa.n_states())
    throw std::invalid_argument("state vector has dimension " +
                                std::to_string(psi.size()) + ", automaton has " +
                                std::to_string(qfa.n_states()) + " states");
  StepResult result;
  result.next = u * psi;
  result.d_acc = mass_on(result.next, qfa.accept);
  result.d_rej = mass_on(result.next, qfa.reject);
  for (int q : qfa.accept) result.next(q) = 0.0;
  for (int q : qfa.reject) result.next(q) = 0.0;
  return result;
}

StepResult step_letter(const Qfa& qfa, const StateVector& psi, std::string_view letter_name) {
  return step_letter(qfa, psi, qfa.working_code(letter_name));
}

StateVector apply_projected_word(const Qfa& qfa, StateVector psi, const WorkingWord& word) {
  for (int code : word) psi = step_letter(qfa, psi, code).next;
  return psi;
}

WorkingWord parse_working_word(const Qfa& qfa, std::string_view text) {
  WorkingWord word;
  for (char c : text) {
    if (c == '^') {
      word.push_back(kKappa);
    } else if (c == '$') {
      word.push_back(kDollar);
    } else {
      word.push_back(qfa.working_code(std::string_view(&c, 1)));
    }
  }
  return word;
}

double endmarker_acceptance(const Qfa& qfa, const StateVector& psi) {
  if (psi.size() != qfa.n_states())
    throw std::invalid_argument("state vector dimension mismatch");
  for (int q : qfa.accept)
    if (std::abs(psi(q)) > kDefaultTolerance)
      throw std::invalid_argument("state has support on halting state '" +
                                  qfa.states[q] + "'");
  for (int q : qfa.reject)
    if (std::abs(psi(q)) > kDefaultTolerance)
      throw std::invalid_argument("state has support on halting state '" +
                                  qfa.states[q] + "'");
  return step_letter(qfa, psi, kDollar).d_acc;
}

RunTrace run_word(const Qfa& qfa, const Word& word) {
  for (int letter : word)
    if (letter < 0 || letter >= qfa.n_letters())
      throw std::invalid_argument("word contains letter index " +
                                  std::to_string(letter) + " outside the alphabet");
  RunTrace trace;
  StateVector psi = StateVector::Zero(qfa.n_states());
  psi(qfa.start) = 1.0;

  WorkingWord working;
  working.reserve(word.size() + 2);
  working.push_back(kKappa);
  working.insert(working.end(), word.begin(), word.end());
  working.push_back(kDollar);

  for (int code : working) {
    StepResult step = step_letter(qfa, psi, code);
    psi = std::move(step.next);
    trace.p_acc += step.d_acc;
    trace.p_rej += step.d_rej;
    double live = psi.squaredNorm();
    trace.events.push_back({code, step.d_acc, step.d_rej, live});
    double total = trace.p_acc + trace.p_rej + live;
    if (std::abs(total - 1.0) > kDefaultTolerance)
      throw std::logic_error("probability conservation violated: total " +
                             std::to_string(total));
  }
  trace.survivor = std::move(psi);
  trace.p_undecided = trace.survivor.squaredNorm();
  trace.outcome = trace.p_acc > trace.p_rej   ? Outcome::Accept
                  : trace.p_rej > trace.p_acc ? Outcome::Reject
                                              : Outcome::Tie;
  return trace;
}

MarginResult recognition_margin(const Qfa& qfa, const Dfa& oracle, int max_len) {
  if (qfa.alphabet != oracle.alphabet)
    throw std::invalid_argument("recognition_margin: alphabets differ");
  if (max_len < 0) throw std::invalid_argument("recognition_margin: max_len must be >= 0");

  struct Node {
    StateVector psi;
    double p_acc, p_rej;
    int dfa_state;
  };

  MarginResult best;
  best.p = 2.0;
  Word current;

  // Depth-first over the word tree sharing prefixes; at every node the $
  // step decides the word ending there.
  auto consider = [&](const Node& node) {
    StepResult fin = step_letter(qfa, node.psi, kDollar);
    double p_acc = node.p_acc + fin.d_acc;
    double p_rej = node.p_rej + fin.d_rej;
    bool member = oracle.accepting[node.dfa_state] != 0;
    double correct = member ? p_acc : p_rej;
    bool tie_better =
        correct == best.p &&
        (current.size() < best.worst_word.size() ||
         (current.size() == best.worst_word.size() &&
          std::lexicographical_compare(current.begin(), current.end(),
                                       best.worst_word.begin(), best.worst_word.end())));
    if (correct < best.p || tie_better) {
      best.p = correct;
      best.worst_word = current;
    }
  };

  std::function<void(const Node&, int)> walk = [&](const Node& node, int depth) {
    consider(node);
    if (depth == max_len) return;
    for (int letter = 0; letter < qfa.n_letters(); ++letter) {
      StepResult step = step_letter(qfa, node.psi, letter);
      Node child{std::move(step.next), node.p_acc + step.d_acc,
                 node.p_rej + step.d_rej, oracle.delta[node.dfa_state][letter]};
      current.push_back(letter);
      walk(child, depth + 1);
      current.pop_back();
    }
  };

  Node root;
  root.psi = StateVector::Zero(qfa.n_states());
  root.psi(qfa.start) = 1.0;
  StepResult kappa = step_letter(qfa, root.psi, kKappa);
  root.psi = std::move(kappa.next);
  root.p_acc = kappa.d_acc;
  root.p_rej = kappa.d_rej;
  root.dfa_state = oracle.start;
  walk(root, 0);
  return best;
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Accept: return "accept";
    case Outcome::Reject: return "reject";
    case Outcome::Tie: return "tie";
  }
  return "?";
}

}  // namespace qfalab
