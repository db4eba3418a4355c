#include "qfalab/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace qfalab {

namespace {

int find_name(const std::vector<std::string>& names, std::string_view name) {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

void require_same_alphabet(const Dfa& a, const Dfa& b, const char* where) {
  if (a.alphabet != b.alphabet)
    throw std::invalid_argument(std::string(where) + ": alphabets differ");
}

std::vector<char> reachable_from(const Dfa& dfa, int origin) {
  std::vector<char> seen(dfa.states.size(), 0);
  std::deque<int> queue = {origin};
  seen[origin] = 1;
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (int letter = 0; letter < dfa.n_letters(); ++letter) {
      int to = dfa.delta[q][letter];
      if (!seen[to]) {
        seen[to] = 1;
        queue.push_back(to);
      }
    }
  }
  return seen;
}

// Shortest (then lexicographically first) word moving `from` to `to`,
// if one exists.
std::optional<Word> shortest_path_word(const Dfa& dfa, int from, int to) {
  std::vector<int> parent(dfa.states.size(), -1);
  std::vector<int> via(dfa.states.size(), -1);
  std::vector<char> seen(dfa.states.size(), 0);
  std::deque<int> queue = {from};
  seen[from] = 1;
  if (from == to) return Word{};
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (int letter = 0; letter < dfa.n_letters(); ++letter) {
      int next = dfa.delta[q][letter];
      if (seen[next]) continue;
      seen[next] = 1;
      parent[next] = q;
      via[next] = letter;
      if (next == to) {
        Word word;
        for (int s = to; s != from; s = parent[s]) word.push_back(via[s]);
        std::reverse(word.begin(), word.end());
        return word;
      }
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

// Word x with delta(q1, x) = q2 and delta(q2, x) = q2: BFS on the
// synchronized pair graph from (q1, q2) to (q2, q2).
std::optional<Word> synchronized_loop_word(const Dfa& dfa, int q1, int q2) {
  const int n = dfa.n_states();
  auto id = [n](int a, int b) { return a * n + b; };
  std::vector<int> parent(n * n, -1), via(n * n, -1);
  std::vector<char> seen(n * n, 0);
  int origin = id(q1, q2), target = id(q2, q2);
  if (origin == target) return Word{};
  std::deque<int> queue = {origin};
  seen[origin] = 1;
  while (!queue.empty()) {
    int node = queue.front();
    queue.pop_front();
    int a = node / n, b = node % n;
    for (int letter = 0; letter < dfa.n_letters(); ++letter) {
      int next = id(dfa.delta[a][letter], dfa.delta[b][letter]);
      if (seen[next]) continue;
      seen[next] = 1;
      parent[next] = node;
      via[next] = letter;
      if (next == target) {
        Word word;
        for (int s = target; s != origin; s = parent[s]) word.push_back(via[s]);
        std::reverse(word.begin(), word.end());
        return word;
      }
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

}  // namespace

int Dfa::state_index(std::string_view name) const { return find_name(states, name); }
int Dfa::letter_index(std::string_view name) const { return find_name(alphabet, name); }

std::vector<std::string> validate_dfa(const Dfa& dfa) {
  std::vector<std::string> problems;
  const int n = dfa.n_states();
  if (n == 0) {
    problems.push_back("automaton has no states");
    return problems;
  }
  {
    std::set<std::string> seen;
    for (const auto& s : dfa.states)
      if (!seen.insert(s).second) problems.push_back("duplicate state name '" + s + "'");
    seen.clear();
    for (const auto& a : dfa.alphabet)
      if (!seen.insert(a).second) problems.push_back("duplicate letter '" + a + "'");
  }
  if (dfa.start < 0 || dfa.start >= n) problems.push_back("start state index out of range");
  if (static_cast<int>(dfa.accepting.size()) != n)
    problems.push_back("accepting mask size mismatch");
  if (static_cast<int>(dfa.delta.size()) != n) {
    problems.push_back("transition table must have one row per state");
    return problems;
  }
  for (int q = 0; q < n; ++q) {
    if (static_cast<int>(dfa.delta[q].size()) != dfa.n_letters()) {
      problems.push_back("state '" + dfa.states[q] + "' is missing transitions");
      continue;
    }
    for (int letter = 0; letter < dfa.n_letters(); ++letter) {
      int to = dfa.delta[q][letter];
      if (to < 0 || to >= n)
        problems.push_back("transition from '" + dfa.states[q] + "' on '" +
                           dfa.alphabet[letter] + "' leaves the state set");
    }
  }
  return problems;
}

int dfa_run(const Dfa& dfa, const Word& word, int from) {
  int q = from < 0 ? dfa.start : from;
  for (int letter : word) {
    if (letter < 0 || letter >= dfa.n_letters())
      throw std::invalid_argument("word contains letter index " +
                                  std::to_string(letter) + " outside the alphabet");
    q = dfa.delta[q][letter];
  }
  return q;
}

bool dfa_accepts(const Dfa& dfa, const Word& word) {
  return dfa.accepting[dfa_run(dfa, word)] != 0;
}

Dfa dfa_minimize(const Dfa& dfa) {
  std::vector<char> reach = reachable_from(dfa, dfa.start);
  std::vector<int> kept;  // old index -> position, in original order
  std::vector<int> old_of;
  std::vector<int> new_of(dfa.states.size(), -1);
  for (int q = 0; q < dfa.n_states(); ++q) {
    if (reach[q]) {
      new_of[q] = static_cast<int>(old_of.size());
      old_of.push_back(q);
    }
  }
  const int m = static_cast<int>(old_of.size());
  const int letters = dfa.n_letters();

  // Moore refinement on the reachable part.
  std::vector<int> cls(m);
  for (int i = 0; i < m; ++i) cls[i] = dfa.accepting[old_of[i]] ? 1 : 0;
  for (;;) {
    std::map<std::vector<int>, int> sig_to_class;
    std::vector<int> next(m);
    for (int i = 0; i < m; ++i) {
      std::vector<int> sig;
      sig.reserve(letters + 1);
      sig.push_back(cls[i]);
      for (int letter = 0; letter < letters; ++letter)
        sig.push_back(cls[new_of[dfa.delta[old_of[i]][letter]]]);
      auto [it, inserted] = sig_to_class.try_emplace(sig, static_cast<int>(sig_to_class.size()));
      next[i] = it->second;
    }
    if (next == cls) break;
    cls = std::move(next);
  }

  // Order blocks by their lowest original state index.
  int n_classes = *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<int> block_order(n_classes, -1);
  std::vector<std::vector<int>> members(n_classes);
  int next_block = 0;
  for (int i = 0; i < m; ++i) {
    if (block_order[cls[i]] < 0) block_order[cls[i]] = next_block++;
    members[cls[i]].push_back(old_of[i]);
  }

  Dfa out;
  out.alphabet = dfa.alphabet;
  out.states.resize(n_classes);
  out.accepting.resize(n_classes);
  out.delta.assign(n_classes, std::vector<int>(letters, 0));
  for (int c = 0; c < n_classes; ++c) {
    int b = block_order[c];
    std::string name = dfa.states[members[c][0]];
    for (size_t k = 1; k < members[c].size(); ++k)
      name += "+" + dfa.states[members[c][k]];
    out.states[b] = name;
    out.accepting[b] = dfa.accepting[members[c][0]];
    for (int letter = 0; letter < letters; ++letter)
      out.delta[b][letter] = block_order[cls[new_of[dfa.delta[members[c][0]][letter]]]];
  }
  out.start = block_order[cls[new_of[dfa.start]]];
  return out;
}

Dfa dfa_combine(const Dfa& a, const Dfa& b, BoolOp op) {
  require_same_alphabet(a, b, "dfa_combine");
  const int letters = a.n_letters();
  auto accepts = [op](bool in_a, bool in_b) {
    switch (op) {
      case BoolOp::Union: return in_a || in_b;
      case BoolOp::Intersection: return in_a && in_b;
      case BoolOp::Difference: return in_a && !in_b;
      case BoolOp::SymmetricDifference: return in_a != in_b;
    }
    return false;
  };

  Dfa out;
  out.alphabet = a.alphabet;
  std::map<std::pair<int, int>, int> index;
  std::deque<std::pair<int, int>> queue;
  auto intern = [&](int qa, int qb) {
    auto [it, inserted] = index.try_emplace({qa, qb}, static_cast<int>(index.size()));
    if (inserted) {
      out.states.push_back("(" + a.states[qa] + "," + b.states[qb] + ")");
      out.accepting.push_back(accepts(a.accepting[qa], b.accepting[qb]) ? 1 : 0);
      out.delta.emplace_back(letters, -1);
      queue.emplace_back(qa, qb);
    }
    return it->second;
  };
  out.start = intern(a.start, b.start);
  while (!queue.empty()) {
    auto [qa, qb] = queue.front();
    queue.pop_front();
    int from = index.at({qa, qb});
    for (int letter = 0; letter < letters; ++letter)
      out.delta[from][letter] = intern(a.delta[qa][letter], b.delta[qb][letter]);
  }
  return out;
}

EquivalenceResult dfa_equivalent(const Dfa& a, const Dfa& b) {
  require_same_alphabet(a, b, "dfa_equivalent");
  struct Node {
    int qa, qb;
    Word word;
  };
  std::set<std::pair<int, int>> seen;
  std::deque<Node> queue;
  queue.push_back({a.start, b.start, {}});
  seen.insert({a.start, b.start});
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    if ((a.accepting[node.qa] != 0) != (b.accepting[node.qb] != 0))
      return {false, node.word};
    for (int letter = 0; letter < a.n_letters(); ++letter) {
      int na = a.delta[node.qa][letter];
      int nb = b.delta[node.qb][letter];
      if (seen.insert({na, nb}).second) {
        Word next = node.word;
        next.push_back(letter);
        queue.push_back({na, nb, std::move(next)});
      }
    }
  }
  return {true, std::nullopt};
}

T12Report check_t12(const Dfa& dfa) {
  T12Report report;
  report.minimized = dfa_minimize(dfa);
  const Dfa& m = report.minimized;
  const int n = m.n_states();

  // "all-accepting" / "all-rejecting": every state reachable from q,
  // including q itself, accepts (rejects).
  std::vector<char> all_acc(n, 0), all_rej(n, 0);
  for (int q = 0; q < n; ++q) {
    std::vector<char> reach = reachable_from(m, q);
    bool acc = true, rej = true;
    for (int s = 0; s < n; ++s) {
      if (!reach[s]) continue;
      if (m.accepting[s]) rej = false;
      else acc = false;
    }
    all_acc[q] = acc;
    all_rej[q] = rej;
  }

  bool have_weak = false;
  for (int q1 = 0; q1 < n; ++q1) {
    for (int q2 = 0; q2 < n; ++q2) {
      if (q1 == q2 || all_acc[q2] || all_rej[q2]) continue;
      std::optional<Word> x = synchronized_loop_word(m, q1, q2);
      if (!x) continue;
      std::optional<Word> y = shortest_path_word(m, q2, q1);
      if (!have_weak) {
        have_weak = true;
        report.conditions_1_to_4 = true;
        report.q1 = m.states[q1];
        report.q2 = m.states[q2];
        report.x = *x;
        report.y = y;
        report.condition_5 = y.has_value();
      }
      if (y && !report.condition_5) {
        // A later pair satisfying all five conditions beats a 1-4-only pair.
        report.q1 = m.states[q1];
        report.q2 = m.states[q2];
        report.x = *x;
        report.y = y;
        report.condition_5 = true;
      }
      if (report.condition_5) break;
    }
    if (report.condition_5) break;
  }

  if (report.conditions_1_to_4) {
    int q1 = m.state_index(report.q1);
    int q2 = m.state_index(report.q2);
    bool replay_ok = q1 >= 0 && q2 >= 0 && q1 != q2 && !all_acc[q2] && !all_rej[q2] &&
                     dfa_run(m, report.x, q1) == q2 && dfa_run(m, report.x, q2) == q2 &&
                     (!report.y || dfa_run(m, *report.y, q2) == q1);
    if (!replay_ok) throw std::logic_error("check_t12: witness failed replay");
  }
  return report;
}

Dfa build_g1() {
  Dfa g;
  g.states = {"q1", "q2", "q3"};
  g.alphabet = {"a", "b"};
  g.start = 0;
  g.accepting = {1, 0, 1};
  g.delta = {
      {0, 1},  // q1: a loops, b starts the suffix tracking
      {2, 1},  // q2: a flips parity, b loops
      {1, 2},  // q3: a flips parity, b loops
  };
  return g;
}

namespace {

Dfa build_g23_core() {
  Dfa g;
  g.states = {"q1", "q2", "q3", "q4", "q5"};
  g.alphabet = {"a", "b"};
  g.accepting = {1, 0, 1, 0, 0};
  g.delta = {
      {3, 1},  // q1: even leading a's, no b yet
      {2, 1},  // q2: b seen, even a's since
      {1, 2},  // q3: b seen, odd a's since
      {0, 4},  // q4: odd leading a's, no b yet
      {4, 4},  // q5: dead
  };
  return g;
}

}  // namespace

Dfa build_g2() {
  Dfa g = build_g23_core();
  g.start = 0;
  return g;
}

Dfa build_g3() {
  Dfa g = build_g23_core();
  g.start = 3;
  return g;
}

Dfa build_ln(int n) {
  if (n < 1) throw std::invalid_argument("build_ln: n must be >= 1");
  Dfa g;
  for (int i = 1; i <= n; ++i) {
    g.states.push_back("s" + std::to_string(i));
    g.alphabet.push_back("a" + std::to_string(i));
  }
  g.states.push_back("sink");
  g.start = 0;
  g.accepting.assign(n + 1, 1);
  g.accepting[n] = 0;
  g.delta.assign(n + 1, std::vector<int>(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) g.delta[i][j] = j;
  return g;
}

Dfa build_even_a_dfa() {
  Dfa g;
  g.states = {"even", "odd"};
  g.alphabet = {"a", "b"};
  g.start = 0;
  g.accepting = {1, 0};
  g.delta = {{1, 0}, {0, 1}};
  return g;
}

}  // namespace qfalab
