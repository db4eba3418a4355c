#include <doctest.h>

#include "oracles.hpp"
#include "qfalab/dfa.hpp"

using namespace qfalab;

namespace {

Word w(const Dfa& dfa, const std::string& text) { return parse_word(dfa.alphabet, text); }

void check_language(const Dfa& dfa, bool (*member)(const std::string&), int max_len) {
  for (const std::string& word : oracles::words_up_to(max_len)) {
    CAPTURE(word);
    CHECK(dfa_accepts(dfa, w(dfa, word)) == member(word));
  }
}

}  // namespace

TEST_CASE("fixture automata are well-formed") {
  CHECK(validate_dfa(build_g1()).empty());
  CHECK(validate_dfa(build_g2()).empty());
  CHECK(validate_dfa(build_g3()).empty());
  CHECK(validate_dfa(build_ln(3)).empty());
  CHECK(validate_dfa(build_even_a_dfa()).empty());
}

TEST_CASE("dfa_accepts matches the informal language descriptions") {
  CHECK(dfa_accepts(build_g1(), w(build_g1(), "abba")));
  CHECK(dfa_accepts(build_g2(), {}));
  CHECK_FALSE(dfa_accepts(build_g3(), {}));
  check_language(build_g1(), oracles::in_l1, 10);
  check_language(build_g2(), oracles::in_l2, 10);
  check_language(build_g3(), oracles::in_l3, 10);
  check_language(build_even_a_dfa(), oracles::even_a, 10);
}

TEST_CASE("dfa_accepts rejects unknown letters") {
  CHECK_THROWS_AS(dfa_accepts(build_g1(), {0, 2}), std::invalid_argument);
}

TEST_CASE("G1 is already minimal") {
  // Independent count of distinguishable prefix classes.
  CHECK(oracles::nerode_class_count(oracles::in_l1, 8, 8) == 3);
  Dfa minimized = dfa_minimize(build_g1());
  CHECK(minimized.n_states() == 3);
  CHECK(dfa_equivalent(minimized, build_g1()).equivalent);
}

TEST_CASE("G2 and G3 are already minimal") {
  CHECK(oracles::nerode_class_count(oracles::in_l2, 8, 8) == 5);
  CHECK(dfa_minimize(build_g2()).n_states() == 5);
  CHECK(dfa_minimize(build_g3()).n_states() == 5);
}

TEST_CASE("dfa_minimize merges duplicated states") {
  Dfa dup;
  dup.states = {"s", "t1", "t2"};
  dup.alphabet = {"a"};
  dup.start = 0;
  dup.accepting = {0, 1, 1};
  dup.delta = {{1}, {2}, {1}};  // t1 and t2 are interchangeable accepting loops
  Dfa minimized = dfa_minimize(dup);
  CHECK(minimized.n_states() == 2);
  CHECK(dfa_equivalent(minimized, dup).equivalent);
}

TEST_CASE("dfa_minimize keeps a single-state all-accepting automaton") {
  Dfa one;
  one.states = {"s"};
  one.alphabet = {"a", "b"};
  one.start = 0;
  one.accepting = {1};
  one.delta = {{0, 0}};
  Dfa minimized = dfa_minimize(one);
  CHECK(minimized.n_states() == 1);
  CHECK(minimized.states[0] == "s");
  CHECK(dfa_equivalent(minimized, one).equivalent);
}

TEST_CASE("dfa_minimize drops unreachable states") {
  Dfa g = build_g2();
  g.states.push_back("junk");
  g.accepting.push_back(1);
  g.delta.push_back({0, 0});
  Dfa minimized = dfa_minimize(g);
  CHECK(minimized.n_states() == 5);
}

TEST_CASE("the three oracles satisfy the closure relations") {
  Dfa g1 = build_g1(), g2 = build_g2(), g3 = build_g3();
  CHECK(dfa_equivalent(dfa_minimize(dfa_combine(g2, g3, BoolOp::Union)), g1).equivalent);
  CHECK(dfa_equivalent(dfa_minimize(dfa_combine(g2, g3, BoolOp::SymmetricDifference)), g1)
            .equivalent);

  Dfa inter = dfa_combine(g2, g3, BoolOp::Intersection);
  Dfa empty;
  empty.states = {"d"};
  empty.alphabet = {"a", "b"};
  empty.start = 0;
  empty.accepting = {0};
  empty.delta = {{0, 0}};
  CHECK(dfa_equivalent(inter, empty).equivalent);
}

TEST_CASE("combine agrees with per-word boolean evaluation") {
  Dfa g2 = build_g2(), g3 = build_g3();
  Dfa uni = dfa_combine(g2, g3, BoolOp::Union);
  Dfa diff = dfa_combine(g2, g3, BoolOp::Difference);
  for (const std::string& word : oracles::words_up_to(10)) {
    bool in2 = dfa_accepts(g2, w(g2, word));
    bool in3 = dfa_accepts(g3, w(g3, word));
    CHECK(dfa_accepts(uni, w(uni, word)) == (in2 || in3));
    CHECK(dfa_accepts(diff, w(diff, word)) == (in2 && !in3));
  }
}

TEST_CASE("dfa_combine rejects mismatched alphabets") {
  Dfa other = build_even_a_dfa();
  other.alphabet = {"x", "y"};
  CHECK_THROWS_AS(dfa_combine(build_g2(), other, BoolOp::Union), std::invalid_argument);
}

TEST_CASE("dfa_equivalent distinguishes G2 from G3 by the empty word") {
  EquivalenceResult r = dfa_equivalent(build_g2(), build_g3());
  REQUIRE_FALSE(r.equivalent);
  REQUIRE(r.counterexample.has_value());
  CHECK(r.counterexample->empty());
}

TEST_CASE("dfa_equivalent returns a shortest counterexample") {
  Dfa even = build_even_a_dfa();
  Dfa odd = even;
  odd.start = 1;
  EquivalenceResult r = dfa_equivalent(even, odd);
  REQUIRE_FALSE(r.equivalent);
  CHECK(r.counterexample->empty());

  Dfa g1 = build_g1();
  EquivalenceResult self = dfa_equivalent(g1, g1);
  CHECK(self.equivalent);
  CHECK_FALSE(self.counterexample.has_value());

  // Languages agreeing on short words: counterexample must be a shortest one.
  Dfa mod2 = build_even_a_dfa();
  Dfa mod4;
  mod4.states = {"0", "1", "2", "3"};
  mod4.alphabet = {"a", "b"};
  mod4.start = 0;
  mod4.accepting = {1, 0, 1, 0};  // even a-count mod 4 lands on 0 or 2
  mod4.delta = {{1, 0}, {2, 1}, {3, 2}, {0, 3}};
  EquivalenceResult same = dfa_equivalent(mod2, mod4);
  CHECK(same.equivalent);
  mod4.accepting = {1, 0, 0, 0};  // now words with a-count 2 mod 4 differ
  EquivalenceResult diff = dfa_equivalent(mod2, mod4);
  REQUIRE_FALSE(diff.equivalent);
  REQUIRE(diff.counterexample.has_value());
  CHECK(format_word(mod2.alphabet, *diff.counterexample) == "aa");
}

TEST_CASE("check_t12 finds the loop pattern of G1 but not condition 5") {
  T12Report report = check_t12(build_g1());
  REQUIRE(report.conditions_1_to_4);
  CHECK(report.q1 == "q1");
  CHECK(report.q2 == "q2");
  CHECK(format_word(report.minimized.alphabet, report.x) == "b");
  CHECK_FALSE(report.condition_5);
  CHECK_FALSE(report.y.has_value());

  // No shorter witness: the only length-0 word cannot move q1 to q2.
  CHECK(report.x.size() == 1);
}

TEST_CASE("check_t12 on G2: conditions 1-4 witnessed, condition 5 unwitnessed") {
  T12Report report = check_t12(build_g2());
  REQUIRE(report.conditions_1_to_4);
  CHECK(format_word(report.minimized.alphabet, report.x) == "b");
  CHECK_FALSE(report.condition_5);

  // Exhaustive cross-check on the minimized automaton: some pair admits x,
  // no pair admits both x and y.
  const Dfa& m = report.minimized;
  bool any_weak = false, any_strong = false;
  std::vector<std::string> words = oracles::words_up_to(8);
  for (int q1 = 0; q1 < m.n_states(); ++q1)
    for (int q2 = 0; q2 < m.n_states(); ++q2) {
      if (q1 == q2) continue;
      bool has_x = false, has_y = false;
      for (const std::string& word : words) {
        if (word.empty()) continue;
        Word ww = w(m, word);
        if (dfa_run(m, ww, q1) == q2 && dfa_run(m, ww, q2) == q2) has_x = true;
        if (dfa_run(m, ww, q2) == q1) has_y = true;
      }
      // "all-accepting"/"all-rejecting" exclusion for q2.
      bool mixed = false;
      {
        bool acc = false, rej = false;
        for (const std::string& word : words)
          (m.accepting[dfa_run(m, w(m, word), q2)] ? acc : rej) = true;
        mixed = acc && rej;
      }
      if (has_x && mixed) {
        any_weak = true;
        if (has_y) any_strong = true;
      }
    }
  CHECK(any_weak == report.conditions_1_to_4);
  CHECK(any_strong == report.condition_5);
}

TEST_CASE("check_t12 finds nothing on a single-state all-accepting automaton") {
  Dfa one;
  one.states = {"s"};
  one.alphabet = {"a"};
  one.start = 0;
  one.accepting = {1};
  one.delta = {{0}};
  T12Report report = check_t12(one);
  CHECK_FALSE(report.conditions_1_to_4);
  CHECK_FALSE(report.condition_5);
}

TEST_CASE("check_t12 witnesses condition 5 when the pattern loops back") {
  Dfa d;
  d.states = {"s", "t", "u"};
  d.alphabet = {"a", "b"};
  d.start = 0;
  d.accepting = {1, 0, 1};
  d.delta = {
      {1, 0},  // s: a -> t, b -> s
      {1, 2},  // t: a -> t, b -> u
      {0, 2},  // u: a -> s, b -> u
  };
  T12Report report = check_t12(d);
  REQUIRE(report.conditions_1_to_4);
  REQUIRE(report.condition_5);
  CHECK(report.q1 == "s");
  CHECK(report.q2 == "t");
  CHECK(format_word(report.minimized.alphabet, report.x) == "a");
  REQUIRE(report.y.has_value());
  CHECK(format_word(report.minimized.alphabet, *report.y) == "ba");

  // Witness minimality: no length-1 word sends t back to s.
  const Dfa& m = report.minimized;
  int t_idx = m.state_index("t"), s_idx = m.state_index("s");
  for (int letter = 0; letter < m.n_letters(); ++letter)
    CHECK(m.delta[t_idx][letter] != s_idx);
}

TEST_CASE("check_t12 reconstructs a two-letter witness") {
  Dfa d;
  d.states = {"p", "q", "r", "s"};
  d.alphabet = {"a", "b"};
  d.start = 0;
  d.accepting = {1, 1, 1, 0};
  d.delta = {
      {1, 0},  // p: a -> q, b -> p
      {2, 1},  // q: a -> r, b -> q
      {3, 2},  // r: a -> s, b -> r
      {2, 3},  // s: a -> r, b -> s
  };
  T12Report report = check_t12(d);
  REQUIRE(report.conditions_1_to_4);
  CHECK(report.q1 == "p");
  CHECK(report.q2 == "r");
  CHECK(format_word(report.minimized.alphabet, report.x) == "aa");
  CHECK_FALSE(report.condition_5);

  // No single letter witnesses the pattern for any admissible pair.
  const Dfa& m = report.minimized;
  for (int q1 = 0; q1 < m.n_states(); ++q1)
    for (int q2 = 0; q2 < m.n_states(); ++q2) {
      if (q1 == q2) continue;
      for (int letter = 0; letter < m.n_letters(); ++letter) {
        bool one_letter_witness =
            m.delta[q1][letter] == q2 && m.delta[q2][letter] == q2;
        CHECK_FALSE(one_letter_witness);
      }
    }
}

TEST_CASE("check_t12 verdicts are stable under prior minimization") {
  for (const Dfa& dfa : {build_g1(), build_g2(), build_g3(), build_ln(3)}) {
    T12Report direct = check_t12(dfa);
    T12Report after = check_t12(dfa_minimize(dfa));
    CHECK(direct.conditions_1_to_4 == after.conditions_1_to_4);
    CHECK(direct.condition_5 == after.condition_5);
  }
}

TEST_CASE("build_ln matches the non-decreasing-index oracle") {
  for (int n = 1; n <= 4; ++n) {
    Dfa ln = build_ln(n);
    CHECK(ln.n_states() == n + 1);
    int checked = 0;
    std::function<void(Word&)> rec = [&](Word& word) {
      CHECK(dfa_accepts(ln, word) == oracles::in_ln(word));
      ++checked;
      if (word.size() >= 5) return;
      for (int letter = 0; letter < n; ++letter) {
        word.push_back(letter);
        rec(word);
        word.pop_back();
      }
    };
    Word start;
    rec(start);
    CHECK(checked > n);
  }
}

TEST_CASE("build_ln worked examples") {
  Dfa l1 = build_ln(1);
  CHECK(dfa_accepts(l1, {}));
  CHECK(dfa_accepts(l1, {0}));
  CHECK(dfa_accepts(l1, {0, 0, 0}));

  Dfa l2 = build_ln(2);
  CHECK(dfa_accepts(l2, parse_word(l2.alphabet, "a1 a2")));
  CHECK_FALSE(dfa_accepts(l2, parse_word(l2.alphabet, "a2 a1")));

  // The chain pattern admits conditions 1-4 but never condition 5.
  T12Report report = check_t12(l2);
  CHECK(report.conditions_1_to_4);
  CHECK_FALSE(report.condition_5);

  CHECK_THROWS_AS(build_ln(0), std::invalid_argument);
}

TEST_CASE("build_ln(1) minimizes to the one-state full language") {
  CHECK(dfa_minimize(build_ln(1)).n_states() == 1);
  CHECK(dfa_minimize(build_ln(2)).n_states() == 3);
}
