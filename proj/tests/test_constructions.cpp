#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "qfalab/constructions.hpp"
#include "test_util.hpp"

using namespace qfalab;

namespace {

Qfa build_even_b_qfa() {
  Qfa q = build_even_a_qfa();
  std::swap(q.letter_ops[0], q.letter_ops[1]);
  return q;
}

}  // namespace

TEST_CASE("k2 and k3 validate and share everything but the start state") {
  Qfa k2 = build_k2(), k3 = build_k3();
  CHECK(validate_qfa(k2).ok());
  CHECK(validate_qfa(k3).ok());
  CHECK(k2.start == 0);
  CHECK(k3.start == 3);
  CHECK(k2.kappa_op == k3.kappa_op);
  CHECK(run_word(k2, {}).p_acc == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(run_word(k3, {0}).p_acc == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("complement swaps acceptance and rejection exactly") {
  Qfa k2 = build_k2();
  Qfa comp = complement_qfa(k2);
  RunTrace t = run_word(comp, {});
  CHECK(t.p_rej == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  for (const std::string& text : oracles::words_up_to(8)) {
    Word word = parse_word(k2.alphabet, text);
    RunTrace a = run_word(k2, word);
    RunTrace b = run_word(comp, word);
    CHECK(a.p_acc == b.p_rej);
    CHECK(a.p_rej == b.p_acc);
  }

  Qfa twice = complement_qfa(complement_qfa(k2));
  CHECK(twice.accept == k2.accept);
  CHECK(twice.reject == k2.reject);
}

TEST_CASE("complement of a tie stays a tie") {
  // One non-halting state that the right endmarker splits evenly.
  Qfa q;
  q.states = {"s", "yes", "no"};
  q.alphabet = {"a"};
  q.start = 0;
  q.accept = {1};
  q.reject = {2};
  q.kappa_op = Matrix::Identity(3, 3);
  q.letter_ops = {Matrix::Identity(3, 3)};
  double r = std::sqrt(0.5);
  q.dollar_op = Matrix::Zero(3, 3);
  q.dollar_op(1, 0) = r;
  q.dollar_op(2, 0) = r;
  q.dollar_op(0, 1) = 1.0;
  q.dollar_op(1, 2) = r;
  q.dollar_op(2, 2) = -r;
  REQUIRE(validate_qfa(q).ok());
  CHECK(run_word(q, {0}).outcome == Outcome::Tie);
  CHECK(run_word(complement_qfa(q), {0}).outcome == Outcome::Tie);
}

TEST_CASE("random automata: complement swaps the trace on every word") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 10; ++t) {
    Qfa qfa = testutil::random_qfa(5, rng);
    Qfa comp = complement_qfa(qfa);
    for (int k = 0; k < 10; ++k) {
      Word word = testutil::random_word(10, 2, rng);
      RunTrace a = run_word(qfa, word);
      RunTrace b = run_word(comp, word);
      CHECK(a.p_acc == b.p_rej);
      CHECK(a.p_rej == b.p_acc);
      CHECK(a.p_undecided == b.p_undecided);
    }
  }
}

TEST_CASE("union_weights worked values") {
  UnionWeights limit = union_weights(2.0 / 3.0, 2.0 / 3.0);
  CHECK(limit.guaranteed_p == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_FALSE(limit.hypothesis_holds);

  UnionWeights exact = union_weights(1.0, 1.0);
  CHECK(exact.alpha1 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(exact.alpha2 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(exact.alpha3 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(exact.guaranteed_p == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(exact.hypothesis_holds);

  UnionWeights mixed = union_weights(1.0, 2.0 / 3.0);
  CHECK(mixed.guaranteed_p == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
  CHECK(mixed.hypothesis_holds);

  CHECK_THROWS_AS(union_weights(0.5, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(union_weights(0.9, 1.1), std::invalid_argument);
}

TEST_CASE("union_weights algebraic identities over a grid") {
  for (double p1 = 0.51; p1 <= 1.0; p1 += 0.07) {
    for (double p2 = 0.51; p2 <= 1.0; p2 += 0.07) {
      UnionWeights w = union_weights(p1, p2);
      CHECK(w.alpha1 + w.alpha2 + w.alpha3 == doctest::Approx(1.0).epsilon(1e-12));
      CHECK((w.guaranteed_p > 0.5) == w.hypothesis_holds);
    }
  }
}

TEST_CASE("probabilistic_union obeys the mixture law") {
  Qfa k1 = build_even_a_qfa();
  Qfa k2 = build_k2();
  UnionWeights w = union_weights(1.0, 2.0 / 3.0);
  Qfa combined = probabilistic_union(k1, 1.0, k2, 2.0 / 3.0);
  CHECK(validate_qfa(combined).ok());
  CHECK(combined.n_states() == 13);

  for (const std::string& text : oracles::words_up_to(6)) {
    Word word = parse_word(k1.alphabet, text);
    double direct = run_word(combined, word).p_acc;
    double mixture = w.alpha1 * run_word(k1, word).p_acc +
                     w.alpha2 * run_word(k2, word).p_acc + w.alpha3;
    CHECK(direct == doctest::Approx(mixture).epsilon(1e-9));
  }
}

TEST_CASE("probabilistic_union margin reaches the guaranteed probability") {
  Qfa combined = probabilistic_union(build_even_a_qfa(), 1.0, build_k2(), 2.0 / 3.0);
  Dfa oracle = dfa_combine(build_even_a_dfa(), build_g2(), BoolOp::Union);
  MarginResult margin = recognition_margin(combined, oracle, 8);
  CHECK(margin.p >= 4.0 / 7.0 - 1e-9);
  CHECK(margin.p == doctest::Approx(4.0 / 7.0).epsilon(1e-9));
}

TEST_CASE("two exact automata: members of both accepted with probability 1") {
  Qfa ka = build_even_a_qfa();
  Qfa kb = build_even_b_qfa();
  UnionWeights w = union_weights(1.0, 1.0);
  Qfa combined = probabilistic_union(ka, 1.0, kb, 1.0);
  for (const std::string& text : oracles::words_up_to(8)) {
    Word word = parse_word(ka.alphabet, text);
    RunTrace trace = run_word(combined, word);
    bool in_a = oracles::even_a(text);
    bool in_b = std::count(text.begin(), text.end(), 'b') % 2 == 0;
    if (in_a && in_b) CHECK(trace.p_acc == doctest::Approx(1.0).epsilon(1e-12));
    if (!in_a && !in_b) CHECK(trace.p_rej >= w.guaranteed_p - 1e-12);
  }
}

TEST_CASE("probabilistic_union input validation") {
  CHECK_THROWS_AS(probabilistic_union(build_k2(), 2.0 / 3.0, build_k3(), 2.0 / 3.0),
                  std::invalid_argument);  // hypothesis fails at the limit case
  Qfa other = build_even_a_qfa();
  other.alphabet = {"x", "y"};
  CHECK_THROWS_AS(probabilistic_union(other, 1.0, build_k2(), 2.0 / 3.0),
                  std::invalid_argument);
}

TEST_CASE("probability_points against the union oracle") {
  std::vector<ProbabilityPoint> points = probability_points(build_k2(), build_k3(),
                                                            build_g1(), 6);
  CHECK(points.size() == 127);
  REQUIRE(points.front().word.empty());
  CHECK(points.front().x == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(points.front().y == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(points.front().member);
  for (const ProbabilityPoint& p : points)
    if (p.member) CHECK(std::max(p.x, p.y) >= 2.0 / 3.0 - 1e-9);
}

TEST_CASE("probability_points over an empty alphabet yields one point") {
  Qfa q;
  q.states = {"s", "t"};
  q.alphabet = {};
  q.start = 0;
  q.accept = {1};
  q.kappa_op = Matrix::Identity(2, 2);
  q.dollar_op = Matrix::Zero(2, 2);
  q.dollar_op(1, 0) = 1.0;
  q.dollar_op(0, 1) = 1.0;
  REQUIRE(validate_qfa(q).ok());
  Dfa d;
  d.states = {"s"};
  d.alphabet = {};
  d.start = 0;
  d.accepting = {1};
  d.delta = {{}};
  std::vector<ProbabilityPoint> points = probability_points(q, q, d, 1000);
  REQUIRE(points.size() == 1);
  CHECK(points[0].word.empty());
  CHECK(points[0].x == 1.0);
}

TEST_CASE("separating_line finds the diagonal bisector for two points") {
  auto line = separating_line({{0.2, 0.2}}, {{0.8, 0.8}});
  REQUIRE(line.has_value());
  CHECK(line->a == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(line->b == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(line->c == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
  CHECK(line->margin == doctest::Approx(0.3 * std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("separating_line reports the limit-case configuration as unseparable") {
  double t = 1.0 / 3.0, u = 2.0 / 3.0;
  std::vector<Point2> s1 = {{0, 0}, {t, 0}, {0, t}, {t, t}};
  std::vector<Point2> s2 = {{u, 0}, {1, 0}, {1, 1}, {0, 1}, {0, u}, {u, u}};
  CHECK_FALSE(separating_line(s1, s2).has_value());
}

TEST_CASE("separating_line splits the bounded-rejection configuration") {
  // Single non-member point vs the three member boxes at p1 = p2 = 0.6.
  std::vector<Point2> s1 = {{0.4, 0.4}};
  std::vector<Point2> s2 = {
      {0.6, 0.6}, {1, 0.6}, {1, 1}, {0.6, 1},      // both
      {0.6, 0.4}, {1, 0.4}, {1, 0.6},              // first only
      {0.4, 0.6}, {0.4, 1}, {0.6, 1},              // second only
  };
  auto line = separating_line(s1, s2);
  REQUIRE(line.has_value());
  CHECK(line->margin > 0.05);
  for (const Point2& p : s1) CHECK(line->a * p.x + line->b * p.y < line->c);
  for (const Point2& p : s2) CHECK(line->a * p.x + line->b * p.y > line->c);
}

TEST_CASE("separating_line rejects empty inputs and touching hulls") {
  CHECK_THROWS_AS(separating_line({}, {{0.5, 0.5}}), std::invalid_argument);
  CHECK_FALSE(separating_line({{0.5, 0.5}}, {{0.5, 0.5}}).has_value());
  CHECK_FALSE(
      separating_line({{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}).has_value());  // crossing segments
}
