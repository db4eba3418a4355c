#pragma once

#include <optional>

#include "qfalab/dfa.hpp"
#include "qfalab/qfa.hpp"

namespace qfalab {

/// The 8-state automata of the two parity-filtered languages; they differ
/// only in the starting state (q1 vs q4).
Qfa build_k2();
Qfa build_k3();

/// Reversible 4-state automaton (2 non-halting states) deciding "even number
/// of a's" over {a, b} with probability 1.
Qfa build_even_a_qfa();

/// Same automaton with accepting and rejecting sets swapped; p_acc and p_rej
/// exchange exactly on every word.
Qfa complement_qfa(const Qfa& qfa);

struct UnionWeights {
  double alpha1 = 0;  // weight of the first component automaton
  double alpha2 = 0;  // weight of the second
  double alpha3 = 0;  // weight of the immediately-accepting component
  double guaranteed_p = 0;
  bool hypothesis_holds = false;  // 1/p1 + 1/p2 < 3
};

/// Weights alpha1 = p2/(p1+p2+p1p2), alpha2 = p1/(...), alpha3 = p1p2/(...)
/// and the guaranteed recognition probability 2p1p2/(p1+p2+p1p2).
/// Requires 1/2 < p1, p2 <= 1.
UnionWeights union_weights(double p1, double p2);

/// Block direct sum of k1, k2 and one dedicated accepting state. The kappa
/// operator routes the start amplitude as sqrt(alpha1) * (k1's post-kappa
/// state) + sqrt(alpha2) * (k2's post-kappa state) + sqrt(alpha3) * (the
/// accepting state) and is completed to a unitary; every other letter acts
/// blockwise. For every word, p_acc = alpha1*p1(w) + alpha2*p2(w) + alpha3.
/// Requires the hypothesis 1/p1 + 1/p2 < 3.
Qfa probabilistic_union(const Qfa& k1, double p1, const Qfa& k2, double p2);

struct ProbabilityPoint {
  Word word;
  double x = 0;  // acceptance probability under the first automaton
  double y = 0;  // under the second
  bool member = false;
};

/// One point per word |w| <= max_len, membership decided by the oracle.
std::vector<ProbabilityPoint> probability_points(const Qfa& k1, const Qfa& k2,
                                                 const Dfa& oracle, int max_len);

struct Point2 {
  double x = 0;
  double y = 0;
};

struct SeparatingLine {
  double a = 0;
  double b = 0;
  double c = 0;       // line a*x + b*y = c with a^2 + b^2 = 1
  double margin = 0;  // distance from the line to the nearer point set
};

/// Maximum-margin line with all of s1 strictly below and all of s2 strictly
/// above, if the convex hulls are disjoint; nullopt otherwise (touching
/// hulls count as non-separable). Throws on empty input.
std::optional<SeparatingLine> separating_line(const std::vector<Point2>& s1,
                                              const std::vector<Point2>& s2);

}  // namespace qfalab
