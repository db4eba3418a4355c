#include "qfalab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qfalab/linalg.hpp"

namespace qfalab {

namespace {

Matrix real_matrix(int n, std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(n, n);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix permutation(int n, std::initializer_list<std::pair<int, int>> images) {
  // images lists j -> i pairs meaning column j carries basis vector i.
  Matrix m = Matrix::Identity(n, n);
  for (auto [j, i] : images) {
    m.col(j).setZero();
    m(i, j) = 1.0;
  }
  return m;
}

Qfa build_k_base() {
  const double s23 = std::sqrt(2.0 / 3.0);
  const double s13 = std::sqrt(1.0 / 3.0);
  const double s12 = std::sqrt(1.0 / 2.0);

  Qfa k;
  k.states = {"q1", "q2", "q3", "q4", "q5", "q6", "q7", "q8"};
  k.alphabet = {"a", "b"};
  k.accept = {4, 7};  // q5, q8
  k.reject = {5, 6};  // q6, q7

  k.kappa_op = real_matrix(8, {
      {s23, s13, 0, 0, 0, 0, 0, 0},
      {s13, -s23, 0, 0, 0, 0, 0, 0},
      {0, 0, -s23, s13, 0, 0, 0, 0},
      {0, 0, s13, s23, 0, 0, 0, 0},
      {0, 0, 0, 0, 1, 0, 0, 0},
      {0, 0, 0, 0, 0, 1, 0, 0},
      {0, 0, 0, 0, 0, 0, 1, 0},
      {0, 0, 0, 0, 0, 0, 0, 1},
  });
  k.letter_ops.push_back(real_matrix(8, {
      {0, 0, 0, 1, 0, 0, 0, 0},
      {0, 0, 1, 0, 0, 0, 0, 0},
      {0, 1, 0, 0, 0, 0, 0, 0},
      {1, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 1, 0, 0, 0},
      {0, 0, 0, 0, 0, 1, 0, 0},
      {0, 0, 0, 0, 0, 0, 1, 0},
      {0, 0, 0, 0, 0, 0, 0, 1},
  }));
  k.letter_ops.push_back(real_matrix(8, {
      {0, 0, 0, 0, s12, s12, 0, 0},
      {0, 1, 0, 0, 0, 0, 0, 0},
      {0, 0, 1, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 1, 0},
      {s12, 0, 0, 0, 0.5, -0.5, 0, 0},
      {s12, 0, 0, 0, -0.5, 0.5, 0, 0},
      {0, 0, 0, 1, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 1},
  }));
  k.dollar_op = real_matrix(8, {
      {0, 0, 0, 0, 1, 0, 0, 0},
      {0, 0, 0, 0, 0, 1, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 1},
      {0, 0, 0, 0, 0, 0, 1, 0},
      {1, 0, 0, 0, 0, 0, 0, 0},
      {0, 1, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 1, 0, 0, 0, 0},
      {0, 0, 1, 0, 0, 0, 0, 0},
  });
  return k;
}

}  // namespace

Qfa build_k2() {
  Qfa k = build_k_base();
  k.start = 0;  // q1
  return k;
}

Qfa build_k3() {
  Qfa k = build_k_base();
  k.start = 3;  // q4
  return k;
}

Qfa build_even_a_qfa() {
  Qfa k;
  k.states = {"even", "odd", "acc", "rej"};
  k.alphabet = {"a", "b"};
  k.start = 0;
  k.accept = {2};
  k.reject = {3};
  k.kappa_op = Matrix::Identity(4, 4);
  k.letter_ops.push_back(permutation(4, {{0, 1}, {1, 0}}));  // a toggles parity
  k.letter_ops.push_back(Matrix::Identity(4, 4));            // b is ignored
  k.dollar_op = permutation(4, {{0, 2}, {1, 3}, {2, 0}, {3, 1}});
  return k;
}

Qfa complement_qfa(const Qfa& qfa) {
  Qfa out = qfa;
  std::swap(out.accept, out.reject);
  return out;
}

UnionWeights union_weights(double p1, double p2) {
  if (!(p1 > 0.5) || !(p1 <= 1.0) || !(p2 > 0.5) || !(p2 <= 1.0))
    throw std::invalid_argument("union_weights: probabilities must lie in (1/2, 1]");
  UnionWeights w;
  double denom = p1 + p2 + p1 * p2;
  w.alpha1 = p2 / denom;
  w.alpha2 = p1 / denom;
  w.alpha3 = p1 * p2 / denom;
  w.guaranteed_p = 2.0 * p1 * p2 / denom;
  w.hypothesis_holds = (1.0 / p1 + 1.0 / p2) < 3.0;
  return w;
}

Qfa probabilistic_union(const Qfa& k1, double p1, const Qfa& k2, double p2) {
  if (k1.alphabet != k2.alphabet)
    throw std::invalid_argument("probabilistic_union: alphabets differ");
  UnionWeights w = union_weights(p1, p2);
  if (!w.hypothesis_holds)
    throw std::invalid_argument("probabilistic_union: hypothesis 1/p1 + 1/p2 < 3 fails");
  for (const Qfa* k : {&k1, &k2}) {
    ValidationReport report = validate_qfa(*k);
    if (!report.ok())
      throw std::invalid_argument("probabilistic_union: component automaton invalid: " +
                                  report.violations.front());
  }

  const int n1 = k1.n_states(), n2 = k2.n_states();
  const int n = n1 + n2 + 1;
  const int acc_state = n1 + n2;

  Qfa out;
  out.alphabet = k1.alphabet;
  for (const auto& s : k1.states) out.states.push_back("k1." + s);
  for (const auto& s : k2.states) out.states.push_back("k2." + s);
  out.states.push_back("always_acc");
  out.start = k1.start;

  for (int q : k1.accept) out.accept.push_back(q);
  for (int q : k2.accept) out.accept.push_back(n1 + q);
  out.accept.push_back(acc_state);
  for (int q : k1.reject) out.reject.push_back(q);
  for (int q : k2.reject) out.reject.push_back(n1 + q);

  auto blockwise = [&](const Matrix& a, const Matrix& b) {
    Matrix m = Matrix::Zero(n, n);
    m.topLeftCorner(n1, n1) = a;
    m.block(n1, n1, n2, n2) = b;
    m(acc_state, acc_state) = 1.0;
    return m;
  };
  for (int letter = 0; letter < k1.n_letters(); ++letter)
    out.letter_ops.push_back(blockwise(k1.letter_ops[letter], k2.letter_ops[letter]));
  out.dollar_op = blockwise(k1.dollar_op, k2.dollar_op);

  // The kappa action on the start state distributes the amplitude over the
  // three components; the rest of the matrix only has to complete it.
  StateVector start_column = StateVector::Zero(n);
  start_column.segment(0, n1) = std::sqrt(w.alpha1) * k1.kappa_op.col(k1.start);
  start_column.segment(n1, n2) = std::sqrt(w.alpha2) * k2.kappa_op.col(k2.start);
  start_column(acc_state) = std::sqrt(w.alpha3);
  out.kappa_op = linalg::complete_unitary(start_column, out.start);
  return out;
}

std::vector<ProbabilityPoint> probability_points(const Qfa& k1, const Qfa& k2,
                                                 const Dfa& oracle, int max_len) {
  if (k1.alphabet != k2.alphabet || k1.alphabet != oracle.alphabet)
    throw std::invalid_argument("probability_points: alphabets differ");
  std::vector<ProbabilityPoint> points;
  for_each_word(oracle.n_letters(), max_len, [&](const Word& w) {
    ProbabilityPoint p;
    p.word = w;
    p.x = run_word(k1, w).p_acc;
    p.y = run_word(k2, w).p_acc;
    p.member = dfa_accepts(oracle, w);
    points.push_back(std::move(p));
  });
  return points;
}

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point2& a, const Point2& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  const int n = static_cast<int>(pts.size());
  if (n <= 2) return pts;
  std::vector<Point2> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  int lower = k + 1;
  for (int i = n - 2; i >= 0; --i) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

Point2 closest_on_segment(const Point2& p, const Point2& a, const Point2& b) {
  double dx = b.x - a.x, dy = b.y - a.y;
  double len2 = dx * dx + dy * dy;
  if (len2 == 0) return a;
  double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return {a.x + t * dx, a.y + t * dy};
}

double dist(const Point2& a, const Point2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

bool point_in_hull(const Point2& p, const std::vector<Point2>& hull) {
  if (hull.size() == 1)
    return p.x == hull[0].x && p.y == hull[0].y;
  if (hull.size() == 2) {
    Point2 q = closest_on_segment(p, hull[0], hull[1]);
    return dist(p, q) == 0.0;
  }
  for (size_t i = 0; i < hull.size(); ++i) {
    const Point2& a = hull[i];
    const Point2& b = hull[(i + 1) % hull.size()];
    if (cross(a, b, p) < 0) return false;
  }
  return true;
}

bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  double d1 = cross(c, d, a), d2 = cross(c, d, b);
  double d3 = cross(a, b, c), d4 = cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  auto on = [](const Point2& p, const Point2& q, const Point2& r) {
    return cross(p, q, r) == 0 && std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
           std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
  };
  return on(c, d, a) || on(c, d, b) || on(a, b, c) || on(a, b, d);
}

std::vector<std::pair<Point2, Point2>> hull_edges(const std::vector<Point2>& hull) {
  std::vector<std::pair<Point2, Point2>> edges;
  if (hull.size() == 1) {
    edges.emplace_back(hull[0], hull[0]);
  } else {
    for (size_t i = 0; i < hull.size(); ++i)
      edges.emplace_back(hull[i], hull[(i + 1) % hull.size()]);
  }
  return edges;
}

}  // namespace

std::optional<SeparatingLine> separating_line(const std::vector<Point2>& s1,
                                              const std::vector<Point2>& s2) {
  if (s1.empty() || s2.empty())
    throw std::invalid_argument("separating_line: point set is empty");
  std::vector<Point2> h1 = convex_hull(s1);
  std::vector<Point2> h2 = convex_hull(s2);

  for (const Point2& p : h1)
    if (point_in_hull(p, h2)) return std::nullopt;
  for (const Point2& p : h2)
    if (point_in_hull(p, h1)) return std::nullopt;
  for (const auto& [a, b] : hull_edges(h1))
    for (const auto& [c, d] : hull_edges(h2))
      if (segments_intersect(a, b, c, d)) return std::nullopt;

  // Closest pair between the hull boundaries; the maximum-margin separator
  // is the perpendicular bisector of that segment.
  double best = std::numeric_limits<double>::infinity();
  Point2 pa{}, pb{};
  for (const Point2& p : h1)
    for (const auto& [c, d] : hull_edges(h2)) {
      Point2 q = closest_on_segment(p, c, d);
      double dd = dist(p, q);
      if (dd < best) best = dd, pa = p, pb = q;
    }
  for (const Point2& p : h2)
    for (const auto& [c, d] : hull_edges(h1)) {
      Point2 q = closest_on_segment(p, c, d);
      double dd = dist(p, q);
      if (dd < best) best = dd, pa = q, pb = p;
    }
  if (!(best > 0) || !std::isfinite(best)) return std::nullopt;

  SeparatingLine line;
  line.a = (pb.x - pa.x) / best;
  line.b = (pb.y - pa.y) / best;
  line.c = line.a * (pa.x + pb.x) / 2 + line.b * (pa.y + pb.y) / 2;

  double s1_max = -std::numeric_limits<double>::infinity();
  double s2_min = std::numeric_limits<double>::infinity();
  for (const Point2& p : s1) s1_max = std::max(s1_max, line.a * p.x + line.b * p.y);
  for (const Point2& p : s2) s2_min = std::min(s2_min, line.a * p.x + line.b * p.y);
  line.margin = std::min(line.c - s1_max, s2_min - line.c);
  if (!(line.margin > 0)) return std::nullopt;
  return line;
}

}  // namespace qfalab
