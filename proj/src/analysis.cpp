#include "qfalab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qfalab/linalg.hpp"

namespace qfalab {

namespace {

constexpr double kRankTol = 1e-8;

void require_nonhalting_support(const Qfa& qfa, const StateVector& psi) {
  if (psi.size() != qfa.n_states())
    throw std::invalid_argument("state vector dimension mismatch");
  std::vector<char> halting = qfa.halting_mask();
  for (int q = 0; q < qfa.n_states(); ++q)
    if (halting[q] && std::abs(psi(q)) > kDefaultTolerance)
      throw std::invalid_argument("state has support on halting state '" +
                                  qfa.states[q] + "'");
}

// V'_sigma applied to every column.
Matrix projected_letter(const Qfa& qfa, int letter, const Matrix& columns) {
  Matrix out = qfa.letter_ops[letter] * columns;
  for (int q : qfa.accept) out.row(q).setZero();
  for (int q : qfa.reject) out.row(q).setZero();
  return out;
}

}  // namespace

MeasurementDistribution measurement_distribution(const Qfa& qfa, const StateVector& psi) {
  if (psi.size() != qfa.n_states())
    throw std::invalid_argument("state vector dimension mismatch");
  MeasurementDistribution dist;
  dist.per_state.resize(qfa.n_states());
  for (int q = 0; q < qfa.n_states(); ++q) dist.per_state[q] = std::norm(psi(q));
  std::vector<char> acc = qfa.accept_mask(), rej = qfa.reject_mask();
  for (int q = 0; q < qfa.n_states(); ++q) {
    if (acc[q]) dist.acc += dist.per_state[q];
    else if (rej[q]) dist.rej += dist.per_state[q];
    else dist.non += dist.per_state[q];
  }
  return dist;
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& r) {
  if (p.size() != r.size())
    throw std::invalid_argument("tv_distance: distributions have different support size");
  double delta = 0;
  for (size_t i = 0; i < p.size(); ++i) delta += std::abs(p[i] - r[i]);
  return delta;
}

DecompositionReport decompose_nonhalting(const Qfa& qfa) {
  const int n = qfa.n_states();
  std::vector<int> non = qfa.nonhalting_states();
  const int m = static_cast<int>(non.size());

  DecompositionReport report;
  report.dims.push_back(m);
  Matrix basis = Matrix::Zero(n, m);
  for (int i = 0; i < m; ++i) basis(non[i], i) = 1.0;
  Matrix e0 = basis;

  while (basis.cols() > 0) {
    const int d = static_cast<int>(basis.cols());
    // Rows of `stacked`: components of V_sigma * basis outside span(basis).
    Matrix stacked(n * qfa.n_letters(), d);
    for (int letter = 0; letter < qfa.n_letters(); ++letter) {
      Matrix image = qfa.letter_ops[letter] * basis;
      image -= basis * (basis.adjoint() * image);
      stacked.block(n * letter, 0, n, d) = image;
    }
    Matrix keep = linalg::nullspace(stacked, kRankTol);
    ++report.iterations_used;
    report.dims.push_back(static_cast<int>(keep.cols()));
    if (keep.cols() == d) break;  // fixed point, span unchanged
    basis = basis * keep;
    if (report.iterations_used >= m) break;
  }

  report.e1.columns = basis;
  report.e2.columns = linalg::complement_within(e0, basis, kRankTol);
  return report;
}

InvarianceReport verify_invariance(const Qfa& qfa, const DecompositionReport& report,
                                   int max_len) {
  InvarianceReport result;
  const Matrix& b1 = report.e1.columns;
  const Matrix& b2 = report.e2.columns;

  Word current;
  std::function<void(const Matrix&, const Matrix&, int)> walk =
      [&](const Matrix& images1, const Matrix& images2, int depth) {
        if (depth > 0) {
          for (int j = 0; j < images1.cols(); ++j) {
            double err = std::abs(images1.col(j).norm() - 1.0);
            if (err > result.max_e1_norm_error) result.max_e1_norm_error = err;
            if (err > kDefaultTolerance && !result.failing_word)
              result.failing_word = current;
          }
          if (b1.cols() > 0 && images2.cols() > 0) {
            Matrix leak = b1.adjoint() * images2;
            for (int j = 0; j < leak.cols(); ++j) {
              double l = leak.col(j).norm();
              if (l > result.max_e2_leakage) result.max_e2_leakage = l;
              if (l > kDefaultTolerance && !result.failing_word)
                result.failing_word = current;
            }
          }
        }
        if (depth == max_len) return;
        for (int letter = 0; letter < qfa.n_letters(); ++letter) {
          current.push_back(letter);
          walk(projected_letter(qfa, letter, images1),
               projected_letter(qfa, letter, images2), depth + 1);
          current.pop_back();
        }
      };
  walk(b1, b2, 0);
  result.ok = !result.failing_word.has_value();
  return result;
}

std::pair<StateVector, StateVector> split_state(const Qfa& qfa,
                                                const DecompositionReport& report,
                                                const StateVector& psi) {
  require_nonhalting_support(qfa, psi);
  const Matrix& b1 = report.e1.columns;
  const Matrix& b2 = report.e2.columns;
  StateVector psi_one = b1.cols() > 0 ? StateVector(b1 * (b1.adjoint() * psi))
                                      : StateVector(StateVector::Zero(psi.size()));
  StateVector psi_two = b2.cols() > 0 ? StateVector(b2 * (b2.adjoint() * psi))
                                      : StateVector(StateVector::Zero(psi.size()));
  return {psi_one, psi_two};
}

namespace {

struct BlockScan {
  double best_norm = std::numeric_limits<double>::infinity();
  int best_attained_depth = 0;  // earliest prefix length where best_norm is reached
  Word best_word;               // full block of length n
};

// Exhaustive scan of all length-`len` blocks from psi; tracks the block with
// the smallest final norm, preferring earlier attainment, then DFS (lex)
// order. Norms are non-increasing along a block, so the final norm is the
// minimum over its prefixes.
void scan_blocks(const Qfa& qfa, const StateVector& psi, int len, BlockScan& out) {
  Word current;
  std::vector<double> norms = {psi.norm()};
  std::function<void(const StateVector&, int)> walk = [&](const StateVector& state,
                                                          int depth) {
    if (depth == len) {
      double final_norm = norms.back();
      int attained = 0;
      while (attained < len && norms[attained] > final_norm * (1.0 + 1e-12) + 1e-300)
        ++attained;
      if (final_norm < out.best_norm - 1e-15 ||
          (final_norm < out.best_norm + 1e-15 && attained < out.best_attained_depth)) {
        out.best_norm = final_norm;
        out.best_attained_depth = attained;
        out.best_word = current;
      }
      return;
    }
    for (int letter = 0; letter < qfa.n_letters(); ++letter) {
      StateVector next = step_letter(qfa, state, letter).next;
      current.push_back(letter);
      norms.push_back(next.norm());
      walk(next, depth + 1);
      norms.pop_back();
      current.pop_back();
    }
  };
  walk(psi, 0);
}

}  // namespace

ContractionEstimate contraction_estimate(const Qfa& qfa, const DecompositionReport& report,
                                         int samples, std::uint64_t seed) {
  if (report.e2.dim() == 0)
    throw std::invalid_argument("contraction_estimate: E2 is trivial (empty E2)");
  if (samples < 1) throw std::invalid_argument("contraction_estimate: samples must be >= 1");
  const int block_len = report.dims.empty() ? 0 : report.dims.front();

  std::vector<StateVector> candidates;
  for (int j = 0; j < report.e2.dim(); ++j)
    candidates.push_back(report.e2.columns.col(j));
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    StateVector coeffs = linalg::random_unit_vector(report.e2.dim(), rng);
    candidates.push_back(report.e2.columns * coeffs);
  }

  ContractionEstimate best;
  best.s_est = -1;
  for (const StateVector& psi : candidates) {
    BlockScan scan;
    scan_blocks(qfa, psi, block_len, scan);
    if (scan.best_norm > best.s_est) {
      best.s_est = scan.best_norm;
      best.attaining_psi = psi;
      best.minimizing_word = scan.best_word;
    }
  }
  return best;
}

Word vanish_word_search(const Qfa& qfa, const DecompositionReport& report,
                        const StateVector& psi, double delta) {
  if (!(delta > 0)) throw std::invalid_argument("vanish_word_search: delta must be > 0");
  require_nonhalting_support(qfa, psi);
  if (psi.norm() > 1.0 + kDefaultTolerance)
    throw std::invalid_argument("vanish_word_search: state norm exceeds 1");
  if (report.e1.dim() > 0 && (report.e1.columns.adjoint() * psi).norm() > kDefaultTolerance)
    throw std::invalid_argument("vanish_word_search: state is not in E2");

  const int block_len = report.dims.empty() ? 0 : report.dims.front();
  Word word;
  StateVector state = psi;
  double norm = state.norm();
  double best_factor = 1.0;
  int rounds = 0;
  while (norm >= delta) {
    BlockScan scan;
    scan_blocks(qfa, state, block_len, scan);
    double factor = norm > 0 ? scan.best_norm / norm : 0.0;
    if (factor > 1.0 - 1e-6)
      throw std::runtime_error(
          "vanish_word_search: state does not contract (decomposition tolerance issue?)");
    best_factor = std::min(best_factor, factor);

    Word block(scan.best_word.begin(), scan.best_word.begin() + scan.best_attained_depth);
    for (int letter : block) state = step_letter(qfa, state, letter).next;
    word.insert(word.end(), block.begin(), block.end());
    norm = state.norm();
    ++rounds;

    int k_max = 1 + static_cast<int>(std::ceil(std::log(delta) / std::log(best_factor)));
    if (rounds > k_max)
      throw std::runtime_error("vanish_word_search: iteration cap exceeded");
  }
  return word;
}

}  // namespace qfalab
