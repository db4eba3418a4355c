#pragma once

#include <optional>
#include <utility>

#include "qfalab/qfa.hpp"

namespace qfalab {

struct MeasurementDistribution {
  std::vector<double> per_state;  // |amplitude|^2 per basis state
  double acc = 0;                 // coarse three-outcome marginal
  double rej = 0;
  double non = 0;
};

MeasurementDistribution measurement_distribution(const Qfa& qfa, const StateVector& psi);

/// Unnormalized total variation distance sum_i |p_i - r_i| (range [0, 2] for
/// probability distributions). Throws on size mismatch.
double tv_distance(const std::vector<double>& p, const std::vector<double>& r);

/// Orthonormal columns spanning a subspace of the non-halting coordinate
/// space (vectors live in the full state space, supported on Q_non).
struct SubspaceBasis {
  Matrix columns;
  int dim() const { return static_cast<int>(columns.cols()); }
};

struct DecompositionReport {
  SubspaceBasis e1;  // maximal subspace on which all letter actions stay norm-preserving
  SubspaceBasis e2;  // orthogonal complement of e1 within the non-halting span
  int iterations_used = 0;
  std::vector<int> dims;  // dim E^0, dim E^1, ... (per-iteration subspace dimensions)
};

/// Fixed point of E^{j+1} = { psi in E^j : V_sigma(psi) in E^j for all input
/// letters }, starting from the span of the non-halting coordinates. Rank
/// decisions use a singular-value threshold of 1e-8. Stops when the
/// dimension stabilizes or after dim E_non iterations.
DecompositionReport decompose_nonhalting(const Qfa& qfa);

struct InvarianceReport {
  bool ok = false;
  double max_e1_norm_error = 0;  // worst |  ||V'_w psi|| - 1 | over E1 basis vectors
  double max_e2_leakage = 0;     // worst norm of the E1-projection of a V'_w image of E2
  std::optional<Word> failing_word;
};

/// Exhaustively checks, for every nonempty word |w| <= max_len, that V'_w
/// preserves the norm of each E1 basis vector (within 1e-9) and maps E2 into
/// E2 (E1-leakage <= 1e-9).
InvarianceReport verify_invariance(const Qfa& qfa, const DecompositionReport& report,
                                   int max_len);

/// Orthogonal split psi = psi_I + psi_II with psi_I in E1, psi_II in E2.
/// Requires psi supported on Q_non.
std::pair<StateVector, StateVector> split_state(const Qfa& qfa,
                                                const DecompositionReport& report,
                                                const StateVector& psi);

struct ContractionEstimate {
  double s_est = 0;  // sampled lower bound on S = sup over unit psi in E2 of M_psi
  StateVector attaining_psi;
  Word minimizing_word;  // word of length dim E_non attaining M_psi for attaining_psi
};

/// For the E2 basis vectors plus `samples` random unit vectors of E2,
/// computes M_psi = min over all words of length dim E_non of ||V'_w psi||
/// and returns the largest value observed. A sampled estimate, not the
/// exact supremum. Throws if E2 is trivial.
ContractionEstimate contraction_estimate(const Qfa& qfa, const DecompositionReport& report,
                                         int samples, std::uint64_t seed = 0x9e3779b97f4a7c15ull);

/// Greedy search for a word w with ||V'_w psi|| < delta: each round appends
/// the block of length dim E_non minimizing the surviving norm (truncated at
/// the point where the minimum is reached). Throws if psi is not in E2 or if
/// no round contracts by at least a factor 1 - 1e-6.
Word vanish_word_search(const Qfa& qfa, const DecompositionReport& report,
                        const StateVector& psi, double delta);

}  // namespace qfalab
