#pragma once

#include <random>

#include "qfalab/types.hpp"

namespace qfalab::linalg {

/// max-norm of U†U - I.
double unitarity_error(const Matrix& u);

/// Orthonormal basis of the column space of `a`; singular values <= tol are
/// treated as zero.
Matrix orthonormal_columns(const Matrix& a, double tol);

/// Orthonormal basis of the right nullspace of `a` (columns), rank decided
/// by singular values > tol.
Matrix nullspace(const Matrix& a, double tol);

/// Basis of the orthogonal complement of span(sub) inside span(full).
/// Both arguments must have orthonormal columns and span(sub) ⊆ span(full).
Matrix complement_within(const Matrix& full, const Matrix& sub, double tol);

/// Builds a unitary whose column at `position` equals `column` (must be a
/// unit vector); the remaining columns are obtained by Gram-Schmidt over the
/// standard basis vectors taken in index order.
Matrix complete_unitary(const StateVector& column, int position);

/// Haar-distributed random unitary (Ginibre + QR with phase fix).
Matrix random_unitary(int n, std::mt19937_64& rng);

/// Uniform random unit vector (complex Gaussian coordinates, normalized).
StateVector random_unit_vector(int n, std::mt19937_64& rng);

}  // namespace qfalab::linalg
