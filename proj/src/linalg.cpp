#include "qfalab/linalg.hpp"

#include <stdexcept>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace qfalab::linalg {

double unitarity_error(const Matrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  Matrix residual = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return residual.cwiseAbs().maxCoeff();
}

Matrix orthonormal_columns(const Matrix& a, double tol) {
  if (a.cols() == 0) return Matrix(a.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++rank;
  return svd.matrixU().leftCols(rank);
}

Matrix nullspace(const Matrix& a, double tol) {
  if (a.cols() == 0) return Matrix(0, 0);
  if (a.rows() == 0) return Matrix::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++rank;
  return svd.matrixV().rightCols(a.cols() - rank);
}

Matrix complement_within(const Matrix& full, const Matrix& sub, double tol) {
  if (sub.cols() == 0) return full;
  Matrix residual = full - sub * (sub.adjoint() * full);
  return orthonormal_columns(residual, tol);
}

Matrix complete_unitary(const StateVector& column, int position) {
  const int n = static_cast<int>(column.size());
  if (position < 0 || position >= n)
    throw std::invalid_argument("complete_unitary: position out of range");
  if (std::abs(column.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("complete_unitary: column is not a unit vector");

  Matrix u = Matrix::Zero(n, n);
  u.col(position) = column;
  std::vector<int> taken = {position};
  int next_candidate = 0;
  for (int j = 0; j < n; ++j) {
    if (j == position) continue;
    for (; next_candidate < n; ++next_candidate) {
      StateVector v = StateVector::Zero(n);
      v(next_candidate) = 1.0;
      for (int t : taken) v -= u.col(t).dot(v) * u.col(t);
      double norm = v.norm();
      if (norm > 1e-8) {
        u.col(j) = v / norm;
        taken.push_back(j);
        ++next_candidate;
        break;
      }
    }
    if (u.col(j).isZero(0.0))
      throw std::logic_error("complete_unitary: ran out of independent candidates");
  }
  return u;
}

Matrix random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    Complex d = r(i, i);
    double mag = std::abs(d);
    q.col(i) *= (mag > 0) ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

StateVector random_unit_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  StateVector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  double norm = v.norm();
  if (norm == 0.0) return random_unit_vector(n, rng);
  return v / norm;
}

}  // namespace qfalab::linalg
