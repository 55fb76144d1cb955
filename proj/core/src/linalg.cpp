#include "symflex/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "symflex/error.hpp"

namespace symflex {
namespace {

using Eigen::MatrixXd;

struct Svd {
  MatrixXd u;
  Eigen::VectorXd s;
  MatrixXd v;
};

Svd full_svd(const MatrixXd& a) {
  Svd out;
  if (a.rows() == 0 || a.cols() == 0) {
    out.u = MatrixXd::Identity(a.rows(), a.rows());
    out.v = MatrixXd::Identity(a.cols(), a.cols());
    out.s.resize(0);
    return out;
  }
  Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.u = svd.matrixU();
  out.v = svd.matrixV();
  out.s = svd.singularValues();
  return out;
}

int count_above(const Eigen::VectorXd& s, double tol) {
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol) ++r;
  return r;
}

void require_finite(const MatrixXd& a) {
  if (!a.allFinite()) throw InvalidArgument("matrix has non-finite entries");
}

}  // namespace

RankReport rank_with_tolerance(const MatrixXd& matrix, std::optional<double> tol) {
  require_finite(matrix);
  RankReport report;
  const auto svd = full_svd(matrix);
  const double smax = svd.s.size() > 0 ? svd.s(0) : 0.0;
  const double cutoff = tol.value_or(static_cast<double>(std::max(matrix.rows(), matrix.cols())) *
                                     std::numeric_limits<double>::epsilon() * smax);
  report.singular_values.assign(svd.s.data(), svd.s.data() + svd.s.size());
  report.tolerance_used = cutoff;
  report.rank = count_above(svd.s, cutoff);
  report.nullity = static_cast<int>(matrix.cols()) - report.rank;
  return report;
}

RankReport relative_rank(const MatrixXd& matrix, double relative) {
  require_finite(matrix);
  if (matrix.size() == 0) return rank_with_tolerance(matrix, 0.0);
  const double smax = spectral_norm(matrix);
  return rank_with_tolerance(matrix, relative * smax);
}

Tolerances Tolerances::from_environment() {
  Tolerances t;
  if (const char* env = std::getenv(kRankToleranceEnv); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(value > 0.0) || !std::isfinite(value))
      throw InvalidArgument(std::string(kRankToleranceEnv) + " must be a positive number, got '" + env + "'");
    t.rank_relative = value;
  }
  return t;
}

MatrixXd column_basis(const MatrixXd& a, double relative) {
  if (a.cols() == 0 || a.rows() == 0) return MatrixXd(a.rows(), 0);
  const auto svd = full_svd(a);
  const int r = count_above(svd.s, relative * svd.s(0));
  return svd.u.leftCols(r);
}

MatrixXd null_space(const MatrixXd& a, double relative) {
  if (a.rows() == 0) return MatrixXd::Identity(a.cols(), a.cols());
  if (a.cols() == 0) return MatrixXd(0, 0);
  const auto svd = full_svd(a);
  const int r = count_above(svd.s, relative * svd.s(0));
  return svd.v.rightCols(a.cols() - r);
}

MatrixXd left_null_space(const MatrixXd& a, double relative) {
  return null_space(a.transpose(), relative);
}

MatrixXd subspace_intersection(const MatrixXd& a, const MatrixXd& b, double angle_tol) {
  if (a.cols() == 0 || b.cols() == 0) return MatrixXd(a.rows(), 0);
  // Columns of a whose component outside span(b) vanishes.
  const MatrixXd residual = a - b * (b.transpose() * a);
  const auto svd = full_svd(residual);
  const int r = count_above(svd.s, angle_tol);
  const MatrixXd coeffs = svd.v.rightCols(a.cols() - r);
  if (coeffs.cols() == 0) return MatrixXd(a.rows(), 0);
  return column_basis(a * coeffs, angle_tol);
}

MatrixXd orthogonal_complement_within(const MatrixXd& a, const MatrixXd& b, double angle_tol) {
  if (a.cols() == 0) return MatrixXd(a.rows(), 0);
  if (b.cols() == 0) return column_basis(a, angle_tol);
  const MatrixXd residual = a - b * (b.transpose() * a);
  const auto svd = full_svd(residual);
  const int r = count_above(svd.s, angle_tol);
  return svd.u.leftCols(r);
}

double subspace_distance(const MatrixXd& a, const MatrixXd& b) {
  if (a.cols() != b.cols()) return 1.0;
  if (a.cols() == 0) return 0.0;
  return std::min(1.0, spectral_norm(a - b * (b.transpose() * a)));
}

double spectral_norm(const MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<MatrixXd> svd(a);
  return svd.singularValues()(0);
}

}  // namespace symflex
