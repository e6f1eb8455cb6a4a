#include "nyspca/simgen.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cstdlib>
#include <string>

#include "nyspca/errors.hpp"
#include "nyspca/io.hpp"
#include "nyspca/rng.hpp"

namespace nyspca {

namespace {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::MatrixXd to_eigen(const Mat& m) {
  return Eigen::Map<const RowMajorMatrix>(m.values().data(), static_cast<Eigen::Index>(m.rows()),
                                          static_cast<Eigen::Index>(m.cols()));
}

void require_symmetric(const Mat& a, const char* who) {
  if (a.rows() != a.cols() || asymmetry(a) > 1e-12 * std::max(1.0, max_abs(a)))
    throw InvalidInput(std::string(who) + ": matrix is not symmetric");
}

Eigen::LLT<Eigen::MatrixXd> cholesky(const Mat& omega, const char* who) {
  require_symmetric(omega, who);
  Eigen::LLT<Eigen::MatrixXd> llt(to_eigen(omega));
  if (llt.info() != Eigen::Success)
    throw DecompositionError(std::string(who) +
                             ": precision matrix is not positive definite; apply pd_repair first");
  return llt;
}

}  // namespace

std::string PrecisionSpec::label() const {
  if (model == Model::band) return "band:" + std::to_string(b);
  return "random:" + format_double(x);
}

double min_eigenvalue(const Mat& a) {
  require_symmetric(a, "min_eigenvalue");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

std::pair<Mat, double> pd_repair(const Mat& omega) {
  require_symmetric(omega, "pd_repair");
  const double lmin = min_eigenvalue(omega);
  if (lmin >= kPdFloor) return {omega, 0.0};
  const double shift = kPdFloor - lmin;
  Mat out = omega;
  for (std::size_t i = 0; i < out.rows(); ++i) out(i, i) += shift;
  return {std::move(out), shift};
}

std::pair<Mat, PrecisionSpec> precision_random(std::size_t p, double x, std::uint64_t seed) {
  if (p < 2) throw InvalidParameter("precision_random: p must be at least 2");
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidParameter("precision_random: x must lie in [0, 1]");
  CounterRng rng(seed, streams::graph);
  Mat omega = Mat::identity(p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j)
      if (rng.next_uniform() < x) omega(i, j) = omega(j, i) = 1.0;
  auto [repaired, shift] = pd_repair(omega);
  PrecisionSpec spec;
  spec.model = PrecisionSpec::Model::random;
  spec.x = x;
  spec.p = p;
  spec.seed = seed;
  spec.pd_shift = shift;
  return {std::move(repaired), spec};
}

std::pair<Mat, PrecisionSpec> precision_band(std::size_t p, std::size_t b) {
  if (b == 0 || b >= p)
    throw InvalidParameter("precision_band: need 1 <= b < p, got b = " + std::to_string(b) +
                           ", p = " + std::to_string(p));
  Mat omega(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = (i > b ? i - b : 0); j < std::min(p, i + b + 1); ++j) omega(i, j) = 1.0;
  auto [repaired, shift] = pd_repair(omega);
  PrecisionSpec spec;
  spec.model = PrecisionSpec::Model::band;
  spec.b = b;
  spec.p = p;
  spec.pd_shift = shift;
  return {std::move(repaired), spec};
}

Mat sample_mvn(std::size_t n, const Mat& omega, std::uint64_t seed) {
  if (n == 0) throw InvalidParameter("sample_mvn: n must be positive");
  const auto llt = cholesky(omega, "sample_mvn");
  const auto p = static_cast<Eigen::Index>(omega.rows());
  CounterRng rng(seed, streams::gaussian);
  // column i of zt is observation i; filled in observation-major order
  Eigen::MatrixXd zt(p, static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i)
    for (Eigen::Index j = 0; j < p; ++j) zt(j, i) = rng.next_normal();
  llt.matrixU().solveInPlace(zt);  // Lᵀ x = z
  Mat x(n, omega.rows());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      x(i, j) = zt(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
  return x;
}

Mat covariance_from_precision(const Mat& omega) {
  const auto llt = cholesky(omega, "covariance_from_precision");
  const auto p = static_cast<Eigen::Index>(omega.rows());
  const Eigen::MatrixXd sigma = llt.solve(Eigen::MatrixXd::Identity(p, p));
  Mat out(omega.rows(), omega.cols());
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < p; ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = 0.5 * (sigma(i, j) + sigma(j, i));
  return out;
}

std::size_t count_edges(const Mat& omega) {
  std::size_t edges = 0;
  for (std::size_t i = 0; i < omega.rows(); ++i)
    for (std::size_t j = i + 1; j < omega.cols(); ++j)
      if (omega(i, j) != 0.0) ++edges;
  return edges;
}

}  // namespace nyspca
