#ifndef SAUQ_REGRESSION_SA_HPP
#define SAUQ_REGRESSION_SA_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sauq/error.hpp"
#include "sauq/problem.hpp"

namespace sauq {

enum class RegressionMethod { SRC, SRRC, PCC, PRCC };

inline std::string_view to_string(RegressionMethod m) {
  switch (m) {
    case RegressionMethod::SRC: return "src";
    case RegressionMethod::SRRC: return "srrc";
    case RegressionMethod::PCC: return "pcc";
    case RegressionMethod::PRCC: return "prcc";
  }
  return "?";
}

struct RegressionSaResult {
  std::vector<std::string> parameters;
  std::vector<double> coefficients;
  RegressionMethod method = RegressionMethod::SRC;
  /// Coefficient of determination of the standardized fit (SRC/SRRC only).
  std::optional<double> r_squared;
  std::size_t n_samples = 0;
};

/// Rescales to mean 0 and sample standard deviation 1 (n - 1 divisor).
inline std::vector<double> standardize(std::span<const double> v, std::string_view label = "data") {
  if (v.size() < 2) throw DataError("standardize: need at least two values for " + std::string(label));
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  if (!(sd > 0.0) || !std::isfinite(sd)) {
    throw DegenerateDataError("zero-variance column '" + std::string(label) + "'");
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - mean) / sd;
  return out;
}

namespace detail {

inline void check_regression_shape(const SampleMatrix& x, std::span<const double> y) {
  if (y.size() != x.rows()) throw ArgumentError("regression: response length differs from sample count");
  if (x.rows() <= x.cols() + 1) {
    throw ArgumentError("regression: need more than n_x + 1 samples");
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw DataError("regression: non-finite response value");
  }
}

/// Standardized (X | y) as an N x (n_x + 1) matrix, response in the last column.
inline Eigen::MatrixXd standardized_design(const SampleMatrix& x, std::span<const double> y,
                                           bool ranks) {
  const auto n = static_cast<Eigen::Index>(x.rows());
  const auto p = static_cast<Eigen::Index>(x.cols());
  Eigen::MatrixXd z(n, p + 1);
  auto fill = [&](Eigen::Index c, std::span<const double> col, std::string_view label) {
    const auto s = ranks ? standardize(rank_transform(col), label) : standardize(col, label);
    for (Eigen::Index r = 0; r < n; ++r) z(r, c) = s[static_cast<std::size_t>(r)];
  };
  for (Eigen::Index c = 0; c < p; ++c) {
    const auto col = x.column(static_cast<std::size_t>(c));
    fill(c, col, x.columns()[static_cast<std::size_t>(c)]);
  }
  fill(p, y, "response");
  return z;
}

inline RegressionSaResult fit_src(const SampleMatrix& x, std::span<const double> y, bool ranks) {
  check_regression_shape(x, y);
  const Eigen::MatrixXd z = standardized_design(x, y, ranks);
  const Eigen::Index p = z.cols() - 1;
  const auto design = z.leftCols(p);
  const Eigen::VectorXd response = z.col(p);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < p) throw LinearAlgebraError("regression: rank-deficient design matrix");
  const Eigen::VectorXd beta = qr.solve(response);
  const double ssr = (response - design * beta).squaredNorm();
  const double sst = response.squaredNorm();

  RegressionSaResult r;
  r.parameters = x.columns();
  r.coefficients.assign(beta.data(), beta.data() + p);
  r.method = ranks ? RegressionMethod::SRRC : RegressionMethod::SRC;
  r.r_squared = 1.0 - ssr / sst;
  r.n_samples = x.rows();
  return r;
}

inline RegressionSaResult fit_pcc(const SampleMatrix& x, std::span<const double> y, bool ranks) {
  check_regression_shape(x, y);
  const Eigen::MatrixXd z = standardized_design(x, y, ranks);
  const Eigen::Index p = z.cols() - 1;
  const Eigen::MatrixXd corr = (z.transpose() * z) / static_cast<double>(z.rows() - 1);

  Eigen::FullPivLU<Eigen::MatrixXd> lu(corr);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) throw DegenerateDataError("pcc: singular correlation matrix");
  const Eigen::MatrixXd q = lu.inverse();

  RegressionSaResult r;
  r.parameters = x.columns();
  r.coefficients.resize(static_cast<std::size_t>(p));
  for (Eigen::Index i = 0; i < p; ++i) {
    const double rho = -q(i, p) / std::sqrt(q(i, i) * q(p, p));
    r.coefficients[static_cast<std::size_t>(i)] = std::clamp(rho, -1.0, 1.0);
  }
  r.method = ranks ? RegressionMethod::PRCC : RegressionMethod::PCC;
  r.n_samples = x.rows();
  return r;
}

}  // namespace detail

/// Standardized regression coefficients of y on the columns of x.
inline RegressionSaResult src(const SampleMatrix& x, std::span<const double> y) {
  return detail::fit_src(x, y, false);
}

inline RegressionSaResult srrc(const SampleMatrix& x, std::span<const double> y) {
  return detail::fit_src(x, y, true);
}

/// Partial correlation of each input with y given all other inputs, read off
/// the inverse of the joint correlation matrix.
inline RegressionSaResult pcc(const SampleMatrix& x, std::span<const double> y) {
  return detail::fit_pcc(x, y, false);
}

inline RegressionSaResult prcc(const SampleMatrix& x, std::span<const double> y) {
  return detail::fit_pcc(x, y, true);
}

inline RegressionSaResult regression_sa(RegressionMethod m, const SampleMatrix& x,
                                        std::span<const double> y) {
  switch (m) {
    case RegressionMethod::SRC: return src(x, y);
    case RegressionMethod::SRRC: return srrc(x, y);
    case RegressionMethod::PCC: return pcc(x, y);
    case RegressionMethod::PRCC: return prcc(x, y);
  }
  throw ArgumentError("unknown regression method");
}

}  // namespace sauq

#endif  // SAUQ_REGRESSION_SA_HPP
