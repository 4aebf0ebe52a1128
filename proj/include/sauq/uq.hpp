#ifndef SAUQ_UQ_HPP
#define SAUQ_UQ_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sauq/error.hpp"
#include "sauq/local_sa.hpp"
#include "sauq/models.hpp"
#include "sauq/morris.hpp"
#include "sauq/parallel.hpp"
#include "sauq/problem.hpp"

namespace sauq {

/// Symmetric positive semidefinite input covariance, rows/cols in parameter order.
class CovarianceMatrix {
 public:
  CovarianceMatrix(std::vector<std::string> names, Eigen::MatrixXd entries)
      : names_(std::move(names)), entries_(std::move(entries)) {
    validate();
  }

  /// Independent inputs: sd_i^2 on the diagonal.
  static CovarianceMatrix diagonal(std::span<const ParameterSpec> specs) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(specs.size()),
                                              static_cast<Eigen::Index>(specs.size()));
    for (std::size_t i = 0; i < specs.size(); ++i) {
      const double sd = specs[i].sd();
      c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = sd * sd;
    }
    return CovarianceMatrix(parameter_names(specs), std::move(c));
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const Eigen::MatrixXd& entries() const { return entries_; }

 private:
  void validate() const {
    const auto n = static_cast<Eigen::Index>(names_.size());
    if (entries_.rows() != n || entries_.cols() != n) {
      throw SpecificationError("covariance: matrix shape does not match parameter count");
    }
    if (!entries_.allFinite()) throw SpecificationError("covariance: non-finite entry");
    const double scale = n > 0 ? std::max(1.0, entries_.cwiseAbs().maxCoeff()) : 1.0;
    if (n > 0 && (entries_ - entries_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      throw SpecificationError("covariance: matrix is not symmetric");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      if (entries_(i, i) < 0.0) throw SpecificationError("covariance: negative variance");
    }
    if (n == 0) return;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(entries_, Eigen::EigenvaluesOnly);
    const double tol = 1e-10 * entries_.trace();
    if (eig.eigenvalues().minCoeff() < -tol) {
      throw SpecificationError("covariance: matrix is not positive semidefinite");
    }
  }

  std::vector<std::string> names_;
  Eigen::MatrixXd entries_;
};

/// Sandwich rule C_y = S C_x S^T; S is n_y x n_x in physical units.
inline Eigen::MatrixXd deterministic_uq(const Eigen::MatrixXd& sensitivities,
                                        const CovarianceMatrix& cx) {
  if (sensitivities.cols() != static_cast<Eigen::Index>(cx.size())) {
    throw ArgumentError("deterministic uq: sensitivity columns (" +
                        std::to_string(sensitivities.cols()) + ") differ from covariance size (" +
                        std::to_string(cx.size()) + ")");
  }
  return sensitivities * cx.entries() * sensitivities.transpose();
}

/// Single-response form: the scalar variance S C_x S^T.
inline double deterministic_variance(std::span<const double> sensitivities,
                                     const CovarianceMatrix& cx) {
  Eigen::MatrixXd s(1, static_cast<Eigen::Index>(sensitivities.size()));
  for (std::size_t i = 0; i < sensitivities.size(); ++i) s(0, static_cast<Eigen::Index>(i)) = sensitivities[i];
  return deterministic_uq(s, cx)(0, 0);
}

enum class UqMethod { MonteCarlo, DeterministicOat, DeterministicMorris };

inline std::string_view to_string(UqMethod m) {
  switch (m) {
    case UqMethod::MonteCarlo: return "monte_carlo";
    case UqMethod::DeterministicOat: return "deterministic_oat";
    case UqMethod::DeterministicMorris: return "deterministic_morris";
  }
  return "?";
}

struct UncertaintyResult {
  double mean = 0.0;
  double variance = 0.0;
  double sd = 0.0;
  /// 95% confidence interval of the mean; Monte Carlo only.
  std::optional<std::pair<double, double>> ci95;
  UqMethod method = UqMethod::MonteCarlo;
  std::optional<std::size_t> n_samples;
};

/// Sample mean, (n - 1) variance and mean +/- 1.96 sd / sqrt(n).
inline UncertaintyResult sample_moments(std::span<const double> y) {
  if (y.size() < 2) throw ArgumentError("uq: need at least 2 samples");
  const double n = static_cast<double>(y.size());
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : y) ss += (v - mean) * (v - mean);
  UncertaintyResult r;
  r.mean = mean;
  r.variance = ss / (n - 1.0);
  r.sd = std::sqrt(r.variance);
  const double half = 1.96 * r.sd / std::sqrt(n);
  r.ci95 = std::pair{mean - half, mean + half};
  r.method = UqMethod::MonteCarlo;
  r.n_samples = y.size();
  return r;
}

/// Evaluates the model on every row; failures report the offending row.
template <ScalarModel F>
std::vector<double> evaluate_rows(const F& model, const SampleMatrix& x, unsigned threads = 1) {
  std::vector<double> y(x.rows());
  parallel_for(x.rows(), threads, [&](std::size_t r) {
    try {
      y[r] = static_cast<double>(model(x.row(r)));
    } catch (const std::exception& e) {
      throw ModelError(r, e.what());
    }
  });
  return y;
}

template <ScalarModel F>
UncertaintyResult monte_carlo_uq(const F& model, std::span<const ParameterSpec> specs,
                                 std::size_t n_samples, std::uint64_t seed, unsigned threads = 1) {
  if (n_samples < 2) throw ArgumentError("uq: need at least 2 samples");
  const auto x = sample_matrix(specs, n_samples, seed);
  const auto y = evaluate_rows(model, x, threads);
  return sample_moments(y);
}

/// Deterministic result centred on the nominal response.
inline UncertaintyResult deterministic_result(double nominal, double variance, UqMethod method) {
  UncertaintyResult r;
  r.mean = nominal;
  r.variance = variance;
  r.sd = std::sqrt(variance);
  r.method = method;
  return r;
}

struct UqComparison {
  UncertaintyResult monte_carlo;
  UncertaintyResult oat;
  UncertaintyResult morris;
};

/// Monte Carlo versus sandwich-rule propagation with OAT raw sensitivities
/// and with Morris mu* magnitudes, all under the diagonal covariance of `specs`.
template <ScalarModel F>
UqComparison uq_compare(const F& model, std::span<const ParameterSpec> specs, std::size_t n_samples,
                        std::uint64_t seed, const OatResult& oat, const MorrisStats& morris,
                        unsigned threads = 1) {
  if (oat.raw.size() != specs.size() || morris.mu_star.size() != specs.size()) {
    throw ArgumentError("uq_compare: sensitivity sizes differ from parameter count");
  }
  const auto cx = CovarianceMatrix::diagonal(specs);
  UqComparison out;
  out.monte_carlo = monte_carlo_uq(model, specs, n_samples, seed, threads);
  out.oat = deterministic_result(oat.y0, deterministic_variance(oat.raw, cx), UqMethod::DeterministicOat);
  out.morris = deterministic_result(oat.y0, deterministic_variance(morris.mu_star, cx),
                                    UqMethod::DeterministicMorris);
  return out;
}

}  // namespace sauq

#endif  // SAUQ_UQ_HPP
