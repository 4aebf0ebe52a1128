#ifndef SAUQ_SOBOL_HPP
#define SAUQ_SOBOL_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <span>
#include <string>
#include <vector>

#include "sauq/error.hpp"
#include "sauq/models.hpp"
#include "sauq/parallel.hpp"
#include "sauq/problem.hpp"
#include "sauq/rng.hpp"

namespace sauq {

/// Which product enters the spurious-correlation accumulator CF.
enum class CorrectionTerm {
  /// g0_i * g0'_i: sample correlation of the two independent base runs.
  Cross,
  /// g0_i * g0_i, the literal form of the published listing. It does not
  /// estimate a spurious correlation and biases every index; kept for comparison.
  AsPrinted,
};

struct SobolOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  CorrectionTerm correction = CorrectionTerm::Cross;
};

struct SobolIndices {
  std::vector<double> first;
  std::vector<double> total;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t evaluations = 0;
};

/// Model outputs of the radial design: base runs on X and X', plus for each
/// parameter j the runs with column j exchanged between the two matrices.
struct RadialEvaluations {
  std::size_t samples = 0;
  std::size_t n_params = 0;
  std::vector<double> g0;        // F(X)
  std::vector<double> g0_prime;  // F(X')
  std::vector<double> g;         // row-major N x n_x: F(X with column j from X')
  std::vector<double> g_prime;   // row-major N x n_x: F(X' with column j from X)
};

namespace detail {

inline void standardize_in_place(std::vector<double>& v, std::size_t stride, std::size_t offset,
                                 std::size_t count, const char* label) {
  double mean = 0.0;
  for (std::size_t i = 0; i < count; ++i) mean += v[i * stride + offset];
  mean /= static_cast<double>(count);
  double ss = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double d = v[i * stride + offset] - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(count - 1));
  if (!(sd > 0.0) || !std::isfinite(sd)) {
    throw DegenerateDataError(std::string("sobol: zero output variance in ") + label);
  }
  for (std::size_t i = 0; i < count; ++i) {
    auto& x = v[i * stride + offset];
    x = (x - mean) / sd;
  }
}

}  // namespace detail

inline constexpr double kSobolDegeneracyTolerance = 1e-12;

/// First-order and total indices from radial evaluations: correlation
/// estimators with spurious-correlation correction (Glen and Isaacs, D3).
inline SobolIndices sobol_from_evaluations(RadialEvaluations ev,
                                           CorrectionTerm correction = CorrectionTerm::Cross) {
  const std::size_t N = ev.samples;
  const std::size_t d = ev.n_params;
  if (N < 2 || d == 0) throw ArgumentError("sobol: empty evaluation set");
  if (ev.g0.size() != N || ev.g0_prime.size() != N || ev.g.size() != N * d ||
      ev.g_prime.size() != N * d) {
    throw ArgumentError("sobol: evaluation arrays do not match N x n_x");
  }

  detail::standardize_in_place(ev.g0, 1, 0, N, "F(X)");
  detail::standardize_in_place(ev.g0_prime, 1, 0, N, "F(X')");
  for (std::size_t j = 0; j < d; ++j) {
    detail::standardize_in_place(ev.g, d, j, N, "F(X) with a column from X'");
    detail::standardize_in_place(ev.g_prime, d, j, N, "F(X') with a column from X");
  }

  std::vector<double> c(d, 0.0), c_prime(d, 0.0), cf(d, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    const double a = ev.g0[i];
    const double b = ev.g0_prime[i];
    const double base = correction == CorrectionTerm::Cross ? a * b : a * a;
    for (std::size_t j = 0; j < d; ++j) {
      const double gij = ev.g[i * d + j];
      const double gpij = ev.g_prime[i * d + j];
      c[j] += a * gpij + b * gij;
      c_prime[j] += a * gij + b * gpij;
      cf[j] += base + gij * gpij;
    }
  }

  SobolIndices out;
  out.first.resize(d);
  out.total.resize(d);
  out.samples = N;
  const double two_n = 2.0 * static_cast<double>(N);
  for (std::size_t j = 0; j < d; ++j) {
    const double C = c[j] / two_n;
    const double Cp = c_prime[j] / two_n;
    const double CF = cf[j] / two_n;
    const double denom = 1.0 - CF * CF;
    if (std::abs(denom) < kSobolDegeneracyTolerance) {
      throw NumericalError("sobol: 1 - CF^2 vanishes for parameter " + std::to_string(j + 1));
    }
    const double E = (C - CF * Cp) / denom;
    const double Ep = (Cp - CF * C) / denom;
    const double q = 1.0 - E * Ep;
    if (std::abs(q) < kSobolDegeneracyTolerance) {
      throw NumericalError("sobol: 1 - E*E' vanishes for parameter " + std::to_string(j + 1));
    }
    out.first[j] = C - CF * Ep / q;
    out.total[j] = 1.0 - Cp + CF * E / q;
  }
  return out;
}

/// Evaluates every output on a shared radial design; N (2 + 2 n_x) runs per output.
template <ScalarModel F>
std::vector<RadialEvaluations> radial_evaluations(std::span<const F> outputs,
                                                  std::span<const ParameterSpec> specs,
                                                  const SobolOptions& options) {
  if (options.samples < 100) throw ArgumentError("sobol: need at least 100 samples");
  if (outputs.empty()) throw ArgumentError("sobol: no model outputs");
  Rng rng(options.seed);
  const SampleMatrix x = sample_matrix(specs, options.samples, rng, options.seed);
  const SampleMatrix xp = sample_matrix(specs, options.samples, rng, options.seed);
  const std::size_t N = options.samples;
  const std::size_t d = specs.size();

  std::vector<RadialEvaluations> ev(outputs.size());
  for (auto& e : ev) {
    e.samples = N;
    e.n_params = d;
    e.g0.resize(N);
    e.g0_prime.resize(N);
    e.g.resize(N * d);
    e.g_prime.resize(N * d);
  }
  parallel_for(N, options.threads, [&](std::size_t i) {
    try {
      std::vector<double> a(x.row(i).begin(), x.row(i).end());
      std::vector<double> b(xp.row(i).begin(), xp.row(i).end());
      for (std::size_t k = 0; k < outputs.size(); ++k) {
        ev[k].g0[i] = static_cast<double>(outputs[k](std::span<const double>(a)));
        ev[k].g0_prime[i] = static_cast<double>(outputs[k](std::span<const double>(b)));
      }
      for (std::size_t j = 0; j < d; ++j) {
        std::swap(a[j], b[j]);
        for (std::size_t k = 0; k < outputs.size(); ++k) {
          ev[k].g[i * d + j] = static_cast<double>(outputs[k](std::span<const double>(a)));
          ev[k].g_prime[i * d + j] = static_cast<double>(outputs[k](std::span<const double>(b)));
        }
        std::swap(a[j], b[j]);
      }
    } catch (const ModelError&) {
      throw;
    } catch (const std::exception& e) {
      throw ModelError(i, e.what());
    }
  });
  return ev;
}

/// One set of indices per output, all from the same X, X' draw.
template <ScalarModel F>
std::vector<SobolIndices> estimate_sobol(std::span<const F> outputs,
                                         std::span<const ParameterSpec> specs,
                                         const SobolOptions& options) {
  auto ev = radial_evaluations(outputs, specs, options);
  std::vector<SobolIndices> out;
  for (auto& e : ev) {
    auto s = sobol_from_evaluations(std::move(e), options.correction);
    s.seed = options.seed;
    s.evaluations = options.samples * (2 + 2 * specs.size());
    out.push_back(std::move(s));
  }
  return out;
}

template <ScalarModel F>
SobolIndices estimate_sobol(const F& model, std::span<const ParameterSpec> specs,
                            const SobolOptions& options) {
  return estimate_sobol(std::span<const F>(&model, 1), specs, options).front();
}

}  // namespace sauq

#endif  // SAUQ_SOBOL_HPP
