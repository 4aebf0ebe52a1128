#ifndef SAUQ_LOCAL_SA_HPP
#define SAUQ_LOCAL_SA_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sauq/error.hpp"
#include "sauq/models.hpp"
#include "sauq/parallel.hpp"

namespace sauq {

enum class FdScheme { Forward, Central };

inline std::string_view to_string(FdScheme s) { return s == FdScheme::Forward ? "forward" : "central"; }

/// One-at-a-time finite-difference sensitivities around a nominal point.
struct OatResult {
  std::vector<double> raw;
  /// raw_i * x_i0 / y0; empty when y0 == 0.
  std::optional<std::vector<double>> normalized;
  /// Signed step actually used per parameter.
  std::vector<double> step;
  /// True where x_i0 == 0 forced an absolute step.
  std::vector<bool> absolute_step;
  FdScheme scheme = FdScheme::Forward;
  double perturbation = 0.01;
  double y0 = 0.0;
  std::size_t evaluations = 0;
};

inline constexpr double kMinAbsoluteStep = 1e-12;

template <ScalarModel F>
OatResult oat_sensitivity(const F& model, std::span<const double> x0,
                          double rel_perturbation = 0.01, FdScheme scheme = FdScheme::Forward,
                          unsigned threads = 1) {
  if (!(rel_perturbation > 0.0)) throw ArgumentError("oat: perturbation must be positive");
  if (x0.empty()) throw ArgumentError("oat: empty nominal point");
  const std::size_t n = x0.size();

  OatResult r;
  r.scheme = scheme;
  r.perturbation = rel_perturbation;
  r.step.resize(n);
  r.absolute_step.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    double h = rel_perturbation * x0[i];
    if (x0[i] == 0.0) {
      h = rel_perturbation;
      r.absolute_step[i] = true;
    }
    if (std::abs(h) < kMinAbsoluteStep) h = std::copysign(kMinAbsoluteStep, h);
    r.step[i] = h;
  }

  r.y0 = static_cast<double>(model(x0));
  const std::size_t per_param = scheme == FdScheme::Forward ? 1 : 2;
  std::vector<double> plus(n), minus(n);
  parallel_for(n * per_param, threads, [&](std::size_t k) {
    const std::size_t i = k / per_param;
    const bool down = k % per_param == 1;
    std::vector<double> x(x0.begin(), x0.end());
    x[i] += down ? -r.step[i] : r.step[i];
    (down ? minus : plus)[i] = static_cast<double>(model(std::span<const double>(x)));
  });
  r.evaluations = 1 + n * per_param;

  r.raw.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.raw[i] = scheme == FdScheme::Forward ? (plus[i] - r.y0) / r.step[i]
                                           : (plus[i] - minus[i]) / (2.0 * r.step[i]);
  }
  if (r.y0 != 0.0) {
    std::vector<double> norm(n);
    for (std::size_t i = 0; i < n; ++i) norm[i] = r.raw[i] * x0[i] / r.y0;
    r.normalized = std::move(norm);
  }
  return r;
}

}  // namespace sauq

#endif  // SAUQ_LOCAL_SA_HPP
