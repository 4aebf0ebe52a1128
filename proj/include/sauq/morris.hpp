#ifndef SAUQ_MORRIS_HPP
#define SAUQ_MORRIS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sauq/error.hpp"
#include "sauq/models.hpp"
#include "sauq/parallel.hpp"
#include "sauq/problem.hpp"
#include "sauq/rng.hpp"

namespace sauq {

struct MorrisOptions {
  std::size_t trajectories = 100;
  std::size_t levels = 20;
  /// Step as a fraction of each parameter range; default p / (2 (p - 1)).
  std::optional<double> step_fraction;
  std::uint64_t seed = 1;
};

/// R trajectories of n_x + 1 points each, stored row-major. Row k of a
/// trajectory (k >= 1) differs from row k - 1 only in parameter moved[k].
struct MorrisDesign {
  std::size_t n_params = 0;
  std::size_t trajectories = 0;
  std::size_t levels = 0;
  double step_fraction = 0.0;
  /// Step magnitude per parameter in native units.
  std::vector<double> delta;
  std::vector<Bounds> bounds;
  std::vector<double> points;
  /// Parameter perturbed to reach each row; unused for a trajectory's first row.
  std::vector<std::size_t> moved;
  /// Signed native step taken to reach each row.
  std::vector<double> step;
  std::uint64_t seed = 0;

  std::size_t rows() const { return trajectories * (n_params + 1); }

  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(points).subspan(r * n_params, n_params);
  }
};

inline double default_morris_step(std::size_t levels) {
  const double p = static_cast<double>(levels);
  return p / (2.0 * (p - 1.0));
}

inline MorrisDesign generate_design(std::span<const ParameterSpec> specs,
                                    const MorrisOptions& options) {
  validate_specs(specs);
  if (options.levels < 2) throw ArgumentError("morris: need at least 2 grid levels");
  if (options.trajectories < 2) throw ArgumentError("morris: need at least 2 trajectories");
  const double frac = options.step_fraction.value_or(default_morris_step(options.levels));
  if (!(frac > 0.0 && frac <= 1.0)) throw ArgumentError("morris: step fraction must be in (0, 1]");

  const std::size_t n = specs.size();
  MorrisDesign d;
  d.n_params = n;
  d.trajectories = options.trajectories;
  d.levels = options.levels;
  d.step_fraction = frac;
  d.seed = options.seed;
  for (const auto& s : specs) {
    const auto b = s.screening_bounds();
    d.bounds.push_back(b);
    d.delta.push_back(frac * (b.hi - b.lo));
  }
  d.points.reserve(d.rows() * n);
  d.moved.reserve(d.rows());
  d.step.reserve(d.rows());

  constexpr double tol = 1e-12;
  Rng rng(options.seed);
  std::vector<double> unit(n);
  std::vector<std::size_t> order(n);
  auto emit = [&](std::size_t moved, double step) {
    for (std::size_t i = 0; i < n; ++i) {
      d.points.push_back(d.bounds[i].lo + unit[i] * (d.bounds[i].hi - d.bounds[i].lo));
    }
    d.moved.push_back(moved);
    d.step.push_back(step);
  };
  const auto last_level = static_cast<double>(options.levels - 1);
  for (std::size_t r = 0; r < options.trajectories; ++r) {
    for (auto& u : unit) u = static_cast<double>(rng.index(options.levels)) / last_level;
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(order.begin(), order.end());
    emit(n, 0.0);
    for (std::size_t i : order) {
      double sign;
      if (unit[i] + frac <= 1.0 + tol) {
        sign = 1.0;
      } else if (unit[i] - frac >= -tol) {
        sign = -1.0;
      } else {
        throw ArgumentError("morris: step fraction too large for grid level; use even p or step <= 0.5");
      }
      unit[i] = std::clamp(unit[i] + sign * frac, 0.0, 1.0);
      emit(i, sign * d.delta[i]);
    }
  }
  return d;
}

/// effects[i][r] = elementary effect of parameter i on trajectory r.
inline std::vector<std::vector<double>> elementary_effects(const MorrisDesign& design,
                                                           std::span<const double> outputs) {
  if (outputs.size() != design.rows()) {
    throw ArgumentError("morris: " + std::to_string(outputs.size()) + " outputs for " +
                        std::to_string(design.rows()) + " design rows");
  }
  const std::size_t n = design.n_params;
  std::vector<std::vector<double>> effects(n, std::vector<double>(design.trajectories));
  for (std::size_t r = 0; r < design.trajectories; ++r) {
    const std::size_t base = r * (n + 1);
    for (std::size_t k = 1; k <= n; ++k) {
      const std::size_t row = base + k;
      effects[design.moved[row]][r] = (outputs[row] - outputs[row - 1]) / design.step[row];
    }
  }
  return effects;
}

struct MorrisStats {
  std::vector<double> mu;
  std::vector<double> mu_star;
  std::vector<double> sigma;
  /// Scaled by x_i0 / y0; absent when y0 == 0.
  std::optional<std::vector<double>> mu_norm;
  std::optional<std::vector<double>> mu_star_norm;
  std::size_t trajectories = 0;
  std::size_t levels = 0;
};

inline MorrisStats morris_stats(const std::vector<std::vector<double>>& effects,
                                std::span<const double> x0, double y0) {
  if (effects.size() != x0.size()) throw ArgumentError("morris: nominal point size mismatch");
  MorrisStats s;
  const std::size_t n = effects.size();
  s.mu.resize(n);
  s.mu_star.resize(n);
  s.sigma.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& d = effects[i];
    if (d.size() < 2) throw ArgumentError("morris: need at least 2 effects per parameter");
    const double r = static_cast<double>(d.size());
    double sum = 0.0, abs_sum = 0.0;
    for (double v : d) {
      sum += v;
      abs_sum += std::abs(v);
    }
    s.mu[i] = sum / r;
    s.mu_star[i] = abs_sum / r;
    double ss = 0.0;
    for (double v : d) ss += (v - s.mu[i]) * (v - s.mu[i]);
    s.sigma[i] = std::sqrt(ss / (r - 1.0));
  }
  s.trajectories = effects.empty() ? 0 : effects.front().size();
  if (y0 != 0.0) {
    std::vector<double> mn(n), msn(n);
    for (std::size_t i = 0; i < n; ++i) {
      mn[i] = s.mu[i] * x0[i] / y0;
      msn[i] = s.mu_star[i] * x0[i] / y0;
    }
    s.mu_norm = std::move(mn);
    s.mu_star_norm = std::move(msn);
  }
  return s;
}

struct MorrisResult {
  MorrisDesign design;
  std::vector<double> outputs;
  std::vector<std::vector<double>> effects;
  MorrisStats stats;
};

/// Design, evaluation and statistics in one call; normalization uses the
/// nominal point of `specs`.
template <ScalarModel F>
MorrisResult morris_screening(const F& model, std::span<const ParameterSpec> specs,
                              const MorrisOptions& options, unsigned threads = 1) {
  MorrisResult res;
  res.design = generate_design(specs, options);
  res.outputs.resize(res.design.rows());
  parallel_for(res.design.rows(), threads, [&](std::size_t r) {
    try {
      res.outputs[r] = static_cast<double>(model(res.design.row(r)));
    } catch (const std::exception& e) {
      throw ModelError(r, e.what());
    }
  });
  res.effects = elementary_effects(res.design, res.outputs);
  const auto x0 = nominal_point(specs);
  res.stats = morris_stats(res.effects, x0, static_cast<double>(model(std::span<const double>(x0))));
  res.stats.levels = options.levels;
  return res;
}

enum class MorrisClass { Negligible, Linear, NonlinearOrInteracting };

inline std::string_view to_string(MorrisClass c) {
  switch (c) {
    case MorrisClass::Negligible: return "negligible";
    case MorrisClass::Linear: return "linear";
    case MorrisClass::NonlinearOrInteracting: return "nonlinear_or_interacting";
  }
  return "?";
}

/// Tags each parameter by its (mu*, sigma) position: negligible when mu* is
/// below `negligible_fraction` of the largest mu*, otherwise nonlinear or
/// interacting when sigma exceeds `sigma_ratio` * mu*.
inline std::vector<MorrisClass> classify(const MorrisStats& s, double negligible_fraction = 0.05,
                                         double sigma_ratio = 0.1) {
  const double top = s.mu_star.empty() ? 0.0 : *std::max_element(s.mu_star.begin(), s.mu_star.end());
  std::vector<MorrisClass> tags;
  for (std::size_t i = 0; i < s.mu_star.size(); ++i) {
    if (s.mu_star[i] < negligible_fraction * top) {
      tags.push_back(MorrisClass::Negligible);
    } else if (s.sigma[i] > sigma_ratio * s.mu_star[i]) {
      tags.push_back(MorrisClass::NonlinearOrInteracting);
    } else {
      tags.push_back(MorrisClass::Linear);
    }
  }
  return tags;
}

}  // namespace sauq

#endif  // SAUQ_MORRIS_HPP
