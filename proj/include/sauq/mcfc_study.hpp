#ifndef SAUQ_MCFC_STUDY_HPP
#define SAUQ_MCFC_STUDY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sauq/error.hpp"
#include "sauq/local_sa.hpp"
#include "sauq/models.hpp"
#include "sauq/morris.hpp"
#include "sauq/problem.hpp"
#include "sauq/regression_sa.hpp"
#include "sauq/sobol.hpp"
#include "sauq/uq.hpp"

namespace sauq {

// ---------------------------------------------------------------------------
// Current-density sweep
// ---------------------------------------------------------------------------

struct SweepOptions {
  double j_lo = 0.0;
  double j_hi = 6000.0;
  std::size_t steps = 61;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  McfcConstants constants{};
};

struct SweepResult {
  std::vector<double> j_grid;
  std::vector<double> nominal_P, mean_P, sd_P;
  std::vector<double> nominal_eta, mean_eta, sd_eta;
  /// Grid point with the largest nominal power.
  std::size_t grid_argmax = 0;
  /// Optimum refined between the neighbours of grid_argmax.
  double j_star = 0.0;
  double P_star = 0.0;
  double eta_star = 0.0;
  /// Monte Carlo moments at j_star (j held fixed).
  double mean_P_star = 0.0, sd_P_star = 0.0;
  double mean_eta_star = 0.0, sd_eta_star = 0.0;
};

inline double mcfc_nominal_power(double j, const McfcConstants& c = {}) {
  return mcfc_outputs(McfcParams{.j = j}, c).power;
}

/// Golden-section maximisation of nominal power on [lo, hi].
inline double refine_optimum(double lo, double hi, const McfcConstants& c = {}, double tol = 1.0) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = mcfc_nominal_power(x1, c);
  double f2 = mcfc_nominal_power(x2, c);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = mcfc_nominal_power(x2, c);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = mcfc_nominal_power(x1, c);
    }
  }
  return 0.5 * (a + b);
}

inline std::vector<double> uniform_grid(double lo, double hi, std::size_t steps) {
  std::vector<double> g(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    g[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1);
  }
  return g;
}

/// Optimum current density: coarse grid, then golden section inside the
/// bracketing interval.
inline double locate_optimum(double j_lo, double j_hi, std::size_t steps,
                             const McfcConstants& c = {}) {
  const auto grid = uniform_grid(j_lo, j_hi, steps);
  std::size_t best = 0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (mcfc_nominal_power(grid[k], c) > mcfc_nominal_power(grid[best], c)) best = k;
  }
  const double lo = grid[best == 0 ? 0 : best - 1];
  const double hi = grid[std::min(best + 1, grid.size() - 1)];
  return refine_optimum(lo, hi, c);
}

namespace detail {

/// The eight operating parameters other than j, all uncertain.
inline std::vector<ParameterSpec> mcfc_specs_without_j() {
  auto specs = mcfc_parameter_specs();
  specs.erase(specs.begin());
  return specs;
}

struct McfcMoments {
  double mean_P, sd_P, mean_eta, sd_eta;
};

inline McfcMoments mcfc_moments_at(double j, std::size_t samples, std::uint64_t seed,
                                   const McfcConstants& c, unsigned threads) {
  const auto specs = mcfc_specs_without_j();
  const auto x = sample_matrix(specs, samples, seed);
  std::vector<double> p(samples), eta(samples);
  parallel_for(samples, threads, [&](std::size_t r) {
    std::array<double, McfcParams::kCount> full{};
    full[0] = j;
    const auto row = x.row(r);
    std::copy(row.begin(), row.end(), full.begin() + 1);
    try {
      const auto out = mcfc_outputs(McfcParams::from_span(full), c);
      p[r] = out.power;
      eta[r] = out.efficiency;
    } catch (const std::exception& e) {
      throw ModelError(r, e.what());
    }
  });
  const auto mp = sample_moments(p);
  const auto me = sample_moments(eta);
  return {mp.mean, mp.sd, me.mean, me.sd};
}

}  // namespace detail

/// Nominal and Monte Carlo power/efficiency across a current-density grid.
/// Grid point k uses seed + k.
inline SweepResult sweep(const SweepOptions& o) {
  if (!(o.j_lo >= 0.0 && o.j_lo < o.j_hi)) throw ArgumentError("sweep: need 0 <= j_lo < j_hi");
  if (o.steps < 2) throw ArgumentError("sweep: need at least 2 grid points");
  SweepResult s;
  s.j_grid = uniform_grid(o.j_lo, o.j_hi, o.steps);
  for (std::size_t k = 0; k < o.steps; ++k) {
    const double j = s.j_grid[k];
    const auto nominal = mcfc_outputs(McfcParams{.j = j}, o.constants);
    s.nominal_P.push_back(nominal.power);
    s.nominal_eta.push_back(nominal.efficiency);
    const auto m = detail::mcfc_moments_at(j, o.samples, o.seed + k, o.constants, o.threads);
    s.mean_P.push_back(m.mean_P);
    s.sd_P.push_back(m.sd_P);
    s.mean_eta.push_back(m.mean_eta);
    s.sd_eta.push_back(m.sd_eta);
    if (nominal.power > s.nominal_P[s.grid_argmax]) s.grid_argmax = k;
  }
  const std::size_t b = s.grid_argmax;
  s.j_star = refine_optimum(s.j_grid[b == 0 ? 0 : b - 1], s.j_grid[std::min(b + 1, o.steps - 1)],
                            o.constants);
  const auto star = mcfc_outputs(McfcParams{.j = s.j_star}, o.constants);
  s.P_star = star.power;
  s.eta_star = star.efficiency;
  const auto m = detail::mcfc_moments_at(s.j_star, o.samples, o.seed + o.steps, o.constants, o.threads);
  s.mean_P_star = m.mean_P;
  s.sd_P_star = m.sd_P;
  s.mean_eta_star = m.mean_eta;
  s.sd_eta_star = m.sd_eta;
  return s;
}

// ---------------------------------------------------------------------------
// Importance ranking across methods
// ---------------------------------------------------------------------------

inline constexpr std::array<std::string_view, 5> kRankingMethods = {"oat", "morris", "srrc", "prcc",
                                                                    "sobol_total"};

struct RankingRow {
  std::string parameter;
  /// Absolute values in kRankingMethods order.
  std::array<double, 5> value{};
  /// 1 = most important, per method.
  std::array<std::size_t, 5> rank{};
  /// The Morris column holds |mu_norm| instead of mu*_norm.
  bool morris_uses_mu = false;
};

struct RankingTable {
  std::vector<RankingRow> rows;

  /// Parameter names ordered by rank for method m.
  std::vector<std::string> order(std::size_t m) const {
    std::vector<std::string> names(rows.size());
    for (const auto& r : rows) names[r.rank[m] - 1] = r.parameter;
    return names;
  }
};

inline RankingTable build_ranking(std::span<const std::string> names,
                                  std::span<const double> oat_normalized,
                                  const MorrisStats& morris,
                                  std::span<const double> srrc_coefficients,
                                  std::span<const double> prcc_coefficients,
                                  std::span<const double> sobol_total,
                                  const std::set<std::string>& mu_override = {}) {
  const std::size_t n = names.size();
  if (oat_normalized.size() != n || srrc_coefficients.size() != n ||
      prcc_coefficients.size() != n || sobol_total.size() != n || morris.mu.size() != n) {
    throw ArgumentError("ranking: method result sizes differ");
  }
  if (!morris.mu_norm || !morris.mu_star_norm) {
    throw ArgumentError("ranking: Morris statistics lack normalized forms (y0 == 0)");
  }
  RankingTable t;
  t.rows.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = t.rows[i];
    r.parameter = names[i];
    r.morris_uses_mu = mu_override.contains(names[i]);
    r.value = {std::abs(oat_normalized[i]),
               std::abs(r.morris_uses_mu ? (*morris.mu_norm)[i] : (*morris.mu_star_norm)[i]),
               std::abs(srrc_coefficients[i]), std::abs(prcc_coefficients[i]),
               std::abs(sobol_total[i])};
  }
  for (std::size_t m = 0; m < kRankingMethods.size(); ++m) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return t.rows[a].value[m] > t.rows[b].value[m];
    });
    for (std::size_t k = 0; k < n; ++k) t.rows[idx[k]].rank[m] = k + 1;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Full SA/UQ battery at the optimum
// ---------------------------------------------------------------------------

struct BatteryOptions {
  /// Located from the nominal power curve when absent.
  std::optional<double> j_star;
  double j_lo = 0.0;
  double j_hi = 6000.0;
  std::size_t steps = 61;
  double oat_perturbation = 0.01;
  std::size_t morris_trajectories = 100;
  std::size_t morris_levels = 20;
  std::size_t samples = 10000;
  std::size_t sobol_samples = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::set<std::string> mu_override{"j"};
  McfcConstants constants{};
};

struct BatteryOutput {
  std::string name;
  OatResult oat;
  MorrisStats morris;
  RegressionSaResult srrc;
  RegressionSaResult prcc;
  SobolIndices sobol;
  UqComparison uq;
  RankingTable ranking;
};

struct BatteryResult {
  double j_star = 0.0;
  std::vector<ParameterSpec> parameters;
  /// Power first, then efficiency.
  std::vector<BatteryOutput> outputs;
};

inline BatteryResult optimum_battery(const BatteryOptions& o) {
  BatteryResult res;
  res.j_star = o.j_star.value_or(locate_optimum(o.j_lo, o.j_hi, o.steps, o.constants));
  res.parameters = mcfc_parameter_specs(res.j_star);
  const auto& specs = res.parameters;
  const auto names = parameter_names(specs);
  const auto x0 = nominal_point(specs);

  const McfcConstants c = o.constants;
  const std::array<Model, 2> models = {
      Model{"mcfc_power", names,
            [c](std::span<const double> x) { return mcfc_outputs(McfcParams::from_span(x), c).power; }},
      Model{"mcfc_eta", names, [c](std::span<const double> x) {
              return mcfc_outputs(McfcParams::from_span(x), c).efficiency;
            }}};

  const auto mc_x = sample_matrix(specs, o.samples, o.seed);
  SobolOptions so;
  so.samples = o.sobol_samples;
  so.seed = o.seed;
  so.threads = o.threads;
  const auto sobol = estimate_sobol(std::span<const Model>(models), specs, so);

  MorrisOptions mo;
  mo.trajectories = o.morris_trajectories;
  mo.levels = o.morris_levels;
  mo.seed = o.seed;

  const auto cx = CovarianceMatrix::diagonal(specs);
  for (std::size_t k = 0; k < models.size(); ++k) {
    BatteryOutput out;
    out.name = k == 0 ? "P" : "eta";
    out.oat = oat_sensitivity(models[k], x0, o.oat_perturbation, FdScheme::Forward, o.threads);
    out.morris = morris_screening(models[k], specs, mo, o.threads).stats;
    const auto y = evaluate_rows(models[k], mc_x, o.threads);
    out.srrc = srrc(mc_x, y);
    out.prcc = prcc(mc_x, y);
    out.sobol = sobol[k];
    out.uq.monte_carlo = sample_moments(y);
    out.uq.oat = deterministic_result(out.oat.y0, deterministic_variance(out.oat.raw, cx),
                                      UqMethod::DeterministicOat);
    out.uq.morris = deterministic_result(out.oat.y0, deterministic_variance(out.morris.mu_star, cx),
                                         UqMethod::DeterministicMorris);
    if (!out.oat.normalized) throw NumericalError("battery: nominal output is zero");
    out.ranking = build_ranking(names, *out.oat.normalized, out.morris, out.srrc.coefficients,
                                out.prcc.coefficients, out.sobol.total, o.mu_override);
    res.outputs.push_back(std::move(out));
  }
  return res;
}

}  // namespace sauq

#endif  // SAUQ_MCFC_STUDY_HPP
