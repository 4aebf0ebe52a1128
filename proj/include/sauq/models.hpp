#ifndef SAUQ_MODELS_HPP
#define SAUQ_MODELS_HPP

#include <array>
#include <concepts>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sauq/error.hpp"
#include "sauq/problem.hpp"
#include "sauq/rng.hpp"

namespace sauq {

using Response = std::function<double(std::span<const double>)>;

/// A named single-output model y = F(x). Evaluation must be pure so that a
/// model can be called from several threads at once.
struct Model {
  std::string name;
  std::vector<std::string> inputs;
  Response evaluate;

  std::size_t n_inputs() const { return inputs.size(); }
  static constexpr std::size_t n_outputs() { return 1; }

  double operator()(std::span<const double> x) const {
    if (x.size() != inputs.size()) {
      throw ArgumentError(name + ": expected " + std::to_string(inputs.size()) + " inputs, got " +
                          std::to_string(x.size()));
    }
    return evaluate(x);
  }
};

/// Anything callable as double(std::span<const double>).
template <class F>
concept ScalarModel = std::invocable<const F&, std::span<const double>> &&
                      std::convertible_to<std::invoke_result_t<const F&, std::span<const double>>,
                                          double>;

namespace detail {

inline void require_unit_interval(std::span<const double> x, const char* model) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0 && x[i] <= 1.0)) {
      throw DomainError(std::string(model) + ": x" + std::to_string(i + 1) + " outside [0, 1]");
    }
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Sobol g-function
// ---------------------------------------------------------------------------

inline constexpr std::array<double, 8> kSobolGDefaultA = {0, 1, 2, 3, 5, 10, 20, 50};

inline double eval_sobol_g(std::span<const double> x,
                           std::span<const double> a = kSobolGDefaultA) {
  if (x.size() != a.size()) throw ArgumentError("sobol_g: x and a lengths differ");
  detail::require_unit_interval(x, "sobol_g");
  double y = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(a[i] >= 0.0)) throw DomainError("sobol_g: a_i must be >= 0");
    y *= (std::abs(4.0 * x[i] - 2.0) + a[i]) / (1.0 + a[i]);
  }
  return y;
}

// ---------------------------------------------------------------------------
// Ishigami
// ---------------------------------------------------------------------------

inline double eval_ishigami(std::span<const double> x, double a = 7.0, double b = 0.1) {
  if (x.size() != 3) throw ArgumentError("ishigami: expected 3 inputs");
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(std::abs(x[i]) <= std::numbers::pi)) {
      throw DomainError("ishigami: x" + std::to_string(i + 1) + " outside [-pi, pi]");
    }
  }
  const double s1 = std::sin(x[0]);
  const double s2 = std::sin(x[1]);
  const double x3sq = x[2] * x[2];
  return s1 + a * s2 * s2 + b * x3sq * x3sq * s1;
}

// ---------------------------------------------------------------------------
// Morris 20-input function
// ---------------------------------------------------------------------------

struct MorrisFnCoefficients {
  static constexpr std::size_t kInputs = 20;

  struct Third {
    std::size_t i, j, l;
    double value;
    bool operator==(const Third&) const = default;
  };
  struct Fourth {
    std::size_t i, j, l, m;
    double value;
    bool operator==(const Fourth&) const = default;
  };

  double beta0 = 0.0;
  std::array<double, kInputs> beta1{};
  /// beta2[i][j] used for i < j only.
  std::array<std::array<double, kInputs>, kInputs> beta2{};
  std::vector<Third> beta3;
  std::vector<Fourth> beta4;
  std::uint64_t seed = 0;

  /// Fixed coefficients on the leading inputs, N(0,1) draws elsewhere
  /// (drawn in the order beta0, beta1[10..19], beta2 row-major).
  static MorrisFnCoefficients generate(std::uint64_t seed) {
    MorrisFnCoefficients c;
    c.seed = seed;
    Rng rng(seed);
    c.beta0 = rng.normal();
    for (std::size_t i = 0; i < kInputs; ++i) c.beta1[i] = i < 10 ? 20.0 : rng.normal();
    for (std::size_t i = 0; i < kInputs; ++i) {
      for (std::size_t j = i + 1; j < kInputs; ++j) {
        c.beta2[i][j] = (j < 6) ? -15.0 : rng.normal();
      }
    }
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j)
        for (std::size_t l = j + 1; l < 5; ++l) c.beta3.push_back({i, j, l, -10.0});
    c.beta4.push_back({0, 1, 2, 3, 5.0});
    return c;
  }

  bool operator==(const MorrisFnCoefficients&) const = default;
};

/// Input transform w_i; inputs 3, 5 and 7 (1-based) use the fractional form.
inline double morris_fn_w(std::size_t index, double x) {
  if (index == 2 || index == 4 || index == 6) return 2.0 * (1.1 * x / (x + 0.1) - 0.5);
  return 2.0 * (x - 0.5);
}

inline double eval_morris_fn(std::span<const double> x, const MorrisFnCoefficients& c) {
  constexpr std::size_t n = MorrisFnCoefficients::kInputs;
  if (x.size() != n) throw ArgumentError("morris_fn: expected 20 inputs");
  detail::require_unit_interval(x, "morris_fn");
  std::array<double, n> w{};
  for (std::size_t i = 0; i < n; ++i) w[i] = morris_fn_w(i, x[i]);

  double y = c.beta0;
  for (std::size_t i = 0; i < n; ++i) y += c.beta1[i] * w[i];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) y += c.beta2[i][j] * w[i] * w[j];
  for (const auto& t : c.beta3) y += t.value * w[t.i] * w[t.j] * w[t.l];
  for (const auto& q : c.beta4) y += q.value * w[q.i] * w[q.j] * w[q.l] * w[q.m];
  return y;
}

// ---------------------------------------------------------------------------
// Simple function set f1..f4
// ---------------------------------------------------------------------------

inline double eval_sfs(int k, std::span<const double> x) {
  if (x.size() != 3) throw ArgumentError("sfs: expected 3 inputs");
  const double x1 = x[0], x2 = x[1], x3 = x[2];
  switch (k) {
    case 1: return x1 + x2 + x3;
    case 2: return x1 + x1 * x2 + x3;
    case 3: return x1 + x2 * x2 + x3 * x3 * x3;
    case 4: return x1 + x1 * x2 * x2 + x3 * x3 * x3;
    default: throw ArgumentError("sfs: k must be 1..4, got " + std::to_string(k));
  }
}

// ---------------------------------------------------------------------------
// Molten carbonate fuel cell
// ---------------------------------------------------------------------------

/// Operating point. Units: j [A m^-2], T [K], activation energies [J mol^-1],
/// partial pressures [atm].
struct McfcParams {
  double j = 3000.0;
  double T = 893.0;
  double E_act_an = 53500.0;
  double E_act_cat = 77300.0;
  double p_H2_an = 0.6;
  double p_CO2_an = 0.15;
  double p_H2O_an = 0.25;
  double p_O2_cat = 0.08;
  double p_CO2_cat = 0.08;

  static constexpr std::size_t kCount = 9;

  std::array<double, kCount> to_array() const {
    return {j, T, E_act_an, E_act_cat, p_H2_an, p_CO2_an, p_H2O_an, p_O2_cat, p_CO2_cat};
  }

  static McfcParams from_span(std::span<const double> x) {
    if (x.size() != kCount) throw ArgumentError("mcfc: expected 9 inputs");
    return {x[0], x[1], x[2], x[3], x[4], x[5], x[6], x[7], x[8]};
  }
};

inline const std::array<std::string, McfcParams::kCount>& mcfc_parameter_names() {
  static const std::array<std::string, McfcParams::kCount> names = {
      "j", "T", "E_act_an", "E_act_cat", "p_H2_an", "p_CO2_an", "p_H2O_an", "p_O2_cat",
      "p_CO2_cat"};
  return names;
}

struct McfcConstants {
  double faraday = 96485.0;       // C mol^-1
  double n_electrons = 2.0;
  double gas_constant = 8.314;    // J mol^-1 K^-1
  double delta_h = -242000.0;     // J mol^-1
  double area = 1.0;              // m^2
};

struct McfcVoltages {
  double E0, E, U_an, U_cat, U_ohm, V;
};

inline McfcVoltages mcfc_voltages(const McfcParams& p, const McfcConstants& c = {}) {
  const double pressures[] = {p.p_H2_an, p.p_CO2_an, p.p_H2O_an, p.p_O2_cat, p.p_CO2_cat};
  for (double v : pressures) {
    if (!(v > 0.0)) throw DomainError("mcfc: partial pressures must be positive");
  }
  if (!(p.T > 0.0)) throw DomainError("mcfc: temperature must be positive");
  if (!(p.j >= 0.0)) throw DomainError("mcfc: current density must be non-negative");

  const double nF = c.n_electrons * c.faraday;
  const double RT = c.gas_constant * p.T;
  McfcVoltages v{};
  v.E0 = (242000.0 - 45.8 * p.T) / nF;
  v.E = v.E0 + RT / nF *
                   std::log(p.p_H2_an * std::sqrt(p.p_O2_cat) * p.p_CO2_cat /
                            (p.p_H2O_an * p.p_CO2_an));
  v.U_an = 2.27e-9 * p.j * std::exp(p.E_act_an / RT) * std::pow(p.p_H2_an, -0.42) *
           std::pow(p.p_CO2_an, -0.17) / p.p_H2O_an;
  v.U_cat = 7.505e-10 * p.j * std::exp(p.E_act_cat / RT) * std::pow(p.p_O2_cat, -0.43) *
            std::pow(p.p_CO2_cat, -0.09);
  v.U_ohm = 0.5e-4 * p.j * std::exp(3016.0 * (1.0 / p.T - 1.0 / 923.0));
  v.V = v.E - v.U_an - v.U_cat - v.U_ohm;
  return v;
}

struct McfcOutputs {
  double power;       // W m^-2 when area = 1
  double efficiency;  // dimensionless
};

inline McfcOutputs mcfc_outputs(const McfcParams& p, const McfcConstants& c = {}) {
  if (!(c.delta_h < 0.0)) throw SpecificationError("mcfc: delta_h must be negative");
  const auto v = mcfc_voltages(p, c);
  return {p.j * c.area * v.V, c.n_electrons * c.faraday * v.V / (-c.delta_h)};
}

/// Table values: j at 1%, T and activation energies at 1%, pressures at 5%.
inline std::vector<ParameterSpec> mcfc_parameter_specs(double j = 3000.0) {
  const McfcParams nominal{.j = j};
  const auto values = nominal.to_array();
  const auto& names = mcfc_parameter_names();
  std::vector<ParameterSpec> specs;
  for (std::size_t i = 0; i < McfcParams::kCount; ++i) {
    specs.push_back(ParameterSpec::normal(names[i], values[i], i < 4 ? 0.01 : 0.05, true));
  }
  return specs;
}

}  // namespace sauq

#endif  // SAUQ_MODELS_HPP
