#ifndef SAUQ_REGISTRY_HPP
#define SAUQ_REGISTRY_HPP

#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "sauq/error.hpp"
#include "sauq/models.hpp"
#include "sauq/problem.hpp"

namespace sauq {

/// Per-model constants that a study may override.
struct ModelOptions {
  double ishigami_a = 7.0;
  double ishigami_b = 0.1;
  std::vector<double> sobol_g_a{kSobolGDefaultA.begin(), kSobolGDefaultA.end()};
  std::uint64_t morris_fn_seed = 20;
  McfcConstants mcfc{};
};

struct ModelInfo {
  std::string_view name;
  std::string_view description;
};

inline constexpr ModelInfo kModels[] = {
    {"sobol_g", "Sobol g-function, inputs U(0,1), a = (0,1,2,3,5,10,20,50)"},
    {"morris_fn", "Morris 20-input function, inputs U(0,1)"},
    {"ishigami", "Ishigami function, inputs U(-pi,pi), a = 7, b = 0.1"},
    {"sfs1", "f1 = x1 + x2 + x3"},
    {"sfs2", "f2 = x1 + x1*x2 + x3"},
    {"sfs3", "f3 = x1 + x2^2 + x3^3"},
    {"sfs4", "f4 = x1 + x1*x2^2 + x3^3"},
    {"mcfc_power", "MCFC power density P [W m^-2], 9 operating parameters"},
    {"mcfc_eta", "MCFC first-law efficiency, 9 operating parameters"},
};

inline bool is_model_name(std::string_view name) {
  for (const auto& m : kModels) {
    if (m.name == name) return true;
  }
  return false;
}

namespace detail {

inline std::vector<std::string> numbered_inputs(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

}  // namespace detail

/// Default parameter set for a registered model.
inline std::vector<ParameterSpec> default_parameters(std::string_view name,
                                                     const ModelOptions& options = {}) {
  auto uniform_set = [](std::size_t n, double lo, double hi) {
    std::vector<ParameterSpec> specs;
    for (const auto& nm : detail::numbered_inputs(n)) specs.push_back(ParameterSpec::uniform(nm, lo, hi));
    return specs;
  };
  if (name == "sobol_g") return uniform_set(options.sobol_g_a.size(), 0.0, 1.0);
  if (name == "morris_fn") return uniform_set(MorrisFnCoefficients::kInputs, 0.0, 1.0);
  if (name == "ishigami") return uniform_set(3, -std::numbers::pi, std::numbers::pi);
  if (name == "sfs1" || name == "sfs2" || name == "sfs3" || name == "sfs4") {
    return uniform_set(3, 0.0, 1.0);
  }
  if (name == "mcfc_power" || name == "mcfc_eta") return mcfc_parameter_specs();
  throw ArgumentError("unknown model '" + std::string(name) + "'");
}

inline Model make_model(std::string_view name, const ModelOptions& options = {}) {
  const std::string id(name);
  if (name == "sobol_g") {
    auto a = options.sobol_g_a;
    return {id, detail::numbered_inputs(a.size()),
            [a](std::span<const double> x) { return eval_sobol_g(x, a); }};
  }
  if (name == "morris_fn") {
    auto c = MorrisFnCoefficients::generate(options.morris_fn_seed);
    return {id, detail::numbered_inputs(MorrisFnCoefficients::kInputs),
            [c](std::span<const double> x) { return eval_morris_fn(x, c); }};
  }
  if (name == "ishigami") {
    const double a = options.ishigami_a, b = options.ishigami_b;
    return {id, detail::numbered_inputs(3),
            [a, b](std::span<const double> x) { return eval_ishigami(x, a, b); }};
  }
  if (name.size() == 4 && name.starts_with("sfs") && name[3] >= '1' && name[3] <= '4') {
    const int k = name[3] - '0';
    return {id, detail::numbered_inputs(3),
            [k](std::span<const double> x) { return eval_sfs(k, x); }};
  }
  const auto& names = mcfc_parameter_names();
  std::vector<std::string> inputs(names.begin(), names.end());
  const McfcConstants c = options.mcfc;
  if (name == "mcfc_power") {
    return {id, inputs, [c](std::span<const double> x) {
              return mcfc_outputs(McfcParams::from_span(x), c).power;
            }};
  }
  if (name == "mcfc_eta") {
    return {id, inputs, [c](std::span<const double> x) {
              return mcfc_outputs(McfcParams::from_span(x), c).efficiency;
            }};
  }
  throw ArgumentError("unknown model '" + id + "'");
}

}  // namespace sauq

#endif  // SAUQ_REGISTRY_HPP
