#ifndef SAUQ_PROBLEM_HPP
#define SAUQ_PROBLEM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "sauq/error.hpp"
#include "sauq/rng.hpp"

namespace sauq {

struct Uniform {
  double lo;
  double hi;
};

struct Normal {
  double mean;
  double sd;
};

using Distribution = std::variant<Uniform, Normal>;

struct Bounds {
  double lo;
  double hi;
};

/// One uncertain input parameter.
struct ParameterSpec {
  std::string name;
  Distribution distribution;
  double nominal = 0.0;
  /// Fraction of the nominal value, e.g. 0.01 for 1%.
  double relative_uncertainty = 0.0;
  std::optional<Bounds> morris_bounds;
  /// Normal draws must be strictly positive (pressures, temperatures, energies).
  bool positive = false;

  static ParameterSpec uniform(std::string name, double lo, double hi) {
    ParameterSpec s{std::move(name), Uniform{lo, hi}, 0.5 * (lo + hi)};
    s.validate();
    return s;
  }

  /// Normal with sd = relative_uncertainty * |nominal|.
  static ParameterSpec normal(std::string name, double nominal, double relative_uncertainty,
                              bool positive = false) {
    ParameterSpec s{std::move(name), Normal{nominal, relative_uncertainty * std::abs(nominal)},
                    nominal, relative_uncertainty};
    s.positive = positive;
    s.validate();
    return s;
  }

  bool is_normal() const { return std::holds_alternative<Normal>(distribution); }

  void validate() const {
    if (name.empty()) throw SpecificationError("parameter name must not be empty");
    if (!std::isfinite(nominal)) throw SpecificationError(name + ": nominal value must be finite");
    if (!(relative_uncertainty >= 0.0)) {
      throw SpecificationError(name + ": relative uncertainty must be >= 0");
    }
    if (const auto* u = std::get_if<Uniform>(&distribution)) {
      if (!std::isfinite(u->lo) || !std::isfinite(u->hi) || !(u->lo < u->hi)) {
        throw SpecificationError(name + ": uniform distribution requires lo < hi");
      }
    } else {
      const auto& n = std::get<Normal>(distribution);
      if (!std::isfinite(n.mean) || !std::isfinite(n.sd) || !(n.sd >= 0.0)) {
        throw SpecificationError(name + ": normal distribution requires sd >= 0");
      }
      if (positive && !(n.mean > 0.0)) {
        throw SpecificationError(name + ": positive parameter requires a positive mean");
      }
    }
    if (morris_bounds && !(morris_bounds->lo < morris_bounds->hi)) {
      throw SpecificationError(name + ": morris bounds require lo < hi");
    }
  }

  /// Standard deviation of the sampling distribution.
  double sd() const {
    if (const auto* u = std::get_if<Uniform>(&distribution)) {
      return (u->hi - u->lo) / std::sqrt(12.0);
    }
    return std::get<Normal>(distribution).sd;
  }

  /// Range explored by Morris screening: explicit bounds, the uniform support,
  /// or nominal +/- 3 sd for normal parameters.
  Bounds screening_bounds() const {
    if (morris_bounds) return *morris_bounds;
    if (const auto* u = std::get_if<Uniform>(&distribution)) return {u->lo, u->hi};
    const auto& n = std::get<Normal>(distribution);
    if (!(n.sd > 0.0)) {
      throw SpecificationError(name + ": zero-sd normal parameter needs explicit morris bounds");
    }
    return {n.mean - 3.0 * n.sd, n.mean + 3.0 * n.sd};
  }
};

inline std::vector<std::string> parameter_names(std::span<const ParameterSpec> specs) {
  std::vector<std::string> names;
  names.reserve(specs.size());
  for (const auto& s : specs) names.push_back(s.name);
  return names;
}

inline std::vector<double> nominal_point(std::span<const ParameterSpec> specs) {
  std::vector<double> x;
  x.reserve(specs.size());
  for (const auto& s : specs) x.push_back(s.nominal);
  return x;
}

/// Keeps a normal draw if the parameter's positivity guard accepts it,
/// otherwise redraws from the same distribution until it does.
inline double truncated_resample(const ParameterSpec& spec, double draw, Rng& rng) {
  const auto* n = std::get_if<Normal>(&spec.distribution);
  if (n == nullptr) throw ArgumentError(spec.name + ": truncated_resample requires a normal spec");
  if (!spec.positive || draw > 0.0) return draw;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double redraw = rng.normal(n->mean, n->sd);
    if (redraw > 0.0) return redraw;
  }
  throw SamplingError(spec.name + ": 1000 consecutive non-positive draws");
}

inline double draw(const ParameterSpec& spec, Rng& rng) {
  if (const auto* u = std::get_if<Uniform>(&spec.distribution)) return rng.uniform(u->lo, u->hi);
  const auto& n = std::get<Normal>(spec.distribution);
  return truncated_resample(spec, rng.normal(n.mean, n.sd), rng);
}

/// Row-major N x n_x table of input samples. Immutable once built.
class SampleMatrix {
 public:
  SampleMatrix(std::vector<std::string> columns, std::size_t rows, std::vector<double> values,
               std::uint64_t seed)
      : columns_(std::move(columns)), rows_(rows), values_(std::move(values)), seed_(seed) {
    if (values_.size() != rows_ * columns_.size()) {
      throw ArgumentError("sample matrix value count does not match its shape");
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  std::uint64_t seed() const { return seed_; }
  const std::vector<std::string>& columns() const { return columns_; }
  std::span<const double> values() const { return values_; }

  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }

  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(values_).subspan(r * cols(), cols());
  }

  std::vector<double> column(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

 private:
  std::vector<std::string> columns_;
  std::size_t rows_;
  std::vector<double> values_;
  std::uint64_t seed_;
};

inline void validate_specs(std::span<const ParameterSpec> specs) {
  if (specs.empty()) throw SpecificationError("at least one parameter is required");
  for (const auto& s : specs) s.validate();
}

/// Draws N independent rows from an existing generator, columns in declared
/// order within each row.
inline SampleMatrix sample_matrix(std::span<const ParameterSpec> specs, std::size_t n, Rng& rng,
                                  std::uint64_t seed_tag = 0) {
  validate_specs(specs);
  if (n < 2) throw ArgumentError("sample count must be at least 2");
  std::vector<double> values;
  values.reserve(n * specs.size());
  for (std::size_t r = 0; r < n; ++r) {
    for (const auto& s : specs) values.push_back(draw(s, rng));
  }
  return SampleMatrix(parameter_names(specs), n, std::move(values), seed_tag);
}

inline SampleMatrix sample_matrix(std::span<const ParameterSpec> specs, std::size_t n,
                                  std::uint64_t seed) {
  Rng rng(seed);
  return sample_matrix(specs, n, rng, seed);
}

using RankVector = std::vector<double>;

/// 1-based ranks; ties share the average of the ranks they span.
inline RankVector rank_transform(std::span<const double> v) {
  if (v.empty()) throw DataError("cannot rank an empty vector");
  for (double x : v) {
    if (!std::isfinite(x)) throw DataError("cannot rank non-finite values");
  }
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  RankVector ranks(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && v[order[j]] == v[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

}  // namespace sauq

#endif  // SAUQ_PROBLEM_HPP
