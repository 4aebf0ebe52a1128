#ifndef SAUQ_STUDY_HPP
#define SAUQ_STUDY_HPP

#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "sauq/config.hpp"
#include "sauq/error.hpp"
#include "sauq/local_sa.hpp"
#include "sauq/mcfc_study.hpp"
#include "sauq/morris.hpp"
#include "sauq/problem.hpp"
#include "sauq/registry.hpp"
#include "sauq/regression_sa.hpp"
#include "sauq/report.hpp"
#include "sauq/sobol.hpp"
#include "sauq/uq.hpp"

namespace sauq {

enum class OutputFormat { Csv, Json };

struct RunOptions {
  unsigned threads = 1;
  OutputFormat format = OutputFormat::Csv;
};

struct MethodOutcome {
  std::string method;
  std::string label;
  bool ok = false;
  std::string error;
  std::vector<std::string> files;
};

/// Everything the plot writer needs, keyed by method label.
struct StudyResults {
  std::vector<std::string> parameters;
  std::vector<std::pair<std::string, RegressionSaResult>> regression;
  std::vector<std::pair<std::string, MorrisStats>> morris;
  std::vector<std::pair<std::string, SobolIndices>> sobol;
  std::vector<std::pair<std::string, SweepResult>> sweeps;
  std::vector<std::pair<std::string, BatteryResult>> batteries;
};

struct StudyReport {
  /// 0 when every method succeeded, 3 otherwise.
  int exit_code = 0;
  std::vector<MethodOutcome> methods;
  StudyResults results;
  std::vector<std::string> plot_files;
};

namespace detail {

class Writer {
 public:
  Writer(std::filesystem::path dir, OutputFormat format) : dir_(std::move(dir)), format_(format) {}

  std::string table(const std::string& stem, const Table& t) {
    const std::string name = stem + (format_ == OutputFormat::Csv ? ".csv" : ".json");
    if (format_ == OutputFormat::Csv) {
      write_text(dir_ / name, to_csv(t));
    } else {
      write_json(dir_ / name, to_json(t));
    }
    return name;
  }

  std::string json(const std::string& stem, const nlohmann::json& j) {
    const std::string name = stem + ".json";
    write_json(dir_ / name, j);
    return name;
  }

 private:
  std::filesystem::path dir_;
  OutputFormat format_;
};

inline std::optional<double> entry(const std::optional<std::vector<double>>& v, std::size_t i) {
  if (!v) return std::nullopt;
  return (*v)[i];
}

inline nlohmann::json number_or_null(std::optional<double> v) {
  if (!v) return nullptr;
  return *v;
}

inline nlohmann::json uq_json(const UncertaintyResult& r) {
  nlohmann::json j;
  j["method"] = std::string(to_string(r.method));
  j["mean"] = r.mean;
  j["variance"] = r.variance;
  j["sd"] = r.sd;
  j["ci95"] = r.ci95 ? nlohmann::json::array({r.ci95->first, r.ci95->second}) : nlohmann::json();
  j["n_samples"] = r.n_samples ? nlohmann::json(*r.n_samples) : nlohmann::json();
  return j;
}

inline Table oat_table(const std::vector<std::string>& names, const OatResult& r) {
  Table t{{"parameter", "raw", "normalized", "scheme", "delta"}, {}};
  for (std::size_t i = 0; i < names.size(); ++i) {
    t.add({names[i], r.raw[i], entry(r.normalized, i), to_string(r.scheme), r.perturbation});
  }
  return t;
}

inline Table regression_table(const RegressionSaResult& r) {
  Table t{{"parameter", "method", "coefficient", "r_squared"}, {}};
  for (std::size_t i = 0; i < r.parameters.size(); ++i) {
    t.add({r.parameters[i], to_string(r.method), r.coefficients[i], r.r_squared});
  }
  return t;
}

inline Table morris_table(const std::vector<std::string>& names, const MorrisStats& s) {
  Table t{{"parameter", "mu", "mu_star", "sigma", "mu_norm", "mu_star_norm"}, {}};
  for (std::size_t i = 0; i < names.size(); ++i) {
    t.add({names[i], s.mu[i], s.mu_star[i], s.sigma[i], entry(s.mu_norm, i),
           entry(s.mu_star_norm, i)});
  }
  return t;
}

inline Table sobol_table(const std::vector<std::string>& names, const SobolIndices& s) {
  Table t{{"parameter", "S", "T", "N", "seed"}, {}};
  for (std::size_t i = 0; i < names.size(); ++i) {
    t.add({names[i], s.first[i], s.total[i], s.samples, std::to_string(s.seed)});
  }
  return t;
}

inline Table sweep_table(const SweepResult& s) {
  Table t{{"j", "nominal_P", "mean_P", "sd_P", "nominal_eta", "mean_eta", "sd_eta"}, {}};
  for (std::size_t k = 0; k < s.j_grid.size(); ++k) {
    t.add({s.j_grid[k], s.nominal_P[k], s.mean_P[k], s.sd_P[k], s.nominal_eta[k], s.mean_eta[k],
           s.sd_eta[k]});
  }
  return t;
}

inline nlohmann::json optimum_json(const SweepResult& s) {
  return {{"j_star", s.j_star},
          {"P_star", s.P_star},
          {"eta_star", s.eta_star},
          {"mean_P", s.mean_P_star},
          {"sd_P", s.sd_P_star},
          {"relative_sd_P", s.sd_P_star / s.mean_P_star},
          {"mean_eta", s.mean_eta_star},
          {"sd_eta", s.sd_eta_star},
          {"relative_sd_eta", s.sd_eta_star / s.mean_eta_star}};
}

/// Table-4 layout: one row per rank, a (parameter, value) pair per method.
inline Table ranking_table(const RankingTable& r) {
  Table t;
  t.header.push_back("rank");
  for (auto m : kRankingMethods) {
    t.header.push_back(std::string(m) + "_parameter");
    t.header.push_back(std::string(m) + "_value");
  }
  const std::size_t n = r.rows.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Cell> row{Cell(k + 1)};
    for (std::size_t m = 0; m < kRankingMethods.size(); ++m) {
      for (const auto& rr : r.rows) {
        if (rr.rank[m] != k + 1) continue;
        row.emplace_back(rr.parameter);
        row.emplace_back(rr.value[m]);
      }
    }
    t.add(std::move(row));
  }
  return t;
}

inline Table battery_detail_table(const BatteryResult& b) {
  Table t{{"output", "parameter", "oat_raw", "oat_normalized", "mu", "mu_star", "sigma", "mu_norm",
           "mu_star_norm", "srrc", "prcc", "S", "T"},
          {}};
  const auto names = parameter_names(b.parameters);
  for (const auto& o : b.outputs) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      t.add({o.name, names[i], o.oat.raw[i], entry(o.oat.normalized, i), o.morris.mu[i],
             o.morris.mu_star[i], o.morris.sigma[i], entry(o.morris.mu_norm, i),
             entry(o.morris.mu_star_norm, i), o.srrc.coefficients[i], o.prcc.coefficients[i],
             o.sobol.first[i], o.sobol.total[i]});
    }
  }
  return t;
}

inline std::string battery_stem(const std::string& label, const std::string& name) {
  return label == "mcfc_battery" ? name : label + "_" + name;
}

inline McfcConstants study_constants(const StudyConfig& cfg) {
  return cfg.model ? cfg.model->options.mcfc : McfcConstants{};
}

}  // namespace detail

/// Runs one method and writes its artifacts; throws on failure.
inline void run_method(const StudyConfig& cfg, const MethodEntry& e, const RunOptions& opt,
                       detail::Writer& w, MethodOutcome& out, StudyResults& results) {
  const auto& specs = cfg.parameters;
  const auto names = parameter_names(specs);
  const std::uint64_t seed = cfg.seed;
  const unsigned threads = opt.threads;
  std::optional<Model> model;
  if (cfg.model) model = make_model(cfg.model->name, cfg.model->options);
  const auto x0 = nominal_point(specs);

  if (const auto* s = std::get_if<OatSettings>(&e.settings)) {
    const auto r = oat_sensitivity(*model, x0, s->delta, s->scheme, threads);
    out.files.push_back(w.table(e.label, detail::oat_table(names, r)));
  } else if (const auto* s = std::get_if<RegressionSettings>(&e.settings)) {
    const auto x = sample_matrix(specs, s->samples, seed);
    const auto y = evaluate_rows(*model, x, threads);
    auto r = regression_sa(s->method, x, y);
    out.files.push_back(w.table(e.label, detail::regression_table(r)));
    results.regression.emplace_back(e.label, std::move(r));
  } else if (const auto* s = std::get_if<MorrisSettings>(&e.settings)) {
    MorrisOptions mo{s->trajectories, s->levels, s->step_fraction, seed};
    auto r = morris_screening(*model, specs, mo, threads);
    out.files.push_back(w.table(e.label, detail::morris_table(names, r.stats)));
    results.morris.emplace_back(e.label, std::move(r.stats));
  } else if (const auto* s = std::get_if<SobolSettings>(&e.settings)) {
    SobolOptions so{s->samples, seed, threads, s->correction};
    auto r = estimate_sobol(*model, specs, so);
    out.files.push_back(w.table(e.label, detail::sobol_table(names, r)));
    results.sobol.emplace_back(e.label, std::move(r));
  } else if (const auto* s = std::get_if<McUqSettings>(&e.settings)) {
    const auto r = monte_carlo_uq(*model, specs, s->samples, seed, threads);
    out.files.push_back(w.json(e.label, detail::uq_json(r)));
  } else if (const auto* s = std::get_if<DetUqSettings>(&e.settings)) {
    std::vector<double> sens;
    UqMethod method = UqMethod::DeterministicOat;
    if (s->source == "oat") {
      sens = oat_sensitivity(*model, x0, s->oat.delta, s->oat.scheme, threads).raw;
    } else {
      MorrisOptions mo{s->morris.trajectories, s->morris.levels, s->morris.step_fraction, seed};
      sens = morris_screening(*model, specs, mo, threads).stats.mu_star;
      method = UqMethod::DeterministicMorris;
    }
    std::optional<CovarianceMatrix> cx;
    if (s->covariance) {
      const auto n = static_cast<Eigen::Index>(names.size());
      Eigen::MatrixXd c(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
          c(i, j) = (*s->covariance)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
      }
      cx.emplace(names, std::move(c));
    } else {
      cx.emplace(CovarianceMatrix::diagonal(specs));
    }
    const double y0 = (*model)(std::span<const double>(x0));
    const auto r = deterministic_result(y0, deterministic_variance(sens, *cx), method);
    out.files.push_back(w.json(e.label, detail::uq_json(r)));
  } else if (const auto* s = std::get_if<SweepSettings>(&e.settings)) {
    SweepOptions so{s->j_lo, s->j_hi, s->steps, s->samples, seed, threads, detail::study_constants(cfg)};
    auto r = sweep(so);
    out.files.push_back(w.table(e.label, detail::sweep_table(r)));
    out.files.push_back(w.json(e.label + "_optimum", detail::optimum_json(r)));
    results.sweeps.emplace_back(e.label, std::move(r));
  } else if (const auto* s = std::get_if<BatterySettings>(&e.settings)) {
    BatteryOptions bo;
    bo.j_star = s->j_star;
    bo.j_lo = s->j_lo;
    bo.j_hi = s->j_hi;
    bo.steps = s->steps;
    bo.oat_perturbation = s->delta;
    bo.morris_trajectories = s->trajectories;
    bo.morris_levels = s->levels;
    bo.samples = s->samples;
    bo.sobol_samples = s->sobol_samples;
    bo.seed = seed;
    bo.threads = threads;
    bo.mu_override = std::set<std::string>(s->mu_override.begin(), s->mu_override.end());
    bo.constants = detail::study_constants(cfg);
    auto r = optimum_battery(bo);
    nlohmann::json uq = {{"j_star", r.j_star}, {"outputs", nlohmann::json::object()}};
    for (const auto& o : r.outputs) {
      const std::string suffix = o.name == "P" ? "" : "_" + o.name;
      out.files.push_back(w.table(detail::battery_stem(e.label, "ranking" + suffix),
                                  detail::ranking_table(o.ranking)));
      uq["outputs"][o.name] = nlohmann::json::array(
          {detail::uq_json(o.uq.monte_carlo), detail::uq_json(o.uq.oat), detail::uq_json(o.uq.morris)});
    }
    out.files.push_back(w.json(detail::battery_stem(e.label, "uq_summary"), uq));
    out.files.push_back(w.table(detail::battery_stem(e.label, "battery_detail"),
                                detail::battery_detail_table(r)));
    results.batteries.emplace_back(e.label, std::move(r));
  }
}

/// Column-oriented data behind each figure type, written under `dir`.
inline std::vector<std::string> emit_plot_data(const StudyResults& results,
                                               const std::filesystem::path& dir) {
  std::vector<std::string> files;
  auto put = [&](const std::string& name, const Table& t) {
    write_text(dir / name, to_csv(t));
    files.push_back(name);
  };

  if (!results.regression.empty()) {
    Table t{{"parameter", "method", "label", "coefficient"}, {}};
    for (const auto& [label, r] : results.regression) {
      for (std::size_t i = 0; i < r.parameters.size(); ++i) {
        t.add({r.parameters[i], to_string(r.method), label, r.coefficients[i]});
      }
    }
    put("regression_bars.csv", t);
  }
  for (const auto& [label, s] : results.morris) {
    Table t{{"parameter", "mu_star", "sigma", "lower", "upper"}, {}};
    for (std::size_t i = 0; i < s.mu_star.size(); ++i) {
      t.add({results.parameters[i], s.mu_star[i], s.sigma[i], s.mu_star[i] - s.sigma[i],
             s.mu_star[i] + s.sigma[i]});
    }
    put(label + "_bars.csv", t);
  }
  for (const auto& [label, s] : results.sobol) {
    Table t{{"parameter", "index", "value"}, {}};
    for (std::size_t i = 0; i < s.first.size(); ++i) {
      t.add({results.parameters[i], "S", s.first[i]});
      t.add({results.parameters[i], "T", s.total[i]});
    }
    put(label + "_bars.csv", t);
  }
  for (const auto& [label, s] : results.sweeps) {
    Table t{{"j", "nominal_P", "P_lower", "P_upper", "nominal_eta", "eta_lower", "eta_upper"}, {}};
    for (std::size_t k = 0; k < s.j_grid.size(); ++k) {
      t.add({s.j_grid[k], s.nominal_P[k], s.mean_P[k] - s.sd_P[k], s.mean_P[k] + s.sd_P[k],
             s.nominal_eta[k], s.mean_eta[k] - s.sd_eta[k], s.mean_eta[k] + s.sd_eta[k]});
    }
    put(label + "_bands.csv", t);
  }
  for (const auto& [label, b] : results.batteries) {
    const auto names = parameter_names(b.parameters);
    Table reg{{"output", "parameter", "method", "coefficient"}, {}};
    Table local{{"output", "parameter", "oat_normalized", "mu_norm", "mu_star_norm", "sigma_norm"}, {}};
    Table sob{{"output", "parameter", "index", "value"}, {}};
    for (const auto& o : b.outputs) {
      for (std::size_t i = 0; i < names.size(); ++i) {
        reg.add({o.name, names[i], "srrc", o.srrc.coefficients[i]});
        reg.add({o.name, names[i], "prcc", o.prcc.coefficients[i]});
        std::optional<double> sigma_norm;
        if (o.oat.y0 != 0.0) sigma_norm = o.morris.sigma[i] * b.parameters[i].nominal / o.oat.y0;
        local.add({o.name, names[i], detail::entry(o.oat.normalized, i), detail::entry(o.morris.mu_norm, i),
                   detail::entry(o.morris.mu_star_norm, i), sigma_norm});
        sob.add({o.name, names[i], "S", o.sobol.first[i]});
        sob.add({o.name, names[i], "T", o.sobol.total[i]});
      }
    }
    put(label + "_regression_bars.csv", reg);
    put(label + "_local_bars.csv", local);
    put(label + "_sobol_bars.csv", sob);
  }
  return files;
}

/// Executes every method in declaration order. A failing method is recorded
/// and the rest still run; outputs already written are kept.
inline StudyReport run_study(const StudyConfig& cfg, const RunOptions& opt = {}) {
  StudyReport report;
  report.results.parameters = parameter_names(cfg.parameters);
  const auto& dir = cfg.output_dir;
  std::filesystem::create_directories(dir);
  write_text(dir / "resolved_config.yaml", resolved_yaml(cfg));
  detail::Writer w(dir, opt.format);

  for (const auto& e : cfg.methods) {
    MethodOutcome out{e.method, e.label};
    try {
      run_method(cfg, e, opt, w, out, report.results);
      out.ok = true;
    } catch (const std::exception& ex) {
      out.error = ex.what();
      report.exit_code = 3;
    }
    report.methods.push_back(std::move(out));
  }

  report.plot_files = emit_plot_data(report.results, dir / "plot");

  nlohmann::json summary;
  summary["status"] = report.exit_code == 0 ? "ok" : "failed";
  summary["seed"] = cfg.seed;
  summary["config"] = "resolved_config.yaml";
  summary["methods"] = nlohmann::json::array();
  for (const auto& m : report.methods) {
    nlohmann::json j{{"method", m.method}, {"label", m.label}, {"status", m.ok ? "ok" : "failed"},
                     {"files", m.files}};
    if (!m.ok) j["error"] = m.error;
    summary["methods"].push_back(std::move(j));
  }
  nlohmann::json plots = nlohmann::json::array();
  for (const auto& f : report.plot_files) plots.push_back("plot/" + f);
  summary["plot_files"] = std::move(plots);
  write_json(dir / "summary.json", summary);
  return report;
}

}  // namespace sauq

#endif  // SAUQ_STUDY_HPP
