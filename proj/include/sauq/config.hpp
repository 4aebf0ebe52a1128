#ifndef SAUQ_CONFIG_HPP
#define SAUQ_CONFIG_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "sauq/error.hpp"
#include "sauq/local_sa.hpp"
#include "sauq/problem.hpp"
#include "sauq/registry.hpp"
#include "sauq/regression_sa.hpp"
#include "sauq/report.hpp"
#include "sauq/sobol.hpp"

namespace sauq {

/// Invalid study configuration; the message starts with "source:line:".
class ConfigError : public Error {
 public:
  ConfigError(const std::string& source, int line, const std::string& what)
      : Error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct OatSettings {
  double delta = 0.01;
  FdScheme scheme = FdScheme::Forward;
};

struct RegressionSettings {
  RegressionMethod method = RegressionMethod::SRC;
  std::size_t samples = 10000;
};

struct MorrisSettings {
  std::size_t trajectories = 100;
  std::size_t levels = 20;
  std::optional<double> step_fraction;
};

struct SobolSettings {
  std::size_t samples = 10000;
  CorrectionTerm correction = CorrectionTerm::Cross;
};

struct McUqSettings {
  std::size_t samples = 10000;
};

struct DetUqSettings {
  /// "oat" or "morris": where the sensitivities come from.
  std::string source = "oat";
  OatSettings oat;
  MorrisSettings morris;
  /// Full input covariance; diagonal of the parameter variances when absent.
  std::optional<std::vector<std::vector<double>>> covariance;
};

struct SweepSettings {
  double j_lo = 0.0;
  double j_hi = 6000.0;
  std::size_t steps = 61;
  std::size_t samples = 10000;
};

struct BatterySettings {
  std::optional<double> j_star;
  double j_lo = 0.0;
  double j_hi = 6000.0;
  std::size_t steps = 61;
  double delta = 0.01;
  std::size_t trajectories = 100;
  std::size_t levels = 20;
  std::size_t samples = 10000;
  std::size_t sobol_samples = 10000;
  std::vector<std::string> mu_override{"j"};
};

using MethodSettings = std::variant<OatSettings, RegressionSettings, MorrisSettings, SobolSettings,
                                    McUqSettings, DetUqSettings, SweepSettings, BatterySettings>;

struct MethodEntry {
  std::string method;
  /// Output file stem; defaults to the method name ("sweep" for mcfc_sweep).
  std::string label;
  int line = 0;
  MethodSettings settings;
};

struct ModelConfig {
  std::string name;
  ModelOptions options;
};

struct StudyConfig {
  std::string source = "<config>";
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "sauq_out";
  std::optional<ModelConfig> model;
  std::vector<ParameterSpec> parameters;
  std::vector<MethodEntry> methods;
};

inline constexpr std::string_view kMethodNames[] = {"oat",    "src",   "srrc",   "pcc",
                                                    "prcc",   "morris", "sobol", "mc_uq",
                                                    "det_uq", "mcfc_sweep", "mcfc_battery"};

inline bool is_mcfc_method(std::string_view m) { return m == "mcfc_sweep" || m == "mcfc_battery"; }

namespace detail {

inline int line_of(const YAML::Node& n) {
  const auto m = n.Mark();
  return m.line >= 0 ? m.line + 1 : 0;
}

/// Reads keys of one mapping and rejects whatever is left unread.
class MapReader {
 public:
  MapReader(const std::string& source, const YAML::Node& node, std::string what)
      : source_(source), node_(node), what_(std::move(what)) {
    if (!node.IsMap()) fail(node, what_ + " must be a mapping");
  }

  [[noreturn]] void fail(const YAML::Node& at, const std::string& msg) const {
    throw ConfigError(source_, line_of(at), msg);
  }

  const YAML::Node& node() const { return node_; }

  std::optional<YAML::Node> get(const std::string& key) {
    seen_.insert(key);
    const YAML::Node& map = node_;
    const YAML::Node v = map[key];
    if (!v.IsDefined() || v.IsNull()) return std::nullopt;
    return v;
  }

  YAML::Node require(const std::string& key) {
    auto v = get(key);
    if (!v) fail(node_, what_ + ": missing required key '" + key + "'");
    return *v;
  }

  std::string text(const YAML::Node& v, const std::string& key) const {
    if (!v.IsScalar()) fail(v, "'" + key + "' must be a scalar");
    return v.Scalar();
  }

  double real(const YAML::Node& v, const std::string& key) const {
    const std::string s = text(v, key);
    double out = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(out)) {
      fail(v, "'" + key + "' must be a finite number, got '" + s + "'");
    }
    return out;
  }

  std::uint64_t integer(const YAML::Node& v, const std::string& key) const {
    const std::string s = text(v, key);
    std::uint64_t out = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (res.ec == std::errc() && res.ptr == s.data() + s.size()) return out;
    const double d = real(v, key);
    if (d < 0.0 || d != std::floor(d) || d > 9.0e15) {
      fail(v, "'" + key + "' must be a non-negative integer, got '" + s + "'");
    }
    return static_cast<std::uint64_t>(d);
  }

  bool boolean(const YAML::Node& v, const std::string& key) const {
    const std::string s = text(v, key);
    if (s == "true") return true;
    if (s == "false") return false;
    fail(v, "'" + key + "' must be true or false");
  }

  std::vector<double> reals(const YAML::Node& v, const std::string& key) const {
    if (!v.IsSequence()) fail(v, "'" + key + "' must be a list of numbers");
    std::vector<double> out;
    for (const auto& e : v) out.push_back(real(e, key));
    return out;
  }

  std::vector<std::string> texts(const YAML::Node& v, const std::string& key) const {
    if (!v.IsSequence()) fail(v, "'" + key + "' must be a list");
    std::vector<std::string> out;
    for (const auto& e : v) out.push_back(text(e, key));
    return out;
  }

  void opt_real(const std::string& key, double& out) {
    if (auto v = get(key)) out = real(*v, key);
  }

  void opt_count(const std::string& key, std::size_t& out, std::size_t min) {
    if (auto v = get(key)) {
      out = static_cast<std::size_t>(integer(*v, key));
      if (out < min) fail(*v, "'" + key + "' must be at least " + std::to_string(min));
    }
  }

  void positive_real(const std::string& key, double& out) {
    if (auto v = get(key)) {
      out = real(*v, key);
      if (!(out > 0.0)) fail(*v, "'" + key + "' must be positive");
    }
  }

  void finish() const {
    for (const auto& kv : node_) {
      const std::string key = kv.first.Scalar();
      if (!seen_.contains(key)) fail(kv.first, what_ + ": unknown key '" + key + "'");
    }
  }

 private:
  const std::string& source_;
  YAML::Node node_;
  std::string what_;
  std::set<std::string> seen_;
};

inline void read_oat(MapReader& r, OatSettings& s) {
  r.positive_real("delta", s.delta);
  if (auto v = r.get("scheme")) {
    const auto t = r.text(*v, "scheme");
    if (t == "forward") {
      s.scheme = FdScheme::Forward;
    } else if (t == "central") {
      s.scheme = FdScheme::Central;
    } else {
      r.fail(*v, "'scheme' must be forward or central");
    }
  }
}

inline void read_morris(MapReader& r, MorrisSettings& s) {
  r.opt_count("trajectories", s.trajectories, 2);
  r.opt_count("levels", s.levels, 2);
  if (auto v = r.get("step_fraction")) {
    const double f = r.real(*v, "step_fraction");
    if (!(f > 0.0 && f <= 1.0)) r.fail(*v, "'step_fraction' must be in (0, 1]");
    s.step_fraction = f;
  }
}

inline void read_range(MapReader& r, double& lo, double& hi, std::size_t& steps) {
  r.opt_real("j_lo", lo);
  r.opt_real("j_hi", hi);
  r.opt_count("steps", steps, 2);
  if (!(lo >= 0.0 && lo < hi)) r.fail(r.node(), "need 0 <= j_lo < j_hi");
}

inline MethodEntry read_method(const std::string& source, const YAML::Node& node) {
  MapReader r(source, node, "method entry");
  MethodEntry e;
  e.line = line_of(node);
  e.method = r.text(r.require("method"), "method");
  bool known = false;
  for (auto m : kMethodNames) known = known || m == e.method;
  if (!known) r.fail(node["method"], "unknown method '" + e.method + "'");
  e.label = e.method == "mcfc_sweep" ? "sweep" : e.method;
  if (auto v = r.get("label")) {
    e.label = r.text(*v, "label");
    if (e.label.empty() || e.label.find_first_of("/\\") != std::string::npos || e.label[0] == '.') {
      r.fail(*v, "'label' must be a plain file stem");
    }
  }

  const auto& m = e.method;
  if (m == "oat") {
    OatSettings s;
    read_oat(r, s);
    e.settings = s;
  } else if (m == "src" || m == "srrc" || m == "pcc" || m == "prcc") {
    RegressionSettings s;
    s.method = m == "src" ? RegressionMethod::SRC
             : m == "srrc" ? RegressionMethod::SRRC
             : m == "pcc" ? RegressionMethod::PCC
                          : RegressionMethod::PRCC;
    r.opt_count("samples", s.samples, 3);
    e.settings = s;
  } else if (m == "morris") {
    MorrisSettings s;
    read_morris(r, s);
    e.settings = s;
  } else if (m == "sobol") {
    SobolSettings s;
    r.opt_count("N", s.samples, 100);
    if (auto v = r.get("correction")) {
      const auto t = r.text(*v, "correction");
      if (t == "cross") {
        s.correction = CorrectionTerm::Cross;
      } else if (t == "as_printed") {
        s.correction = CorrectionTerm::AsPrinted;
      } else {
        r.fail(*v, "'correction' must be cross or as_printed");
      }
    }
    e.settings = s;
  } else if (m == "mc_uq") {
    McUqSettings s;
    r.opt_count("samples", s.samples, 2);
    e.settings = s;
  } else if (m == "det_uq") {
    DetUqSettings s;
    if (auto v = r.get("source")) {
      s.source = r.text(*v, "source");
      if (s.source != "oat" && s.source != "morris") r.fail(*v, "'source' must be oat or morris");
    }
    read_oat(r, s.oat);
    read_morris(r, s.morris);
    if (auto v = r.get("covariance")) {
      if (!v->IsSequence()) r.fail(*v, "'covariance' must be a list of rows");
      std::vector<std::vector<double>> rows;
      for (const auto& row : *v) rows.push_back(r.reals(row, "covariance"));
      s.covariance = std::move(rows);
    }
    e.settings = s;
  } else if (m == "mcfc_sweep") {
    SweepSettings s;
    read_range(r, s.j_lo, s.j_hi, s.steps);
    r.opt_count("samples", s.samples, 2);
    e.settings = s;
  } else {
    BatterySettings s;
    if (auto v = r.get("j_star")) {
      s.j_star = r.real(*v, "j_star");
      if (!(*s.j_star > 0.0)) r.fail(*v, "'j_star' must be positive");
    }
    read_range(r, s.j_lo, s.j_hi, s.steps);
    r.positive_real("delta", s.delta);
    r.opt_count("trajectories", s.trajectories, 2);
    r.opt_count("levels", s.levels, 2);
    r.opt_count("samples", s.samples, 12);
    r.opt_count("sobol_samples", s.sobol_samples, 100);
    if (auto v = r.get("mu_override")) s.mu_override = r.texts(*v, "mu_override");
    e.settings = s;
  }
  r.finish();
  return e;
}

inline ModelConfig read_model(const std::string& source, const YAML::Node& node) {
  ModelConfig mc;
  if (node.IsScalar()) {
    mc.name = node.Scalar();
    if (!is_model_name(mc.name)) throw ConfigError(source, line_of(node), "unknown model '" + mc.name + "'");
    return mc;
  }
  MapReader r(source, node, "model");
  const auto name_node = r.require("name");
  mc.name = r.text(name_node, "name");
  if (!is_model_name(mc.name)) r.fail(name_node, "unknown model '" + mc.name + "'");
  auto& o = mc.options;
  if (mc.name == "ishigami") {
    r.opt_real("a", o.ishigami_a);
    r.opt_real("b", o.ishigami_b);
  } else if (mc.name == "sobol_g") {
    if (auto v = r.get("a")) {
      o.sobol_g_a = r.reals(*v, "a");
      if (o.sobol_g_a.empty()) r.fail(*v, "'a' must not be empty");
      for (double a : o.sobol_g_a) {
        if (!(a >= 0.0)) r.fail(*v, "'a' entries must be non-negative");
      }
    }
  } else if (mc.name == "morris_fn") {
    if (auto v = r.get("coefficient_seed")) o.morris_fn_seed = r.integer(*v, "coefficient_seed");
  } else if (mc.name == "mcfc_power" || mc.name == "mcfc_eta") {
    if (auto v = r.get("delta_h")) {
      o.mcfc.delta_h = r.real(*v, "delta_h");
      if (o.mcfc.delta_h == 0.0) r.fail(*v, "'delta_h' must be nonzero");
    }
    r.positive_real("area", o.mcfc.area);
  }
  r.finish();
  return mc;
}

inline ParameterSpec read_parameter(const std::string& source, const YAML::Node& node) {
  MapReader r(source, node, "parameter");
  ParameterSpec p;
  p.name = r.text(r.require("name"), "name");
  const auto dist_node = r.require("distribution");
  const auto dist = r.text(dist_node, "distribution");
  if (dist == "uniform") {
    const double lo = r.real(r.require("lo"), "lo");
    const double hi = r.real(r.require("hi"), "hi");
    p.distribution = Uniform{lo, hi};
    p.nominal = 0.5 * (lo + hi);
    r.opt_real("nominal", p.nominal);
  } else if (dist == "normal") {
    p.nominal = r.real(r.require("nominal"), "nominal");
    const auto rel = r.get("relative_uncertainty");
    const auto sd = r.get("sd");
    if (rel.has_value() == sd.has_value()) {
      r.fail(node, "normal parameter '" + p.name + "' needs exactly one of relative_uncertainty, sd");
    }
    double s = 0.0;
    if (rel) {
      p.relative_uncertainty = r.real(*rel, "relative_uncertainty");
      s = p.relative_uncertainty * std::abs(p.nominal);
    } else {
      s = r.real(*sd, "sd");
      p.relative_uncertainty = p.nominal != 0.0 ? s / std::abs(p.nominal) : 0.0;
    }
    p.distribution = Normal{p.nominal, s};
  } else {
    r.fail(dist_node, "'distribution' must be uniform or normal");
  }
  if (auto v = r.get("morris_bounds")) {
    const auto b = r.reals(*v, "morris_bounds");
    if (b.size() != 2) r.fail(*v, "'morris_bounds' must be [lo, hi]");
    p.morris_bounds = Bounds{b[0], b[1]};
  }
  if (auto v = r.get("positive")) p.positive = r.boolean(*v, "positive");
  r.finish();
  try {
    p.validate();
  } catch (const Error& e) {
    r.fail(node, e.what());
  }
  return p;
}

}  // namespace detail

/// Parses and validates a YAML study document. `source` prefixes error messages.
inline StudyConfig parse_config(const std::string& text, const std::string& source = "<config>") {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source, e.mark.line + 1, e.msg);
  }
  if (!root.IsDefined() || root.IsNull()) throw ConfigError(source, 0, "empty configuration");
  StudyConfig cfg;
  cfg.source = source;
  detail::MapReader r(cfg.source, root, "configuration");

  const auto seed_node = r.get("seed");
  if (!seed_node) r.fail(root, "missing required key 'seed'");
  cfg.seed = r.integer(*seed_node, "seed");
  if (auto v = r.get("output_dir")) cfg.output_dir = r.text(*v, "output_dir");
  if (auto v = r.get("model")) cfg.model = detail::read_model(cfg.source, *v);

  const auto params = r.get("parameters");
  if (params) {
    if (!cfg.model) r.fail(*params, "'parameters' given without a model");
    if (!params->IsSequence()) r.fail(*params, "'parameters' must be a list");
    for (const auto& p : *params) cfg.parameters.push_back(detail::read_parameter(cfg.source, p));
  } else if (cfg.model) {
    cfg.parameters = default_parameters(cfg.model->name, cfg.model->options);
  }
  if (cfg.model) {
    const auto inputs = make_model(cfg.model->name, cfg.model->options).inputs;
    const auto names = parameter_names(cfg.parameters);
    if (names != inputs) {
      std::string want;
      for (const auto& n : inputs) want += (want.empty() ? "" : ", ") + n;
      r.fail(params ? *params : root, "parameters must be, in order: " + want);
    }
  }

  const auto methods = r.require("methods");
  if (!methods.IsSequence() || methods.size() == 0) r.fail(methods, "'methods' must be a non-empty list");
  std::set<std::string> labels;
  for (const auto& m : methods) {
    auto e = detail::read_method(cfg.source, m);
    if (!cfg.model && !is_mcfc_method(e.method)) {
      throw ConfigError(cfg.source, e.line, "method '" + e.method + "' needs a model");
    }
    if (!labels.insert(e.label).second) {
      throw ConfigError(cfg.source, e.line, "duplicate output label '" + e.label + "'");
    }
    if (const auto* d = std::get_if<DetUqSettings>(&e.settings); d && d->covariance) {
      const auto n = cfg.parameters.size();
      bool ok = d->covariance->size() == n;
      for (const auto& row : *d->covariance) ok = ok && row.size() == n;
      if (!ok) {
        throw ConfigError(cfg.source, e.line,
                          "covariance must be " + std::to_string(n) + " x " + std::to_string(n));
      }
    }
    cfg.methods.push_back(std::move(e));
  }
  r.finish();
  return cfg;
}

inline StudyConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError(path.string(), 0, "cannot read file");
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return parse_config(text, path.string());
}

namespace detail {

inline void emit_number(YAML::Emitter& out, double v) { out << format_number(v); }

inline void emit_reals(YAML::Emitter& out, std::span<const double> v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (double x : v) emit_number(out, x);
  out << YAML::EndSeq;
}

inline void emit_texts(YAML::Emitter& out, const std::vector<std::string>& v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (const auto& s : v) out << s;
  out << YAML::EndSeq;
}

inline void emit_oat(YAML::Emitter& out, const OatSettings& s) {
  out << YAML::Key << "delta" << YAML::Value;
  emit_number(out, s.delta);
  out << YAML::Key << "scheme" << YAML::Value << std::string(to_string(s.scheme));
}

inline void emit_morris(YAML::Emitter& out, const MorrisSettings& s) {
  out << YAML::Key << "trajectories" << YAML::Value << s.trajectories;
  out << YAML::Key << "levels" << YAML::Value << s.levels;
  if (s.step_fraction) {
    out << YAML::Key << "step_fraction" << YAML::Value;
    emit_number(out, *s.step_fraction);
  }
}

inline void emit_range(YAML::Emitter& out, double lo, double hi, std::size_t steps) {
  out << YAML::Key << "j_lo" << YAML::Value;
  emit_number(out, lo);
  out << YAML::Key << "j_hi" << YAML::Value;
  emit_number(out, hi);
  out << YAML::Key << "steps" << YAML::Value << steps;
}

struct SettingsEmitter {
  YAML::Emitter& out;

  void operator()(const OatSettings& s) const { emit_oat(out, s); }
  void operator()(const RegressionSettings& s) const {
    out << YAML::Key << "samples" << YAML::Value << s.samples;
  }
  void operator()(const MorrisSettings& s) const { emit_morris(out, s); }
  void operator()(const SobolSettings& s) const {
    out << YAML::Key << "N" << YAML::Value << s.samples;
    out << YAML::Key << "correction" << YAML::Value
        << (s.correction == CorrectionTerm::Cross ? "cross" : "as_printed");
  }
  void operator()(const McUqSettings& s) const {
    out << YAML::Key << "samples" << YAML::Value << s.samples;
  }
  void operator()(const DetUqSettings& s) const {
    out << YAML::Key << "source" << YAML::Value << s.source;
    emit_oat(out, s.oat);
    emit_morris(out, s.morris);
    if (s.covariance) {
      out << YAML::Key << "covariance" << YAML::Value << YAML::BeginSeq;
      for (const auto& row : *s.covariance) emit_reals(out, row);
      out << YAML::EndSeq;
    }
  }
  void operator()(const SweepSettings& s) const {
    emit_range(out, s.j_lo, s.j_hi, s.steps);
    out << YAML::Key << "samples" << YAML::Value << s.samples;
  }
  void operator()(const BatterySettings& s) const {
    if (s.j_star) {
      out << YAML::Key << "j_star" << YAML::Value;
      emit_number(out, *s.j_star);
    }
    emit_range(out, s.j_lo, s.j_hi, s.steps);
    out << YAML::Key << "delta" << YAML::Value;
    emit_number(out, s.delta);
    out << YAML::Key << "trajectories" << YAML::Value << s.trajectories;
    out << YAML::Key << "levels" << YAML::Value << s.levels;
    out << YAML::Key << "samples" << YAML::Value << s.samples;
    out << YAML::Key << "sobol_samples" << YAML::Value << s.sobol_samples;
    out << YAML::Key << "mu_override" << YAML::Value;
    emit_texts(out, s.mu_override);
  }
};

}  // namespace detail

/// The configuration with every default filled in; parses back to the same study.
inline std::string resolved_yaml(const StudyConfig& cfg) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "seed" << YAML::Value << cfg.seed;
  out << YAML::Key << "output_dir" << YAML::Value << cfg.output_dir.generic_string();
  if (cfg.model) {
    const auto& m = *cfg.model;
    const auto& o = m.options;
    out << YAML::Key << "model" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << m.name;
    if (m.name == "ishigami") {
      out << YAML::Key << "a" << YAML::Value;
      detail::emit_number(out, o.ishigami_a);
      out << YAML::Key << "b" << YAML::Value;
      detail::emit_number(out, o.ishigami_b);
    } else if (m.name == "sobol_g") {
      out << YAML::Key << "a" << YAML::Value;
      detail::emit_reals(out, o.sobol_g_a);
    } else if (m.name == "morris_fn") {
      out << YAML::Key << "coefficient_seed" << YAML::Value << o.morris_fn_seed;
    } else if (m.name == "mcfc_power" || m.name == "mcfc_eta") {
      out << YAML::Key << "delta_h" << YAML::Value;
      detail::emit_number(out, o.mcfc.delta_h);
      out << YAML::Key << "area" << YAML::Value;
      detail::emit_number(out, o.mcfc.area);
    }
    out << YAML::EndMap;

    out << YAML::Key << "parameters" << YAML::Value << YAML::BeginSeq;
    for (const auto& p : cfg.parameters) {
      out << YAML::BeginMap;
      out << YAML::Key << "name" << YAML::Value << p.name;
      if (const auto* u = std::get_if<Uniform>(&p.distribution)) {
        out << YAML::Key << "distribution" << YAML::Value << "uniform";
        out << YAML::Key << "lo" << YAML::Value;
        detail::emit_number(out, u->lo);
        out << YAML::Key << "hi" << YAML::Value;
        detail::emit_number(out, u->hi);
        out << YAML::Key << "nominal" << YAML::Value;
        detail::emit_number(out, p.nominal);
      } else {
        const auto& n = std::get<Normal>(p.distribution);
        out << YAML::Key << "distribution" << YAML::Value << "normal";
        out << YAML::Key << "nominal" << YAML::Value;
        detail::emit_number(out, p.nominal);
        out << YAML::Key << "sd" << YAML::Value;
        detail::emit_number(out, n.sd);
      }
      if (p.morris_bounds) {
        const double b[2] = {p.morris_bounds->lo, p.morris_bounds->hi};
        out << YAML::Key << "morris_bounds" << YAML::Value;
        detail::emit_reals(out, b);
      }
      out << YAML::Key << "positive" << YAML::Value << p.positive;
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  out << YAML::Key << "methods" << YAML::Value << YAML::BeginSeq;
  for (const auto& e : cfg.methods) {
    out << YAML::BeginMap;
    out << YAML::Key << "method" << YAML::Value << e.method;
    out << YAML::Key << "label" << YAML::Value << e.label;
    std::visit(detail::SettingsEmitter{out}, e.settings);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace sauq

#endif  // SAUQ_CONFIG_HPP
