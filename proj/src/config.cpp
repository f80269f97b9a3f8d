#include "plasmon/config.hpp"

#include "plasmon/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <limits>
#include <regex>
#include <set>
#include <sstream>

namespace plasmon {

namespace {

// yaml-cpp marks are zero-based; nodes created by overrides carry no mark.
int line_of(const YAML::Node &node) {
  const YAML::Mark mark = node.Mark();
  return mark.line >= 0 ? mark.line + 1 : 0;
}

[[noreturn]] void fail(const YAML::Node &node, const std::string &msg) {
  throw ConfigError(msg, line_of(node));
}

void check_keys(const YAML::Node &section, const std::string &name,
                const std::set<std::string> &allowed) {
  if (!section.IsMap()) fail(section, "'" + name + "' must be a mapping");
  for (auto it = section.begin(); it != section.end(); ++it) {
    const std::string key = it->first.as<std::string>();
    if (!allowed.count(key)) fail(it->first, "unknown key '" + name + "." + key + "'");
  }
}

template <typename T>
T scalar(const YAML::Node &node, const std::string &name, const char *type_name) {
  if (!node.IsScalar()) fail(node, "'" + name + "' must be " + type_name);
  try {
    return node.as<T>();
  } catch (const YAML::BadConversion &) {
    fail(node, "'" + name + "' must be " + type_name + ", got '" + node.Scalar() + "'");
  }
}

double real_of(const YAML::Node &node, const std::string &name) {
  return scalar<double>(node, name, "a number");
}

int int_of(const YAML::Node &node, const std::string &name) {
  return scalar<int>(node, name, "an integer");
}

std::vector<double> reals_of(const YAML::Node &node, const std::string &name) {
  if (!node.IsSequence()) fail(node, "'" + name + "' must be a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i)
    out.push_back(real_of(node[i], name + "[" + std::to_string(i) + "]"));
  return out;
}

cplx complex_of(const YAML::Node &node, const std::string &name) {
  if (node.IsSequence()) {
    if (node.size() != 2) fail(node, "'" + name + "' as a list must be [re, im]");
    return {real_of(node[0], name), real_of(node[1], name)};
  }
  if (!node.IsScalar()) fail(node, "'" + name + "' must be a complex number");
  try {
    return parse_complex(node.Scalar());
  } catch (const ConfigError &e) {
    fail(node, "'" + name + "': " + e.what());
  }
}

template <typename F>
void with_section(const YAML::Node &root, const char *name, const std::set<std::string> &keys,
                  F &&body) {
  const YAML::Node section = root[name];
  if (!section) return;
  check_keys(section, name, keys);
  body(section);
}

std::uint64_t seed_of(const YAML::Node &node, const std::string &name) {
  return scalar<std::uint64_t>(node, name, "a non-negative integer");
}

// Copy without source marks, so errors in override values report line 0
// instead of a line inside the one-line override text.
YAML::Node unmarked(const YAML::Node &node) {
  switch (node.Type()) {
    case YAML::NodeType::Scalar:
      return YAML::Node(node.Scalar());
    case YAML::NodeType::Sequence: {
      YAML::Node out(YAML::NodeType::Sequence);
      for (const auto &item : node) out.push_back(unmarked(item));
      return out;
    }
    case YAML::NodeType::Map: {
      YAML::Node out(YAML::NodeType::Map);
      for (const auto &kv : node) out[kv.first.Scalar()] = unmarked(kv.second);
      return out;
    }
    default:
      return YAML::Node();
  }
}

void apply_override(YAML::Node &root, const std::string &assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("--set expects key.path=value, got '" + assignment + "'");
  const std::string path = assignment.substr(0, eq);
  YAML::Node value;
  try {
    value = unmarked(YAML::Load(assignment.substr(eq + 1)));
  } catch (const YAML::Exception &e) {
    throw ConfigError("--set " + path + ": " + e.msg);
  }
  std::vector<std::string> keys;
  std::stringstream ss(path);
  for (std::string part; std::getline(ss, part, '.');) {
    if (part.empty()) throw ConfigError("--set: empty component in '" + path + "'");
    keys.push_back(part);
  }
  // Walk down with fresh handles; assigning to a handle rebinds in yaml-cpp.
  std::vector<YAML::Node> chain{root};
  for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
    YAML::Node next = chain.back()[keys[i]];
    if (!next) {
      chain.back()[keys[i]] = YAML::Node(YAML::NodeType::Map);
      next = chain.back()[keys[i]];
    }
    if (!next.IsMap()) throw ConfigError("--set: '" + keys[i] + "' is not a section");
    chain.push_back(next);
  }
  chain.back()[keys.back()] = value;
}

StarlikeShape closed_shape(const ShapeSpec &s) {
  if (s.kind == "disk") return StarlikeShape::disk(s.radius);
  if (s.kind == "peanut") return StarlikeShape::peanut();
  if (s.kind == "peach") return StarlikeShape::peach();
  if (s.kind == "ellipse") return StarlikeShape::ellipse(s.a, s.b);
  return StarlikeShape::trig_series(s.coefficients);
}

void read_config(const YAML::Node &root, ExperimentConfig &cfg) {
  if (!root || root.IsNull()) return;
  if (!root.IsMap()) fail(root, "top level must be a mapping");
  check_keys(root, "config",
             {"shape", "material", "incident", "measurement", "grid", "inversion", "sampling",
              "ssf", "scan", "run"});

  with_section(root, "shape", {"kind", "radius", "a", "b", "coefficients", "project_order"},
               [&](const YAML::Node &s) {
                 ShapeSpec &sh = cfg.shape;
                 if (s["kind"]) {
                   sh.kind = scalar<std::string>(s["kind"], "shape.kind", "a string");
                   static const std::set<std::string> kinds{"disk", "peanut", "peach", "ellipse",
                                                            "trig_series"};
                   if (!kinds.count(sh.kind)) fail(s["kind"], "unknown shape kind '" + sh.kind + "'");
                 }
                 if (s["radius"]) sh.radius = real_of(s["radius"], "shape.radius");
                 if (s["a"]) sh.a = real_of(s["a"], "shape.a");
                 if (s["b"]) sh.b = real_of(s["b"], "shape.b");
                 if (s["coefficients"]) {
                   const auto c = reals_of(s["coefficients"], "shape.coefficients");
                   if (c.size() % 2 == 0)
                     fail(s["coefficients"], "shape.coefficients needs 2m+1 entries");
                   sh.coefficients = Eigen::Map<const Eigen::VectorXd>(c.data(), c.size());
                 }
                 if (s["project_order"])
                   sh.project_order = int_of(s["project_order"], "shape.project_order");
                 if (sh.kind == "trig_series" && sh.coefficients.size() == 0)
                   fail(s, "trig_series shape needs 'coefficients'");
                 if (sh.project_order < 0) fail(s["project_order"], "project_order must be >= 0");
                 try {
                   (void)sh.build();
                 } catch (const NumericalError &e) {
                   fail(s, std::string("invalid shape: ") + e.what());
                 }
               });

  with_section(root, "material", {"eps_m", "mu_m", "eps_c", "omega", "mu_c", "lambda", "drude"},
               [&](const YAML::Node &m) {
                 MaterialConfig &mat = cfg.material;
                 if (m["eps_m"]) mat.eps_m = real_of(m["eps_m"], "material.eps_m");
                 if (m["mu_m"]) mat.mu_m = real_of(m["mu_m"], "material.mu_m");
                 if (m["eps_c"]) mat.eps_c = real_of(m["eps_c"], "material.eps_c");
                 if (m["omega"]) mat.omega = real_of(m["omega"], "material.omega");
                 const int forms = (m["mu_c"] ? 1 : 0) + (m["lambda"] ? 1 : 0) + (m["drude"] ? 1 : 0);
                 if (forms > 1) fail(m, "material needs exactly one of mu_c, lambda, drude");
                 if (m["mu_c"]) {
                   cfg.material_form = MaterialForm::mu_c;
                   mat.mu_c = complex_of(m["mu_c"], "material.mu_c");
                 } else if (m["lambda"]) {
                   cfg.material_form = MaterialForm::lambda;
                   cfg.lambda = complex_of(m["lambda"], "material.lambda");
                 } else if (m["drude"]) {
                   cfg.material_form = MaterialForm::drude;
                   const YAML::Node d = m["drude"];
                   check_keys(d, "material.drude",
                              {"mu0", "filling", "omega0", "tau", "target_lambda", "bracket"});
                   for (const char *k : {"mu0", "filling", "omega0", "tau"})
                     if (!d[k]) fail(d, std::string("material.drude needs '") + k + "'");
                   DrudeSpec &ds = cfg.drude;
                   ds.params.mu0 = real_of(d["mu0"], "material.drude.mu0");
                   ds.params.filling = real_of(d["filling"], "material.drude.filling");
                   ds.params.omega0 = real_of(d["omega0"], "material.drude.omega0");
                   ds.params.tau = real_of(d["tau"], "material.drude.tau");
                   if (d["target_lambda"]) {
                     ds.has_target = true;
                     ds.target_lambda = real_of(d["target_lambda"], "material.drude.target_lambda");
                     if (!d["bracket"]) fail(d, "material.drude.target_lambda needs 'bracket'");
                     const auto br = reals_of(d["bracket"], "material.drude.bracket");
                     if (br.size() != 2 || !(br[0] < br[1]))
                       fail(d["bracket"], "bracket must be [lo, hi] with lo < hi");
                     ds.bracket_lo = br[0];
                     ds.bracket_hi = br[1];
                   }
                   try {
                     ds.params.validate();
                   } catch (const NumericalError &e) {
                     fail(d, e.what());
                   }
                 }
               });

  with_section(root, "incident", {"angle", "amplitude"}, [&](const YAML::Node &s) {
    if (s["angle"]) cfg.incident.angle = real_of(s["angle"], "incident.angle");
    if (s["amplitude"]) cfg.incident.amplitude = real_of(s["amplitude"], "incident.amplitude");
  });

  with_section(root, "measurement", {"radius", "count"}, [&](const YAML::Node &s) {
    if (s["radius"]) cfg.circle.radius = real_of(s["radius"], "measurement.radius");
    if (s["count"]) cfg.circle.count = int_of(s["count"], "measurement.count");
    if (!(cfg.circle.radius > 0.0) || cfg.circle.count < 1)
      fail(s, "measurement needs radius > 0 and count >= 1");
  });

  with_section(root, "grid", {"n", "synthetic_n", "np_n"}, [&](const YAML::Node &s) {
    if (s["n"]) cfg.n = int_of(s["n"], "grid.n");
    if (s["synthetic_n"]) cfg.synthetic_n = int_of(s["synthetic_n"], "grid.synthetic_n");
    if (s["np_n"]) cfg.np_n = int_of(s["np_n"], "grid.np_n");
    if (cfg.n < 8 || cfg.synthetic_n < 8 || cfg.np_n < 8) fail(s, "grid sizes must be >= 8");
  });

  with_section(root, "inversion",
               {"m", "q0", "eta0", "alpha0", "beta0", "delta", "max_iters", "stop_tol", "fd_step",
                "update_eta", "backtrack_limit"},
               [&](const YAML::Node &s) {
                 InversionConfig &inv = cfg.inversion;
                 if (s["m"]) inv.m = int_of(s["m"], "inversion.m");
                 if (s["q0"]) {
                   const auto q = reals_of(s["q0"], "inversion.q0");
                   inv.q0 = Eigen::Map<const Eigen::VectorXd>(q.data(), q.size());
                 }
                 if (s["eta0"]) inv.eta0 = real_of(s["eta0"], "inversion.eta0");
                 if (s["alpha0"]) inv.alpha0 = real_of(s["alpha0"], "inversion.alpha0");
                 if (s["beta0"]) inv.beta0 = real_of(s["beta0"], "inversion.beta0");
                 if (s["delta"]) inv.delta = real_of(s["delta"], "inversion.delta");
                 if (s["max_iters"]) inv.max_iters = int_of(s["max_iters"], "inversion.max_iters");
                 if (s["stop_tol"]) inv.stop_tol = real_of(s["stop_tol"], "inversion.stop_tol");
                 if (s["fd_step"]) inv.fd_step = real_of(s["fd_step"], "inversion.fd_step");
                 if (s["update_eta"])
                   inv.update_eta = scalar<bool>(s["update_eta"], "inversion.update_eta", "a boolean");
                 if (s["backtrack_limit"])
                   inv.backtrack_limit = int_of(s["backtrack_limit"], "inversion.backtrack_limit");
                 try {
                   inv.validate();
                 } catch (const NumericalError &e) {
                   fail(s, e.what());
                 }
               });

  with_section(root, "sampling", {"count", "level", "angles"}, [&](const YAML::Node &s) {
    if (s["count"]) cfg.sampling.count = int_of(s["count"], "sampling.count");
    if (s["level"]) cfg.sampling.level = real_of(s["level"], "sampling.level");
    if (s["angles"]) cfg.sampling.angles = int_of(s["angles"], "sampling.angles");
    if (cfg.sampling.count < 2 || !(cfg.sampling.level > 0.0 && cfg.sampling.level < 1.0) ||
        cfg.sampling.angles < 1)
      fail(s, "sampling needs count >= 2, 0 < level < 1, angles >= 1");
  });

  with_section(root, "ssf", {"eps", "rel_tol", "fit_order", "h", "zetas"},
               [&](const YAML::Node &s) {
                 SSFSpec &f = cfg.ssf;
                 if (s["eps"]) f.options.eps = real_of(s["eps"], "ssf.eps");
                 if (s["rel_tol"]) f.options.rel_tol = real_of(s["rel_tol"], "ssf.rel_tol");
                 if (s["fit_order"]) f.options.fit_order = int_of(s["fit_order"], "ssf.fit_order");
                 if (s["h"]) {
                   f.h = scalar<std::string>(s["h"], "ssf.h", "a string");
                   static const std::set<std::string> hs{"x1+x2", "one", "x1", "x2"};
                   if (!hs.count(f.h)) fail(s["h"], "unknown perturbation '" + f.h + "'");
                 }
                 if (s["zetas"]) f.zetas = reals_of(s["zetas"], "ssf.zetas");
               });

  with_section(root, "scan", {"imag_values", "omega_min", "omega_max", "count", "point"},
               [&](const YAML::Node &s) {
                 ScanSpec &sc = cfg.scan;
                 if (s["imag_values"]) sc.imag_values = reals_of(s["imag_values"], "scan.imag_values");
                 if (s["omega_min"]) sc.omega_min = real_of(s["omega_min"], "scan.omega_min");
                 if (s["omega_max"]) sc.omega_max = real_of(s["omega_max"], "scan.omega_max");
                 if (s["count"]) sc.count = int_of(s["count"], "scan.count");
                 if (s["point"]) {
                   const auto p = reals_of(s["point"], "scan.point");
                   if (p.size() != 2) fail(s["point"], "scan.point must be [x, y]");
                   sc.point = Vec2(p[0], p[1]);
                 }
                 if (sc.count < 2 || !(sc.omega_min > 0.0 && sc.omega_min < sc.omega_max))
                   fail(s, "scan needs count >= 2 and 0 < omega_min < omega_max");
               });

  with_section(root, "run", {"seed", "seeds", "out"}, [&](const YAML::Node &s) {
    if (s["seed"]) cfg.seed = seed_of(s["seed"], "run.seed");
    if (s["seeds"]) {
      const YAML::Node list = s["seeds"];
      if (!list.IsSequence() || list.size() == 0) fail(list, "run.seeds must be a non-empty list");
      cfg.seeds.clear();
      for (std::size_t i = 0; i < list.size(); ++i) cfg.seeds.push_back(seed_of(list[i], "run.seeds"));
    }
    if (s["out"]) cfg.out_dir = scalar<std::string>(s["out"], "run.out", "a string");
  });
}

// Derives mu_c, lambda and (for a Drude target) omega once all sections are read.
void resolve_material(ExperimentConfig &cfg) {
  MaterialConfig &mat = cfg.material;
  switch (cfg.material_form) {
    case MaterialForm::mu_c:
      break;
    case MaterialForm::lambda:
      mat.mu_c = mu_of_lambda(mat.mu_m, cfg.lambda);
      break;
    case MaterialForm::drude:
      if (cfg.drude.has_target)
        mat.omega = find_resonant_omega(cfg.drude.params, mat.mu_m, cfg.drude.target_lambda,
                                        cfg.drude.bracket_lo, cfg.drude.bracket_hi);
      mat.mu_c = drude_mu(cfg.drude.params, mat.omega).mu;
      break;
  }
  if (cfg.material_form != MaterialForm::lambda)
    cfg.lambda = mat.mu_c == cplx(mat.mu_m) ? cplx(std::numeric_limits<double>::infinity())
                                            : lambda_of_mu(mat.mu_m, mat.mu_c);
  try {
    mat.validate();
  } catch (const NumericalError &e) {
    if (e.kind() == ErrorKind::InvalidArgument) throw ConfigError(e.what());
    throw;
  }
}

}  // namespace

StarlikeShape ShapeSpec::build() const {
  const StarlikeShape base = closed_shape(*this);
  if (project_order <= 0) return base;
  return StarlikeShape::trig_series(
      fit_trig_series([&](double t) { return base.radius(t); }, project_order));
}

ForwardSetup ExperimentConfig::forward_setup() const {
  ForwardSetup s;
  s.mat = material;
  s.inc = incident;
  s.circle = circle;
  s.n = n;
  return s;
}

ForwardSetup ExperimentConfig::synthetic_setup() const {
  ForwardSetup s = forward_setup();
  s.n = synthetic_n;
  return s;
}

ExperimentConfig default_config() { return ExperimentConfig{}; }

cplx parse_complex(const std::string &text) {
  static const std::regex number(R"(\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*)");
  static const std::regex imag(R"(\s*([+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)\s*[ij]\s*)");
  static const std::regex full(
      R"(\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij]\s*)");
  std::smatch m;
  auto coefficient = [](const std::string &s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return std::stod(s);
  };
  if (std::regex_match(text, m, number)) return {std::stod(m[1]), 0.0};
  if (std::regex_match(text, m, imag)) return {0.0, coefficient(m[1])};
  if (std::regex_match(text, m, full)) {
    const double im = m[3].matched && m[3].length() > 0 ? std::stod(m[3]) : 1.0;
    return {std::stod(m[1]), m[2] == "-" ? -im : im};
  }
  throw ConfigError("cannot parse complex number '" + text + "'");
}

ExperimentConfig parse_config(const std::string &text, const std::vector<std::string> &overrides) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException &e) {
    throw ConfigError(e.msg, e.mark.line >= 0 ? e.mark.line + 1 : 0);
  }
  if (!root || root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  for (const auto &o : overrides) apply_override(root, o);
  ExperimentConfig cfg = default_config();
  read_config(root, cfg);
  resolve_material(cfg);
  if (cfg.inversion.q0.size() != 0 && cfg.inversion.q0.size() != 2 * cfg.inversion.m + 1)
    throw ConfigError("inversion.q0 must have 2m+1 entries", line_of(root["inversion"]));
  return cfg;
}

ExperimentConfig load_config(const std::string &path, const std::vector<std::string> &overrides) {
  if (path.empty()) return parse_config("", overrides);
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

}  // namespace plasmon
