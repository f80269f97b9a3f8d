#include "plasmon/experiments.hpp"

#include "plasmon/errors.hpp"
#include "plasmon/mie_oracle.hpp"
#include "plasmon/np_spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>
#include <variant>

namespace plasmon {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

using Cell = std::variant<double, long long, std::string>;
using Row = std::vector<Cell>;

std::string format_cell(const Cell &c) {
  if (const double *d = std::get_if<double>(&c)) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *d);
    return buf;
  }
  if (const long long *i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  void csv(const std::string &name, const std::vector<std::string> &header,
           const std::vector<Row> &rows) {
    std::ofstream out(dir_ / name);
    if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const Row &r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_cell(r[i]);
      out << '\n';
    }
    files_.push_back(name);
  }

  void manifest(const json &body) {
    json m = body;
    m["outputs"] = files_;
    std::ofstream out(dir_ / "manifest.json");
    out << m.dump(2) << '\n';
  }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string significant(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string lambda_label(cplx l) {
  std::ostringstream os;
  os << significant(l.real(), 6);
  if (l.imag() != 0.0) os << (l.imag() > 0 ? "+" : "-") << significant(std::abs(l.imag()), 6) << "i";
  return os.str();
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return std::nan("");
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

ExperimentConfig with_lambda(ExperimentConfig cfg, cplx lambda) {
  cfg.material_form = MaterialForm::lambda;
  cfg.lambda = lambda;
  cfg.material.mu_c = mu_of_lambda(cfg.material.mu_m, lambda);
  return cfg;
}

ExperimentConfig with_mu(ExperimentConfig cfg, cplx mu_c) {
  cfg.material_form = MaterialForm::mu_c;
  cfg.material.mu_c = mu_c;
  cfg.lambda = lambda_of_mu(cfg.material.mu_m, mu_c);
  return cfg;
}

json base_manifest(const std::string &verb, const std::vector<std::string> &args,
                   const ExperimentConfig &cfg) {
  json m;
  m["tool"] = "plasmon";
  m["version"] = kVersion;
  m["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
                       std::to_string(EIGEN_MAJOR_VERSION) + "." +
                       std::to_string(EIGEN_MINOR_VERSION);
  m["verb"] = verb;
  m["args"] = args;
  m["seed"] = cfg.seed;
  m["config"] = config_json(cfg);
  return m;
}

// Verb implementations. Each writes its CSV files and returns a summary.

json verb_forward(const ExperimentConfig &cfg, const RunOptions &opts, OutputSet &out,
                  std::ostream &log) {
  const StarlikeShape shape = cfg.shape.build();
  const BoundaryGrid grid = discretize(shape, cfg.n);
  const DensityPair dens = solve_densities(grid, cfg.material, cfg.incident);
  const std::vector<Vec2> pts = cfg.circle.points();
  const Eigen::VectorXcd us = scattered_field(dens, grid, shape, cfg.material, pts);
  const std::vector<double> ang = cfg.circle.angles();

  std::vector<Row> rows;
  for (int i = 0; i < us.size(); ++i)
    rows.push_back({ang[i], us[i].real(), us[i].imag(), std::abs(us[i])});
  out.csv("forward.csv", {"t_obs", "re_us", "im_us", "abs_us"}, rows);

  json summary;
  summary["max_abs_us"] = us.cwiseAbs().maxCoeff();
  summary["condition_estimate"] = dens.condition_estimate;
  summary["relative_residual"] = dens.residual;

  if (opts.oracle) {
    if (shape.kind() != CurveKind::disk)
      throw ConfigError("forward --oracle needs shape.kind = disk");
    const MieSolution mie = mie_coefficients(cfg.shape.radius, cfg.material, cfg.incident);
    const std::vector<cplx> ref = mie_field(mie, pts, MieField::scattered);
    std::vector<Row> cmp;
    double max_abs = 0.0, max_rel = 0.0;
    for (int i = 0; i < us.size(); ++i) {
      const double diff = std::abs(us[i] - ref[i]);
      max_abs = std::max(max_abs, diff);
      max_rel = std::max(max_rel, diff / std::abs(ref[i]));
      cmp.push_back({ang[i], us[i].real(), us[i].imag(), ref[i].real(), ref[i].imag(), diff});
    }
    out.csv("forward_oracle.csv",
            {"t_obs", "re_us_bie", "im_us_bie", "re_us_mie", "im_us_mie", "abs_diff"}, cmp);
    summary["oracle_max_abs_diff"] = max_abs;
    summary["oracle_max_rel_diff"] = max_rel;
    summary["mie_order"] = mie.order;
    log << "max |u_bie - u_mie| = " << significant(max_abs, 6)
        << "  (relative " << significant(max_rel, 6) << ")\n";
  }
  log << "max |u^s| on the measurement circle = " << significant(us.cwiseAbs().maxCoeff(), 8) << "\n";
  return summary;
}

json verb_resonance_scan(const ExperimentConfig &cfg, OutputSet &out, std::ostream &log) {
  const StarlikeShape shape = cfg.shape.build();
  const BoundaryGrid grid = discretize(shape, cfg.n);
  const std::vector<Vec2> point{cfg.scan.point};

  auto field_at = [&](const MaterialConfig &mat) {
    const DensityPair dens = solve_densities(grid, mat, cfg.incident);
    return std::abs(scattered_field(dens, grid, shape, mat, point)[0]);
  };

  std::vector<Row> rows;
  json summary;
  double peak = 0.0, peak_omega = 0.0;
  if (cfg.material_form == MaterialForm::drude) {
    for (int i = 0; i < cfg.scan.count; ++i) {
      const double w = cfg.scan.omega_min +
                       (cfg.scan.omega_max - cfg.scan.omega_min) * i / (cfg.scan.count - 1);
      MaterialConfig mat = cfg.material;
      mat.omega = w;
      mat.mu_c = drude_mu(cfg.drude.params, w).mu;
      const cplx lam = lambda_of_mu(mat.mu_m, mat.mu_c);
      const double a = field_at(mat);
      if (a > peak) {
        peak = a;
        peak_omega = w;
      }
      rows.push_back({w, lam.real(), lam.imag(), mat.mu_c.real(), mat.mu_c.imag(), a});
    }
    summary["peak_omega"] = peak_omega;
  } else {
    for (double im : cfg.scan.imag_values) {
      const cplx lam(cfg.lambda.real(), im);
      MaterialConfig mat = cfg.material;
      mat.mu_c = mu_of_lambda(mat.mu_m, lam);
      const double a = field_at(mat);
      peak = std::max(peak, a);
      rows.push_back({mat.omega, lam.real(), lam.imag(), mat.mu_c.real(), mat.mu_c.imag(), a});
    }
  }
  out.csv("resonance_scan.csv", {"omega", "re_lambda", "im_lambda", "re_mu_c", "im_mu_c", "abs_us"},
          rows);
  summary["peak_abs_us"] = peak;
  log << "scanned " << rows.size() << " materials, peak |u^s| = " << significant(peak, 8) << "\n";
  return summary;
}

json verb_np_spectrum(const ExperimentConfig &cfg, OutputSet &out, std::ostream &log) {
  const StarlikeShape shape = cfg.shape.build();
  const NPSpectrum sp = spectrum(assemble(discretize(shape, cfg.np_n)));
  std::vector<Row> rows;
  long long idx = 0;
  rows.push_back({idx++, sp.top.value, std::string("top")});
  for (const auto &c : sp.candidates) rows.push_back({idx++, c.value, std::string("candidate")});
  for (double z : sp.zero_cluster) rows.push_back({idx++, z, std::string("zero_cluster")});
  out.csv("np_spectrum.csv", {"index", "lambda", "kind"}, rows);
  json summary;
  summary["top"] = sp.top.value;
  summary["candidates"] = sp.candidates.size();
  summary["zero_cluster"] = sp.zero_cluster.size();
  summary["max_imag_part"] = sp.max_imag_part;
  log << shape.describe() << ": " << sp.candidates.size() << " candidates";
  if (!sp.candidates.empty()) log << ", largest |lambda| = " << significant(std::abs(sp.candidates[0].value), 8);
  log << "\n";
  return summary;
}

std::vector<Row> ssf_rows(const std::vector<SSFRow> &rows) {
  std::vector<Row> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double ratio = i ? rows[i].norm / rows[i - 1].norm : std::nan("");
    out.push_back({rows[i].zeta, rows[i].sqrt_perimeter, rows[i].max_curvature, rows[i].norm,
                   rows[i].error_estimate, ratio});
  }
  return out;
}

const std::vector<std::string> kSSFHeader{"zeta",     "sqrt_perimeter", "max_curvature",
                                          "ssf_norm", "error_estimate", "ratio_to_previous"};

json verb_ssf_scan(const ExperimentConfig &cfg, const RunOptions &opts, OutputSet &out,
                   std::ostream &log) {
  const auto rows = ssf_scan(cfg.shape.build(), cfg.forward_setup(), cfg.ssf, cfg.np_n, opts.workers);
  out.csv("ssf_scan.csv", kSSFHeader, ssf_rows(rows));
  json summary = json::array();
  for (const auto &r : rows) {
    summary.push_back({{"zeta", r.zeta}, {"ssf_norm", r.norm}});
    log << "zeta " << fixed(r.zeta, 4) << "  ||SSF|| " << significant(r.norm, 6) << "\n";
  }
  return summary;
}

json verb_svd(const ExperimentConfig &cfg, OutputSet &out, std::ostream &log) {
  const Eigen::VectorXd q = trig_coefficients(cfg.shape.build(), cfg.inversion.m);
  const auto rows = svd_table(q, cfg, {cfg.lambda});
  const SVDReport &r = rows[0].svd;
  std::vector<Row> csv;
  for (int i = 0; i < r.singular_values.size(); ++i)
    csv.push_back({static_cast<long long>(i + 1), r.singular_values[i]});
  out.csv("svd.csv", {"i", "s_i"}, csv);
  log << "s_max " << significant(r.s_max, 6) << "  s_min " << significant(r.s_min, 6) << "  cond "
      << significant(r.cond, 6) << "\n";
  return {{"s_max", r.s_max}, {"s_min", r.s_min}, {"cond", r.cond}};
}

void write_case(const CaseResult &c, const StarlikeShape &truth, int angles, OutputSet &out) {
  std::vector<Row> it;
  for (const auto &r : c.recon.log)
    it.push_back({static_cast<long long>(r.z), r.eta, r.residual_norm, r.step_norm,
                  static_cast<long long>(r.halvings)});
  out.csv("iterations.csv", {"z", "eta", "residual_norm", "step_norm", "halvings"}, it);

  const int m = static_cast<int>(c.recon.q_map.size() - 1) / 2;
  std::vector<Row> co;
  for (int k = 0; k < c.recon.q_map.size(); ++k) {
    const std::string name = k <= m ? "a" + std::to_string(k) : "b" + std::to_string(k - m);
    co.push_back({name, c.recon.q_map[k], c.la_mean[k]});
  }
  out.csv("coefficients.csv", {"name", "q_map", "q_la_mean"}, co);

  const StarlikeShape est = StarlikeShape::trig_series(c.recon.q_map);
  std::vector<Row> rad;
  for (int i = 0; i < angles; ++i) {
    const double t = 2.0 * std::numbers::pi * i / angles;
    rad.push_back({t, truth.radius(t), est.radius(t)});
  }
  out.csv("radius.csv", {"t", "q_true", "q_est"}, rad);
}

json case_summary(const CaseResult &c) {
  return {{"lambda", complex_json(c.lambda)},
          {"delta", c.delta},
          {"seed", c.seed},
          {"iterations", c.recon.iterations},
          {"termination", std::string(termination_name(c.recon.reason))},
          {"eta", c.recon.eta},
          {"e_map", c.e_map},
          {"e_la", c.e_la},
          {"band_coverage", c.band_coverage}};
}

json verb_reconstruct(const ExperimentConfig &cfg, OutputSet &out, std::ostream &log, bool bands) {
  const StarlikeShape truth = cfg.shape.build();
  const CaseResult c = run_case(cfg, truth, cfg.seed);
  write_case(c, truth, cfg.sampling.angles, out);
  if (bands && !c.band.angles.empty()) {
    const std::string pct = std::to_string(static_cast<int>(std::lround(100 * cfg.sampling.level)));
    std::vector<Row> rows;
    for (std::size_t i = 0; i < c.band.angles.size(); ++i)
      rows.push_back({c.band.angles[i], truth.radius(c.band.angles[i]), c.band.mean[i],
                      c.band.lower[i], c.band.upper[i]});
    out.csv("band.csv", {"t", "q_true", "q_mean", "q_lo" + pct, "q_hi" + pct}, rows);
  }
  log << c.recon.iterations << " iterations (" << termination_name(c.recon.reason)
      << "), e_map " << significant(c.e_map, 6) << ", e_la " << significant(c.e_la, 6) << "\n";
  return case_summary(c);
}

json verb_table_ssf(int table, const ExperimentConfig &base, const RunOptions &opts,
                    OutputSet &out, std::ostream &log) {
  const ExperimentConfig cfg = table_preset(table, base);
  const auto rows = ssf_scan(cfg.shape.build(), cfg.forward_setup(), cfg.ssf, cfg.np_n, opts.workers);
  const std::string stem = "table" + std::to_string(table);
  out.csv(stem + ".csv", kSSFHeader, ssf_rows(rows));
  std::vector<Row> rounded;
  for (const auto &r : rows)
    rounded.push_back({fixed(r.zeta, 2), fixed(r.sqrt_perimeter, 4), fixed(r.max_curvature, 3),
                     fixed(r.norm, 3)});
  out.csv(stem + "_rounded.csv", {"zeta", "sqrt_perimeter", "max_curvature", "ssf_norm"}, rounded);
  json summary = json::array();
  for (const auto &r : rows) {
    summary.push_back({{"zeta", r.zeta}, {"ssf_norm", r.norm}});
    log << "zeta " << fixed(r.zeta, 2) << "  |dB|^1/2 " << fixed(r.sqrt_perimeter, 4) << "  ||tau|| "
        << fixed(r.max_curvature, 3) << "  ||SSF|| " << significant(r.norm, 4) << "\n";
  }
  return {{"config", config_json(cfg)}, {"rows", summary}};
}

json verb_table2(const ExperimentConfig &base, const RunOptions &opts, OutputSet &out,
                 std::ostream &log) {
  const ExperimentConfig preset = table_preset(2, base);
  const StarlikeShape truth = preset.shape.build();
  struct Job {
    cplx lambda;
    double delta;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (cplx l : table2_lambdas())
    for (double d : table2_deltas())
      for (std::uint64_t s : preset.seeds) jobs.push_back({l, d, s});

  std::vector<CaseResult> results(jobs.size());
  std::mutex log_mutex;
  parallel_for(static_cast<int>(jobs.size()), opts.workers, [&](int i) {
    ExperimentConfig cfg = with_lambda(preset, jobs[i].lambda);
    cfg.inversion.delta = jobs[i].delta;
    results[i] = run_case(cfg, truth, jobs[i].seed);
    std::lock_guard<std::mutex> lock(log_mutex);
    log << "lambda " << lambda_label(jobs[i].lambda) << " delta " << jobs[i].delta << " seed "
        << jobs[i].seed << ": e_la " << significant(results[i].e_la, 5) << "\n";
  });

  std::vector<Row> runs;
  for (const auto &c : results)
    runs.push_back({c.lambda.real(), c.lambda.imag(), c.delta, static_cast<long long>(c.seed), c.e_la,
                    c.e_map, static_cast<long long>(c.recon.iterations),
                    std::string(termination_name(c.recon.reason)), c.recon.eta, c.band_coverage});
  out.csv("table2_runs.csv",
          {"re_lambda", "im_lambda", "delta", "seed", "e_la", "e_map", "iterations", "termination",
           "eta", "band_coverage"},
          runs);

  std::vector<Row> agg, rounded;
  json summary = json::array();
  for (cplx l : table2_lambdas()) {
    Row prow{lambda_label(l)};
    for (double d : table2_deltas()) {
      std::vector<double> la, map;
      for (const auto &c : results)
        if (c.lambda == l && c.delta == d) {
          la.push_back(c.e_la);
          map.push_back(c.e_map);
        }
      const double med = median(la);
      agg.push_back({l.real(), l.imag(), d, static_cast<long long>(la.size()), med, median(map)});
      prow.push_back(fixed(med, 4));
      summary.push_back({{"lambda", complex_json(l)}, {"delta", d}, {"median_e_la", med}});
    }
    rounded.push_back(prow);
  }
  out.csv("table2.csv", {"re_lambda", "im_lambda", "delta", "runs", "median_e_la", "median_e_map"}, agg);
  std::vector<std::string> header{"lambda"};
  for (double d : table2_deltas()) header.push_back("delta=" + significant(d, 3));
  out.csv("table2_rounded.csv", header, rounded);
  return {{"config", config_json(preset)}, {"medians", summary}};
}

json verb_table3(const ExperimentConfig &base, const RunOptions &opts, OutputSet &out,
                 std::ostream &log) {
  const ExperimentConfig preset = table_preset(3, base);
  const Eigen::VectorXd q = trig_coefficients(preset.shape.build(), preset.inversion.m);
  const auto rows = svd_table(q, preset, table3_lambdas(), opts.workers);
  std::vector<Row> csv, rounded, all;
  json summary = json::array();
  for (const auto &r : rows) {
    csv.push_back({r.lambda.real(), r.lambda.imag(), r.svd.s_max, r.svd.s_min, r.svd.cond});
    rounded.push_back({lambda_label(r.lambda), significant(r.svd.s_max, 3), significant(r.svd.s_min, 2),
                     significant(r.svd.cond, 3)});
    for (int i = 0; i < r.svd.singular_values.size(); ++i)
      all.push_back({r.lambda.real(), r.lambda.imag(), static_cast<long long>(i + 1),
                     r.svd.singular_values[i]});
    summary.push_back({{"lambda", complex_json(r.lambda)},
                       {"s_max", r.svd.s_max},
                       {"s_min", r.svd.s_min},
                       {"cond", r.svd.cond}});
    log << "lambda " << lambda_label(r.lambda) << "  s_max " << significant(r.svd.s_max, 4)
        << "  s_min " << significant(r.svd.s_min, 4) << "  cond " << significant(r.svd.cond, 4) << "\n";
  }
  out.csv("table3.csv", {"re_lambda", "im_lambda", "s_max", "s_min", "cond"}, csv);
  out.csv("table3_rounded.csv", {"lambda", "s_max", "s_min", "cond"}, rounded);
  out.csv("table3_singular_values.csv", {"re_lambda", "im_lambda", "i", "s_i"}, all);
  return {{"config", config_json(preset)}, {"rows", summary}};
}

int table_number(const std::vector<std::string> &args) {
  if (args.size() != 1 || args[0].size() != 1 || args[0][0] < '1' || args[0][0] > '4')
    throw ConfigError("repro-table expects one argument in {1, 2, 3, 4}");
  return args[0][0] - '0';
}

}  // namespace

void parallel_for(int count, int workers, const std::function<void(int)> &body) {
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first;
  std::mutex err_mutex;
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first) first = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < std::min(workers, count); ++w) pool.emplace_back(worker);
  for (auto &t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

BoundaryFunction named_perturbation(const std::string &name) {
  if (name == "x1+x2") return [](const BoundaryPoint &p) { return p.x.x() + p.x.y(); };
  if (name == "x1") return [](const BoundaryPoint &p) { return p.x.x(); };
  if (name == "x2") return [](const BoundaryPoint &p) { return p.x.y(); };
  if (name == "one") return [](const BoundaryPoint &) { return 1.0; };
  throw ConfigError("unknown perturbation '" + name + "'");
}

std::vector<SSFRow> ssf_scan(const StarlikeShape &base, const ForwardSetup &setup,
                             const SSFSpec &spec, int geometry_n, int workers) {
  const BoundaryFunction h = named_perturbation(spec.h);
  std::vector<SSFRow> rows(spec.zetas.size());
  parallel_for(static_cast<int>(rows.size()), workers, [&](int i) {
    const StarlikeShape b = scale(base, spec.zetas[i]);
    const BoundaryGrid g = discretize(b, geometry_n);
    const SensitivityReport r = ssf(b, setup, h, spec.h, spec.options);
    rows[i] = {spec.zetas[i], std::sqrt(g.perimeter()), g.max_abs_curvature(), r.norm,
               r.error_estimate};
  });
  return rows;
}

CaseResult run_case(const ExperimentConfig &cfg, const StarlikeShape &truth, std::uint64_t seed) {
  const double delta = cfg.inversion.delta;
  const ForwardSetup inv = cfg.forward_setup();
  NearFieldData data;
  data.circle = cfg.circle;
  data.values = cfg.synthetic_setup()(truth);
  if (delta > 0.0) data = add_noise(data, delta, seed);

  CaseResult c;
  c.lambda = cfg.lambda;
  c.delta = delta;
  c.seed = seed;
  c.recon = reconstruct(data, cfg.inversion, inv);
  c.la_mean = c.recon.q_map;
  if (delta > 0.0) {
    const Eigen::MatrixXd g = jacobian(c.recon.q_map, inv, cfg.inversion.fd_step);
    const PosteriorGaussian pg =
        build_gaussian(c.recon.q_map, g, c.recon.eta * delta * delta, delta);
    const SampleSet set = sample(pg, cfg.sampling.count, seed);
    c.la_mean = set.sample_mean;
    c.band = radius_band(set, cfg.sampling.level, cfg.sampling.angles);
    int inside = 0;
    for (std::size_t i = 0; i < c.band.angles.size(); ++i) {
      const double r = truth.radius(c.band.angles[i]);
      if (r >= c.band.lower[i] && r <= c.band.upper[i]) ++inside;
    }
    c.band_coverage = static_cast<double>(inside) / static_cast<double>(c.band.angles.size());
  }
  c.e_map = relative_error(StarlikeShape::trig_series(c.recon.q_map), truth);
  c.e_la = relative_error(StarlikeShape::trig_series(c.la_mean), truth);
  return c;
}

std::vector<SVDRow> svd_table(const Eigen::VectorXd &coeffs, const ExperimentConfig &cfg,
                              const std::vector<cplx> &lambdas, int workers) {
  std::vector<SVDRow> rows(lambdas.size());
  parallel_for(static_cast<int>(rows.size()), workers, [&](int i) {
    const ExperimentConfig c = with_lambda(cfg, lambdas[i]);
    rows[i] = {lambdas[i], svd_report(jacobian(coeffs, c.forward_setup(), cfg.inversion.fd_step))};
  });
  return rows;
}

Eigen::VectorXd trig_coefficients(const StarlikeShape &shape, int m) {
  if (shape.kind() == CurveKind::trig_series && shape.trig_order() == m) return shape.coefficients();
  return fit_trig_series([&](double t) { return shape.radius(t); }, m);
}

ExperimentConfig table_preset(int table, const ExperimentConfig &base) {
  ExperimentConfig cfg = base;
  cfg.ssf.h = "x1+x2";
  switch (table) {
    case 1:
      cfg.shape = ShapeSpec{};
      cfg.shape.kind = "disk";
      cfg.shape.radius = 0.8;
      return with_mu(cfg, cplx(-1.0, 0.004));
    case 2:
    case 3:
      // The examples pose the peanut in the order-m trigonometric model.
      cfg.shape = ShapeSpec{};
      cfg.shape.kind = "peanut";
      cfg.shape.project_order = cfg.inversion.m;
      cfg.inversion.alpha0 = 1000.0;
      cfg.inversion.beta0 = 0.01;
      cfg.inversion.eta0 = 1000.0;
      return with_lambda(cfg, table == 2 ? table2_lambdas()[1] : table3_lambdas()[0]);
    case 4:
      cfg.shape = ShapeSpec{};
      cfg.shape.kind = "peach";
      return with_mu(cfg, cplx(-0.7372, 0.1521));
    default:
      throw ConfigError("table must be 1, 2, 3 or 4");
  }
}

std::vector<cplx> table2_lambdas() { return {cplx(-0.75, 0.0), cplx(0.0393, 1e-3)}; }

std::vector<double> table2_deltas() { return {0.001, 0.005, 0.01}; }

std::vector<cplx> table3_lambdas() {
  return {cplx(-0.75, 0.0), cplx(0.1856, 1e-1), cplx(0.1856, 1e-2), cplx(0.1856, 1e-3),
          cplx(0.1856, 1e-4)};
}

nlohmann::json config_json(const ExperimentConfig &cfg) {
  json shape{{"kind", cfg.shape.kind}, {"project_order", cfg.shape.project_order}};
  if (cfg.shape.kind == "disk") shape["radius"] = cfg.shape.radius;
  if (cfg.shape.kind == "ellipse") {
    shape["a"] = cfg.shape.a;
    shape["b"] = cfg.shape.b;
  }
  if (cfg.shape.coefficients.size())
    shape["coefficients"] = std::vector<double>(cfg.shape.coefficients.data(),
                                                cfg.shape.coefficients.data() +
                                                    cfg.shape.coefficients.size());
  const char *form = cfg.material_form == MaterialForm::mu_c     ? "mu_c"
                     : cfg.material_form == MaterialForm::lambda ? "lambda"
                                                                 : "drude";
  json material{{"eps_m", cfg.material.eps_m},   {"mu_m", cfg.material.mu_m},
                {"eps_c", cfg.material.eps_c},   {"omega", cfg.material.omega},
                {"mu_c", complex_json(cfg.material.mu_c)},
                {"lambda", complex_json(cfg.lambda)}, {"form", form}};
  if (cfg.material_form == MaterialForm::drude) {
    const DrudeSpec &d = cfg.drude;
    material["drude"] = {{"mu0", d.params.mu0},       {"filling", d.params.filling},
                         {"omega0", d.params.omega0}, {"tau", d.params.tau},
                         {"has_target", d.has_target}, {"target_lambda", d.target_lambda},
                         {"bracket", {d.bracket_lo, d.bracket_hi}}};
  }
  const InversionConfig &inv = cfg.inversion;
  json inversion{{"m", inv.m},
                 {"eta0", inv.eta0},
                 {"alpha0", inv.alpha0},
                 {"beta0", inv.beta0},
                 {"delta", inv.delta},
                 {"max_iters", inv.max_iters},
                 {"stop_tol", inv.stop_tol},
                 {"fd_step", inv.fd_step},
                 {"update_eta", inv.update_eta},
                 {"backtrack_limit", inv.backtrack_limit}};
  if (inv.q0.size())
    inversion["q0"] = std::vector<double>(inv.q0.data(), inv.q0.data() + inv.q0.size());
  return {{"shape", shape},
          {"material", material},
          {"incident", {{"angle", cfg.incident.angle}, {"amplitude", cfg.incident.amplitude}}},
          {"measurement", {{"radius", cfg.circle.radius}, {"count", cfg.circle.count}}},
          {"grid", {{"n", cfg.n}, {"synthetic_n", cfg.synthetic_n}, {"np_n", cfg.np_n}}},
          {"inversion", inversion},
          {"sampling",
           {{"count", cfg.sampling.count}, {"level", cfg.sampling.level}, {"angles", cfg.sampling.angles}}},
          {"ssf",
           {{"eps", cfg.ssf.options.eps},
            {"rel_tol", cfg.ssf.options.rel_tol},
            {"fit_order", cfg.ssf.options.fit_order},
            {"h", cfg.ssf.h},
            {"zetas", cfg.ssf.zetas}}},
          {"scan",
           {{"imag_values", cfg.scan.imag_values},
            {"omega_min", cfg.scan.omega_min},
            {"omega_max", cfg.scan.omega_max},
            {"count", cfg.scan.count},
            {"point", {cfg.scan.point.x(), cfg.scan.point.y()}}}},
          {"run", {{"seed", cfg.seed}, {"seeds", cfg.seeds}, {"out", cfg.out_dir}}}};
}

const std::vector<std::string> &verb_names() {
  static const std::vector<std::string> names{"forward", "resonance-scan", "np-spectrum", "ssf-scan",
                                              "svd",     "reconstruct",    "sample",      "repro-table"};
  return names;
}

void run_verb(const std::string &verb, const std::vector<std::string> &args,
              const ExperimentConfig &cfg, const RunOptions &opts, std::ostream &log) {
  if (std::find(verb_names().begin(), verb_names().end(), verb) == verb_names().end())
    throw ConfigError("unknown verb '" + verb + "'");
  if (verb != "repro-table" && !args.empty())
    throw ConfigError("verb '" + verb + "' takes no positional arguments");
  const int table = verb == "repro-table" ? table_number(args) : 0;

  OutputSet out(opts.out_dir);
  json manifest = base_manifest(verb, args, cfg);
  json summary;
  if (verb == "forward") summary = verb_forward(cfg, opts, out, log);
  else if (verb == "resonance-scan") summary = verb_resonance_scan(cfg, out, log);
  else if (verb == "np-spectrum") summary = verb_np_spectrum(cfg, out, log);
  else if (verb == "ssf-scan") summary = verb_ssf_scan(cfg, opts, out, log);
  else if (verb == "svd") summary = verb_svd(cfg, out, log);
  else if (verb == "reconstruct") summary = verb_reconstruct(cfg, out, log, false);
  else if (verb == "sample") summary = verb_reconstruct(cfg, out, log, true);
  else if (table == 1 || table == 4) summary = verb_table_ssf(table, cfg, opts, out, log);
  else if (table == 2) summary = verb_table2(cfg, opts, out, log);
  else summary = verb_table3(cfg, opts, out, log);
  manifest["summary"] = summary;
  out.manifest(manifest);
}

}  // namespace plasmon
