// Command-line front end: reproducible experiments over causal sets,
// propagators, Kraus maps, and the oscillator example. Every run writes its
// fully resolved configuration next to the results.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "sorkinlab/deco.hpp"
#include "sorkinlab/io.hpp"
#include "sorkinlab/oscillator.hpp"
#include "sorkinlab/sampling.hpp"
#include "sorkinlab/scenario.hpp"

namespace fs = std::filesystem;
using namespace sorkinlab;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  std::string oracle = "none";
  double tolerance = 1e-7;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--config", c.config_path, "key=value config file with defaults");
  cmd->add_option("--out", c.out_dir, "output directory");
  cmd->add_option("--seed", c.seed, "RNG seed");
  cmd->add_option("--oracle", c.oracle, "cross-check oracle: none|fock")
      ->check(CLI::IsMember({"none", "fock"}));
  cmd->add_option("--tolerance", c.tolerance, "comparison tolerance");
}

KeyValueConfig load_config(const CommonOpts& c) {
  KeyValueConfig cfg;
  if (!c.config_path.empty()) cfg = KeyValueConfig::parse_file(c.config_path);
  return cfg;
}

void emit_config(const CommonOpts& c, KeyValueConfig cfg, const std::string& command) {
  cfg.set("command", command);
  cfg.set("seed", std::to_string(c.seed));
  cfg.set("oracle", c.oracle);
  cfg.set("tolerance", format_g17(c.tolerance));
  fs::create_directories(c.out_dir);
  std::ofstream f(fs::path(c.out_dir) / "resolved_config.txt");
  cfg.write(f);
}

std::vector<double> parse_grid(const std::string& spec) {
  // "lo:hi:count" or comma-separated values
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    double lo = 0.0, hi = 0.0;
    int count = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 || count < 1) {
      throw std::runtime_error("bad grid spec: " + spec);
    }
    for (int i = 0; i < count; ++i) {
      out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    }
    return out;
  }
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

CausalSet causet_from_options(const std::string& path, double t0, double t1, double x0, double x1,
                              double density, std::uint64_t seed) {
  if (!path.empty()) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open causet file: " + path);
    return load_causet(f);
  }
  if (density > 0.0) return sprinkle(Interval{t0, t1}, Interval{x0, x1}, density, seed);
  return fig7_causet();
}

Eigen::VectorXd vector_from_spec(const std::string& spec, int n) {
  // "points:1,2" -> unit weights on listed points
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  if (spec.rfind("points:", 0) != 0) throw std::runtime_error("bad vector spec: " + spec);
  std::stringstream ss(spec.substr(7));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const int idx = std::stoi(tok);
    if (idx < 0 || idx >= n) throw std::runtime_error("vector spec index out of range: " + tok);
    v(idx) = 1.0;
  }
  return v;
}

PointSet pointset_from_spec(const std::string& spec) {
  PointSet k;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) k.push_back(std::stoi(tok));
  return k;
}

int run_sprinkle(const CommonOpts& c, double t0, double t1, double x0, double x1, double density) {
  KeyValueConfig cfg = load_config(c);
  const CausalSet cs = sprinkle(Interval{t0, t1}, Interval{x0, x1}, density, c.seed);
  fs::create_directories(c.out_dir);
  std::ofstream f(fs::path(c.out_dir) / "causet.txt");
  save_causet(cs, f);
  cfg.set("t0", format_g17(t0));
  cfg.set("t1", format_g17(t1));
  cfg.set("x0", format_g17(x0));
  cfg.set("x1", format_g17(x1));
  cfg.set("density", format_g17(density));
  cfg.set("n_points", std::to_string(cs.size()));
  emit_config(c, cfg, "sprinkle");
  std::cout << "sprinkled " << cs.size() << " points -> " << (fs::path(c.out_dir) / "causet.txt")
            << "\n";
  return 0;
}

int run_propagator(const CommonOpts& c, const std::string& causet_path, double mass,
                   double density) {
  KeyValueConfig cfg = load_config(c);
  const CausalSet cs = causet_from_options(causet_path, 0, 0, 0, 0, 0.0, c.seed);
  const PropagatorSet props = causet_retarded_green(cs, mass, density);
  const ModeBasis modes = sj_modes(props);
  fs::create_directories(c.out_dir);
  {
    std::ofstream f(fs::path(c.out_dir) / "gret.txt");
    dump_matrix(f, props.g_ret, "gret");
  }
  {
    std::ofstream f(fs::path(c.out_dir) / "delta.txt");
    dump_matrix(f, props.delta, "delta");
  }
  {
    std::ofstream f(fs::path(c.out_dir) / "w.txt");
    dump_matrix(f, modes.w_matrix, "w");
  }
  cfg.set("mass", format_g17(mass));
  cfg.set("density", format_g17(density));
  cfg.set("coeff_a", format_g17(props.coeff_a));
  cfg.set("coeff_b", format_g17(props.coeff_b));
  cfg.set("n_modes", std::to_string(modes.eigenvalues.size()));
  emit_config(c, cfg, "propagator");
  std::cout << "propagators for " << cs.size() << " points, " << modes.eigenvalues.size()
            << " SJ modes -> " << c.out_dir << "\n";
  return 0;
}

struct ScenarioBundle {
  CausalSet cs;
  PropagatorSet props;
  ModeBasis modes;
  SorkinScenario sc;
};

ScenarioBundle build_bundle(const std::string& causet_path, const std::string& f_spec,
                            const std::string& k_spec, double mass, double density,
                            std::uint64_t seed) {
  ScenarioBundle b{causet_from_options(causet_path, 0, 0, 0, 0, 0.0, seed), {}, {}, {}};
  b.props = causet_retarded_green(b.cs, mass, density);
  b.modes = sj_modes(b.props);
  const Eigen::VectorXd f = vector_from_spec(f_spec, b.cs.size());
  const PointSet k = pointset_from_spec(k_spec);
  BuildResult r = build_scenario(b.cs, b.props, b.modes, f, k);
  if (!r.scenario) throw std::runtime_error(r.reason);
  b.sc = std::move(*r.scenario);
  return b;
}

void write_scenario(const ScenarioBundle& b, std::ostream& os) {
  os << "scenario\n";
  save_causet(b.cs, os);
  auto vec_line = [&os](const char* name, const Eigen::VectorXd& v) {
    os << name;
    for (Eigen::Index i = 0; i < v.size(); ++i) os << " " << format_g17(v(i));
    os << "\n";
  };
  vec_line("f", b.sc.f);
  vec_line("h", b.sc.h);
  vec_line("g", b.sc.g);
  os << "k";
  for (int p : b.sc.k) os << " " << p;
  os << "\n";
  os << "x_plus " << b.sc.x_plus << "\nx_minus " << b.sc.x_minus << "\n";
  os << "d_fg " << format_g17(b.sc.ctx.d_fg) << "\nd_fh " << format_g17(b.sc.ctx.d_fh)
     << "\nd_gh " << format_g17(b.sc.ctx.d_gh) << "\nw_ff " << format_g17(b.sc.ctx.w_ff)
     << "\nw_gg " << format_g17(b.sc.ctx.w_gg) << "\nw_fg " << format_g17(b.sc.ctx.w_fg.real())
     << " " << format_g17(b.sc.ctx.w_fg.imag()) << "\nw_gf " << format_g17(b.sc.ctx.w_gf.real())
     << " " << format_g17(b.sc.ctx.w_gf.imag()) << "\n";
}

int run_scenario(const CommonOpts& c, const std::string& causet_path, const std::string& f_spec,
                 const std::string& k_spec, double mass, double density) {
  KeyValueConfig cfg = load_config(c);
  const ScenarioBundle b = build_bundle(causet_path, f_spec, k_spec, mass, density, c.seed);
  fs::create_directories(c.out_dir);
  std::ofstream f(fs::path(c.out_dir) / "scenario.txt");
  write_scenario(b, f);
  cfg.set("f", f_spec);
  cfg.set("k", k_spec);
  cfg.set("mass", format_g17(mass));
  cfg.set("density", format_g17(density));
  emit_config(c, cfg, "scenario");
  std::cout << "scenario built: h at point " << b.sc.x_minus << ", g at point " << b.sc.x_plus
            << " -> " << c.out_dir << "\n";
  return 0;
}

int run_chi_scan(const CommonOpts& c, const std::string& causet_path, const std::string& f_spec,
                 const std::string& k_spec, double mass, double density,
                 const std::string& kraus_literal, double t, const std::string& s_spec,
                 int n_max) {
  KeyValueConfig cfg = load_config(c);
  const ScenarioBundle b = build_bundle(causet_path, f_spec, k_spec, mass, density, c.seed);
  const KrausFamily fam = KrausFamily::parse(kraus_literal);
  const std::vector<double> s_grid = parse_grid(s_spec);

  std::vector<cplx> analytic(s_grid.size());
  parallel_for(static_cast<int>(s_grid.size()), [&](int i) {
    analytic[static_cast<std::size_t>(i)] = chi(fam, b.sc.ctx, s_grid[static_cast<std::size_t>(i)], t);
  });

  std::vector<cplx> oracle;
  if (c.oracle == "fock") {
    const FockSpace fk = fock_build(b.modes, n_max);
    oracle.resize(s_grid.size());
    for (std::size_t i = 0; i < s_grid.size(); ++i) {
      oracle[i] = chi_oracle(fk, b.sc.f, b.sc.h, b.sc.g, fam, s_grid[i], t);
    }
  }

  fs::create_directories(c.out_dir);
  std::ofstream f(fs::path(c.out_dir) / "chi.csv");
  f << "s,t,re_chi,im_chi";
  if (!oracle.empty()) f << ",re_chi_fock,im_chi_fock";
  f << "\n";
  double worst = 0.0;
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    f << format_g17(s_grid[i]) << "," << format_g17(t) << "," << format_g17(analytic[i].real())
      << "," << format_g17(analytic[i].imag());
    if (!oracle.empty()) {
      f << "," << format_g17(oracle[i].real()) << "," << format_g17(oracle[i].imag());
      worst = std::max(worst, std::abs(analytic[i] - oracle[i]));
    }
    f << "\n";
  }
  cfg.set("kraus", kraus_literal);
  cfg.set("t", format_g17(t));
  cfg.set("s_grid", s_spec);
  cfg.set("n_max", std::to_string(n_max));
  emit_config(c, cfg, "chi-scan");
  std::cout << "chi scan over " << s_grid.size() << " points -> "
            << (fs::path(c.out_dir) / "chi.csv") << "\n";
  if (!oracle.empty()) {
    std::cout << "fock oracle max deviation: " << worst << "\n";
    if (worst > c.tolerance) {
      std::cerr << "error: oracle deviation exceeds tolerance " << c.tolerance << "\n";
      return 1;
    }
  }
  return 0;
}

int run_verdict(const CommonOpts& c, const std::string& kraus_literal, double shift) {
  KeyValueConfig cfg = load_config(c);
  const KrausFamily fam = KrausFamily::parse(kraus_literal);
  const CausalityVerdict v = causality_verdict(fam, shift);
  cfg.set("kraus", kraus_literal);
  cfg.set("shift", format_g17(shift));
  cfg.set("verdict", v.causal ? "CAUSAL" : "ACAUSAL");
  emit_config(c, cfg, "verdict");
  std::cout << (v.causal ? "CAUSAL" : "ACAUSAL") << "\n";
  if (v.witness) {
    std::cout << "witness: lambda1=" << format_g17(v.witness->lambda1)
              << " lambda2=" << format_g17(v.witness->lambda2)
              << " shift=" << format_g17(v.witness->shift)
              << " gap=" << format_g17(v.witness->gap) << "\n";
  }
  return 0;
}

int run_rt(const CommonOpts& c, const std::string& res_literal, double t, double lo, double hi) {
  KeyValueConfig cfg = load_config(c);
  const Resolution res = Resolution::parse(res_literal);
  const IntervalSet r = r_t(res, t, Interval{lo, hi});
  fs::create_directories(c.out_dir);
  std::ofstream f(fs::path(c.out_dir) / "rt.csv");
  f << "lo,hi\n";
  for (const Interval& p : r.parts()) {
    f << format_g17(p.lo) << "," << format_g17(p.hi) << "\n";
  }
  cfg.set("resolution", res_literal);
  cfg.set("t", format_g17(t));
  cfg.set("window", format_g17(lo) + "," + format_g17(hi));
  cfg.set("measure", format_g17(r.measure()));
  emit_config(c, cfg, "rt");
  std::cout << "R_t on [" << lo << "," << hi << "): " << r.str() << " measure " << r.measure()
            << "\n";
  return 0;
}

int run_sample(const CommonOpts& c, double t, double sigma, double w_gg, double eps, double delta,
               int replications) {
  KeyValueConfig cfg = load_config(c);
  EstimatorPlan plan;
  plan.t = t;
  plan.kernel_sigma = sigma;
  plan.w_gg = w_gg;
  plan.epsilon = eps;
  plan.delta = delta;
  const long n = chebyshev_n(plan.variance(), eps, delta);
  plan.n_samples = n;

  std::vector<EstimateResult> results(static_cast<std::size_t>(replications));
  parallel_for(replications, [&](int r) {
    EstimatorPlan p = plan;
    p.seed = c.seed + static_cast<std::uint64_t>(r);  // per-replication stream
    results[static_cast<std::size_t>(r)] = estimate(sample_outcomes(p), p);
  });

  fs::create_directories(c.out_dir);
  std::ofstream f(fs::path(c.out_dir) / "replications.csv");
  f << "replication,mean_re,mean_im,err,pass\n";
  int passes = 0;
  for (int r = 0; r < replications; ++r) {
    const EstimateResult& e = results[static_cast<std::size_t>(r)];
    passes += e.pass ? 1 : 0;
    f << r << "," << format_g17(e.mean.real()) << "," << format_g17(e.mean.imag()) << ","
      << format_g17(e.error) << "," << (e.pass ? 1 : 0) << "\n";
  }
  cfg.set("t", format_g17(t));
  cfg.set("sigma", format_g17(sigma));
  cfg.set("w_gg", format_g17(w_gg));
  cfg.set("epsilon", format_g17(eps));
  cfg.set("delta", format_g17(delta));
  cfg.set("n_samples", std::to_string(n));
  cfg.set("replications", std::to_string(replications));
  emit_config(c, cfg, "sample");
  std::cout << "pass rate " << passes << "/" << replications << " at N=" << n << " -> "
            << (fs::path(c.out_dir) / "replications.csv") << "\n";
  return 0;
}

int run_deco(const CommonOpts& c, double w, double span, double t, const std::string& s_spec,
             const std::string& res_literal, double f1, double f2, int n_max) {
  KeyValueConfig cfg = load_config(c);
  const CausalSet cs = fig7_causet();
  const PropagatorSet props = causet_retarded_green(cs, 0.0, 1.0);
  const ModeBasis modes = sj_modes(props);
  const FockSpace fk = fock_build(modes, n_max);
  const Resolution res = Resolution::parse(res_literal);
  const std::vector<double> s_grid = parse_grid(s_spec);

  const CellGrid axis = CellGrid::uniform_with_tails(-span, span, w);
  const std::array<CellGrid, 4> axes{axis, axis, axis, axis};
  const std::array<int, 4> points{0, 1, 2, 3};

  fs::create_directories(c.out_dir);
  std::ofstream f(fs::path(c.out_dir) / "chi_deco.csv");
  f << "s,t,re_chi,im_chi\n";
  for (double s : s_grid) {
    const cplx v = chi_deco_streamed(fk, axes, points, s, t, &res, f1, f2);
    f << format_g17(s) << "," << format_g17(t) << "," << format_g17(v.real()) << ","
      << format_g17(v.imag()) << "\n";
  }
  cfg.set("w", format_g17(w));
  cfg.set("span", format_g17(span));
  cfg.set("t", format_g17(t));
  cfg.set("s_grid", s_spec);
  cfg.set("resolution", res_literal);
  cfg.set("f1", format_g17(f1));
  cfg.set("f2", format_g17(f2));
  cfg.set("n_max", std::to_string(n_max));
  emit_config(c, cfg, "deco");
  std::cout << "deco chi scan -> " << (fs::path(c.out_dir) / "chi_deco.csv") << "\n";
  return 0;
}

int run_oscillator(const CommonOpts& c, const std::string& res_literal, double t,
                   const std::string& s_spec, bool with_quadrature) {
  KeyValueConfig cfg = load_config(c);
  const Resolution res = Resolution::parse(res_literal);
  const std::vector<double> s_grid = parse_grid(s_spec);
  std::vector<cplx> closed(s_grid.size()), quad(s_grid.size());
  parallel_for(static_cast<int>(s_grid.size()), [&](int i) {
    const double s = s_grid[static_cast<std::size_t>(i)];
    closed[static_cast<std::size_t>(i)] = osc_chi_closed(s, t, res);
    if (with_quadrature) quad[static_cast<std::size_t>(i)] = osc_chi_quadrature(s, t, res);
  });
  fs::create_directories(c.out_dir);
  std::ofstream f(fs::path(c.out_dir) / "chi_oscillator.csv");
  f << "s,t,re_chi,im_chi";
  if (with_quadrature) f << ",re_chi_quad,im_chi_quad";
  f << "\n";
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    f << format_g17(s_grid[i]) << "," << format_g17(t) << "," << format_g17(closed[i].real())
      << "," << format_g17(closed[i].imag());
    if (with_quadrature) {
      f << "," << format_g17(quad[i].real()) << "," << format_g17(quad[i].imag());
    }
    f << "\n";
  }
  cfg.set("resolution", res_literal);
  cfg.set("t", format_g17(t));
  cfg.set("s_grid", s_spec);
  emit_config(c, cfg, "oscillator");
  std::cout << "oscillator chi scan -> " << (fs::path(c.out_dir) / "chi_oscillator.csv") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sorkinlab: superluminal-signalling diagnostics for smeared-field update maps"};
  app.require_subcommand(1);

  CommonOpts c;

  // sprinkle
  auto* sp = app.add_subcommand("sprinkle", "Poisson-sprinkle a causal set into a rectangle");
  double t0 = 0.0, t1 = 1.0, x0 = 0.0, x1 = 1.0, density = 30.0;
  sp->add_option("--t0", t0);
  sp->add_option("--t1", t1);
  sp->add_option("--x0", x0);
  sp->add_option("--x1", x1);
  sp->add_option("--density", density);
  add_common(sp, c);

  // propagator
  auto* pr = app.add_subcommand("propagator", "retarded Green data and SJ modes of a causet");
  std::string causet_path;
  double mass = 0.0, prop_density = 1.0;
  pr->add_option("--causet", causet_path, "causet file (default: the four-point Fig-style set)");
  pr->add_option("--mass", mass);
  pr->add_option("--density", prop_density);
  add_common(pr, c);

  // scenario
  auto* sc = app.add_subcommand("scenario", "build the Alice/Charlie/Bob scenario on a causet");
  std::string f_spec = "points:1,2", k_spec = "1,2";
  sc->add_option("--causet", causet_path);
  sc->add_option("--f", f_spec, "test function, e.g. points:1,2");
  sc->add_option("--k", k_spec, "lab subset, e.g. 1,2");
  sc->add_option("--mass", mass);
  sc->add_option("--density", prop_density);
  add_common(sc, c);

  // chi-scan
  auto* cschi = app.add_subcommand("chi-scan", "scan chi(s) for a Kraus family on a scenario");
  std::string kraus_literal = "kick:linear", s_spec = "0:1:11";
  double t_par = 1.0;
  int n_max = 30;
  cschi->add_option("--causet", causet_path);
  cschi->add_option("--f", f_spec);
  cschi->add_option("--k", k_spec);
  cschi->add_option("--mass", mass);
  cschi->add_option("--density", prop_density);
  cschi->add_option("--kraus", kraus_literal, "Kraus literal, e.g. ideal:uniform:w=1");
  cschi->add_option("--t", t_par, "Bob exponent");
  cschi->add_option("--s-grid", s_spec, "lo:hi:count or comma list");
  cschi->add_option("--n-max", n_max, "Fock cutoff for --oracle fock");
  add_common(cschi, c);

  // verdict
  auto* vd = app.add_subcommand("verdict", "kappa~ constancy verdict for a Kraus family");
  double shift = 0.3;
  vd->add_option("--kraus", kraus_literal);
  vd->add_option("--shift", shift, "t Delta(f,g)");
  add_common(vd, c);

  // rt
  auto* rt_cmd = app.add_subcommand("rt", "self-overlap set R_t of a resolution on a window");
  std::string res_literal = "uniform:w=1,o=0";
  double rt_t = 0.5, win_lo = 0.0, win_hi = 4.0;
  rt_cmd->add_option("--resolution", res_literal);
  rt_cmd->add_option("--t", rt_t);
  rt_cmd->add_option("--lo", win_lo);
  rt_cmd->add_option("--hi", win_hi);
  add_common(rt_cmd, c);

  // sample
  auto* sm = app.add_subcommand("sample", "Chebyshev-planned estimator replications");
  double sigma = 0.5, w_gg = 1.0, eps = 0.05, delta = 0.1;
  int replications = 200;
  sm->add_option("--t", t_par);
  sm->add_option("--sigma", sigma);
  sm->add_option("--w-gg", w_gg);
  sm->add_option("--epsilon", eps);
  sm->add_option("--delta", delta);
  sm->add_option("--replications", replications);
  add_common(sm, c);

  // deco
  auto* dc = app.add_subcommand("deco", "binned double-path-integral chi on the four-point causet");
  double cell_w = 0.2, span = 1.75;
  double deco_f1 = 1.0, deco_f2 = 1.0;
  dc->add_option("--w", cell_w, "cell width");
  dc->add_option("--span", span, "inner cells cover [-span, span)");
  dc->add_option("--t", t_par);
  dc->add_option("--s-grid", s_spec);
  dc->add_option("--resolution", res_literal);
  dc->add_option("--f1", deco_f1);
  dc->add_option("--f2", deco_f2);
  dc->add_option("--n-max", n_max);
  add_common(dc, c);

  // oscillator
  auto* os_cmd = app.add_subcommand("oscillator", "2D oscillator chi curves");
  bool with_quadrature = false;
  os_cmd->add_option("--resolution", res_literal);
  os_cmd->add_option("--t", t_par);
  os_cmd->add_option("--s-grid", s_spec);
  os_cmd->add_flag("--quadrature", with_quadrature, "also run the 2D quadrature oracle");
  add_common(os_cmd, c);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sp->parsed()) return run_sprinkle(c, t0, t1, x0, x1, density);
    if (pr->parsed()) return run_propagator(c, causet_path, mass, prop_density);
    if (sc->parsed()) return run_scenario(c, causet_path, f_spec, k_spec, mass, prop_density);
    if (cschi->parsed()) {
      return run_chi_scan(c, causet_path, f_spec, k_spec, mass, prop_density, kraus_literal, t_par,
                          s_spec, n_max);
    }
    if (vd->parsed()) return run_verdict(c, kraus_literal, shift);
    if (rt_cmd->parsed()) return run_rt(c, res_literal, rt_t, win_lo, win_hi);
    if (sm->parsed()) return run_sample(c, t_par, sigma, w_gg, eps, delta, replications);
    if (dc->parsed()) {
      return run_deco(c, cell_w, span, t_par, s_spec, res_literal, deco_f1, deco_f2, n_max);
    }
    if (os_cmd->parsed()) return run_oscillator(c, res_literal, t_par, s_spec, with_quadrature);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
