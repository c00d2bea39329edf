#include "maxstream/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "format.hpp"
#include "maxstream/cadlag.hpp"
#include "maxstream/errors.hpp"
#include "maxstream/extremal.hpp"
#include "maxstream/maxima.hpp"
#include "maxstream/models.hpp"
#include "maxstream/numerics.hpp"
#include "maxstream/skorokhod.hpp"
#include "maxstream/verify.hpp"

namespace maxstream::cli {

namespace {

using nlohmann::json;

struct Globals {
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;
  std::string format = "json";
  std::string config;
  bool timing = false;
};

struct ModelFlags {
  std::string kind = "iid";
  double alpha = 1.0;
  double scale = 1.0;
  std::vector<double> coeffs{0.2, 0.3, 0.5};
  double c = 0.5;
  double alpha0 = 1.0;
  double alpha1 = 0.3;
  double beta1 = 0.7;
};

void add_model_flags(CLI::App* app, ModelFlags& m, const std::string& default_kind, bool with_extremal = false) {
  m.kind = default_kind;
  std::vector<std::string> kinds{"iid", "mm", "armax", "garch2"};
  if (with_extremal) kinds.push_back("extremal");
  app->add_option("--model", m.kind, "Process model (ignored when --config is given)")->check(CLI::IsMember(kinds));
  app->add_option("--alpha", m.alpha, "Tail index (iid, extremal)");
  app->add_option("--scale", m.scale, "Marginal scale (iid)");
  app->add_option("--coeffs", m.coeffs, "Moving maxima coefficients c_0..c_m")->delimiter(',');
  app->add_option("--c", m.c, "ARMAX coefficient");
  app->add_option("--alpha0", m.alpha0, "GARCH alpha0");
  app->add_option("--alpha1", m.alpha1, "GARCH alpha1");
  app->add_option("--beta1", m.beta1, "GARCH beta1");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_json(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && (text[pos] == '{' || text[pos] == '[');
}

ProcessModel build_model(const ModelFlags& m, const Globals& g) {
  if (!g.config.empty()) return model_from_json(json::parse(read_file(g.config)));
  if (m.kind == "iid") return ProcessModel::iid(m.alpha, m.scale);
  if (m.kind == "mm") return ProcessModel::moving_maxima(m.coeffs);
  if (m.kind == "armax") return ProcessModel::armax(m.c);
  if (m.kind == "garch2") return ProcessModel::squared_garch(m.alpha0, m.alpha1, m.beta1);
  throw std::invalid_argument("model '" + m.kind + "' is not a process model here");
}

StepFunction read_path(const std::string& file) {
  const std::string text = read_file(file);
  return looks_like_json(text) ? step_function_from_json(json::parse(text)) : step_function_from_csv(text);
}

std::vector<double> read_sample(const std::string& file) {
  const std::string text = read_file(file);
  if (looks_like_json(text)) {
    const json j = json::parse(text);
    return (j.is_object() ? j.at("values") : j).get<std::vector<double>>();
  }
  std::vector<double> xs;
  for (const auto& row : detail::parse_csv_rows(text)) xs.push_back(row.back());
  return xs;
}

Executor make_executor(const Globals& g) {
  int threads = g.threads;
  if (const char* env = std::getenv("MAXSTREAM_THREADS"); env && *env) threads = std::stoi(env);
  return Executor(threads);
}

class Emitter {
 public:
  Emitter(const Globals& g, std::ostream& out) : g_(g), out_(out) {}

  void emit(const std::string& text) {
    if (g_.out.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(g_.out, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write '" + g_.out + "'");
    f << text;
  }
  void emit_json(const json& j) { emit(j.dump(2) + "\n"); }

  // Flat key,value CSV for scalar results.
  void emit_pairs(const json& j) {
    std::string text = "key,value\n";
    for (const auto& [k, v] : j.items()) {
      text += k + ',' + (v.is_number() ? detail::sig6(v.get<double>()) : v.is_string() ? v.get<std::string>() : v.dump()) + '\n';
    }
    emit(text);
  }
  void emit_object(const json& j) { g_.format == "csv" ? emit_pairs(j) : emit_json(j); }

  int emit_report(const VerificationReport& rep) {
    if (g_.format == "csv") {
      emit(rep.to_csv());
    } else {
      emit_json(rep.to_json(g_.timing));
    }
    return rep.pass ? kExitOk : kExitFailed;
  }

 private:
  const Globals& g_;
  std::ostream& out_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extreme-value limit theorems for dependent heavy-tailed sequences: simulation, Skorokhod metrics, verification",
               "maxstream"};
  app.option_defaults()->always_capture_default();
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--seed", g.seed, "Base random seed");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores; MAXSTREAM_THREADS overrides)");
  app.add_option("--out", g.out, "Write output to this file instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--config", g.config, "JSON model specification, e.g. {\"model\": \"armax\", \"c\": 0.5}");
  app.add_flag("--timing", g.timing, "Include runtime in verification reports (under \"diagnostics\")");

  int exit_code = kExitOk;
  Emitter em(g, out);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Emit a sample path X_1..X_n, its partial-maxima path, or an extremal process path");
  ModelFlags sim_model;
  std::int64_t sim_n = 1000;
  bool sim_path = false;
  double sim_theta = 1.0;
  double sim_floor = kDefaultExtremalFloor;
  add_model_flags(sim, sim_model, "iid", true);
  sim->add_option("--n", sim_n, "Sequence length");
  sim->add_flag("--path", sim_path, "Emit M_n(t) = max_{i <= nt} X_i / a_n as a step function");
  sim->add_option("--theta", sim_theta, "Extremal index (extremal)");
  sim->add_option("--floor", sim_floor, "Mark floor (extremal)");
  sim->callback([&] {
    if (sim_model.kind == "extremal" && g.config.empty()) {
      const StepFunction f = simulate_extremal_process(sim_model.alpha, sim_theta, sim_floor, g.seed);
      g.format == "csv" ? em.emit(to_csv(f)) : em.emit_json(to_json(f));
      return;
    }
    const ProcessModel model = build_model(sim_model, g);
    const std::vector<double> xs = generate(model, sim_n, g.seed);
    if (sim_path) {
      const StepFunction f = partial_max_process(xs, normalizer_an(model, std::max<std::int64_t>(sim_n, 2)));
      g.format == "csv" ? em.emit(to_csv(f)) : em.emit_json(to_json(f));
    } else if (g.format == "csv") {
      std::string text = "index,value\n";
      for (std::size_t i = 0; i < xs.size(); ++i) text += std::to_string(i + 1) + ',' + detail::sig6(xs[i]) + '\n';
      em.emit(text);
    } else {
      em.emit_json({{"model", to_json(model)}, {"n", sim_n}, {"seed", g.seed}, {"values", xs}});
    }
  });

  // metric
  auto* met = app.add_subcommand("metric", "Skorokhod distance between two step-function paths (JSON or CSV files)");
  std::string met_kind, met_left, met_right;
  double met_tol = kDefaultMetricTol;
  met->add_option("kind", met_kind, "m1 or j1")->required()->check(CLI::IsMember({"m1", "j1"}));
  met->add_option("--left", met_left, "First path")->required();
  met->add_option("--right", met_right, "Second path")->required();
  met->add_option("--tol", met_tol, "Absolute tolerance; the value D satisfies d <= D <= d + tol")->check(CLI::PositiveNumber);
  met->callback([&] {
    const StepFunction f = read_path(met_left), h = read_path(met_right);
    const MetricOptions opt{.tol = met_tol};
    const double v = met_kind == "m1" ? d_m1(f, h, opt) : d_j1(f, h, opt);
    em.emit_object({{"metric", met_kind}, {"value", v}, {"tol", met_tol}});
  });

  // oscillation
  auto* osc = app.add_subcommand("oscillation", "M1 and J1 oscillations of a step-function path");
  std::string osc_path;
  double osc_delta = 0.1;
  osc->add_option("--path", osc_path, "Path file (JSON or CSV)")->required();
  osc->add_option("--delta", osc_delta, "Window width")->check(CLI::PositiveNumber);
  osc->callback([&] {
    const StepFunction f = read_path(osc_path);
    em.emit_object({{"delta", osc_delta}, {"osc_m1", osc_m1(f, osc_delta)}, {"osc_j1", osc_j1(f, osc_delta)}});
  });

  // verify
  auto* ver = app.add_subcommand("verify", "Monte Carlo checks of the limit theorems");
  ver->require_subcommand(1);

  auto* v_max = ver->add_subcommand("max-limit", "KS test of M_n / a_n against the Frechet limit");
  ModelFlags vm_model;
  std::int64_t vm_n = 10'000, vm_trials = 4000;
  double vm_ks = 0.0;
  add_model_flags(v_max, vm_model, "iid");
  v_max->add_option("--n", vm_n, "Sequence length");
  v_max->add_option("--trials", vm_trials, "Independent copies of M_n");
  v_max->add_option("--ks-threshold", vm_ks, "Pass threshold (0 = 2 x 1.628 / sqrt(trials))");
  v_max->callback([&] {
    const Executor ex = make_executor(g);
    exit_code = em.emit_report(verify_max_limit(build_model(vm_model, g), vm_n, vm_trials, g.seed, ex, {vm_ks}));
  });

  auto* v_fidi = ver->add_subcommand("fidi", "Joint law of M_n at several times against the extremal process");
  ModelFlags vf_model;
  std::int64_t vf_n = 10'000, vf_trials = 10'000;
  std::vector<double> vf_times{0.5, 1.0}, vf_levels{1.0, 2.0};
  double vf_tol = 0.02;
  add_model_flags(v_fidi, vf_model, "armax");
  v_fidi->add_option("--n", vf_n, "Sequence length");
  v_fidi->add_option("--trials", vf_trials, "Monte Carlo trials");
  v_fidi->add_option("--times", vf_times, "Increasing times in (0, 1]")->delimiter(',');
  v_fidi->add_option("--levels", vf_levels, "Positive levels, one per time")->delimiter(',');
  v_fidi->add_option("--tolerance", vf_tol, "Allowed absolute deviation");
  v_fidi->callback([&] {
    const Executor ex = make_executor(g);
    exit_code = em.emit_report(
        verify_fidi(build_model(vf_model, g), vf_n, vf_trials, vf_times, vf_levels, g.seed, ex, {vf_tol}));
  });

  auto* v_j1 = ver->add_subcommand("j1-failure", "Two-coefficient moving maxima whose partial maxima fail J1 tightness");
  double vj_c0 = 0.2, vj_c1 = 0.8, vj_eps = 10.0;
  std::int64_t vj_n = 10'000, vj_trials = 100'000;
  J1FailureOptions vj_opt;
  v_j1->add_option("--c0", vj_c0, "Coefficient c0");
  v_j1->add_option("--c1", vj_c1, "Coefficient c1 (> c0)");
  v_j1->add_option("--eps", vj_eps, "Level epsilon");
  v_j1->add_option("--n", vj_n, "Sequence length");
  v_j1->add_option("--trials", vj_trials, "Monte Carlo trials");
  v_j1->add_option("--a-tolerance", vj_opt.a_tolerance, "Allowed deviation of P(A) from its limit");
  v_j1->add_option("--a-not-b-min", vj_opt.a_not_b_min, "Required lower bound for P(A \\ B)");
  v_j1->add_option("--osc-slack", vj_opt.osc_slack, "Slack in P(osc_j1 >= threshold) >= P(A \\ B) - slack");
  v_j1->callback([&] {
    const Executor ex = make_executor(g);
    exit_code = em.emit_report(j1_failure_experiment(vj_c0, vj_c1, vj_eps, vj_n, vj_trials, g.seed, ex, vj_opt));
  });

  auto* v_pc = ver->add_subcommand("cluster-poisson", "Counts of blocks exceeding u a_n against Poisson(theta u^-alpha)");
  ModelFlags vp_model;
  std::int64_t vp_n = 10'000, vp_block = 0, vp_trials = 5000;
  double vp_u = 1.0;
  PoissonClusterOptions vp_opt;
  add_model_flags(v_pc, vp_model, "armax");
  v_pc->add_option("--n", vp_n, "Sequence length");
  v_pc->add_option("--u", vp_u, "Level multiplier");
  v_pc->add_option("--block-len", vp_block, "Block length (0 = ceil(sqrt(n)))");
  v_pc->add_option("--trials", vp_trials, "Monte Carlo trials");
  v_pc->add_option("--mean-rel-tol", vp_opt.mean_rel_tol, "Allowed relative deviation of the mean count");
  v_pc->add_option("--dispersion-lo", vp_opt.dispersion_lo, "Lower bound for variance / mean");
  v_pc->add_option("--dispersion-hi", vp_opt.dispersion_hi, "Upper bound for variance / mean");
  v_pc->callback([&] {
    const Executor ex = make_executor(g);
    const std::int64_t block = vp_block > 0 ? vp_block : static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(vp_n))));
    exit_code = em.emit_report(poisson_cluster_check(build_model(vp_model, g), vp_n, vp_u, block, vp_trials, g.seed, ex, vp_opt));
  });

  auto* v_kar = ver->add_subcommand("karamata", "Truncated-moment ratio of the unit Frechet law against alpha / (s - alpha)");
  double vk_alpha = 1.0, vk_eps = 1.0, vk_rel = 0.02;
  std::vector<double> vk_s{2.0, 3.0};
  std::int64_t vk_n = 1'000'000;
  v_kar->add_option("--alpha", vk_alpha, "Tail index");
  v_kar->add_option("--s", vk_s, "Moment orders (each > alpha)")->delimiter(',');
  v_kar->add_option("--eps", vk_eps, "Truncation level eps a_n");
  v_kar->add_option("--n", vk_n, "Sample size defining a_n");
  v_kar->add_option("--rel-tol", vk_rel, "Allowed relative deviation");
  v_kar->callback([&] { exit_code = em.emit_report(verify_karamata(vk_alpha, vk_s, vk_eps, vk_n, vk_rel)); });

  auto* v_osc = ver->add_subcommand("osc-probe", "Frequencies of large M1 and J1 oscillations of M_n");
  ModelFlags vo_model;
  std::int64_t vo_n = 10'000, vo_trials = 1000;
  double vo_delta = 0.0, vo_eps = 1.0, vo_j1_max = -1.0, vo_j1_min = -1.0;
  add_model_flags(v_osc, vo_model, "iid");
  v_osc->add_option("--n", vo_n, "Sequence length");
  v_osc->add_option("--trials", vo_trials, "Monte Carlo trials");
  v_osc->add_option("--delta", vo_delta, "Window width (0 = 2/n)");
  v_osc->add_option("--eps", vo_eps, "Oscillation level");
  v_osc->add_option("--j1-max", vo_j1_max, "Require P(osc_j1 >= eps) <= this (negative = no check)");
  v_osc->add_option("--j1-min", vo_j1_min, "Require P(osc_j1 >= eps) >= this (negative = no check)");
  v_osc->callback([&] {
    const Executor ex = make_executor(g);
    OscProbeOptions opt;
    if (vo_j1_max >= 0.0) opt.j1_max = vo_j1_max;
    if (vo_j1_min >= 0.0) opt.j1_min = vo_j1_min;
    const double delta = vo_delta > 0.0 ? vo_delta : 2.0 / static_cast<double>(vo_n);
    exit_code = em.emit_report(osc_exceedance_probe(build_model(vo_model, g), vo_n, vo_trials, delta, vo_eps, g.seed, ex, opt));
  });

  // estimate theta
  auto* est = app.add_subcommand("estimate", "Statistical estimators");
  est->require_subcommand(1);
  auto* est_theta = est->add_subcommand("theta", "Extremal index by conditioning on X_0 > x or by blocks declustering");
  ModelFlags et_model;
  std::string et_method = "conditional", et_input;
  std::vector<int> et_r{10, 50, 200};
  std::vector<double> et_q{0.99, 0.999};
  std::int64_t et_trials = 12'000'000, et_n = 1'000'000, et_block = 100;
  double et_threshold_q = 0.999, et_threshold = 0.0, et_tol = 0.05;
  add_model_flags(est_theta, et_model, "armax");
  est_theta->add_option("--method", et_method, "Estimator")->check(CLI::IsMember({"conditional", "blocks", "blocks-log"}));
  est_theta->add_option("--r", et_r, "Run lengths r (conditional)")->delimiter(',');
  est_theta->add_option("--quantile", et_q, "Marginal quantile levels of x (conditional)")->delimiter(',');
  est_theta->add_option("--trials", et_trials, "Rejection-sampling trials per grid cell (conditional)");
  est_theta->add_option("--input", et_input, "Sample file (JSON array, {\"values\": [...]}, or CSV); blocks only");
  est_theta->add_option("--n", et_n, "Simulated sample length when no --input is given (blocks)");
  est_theta->add_option("--block-len", et_block, "Block length (blocks)");
  est_theta->add_option("--threshold-quantile", et_threshold_q, "Threshold as an empirical quantile of the sample (blocks)");
  est_theta->add_option("--threshold", et_threshold, "Absolute threshold; overrides --threshold-quantile when > 0 (blocks)");
  est_theta->add_option("--tolerance", et_tol, "Allowed deviation from the model's theta");
  est_theta->callback([&] {
    const Executor ex = make_executor(g);
    if (et_method == "conditional") {
      if (!et_input.empty()) throw std::invalid_argument("--input applies to the blocks methods only");
      exit_code = em.emit_report(theta_conditional_report(build_model(et_model, g), et_r, et_q, et_trials, g.seed, et_tol, ex));
      return;
    }
    VerificationReport rep;
    rep.experiment = "theta-" + et_method;
    rep.seed = g.seed;
    std::vector<double> xs;
    if (et_input.empty()) {
      rep.model = build_model(et_model, g);
      xs = generate(*rep.model, et_n, g.seed);
    } else {
      xs = read_sample(et_input);
      rep.params["input"] = et_input;
    }
    double threshold = et_threshold;
    if (!(threshold > 0.0)) {
      std::vector<double> tmp = xs;
      threshold = empirical_quantile(tmp, et_threshold_q);
      rep.params["threshold_quantile"] = et_threshold_q;
    }
    rep.params["n"] = xs.size();
    rep.params["block_len"] = et_block;
    rep.params["threshold"] = threshold;
    rep.params["tolerance"] = et_tol;
    const auto block = static_cast<std::size_t>(et_block);
    const double theta = et_method == "blocks" ? estimate_theta_blocks(xs, block, threshold)
                                               : estimate_theta_blocks_log(xs, block, threshold);
    rep.estimates["theta"] = {theta, 0.0, !rep.model.has_value()};
    if (rep.model) {
      const double target = theoretical_law(*rep.model).theta;
      rep.targets["theta"] = {target, "extremal index of the model", et_tol};
      rep.add_check("theta", std::abs(theta - target) <= et_tol,
                    "|" + detail::sig6(theta) + " - " + detail::sig6(target) + "| <= " + detail::sig6(et_tol));
    }
    exit_code = em.emit_report(rep);
  });

  // garch
  auto* gar = app.add_subcommand("garch", "Tail and extremal index of the squared GARCH(1,1) process");
  gar->require_subcommand(1);
  double ga_alpha1 = 0.3, ga_beta1 = 0.7;
  GarchTailOptions ga_tail;
  auto* g_alpha = gar->add_subcommand("alpha", "Root of E[(alpha1 Z^2 + beta1)^a] = 1");
  g_alpha->add_option("--alpha1", ga_alpha1, "alpha1");
  g_alpha->add_option("--beta1", ga_beta1, "beta1");
  g_alpha->add_option("--nodes", ga_tail.quadrature_nodes, "Gauss-Hermite nodes");
  g_alpha->add_option("--alpha-max", ga_tail.alpha_max, "Bracket ceiling");
  g_alpha->add_option("--tol", ga_tail.tol, "Bisection tolerance");
  g_alpha->callback([&] {
    em.emit_object({{"alpha", garch_tail_index(ga_alpha1, ga_beta1, ga_tail)},
                    {"alpha1", ga_alpha1},
                    {"beta1", ga_beta1},
                    {"nodes", ga_tail.quadrature_nodes},
                    {"tol", ga_tail.tol}});
  });
  auto* g_theta = gar->add_subcommand("theta", "Monte Carlo extremal index on a k-grid (no extrapolation in k)");
  GarchThetaDefaults gt;
  g_theta->add_option("--alpha1", ga_alpha1, "alpha1");
  g_theta->add_option("--beta1", ga_beta1, "beta1");
  g_theta->add_option("--k-max", gt.k_max, "Largest truncation k");
  g_theta->add_option("--trials", gt.trials, "Monte Carlo trials");
  g_theta->callback([&] {
    const Executor ex = make_executor(g);
    const GarchThetaEstimate e = garch_extremal_index(ga_alpha1, ga_beta1, gt.k_max, gt.trials, g.seed, ex);
    json j = {{"estimate", e.estimate}, {"std_error", e.std_error}, {"alpha", e.alpha}, {"alpha1", ga_alpha1},
              {"beta1", ga_beta1},      {"k_max", gt.k_max},        {"trials", gt.trials}, {"seed", g.seed}};
    if (g.format == "csv") {
      std::string text = "k,estimate,std_error\n";
      for (std::size_t k = 0; k < e.by_k.size(); ++k) {
        text += std::to_string(k + 1) + ',' + detail::sig6(e.by_k[k]) + ',' + detail::sig6(e.std_error_by_k[k]) + '\n';
      }
      em.emit(text);
    } else {
      j["by_k"] = e.by_k;
      j["std_error_by_k"] = e.std_error_by_k;
      em.emit_json(j);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const ResourceError& e) {
    err << "maxstream: resource limit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "maxstream: bad JSON: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {  // domain_error, invalid_argument, out_of_range
    err << "maxstream: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "maxstream: " << e.what() << '\n';
    return kExitUsage;
  }
  return exit_code;
}

}  // namespace maxstream::cli
