// Command-line front end: closed-form evaluation, simulation, and the
// erasure sweep. Exit codes: 0 success, 2 invalid parameters, 3 I/O error.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "agecast/analysis.hpp"
#include "agecast/config.hpp"
#include "agecast/sim.hpp"
#include "agecast/sweep.hpp"

namespace {

using namespace agecast;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, sep)) out.push_back(tok);
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  for (const auto& tok : split(s, ',')) out.push_back(std::stoll(tok));
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& tok : split(s, ',')) out.push_back(std::stod(tok));
  return out;
}

ActionWeights parse_mu(const std::string& s) {
  const auto v = parse_double_list(s);
  if (v.size() != 3) {
    throw std::invalid_argument("--mu expects three probabilities m1,m2,m3");
  }
  return validate_action_weights(v[0], v[1], v[2]);
}

AoiState parse_state(const std::string& s) {
  const auto v = parse_int_list(s);
  if (v.size() != 4) {
    throw std::invalid_argument("state expects h1,h2,w1,w2");
  }
  AoiState st{v[0], v[1], v[2], v[3]};
  if (!satisfies_invariants(st)) {
    throw std::invalid_argument("state violates h >= 1, 0 <= w <= h-1");
  }
  return st;
}

std::vector<ErasurePair> parse_erasures(const std::string& s) {
  std::vector<ErasurePair> out;
  for (const auto& tok : split(s, ',')) {
    if (tok.size() != 2 || (tok[0] != '0' && tok[0] != '1') ||
        (tok[1] != '0' && tok[1] != '1')) {
      throw std::invalid_argument("erasure token must be two bits, e.g. 10");
    }
    out.push_back({tok[0] == '1', tok[1] == '1'});
  }
  return out;
}

std::vector<Action> parse_actions(const std::string& s) {
  std::vector<Action> out;
  for (std::int64_t a : parse_int_list(s)) {
    if (a < 1 || a > 3) throw std::invalid_argument("actions are 1, 2 or 3");
    out.push_back(static_cast<Action>(a));
  }
  return out;
}

// One option set per subcommand so --config can tell which flags were given.
struct Opts {
  double eps1 = 0.5, eps2 = 0.5, eps12 = 0.0;
  double alpha1 = 0.5;
  std::string mu_text;
  std::int64_t horizon = 1'000'000;
  int reps = 20;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out;
  std::string config_path;
  std::string policy = "randomized";
  bool uncoded = false;
  std::string init_text = "1,1,0,0";

  CLI::Option* o_eps1 = nullptr;
  CLI::Option* o_eps2 = nullptr;
  CLI::Option* o_eps12 = nullptr;
  CLI::Option* o_alpha1 = nullptr;
  CLI::Option* o_mu = nullptr;
  CLI::Option* o_horizon = nullptr;
  CLI::Option* o_reps = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_threads = nullptr;
  CLI::Option* o_out = nullptr;
  CLI::Option* o_policy = nullptr;
  CLI::Option* o_uncoded = nullptr;
  CLI::Option* o_init = nullptr;

  void add_channel(CLI::App* app) {
    o_eps1 = app->add_option("--eps1", eps1, "erasure probability, user 1");
    o_eps2 = app->add_option("--eps2", eps2, "erasure probability, user 2");
    o_eps12 =
        app->add_option("--eps12", eps12, "simultaneous-erasure probability");
  }
  void add_common(CLI::App* app) {
    o_alpha1 = app->add_option("--alpha1", alpha1,
                               "weight of user 1 (user 2 gets 1 - alpha1)");
    app->add_option("--config", config_path,
                    "key = value config file (flags win)");
  }
  void add_mu(CLI::App* app) {
    o_mu = app->add_option("--mu", mu_text, "action probabilities m1,m2,m3");
  }
  void add_sim(CLI::App* app) {
    o_horizon = app->add_option("--horizon", horizon, "slots per run");
    o_reps = app->add_option("--reps", reps, "independent replicates");
    o_seed = app->add_option("--seed", seed, "base seed");
    o_threads = app->add_option("--threads", threads,
                                "worker threads (0 = all cores)");
    o_init =
        app->add_option("--init", init_text, "initial state h1,h2,w1,w2");
  }

  void merge_config() {
    if (config_path.empty()) return;
    const FileConfig fc = FileConfig::parse_file(config_path);
    auto fresh = [&](CLI::Option* o) { return o != nullptr && o->count() == 0; };
    if (fresh(o_eps1) && fc.has("channel.eps1")) eps1 = fc.get_double("channel.eps1");
    if (fresh(o_eps2) && fc.has("channel.eps2")) eps2 = fc.get_double("channel.eps2");
    if (fresh(o_eps12) && fc.has("channel.eps12")) eps12 = fc.get_double("channel.eps12");
    if (fresh(o_alpha1) && fc.has("weights.alpha1")) alpha1 = fc.get_double("weights.alpha1");
    if (fresh(o_mu) && fc.has("policy.mu")) mu_text = *fc.get("policy.mu");
    if (fresh(o_policy) && fc.has("policy.kind")) policy = *fc.get("policy.kind");
    if (fresh(o_uncoded) && fc.has("policy.coded")) uncoded = !fc.get_bool("policy.coded");
    if (fresh(o_horizon) && fc.has("sim.horizon")) horizon = fc.get_int("sim.horizon");
    if (fresh(o_reps) && fc.has("sim.reps")) reps = static_cast<int>(fc.get_int("sim.reps"));
    if (fresh(o_seed) && fc.has("sim.seed")) seed = static_cast<std::uint64_t>(fc.get_int("sim.seed"));
    if (fresh(o_threads) && fc.has("sim.threads")) threads = static_cast<int>(fc.get_int("sim.threads"));
    if (fresh(o_init) && fc.has("sim.init")) init_text = *fc.get("sim.init");
    if (fresh(o_out) && fc.has("out")) out = *fc.get("out");
  }

  ChannelParams channel() const { return validate_params(eps1, eps2, eps12); }
  AgeWeights alphas() const { return weights_from_alpha1(alpha1); }
};

void print_user_line(int user, const UserStats& u) {
  std::printf(
      "user%d: deliveries=%" PRId64 " throughput=%.6f interdelivery_mean=%.6f "
      "interdelivery_m2=%.6f mean_age_at_delivery=%.6f q2_empty=%.6f "
      "residual=%" PRId64 "\n",
      user, u.deliveries, u.throughput, u.interdelivery_mean,
      u.interdelivery_second_moment, u.mean_age_at_delivery,
      u.q2_empty_fraction, u.residual);
}

int cmd_bound(const Opts& o) {
  std::printf("lower_bound = %.17g\n", lower_bound(o.alphas(), o.channel()));
  return 0;
}

int cmd_randomized(const Opts& o) {
  if (o.mu_text.empty()) throw std::invalid_argument("randomized needs --mu");
  const ActionWeights mu = parse_mu(o.mu_text);
  const ChannelParams ch = o.channel();
  std::printf("ewsaoi = %.17g\n", randomized_ewsaoi(o.alphas(), mu, ch));
  for (int user = 1; user <= 2; ++user) {
    const Moments m =
        inter_delivery_moments(interdelivery_params(mu, ch, user));
    std::printf(
        "user%d: E_I=%.10g E_I2=%.10g E_D=%.10g p_delivery=%.10g p_ne=%.10g\n",
        user, m.mean, m.second_moment, expected_delivery_age(mu, ch, user),
        delivery_probability(mu, ch, user),
        q2_nonempty_prob(mu, ch.eps(user), ch.eps12(), user));
  }
  return 0;
}

int cmd_optimize(const Opts& o) {
  const OptimizeResult r =
      optimize_randomized(o.alphas(), o.channel(), 1e-6, !o.uncoded);
  std::printf("mu = %.10g,%.10g,%.10g\newsaoi = %.17g\n", r.mu.mu1, r.mu.mu2,
              r.mu.mu3, r.value);
  return 0;
}

int cmd_mw_bound(const Opts& o) {
  const ChannelParams ch = o.channel();
  if (!o.mu_text.empty()) {
    const ActionWeights mu = parse_mu(o.mu_text);
    std::printf("mw_bound = %.17g\n", mw_upper_bound(o.alphas(), mu, ch));
  } else {
    const OptimizeResult r = minimize_mw_upper_bound(o.alphas(), ch);
    std::printf("mu = %.10g,%.10g,%.10g\nmw_bound = %.17g\n", r.mu.mu1,
                r.mu.mu2, r.mu.mu3, r.value);
  }
  return 0;
}

int cmd_simulate(const Opts& o) {
  PolicySpec policy;
  if (o.policy == "randomized") {
    policy.kind = PolicyKind::kRandomized;
    policy.mu = o.mu_text.empty() ? ActionWeights{} : parse_mu(o.mu_text);
  } else if (o.policy == "max-weight") {
    policy.kind = PolicyKind::kMaxWeight;
  } else {
    throw std::invalid_argument("policy must be randomized or max-weight");
  }
  if (o.uncoded) policy = uncoded_variant(policy);
  const SimConfig cfg{policy,    o.channel(), o.alphas(), o.horizon,
                      o.reps,    o.seed,      parse_state(o.init_text)};
  if (cfg.replications <= 1) {
    const SimResult r = run_simulation(cfg, derive_seed(cfg.base_seed, 0));
    std::printf("ewsaoi = %.17g\n", r.ewsaoi);
    for (int i = 0; i < 2; ++i) print_user_line(i + 1, r.user[i]);
  } else {
    const ReplicateResult r = replicate(cfg, o.threads);
    std::printf("ewsaoi_mean = %.17g\nci95_halfwidth = %.6g\nstd_error = "
                "%.6g\nreplications = %d\nhorizon = %" PRId64 "\n",
                r.mean, r.ci_halfwidth, r.std_error, cfg.replications,
                cfg.horizon);
    for (int i = 0; i < 2; ++i)
      print_user_line(i + 1, r.replicates[0].user[i]);
  }
  if (cfg.policy.kind == PolicyKind::kRandomized && cfg.policy.coded) {
    for (int user = 1; user <= 2; ++user) {
      std::printf("user%d: model_p_ne=%.6f\n", user,
                  q2_nonempty_prob(cfg.policy.mu, cfg.channel.eps(user),
                                   cfg.channel.eps12(), user));
    }
  }
  return 0;
}

int cmd_trace(const Opts& o, const std::string& actions_text,
              const std::string& erasures_text) {
  const AoiState init = parse_state(o.init_text);
  const auto actions = parse_actions(actions_text);
  const auto erasures = parse_erasures(erasures_text);
  const auto states = replay(init, actions, erasures);
  std::printf("k,action,z1,z2,h1,h2,w1,w2\n");
  std::printf("0,,,,%" PRId64 ",%" PRId64 ",%" PRId64 ",%" PRId64 "\n",
              init.h1, init.h2, init.w1, init.w2);
  for (std::size_t k = 0; k < states.size(); ++k) {
    std::printf("%zu,%d,%d,%d,%" PRId64 ",%" PRId64 ",%" PRId64 ",%" PRId64
                "\n",
                k + 1, static_cast<int>(actions[k]), erasures[k].z1 ? 1 : 0,
                erasures[k].z2 ? 1 : 0, states[k].h1, states[k].h2,
                states[k].w1, states[k].w2);
  }
  return 0;
}

int cmd_sweep(const Opts& o, double eps_begin, double eps_end, double eps_step,
              const std::string& report_path) {
  SweepConfig cfg;
  cfg.alphas = o.alphas();
  cfg.eps_begin = eps_begin;
  cfg.eps_end = eps_end;
  cfg.eps_step = eps_step;
  cfg.horizon = o.horizon;
  cfg.replications = o.reps;
  cfg.base_seed = o.seed;
  cfg.threads = o.threads;
  const auto rows = run_sweep(cfg);
  const std::string out = o.out.empty() ? "sweep.csv" : o.out;
  write_sweep_csv(out, rows);
  std::printf("wrote %s (%zu rows)\n", out.c_str(), rows.size());
  if (!report_path.empty()) {
    write_sweep_report(report_path, rows);
    std::printf("wrote %s\n", report_path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"age-of-information toolkit for the two-user broadcast "
               "erasure channel with XOR coding"};
  app.require_subcommand(1);

  Opts bound_o, rand_o, opt_o, mwb_o, sim_o, sweep_o, trace_o;

  CLI::App* bound = app.add_subcommand("bound", "universal lower bound");
  bound_o.add_channel(bound);
  bound_o.add_common(bound);

  CLI::App* randomized = app.add_subcommand(
      "randomized", "closed-form EWSAoI of a randomized policy");
  rand_o.add_channel(randomized);
  rand_o.add_common(randomized);
  rand_o.add_mu(randomized);

  CLI::App* optimize =
      app.add_subcommand("optimize", "best randomized policy on the simplex");
  opt_o.add_channel(optimize);
  opt_o.add_common(optimize);
  opt_o.o_uncoded =
      optimize->add_flag("--uncoded", opt_o.uncoded, "force mu3 = 0");

  CLI::App* mw_bound = app.add_subcommand(
      "mw-bound", "Max-Weight EWSAoI upper bound (at --mu or minimized)");
  mwb_o.add_channel(mw_bound);
  mwb_o.add_common(mw_bound);
  mwb_o.add_mu(mw_bound);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo run(s)");
  sim_o.add_channel(simulate);
  sim_o.add_common(simulate);
  sim_o.add_mu(simulate);
  sim_o.add_sim(simulate);
  sim_o.o_policy =
      simulate->add_option("--policy", sim_o.policy, "randomized | max-weight");
  sim_o.o_uncoded =
      simulate->add_flag("--uncoded", sim_o.uncoded, "use the uncoded variant");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "erasure sweep with eps12 = eps^2/5; writes CSV");
  double eps_begin = 0.10, eps_end = 0.95, eps_step = 0.05;
  std::string report_path;
  sweep_o.alpha1 = 0.3;
  sweep_o.add_common(sweep);
  sweep_o.add_sim(sweep);
  sweep->add_option("--eps-begin", eps_begin, "first epsilon");
  sweep->add_option("--eps-end", eps_end, "last epsilon");
  sweep->add_option("--eps-step", eps_step, "epsilon step");
  sweep->add_option("--report", report_path, "also write a 4-digit report");
  sweep_o.o_out =
      sweep->add_option("--out", sweep_o.out, "CSV path (default sweep.csv)");

  CLI::App* trace =
      app.add_subcommand("trace", "replay an explicit action/erasure script");
  std::string actions_text, erasures_text;
  trace_o.add_common(trace);
  trace_o.o_init = trace->add_option("--init", trace_o.init_text,
                                     "initial state h1,h2,w1,w2");
  trace->add_option("--actions", actions_text, "e.g. 2,1,1,2,3")->required();
  trace->add_option("--erasures", erasures_text, "e.g. 11,10,01,10,11")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (bound->parsed()) {
      bound_o.merge_config();
      return cmd_bound(bound_o);
    }
    if (randomized->parsed()) {
      rand_o.merge_config();
      return cmd_randomized(rand_o);
    }
    if (optimize->parsed()) {
      opt_o.merge_config();
      return cmd_optimize(opt_o);
    }
    if (mw_bound->parsed()) {
      mwb_o.merge_config();
      return cmd_mw_bound(mwb_o);
    }
    if (simulate->parsed()) {
      sim_o.merge_config();
      return cmd_simulate(sim_o);
    }
    if (sweep->parsed()) {
      sweep_o.merge_config();
      return cmd_sweep(sweep_o, eps_begin, eps_end, eps_step, report_path);
    }
    if (trace->parsed()) {
      trace_o.merge_config();
      return cmd_trace(trace_o, actions_text, erasures_text);
    }
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
