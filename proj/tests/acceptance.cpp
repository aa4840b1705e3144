// Acceptance suite: one pass/fail line per criterion, nonzero exit code on
// any failure. Expects the CLI path via --cli (defaults to ./agecast).

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "agecast/analysis.hpp"
#include "agecast/sim.hpp"
#include "agecast/stats.hpp"
#include "agecast/sweep.hpp"
#include "test_util.hpp"

using namespace agecast;

namespace {

struct Criterion {
  std::string name;
  bool pass = true;
  std::vector<std::string> detail;
  double seconds = 0;

  void note(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    detail.emplace_back(buf);
  }
  void require(bool ok, const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    if (!ok) {
      pass = false;
      detail.emplace_back(std::string("FAILED: ") + buf);
    }
  }
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Plotted coordinates of the reference study (eps12 = eps^2/5, alpha1 = 0.3).
constexpr double kEps[18] = {0.10, 0.15, 0.20, 0.25, 0.30, 0.35,
                             0.40, 0.45, 0.50, 0.55, 0.60, 0.65,
                             0.70, 0.75, 0.80, 0.85, 0.90, 0.95};
constexpr double kPlottedLowerBound[18] = {
    0.7563, 0.7727, 0.7914, 0.8130, 0.8380, 0.8672, 0.9016, 0.9428, 0.9926,
    1.0541, 1.1316, 1.2319, 1.3664, 1.5556, 1.8407, 2.3174, 3.2733, 5.2809};

struct A1Point {
  double mean, std_error, bound;
};

Criterion run_a1(std::vector<A1Point>& points) {
  Criterion c{"A1 closed form vs simulation (10 random configs, T=1e6, R=20)"};
  Timer t;
  SplitMix64 rng(0xA11CE5EEDull);
  for (int i = 0; i < 10; ++i) {
    const double e1 = test_util::uniform(rng, 0.1, 0.9);
    const double e2 = test_util::uniform(rng, 0.1, 0.9);
    const double e12 = test_util::uniform(rng, 0.0, std::min(e1, e2));
    const ChannelParams ch = ChannelParams::validated(e1, e2, e12);
    const ActionWeights mu = test_util::random_simplex(rng, 0.06);
    const double a1 = test_util::uniform(rng, 0.2, 0.8);
    const AgeWeights al{a1, 1.0 - a1};

    const double cf = randomized_ewsaoi(al, mu, ch);
    const SimConfig cfg{PolicySpec{PolicyKind::kRandomized, true, mu},
                        ch,
                        al,
                        1'000'000,
                        20,
                        derive_seed(0xA11CE3ull, i)};
    const ReplicateResult r = replicate(cfg);
    points.push_back({r.mean, r.std_error, lower_bound(al, ch)});
    const double diff = std::abs(r.mean - cf);
    c.require(diff <= r.ci_halfwidth,
              "config %d: |%.6f - %.6f| = %.2e > ci %.2e", i, r.mean, cf, diff,
              r.ci_halfwidth);
    c.require(diff <= 0.01 * cf, "config %d: off by %.3f%% > 1%%", i,
              100.0 * diff / cf);
    c.note("config %d: eps=(%.3f,%.3f,%.3f) sim=%.6f cf=%.6f ci=%.1e", i, e1,
           e2, e12, r.mean, cf, r.ci_halfwidth);
  }
  c.seconds = t.seconds();
  c.require(c.seconds < 300.0, "runtime %.1fs exceeds 5 min", c.seconds);
  return c;
}

Criterion run_a2(const std::vector<SweepRow>& rows,
                 const std::vector<A1Point>& a1_points) {
  Criterion c{"A2 lower bound: plotted anchors, full-sweep 2%, domination"};
  Timer t;
  const AgeWeights al{0.3, 0.7};
  for (int j = 0; j < 18; ++j) {
    const double v = lower_bound(
        al, ChannelParams::validated(kEps[j], kEps[j], kEps[j] * kEps[j] / 5));
    const double r = rel(v, kPlottedLowerBound[j]);
    if (j == 0 || j == 2) {
      c.require(r <= 0.001, "anchor eps=%.2f: direct %.5f vs plotted %.4f "
                            "(%.3f%% > 0.1%%)",
                kEps[j], v, kPlottedLowerBound[j], 100.0 * r);
    }
    c.require(r <= 0.02,
              "eps=%.2f: direct %.5f vs plotted %.4f differs %.2f%% > 2%%",
              kEps[j], v, kPlottedLowerBound[j], 100.0 * r);
  }
  // every simulated/evaluated policy dominates the bound (3 sigma slack)
  for (const SweepRow& row : rows) {
    c.require(row.coded_rand >= row.lower_bound - 1e-12,
              "eps=%.2f: coded randomized below bound", row.epsilon);
    c.require(row.uncoded_rand >= row.lower_bound - 1e-12,
              "eps=%.2f: uncoded randomized below bound", row.epsilon);
    c.require(row.coded_mw_mean + 3.0 * row.coded_mw_std_error >=
                  row.lower_bound,
              "eps=%.2f: coded MW %.4f below bound %.4f", row.epsilon,
              row.coded_mw_mean, row.lower_bound);
    c.require(row.uncoded_mw_mean + 3.0 * row.uncoded_mw_std_error >=
                  row.lower_bound,
              "eps=%.2f: uncoded MW %.4f below bound %.4f", row.epsilon,
              row.uncoded_mw_mean, row.lower_bound);
  }
  for (std::size_t i = 0; i < a1_points.size(); ++i) {
    c.require(a1_points[i].mean + 3.0 * a1_points[i].std_error >=
                  a1_points[i].bound,
              "A1 config %zu: simulated mean below the bound", i);
  }
  c.seconds = t.seconds();
  return c;
}

Criterion run_a3(const std::vector<SweepRow>& rows, double sweep_seconds) {
  Criterion c{"A3 sweep reproduces the reference coordinates at eps=0.8"};
  Timer t;
  const SweepRow* at08 = nullptr;
  for (const SweepRow& r : rows) {
    if (std::abs(r.epsilon - 0.8) < 1e-9) at08 = &r;
  }
  if (at08 == nullptr) {
    c.require(false, "sweep has no eps=0.8 row");
    return c;
  }
  c.note("eps=0.8: uncoded_rand=%.6f coded_rand=%.6f coded_mw=%.4f+-%.4f "
         "uncoded_mw=%.4f+-%.4f",
         at08->uncoded_rand, at08->coded_rand, at08->coded_mw_mean,
         at08->coded_mw_ci, at08->uncoded_mw_mean, at08->uncoded_mw_ci);
  c.require(rel(at08->uncoded_rand, 4.7913) <= 0.001,
            "uncoded randomized %.5f vs 4.7913 (>0.1%%)", at08->uncoded_rand);
  c.require(rel(at08->coded_rand, 4.4266) <= 0.01,
            "coded randomized %.5f vs 4.4266 (>1%%)", at08->coded_rand);
  c.require(rel(at08->coded_mw_mean, 3.5473) <= 0.03,
            "coded MW %.4f vs 3.5473 (>3%%)", at08->coded_mw_mean);
  c.require(rel(at08->uncoded_mw_mean, 3.6165) <= 0.03,
            "uncoded MW %.4f vs 3.6165 (>3%%)", at08->uncoded_mw_mean);

  for (const SweepRow& r : rows) {
    if (r.epsilon > 0.5 + 1e-9) continue;
    c.require(rel(r.coded_rand, r.uncoded_rand) < 5e-4,
              "eps=%.2f: coded %.6f != uncoded %.6f to 4 significant digits",
              r.epsilon, r.coded_rand, r.uncoded_rand);
  }
  c.require(sweep_seconds < 900.0, "sweep took %.0fs > 15 min", sweep_seconds);
  c.note("full sweep runtime %.1fs", sweep_seconds);
  c.seconds = t.seconds();
  return c;
}

Criterion run_a4() {
  Criterion c{"A4 coding-benefit threshold and strict symmetric improvement"};
  Timer t;
  double lo = 0.5, hi = 0.6;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (coding_beneficial(mid, mid * mid / 5.0) ? hi : lo) = mid;
  }
  const double root = 0.5 * (lo + hi);
  const double expect = 5.0 - 2.0 * std::sqrt(5.0);
  c.note("threshold root = %.9f (5 - 2 sqrt 5 = %.9f)", root, expect);
  c.require(std::abs(root - expect) <= 1e-6, "threshold off by %.2e",
            std::abs(root - expect));
  for (double eps : {0.6, 0.7, 0.8, 0.9}) {
    const double e12 = eps * eps / 5.0;
    const double star = symmetric_ewsaoi(0.5, optimal_mu_symmetric(eps, e12),
                                         eps, e12);
    const double flat = symmetric_ewsaoi(0.5, 0.5, eps, e12);
    c.require(star < flat, "eps=%.1f: J(mu*)=%.6f not < J(1/2)=%.6f", eps,
              star, flat);
  }
  c.seconds = t.seconds();
  return c;
}

Criterion run_a5() {
  Criterion c{"A5 max-weight equals the drift argmin on all states h <= 20"};
  Timer t;
  SplitMix64 rng(0x5EEDA5ull);
  for (int cfg = 0; cfg < 5; ++cfg) {
    const ChannelParams ch = test_util::random_joint_channel(rng, 0.05, 0.9);
    const double a1 = test_util::uniform(rng, 0.1, 0.9);
    const AgeWeights al{a1, 1.0 - a1};
    std::int64_t states = 0;
    for (std::int64_t h1 = 1; h1 <= 20; ++h1) {
      for (std::int64_t h2 = 1; h2 <= 20; ++h2) {
        for (std::int64_t w1 = 0; w1 < h1; ++w1) {
          for (std::int64_t w2 = 0; w2 < h2; ++w2) {
            const AoiState s{h1, h2, w1, w2};
            ++states;
            double drift[3];
            double best = 1e300;
            for (int a = 0; a < 3; ++a) {
              drift[a] = test_util::drift_enum_oracle(
                  s, static_cast<Action>(a + 1), al, ch);
              const double closed =
                  one_slot_drift(s, static_cast<Action>(a + 1), al, ch);
              if (std::abs(closed - drift[a]) > 1e-10) {
                c.require(false, "drift mismatch at (%lld,%lld,%lld,%lld) a=%d",
                          (long long)h1, (long long)h2, (long long)w1,
                          (long long)w2, a + 1);
                c.seconds = t.seconds();
                return c;
              }
              best = std::min(best, drift[a]);
            }
            int lowest = 0;
            while (drift[lowest] > best + 1e-9) ++lowest;
            const Action chosen = mw_choose(s, al, ch);
            if (static_cast<int>(chosen) != lowest + 1) {
              c.require(false,
                        "config %d state (%lld,%lld,%lld,%lld): chose %d, "
                        "drift argmin %d",
                        cfg, (long long)h1, (long long)h2, (long long)w1,
                        (long long)w2, static_cast<int>(chosen), lowest + 1);
              c.seconds = t.seconds();
              return c;
            }
          }
        }
      }
    }
    c.note("config %d: %lld states checked", cfg, (long long)states);
  }
  c.seconds = t.seconds();
  return c;
}

Criterion run_a6() {
  Criterion c{"A6 inter-delivery law: coefficients, path oracle, histogram"};
  Timer t;
  SplitMix64 rng(0xBADA55ull);
  double worst_identity = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double e1 = test_util::uniform(rng, 0.02, 0.95);
    const double e2 = test_util::uniform(rng, 0.02, 0.95);
    const double e12 =
        test_util::uniform(rng, 0.0, std::min(e1, e2) * 0.999);
    const ChannelParams ch = ChannelParams::validated(e1, e2, e12);
    const ActionWeights mu = test_util::random_simplex(rng, 0.02);
    for (int user = 1; user <= 2; ++user) {
      const double denom = -mu.mu(user) * (ch.eps(user) - e12) +
                           mu.mu3 * (1.0 - ch.eps(user));
      if (std::abs(denom) < 1e-6) continue;
      const InterDeliveryParams p = interdelivery_params(mu, ch, user);
      const double target = mu.mu(user) * (1.0 - ch.eps(user));
      worst_identity = std::max(
          worst_identity, std::abs(p.delta1 + p.beta1 - target) /
                              std::max(1.0, std::abs(p.delta1)));
    }
  }
  c.note("worst coefficient-identity error: %.2e", worst_identity);
  c.require(worst_identity < 1e-12, "delta+beta identity above 1e-12");

  double worst_pmf = 0.0;
  for (int i = 0; i < 100; ++i) {
    const ChannelParams ch = test_util::random_joint_channel(rng, 0.02, 0.95);
    const ActionWeights mu = test_util::random_simplex(rng, 0.03);
    const double denom =
        -mu.mu1 * (ch.eps1() - ch.eps12()) + mu.mu3 * (1.0 - ch.eps1());
    if (std::abs(denom) < 1e-4) continue;
    const InterDeliveryParams p = interdelivery_params(mu, ch, 1);
    for (std::int64_t l = 1; l <= 20; ++l) {
      const double oracle = test_util::pmf_path_oracle(
          mu.mu1, mu.mu2, mu.mu3, ch.eps1(), ch.eps12(), l);
      worst_pmf = std::max(worst_pmf,
                           std::abs(inter_delivery_pmf(p, l) - oracle));
    }
  }
  c.note("worst pmf-vs-path-oracle error: %.2e", worst_pmf);
  c.require(worst_pmf < 1e-10, "pmf differs from the path oracle");

  // Monte Carlo histogram at 1e5 deliveries
  const ChannelParams ch = ChannelParams::validated(0.5, 0.5, 0.05);
  const ActionWeights mu{1.0 / 3, 1.0 / 3, 1.0 / 3};
  SimConfig cfg{PolicySpec{PolicyKind::kRandomized, true, mu},
                ch,
                {0.5, 0.5},
                620'000,
                2,
                0xC0FFEEull,
                {},
                true};
  const SimResult r = run_simulation(cfg, derive_seed(cfg.base_seed, 0));
  const std::size_t n = 100'000;
  c.require(r.user[0].inter_delivery_samples.size() >= n,
            "only %zu deliveries collected",
            r.user[0].inter_delivery_samples.size());
  if (r.user[0].inter_delivery_samples.size() >= n) {
    std::array<std::int64_t, 31> hist{};
    for (std::size_t m = 0; m < n; ++m) {
      const std::int64_t g = r.user[0].inter_delivery_samples[m];
      if (g <= 30) ++hist[g];
    }
    const InterDeliveryParams p = interdelivery_params(mu, ch, 1);
    double worst_sigma = 0.0;
    for (std::int64_t l = 1; l <= 30; ++l) {
      const double q = inter_delivery_pmf(p, l);
      const double freq = static_cast<double>(hist[l]) / n;
      const double sigma = std::sqrt(q * (1.0 - q) / n);
      worst_sigma = std::max(worst_sigma, std::abs(freq - q) / sigma);
    }
    c.note("histogram sup deviation: %.2f sigma over l <= 30", worst_sigma);
    c.require(worst_sigma < 4.0, "histogram deviates %.2f sigma > 4",
              worst_sigma);
  }
  c.seconds = t.seconds();
  return c;
}

Criterion run_a7(const std::vector<SweepRow>& rows) {
  Criterion c{"A7 queue model, uncoded reductions, bound dominates coded MW"};
  Timer t;
  // stationary chain vs power iteration
  SplitMix64 rng(0xDEAD17ull);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double lam = test_util::uniform(rng, 0.0, 1.0);
    const double dep = test_util::uniform(rng, 1e-3, 1.0);
    double pi0 = 1.0, pi1 = 0.0;
    for (int k = 0; k < 4000; ++k) {
      const double n0 = pi0 * (1.0 - lam) + pi1 * dep * (1.0 - lam);
      const double n1 = pi0 * lam + pi1 * (1.0 - dep + dep * lam);
      pi0 = n0;
      pi1 = n1;
    }
    worst = std::max(worst, std::abs(empty_queue_prob(lam, dep) - pi0));
  }
  c.note("worst |formula - power iteration|: %.2e", worst);
  c.require(worst < 1e-12, "empty_queue_prob off the stationary solve");

  // mu3 -> 0 reductions
  const ChannelParams ch = ChannelParams::validated(0.6, 0.4, 0.2);
  const ActionWeights mu{0.45, 0.55, 0.0};
  c.require(q2_nonempty_prob(mu, ch.eps1(), ch.eps12(), 1) == 1.0,
            "P_ne at mu3=0 is not 1");
  double inv = 0, psi = 0, phi = 0;
  const double alpha[2] = {0.3, 0.7};
  for (int user = 1; user <= 2; ++user) {
    const double s = mu.mu(user) * (1.0 - ch.eps(user));
    inv += alpha[user - 1] / s;
    psi += alpha[user - 1] * (1.0 + (1.0 - s) * (1.0 - s) / s);
    phi += alpha[user - 1] * (1.0 - s) / s;
  }
  const double reduced = std::sqrt(0.5 * inv * psi) + 0.5 * phi;
  c.require(std::abs(mw_upper_bound({0.3, 0.7}, mu, ch) - reduced) < 1e-12,
            "uncoded bound reduction mismatch");

  for (const SweepRow& row : rows) {
    c.require(row.coded_mw_mean <=
                  row.mw_bound + 3.0 * row.coded_mw_std_error,
              "eps=%.2f: coded MW %.4f above its bound %.4f", row.epsilon,
              row.coded_mw_mean, row.mw_bound);
  }
  c.seconds = t.seconds();
  return c;
}

Criterion run_a8(const std::string& cli) {
  Criterion c{"A8 CLI trace replays the reference sample path"};
  Timer t;
  const std::string cmd =
      cli + " trace --init 3,4,1,2 --actions 2,1,1,2,3 "
            "--erasures 11,10,01,10,11 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    c.require(false, "cannot run %s", cmd.c_str());
    return c;
  }
  std::vector<std::string> lines;
  char buf[256];
  while (std::fgets(buf, sizeof buf, pipe) != nullptr) {
    std::string line(buf);
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) {
      line.pop_back();
    }
    lines.push_back(line);
  }
  const int status = pclose(pipe);
  c.require(status == 0, "trace exited with status %d", status);
  const std::vector<std::string> expected{
      "1,2,1,1,4,1,2,0", "2,1,1,0,1,2,0,0", "3,1,0,1,2,3,1,0",
      "4,2,1,0,3,4,2,1", "5,3,1,1,3,2,0,0"};
  c.require(lines.size() == 7, "expected 7 output lines, got %zu",
            lines.size());
  if (lines.size() == 7) {
    c.require(lines[1] == "0,,,,3,4,1,2", "initial line was '%s'",
              lines[1].c_str());
    for (int k = 0; k < 5; ++k) {
      c.require(lines[k + 2] == expected[k], "slot %d: '%s' != '%s'", k + 1,
                lines[k + 2].c_str(), expected[k].c_str());
    }
  }

  // exit-code contract: invalid parameters report 2, I/O failures report 3
  const std::string bad =
      cli + " bound --eps1 1.5 --eps2 0.5 --eps12 0.1 2>/dev/null";
  const int bad_status = std::system(bad.c_str());
  c.require(WIFEXITED(bad_status) && WEXITSTATUS(bad_status) == 2,
            "invalid params exited %d, want 2", WEXITSTATUS(bad_status));
  const std::string io =
      cli + " bound --config /nonexistent/agecast.conf 2>/dev/null";
  const int io_status = std::system(io.c_str());
  c.require(WIFEXITED(io_status) && WEXITSTATUS(io_status) == 3,
            "missing config exited %d, want 3", WEXITSTATUS(io_status));
  c.seconds = t.seconds();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = "./agecast";
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::strcmp(argv[i], "--cli") == 0) cli = argv[i + 1];
  }

  std::printf("running the acceptance suite (this simulates ~1e9 slots)\n");
  Timer total;

  Timer sweep_timer;
  SweepConfig sweep_cfg;
  sweep_cfg.base_seed = 20240917ull;
  const std::vector<SweepRow> rows = run_sweep(sweep_cfg);
  const double sweep_seconds = sweep_timer.seconds();
  write_sweep_csv("acceptance_sweep.csv", rows);
  std::printf("sweep done in %.1fs (acceptance_sweep.csv)\n", sweep_seconds);

  std::vector<A1Point> a1_points;
  std::vector<Criterion> results;
  results.push_back(run_a1(a1_points));
  results.push_back(run_a2(rows, a1_points));
  results.push_back(run_a3(rows, sweep_seconds));
  results.push_back(run_a4());
  results.push_back(run_a5());
  results.push_back(run_a6());
  results.push_back(run_a7(rows));
  results.push_back(run_a8(cli));

  int failed = 0;
  std::printf("\n");
  for (std::size_t i = 0; i < results.size(); ++i) {
    const Criterion& c = results[i];
    std::printf("A%zu %s (%.1fs) — %s\n", i + 1, c.pass ? "PASS" : "FAIL",
                c.seconds, c.name.c_str());
    for (const std::string& d : c.detail) std::printf("    %s\n", d.c_str());
    if (!c.pass) ++failed;
  }
  std::printf("\n%d/8 criteria passed in %.1fs\n",
              8 - failed, total.seconds());
  return failed;
}
