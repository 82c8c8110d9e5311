// Acceptance gate: ten end-to-end criteria, one [PASS]/[FAIL] line each.
// Every numeric tolerance is pinned here, next to the check that uses it.
// The minimum-rate criteria are judged against brute-force grid oracles
// built in this file, independent of the library's hull search.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "jscc/channel.hpp"
#include "jscc/cli_app.hpp"
#include "jscc/criteria.hpp"
#include "jscc/lp.hpp"
#include "jscc/model_io.hpp"
#include "jscc/pmf.hpp"
#include "jscc/regions.hpp"
#include "jscc/rng.hpp"
#include "jscc/simulate.hpp"
#include "jscc/typicality.hpp"

using namespace jscc;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void report(int index, const std::string& name, bool pass,
            const std::string& detail, double seconds) {
  std::printf("[%s] %2d. %s: %s [%.1fs]\n", pass ? "PASS" : "FAIL", index,
              name.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

double hbin(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// ---- brute-force minimum-rate oracle --------------------------------------
// Enumerates every product input on an a-priori grid, prunes the rate
// triples to the Pareto frontier with a staircase filter, then bisects the
// scale b against the time-sharing LP.  Shares only the LP primitive with
// the production path (itself cross-checked against a mixture grid in the
// unit suite).

std::vector<std::vector<double>> grid_triples(const ChannelModel& ch,
                                              std::size_t steps) {
  ReceiverView view(ch, 1);
  std::vector<std::vector<double>> out;
  out.reserve((steps + 1) * (steps + 1));
  double tri[3];
  for (std::size_t i = 0; i <= steps; ++i) {
    double a = double(i) / double(steps);
    std::vector<double> p1 = {a, 1.0 - a};
    for (std::size_t j = 0; j <= steps; ++j) {
      double c = double(j) / double(steps);
      std::vector<double> p2 = {c, 1.0 - c};
      view.rate_triple(p1, p2, tri);
      out.push_back({tri[0], tri[1], tri[2]});
    }
  }
  return out;
}

// Keep only points not dominated coordinatewise by another (3-d maxima via
// descending sort on the first coordinate and a staircase on the other two).
std::vector<std::vector<double>> pareto3(std::vector<std::vector<double>> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const std::vector<double>& a, const std::vector<double>& b) {
              return a[0] > b[0];
            });
  std::vector<std::vector<double>> keep;
  std::map<double, double> stair;  // I2 -> Isum, strictly decreasing in I2
  auto dominated = [&](double y, double z) {
    auto it = stair.lower_bound(y);  // first I2 >= y
    return it != stair.end() && it->second >= z - 1e-12;
  };
  auto insert = [&](double y, double z) {
    auto it = stair.lower_bound(y);
    if (it != stair.end() && it->second >= z) return;  // not a new maximum
    // Entries with smaller I2 and no larger Isum are dominated by the new
    // point; they sit immediately to the left of the insertion position.
    while (it != stair.begin()) {
      auto prev = std::prev(it);
      if (prev->second <= z)
        it = stair.erase(prev);
      else
        break;
    }
    stair[y] = z;
  };
  std::size_t i = 0;
  while (i < pts.size()) {
    std::size_t j = i;
    while (j < pts.size() && pts[j][0] == pts[i][0]) ++j;
    for (std::size_t k = i; k < j; ++k)
      if (!dominated(pts[k][1], pts[k][2])) keep.push_back(pts[k]);
    for (std::size_t k = i; k < j; ++k) insert(pts[k][1], pts[k][2]);
    i = j;
  }
  return keep;
}

double oracle_min_b(const std::vector<std::vector<double>>& frontier,
                    const std::vector<double>& h, double tol) {
  std::vector<double> V;
  V.reserve(frontier.size() * h.size());
  for (const auto& p : frontier) V.insert(V.end(), p.begin(), p.end());
  auto feasible = [&](double b) {
    std::vector<double> Vb = V;
    for (auto& v : Vb) v *= b;
    return max_min_slack(Vb, frontier.size(), h.size(), h).slack >= 0.0;
  };
  double lo = 0.0, hi = 1.0;
  while (!feasible(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 64.0) return std::numeric_limits<double>::infinity();
  }
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::string run_cli(const std::vector<std::string>& args, int* code) {
  std::ostringstream out, err;
  int rc = execute(args, out, err);
  if (code) *code = rc;
  return out.str();
}

// ---- criteria --------------------------------------------------------------

void criterion1_entropy() {
  Timer t;
  const double kTolBits = 0.001;     // absolute, bits
  const double kBudgetSec = 1.0;
  ModelFile cs = load_model("models/cover_salehi.json");
  ModelFile w1 = load_model("models/cover_salehi_w1.json");
  double h12 = cs.source.entropy({"S1", "S2"});
  double h1w = w1.source.entropy({"S1"}, {"W1"});
  double h2w = w1.source.entropy({"S2"}, {"W1"});
  double secs = t.seconds();
  bool pass = std::abs(h12 - 1.585) <= kTolBits &&
              std::abs(h1w - 0.459) <= kTolBits &&
              std::abs(h2w - 0.459) <= kTolBits && secs < kBudgetSec;
  report(1, "pair and conditional entropies", pass,
         "H(S1,S2)=" + fmt(h12) + ", H(S1|W1)=" + fmt(h1w) +
             ", H(S2|W1)=" + fmt(h2w),
         secs);
}

void criterion2_separation_baseline() {
  Timer t;
  const double kTol = 0.01;
  const double kBudgetSec = 30.0;
  ModelFile cs = load_model("models/cover_salehi.json");
  HullOptions opts;
  opts.grid_resolution = 0.02;
  SeparationResult sep =
      informational_separation_minrate(cs.source, cs.channel, {}, opts);
  double secs = t.seconds();
  bool pass = sep.scale.achievable &&
              std::abs(sep.scale.b_min - 1.057) <= kTol && secs < kBudgetSec;
  report(2, "separate source/channel coding baseline", pass,
         "b=" + fmt(sep.scale.b_min) + " (expected 1.057 +/- 0.01)", secs);
}

void criterion3_independent_sources() {
  Timer t;
  const double kTol = 0.01;
  ModelFile plain = load_model("models/independent_uniform.json");
  ModelFile xors = load_model("models/independent_xor.json");
  Verdict v1 = minrate_mac(plain.source, plain.channel, MacTheorem::thm3);
  Verdict v2 = minrate_mac(xors.source, xors.channel, MacTheorem::thm3);
  bool pass = v1.b_min && std::abs(*v1.b_min - 1.333) <= kTol && v2.b_min &&
              std::abs(*v2.b_min - 0.667) <= kTol;
  report(3, "independent sources, with and without side information", pass,
         "no side info b=" + fmt(v1.b_min.value_or(-1)) +
             " (1.333 +/- 0.01), xor side info b=" + fmt(v2.b_min.value_or(-1)) +
             " (0.667 +/- 0.01)",
         t.seconds());
}

void criterion4_full_cooperation() {
  Timer t;
  const double kTol = 0.01;
  ModelFile xors = load_model("models/independent_xor.json");
  FullCoopResult fc = full_coop_minrate(xors.source, xors.channel, {"W1"});
  bool pass = std::abs(fc.b - 0.631) <= kTol;
  report(4, "full-cooperation lower baseline", pass,
         "b=" + fmt(fc.b) + " (expected 0.631 +/- 0.01)", t.seconds());
}

void criterion5_twoway() {
  Timer t;
  const double kTolOuter = 0.01;
  const double kTolMargin = 1e-6;
  ModelFile tw = load_model("models/shannon_multiplier.json");
  TwoWayOuterResult outer = twoway_outer(tw.source, tw.channel);
  ProductInput uncoded = ProductInput::identity_map(2, 2, 2, 2);
  Verdict ach = twoway_achievable(tw.source, tw.channel, uncoded);
  bool pass = std::abs(outer.b_lower - 1.0) <= kTolOuter &&
              std::abs(ach.margin) <= kTolMargin &&
              ach.achievable == "boundary";
  report(5, "two-way bound meets the uncoded scheme", pass,
         "outer=" + fmt(outer.b_lower) + ", uncoded margin=" +
             fmt(ach.margin) + " (" + ach.achievable + ")",
         t.seconds());
}

void criterion6_sideinfo_oracle() {
  Timer t;
  const double kTolOracle = 1e-3;  // computed vs brute-force oracle
  ModelFile w1 = load_model("models/cover_salehi_w1.json");
  Verdict v = minrate_mac(w1.source, w1.channel, MacTheorem::thm2);

  // Brute-force oracle: 1e-3 input grid + time sharing, bisected to 1e-5.
  double h1 = w1.source.entropy({"S1"}, {"W1"});
  double h2 = w1.source.entropy({"S2"}, {"W1"});
  auto frontier = pareto3(grid_triples(w1.channel, 1000));
  double oracle = oracle_min_b(frontier, {h1, h2, h1 + h2}, 1e-5);

  int rc = 0;
  std::string out = run_cli({"minrate", "--model",
                             "models/cover_salehi_w1.json", "--theorem",
                             "thm2"},
                            &rc);
  bool shows_both = out.find(fmt(*v.b_min)) != std::string::npos &&
                    out.find("0.92") != std::string::npos;
  bool pass = v.b_min && std::abs(*v.b_min - oracle) <= kTolOracle &&
              rc == 0 && shows_both;
  report(6, "side-information rule matches the brute-force oracle", pass,
         "computed=" + fmt(v.b_min.value_or(-1)) + ", oracle=" + fmt(oracle) +
             ", report shows computed and published values: " +
             (shows_both ? "yes" : "no"),
         t.seconds());
}

void criterion7_random_oracle_equivalence() {
  Timer t;
  const double kTol = 5e-3;
  const double kBudgetSec = 600.0;
  const std::size_t kChannels = 20;
  const std::size_t kOracleSteps = 200;  // 0.005 input grid
  Rng rng(0xACCE97);
  double worst = 0.0;
  std::size_t ran = 0;
  bool pass = true;
  for (std::size_t c = 0; c < kChannels && pass; ++c) {
    // Random 2x2-input, 3-output single-receiver channel.
    std::vector<double> tab;
    for (int r = 0; r < 4; ++r) {
      auto row = rng.simplex_point(3);
      tab.insert(tab.end(), row.begin(), row.end());
    }
    ChannelModel ch(ChannelKind::mac, 2, 2, {3}, tab);
    auto frontier = pareto3(grid_triples(ch, kOracleSteps));

    // Markov-chain source: p(w) p(s1|w) p(s2|w).
    {
      std::vector<double> pw = rng.simplex_point(2);
      std::vector<double> s1w[2] = {rng.simplex_point(2), rng.simplex_point(2)};
      std::vector<double> s2w[2] = {rng.simplex_point(2), rng.simplex_point(2)};
      std::vector<double> tbl(8, 0.0);
      for (std::size_t s1 = 0; s1 < 2; ++s1)
        for (std::size_t s2 = 0; s2 < 2; ++s2)
          for (std::size_t w = 0; w < 2; ++w)
            tbl[(s1 * 2 + s2) * 2 + w] = pw[w] * s1w[w][s1] * s2w[w][s2];
      JointPmf src({"S1", "S2", "W1"}, {2, 2, 2}, tbl);
      Verdict v = minrate_mac(src, ch, MacTheorem::thm2);
      double h1 = src.entropy({"S1"}, {"W1"});
      double h2 = src.entropy({"S2"}, {"W1"});
      double oracle = oracle_min_b(frontier, {h1, h2, h1 + h2}, 1e-5);
      double gap = std::abs(v.b_min.value_or(-1) - oracle);
      worst = std::max(worst, gap);
      if (gap > kTol) pass = false;
      ++ran;
    }
    // Independent sources with a noisy side-information kernel.
    if (pass) {
      std::vector<double> p1 = rng.simplex_point(2);
      std::vector<double> p2 = rng.simplex_point(2);
      std::vector<double> tbl(8, 0.0);
      for (std::size_t s1 = 0; s1 < 2; ++s1)
        for (std::size_t s2 = 0; s2 < 2; ++s2) {
          auto wrow = rng.simplex_point(2);
          for (std::size_t w = 0; w < 2; ++w)
            tbl[(s1 * 2 + s2) * 2 + w] = p1[s1] * p2[s2] * wrow[w];
        }
      JointPmf src({"S1", "S2", "W1"}, {2, 2, 2}, tbl);
      Verdict v = minrate_mac(src, ch, MacTheorem::thm3);
      EntropyVector corner = sw_region_corner(src, {"W1"});
      double oracle = oracle_min_b(frontier, corner.h, 1e-5);
      double gap = std::abs(v.b_min.value_or(-1) - oracle);
      worst = std::max(worst, gap);
      if (gap > kTol) pass = false;
      ++ran;
    }
  }
  double secs = t.seconds();
  pass = pass && secs < kBudgetSec;
  report(7, "random-model agreement with the exhaustive oracle", pass,
         std::to_string(ran) + " cases, worst gap=" + fmt(worst) +
             " (tolerance 0.005)",
         secs);
}

void criterion8_simulation_thresholds() {
  Timer t;
  const double kGap = 0.3;
  const double kBudgetSec = 300.0;
  ModelFile xors = load_model("models/independent_xor.json");
  const std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};

  auto matched_mean = [&](double b) {
    SimConfig cfg;
    cfg.m = 12;
    cfg.trials = 200;
    cfg.b = b;
    double acc = 0.0;
    for (auto s : seeds) {
      cfg.seed = s;
      acc += run_matched_scheme(xors.source, xors.channel, cfg)
                 .receivers[0]
                 .error_rate;
    }
    return acc / double(seeds.size());
  };
  // b_min = 2/3 for this model: compare 1.5*b_min against 0.9*b_min.
  double fed = matched_mean(1.0);
  double starved = matched_mean(0.6);

  // Separation needs the Markov side-information source: per-user bin
  // decoding against W1 is feasible when R_k > H(S_k|W1) = 0.459.
  ModelFile markov = load_model("models/cover_salehi_w1.json");
  auto separation_mean = [&](double r1, double r2) {
    SimConfig cfg;
    cfg.m = 12;
    cfg.trials = 200;
    cfg.b = 1.3;
    cfg.rate1 = r1;
    cfg.rate2 = r2;
    double acc = 0.0;
    for (auto s : seeds) {
      cfg.seed = s;
      acc += run_separation_scheme(markov.source, markov.channel, cfg)
                 .receivers[0]
                 .error_rate;
    }
    return acc / double(seeds.size());
  };
  // Binning rates inside the admissible band (above the conditional
  // entropy 0.459, sum within the scaled channel region) versus rate1
  // pushed below the conditional entropy; measured 0.905 vs 0.545.
  double inside = separation_mean(0.7, 0.7);
  double outside = separation_mean(0.40, 0.7);

  double secs = t.seconds();
  bool pass = (starved - fed >= kGap) && (outside - inside >= kGap) &&
              secs < kBudgetSec;
  report(8, "coding-scheme error gaps across the rate threshold", pass,
         "matched " + fmt(starved) + " vs " + fmt(fed) + "; separation " +
             fmt(outside) + " vs " + fmt(inside) + " (gaps >= 0.3)",
         secs);
}

void criterion9_typicality() {
  Timer t;
  const double kBudgetSec = 60.0;
  const double kSlackFactor = 1.5;
  TypicalSizeReport census = typical_set_size_check({0.5, 0.5}, 16, 0.2);
  bool census_ok = census.set_size == 60502.0 && census.holds;

  // Empirical pairwise-typicality bound: independent draws land jointly
  // typical with frequency at most 2^{-n (I - 3 delta)} (slack 1.5).
  const std::vector<double> joint = {0.4, 0.1, 0.1, 0.4};
  const std::size_t n = 14;
  const double delta = 0.05;
  const double mi = 1.0 - hbin(0.2);
  const double bound = std::pow(2.0, -double(n) * (mi - 3.0 * delta));
  Rng rng(20260815);
  std::size_t hits = 0;
  const std::size_t samples = 100000;
  Seq x(n), y(n);
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.uniform() < 0.5 ? 0 : 1;
      y[i] = rng.uniform() < 0.5 ? 0 : 1;
    }
    if (jointly_typical({&x, &y}, {2, 2}, joint, delta)) ++hits;
  }
  double freq = double(hits) / double(samples);
  double secs = t.seconds();
  bool pass = census_ok && freq <= bound * kSlackFactor && secs < kBudgetSec;
  report(9, "typical-set census and pairwise-typicality bound", pass,
         "census=" + std::to_string(std::size_t(census.set_size)) +
             " (60502), empirical=" + fmt(freq) + " <= bound*1.5=" +
             fmt(bound * kSlackFactor),
         secs);
}

void criterion10_determinism() {
  Timer t;
  bool pass = true;
  std::string detail;
  const std::vector<std::vector<std::string>> cmds = {
      {"simulate", "--model", "models/independent_xor.json", "--scheme",
       "matched", "--m", "8", "--trials", "60", "--seed", "5", "--json"},
      {"simulate", "--model", "models/independent_xor.json", "--scheme",
       "separation", "--m", "8", "--trials", "60", "--seed", "5", "--r1",
       "0.7", "--r2", "0.7", "--b", "1.3", "--json"},
      {"simulate", "--model", "models/independent_xor.json", "--scheme",
       "uncoded", "--m", "16", "--trials", "60", "--seed", "5", "--json"},
  };
  for (const auto& cmd : cmds) {
    int rc1 = 0, rc2 = 0;
    std::string a = run_cli(cmd, &rc1);
    std::string b = run_cli(cmd, &rc2);
    if (rc1 != 0 || rc2 != 0 || a != b || a.empty()) {
      pass = false;
      detail += cmd[4] + std::string(" differs; ");
    }
  }
  if (pass) detail = "three schemes byte-identical across reruns";
  report(10, "seeded reruns are byte-identical", pass, detail, t.seconds());
}

}  // namespace

int main() {
  std::printf("acceptance suite: source-channel rate toolkit\n");
  criterion1_entropy();
  criterion2_separation_baseline();
  criterion3_independent_sources();
  criterion4_full_cooperation();
  criterion5_twoway();
  criterion6_sideinfo_oracle();
  criterion7_random_oracle_equivalence();
  criterion8_simulation_thresholds();
  criterion9_typicality();
  criterion10_determinism();
  if (g_failures == 0)
    std::printf("all 10 criteria passed\n");
  else
    std::printf("%d criteria FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
