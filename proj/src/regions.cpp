#include "jscc/regions.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "jscc/lp.hpp"
#include "jscc/optim.hpp"

namespace jscc {

namespace {

constexpr double kSlackTol = 1e-9;

bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i] - 1e-12) return false;
  return true;
}

void pareto_prune(std::vector<HullPoint>& pts) {
  std::vector<HullPoint> kept;
  kept.reserve(pts.size());
  for (auto& p : pts) {
    bool dominated = false;
    for (auto& q : kept) {
      if (dominates(q.rates, p.rates)) {
        dominated = true;
        break;
      }
    }
    if (dominated) continue;
    kept.erase(std::remove_if(kept.begin(), kept.end(),
                              [&](const HullPoint& q) {
                                return dominates(p.rates, q.rates);
                              }),
               kept.end());
    kept.push_back(std::move(p));
  }
  pts = std::move(kept);
}

std::vector<double> eval_rates(const std::vector<ReceiverView>& views,
                               const std::vector<double>& p1,
                               const std::vector<double>& p2) {
  std::vector<double> out(views.size() * 3);
  double triple[3];
  for (std::size_t k = 0; k < views.size(); ++k) {
    views[k].rate_triple(p1, p2, triple);
    out[3 * k + 0] = triple[0];
    out[3 * k + 1] = triple[1];
    out[3 * k + 2] = triple[2];
  }
  return out;
}

}  // namespace

void RateVector::validate() const {
  if (v.size() != 3 && v.size() != 6)
    throw std::invalid_argument("rate vector: need 3 or 6 components");
  for (std::size_t k = 0; k < receivers(); ++k) {
    double i1 = v[3 * k], i2 = v[3 * k + 1], isum = v[3 * k + 2];
    if (i1 < 0 || i2 < 0 || isum < 0)
      throw std::invalid_argument("rate vector: negative component");
    if (isum < std::max(i1, i2) - 1e-9)
      throw std::invalid_argument("rate vector: sum slot below max(I1, I2)");
  }
}

void EntropyVector::validate() const {
  if (h.size() != 3 && h.size() != 6)
    throw std::invalid_argument("entropy vector: need 3 or 6 components");
  for (std::size_t k = 0; k < receivers(); ++k) {
    double h1 = h[3 * k], h2 = h[3 * k + 1], hsum = h[3 * k + 2];
    if (h1 < -1e-12 || h2 < -1e-12 || hsum < -1e-12)
      throw std::invalid_argument("entropy vector: negative component");
    if (hsum < std::max(h1, h2) - 1e-9)
      throw std::invalid_argument("entropy vector: sum slot below max(h1, h2)");
  }
}

std::vector<double> RegionHull::rate_matrix() const {
  std::vector<double> out;
  out.reserve(points.size() * receivers * 3);
  for (const auto& p : points)
    out.insert(out.end(), p.rates.begin(), p.rates.end());
  return out;
}

RegionHull achievable_hull(const ChannelModel& channel, std::size_t receivers,
                           const HullOptions& opts) {
  if (receivers == 0 || receivers > channel.receivers())
    throw std::invalid_argument("hull: invalid receiver count for channel");
  std::vector<ReceiverView> views;
  for (std::size_t k = 1; k <= receivers; ++k) views.emplace_back(channel, k);

  std::size_t n1 = simplex_grid_size(channel.x1_card(), opts.grid_resolution);
  std::size_t n2 = simplex_grid_size(channel.x2_card(), opts.grid_resolution);
  if (n1 * n2 > opts.candidate_cap)
    throw std::invalid_argument(
        "hull: grid resolution produces " + std::to_string(n1 * n2) +
        " candidates, exceeding the cap of " +
        std::to_string(opts.candidate_cap));

  auto g1 = simplex_grid(channel.x1_card(), opts.grid_resolution);
  auto g2 = simplex_grid(channel.x2_card(), opts.grid_resolution);

  std::vector<HullPoint> pts(g1.size() * g2.size());
  parallel_for(pts.size(), opts.threads, [&](std::size_t idx) {
    const auto& p1 = g1[idx / g2.size()];
    const auto& p2 = g2[idx % g2.size()];
    pts[idx] = HullPoint{eval_rates(views, p1, p2), p1, p2};
  });

  RegionHull hull;
  hull.receivers = receivers;
  hull.x1_card = channel.x1_card();
  hull.x2_card = channel.x2_card();
  hull.grid_resolution = opts.grid_resolution;
  hull.candidates_evaluated = pts.size();
  pareto_prune(pts);
  hull.points = std::move(pts);

  if (opts.refine) {
    // Scalarized polishing: push the frontier along sampled directions.
    std::size_t dim = receivers * 3;
    double mu_res = dim == 3 ? 0.1 : 0.5;
    auto directions = simplex_grid(dim, mu_res);
    for (std::size_t j = 0; j < dim; ++j) {
      std::vector<double> e(dim, 0.0);
      e[j] = 1.0;
      directions.push_back(std::move(e));
    }
    SearchOptions sopts;
    sopts.sweeps = opts.refine_sweeps;
    sopts.restarts = opts.refine_restarts;
    std::vector<HullPoint> extra(directions.size());
    std::atomic<std::size_t> n_extra{0};
    parallel_for(directions.size(), opts.threads, [&](std::size_t di) {
      const auto& mu = directions[di];
      BlockObjective f = [&](const BlockPoint& x) {
        auto r = eval_rates(views, x[0], x[1]);
        double acc = 0.0;
        for (std::size_t j = 0; j < dim; ++j) acc += mu[j] * r[j];
        return acc;
      };
      // Start from the best grid generator for this direction.
      double best = -1.0;
      const HullPoint* bp = nullptr;
      for (const auto& p : hull.points) {
        double acc = 0.0;
        for (std::size_t j = 0; j < dim; ++j) acc += mu[j] * p.rates[j];
        if (acc > best) {
          best = acc;
          bp = &p;
        }
      }
      std::vector<BlockPoint> starts;
      if (bp) starts.push_back({bp->p1, bp->p2});
      SearchOptions so = sopts;
      so.seed = derive_seed(sopts.seed, di);
      auto res = maximize_over_simplices(
          f, {channel.x1_card(), channel.x2_card()}, starts, so);
      extra[di] = HullPoint{eval_rates(views, res.point[0], res.point[1]),
                            res.point[0], res.point[1]};
      n_extra.fetch_add(1);
    });
    for (auto& p : extra) hull.points.push_back(std::move(p));
    hull.candidates_evaluated += directions.size();
    pareto_prune(hull.points);
  }
  return hull;
}

namespace {

bool feasible_at(const std::vector<double>& V, std::size_t m, std::size_t d,
                 const std::vector<double>& h, double b,
                 MixtureSlack* out = nullptr) {
  std::vector<double> t(d);
  for (std::size_t j = 0; j < d; ++j) t[j] = h[j] / b;
  MixtureSlack ms = max_min_slack(V, m, d, t);
  if (!ms.solved) throw std::runtime_error("min_scale_b: LP did not converge");
  if (out) *out = std::move(ms);
  return (out ? out->slack : ms.slack) >= -kSlackTol;
}

ProductInput witness_from_weights(const RegionHull& hull,
                                  const std::vector<double>& weights,
                                  const std::vector<std::size_t>& support) {
  ProductInput in;
  for (std::size_t i : support) {
    in.q_weights.push_back(weights[i]);
    in.cond1.push_back(hull.points[i].p1);
    in.cond2.push_back(hull.points[i].p2);
  }
  double sum = 0.0;
  for (double w : in.q_weights) sum += w;
  for (double& w : in.q_weights) w /= sum;
  return in;
}

}  // namespace

ScaleResult min_scale_b(const RegionHull& hull, const EntropyVector& h,
                        double tol) {
  h.validate();
  if (h.receivers() != hull.receivers)
    throw std::invalid_argument("min_scale_b: receiver count mismatch");
  if (hull.points.empty()) throw std::invalid_argument("min_scale_b: empty hull");
  if (tol <= 0.0) throw std::invalid_argument("min_scale_b: tol must be > 0");

  const std::size_t d = hull.receivers * 3;
  const std::size_t m = hull.points.size();
  std::vector<double> V = hull.rate_matrix();

  ScaleResult res;

  // Directions where the hull is identically zero cannot cover positive h.
  std::vector<double> colmax(d, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j)
      colmax[j] = std::max(colmax[j], V[i * d + j]);
  double hmax = 0.0;
  for (double x : h.h) hmax = std::max(hmax, x);
  for (std::size_t j = 0; j < d; ++j) {
    if (h.h[j] > 1e-12 && colmax[j] <= 1e-12) {
      res.achievable = false;
      return res;
    }
  }
  res.achievable = true;

  if (hmax <= 1e-12) {
    // Nothing to transmit.
    res.b_min = 0.0;
    res.witness = witness_from_weights(hull, {1.0}, {0});
    res.witness_rates = hull.points[0].rates;
    res.min_slack = 0.0;
    return res;
  }

  // Lower bound: no mixture exceeds the per-coordinate maxima.
  double b_lo = 0.0;
  for (std::size_t j = 0; j < d; ++j)
    if (h.h[j] > 1e-12) b_lo = std::max(b_lo, h.h[j] / colmax[j]);
  double b_hi = b_lo;
  MixtureSlack ms;
  if (!feasible_at(V, m, d, h.h, b_hi, &ms)) {
    int guard = 0;
    do {
      b_hi *= 2.0;
      if (++guard > 80)
        throw std::runtime_error("min_scale_b: no feasible scale found");
    } while (!feasible_at(V, m, d, h.h, b_hi, &ms));
    while (b_hi - b_lo > tol) {
      double mid = 0.5 * (b_lo + b_hi);
      MixtureSlack trial;
      if (feasible_at(V, m, d, h.h, mid, &trial)) {
        b_hi = mid;
        ms = std::move(trial);
      } else {
        b_lo = mid;
      }
    }
  }
  res.b_min = b_hi;

  // Support of the LP witness.
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < m; ++i)
    if (ms.weights[i] > 1e-12) support.push_back(i);

  // Best-effort reduction to at most 4 time-sharing points, keeping the
  // mixture feasible at b_min.
  std::vector<double> weights = ms.weights;
  while (support.size() > 4) {
    std::sort(support.begin(), support.end(),
              [&](std::size_t a, std::size_t b) { return weights[a] < weights[b]; });
    bool removed = false;
    for (std::size_t drop = 0; drop < support.size() && !removed; ++drop) {
      std::vector<std::size_t> trial_support;
      for (std::size_t i = 0; i < support.size(); ++i)
        if (i != drop) trial_support.push_back(support[i]);
      std::vector<double> subV;
      for (std::size_t i : trial_support)
        subV.insert(subV.end(), V.begin() + i * d, V.begin() + (i + 1) * d);
      std::vector<double> t(d);
      for (std::size_t j = 0; j < d; ++j) t[j] = h.h[j] / res.b_min;
      MixtureSlack sub = max_min_slack(subV, trial_support.size(), d, t);
      if (sub.solved && sub.slack >= -kSlackTol) {
        for (double& w : weights) w = 0.0;
        for (std::size_t i = 0; i < trial_support.size(); ++i)
          weights[trial_support[i]] = sub.weights[i];
        support = std::move(trial_support);
        removed = true;
      }
    }
    if (!removed) break;
  }
  res.witness_within_q4 = support.size() <= 4;

  res.witness = witness_from_weights(hull, weights, support);
  res.witness_rates.assign(d, 0.0);
  double wsum = 0.0;
  for (std::size_t i : support) wsum += weights[i];
  for (std::size_t i : support)
    for (std::size_t j = 0; j < d; ++j)
      res.witness_rates[j] += weights[i] / wsum * V[i * d + j];
  res.min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < d; ++j)
    res.min_slack =
        std::min(res.min_slack, res.b_min * res.witness_rates[j] - h.h[j]);
  return res;
}

ScaleResult min_scale_b_polished(const ChannelModel& channel, RegionHull& hull,
                                 const EntropyVector& h, double tol,
                                 std::size_t rounds) {
  std::vector<ReceiverView> views;
  for (std::size_t k = 1; k <= hull.receivers; ++k) views.emplace_back(channel, k);
  const std::size_t dim = hull.receivers * 3;

  ScaleResult best = min_scale_b(hull, h, tol);
  if (!best.achievable || best.b_min == 0.0) return best;

  for (std::size_t round = 0; round < rounds; ++round) {
    // Separation direction: the supporting normal of the facet the target
    // ray crosses, i.e. the dual of the mixture LP at the current b_min.
    // g(mu) = max_i <V_i, mu> - <t, mu> is convex piecewise-linear on the
    // coordinate simplex, so a pattern-search minimum is the global one.
    std::vector<double> t(dim);
    for (std::size_t j = 0; j < dim; ++j) t[j] = h.h[j] / best.b_min;
    const std::size_t m = hull.points.size();
    auto g = [&](const std::vector<double>& mu) {
      double top = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < dim; ++j)
          acc += mu[j] * hull.points[i].rates[j];
        top = std::max(top, acc);
      }
      double dot = 0.0;
      for (std::size_t j = 0; j < dim; ++j) dot += mu[j] * t[j];
      return top - dot;
    };
    std::vector<BlockPoint> mu_starts;
    for (auto& p : simplex_grid(dim, 0.25)) mu_starts.push_back({std::move(p)});
    SearchOptions dual_so;
    dual_so.seed = derive_seed(0xd0a1face, round);
    dual_so.restarts = 2;
    auto dual = maximize_over_simplices(
        [&](const BlockPoint& x) { return -g(x[0]); }, {dim}, mu_starts,
        dual_so);
    const std::vector<double> mu = dual.point[0];

    BlockObjective f = [&](const BlockPoint& x) {
      auto r = eval_rates(views, x[0], x[1]);
      double acc = 0.0;
      for (std::size_t j = 0; j < dim; ++j) acc += mu[j] * r[j];
      return acc;
    };
    std::vector<BlockPoint> starts;
    for (std::size_t qi = 0; qi < best.witness.q_card(); ++qi)
      starts.push_back({best.witness.cond1[qi], best.witness.cond2[qi]});
    SearchOptions so;
    so.seed = derive_seed(0xb01dface, round);
    auto found = maximize_over_simplices(
        f, {channel.x1_card(), channel.x2_card()}, starts, so);
    hull.points.push_back(HullPoint{
        eval_rates(views, found.point[0], found.point[1]), found.point[0],
        found.point[1]});

    ScaleResult next = min_scale_b(hull, h, tol);
    bool improved = next.b_min < best.b_min - tol * 0.1;
    best = std::move(next);
    if (!improved) break;
  }
  return best;
}

EntropyVector sw_region_corner(const JointPmf& source,
                               const std::vector<std::string>& side) {
  std::vector<std::string> s2side = {"S2"};
  std::vector<std::string> s1side = {"S1"};
  for (const auto& w : side) {
    s2side.push_back(w);
    s1side.push_back(w);
  }
  EntropyVector ev;
  ev.h = {source.entropy({"S1"}, s2side), source.entropy({"S2"}, s1side),
          source.entropy({"S1", "S2"}, side)};
  return ev;
}

SeparationResult informational_separation_minrate(
    const JointPmf& source, const ChannelModel& channel,
    const std::vector<std::string>& side, const HullOptions& opts, double tol) {
  SeparationResult out;
  out.corner = sw_region_corner(source, side);
  RegionHull hull = achievable_hull(channel, 1, opts);
  out.scale = min_scale_b_polished(channel, hull, out.corner, tol);
  return out;
}

FullCoopResult full_coop_minrate(const JointPmf& source,
                                 const ChannelModel& channel,
                                 const std::vector<std::string>& side,
                                 double grid_resolution) {
  FullCoopResult out;
  out.joint_entropy = source.entropy({"S1", "S2"}, side);

  ReceiverView view(channel, 1);
  std::size_t dim = channel.x1_card() * channel.x2_card();
  BlockObjective f = [&](const BlockPoint& x) {
    return view.joint_mutual_information(x[0]);
  };
  std::vector<BlockPoint> starts;
  for (auto& p : simplex_grid(dim, std::max(grid_resolution, 0.2)))
    starts.push_back({std::move(p)});
  SearchOptions so;
  so.restarts = 4;
  auto best = maximize_over_simplices(f, {dim}, starts, so);
  out.max_mutual_info = best.value;
  out.best_joint_input = best.point[0];
  if (out.joint_entropy <= 1e-12) {
    out.b = 0.0;
  } else if (out.max_mutual_info <= 1e-12) {
    out.b = std::numeric_limits<double>::infinity();
  } else {
    out.b = out.joint_entropy / out.max_mutual_info;
  }
  return out;
}

}  // namespace jscc
