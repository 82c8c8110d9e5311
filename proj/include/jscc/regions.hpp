// Achievable-rate hulls for two-sender channels and the minimum channel-uses
// -per-source-symbol scale b at which a hull covers an entropy target.
//
// A hull is the set of per-receiver triples (I(X1;Yk|X2), I(X2;Yk|X1),
// I(X1,X2;Yk)) generated by product inputs, closed under time sharing
// (convex combinations) and coordinatewise decrease.  A target h is coverable
// at scale b iff some mixture v of hull points satisfies b*v >= h
// componentwise.
#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "jscc/channel.hpp"
#include "jscc/pmf.hpp"

namespace jscc {

// One (I1, I2, Isum) triple per receiver, flattened; receivers() in {1, 2}.
struct RateVector {
  std::vector<double> v;
  std::size_t receivers() const { return v.size() / 3; }
  void validate() const;  // components >= 0, Isum >= max(I1, I2) - 1e-9
};

// Entropy targets in the same layout (bits per source symbol).  The sum slot
// may exceed h1 + h2 (Slepian-Wolf corners with residual correlation), so
// only hsum >= max(h1, h2) is required.
struct EntropyVector {
  std::vector<double> h;
  std::size_t receivers() const { return h.size() / 3; }
  void validate() const;
};

struct HullPoint {
  std::vector<double> rates;  // 3 * receivers
  std::vector<double> p1, p2; // generating product input marginals
};

struct RegionHull {
  std::size_t receivers = 1;
  std::size_t x1_card = 0, x2_card = 0;
  double grid_resolution = 0.0;
  std::size_t candidates_evaluated = 0;
  std::vector<HullPoint> points;  // Pareto-pruned generators

  std::vector<double> rate_matrix() const;  // row-major points x (3*receivers)
};

struct HullOptions {
  double grid_resolution = 0.05;
  bool refine = true;
  std::size_t refine_sweeps = 200;
  std::size_t refine_restarts = 8;
  std::size_t threads = 0;                  // 0 = hardware concurrency
  std::size_t candidate_cap = 2'000'000;
};

RegionHull achievable_hull(const ChannelModel& channel, std::size_t receivers,
                           const HullOptions& opts = {});

struct ScaleResult {
  bool achievable = false;  // false: some h component points where hull is 0
  double b_min = std::numeric_limits<double>::infinity();
  ProductInput witness;               // time-sharing mixture of hull inputs
  std::vector<double> witness_rates;  // mixture rate vector
  double min_slack = 0.0;             // min_j (b_min * v_j - h_j), bits
  bool witness_within_q4 = true;      // support reduction to <= 4 succeeded
};

// Smallest b (within tol, bisection) such that b * hull covers h.
ScaleResult min_scale_b(const RegionHull& hull, const EntropyVector& h,
                        double tol = 1e-4);

// min_scale_b plus column generation: grows the hull with scalarized
// searches along the binding coordinates and re-bisects, sharpening b_min
// beyond the base grid.  The hull is enlarged in place.
ScaleResult min_scale_b_polished(const ChannelModel& channel, RegionHull& hull,
                                 const EntropyVector& h, double tol = 1e-4,
                                 std::size_t rounds = 4);

// Slepian-Wolf corner (H(S1|S2,side), H(S2|S1,side), H(S1,S2|side)).
EntropyVector sw_region_corner(const JointPmf& source,
                               const std::vector<std::string>& side = {});

struct SeparationResult {
  EntropyVector corner;
  ScaleResult scale;
};

// Minimum b at which the Slepian-Wolf region given `side` intersects the
// scaled single-receiver hull (classical separate source/channel coding).
SeparationResult informational_separation_minrate(
    const JointPmf& source, const ChannelModel& channel,
    const std::vector<std::string>& side = {}, const HullOptions& opts = {},
    double tol = 1e-4);

struct FullCoopResult {
  double b = 0.0;
  double joint_entropy = 0.0;    // H(S1,S2|side)
  double max_mutual_info = 0.0;  // max over joint inputs of I(X1,X2;Y1)
  std::vector<double> best_joint_input;
};

// Cooperative lower-bound baseline: both senders know both sources, so the
// channel behaves as a single-input channel with max_{p(x1,x2)} I(X1,X2;Y1).
FullCoopResult full_coop_minrate(const JointPmf& source,
                                 const ChannelModel& channel,
                                 const std::vector<std::string>& side = {},
                                 double grid_resolution = 0.05);

}  // namespace jscc
