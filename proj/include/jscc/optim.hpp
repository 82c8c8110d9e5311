// Derivative-free maximization over products of probability simplices:
// exhaustive simplex grids plus a deterministic pattern search (mass moves
// between coordinate pairs with a shrinking step), restarted from multiple
// points.  Used for hull refinement and witness searches.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "jscc/rng.hpp"

namespace jscc {

// All probability vectors of dimension `dim` whose entries are integer
// multiples of 1/steps where steps = round(1/resolution).
std::vector<std::vector<double>> simplex_grid(std::size_t dim,
                                              double resolution);

// Number of points simplex_grid would produce (C(steps+dim-1, dim-1)).
std::size_t simplex_grid_size(std::size_t dim, double resolution);

using BlockPoint = std::vector<std::vector<double>>;  // one vector per block
using BlockObjective = std::function<double(const BlockPoint&)>;

struct SearchOptions {
  std::size_t sweeps = 200;      // pattern-search sweeps per start
  std::size_t restarts = 8;      // random restarts (plus provided starts)
  std::uint64_t seed = 0x5eedULL;
  double initial_step = 0.25;
  double min_step = 1e-7;
};

struct SearchResult {
  BlockPoint point;
  double value = 0.0;
};

// Maximizes f over the product of simplices with the given block dimensions.
// `starts` are additional starting points (each already feasible).
SearchResult maximize_over_simplices(const BlockObjective& f,
                                     const std::vector<std::size_t>& dims,
                                     const std::vector<BlockPoint>& starts,
                                     const SearchOptions& opts = {});

// Runs fn(i) for i in [0, n) on up to `threads` worker threads.  fn must be
// safe to call concurrently for distinct i.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace jscc
