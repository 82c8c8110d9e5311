#include "jscc/optim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace jscc {

namespace {

void enumerate_compositions(std::size_t remaining, std::size_t dim,
                            std::vector<std::size_t>& cur,
                            std::vector<std::vector<std::size_t>>& out) {
  if (dim == 1) {
    cur.push_back(remaining);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::size_t k = 0; k <= remaining; ++k) {
    cur.push_back(k);
    enumerate_compositions(remaining - k, dim - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<double>> simplex_grid(std::size_t dim,
                                              double resolution) {
  if (dim == 0) throw std::invalid_argument("simplex_grid: zero dimension");
  if (resolution <= 0.0 || resolution > 1.0)
    throw std::invalid_argument("simplex_grid: resolution must be in (0, 1]");
  std::size_t steps = std::size_t(std::llround(1.0 / resolution));
  if (steps == 0) steps = 1;
  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::size_t> cur;
  enumerate_compositions(steps, dim, cur, comps);
  std::vector<std::vector<double>> out;
  out.reserve(comps.size());
  for (const auto& c : comps) {
    std::vector<double> p(dim);
    for (std::size_t i = 0; i < dim; ++i) p[i] = double(c[i]) / double(steps);
    out.push_back(std::move(p));
  }
  return out;
}

std::size_t simplex_grid_size(std::size_t dim, double resolution) {
  std::size_t steps = std::size_t(std::llround(1.0 / resolution));
  if (steps == 0) steps = 1;
  // C(steps + dim - 1, dim - 1)
  long double acc = 1.0L;
  for (std::size_t i = 1; i < dim; ++i)
    acc = acc * (long double)(steps + i) / (long double)(i);
  return std::size_t(std::llround((double)acc));
}

SearchResult maximize_over_simplices(const BlockObjective& f,
                                     const std::vector<std::size_t>& dims,
                                     const std::vector<BlockPoint>& starts,
                                     const SearchOptions& opts) {
  if (dims.empty()) throw std::invalid_argument("search: no blocks");

  auto climb = [&](BlockPoint x) {
    double best = f(x);
    double step = opts.initial_step;
    for (std::size_t sweep = 0; sweep < opts.sweeps && step >= opts.min_step;
         ++sweep) {
      bool improved = false;
      for (std::size_t b = 0; b < dims.size(); ++b) {
        std::size_t d = dims[b];
        if (d < 2) continue;
        for (std::size_t from = 0; from < d; ++from) {
          for (std::size_t to = 0; to < d; ++to) {
            if (to == from) continue;
            // Recompute the movable mass each time: an accepted move above
            // shrinks x[b][from], and reusing a stale amount would push the
            // coordinate negative (off the simplex).
            double t = std::min(step, x[b][from]);
            if (t <= 0.0) break;
            x[b][from] -= t;
            x[b][to] += t;
            double v = f(x);
            if (v > best + 1e-12) {
              best = v;
              improved = true;
            } else {
              x[b][from] += t;
              x[b][to] -= t;
            }
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    return SearchResult{std::move(x), best};
  };

  SearchResult best;
  bool have = false;
  auto consider = [&](SearchResult r) {
    if (!have || r.value > best.value) {
      best = std::move(r);
      have = true;
    }
  };

  for (const auto& s : starts) consider(climb(s));
  for (std::size_t r = 0; r < opts.restarts; ++r) {
    Rng rng(derive_seed(opts.seed, r));
    BlockPoint x;
    for (std::size_t d : dims) x.push_back(rng.simplex_point(d));
    consider(climb(std::move(x)));
  }
  if (!have) {
    // No starts and no restarts requested: evaluate the barycenter.
    BlockPoint x;
    for (std::size_t d : dims)
      x.push_back(std::vector<double>(d, 1.0 / double(d)));
    consider(climb(std::move(x)));
  }
  return best;
}

void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  threads = std::min(threads, n);
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < n; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace jscc
