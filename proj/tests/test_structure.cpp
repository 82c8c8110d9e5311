// Markov / independence checks and the common-part (maximal common random
// variable) computation via support-graph components.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "jscc/pmf.hpp"
#include "jscc/rng.hpp"
#include "jscc/structure.hpp"

using jscc::JointPmf;
using jscc::Rng;

namespace {

JointPmf cover_salehi() {
  return JointPmf({"S1", "S2"}, {2, 2}, {1.0 / 3, 1.0 / 3, 0.0, 1.0 / 3});
}

JointPmf cover_salehi_w1() {
  return JointPmf({"S1", "S2", "W1"}, {2, 2, 2},
                  {1.0 / 3, 0.0, 1.0 / 6, 1.0 / 6, 0.0, 0.0, 0.0, 1.0 / 3});
}

}  // namespace

TEST_CASE("markov chain holds exactly on the side-information model") {
  JointPmf p = cover_salehi_w1();
  auto rep = jscc::check_markov(p, {"S1"}, {"W1"}, {"S2"});
  CHECK(rep.holds);
  CHECK(rep.max_deviation <= 1e-12);
  // Markov => H(S1 | W1, S2) = H(S1 | W1).
  CHECK(p.entropy({"S1"}, {"W1", "S2"}) ==
        doctest::Approx(p.entropy({"S1"}, {"W1"})).epsilon(1e-9));
}

TEST_CASE("markov with empty middle group is plain independence") {
  JointPmf corr = cover_salehi();
  auto rep = jscc::check_markov(corr, {"S1"}, {}, {"S2"});
  CHECK_FALSE(rep.holds);
  // Same deviation as the direct independence check.
  auto ind = jscc::check_independent(corr, {"S1"}, {"S2"});
  CHECK_FALSE(ind.holds);
  CHECK(rep.max_deviation == doctest::Approx(ind.max_deviation).epsilon(1e-12));
  // max |p(a,b) - p(a)p(b)|: cell (0,0) gives |1/3 - (2/3)(1/3)| = 1/9.
  CHECK(ind.max_deviation == doctest::Approx(1.0 / 9).epsilon(1e-9));
}

TEST_CASE("independence holds on product pmfs") {
  JointPmf prod({"A", "B"}, {2, 3},
                {0.4 * 0.2, 0.4 * 0.3, 0.4 * 0.5, 0.6 * 0.2, 0.6 * 0.3,
                 0.6 * 0.5});
  CHECK(jscc::check_independent(prod, {"A"}, {"B"}).holds);
  // Grouped variables: (A) independent of (B,C) when jointly a product.
  std::vector<double> t;
  for (double a : {0.4, 0.6})
    for (double bc : {0.1, 0.2, 0.3, 0.4}) t.push_back(a * bc);
  JointPmf big({"A", "B", "C"}, {2, 2, 2}, t);
  CHECK(jscc::check_independent(big, {"A"}, {"B", "C"}).holds);
  CHECK(jscc::check_markov(big, {"A"}, {}, {"B", "C"}).holds);
}

TEST_CASE("common part of a connected support is trivial") {
  auto cp = jscc::gacs_korner_common(cover_salehi(), "S1", "S2");
  CHECK(cp.u_cardinality == 1);
  CHECK(cp.u_entropy == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cp.map1[0] == cp.map1[1]);
  CHECK(cp.map2[0] == cp.map2[1]);
}

TEST_CASE("common part of block-diagonal support is the block identity") {
  JointPmf p({"A", "B"}, {2, 2}, {0.5, 0.0, 0.0, 0.5});
  auto cp = jscc::gacs_korner_common(p, "A", "B");
  CHECK(cp.u_cardinality == 2);
  CHECK(cp.u_entropy == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cp.map1[0] != cp.map1[1]);
  CHECK(cp.map1[0] == cp.map2[0]);
  CHECK(cp.map1[1] == cp.map2[1]);
}

TEST_CASE("common part of a diagonal pmf is the variable itself") {
  JointPmf p({"A", "B"}, {3, 3},
             {1.0 / 3, 0, 0, 0, 1.0 / 3, 0, 0, 0, 1.0 / 3});
  auto cp = jscc::gacs_korner_common(p, "A", "B");
  CHECK(cp.u_cardinality == 3);
  CHECK(cp.u_entropy == doctest::Approx(std::log2(3.0)).epsilon(1e-9));
}

TEST_CASE("common-part maps agree on every support edge") {
  Rng rng(99);
  for (int it = 0; it < 40; ++it) {
    // Random sparse-ish support: zero out some cells, renormalize.
    std::vector<double> t = rng.simplex_point(12);
    for (auto& v : t)
      if (rng.uniform() < 0.35) v = 0.0;
    double s = 0.0;
    for (double v : t) s += v;
    if (s <= 0.0) continue;
    for (auto& v : t) v /= s;
    JointPmf p({"A", "B"}, {3, 4}, t);
    auto cp = jscc::gacs_korner_common(p, "A", "B");
    double usum = 0.0;
    for (double w : cp.u_pmf) usum += w;
    CHECK(usum == doctest::Approx(1.0).epsilon(1e-9));
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 4; ++b)
        if (p.prob({a, b}) > jscc::kProbEps) CHECK(cp.map1[a] == cp.map2[b]);
  }
}

TEST_CASE("near-miss deviations respect the tolerance argument") {
  // Perturb a product pmf by +/- eps on two cells.
  double eps = 1e-6;
  JointPmf p({"A", "B"}, {2, 2},
             {0.25 + eps, 0.25 - eps, 0.25 - eps, 0.25 + eps});
  CHECK_FALSE(jscc::check_independent(p, {"A"}, {"B"}, 1e-9).holds);
  CHECK(jscc::check_independent(p, {"A"}, {"B"}, 1e-4).holds);
  CHECK(jscc::check_independent(p, {"A"}, {"B"}).max_deviation ==
        doctest::Approx(eps).epsilon(1e-3));
}
