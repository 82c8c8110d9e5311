// Entropy / mutual-information core: frozen values computed from closed
// forms inside the test, plus randomized identities (chain rules, bounds).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "jscc/pmf.hpp"
#include "jscc/rng.hpp"

using jscc::JointPmf;
using jscc::Rng;

namespace {

// Binary entropy in bits.
double hbin(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

JointPmf cover_salehi() {
  return JointPmf({"S1", "S2"}, {2, 2}, {1.0 / 3, 1.0 / 3, 0.0, 1.0 / 3});
}

// Correlated pair with binary side information W1 satisfying S1 - W1 - S2.
JointPmf cover_salehi_w1() {
  // Flat order (S1, S2, W1), W1 fastest.
  return JointPmf({"S1", "S2", "W1"}, {2, 2, 2},
                  {1.0 / 3, 0.0, 1.0 / 6, 1.0 / 6, 0.0, 0.0, 0.0, 1.0 / 3});
}

JointPmf random_joint(Rng& rng, std::vector<std::string> vars,
                      std::vector<std::size_t> cards) {
  std::size_t total = 1;
  for (auto c : cards) total *= c;
  return JointPmf(std::move(vars), std::move(cards), rng.simplex_point(total));
}

}  // namespace

TEST_CASE("entropy of simple tables") {
  CHECK(jscc::entropy_of_table({0.5, 0.5}) == doctest::Approx(1.0));
  CHECK(jscc::entropy_of_table({1.0, 0.0}) == doctest::Approx(0.0));
  CHECK(jscc::entropy_of_table({0.25, 0.25, 0.25, 0.25}) ==
        doctest::Approx(2.0));
  CHECK(jscc::entropy_of_table({1.0 / 3, 1.0 / 3, 1.0 / 3}) ==
        doctest::Approx(std::log2(3.0)));
}

TEST_CASE("correlated-pair entropies match closed forms") {
  JointPmf p = cover_salehi();
  CHECK(p.entropy({"S1", "S2"}) == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
  // 1.584963 to six decimals.
  CHECK(p.entropy({"S1", "S2"}) == doctest::Approx(1.584963).epsilon(1e-6));
  // P(S1=0)=2/3: H(S1) = h(1/3).
  const double h13 = std::log2(3.0) - 2.0 / 3.0;  // binary entropy of 1/3
  CHECK(hbin(1.0 / 3) == doctest::Approx(h13).epsilon(1e-12));
  CHECK(p.entropy({"S1"}) == doctest::Approx(h13).epsilon(1e-9));
  CHECK(p.entropy({"S2"}) == doctest::Approx(h13).epsilon(1e-9));
  // H(S1|S2): S2=0 forces S1=0; S2=1 leaves S1 uniform -> (2/3)*1.
  CHECK(p.entropy({"S1"}, {"S2"}) == doctest::Approx(2.0 / 3).epsilon(1e-9));
  CHECK(p.entropy({"S2"}, {"S1"}) == doctest::Approx(2.0 / 3).epsilon(1e-9));
}

TEST_CASE("side-information variant: conditional entropies and Markov") {
  JointPmf p = cover_salehi_w1();
  const double h13 = hbin(1.0 / 3);
  // W1=0 pins S1; W1=1 leaves S1 ~ Bernoulli(2/3): H = h(1/3)/2.
  CHECK(p.entropy({"S1"}, {"W1"}) == doctest::Approx(0.5 * h13).epsilon(1e-9));
  CHECK(p.entropy({"S2"}, {"W1"}) == doctest::Approx(0.5 * h13).epsilon(1e-9));
  CHECK(p.entropy({"S1", "S2"}, {"W1"}) == doctest::Approx(h13).epsilon(1e-9));
  // Six-decimal freezes used across the suite.
  CHECK(p.entropy({"S1"}, {"W1"}) == doctest::Approx(0.459148).epsilon(1e-5));
  CHECK(p.entropy({"S1", "S2"}, {"W1"}) ==
        doctest::Approx(0.918296).epsilon(1e-5));
  // The (S1,S2) marginal is the correlated pair above.
  JointPmf marg = p.marginal({"S1", "S2"});
  CHECK(marg.prob({0, 0}) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(marg.prob({1, 0}) == doctest::Approx(0.0));
  CHECK(marg.entropy({"S1", "S2"}) ==
        doctest::Approx(std::log2(3.0)).epsilon(1e-9));
}

TEST_CASE("mutual information basics") {
  JointPmf p = cover_salehi();
  // I(S1;S2) = H(S1) - H(S1|S2).
  double h13 = hbin(1.0 / 3);
  CHECK(p.mutual_information({"S1"}, {"S2"}) ==
        doctest::Approx(h13 - 2.0 / 3).epsilon(1e-9));
  // Independent pair: zero.
  JointPmf ind({"A", "B"}, {2, 2}, {0.5 * 0.3, 0.5 * 0.7, 0.5 * 0.3, 0.5 * 0.7});
  CHECK(ind.mutual_information({"A"}, {"B"}) == doctest::Approx(0.0).epsilon(1e-12));
  // Identical variables: I(A;B) = H(A).
  JointPmf eq({"A", "B"}, {2, 2}, {0.4, 0.0, 0.0, 0.6});
  CHECK(eq.mutual_information({"A"}, {"B"}) ==
        doctest::Approx(hbin(0.4)).epsilon(1e-9));
}

TEST_CASE("randomized entropy identities") {
  Rng rng(20260815);
  for (int it = 0; it < 50; ++it) {
    JointPmf p = random_joint(rng, {"A", "B", "C"}, {2, 3, 2});
    double ha = p.entropy({"A"});
    double hab = p.entropy({"A"}, {"B"});
    // Bounds.
    CHECK(hab >= -1e-12);
    CHECK(hab <= ha + 1e-9);
    // Chain rule H(A,B) = H(A) + H(B|A).
    CHECK(p.entropy({"A", "B"}) ==
          doctest::Approx(ha + p.entropy({"B"}, {"A"})).epsilon(1e-9));
    // Conditional chain rule given C.
    CHECK(p.entropy({"A", "B"}, {"C"}) ==
          doctest::Approx(p.entropy({"A"}, {"C"}) +
                          p.entropy({"B"}, {"A", "C"}))
              .epsilon(1e-9));
    // MI nonnegativity and chain rule I(A,B;C) = I(A;C) + I(B;C|A).
    CHECK(p.mutual_information({"A"}, {"C"}) >= -1e-12);
    CHECK(p.mutual_information({"A", "B"}, {"C"}) ==
          doctest::Approx(p.mutual_information({"A"}, {"C"}) +
                          p.mutual_information({"B"}, {"C"}, {"A"}))
              .epsilon(1e-9));
    // I(A;C) = H(A) - H(A|C).
    CHECK(p.mutual_information({"A"}, {"C"}) ==
          doctest::Approx(ha - p.entropy({"A"}, {"C"})).epsilon(1e-9));
  }
}

TEST_CASE("flat index round trip and marginals") {
  JointPmf p = cover_salehi_w1();
  std::vector<std::size_t> sym(3);
  for (std::size_t f = 0; f < p.size(); ++f) {
    p.unflatten(f, sym);
    CHECK(p.flat_index(sym) == f);
  }
  // Marginal ordering follows the `keep` argument.
  JointPmf m = p.marginal({"W1", "S1"});
  CHECK(m.variables() == std::vector<std::string>{"W1", "S1"});
  // P(W1=0, S1=0) = 1/3 + 1/6 = 1/2.
  CHECK(m.prob({0, 0}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.prob({0, 1}) == doctest::Approx(0.0));
}

TEST_CASE("derived variables relabel deterministically") {
  JointPmf p = cover_salehi();
  // U = S1 (identity map) keeps entropies.
  JointPmf with_u = p.with_derived_variable("U", 2, "S1", {0, 1});
  CHECK(with_u.entropy({"U"}) == doctest::Approx(p.entropy({"S1"})).epsilon(1e-12));
  CHECK(with_u.entropy({"S1"}, {"U"}) == doctest::Approx(0.0).epsilon(1e-12));
  // Constant map gives a zero-entropy variable.
  JointPmf with_c = p.with_derived_variable("C", 1, "S2", {0, 0});
  CHECK(with_c.entropy({"C"}) == doctest::Approx(0.0));
}

TEST_CASE("validation rejects malformed tables") {
  CHECK_THROWS_AS(JointPmf({"A"}, {2}, {0.6, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(JointPmf({"A"}, {2}, {1.2, -0.2}), std::invalid_argument);
  CHECK_THROWS_AS(JointPmf({"A"}, {2}, {0.5, 0.25, 0.25}),
                  std::invalid_argument);
  CHECK_THROWS_AS(JointPmf({"A", "A"}, {2, 2}, {0.25, 0.25, 0.25, 0.25}),
                  std::invalid_argument);
  JointPmf ok({"A"}, {2}, {0.5, 0.5});
  CHECK_THROWS_AS(ok.entropy({"NOPE"}), std::invalid_argument);
}
