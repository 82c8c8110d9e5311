// Discrete memoryless two-sender channel models (single receiver, compound /
// two-receiver, two-way, and interference channels without cross-sender
// interference), plus channel input distributions and mutual-information
// queries.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jscc/pmf.hpp"

namespace jscc {

enum class ChannelKind { mac, compound, two_way, no_mai };

std::string to_string(ChannelKind k);
ChannelKind channel_kind_from_string(const std::string& s);

// For kind == no_mai, each receiver k observes a pair (Y_{1,k}, Y_{2,k})
// where Y_{j,k} depends only on sender j's input.  The composite output at
// receiver k is indexed row-major as y_k = y_{1,k} * card(Y_{2,k}) + y_{2,k}.
struct NoMaiShape {
  std::size_t y11 = 0, y21 = 0;  // cards of (Y_{1,1}, Y_{2,1}) at receiver 1
  std::size_t y12 = 0, y22 = 0;  // cards of (Y_{1,2}, Y_{2,2}) at receiver 2
};

class ChannelModel {
 public:
  ChannelModel() = default;
  // `table` is row-major over (x1, x2, y1[, y2]); each (x1, x2) row must sum
  // to one within kSumTol.  `y_cards` has one entry per receiver (1 or 2).
  ChannelModel(ChannelKind kind, std::size_t x1_card, std::size_t x2_card,
               std::vector<std::size_t> y_cards, std::vector<double> table,
               std::optional<NoMaiShape> shape = std::nullopt);

  ChannelKind kind() const { return kind_; }
  std::size_t x1_card() const { return x1_card_; }
  std::size_t x2_card() const { return x2_card_; }
  std::size_t receivers() const { return y_cards_.size(); }
  std::size_t y_card(std::size_t receiver) const;  // receiver is 1-based
  const std::vector<double>& table() const { return table_; }
  const std::optional<NoMaiShape>& no_mai_shape() const { return shape_; }

  // P(y1[, y2] | x1, x2); y2 ignored for single-receiver channels.
  double prob(std::size_t x1, std::size_t x2, std::size_t y1,
              std::size_t y2 = 0) const;

  // Per-receiver transition table P(y_k | x1, x2), row-major (x1, x2, yk).
  std::vector<double> receiver_table(std::size_t receiver) const;

  // Largest per-cell deviation from the product form
  // p(y1,y2|x1,x2) = p(y11,y12|x1) p(y21,y22|x2); meaningful only when a
  // NoMaiShape is present.
  double no_mai_factorization_deviation() const;

 private:
  ChannelKind kind_ = ChannelKind::mac;
  std::size_t x1_card_ = 0, x2_card_ = 0;
  std::vector<std::size_t> y_cards_;
  std::vector<double> table_;
  std::optional<NoMaiShape> shape_;
};

// Channel input distribution p(q) p(x1|q, s1) p(x2|q, s2) with a finite
// time-sharing variable Q.  In the plain (not source-conditioned) mode the
// rows do not depend on the source symbols (s1_states == s2_states == 1).
struct ProductInput {
  std::vector<double> q_weights;            // |Q| entries
  std::vector<std::vector<double>> cond1;   // q_weights.size()*s1_states rows over X1
  std::vector<std::vector<double>> cond2;   // q_weights.size()*s2_states rows over X2
  bool source_conditioned = false;
  std::size_t s1_states = 1;
  std::size_t s2_states = 1;

  std::size_t q_card() const { return q_weights.size(); }
  const std::vector<double>& row1(std::size_t q, std::size_t s1 = 0) const {
    return cond1[q * s1_states + s1];
  }
  const std::vector<double>& row2(std::size_t q, std::size_t s2 = 0) const {
    return cond2[q * s2_states + s2];
  }

  void validate(std::size_t x1_card, std::size_t x2_card,
                std::size_t max_q = 4) const;

  static ProductInput uniform(std::size_t x1_card, std::size_t x2_card);
  static ProductInput from_marginals(std::vector<double> p1,
                                     std::vector<double> p2);
  // Deterministic identity mapping x_k = s_k (requires |X_k| >= s_states).
  static ProductInput identity_map(std::size_t s1_states, std::size_t x1_card,
                                   std::size_t s2_states, std::size_t x2_card);
};

// Precomputed per-receiver view for fast rate evaluation.
class ReceiverView {
 public:
  ReceiverView(const ChannelModel& channel, std::size_t receiver);

  std::size_t x1_card() const { return x1_; }
  std::size_t x2_card() const { return x2_; }
  std::size_t y_card() const { return y_; }

  // (I(X1;Y|X2), I(X2;Y|X1), I(X1,X2;Y)) in bits at the product input
  // p1 x p2.  Outputs are clamped at 0 to absorb tiny negative round-off.
  void rate_triple(const std::vector<double>& p1, const std::vector<double>& p2,
                   double out[3]) const;

  // I(X1,X2;Y) at a joint input p(x1,x2) (row-major over (x1,x2)).
  double joint_mutual_information(const std::vector<double>& pj) const;

  const std::vector<double>& table() const { return t_; }

 private:
  std::size_t x1_ = 0, x2_ = 0, y_ = 0;
  std::vector<double> t_;       // P(y|x1,x2), row-major (x1,x2,y)
  std::vector<double> row_h_;   // H(Y|x1,x2) per (x1,x2)
};

enum class MutualExpr { user1_given_other, user2_given_other, joint };

// I(X1;Yk|X2,Q), I(X2;Yk|X1,Q) or I(X1,X2;Yk|Q) for a plain product input.
double mutual_info(const ChannelModel& channel, const ProductInput& input,
                   MutualExpr expr, std::size_t receiver = 1);

// Joint pmf over (Q, <source variables>, X1, X2, Y1[, Y2]) induced by
// source, input and channel.  Source variables must include S1 and S2; the
// input's source conditioning (if any) is driven by S1 and S2.
JointPmf assemble_system_joint(const JointPmf& source,
                               const ChannelModel& channel,
                               const ProductInput& input);

}  // namespace jscc
