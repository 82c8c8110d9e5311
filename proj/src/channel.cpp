#include "jscc/channel.hpp"

#include <algorithm>
#include <cmath>

namespace jscc {

std::string to_string(ChannelKind k) {
  switch (k) {
    case ChannelKind::mac: return "mac";
    case ChannelKind::compound: return "compound";
    case ChannelKind::two_way: return "two-way";
    case ChannelKind::no_mai: return "no-mai";
  }
  return "?";
}

ChannelKind channel_kind_from_string(const std::string& s) {
  if (s == "mac") return ChannelKind::mac;
  if (s == "compound") return ChannelKind::compound;
  if (s == "two-way") return ChannelKind::two_way;
  if (s == "no-mai") return ChannelKind::no_mai;
  throw std::invalid_argument("unknown channel kind '" + s + "'");
}

ChannelModel::ChannelModel(ChannelKind kind, std::size_t x1_card,
                           std::size_t x2_card,
                           std::vector<std::size_t> y_cards,
                           std::vector<double> table,
                           std::optional<NoMaiShape> shape)
    : kind_(kind),
      x1_card_(x1_card),
      x2_card_(x2_card),
      y_cards_(std::move(y_cards)),
      table_(std::move(table)),
      shape_(std::move(shape)) {
  if (x1_card_ == 0 || x2_card_ == 0)
    throw std::invalid_argument("channel: zero input cardinality");
  if (y_cards_.empty() || y_cards_.size() > 2)
    throw std::invalid_argument("channel: need 1 or 2 receivers");
  for (std::size_t c : y_cards_)
    if (c == 0) throw std::invalid_argument("channel: zero output cardinality");
  if (kind_ != ChannelKind::mac && y_cards_.size() != 2)
    throw std::invalid_argument("channel: kind '" + to_string(kind_) +
                                "' requires two receiver outputs");
  if (kind_ == ChannelKind::mac && y_cards_.size() != 1)
    throw std::invalid_argument("channel: kind 'mac' has a single receiver");

  std::size_t rows = x1_card_ * x2_card_;
  std::size_t cols = 1;
  for (std::size_t c : y_cards_) cols *= c;
  if (table_.size() != rows * cols)
    throw std::invalid_argument("channel: table size mismatch");
  for (std::size_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      double v = table_[r * cols + c];
      if (v < -kSumTol)
        throw std::invalid_argument("channel: negative transition probability");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTol)
      throw std::invalid_argument("channel: transition row sums to " +
                                  std::to_string(sum));
  }

  if (kind_ == ChannelKind::no_mai) {
    if (!shape_)
      throw std::invalid_argument("channel: kind 'no-mai' requires a shape");
    if (shape_->y11 * shape_->y21 != y_cards_[0] ||
        shape_->y12 * shape_->y22 != y_cards_[1])
      throw std::invalid_argument("channel: no-mai shape does not match output cards");
    double dev = no_mai_factorization_deviation();
    if (dev > kSumTol)
      throw std::invalid_argument(
          "channel: table does not factorize per sender (deviation " +
          std::to_string(dev) + ")");
  }
}

std::size_t ChannelModel::y_card(std::size_t receiver) const {
  if (receiver == 0 || receiver > y_cards_.size())
    throw std::invalid_argument("channel: invalid receiver index");
  return y_cards_[receiver - 1];
}

double ChannelModel::prob(std::size_t x1, std::size_t x2, std::size_t y1,
                          std::size_t y2) const {
  std::size_t idx = (x1 * x2_card_ + x2) * y_cards_[0] + y1;
  if (y_cards_.size() == 2) idx = idx * y_cards_[1] + y2;
  return table_[idx];
}

std::vector<double> ChannelModel::receiver_table(std::size_t receiver) const {
  std::size_t yk = y_card(receiver);
  std::vector<double> out(x1_card_ * x2_card_ * yk, 0.0);
  std::size_t y1c = y_cards_[0];
  std::size_t y2c = y_cards_.size() == 2 ? y_cards_[1] : 1;
  for (std::size_t x1 = 0; x1 < x1_card_; ++x1)
    for (std::size_t x2 = 0; x2 < x2_card_; ++x2)
      for (std::size_t y1 = 0; y1 < y1c; ++y1)
        for (std::size_t y2 = 0; y2 < y2c; ++y2) {
          std::size_t y = receiver == 1 ? y1 : y2;
          out[(x1 * x2_card_ + x2) * yk + y] += prob(x1, x2, y1, y2);
        }
  return out;
}

double ChannelModel::no_mai_factorization_deviation() const {
  if (!shape_) return std::numeric_limits<double>::infinity();
  const NoMaiShape& s = *shape_;
  // Candidate factors from marginalization at x2 = 0 (resp. x1 = 0);
  // verification against every (x1, x2) cell then covers dependence on the
  // other sender as well.
  auto joint = [&](std::size_t x1, std::size_t x2, std::size_t a, std::size_t b,
                   std::size_t c, std::size_t d) {
    // a=y11, b=y21 at receiver 1; c=y12, d=y22 at receiver 2.
    return prob(x1, x2, a * s.y21 + b, c * s.y22 + d);
  };
  std::vector<double> f1(x1_card_ * s.y11 * s.y12, 0.0);  // p(y11,y12|x1)
  for (std::size_t x1 = 0; x1 < x1_card_; ++x1)
    for (std::size_t a = 0; a < s.y11; ++a)
      for (std::size_t c = 0; c < s.y12; ++c) {
        double v = 0.0;
        for (std::size_t b = 0; b < s.y21; ++b)
          for (std::size_t d = 0; d < s.y22; ++d) v += joint(x1, 0, a, b, c, d);
        f1[(x1 * s.y11 + a) * s.y12 + c] = v;
      }
  std::vector<double> f2(x2_card_ * s.y21 * s.y22, 0.0);  // p(y21,y22|x2)
  for (std::size_t x2 = 0; x2 < x2_card_; ++x2)
    for (std::size_t b = 0; b < s.y21; ++b)
      for (std::size_t d = 0; d < s.y22; ++d) {
        double v = 0.0;
        for (std::size_t a = 0; a < s.y11; ++a)
          for (std::size_t c = 0; c < s.y12; ++c) v += joint(0, x2, a, b, c, d);
        f2[(x2 * s.y21 + b) * s.y22 + d] = v;
      }
  double worst = 0.0;
  for (std::size_t x1 = 0; x1 < x1_card_; ++x1)
    for (std::size_t x2 = 0; x2 < x2_card_; ++x2)
      for (std::size_t a = 0; a < s.y11; ++a)
        for (std::size_t b = 0; b < s.y21; ++b)
          for (std::size_t c = 0; c < s.y12; ++c)
            for (std::size_t d = 0; d < s.y22; ++d) {
              double lhs = joint(x1, x2, a, b, c, d);
              double rhs = f1[(x1 * s.y11 + a) * s.y12 + c] *
                           f2[(x2 * s.y21 + b) * s.y22 + d];
              worst = std::max(worst, std::abs(lhs - rhs));
            }
  return worst;
}

void ProductInput::validate(std::size_t x1_card, std::size_t x2_card,
                            std::size_t max_q) const {
  if (q_weights.empty()) throw std::invalid_argument("input: empty Q");
  if (q_weights.size() > max_q)
    throw std::invalid_argument("input: |Q| = " +
                                std::to_string(q_weights.size()) +
                                " exceeds bound " + std::to_string(max_q));
  double sum = 0.0;
  for (double w : q_weights) {
    if (w < -kSumTol) throw std::invalid_argument("input: negative q weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSumTol)
    throw std::invalid_argument("input: q weights sum to " + std::to_string(sum));
  if (cond1.size() != q_weights.size() * s1_states ||
      cond2.size() != q_weights.size() * s2_states)
    throw std::invalid_argument("input: conditional row count mismatch");
  auto check_rows = [](const std::vector<std::vector<double>>& rows,
                       std::size_t card, const char* who) {
    for (const auto& r : rows) {
      if (r.size() != card)
        throw std::invalid_argument(std::string("input: ") + who +
                                    " row length mismatch");
      double s = 0.0;
      for (double v : r) {
        if (v < -kSumTol)
          throw std::invalid_argument(std::string("input: negative entry in ") + who);
        s += v;
      }
      if (std::abs(s - 1.0) > kSumTol)
        throw std::invalid_argument(std::string("input: ") + who +
                                    " row sums to " + std::to_string(s));
    }
  };
  check_rows(cond1, x1_card, "cond1");
  check_rows(cond2, x2_card, "cond2");
  if (!source_conditioned && (s1_states != 1 || s2_states != 1))
    throw std::invalid_argument("input: source states present without flag");
}

ProductInput ProductInput::uniform(std::size_t x1_card, std::size_t x2_card) {
  return from_marginals(std::vector<double>(x1_card, 1.0 / double(x1_card)),
                        std::vector<double>(x2_card, 1.0 / double(x2_card)));
}

ProductInput ProductInput::from_marginals(std::vector<double> p1,
                                          std::vector<double> p2) {
  ProductInput in;
  in.q_weights = {1.0};
  in.cond1 = {std::move(p1)};
  in.cond2 = {std::move(p2)};
  return in;
}

ProductInput ProductInput::identity_map(std::size_t s1_states,
                                        std::size_t x1_card,
                                        std::size_t s2_states,
                                        std::size_t x2_card) {
  if (x1_card < s1_states || x2_card < s2_states)
    throw std::invalid_argument("identity map: input alphabet smaller than source");
  ProductInput in;
  in.q_weights = {1.0};
  in.source_conditioned = true;
  in.s1_states = s1_states;
  in.s2_states = s2_states;
  for (std::size_t s = 0; s < s1_states; ++s) {
    std::vector<double> row(x1_card, 0.0);
    row[s] = 1.0;
    in.cond1.push_back(std::move(row));
  }
  for (std::size_t s = 0; s < s2_states; ++s) {
    std::vector<double> row(x2_card, 0.0);
    row[s] = 1.0;
    in.cond2.push_back(std::move(row));
  }
  return in;
}

ReceiverView::ReceiverView(const ChannelModel& channel, std::size_t receiver)
    : x1_(channel.x1_card()),
      x2_(channel.x2_card()),
      y_(channel.y_card(receiver)),
      t_(channel.receiver_table(receiver)) {
  row_h_.resize(x1_ * x2_);
  for (std::size_t r = 0; r < x1_ * x2_; ++r) {
    double h = 0.0;
    for (std::size_t y = 0; y < y_; ++y) {
      double v = t_[r * y_ + y];
      if (v > kProbEps) h -= v * std::log2(v);
    }
    row_h_[r] = h;
  }
}

void ReceiverView::rate_triple(const std::vector<double>& p1,
                               const std::vector<double>& p2,
                               double out[3]) const {
  // H(Y|X1,X2) and the three output mixtures in one pass.
  double h_y_given_x1x2 = 0.0;
  std::vector<double> py(y_, 0.0);          // p(y)
  std::vector<double> py_x1(x1_ * y_, 0.0); // p(y|x1) rows
  std::vector<double> py_x2(x2_ * y_, 0.0); // p(y|x2) rows
  for (std::size_t a = 0; a < x1_; ++a) {
    double w1 = p1[a];
    if (w1 <= 0.0) continue;
    for (std::size_t b = 0; b < x2_; ++b) {
      double w = w1 * p2[b];
      if (w <= 0.0) continue;
      std::size_t r = a * x2_ + b;
      h_y_given_x1x2 += w * row_h_[r];
      const double* row = &t_[r * y_];
      for (std::size_t y = 0; y < y_; ++y) {
        double v = w * row[y];
        py[y] += v;
        py_x1[a * y_ + y] += p2[b] * row[y];
        py_x2[b * y_ + y] += w1 * row[y];
      }
    }
  }
  double h_y = entropy_of_table(py);
  double h_y_x1 = 0.0;
  for (std::size_t a = 0; a < x1_; ++a) {
    if (p1[a] <= 0.0) continue;
    double h = 0.0;
    for (std::size_t y = 0; y < y_; ++y) {
      double v = py_x1[a * y_ + y];
      if (v > kProbEps) h -= v * std::log2(v);
    }
    h_y_x1 += p1[a] * h;
  }
  double h_y_x2 = 0.0;
  for (std::size_t b = 0; b < x2_; ++b) {
    if (p2[b] <= 0.0) continue;
    double h = 0.0;
    for (std::size_t y = 0; y < y_; ++y) {
      double v = py_x2[b * y_ + y];
      if (v > kProbEps) h -= v * std::log2(v);
    }
    h_y_x2 += p2[b] * h;
  }
  out[0] = std::max(0.0, h_y_x2 - h_y_given_x1x2);  // I(X1;Y|X2)
  out[1] = std::max(0.0, h_y_x1 - h_y_given_x1x2);  // I(X2;Y|X1)
  out[2] = std::max(0.0, h_y - h_y_given_x1x2);     // I(X1,X2;Y)
}

double ReceiverView::joint_mutual_information(
    const std::vector<double>& pj) const {
  double h_cond = 0.0;
  std::vector<double> py(y_, 0.0);
  for (std::size_t r = 0; r < x1_ * x2_; ++r) {
    double w = pj[r];
    if (w <= 0.0) continue;
    h_cond += w * row_h_[r];
    for (std::size_t y = 0; y < y_; ++y) py[y] += w * t_[r * y_ + y];
  }
  return std::max(0.0, entropy_of_table(py) - h_cond);
}

double mutual_info(const ChannelModel& channel, const ProductInput& input,
                   MutualExpr expr, std::size_t receiver) {
  if (input.source_conditioned)
    throw std::invalid_argument(
        "mutual_info: source-conditioned inputs require a source joint; "
        "use assemble_system_joint");
  input.validate(channel.x1_card(), channel.x2_card(),
                 std::max<std::size_t>(4, input.q_card()));
  ReceiverView view(channel, receiver);
  double acc = 0.0;
  double triple[3];
  for (std::size_t q = 0; q < input.q_card(); ++q) {
    if (input.q_weights[q] <= 0.0) continue;
    view.rate_triple(input.row1(q), input.row2(q), triple);
    switch (expr) {
      case MutualExpr::user1_given_other: acc += input.q_weights[q] * triple[0]; break;
      case MutualExpr::user2_given_other: acc += input.q_weights[q] * triple[1]; break;
      case MutualExpr::joint: acc += input.q_weights[q] * triple[2]; break;
    }
  }
  return acc;
}

JointPmf assemble_system_joint(const JointPmf& source,
                               const ChannelModel& channel,
                               const ProductInput& input) {
  if (!source.has_variable("S1") || !source.has_variable("S2"))
    throw std::invalid_argument("system joint: source must contain S1 and S2");
  std::size_t s1_card = source.card("S1");
  std::size_t s2_card = source.card("S2");
  if (input.source_conditioned &&
      (input.s1_states != s1_card || input.s2_states != s2_card))
    throw std::invalid_argument("system joint: input source states mismatch");

  std::vector<std::string> vars = {"Q"};
  std::vector<std::size_t> cards = {input.q_card()};
  for (std::size_t i = 0; i < source.variables().size(); ++i) {
    vars.push_back(source.variables()[i]);
    cards.push_back(source.cards()[i]);
  }
  vars.push_back("X1");
  cards.push_back(channel.x1_card());
  vars.push_back("X2");
  cards.push_back(channel.x2_card());
  vars.push_back("Y1");
  cards.push_back(channel.y_card(1));
  if (channel.receivers() == 2) {
    vars.push_back("Y2");
    cards.push_back(channel.y_card(2));
  }

  std::size_t total = 1;
  for (std::size_t c : cards) total *= c;
  std::vector<double> table(total, 0.0);

  std::size_t s1_pos = source.index_of("S1");
  std::size_t s2_pos = source.index_of("S2");
  std::size_t n_src = source.size();
  std::size_t y1c = channel.y_card(1);
  std::size_t y2c = channel.receivers() == 2 ? channel.y_card(2) : 1;

  std::vector<std::size_t> ssym;
  for (std::size_t q = 0; q < input.q_card(); ++q) {
    double wq = input.q_weights[q];
    if (wq <= 0.0) continue;
    for (std::size_t sflat = 0; sflat < n_src; ++sflat) {
      double ps = source.table()[sflat];
      if (ps <= 0.0) continue;
      source.unflatten(sflat, ssym);
      std::size_t s1 = ssym[s1_pos], s2 = ssym[s2_pos];
      const auto& r1 = input.source_conditioned ? input.row1(q, s1) : input.row1(q);
      const auto& r2 = input.source_conditioned ? input.row2(q, s2) : input.row2(q);
      for (std::size_t x1 = 0; x1 < channel.x1_card(); ++x1) {
        if (r1[x1] <= 0.0) continue;
        for (std::size_t x2 = 0; x2 < channel.x2_card(); ++x2) {
          if (r2[x2] <= 0.0) continue;
          double base = wq * ps * r1[x1] * r2[x2];
          for (std::size_t y1 = 0; y1 < y1c; ++y1)
            for (std::size_t y2 = 0; y2 < y2c; ++y2) {
              double pc = channel.prob(x1, x2, y1, y2);
              if (pc <= 0.0) continue;
              std::size_t idx = q;
              idx = idx * n_src + sflat;
              idx = idx * channel.x1_card() + x1;
              idx = idx * channel.x2_card() + x2;
              idx = idx * y1c + y1;
              if (channel.receivers() == 2) idx = idx * y2c + y2;
              table[idx] += base * pc;
            }
        }
      }
    }
  }
  // The source block enumerates its own variables contiguously, so the flat
  // layout above matches the row-major order of `vars`.
  return JointPmf(std::move(vars), std::move(cards), std::move(table));
}

}  // namespace jscc
