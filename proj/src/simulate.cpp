#include "jscc/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "jscc/criteria.hpp"  // side_vars
#include "jscc/rng.hpp"
#include "jscc/typicality.hpp"

namespace jscc {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);
constexpr std::size_t kMulti = static_cast<std::size_t>(-2);

std::size_t bits_for(std::size_t card) {
  std::size_t b = 1;
  while ((std::size_t(1) << b) < card) ++b;
  return b;
}

// Pack a word into a 64-bit key (caller guarantees len * bits <= 64).
std::uint64_t pack_word(const std::size_t* w, std::size_t len,
                        std::size_t bits) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < len; ++i)
    key = (key << bits) | std::uint64_t(w[i]);
  return key;
}

// Per-cell count bounds equivalent to strong typicality with slack `d`:
// cells with p <= kProbEps must stay at zero; otherwise
// |count/n - p| <= d.  Bounds are precomputed so sequence tests can abort as
// soon as a cell overflows.
struct CountTest {
  std::vector<long> cmin, cmax;
  std::size_t n = 0;

  void init(const std::vector<double>& pmf, std::size_t len, double d) {
    n = len;
    cmin.assign(pmf.size(), 0);
    cmax.assign(pmf.size(), 0);
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      if (pmf[i] <= kProbEps) continue;  // cmin = cmax = 0
      double lo = (pmf[i] - d) * double(len);
      double hi = (pmf[i] + d) * double(len);
      cmin[i] = std::max(0L, long(std::ceil(lo - 1e-9)));
      cmax[i] = long(std::floor(hi + 1e-9));
    }
  }

  bool check_counts(const std::vector<long>& counts) const {
    for (std::size_t i = 0; i < counts.size(); ++i)
      if (counts[i] < cmin[i] || counts[i] > cmax[i]) return false;
    return true;
  }

  // Pair test over composite symbols a_i * cb + b_i, aborting on overflow.
  bool pair(const std::size_t* a, const std::size_t* b, std::size_t cb,
            std::vector<long>& scratch) const {
    scratch.assign(cmax.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t idx = a[i] * cb + b[i];
      if (++scratch[idx] > cmax[idx]) return false;
    }
    return check_counts(scratch);
  }

  // Triple test over ((a_i * cb) + b_i) * cc + c_i.
  bool triple(const std::size_t* a, const std::size_t* b,
              const std::size_t* c, std::size_t cb, std::size_t cc,
              std::vector<long>& scratch) const {
    scratch.assign(cmax.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t idx = (a[i] * cb + b[i]) * cc + c[i];
      if (++scratch[idx] > cmax[idx]) return false;
    }
    return check_counts(scratch);
  }
};

void validate_pmf_arg(std::vector<double>& p, std::size_t card,
                      const char* who) {
  if (p.empty()) {
    p.assign(card, 1.0 / double(card));
    return;
  }
  if (p.size() != card)
    throw std::invalid_argument(std::string("simulate: ") + who +
                                " length mismatch");
  double s = 0.0;
  for (double v : p) {
    if (v < -kSumTol)
      throw std::invalid_argument(std::string("simulate: negative ") + who);
    s += v;
  }
  if (std::abs(s - 1.0) > kSumTol)
    throw std::invalid_argument(std::string("simulate: ") + who +
                                " does not sum to 1");
}

void validate_common(const SimConfig& cfg, double delta, double gamma) {
  if (cfg.m < 1) throw std::invalid_argument("simulate: m must be >= 1");
  if (cfg.trials < 1)
    throw std::invalid_argument("simulate: trials must be >= 1");
  if (delta <= 0.0 || delta >= 1.0 || gamma <= 0.0 || gamma >= 1.0)
    throw std::invalid_argument(
        "simulate: typicality slacks must lie in (0, 1)");
}

// Source sampling context: one flat draw per position, expanded into the
// per-variable words that the schemes need.
struct SourceSampler {
  const JointPmf* joint;
  std::size_t s1_pos = 0, s2_pos = 0;
  std::vector<std::size_t> side_pos;  // one entry per receiver (kNone if absent)

  void draw(Rng& rng, std::size_t m, Seq& s1, Seq& s2,
            std::vector<Seq>& sides) const {
    s1.resize(m);
    s2.resize(m);
    for (auto& w : sides) w.resize(m);
    std::vector<std::size_t> sym(joint->variables().size());
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t flat = rng.sample(joint->table());
      joint->unflatten(flat, sym);
      s1[i] = sym[s1_pos];
      s2[i] = sym[s2_pos];
      for (std::size_t k = 0; k < side_pos.size(); ++k)
        if (side_pos[k] != kNone) sides[k][i] = sym[side_pos[k]];
    }
  }
};

SourceSampler make_sampler(const JointPmf& source, std::size_t receivers) {
  SourceSampler s;
  s.joint = &source;
  s.s1_pos = source.index_of("S1");
  s.s2_pos = source.index_of("S2");
  for (std::size_t k = 1; k <= receivers; ++k) {
    std::vector<std::string> side = side_vars(source, k);
    s.side_pos.push_back(side.empty() ? kNone : source.index_of(side[0]));
  }
  return s;
}

// Draw `count` i.i.d. words of length `len` from pmf into a flat buffer.
void draw_words(Rng& rng, const std::vector<double>& pmf, std::size_t count,
                std::size_t len, std::vector<std::size_t>& out) {
  out.resize(count * len);
  for (std::size_t i = 0; i < count * len; ++i) out[i] = rng.sample(pmf);
}

// Forcing table: for every composite (a, context) cell, the unique partner
// symbol with positive probability, or kNone / kMulti.  Layout row-major
// over (a, context); the partner is the middle variable of a pmf laid out
// (a, partner, context).
struct ForceTable {
  std::vector<std::size_t> forced;  // (a * ctx_card + ctx) -> partner
  bool usable = false;              // no kMulti among supported cells
};

ForceTable make_force_table(const std::vector<double>& pmf, std::size_t ca,
                            std::size_t cp, std::size_t cc) {
  ForceTable t;
  t.forced.assign(ca * cc, kNone);
  t.usable = true;
  for (std::size_t a = 0; a < ca; ++a)
    for (std::size_t p = 0; p < cp; ++p)
      for (std::size_t c = 0; c < cc; ++c) {
        if (pmf[(a * cp + p) * cc + c] <= kProbEps) continue;
        std::size_t& slot = t.forced[a * cc + c];
        if (slot == kNone)
          slot = p;
        else if (slot != p) {
          slot = kMulti;
          t.usable = false;
        }
      }
  return t;
}

}  // namespace

std::size_t SimConfig::n() const {
  if (m < 1) throw std::invalid_argument("simulate: m must be >= 1");
  long long nn = std::llround(b * double(m));
  if (nn < 1)
    throw std::invalid_argument("simulate: n = round(b*m) must be >= 1");
  return std::size_t(nn);
}

double SimConfig::delta_for_n(std::size_t len) const {
  if (typicality.delta > 0.0) return typicality.delta;
  return std::min(0.99, typicality.scale_c / std::sqrt(double(len)));
}

double SimConfig::gamma_for_m() const {
  if (typicality.gamma > 0.0) return typicality.gamma;
  return std::min(0.99, typicality.scale_c / std::sqrt(double(m)));
}

SimResult run_matched_scheme(const JointPmf& source,
                             const ChannelModel& channel,
                             const SimConfig& cfg) {
  auto t_start = std::chrono::steady_clock::now();
  if (channel.kind() == ChannelKind::two_way)
    throw std::invalid_argument(
        "simulate: matched scheme does not apply to two-way channels");
  if (!source.has_variable("S1") || !source.has_variable("S2"))
    throw std::invalid_argument("simulate: source must contain S1 and S2");

  const std::size_t m = cfg.m, n = cfg.n();
  const double gamma = cfg.gamma_for_m();
  const double delta = cfg.delta_for_n(n);
  validate_common(cfg, delta, gamma);

  const std::size_t s1c = source.card("S1"), s2c = source.card("S2");
  const std::size_t x1c = channel.x1_card(), x2c = channel.x2_card();
  const std::size_t nrec = channel.receivers();

  JointPmf ms1 = source.marginal({"S1"});
  JointPmf ms2 = source.marginal({"S2"});
  const double h1 = ms1.entropy({"S1"});
  const double h2 = ms2.entropy({"S2"});
  auto codebook_size = [&](double h) {
    double v = std::ceil(std::exp2(double(m) * (h + cfg.epsilon / 2.0)));
    return std::size_t(v);
  };
  const std::size_t M1 = std::max<std::size_t>(1, codebook_size(h1));
  const std::size_t M2 = std::max<std::size_t>(1, codebook_size(h2));
  if (M1 > cfg.codebook_cap || M2 > cfg.codebook_cap)
    throw std::invalid_argument(
        "simulate: codebook size 2^{m(H+eps/2)} exceeds the cap; lower m or "
        "epsilon");

  std::vector<double> px1 = cfg.px1, px2 = cfg.px2;
  validate_pmf_arg(px1, x1c, "px1");
  validate_pmf_arg(px2, x2c, "px2");

  const std::size_t sbits1 = bits_for(s1c), sbits2 = bits_for(s2c);
  if (m * std::max(sbits1, sbits2) > 64)
    throw std::invalid_argument(
        "simulate: source block too long for decoder bookkeeping (word keys "
        "must fit 64 bits)");

  // Per-receiver precomputation.
  struct RecCtx {
    std::size_t wc = 1;                // side alphabet (1 = absent)
    std::vector<double> trip_pmf;      // p(s1, s2, w)
    std::vector<double> marg1, marg2;  // p(s1, w), p(s2, w)
    CountTest src_full, src_pre1, src_pre2;
    ForceTable force_s2;                     // (s1, w) -> s2
    std::vector<double> chan_pmf;            // p(x1, x2, y)
    std::vector<double> chan_m1, chan_m2;    // p(x1, y), p(x2, y)
    CountTest ch_full, ch_pre1, ch_pre2;
    ForceTable force_x2;  // (x1, y) -> x2
    std::size_t yc = 0;
  };
  std::vector<RecCtx> recs(nrec);
  for (std::size_t k = 0; k < nrec; ++k) {
    RecCtx& rc = recs[k];
    std::vector<std::string> side = side_vars(source, k + 1);
    std::vector<std::string> trip = {"S1", "S2"};
    trip.insert(trip.end(), side.begin(), side.end());
    JointPmf mt = source.marginal(trip);
    rc.wc = side.empty() ? 1 : source.card(side[0]);
    rc.trip_pmf = mt.table();
    rc.marg1.assign(s1c * rc.wc, 0.0);
    rc.marg2.assign(s2c * rc.wc, 0.0);
    for (std::size_t a = 0; a < s1c; ++a)
      for (std::size_t bsym = 0; bsym < s2c; ++bsym)
        for (std::size_t w = 0; w < rc.wc; ++w) {
          double p = rc.trip_pmf[(a * s2c + bsym) * rc.wc + w];
          rc.marg1[a * rc.wc + w] += p;
          rc.marg2[bsym * rc.wc + w] += p;
        }
    rc.src_full.init(rc.trip_pmf, m, gamma);
    rc.src_pre1.init(rc.marg1, m, gamma * double(s2c));
    rc.src_pre2.init(rc.marg2, m, gamma * double(s1c));
    rc.force_s2 = make_force_table(rc.trip_pmf, s1c, s2c, rc.wc);

    rc.yc = channel.y_card(k + 1);
    std::vector<double> rt = channel.receiver_table(k + 1);
    rc.chan_pmf.assign(x1c * x2c * rc.yc, 0.0);
    rc.chan_m1.assign(x1c * rc.yc, 0.0);
    rc.chan_m2.assign(x2c * rc.yc, 0.0);
    for (std::size_t a = 0; a < x1c; ++a)
      for (std::size_t bsym = 0; bsym < x2c; ++bsym)
        for (std::size_t y = 0; y < rc.yc; ++y) {
          double p = px1[a] * px2[bsym] * rt[(a * x2c + bsym) * rc.yc + y];
          rc.chan_pmf[(a * x2c + bsym) * rc.yc + y] = p;
          rc.chan_m1[a * rc.yc + y] += p;
          rc.chan_m2[bsym * rc.yc + y] += p;
        }
    rc.ch_full.init(rc.chan_pmf, n, delta);
    rc.ch_pre1.init(rc.chan_m1, n, delta * double(x2c));
    rc.ch_pre2.init(rc.chan_m2, n, delta * double(x1c));
    rc.force_x2 = make_force_table(rc.chan_pmf, x1c, x2c, rc.yc);
  }

  SourceSampler sampler = make_sampler(source, nrec);

  SimResult res;
  res.scheme = "matched";
  res.trials = cfg.trials;
  res.b = cfg.b;
  res.seed = cfg.seed;
  res.m = m;
  res.n = n;
  res.codebook1 = M1;
  res.codebook2 = M2;
  res.receivers.assign(nrec, ReceiverStats{});

  Seq s1w, s2w;
  std::vector<Seq> sidew(nrec);
  std::vector<std::size_t> scb1, scb2, xcb1, xcb2;  // flat codebooks
  std::vector<std::size_t> yword(n);
  std::vector<long> scratch;
  std::unordered_map<std::uint64_t, std::uint32_t> first1, first2;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> words2;
  std::vector<std::size_t> cand1;
  std::vector<std::size_t> forced(std::max(m, n));

  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    Rng rng(derive_seed(cfg.seed, trial));
    sampler.draw(rng, m, s1w, s2w, sidew);
    draw_words(rng, ms1.table(), M1, m, scb1);
    draw_words(rng, ms2.table(), M2, m, scb2);
    draw_words(rng, px1, M1, n, xcb1);
    draw_words(rng, px2, M2, n, xcb2);

    // Encoder: smallest index whose source word matches.
    first1.clear();
    first2.clear();
    for (std::size_t i = 0; i < M1; ++i)
      first1.emplace(pack_word(&scb1[i * m], m, sbits1), std::uint32_t(i));
    for (std::size_t i = 0; i < M2; ++i)
      first2.emplace(pack_word(&scb2[i * m], m, sbits2), std::uint32_t(i));
    const std::uint64_t key1 = pack_word(s1w.data(), m, sbits1);
    const std::uint64_t key2 = pack_word(s2w.data(), m, sbits2);
    auto it1 = first1.find(key1);
    auto it2 = first2.find(key2);
    if (it1 == first1.end() || it2 == first2.end()) {
      for (auto& rs : res.receivers) {
        ++rs.e1;
        ++rs.errors;
      }
      continue;
    }
    const std::size_t i1 = it1->second, i2 = it2->second;
    const std::size_t* tx1 = &xcb1[i1 * n];
    const std::size_t* tx2 = &xcb2[i2 * n];

    // Channel outputs for all receivers at once.
    std::vector<Seq> ywords(nrec, Seq(n));
    {
      std::size_t y2c_all = nrec == 2 ? channel.y_card(2) : 1;
      std::size_t y1c_all = channel.y_card(1);
      std::vector<double> row(y1c_all * y2c_all);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t y1 = 0; y1 < y1c_all; ++y1)
          for (std::size_t y2 = 0; y2 < y2c_all; ++y2)
            row[y1 * y2c_all + y2] = channel.prob(tx1[i], tx2[i], y1, y2);
        std::size_t flat = rng.sample(row);
        ywords[0][i] = flat / y2c_all;
        if (nrec == 2) ywords[1][i] = flat % y2c_all;
      }
    }

    // Decode per receiver.
    for (std::size_t k = 0; k < nrec; ++k) {
      RecCtx& rc = recs[k];
      ReceiverStats& rs = res.receivers[k];
      const std::size_t* wk = rc.wc > 1 ? sidew[k].data() : nullptr;
      const Seq& y = ywords[k];

      // Dummy all-zero side word when absent keeps the composite-index code
      // uniform (wc = 1 makes the side factor vanish).
      Seq zeros;
      if (!wk) {
        zeros.assign(m, 0);
        wk = zeros.data();
      }

      bool e2 = !rc.src_full.triple(s1w.data(), s2w.data(), wk, s2c, rc.wc,
                                    scratch);
      bool e3 = !rc.ch_full.triple(tx1, tx2, y.data(), x2c, rc.yc, scratch);
      if (e2) ++rs.e2;
      if (e3) ++rs.e3;

      // User-1 candidate prefilter: marginal typicality is necessary.
      cand1.clear();
      for (std::size_t j = 0; j < M1; ++j) {
        if (!rc.src_pre1.pair(&scb1[j * m], wk, rc.wc, scratch)) continue;
        if (!rc.ch_pre1.pair(&xcb1[j * n], y.data(), rc.yc, scratch)) continue;
        cand1.push_back(j);
      }

      // User-2 candidates per j1: forced-word lookup when the support
      // structure pins the partner word, otherwise a capped scan.
      bool use_force_src = rc.force_s2.usable;
      bool use_force_ch = rc.force_x2.usable;
      std::vector<std::size_t> cand2_all;
      if (!use_force_src && !use_force_ch) {
        for (std::size_t j = 0; j < M2; ++j) {
          if (!rc.src_pre2.pair(&scb2[j * m], wk, rc.wc, scratch)) continue;
          if (!rc.ch_pre2.pair(&xcb2[j * n], y.data(), rc.yc, scratch))
            continue;
          cand2_all.push_back(j);
        }
        if (cand1.size() * cand2_all.size() > cfg.scan_cap)
          throw std::runtime_error(
              "simulate: candidate pair scan exceeds scan_cap; reduce m or "
              "epsilon, or raise scan_cap");
      }
      if (use_force_src) {
        words2.clear();
        for (std::size_t j = 0; j < M2; ++j)
          words2[pack_word(&scb2[j * m], m, sbits2)].push_back(
              std::uint32_t(j));
      } else if (use_force_ch) {
        words2.clear();
        std::size_t xbits2 = bits_for(x2c);
        if (n * xbits2 > 64)
          throw std::invalid_argument(
              "simulate: channel block too long for decoder bookkeeping");
        for (std::size_t j = 0; j < M2; ++j)
          words2[pack_word(&xcb2[j * n], n, xbits2)].push_back(
              std::uint32_t(j));
      }

      // Enumerate candidate pairs, tracking distinct decoded word pairs.
      bool ambiguous = false, any = false, correct_only = true;
      std::uint64_t got1 = 0, got2 = 0;
      auto consider = [&](std::size_t j1, std::size_t j2) {
        if (!rc.src_full.triple(&scb1[j1 * m], &scb2[j2 * m], wk, s2c, rc.wc,
                                scratch))
          return;
        if (!rc.ch_full.triple(&xcb1[j1 * n], &xcb2[j2 * n], y.data(), x2c,
                               rc.yc, scratch))
          return;
        std::uint64_t w1 = pack_word(&scb1[j1 * m], m, sbits1);
        std::uint64_t w2 = pack_word(&scb2[j2 * m], m, sbits2);
        if (!any) {
          any = true;
          got1 = w1;
          got2 = w2;
        } else if (w1 != got1 || w2 != got2) {
          ambiguous = true;
        }
        if (w1 != key1 || w2 != key2) correct_only = false;
      };

      for (std::size_t j1 : cand1) {
        if (ambiguous && !correct_only) break;
        if (use_force_src || use_force_ch) {
          const ForceTable& ft = use_force_src ? rc.force_s2 : rc.force_x2;
          const std::size_t* aw = use_force_src ? &scb1[j1 * m] : &xcb1[j1 * n];
          const std::size_t* cw = use_force_src ? wk : y.data();
          std::size_t ctxc = use_force_src ? rc.wc : rc.yc;
          std::size_t len = use_force_src ? m : n;
          bool dead = false;
          forced.resize(len);
          for (std::size_t i = 0; i < len; ++i) {
            std::size_t f = ft.forced[aw[i] * ctxc + cw[i]];
            if (f == kNone) {
              dead = true;
              break;
            }
            forced[i] = f;
          }
          if (dead) continue;
          std::size_t fbits = use_force_src ? sbits2 : bits_for(x2c);
          auto it = words2.find(pack_word(forced.data(), len, fbits));
          if (it == words2.end()) continue;
          for (std::uint32_t j2 : it->second) consider(j1, j2);
        } else {
          for (std::size_t j2 : cand2_all) consider(j1, j2);
        }
      }

      bool ok = any && !ambiguous && got1 == key1 && got2 == key2;
      if (!ok) {
        ++rs.errors;
        if (!any || ambiguous || !correct_only) ++rs.e4;
      }
    }
  }

  for (auto& rs : res.receivers)
    rs.error_rate = double(rs.errors) / double(res.trials);
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return res;
}

SimResult run_separation_scheme(const JointPmf& source,
                                const ChannelModel& channel,
                                const SimConfig& cfg) {
  auto t_start = std::chrono::steady_clock::now();
  if (channel.kind() == ChannelKind::two_way)
    throw std::invalid_argument(
        "simulate: separation scheme does not apply to two-way channels");
  if (!source.has_variable("S1") || !source.has_variable("S2"))
    throw std::invalid_argument("simulate: source must contain S1 and S2");
  if (cfg.rate1 <= 0.0 || cfg.rate2 <= 0.0)
    throw std::invalid_argument(
        "simulate: separation scheme needs positive binning rates");

  const std::size_t m = cfg.m, n = cfg.n();
  const double gamma = cfg.gamma_for_m();
  const double delta = cfg.delta_for_n(n);
  validate_common(cfg, delta, gamma);

  const std::size_t s1c = source.card("S1"), s2c = source.card("S2");
  const std::size_t x1c = channel.x1_card(), x2c = channel.x2_card();
  const std::size_t nrec = channel.receivers();

  auto bin_count = [&](double r) {
    double v = std::ceil(std::exp2(double(m) * r));
    return std::max<std::size_t>(1, std::size_t(v));
  };
  const std::size_t B1 = bin_count(cfg.rate1);
  const std::size_t B2 = bin_count(cfg.rate2);
  if (B1 > cfg.codebook_cap || B2 > cfg.codebook_cap)
    throw std::invalid_argument("simulate: bin count 2^{mR} exceeds the cap");

  auto domain_size = [&](std::size_t card) {
    double v = std::pow(double(card), double(m));
    if (v > double(cfg.domain_cap))
      throw std::invalid_argument(
          "simulate: source word domain |S|^m exceeds the cap");
    return std::size_t(std::llround(v));
  };
  const std::size_t D1 = domain_size(s1c);
  const std::size_t D2 = domain_size(s2c);

  std::vector<double> px1 = cfg.px1, px2 = cfg.px2;
  validate_pmf_arg(px1, x1c, "px1");
  validate_pmf_arg(px2, x2c, "px2");

  // Per-receiver data: channel triple test and per-user (S_k, W) pair tests.
  struct RecCtx {
    std::size_t wc = 1;
    std::vector<double> pair1, pair2;  // p(s1, w), p(s2, w)
    CountTest src1, src2;
    std::vector<double> chan_pmf;
    CountTest ch_full;
    std::size_t yc = 0;
  };
  std::vector<RecCtx> recs(nrec);
  for (std::size_t k = 0; k < nrec; ++k) {
    RecCtx& rc = recs[k];
    std::vector<std::string> side = side_vars(source, k + 1);
    rc.wc = side.empty() ? 1 : source.card(side[0]);
    std::vector<std::string> v1 = {"S1"}, v2 = {"S2"};
    v1.insert(v1.end(), side.begin(), side.end());
    v2.insert(v2.end(), side.begin(), side.end());
    rc.pair1 = source.marginal(v1).table();
    rc.pair2 = source.marginal(v2).table();
    rc.src1.init(rc.pair1, m, gamma);
    rc.src2.init(rc.pair2, m, gamma);

    rc.yc = channel.y_card(k + 1);
    std::vector<double> rt = channel.receiver_table(k + 1);
    rc.chan_pmf.assign(x1c * x2c * rc.yc, 0.0);
    for (std::size_t a = 0; a < x1c; ++a)
      for (std::size_t bsym = 0; bsym < x2c; ++bsym)
        for (std::size_t y = 0; y < rc.yc; ++y)
          rc.chan_pmf[(a * x2c + bsym) * rc.yc + y] =
              px1[a] * px2[bsym] * rt[(a * x2c + bsym) * rc.yc + y];
    rc.ch_full.init(rc.chan_pmf, n, delta);
  }

  SourceSampler sampler = make_sampler(source, nrec);

  SimResult res;
  res.scheme = "separation";
  res.trials = cfg.trials;
  res.b = cfg.b;
  res.seed = cfg.seed;
  res.m = m;
  res.n = n;
  res.codebook1 = B1;
  res.codebook2 = B2;
  res.receivers.assign(nrec, ReceiverStats{});

  Seq s1w, s2w;
  std::vector<Seq> sidew(nrec);
  std::vector<std::size_t> xcb1, xcb2;
  std::vector<long> scratch;
  Seq word(m);

  auto flat_of = [&](const Seq& w, std::size_t card) {
    std::size_t f = 0;
    for (std::size_t i = 0; i < m; ++i) f = f * card + w[i];
    return f;
  };
  auto unflat = [&](std::size_t f, std::size_t card, Seq& w) {
    for (std::size_t i = m; i-- > 0;) {
      w[i] = f % card;
      f /= card;
    }
  };

  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t tseed = derive_seed(cfg.seed, trial);
    Rng rng(tseed);
    const std::uint64_t bseed1 = derive_seed(tseed, 101);
    const std::uint64_t bseed2 = derive_seed(tseed, 102);
    auto bin1 = [&](std::size_t f) { return derive_seed(bseed1, f) % B1; };
    auto bin2 = [&](std::size_t f) { return derive_seed(bseed2, f) % B2; };

    sampler.draw(rng, m, s1w, s2w, sidew);
    draw_words(rng, px1, B1, n, xcb1);
    draw_words(rng, px2, B2, n, xcb2);

    const std::size_t i1 = bin1(flat_of(s1w, s1c));
    const std::size_t i2 = bin2(flat_of(s2w, s2c));
    const std::size_t* tx1 = &xcb1[i1 * n];
    const std::size_t* tx2 = &xcb2[i2 * n];

    std::vector<Seq> ywords(nrec, Seq(n));
    {
      std::size_t y2c_all = nrec == 2 ? channel.y_card(2) : 1;
      std::size_t y1c_all = channel.y_card(1);
      std::vector<double> row(y1c_all * y2c_all);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t y1 = 0; y1 < y1c_all; ++y1)
          for (std::size_t y2 = 0; y2 < y2c_all; ++y2)
            row[y1 * y2c_all + y2] = channel.prob(tx1[i], tx2[i], y1, y2);
        std::size_t flat = rng.sample(row);
        ywords[0][i] = flat / y2c_all;
        if (nrec == 2) ywords[1][i] = flat % y2c_all;
      }
    }

    for (std::size_t k = 0; k < nrec; ++k) {
      RecCtx& rc = recs[k];
      ReceiverStats& rs = res.receivers[k];
      const Seq& y = ywords[k];
      const std::size_t* wk;
      Seq zeros;
      if (rc.wc > 1) {
        wk = sidew[k].data();
      } else {
        zeros.assign(m, 0);
        wk = zeros.data();
      }

      // Stage 1: channel decoding of the bin pair.
      std::size_t hit1 = kNone, hit2 = kNone;
      bool ambiguous = false;
      for (std::size_t j1 = 0; j1 < B1 && !ambiguous; ++j1)
        for (std::size_t j2 = 0; j2 < B2; ++j2) {
          if (!rc.ch_full.triple(&xcb1[j1 * n], &xcb2[j2 * n], y.data(), x2c,
                                 rc.yc, scratch))
            continue;
          if (hit1 == kNone) {
            hit1 = j1;
            hit2 = j2;
          } else {
            ambiguous = true;
            break;
          }
        }
      bool true_typical = rc.ch_full.triple(tx1, tx2, y.data(), x2c, rc.yc,
                                            scratch);
      if (!true_typical) ++rs.e3;
      if (hit1 == kNone || ambiguous) {
        ++rs.channel_stage;
        if (ambiguous) ++rs.e4;
        ++rs.errors;
        continue;
      }
      if (hit1 != i1 || hit2 != i2) {
        ++rs.channel_stage;
        ++rs.e4;
      }

      // Stage 2: per-user unique typical word inside the decoded bin.
      bool block_err = (hit1 != i1 || hit2 != i2);
      auto source_decode = [&](std::size_t D, std::size_t card,
                               const std::function<std::size_t(std::size_t)>&
                                   bin_of,
                               std::size_t want_bin, const CountTest& test,
                               const Seq& truth) {
        std::size_t found = kNone;
        bool multi = false;
        for (std::size_t f = 0; f < D; ++f) {
          if (bin_of(f) != want_bin) continue;
          unflat(f, card, word);
          if (!test.pair(word.data(), wk, rc.wc, scratch)) continue;
          if (found == kNone)
            found = f;
          else {
            multi = true;
            break;
          }
        }
        if (found == kNone || multi) {
          ++rs.source_stage;
          ++rs.e2;
          return false;
        }
        return found == flat_of(truth, card);
      };
      bool ok1 = source_decode(D1, s1c, bin1, hit1, rc.src1, s1w);
      bool ok2 = source_decode(D2, s2c, bin2, hit2, rc.src2, s2w);
      if (!ok1 || !ok2) block_err = true;
      if (block_err) ++rs.errors;
    }
  }

  for (auto& rs : res.receivers)
    rs.error_rate = double(rs.errors) / double(res.trials);
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return res;
}

SimResult run_uncoded(const JointPmf& source, const ChannelModel& channel,
                      const std::vector<std::size_t>& mapping1,
                      const std::vector<std::size_t>& mapping2,
                      const SimConfig& cfg) {
  auto t_start = std::chrono::steady_clock::now();
  if (!source.has_variable("S1") || !source.has_variable("S2"))
    throw std::invalid_argument("simulate: source must contain S1 and S2");
  if (std::abs(cfg.b - 1.0) > 1e-9)
    throw std::invalid_argument("simulate: uncoded transmission requires b = 1");
  const std::size_t s1c = source.card("S1"), s2c = source.card("S2");
  const std::size_t x1c = channel.x1_card(), x2c = channel.x2_card();
  if (mapping1.size() != s1c || mapping2.size() != s2c)
    throw std::invalid_argument("simulate: mapping domain mismatch");
  for (std::size_t v : mapping1)
    if (v >= x1c) throw std::invalid_argument("simulate: mapping1 out of range");
  for (std::size_t v : mapping2)
    if (v >= x2c) throw std::invalid_argument("simulate: mapping2 out of range");
  const std::size_t m = cfg.m;
  validate_common(cfg, 0.5, 0.5);

  const std::size_t nrec = channel.receivers();
  const bool two_way = channel.kind() == ChannelKind::two_way;

  // MAP decision tables.
  // Two-way, terminal k: (y_k, own source symbol) -> other source symbol.
  // Otherwise: (y_k, w_k) -> (s1, s2) packed as s1 * s2c + s2.
  struct RecCtx {
    std::size_t wc = 1, yc = 0;
    std::vector<std::size_t> rule;
  };
  std::vector<RecCtx> recs(nrec);
  JointPmf pair = source.marginal({"S1", "S2"});
  for (std::size_t k = 0; k < nrec; ++k) {
    RecCtx& rc = recs[k];
    rc.yc = channel.y_card(k + 1);
    std::vector<double> rt = channel.receiver_table(k + 1);
    auto chan_p = [&](std::size_t a, std::size_t c, std::size_t y) {
      return rt[(a * x2c + c) * rc.yc + y];
    };
    if (two_way) {
      std::size_t own_c = k == 0 ? s1c : s2c;
      std::size_t oth_c = k == 0 ? s2c : s1c;
      rc.rule.assign(rc.yc * own_c, 0);
      for (std::size_t y = 0; y < rc.yc; ++y)
        for (std::size_t own = 0; own < own_c; ++own) {
          double best = -1.0;
          std::size_t arg = 0;
          for (std::size_t oth = 0; oth < oth_c; ++oth) {
            std::size_t s1 = k == 0 ? own : oth;
            std::size_t s2 = k == 0 ? oth : own;
            double w = pair.table()[s1 * s2c + s2] *
                       chan_p(mapping1[s1], mapping2[s2], y);
            if (w > best + 1e-18) {
              best = w;
              arg = oth;
            }
          }
          rc.rule[y * own_c + own] = arg;
        }
    } else {
      std::vector<std::string> side = side_vars(source, k + 1);
      rc.wc = side.empty() ? 1 : source.card(side[0]);
      std::vector<std::string> trip = {"S1", "S2"};
      trip.insert(trip.end(), side.begin(), side.end());
      std::vector<double> tp = source.marginal(trip).table();
      rc.rule.assign(rc.yc * rc.wc, 0);
      for (std::size_t y = 0; y < rc.yc; ++y)
        for (std::size_t w = 0; w < rc.wc; ++w) {
          double best = -1.0;
          std::size_t arg = 0;
          for (std::size_t s1 = 0; s1 < s1c; ++s1)
            for (std::size_t s2 = 0; s2 < s2c; ++s2) {
              double p = tp[(s1 * s2c + s2) * rc.wc + w] *
                         chan_p(mapping1[s1], mapping2[s2], y);
              if (p > best + 1e-18) {
                best = p;
                arg = s1 * s2c + s2;
              }
            }
          rc.rule[y * rc.wc + w] = arg;
        }
    }
  }

  SourceSampler sampler = make_sampler(source, two_way ? 0 : nrec);

  SimResult res;
  res.scheme = "uncoded";
  res.trials = cfg.trials;
  res.b = cfg.b;
  res.seed = cfg.seed;
  res.m = m;
  res.n = m;
  res.receivers.assign(nrec, ReceiverStats{});

  Seq s1w, s2w;
  std::vector<Seq> sidew(two_way ? 0 : nrec);
  std::vector<Seq> ywords(nrec, Seq(m));

  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    Rng rng(derive_seed(cfg.seed, trial));
    sampler.draw(rng, m, s1w, s2w, sidew);
    {
      std::size_t y2c_all = nrec == 2 ? channel.y_card(2) : 1;
      std::size_t y1c_all = channel.y_card(1);
      std::vector<double> row(y1c_all * y2c_all);
      for (std::size_t i = 0; i < m; ++i) {
        std::size_t a = mapping1[s1w[i]], c = mapping2[s2w[i]];
        for (std::size_t y1 = 0; y1 < y1c_all; ++y1)
          for (std::size_t y2 = 0; y2 < y2c_all; ++y2)
            row[y1 * y2c_all + y2] = channel.prob(a, c, y1, y2);
        std::size_t flat = rng.sample(row);
        ywords[0][i] = flat / y2c_all;
        if (nrec == 2) ywords[1][i] = flat % y2c_all;
      }
    }

    for (std::size_t k = 0; k < nrec; ++k) {
      RecCtx& rc = recs[k];
      ReceiverStats& rs = res.receivers[k];
      std::size_t bad = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (two_way) {
          std::size_t own = k == 0 ? s1w[i] : s2w[i];
          std::size_t oth = k == 0 ? s2w[i] : s1w[i];
          std::size_t own_c = k == 0 ? s1c : s2c;
          if (rc.rule[ywords[k][i] * own_c + own] != oth) ++bad;
        } else {
          std::size_t w = rc.wc > 1 ? sidew[k][i] : 0;
          std::size_t got = rc.rule[ywords[k][i] * rc.wc + w];
          if (got != s1w[i] * s2c + s2w[i]) ++bad;
        }
      }
      rs.symbol_errors += bad;
      if (bad > 0) ++rs.errors;
    }
  }

  for (auto& rs : res.receivers) {
    rs.error_rate = double(rs.errors) / double(res.trials);
    rs.symbol_error_rate =
        double(rs.symbol_errors) / double(res.trials * res.m);
  }
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return res;
}

}  // namespace jscc
