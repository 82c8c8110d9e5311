// Monte Carlo simulation of the random-coding achievability schemes:
//  - matched:     source words mapped directly onto channel codewords,
//                 joint source+channel typicality decoding,
//  - separation:  random binning of source words + an independent channel
//                 code carrying the bin indices, decoded in two stages,
//  - uncoded:     symbol-by-symbol transmission with MAP decoding.
// All runs are deterministic functions of (config, inputs) including seed.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jscc/channel.hpp"
#include "jscc/pmf.hpp"

namespace jscc {

struct TypicalityParams {
  // Strong-typicality slacks: delta on the channel side (length-n words),
  // gamma on the source side (length-m words).  Values <= 0 select the
  // default heuristic scale_c / sqrt(block length).
  double delta = 0.0;
  double gamma = 0.0;
  double scale_c = 0.9;
};

struct SimConfig {
  std::size_t m = 10;        // source block length
  double b = 1.0;            // channel uses per source symbol; n = round(b*m)
  double epsilon = 0.3;      // codebook size exponent slack (matched scheme)
  TypicalityParams typicality;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  double rate1 = 0.0, rate2 = 0.0;  // binning rates (separation scheme)
  std::vector<double> px1, px2;     // channel input pmfs; empty = uniform
  std::size_t codebook_cap = std::size_t(1) << 16;
  std::size_t domain_cap = std::size_t(1) << 22;  // separation |S_k|^m cap
  std::size_t scan_cap = std::size_t(1) << 22;    // matched pair-scan cap

  std::size_t n() const;  // round(b*m), validated >= 1
  double delta_for_n(std::size_t n) const;
  double gamma_for_m() const;
};

struct ReceiverStats {
  std::size_t errors = 0;  // block errors
  std::size_t e1 = 0;      // encoder found no codeword for a source word
  std::size_t e2 = 0;      // true source words + side info not typical
  std::size_t e3 = 0;      // transmitted words + channel output not typical
  std::size_t e4 = 0;      // decoder ambiguity / wrong decode
  std::size_t channel_stage = 0;  // separation: bin-decoding failures
  std::size_t source_stage = 0;   // separation: in-bin source failures
  std::size_t symbol_errors = 0;  // uncoded: symbol-level errors
  double error_rate = 0.0;
  double symbol_error_rate = 0.0;
};

struct SimResult {
  std::string scheme;
  std::size_t trials = 0;
  std::size_t m = 0, n = 0;
  double b = 0.0;
  std::uint64_t seed = 0;
  std::size_t codebook1 = 0, codebook2 = 0;  // M_k or bin counts
  std::vector<ReceiverStats> receivers;
  double wall_seconds = 0.0;  // measured; excluded from serialized output
};

// Direct matched scheme: per trial, fresh source codebooks of
// M_k = ceil(2^{m(H(S_k)+eps/2)}) i.i.d. words and channel codebooks of
// i.i.d. symbols, smallest-index encoding, and per-receiver decoding by
// simultaneous source-side and channel-side strong typicality.  Success
// requires the decoded source-word pair to be unique and correct.
SimResult run_matched_scheme(const JointPmf& source,
                             const ChannelModel& channel,
                             const SimConfig& cfg);

// Separation scheme: uniform random binning of every possible source word
// into ceil(2^{m R_k}) bins, an independent channel codebook per bin index,
// channel decoding of the bin pair by typicality, then per-user recovery of
// the unique in-bin source word typical with the side information.
SimResult run_separation_scheme(const JointPmf& source,
                                const ChannelModel& channel,
                                const SimConfig& cfg);

// Uncoded transmission (b = 1): x_{k,i} = mapping_k(s_{k,i}); exact MAP
// symbol decoding from (Y_k, side info), or from (Y_k, own source) on
// two-way channels.
SimResult run_uncoded(const JointPmf& source, const ChannelModel& channel,
                      const std::vector<std::size_t>& mapping1,
                      const std::vector<std::size_t>& mapping2,
                      const SimConfig& cfg);

}  // namespace jscc
