// Decision rules for source-channel rate achievability: exact and
// sufficient-only minimum-rate computations for single- and two-receiver
// channels, fixed-rate sufficiency checks with source-dependent inputs,
// strong-interference certification, and two-way bounds.
//
// Naming convention for source variables: sources are S1 and S2; receiver
// side information is W1 / W2 (or a single shared W).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jscc/channel.hpp"
#include "jscc/optim.hpp"
#include "jscc/pmf.hpp"
#include "jscc/regions.hpp"
#include "jscc/structure.hpp"

namespace jscc {

enum class VerdictMode { sufficient, necessary, exact };
std::string to_string(VerdictMode m);

struct PreconditionReport {
  std::string name;
  bool holds = false;
  double deviation = 0.0;
};

class precondition_error : public std::runtime_error {
 public:
  precondition_error(const std::string& msg,
                     std::vector<PreconditionReport> reports)
      : std::runtime_error(msg), reports(std::move(reports)) {}
  std::vector<PreconditionReport> reports;
};

struct Verdict {
  std::string criterion;  // e.g. "thm2"
  VerdictMode mode = VerdictMode::sufficient;
  std::string achievable;  // "yes" | "no" | "boundary" | "" (pure min-rate)
  std::optional<double> b_query;
  std::optional<double> b_min;
  double margin = 0.0;  // bits: min over conditions of RHS - LHS at witness
  std::optional<ProductInput> witness;
  std::vector<double> witness_rates;
  bool witness_within_q4 = true;
  std::vector<PreconditionReport> preconditions;
  std::vector<std::string> notes;
};

struct CriteriaOptions {
  HullOptions hull;
  double tol = 1e-4;           // bisection tolerance on b
  double precond_tol = 1e-9;   // structural-deviation tolerance
  double boundary_tol = 1e-6;  // |margin| below this counts as boundary
  bool force = false;          // run despite violated preconditions
  std::optional<double> b_query;
  SearchOptions search;        // witness / violation search budget
};

// ---- Fixed-rate sufficiency at b = 1 with source-dependent inputs ----
// Single receiver: four conditions (two individual, common-part sum,
// unconditioned sum) with inputs p(q) p(x1|q,s1) p(x2|q,s2); the time-sharing
// cardinality is bounded by min(|X1||X2|, |Y1|).  Two receivers: the same
// conditions per receiver.  mode == sufficient: "no" only means no witness
// was found within the search budget.
Verdict check_sufficient_b1(const JointPmf& source, const ChannelModel& channel,
                            const CriteriaOptions& opts = {});

// ---- Exact min-rate for a single-receiver channel ----
enum class MacTheorem {
  thm2,  // requires S1 - W1 - S2; target (H(S1|W1), H(S2|W1), sum)
  thm3,  // requires S1 independent of S2; target = SW corner given W1
};
Verdict minrate_mac(const JointPmf& source, const ChannelModel& channel,
                    MacTheorem which, const CriteriaOptions& opts = {});

// ---- Min-rate for two-receiver channels ----
enum class CompoundTheorem {
  thm5,  // sufficient only; per-receiver SW corners given Wk
  thm6,  // exact; requires S1 indep (S2,W1) and S2 indep (S1,W2)
  thm7,  // exact; requires a factorizing (no cross-sender interference) channel
  thm8,  // exact; requires shared side info W and S1 - W - S2
};
Verdict minrate_cmac(const JointPmf& source, const ChannelModel& channel,
                     CompoundTheorem which, const CriteriaOptions& opts = {});

// ---- Strong source-channel interference certification ----
struct StrongInterferenceReport {
  bool holds = false;
  double worst_violation = 0.0;  // bits; > 0 means some input violates
  std::size_t worst_condition = 0;  // 1 or 2
  std::vector<std::vector<double>> witness_rows1, witness_rows2;
  std::string search_coverage;
  double b = 1.0;
};
StrongInterferenceReport strong_interference_check(
    const JointPmf& source, const ChannelModel& channel, double b,
    const CriteriaOptions& opts = {});

// Classical strong-interference inequalities over product inputs
// (I(X1;Y1|X2) <= I(X1;Y2|X2) and I(X2;Y2|X1) <= I(X2;Y1|X1) for all
// p(x1)p(x2)); side-information terms do not appear.
StrongInterferenceReport classical_strong_interference_check(
    const ChannelModel& channel, const CriteriaOptions& opts = {});

// ---- Interference-channel min-rate wrappers ----
enum class IcTheorem {
  thm9,   // thm5 conditions; exact iff strong interference holds at b_min
  thm10,  // thm8 conditions; exact iff classical strong interference holds
};
Verdict minrate_ic(const JointPmf& source, const ChannelModel& channel,
                   IcTheorem which, const CriteriaOptions& opts = {});

// ---- Two-way channel ----
struct TwoWayOuterResult {
  double b_lower = 0.0;
  std::vector<double> best_joint_input;  // argmin over p(x1, x2)
  double info_forward = 0.0;   // I(X1;Y2|X2) at the minimizer
  double info_backward = 0.0;  // I(X2;Y1|X1)
  double h1 = 0.0, h2 = 0.0;   // H(S1|S2), H(S2|S1)
};
// Necessary bound: no b below this is achievable.
TwoWayOuterResult twoway_outer(const JointPmf& source,
                               const ChannelModel& channel,
                               const CriteriaOptions& opts = {});

// Sufficiency at b = 1 for the restricted two-way channel: conditions
// H(S1|S2) < I(X1;Y2|X2,S2,Q) and H(S2|S1) < I(X2;Y1|X1,S1,Q).  If `input`
// is empty a witness search is run.
Verdict twoway_achievable(const JointPmf& source, const ChannelModel& channel,
                          const std::optional<ProductInput>& input = {},
                          const CriteriaOptions& opts = {});

// Side-information variable names for receiver k ("W1"/"W2", shared "W", or
// none), following the source naming convention.
std::vector<std::string> side_vars(const JointPmf& source, std::size_t receiver);

}  // namespace jscc
