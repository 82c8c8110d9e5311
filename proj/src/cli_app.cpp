#include "jscc/cli_app.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "jscc/criteria.hpp"
#include "jscc/model_io.hpp"
#include "jscc/regions.hpp"
#include "jscc/simulate.hpp"
#include "jscc/structure.hpp"

namespace jscc {

namespace {

std::string fmt6(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::fixed << std::setprecision(6) << x;
  std::string s = os.str();
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::vector<std::string> split_list(const std::string& s, char sep = ',') {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  parts.push_back(cur);
  while (!parts.empty() && parts.back().empty()) parts.pop_back();
  for (const auto& p : parts)
    if (p.empty())
      throw std::invalid_argument("empty name in list: '" + s + "'");
  return parts;
}

std::vector<std::size_t> split_indices(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& tok : split_list(s)) {
    std::size_t pos = 0;
    unsigned long v = std::stoul(tok, &pos);
    if (pos != tok.size())
      throw std::invalid_argument("bad integer in list: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

std::string rates_line(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt6(v[i]);
  }
  return s;
}

std::string render_text(const Verdict& v) {
  std::ostringstream os;
  os << "criterion = " << v.criterion << "\n";
  os << "mode = " << to_string(v.mode) << "\n";
  if (!v.achievable.empty()) os << "achievable = " << v.achievable << "\n";
  if (v.b_query) os << "b = " << fmt6(*v.b_query) << "\n";
  if (v.b_min) os << "b_min = " << fmt6(*v.b_min) << "\n";
  os << "margin_bits = " << fmt6(v.margin) << "\n";
  if (!v.witness_rates.empty())
    os << "witness_rates = " << rates_line(v.witness_rates) << "\n";
  os << "witness_within_q4 = " << (v.witness_within_q4 ? "true" : "false")
     << "\n";
  for (const auto& p : v.preconditions)
    os << "precondition " << p.name << ": "
       << (p.holds ? "holds" : "violated")
       << " (deviation = " << fmt6(p.deviation) << ")\n";
  for (const auto& n : v.notes) os << "note: " << n << "\n";
  return os.str();
}

std::string render_text(const SeparationResult& r) {
  std::ostringstream os;
  os << "corner = " << rates_line(r.corner.h) << "\n";
  os << "achievable = " << (r.scale.achievable ? "yes" : "no") << "\n";
  if (r.scale.achievable) os << "b_min = " << fmt6(r.scale.b_min) << "\n";
  os << "witness_rates = " << rates_line(r.scale.witness_rates) << "\n";
  os << "min_slack_bits = " << fmt6(r.scale.min_slack) << "\n";
  return os.str();
}

std::string render_text(const FullCoopResult& r) {
  std::ostringstream os;
  os << "b = " << fmt6(r.b) << "\n";
  os << "joint_entropy_bits = " << fmt6(r.joint_entropy) << "\n";
  os << "max_mutual_info_bits = " << fmt6(r.max_mutual_info) << "\n";
  return os.str();
}

std::string render_text(const TwoWayOuterResult& r) {
  std::ostringstream os;
  os << "b_lower = " << fmt6(r.b_lower) << "\n";
  os << "info_forward_bits = " << fmt6(r.info_forward) << "\n";
  os << "info_backward_bits = " << fmt6(r.info_backward) << "\n";
  os << "h1_bits = " << fmt6(r.h1) << "\n";
  os << "h2_bits = " << fmt6(r.h2) << "\n";
  return os.str();
}

std::string render_text(const StrongInterferenceReport& r) {
  std::ostringstream os;
  os << "holds = " << (r.holds ? "true" : "false") << "\n";
  os << "worst_violation_bits = " << fmt6(r.worst_violation) << "\n";
  os << "worst_condition = " << r.worst_condition << "\n";
  os << "b = " << fmt6(r.b) << "\n";
  os << "search_coverage = " << r.search_coverage << "\n";
  return os.str();
}

std::string render_text(const RegionHull& hull) {
  std::ostringstream os;
  os << "receivers = " << hull.receivers << "\n";
  os << "grid_resolution = " << fmt6(hull.grid_resolution) << "\n";
  os << "candidates_evaluated = " << hull.candidates_evaluated << "\n";
  os << "points = " << hull.points.size() << "\n";
  for (const auto& p : hull.points)
    os << "  " << rates_line(p.rates) << "\n";
  return os.str();
}

std::string render_text(const SimResult& r) {
  std::ostringstream os;
  os << "scheme = " << r.scheme << "\n";
  os << "m = " << r.m << "\n";
  os << "n = " << r.n << "\n";
  os << "b = " << fmt6(r.b) << "\n";
  os << "trials = " << r.trials << "\n";
  os << "seed = " << r.seed << "\n";
  os << "codebook1 = " << r.codebook1 << "\n";
  os << "codebook2 = " << r.codebook2 << "\n";
  for (std::size_t k = 0; k < r.receivers.size(); ++k) {
    const ReceiverStats& s = r.receivers[k];
    os << "rx" << (k + 1) << ".error_rate = " << fmt6(s.error_rate) << "\n";
    os << "rx" << (k + 1) << ".events e1/e2/e3/e4 = " << s.e1 << "/" << s.e2
       << "/" << s.e3 << "/" << s.e4 << "\n";
    if (s.symbol_errors || r.scheme == "uncoded")
      os << "rx" << (k + 1)
         << ".symbol_error_rate = " << fmt6(s.symbol_error_rate) << "\n";
  }
  return os.str();
}

// Attach any published reference values for `key` as notes on a verdict.
void attach_reference_notes(Verdict& v, const ModelFile& model,
                            const std::string& key) {
  auto it = model.references.find(key);
  if (it != model.references.end())
    v.notes.push_back("reference " + key + " = " + fmt6(it->second));
}

// Inject matching reference values into a serialized JSON payload.
std::string inject_references(const std::string& payload,
                              const ModelFile& model, const std::string& key) {
  auto it = model.references.find(key);
  if (it == model.references.end()) return payload;
  nlohmann::json j = nlohmann::json::parse(payload);
  j["references"][key] = std::round(it->second * 1e12) / 1e12;
  return j.dump(2) + "\n";
}

std::string reference_text_lines(const ModelFile& model,
                                 const std::string& key) {
  auto it = model.references.find(key);
  if (it == model.references.end()) return {};
  return "reference " + key + " = " + fmt6(it->second) + "\n";
}

struct CommonFlags {
  std::string model_path;
  std::string out_path;
  double grid = 0.05;
  double tol = 1e-4;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t trials = 200;
  std::size_t threads = 0;
  bool force = false;
  bool json = false;
};

CriteriaOptions make_opts(const CommonFlags& cf) {
  CriteriaOptions opts;
  opts.hull.grid_resolution = cf.grid;
  opts.hull.threads = cf.threads;
  opts.tol = cf.tol;
  opts.force = cf.force;
  if (cf.seed_set) opts.search.seed = cf.seed;
  return opts;
}

ModelFile require_model(const CommonFlags& cf) {
  if (cf.model_path.empty())
    throw std::invalid_argument("--model PATH is required for this command");
  return load_model(cf.model_path);
}

int write_payload(const CommonFlags& cf, const std::string& payload,
                  std::ostream& out, std::ostream& err) {
  if (!cf.out_path.empty()) {
    std::ofstream f(cf.out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot open output file: " << cf.out_path << "\n";
      return 2;
    }
    f << payload;
    return f.good() ? 0 : 2;
  }
  out << payload;
  return 0;
}

}  // namespace

int execute(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "jscc: decides achievability of source-channel rates for lossless "
      "transmission of two correlated sources over discrete memoryless "
      "multiuser channels (with receiver side information) and validates "
      "the decisions by Monte Carlo simulation of random-coding schemes."};
  app.name("jscc");

  CommonFlags cf;
  app.add_option("--model", cf.model_path, "model JSON file (source + channel)");
  app.add_option("--out", cf.out_path, "write output to this file");
  app.add_option("--grid", cf.grid,
                 "simplex grid resolution for input searches")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", cf.tol, "bisection tolerance on b")
      ->check(CLI::PositiveNumber);
  auto* seed_opt =
      app.add_option("--seed", cf.seed, "master seed (search / simulation)");
  app.add_option("--trials", cf.trials, "Monte Carlo trials");
  app.add_option("--threads", cf.threads,
                 "worker threads (0 = hardware concurrency)");
  app.add_flag("--force", cf.force,
               "evaluate despite violated structural preconditions "
               "(result downgraded to sufficient-only)");
  app.add_flag("--json", cf.json, "emit JSON instead of text");
  app.fallthrough();

  // info ------------------------------------------------------------------
  auto* info = app.add_subcommand("info", "entropies, mutual informations, "
                                          "structural checks, common part");
  info->fallthrough();
  info->require_subcommand(1);

  std::string of_list, given_list;
  auto* info_entropy =
      info->add_subcommand("entropy", "H(of | given) in bits");
  info_entropy->fallthrough();
  info_entropy->add_option("--of", of_list, "comma-separated variables")
      ->required();
  info_entropy->add_option("--given", given_list, "conditioning variables");

  std::string mi_a, mi_b, mi_given;
  auto* info_mi =
      info->add_subcommand("mi", "I(a ; b | given) in bits");
  info_mi->fallthrough();
  info_mi->add_option("--a", mi_a, "first variable group")->required();
  info_mi->add_option("--b", mi_b, "second variable group")->required();
  info_mi->add_option("--given", mi_given, "conditioning variables");

  std::string chain;
  auto* info_structure = info->add_subcommand(
      "structure", "Markov-chain / independence check");
  info_structure->fallthrough();
  info_structure
      ->add_option("--chain", chain,
                   "A:B:C groups (commas within a group; empty B tests "
                   "independence of A and C)")
      ->required();

  std::string cp_a = "S1", cp_b = "S2";
  auto* info_common = info->add_subcommand(
      "common-part", "deterministic common part of two variables");
  info_common->fallthrough();
  info_common->add_option("--a", cp_a, "first variable (default S1)");
  info_common->add_option("--b", cp_b, "second variable (default S2)");

  // region ----------------------------------------------------------------
  auto* region = app.add_subcommand(
      "region", "achievable-rate hulls and model round-trips");
  region->fallthrough();
  region->require_subcommand(1);
  auto* region_hull = region->add_subcommand(
      "hull", "generator points of the achievable-rate hull");
  region_hull->fallthrough();
  auto* region_dump = region->add_subcommand(
      "dump", "parse the model and re-serialize it");
  region_dump->fallthrough();

  // minrate ----------------------------------------------------------------
  static const std::vector<std::string> kMinrateSel = {
      "thm2", "thm3", "thm5",    "thm6",    "thm7",
      "thm8", "thm9", "thm10",   "infosep", "fullcoop"};
  std::string minrate_thm;
  std::optional<double> minrate_b;
  auto* minrate = app.add_subcommand(
      "minrate", "minimum achievable source-channel rate b");
  minrate->fallthrough();
  minrate->add_option("--theorem", minrate_thm, "decision rule")
      ->required()
      ->check(CLI::IsMember(kMinrateSel));
  double minrate_b_val = 0.0;
  auto* minrate_b_opt = minrate->add_option(
      "--b", minrate_b_val, "also classify achievability at this rate");

  // check -------------------------------------------------------------------
  static const std::vector<std::string> kCheckSel = {
      "thm1", "thm4", "stronginterference", "twoway-ach"};
  std::string check_thm;
  double check_b = 1.0;
  bool check_uncoded = false;
  auto* check = app.add_subcommand(
      "check", "fixed-rate sufficiency and interference certification");
  check->fallthrough();
  check->add_option("--theorem", check_thm, "decision rule")
      ->required()
      ->check(CLI::IsMember(kCheckSel));
  check->add_option("--b", check_b, "source-channel rate (default 1)")
      ->check(CLI::PositiveNumber);
  check->add_flag("--uncoded", check_uncoded,
                  "use the identity symbol mapping as the channel input "
                  "(twoway-ach only)");

  // twoway ------------------------------------------------------------------
  auto* twoway = app.add_subcommand("twoway", "two-way channel bounds");
  twoway->fallthrough();
  twoway->require_subcommand(1);
  auto* twoway_outer_cmd = twoway->add_subcommand(
      "outer", "necessary lower bound on b over joint inputs");
  twoway_outer_cmd->fallthrough();

  // simulate ----------------------------------------------------------------
  static const std::vector<std::string> kSchemes = {"matched", "separation",
                                                    "uncoded"};
  std::string scheme;
  SimConfig sim_cfg;
  bool csv = false;
  std::string map1_str, map2_str;
  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo runs of the random-coding schemes");
  simulate->fallthrough();
  simulate->add_option("--scheme", scheme, "coding scheme")
      ->required()
      ->check(CLI::IsMember(kSchemes));
  simulate->add_option("--m", sim_cfg.m, "source block length");
  simulate->add_option("--b", sim_cfg.b, "channel uses per source symbol");
  simulate->add_option("--epsilon", sim_cfg.epsilon,
                       "codebook exponent slack (matched)");
  simulate->add_option("--delta", sim_cfg.typicality.delta,
                       "channel-side typicality slack (0 = heuristic)");
  simulate->add_option("--gamma", sim_cfg.typicality.gamma,
                       "source-side typicality slack (0 = heuristic)");
  simulate->add_option("--r1", sim_cfg.rate1, "binning rate R1 (separation)");
  simulate->add_option("--r2", sim_cfg.rate2, "binning rate R2 (separation)");
  simulate->add_option("--map1", map1_str,
                       "uncoded symbol map for user 1 (comma list)");
  simulate->add_option("--map2", map2_str,
                       "uncoded symbol map for user 2 (comma list)");
  simulate->add_flag("--csv", csv, "emit a CSV header + row");

  app.require_subcommand(1);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }
  cf.seed_set = seed_opt->count() > 0;
  if (minrate_b_opt->count() > 0) minrate_b = minrate_b_val;

  try {
    std::string payload;

    if (info_entropy->parsed()) {
      ModelFile model = require_model(cf);
      double h = model.source.entropy(split_list(of_list),
                                      given_list.empty()
                                          ? std::vector<std::string>{}
                                          : split_list(given_list));
      if (cf.json) {
        nlohmann::json j;
        j["of"] = split_list(of_list);
        j["given"] = given_list.empty() ? std::vector<std::string>{}
                                        : split_list(given_list);
        j["entropy_bits"] = std::round(h * 1e12) / 1e12;
        payload = j.dump(2) + "\n";
      } else {
        payload = fmt6(h) + "\n";
      }
    } else if (info_mi->parsed()) {
      ModelFile model = require_model(cf);
      double mi = model.source.mutual_information(
          split_list(mi_a), split_list(mi_b),
          mi_given.empty() ? std::vector<std::string>{} : split_list(mi_given));
      if (cf.json) {
        nlohmann::json j;
        j["a"] = split_list(mi_a);
        j["b"] = split_list(mi_b);
        j["given"] = mi_given.empty() ? std::vector<std::string>{}
                                      : split_list(mi_given);
        j["mutual_information_bits"] = std::round(mi * 1e12) / 1e12;
        payload = j.dump(2) + "\n";
      } else {
        payload = fmt6(mi) + "\n";
      }
    } else if (info_structure->parsed()) {
      ModelFile model = require_model(cf);
      std::vector<std::string> groups;
      {
        std::string cur;
        for (char c : chain) {
          if (c == ':') {
            groups.push_back(cur);
            cur.clear();
          } else {
            cur += c;
          }
        }
        groups.push_back(cur);
      }
      if (groups.size() != 3)
        throw std::invalid_argument(
            "--chain must have exactly three ':'-separated groups");
      auto grp = [](const std::string& s) {
        return s.empty() ? std::vector<std::string>{} : split_list(s);
      };
      StructureReport rep = check_markov(model.source, grp(groups[0]),
                                         grp(groups[1]), grp(groups[2]));
      if (cf.json) {
        nlohmann::json j;
        j["chain"] = groups;
        j["holds"] = rep.holds;
        j["max_deviation"] = std::round(rep.max_deviation * 1e12) / 1e12;
        payload = j.dump(2) + "\n";
      } else {
        payload = std::string("holds = ") + (rep.holds ? "true" : "false") +
                  "\nmax_deviation = " + fmt6(rep.max_deviation) + "\n";
      }
    } else if (info_common->parsed()) {
      ModelFile model = require_model(cf);
      CommonPart cp = gacs_korner_common(model.source, cp_a, cp_b);
      if (cf.json) {
        nlohmann::json j;
        j["a"] = cp_a;
        j["b"] = cp_b;
        j["u_cardinality"] = cp.u_cardinality;
        j["u_entropy_bits"] = std::round(cp.u_entropy * 1e12) / 1e12;
        nlohmann::json pmf = nlohmann::json::array();
        for (double p : cp.u_pmf) pmf.push_back(std::round(p * 1e12) / 1e12);
        j["u_pmf"] = pmf;
        auto maps = nlohmann::json::array();
        for (std::size_t v : cp.map1)
          maps.push_back(v == std::size_t(-1) ? -1 : int(v));
        j["map_a"] = maps;
        maps = nlohmann::json::array();
        for (std::size_t v : cp.map2)
          maps.push_back(v == std::size_t(-1) ? -1 : int(v));
        j["map_b"] = maps;
        payload = j.dump(2) + "\n";
      } else {
        std::ostringstream os;
        os << "u_cardinality = " << cp.u_cardinality << "\n";
        os << "u_entropy_bits = " << fmt6(cp.u_entropy) << "\n";
        payload = os.str();
      }
    } else if (region_hull->parsed()) {
      ModelFile model = require_model(cf);
      HullOptions hopts;
      hopts.grid_resolution = cf.grid;
      hopts.threads = cf.threads;
      RegionHull hull =
          achievable_hull(model.channel, model.channel.receivers(), hopts);
      payload = cf.json ? to_json(hull) : render_text(hull);
    } else if (region_dump->parsed()) {
      ModelFile model = require_model(cf);
      payload = to_json(model);
    } else if (minrate->parsed()) {
      ModelFile model = require_model(cf);
      CriteriaOptions opts = make_opts(cf);
      opts.b_query = minrate_b;
      const std::string key = "minrate." + minrate_thm;
      if (minrate_thm == "infosep") {
        SeparationResult r = informational_separation_minrate(
            model.source, model.channel, side_vars(model.source, 1), opts.hull,
            opts.tol);
        payload = cf.json ? inject_references(to_json(r), model, key)
                          : render_text(r) + reference_text_lines(model, key);
      } else if (minrate_thm == "fullcoop") {
        FullCoopResult r =
            full_coop_minrate(model.source, model.channel,
                              side_vars(model.source, 1), cf.grid);
        payload = cf.json ? inject_references(to_json(r), model, key)
                          : render_text(r) + reference_text_lines(model, key);
      } else {
        Verdict v;
        if (minrate_thm == "thm2" || minrate_thm == "thm3") {
          v = minrate_mac(model.source, model.channel,
                          minrate_thm == "thm2" ? MacTheorem::thm2
                                                : MacTheorem::thm3,
                          opts);
        } else if (minrate_thm == "thm9" || minrate_thm == "thm10") {
          v = minrate_ic(model.source, model.channel,
                         minrate_thm == "thm9" ? IcTheorem::thm9
                                               : IcTheorem::thm10,
                         opts);
        } else {
          CompoundTheorem which = CompoundTheorem::thm5;
          if (minrate_thm == "thm6") which = CompoundTheorem::thm6;
          if (minrate_thm == "thm7") which = CompoundTheorem::thm7;
          if (minrate_thm == "thm8") which = CompoundTheorem::thm8;
          v = minrate_cmac(model.source, model.channel, which, opts);
        }
        attach_reference_notes(v, model, key);
        payload = cf.json ? inject_references(to_json(v), model, key)
                          : render_text(v);
      }
    } else if (check->parsed()) {
      ModelFile model = require_model(cf);
      CriteriaOptions opts = make_opts(cf);
      const std::string key = "check." + check_thm;
      if (check_thm == "stronginterference") {
        StrongInterferenceReport rep =
            strong_interference_check(model.source, model.channel, check_b,
                                      opts);
        payload = cf.json ? inject_references(to_json(rep), model, key)
                          : render_text(rep) + reference_text_lines(model, key);
      } else if (check_thm == "twoway-ach") {
        opts.b_query = check_b;
        std::optional<ProductInput> input;
        if (check_uncoded)
          input = ProductInput::identity_map(
              model.source.card("S1"), model.channel.x1_card(),
              model.source.card("S2"), model.channel.x2_card());
        Verdict v = twoway_achievable(model.source, model.channel, input, opts);
        attach_reference_notes(v, model, key);
        payload = cf.json ? inject_references(to_json(v), model, key)
                          : render_text(v);
      } else {
        // thm1 (single receiver) / thm4 (two receivers)
        std::size_t want = check_thm == "thm1" ? 1 : 2;
        if (model.channel.receivers() != want)
          throw std::invalid_argument(
              check_thm + " applies to a channel with " +
              std::to_string(want) + " receiver(s); model has " +
              std::to_string(model.channel.receivers()));
        opts.b_query = check_b;
        Verdict v = check_sufficient_b1(model.source, model.channel, opts);
        attach_reference_notes(v, model, key);
        payload = cf.json ? inject_references(to_json(v), model, key)
                          : render_text(v);
      }
    } else if (twoway_outer_cmd->parsed()) {
      ModelFile model = require_model(cf);
      CriteriaOptions opts = make_opts(cf);
      opts.hull.grid_resolution = cf.grid;
      const std::string key = "twoway.outer";
      TwoWayOuterResult r = twoway_outer(model.source, model.channel, opts);
      payload = cf.json ? inject_references(to_json(r), model, key)
                        : render_text(r) + reference_text_lines(model, key);
    } else if (simulate->parsed()) {
      ModelFile model = require_model(cf);
      sim_cfg.trials = cf.trials;
      if (cf.seed_set) sim_cfg.seed = cf.seed;
      SimResult res;
      if (scheme == "matched") {
        res = run_matched_scheme(model.source, model.channel, sim_cfg);
      } else if (scheme == "separation") {
        res = run_separation_scheme(model.source, model.channel, sim_cfg);
      } else {
        auto identity = [](std::size_t cards, std::size_t xcard,
                           const char* who) {
          if (cards > xcard)
            throw std::invalid_argument(
                std::string("uncoded: no default identity mapping for ") +
                who + " (source alphabet larger than channel input); "
                      "pass an explicit --map");
          std::vector<std::size_t> m(cards);
          for (std::size_t i = 0; i < cards; ++i) m[i] = i;
          return m;
        };
        std::vector<std::size_t> map1 =
            map1_str.empty()
                ? identity(model.source.card("S1"), model.channel.x1_card(),
                           "user 1")
                : split_indices(map1_str);
        std::vector<std::size_t> map2 =
            map2_str.empty()
                ? identity(model.source.card("S2"), model.channel.x2_card(),
                           "user 2")
                : split_indices(map2_str);
        res = run_uncoded(model.source, model.channel, map1, map2, sim_cfg);
      }
      if (csv)
        payload = csv_header() + to_csv_row(res);
      else
        payload = cf.json ? to_json(res) : render_text(res);
    }

    return write_payload(cf, payload, out, err);
  } catch (const precondition_error& pe) {
    err << "precondition violation: " << pe.what() << "\n";
    for (const auto& r : pe.reports)
      err << "  " << r.name << ": " << (r.holds ? "holds" : "violated")
          << " (deviation = " << fmt6(r.deviation) << ")\n";
    err << "rerun with --force to evaluate the sufficient-only bound anyway\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace jscc
