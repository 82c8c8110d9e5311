#include "jscc/model_io.hpp"

#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>

#include "json.hpp"

namespace jscc {

namespace {

using nlohmann::json;

// Round-trip-stable, human-scale numeric representation: 12 significant
// digits is far below double noise for the quantities here and keeps files
// byte-identical across runs.
json num(double x) {
  double r = std::round(x * 1e12) / 1e12;
  if (r == 0.0) r = 0.0;  // normalize -0
  return json(r);
}

json num_vec(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

json rows_json(const std::vector<std::vector<double>>& rows) {
  json a = json::array();
  for (const auto& r : rows) a.push_back(num_vec(r));
  return a;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json input_json(const ProductInput& in) {
  json j;
  j["q_weights"] = num_vec(in.q_weights);
  j["cond1"] = rows_json(in.cond1);
  j["cond2"] = rows_json(in.cond2);
  j["source_conditioned"] = in.source_conditioned;
  j["s1_states"] = in.s1_states;
  j["s2_states"] = in.s2_states;
  return j;
}

}  // namespace

ModelFile parse_model_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("model: JSON parse error: ") +
                                e.what());
  }
  try {
    ModelFile mf;
    mf.label = j.value("label", std::string());

    const json& src = j.at("source");
    std::vector<std::string> vars =
        src.at("variables").get<std::vector<std::string>>();
    std::vector<std::size_t> cards =
        src.at("cards").get<std::vector<std::size_t>>();
    std::vector<double> table = src.at("table").get<std::vector<double>>();
    mf.source = JointPmf(std::move(vars), std::move(cards), std::move(table));
    if (!mf.source.has_variable("S1") || !mf.source.has_variable("S2"))
      throw std::invalid_argument("model: source must define S1 and S2");

    const json& ch = j.at("channel");
    ChannelKind kind = channel_kind_from_string(ch.at("kind").get<std::string>());
    std::size_t x1 = ch.at("x1").get<std::size_t>();
    std::size_t x2 = ch.at("x2").get<std::size_t>();
    std::vector<std::size_t> ycards =
        ch.at("y").get<std::vector<std::size_t>>();
    std::vector<double> trans =
        ch.at("transition").get<std::vector<double>>();
    std::optional<NoMaiShape> shape;
    if (ch.contains("no_mai_shape")) {
      const json& s = ch.at("no_mai_shape");
      NoMaiShape ns;
      ns.y11 = s.at("y11").get<std::size_t>();
      ns.y21 = s.at("y21").get<std::size_t>();
      ns.y12 = s.at("y12").get<std::size_t>();
      ns.y22 = s.at("y22").get<std::size_t>();
      shape = ns;
    }
    mf.channel = ChannelModel(kind, x1, x2, std::move(ycards),
                              std::move(trans), shape);
    if (j.contains("references")) {
      const json& refs = j.at("references");
      if (!refs.is_object())
        throw std::invalid_argument("model: references must be an object");
      for (auto it = refs.begin(); it != refs.end(); ++it)
        mf.references[it.key()] = it.value().get<double>();
    }
    return mf;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("model: missing or mistyped field: ") +
                                e.what());
  }
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("model: cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model_text(ss.str());
}

std::string to_json(const ModelFile& model) {
  json j;
  if (!model.label.empty()) j["label"] = model.label;
  json src;
  src["variables"] = model.source.variables();
  src["cards"] = model.source.cards();
  src["table"] = num_vec(model.source.table());
  j["source"] = src;
  json ch;
  ch["kind"] = to_string(model.channel.kind());
  ch["x1"] = model.channel.x1_card();
  ch["x2"] = model.channel.x2_card();
  std::vector<std::size_t> ycards;
  for (std::size_t k = 1; k <= model.channel.receivers(); ++k)
    ycards.push_back(model.channel.y_card(k));
  ch["y"] = ycards;
  ch["transition"] = num_vec(model.channel.table());
  if (model.channel.no_mai_shape()) {
    const NoMaiShape& s = *model.channel.no_mai_shape();
    json sh;
    sh["y11"] = s.y11;
    sh["y21"] = s.y21;
    sh["y12"] = s.y12;
    sh["y22"] = s.y22;
    ch["no_mai_shape"] = sh;
  }
  j["channel"] = ch;
  if (!model.references.empty()) {
    json refs;
    for (const auto& [key, value] : model.references) refs[key] = num(value);
    j["references"] = refs;
  }
  return dump(j);
}

std::string to_json(const ProductInput& input) { return dump(input_json(input)); }

std::string to_json(const Verdict& v) {
  json j;
  j["criterion"] = v.criterion;
  j["mode"] = to_string(v.mode);
  if (!v.achievable.empty()) j["achievable"] = v.achievable;
  if (v.b_query) j["b"] = num(*v.b_query);
  if (v.b_min) j["b_min"] = num(*v.b_min);
  j["margin_bits"] = num(v.margin);
  if (v.witness) j["witness"] = input_json(*v.witness);
  if (!v.witness_rates.empty()) j["witness_rates"] = num_vec(v.witness_rates);
  j["witness_within_q4"] = v.witness_within_q4;
  json pre = json::array();
  for (const auto& p : v.preconditions) {
    json e;
    e["name"] = p.name;
    e["holds"] = p.holds;
    e["deviation"] = num(p.deviation);
    pre.push_back(e);
  }
  j["preconditions"] = pre;
  j["notes"] = v.notes;
  return dump(j);
}

std::string to_json(const StrongInterferenceReport& rep) {
  json j;
  j["holds"] = rep.holds;
  j["worst_violation_bits"] = num(rep.worst_violation);
  j["worst_condition"] = rep.worst_condition;
  j["b"] = num(rep.b);
  j["witness_rows1"] = rows_json(rep.witness_rows1);
  j["witness_rows2"] = rows_json(rep.witness_rows2);
  j["search_coverage"] = rep.search_coverage;
  return dump(j);
}

std::string to_json(const TwoWayOuterResult& res) {
  json j;
  j["b_lower"] = num(res.b_lower);
  j["best_joint_input"] = num_vec(res.best_joint_input);
  j["info_forward_bits"] = num(res.info_forward);
  j["info_backward_bits"] = num(res.info_backward);
  j["h1_bits"] = num(res.h1);
  j["h2_bits"] = num(res.h2);
  return dump(j);
}

std::string to_json(const RegionHull& hull) {
  json j;
  j["receivers"] = hull.receivers;
  j["x1_card"] = hull.x1_card;
  j["x2_card"] = hull.x2_card;
  j["grid_resolution"] = num(hull.grid_resolution);
  j["candidates_evaluated"] = hull.candidates_evaluated;
  json pts = json::array();
  for (const auto& p : hull.points) {
    json e;
    e["rates"] = num_vec(p.rates);
    e["p1"] = num_vec(p.p1);
    e["p2"] = num_vec(p.p2);
    pts.push_back(e);
  }
  j["points"] = pts;
  return dump(j);
}

std::string to_json(const ScaleResult& sc) {
  json j;
  j["achievable"] = sc.achievable;
  if (sc.achievable) j["b_min"] = num(sc.b_min);
  j["witness"] = input_json(sc.witness);
  j["witness_rates"] = num_vec(sc.witness_rates);
  j["min_slack_bits"] = num(sc.min_slack);
  j["witness_within_q4"] = sc.witness_within_q4;
  return dump(j);
}

std::string to_json(const SeparationResult& sep) {
  json j;
  j["corner"] = num_vec(sep.corner.h);
  json inner = json::parse(to_json(sep.scale));
  j["scale"] = inner;
  return dump(j);
}

std::string to_json(const FullCoopResult& fc) {
  json j;
  j["b"] = num(fc.b);
  j["joint_entropy_bits"] = num(fc.joint_entropy);
  j["max_mutual_info_bits"] = num(fc.max_mutual_info);
  j["best_joint_input"] = num_vec(fc.best_joint_input);
  return dump(j);
}

std::string to_json(const SimResult& res) {
  json j;
  j["scheme"] = res.scheme;
  j["trials"] = res.trials;
  j["m"] = res.m;
  j["n"] = res.n;
  j["b"] = num(res.b);
  j["seed"] = res.seed;
  j["codebook1"] = res.codebook1;
  j["codebook2"] = res.codebook2;
  json rec = json::array();
  for (const auto& r : res.receivers) {
    json e;
    e["errors"] = r.errors;
    e["e1"] = r.e1;
    e["e2"] = r.e2;
    e["e3"] = r.e3;
    e["e4"] = r.e4;
    e["channel_stage"] = r.channel_stage;
    e["source_stage"] = r.source_stage;
    e["symbol_errors"] = r.symbol_errors;
    e["error_rate"] = num(r.error_rate);
    e["symbol_error_rate"] = num(r.symbol_error_rate);
    rec.push_back(e);
  }
  j["receivers"] = rec;
  return dump(j);
}

std::string csv_header() {
  return "scheme,m,n,b,trials,seed,error_rate_rx1,error_rate_rx2,e1,e2,e3,e4\n";
}

std::string to_csv_row(const SimResult& res) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << res.scheme << ',' << res.m << ',' << res.n << ',' << std::fixed
     << std::setprecision(6) << res.b << ',' << res.trials << ',' << res.seed
     << ',';
  std::size_t e1 = 0, e2 = 0, e3 = 0, e4 = 0;
  for (const auto& r : res.receivers) {
    e1 += r.e1;
    e2 += r.e2;
    e3 += r.e3;
    e4 += r.e4;
  }
  if (!res.receivers.empty()) os << res.receivers[0].error_rate;
  os << ',';
  if (res.receivers.size() > 1) os << res.receivers[1].error_rate;
  os << ',' << e1 << ',' << e2 << ',' << e3 << ',' << e4 << '\n';
  return os.str();
}

}  // namespace jscc
