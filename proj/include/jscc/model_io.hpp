// JSON model files (source joint + channel) and JSON serialization of
// results.  Serialized output is deterministic: keys are emitted in sorted
// order and no wall-clock or host-specific data is included.
#pragma once

#include <map>
#include <string>

#include "jscc/channel.hpp"
#include "jscc/criteria.hpp"
#include "jscc/pmf.hpp"
#include "jscc/regions.hpp"
#include "jscc/simulate.hpp"

namespace jscc {

struct ModelFile {
  std::string label;
  JointPmf source;
  ChannelModel channel;
  // Optional published values keyed by operation (e.g. "minrate.thm2");
  // surfaced as informational notes next to computed results.
  std::map<std::string, double> references;
};

// Serialize a model back to its file format (used for round-trip checks
// and `region dump`-style inspection).
std::string to_json(const ModelFile& model);

// Parse / load a model description.  Throws std::invalid_argument on
// malformed content (including JSON syntax errors).
ModelFile parse_model_text(const std::string& text);
ModelFile load_model(const std::string& path);

// Serializers (2-space indented JSON, sorted keys, trailing newline).
std::string to_json(const ProductInput& input);
std::string to_json(const Verdict& v);
std::string to_json(const StrongInterferenceReport& rep);
std::string to_json(const TwoWayOuterResult& res);
std::string to_json(const RegionHull& hull);
std::string to_json(const ScaleResult& sc);
std::string to_json(const SeparationResult& sep);
std::string to_json(const FullCoopResult& fc);
std::string to_json(const SimResult& res);

// Plot-ready CSV ('.' decimal separator, '\n' line endings): one header
// line and one row per result.  Event counts are summed across receivers;
// the rx2 error-rate column is left empty for single-receiver channels.
std::string csv_header();
std::string to_csv_row(const SimResult& res);

}  // namespace jscc
