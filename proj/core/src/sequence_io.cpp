#include "qqft/sequence_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qqft {
namespace {

using nlohmann::json;

json gate_to_json(const GateSpec& g) {
  json out{{"kind", g.kind_name()}, {"site", g.first_site()}, {"step", g.step}};
  if (const auto* m = std::get_if<Mix>(&g.op)) {
    out["theta"] = m->theta;
    out["phi"] = m->phi;
  } else if (const auto* p = std::get_if<Phase>(&g.op)) {
    out["lambda"] = p->lambda;
  }
  return out;
}

template <class T>
T required(const json& obj, const char* key, std::size_t index) {
  if (!obj.contains(key)) {
    throw InvalidSequenceError("gate " + std::to_string(index) + ": missing field '" + key + "'");
  }
  return obj.at(key).get<T>();
}

GateSpec gate_from_json(const json& obj, std::size_t index) {
  if (!obj.is_object()) {
    throw InvalidSequenceError("gate " + std::to_string(index) + ": not an object");
  }
  const auto kind = required<std::string>(obj, "kind", index);
  const auto site = required<std::size_t>(obj, "site", index);
  const auto step = required<std::size_t>(obj, "step", index);
  if (kind == "swap") return GateSpec{Swap{site}, step};
  if (kind == "mix") {
    return GateSpec{
        Mix{site, required<double>(obj, "theta", index), required<double>(obj, "phi", index)},
        step};
  }
  if (kind == "phase") return GateSpec{Phase{site, required<double>(obj, "lambda", index)}, step};
  throw InvalidSequenceError("gate " + std::to_string(index) + ": unknown kind '" + kind + "'");
}

}  // namespace

std::string sequence_to_json(const CircuitSequence& seq, int indent) {
  json gates = json::array();
  for (const GateSpec& g : seq.gates()) gates.push_back(gate_to_json(g));
  const json doc{{"schema", kSequenceSchema},
                 {"n_sites", seq.n_sites()},
                 {"depth", seq.depth()},
                 {"gate_count", seq.gate_count()},
                 {"gates", std::move(gates)}};
  return doc.dump(indent) + "\n";
}

CircuitSequence sequence_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidSequenceError(std::string("malformed JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || doc.value("schema", std::string{}) != kSequenceSchema) {
      throw InvalidSequenceError("expected schema \"" + std::string(kSequenceSchema) + "\"");
    }
    const auto n_sites = doc.at("n_sites").get<std::size_t>();
    const json& list = doc.at("gates");
    if (!list.is_array()) throw InvalidSequenceError("'gates' must be an array");
    std::vector<GateSpec> gates;
    gates.reserve(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) gates.push_back(gate_from_json(list[i], i));
    CircuitSequence seq(n_sites, std::move(gates));
    seq.validate();
    if (doc.contains("depth") && doc.at("depth").get<std::size_t>() != seq.depth()) {
      throw InvalidSequenceError("declared depth does not match the gate list");
    }
    return seq;
  } catch (const json::exception& e) {
    throw InvalidSequenceError(std::string("bad sequence document: ") + e.what());
  }
}

void save_sequence(const CircuitSequence& seq, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << sequence_to_json(seq);
}

CircuitSequence load_sequence(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return sequence_from_json(buffer.str());
}

}  // namespace qqft
