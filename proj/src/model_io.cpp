#include "pwmlp/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pwmlp/errors.hpp"

namespace pwmlp {
namespace {

using nlohmann::json;

json activation_to_json(const Activation& act) {
  json j = {{"kind", activation_kind_name(act.kind())}};
  if (act.kind() == ActivationKind::Cubic) j["a1"] = act.inflection_slope();
  return j;
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw FormatError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(path + "." + key, "missing field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw FormatError(path, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw FormatError(path, "expected an integer");
  return j.get<int>();
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw FormatError(path, "expected an array");
  return j;
}

Activation activation_from_json(const json& j, const std::string& path) {
  const json& kind_field = field(j, "kind", path);
  if (!kind_field.is_string()) throw FormatError(path + ".kind", "expected a string");
  const auto name = kind_field.get<std::string>();
  const auto kind = parse_activation_kind(name);
  if (!kind) throw FormatError(path + ".kind", "unknown activation kind '" + name + "'");
  switch (*kind) {
    case ActivationKind::Step: return Activation::step();
    case ActivationKind::Relu: return Activation::relu();
    case ActivationKind::Ramp: return Activation::ramp();
    case ActivationKind::Cubic: {
      const double a1 = number(field(j, "a1", path), path + ".a1");
      try {
        return Activation::cubic(a1);
      } catch (const DomainError& e) {
        throw FormatError(path + ".a1", e.what());
      }
    }
  }
  throw FormatError(path + ".kind", "unknown activation kind");
}

}  // namespace

std::string save_model(const Network& net) {
  json neurons = json::array();
  for (const auto& n : net.neurons()) {
    neurons.push_back({{"weight", n.weight}, {"bias", n.bias}, {"activation", activation_to_json(n.activation)}});
  }
  json outputs = json::array();
  for (const auto& tap : net.outputs()) {
    outputs.push_back({{"weights", tap.weights}, {"bias", tap.bias}});
  }
  json doc = {{"method", net.info().method},
              {"n", net.info().n},
              {"neurons", std::move(neurons)},
              {"outputs", std::move(outputs)},
              {"knots", {{"n", net.info().n}}}};
  return doc.dump(1) + "\n";
}

Network load_model(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw FormatError("", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("", "model document must be a JSON object");

  NetworkInfo info;
  const json& method = field(doc, "method", "");
  if (!method.is_string()) throw FormatError("method", "expected a string");
  info.method = method.get<std::string>();
  info.n = integer(field(doc, "n", ""), "n");
  if (info.n < 0) throw FormatError("n", "must be non-negative");
  const int knots_n = integer(field(field(doc, "knots", ""), "n", "knots"), "knots.n");
  if (knots_n != info.n) throw FormatError("knots.n", "disagrees with top-level n");

  std::vector<HiddenNeuron> neurons;
  const json& neuron_docs = array(field(doc, "neurons", ""), "neurons");
  if (neuron_docs.empty()) throw FormatError("neurons", "at least one neuron required");
  neurons.reserve(neuron_docs.size());
  for (std::size_t j = 0; j < neuron_docs.size(); ++j) {
    const std::string path = "neurons[" + std::to_string(j) + "]";
    const json& nd = neuron_docs[j];
    HiddenNeuron n;
    n.weight = number(field(nd, "weight", path), path + ".weight");
    n.bias = number(field(nd, "bias", path), path + ".bias");
    n.activation = activation_from_json(field(nd, "activation", path), path + ".activation");
    neurons.push_back(n);
  }

  std::vector<OutputTap> outputs;
  const json& output_docs = array(field(doc, "outputs", ""), "outputs");
  if (output_docs.empty()) throw FormatError("outputs", "at least one output tap required");
  for (std::size_t k = 0; k < output_docs.size(); ++k) {
    const std::string path = "outputs[" + std::to_string(k) + "]";
    const json& td = output_docs[k];
    OutputTap tap;
    const json& weights = array(field(td, "weights", path), path + ".weights");
    if (weights.size() != neurons.size()) {
      throw FormatError(path + ".weights", "has " + std::to_string(weights.size()) +
                                               " entries for " + std::to_string(neurons.size()) +
                                               " neurons");
    }
    tap.weights.reserve(weights.size());
    for (std::size_t j = 0; j < weights.size(); ++j) {
      tap.weights.push_back(number(weights[j], path + ".weights[" + std::to_string(j) + "]"));
    }
    tap.bias = number(field(td, "bias", path), path + ".bias");
    outputs.push_back(std::move(tap));
  }

  try {
    return Network(std::move(neurons), std::move(outputs), std::move(info));
  } catch (const UsageError& e) {
    throw FormatError("", e.what());
  }
}

void write_model_file(const Network& net, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << save_model(net);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

Network read_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

}  // namespace pwmlp
