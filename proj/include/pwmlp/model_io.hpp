#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pwmlp/network.hpp"

namespace pwmlp {

/// Serializes a network as a JSON model document:
///
///   {"method": "...", "n": N,
///    "neurons": [{"weight": w, "bias": b, "activation": {"kind": "cubic", "a1": s}}],
///    "outputs": [{"weights": [...], "bias": b}],
///    "knots": {"n": N}}
///
/// Numbers are written in shortest round-trip form, so load_model(save_model(net))
/// reproduces every parameter bit for bit. Only a1 is stored for cubic activations.
std::string save_model(const Network& net);

/// Throws FormatError carrying the offending field path (e.g. "neurons[3].activation.kind").
Network load_model(std::string_view document);

/// Throws IoError when the file cannot be written.
void write_model_file(const Network& net, const std::filesystem::path& path);
/// Throws IoError when unreadable, FormatError when malformed.
Network read_model_file(const std::filesystem::path& path);

}  // namespace pwmlp
