#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "pwmlp/builders.hpp"

namespace pwmlp {

/// Arbitrary (x, y) samples for kernel fitting.
struct DenseSamples {
  std::vector<double> xs;
  std::vector<double> ys;
};

/// Parses knot samples "x,f1,...,fq" (header row mandatory). The rows must be
/// exactly the N + 1 knots x_j = j / N in order, within 1e-12. When
/// expected_n is given the row count must agree with it.
/// Throws FormatError with a "line L" path on malformed content.
TargetSamples parse_samples_csv(std::string_view text, std::optional<int> expected_n = std::nullopt);
TargetSamples read_samples_csv(const std::filesystem::path& path, std::optional<int> expected_n = std::nullopt);

/// Parses dense samples "x,y" (header row mandatory), x sorted and in [0, 1].
DenseSamples parse_dense_csv(std::string_view text);
DenseSamples read_dense_csv(const std::filesystem::path& path);

}  // namespace pwmlp
