#include "pwmlp/csv_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "pwmlp/errors.hpp"
#include "pwmlp/format.hpp"

namespace pwmlp {
namespace {

using Row = std::vector<double>;

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) return fields;
    start = comma + 1;
  }
}

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

// Numeric rows after the header, all of the header's width; x sorted in [0, 1].
// Dense samples may repeat an x.
std::vector<Row> parse_table(std::string_view text, std::size_t min_cols, bool strictly_increasing) {
  std::vector<Row> rows;
  std::size_t width = 0;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (blank(line)) continue;
    const auto fields = split(line);
    const std::string where = "line " + std::to_string(line_no);
    if (!header_seen) {
      double probe = 0.0;
      if (parse_double(fields[0], probe)) throw FormatError(where, "header row is mandatory");
      if (fields.size() < min_cols) {
        throw FormatError(where, "expected at least " + std::to_string(min_cols) + " columns");
      }
      width = fields.size();
      header_seen = true;
      continue;
    }
    if (fields.size() != width) {
      throw FormatError(where, "expected " + std::to_string(width) + " fields, got " + std::to_string(fields.size()));
    }
    Row row(width);
    for (std::size_t c = 0; c < width; ++c) {
      if (!parse_double(fields[c], row[c]) || !std::isfinite(row[c])) {
        throw FormatError(where + ", column " + std::to_string(c + 1), "not a finite number");
      }
    }
    if (!(row[0] >= 0.0 && row[0] <= 1.0)) throw FormatError(where, "x must lie in [0, 1]");
    if (!rows.empty()) {
      const double prev = rows.back()[0];
      if (strictly_increasing ? !(row[0] > prev) : row[0] < prev) {
        throw FormatError(where, "x values must be sorted");
      }
    }
    rows.push_back(std::move(row));
  }
  if (!header_seen) throw FormatError("", "empty CSV document");
  if (rows.empty()) throw FormatError("", "CSV has a header but no data rows");
  return rows;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TargetSamples parse_samples_csv(std::string_view text, std::optional<int> expected_n) {
  const auto rows = parse_table(text, 2, true);
  if (rows.size() < 2) throw FormatError("", "knot samples need at least two rows (N >= 1)");
  const int n = static_cast<int>(rows.size()) - 1;
  if (expected_n && *expected_n != n) {
    throw FormatError("", "CSV has " + std::to_string(rows.size()) + " knot rows but N = " +
                              std::to_string(*expected_n) + " needs " + std::to_string(*expected_n + 1));
  }
  const KnotGrid grid(n);
  Matrix values(rows.size(), rows[0].size() - 1);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (std::abs(rows[j][0] - grid.knot(static_cast<int>(j))) > 1e-12) {
      throw FormatError("row " + std::to_string(j + 1), "x is not the uniform knot " + format_double(grid.knot(static_cast<int>(j))));
    }
    for (std::size_t k = 1; k < rows[j].size(); ++k) values(j, k - 1) = rows[j][k];
  }
  return TargetSamples(grid, std::move(values));
}

TargetSamples read_samples_csv(const std::filesystem::path& path, std::optional<int> expected_n) {
  return parse_samples_csv(slurp(path), expected_n);
}

DenseSamples parse_dense_csv(std::string_view text) {
  const auto rows = parse_table(text, 2, false);
  if (rows[0].size() != 2) throw FormatError("line 1", "dense samples have exactly two columns x,y");
  DenseSamples out;
  out.xs.reserve(rows.size());
  out.ys.reserve(rows.size());
  for (const auto& r : rows) {
    out.xs.push_back(r[0]);
    out.ys.push_back(r[1]);
  }
  return out;
}

DenseSamples read_dense_csv(const std::filesystem::path& path) { return parse_dense_csv(slurp(path)); }

}  // namespace pwmlp
