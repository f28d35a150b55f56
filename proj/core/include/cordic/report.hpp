#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cordic/harness.hpp"

namespace cordic {

struct CsvOptions {
  // Fixed four decimals with the sign kept on values that round to zero
  // ("-0.0000"), as printed in the published table. Otherwise every value
  // is the shortest decimal that round-trips.
  bool paper_format = false;
  // Adds an angle_quantized column after angle_rad.
  bool show_quantized = false;
};

/// Header `angle_rad,cos_err,sin_err`, one line per row, '\n' line endings.
std::string table1_csv(const std::vector<Table1Row>& rows, const CsvOptions& options = {});

std::string to_json(const MseReport& report);
std::string to_json(const std::vector<std::pair<int, MseReport>>& sweep);

/// Inverse of to_json(const MseReport&). Throws ParseError.
MseReport mse_report_from_json(const std::string& text);

// Shortest round-trip decimal for a double.
std::string format_shortest(double value);
// "%.4f"; negative values that round to zero keep their minus sign.
std::string format_paper(double value);

/// Writes `contents` to `path`, or to `out` when `path` is empty or "-".
/// Throws IoError on failure.
void write_output(const std::string& contents, const std::string& path, std::ostream& out);

}  // namespace cordic
