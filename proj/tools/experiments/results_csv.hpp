#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace abstain::experiments {

/// One CSV record: the summary of one (config, checkpoint) pair.
struct ResultRow {
  std::string setting;    ///< "rg" or "rw"
  std::string algorithm;  ///< PolicyKind name
  std::string instance;   ///< instance spec text
  double c = 0.0;
  std::uint64_t t = 0;
  double mean_pseudo_regret = 0.0;
  double std_pseudo_regret = 0.0;
  double mean_realized_regret = 0.0;
  double std_realized_regret = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
  double lb_constant = 0.0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

/// The fixed header line, without the trailing newline.
std::string_view csv_header();

/// Shortest text that parses back to the same double.
std::string format_double(double value);

void write_header(std::ostream& out);
void write_row(std::ostream& out, const ResultRow& row);

/// Parses a whole CSV document. Throws std::runtime_error on a header
/// mismatch, a wrong field count or an unparsable field.
std::vector<ResultRow> read_rows(std::istream& in);

}  // namespace abstain::experiments
