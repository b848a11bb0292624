#include "experiments/results_csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace abstain::experiments {
namespace {

constexpr std::string_view kHeader =
    "setting,algorithm,instance,c,t,mean_pseudo_regret,std_pseudo_regret,mean_realized_regret,"
    "std_realized_regret,trials,master_seed,lb_constant";
constexpr std::size_t kFields = 12;

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_record(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quote in CSV record");
  return fields;
}

template <class T>
T parse_field(const std::string& text, std::string_view column) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw std::runtime_error("bad value '" + text + "' in column " + std::string(column));
  }
  return value;
}

}  // namespace

std::string_view csv_header() { return kHeader; }

std::string format_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("CSV numeric fields must be finite");
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::runtime_error("double formatting failed");
  return std::string(buf.data(), ptr);
}

void write_header(std::ostream& out) { out << kHeader << '\n'; }

void write_row(std::ostream& out, const ResultRow& row) {
  out << quote(row.setting) << ',' << quote(row.algorithm) << ',' << quote(row.instance) << ','
      << format_double(row.c) << ',' << row.t << ',' << format_double(row.mean_pseudo_regret) << ','
      << format_double(row.std_pseudo_regret) << ',' << format_double(row.mean_realized_regret) << ','
      << format_double(row.std_realized_regret) << ',' << row.trials << ',' << row.master_seed << ','
      << format_double(row.lb_constant) << '\n';
}

std::vector<ResultRow> read_rows(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw std::runtime_error("unexpected CSV header");

  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_record(line);
    if (f.size() != kFields) throw std::runtime_error("CSV record has " + std::to_string(f.size()) + " fields");
    ResultRow row;
    row.setting = f[0];
    row.algorithm = f[1];
    row.instance = f[2];
    row.c = parse_field<double>(f[3], "c");
    row.t = parse_field<std::uint64_t>(f[4], "t");
    row.mean_pseudo_regret = parse_field<double>(f[5], "mean_pseudo_regret");
    row.std_pseudo_regret = parse_field<double>(f[6], "std_pseudo_regret");
    row.mean_realized_regret = parse_field<double>(f[7], "mean_realized_regret");
    row.std_realized_regret = parse_field<double>(f[8], "std_realized_regret");
    row.trials = parse_field<std::uint64_t>(f[9], "trials");
    row.master_seed = parse_field<std::uint64_t>(f[10], "master_seed");
    row.lb_constant = parse_field<double>(f[11], "lb_constant");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace abstain::experiments
