#include "wcfair/harness/results.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace wcfair::harness {

std::vector<std::string> result_columns(std::size_t colors) {
  std::vector<std::string> cols = {"method", "objective", "k", "lambda",
                                   "delta",  "p",         "seed", "R", "U"};
  for (std::size_t h = 0; h < colors; ++h) {
    const std::string s = std::to_string(h);
    cols.push_back("disu_" + s);
    cols.push_back("D_" + s);
    cols.push_back("V_" + s);
  }
  for (const char* c : {"lp_objective", "gap", "bound", "time_centers",
                        "time_lp", "time_rounding", "time_total", "flags"}) {
    cols.emplace_back(c);
  }
  return cols;
}

bool is_timing_column(const std::string& name) {
  return name.rfind("time_", 0) == 0;
}

std::string format_double(double v) {
  // Shortest text that reads back to the same double.
  char buf[40];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

namespace {

std::string optional_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

ResultsWriter::ResultsWriter(std::ostream& out, std::size_t colors,
                             double delta)
    : out_(out), colors_(colors), delta_(delta) {
  out_ << join(result_columns(colors_), ',') << '\n';
  out_.flush();
}

void ResultsWriter::write(const RunResult& r) {
  std::vector<std::string> cells = {
      r.method,
      std::string(to_string(r.objective)),
      std::to_string(r.params.k),
      format_double(r.params.lambda),
      format_double(delta_),
      std::to_string(r.params.p),
      std::to_string(r.seed),
      format_double(r.report.rawlsian),
      format_double(r.report.utilitarian)};
  for (std::size_t h = 0; h < colors_; ++h) {
    cells.push_back(format_double(r.report.disutility[h]));
    cells.push_back(format_double(r.report.distance[h]));
    cells.push_back(format_double(r.report.violation[h]));
  }
  cells.push_back(optional_cell(r.lp_objective));
  cells.push_back(optional_cell(r.gap));
  cells.push_back(optional_cell(r.bound));
  cells.push_back(format_double(r.seconds.centers));
  cells.push_back(format_double(r.seconds.lp));
  cells.push_back(format_double(r.seconds.rounding));
  cells.push_back(format_double(r.seconds.total));
  cells.push_back(join(r.flags, ';'));
  out_ << join(cells, ',') << '\n';
  out_.flush();
}

void ResultsWriter::write(const FailedRun& f, int p, std::uint64_t seed) {
  std::vector<std::string> cells = {f.method,
                                    std::string(to_string(f.objective)),
                                    std::to_string(f.k),
                                    format_double(f.lambda),
                                    format_double(delta_),
                                    std::to_string(p),
                                    std::to_string(seed),
                                    "",
                                    ""};
  for (std::size_t h = 0; h < 3 * colors_ + 7; ++h) cells.emplace_back();
  // Keep the cell free of separators.
  std::string error = f.error;
  for (char& ch : error) {
    if (ch == ',' || ch == ';' || ch == '\n' || ch == '\r') ch = ' ';
  }
  cells.push_back("error:" + error);
  out_ << join(cells, ',') << '\n';
  out_.flush();
}

const std::string& ResultRow::at(const std::string& column) const {
  const auto it = cells.find(column);
  if (it == cells.end()) throw DataError("results file has no column " + column);
  return it->second;
}

std::optional<double> ResultRow::number(const std::string& column) const {
  const std::string& s = at(column);
  if (s.empty()) return std::nullopt;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) {
    throw DataError("column " + column + ": '" + s + "' is not a number");
  }
  return v;
}

bool ResultRow::has_flag(const std::string& flag) const {
  std::istringstream in(at("flags"));
  std::string part;
  while (std::getline(in, part, ';')) {
    if (part == flag) return true;
  }
  return false;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (const char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace

ResultsTable read_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open results file " + path.string());
  ResultsTable table;
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("results file " + path.string() + " is empty");
  }
  table.columns = split_line(line);
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != table.columns.size()) {
      throw DataError(path.string() + ":" + std::to_string(number) +
                      ": expected " + std::to_string(table.columns.size()) +
                      " cells, found " + std::to_string(cells.size()));
    }
    ResultRow row;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      row.cells[table.columns[c]] = cells[c];
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace wcfair::harness
