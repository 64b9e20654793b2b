#include "wcfair/harness/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace wcfair::harness {
namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 440;
constexpr double kLeft = 80;
constexpr double kRight = 170;
constexpr double kTop = 40;
constexpr double kBottom = 50;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Series {
  std::string method;
  std::map<double, std::pair<double, std::size_t>> sums;  // k -> (sum, count)
};

}  // namespace

std::string render_svg(const ResultsTable& table, Objective objective,
                       double lambda, const std::string& title) {
  const std::string value_column =
      objective == Objective::kRawlsian ? "R" : "U";
  const std::string objective_name(to_string(objective));
  std::vector<Series> series;
  for (const auto& row : table.rows) {
    if (row.at("objective") != objective_name) continue;
    const auto l = row.number("lambda");
    if (!l || std::abs(*l - lambda) > 1e-9) continue;
    const auto v = row.number(value_column);
    const auto k = row.number("k");
    if (!v || !k) continue;
    const std::string& method = row.at("method");
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const Series& s) { return s.method == method; });
    if (it == series.end()) {
      series.push_back({method, {}});
      it = series.end() - 1;
    }
    auto& cell = it->sums[*k];
    cell.first += *v;
    ++cell.second;
  }
  if (series.empty()) {
    throw DataError("no " + objective_name + " rows with lambda " +
                    tick_label(lambda));
  }

  double kmin = kInfinity, kmax = -kInfinity;
  double ymin = kInfinity, ymax = -kInfinity;
  for (const auto& s : series) {
    for (const auto& [k, cell] : s.sums) {
      const double v = cell.first / static_cast<double>(cell.second);
      kmin = std::min(kmin, k);
      kmax = std::max(kmax, k);
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (kmax == kmin) {
    kmin -= 1;
    kmax += 1;
  }
  const double pad = ymax > ymin ? 0.05 * (ymax - ymin)
                                 : std::max(1e-12, 0.05 * std::abs(ymax));
  ymin -= pad;
  ymax += pad;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double k) { return kLeft + (k - kmin) / (kmax - kmin) * plot_w; };
  auto py = [&](double v) { return kTop + (ymax - v) / (ymax - ymin) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"22\" "
      << "text-anchor=\"middle\" font-size=\"14\">" << escape(title)
      << "</text>\n";

  // Axes.
  svg << "<g class=\"axes\" stroke=\"black\">\n";
  svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + plot_h)
      << "\" x2=\"" << num(kLeft + plot_w) << "\" y2=\"" << num(kTop + plot_h)
      << "\"/>\n";
  svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\""
      << num(kLeft) << "\" y2=\"" << num(kTop + plot_h) << "\"/>\n";
  svg << "</g>\n";

  std::vector<double> ks;
  for (const auto& s : series) {
    for (const auto& [k, cell] : s.sums) ks.push_back(k);
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  svg << "<g class=\"x-ticks\" text-anchor=\"middle\">\n";
  for (const double k : ks) {
    svg << "<line x1=\"" << num(px(k)) << "\" y1=\"" << num(kTop + plot_h)
        << "\" x2=\"" << num(px(k)) << "\" y2=\"" << num(kTop + plot_h + 5)
        << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << num(px(k)) << "\" y=\"" << num(kTop + plot_h + 18)
        << "\">" << tick_label(k) << "</text>\n";
  }
  svg << "</g>\n";
  svg << "<g class=\"y-ticks\" text-anchor=\"end\">\n";
  for (int t = 0; t <= 5; ++t) {
    const double v = ymin + (ymax - ymin) * t / 5.0;
    svg << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py(v))
        << "\" x2=\"" << num(kLeft) << "\" y2=\"" << num(py(v))
        << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(v) + 4)
        << "\">" << tick_label(v) << "</text>\n";
  }
  svg << "</g>\n";
  svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\""
      << num(kHeight - 10) << "\" text-anchor=\"middle\">k</text>\n";
  svg << "<text x=\"18\" y=\"" << num(kTop + plot_h / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << num(kTop + plot_h / 2) << ")\">"
      << (objective == Objective::kRawlsian ? "Rawlsian objective"
                                            : "Utilitarian objective")
      << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    svg << "<polyline class=\"series\" data-method=\""
        << escape(series[s].method) << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (const auto& [k, cell] : series[s].sums) {
      const double v = cell.first / static_cast<double>(cell.second);
      if (!first) svg << ' ';
      svg << num(px(k)) << ',' << num(py(v));
      first = false;
    }
    svg << "\"/>\n";
  }

  svg << "<g class=\"legend\">\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    const double y = kTop + 10 + 20.0 * static_cast<double>(s);
    const double x = kLeft + plot_w + 15;
    svg << "<g class=\"legend-entry\"><line x1=\"" << num(x) << "\" y1=\""
        << num(y) << "\" x2=\"" << num(x + 24) << "\" y2=\"" << num(y)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/><text x=\""
        << num(x + 30) << "\" y=\"" << num(y + 4) << "\">"
        << escape(series[s].method) << "</text></g>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

void write_plot(const std::filesystem::path& results, Objective objective,
                double lambda, const std::filesystem::path& out) {
  const ResultsTable table = read_results(results);
  const std::string title = results.parent_path().filename().string() +
                            " (lambda = " + tick_label(lambda) + ")";
  const std::string svg = render_svg(table, objective, lambda, title);
  std::ofstream file(out);
  if (!file) throw DataError("cannot write " + out.string());
  file << svg;
}

}  // namespace wcfair::harness
