#include "heraldsim/export.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace heraldsim {

namespace {

using Json = nlohmann::ordered_json;

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.push_back("");
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("format_double overflow");
  return std::string(buf, ptr);
}

std::string to_csv(const ResultTable& table) {
  std::string out;
  for (const auto& [k, v] : table.metadata) {
    out += "# " + k + "=" + v + "\n";
  }
  for (size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

ResultTable parse_csv(const std::string& text) {
  ResultTable table;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const size_t eq = line.find('=');
      if (eq == std::string::npos) {
        throw std::runtime_error("malformed metadata line: " + line);
      }
      table.metadata.emplace_back(line.substr(2, eq - 2),
                                  line.substr(eq + 1));
      continue;
    }
    if (!header_seen) {
      table.columns = split(line, ',');
      header_seen = true;
    } else {
      table.rows.push_back(split(line, ','));
    }
  }
  return table;
}

std::string to_json_text(const ResultTable& table) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = table.name;
  Json meta = Json::object();
  for (const auto& [k, v] : table.metadata) meta[k] = v;
  j["metadata"] = meta;
  j["columns"] = table.columns;
  Json rows = Json::array();
  for (const auto& row : table.rows) rows.push_back(row);
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::string to_svg_loglog(const std::string& title, const std::string& x_label,
                          const std::string& y_label,
                          const std::vector<SvgSeries>& series) {
  constexpr double kW = 720, kH = 520;
  constexpr double kL = 80, kR = 24, kT = 44, kB = 56;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series) {
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (s.x[i] <= 0 || s.y[i] <= 0) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      const double lo = i < s.y_low.size() && s.y_low[i] > 0 ? s.y_low[i]
                                                             : s.y[i];
      const double hi = i < s.y_high.size() && s.y_high[i] > 0 ? s.y_high[i]
                                                               : s.y[i];
      ymin = std::min(ymin, lo);
      ymax = std::max(ymax, hi);
    }
  }
  if (xmin > xmax || ymin > ymax) {
    throw std::runtime_error("svg plot needs positive data");
  }
  const double lx0 = std::log10(xmin), lx1 = std::log10(xmax);
  const double ly0 = std::log10(ymin), ly1 = std::log10(ymax);
  const double xspan = lx1 > lx0 ? lx1 - lx0 : 1.0;
  const double yspan = ly1 > ly0 ? ly1 - ly0 : 1.0;
  auto px = [&](double v) {
    return kL + (std::log10(v) - lx0) / xspan * (kW - kL - kR);
  };
  auto py = [&](double v) {
    return kH - kB - (std::log10(v) - ly0) / yspan * (kH - kT - kB);
  };
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                  "#9467bd", "#ff7f0e", "#8c564b",
                                  "#17becf", "#7f7f7f"};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << " " << kH
      << "\">\n";
  svg << "<rect width=\"" << kW << "\" height=\"" << kH
      << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << title << "</text>\n";
  // Decade grid lines and tick labels.
  for (int e = static_cast<int>(std::floor(lx0));
       e <= static_cast<int>(std::ceil(lx1)); ++e) {
    const double v = std::pow(10.0, e);
    if (v < xmin * 0.999 || v > xmax * 1.001) continue;
    svg << "<line x1=\"" << px(v) << "\" y1=\"" << kT << "\" x2=\"" << px(v)
        << "\" y2=\"" << kH - kB << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << px(v) << "\" y=\"" << kH - kB + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">1e"
        << e << "</text>\n";
  }
  for (int e = static_cast<int>(std::floor(ly0));
       e <= static_cast<int>(std::ceil(ly1)); ++e) {
    const double v = std::pow(10.0, e);
    if (v < ymin * 0.999 || v > ymax * 1.001) continue;
    svg << "<line x1=\"" << kL << "\" y1=\"" << py(v) << "\" x2=\""
        << kW - kR << "\" y2=\"" << py(v) << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << kL - 8 << "\" y=\"" << py(v) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">1e"
        << e << "</text>\n";
  }
  svg << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\""
      << kW - kL - kR << "\" height=\"" << kH - kT - kB
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << x_label << "</text>\n";
  svg << "<text x=\"20\" y=\"" << (kT + kH - kB) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 20 "
      << (kT + kH - kB) / 2 << ")\">" << y_label << "</text>\n";
  for (size_t si = 0; si < series.size(); ++si) {
    const SvgSeries& s = series[si];
    const char* color = kColors[si % 8];
    std::ostringstream pts;
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (s.x[i] <= 0 || s.y[i] <= 0) continue;
      pts << px(s.x[i]) << "," << py(s.y[i]) << " ";
      // Error bar.
      if (i < s.y_low.size() && i < s.y_high.size() && s.y_low[i] > 0 &&
          s.y_high[i] > 0) {
        svg << "<line x1=\"" << px(s.x[i]) << "\" y1=\"" << py(s.y_low[i])
            << "\" x2=\"" << px(s.x[i]) << "\" y2=\"" << py(s.y_high[i])
            << "\" stroke=\"" << color << "\"/>\n";
      }
      svg << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i])
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    svg << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\""
        << color << "\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << kW - kR - 8 << "\" y=\"" << kT + 18 + 16 * si
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"12\" fill=\""
        << color << "\">" << s.label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace heraldsim
