#include "mipdecomp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mipdecomp/ranking.hpp"

namespace mipdecomp {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

constexpr double kW = 640, kH = 420;
constexpr double kMarginL = 60, kMarginR = 20, kMarginT = 40, kMarginB = 50;

struct Range {
  double lo = 0, hi = 1;
  void expand(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    } else {
      double m = 0.05 * (hi - lo);
      lo -= m;
      hi += m;
    }
  }
};

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace

std::string svg_scatter(const std::vector<ScatterSeries>& series, const std::string& x_label,
                        const std::string& y_label, const std::string& title) {
  Range rx, ry;
  bool any = false;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (!any) {
        rx.lo = rx.hi = x;
        ry.lo = ry.hi = y;
        any = true;
      }
      rx.expand(x);
      ry.expand(y);
    }
  rx.pad();
  ry.pad();
  auto px = [&](double x) { return kMarginL + (x - rx.lo) / (rx.hi - rx.lo) * (kW - kMarginL - kMarginR); };
  auto py = [&](double y) { return kH - kMarginB - (y - ry.lo) / (ry.hi - ry.lo) * (kH - kMarginT - kMarginB); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">"
      << xml_escape(title) << "</text>\n";
  out << "<line x1=\"" << fmt(kMarginL) << "\" y1=\"" << fmt(kH - kMarginB) << "\" x2=\""
      << fmt(kW - kMarginR) << "\" y2=\"" << fmt(kH - kMarginB) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << fmt(kMarginL) << "\" y1=\"" << fmt(kMarginT) << "\" x2=\"" << fmt(kMarginL)
      << "\" y2=\"" << fmt(kH - kMarginB) << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    double fx = rx.lo + (rx.hi - rx.lo) * t / 4.0;
    double fy = ry.lo + (ry.hi - ry.lo) * t / 4.0;
    out << "<text x=\"" << fmt(px(fx)) << "\" y=\"" << fmt(kH - kMarginB + 16)
        << "\" text-anchor=\"middle\">" << fmt(fx) << "</text>\n";
    out << "<text x=\"" << fmt(kMarginL - 6) << "\" y=\"" << fmt(py(fy) + 4)
        << "\" text-anchor=\"end\">" << fmt(fy) << "</text>\n";
  }
  out << "<text x=\"" << kW / 2 << "\" y=\"" << fmt(kH - 12) << "\" text-anchor=\"middle\">"
      << xml_escape(x_label) << "</text>\n";
  out << "<text x=\"16\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kH / 2 << ")\">" << xml_escape(y_label) << "</text>\n";
  for (size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % 8];
    for (const auto& [x, y] : series[si].points)
      out << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
          << "\" r=\"3.5\" fill=\"" << color << "\" fill-opacity=\"0.75\"/>\n";
    if (!series[si].label.empty()) {
      double ly = kMarginT + 14 * static_cast<double>(si);
      out << "<circle cx=\"" << fmt(kW - kMarginR - 110) << "\" cy=\"" << fmt(ly)
          << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
      out << "<text x=\"" << fmt(kW - kMarginR - 102) << "\" y=\"" << fmt(ly + 4) << "\">"
          << xml_escape(series[si].label) << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

std::string svg_boxplot(const std::vector<BoxplotGroup>& groups, const std::string& title) {
  if (groups.empty()) throw std::invalid_argument("boxplot needs at least one group");
  Range ry;
  bool any = false;
  for (const auto& g : groups)
    for (double v : g.values) {
      if (!any) {
        ry.lo = ry.hi = v;
        any = true;
      }
      ry.expand(v);
    }
  if (!any) throw std::invalid_argument("boxplot groups are all empty");
  ry.pad();
  auto py = [&](double y) { return kH - kMarginB - (y - ry.lo) / (ry.hi - ry.lo) * (kH - kMarginT - kMarginB); };
  const double slot = (kW - kMarginL - kMarginR) / static_cast<double>(groups.size());
  const double box_w = std::min(48.0, slot * 0.5);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">"
      << xml_escape(title) << "</text>\n";
  out << "<line x1=\"" << fmt(kMarginL) << "\" y1=\"" << fmt(kMarginT) << "\" x2=\"" << fmt(kMarginL)
      << "\" y2=\"" << fmt(kH - kMarginB) << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    double fy = ry.lo + (ry.hi - ry.lo) * t / 4.0;
    out << "<text x=\"" << fmt(kMarginL - 6) << "\" y=\"" << fmt(py(fy) + 4)
        << "\" text-anchor=\"end\">" << fmt(fy) << "</text>\n";
  }
  for (size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& g = groups[gi];
    if (g.values.empty()) continue;
    double cx = kMarginL + slot * (static_cast<double>(gi) + 0.5);
    double q1 = percentile(g.values, 0.25);
    double q2 = percentile(g.values, 0.50);
    double q3 = percentile(g.values, 0.75);
    double iqr = q3 - q1;
    double wlo = q1, whi = q3;
    for (double v : g.values) {
      if (v >= q1 - 1.5 * iqr) wlo = std::min(wlo, v);
      if (v <= q3 + 1.5 * iqr) whi = std::max(whi, v);
    }
    const char* color = kPalette[gi % 8];
    out << "<line x1=\"" << fmt(cx) << "\" y1=\"" << fmt(py(wlo)) << "\" x2=\"" << fmt(cx)
        << "\" y2=\"" << fmt(py(whi)) << "\" stroke=\"black\"/>\n";
    for (double w : {wlo, whi})
      out << "<line x1=\"" << fmt(cx - box_w / 4) << "\" y1=\"" << fmt(py(w)) << "\" x2=\""
          << fmt(cx + box_w / 4) << "\" y2=\"" << fmt(py(w)) << "\" stroke=\"black\"/>\n";
    out << "<rect x=\"" << fmt(cx - box_w / 2) << "\" y=\"" << fmt(py(q3)) << "\" width=\""
        << fmt(box_w) << "\" height=\"" << fmt(py(q1) - py(q3)) << "\" fill=\"" << color
        << "\" fill-opacity=\"0.5\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << fmt(cx - box_w / 2) << "\" y1=\"" << fmt(py(q2)) << "\" x2=\""
        << fmt(cx + box_w / 2) << "\" y2=\"" << fmt(py(q2)) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    // Outliers beyond the whiskers.
    for (double v : g.values)
      if (v < q1 - 1.5 * iqr || v > q3 + 1.5 * iqr)
        out << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(py(v))
            << "\" r=\"2.5\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(cx) << "\" y=\"" << fmt(kH - kMarginB + 16)
        << "\" text-anchor=\"middle\">" << xml_escape(g.label) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string comparison_table_csv(const ComparisonTable& table) {
  table.validate();
  std::ostringstream out;
  out << "instance";
  for (const auto& m : table.methods) out << ',' << csv_escape(m);
  out << '\n';
  for (int i = 0; i < table.n(); ++i) {
    out << csv_escape(table.instances[static_cast<size_t>(i)]);
    for (int j = 0; j < table.k(); ++j) out << ',' << fmt(table.scores[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    out << '\n';
  }
  return out.str();
}

std::vector<std::string> emit_report(const std::string& out_dir, const ReportInputs& in) {
  if (in.table.methods.empty())
    throw std::invalid_argument("no ranking methods to report");
  // Render everything up front; any failure leaves the directory untouched.
  std::vector<std::pair<std::string, std::string>> files;
  files.emplace_back("selected_scores.csv", comparison_table_csv(in.table));

  std::ostringstream stats;
  stats << "measure,value\n";
  if (in.has_friedman) {
    stats << "friedman_statistic," << fmt(in.friedman.statistic) << '\n';
    stats << "friedman_p," << fmt(in.friedman.p_value) << '\n';
    for (int j = 0; j < in.table.k(); ++j)
      stats << "mean_rank_" << csv_escape(in.table.methods[static_cast<size_t>(j)]) << ','
            << fmt(in.friedman.mean_ranks[static_cast<size_t>(j)]) << '\n';
  }
  for (const auto& pw : in.pairwise)
    stats << "z_" << csv_escape(pw.control) << "_vs_" << csv_escape(pw.comparison) << ','
          << fmt(pw.result.z) << "\np_" << csv_escape(pw.control) << "_vs_"
          << csv_escape(pw.comparison) << ',' << fmt(pw.result.p_value) << '\n';
  files.emplace_back("stats.csv", stats.str());

  std::vector<BoxplotGroup> groups;
  for (int j = 0; j < in.table.k(); ++j) {
    BoxplotGroup g;
    g.label = in.table.methods[static_cast<size_t>(j)];
    for (int i = 0; i < in.table.n(); ++i)
      g.values.push_back(in.table.scores[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    groups.push_back(std::move(g));
  }
  files.emplace_back("selected_scores_boxplot.svg",
                     svg_boxplot(groups, "Selected decomposition scores by method"));

  if (in.has_pca && !in.pca.projected.empty() && in.pca.projected[0].size() >= 2) {
    std::ostringstream csv;
    csv << "label,pc1,pc2\n";
    ScatterSeries s;
    s.label = "";
    for (size_t i = 0; i < in.pca.projected.size(); ++i) {
      double x = in.pca.projected[i][0], y = in.pca.projected[i][1];
      std::string label = i < in.pca_labels.size() ? in.pca_labels[i] : std::to_string(i);
      csv << csv_escape(label) << ',' << fmt(x) << ',' << fmt(y) << '\n';
      s.points.emplace_back(x, y);
    }
    files.emplace_back("pca_projection.csv", csv.str());
    files.emplace_back("pca_scatter.svg", svg_scatter({s}, "PC1", "PC2", "Instance features, first two components"));
  }

  if (!in.prediction_scatter.empty())
    files.emplace_back("prediction_scatter.svg",
                       svg_scatter(in.prediction_scatter, "predicted score", "actual score",
                                   "Predicted vs actual decomposition scores"));

  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;
  for (const auto& [name, content] : files) {
    std::string path = out_dir + "/" + name;
    write_text_file(path, content);
    written.push_back(path);
  }
  return written;
}

}  // namespace mipdecomp
