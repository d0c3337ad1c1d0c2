#include "crawler/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace crawler::cli {
namespace {

std::string Number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

std::string CsvTable::Render() const {
  if (header.size() != columns.size()) throw std::logic_error("CSV header/column count mismatch");
  std::ostringstream out;
  for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
  out << '\n';
  const Eigen::Index rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw std::logic_error("CSV columns differ in length");
  }
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) out << (j ? "," : "") << Number(columns[j](i));
    out << '\n';
  }
  return out.str();
}

std::string RenderLineChart(const std::string& title, const std::string& x_label,
                            const Eigen::VectorXd& x, const std::vector<Series>& series) {
  constexpr double kWidth = 720, kHeight = 400, kLeft = 60, kRight = 20, kTop = 40, kBottom = 50;
  double y_min = 0.0, y_max = 0.0;
  bool first = true;
  for (const auto& s : series) {
    for (Eigen::Index i = 0; i < s.y.size(); ++i) {
      if (!std::isfinite(s.y(i))) continue;
      y_min = first ? s.y(i) : std::min(y_min, s.y(i));
      y_max = first ? s.y(i) : std::max(y_max, s.y(i));
      first = false;
    }
  }
  if (y_max - y_min < 1e-12) {
    y_min -= 1.0;
    y_max += 1.0;
  }
  const double x_min = x.size() ? x.minCoeff() : 0.0;
  const double x_max = x.size() ? x.maxCoeff() : 1.0;
  const double x_span = x_max > x_min ? x_max - x_min : 1.0;
  auto px = [&](double v) { return kLeft + (v - x_min) / x_span * (kWidth - kLeft - kRight); };
  auto py = [&](double v) {
    return kHeight - kBottom - (v - y_min) / (y_max - y_min) * (kHeight - kTop - kBottom);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title << "</text>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << kWidth - kRight
      << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kHeight - kBottom << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
      << x_label << "</text>\n"
      << "<text x=\"" << kLeft - 4 << "\" y=\"" << kTop << "\" text-anchor=\"end\">" << Number(y_max)
      << "</text>\n"
      << "<text x=\"" << kLeft - 4 << "\" y=\"" << kHeight - kBottom << "\" text-anchor=\"end\">"
      << Number(y_min) << "</text>\n";
  int legend = 0;
  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (Eigen::Index i = 0; i < std::min(x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.y(i))) continue;
      out << px(x(i)) << ',' << py(s.y(i)) << ' ';
    }
    out << "\"/>\n"
        << "<text x=\"" << kWidth - kRight - 4 << "\" y=\"" << kTop + 14 * legend
        << "\" text-anchor=\"end\" fill=\"" << s.color << "\">" << s.label << "</text>\n";
    ++legend;
  }
  out << "</svg>\n";
  return out.str();
}

OutputSet::OutputSet(std::filesystem::path directory) : directory_(std::move(directory)) {
  std::filesystem::create_directories(directory_);
}

OutputSet::~OutputSet() {
  if (!keep_) Discard();
}

std::filesystem::path OutputSet::Write(const std::string& name, const std::string& content) {
  const std::filesystem::path target = directory_ / name;
  const std::filesystem::path tmp = directory_ / (name + ".partial");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out.flush()) throw std::runtime_error("short write to '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, target);
  files_.push_back(target);
  return target;
}

void OutputSet::Discard() {
  std::error_code ec;
  for (const auto& f : files_) std::filesystem::remove(f, ec);
  files_.clear();
}

}  // namespace crawler::cli
